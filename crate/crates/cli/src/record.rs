//! One output row per group: the requested invariants by each requested
//! route, and whether the CF₂ routes agree.

use std::fmt::Write as _;

use cyfact_core::counting::{self, cf2_from_cyclic};
use cyfact_core::formulas::formula_for;
use cyfact_core::lattice::{cyclic_subgroups, enumerate_subgroups, mobius_top_table};
use cyfact_core::{GroupConfig, GroupSpec, Result};
use serde::Serialize;

pub const CSV_HEADER: &str = "spec,order,cf2_bf,cf2_mob,cf2_formula,f2,sd,csd,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quantities {
    pub cf2: bool,
    pub f2: bool,
    pub sd: bool,
    pub csd: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Methods {
    pub bruteforce: bool,
    pub mobius: bool,
    pub formula: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub spec: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf2_bruteforce: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf2_mobius: Option<u64>,
    /// Decimal string; closed forms are evaluated in big integers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf2_formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sd: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csd: Option<String>,
    pub cf2_agree: bool,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn compute(spec: &GroupSpec, q: Quantities, m: Methods, cfg: &GroupConfig) -> Result<OutputRecord> {
    let g = spec.build(cfg)?;
    let mut notes = Vec::new();
    // the full lattice is only needed beyond the cyclic-pair count
    let needs_lattice = q.f2 || q.sd || q.csd || (q.cf2 && m.mobius);
    let lat = if needs_lattice { Some(enumerate_subgroups(&g)?) } else { None };
    let mob = match (&lat, m.mobius) {
        (Some(l), true) => Some(mobius_top_table(l)),
        _ => None,
    };

    let mut cf2_bruteforce = None;
    let mut cf2_mobius = None;
    let mut cf2_formula = None;
    if q.cf2 {
        if m.bruteforce {
            cf2_bruteforce = Some(match &lat {
                Some(l) => counting::cf2_bruteforce(&g, l),
                None => cf2_from_cyclic(&g, &cyclic_subgroups(&g)),
            });
        }
        if let (Some(l), Some(mob)) = (&lat, &mob) {
            cf2_mobius = Some(counting::cf2_mobius(&g, l, mob)?);
        }
        if m.formula {
            match formula_for(spec) {
                Some(r) => cf2_formula = Some(r?.value.to_string()),
                None => notes.push(format!("no closed form for {spec}; formula column omitted")),
            }
        }
    }

    let mut f2 = None;
    if q.f2 {
        let l = lat.as_ref().expect("lattice built for f2");
        let bf = counting::f2_bruteforce(&g, l);
        if let Some(mob) = &mob {
            let via = counting::f2_mobius(&g, l, mob)?;
            if via != bf {
                notes.push(format!("F2 mismatch: enumeration {bf}, Möbius {via}"));
            }
        }
        f2 = Some(bf);
    }
    let sd = q.sd.then(|| counting::sd(&g, lat.as_ref().expect("lattice built for sd")).to_string());
    let csd = q.csd.then(|| counting::csd(&g, lat.as_ref().expect("lattice built for csd")).to_string());

    let mut record = OutputRecord {
        spec: spec.to_string(),
        order: g.order(),
        cf2_bruteforce,
        cf2_mobius,
        cf2_formula,
        f2,
        sd,
        csd,
        cf2_agree: true,
        status: "ok",
        notes,
    };
    record.settle();
    Ok(record)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl OutputRecord {
    /// Recomputes `cf2_agree` and `status` from the present values.
    pub fn settle(&mut self) {
        let values: Vec<String> = [
            self.cf2_bruteforce.map(|v| v.to_string()),
            self.cf2_mobius.map(|v| v.to_string()),
            self.cf2_formula.clone(),
        ]
        .into_iter()
        .flatten()
        .collect();
        self.cf2_agree = values.windows(2).all(|w| w[0] == w[1]);
        let f2_agree = !self.notes.iter().any(|n| n.starts_with("F2 mismatch"));
        self.status = if self.cf2_agree && f2_agree { "ok" } else { "FAILED" };
    }

    /// Cells in `CSV_HEADER` order.
    pub fn cells(&self) -> [String; 9] {
        [
            self.spec.clone(),
            self.order.to_string(),
            opt(&self.cf2_bruteforce),
            opt(&self.cf2_mobius),
            opt(&self.cf2_formula),
            opt(&self.f2),
            opt(&self.sd),
            opt(&self.csd),
            self.status.to_string(),
        ]
    }

    pub fn text_block(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "spec: {}", self.spec);
        let _ = writeln!(out, "order: {}", self.order);
        let lines = [
            ("cf2 (bruteforce)", opt(&self.cf2_bruteforce)),
            ("cf2 (mobius)", opt(&self.cf2_mobius)),
            ("cf2 (formula)", opt(&self.cf2_formula)),
            ("f2", opt(&self.f2)),
            ("sd", opt(&self.sd)),
            ("csd", opt(&self.csd)),
        ];
        for (k, v) in lines {
            if !v.is_empty() {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}

/// Fixed-width table with the CSV column set.
pub fn text_table(records: &[OutputRecord], header: bool) -> String {
    let mut rows: Vec<Vec<String>> = Vec::new();
    if header {
        rows.push(CSV_HEADER.split(',').map(str::to_string).collect());
    }
    rows.extend(records.iter().map(|r| r.cells().to_vec()));
    let widths: Vec<usize> = (0..9)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> (Quantities, Methods) {
        (
            Quantities { cf2: true, f2: true, sd: true, csd: true },
            Methods { bruteforce: true, mobius: true, formula: true },
        )
    }

    #[test]
    fn record_fields_for_small_group() {
        let (q, m) = all();
        let r = compute(&"dihedral:3".parse().unwrap(), q, m, &GroupConfig::default()).unwrap();
        assert_eq!(r.cells().join(","), "dihedral:3,6,6,6,6,17,5/6,19/25,ok");
        assert!(r.cf2_agree);
    }

    #[test]
    fn disagreement_marks_failed() {
        let (q, m) = all();
        let mut r = compute(&"cyclic:4".parse().unwrap(), q, m, &GroupConfig::default()).unwrap();
        assert_eq!(r.status, "ok");
        r.cf2_formula = Some("6".into());
        r.settle();
        assert!(!r.cf2_agree);
        assert_eq!(r.status, "FAILED");
        assert_eq!(r.cells()[8], "FAILED");
    }
}
