//! Text syntax for naming a group, e.g. `dihedral:10` or
//! `product:(symmetric:3)*(cyclic:5)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::Gamma2Choice;
use crate::group::{FiniteGroup, GroupConfig};
use crate::numtheory::{factorize, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Prime-power factors `(p, a)` of `Z_{p^a}`.
    Abelian(Vec<(u64, u32)>),
    /// `D_{2n}`.
    Dihedral(u64),
    /// `Q_{2^n}`.
    Quaternion(u32),
    /// `S_{2^n}`.
    Semidihedral(u32),
    /// `M(p^n)`.
    Modular { p: u64, n: u32 },
    /// `Dic_{4n}`.
    Dicyclic(u64),
    GenDicyclic { n: u64, choice: Gamma2Choice },
    Symmetric(u32),
    Alternating(u32),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self, cfg: &GroupConfig) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => cfg.cyclic(*n),
            GroupSpec::Abelian(f) => cfg.abelian(f),
            GroupSpec::Dihedral(n) => cfg.dihedral(*n),
            GroupSpec::Quaternion(n) => cfg.quaternion(*n),
            GroupSpec::Semidihedral(n) => cfg.semidihedral(*n),
            GroupSpec::Modular { p, n } => cfg.modular(*p, *n),
            GroupSpec::Dicyclic(n) => cfg.dicyclic(*n),
            GroupSpec::GenDicyclic { n, choice } => cfg.generalized_dicyclic(*n, *choice),
            GroupSpec::Symmetric(n) => cfg.symmetric(*n),
            GroupSpec::Alternating(n) => cfg.alternating(*n),
            GroupSpec::Product(parts) => {
                let mut iter = parts.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::validation("empty product"))?
                    .build(cfg)?;
                iter.try_fold(first, |acc, s| acc.direct_product(&s.build(cfg)?, cfg))
            }
        }
    }

    /// Group order computed from the parameters alone, without building.
    pub fn order(&self) -> Option<u128> {
        let fact = |n: u32| (1..=n as u128).try_fold(1u128, |a, k| a.checked_mul(k));
        match self {
            GroupSpec::Cyclic(n) => Some(*n as u128),
            GroupSpec::Abelian(f) => f
                .iter()
                .try_fold(1u128, |acc, &(p, a)| acc.checked_mul((p as u128).checked_pow(a)?)),
            GroupSpec::Dihedral(n) => Some(2 * *n as u128),
            GroupSpec::Quaternion(n) | GroupSpec::Semidihedral(n) => 2u128.checked_pow(*n),
            GroupSpec::Modular { p, n } => (*p as u128).checked_pow(*n),
            GroupSpec::Dicyclic(n) | GroupSpec::GenDicyclic { n, .. } => Some(4 * *n as u128),
            GroupSpec::Symmetric(n) => fact(*n),
            GroupSpec::Alternating(n) => fact(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            GroupSpec::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, s| acc.checked_mul(s.order()?)),
        }
    }

    /// `Z_n` written as its primary decomposition, for feeding abelian
    /// formulas.
    pub fn cyclic_as_abelian(n: u64) -> GroupSpec {
        GroupSpec::Abelian(factorize(n))
    }

    /// The prime `p` if the group order is a power of `p`.
    pub fn is_p_group(&self) -> Option<u64> {
        let o = self.order()?;
        let f = factorize(u64::try_from(o).ok()?);
        match f.as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Abelian(fs) => {
                write!(f, "abelian:")?;
                for (i, (p, a)) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}^{a}")?;
                }
                Ok(())
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Semidihedral(n) => write!(f, "semidihedral:{n}"),
            GroupSpec::Modular { p, n } => write!(f, "modular:{p},{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::GenDicyclic { n, choice } => write!(f, "gendicyclic:{n},{}", choice.token()),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::Product(parts) => {
                write!(f, "product:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "({p})")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        if p.pos != p.src.len() {
            return Err(p.error("end of input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const FAMILIES: &str = "one of cyclic, abelian, dihedral, quaternion, semidihedral, modular, \
                        dicyclic, gendicyclic, symmetric, alternating, product";

impl Parser<'_> {
    fn error(&self, expected: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            expected: expected.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("'{}'", c as char)))
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            expected: "an integer that fits in 64 bits".into(),
        })
    }

    fn small_int(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| Error::Parse {
            pos: start,
            expected: "an integer below 2^32".into(),
        })
    }

    fn prime(&mut self) -> Result<u64> {
        let start = self.pos;
        let p = self.int()?;
        if !is_prime(p) {
            return Err(Error::Parse {
                pos: start,
                expected: "a prime".into(),
            });
        }
        Ok(p)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let start = self.pos;
        let family = self.word().to_string();
        if family.is_empty() {
            return Err(self.error(FAMILIES));
        }
        self.expect(b':')?;
        Ok(match family.as_str() {
            "cyclic" => GroupSpec::Cyclic(self.int()?),
            "abelian" => {
                let mut factors = Vec::new();
                loop {
                    let p = self.prime()?;
                    self.expect(b'^')?;
                    let a = self.small_int()?;
                    factors.push((p, a));
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                GroupSpec::Abelian(factors)
            }
            "dihedral" => GroupSpec::Dihedral(self.int()?),
            "quaternion" => GroupSpec::Quaternion(self.small_int()?),
            "semidihedral" => GroupSpec::Semidihedral(self.small_int()?),
            "modular" => {
                let p = self.prime()?;
                self.expect(b',')?;
                GroupSpec::Modular { p, n: self.small_int()? }
            }
            "dicyclic" => GroupSpec::Dicyclic(self.int()?),
            "gendicyclic" => {
                let n = self.int()?;
                self.expect(b',')?;
                let at = self.pos;
                let tok = self.word().to_string();
                let choice = Gamma2Choice::from_token(&tok).ok_or(Error::Parse {
                    pos: at,
                    expected: "one of ahalf, b, ahalfb".into(),
                })?;
                GroupSpec::GenDicyclic { n, choice }
            }
            "symmetric" => GroupSpec::Symmetric(self.small_int()?),
            "alternating" => GroupSpec::Alternating(self.small_int()?),
            "product" => {
                let mut parts = vec![self.parenthesized()?];
                while self.peek() == Some(b'*') {
                    self.pos += 1;
                    parts.push(self.parenthesized()?);
                }
                if parts.len() < 2 {
                    return Err(self.error("'*'"));
                }
                GroupSpec::Product(parts)
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    expected: FAMILIES.into(),
                })
            }
        })
    }

    fn parenthesized(&mut self) -> Result<GroupSpec> {
        self.expect(b'(')?;
        let inner = self.spec()?;
        self.expect(b')')?;
        Ok(inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> Result<GroupSpec> {
        s.parse()
    }

    #[test]
    fn parses_every_family() {
        assert_eq!(parse("cyclic:12").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(parse("abelian:3^1,3^2").unwrap(), GroupSpec::Abelian(vec![(3, 1), (3, 2)]));
        assert_eq!(parse("dihedral:10").unwrap(), GroupSpec::Dihedral(10));
        assert_eq!(parse("modular:3,4").unwrap(), GroupSpec::Modular { p: 3, n: 4 });
        assert_eq!(
            parse("gendicyclic:6,ahalfb").unwrap(),
            GroupSpec::GenDicyclic { n: 6, choice: Gamma2Choice::AHalfB }
        );
        assert_eq!(
            parse("product:(symmetric:3)*(cyclic:2)").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Cyclic(2)])
        );
        assert_eq!(
            parse("product:(product:(cyclic:2)*(cyclic:3))*(alternating:4)").unwrap().order(),
            Some(72)
        );
    }

    #[test]
    fn errors_report_position() {
        assert_eq!(
            parse("dihedral:x").unwrap_err(),
            Error::Parse { pos: 9, expected: "an integer".into() }
        );
        assert!(matches!(parse("dihedral 4"), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse("foo:3"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("abelian:4^1"), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse("cyclic:3 "), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse("gendicyclic:4,c"), Err(Error::Parse { pos: 14, .. })));
        assert!(matches!(parse("product:(cyclic:2)"), Err(Error::Parse { pos: 18, .. })));
        assert!(matches!(parse("product:(cyclic:2)*(cyclic:3"), Err(Error::Parse { pos: 28, .. })));
    }

    #[test]
    fn order_matches_built_group() {
        let cfg = GroupConfig::default();
        for s in [
            "cyclic:7",
            "abelian:2^1,2^2",
            "dihedral:5",
            "quaternion:4",
            "semidihedral:4",
            "modular:3,3",
            "dicyclic:3",
            "gendicyclic:4,b",
            "symmetric:4",
            "alternating:4",
            "product:(symmetric:3)*(cyclic:5)",
        ] {
            let spec = parse(s).unwrap();
            assert_eq!(spec.order(), Some(spec.build(&cfg).unwrap().order() as u128), "{s}");
        }
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let leaf = prop_oneof![
            (1u64..100).prop_map(GroupSpec::Cyclic),
            prop::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..4), 1..4)
                .prop_map(GroupSpec::Abelian),
            (3u64..50).prop_map(GroupSpec::Dihedral),
            (3u32..8).prop_map(GroupSpec::Quaternion),
            (prop::sample::select(vec![2u64, 3, 5]), 3u32..6).prop_map(|(p, n)| GroupSpec::Modular { p, n }),
            (1u64..30, prop::sample::select(Gamma2Choice::ALL.to_vec()))
                .prop_map(|(n, choice)| GroupSpec::GenDicyclic { n, choice }),
            (1u32..7).prop_map(GroupSpec::Symmetric),
        ];
        leaf.prop_recursive(2, 6, 3, |inner| {
            prop::collection::vec(inner, 2..4).prop_map(GroupSpec::Product)
        })
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(parse(&text).unwrap(), spec);
        }
    }
}
