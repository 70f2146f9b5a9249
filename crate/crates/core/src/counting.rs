//! CF₂, F₂, sd and csd, by direct pair enumeration and through the Möbius
//! inversion identities over the subgroup lattice.
//!
//! All pair counts are over ordered pairs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{MobiusTable, SubgroupLattice};

/// Exact fraction, always reduced with a positive denominator.
pub type ExactRational = BigRational;

fn ratio(num: u64, den: u64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn product_is(a: &Subgroup, b: &Subgroup, target: usize) -> bool {
    a.order() * b.order() == target * a.members().intersection_count(b.members())
}

/// Number of ordered pairs (H, K) from `subgroups` with |HK| = `target`.
fn count_factorizations(subgroups: &[&Subgroup], target: usize) -> u64 {
    subgroups
        .par_iter()
        .map(|a| {
            subgroups
                .iter()
                .filter(|b| product_is(a, b, target))
                .count() as u64
        })
        .sum()
}

/// CF₂ counted over an explicit list of the cyclic subgroups of `g`. Lets
/// large groups skip full lattice enumeration.
pub fn cf2_from_cyclic(g: &FiniteGroup, cyclic: &[Subgroup]) -> u64 {
    let refs: Vec<&Subgroup> = cyclic.iter().collect();
    count_factorizations(&refs, g.order())
}

fn below_refs(lat: &SubgroupLattice, h: usize, cyclic_only: bool) -> Vec<&Subgroup> {
    lat.below(h)
        .iter()
        .filter(|&i| !cyclic_only || lat.is_cyclic(i))
        .map(|i| lat.subgroup(i))
        .collect()
}

/// Ordered pairs of cyclic subgroups with HK = G.
pub fn cf2_bruteforce(g: &FiniteGroup, lat: &SubgroupLattice) -> u64 {
    subgroup_cf2(g, lat, lat.top())
}

/// Ordered pairs of subgroups with HK = G.
pub fn f2_bruteforce(g: &FiniteGroup, lat: &SubgroupLattice) -> u64 {
    subgroup_f2(g, lat, lat.top())
}

/// CF₂ of the subgroup at index `h`, counted on its restricted lattice.
pub fn subgroup_cf2(_g: &FiniteGroup, lat: &SubgroupLattice, h: usize) -> u64 {
    count_factorizations(&below_refs(lat, h, true), lat.subgroup(h).order())
}

/// F₂ of the subgroup at index `h`, counted on its restricted lattice.
pub fn subgroup_f2(_g: &FiniteGroup, lat: &SubgroupLattice, h: usize) -> u64 {
    count_factorizations(&below_refs(lat, h, false), lat.subgroup(h).order())
}

/// Symmetric permutability relation over lattice indices: row `i` holds
/// every `j` with HᵢHⱼ = HⱼHᵢ. Restricted to cyclic subgroups when
/// `cyclic_only` is set.
fn permutability(g: &FiniteGroup, lat: &SubgroupLattice, cyclic_only: bool) -> Vec<BitSet> {
    let idx: Vec<usize> = (0..lat.len())
        .filter(|&i| !cyclic_only || lat.is_cyclic(i))
        .collect();
    let upper: Vec<Vec<usize>> = idx
        .par_iter()
        .enumerate()
        .map(|(pos, &i)| {
            idx[pos..]
                .iter()
                .copied()
                .filter(|&j| g.permutes(lat.subgroup(i), lat.subgroup(j)))
                .collect()
        })
        .collect();
    let mut rows = vec![BitSet::new(lat.len()); lat.len()];
    for (&i, js) in idx.iter().zip(&upper) {
        for &j in js {
            rows[i].insert(j);
            rows[j].insert(i);
        }
    }
    rows
}

fn permuting_pairs_below(lat: &SubgroupLattice, rows: &[BitSet], h: usize, cyclic_only: bool) -> u64 {
    lat.below(h)
        .iter()
        .filter(|&a| !cyclic_only || lat.is_cyclic(a))
        .map(|a| rows[a].intersection_count(lat.below(h)) as u64)
        .sum()
}

fn degree(lat: &SubgroupLattice, rows: &[BitSet], h: usize, cyclic_only: bool) -> ExactRational {
    let n = if cyclic_only {
        lat.cyclic_poset_size(h)
    } else {
        lat.sublattice_size(h)
    } as u64;
    ratio(permuting_pairs_below(lat, rows, h, cyclic_only), n * n)
}

/// Subgroup commutativity degree: the fraction of ordered pairs in L(G)²
/// that permute.
pub fn sd(g: &FiniteGroup, lat: &SubgroupLattice) -> ExactRational {
    degree(lat, &permutability(g, lat, false), lat.top(), false)
}

/// Cyclic subgroup commutativity degree: as [`sd`] over L₁(G)².
pub fn csd(g: &FiniteGroup, lat: &SubgroupLattice) -> ExactRational {
    degree(lat, &permutability(g, lat, true), lat.top(), true)
}

/// sd(H) for every subgroup H, indexed like the lattice.
pub fn sd_all(g: &FiniteGroup, lat: &SubgroupLattice) -> Vec<ExactRational> {
    let rows = permutability(g, lat, false);
    (0..lat.len()).map(|h| degree(lat, &rows, h, false)).collect()
}

/// csd(H) for every subgroup H, indexed like the lattice.
pub fn csd_all(g: &FiniteGroup, lat: &SubgroupLattice) -> Vec<ExactRational> {
    let rows = permutability(g, lat, true);
    (0..lat.len()).map(|h| degree(lat, &rows, h, true)).collect()
}

fn top_mobius(lat: &SubgroupLattice, mob: &MobiusTable) -> Result<Vec<BigInt>> {
    (0..lat.len())
        .map(|h| {
            mob.get(h, lat.top())
                .cloned()
                .ok_or_else(|| Error::Consistency(format!("Möbius table lacks µ({h}, G)")))
        })
        .collect()
}

fn to_count(value: ExactRational, what: &str) -> Result<u64> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Consistency(format!("{what} evaluated to {value}, not a non-negative integer")));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Consistency(format!("{what} = {value} does not fit in 64 bits")))
}

/// Σ_{H ≤ G} degree(H) · |poset(H)|² · µ(H, G).
fn inversion_sum(lat: &SubgroupLattice, degrees: &[ExactRational], mu: &[BigInt], cyclic_only: bool) -> ExactRational {
    let mut total = ExactRational::zero();
    for h in 0..lat.len() {
        if mu[h].is_zero() {
            continue;
        }
        let size = if cyclic_only {
            lat.cyclic_poset_size(h)
        } else {
            lat.sublattice_size(h)
        } as u64;
        total += &degrees[h] * ratio(size * size, 1) * BigRational::from_integer(mu[h].clone());
    }
    total
}

/// CF₂(G) = Σ_{H ≤ G} csd(H) |L₁(H)|² µ(H, G).
pub fn cf2_mobius(g: &FiniteGroup, lat: &SubgroupLattice, mob: &MobiusTable) -> Result<u64> {
    let mu = top_mobius(lat, mob)?;
    to_count(inversion_sum(lat, &csd_all(g, lat), &mu, true), "CF2 Möbius sum")
}

/// F₂(G) = Σ_{H ≤ G} sd(H) |L(H)|² µ(H, G).
pub fn f2_mobius(g: &FiniteGroup, lat: &SubgroupLattice, mob: &MobiusTable) -> Result<u64> {
    let mu = top_mobius(lat, mob)?;
    to_count(inversion_sum(lat, &sd_all(g, lat), &mu, false), "F2 Möbius sum")
}

/// sd(G) = (1 / |L(G)|²) Σ_{H ≤ G} F₂(H).
pub fn sd_from_subgroup_f2(g: &FiniteGroup, lat: &SubgroupLattice) -> ExactRational {
    let sum: u64 = (0..lat.len()).map(|h| subgroup_f2(g, lat, h)).sum();
    let n = lat.len() as u64;
    ratio(sum, n * n)
}

/// csd(G) = (1 / |L₁(G)|²) Σ_{H ≤ G} CF₂(H).
pub fn csd_from_subgroup_cf2(g: &FiniteGroup, lat: &SubgroupLattice) -> ExactRational {
    let sum: u64 = (0..lat.len()).map(|h| subgroup_cf2(g, lat, h)).sum();
    let n = lat.cyclic_indices().len() as u64;
    ratio(sum, n * n)
}

/// Product of the factors' CF₂ values; only valid for pairwise coprime
/// orders, where it equals CF₂ of the direct product.
pub fn cf2_coprime_product(parts: &[(&FiniteGroup, &SubgroupLattice)]) -> Result<u64> {
    for (i, (a, _)) in parts.iter().enumerate() {
        for (b, _) in &parts[i + 1..] {
            if a.order().gcd(&b.order()) != 1 {
                return Err(Error::validation(format!(
                    "orders of {} and {} are not coprime",
                    a.name(),
                    b.name()
                )));
            }
        }
    }
    Ok(parts.iter().map(|(g, lat)| cf2_bruteforce(g, lat)).product())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Mobius,
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub group_name: String,
    pub order: usize,
    pub cf2: u64,
    pub f2: u64,
    pub sd: ExactRational,
    pub csd: ExactRational,
    pub lattice_size: usize,
    pub cyclic_poset_size: usize,
    pub method: Method,
}

impl InvariantReport {
    /// Computes every invariant by one route. `Method::Formula` only covers
    /// CF₂ and is handled by the formulas module, so it is rejected here.
    pub fn compute(g: &FiniteGroup, lat: &SubgroupLattice, method: Method) -> Result<Self> {
        let (cf2, f2, sd_v, csd_v) = match method {
            Method::Bruteforce => (cf2_bruteforce(g, lat), f2_bruteforce(g, lat), sd(g, lat), csd(g, lat)),
            Method::Mobius => {
                let mob = crate::lattice::mobius_top_table(lat);
                (
                    cf2_mobius(g, lat, &mob)?,
                    f2_mobius(g, lat, &mob)?,
                    sd_from_subgroup_f2(g, lat),
                    csd_from_subgroup_cf2(g, lat),
                )
            }
            Method::Formula => {
                return Err(Error::validation("formula route only yields CF2; use the formulas module"))
            }
        };
        Ok(InvariantReport {
            group_name: g.name().to_string(),
            order: g.order(),
            cf2,
            f2,
            sd: sd_v,
            csd: csd_v,
            lattice_size: lat.len(),
            cyclic_poset_size: lat.cyclic_indices().len(),
            method,
        })
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::lattice::{enumerate_subgroups, mobius_top_table};

    fn lat_of(g: &FiniteGroup) -> SubgroupLattice {
        enumerate_subgroups(g).unwrap()
    }

    #[test]
    fn example_constants() {
        let g = abelian(&[(3, 1), (3, 1)]).unwrap();
        assert_eq!(cf2_bruteforce(&g, &lat_of(&g)), 12);
        let g = symmetric(3).unwrap();
        assert_eq!(cf2_bruteforce(&g, &lat_of(&g)), 6);
        for p in [2, 3, 5, 7, 11] {
            let g = cyclic(p).unwrap();
            assert_eq!(cf2_bruteforce(&g, &lat_of(&g)), 3);
        }
    }

    #[test]
    fn klein_four_f2() {
        let g = abelian(&[(2, 1), (2, 1)]).unwrap();
        let lat = lat_of(&g);
        // (G, X), (X, G) for the 5 subgroups X, plus 6 ordered pairs of distinct lines
        assert_eq!(f2_bruteforce(&g, &lat), 15);
        assert_eq!(cf2_bruteforce(&g, &lat), 6);
    }

    #[test]
    fn cf2_equals_f2_for_cyclic() {
        for n in 1..=30 {
            let g = cyclic(n).unwrap();
            let lat = lat_of(&g);
            assert_eq!(cf2_bruteforce(&g, &lat), f2_bruteforce(&g, &lat));
        }
        let g = symmetric(3).unwrap();
        let lat = lat_of(&g);
        assert!(f2_bruteforce(&g, &lat) > cf2_bruteforce(&g, &lat));
    }

    #[test]
    fn degrees_of_abelian_and_s3() {
        let g = abelian(&[(2, 1), (2, 2)]).unwrap();
        let lat = lat_of(&g);
        assert_eq!(sd(&g, &lat), ratio(1, 1));
        assert_eq!(csd(&g, &lat), ratio(1, 1));
        // S3: six subgroups, the three order-2 subgroups pairwise fail to permute
        let g = symmetric(3).unwrap();
        let lat = lat_of(&g);
        assert_eq!(sd(&g, &lat), ratio(36 - 6, 36));
        assert_eq!(csd(&g, &lat), ratio(25 - 6, 25));
    }

    #[test]
    fn trivial_group_degrees_are_one() {
        let g = cyclic(1).unwrap();
        let lat = lat_of(&g);
        assert_eq!(sd(&g, &lat), ratio(1, 1));
        assert_eq!(csd(&g, &lat), ratio(1, 1));
        assert_eq!(cf2_bruteforce(&g, &lat), 1);
    }

    #[test]
    fn mobius_routes_match_bruteforce() {
        for g in [
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            dihedral(6).unwrap(),
            quaternion(4).unwrap(),
            abelian(&[(2, 1), (2, 1), (2, 1)]).unwrap(),
            dicyclic(3).unwrap(),
        ] {
            let lat = lat_of(&g);
            let mob = mobius_top_table(&lat);
            assert_eq!(cf2_mobius(&g, &lat, &mob).unwrap(), cf2_bruteforce(&g, &lat), "{}", g.name());
            assert_eq!(f2_mobius(&g, &lat, &mob).unwrap(), f2_bruteforce(&g, &lat), "{}", g.name());
            assert_eq!(sd_from_subgroup_f2(&g, &lat), sd(&g, &lat));
            assert_eq!(csd_from_subgroup_cf2(&g, &lat), csd(&g, &lat));
        }
    }

    #[test]
    fn mobius_route_rejects_bad_table() {
        let g = symmetric(3).unwrap();
        let lat = lat_of(&g);
        let other = lat_of(&cyclic(2).unwrap());
        let mob = mobius_top_table(&other);
        assert!(matches!(cf2_mobius(&g, &lat, &mob), Err(Error::Consistency(_))));
    }

    #[test]
    fn coprime_product_rule() {
        let z4 = cyclic(4).unwrap();
        let z3 = cyclic(3).unwrap();
        let (l4, l3) = (lat_of(&z4), lat_of(&z3));
        assert_eq!(cf2_coprime_product(&[(&z4, &l4), (&z3, &l3)]).unwrap(), 15);
        let s3 = symmetric(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let (ls, l2) = (lat_of(&s3), lat_of(&z2));
        assert!(matches!(cf2_coprime_product(&[(&s3, &ls), (&z2, &l2)]), Err(Error::Validation(_))));
        let triv = cyclic(1).unwrap();
        let lt = lat_of(&triv);
        assert_eq!(cf2_coprime_product(&[(&triv, &lt), (&s3, &ls)]).unwrap(), 6);
    }

    #[test]
    fn report_methods_agree() {
        let g = dihedral(5).unwrap();
        let lat = lat_of(&g);
        let a = InvariantReport::compute(&g, &lat, Method::Bruteforce).unwrap();
        let b = InvariantReport::compute(&g, &lat, Method::Mobius).unwrap();
        assert_eq!((a.cf2, a.f2, &a.sd, &a.csd), (b.cf2, b.f2, &b.sd, &b.csd));
        assert_eq!(a.cf2, 10);
        assert!(InvariantReport::compute(&g, &lat, Method::Formula).is_err());
    }
}
