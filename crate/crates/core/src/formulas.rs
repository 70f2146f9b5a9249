//! Closed-form CF₂ values for the supported families, and the elementary
//! number theory they use.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::Gamma2Choice;
use crate::numtheory::{factorize, is_prime};
use crate::spec::GroupSpec;

pub use crate::numtheory::{mobius_nt, tau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// Π(2αᵢ+1) for cyclic groups.
    Cyclic,
    /// Abelian p-groups of rank 1, 2 and ≥ 3.
    AbelianP,
    /// Products of coprime-order factors, each with its own formula.
    CoprimeProduct,
    Dihedral,
    Quaternion,
    Semidihedral,
    Modular,
    /// 4n − 2 for M(2^n).
    Modular2,
    Dicyclic,
    GenDicyclic,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormulaId::Cyclic => "cyclic",
            FormulaId::AbelianP => "abelian-p",
            FormulaId::CoprimeProduct => "coprime-product",
            FormulaId::Dihedral => "dihedral",
            FormulaId::Quaternion => "quaternion",
            FormulaId::Semidihedral => "semidihedral",
            FormulaId::Modular => "modular",
            FormulaId::Modular2 => "modular2",
            FormulaId::Dicyclic => "dicyclic",
            FormulaId::GenDicyclic => "gendicyclic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub spec: GroupSpec,
    pub value: BigInt,
    pub formula_id: FormulaId,
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn domain(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Validation(msg()))
    }
}

/// CF₂(Z_n) = Π (2αᵢ + 1) over n = Π pᵢ^αᵢ.
pub fn cf2_cyclic_formula(n: u64) -> Result<BigInt> {
    domain(n >= 1, || "cyclic formula needs n >= 1".into())?;
    Ok(factorize(n).iter().map(|&(_, a)| big(2 * a as u64 + 1)).product())
}

/// CF₂ of Z_{p^α₁} × … × Z_{p^α_k} with α₁ ≤ … ≤ α_k.
pub fn cf2_abelian_p_formula(p: u64, alphas: &[u32]) -> Result<BigInt> {
    domain(is_prime(p), || format!("{p} is not prime"))?;
    domain(!alphas.is_empty(), || "need at least one exponent".into())?;
    domain(alphas.iter().all(|&a| a >= 1), || "exponents must be >= 1".into())?;
    domain(alphas.windows(2).all(|w| w[0] <= w[1]), || "exponents must be non-decreasing".into())?;
    Ok(match *alphas {
        [a] => big(2 * a as u64 + 1),
        [a1, a2] => {
            let (a1, a2) = (BigInt::from(a1), BigInt::from(a2));
            let p = big(p);
            let two = BigInt::from(2);
            let lead = num_traits::pow(p.clone(), (2 * alphas[0] - 1) as usize);
            let bracket = (&two * &a2 - &two * &a1 + 1) * &p - &two * &a2 + &two * &a1 + 1;
            lead * bracket
        }
        _ => BigInt::zero(),
    })
}

/// CF₂(D_{2n}) = 2n.
pub fn cf2_dihedral_formula(n: u64) -> Result<BigInt> {
    domain(n >= 3, || format!("dihedral formula needs n >= 3, got {n}"))?;
    Ok(big(2 * n))
}

/// CF₂(Q_{2^n}): 6 for Q₈, 2^{n−1} from n = 4 on.
pub fn cf2_quaternion_formula(n: u32) -> Result<BigInt> {
    domain(n >= 3, || format!("quaternion formula needs n >= 3, got {n}"))?;
    Ok(if n == 3 { big(6) } else { BigInt::one() << (n - 1) })
}

/// CF₂(S_{2^n}) = 3 · 2^{n−2}.
pub fn cf2_semidihedral_formula(n: u32) -> Result<BigInt> {
    domain(n >= 4, || format!("semidihedral formula needs n >= 4, got {n}"))?;
    Ok(big(3) << (n - 2))
}

/// CF₂(M(p^n)): 8 for M(8) ≅ D₈, otherwise
/// p[(2n−4)(p−1) − p + 3] + 2p(p−1).
///
/// The general branch also holds at n = 3 for odd p (checked by
/// enumeration on M(27), M(125), M(343)); only p = 2, n = 3 is special.
pub fn cf2_modular_formula(p: u64, n: u32) -> Result<BigInt> {
    domain(is_prime(p), || format!("{p} is not prime"))?;
    domain(n >= 3, || format!("modular formula needs n >= 3, got {n}"))?;
    if p == 2 && n == 3 {
        return Ok(big(8));
    }
    let (p, n) = (BigInt::from(p), BigInt::from(n));
    let one = BigInt::one();
    Ok(&p * ((BigInt::from(2) * &n - 4) * (&p - &one) - &p + 3) + BigInt::from(2) * &p * (&p - &one))
}

/// CF₂(M(2^n)) = 4n − 2 for n ≥ 4.
pub fn cf2_modular2_formula(n: u32) -> Result<BigInt> {
    domain(n >= 4, || format!("modular 2-group formula needs n >= 4, got {n}"))?;
    Ok(big(4 * n as u64 - 2))
}

/// CF₂(Dic_{4n}): 5 and 6 for Dic₄ ≅ Z₄ and Dic₈ ≅ Q₈; for n ≥ 3, 4n when
/// n is odd and 2n when n is even.
pub fn cf2_dicyclic_formula(n: u64) -> Result<BigInt> {
    domain(n >= 1, || "dicyclic formula needs n >= 1".into())?;
    Ok(match n {
        1 => big(5),
        2 => big(6),
        _ if n % 2 == 1 => big(4 * n),
        _ => big(2 * n),
    })
}

/// Case of the generalized dicyclic formula, by `n = 2^m · m'` (m' odd)
/// and the choice of γ².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenDicyclicCase {
    /// m = 1, m' > 1, any γ²; or m ≥ 2 and γ² ∈ {b, a^{n/2} b}. CF₂ = 4n.
    Full,
    /// m ≥ 2, m' > 1, γ² = a^{n/2}. CF₂ = 0.
    InvolutionInCenterOddPart,
    /// m ≥ 2, m' = 1, γ² = a^{n/2}: Z₂ × Q_{2^{m+1}}. CF₂ = 0.
    QuaternionTimesZ2,
    /// n = 2: the abelian group Z₄ × Z₂ for every choice. CF₂ = 10.
    OrderEight,
}

/// Splits `n = 2^m · m'` with `m'` odd.
pub fn two_adic_split(n: u64) -> (u32, u64) {
    let m = n.trailing_zeros();
    (m, n >> m)
}

pub fn gen_dicyclic_case(n: u64, choice: Gamma2Choice) -> Result<GenDicyclicCase> {
    domain(n >= 1, || "generalized dicyclic formula needs n >= 1".into())?;
    let (m, odd) = two_adic_split(n);
    domain(m >= 1, || format!("generalized dicyclic formula needs n even, got n = {n}"))?;
    Ok(match (m, odd, choice) {
        (1, 1, _) => GenDicyclicCase::OrderEight,
        (1, _, _) => GenDicyclicCase::Full,
        (_, _, Gamma2Choice::B | Gamma2Choice::AHalfB) => GenDicyclicCase::Full,
        (_, 1, Gamma2Choice::AHalf) => GenDicyclicCase::QuaternionTimesZ2,
        (_, _, Gamma2Choice::AHalf) => GenDicyclicCase::InvolutionInCenterOddPart,
    })
}

/// CF₂(Dic_{4n}(A)) for `A = Z_n × Z_2`, `n` even.
pub fn cf2_gen_dicyclic_formula(n: u64, choice: Gamma2Choice) -> Result<BigInt> {
    Ok(match gen_dicyclic_case(n, choice)? {
        GenDicyclicCase::Full => big(4 * n),
        GenDicyclicCase::InvolutionInCenterOddPart | GenDicyclicCase::QuaternionTimesZ2 => BigInt::zero(),
        // Z4 x Z2, by the rank-2 abelian formula
        GenDicyclicCase::OrderEight => cf2_abelian_p_formula(2, &[1, 2])?,
    })
}

/// The two kinds of subgroups of D_{2n}: cyclic `H_d = ⟨x^{n/d}⟩` and
/// dihedral `K_d^i = ⟨x^{n/d}, x^{i−1} y⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralKind {
    Rotation,
    Dihedral,
}

/// 1 for odd d, 2 for even d.
pub fn parity_index(d: u64) -> u64 {
    if d.is_multiple_of(2) {
        2
    } else {
        1
    }
}

/// csd of the order-d cyclic subgroup or an order-2d dihedral subgroup of
/// a dihedral group.
pub fn csd_dihedral_subgroup_formula(d: u64, kind: DihedralKind) -> Result<BigRational> {
    domain(d >= 1, || "d must be >= 1".into())?;
    Ok(match kind {
        DihedralKind::Rotation => BigRational::one(),
        DihedralKind::Dihedral => {
            let t = tau(d);
            let num = t * (t + d) + d * (t + parity_index(d));
            BigRational::new(big(num), big((t + d) * (t + d)))
        }
    })
}

/// µ(H_d, D_{2n}) = −(n/d) µ(n/d) and µ(K_d^i, D_{2n}) = µ(n/d).
pub fn dihedral_mobius_formula(n: u64, d: u64, kind: DihedralKind) -> Result<i64> {
    domain(d >= 1 && n.is_multiple_of(d), || format!("{d} does not divide {n}"))?;
    let q = n / d;
    Ok(match kind {
        DihedralKind::Rotation => -(q as i64) * mobius_nt(q),
        DihedralKind::Dihedral => mobius_nt(q),
    })
}

/// Picks the closed form that applies to `spec`, if any.
pub fn formula_for(spec: &GroupSpec) -> Option<Result<FormulaResult>> {
    let wrap = |value: Result<BigInt>, id| {
        value.map(|value| FormulaResult {
            spec: spec.clone(),
            value,
            formula_id: id,
        })
    };
    Some(match spec {
        GroupSpec::Cyclic(n) => wrap(cf2_cyclic_formula(*n), FormulaId::Cyclic),
        GroupSpec::Abelian(factors) => {
            let mut primes: Vec<u64> = factors.iter().map(|f| f.0).collect();
            primes.sort_unstable();
            primes.dedup();
            let per_prime = primes.iter().map(|&p| {
                let mut alphas: Vec<u32> = factors.iter().filter(|f| f.0 == p).map(|f| f.1).collect();
                alphas.sort_unstable();
                cf2_abelian_p_formula(p, &alphas)
            });
            let value = per_prime.collect::<Result<Vec<_>>>().map(|v| v.into_iter().product());
            let id = if primes.len() == 1 { FormulaId::AbelianP } else { FormulaId::CoprimeProduct };
            wrap(value, id)
        }
        GroupSpec::Dihedral(n) => wrap(cf2_dihedral_formula(*n), FormulaId::Dihedral),
        GroupSpec::Quaternion(n) => wrap(cf2_quaternion_formula(*n), FormulaId::Quaternion),
        GroupSpec::Semidihedral(n) => wrap(cf2_semidihedral_formula(*n), FormulaId::Semidihedral),
        GroupSpec::Modular { p: 2, n } if *n >= 4 => wrap(cf2_modular2_formula(*n), FormulaId::Modular2),
        GroupSpec::Modular { p, n } => wrap(cf2_modular_formula(*p, *n), FormulaId::Modular),
        GroupSpec::Dicyclic(n) => wrap(cf2_dicyclic_formula(*n), FormulaId::Dicyclic),
        GroupSpec::GenDicyclic { n, choice } => wrap(cf2_gen_dicyclic_formula(*n, *choice), FormulaId::GenDicyclic),
        GroupSpec::Symmetric(_) | GroupSpec::Alternating(_) => return None,
        GroupSpec::Product(parts) => {
            let orders: Vec<u128> = parts.iter().map(|s| s.order()).collect::<Option<_>>()?;
            for (i, a) in orders.iter().enumerate() {
                for b in &orders[i + 1..] {
                    if num_integer::gcd(*a, *b) != 1 {
                        return None;
                    }
                }
            }
            let mut value = BigInt::one();
            for part in parts {
                match formula_for(part)? {
                    Ok(r) => value *= r.value,
                    Err(e) => return Some(Err(e)),
                }
            }
            wrap(Ok(value), FormulaId::CoprimeProduct)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::divisors;

    #[test]
    fn cyclic_formula_values() {
        assert_eq!(cf2_cyclic_formula(1).unwrap(), big(1));
        assert_eq!(cf2_cyclic_formula(32).unwrap(), big(11));
        assert_eq!(cf2_cyclic_formula(12).unwrap(), big(15));
    }

    #[test]
    fn abelian_p_formula_values() {
        assert_eq!(cf2_abelian_p_formula(3, &[1, 1]).unwrap(), big(12));
        assert_eq!(cf2_abelian_p_formula(2, &[1, 1, 1]).unwrap(), big(0));
        assert_eq!(cf2_abelian_p_formula(2, &[1, 2]).unwrap(), big(10));
        assert_eq!(cf2_abelian_p_formula(5, &[3]).unwrap(), big(7));
        assert!(cf2_abelian_p_formula(2, &[2, 1]).is_err());
        assert!(cf2_abelian_p_formula(4, &[1]).is_err());
    }

    #[test]
    fn family_formula_values() {
        assert_eq!(cf2_dihedral_formula(3).unwrap(), big(6));
        assert_eq!(cf2_quaternion_formula(3).unwrap(), big(6));
        assert_eq!(cf2_quaternion_formula(5).unwrap(), big(16));
        assert_eq!(cf2_semidihedral_formula(4).unwrap(), big(12));
        assert_eq!(cf2_modular_formula(2, 3).unwrap(), big(8));
        assert_eq!(cf2_modular_formula(2, 5).unwrap(), big(18));
        assert_eq!(cf2_modular_formula(3, 4).unwrap(), big(36));
        assert_eq!(cf2_dicyclic_formula(1).unwrap(), big(5));
        assert_eq!(cf2_dicyclic_formula(2).unwrap(), big(6));
        assert!(cf2_semidihedral_formula(3).is_err());
        assert!(cf2_dihedral_formula(2).is_err());
    }

    #[test]
    fn modular2_is_special_case_of_modular() {
        for n in 4..=64 {
            assert_eq!(cf2_modular_formula(2, n).unwrap(), cf2_modular2_formula(n).unwrap());
        }
    }

    #[test]
    fn divisor_sum_identities() {
        for n in 3..=1000u64 {
            let ds = divisors(n);
            let s1: i64 = ds.iter().map(|&d| tau(d) as i64 * mobius_nt(n / d)).sum();
            let s2: i64 = ds.iter().map(|&d| parity_index(d) as i64 * mobius_nt(n / d)).sum();
            assert_eq!((s1, s2), (1, 0), "n = {n}");
        }
        for n in 1..=1000u64 {
            let s: i64 = divisors(n).iter().map(|&d| tau(d) as i64 * mobius_nt(n / d)).sum();
            assert_eq!(s, 1);
        }
    }

    #[test]
    fn dihedral_sum_reassembles_to_2n() {
        // evaluate the inversion sum with the closed forms for csd, |L1| and µ
        for n in 3..=200u64 {
            let mut total = BigRational::zero();
            for d in divisors(n) {
                let t = tau(d);
                let h = csd_dihedral_subgroup_formula(d, DihedralKind::Rotation).unwrap()
                    * BigRational::from_integer(big(t * t))
                    * BigRational::from_integer(dihedral_mobius_formula(n, d, DihedralKind::Rotation).unwrap().into());
                let k = csd_dihedral_subgroup_formula(d, DihedralKind::Dihedral).unwrap()
                    * BigRational::from_integer(big((t + d) * (t + d)))
                    * BigRational::from_integer(dihedral_mobius_formula(n, d, DihedralKind::Dihedral).unwrap().into())
                    * BigRational::from_integer(big(n / d));
                total += h + k;
            }
            assert_eq!(total, BigRational::from_integer(big(2 * n)), "n = {n}");
        }
    }

    #[test]
    fn dihedral_mobius_rejects_non_divisor() {
        assert!(dihedral_mobius_formula(12, 5, DihedralKind::Rotation).is_err());
    }

    #[test]
    fn gen_dicyclic_domain() {
        assert!(cf2_gen_dicyclic_formula(3, Gamma2Choice::B).is_err());
        assert_eq!(cf2_gen_dicyclic_formula(6, Gamma2Choice::B).unwrap(), big(24));
        assert_eq!(cf2_gen_dicyclic_formula(12, Gamma2Choice::AHalf).unwrap(), big(0));
        assert_eq!(two_adic_split(24), (3, 3));
    }

    #[test]
    fn dispatch_by_spec() {
        let s: GroupSpec = "abelian:2^2,3^1".parse().unwrap();
        let r = formula_for(&s).unwrap().unwrap();
        assert_eq!((r.value, r.formula_id), (big(15), FormulaId::CoprimeProduct));
        let s: GroupSpec = "modular:2,5".parse().unwrap();
        assert_eq!(formula_for(&s).unwrap().unwrap().formula_id, FormulaId::Modular2);
        assert!(formula_for(&"symmetric:4".parse().unwrap()).is_none());
        assert!(formula_for(&"product:(symmetric:3)*(cyclic:2)".parse().unwrap()).is_none());
        let r = formula_for(&"product:(symmetric:3)*(cyclic:5)".parse().unwrap());
        assert!(r.is_none(), "no closed form for S3");
    }
}
