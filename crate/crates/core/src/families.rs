//! Builders for the concrete group families.
//!
//! Each family is built from a concrete element encoding and compiled to a
//! Cayley table; the defining relations are then re-checked on the table.
//!
//! Element orderings (identity is always index 0):
//! - `Z_n`: residues `0..n`.
//! - abelian products: mixed-radix tuples, last factor fastest.
//! - two-generator families (`D`, `Q`, `SD`, `M`, `Dic`): `x^i y^j` in order
//!   of `(j, i)`, i.e. all powers of `x` first.
//! - generalized dicyclic: `a^i b^j γ^e` in order of `(e, j, i)`.
//! - `S_n` / `A_n`: permutations of `0..n` in lexicographic rank order,
//!   composed right to left (`(στ)(i) = σ(τ(i))`).

use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, GroupConfig};
use crate::numtheory::is_prime;

/// Which element of `A \ {e}` the square of γ is, in a generalized dicyclic
/// group over `A = Z_n × Z_2 = ⟨a⟩ × ⟨b⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gamma2Choice {
    AHalf,
    B,
    AHalfB,
}

impl Gamma2Choice {
    pub const ALL: [Gamma2Choice; 3] = [Gamma2Choice::AHalf, Gamma2Choice::B, Gamma2Choice::AHalfB];

    pub fn token(self) -> &'static str {
        match self {
            Gamma2Choice::AHalf => "ahalf",
            Gamma2Choice::B => "b",
            Gamma2Choice::AHalfB => "ahalfb",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.token() == s)
    }

    /// Whether this choice names an element of order 2 in `Z_n × Z_2`.
    pub fn valid_for(self, n: u64) -> bool {
        match self {
            Gamma2Choice::B => true,
            Gamma2Choice::AHalf | Gamma2Choice::AHalfB => n.is_multiple_of(2),
        }
    }
}

fn pow_checked(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

fn capacity(cfg: &GroupConfig, order: Option<u64>) -> Result<usize> {
    match order {
        Some(o) => {
            cfg.check_order(o as u128)?;
            Ok(o as usize)
        }
        None => Err(Error::Capacity {
            what: "group order",
            got: u128::MAX,
            limit: cfg.max_order as u128,
        }),
    }
}

fn relation(ok: bool, name: &str, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Structural(format!("{name}: relation {what} fails on the built table")))
    }
}

/// `⟨x, y | x^m = 1, y^s = x^t, y x y^{-1} = x^u⟩` on elements `x^i y^j`.
fn two_generator(name: String, m: u64, s: u64, t: u64, u: u64, cfg: &GroupConfig) -> Result<FiniteGroup> {
    capacity(cfg, m.checked_mul(s))?;
    let mut upow = vec![1u64 % m; s as usize];
    for j in 1..s as usize {
        upow[j] = upow[j - 1] * u % m;
    }
    let elements: Vec<(u64, u64)> = (0..s).flat_map(|j| (0..m).map(move |i| (i, j))).collect();
    FiniteGroup::from_elements(
        name,
        &elements,
        |&(i, j), &(k, l)| {
            let mut e = i + k * upow[j as usize] % m;
            if j + l >= s {
                e += t;
            }
            (e % m, (j + l) % s)
        },
        cfg,
    )
}

fn x_of(m: u64) -> ElementId {
    ElementId(if m > 1 { 1 } else { 0 })
}

fn y_of(m: u64) -> ElementId {
    ElementId(m as u32)
}

fn gpow(g: &FiniteGroup, a: ElementId, k: u64) -> ElementId {
    g.pow(a, k).expect("element in range")
}

impl GroupConfig {
    pub fn cyclic(&self, n: u64) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::validation("cyclic group needs n >= 1"));
        }
        capacity(self, Some(n))?;
        let elements: Vec<u64> = (0..n).collect();
        let g = FiniteGroup::from_elements(format!("Z{n}"), &elements, |a, b| (a + b) % n, self)?;
        relation(g.is_cyclic(), g.name(), "cyclic generator")?;
        Ok(g)
    }

    /// Direct product of cyclic groups `Z_{p^a}` for each listed `(p, a)`.
    pub fn abelian(&self, factors: &[(u64, u32)]) -> Result<FiniteGroup> {
        if factors.is_empty() {
            return Err(Error::validation("abelian group needs at least one factor"));
        }
        let mut moduli = Vec::with_capacity(factors.len());
        let mut order: Option<u64> = Some(1);
        for &(p, a) in factors {
            if !is_prime(p) {
                return Err(Error::validation(format!("{p} is not prime")));
            }
            if a == 0 {
                return Err(Error::validation("prime-power exponents must be >= 1"));
            }
            let q = pow_checked(p, a);
            order = order.zip(q).and_then(|(o, q)| o.checked_mul(q));
            moduli.push(q.unwrap_or(0));
        }
        let order = capacity(self, order)?;
        let mut elements = Vec::with_capacity(order);
        let mut cur = vec![0u64; moduli.len()];
        for _ in 0..order {
            elements.push(cur.clone());
            for (digit, &m) in cur.iter_mut().zip(&moduli).rev() {
                *digit += 1;
                if *digit < m {
                    break;
                }
                *digit = 0;
            }
        }
        let name = factors
            .iter()
            .map(|&(p, a)| format!("Z{}", p.pow(a)))
            .collect::<Vec<_>>()
            .join(" x ");
        let g = FiniteGroup::from_elements(
            name,
            &elements,
            |a, b| a.iter().zip(b).zip(&moduli).map(|((x, y), m)| (x + y) % m).collect(),
            self,
        )?;
        relation(g.is_abelian(), g.name(), "commutativity")?;
        Ok(g)
    }

    /// `D_{2n}`, of order `2n`.
    pub fn dihedral(&self, n: u64) -> Result<FiniteGroup> {
        if n < 3 {
            return Err(Error::validation(format!("dihedral group needs n >= 3, got {n}")));
        }
        let g = two_generator(format!("D{}", 2 * n), n, 2, 0, n - 1, self)?;
        let (x, y) = (x_of(n), y_of(n));
        let name = g.name().to_string();
        relation(g.element_order(x)? as u64 == n, &name, "x^n = 1")?;
        relation(g.element_order(y)? == 2, &name, "y^2 = 1")?;
        relation(g.mul(g.mul(y, x), y) == g.inv(x), &name, "yxy = x^-1")?;
        Ok(g)
    }

    /// Generalized quaternion `Q_{2^n}`, of order `2^n`.
    pub fn quaternion(&self, n: u32) -> Result<FiniteGroup> {
        if n < 3 {
            return Err(Error::validation(format!("generalized quaternion group needs n >= 3, got {n}")));
        }
        capacity(self, pow_checked(2, n))?;
        let m = 1u64 << (n - 1);
        let g = two_generator(format!("Q{}", 1u64 << n), m, 2, m / 2, m - 1, self)?;
        let (x, y) = (x_of(m), y_of(m));
        let name = g.name().to_string();
        relation(g.element_order(x)? as u64 == m, &name, "x^(2^(n-1)) = 1")?;
        relation(g.element_order(y)? == 4, &name, "y^4 = 1")?;
        relation(gpow(&g, y, 2) == gpow(&g, x, m / 2), &name, "y^2 = x^(2^(n-2))")?;
        relation(g.conjugate(y, x) == g.inv(x), &name, "yxy^-1 = x^-1")?;
        Ok(g)
    }

    /// Quasi-dihedral `S_{2^n}`, of order `2^n`.
    pub fn semidihedral(&self, n: u32) -> Result<FiniteGroup> {
        if n < 4 {
            return Err(Error::validation(format!("semidihedral group needs n >= 4, got {n}")));
        }
        capacity(self, pow_checked(2, n))?;
        let m = 1u64 << (n - 1);
        let r = m / 2 - 1;
        let g = two_generator(format!("SD{}", 1u64 << n), m, 2, 0, r, self)?;
        let (x, y) = (x_of(m), y_of(m));
        let name = g.name().to_string();
        relation(g.element_order(x)? as u64 == m, &name, "x^(2^(n-1)) = 1")?;
        relation(g.element_order(y)? == 2, &name, "y^2 = 1")?;
        relation(g.mul(g.mul(y, x), y) == gpow(&g, x, r), &name, "yxy = x^(2^(n-2)-1)")?;
        Ok(g)
    }

    /// Modular p-group `M(p^n)`, of order `p^n`.
    pub fn modular(&self, p: u64, n: u32) -> Result<FiniteGroup> {
        if !is_prime(p) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        if n < 3 {
            return Err(Error::validation(format!("modular p-group needs n >= 3, got {n}")));
        }
        capacity(self, pow_checked(p, n))?;
        let m = p.pow(n - 1);
        let q = p.pow(n - 2);
        // y^-1 x y = x^(1+q)  <=>  y x y^-1 = x^(1-q)
        let g = two_generator(format!("M({p}^{n})"), m, p, 0, (m + 1 - q) % m, self)?;
        let (x, y) = (x_of(m), y_of(m));
        let name = g.name().to_string();
        relation(g.element_order(x)? as u64 == m, &name, "x^(p^(n-1)) = 1")?;
        relation(g.element_order(y)? as u64 == p, &name, "y^p = 1")?;
        relation(g.conjugate(g.inv(y), x) == gpow(&g, x, q + 1), &name, "y^-1 x y = x^(p^(n-2)+1)")?;
        Ok(g)
    }

    /// Dicyclic `Dic_{4n}`, of order `4n`.
    pub fn dicyclic(&self, n: u64) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::validation("dicyclic group needs n >= 1"));
        }
        capacity(self, n.checked_mul(4))?;
        let m = 2 * n;
        let g = two_generator(format!("Dic{}", 4 * n), m, 2, n, m - 1, self)?;
        let (a, c) = (x_of(m), y_of(m));
        let name = g.name().to_string();
        relation(g.element_order(a)? as u64 == m, &name, "a^(2n) = 1")?;
        relation(gpow(&g, c, 2) == gpow(&g, a, n), &name, "γ^2 = a^n")?;
        relation(g.conjugate(g.inv(c), a) == g.inv(a), &name, "a^γ = a^-1")?;
        Ok(g)
    }

    /// Generalized dicyclic `Dic_{4n}(A)` with `A = ⟨a⟩ × ⟨b⟩ ≅ Z_n × Z_2`.
    pub fn generalized_dicyclic(&self, n: u64, choice: Gamma2Choice) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::validation("generalized dicyclic group needs n >= 1"));
        }
        if !choice.valid_for(n) {
            return Err(Error::validation(format!(
                "γ² = {} needs n even, got n = {n}",
                choice.token()
            )));
        }
        capacity(self, n.checked_mul(4))?;
        let square: (u64, u64) = match choice {
            Gamma2Choice::AHalf => (n / 2, 0),
            Gamma2Choice::B => (0, 1),
            Gamma2Choice::AHalfB => (n / 2, 1),
        };
        let elements: Vec<(u64, u64, u64)> = (0..2)
            .flat_map(|e| (0..2).flat_map(move |j| (0..n).map(move |i| (i, j, e))))
            .collect();
        let g = FiniteGroup::from_elements(
            format!("Dic{}(A;{})", 4 * n, choice.token()),
            &elements,
            |&(i, j, e), &(k, l, f)| {
                // γ conjugates A by inversion; j is in Z_2 so it is self-inverse
                let k = if e == 1 { (n - k) % n } else { k };
                let (mut a, mut b) = (i + k, j + l);
                if e == 1 && f == 1 {
                    a += square.0;
                    b += square.1;
                }
                (a % n, b % 2, (e + f) % 2)
            },
            self,
        )?;
        let idx = |i: u64, j: u64, e: u64| ElementId((e * 2 * n + j * n + i) as u32);
        let (a, b, c) = (idx(1 % n, 0, 0), idx(0, 1, 0), idx(0, 0, 1));
        let c2 = idx(square.0, square.1, 0);
        let name = g.name().to_string();
        relation(gpow(&g, c, 2) == c2 && c2 != ElementId::IDENTITY, &name, "γ² ∈ A \\ {e}")?;
        relation(gpow(&g, c, 4) == ElementId::IDENTITY, &name, "γ^4 = e")?;
        relation(g.element_order(a)? as u64 == n && g.element_order(b)? == 2, &name, "A = Z_n x Z_2")?;
        for s in [a, b] {
            relation(g.conjugate(c, s) == g.inv(s), &name, "g^γ = g^-1")?;
        }
        Ok(g)
    }

    pub fn symmetric(&self, n: u32) -> Result<FiniteGroup> {
        self.permutation_group(n, false)
    }

    pub fn alternating(&self, n: u32) -> Result<FiniteGroup> {
        self.permutation_group(n, true)
    }

    fn permutation_group(&self, n: u32, even_only: bool) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::validation("permutation degree must be >= 1"));
        }
        let mut order: Option<u64> = (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
        if even_only && n >= 2 {
            order = order.map(|o| o / 2);
        }
        capacity(self, order)?;
        let perms: Vec<Vec<u8>> = lex_permutations(n as usize)
            .into_iter()
            .filter(|p| !even_only || is_even(p))
            .collect();
        let name = format!("{}{n}", if even_only { "A" } else { "S" });
        let g = FiniteGroup::from_elements(name, &perms, |s, t| t.iter().map(|&i| s[i as usize]).collect(), self)?;
        relation(g.order() as u64 == order.unwrap_or(0), g.name(), "order")?;
        Ok(g)
    }
}

fn lex_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    // standard next-permutation
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

fn is_even(p: &[u8]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

macro_rules! default_builder {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            #[doc = concat!("[`GroupConfig::", stringify!($name), "`] with the default configuration.")]
            pub fn $name($($arg: $ty),*) -> Result<FiniteGroup> {
                GroupConfig::default().$name($($arg),*)
            }
        )*
    };
}

default_builder! {
    cyclic(n: u64);
    abelian(factors: &[(u64, u32)]);
    dihedral(n: u64);
    quaternion(n: u32);
    semidihedral(n: u32);
    modular(p: u64, n: u32);
    dicyclic(n: u64);
    generalized_dicyclic(n: u64, choice: Gamma2Choice);
    symmetric(n: u32);
    alternating(n: u32);
}
