//! Values checked against a second, independent model: matrix groups over a
//! prime field, closed under multiplication by breadth-first search, with
//! subgroups found by testing every identity-containing subset for closure
//! and product sets formed literally as {hk}.

use std::collections::{BTreeSet, HashMap, VecDeque};

use cyfact_core::counting::{cf2_bruteforce, csd, f2_bruteforce, sd};
use cyfact_core::families;
use cyfact_core::formulas;
use cyfact_core::lattice::enumerate_subgroups;
use cyfact_core::{ElementId, FiniteGroup};
use num_rational::BigRational;

type Mat = Vec<u64>;

struct Field {
    q: u64,
    root: u64,
}

impl Field {
    fn new(q: u64) -> Self {
        let root = (2..q)
            .find(|&g| (1..q - 1).all(|k| pow_mod(g, k, q) != 1))
            .expect("prime field has a primitive root");
        Field { q, root }
    }

    /// A primitive k-th root of unity; k must divide q − 1.
    fn zeta(&self, k: u64) -> u64 {
        assert_eq!((self.q - 1) % k, 0);
        pow_mod(self.root, (self.q - 1) / k, self.q)
    }

    fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.q)
    }

    fn diag(&self, d: &[u64]) -> Mat {
        let n = d.len();
        let mut m = vec![0; n * n];
        for (i, &v) in d.iter().enumerate() {
            m[i * n + i] = v % self.q;
        }
        m
    }
}

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        e >>= 1;
    }
    r
}

fn dim(m: &Mat) -> usize {
    (m.len() as f64).sqrt() as usize
}

fn matmul(a: &Mat, b: &Mat, q: u64) -> Mat {
    let n = dim(a);
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % q;
            }
        }
    }
    c
}

fn block(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (dim(a), dim(b));
    let s = n + m;
    let mut c = vec![0; s * s];
    for i in 0..n {
        for j in 0..n {
            c[i * s + j] = a[i * n + j];
        }
    }
    for i in 0..m {
        for j in 0..m {
            c[(n + i) * s + n + j] = b[i * m + j];
        }
    }
    c
}

/// A finite group given by its elements (identity first) and a table.
struct Oracle {
    table: Vec<Vec<usize>>,
}

impl Oracle {
    fn generated(gens: &[Mat], q: u64) -> Self {
        let n = dim(&gens[0]);
        let mut id = vec![0; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Mat, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let x = matmul(&elems[i], g, q);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&matmul(a, b, q)]).collect())
            .collect();
        Oracle { table }
    }

    fn order(&self) -> usize {
        self.table.len()
    }

    fn cyclic(&self, g: usize) -> BTreeSet<usize> {
        let mut s = BTreeSet::from([0]);
        let mut x = g;
        while x != 0 {
            s.insert(x);
            x = self.table[x][g];
        }
        s
    }

    fn cyclic_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let set: BTreeSet<BTreeSet<usize>> = (0..self.order()).map(|g| self.cyclic(g)).collect();
        set.into_iter().collect()
    }

    /// Every subgroup, by testing each subset containing the identity.
    fn all_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let n = self.order();
        assert!(n <= 16, "subset search is exponential");
        let mut out = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let s: Vec<usize> = std::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
            let closed = s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.table[a][b])));
            if closed {
                out.push(s.into_iter().collect());
            }
        }
        out
    }

    fn product(&self, h: &BTreeSet<usize>, k: &BTreeSet<usize>) -> BTreeSet<usize> {
        h.iter().flat_map(|&a| k.iter().map(move |&b| self.table[a][b])).collect()
    }

    fn factorizations(&self, subs: &[BTreeSet<usize>], whole: &BTreeSet<usize>) -> u64 {
        let inside: Vec<_> = subs.iter().filter(|h| h.is_subset(whole)).collect();
        let mut count = 0;
        for h in &inside {
            for k in &inside {
                if self.product(h, k) == *whole {
                    count += 1;
                }
            }
        }
        count
    }

    fn cf2(&self) -> u64 {
        let whole: BTreeSet<usize> = (0..self.order()).collect();
        self.factorizations(&self.cyclic_subgroups(), &whole)
    }

    fn commuting_fraction(&self, subs: &[BTreeSet<usize>]) -> BigRational {
        let mut count = 0i64;
        for h in subs {
            for k in subs {
                if self.product(h, k) == self.product(k, h) {
                    count += 1;
                }
            }
        }
        BigRational::new(count.into(), ((subs.len() * subs.len()) as i64).into())
    }
}

fn dihedral(f: &Field, n: u64) -> Oracle {
    let z = f.zeta(n);
    let x = f.diag(&[z, f.pow(z, n - 1)]);
    Oracle::generated(&[x, vec![0, 1, 1, 0]], f.q)
}

fn dicyclic(f: &Field, n: u64) -> Oracle {
    let z = f.zeta(2 * n);
    let a = f.diag(&[z, f.pow(z, 2 * n - 1)]);
    Oracle::generated(&[a, vec![0, f.q - 1, 1, 0]], f.q)
}

fn modular(f: &Field, p: u64, n: u32) -> Oracle {
    let m = p.pow(n - 1);
    let z = f.zeta(m);
    let u = 1 + p.pow(n - 2);
    let x = f.diag(&(0..p as u32).map(|i| f.pow(z, u.pow(i) % m)).collect::<Vec<_>>());
    let pp = p as usize;
    let mut y = vec![0; pp * pp];
    for i in 0..pp {
        y[i * pp + (i + 1) % pp] = 1;
    }
    Oracle::generated(&[x, y], f.q)
}

fn lib_cf2(g: &FiniteGroup) -> u64 {
    cf2_bruteforce(g, &enumerate_subgroups(g).unwrap())
}

#[test]
fn oracle_models_have_expected_orders() {
    let f = Field::new(73);
    assert_eq!(dihedral(&f, 4).order(), 8);
    assert_eq!(dicyclic(&f, 3).order(), 12);
    assert_eq!(dicyclic(&f, 4).order(), 16);
    assert_eq!(modular(&Field::new(109), 3, 4).order(), 81);
}

#[test]
fn s3_rotation_times_transposition_fills_the_group() {
    let f = Field::new(7);
    let s3 = dihedral(&f, 3);
    let rot = s3.cyclic((1..6).find(|&g| s3.cyclic(g).len() == 3).unwrap());
    let flip = s3.cyclic((1..6).find(|&g| s3.cyclic(g).len() == 2).unwrap());
    assert_eq!(s3.product(&rot, &flip).len(), 6);

    let g = families::symmetric(3).unwrap();
    let r = g.elements().find(|&a| g.element_order(a).unwrap() == 3).unwrap();
    let t = g.elements().find(|&a| g.element_order(a).unwrap() == 2).unwrap();
    let (h, k) = (g.generate(&[r]).unwrap(), g.generate(&[t]).unwrap());
    assert_eq!(g.product_set_order(&h, &k), 6);
    assert_eq!(g.product_set(&h, &k).count(), 6);
}

#[test]
fn cyclic_factorization_numbers_match_oracle() {
    let f73 = Field::new(73);
    let z12 = Oracle::generated(&[f73.diag(&[f73.zeta(12)])], 73);
    assert_eq!(z12.cf2(), 15);
    assert_eq!(lib_cf2(&families::cyclic(12).unwrap()), 15);

    let z2z4 = Oracle::generated(&[f73.diag(&[72, 1]), f73.diag(&[1, f73.zeta(4)])], 73);
    assert_eq!(z2z4.order(), 8);
    assert_eq!(z2z4.cf2(), 10);
    assert_eq!(lib_cf2(&families::abelian(&[(2, 1), (2, 2)]).unwrap()), 10);
    assert_eq!(formulas::cf2_abelian_p_formula(2, &[1, 2]).unwrap(), 10.into());

    for (n, v) in [(4, 8), (12, 24)] {
        assert_eq!(dihedral(&f73, n).cf2(), v);
        assert_eq!(lib_cf2(&families::dihedral(n).unwrap()), v);
    }
    for (n, v) in [(3, 12), (4, 8)] {
        assert_eq!(dicyclic(&f73, n).cf2(), v);
        assert_eq!(lib_cf2(&families::dicyclic(n).unwrap()), v);
        assert_eq!(formulas::cf2_dicyclic_formula(n).unwrap(), v.into());
    }

    let f109 = Field::new(109);
    assert_eq!(modular(&f109, 3, 4).cf2(), 36);
    assert_eq!(lib_cf2(&families::modular(3, 4).unwrap()), 36);
    assert_eq!(formulas::cf2_modular_formula(3, 4).unwrap(), 36.into());
}

#[test]
fn coprime_products_match_oracle() {
    let f31 = Field::new(31);
    let s3 = dihedral(&f31, 3);
    let z5 = f31.diag(&[f31.zeta(5)]);
    let s3z5 = Oracle::generated(
        &[block(&f31.diag(&[f31.zeta(3), f31.pow(f31.zeta(3), 2)]), &f31.diag(&[1])), block(&vec![0, 1, 1, 0], &f31.diag(&[1])), block(&f31.diag(&[1, 1]), &z5)],
        31,
    );
    assert_eq!(s3z5.order(), 30);
    assert_eq!(s3.cf2() * 3, 18);
    assert_eq!(s3z5.cf2(), 18);
    let g = families::symmetric(3).unwrap().direct_product(&families::cyclic(5).unwrap(), &Default::default()).unwrap();
    assert_eq!(lib_cf2(&g), 18);

    // Z_4 × Z_3 is Z_12
    assert_eq!(lib_cf2(&families::cyclic(4).unwrap()) * lib_cf2(&families::cyclic(3).unwrap()), 15);
}

#[test]
fn klein_four_has_fifteen_factorizations() {
    let f = Field::new(5);
    let v4 = Oracle::generated(&[f.diag(&[4, 1]), f.diag(&[1, 4])], 5);
    let subs = v4.all_subgroups();
    assert_eq!(subs.len(), 5);
    let whole: BTreeSet<usize> = (0..4).collect();
    assert_eq!(v4.factorizations(&subs, &whole), 15);
    let g = families::abelian(&[(2, 1), (2, 1)]).unwrap();
    assert_eq!(f2_bruteforce(&g, &enumerate_subgroups(&g).unwrap()), 15);
}

#[test]
fn d8_lattice_census() {
    let d8 = dihedral(&Field::new(5), 4);
    let subs = d8.all_subgroups();
    assert_eq!(subs.len(), 10);
    assert_eq!(d8.cyclic_subgroups().len(), 7);
    let lat = enumerate_subgroups(&families::dihedral(4).unwrap()).unwrap();
    assert_eq!((lat.len(), lat.cyclic_indices().len()), (10, 7));
}

/// Σ over every subgroup H of the number of factorizations of H by
/// `factors`, divided by |factors|².
fn degree_via_subgroups(o: &Oracle, factors: &[BTreeSet<usize>]) -> BigRational {
    let total: u64 = o.all_subgroups().iter().map(|h| o.factorizations(factors, h)).sum();
    BigRational::new((total as i64).into(), ((factors.len() * factors.len()) as i64).into())
}

#[test]
fn averaging_identities_on_small_groups() {
    // csd(S3) = Σ_{H ≤ S3} CF2(H) / |L1|²
    let s3 = dihedral(&Field::new(7), 3);
    let cyc = s3.cyclic_subgroups();
    assert_eq!(s3.commuting_fraction(&cyc), degree_via_subgroups(&s3, &cyc));
    let g = families::symmetric(3).unwrap();
    let lat = enumerate_subgroups(&g).unwrap();
    assert_eq!(csd(&g, &lat), s3.commuting_fraction(&cyc));

    // sd(D8) = Σ_{H ≤ D8} F2(H) / |L|²
    let d8 = dihedral(&Field::new(5), 4);
    let all = d8.all_subgroups();
    assert_eq!(d8.commuting_fraction(&all), degree_via_subgroups(&d8, &all));
    let g = families::dihedral(4).unwrap();
    assert_eq!(sd(&g, &enumerate_subgroups(&g).unwrap()), d8.commuting_fraction(&all));
}

#[test]
fn q16_unique_involution_is_central_power() {
    let g = families::quaternion(4).unwrap();
    let x = ElementId(1);
    assert_eq!(g.element_order(x).unwrap(), 8);
    let inv = g.pow(x, 4).unwrap();
    assert_eq!(g.element_order(inv).unwrap(), 2);
    let involutions: Vec<_> = g.elements().filter(|&a| g.element_order(a).unwrap() == 2).collect();
    assert_eq!(involutions, vec![inv]);

    let q16 = dicyclic(&Field::new(17), 4);
    let count = (0..16).filter(|&a| q16.cyclic(a).len() == 2).count();
    assert_eq!(count, 1);
}
