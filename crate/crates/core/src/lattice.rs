//! Subgroup lattice enumeration and its Möbius function.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};

pub const DEFAULT_SUBGROUP_BUDGET: usize = 100_000;

/// All cyclic subgroups ⟨g⟩ of `g`, in order of their first generator.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut done = vec![false; g.order()];
    let mut out = Vec::new();
    for a in g.elements() {
        if done[a.index()] {
            continue;
        }
        let h = g.generate(&[a]).expect("valid element");
        for x in h.members().iter() {
            if g.ord(x) == h.order() {
                done[x] = true;
            }
        }
        out.push(h);
    }
    out
}

/// The lattice L(G) of all subgroups with its inclusion relation. Subgroups
/// are sorted by order and then by member set, so index 0 is the trivial
/// subgroup and the last index is the whole group.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group_name: String,
    group_order: usize,
    subgroups: Vec<Subgroup>,
    /// `above[i]` holds every `j` with `subgroups[i] ⊆ subgroups[j]`.
    above: Vec<BitSet>,
    /// `below[j]` holds every `i` with `subgroups[i] ⊆ subgroups[j]`.
    below: Vec<BitSet>,
    cyclic: Vec<usize>,
    index: HashMap<BitSet, usize>,
}

/// Enumerates every subgroup: seed with the cyclic subgroups, then join
/// with cyclic subgroups until nothing new appears.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Result<SubgroupLattice> {
    enumerate_subgroups_with_budget(g, DEFAULT_SUBGROUP_BUDGET)
}

pub fn enumerate_subgroups_with_budget(g: &FiniteGroup, budget: usize) -> Result<SubgroupLattice> {
    let cyclic = cyclic_subgroups(g);
    let mut index: HashMap<BitSet, usize> = HashMap::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let over = |n: usize| Error::Capacity {
        what: "subgroup count",
        got: n as u128,
        limit: budget as u128,
    };
    for h in &cyclic {
        index.insert(h.members().clone(), all.len());
        all.push(h.clone());
    }
    if all.len() > budget {
        return Err(over(all.len()));
    }
    let mut next = 0;
    while next < all.len() {
        let current = all[next].clone();
        next += 1;
        for c in &cyclic {
            if c.is_subgroup_of(&current) {
                continue;
            }
            let j = g.join(&current, c);
            if !index.contains_key(j.members()) {
                index.insert(j.members().clone(), all.len());
                all.push(j);
                if all.len() > budget {
                    return Err(over(all.len()));
                }
            }
        }
    }
    let mut keyed: Vec<(usize, Vec<usize>, Subgroup)> = all
        .into_iter()
        .map(|h| (h.order(), h.members().iter().collect(), h))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let subgroups: Vec<Subgroup> = keyed.into_iter().map(|(_, _, h)| h).collect();
    Ok(SubgroupLattice::from_sorted(g, subgroups))
}

impl SubgroupLattice {
    fn from_sorted(g: &FiniteGroup, subgroups: Vec<Subgroup>) -> Self {
        let s = subgroups.len();
        let mut above = vec![BitSet::new(s); s];
        let mut below = vec![BitSet::new(s); s];
        for i in 0..s {
            above[i].insert(i);
            below[i].insert(i);
            let (hi, oi) = (&subgroups[i], subgroups[i].order());
            for j in i + 1..s {
                let hj = &subgroups[j];
                if hj.order() > oi && hj.order().is_multiple_of(oi) && hi.is_subgroup_of(hj) {
                    above[i].insert(j);
                    below[j].insert(i);
                }
            }
        }
        let cyclic = (0..s).filter(|&i| subgroups[i].is_cyclic()).collect();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members().clone(), i))
            .collect();
        SubgroupLattice {
            group_name: g.name().to_string(),
            group_order: g.order(),
            subgroups,
            above,
            below,
            cyclic,
            index,
        }
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn cyclic_indices(&self) -> &[usize] {
        &self.cyclic
    }

    pub fn is_cyclic(&self, i: usize) -> bool {
        self.subgroups[i].is_cyclic()
    }

    /// Index of the subgroup with exactly these members.
    pub fn index_of(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn above(&self, i: usize) -> &BitSet {
        &self.above[i]
    }

    pub fn below(&self, j: usize) -> &BitSet {
        &self.below[j]
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let m = self.subgroups[i].members().intersection(self.subgroups[j].members());
        self.index_of(&m)
    }

    pub fn join(&self, g: &FiniteGroup, i: usize, j: usize) -> Option<usize> {
        let k = g.join(&self.subgroups[i], &self.subgroups[j]);
        self.index_of(k.members())
    }

    /// |L₁(H)| for the subgroup at index `h`.
    pub fn cyclic_poset_size(&self, h: usize) -> usize {
        self.cyclic.iter().filter(|&&c| self.below[h].contains(c)).count()
    }

    /// |L(H)| for the subgroup at index `h`.
    pub fn sublattice_size(&self, h: usize) -> usize {
        self.below[h].count()
    }
}

/// Values µ(H, K) of the lattice Möbius function for H ≤ K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: BTreeMap<(usize, usize), BigInt>,
}

impl MobiusTable {
    pub fn get(&self, h: usize, k: usize) -> Option<&BigInt> {
        self.values.get(&(h, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.values.iter().map(|(&(h, k), v)| (h, k, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// µ(H, K) for one fixed upper end `k`, by µ(H,K) = −Σ_{H<J≤K} µ(J,K).
fn mobius_column(lat: &SubgroupLattice, k: usize) -> Vec<(usize, BigInt)> {
    let mut col: HashMap<usize, BigInt> = HashMap::new();
    let members: Vec<usize> = lat.below[k].iter().collect();
    // descending index = non-increasing order, so every J > H is done first
    for &h in members.iter().rev() {
        if h == k {
            col.insert(h, BigInt::one());
            continue;
        }
        let mut sum = BigInt::zero();
        for j in lat.above[h].iter() {
            if j != h && lat.below[k].contains(j) {
                sum += &col[&j];
            }
        }
        col.insert(h, -sum);
    }
    let mut out: Vec<(usize, BigInt)> = col.into_iter().collect();
    out.sort_by_key(|(h, _)| *h);
    out
}

/// µ(H, G) for every subgroup H, indexed like the lattice.
pub fn mobius_to_top(lat: &SubgroupLattice) -> Vec<BigInt> {
    let mut mu = vec![BigInt::zero(); lat.len()];
    for (h, v) in mobius_column(lat, lat.top()) {
        mu[h] = v;
    }
    mu
}

/// A table holding only the column µ(·, G); enough for the inversion sums.
pub fn mobius_top_table(lat: &SubgroupLattice) -> MobiusTable {
    let top = lat.top();
    MobiusTable {
        values: mobius_column(lat, top).into_iter().map(|(h, v)| ((h, top), v)).collect(),
    }
}

/// The full Möbius table over every interval of the lattice.
pub fn mobius(lat: &SubgroupLattice) -> MobiusTable {
    let mut values = BTreeMap::new();
    for k in 0..lat.len() {
        for (h, v) in mobius_column(lat, k) {
            values.insert((h, k), v);
        }
    }
    MobiusTable { values }
}

/// µ(1, G) of a p-group of order p^n: 0 unless elementary abelian, in which
/// case (−1)^n p^(n choose 2).
pub fn hall_mobius(p: u64, n: u32, is_elementary_abelian: bool) -> BigInt {
    if !is_elementary_abelian {
        return BigInt::zero();
    }
    let exp = n as u64 * (n as u64).saturating_sub(1) / 2;
    let magnitude = num_traits::pow(BigInt::from(p), exp as usize);
    if n.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

pub fn is_elementary_abelian(g: &FiniteGroup) -> bool {
    let Some((p, _)) = crate::numtheory::prime_power(g.order() as u64) else {
        return g.order() == 1;
    };
    g.is_abelian() && g.elements().all(|a| g.ord(a.index()) == 1 || g.ord(a.index()) as u64 == p)
}

/// Quotient data for one subgroup K ≥ H.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientEntry {
    pub index: usize,
    pub quotient_order: usize,
    pub quotient_cyclic: bool,
}

#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub quotient: FiniteGroup,
    pub entries: Vec<QuotientEntry>,
}

/// For a normal subgroup H, builds G/H as a Cayley table and reports, for
/// every K ≥ H in the lattice, |K/H| and whether K/H is cyclic.
pub fn quotient_lattice_check(g: &FiniteGroup, lat: &SubgroupLattice, normal_h: usize) -> Result<QuotientReport> {
    let h = lat
        .subgroups
        .get(normal_h)
        .ok_or_else(|| Error::validation(format!("no subgroup with index {normal_h}")))?;
    if !g.is_normal(h) {
        return Err(Error::validation(format!("subgroup {normal_h} is not normal")));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(a);
        for x in h.members().iter() {
            coset_of[g.mul_idx(a, x)] = c;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul_idx(a, b)] as u32);
        }
    }
    let cfg = crate::group::GroupConfig {
        max_order: n.max(1),
        assoc_check_bound: 0,
    };
    let quotient = FiniteGroup::from_table(format!("{}/H{normal_h}", g.name()), q, table, &cfg)?;
    let entries = lat.above[normal_h]
        .iter()
        .map(|k| {
            let kk = &lat.subgroups[k];
            let quotient_order = kk.order() / h.order();
            let quotient_cyclic = kk
                .members()
                .iter()
                .any(|a| quotient.ord(coset_of[a]) == quotient_order);
            QuotientEntry {
                index: k,
                quotient_order,
                quotient_cyclic,
            }
        })
        .collect();
    Ok(QuotientReport { quotient, entries })
}

/// Serialized form of a lattice and its Möbius table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDump {
    pub group_name: String,
    pub order: usize,
    pub subgroups: Vec<SubgroupDump>,
    /// Strict inclusions `[h, k]` with H < K.
    pub inclusion_pairs: Vec<[usize; 2]>,
    pub mobius: Vec<MobiusDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDump {
    pub index: usize,
    pub order: usize,
    pub is_cyclic: bool,
    pub members: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusDump {
    pub h: usize,
    pub k: usize,
    /// Decimal string; Möbius values are unbounded integers.
    pub value: String,
}

impl LatticeDump {
    pub fn new(lat: &SubgroupLattice, mob: &MobiusTable) -> Self {
        let subgroups = lat
            .subgroups
            .iter()
            .enumerate()
            .map(|(index, h)| SubgroupDump {
                index,
                order: h.order(),
                is_cyclic: h.is_cyclic(),
                members: h.member_ids().map(|ElementId(x)| x).collect(),
            })
            .collect();
        let inclusion_pairs = (0..lat.len())
            .flat_map(|h| lat.above[h].iter().filter(move |&k| k != h).map(move |k| [h, k]))
            .collect();
        let mobius = mob
            .iter()
            .map(|(h, k, v)| MobiusDump {
                h,
                k,
                value: v.to_string(),
            })
            .collect();
        LatticeDump {
            group_name: lat.group_name.clone(),
            order: lat.group_order,
            subgroups,
            inclusion_pairs,
            mobius,
        }
    }
}
