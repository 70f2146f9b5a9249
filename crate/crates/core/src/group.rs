//! Finite groups as explicit Cayley tables, plus subgroup generation and
//! product-set arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Index of an element in a [`FiniteGroup`]. Index 0 is always the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Construction-time limits shared by every builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupConfig {
    pub max_order: usize,
    /// Tables up to this order get a full O(n^3) associativity check.
    pub assoc_check_bound: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            max_order: 2048,
            assoc_check_bound: 128,
        }
    }
}

impl GroupConfig {
    pub(crate) fn check_order(&self, order: u128) -> Result<()> {
        if order > self.max_order as u128 {
            return Err(Error::Capacity {
                what: "group order",
                got: order,
                limit: self.max_order as u128,
            });
        }
        Ok(())
    }
}

/// A finite group stored as a full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    element_orders: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major `order * order` table, validating the
    /// identity law, the Latin-square property and (up to the configured
    /// bound) associativity.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        cfg: &GroupConfig,
    ) -> Result<Self> {
        let name = name.into();
        if order == 0 {
            return Err(Error::Structural("a group has at least one element".into()));
        }
        cfg.check_order(order as u128)?;
        if table.len() != order * order {
            return Err(Error::Structural(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::Structural(format!("table entry {bad} out of range")));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::Structural(format!(
                    "element 0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        let mut seen = BitSet::new(order);
        for a in 0..order {
            seen = BitSet::new(seen.universe());
            for &x in &table[a * order..(a + 1) * order] {
                if !seen.insert(x as usize) {
                    return Err(Error::Structural(format!("row {a} repeats element {x}")));
                }
            }
        }
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let inv = row.iter().position(|&x| x == 0).expect("latin row");
            if table[inv * order + a] != 0 {
                return Err(Error::Structural(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = inv as u32;
        }
        if order <= cfg.assoc_check_bound {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = table[b * order + c] as usize;
                        if table[ab * order + c] != table[a * order + bc] {
                            return Err(Error::Structural(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let mut element_orders = vec![0u32; order];
        for (a, slot) in element_orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
                if k > order {
                    return Err(Error::Structural(format!("element {a} has no finite order")));
                }
            }
            *slot = k as u32;
        }
        Ok(FiniteGroup {
            name,
            order,
            table,
            inverses,
            element_orders,
        })
    }

    /// Compiles a Cayley table from a concrete element encoding. `elements`
    /// must list every element exactly once with the identity first.
    pub fn from_elements<T, F>(
        name: impl Into<String>,
        elements: &[T],
        mul: F,
        cfg: &GroupConfig,
    ) -> Result<Self>
    where
        T: Eq + Hash + Clone + fmt::Debug,
        F: Fn(&T, &T) -> T,
    {
        let order = elements.len();
        cfg.check_order(order as u128)?;
        let index: HashMap<&T, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        if index.len() != order {
            return Err(Error::Structural("duplicate element in encoding".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                let c = mul(a, b);
                match index.get(&c) {
                    Some(&i) => table.push(i),
                    None => {
                        return Err(Error::Structural(format!(
                            "product {a:?} * {b:?} = {c:?} leaves the element set"
                        )))
                    }
                }
            }
        }
        FiniteGroup::from_table(name, order, table, cfg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order as u32).map(ElementId)
    }

    fn check(&self, a: ElementId) -> Result<()> {
        if a.index() >= self.order {
            return Err(Error::Structural(format!(
                "element {a} out of range for group of order {}",
                self.order
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.table[a.index() * self.order + b.index()])
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: ElementId) -> Result<ElementId> {
        self.check(a)?;
        Ok(ElementId(self.inverses[a.index()]))
    }

    #[inline]
    pub(crate) fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inverses[a.index()])
    }

    pub fn pow(&self, a: ElementId, k: u64) -> Result<ElementId> {
        self.check(a)?;
        let k = k % self.element_orders[a.index()] as u64;
        let mut x = ElementId::IDENTITY;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        Ok(x)
    }

    pub fn element_order(&self, a: ElementId) -> Result<usize> {
        self.check(a)?;
        Ok(self.element_orders[a.index()] as usize)
    }

    #[inline]
    pub(crate) fn ord(&self, a: usize) -> usize {
        self.element_orders[a] as usize
    }

    /// Multiset of element orders, as a sorted `(order, count)` list.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for &o in &self.element_orders {
            *counts.entry(o as usize).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders.iter().any(|&o| o as usize == self.order)
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(&self, gens: &[ElementId]) -> Result<Subgroup> {
        for &g in gens {
            self.check(g)?;
        }
        Ok(self.closure(&BitSet::from_indices(self.order, [0]), gens, gens))
    }

    /// Closure of `start` (already a subgroup, or {e}) together with `extra`.
    /// `gens` is the generating list recorded on the result.
    fn closure(&self, start: &BitSet, all_gens: &[ElementId], gens: &[ElementId]) -> Subgroup {
        let mut set = start.clone();
        let mut list: Vec<usize> = set.iter().collect();
        let gens_idx: Vec<usize> = all_gens.iter().map(|g| g.index()).filter(|&g| g != 0).collect();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in &gens_idx {
                let y = self.mul_idx(x, s);
                if set.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        let mut recorded: Vec<ElementId> = Vec::new();
        for &g in gens {
            if g.index() != 0 && !recorded.contains(&g) {
                recorded.push(g);
            }
        }
        Subgroup::from_closed_set(self, set, recorded)
    }

    /// Join of two subgroups, ⟨H ∪ K⟩.
    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        if k.members.is_subset(&h.members) {
            return h.clone();
        }
        if h.members.is_subset(&k.members) {
            return k.clone();
        }
        let mut gens = h.gens.clone();
        gens.extend(k.gens.iter().copied().filter(|g| !h.members.contains(g.index())));
        self.closure(&h.members, &gens, &gens)
    }

    pub fn meet(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        self.subgroup_from_members(h.members.intersection(&k.members))
    }

    /// Wraps a member set as a subgroup after checking closure.
    pub fn subgroup_from_members(&self, members: BitSet) -> Result<Subgroup> {
        if members.universe() != self.order || !members.contains(0) {
            return Err(Error::Structural("member set must contain the identity".into()));
        }
        let list: Vec<usize> = members.iter().collect();
        for &a in &list {
            if !members.contains(self.inverses[a] as usize) {
                return Err(Error::Structural(format!("not closed under inverse at {a}")));
            }
            for &b in &list {
                if !members.contains(self.mul_idx(a, b)) {
                    return Err(Error::Structural(format!("not closed at ({a}, {b})")));
                }
            }
        }
        let gens = self.small_generating_set(&members);
        Ok(Subgroup::from_closed_set(self, members, gens))
    }

    fn small_generating_set(&self, members: &BitSet) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut current = BitSet::from_indices(self.order, [0]);
        for a in members.iter() {
            if !current.contains(a) {
                gens.push(ElementId(a as u32));
                current = self.closure(&current, &gens, &[]).members;
            }
        }
        gens
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_closed_set(self, BitSet::from_indices(self.order, [0]), Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        let members = BitSet::from_indices(self.order, 0..self.order);
        let gens = self.small_generating_set(&members);
        Subgroup::from_closed_set(self, members, gens)
    }

    /// |HK| = |H||K| / |H ∩ K|. Valid for the product set even when it is
    /// not a subgroup.
    pub fn product_set_order(&self, h: &Subgroup, k: &Subgroup) -> usize {
        h.order * k.order / h.members.intersection_count(&k.members)
    }

    /// The literal product set {hk : h ∈ H, k ∈ K}, built as a union of left
    /// cosets hK.
    pub fn product_set(&self, h: &Subgroup, k: &Subgroup) -> BitSet {
        let mut out = BitSet::new(self.order);
        let k_list: Vec<usize> = k.members.iter().collect();
        for a in h.members.iter() {
            if out.contains(a) {
                continue;
            }
            for &b in &k_list {
                out.insert(self.mul_idx(a, b));
            }
        }
        out
    }

    /// Whether HK = KH, decided on the literal product sets.
    pub fn permutes(&self, h: &Subgroup, k: &Subgroup) -> bool {
        if h.members.is_subset(&k.members) || k.members.is_subset(&h.members) {
            return true;
        }
        self.product_set(h, k) == self.product_set(k, h)
    }

    pub fn conjugate(&self, x: ElementId, a: ElementId) -> ElementId {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|x| {
            h.gens
                .iter()
                .all(|&s| h.members.contains(self.conjugate(x, s).index()))
        })
    }

    pub fn center(&self) -> Subgroup {
        let members = BitSet::from_indices(
            self.order,
            (0..self.order).filter(|&a| (0..self.order).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a))),
        );
        let gens = self.small_generating_set(&members);
        Subgroup::from_closed_set(self, members, gens)
    }

    /// Componentwise product G1 × G2. Pair (i, j) gets index i·|G2| + j.
    pub fn direct_product(&self, other: &FiniteGroup, cfg: &GroupConfig) -> Result<FiniteGroup> {
        let (n1, n2) = (self.order, other.order);
        cfg.check_order(n1 as u128 * n2 as u128)?;
        let n = n1 * n2;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let (a1, a2) = (a / n2, a % n2);
            for b in 0..n {
                let (b1, b2) = (b / n2, b % n2);
                table.push((self.mul_idx(a1, b1) * n2 + other.mul_idx(a2, b2)) as u32);
            }
        }
        // both factors are groups, so associativity is inherited
        let cfg = GroupConfig {
            assoc_check_bound: 0,
            ..*cfg
        };
        FiniteGroup::from_table(format!("{} x {}", self.name, other.name), n, table, &cfg)
    }
}

/// A subgroup, stored as a bitset over the parent group's element indices.
#[derive(Clone)]
pub struct Subgroup {
    members: BitSet,
    order: usize,
    is_cyclic: bool,
    gens: Vec<ElementId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order)
            .field("is_cyclic", &self.is_cyclic)
            .field("members", &self.members)
            .finish()
    }
}

impl Subgroup {
    fn from_closed_set(g: &FiniteGroup, members: BitSet, gens: Vec<ElementId>) -> Self {
        let order = members.count();
        let generator = members.iter().find(|&a| g.ord(a) == order);
        let gens = match generator {
            Some(0) => Vec::new(),
            Some(a) => vec![ElementId(a as u32)],
            None => gens,
        };
        Subgroup {
            members,
            order,
            is_cyclic: generator.is_some(),
            gens,
        }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn member_ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().map(|i| ElementId(i as u32))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_cyclic
    }

    /// A generating list; a single generator when the subgroup is cyclic.
    pub fn generators(&self) -> &[ElementId] {
        &self.gens
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.members.contains(a.index())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> FiniteGroup {
        let elems: Vec<u32> = (0..n).collect();
        FiniteGroup::from_elements(format!("Z{n}"), &elems, |a, b| (a + b) % n, &GroupConfig::default())
            .unwrap()
    }

    #[test]
    fn identity_law_in_z6() {
        let g = z(6);
        for x in g.elements() {
            assert_eq!(g.multiply(ElementId::IDENTITY, x).unwrap(), x);
            assert_eq!(g.multiply(x, ElementId::IDENTITY).unwrap(), x);
        }
    }

    #[test]
    fn out_of_range_is_structural_error() {
        let g = z(6);
        assert!(matches!(g.multiply(ElementId(6), ElementId(0)), Err(Error::Structural(_))));
        assert!(g.element_order(ElementId(99)).is_err());
    }

    #[test]
    fn square_of_order_four_element() {
        let g = z(4);
        let sq = g.multiply(ElementId(1), ElementId(1)).unwrap();
        assert_eq!(sq, ElementId(2));
        assert_eq!(g.element_order(sq).unwrap(), 2);
        assert_eq!(g.elements().filter(|&x| g.element_order(x).unwrap() == 2).count(), 1);
    }

    #[test]
    fn element_orders_in_z12() {
        let g = z(12);
        assert_eq!(g.element_order(ElementId(0)).unwrap(), 1);
        assert_eq!(g.element_order(ElementId(1)).unwrap(), 12);
        assert_eq!(g.element_order(ElementId(8)).unwrap(), 3);
    }

    #[test]
    fn generate_empty_is_trivial() {
        let g = z(12);
        let h = g.generate(&[]).unwrap();
        assert_eq!(h.order(), 1);
        assert!(h.is_cyclic());
        assert_eq!(h, g.trivial_subgroup());
    }

    #[test]
    fn generate_is_idempotent() {
        let g = z(12);
        let h = g.generate(&[ElementId(4), ElementId(6)]).unwrap();
        assert_eq!(h.order(), 6);
        let ids: Vec<_> = h.member_ids().collect();
        assert_eq!(g.generate(&ids).unwrap(), h);
    }

    #[test]
    fn product_set_order_edge_cases() {
        let g = z(12);
        let h = g.generate(&[ElementId(3)]).unwrap();
        let k = g.generate(&[ElementId(4)]).unwrap();
        assert_eq!(g.product_set_order(&h, &h), 4);
        assert_eq!(g.product_set_order(&h, &k), 12);
        assert_eq!(g.product_set_order(&h, &g.trivial_subgroup()), 4);
        assert_eq!(g.product_set(&h, &k).count(), 12);
    }

    #[test]
    fn rejects_non_group_table() {
        // x*y = x - y mod 3 has identity on the right only
        let t: Vec<u32> = (0..3).flat_map(|a| (0..3).map(move |b| ((a + 3 - b) % 3) as u32)).collect();
        assert!(FiniteGroup::from_table("bad", 3, t, &GroupConfig::default()).is_err());
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let rows: [[u32; 5]; 5] = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let t: Vec<u32> = rows.iter().flatten().copied().collect();
        let err = FiniteGroup::from_table("loop", 5, t, &GroupConfig::default()).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn subgroup_from_members_checks_closure() {
        let g = z(6);
        assert!(g.subgroup_from_members(BitSet::from_indices(6, [0, 1])).is_err());
        let h = g.subgroup_from_members(BitSet::from_indices(6, [0, 2, 4])).unwrap();
        assert!(h.is_cyclic());
        assert!(g.is_normal(&h));
    }

    #[test]
    fn direct_product_z2_z3_is_cyclic() {
        let cfg = GroupConfig::default();
        let g = z(2).direct_product(&z(3), &cfg).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_cyclic());
        let tiny = GroupConfig { max_order: 5, ..cfg };
        assert!(matches!(z(2).direct_product(&z(3), &tiny), Err(Error::Capacity { .. })));
    }
}
