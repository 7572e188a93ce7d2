//! Subgroup-lattice machinery: bounded exhaustive enumeration, overgroup
//! lattices, low-index subgroups through normal cores, closures under
//! index-bounded subgroups, normal subgroups via conjugacy classes, and
//! faithful quotient actions on cosets.

use crate::chain::minimal_coset_rep;
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::collections::{HashMap, VecDeque};

/// Largest group we are willing to materialize element-by-element.
pub(crate) const ELEMENT_CAP: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Exhaustive,
    BoundedSearch,
}

#[derive(Clone, Debug)]
pub struct SubgroupList {
    pub parent: PermutationGroup,
    pub members: Vec<PermutationGroup>,
    pub completeness: Completeness,
}

// ---------------------------------------------------------------------------
// Literal subgroup dedup
// ---------------------------------------------------------------------------

fn fnv1a(values: impl Iterator<Item = u16>) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for v in values {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

pub(crate) fn perm_hash(p: &Permutation) -> u64 {
    fnv1a(p.images().map(|v| v as u16))
}

/// Order plus an order-insensitive hash of the full element set. Groups too
/// large to enumerate fall back to the order alone (ties resolved exactly).
fn group_fingerprint(g: &PermutationGroup) -> (u64, u64) {
    match g.small_order() {
        Some(order) if order <= ELEMENT_CAP => {
            let mut acc = 0u64;
            for e in g.elements_unsorted() {
                acc = acc.wrapping_add(perm_hash(&e));
            }
            (order, acc)
        }
        _ => (g.order().to_u64().unwrap_or(u64::MAX), u64::MAX),
    }
}

/// Set of literal subgroups, deduplicated by exact group equality
/// (fingerprint buckets resolved by mutual membership).
pub(crate) struct SubgroupSet {
    pub members: Vec<PermutationGroup>,
    buckets: HashMap<(u64, u64), Vec<usize>>,
}

impl SubgroupSet {
    pub fn new() -> Self {
        SubgroupSet {
            members: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    pub fn position(&self, g: &PermutationGroup) -> Option<usize> {
        let key = group_fingerprint(g);
        self.buckets
            .get(&key)?
            .iter()
            .copied()
            .find(|&i| self.members[i].same_group(g))
    }

    /// Returns the member index and whether the group was newly inserted.
    pub fn insert(&mut self, g: PermutationGroup) -> (usize, bool) {
        let key = group_fingerprint(&g);
        if let Some(bucket) = self.buckets.get(&key) {
            for &i in bucket {
                if self.members[i].same_group(&g) {
                    return (i, false);
                }
            }
        }
        let idx = self.members.len();
        self.members.push(g);
        self.buckets.entry(key).or_default().push(idx);
        (idx, true)
    }
}

/// Deterministic ordering: order first, then the sorted generator images.
pub(crate) fn sort_members(members: &mut [PermutationGroup]) {
    members.sort_by_cached_key(|g| {
        let mut gens: Vec<Vec<usize>> = g
            .generators()
            .iter()
            .filter(|p| !p.is_identity())
            .map(|p| p.images().collect())
            .collect();
        gens.sort();
        (g.order().clone(), gens)
    });
}

/// Non-identity elements of prime-power order; these generate every subgroup.
pub(crate) fn prime_power_elements(elements: &[Permutation]) -> Vec<Permutation> {
    elements
        .iter()
        .filter(|e| {
            let o = e.order();
            o > 1 && crate::poly::factor_u64(o).len() == 1
        })
        .cloned()
        .collect()
}

pub(crate) fn nontrivial_generators(g: &PermutationGroup) -> Vec<Permutation> {
    g.generators()
        .iter()
        .filter(|p| !p.is_identity())
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------------
// Exhaustive subgroup enumeration
// ---------------------------------------------------------------------------

/// All subgroups of `g`, by closing upward: along any maximal chain every
/// subgroup arises as `<H, x>` with `x` of prime-power order, so repeatedly
/// extending every known subgroup by every such element is exhaustive.
pub fn enumerate_subgroups(g: &PermutationGroup, bound: u64) -> Result<SubgroupList> {
    let elements = g.enumerate_elements(bound)?;
    let seeds = prime_power_elements(&elements);
    let members = close_upward(g.degree(), PermutationGroup::trivial(g.degree()), &seeds)?;
    Ok(SubgroupList {
        parent: g.clone(),
        members,
        completeness: Completeness::Exhaustive,
    })
}

/// All subgroups between `h` and `g` (inclusive).
pub fn overgroups(g: &PermutationGroup, h: &PermutationGroup) -> Result<SubgroupList> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let elements = g.enumerate_elements(ELEMENT_CAP)?;
    let seeds = prime_power_elements(&elements);
    let members = close_upward(g.degree(), h.clone(), &seeds)?;
    Ok(SubgroupList {
        parent: g.clone(),
        members,
        completeness: Completeness::Exhaustive,
    })
}

fn close_upward(
    degree: usize,
    start: PermutationGroup,
    seeds: &[Permutation],
) -> Result<Vec<PermutationGroup>> {
    let mut set = SubgroupSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let (idx, _) = set.insert(start);
    queue.push_back(idx);
    while let Some(i) = queue.pop_front() {
        let current = set.members[i].clone();
        for x in seeds {
            if current.contains(x)? {
                continue;
            }
            let mut gens = nontrivial_generators(&current);
            gens.push(x.clone());
            let extended = PermutationGroup::new(gens)?;
            let (j, fresh) = set.insert(extended);
            if fresh {
                queue.push_back(j);
            }
        }
    }
    let _ = degree;
    let mut members = set.members;
    sort_members(&mut members);
    Ok(members)
}

// ---------------------------------------------------------------------------
// Conjugacy classes and normal subgroups
// ---------------------------------------------------------------------------

/// Element conjugacy classes, each sorted, classes ordered by smallest member.
pub fn conjugacy_classes(g: &PermutationGroup) -> Result<Vec<Vec<Permutation>>> {
    let elements = g.enumerate_elements(ELEMENT_CAP)?;
    let mut index: HashMap<&Permutation, usize> = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        index.insert(e, i);
    }
    let mut seen = vec![false; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let e = &elements[orbit[head]];
            head += 1;
            for t in g.generators() {
                let c = e.conjugate_by(t)?;
                let j = *index.get(&c).expect("conjugate stays in the group");
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit.into_iter().map(|i| elements[i].clone()).collect());
    }
    Ok(classes)
}

/// All normal subgroups: closures of single conjugacy classes, then closure
/// under pairwise joins (a product of normal subgroups is normal, and every
/// normal subgroup is the join of the class closures it contains).
pub fn normal_subgroups(g: &PermutationGroup) -> Result<SubgroupList> {
    let classes = conjugacy_classes(g)?;
    let mut set = SubgroupSet::new();
    set.insert(PermutationGroup::trivial(g.degree()));
    for class in &classes {
        if class.len() == 1 && class[0].is_identity() {
            continue;
        }
        set.insert(g.normal_closure(&class[0..1])?);
    }
    loop {
        let mut added = false;
        let count = set.members.len();
        for i in 0..count {
            for j in (i + 1)..count {
                let mut gens = nontrivial_generators(&set.members[i]);
                gens.extend(nontrivial_generators(&set.members[j]));
                if gens.is_empty() {
                    continue;
                }
                let join = PermutationGroup::new(gens)?;
                let (_, fresh) = set.insert(join);
                added |= fresh;
            }
        }
        if !added {
            break;
        }
    }
    set.insert(g.clone());
    let mut members = set.members;
    sort_members(&mut members);
    Ok(SubgroupList {
        parent: g.clone(),
        members,
        completeness: Completeness::Exhaustive,
    })
}

// ---------------------------------------------------------------------------
// Quotient actions
// ---------------------------------------------------------------------------

/// Faithful action of `parent/kernel` on the kernel's right cosets, with the
/// canonical coset representatives as a lift table. The action's generators
/// are parallel to the parent's generator list.
#[derive(Clone)]
pub struct QuotientRealization {
    pub parent: PermutationGroup,
    pub kernel: PermutationGroup,
    pub action: PermutationGroup,
    pub lift_table: Vec<Permutation>,
    kernel_full_base: PermutationGroup,
    coset_index: HashMap<Permutation, usize>,
}

impl QuotientRealization {
    pub fn identity_coset(&self) -> usize {
        0
    }

    /// Index of the coset containing `x`.
    pub fn project(&self, x: &Permutation) -> Result<usize> {
        if !self.parent.contains(x)? {
            return Err(Error::NotInGroup);
        }
        let canon = minimal_coset_rep(self.kernel_full_base.chain(), x);
        self.coset_index
            .get(&canon)
            .copied()
            .ok_or(Error::NotInGroup)
    }

    /// Permutation induced by `x` on the cosets.
    pub fn induced(&self, x: &Permutation) -> Result<Permutation> {
        if !self.parent.contains(x)? {
            return Err(Error::NotInGroup);
        }
        let mut images = Vec::with_capacity(self.lift_table.len());
        for rep in &self.lift_table {
            let moved = rep.compose_unchecked(x);
            let canon = minimal_coset_rep(self.kernel_full_base.chain(), &moved);
            images.push(*self.coset_index.get(&canon).ok_or(Error::NotInGroup)?);
        }
        Permutation::from_images(images)
    }

    /// A parent element mapping onto `q`; the coset action is regular, so the
    /// image of the identity coset pins down the coset to lift from.
    pub fn lift(&self, q: &Permutation) -> Result<Permutation> {
        if !self.action.contains(q)? {
            return Err(Error::NotInGroup);
        }
        Ok(self.lift_table[q.apply(self.identity_coset())].clone())
    }
}

/// Build the coset action of `g` modulo the normal subgroup `n`.
pub fn quotient_as_permgroup(
    g: &PermutationGroup,
    n: &PermutationGroup,
    max_index: u64,
) -> Result<QuotientRealization> {
    if !n.is_normal_in(g)? {
        return Err(Error::NotNormal);
    }
    let index_big = g.order() / n.order();
    let index = index_big
        .to_u64()
        .filter(|&i| i <= max_index)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "quotient index {index_big} exceeds budget {max_index}"
            ))
        })? as usize;
    let kernel_full_base = PermutationGroup::with_full_base(n.generators().to_vec())?;

    let mut reps: Vec<Permutation> = Vec::with_capacity(index);
    let mut coset_index: HashMap<Permutation, usize> = HashMap::new();
    let identity_rep =
        minimal_coset_rep(kernel_full_base.chain(), &Permutation::identity(g.degree()));
    coset_index.insert(identity_rep.clone(), 0);
    reps.push(identity_rep);
    let mut head = 0;
    while head < reps.len() {
        let rep = reps[head].clone();
        head += 1;
        for gen in g.generators() {
            let c = minimal_coset_rep(kernel_full_base.chain(), &rep.compose_unchecked(gen));
            if !coset_index.contains_key(&c) {
                coset_index.insert(c.clone(), reps.len());
                reps.push(c);
            }
        }
    }
    if reps.len() != index {
        return Err(Error::InvalidParameter(format!(
            "coset walk found {} cosets, expected {index}",
            reps.len()
        )));
    }
    let mut action_gens = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let mut images = Vec::with_capacity(index);
        for rep in &reps {
            let c = minimal_coset_rep(kernel_full_base.chain(), &rep.compose_unchecked(gen));
            images.push(coset_index[&c]);
        }
        action_gens.push(Permutation::from_images(images)?);
    }
    let action = PermutationGroup::new(action_gens)?;
    if action.order() != &index_big {
        return Err(Error::InvalidParameter(
            "quotient action is not faithful".into(),
        ));
    }
    Ok(QuotientRealization {
        parent: g.clone(),
        kernel: n.clone(),
        action,
        lift_table: reps,
        kernel_full_base,
        coset_index,
    })
}

/// `|g| / |derived subgroup|`; for prime `p`, a cyclic quotient of order `p`
/// exists iff `p` divides this number.
pub fn abelian_quotient_order(g: &PermutationGroup) -> BigUint {
    g.order() / g.derived_subgroup().order()
}

// ---------------------------------------------------------------------------
// Low-index subgroups and closures
// ---------------------------------------------------------------------------

pub fn index_of(g: &PermutationGroup, h: &PermutationGroup) -> BigUint {
    g.order() / h.order()
}

/// All subgroups of index at most `d`: exhaustive filtering when the order is
/// within `bound`, otherwise through normal cores (every subgroup of index at
/// most `d` contains a normal subgroup of index dividing `d!`, so the search
/// happens inside quotients of order at most `d!` and pulls back).
pub fn low_index_subgroups(g: &PermutationGroup, d: u64, bound: u64) -> Result<SubgroupList> {
    if d == 0 {
        return Err(Error::InvalidParameter("index bound must be >= 1".into()));
    }
    let order = g
        .small_order()
        .ok_or_else(|| Error::BudgetExceeded("group too large for low-index search".into()))?;
    if order <= bound {
        let all = enumerate_subgroups(g, bound)?;
        let members = all
            .members
            .into_iter()
            .filter(|h| index_of(g, h) <= BigUint::from(d))
            .collect();
        return Ok(SubgroupList {
            parent: g.clone(),
            members,
            completeness: Completeness::Exhaustive,
        });
    }
    let core_cap: u64 = (1..=d).product();
    if core_cap > 720 {
        return Err(Error::BudgetExceeded(format!(
            "normal-core route infeasible: {d}! = {core_cap} exceeds 720"
        )));
    }
    let normals = normal_subgroups(g)?;
    let mut set = SubgroupSet::new();
    for n in &normals.members {
        if index_of(g, n) > BigUint::from(core_cap) {
            continue;
        }
        let q = quotient_as_permgroup(g, n, core_cap)?;
        let inside = enumerate_subgroups(&q.action, core_cap.max(bound))?;
        for h_q in &inside.members {
            if index_of(&q.action, h_q) > BigUint::from(d) {
                continue;
            }
            let mut gens = nontrivial_generators(n);
            for qgen in h_q.generators() {
                let lifted = q.lift(qgen)?;
                if !lifted.is_identity() {
                    gens.push(lifted);
                }
            }
            if gens.is_empty() {
                gens.push(Permutation::identity(g.degree()));
            }
            set.insert(PermutationGroup::new(gens)?);
        }
    }
    let mut members = set.members;
    members.retain(|h| index_of(g, h) <= BigUint::from(d));
    sort_members(&mut members);
    Ok(SubgroupList {
        parent: g.clone(),
        members,
        completeness: Completeness::Exhaustive,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexFilter {
    AtMost,
    Exactly,
}

/// Intersection of all subgroups of index `<= d` (or `== d`) containing `h`.
/// The intersection over an empty family is `g` itself.
pub fn d_closure(
    g: &PermutationGroup,
    h: &PermutationGroup,
    d: u64,
    filter: IndexFilter,
    bound: u64,
) -> Result<PermutationGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let subs = low_index_subgroups(g, d, bound)?;
    let family: Vec<&PermutationGroup> = subs
        .members
        .iter()
        .filter(|s| match filter {
            IndexFilter::AtMost => true,
            IndexFilter::Exactly => index_of(g, s) == BigUint::from(d),
        })
        .filter(|s| h.is_subgroup_of(s))
        .collect();
    if family.is_empty() {
        return Ok(g.clone());
    }
    intersect_groups(&family)
}

/// Intersection by filtering the smallest member's elements through the rest.
pub fn intersect_groups(groups: &[&PermutationGroup]) -> Result<PermutationGroup> {
    let (smallest_pos, smallest) = groups
        .iter()
        .enumerate()
        .min_by_key(|(_, g)| g.order().clone())
        .ok_or(Error::EmptyGenerators)?;
    let mut elems = smallest.enumerate_elements(10_000).map_err(|_| {
        Error::BudgetExceeded("intersection base group exceeds 10^4 elements".into())
    })?;
    for (i, g) in groups.iter().enumerate() {
        if i == smallest_pos {
            continue;
        }
        let keep: Result<Vec<bool>> = elems.iter().map(|e| g.contains(e)).collect();
        let keep = keep?;
        let mut it = keep.iter();
        elems.retain(|_| *it.next().unwrap());
    }
    if elems.is_empty() {
        return Err(Error::InvalidParameter("empty intersection".into()));
    }
    PermutationGroup::new(elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn grp(gens: &[&str], degree: usize) -> PermutationGroup {
        PermutationGroup::new(gens.iter().map(|t| p(t, degree)).collect()).unwrap()
    }

    fn s4() -> PermutationGroup {
        grp(&["(1 2)", "(1 2 3 4)"], 4)
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(
            enumerate_subgroups(&grp(&["(1 2)", "(1 2 3)"], 3), 512)
                .unwrap()
                .members
                .len(),
            6
        );
        assert_eq!(
            enumerate_subgroups(&grp(&["(1 2 3 4 5 6)"], 6), 512)
                .unwrap()
                .members
                .len(),
            4
        );
        assert_eq!(enumerate_subgroups(&s4(), 512).unwrap().members.len(), 30);
    }

    #[test]
    fn enumerate_respects_bound() {
        let s5 = grp(&["(1 2)", "(1 2 3 4 5)"], 5);
        assert!(enumerate_subgroups(&s5, 50).is_err());
    }

    #[test]
    fn overgroup_lattices() {
        let c4 = grp(&["(1 2 3 4)"], 4);
        let trivial = PermutationGroup::trivial(4);
        assert_eq!(overgroups(&c4, &trivial).unwrap().members.len(), 3);
        let list = overgroups(&s4(), &s4()).unwrap();
        assert_eq!(list.members.len(), 1);
        let a4 = grp(&["(1 2 3)", "(2 3 4)"], 4);
        assert!(overgroups(&a4, &s4()).is_err());
    }

    #[test]
    fn conjugacy_class_sizes_of_s4() {
        let classes = conjugacy_classes(&s4()).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn normal_subgroup_lattices() {
        let orders: Vec<u64> = normal_subgroups(&s4())
            .unwrap()
            .members
            .iter()
            .map(|m| m.small_order().unwrap())
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let a5 = grp(&["(1 2 3)", "(3 4 5)"], 5);
        assert_eq!(normal_subgroups(&a5).unwrap().members.len(), 2);
        let f20 = grp(&["(1 2 3 4 5)", "(2 3 5 4)"], 5);
        let orders: Vec<u64> = normal_subgroups(&f20)
            .unwrap()
            .members
            .iter()
            .map(|m| m.small_order().unwrap())
            .collect();
        assert_eq!(orders, vec![1, 5, 10, 20]);
    }

    #[test]
    fn quotient_of_s4_by_klein() {
        let v = grp(&["(1 2)(3 4)", "(1 3)(2 4)"], 4);
        let q = quotient_as_permgroup(&s4(), &v, 64).unwrap();
        assert_eq!(q.action.degree(), 6);
        assert_eq!(q.action.small_order(), Some(6));
        assert!(!q.action.is_abelian());
        for gen in q.action.generators() {
            let lifted = q.lift(gen).unwrap();
            assert_eq!(&q.induced(&lifted).unwrap(), gen);
        }
    }

    #[test]
    fn quotient_by_whole_group_is_trivial_degree_one() {
        let g = grp(&["(1 2 3)"], 3);
        let q = quotient_as_permgroup(&g, &g, 8).unwrap();
        assert_eq!(q.action.degree(), 1);
        assert!(q.action.is_trivial());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let c2 = grp(&["(1 2)"], 4);
        assert!(quotient_as_permgroup(&s4(), &c2, 64).is_err());
    }

    #[test]
    fn abelian_quotient_orders() {
        let s5 = grp(&["(1 2)", "(1 2 3 4 5)"], 5);
        assert_eq!(abelian_quotient_order(&s5), BigUint::from(2u32));
        let a5 = grp(&["(1 2 3)", "(3 4 5)"], 5);
        assert_eq!(abelian_quotient_order(&a5), BigUint::from(1u32));
        let f20 = grp(&["(1 2 3 4 5)", "(2 3 5 4)"], 5);
        assert_eq!(abelian_quotient_order(&f20), BigUint::from(4u32));
    }

    #[test]
    fn low_index_subgroups_of_s4() {
        assert_eq!(low_index_subgroups(&s4(), 4, 512).unwrap().members.len(), 9);
        assert_eq!(low_index_subgroups(&s4(), 3, 512).unwrap().members.len(), 5);
        assert_eq!(low_index_subgroups(&s4(), 1, 512).unwrap().members.len(), 1);
    }

    #[test]
    fn low_index_normal_core_route_agrees() {
        // Forcing a tiny exhaustive bound exercises the normal-core route.
        let s4 = s4();
        for d in [2u64, 3, 4] {
            let direct = low_index_subgroups(&s4, d, 512).unwrap();
            let cored = low_index_subgroups(&s4, d, 1).unwrap();
            assert_eq!(direct.members.len(), cored.members.len(), "d={d}");
            for m in &direct.members {
                assert!(cored.members.iter().any(|c| c.same_group(m)));
            }
        }
    }

    #[test]
    fn d_closure_examples() {
        let s4 = s4();
        let trivial = PermutationGroup::trivial(4);
        let closed = d_closure(&s4, &trivial, 4, IndexFilter::AtMost, 512).unwrap();
        assert!(closed.is_trivial());
        let closed3 = d_closure(&s4, &trivial, 3, IndexFilter::AtMost, 512).unwrap();
        assert_eq!(closed3.small_order(), Some(4));
    }

    #[test]
    fn d_closure_idempotent_and_monotone() {
        let s4 = s4();
        let c2 = grp(&["(1 2)"], 4);
        for d in [2u64, 3, 4] {
            let once = d_closure(&s4, &c2, d, IndexFilter::AtMost, 512).unwrap();
            let twice = d_closure(&s4, &once, d, IndexFilter::AtMost, 512).unwrap();
            assert!(once.same_group(&twice), "idempotence at d={d}");
            assert!(c2.is_subgroup_of(&once));
        }
        let d3 = d_closure(&s4, &c2, 3, IndexFilter::AtMost, 512).unwrap();
        let d4 = d_closure(&s4, &c2, 4, IndexFilter::AtMost, 512).unwrap();
        assert!(d4.is_subgroup_of(&d3));
    }

    #[test]
    fn intersection_of_index_three_subgroups() {
        let s4 = s4();
        let subs = low_index_subgroups(&s4, 3, 512).unwrap();
        let order8: Vec<&PermutationGroup> = subs
            .members
            .iter()
            .filter(|m| m.small_order() == Some(8))
            .collect();
        assert_eq!(order8.len(), 3);
        let meet = intersect_groups(&order8).unwrap();
        assert_eq!(meet.small_order(), Some(4));
    }
}
