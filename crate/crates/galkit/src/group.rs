//! Permutation groups backed by a stabilizer chain: exact order, membership,
//! orbits, block systems, normal closures, derived subgroups, stabilizers.

use crate::chain::{moved_support, StabilizerChain};
use crate::perm::Permutation;
use crate::{Error, Result};
use num_bigint::BigUint;
use rand::Rng;
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabilizerChain>,
}

impl PermutationGroup {
    /// Build a group from a nonempty list of generators of common degree.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let degree = match generators.first() {
            None => return Err(Error::EmptyGenerators),
            Some(g) => g.degree(),
        };
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let chain = StabilizerChain::build(degree, &generators);
        Ok(PermutationGroup {
            degree,
            generators,
            chain: Arc::new(chain),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(vec![Permutation::identity(degree)]).expect("degree >= 0")
    }

    /// Rebuild with a stabilizer chain whose base starts at the given points.
    pub(crate) fn with_base_hint(generators: Vec<Permutation>, hint: &[usize]) -> Result<Self> {
        let degree = match generators.first() {
            None => return Err(Error::EmptyGenerators),
            Some(g) => g.degree(),
        };
        let chain = StabilizerChain::build_with_hint(degree, &generators, hint);
        Ok(PermutationGroup {
            degree,
            generators,
            chain: Arc::new(chain),
        })
    }

    /// Chain whose base is ascending and covers the support; required by the
    /// canonical-coset-representative machinery.
    pub(crate) fn with_full_base(generators: Vec<Permutation>) -> Result<Self> {
        let degree = match generators.first() {
            None => return Err(Error::EmptyGenerators),
            Some(g) => g.degree(),
        };
        let support = moved_support(degree, &generators);
        let chain = StabilizerChain::build_with_hint(degree, &generators, &support);
        Ok(PermutationGroup {
            degree,
            generators,
            chain: Arc::new(chain),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        self.chain.order()
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.chain.order_u128()
    }

    /// Exact order as u64; desk-scale groups always fit.
    pub(crate) fn small_order(&self) -> Option<u64> {
        self.chain.order_u128().and_then(|o| u64::try_from(o).ok())
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.order_u128() == Some(1)
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: x.degree(),
            });
        }
        Ok(self.chain.contains(x))
    }

    pub fn is_subgroup_of(&self, ambient: &PermutationGroup) -> bool {
        self.degree == ambient.degree()
            && self
                .generators
                .iter()
                .all(|g| ambient.chain.contains(g))
    }

    /// Exact group equality: same point set, same order, mutual containment.
    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, ambient: &PermutationGroup) -> Result<bool> {
        if !self.is_subgroup_of(ambient) {
            return Err(Error::NotSubgroup);
        }
        for t in ambient.generators() {
            for s in &self.generators {
                if !self.chain.contains(&s.conjugate_by(t)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.compose_unchecked(b) != b.compose_unchecked(a) {
                    return false;
                }
            }
        }
        true
    }

    /// All elements, sorted lexicographically by image sequence.
    pub fn enumerate_elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        match self.small_order() {
            Some(order) if order <= bound => {}
            _ => {
                return Err(Error::OrderExceedsBound {
                    order: self.order().to_string(),
                    bound: bound.to_string(),
                })
            }
        }
        let mut elems = self.chain.elements();
        elems.sort();
        Ok(elems)
    }

    pub(crate) fn elements_unsorted(&self) -> Vec<Permutation> {
        self.chain.elements()
    }

    /// Orbit partition of the point set, blocks sorted by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for g in &self.generators {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit_of(0).len() == self.degree
    }

    /// Minimal block system whose block contains both seed points.
    /// Returns `Primitive` when the seeds force the full point set.
    pub fn minimal_block_system(&self, seed: (usize, usize)) -> Result<BlockSystem> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let (a, b) = seed;
        for p in [a, b] {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p + 1,
                    degree: self.degree,
                });
            }
        }
        if a == b {
            return Err(Error::InvalidParameter("seed points must differ".into()));
        }
        let mut uf = UnionFind::new(self.degree);
        uf.union(a, b);
        loop {
            let mut changed = false;
            for x in 0..self.degree {
                let r = uf.find(x);
                if r == x {
                    continue;
                }
                for g in &self.generators {
                    if uf.union(g.apply(x), g.apply(r)) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![usize::MAX; self.degree];
        for x in 0..self.degree {
            let r = uf.find(x);
            if class_of[r] == usize::MAX {
                class_of[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[class_of[r]].push(x);
        }
        if classes.len() == 1 {
            return Ok(BlockSystem::Primitive);
        }
        classes.sort_by_key(|c| c[0]);
        Ok(BlockSystem::Blocks(classes))
    }

    /// Aggregate primitivity test over all seed pairs through the first point.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        for q in 1..self.degree {
            if !matches!(self.minimal_block_system((0, q))?, BlockSystem::Primitive) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest normal subgroup of `self` containing the seeds, computed by
    /// closing the seed set under conjugation by the group's generators.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermutationGroup> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotInGroup);
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(s) {
                gens.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        if gens.is_empty() {
            return Ok(PermutationGroup::trivial(self.degree));
        }
        let mut chain = StabilizerChain::build(self.degree, &gens);
        while let Some(x) = queue.pop_front() {
            for t in &self.generators {
                let c = x.conjugate_by(t)?;
                if !chain.contains(&c) {
                    gens.push(c.clone());
                    chain = StabilizerChain::build(self.degree, &gens);
                    queue.push_back(c);
                }
            }
        }
        Ok(PermutationGroup {
            degree: self.degree,
            generators: gens,
            chain: Arc::new(chain),
        })
    }

    /// Commutator subgroup: normal closure of all generator commutators.
    pub fn derived_subgroup(&self) -> PermutationGroup {
        let mut seeds = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i..] {
                let c = Permutation::commutator(a, b).expect("common degree");
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
            .expect("commutators lie in the group")
    }

    /// Derived series until it stabilizes; the group is solvable iff the
    /// series reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let mut current = self.clone();
        // The order at least halves each step, so the series has at most
        // log2(|G|) strict steps.
        loop {
            if current.is_trivial() {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermutationGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        let chain = StabilizerChain::build_with_hint(self.degree, &self.generators, &[point]);
        let mut gens: Vec<Permutation> = Vec::new();
        for level in chain.levels().iter().skip(1) {
            for g in level.generators() {
                if !gens.contains(g) {
                    gens.push(g.clone());
                }
            }
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        PermutationGroup::new(gens)
    }

    pub fn conjugate_group(&self, h: &Permutation) -> Result<PermutationGroup> {
        let gens: Result<Vec<Permutation>> =
            self.generators.iter().map(|g| g.conjugate_by(h)).collect();
        PermutationGroup::new(gens?)
    }

    /// Uniformly random element: product of uniformly chosen transversal
    /// representatives along the chain.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.chain.levels().iter().rev() {
            let orbit = level.orbit();
            let p = orbit[rng.gen_range(0..orbit.len())];
            let u = level.transversal_element(p).expect("orbit point");
            acc = acc.compose_unchecked(u);
        }
        acc
    }

    /// Shared CLI/JSON form: `{"degree": n, "generators": ["(1,2,3)", ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "generators": self
                .generators
                .iter()
                .map(cycle_string_commas)
                .collect::<Vec<String>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let degree = value
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Parse("group JSON needs a \"degree\" field".into()))?
            as usize;
        let gens = value
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::Parse("group JSON needs a \"generators\" array".into()))?;
        let mut parsed = Vec::new();
        for g in gens {
            let text = g
                .as_str()
                .ok_or_else(|| Error::Parse("generators must be cycle strings".into()))?;
            parsed.push(Permutation::parse(text, degree)?);
        }
        if parsed.is_empty() {
            parsed.push(Permutation::identity(degree));
        }
        PermutationGroup::new(parsed)
    }
}

/// Cycle notation with comma separators, as used in the JSON group format.
pub fn cycle_string_commas(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    let mut out = String::new();
    for cycle in cycles {
        out.push('(');
        for (i, pt) in cycle.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&(pt + 1).to_string());
        }
        out.push(')');
    }
    out
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermutationGroup(degree={}, order={}, gens=[",
            self.degree,
            self.order()
        )?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Block partition of the point set, or a primitivity marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSystem {
    Primitive,
    Blocks(Vec<Vec<usize>>),
}

impl BlockSystem {
    /// Check the partition invariants: equal block sizes dividing the degree,
    /// disjoint cover, and every generator mapping blocks onto blocks.
    pub fn validate(&self, group: &PermutationGroup) -> Result<()> {
        let blocks = match self {
            BlockSystem::Primitive => return Ok(()),
            BlockSystem::Blocks(blocks) => blocks,
        };
        let n = group.degree();
        let b = blocks.first().map(|c| c.len()).unwrap_or(0);
        if b <= 1 || b >= n || n % b != 0 {
            return Err(Error::InvalidParameter(format!(
                "block size {b} invalid for degree {n}"
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        let mut covered = 0;
        for (bi, block) in blocks.iter().enumerate() {
            if block.len() != b {
                return Err(Error::InvalidParameter("unequal block sizes".into()));
            }
            for &p in block {
                if p >= n || block_of[p] != usize::MAX {
                    return Err(Error::InvalidParameter("blocks are not a partition".into()));
                }
                block_of[p] = bi;
                covered += 1;
            }
        }
        if covered != n {
            return Err(Error::InvalidParameter("blocks do not cover the points".into()));
        }
        for g in group.generators() {
            for block in blocks {
                let target = block_of[g.apply(block[0])];
                for &p in block {
                    if block_of[g.apply(p)] != target {
                        return Err(Error::InvalidParameter(
                            "a generator splits a block".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    pub(crate) fn grp(gens: &[&str], degree: usize) -> PermutationGroup {
        PermutationGroup::new(gens.iter().map(|t| p(t, degree)).collect()).unwrap()
    }

    #[test]
    fn build_group_orders() {
        assert_eq!(grp(&["(1 2)", "(1 2 3 4)"], 4).small_order(), Some(24));
        assert_eq!(
            grp(&["(1 2 3 4 5)", "(2 3 5 4)"], 5).small_order(),
            Some(20)
        );
        assert_eq!(grp(&["(1 2 3)(4 5 6)"], 6).small_order(), Some(3));
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(PermutationGroup::new(vec![]).is_err());
    }

    #[test]
    fn mixed_degrees_rejected() {
        assert!(PermutationGroup::new(vec![p("(1 2)", 3), p("(1 2)", 4)]).is_err());
    }

    #[test]
    fn contains_examples() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        assert!(s4.contains(&p("(1 3)(2 4)", 4)).unwrap());
        let c5 = grp(&["(1 2 3 4 5)"], 5);
        assert!(!c5.contains(&p("(1 2)", 5)).unwrap());
        let f20 = grp(&["(1 2 3 4 5)", "(2 3 5 4)"], 5);
        assert!(f20.contains(&p("(2 5)(3 4)", 5)).unwrap());
        assert!(f20.contains(&p("(1 2)", 4)).is_err());
    }

    #[test]
    fn enumerate_respects_bound() {
        let s3 = grp(&["(1 2)", "(1 2 3)"], 3);
        assert_eq!(s3.enumerate_elements(10).unwrap().len(), 6);
        let s5 = grp(&["(1 2)", "(1 2 3 4 5)"], 5);
        assert!(s5.enumerate_elements(50).is_err());
    }

    #[test]
    fn enumerate_is_sorted_and_distinct() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        let elems = s4.enumerate_elements(30).unwrap();
        assert_eq!(elems.len(), 24);
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn orbit_partition() {
        let g = grp(&["(1 2 3)(4 5 6)"], 6);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let id3 = PermutationGroup::trivial(3);
        assert_eq!(id3.orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn block_system_of_c4() {
        let c4 = grp(&["(1 2 3 4)"], 4);
        let blocks = c4.minimal_block_system((0, 2)).unwrap();
        assert_eq!(blocks, BlockSystem::Blocks(vec![vec![0, 2], vec![1, 3]]));
        blocks.validate(&c4).unwrap();
    }

    #[test]
    fn primitivity_of_prime_degree_and_s5() {
        let c5 = grp(&["(1 2 3 4 5)"], 5);
        assert!(c5.is_primitive().unwrap());
        let s5 = grp(&["(1 2)", "(1 2 3 4 5)"], 5);
        assert!(s5.is_primitive().unwrap());
        let c4 = grp(&["(1 2 3 4)"], 4);
        assert!(!c4.is_primitive().unwrap());
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        let klein = s4.normal_closure(&[p("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(klein.small_order(), Some(4));
        let all = s4.normal_closure(&[p("(1 2)", 4)]).unwrap();
        assert_eq!(all.small_order(), Some(24));
        let trivial = s4.normal_closure(&[Permutation::identity(4)]).unwrap();
        assert!(trivial.is_trivial());
        assert!(s4.normal_closure(&[p("(1 2 3 4 5)", 5)]).is_err());
    }

    #[test]
    fn derived_subgroups() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(s4.derived_subgroup().small_order(), Some(12));
        let c5 = grp(&["(1 2 3 4 5)"], 5);
        assert!(c5.derived_subgroup().is_trivial());
    }

    #[test]
    fn point_stabilizers() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(s4.point_stabilizer(3).unwrap().small_order(), Some(6));
        let c5 = grp(&["(1 2 3 4 5)"], 5);
        assert!(c5.point_stabilizer(0).unwrap().is_trivial());
        assert!(s4.point_stabilizer(7).is_err());
    }

    #[test]
    fn orbit_stabilizer_identity() {
        for g in [
            grp(&["(1 2)", "(1 2 3 4)"], 4),
            grp(&["(1 2 3 4 5)", "(2 3 5 4)"], 5),
            grp(&["(1 2 3)(4 5 6)"], 6),
        ] {
            let order = g.small_order().unwrap();
            for point in 0..g.degree() {
                let orbit = g.orbit_of(point).len() as u64;
                let stab = g.point_stabilizer(point).unwrap().small_order().unwrap();
                assert_eq!(orbit * stab, order);
            }
        }
    }

    #[test]
    fn solvability() {
        assert!(grp(&["(1 2)", "(1 2 3 4)"], 4).is_solvable());
        assert!(!grp(&["(1 2 3)", "(3 4 5)"], 5).is_solvable());
    }

    #[test]
    fn group_json_roundtrip() {
        let f20 = grp(&["(1 2 3 4 5)", "(2 3 5 4)"], 5);
        let json = f20.to_json();
        assert_eq!(json["degree"], 5);
        assert_eq!(json["generators"][0], "(1,2,3,4,5)");
        let back = PermutationGroup::from_json(&json).unwrap();
        assert!(back.same_group(&f20));
    }
}
