//! Deterministic Schreier-Sims stabilizer chains with explicit transversals.
//!
//! Base points are chosen as the smallest point moved by the offending
//! element, so identical generator lists always produce identical chains.
//! The group order is the product of the orbit sizes along the chain.

use crate::perm::Permutation;
use num_bigint::BigUint;
use num_traits::One;

pub struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    inv_transversal: Vec<Option<Permutation>>,
    // BFS tree edge that discovered each orbit point: (parent point, gen index).
    tree_edge: Vec<Option<(usize, usize)>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inv_transversal: vec![None; degree],
            tree_edge: vec![None; degree],
        };
        level.recompute_orbit(degree);
        level
    }

    pub fn base_point(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn transversal_element(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref()
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.inv_transversal = vec![None; degree];
        self.tree_edge = vec![None; degree];
        self.orbit.push(self.base);
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.inv_transversal[self.base] = Some(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for (gi, s) in self.gens.iter().enumerate() {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().compose_unchecked(s);
                    self.inv_transversal[q] = Some(u.inverse());
                    self.transversal[q] = Some(u);
                    self.tree_edge[q] = Some((p, gi));
                    self.orbit.push(q);
                }
            }
        }
    }
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    order: BigUint,
    order_u128: Option<u128>,
}

impl StabilizerChain {
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        Self::build_with_hint(degree, gens, &[])
    }

    /// Build with the given base points seeded first, in the given order.
    /// Extra base points are appended as needed.
    pub fn build_with_hint(degree: usize, gens: &[Permutation], hint: &[usize]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: hint.iter().map(|&b| Level::new(degree, b)).collect(),
            order: BigUint::one(),
            order_u128: Some(1),
        };
        let mut seen: Vec<&Permutation> = Vec::new();
        for g in gens {
            if g.is_identity() || seen.contains(&g) {
                continue;
            }
            seen.push(g);
            chain.insert_generator(0, g.clone());
        }
        chain.verify_all();
        chain.cache_order();
        chain
    }

    fn insert_generator(&mut self, from_level: usize, g: Permutation) {
        // The generator belongs to every level whose base prefix it fixes.
        let mut j = from_level;
        while j < self.levels.len() && g.apply(self.levels[j].base) == self.levels[j].base {
            j += 1;
        }
        if j == self.levels.len() {
            let b = g
                .min_moved_point()
                .expect("identity filtered before insertion");
            self.levels.push(Level::new(self.degree, b));
        }
        let degree = self.degree;
        for level in &mut self.levels[from_level..=j] {
            level.gens.push(g.clone());
            level.recompute_orbit(degree);
        }
    }

    fn verify_all(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.verify_level(i as usize) {
                None => i -= 1,
                Some(j) => i = j as isize,
            }
        }
    }

    /// Sift every Schreier generator of level `i` through the deeper levels.
    /// Returns the level index where a new strong generator was installed,
    /// or None when the level is complete.
    fn verify_level(&mut self, i: usize) -> Option<usize> {
        for oi in 0..self.levels[i].orbit.len() {
            let p = self.levels[i].orbit[oi];
            for gi in 0..self.levels[i].gens.len() {
                let q = self.levels[i].gens[gi].apply(p);
                if self.levels[i].tree_edge[q] == Some((p, gi)) {
                    continue;
                }
                let level = &self.levels[i];
                let schreier = level.transversal[p]
                    .as_ref()
                    .unwrap()
                    .compose_unchecked(&level.gens[gi])
                    .compose_unchecked(level.inv_transversal[q].as_ref().unwrap());
                if schreier.is_identity() {
                    continue;
                }
                if let Some((j, residue)) = self.sift_from(i + 1, schreier) {
                    let j = if j == self.levels.len() {
                        let b = residue.min_moved_point().unwrap();
                        self.levels.push(Level::new(self.degree, b));
                        self.levels.len() - 1
                    } else {
                        j
                    };
                    self.insert_generator_range(i + 1, j, residue);
                    return Some(j);
                }
            }
        }
        None
    }

    fn insert_generator_range(&mut self, lo: usize, hi: usize, g: Permutation) {
        let degree = self.degree;
        for level in &mut self.levels[lo..=hi] {
            level.gens.push(g.clone());
            level.recompute_orbit(degree);
        }
    }

    /// Sift `g` through levels `start..`. Returns the failing level and the
    /// residue, or None when `g` reduces to the identity.
    fn sift_from(&self, start: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let p = g.apply(level.base);
            if p == level.base {
                continue;
            }
            match level.inv_transversal[p].as_ref() {
                None => return Some((j, g)),
                Some(inv_u) => g = g.compose_unchecked(inv_u),
            }
        }
        if g.is_identity() {
            None
        } else {
            Some((self.levels.len(), g))
        }
    }

    fn cache_order(&mut self) {
        let mut order = BigUint::one();
        let mut order_u128: Option<u128> = Some(1);
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
            order_u128 =
                order_u128.and_then(|acc| acc.checked_mul(level.orbit.len() as u128));
        }
        self.order = order;
        self.order_u128 = order_u128;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order_u128
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        self.sift_from(0, g.clone()).is_none()
    }

    /// Reduce `g` through every level. Returns the residue when each base
    /// image stayed inside its level orbit (identity iff `g` is a member),
    /// or None when the reduction got stuck at some level.
    pub fn reduce(&self, g: &Permutation) -> Option<Permutation> {
        match self.sift_from(0, g.clone()) {
            None => Some(Permutation::identity(self.degree)),
            Some((level, residue)) if level == self.levels.len() => Some(residue),
            Some(_) => None,
        }
    }

    /// All group elements as transversal products, in chain order
    /// (callers needing a canonical order sort the result).
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            if level.orbit.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.transversal[p].as_ref().unwrap();
                for e in &elems {
                    next.push(e.compose_unchecked(u));
                }
            }
            elems = next;
        }
        elems
    }
}

/// Sorted union of the points moved by any generator (equals the support of
/// the generated group).
pub fn moved_support(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut moved = vec![false; degree];
    for g in gens {
        for p in g.moved_points() {
            moved[p] = true;
        }
    }
    (0..degree).filter(|&p| moved[p]).collect()
}

/// Lexicographically smallest image table in the right coset `N g`, where
/// `kernel_chain` is a chain for `N` whose base is ascending and covers the
/// support of `N`. Used to canonicalize cosets for quotient actions.
pub fn minimal_coset_rep(kernel_chain: &StabilizerChain, g: &Permutation) -> Permutation {
    debug_assert!(kernel_chain
        .levels
        .windows(2)
        .all(|w| w[0].base < w[1].base));
    let mut v: Vec<u16> = g.raw().to_vec();
    for level in &kernel_chain.levels {
        if level.orbit.len() == 1 {
            continue;
        }
        let t = *level
            .orbit
            .iter()
            .min_by_key(|&&t| v[t])
            .expect("orbit nonempty");
        if t != level.base {
            let u = level.transversal[t].as_ref().unwrap();
            let mut next = Vec::with_capacity(v.len());
            for x in 0..v.len() {
                next.push(v[u.apply(x)]);
            }
            v = next;
        }
    }
    Permutation::from_raw(v)
}
