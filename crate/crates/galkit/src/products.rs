//! Direct products on disjoint point windows, subdirect-product testing,
//! homomorphisms certified by graph closure, fibered products over a common
//! quotient, and the enumeration of all subdirect products of two factors
//! (every one of which is a fibered product).

use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::subgroups::{
    normal_subgroups, quotient_as_permgroup, QuotientRealization, SubgroupSet, ELEMENT_CAP,
};
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashMap;

/// A direct product acting on the disjoint union of the factors' domains.
pub struct ProductEmbedding {
    pub factors: Vec<PermutationGroup>,
    pub combined: PermutationGroup,
    pub offsets: Vec<usize>,
}

/// Direct product of the factors, each acting on its own point window.
pub fn direct_product(factors: &[PermutationGroup]) -> Result<ProductEmbedding> {
    if factors.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut offsets = Vec::with_capacity(factors.len());
    let mut total = 0;
    for f in factors {
        offsets.push(total);
        total += f.degree();
    }
    let mut gens = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for g in f.generators() {
            gens.push(inject_window(g, offsets[i], total));
        }
    }
    let combined = PermutationGroup::new(gens)?;
    Ok(ProductEmbedding {
        factors: factors.to_vec(),
        combined,
        offsets,
    })
}

fn inject_window(g: &Permutation, offset: usize, total: usize) -> Permutation {
    let mut images: Vec<usize> = (0..total).collect();
    for (x, y) in g.images().enumerate() {
        images[offset + x] = offset + y;
    }
    Permutation::from_images(images).expect("window injection is a bijection")
}

impl ProductEmbedding {
    pub fn degree(&self) -> usize {
        self.combined.degree()
    }

    /// Embed a factor element, acting trivially outside its window.
    pub fn inject(&self, factor: usize, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.factors[factor].degree() {
            return Err(Error::DegreeMismatch {
                left: self.factors[factor].degree(),
                right: g.degree(),
            });
        }
        Ok(inject_window(g, self.offsets[factor], self.degree()))
    }

    /// Combine one element per factor into a single permutation.
    pub fn pair(&self, parts: &[&Permutation]) -> Result<Permutation> {
        if parts.len() != self.factors.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} parts, got {}",
                self.factors.len(),
                parts.len()
            )));
        }
        let mut images: Vec<usize> = (0..self.degree()).collect();
        for (i, part) in parts.iter().enumerate() {
            if part.degree() != self.factors[i].degree() {
                return Err(Error::DegreeMismatch {
                    left: self.factors[i].degree(),
                    right: part.degree(),
                });
            }
            for (x, y) in part.images().enumerate() {
                images[self.offsets[i] + x] = self.offsets[i] + y;
            }
        }
        Permutation::from_images(images)
    }

    /// Restriction of `g` to a factor window; errors when the window is not
    /// invariant under `g`.
    pub fn project(&self, g: &Permutation, factor: usize) -> Result<Permutation> {
        let offset = self.offsets[factor];
        let size = self.factors[factor].degree();
        let mut images = Vec::with_capacity(size);
        for x in 0..size {
            let y = g.apply(offset + x);
            if y < offset || y >= offset + size {
                return Err(Error::NotSubgroup);
            }
            images.push(y - offset);
        }
        Permutation::from_images(images)
    }

    pub fn project_group(&self, sub: &PermutationGroup, factor: usize) -> Result<PermutationGroup> {
        let gens: Result<Vec<Permutation>> = sub
            .generators()
            .iter()
            .map(|g| self.project(g, factor))
            .collect();
        PermutationGroup::new(gens?)
    }
}

/// True iff every window projection of `sub` is onto the full factor.
pub fn is_subdirect(sub: &PermutationGroup, emb: &ProductEmbedding) -> Result<bool> {
    if !sub.is_subgroup_of(&emb.combined) {
        return Err(Error::NotSubgroup);
    }
    for i in 0..emb.factors.len() {
        if !emb.project_group(sub, i)?.same_group(&emb.factors[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Homomorphisms certified by graph closure
// ---------------------------------------------------------------------------

/// Generator-image map between groups. Well-definedness is certified by the
/// order of the graph subgroup of `source x target` generated by the paired
/// elements: the map extends to a homomorphism iff that order is `|source|`.
pub struct HomomorphismSpec {
    pub source: PermutationGroup,
    pub target: PermutationGroup,
    pub images: Vec<Permutation>,
}

impl HomomorphismSpec {
    pub fn new(
        source: PermutationGroup,
        target: PermutationGroup,
        images: Vec<Permutation>,
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::BadHomomorphism(format!(
                "need {} images, got {}",
                source.generators().len(),
                images.len()
            )));
        }
        for im in &images {
            if im.degree() != target.degree() {
                return Err(Error::DegreeMismatch {
                    left: target.degree(),
                    right: im.degree(),
                });
            }
            if !target.contains(im)? {
                return Err(Error::NotInGroup);
            }
        }
        Ok(HomomorphismSpec {
            source,
            target,
            images,
        })
    }

    fn graph_generators(&self) -> Result<(ProductEmbedding, Vec<Permutation>)> {
        let emb = direct_product(&[self.source.clone(), self.target.clone()])?;
        let gens: Result<Vec<Permutation>> = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, im)| emb.pair(&[g, im]))
            .collect();
        Ok((emb, gens?))
    }

    /// The graph subgroup of `source x target`.
    pub fn graph_group(&self) -> Result<PermutationGroup> {
        let (_, gens) = self.graph_generators()?;
        PermutationGroup::new(gens)
    }

    /// True iff the generator-image map extends to a homomorphism.
    pub fn certify(&self) -> Result<bool> {
        Ok(self.graph_group()?.order() == self.source.order())
    }

    pub fn image_group(&self) -> Result<PermutationGroup> {
        if self.images.is_empty() {
            return Ok(PermutationGroup::trivial(self.target.degree()));
        }
        PermutationGroup::new(self.images.clone())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image_group()?.same_group(&self.target))
    }

    pub fn is_bijective(&self) -> Result<bool> {
        Ok(self.certify()?
            && self.source.order() == self.target.order()
            && self.is_surjective()?)
    }

    /// Image of an arbitrary source element, computed by sifting
    /// `(x, identity)` through a graph chain whose base covers the source
    /// window: the residue is `(identity, apply(x)^-1)`.
    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        if !self.source.contains(x)? {
            return Err(Error::NotInGroup);
        }
        let (emb, gens) = self.graph_generators()?;
        let hint: Vec<usize> = (0..self.source.degree()).collect();
        let graph = PermutationGroup::with_base_hint(gens, &hint)?;
        if graph.order() != self.source.order() {
            return Err(Error::BadHomomorphism(
                "generator images do not define a homomorphism".into(),
            ));
        }
        let combined = emb.pair(&[x, &Permutation::identity(self.target.degree())])?;
        let residue = graph
            .chain()
            .reduce(&combined)
            .ok_or(Error::BadHomomorphism("sift failed on certified graph".into()))?;
        let value_part = emb.project(&residue, 1)?;
        if !emb.project(&residue, 0)?.is_identity() {
            return Err(Error::BadHomomorphism(
                "residue did not collapse the source window".into(),
            ));
        }
        Ok(value_part.inverse())
    }
}

/// Free-function form of the graph-closure certification.
pub fn certify_homomorphism(spec: &HomomorphismSpec) -> Result<bool> {
    spec.certify()
}

// ---------------------------------------------------------------------------
// Fibered products
// ---------------------------------------------------------------------------

/// Two groups, a normal subgroup in each, and a certified isomorphism between
/// the two coset-action quotients.
pub struct FiberedProductSpec {
    pub g1: PermutationGroup,
    pub g2: PermutationGroup,
    pub n1: PermutationGroup,
    pub n2: PermutationGroup,
    pub quotient_iso: HomomorphismSpec,
    q1: QuotientRealization,
    q2: QuotientRealization,
}

impl FiberedProductSpec {
    /// `iso_images[i]` is the image in the second quotient of the first
    /// quotient's `i`-th generator (which is the image of `g1`'s `i`-th
    /// generator in the coset action).
    pub fn new(
        g1: PermutationGroup,
        g2: PermutationGroup,
        n1: PermutationGroup,
        n2: PermutationGroup,
        iso_images: Vec<Permutation>,
    ) -> Result<Self> {
        let q1 = quotient_as_permgroup(&g1, &n1, ELEMENT_CAP)?;
        let q2 = quotient_as_permgroup(&g2, &n2, ELEMENT_CAP)?;
        let quotient_iso =
            HomomorphismSpec::new(q1.action.clone(), q2.action.clone(), iso_images)?;
        if !quotient_iso.is_bijective()? {
            return Err(Error::BadHomomorphism(
                "quotient map is not a certified isomorphism".into(),
            ));
        }
        Ok(FiberedProductSpec {
            g1,
            g2,
            n1,
            n2,
            quotient_iso,
            q1,
            q2,
        })
    }

    pub fn quotient_order(&self) -> &BigUint {
        self.q1.action.order()
    }
}

/// The subgroup of `g1 x g2` of pairs agreeing in the common quotient:
/// generated by the injected kernels together with one lifted pair per `g1`
/// generator. The order always equals `|g1| |g2| / |Q|`.
pub fn fibered_product(spec: &FiberedProductSpec) -> Result<PermutationGroup> {
    let emb = direct_product(&[spec.g1.clone(), spec.g2.clone()])?;
    let mut gens = Vec::new();
    for k in spec.n1.generators() {
        if !k.is_identity() {
            gens.push(emb.inject(0, k)?);
        }
    }
    for k in spec.n2.generators() {
        if !k.is_identity() {
            gens.push(emb.inject(1, k)?);
        }
    }
    for (i, a) in spec.g1.generators().iter().enumerate() {
        let image_in_q2 = &spec.quotient_iso.images[i];
        let lifted = spec.q2.lift(image_in_q2)?;
        gens.push(emb.pair(&[a, &lifted])?);
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(emb.degree()));
    }
    let product = PermutationGroup::new(gens)?;
    let expected = spec.g1.order() * spec.g2.order() / spec.quotient_order();
    if product.order() != &expected {
        return Err(Error::InvalidParameter(format!(
            "fibered product order {} does not match {}",
            product.order(),
            expected
        )));
    }
    Ok(product)
}

// ---------------------------------------------------------------------------
// Isomorphism search (generator-image backtracking)
// ---------------------------------------------------------------------------

/// All isomorphisms `source -> target` as full image tuples (one image per
/// source generator), or just the first when `find_all` is false. Candidates
/// are screened by element order and conjugacy-class size; partial maps are
/// pruned by the graph criterion on each generating prefix.
pub(crate) fn isomorphism_images(
    source: &PermutationGroup,
    target: &PermutationGroup,
    bound: u64,
    find_all: bool,
) -> Result<Vec<Vec<Permutation>>> {
    if source.order() != target.order() {
        return Ok(Vec::new());
    }
    let source_elems = source.enumerate_elements(bound)?;
    let target_elems = target.enumerate_elements(bound)?;
    let mut source_hist: HashMap<u64, usize> = HashMap::new();
    for e in &source_elems {
        *source_hist.entry(e.order()).or_insert(0) += 1;
    }
    let mut target_hist: HashMap<u64, usize> = HashMap::new();
    for e in &target_elems {
        *target_hist.entry(e.order()).or_insert(0) += 1;
    }
    if source_hist != target_hist || source.is_abelian() != target.is_abelian() {
        return Ok(Vec::new());
    }
    let source_class_size = class_size_map(source)?;
    let target_class_size = class_size_map(target)?;

    // Irredundant generating subsequence of the source.
    let mut irredundant: Vec<usize> = Vec::new();
    let mut prefix_orders: Vec<BigUint> = Vec::new();
    let mut prefix = PermutationGroup::trivial(source.degree());
    for (i, g) in source.generators().iter().enumerate() {
        if prefix.contains(g)? {
            continue;
        }
        let mut gens: Vec<Permutation> = irredundant
            .iter()
            .map(|&j| source.generators()[j].clone())
            .collect();
        gens.push(g.clone());
        prefix = PermutationGroup::new(gens)?;
        irredundant.push(i);
        prefix_orders.push(prefix.order().clone());
    }

    // Candidate images per irredundant position.
    let mut candidates: Vec<Vec<Permutation>> = Vec::new();
    for &i in &irredundant {
        let g = &source.generators()[i];
        let order = g.order();
        let class = source_class_size[g];
        let cands: Vec<Permutation> = target_elems
            .iter()
            .filter(|t| t.order() == order && target_class_size[*t] == class)
            .cloned()
            .collect();
        if cands.is_empty() {
            return Ok(Vec::new());
        }
        candidates.push(cands);
    }

    let emb = direct_product(&[source.clone(), target.clone()])?;
    let mut found: Vec<Vec<Permutation>> = Vec::new();
    let mut assigned: Vec<Permutation> = Vec::new();
    backtrack(
        source,
        target,
        &emb,
        &irredundant,
        &prefix_orders,
        &candidates,
        &mut assigned,
        &mut found,
        find_all,
        bound,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    source: &PermutationGroup,
    target: &PermutationGroup,
    emb: &ProductEmbedding,
    irredundant: &[usize],
    prefix_orders: &[BigUint],
    candidates: &[Vec<Permutation>],
    assigned: &mut Vec<Permutation>,
    found: &mut Vec<Vec<Permutation>>,
    find_all: bool,
    bound: u64,
) -> Result<bool> {
    let depth = assigned.len();
    if depth == irredundant.len() {
        return finish_candidate(source, target, emb, irredundant, assigned, found, bound);
    }
    for cand in &candidates[depth] {
        assigned.push(cand.clone());
        // Graph criterion on the prefix: the paired generators must close to
        // exactly the order of the source prefix subgroup.
        let mut pair_gens = Vec::with_capacity(depth + 1);
        for (k, t) in assigned.iter().enumerate() {
            pair_gens.push(emb.pair(&[&source.generators()[irredundant[k]], t])?);
        }
        let graph = PermutationGroup::new(pair_gens)?;
        let ok = graph.order() == &prefix_orders[depth];
        if ok
            && backtrack(
                source,
                target,
                emb,
                irredundant,
                prefix_orders,
                candidates,
                assigned,
                found,
                find_all,
                bound,
            )?
            && !find_all
        {
            assigned.pop();
            return Ok(true);
        }
        assigned.pop();
    }
    Ok(!found.is_empty())
}

fn finish_candidate(
    source: &PermutationGroup,
    target: &PermutationGroup,
    emb: &ProductEmbedding,
    irredundant: &[usize],
    assigned: &[Permutation],
    found: &mut Vec<Vec<Permutation>>,
    bound: u64,
) -> Result<bool> {
    // Surjectivity: the chosen images must generate the target.
    let image_gens: Vec<Permutation> = if assigned.is_empty() {
        vec![Permutation::identity(target.degree())]
    } else {
        assigned.to_vec()
    };
    if PermutationGroup::new(image_gens)?.order() != target.order() {
        return Ok(false);
    }
    // Full image tuple: read the graph as a function table.
    let mut pair_gens = Vec::with_capacity(assigned.len());
    for (k, t) in assigned.iter().enumerate() {
        pair_gens.push(emb.pair(&[&source.generators()[irredundant[k]], t])?);
    }
    if pair_gens.is_empty() {
        pair_gens.push(Permutation::identity(emb.degree()));
    }
    let graph = PermutationGroup::new(pair_gens)?;
    let mut table: HashMap<Permutation, Permutation> = HashMap::new();
    for e in graph.enumerate_elements(bound)? {
        table.insert(emb.project(&e, 0)?, emb.project(&e, 1)?);
    }
    let mut full = Vec::with_capacity(source.generators().len());
    for g in source.generators() {
        match table.get(g) {
            Some(im) => full.push(im.clone()),
            None => return Ok(false),
        }
    }
    found.push(full);
    Ok(true)
}

fn class_size_map(g: &PermutationGroup) -> Result<HashMap<Permutation, usize>> {
    let mut map = HashMap::new();
    for class in crate::subgroups::conjugacy_classes(g)? {
        let size = class.len();
        for e in class {
            map.insert(e, size);
        }
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// Goursat enumeration
// ---------------------------------------------------------------------------

/// Every subdirect product of `g1 x g2`: for each pair of normal subgroups
/// with isomorphic quotients and each isomorphism between the quotients, the
/// fibered product; deduplicated by literal group equality.
pub fn enumerate_subdirect_products(
    g1: &PermutationGroup,
    g2: &PermutationGroup,
    bound: u64,
) -> Result<Vec<PermutationGroup>> {
    for g in [g1, g2] {
        match g.small_order() {
            Some(o) if o <= bound => {}
            _ => {
                return Err(Error::OrderExceedsBound {
                    order: g.order().to_string(),
                    bound: bound.to_string(),
                })
            }
        }
    }
    let normals1 = normal_subgroups(g1)?.members;
    let normals2 = normal_subgroups(g2)?.members;
    let mut set = SubgroupSet::new();
    for n1 in &normals1 {
        let q1 = quotient_as_permgroup(g1, n1, bound)?;
        for n2 in &normals2 {
            if crate::subgroups::index_of(g1, n1) != crate::subgroups::index_of(g2, n2) {
                continue;
            }
            let q2 = quotient_as_permgroup(g2, n2, bound)?;
            for images in isomorphism_images(&q1.action, &q2.action, bound, true)? {
                let spec = FiberedProductSpec {
                    g1: g1.clone(),
                    g2: g2.clone(),
                    n1: n1.clone(),
                    n2: n2.clone(),
                    quotient_iso: HomomorphismSpec::new(
                        q1.action.clone(),
                        q2.action.clone(),
                        images,
                    )?,
                    q1: q1.clone(),
                    q2: q2.clone(),
                };
                set.insert(fibered_product(&spec)?);
            }
        }
    }
    let mut members = set.members;
    crate::subgroups::sort_members(&mut members);
    Ok(members)
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

    fn s3() -> PermutationGroup {
        grp(&["(1 2 3)", "(1 2)"], 3)
    }

    #[test]
    fn direct_product_orders() {
        let emb = direct_product(&[s3(), s3()]).unwrap();
        assert_eq!(emb.degree(), 6);
        assert_eq!(emb.combined.small_order(), Some(36));
        let d3 = grp(&["(1 2 3)", "(2 3)"], 3);
        let c3 = grp(&["(1 2 3)"], 3);
        let emb = direct_product(&[d3, c3]).unwrap();
        assert_eq!(emb.combined.small_order(), Some(18));
        let single = direct_product(&[s3()]).unwrap();
        assert!(single.combined.same_group(&s3()));
    }

    #[test]
    fn subdirect_detection() {
        let emb = direct_product(&[s3(), s3()]).unwrap();
        let diagonal = grp(&["(1 2 3)(4 5 6)", "(1 2)(4 5)"], 6);
        assert!(is_subdirect(&diagonal, &emb).unwrap());
        let small = grp(&["(1 2 3)(4 5 6)"], 6);
        assert!(!is_subdirect(&small, &emb).unwrap());
        let outside = grp(&["(1 4)"], 6);
        assert!(is_subdirect(&outside, &emb).is_err());
    }

    #[test]
    fn certify_sign_map() {
        let c2 = grp(&["(1 2)"], 2);
        let spec = HomomorphismSpec::new(
            s3(),
            c2.clone(),
            vec![Permutation::identity(2), p("(1 2)", 2)],
        )
        .unwrap();
        assert!(spec.certify().unwrap());
        assert!(spec.is_surjective().unwrap());
        // 3-cycles map to the identity, transpositions to the flip.
        assert_eq!(
            spec.apply(&p("(1 3 2)", 3)).unwrap(),
            Permutation::identity(2)
        );
        assert_eq!(spec.apply(&p("(1 3)", 3)).unwrap(), p("(1 2)", 2));
    }

    #[test]
    fn certify_rejects_non_homomorphism() {
        // A transposition cannot map to a 3-cycle.
        let c3 = grp(&["(1 2 3)"], 3);
        let spec = HomomorphismSpec::new(
            s3(),
            c3.clone(),
            vec![Permutation::identity(3), p("(1 2 3)", 3)],
        )
        .unwrap();
        assert!(!spec.certify().unwrap());
    }

    #[test]
    fn certify_c4_onto_c2() {
        let c4 = grp(&["(1 2 3 4)"], 4);
        let c2 = grp(&["(1 2)"], 2);
        let spec = HomomorphismSpec::new(c4, c2, vec![p("(1 2)", 2)]).unwrap();
        assert!(spec.certify().unwrap());
        assert!(spec.is_surjective().unwrap());
    }

    #[test]
    fn fibered_product_over_sign() {
        // Both sign quotients of S3 coincide as coset actions, so the
        // identity tuple on the quotient generators is the isomorphism.
        let a3 = grp(&["(1 2 3)"], 3);
        let q = quotient_as_permgroup(&s3(), &a3, 16).unwrap();
        let spec = FiberedProductSpec::new(
            s3(),
            s3(),
            a3.clone(),
            a3,
            q.action.generators().to_vec(),
        )
        .unwrap();
        let fp = fibered_product(&spec).unwrap();
        assert_eq!(fp.small_order(), Some(18));
        let emb = direct_product(&[s3(), s3()]).unwrap();
        assert!(is_subdirect(&fp, &emb).unwrap());
    }

    #[test]
    fn goursat_counts() {
        let subs = enumerate_subdirect_products(&s3(), &s3(), 512).unwrap();
        assert_eq!(subs.len(), 8);
        let mut orders: Vec<u64> = subs.iter().map(|s| s.small_order().unwrap()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![6, 6, 6, 6, 6, 6, 18, 36]);

        // Full product plus the four graphs of automorphisms of the cyclic
        // group of order 5 (the other two order-5 lines are the axes, which
        // project onto a single factor). Cross-checked by brute force below.
        let c5 = grp(&["(1 2 3 4 5)"], 5);
        let found = enumerate_subdirect_products(&c5, &c5, 512).unwrap();
        assert_eq!(found.len(), 5);
        let emb = direct_product(&[c5.clone(), c5.clone()]).unwrap();
        let brute: Vec<PermutationGroup> =
            crate::subgroups::enumerate_subgroups(&emb.combined, 512)
                .unwrap()
                .members
                .into_iter()
                .filter(|s| is_subdirect(s, &emb).unwrap())
                .collect();
        assert_eq!(brute.len(), 5);

        let c2 = grp(&["(1 2)"], 2);
        let c3 = grp(&["(1 2 3)"], 3);
        assert_eq!(
            enumerate_subdirect_products(&c2, &c3, 512).unwrap().len(),
            1
        );
    }

    #[test]
    fn fibered_products_satisfy_order_identity_and_subdirectness() {
        let subs = enumerate_subdirect_products(&s3(), &s3(), 512).unwrap();
        let emb = direct_product(&[s3(), s3()]).unwrap();
        for s in &subs {
            assert!(is_subdirect(s, &emb).unwrap());
        }
    }

    #[test]
    fn diagonal_of_s5_has_order_120() {
        let s5 = grp(&["(1 2)", "(1 2 3 4 5)"], 5);
        let trivial = PermutationGroup::trivial(5);
        let q1 = quotient_as_permgroup(&s5, &trivial, 1000).unwrap();
        let spec = FiberedProductSpec::new(
            s5.clone(),
            s5.clone(),
            trivial.clone(),
            trivial,
            q1.action.generators().to_vec(),
        )
        .unwrap();
        let diag = fibered_product(&spec).unwrap();
        assert_eq!(diag.small_order(), Some(120));
        let emb = direct_product(&[s5.clone(), s5]).unwrap();
        assert!(is_subdirect(&diag, &emb).unwrap());
    }

    #[test]
    fn trivial_quotient_gives_full_product() {
        let spec = FiberedProductSpec::new(
            s3(),
            s3(),
            s3(),
            s3(),
            vec![
                Permutation::identity(1),
                Permutation::identity(1),
            ],
        )
        .unwrap();
        let fp = fibered_product(&spec).unwrap();
        assert_eq!(fp.small_order(), Some(36));
    }
}
