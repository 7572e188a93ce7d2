//! Builders for the named groups: the standard families, the Heisenberg
//! group of degree p^2, the dihedral-power-times-cyclic witness pair, the
//! transitive degree-pq group with a Heisenberg quotient, extraspecial
//! central quotients of Heisenberg powers, and isomorphism search.

use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::poly::is_prime_u64;
use crate::products::{direct_product, isomorphism_images, HomomorphismSpec};
use crate::subgroups::{quotient_as_permgroup, ELEMENT_CAP};
use crate::{Error, Result};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardFamily {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
}

impl FromStr for StandardFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(StandardFamily::Cyclic),
            "dihedral" => Ok(StandardFamily::Dihedral),
            "symmetric" => Ok(StandardFamily::Symmetric),
            "alternating" => Ok(StandardFamily::Alternating),
            other => Err(Error::InvalidParameter(format!(
                "unsupported family tag {other:?}"
            ))),
        }
    }
}

/// Natural degree-d action of the cyclic, dihedral, symmetric, or alternating
/// family (orders d, 2d, d!, d!/2).
pub fn standard_group(family: StandardFamily, d: usize) -> Result<PermutationGroup> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let full_cycle = || -> Permutation {
        Permutation::from_images((0..d).map(|i| (i + 1) % d).collect()).expect("cycle")
    };
    match family {
        StandardFamily::Cyclic => PermutationGroup::new(vec![full_cycle()]),
        StandardFamily::Dihedral => {
            if d < 3 {
                return Err(Error::InvalidParameter(
                    "dihedral needs degree >= 3 for a faithful natural action".into(),
                ));
            }
            // Reflection fixing point 0: i -> -i mod d.
            let reflection =
                Permutation::from_images((0..d).map(|i| (d - i) % d).collect())?;
            PermutationGroup::new(vec![full_cycle(), reflection])
        }
        StandardFamily::Symmetric => {
            if d == 1 {
                return Ok(PermutationGroup::trivial(1));
            }
            let swap = Permutation::parse("(1 2)", d)?;
            PermutationGroup::new(vec![swap, full_cycle()])
        }
        StandardFamily::Alternating => {
            if d <= 2 {
                return Ok(PermutationGroup::trivial(d));
            }
            let mut gens = Vec::new();
            for i in 0..d.saturating_sub(2) {
                let mut images: Vec<usize> = (0..d).collect();
                images[i] = i + 1;
                images[i + 1] = i + 2;
                images[i + 2] = i;
                gens.push(Permutation::from_images(images)?);
            }
            PermutationGroup::new(gens)
        }
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::InvalidParameter(format!(
            "need an odd prime, got {p}"
        )));
    }
    Ok(())
}

/// The unitriangular 3x3 group over the p-element field, acting faithfully
/// and transitively on the p^2 affine points (x, y): the generators send
/// (x, y) to (x+y, y), (x, y+1) and (x+1, y); the last one is central.
pub fn heisenberg_generators(p: u64) -> Result<(Permutation, Permutation, Permutation)> {
    require_odd_prime(p)?;
    let p = p as usize;
    let point = |x: usize, y: usize| x % p + p * (y % p);
    let build = |f: &dyn Fn(usize, usize) -> usize| -> Result<Permutation> {
        let mut images = vec![0usize; p * p];
        for y in 0..p {
            for x in 0..p {
                images[point(x, y)] = f(x, y);
            }
        }
        Permutation::from_images(images)
    };
    let a = build(&|x, y| point(x + y, y))?;
    let b = build(&|x, y| point(x, y + 1))?;
    let z = build(&|x, y| point(x + 1, y))?;
    Ok((a, b, z))
}

/// Degree p^2, order p^3, exponent p, nonabelian.
pub fn heisenberg(p: u64) -> Result<PermutationGroup> {
    let (a, b, _) = heisenberg_generators(p)?;
    PermutationGroup::new(vec![a, b])
}

/// A direct product of n-1 dihedral blocks and one cyclic block, together
/// with the distinguished diagonal subgroup generated by the paired
/// rotations.
pub struct DpCpWitness {
    pub group: PermutationGroup,
    pub h: PermutationGroup,
    /// Generator of the final cyclic block.
    pub r_last: Permutation,
    pub p: u64,
    pub n: u64,
}

/// Group `(dihedral of order 2p)^(n-1) x (cyclic of order p)` on `n*p` points,
/// with the subgroup generated by `r_i * r_n` for each dihedral block.
pub fn dpcp_group(p: u64, n: u64) -> Result<DpCpWitness> {
    require_odd_prime(p)?;
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".into()));
    }
    let pu = p as usize;
    let nu = n as usize;
    let degree = nu * pu;
    let rotation = |block: usize| -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in 0..pu {
            images[block * pu + i] = block * pu + (i + 1) % pu;
        }
        Permutation::from_images(images).expect("rotation")
    };
    let reflection = |block: usize| -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in 0..pu {
            images[block * pu + i] = block * pu + (pu - i) % pu;
        }
        Permutation::from_images(images).expect("reflection")
    };
    let mut gens = Vec::new();
    for block in 0..nu - 1 {
        gens.push(rotation(block));
        gens.push(reflection(block));
    }
    let r_last = rotation(nu - 1);
    gens.push(r_last.clone());
    let group = PermutationGroup::new(gens)?;

    let mut h_gens = Vec::new();
    for block in 0..nu - 1 {
        h_gens.push(rotation(block).compose(&r_last)?);
    }
    let h = PermutationGroup::new(h_gens)?;
    let expected = (2 * p as u128).pow(n as u32 - 1) * p as u128;
    if group.order_u128() != Some(expected) || h.order_u128() != Some((p as u128).pow(n as u32 - 1))
    {
        return Err(Error::InvalidParameter(
            "witness construction has unexpected order".into(),
        ));
    }
    Ok(DpCpWitness {
        group,
        h,
        r_last,
        p,
        n,
    })
}

/// Transitive group of degree p*q isomorphic to `(cyclic q)^p` extended by
/// the Heisenberg group of degree p^2, with all named generators.
pub struct HbergerWitness {
    pub group: PermutationGroup,
    /// The normal subgroup generated by the per-block q-cycles.
    pub a_sub: PermutationGroup,
    /// The complement generated by alpha, beta, gamma.
    pub b_sub: PermutationGroup,
    pub sigma: Vec<Permutation>,
    pub tau: Vec<Permutation>,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
    /// The degree-q cycle normalizer eta (a (q-1)-cycle).
    pub eta_q: Permutation,
    /// The degree-q product of p-cycles tau = eta^m.
    pub tau_q: Permutation,
    /// The multiplier g used for eta: r -> g*r mod q.
    pub multiplier: u64,
    pub p: u64,
    pub q: u64,
    pub m: u64,
}

fn smallest_primitive_root(q: u64) -> u64 {
    let phi = q - 1;
    let factors: Vec<u64> = crate::poly::factor_u64(phi).keys().copied().collect();
    'outer: for g in 2..q {
        for &f in &factors {
            if mod_pow(g, phi / f, q) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, modulus: u64) -> u64 {
    mod_pow(a, modulus - 2, modulus)
}

/// Build the degree-pq witness. With composition read left to right, the
/// multiplication map `r -> g*r` conjugates the standard q-cycle to its g-th
/// power; the multiplier is the inverse of the smallest primitive root mod q,
/// which reproduces the classical hand-worked generators at (p, q) = (3, 7).
pub fn hberger_group(p: u64, q: u64) -> Result<HbergerWitness> {
    if !is_prime_u64(p) || !is_prime_u64(q) {
        return Err(Error::InvalidParameter("p and q must be prime".into()));
    }
    if q % p != 1 {
        return Err(Error::InvalidParameter(format!(
            "need q = 1 mod p, got p={p}, q={q}"
        )));
    }
    let m = (q - 1) / p;
    let multiplier = mod_inverse(smallest_primitive_root(q), q);
    let qu = q as usize;
    let pu = p as usize;
    let degree = pu * qu;

    // Degree-q pieces on residues 0..q-1 (residue r is point r).
    let sigma_q = Permutation::from_images((0..qu).map(|r| (r + 1) % qu).collect())?;
    let eta_q = Permutation::from_images(
        (0..qu)
            .map(|r| (multiplier as usize * r) % qu)
            .collect(),
    )?;
    let tau_q = eta_q.pow(m as i64);
    debug_assert_eq!(
        sigma_q.conjugate_by(&eta_q)?,
        sigma_q.pow(multiplier as i64)
    );

    // Block i occupies points [i*q, (i+1)*q).
    let embed = |g: &Permutation, block: usize| -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for (x, y) in g.images().enumerate() {
            images[block * qu + x] = block * qu + y;
        }
        Permutation::from_images(images).expect("block embedding")
    };
    let sigma: Vec<Permutation> = (0..pu).map(|i| embed(&sigma_q, i)).collect();
    let tau: Vec<Permutation> = (0..pu).map(|i| embed(&tau_q, i)).collect();

    let mut alpha = Permutation::identity(degree);
    for t in &tau {
        alpha = alpha.compose(t)?;
    }
    let mut beta = Permutation::identity(degree);
    for (i, t) in tau.iter().enumerate() {
        beta = beta.compose(&t.pow(i as i64))?;
    }
    let gamma = Permutation::from_images(
        (0..degree)
            .map(|pt| {
                let (block, j) = (pt / qu, pt % qu);
                ((block + 1) % pu) * qu + j
            })
            .collect(),
    )?;

    let a_sub = PermutationGroup::new(sigma.clone())?;
    let b_sub = PermutationGroup::new(vec![alpha.clone(), beta.clone(), gamma.clone()])?;
    let mut gens = sigma.clone();
    gens.extend([alpha.clone(), beta.clone(), gamma.clone()]);
    let group = PermutationGroup::new(gens)?;

    let expected = (q as u128).pow(p as u32) * (p as u128).pow(3);
    if group.order_u128() != Some(expected) {
        return Err(Error::InvalidParameter(format!(
            "degree-{degree} witness has order {:?}, expected {expected}",
            group.order_u128()
        )));
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(HbergerWitness {
        group,
        a_sub,
        b_sub,
        sigma,
        tau,
        alpha,
        beta,
        gamma,
        eta_q,
        tau_q,
        multiplier,
        p,
        q,
        m,
    })
}

/// Central quotient of n Heisenberg copies: order p^(2n+1), exponent p.
pub struct ExtraspecialWitness {
    pub p: u64,
    pub n: u64,
    /// Faithful regular action on the cosets of the identified centers.
    pub group: PermutationGroup,
    /// Images of the per-copy central generators in the quotient.
    pub z_images: Vec<Permutation>,
}

/// Quotient of the n-fold product of Heisenberg groups by the central
/// subgroup of tuples `(z^a_1, ..., z^a_n)` with `sum a_i = 0 mod p`,
/// realized by the coset action (degree p^(2n+1)).
pub fn extraspecial(p: u64, n: u64, degree_budget: u64) -> Result<ExtraspecialWitness> {
    require_odd_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let degree = (p as u128).checked_pow(2 * n as u32 + 1);
    match degree {
        Some(d) if d <= degree_budget as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "quotient degree p^(2n+1) exceeds budget {degree_budget}"
            )))
        }
    }
    let h = heisenberg(p)?;
    let (_, _, z) = heisenberg_generators(p)?;
    let copies: Vec<PermutationGroup> = (0..n).map(|_| h.clone()).collect();
    let emb = direct_product(&copies)?;
    let z_in: Vec<Permutation> = (0..n as usize)
        .map(|i| emb.inject(i, &z))
        .collect::<Result<_>>()?;
    let mut kernel_gens = Vec::new();
    for i in 0..n as usize - 1 {
        kernel_gens.push(z_in[i].compose(&z_in[i + 1].inverse())?);
    }
    if kernel_gens.is_empty() {
        kernel_gens.push(Permutation::identity(emb.degree()));
    }
    let kernel = PermutationGroup::new(kernel_gens)?;
    let realization = quotient_as_permgroup(&emb.combined, &kernel, degree_budget)?;
    let z_images: Vec<Permutation> = z_in
        .iter()
        .map(|zi| realization.induced(zi))
        .collect::<Result<_>>()?;
    Ok(ExtraspecialWitness {
        p,
        n,
        group: realization.action,
        z_images,
    })
}

/// A certified bijective generator-image map from `g` onto `h`, or None when
/// the groups are not isomorphic. The search backtracks over generator
/// images, screening by element order and conjugacy-class size, and returns
/// the lexicographically least image tuple.
pub fn find_isomorphism(
    g: &PermutationGroup,
    h: &PermutationGroup,
    bound: u64,
) -> Result<Option<HomomorphismSpec>> {
    let tuples = isomorphism_images(g, h, bound, false)?;
    match tuples.into_iter().next() {
        None => Ok(None),
        Some(images) => {
            let spec = HomomorphismSpec::new(g.clone(), h.clone(), images)?;
            debug_assert!(spec.is_bijective()?);
            Ok(Some(spec))
        }
    }
}
