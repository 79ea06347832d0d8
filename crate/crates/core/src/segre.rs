//! Segre classes of subschemes of P^n via projective degrees.
//!
//! For equalized generators `f_0..f_r` of degree `d`, the projective degree
//! `g_i` is the number of points of a generic `i`-plane where `i` generic
//! combinations of the `f_j` vanish, away from the base locus. Then
//!
//! `s(Z, P^n) = 1 - sum_i g_i H^i / (1 + d H)^(i+1)`.
//!
//! Counts are taken over GF(p) with random choices drawn from a seeded
//! ChaCha stream per index, and two independent seeds must agree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chow::{GradedClass, SplitBundle};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{monomials_of_degree, Field, Poly, PrimeField, Ring, DEFAULT_PRIME};

/// Smallest prime accepted for randomized counts.
pub const MIN_PRIME: u32 = 1000;

/// Default master seed.
pub const DEFAULT_SEED: u64 = 0xC530;

const MAX_RETRIES: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreConfig {
    pub prime: u32,
    pub seed: u64,
    /// Independent seeds that must agree; 1 disables the check.
    pub trials: usize,
}

impl Default for SegreConfig {
    fn default() -> Self {
        SegreConfig {
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            trials: 2,
        }
    }
}

impl SegreConfig {
    /// Seed of the `t`-th independent trial.
    pub fn trial_seed(&self, t: usize) -> u64 {
        // splitmix64 step keeps trial seeds well separated
        let mut z = self.seed.wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveDegrees {
    pub degrees: Vec<u64>,
    pub generator_degree: u32,
    pub seed: u64,
    pub prime: u32,
}

impl ProjectiveDegrees {
    /// `1 - c(O(dH))^{-1} (G (x) O(dH))` with `G = sum g_i H^i`.
    pub fn segre_class(&self) -> GradedClass {
        let n = self.degrees.len() - 1;
        let g = GradedClass::from_ints(
            n,
            &self.degrees.iter().map(|&x| x as i64).collect::<Vec<_>>(),
        );
        let d = self.generator_degree as i64;
        let twisted = g.tensor_line(d, 0).expect("offset 0");
        &GradedClass::one(n) - &(&SplitBundle::line(d).inverse_chern(n) * &twisted)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SegreOutcome {
    pub class: GradedClass,
    /// The accepted projective degrees.
    pub degrees: ProjectiveDegrees,
    /// Seeds actually run, in order.
    pub seeds: Vec<u64>,
}

/// Image of `p` over GF(prime), lifting coefficients to integers first
/// (symmetric residues for prime-field inputs).
pub fn modular_poly<F: Field>(p: &Poly<F>, target: &Ring<PrimeField>) -> Result<Poly<PrimeField>> {
    let field = target.field();
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let r = p.field().to_rational(c);
        let num = field.from_bigint(r.numer());
        let den = field.from_bigint(r.denom());
        let v = field.div(&num, &den).ok_or_else(|| {
            Error::PrimeTooSmall {
                p: field.modulus(),
                min: MIN_PRIME,
            }
        })?;
        terms.push((m.clone(), v));
    }
    Ok(Poly::from_terms(target, terms))
}

pub fn modular_ring<F: Field>(ring: &Ring<F>, prime: u32) -> Result<Ring<PrimeField>> {
    if prime < MIN_PRIME {
        return Err(Error::PrimeTooSmall {
            p: prime,
            min: MIN_PRIME,
        });
    }
    Ring::grevlex(PrimeField::new(prime)?, ring.variables())
}

/// The ideal over GF(prime); reuses the ideal when it already lives there.
pub fn modular_ideal<F: Field>(ideal: &Ideal<F>, prime: u32) -> Result<Ideal<PrimeField>> {
    let ring = modular_ring(ideal.ring(), prime)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| modular_poly(g, &ring))
        .collect::<Result<Vec<_>>>()?;
    let out = Ideal::new(&ring, gens)?.with_budget(ideal.budget());
    Ok(match ideal.name() {
        Some(n) => out.with_name(n),
        None => out,
    })
}

fn check_subscheme<F: Field>(ideal: &Ideal<F>) -> Result<u32> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(ideal.to_string()));
    }
    if ideal.generators().iter().all(|g| g.is_zero()) {
        return Err(Error::EmptyOrImproper(
            "zero ideal defines all of projective space".into(),
        ));
    }
    if ideal.generators().iter().any(|g| !g.is_zero() && g.is_constant()) {
        return Err(Error::EmptyOrImproper("unit ideal defines the empty scheme".into()));
    }
    Ok(ideal.max_generator_degree().unwrap())
}

/// Same subscheme with every generator of the maximal degree, by multiplying
/// lower-degree generators with all monomials of the complementary degree.
/// The result is checked against the input by scheme equality.
pub fn equalize_generators<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let out = equalize_unchecked(ideal)?;
    if !out.equal_as_schemes(ideal)? {
        return Err(Error::VerificationFailed(format!(
            "equalized generators of {ideal} define a different scheme"
        )));
    }
    Ok(out)
}

fn equalize_unchecked<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let d = check_subscheme(ideal)?;
    let nonzero: Vec<Poly<F>> = ideal.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.iter().all(|g| g.total_degree() == Some(d)) {
        return Ok(ideal.clone());
    }
    let spread = Ideal::new(ideal.ring(), nonzero)?.degree_piece_spanning_set(d)?;
    Ok(Ideal::new(ideal.ring(), spread)?.with_budget(ideal.budget()))
}

fn nonzero_elem(rng: &mut ChaCha8Rng, p: u32) -> u32 {
    rng.random_range(1..p)
}

/// `sum_j L_j f_j` with each `L_j` a random form of degree `d - deg f_j`:
/// a random combination of the equalized generators.
fn random_combination(gens: &[Poly<PrimeField>], d: u32, rng: &mut ChaCha8Rng) -> Poly<PrimeField> {
    let ring = gens[0].ring();
    let p = ring.field().modulus();
    let mut acc = Poly::zero(ring);
    for g in gens {
        let gd = g.total_degree().unwrap();
        let form = Poly::from_terms(
            ring,
            monomials_of_degree(ring.nvars(), d - gd)
                .into_iter()
                .map(|m| (m, nonzero_elem(rng, p))),
        );
        acc = &acc + &(&form * g);
    }
    acc
}

/// `g_i` on one random draw.
fn degree_at(gens: &[Poly<PrimeField>], d: u32, i: usize, rng: &mut ChaCha8Rng) -> Result<u64> {
    let ring = gens[0].ring();
    let field = *ring.field();
    let p = field.modulus();
    let nv = ring.nvars();
    let mut names: Vec<String> = (1..=i).map(|k| format!("u{k}")).collect();
    names.push("t".into());
    let sys = Ring::grevlex(field, &names)?;
    // random affine i-plane x = p_0 + sum u_k p_k
    let points: Vec<Vec<u32>> = (0..=i)
        .map(|_| (0..nv).map(|_| rng.random_range(0..p)).collect())
        .collect();
    let images: Vec<Poly<PrimeField>> = (0..nv)
        .map(|v| {
            let mut terms = vec![(crate::poly::Monomial::one(i + 1), points[0][v])];
            for k in 1..=i {
                terms.push((crate::poly::Monomial::variable(i + 1, k - 1), points[k][v]));
            }
            Poly::from_terms(&sys, terms)
        })
        .collect();
    let mut eqs = Vec::with_capacity(i + 1);
    for _ in 0..i {
        eqs.push(random_combination(gens, d, rng).substitute(&sys, &images)?);
    }
    // any nonzero element of the ideal vanishes on the base locus, and for
    // generic sections no other solution lies on it; the sparsest
    // lowest-degree generator keeps the system small
    let h0 = gens
        .iter()
        .min_by_key(|g| (g.total_degree(), g.len()))
        .unwrap()
        .substitute(&sys, &images)?;
    let t = Poly::var(&sys, i);
    eqs.push(&Poly::one(&sys) - &(&t * &h0));
    let budget = crate::groebner::DEFAULT_STEP_BUDGET;
    Ok(Ideal::new(&sys, eqs)?.with_budget(budget).quotient_dimension()? as u64)
}

fn stream(seed: u64, i: usize, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((i as u64) << 8 | attempt);
    rng
}

fn degree_with_retries(gens: &[Poly<PrimeField>], d: u32, i: usize, seed: u64) -> Result<u64> {
    let mut last = Error::NotZeroDimensional;
    for attempt in 0..MAX_RETRIES {
        match degree_at(gens, d, i, &mut stream(seed, i, attempt)) {
            Err(Error::NotZeroDimensional) => last = Error::NotZeroDimensional,
            other => return other,
        }
    }
    Err(last)
}

/// Projective degrees of the map given by the generators, counted over
/// GF(`prime`) with one seed.
pub fn projective_degrees<F: Field>(ideal: &Ideal<F>, seed: u64, prime: u32) -> Result<ProjectiveDegrees> {
    let modular = modular_ideal(ideal, prime)?;
    // combinations with random forms of complementary degree are random
    // combinations of the equalized generators, so no need to expand them
    let d = check_subscheme(&modular)?;
    let gens: Vec<Poly<PrimeField>> = modular.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    let n = ideal.ring().nvars() - 1;
    let compute = |i: usize| degree_with_retries(&gens, d, i, seed);
    #[cfg(feature = "parallel")]
    let degrees: Result<Vec<u64>> = {
        use rayon::prelude::*;
        (0..=n).into_par_iter().map(compute).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let degrees: Result<Vec<u64>> = (0..=n).map(compute).collect();
    Ok(ProjectiveDegrees {
        degrees: degrees?,
        generator_degree: d,
        seed,
        prime,
    })
}

/// Runs seeds until `cfg.trials` agree, allowing one extra seed and a
/// majority vote on disagreement.
fn agree(
    cfg: &SegreConfig,
    mut run: impl FnMut(u64) -> Result<ProjectiveDegrees>,
) -> Result<(ProjectiveDegrees, Vec<u64>)> {
    let same = |a: &ProjectiveDegrees, b: &ProjectiveDegrees| {
        a.degrees == b.degrees && a.generator_degree == b.generator_degree
    };
    let trials = cfg.trials.max(1);
    let mut seeds = Vec::new();
    let mut results = Vec::new();
    for t in 0..trials {
        let s = cfg.trial_seed(t);
        seeds.push(s);
        results.push(run(s)?);
    }
    if results.iter().all(|r| same(r, &results[0])) {
        return Ok((results.swap_remove(0), seeds));
    }
    let s = cfg.trial_seed(trials);
    seeds.push(s);
    results.push(run(s)?);
    let total = results.len();
    for r in &results {
        if results.iter().filter(|x| same(x, r)).count() * 2 > total {
            return Ok((r.clone(), seeds));
        }
    }
    Err(Error::RandomnessDisagreement(format!(
        "seeds {seeds:?} gave {:?}",
        results.iter().map(|r| &r.degrees).collect::<Vec<_>>()
    )))
}

/// `s(V(I), P^n)` as a class on P^n.
pub fn segre_class<F: Field>(ideal: &Ideal<F>, cfg: &SegreConfig) -> Result<SegreOutcome> {
    check_subscheme(ideal)?;
    let (degrees, seeds) = agree(cfg, |s| projective_degrees(ideal, s, cfg.prime))?;
    let class = degrees.segre_class();
    if class.is_zero() {
        return Err(Error::EmptyOrImproper(format!("{ideal} defines the empty scheme")));
    }
    Ok(SegreOutcome {
        class,
        degrees,
        seeds,
    })
}

/// Segre class of the scheme cut out by `factor * rest`, where `factor` is a
/// form of degree `factor_degree`. Multiplying by a form does not change the
/// rational map, so only the degree shifts.
pub fn segre_class_with_factor<F: Field>(
    factor_degree: u32,
    rest: &Ideal<F>,
    cfg: &SegreConfig,
) -> Result<SegreOutcome> {
    let unit = rest.generators().iter().any(|g| g.is_constant() && !g.is_zero());
    if !unit {
        check_subscheme(rest)?;
    }
    let n = rest.ring().nvars() - 1;
    let (mut degrees, seeds) = if unit {
        // constant map
        let mut g = vec![0u64; n + 1];
        g[0] = 1;
        let pd = ProjectiveDegrees {
            degrees: g,
            generator_degree: 0,
            seed: cfg.seed,
            prime: cfg.prime,
        };
        (pd, vec![])
    } else {
        agree(cfg, |s| projective_degrees(rest, s, cfg.prime))?
    };
    degrees.generator_degree += factor_degree;
    let class = degrees.segre_class();
    Ok(SegreOutcome {
        class,
        degrees,
        seeds,
    })
}

/// `s(V(I), Z) = c(N_Z P^n) (cap) s(V(I), P^n)` for `Z` a smooth complete
/// intersection with split normal bundle.
pub fn segre_in_z<F: Field>(ideal: &Ideal<F>, normal: &SplitBundle, cfg: &SegreConfig) -> Result<GradedClass> {
    let s = segre_class(ideal, cfg)?.class;
    Ok(&normal.chern(s.ambient_dim()) * &s)
}
