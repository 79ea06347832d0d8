//! Formal products of ideals with integer exponents, and Segre classes of
//! such products through a k-parameter family of thickenings.
//!
//! For `U = S1 * S2^-1` the class `s(S1 * S2^k)` is sampled at
//! `k = 1..j_max+2`. Each `H^j` coefficient is a polynomial in `k` of degree
//! at most `j`; it is fitted on `k = 1..j+1`, checked on the remaining
//! samples, and evaluated at `k = -1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chow::GradedClass;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Field, Poly};
use crate::segre::{segre_class, segre_class_with_factor, SegreConfig};

/// An ideal `(G) * K` kept as the form `G` and the ideal `K`. Multiplying by
/// a form leaves the rational map unchanged, so Segre classes only need `K`
/// and the degree of `G`.
#[derive(Clone, Debug)]
pub struct Factored<F: Field> {
    pub form: Option<Poly<F>>,
    pub rest: Ideal<F>,
}

impl<F: Field> Factored<F> {
    pub fn plain(rest: Ideal<F>) -> Self {
        Factored { form: None, rest }
    }

    pub fn with_form(form: Poly<F>, rest: Ideal<F>) -> Self {
        Factored {
            form: Some(form),
            rest,
        }
    }

    fn form_degree(&self) -> u32 {
        self.form.as_ref().and_then(|f| f.total_degree()).unwrap_or(0)
    }

    /// `self * other^k`.
    pub fn times_power(&self, other: &Self, k: u32) -> Result<Self> {
        let rest = self.rest.product(&other.rest.power(k)?)?;
        let form = match (&self.form, &other.form) {
            (None, None) => None,
            (a, b) => {
                let ring = self.rest.ring();
                let a = a.clone().unwrap_or_else(|| Poly::one(ring));
                let b = b.clone().unwrap_or_else(|| Poly::one(ring));
                Some(&a * &b.pow(k))
            }
        };
        Ok(Factored { form, rest })
    }

    /// The ideal `(G) * K` itself.
    pub fn materialize(&self) -> Result<Ideal<F>> {
        match &self.form {
            None => Ok(self.rest.clone()),
            Some(g) => {
                let principal = Ideal::new(self.rest.ring(), vec![g.clone()])?;
                principal.product(&self.rest)
            }
        }
    }

    fn segre(&self, ambient: Option<&Ideal<F>>, cfg: &SegreConfig) -> Result<GradedClass> {
        match (ambient, &self.form) {
            (None, Some(_)) => Ok(segre_class_with_factor(self.form_degree(), &self.rest, cfg)?.class),
            (None, None) => Ok(segre_class(&self.rest, cfg)?.class),
            (Some(z), _) => Ok(segre_class(&z.sum(&self.materialize()?)?, cfg)?.class),
        }
    }
}

/// A finite formal product of ideals with nonzero integer exponents.
#[derive(Clone, Debug)]
pub struct FScheme<F: Field> {
    factors: Vec<(Ideal<F>, i64)>,
}

impl<F: Field> FScheme<F> {
    pub fn identity() -> Self {
        FScheme { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[(Ideal<F>, i64)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Group product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        fs_normalize(all)
    }

    /// Product of the positive-exponent factors, if any.
    pub fn positive_part(&self) -> Result<Option<Ideal<F>>> {
        part(self.factors.iter().filter(|(_, e)| *e > 0).map(|(i, e)| (i, *e as u32)))
    }

    /// Product of the negative-exponent factors with exponents negated.
    pub fn negative_part(&self) -> Result<Option<Ideal<F>>> {
        part(self.factors.iter().filter(|(_, e)| *e < 0).map(|(i, e)| (i, (-*e) as u32)))
    }
}

fn part<'a, F: Field>(it: impl Iterator<Item = (&'a Ideal<F>, u32)>) -> Result<Option<Ideal<F>>> {
    let mut acc: Option<Ideal<F>> = None;
    for (ideal, e) in it {
        let p = ideal.power(e)?;
        acc = Some(match acc {
            None => p,
            Some(a) => a.product(&p)?,
        });
    }
    Ok(acc)
}

/// Merge scheme-equal factors by adding exponents and drop zero exponents.
pub fn fs_normalize<F: Field>(factors: Vec<(Ideal<F>, i64)>) -> Result<FScheme<F>> {
    let mut out: Vec<(Ideal<F>, i64)> = Vec::new();
    'next: for (ideal, e) in factors {
        for (seen, acc) in out.iter_mut() {
            if seen.equal_as_schemes(&ideal)? {
                *acc += e;
                continue 'next;
            }
        }
        out.push((ideal, e));
    }
    out.retain(|(_, e)| *e != 0);
    Ok(FScheme { factors: out })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SegreFamily {
    pub n: usize,
    pub samples: BTreeMap<i64, GradedClass>,
    /// `fitted[j][e]` is the coefficient of `k^e` in the `H^j` coefficient.
    pub fitted: Vec<Vec<BigRational>>,
    pub holdout_ok: bool,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Monomial-basis coefficients of the interpolating polynomial.
fn lagrange(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let m = points.len();
    let mut out = vec![BigRational::zero(); m];
    for (a, (xa, ya)) in points.iter().enumerate() {
        // basis polynomial prod_{b != a} (k - x_b) / (x_a - x_b)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (b, (xb, _)) in points.iter().enumerate() {
            if a == b {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * rat(*xb);
            }
            basis = next;
            denom *= rat(xa - xb);
        }
        let scale = ya / denom;
        for (e, c) in basis.iter().enumerate() {
            out[e] += c * &scale;
        }
    }
    out
}

fn eval_poly(coeffs: &[BigRational], k: i64) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * rat(k) + c)
}

impl SegreFamily {
    /// Fit every coefficient from its first `j+1` samples and check the rest.
    pub fn fit(n: usize, samples: BTreeMap<i64, GradedClass>) -> Result<Self> {
        let ks: Vec<i64> = samples.keys().copied().collect();
        let mut fitted = Vec::with_capacity(n + 1);
        let mut holdout_ok = true;
        for j in 0..=n {
            if ks.len() < j + 2 {
                return Err(Error::HoldoutMismatch(format!(
                    "coefficient of H^{j} needs {} samples, have {}",
                    j + 2,
                    ks.len()
                )));
            }
            let pts: Vec<(i64, BigRational)> =
                ks.iter().take(j + 1).map(|&k| (k, samples[&k].coeff(j).clone())).collect();
            let poly = lagrange(&pts);
            for &k in &ks[j + 1..] {
                if eval_poly(&poly, k) != *samples[&k].coeff(j) {
                    holdout_ok = false;
                }
            }
            fitted.push(poly);
        }
        Ok(SegreFamily {
            n,
            samples,
            fitted,
            holdout_ok,
        })
    }

    /// The fitted class at any integer `k`.
    pub fn evaluate(&self, k: i64) -> Result<GradedClass> {
        if !self.holdout_ok {
            return Err(Error::HoldoutMismatch(self.describe()));
        }
        Ok(GradedClass::from_coeffs(
            self.n,
            self.fitted.iter().map(|p| eval_poly(p, k)).collect(),
        ))
    }

    fn describe(&self) -> String {
        self.samples
            .iter()
            .map(|(k, c)| format!("k={k}: {c}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// `evaluate_family`, kept as a free function.
pub fn evaluate_family(family: &SegreFamily, k: i64) -> Result<GradedClass> {
    family.evaluate(k)
}

fn sample_family<F: Field>(
    s1: &Factored<F>,
    s2: &Factored<F>,
    ambient: Option<&Ideal<F>>,
    j_max: usize,
    cfg: &SegreConfig,
) -> Result<BTreeMap<i64, GradedClass>> {
    let ks: Vec<u32> = (1..=j_max as u32 + 2).collect();
    let one = |k: u32| -> Result<(i64, GradedClass)> {
        Ok((k as i64, s1.times_power(s2, k)?.segre(ambient, cfg)?))
    };
    #[cfg(feature = "parallel")]
    let samples: Result<Vec<(i64, GradedClass)>> = {
        use rayon::prelude::*;
        ks.into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let samples: Result<Vec<(i64, GradedClass)>> = ks.into_iter().map(one).collect();
    Ok(samples?.into_iter().collect())
}

/// Samples `s(A * S1 * S2^k)` for `k = 1..j_max+2` and fits them, where `A`
/// is the optional `ambient` ideal added to every sample. A failed holdout is
/// retried once with fresh seeds before being reported.
pub fn segre_family_with<F: Field>(
    s1: &Factored<F>,
    s2: &Factored<F>,
    ambient: Option<&Ideal<F>>,
    j_max: usize,
    cfg: &SegreConfig,
) -> Result<SegreFamily> {
    let n = s1.rest.ring().nvars() - 1;
    let j_max = j_max.min(n);
    let family = SegreFamily::fit(n, sample_family(s1, s2, ambient, j_max, cfg)?)?;
    if family.holdout_ok {
        return Ok(family);
    }
    let retry_cfg = SegreConfig {
        seed: cfg.trial_seed(cfg.trials + 1),
        ..cfg.clone()
    };
    let retry = SegreFamily::fit(n, sample_family(s1, s2, ambient, j_max, &retry_cfg)?)?;
    if retry.holdout_ok {
        Ok(retry)
    } else {
        Err(Error::HoldoutMismatch(retry.describe()))
    }
}

/// `s(S1 * S2^k)` as a family in `k`.
pub fn segre_family<F: Field>(s1: &Ideal<F>, s2: &Ideal<F>, j_max: usize, cfg: &SegreConfig) -> Result<SegreFamily> {
    segre_family_with(&Factored::plain(s1.clone()), &Factored::plain(s2.clone()), None, j_max, cfg)
}

/// Family value at `k = -1`, after checking that its value at `k = 0`
/// equals the directly computed `s(S1)`.
pub fn negative_thickening<F: Field>(
    s1: &Factored<F>,
    s2: &Factored<F>,
    ambient: Option<&Ideal<F>>,
    cfg: &SegreConfig,
) -> Result<(GradedClass, SegreFamily)> {
    let n = s1.rest.ring().nvars() - 1;
    let family = segre_family_with(s1, s2, ambient, n, cfg)?;
    let direct = s1.segre(ambient, cfg)?;
    let at_zero = family.evaluate(0)?;
    if at_zero != direct {
        return Err(Error::VerificationFailed(format!(
            "family at k = 0 gives {at_zero}, direct Segre class is {direct}"
        )));
    }
    Ok((family.evaluate(-1)?, family))
}

/// Segre class of `S1 * S2^-1` where `S1`, `S2` are the positive and negative
/// parts. With no negative part this is `s(S1)`; with no positive part it
/// is the dual of `s(S2)`.
pub fn fscheme_segre<F: Field>(u: &FScheme<F>, cfg: &SegreConfig) -> Result<GradedClass> {
    let pos = u.positive_part()?;
    let neg = u.negative_part()?;
    match (pos, neg) {
        (None, None) => Err(Error::EmptyOrImproper("identity f-scheme has no Segre class".into())),
        (Some(p), None) => Ok(segre_class(&p, cfg)?.class),
        (None, Some(q)) => Ok(segre_class(&q, cfg)?.class.dual(0)),
        (Some(p), Some(q)) => {
            Ok(negative_thickening(&Factored::plain(p), &Factored::plain(q), None, cfg)?.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Rationals, Ring};
    use proptest::prelude::*;

    fn ring() -> Ring<Rationals> {
        Ring::grevlex(Rationals, &["x", "y", "z"]).unwrap()
    }

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap()).collect()).unwrap()
    }

    fn c(a: &[i64]) -> GradedClass {
        GradedClass::from_ints(2, a)
    }

    #[test]
    fn normalize_examples() {
        let r = ring();
        let i = ideal(&r, &["x", "y"]);
        let i2 = ideal(&r, &["x^2", "x*y", "x*z", "y"]);
        let j = ideal(&r, &["z"]);
        let u = fs_normalize(vec![(i.clone(), 2), (i2.clone(), -1)]).unwrap();
        assert_eq!(u.factors().len(), 1);
        assert_eq!(u.factors()[0].1, 1);
        let v = fs_normalize(vec![(i.clone(), 1), (j.clone(), -1)]).unwrap();
        assert_eq!(v.factors().len(), 2);
        assert!(fs_normalize(vec![(i.clone(), 1), (i2, -1)]).unwrap().is_identity());
    }

    #[test]
    fn lagrange_recovers_polynomials() {
        let pts: Vec<(i64, BigRational)> = (1..=4).map(|k| (k, rat(k * k * k - 2 * k + 5))).collect();
        let p = lagrange(&pts);
        assert_eq!(p, vec![rat(5), rat(-2), rat(0), rat(1)]);
        assert_eq!(eval_poly(&p, -1), rat(6));
    }

    #[test]
    fn nodal_cubic_family() {
        let r = ring();
        let x = ideal(&r, &["y^2*z - x^2*z - x^3"]);
        let j = ideal(&r, &["x", "y"]);
        let cfg = SegreConfig::default();
        let fam = segre_family(&x, &j, 2, &cfg).unwrap();
        assert!(fam.holdout_ok);
        for k in 1..=4i64 {
            assert_eq!(fam.samples[&k], c(&[0, 3, -9 + k * k]));
        }
        assert_eq!(fam.fitted[2], vec![rat(-9), rat(0), rat(1)]);
        assert_eq!(fam.evaluate(0).unwrap(), c(&[0, 3, -9]));
        assert_eq!(fam.evaluate(-1).unwrap(), c(&[0, 3, -8]));
        assert_eq!(fam.evaluate(3).unwrap(), fam.samples[&3]);
        // k = 1 equals the plain product ideal
        assert_eq!(fam.samples[&1], segre_class(&x.product(&j).unwrap(), &cfg).unwrap().class);
    }

    #[test]
    fn factored_samples_match_materialized() {
        let r = ring();
        let f = parse_poly("y^2*z - x^2*z - x^3", &r).unwrap();
        let j = ideal(&r, &["x", "y"]);
        let cfg = SegreConfig::default();
        let s1 = Factored::with_form(f.clone(), Ideal::unit(&r));
        let s2 = Factored::plain(j.clone());
        for k in 1..=3 {
            let fac = s1.times_power(&s2, k).unwrap();
            let lhs = fac.segre(None, &cfg).unwrap();
            let rhs = segre_class(&fac.materialize().unwrap(), &cfg).unwrap().class;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn disjoint_points_split() {
        // two points: s(S1 * S2^k) = [p1] + k^2 [p2] in P^2
        let r = ring();
        let p1 = ideal(&r, &["x", "y"]);
        let p2 = ideal(&r, &["y", "z"]);
        let fam = segre_family(&p1, &p2, 2, &SegreConfig::default()).unwrap();
        for k in 1..=4i64 {
            assert_eq!(fam.samples[&k], c(&[0, 0, 1 + k * k]));
        }
    }

    #[test]
    fn fscheme_segre_reductions() {
        let r = ring();
        let cfg = SegreConfig::default();
        let x = ideal(&r, &["y^2*z - x^2*z - x^3"]);
        let j = ideal(&r, &["x", "y"]);
        let only_x = fs_normalize(vec![(x.clone(), 1)]).unwrap();
        assert_eq!(fscheme_segre(&only_x, &cfg).unwrap(), c(&[0, 3, -9]));
        let anti = fs_normalize(vec![(j.clone(), -1)]).unwrap();
        assert_eq!(fscheme_segre(&anti, &cfg).unwrap(), c(&[0, 0, 1]));
        let u = fs_normalize(vec![(x, 1), (j, -1)]).unwrap();
        assert_eq!(fscheme_segre(&u, &cfg).unwrap(), c(&[0, 3, -8]));
    }

    #[test]
    fn holdout_detects_non_polynomial_samples() {
        let samples: BTreeMap<i64, GradedClass> = (1..=4).map(|k| (k, c(&[0, 0, 1 << k]))).collect();
        let fam = SegreFamily::fit(2, samples).unwrap();
        assert!(!fam.holdout_ok);
        assert!(matches!(fam.evaluate(-1), Err(Error::HoldoutMismatch(_))));
    }

    fn pick(r: &Ring<Rationals>, idx: usize) -> Ideal<Rationals> {
        let pool: [&[&str]; 4] = [&["x", "y"], &["x^2", "x*y", "x*z", "y"], &["z"], &["x", "z"]];
        ideal(r, pool[idx])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn normalize_is_order_independent_and_idempotent(
            raw in prop::collection::vec((0usize..4, -3i64..4), 0..5),
            rot in 0usize..5,
        ) {
            let r = ring();
            let facs: Vec<(Ideal<Rationals>, i64)> = raw.iter().map(|&(i, e)| (pick(&r, i), e)).collect();
            let a = fs_normalize(facs.clone()).unwrap();
            let mut shuffled = facs.clone();
            if !shuffled.is_empty() {
                let len = shuffled.len();
                shuffled.rotate_left(rot % len);
            }
            let b = fs_normalize(shuffled).unwrap();
            let again = fs_normalize(a.factors().to_vec()).unwrap();
            let key = |u: &FScheme<Rationals>| {
                let mut v: Vec<(String, i64)> = u.factors().iter()
                    .map(|(i, e)| (format!("{:?}", i.saturate_irrelevant().unwrap().groebner_basis().unwrap()), *e))
                    .collect();
                v.sort();
                v
            };
            prop_assert_eq!(key(&a), key(&b));
            prop_assert_eq!(key(&a), key(&again));
            // identity and associativity of the group law
            let id = FScheme::identity();
            prop_assert_eq!(key(&a.mul(&id).unwrap()), key(&a));
            prop_assert_eq!(key(&a.mul(&b).unwrap()), key(&b.mul(&a).unwrap()));
            prop_assert_eq!(key(&a.mul(&b).unwrap().mul(&again).unwrap()), key(&a.mul(&b.mul(&again).unwrap()).unwrap()));
        }
    }
}
