//! Singular schemes, Chern-Fulton, CSM and Milnor classes of complete
//! intersections in P^n, with two independent CSM oracles and the
//! verification checks built on them.
//!
//! Every pipeline reduces its input modulo the configured prime first; all
//! Groebner work happens over GF(p).

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chow::{ambient_tangent_chern, GradedClass, SplitBundle};
use crate::error::{Error, Result};
use crate::fscheme::{negative_thickening, Factored, SegreFamily};
use crate::groebner::Ideal;
use crate::poly::{combinations, jacobian_matrix, minors, Field, Monomial, Poly, PrimeField, Ring};
use crate::segre::{modular_poly, modular_ring, segre_class, SegreConfig};

/// `X = X_1 ∩ ... ∩ X_m`, stored with the distinguished hypersurface last.
#[derive(Clone, Debug)]
pub struct CompleteIntersection<F: Field> {
    ring: Ring<F>,
    hypersurfaces: Vec<Poly<F>>,
    pub almost_smooth_claimed: bool,
    pub name: Option<String>,
}

impl<F: Field> CompleteIntersection<F> {
    /// The last hypersurface is the distinguished one.
    pub fn new(ring: &Ring<F>, hypersurfaces: Vec<Poly<F>>) -> Result<Self> {
        let n = ring.nvars().saturating_sub(1);
        if hypersurfaces.is_empty() || hypersurfaces.len() > n {
            return Err(Error::InvalidCompleteIntersection(format!(
                "need between 1 and {n} hypersurfaces, got {}",
                hypersurfaces.len()
            )));
        }
        for f in &hypersurfaces {
            if f.ring() != ring {
                return Err(Error::RingMismatch);
            }
            match f.homogeneity().degree() {
                Some(d) if d > 0 && f.is_homogeneous() => {}
                _ => {
                    return Err(Error::InvalidCompleteIntersection(format!(
                        "{f} is not a form of positive degree"
                    )))
                }
            }
        }
        Ok(CompleteIntersection {
            ring: ring.clone(),
            hypersurfaces,
            almost_smooth_claimed: false,
            name: None,
        })
    }

    /// Move hypersurface `index` to the distinguished (last) position.
    pub fn with_distinguished(mut self, index: usize) -> Self {
        let f = self.hypersurfaces.remove(index);
        self.hypersurfaces.push(f);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn hypersurfaces(&self) -> &[Poly<F>] {
        &self.hypersurfaces
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn codim(&self) -> usize {
        self.hypersurfaces.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.hypersurfaces.iter().map(|f| f.total_degree().unwrap() as i64).collect()
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(&self.ring, self.hypersurfaces.clone()).expect("same ring")
    }

    /// `Z = X_1 ∩ ... ∩ X_{m-1}`; `None` when `m = 1`.
    pub fn z(&self) -> Option<CompleteIntersection<F>> {
        let m = self.codim();
        if m == 1 {
            return None;
        }
        Some(CompleteIntersection {
            ring: self.ring.clone(),
            hypersurfaces: self.hypersurfaces[..m - 1].to_vec(),
            almost_smooth_claimed: false,
            name: None,
        })
    }

    pub fn modular(&self, prime: u32) -> Result<CompleteIntersection<PrimeField>> {
        let ring = modular_ring(&self.ring, prime)?;
        let hyps = self
            .hypersurfaces
            .iter()
            .map(|f| modular_poly(f, &ring))
            .collect::<Result<Vec<_>>>()?;
        let mut out = CompleteIntersection::new(&ring, hyps)?;
        out.almost_smooth_claimed = self.almost_smooth_claimed;
        out.name = self.name.clone();
        Ok(out)
    }

    /// The zero set has codimension exactly `m`.
    pub fn check_codimension(&self) -> Result<()> {
        let (dim, _) = self.ideal().dim_and_degree()?;
        let expect = self.ambient_dim() as i64 - self.codim() as i64;
        if dim != expect {
            return Err(Error::InvalidCompleteIntersection(format!(
                "zero set has dimension {dim}, expected {expect}"
            )));
        }
        Ok(())
    }
}

/// `I_X` plus the `m x m` minors of the Jacobian, saturated by the
/// irrelevant ideal.
pub fn singular_scheme<F: Field>(ci: &CompleteIntersection<F>) -> Result<Ideal<F>> {
    let jac = jacobian_matrix(ci.hypersurfaces());
    let mut gens = ci.hypersurfaces().to_vec();
    gens.extend(minors(&jac, ci.codim())?.into_iter().filter(|g| !g.is_zero()));
    Ideal::new(ci.ring(), gens)?.saturate_irrelevant()
}

/// `c(TM) ∩ s(V, M)`.
pub fn chern_fulton<F: Field>(ideal: &Ideal<F>, cfg: &SegreConfig) -> Result<GradedClass> {
    let s = segre_class(ideal, cfg)?.class;
    Ok(&ambient_tangent_chern(s.ambient_dim()) * &s)
}

/// Whether `Z = X_1 ∩ ... ∩ X_{m-1}` is smooth.
pub fn is_almost_smooth<F: Field>(ci: &CompleteIntersection<F>, prime: u32) -> Result<bool> {
    match ci.modular(prime)?.z() {
        None => Ok(true),
        Some(z) => singular_scheme(&z)?.is_unit(),
    }
}

/// Which ideal the thickenings `X ∪ J^k` use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thickening {
    /// `I_Z + I_X * I_J^k`: the thickening taken inside `Z`.
    InZ,
    /// `I_X * I_J^k` taken literally in the ambient space.
    AmbientProduct,
}

#[derive(Clone, Debug)]
pub struct BlowupResult {
    pub csm: GradedClass,
    pub family: SegreFamily,
}

fn blowup_modular(
    ci: &CompleteIntersection<PrimeField>,
    j: &Ideal<PrimeField>,
    mode: Thickening,
    cfg: &SegreConfig,
) -> Result<BlowupResult> {
    let n = ci.ambient_dim();
    let tm = ambient_tangent_chern(n);
    let (s1, ambient) = if ci.codim() == 1 {
        let f = ci.hypersurfaces()[0].clone();
        (Factored::with_form(f, Ideal::unit(ci.ring())), None)
    } else {
        let z = match mode {
            Thickening::InZ => ci.z().map(|z| z.ideal()),
            Thickening::AmbientProduct => None,
        };
        (Factored::plain(ci.ideal()), z)
    };
    let (s, family) = negative_thickening(&s1, &Factored::plain(j.clone()), ambient.as_ref(), cfg)?;
    Ok(BlowupResult {
        csm: &tm * &s,
        family,
    })
}

/// `c(TM) ∩ s(X · J_X^{-1})`, with the Segre class of the f-scheme obtained
/// from the family `s(X ∪ J^k)` at `k = -1`. For smooth inputs `J` is the
/// unit ideal and the family is constant.
pub fn csm_blowup<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<BlowupResult> {
    csm_blowup_with(ci, Thickening::InZ, cfg)
}

pub fn csm_blowup_with<F: Field>(
    ci: &CompleteIntersection<F>,
    mode: Thickening,
    cfg: &SegreConfig,
) -> Result<BlowupResult> {
    let ci = ci.modular(cfg.prime)?;
    let j = singular_scheme(&ci)?;
    blowup_modular(&ci, &j, mode, cfg)
}

fn fmc_modular(ci: &CompleteIntersection<PrimeField>, cfg: &SegreConfig) -> Result<GradedClass> {
    let n = ci.ambient_dim();
    let tm = ambient_tangent_chern(n);
    let fulton = chern_fulton(&ci.ideal(), cfg)?;
    let j = singular_scheme(ci)?;
    if j.is_unit()? {
        return Ok(fulton);
    }
    let degs = ci.degrees();
    let dm = *degs.last().unwrap();
    let e = SplitBundle::new(degs.clone());
    let sj = segre_class(&j, cfg)?.class;
    let bundle = &e.chern_with(n, true, dm) * &e.inverse_chern(n);
    let twisted = sj.dual(0).tensor_line(dm, 0)?;
    let mut correction = &bundle * &twisted;
    if ci.codim().is_multiple_of(2) {
        correction = -&correction;
    }
    Ok(&fulton + &(&tm * &correction))
}

/// `c_F(X) + c(TM) ∩ ((-1)^{m-1} c(E^∨ ⊗ O(d_m)) / c(E) ∩ (s(J)^∨ ⊗ O(d_m)))`
/// with `E = O(d_1) ⊕ ... ⊕ O(d_m)`. Valid for almost smooth inputs; for
/// `m = 1` this is the hypersurface formula, valid for every hypersurface.
pub fn csm_fmc_oracle<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<GradedClass> {
    fmc_modular(&ci.modular(cfg.prime)?, cfg)
}

/// Inclusion-exclusion over products of the defining equations, each
/// product a hypersurface handled by the hypersurface formula.
pub fn csm_incl_excl<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<GradedClass> {
    let m = ci.codim();
    if m > 4 {
        return Err(Error::CombinatorialLimit(m));
    }
    let ci = ci.modular(cfg.prime)?;
    let mut total = GradedClass::zero(ci.ambient_dim());
    for size in 1..=m {
        for subset in combinations(m, size) {
            let product = subset
                .iter()
                .map(|&i| ci.hypersurfaces()[i].clone())
                .reduce(|a, b| &a * &b)
                .unwrap();
            let hyper = CompleteIntersection::new(ci.ring(), vec![product])?;
            let c = fmc_modular(&hyper, cfg)?;
            total = if size % 2 == 1 { &total + &c } else { &total - &c };
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub csm: GradedClass,
    pub fulton: GradedClass,
    pub milnor: GradedClass,
    pub euler: BigRational,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub method: String,
    pub prime: u32,
    pub seed: u64,
    pub trials: usize,
}

impl Provenance {
    pub fn new(method: &str, cfg: &SegreConfig) -> Self {
        Provenance {
            method: method.to_string(),
            prime: cfg.prime,
            seed: cfg.seed,
            trials: cfg.trials,
        }
    }
}

/// CSM, Chern-Fulton and Milnor classes with the Euler characteristic.
pub fn class_report<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<ClassReport> {
    let m = ci.modular(cfg.prime)?;
    let j = singular_scheme(&m)?;
    let csm = blowup_modular(&m, &j, Thickening::InZ, cfg)?.csm;
    let fulton = chern_fulton(&m.ideal(), cfg)?;
    let milnor = &csm - &fulton;
    Ok(ClassReport {
        euler: csm.integral(),
        csm,
        fulton,
        milnor,
        provenance: Provenance::new("blowup-interpolation", cfg),
    })
}

pub fn milnor_class<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<GradedClass> {
    Ok(class_report(ci, cfg)?.milnor)
}

pub fn euler<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<BigRational> {
    Ok(csm_blowup(ci, cfg)?.csm.integral())
}

/// Sum of the Milnor numbers of the singular points of a hypersurface with
/// isolated singularities, from local Jacobian algebras in a random affine
/// chart: with `Q` the ideal of the affine partials, the part of `Q` on the
/// hypersurface has length `dim R/Q - dim R/(Q : f^inf)`.
pub fn total_milnor_number<F: Field>(f: &Poly<F>, cfg: &SegreConfig) -> Result<u64> {
    let ring = modular_ring(f.ring(), cfg.prime)?;
    let f = modular_poly(f, &ring)?;
    let n = ring.nvars() - 1;
    let p = cfg.prime;
    let names: Vec<String> = (1..=n).map(|k| format!("u{k}")).collect();
    let chart = Ring::grevlex(*ring.field(), &names)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // x = p_0 + sum u_k p_k
    let pts: Vec<Vec<u32>> = (0..=n)
        .map(|_| (0..=n).map(|_| rng.random_range(0..p)).collect())
        .collect();
    let images: Vec<Poly<PrimeField>> = (0..=n)
        .map(|v| {
            let mut terms = vec![(Monomial::one(n), pts[0][v])];
            for k in 1..=n {
                terms.push((Monomial::variable(n, k - 1), pts[k][v]));
            }
            Poly::from_terms(&chart, terms)
        })
        .collect();
    let g = f.substitute(&chart, &images)?;
    let partials: Vec<Poly<PrimeField>> = (0..n).map(|k| g.derivative(k)).collect();
    let q = Ideal::new(&chart, partials)?;
    let total = q.quotient_dimension()?;
    let off = q.saturate_by(&g)?.quotient_dimension()?;
    Ok((total - off) as u64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub left: GradedClass,
    pub right: GradedClass,
    pub diff: GradedClass,
}

impl Comparison {
    pub fn new(left: GradedClass, right: GradedClass) -> Self {
        let diff = &left - &right;
        Comparison { left, right, diff }
    }

    pub fn agrees(&self) -> bool {
        self.diff.is_zero()
    }
}

/// Blowup formula against the oracle for an almost smooth input.
pub fn verify_theorem<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<Comparison> {
    if !is_almost_smooth(ci, cfg.prime)? {
        return Err(Error::InvalidCompleteIntersection(
            "the first m-1 hypersurfaces do not cut out a smooth variety".into(),
        ));
    }
    let blowup = csm_blowup(ci, cfg)?.csm;
    let oracle = csm_fmc_oracle(ci, cfg)?;
    Ok(Comparison::new(blowup, oracle))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub k: u32,
    pub comparison: Comparison,
}

/// For each `k`: `s(X ∪ J^k, Z)` computed from the ideal `I_Z + I_X I_J^k`
/// against `s(X,Z) + c(O(X_m))^{-1} ∩ (s(J,Z)^{(k)} ⊗_Z O(X_m))`, all classes
/// in `Z` obtained as `c(N_Z M) ∩ s(·, M)`.
pub fn verify_lemma<F: Field>(ci: &CompleteIntersection<F>, ks: &[u32], cfg: &SegreConfig) -> Result<Vec<LemmaCheck>> {
    if !is_almost_smooth(ci, cfg.prime)? {
        return Err(Error::InvalidCompleteIntersection(
            "the first m-1 hypersurfaces do not cut out a smooth variety".into(),
        ));
    }
    let ci = ci.modular(cfg.prime)?;
    let n = ci.ambient_dim();
    let m = ci.codim();
    let degs = ci.degrees();
    let dm = degs[m - 1];
    let normal = SplitBundle::new(degs[..m - 1].to_vec());
    let cn = normal.chern(n);
    let x = ci.ideal();
    let j = singular_scheme(&ci)?;
    let z = ci.z().map(|z| z.ideal());
    let sx_z = &cn * &segre_class(&x, cfg)?.class;
    let sj_z = &cn * &segre_class(&j, cfg)?.class;
    let mut out = Vec::new();
    for &k in ks {
        let thick = x.product(&j.power(k)?)?;
        let thick = match &z {
            Some(z) => z.sum(&thick)?,
            None => thick,
        };
        let lhs = &cn * &segre_class(&thick, cfg)?.class;
        let adams = sj_z.adams(k as i64, m - 1)?.tensor_line(dm, m - 1)?;
        let rhs = &sx_z + &(&SplitBundle::line(dm).inverse_chern(n) * &adams);
        out.push(LemmaCheck {
            k,
            comparison: Comparison::new(lhs, rhs),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemarkCheck {
    pub k: u32,
    /// Whether the singular scheme of `F^k` equals `(F^{k-1}) * J_F`.
    pub singular_scheme_factors: bool,
    pub comparison: Comparison,
}

/// `c_SM(F^k = 0)` against `c_SM(F = 0)`. The singular scheme of `F^k` is
/// computed and checked to equal `(F^{k-1}) * J_F` as schemes; the family
/// then keeps the form `F^{k-1}` factored out.
pub fn verify_remark<F: Field>(f: &Poly<F>, k: u32, cfg: &SegreConfig) -> Result<RemarkCheck> {
    if k < 2 {
        return Err(Error::InvalidCompleteIntersection("remark needs k >= 2".into()));
    }
    let ring = modular_ring(f.ring(), cfg.prime)?;
    let f = modular_poly(f, &ring)?;
    let x = CompleteIntersection::new(&ring, vec![f.clone()])?;
    let jf = singular_scheme(&x)?;
    let n = ring.nvars() - 1;
    if jf.dim_and_degree()?.0 >= n as i64 - 1 {
        return Err(Error::InvalidCompleteIntersection(format!(
            "{f} is not reduced: it is singular along a component"
        )));
    }
    let fk = f.pow(k);
    let xk = CompleteIntersection::new(&ring, vec![fk.clone()])?;
    let jfk = singular_scheme(&xk)?;
    let expected = Ideal::new(&ring, vec![f.pow(k - 1)])?.product(&jf)?;
    let factors = jfk.equal_as_schemes(&expected)?;
    if !factors {
        return Err(Error::VerificationFailed(format!(
            "singular scheme of the {k}-th power does not factor"
        )));
    }
    let tm = ambient_tangent_chern(n);
    let s1 = Factored::with_form(fk, Ideal::unit(&ring));
    let s2 = Factored::with_form(f.pow(k - 1), jf.clone());
    let csm_k = &tm * &negative_thickening(&s1, &s2, None, cfg)?.0;
    let csm_1 = blowup_modular(&x, &jf, Thickening::InZ, cfg)?.csm;
    Ok(RemarkCheck {
        k,
        singular_scheme_factors: factors,
        comparison: Comparison::new(csm_k, csm_1),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub almost_smooth: bool,
    /// Blowup formula with thickenings inside `Z`.
    pub blowup: GradedClass,
    /// Blowup formula with the literal ambient product ideals.
    pub blowup_ambient_product: GradedClass,
    /// Inclusion-exclusion oracle.
    pub oracle: GradedClass,
}

impl ConjectureReport {
    pub fn agrees(&self) -> bool {
        self.blowup == self.oracle
    }

    pub fn ambient_product_agrees(&self) -> bool {
        self.blowup_ambient_product == self.oracle
    }
}

/// Runs both blowup readings and the inclusion-exclusion oracle on any
/// complete intersection and reports, without asserting, whether they agree.
pub fn verify_conjecture<F: Field>(ci: &CompleteIntersection<F>, cfg: &SegreConfig) -> Result<ConjectureReport> {
    let m = ci.modular(cfg.prime)?;
    let j = singular_scheme(&m)?;
    let blowup = blowup_modular(&m, &j, Thickening::InZ, cfg)?.csm;
    let blowup_ambient_product = if m.codim() == 1 {
        blowup.clone()
    } else {
        blowup_modular(&m, &j, Thickening::AmbientProduct, cfg)?.csm
    };
    Ok(ConjectureReport {
        almost_smooth: is_almost_smooth(&m, cfg.prime)?,
        blowup,
        blowup_ambient_product,
        oracle: csm_incl_excl(&m, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Rationals};

    fn ci(vars: &[&str], eqs: &[&str]) -> CompleteIntersection<Rationals> {
        let r = Ring::grevlex(Rationals, vars).unwrap();
        CompleteIntersection::new(&r, eqs.iter().map(|e| parse_poly(e, &r).unwrap()).collect()).unwrap()
    }

    fn p2(eqs: &[&str]) -> CompleteIntersection<Rationals> {
        ci(&["x", "y", "z"], eqs)
    }

    fn p3(eqs: &[&str]) -> CompleteIntersection<Rationals> {
        ci(&["x", "y", "z", "w"], eqs)
    }

    fn c(n: usize, a: &[i64]) -> GradedClass {
        GradedClass::from_ints(n, a)
    }

    const NODAL: &str = "y^2*z - x^2*z - x^3";
    const CUSP: &str = "y^2*z - x^3";

    #[test]
    fn singular_scheme_examples() {
        let nodal = p2(&[NODAL]);
        let r = nodal.ring().clone();
        let pt = Ideal::new(&r, vec![parse_poly("x", &r).unwrap(), parse_poly("y", &r).unwrap()]).unwrap();
        assert!(singular_scheme(&nodal).unwrap().equal_as_schemes(&pt).unwrap());
        let cusp = singular_scheme(&p2(&[CUSP])).unwrap();
        let fat = Ideal::new(&r, vec![parse_poly("x^2", &r).unwrap(), parse_poly("y", &r).unwrap()]).unwrap();
        assert!(cusp.equal_as_schemes(&fat).unwrap());
        assert!(singular_scheme(&p2(&["x^2 + y^2 + z^2"])).unwrap().is_unit().unwrap());
    }

    #[test]
    fn chern_fulton_examples() {
        let cfg = SegreConfig::default();
        assert_eq!(chern_fulton(&p2(&[NODAL]).ideal(), &cfg).unwrap(), c(2, &[0, 3, 0]));
        assert_eq!(chern_fulton(&p2(&["x^2 + y^2 + z^2"]).ideal(), &cfg).unwrap(), c(2, &[0, 2, 2]));
        assert_eq!(chern_fulton(&p3(&["x*y - z*w"]).ideal(), &cfg).unwrap(), c(3, &[0, 2, 4, 4]));
    }

    #[test]
    fn plane_cubics() {
        let cfg = SegreConfig::default();
        let nodal = class_report(&p2(&[NODAL]), &cfg).unwrap();
        assert_eq!(nodal.csm, c(2, &[0, 3, 1]));
        assert_eq!(nodal.milnor, c(2, &[0, 0, 1]));
        let cusp = csm_blowup(&p2(&[CUSP]), &cfg).unwrap().csm;
        assert_eq!(cusp, c(2, &[0, 3, 2]));
        assert_eq!(csm_fmc_oracle(&p2(&[CUSP]), &cfg).unwrap(), cusp);
    }

    #[test]
    fn oracles_agree_on_hypersurface() {
        let cfg = SegreConfig::default();
        let cone = p3(&["x*y - z^2"]);
        assert_eq!(csm_fmc_oracle(&cone, &cfg).unwrap(), c(3, &[0, 2, 4, 3]));
        assert_eq!(csm_incl_excl(&cone, &cfg).unwrap(), c(3, &[0, 2, 4, 3]));
    }

    #[test]
    fn crossing_lines_oracles() {
        let cfg = SegreConfig::default();
        let lines = p3(&["x*y - z*w", "z"]);
        assert!(is_almost_smooth(&lines, cfg.prime).unwrap());
        assert_eq!(csm_fmc_oracle(&lines, &cfg).unwrap(), c(3, &[0, 0, 2, 3]));
        assert_eq!(csm_incl_excl(&lines, &cfg).unwrap(), c(3, &[0, 0, 2, 3]));
    }

    #[test]
    fn milnor_numbers() {
        let cfg = SegreConfig::default();
        let r = Ring::grevlex(Rationals, &["x", "y", "z"]).unwrap();
        assert_eq!(total_milnor_number(&parse_poly(NODAL, &r).unwrap(), &cfg).unwrap(), 1);
        assert_eq!(total_milnor_number(&parse_poly(CUSP, &r).unwrap(), &cfg).unwrap(), 2);
        assert_eq!(total_milnor_number(&parse_poly("x^2 + y^2 + z^2", &r).unwrap(), &cfg).unwrap(), 0);
        // three nodes
        assert_eq!(total_milnor_number(&parse_poly("x*y*z", &r).unwrap(), &cfg).unwrap(), 3);
    }

    #[test]
    fn milnor_integral_sign_follows_dimension() {
        // surfaces: the integral is -mu
        let cfg = SegreConfig::default();
        let cone = p3(&["x*y - z^2"]);
        let r = class_report(&cone, &cfg).unwrap();
        assert_eq!(r.milnor, c(3, &[0, 0, 0, -1]));
        let mu = total_milnor_number(&cone.hypersurfaces()[0], &cfg).unwrap();
        assert_eq!(mu, 1);
        assert_eq!(r.milnor.integral(), BigRational::from_integer((-(mu as i64)).into()));
    }

    #[test]
    fn lemma_on_nodal_cubic() {
        let cfg = SegreConfig::default();
        let checks = verify_lemma(&p2(&[NODAL]), &[1, 2, 3], &cfg).unwrap();
        for ch in &checks {
            assert!(ch.comparison.agrees(), "{ch:?}");
            let k = ch.k as i64;
            assert_eq!(ch.comparison.left, c(2, &[0, 3, -9 + k * k]));
        }
    }

    #[test]
    fn remark_on_nodal_cubic() {
        let cfg = SegreConfig::default();
        let r = Ring::grevlex(Rationals, &["x", "y", "z"]).unwrap();
        let ch = verify_remark(&parse_poly(NODAL, &r).unwrap(), 2, &cfg).unwrap();
        assert!(ch.singular_scheme_factors);
        assert!(ch.comparison.agrees(), "{ch:?}");
        assert_eq!(ch.comparison.left, c(2, &[0, 3, 1]));
        let conic = verify_remark(&parse_poly("x^2 + y^2 + z^2", &r).unwrap(), 2, &cfg).unwrap();
        assert_eq!(conic.comparison.left, c(2, &[0, 2, 2]));
        assert!(conic.comparison.agrees());
        assert!(verify_remark(&parse_poly("x^2", &r).unwrap(), 2, &cfg).is_err());
    }

    #[test]
    fn invalid_inputs() {
        let r = Ring::grevlex(Rationals, &["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        assert!(CompleteIntersection::new(&r, vec![p("x + 1")]).is_err());
        assert!(CompleteIntersection::new(&r, vec![p("x"), p("y"), p("z")]).is_err());
        let not_ci = CompleteIntersection::new(&r, vec![p("x*y"), p("x*z")]).unwrap();
        assert!(not_ci.check_codimension().is_err());
        assert!(CompleteIntersection::new(&r, vec![p("x"), p("y")]).unwrap().check_codimension().is_ok());
    }
}
