use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::field::{abs_is_one, fmt_rational, Field, PrimeField, Rationals};
use super::monomial::{Exponent, Monomial, TermOrder, MAX_EXPONENT};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Result of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial: homogeneous of every degree.
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Homogeneity::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }
}

/// A polynomial with terms kept sorted in descending ring order, no zero
/// coefficients.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> std::hash::Hash for Poly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring<F>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring<F>, index: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), index), ring.field().one())
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring<F>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = ring.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from terms already sorted in descending order with no duplicates
    /// and no zeros.
    pub(crate) fn from_sorted_terms(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    #[inline]
    pub fn field(&self) -> &F {
        self.ring.field()
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().is_homogeneous()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &F::Elem| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), take_b(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Poly::from_sorted_terms(&self.ring, out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.try_mul_term(m, c);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.try_mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = self.ring.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Poly::from_sorted_terms(&self.ring, terms))
    }

    /// Multiply by `c * m`.
    pub fn try_mul_term(&self, m: &Monomial, c: &F::Elem) -> Result<Self> {
        let field = self.field();
        if field.is_zero(c) {
            return Ok(Poly::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| Ok((tm.checked_mul(m)?, field.mul(tc, c))))
            .collect::<Result<Vec<_>>>()?;
        // monomial orders are multiplicative, so sortedness is preserved
        Ok(Poly::from_sorted_terms(&self.ring, terms))
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        self.try_mul_term(m, c).expect("exponent overflow")
    }

    pub fn try_pow(&self, e: u32) -> Result<Self> {
        if let Some(d) = self.total_degree() {
            if d as u64 * e as u64 > MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow {
                    limit: MAX_EXPONENT,
                });
            }
        }
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.try_pow(e).expect("exponent overflow")
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, tc)| (m.clone(), field.mul(tc, c)))
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).expect("nonzero")),
        }
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[index];
            if e == 0 {
                return None;
            }
            let mut dm = m.clone();
            dm.set_exponent(index, e - 1);
            Some((dm, field.mul(c, &field.from_i64(e as i64))))
        });
        // Differentiation by one variable can reorder terms under grevlex ties.
        Poly::from_terms(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let field = self.field();
        let mut powers: Vec<Vec<F::Elem>> = vec![vec![field.one()]; point.len()];
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = field.mul(pw.last().unwrap(), &point[i]);
                    pw.push(next);
                }
                t = field.mul(&t, &pw[e as usize]);
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Substitute `images[i]` (polynomials in `target`) for variable `i`,
    /// by nested Horner evaluation.
    pub fn substitute(&self, target: &Ring<F>, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidRing(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        if images.iter().any(|p| p.ring() != target) {
            return Err(Error::RingMismatch);
        }
        let terms: Vec<(&[Exponent], &F::Elem)> =
            self.terms.iter().map(|(m, c)| (m.exponents(), c)).collect();
        horner(target, &terms, 0, images)
    }

    /// Move into `target`, sending variable `i` to target variable `positions[i]`.
    pub fn embed(&self, target: &Ring<F>, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[positions[i]] = e;
            }
            (Monomial::from_exponents(&exps), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Reinterpret in a ring with the same variables but another order.
    pub fn reorder(&self, target: &Ring<F>) -> Self {
        assert_eq!(target.nvars(), self.ring.nvars());
        Poly::from_terms(target, self.terms.iter().cloned())
    }

    /// Largest `e` such that variable `index` to the power `e` divides every term.
    pub fn variable_content(&self, index: usize) -> Exponent {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents()[index])
            .min()
            .unwrap_or(0)
    }

    /// Divide by `var^e`; caller guarantees divisibility.
    pub fn divide_by_variable_power(&self, index: usize, e: Exponent) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut q = m.clone();
                q.set_exponent(index, m.exponents()[index] - e);
                (q, c.clone())
            })
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Homogeneous components indexed by degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Poly<F>)> {
        let mut by_deg: std::collections::BTreeMap<u32, Vec<(Monomial, F::Elem)>> =
            Default::default();
        for (m, c) in &self.terms {
            by_deg.entry(m.degree()).or_default().push((m.clone(), c.clone()));
        }
        by_deg
            .into_iter()
            .map(|(d, t)| (d, Poly::from_sorted_terms(&self.ring, t)))
            .collect()
    }

    /// Canonical text in degree-reverse-lexicographic descending order.
    pub fn to_canonical_string(&self) -> String {
        let field = self.field();
        let mut terms: Vec<&(Monomial, F::Elem)> = self.terms.iter().collect();
        terms.sort_by(|a, b| TermOrder::Grevlex.cmp(&b.0, &a.0));
        if terms.is_empty() {
            return "0".into();
        }
        let vars = self.ring.variables();
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let q = field.to_rational(c);
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = q.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs_is_one(&mag) || m.is_one() {
                factors.push(fmt_rational(&mag));
            }
            for (v, &e) in vars.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn horner<F: Field>(
    target: &Ring<F>,
    terms: &[(&[Exponent], &F::Elem)],
    var: usize,
    images: &[Poly<F>],
) -> Result<Poly<F>> {
    if terms.is_empty() {
        return Ok(Poly::zero(target));
    }
    if var == images.len() {
        let field = target.field();
        let c = terms.iter().fold(field.zero(), |acc, (_, c)| field.add(&acc, c));
        return Ok(Poly::constant(target, c));
    }
    // group by exponent of `var`, highest first
    let mut groups: std::collections::BTreeMap<Exponent, Vec<(&[Exponent], &F::Elem)>> =
        Default::default();
    for &(e, c) in terms {
        groups.entry(e[var]).or_default().push((e, c));
    }
    let mut acc = Poly::zero(target);
    let mut prev: Option<Exponent> = None;
    for (&e, group) in groups.iter().rev() {
        if let Some(p) = prev {
            acc = acc.try_mul(&images[var].try_pow((p - e) as u32)?)?;
        }
        acc = acc.try_add(&horner(target, group, var + 1, images)?)?;
        prev = Some(e);
    }
    if let Some(p) = prev {
        if p > 0 {
            acc = acc.try_mul(&images[var].try_pow(p as u32)?)?;
        }
    }
    Ok(acc)
}

impl Poly<Rationals> {
    /// Image in a prime field ring with the same variables; fails if a
    /// denominator vanishes mod p.
    pub fn reduce_mod(&self, target: &Ring<PrimeField>) -> Result<Poly<PrimeField>> {
        if target.variables() != self.ring.variables() {
            return Err(Error::RingMismatch);
        }
        let fp = target.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, q)| {
                let n = fp.from_bigint(q.numer());
                let d = fp.from_bigint(q.denom());
                let c = fp.div(&n, &d).ok_or_else(|| {
                    Error::InvalidField(format!("denominator {} vanishes mod {}", q.denom(), fp.modulus()))
                })?;
                Ok((m.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_terms(target, terms))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, q)| q.denom().is_one())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_canonical_string())
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        self.try_mul(rhs).expect("ring mismatch or exponent overflow")
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }
}
