use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::buchberger::{groebner_basis, reduce, StepCounter, DEFAULT_STEP_BUDGET};
use super::hilbert::{dimension_and_multiplicity, standard_monomials};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Field, Monomial, Poly, Ring, TermOrder};

type BasisCache<F> = Arc<Mutex<HashMap<TermOrder, Arc<Vec<Poly<F>>>>>>;

/// A finitely generated ideal with a lazily filled cache of reduced Groebner
/// bases, one per term order. Clones share the cache.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Poly<F>>,
    name: Option<String>,
    homogeneous: bool,
    budget: u64,
    cache: BasisCache<F>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: Vec<Poly<F>>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let gens: Vec<Poly<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            name: None,
            homogeneous,
            budget: DEFAULT_STEP_BUDGET,
            cache: Default::default(),
        })
    }

    /// An ideal that must define a subscheme of projective space.
    pub fn homogeneous(ring: &Ring<F>, gens: Vec<Poly<F>>) -> Result<Self> {
        let ideal = Self::new(ring, gens)?;
        if !ideal.homogeneous {
            return Err(Error::NotHomogeneous(ideal.to_string()));
        }
        Ok(ideal)
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::new(ring, vec![Poly::one(ring)]).expect("same ring")
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Self::new(ring, Vec::new()).expect("same ring")
    }

    /// The ideal of all variables.
    pub fn irrelevant(ring: &Ring<F>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        Self::new(ring, gens).expect("same ring")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn derived(&self, gens: Vec<Poly<F>>) -> Self {
        let mut out = Self::new(&self.ring, gens).expect("same ring");
        out.budget = self.budget;
        out
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn counter(&self) -> StepCounter {
        StepCounter::new(self.budget)
    }

    /// Reduced Groebner basis in the ring's own order.
    pub fn groebner_basis(&self) -> Result<Arc<Vec<Poly<F>>>> {
        self.groebner_basis_in(self.ring.order())
    }

    /// Reduced Groebner basis for `order`, as polynomials in the ring with
    /// that order.
    pub fn groebner_basis_in(&self, order: &TermOrder) -> Result<Arc<Vec<Poly<F>>>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(Arc::clone(b));
        }
        let gens: Vec<Poly<F>> = if order == self.ring.order() {
            self.gens.clone()
        } else {
            let target = self.ring.with_order(order.clone())?;
            self.gens.iter().map(|g| g.reorder(&target)).collect()
        };
        let basis = Arc::new(groebner_basis(&gens, &mut self.counter())?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(Arc::clone(cache.entry(order.clone()).or_insert(basis)))
    }

    /// Check that every generator reduces to zero against the cached basis.
    pub fn verify_cache(&self) -> Result<bool> {
        let basis = self.groebner_basis()?;
        let mut counter = self.counter();
        for g in &self.gens {
            if !reduce(g, &basis, &mut counter)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Result<Poly<F>> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let basis = self.groebner_basis()?;
        reduce(p, &basis, &mut self.counter())
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let basis = self.groebner_basis()?;
        Ok(basis.len() == 1 && basis[0].is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.try_mul(b)?);
            }
        }
        Ok(self.derived(gens))
    }

    /// `self^k` by repeated products, interreducing after every step.
    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ring);
        acc.budget = self.budget;
        for _ in 0..k {
            acc = acc.product(self)?.interreduced()?;
        }
        Ok(acc)
    }

    /// Drop redundant generators. Homogeneous ideals get a minimal generating
    /// set, decided degree by degree with linear algebra; otherwise only
    /// duplicates and scalar multiples are removed.
    pub fn interreduced(&self) -> Result<Self> {
        if !self.homogeneous {
            let mut seen: Vec<Poly<F>> = Vec::new();
            for g in &self.gens {
                let m = g.monic();
                if !seen.contains(&m) {
                    seen.push(m);
                }
            }
            return Ok(self.derived(seen));
        }
        Ok(self.derived(minimal_homogeneous_generators(&self.gens)))
    }

    /// Saturation `(self : other^inf)`, intersecting the saturations by each
    /// generator of `other`.
    pub fn saturate(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let gens: Vec<&Poly<F>> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Ok(Self::unit(&self.ring));
        }
        let mut acc: Option<Self> = None;
        for g in gens {
            let s = self.saturate_by(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Saturation by the ideal of all variables: the canonical ideal of the
    /// projective subscheme.
    pub fn saturate_irrelevant(&self) -> Result<Self> {
        self.saturate(&Self::irrelevant(&self.ring))
    }

    /// `(self : g^inf)`. Homogeneous ideals saturated by a variable use the
    /// reverse-lexicographic division trick; everything else goes through an
    /// auxiliary variable `t` with `1 - t*g` and elimination of `t`.
    pub fn saturate_by(&self, g: &Poly<F>) -> Result<Self> {
        if g.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Ok(Self::unit(&self.ring));
        }
        if g.is_constant() || self.gens.is_empty() {
            return Ok(self.clone());
        }
        if self.homogeneous {
            if let [(m, _)] = g.terms() {
                if m.degree() == 1 {
                    let v = m.exponents().iter().position(|&e| e == 1).unwrap();
                    return self.saturate_by_variable(v);
                }
            }
        }
        let n = self.ring.nvars();
        let t = self.ring.fresh_name("t");
        let ext = self.ring.with_eliminated_prefix(&[t.as_str()])?;
        let positions: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Poly<F>> = self.gens.iter().map(|f| f.embed(&ext, &positions)).collect();
        let tg = &Poly::var(&ext, 0) * &g.embed(&ext, &positions);
        gens.push(&Poly::one(&ext) - &tg);
        let basis = groebner_basis(&gens, &mut self.counter())?;
        Ok(self.derived(contract(&basis, &self.ring)))
    }

    fn saturate_by_variable(&self, v: usize) -> Result<Self> {
        let n = self.ring.nvars();
        // put variable v last
        let mut names: Vec<String> = Vec::with_capacity(n);
        let mut positions = vec![0usize; n];
        let mut k = 0;
        for i in (0..n).filter(|&i| i != v) {
            names.push(self.ring.variables()[i].clone());
            positions[i] = k;
            k += 1;
        }
        names.push(self.ring.variables()[v].clone());
        positions[v] = n - 1;
        let perm = Ring::new(self.ring.field().clone(), &names, TermOrder::Grevlex)?;
        let gens: Vec<Poly<F>> = self.gens.iter().map(|f| f.embed(&perm, &positions)).collect();
        let basis = groebner_basis(&gens, &mut self.counter())?;
        let mut inverse = vec![0usize; n];
        for (i, &p) in positions.iter().enumerate() {
            inverse[p] = i;
        }
        let out = basis
            .iter()
            .map(|b| {
                let e = b.variable_content(n - 1);
                b.divide_by_variable_power(n - 1, e).embed(&self.ring, &inverse)
            })
            .collect();
        Ok(self.derived(out))
    }

    /// Intersection via `t*A + (1-t)*B` and elimination of `t`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(self.derived(Vec::new()));
        }
        let n = self.ring.nvars();
        let t = self.ring.fresh_name("t");
        let ext = self.ring.with_eliminated_prefix(&[t.as_str()])?;
        let positions: Vec<usize> = (1..=n).collect();
        let tv = Poly::var(&ext, 0);
        let one_minus_t = &Poly::one(&ext) - &tv;
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(&tv * &a.embed(&ext, &positions));
        }
        for b in &other.gens {
            gens.push(&one_minus_t * &b.embed(&ext, &positions));
        }
        let basis = groebner_basis(&gens, &mut self.counter())?;
        Ok(self.derived(contract(&basis, &self.ring)))
    }

    /// Equality of the projective subschemes: identical reduced bases after
    /// saturating by the irrelevant ideal.
    pub fn equal_as_schemes(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        let a = self.saturate_irrelevant()?;
        let b = other.saturate_irrelevant()?;
        Ok(a.groebner_basis()? == b.groebner_basis()?)
    }

    /// Projective dimension (-1 for the empty scheme) and degree of `V(self)`
    /// from the Hilbert series of the quotient.
    pub fn dim_and_degree(&self) -> Result<(i64, u64)> {
        if !self.homogeneous {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        let basis = self.groebner_basis_in(&TermOrder::Grevlex)?;
        let leads: Vec<Monomial> = basis.iter().map(|b| b.lead_monomial().unwrap().clone()).collect();
        let (krull, mult) = dimension_and_multiplicity(&leads, self.ring.nvars());
        if krull == 0 {
            return Ok((-1, 0));
        }
        Ok((krull as i64 - 1, mult as u64))
    }

    /// Vector-space dimension of the quotient ring; the ideal must have
    /// finitely many standard monomials.
    pub fn quotient_dimension(&self) -> Result<usize> {
        let basis = self.groebner_basis()?;
        let leads: Vec<Monomial> = basis.iter().map(|b| b.lead_monomial().unwrap().clone()).collect();
        Ok(standard_monomials(&leads, self.ring.nvars())?.len())
    }

    /// Spanning set of the degree-`d` piece: every generator times every
    /// monomial of the complementary degree. Generators of degree above `d`
    /// are an error.
    pub fn degree_piece_spanning_set(&self, d: u32) -> Result<Vec<Poly<F>>> {
        let one = self.ring.field().one();
        let mut out = Vec::new();
        for g in &self.gens {
            let gd = g
                .homogeneity()
                .degree()
                .ok_or_else(|| Error::NotHomogeneous(g.to_string()))?;
            if gd > d {
                return Err(Error::NotHomogeneous(format!(
                    "generator of degree {gd} above {d}"
                )));
            }
            for m in monomials_of_degree(self.ring.nvars(), d - gd) {
                out.push(g.mul_term(&m, &one));
            }
        }
        Ok(out)
    }

    /// Largest generator degree.
    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(|g| g.total_degree()).max()
    }
}

/// Keep basis elements free of the first (eliminated) variable, mapped back
/// to `target`.
fn contract<F: Field>(basis: &[Poly<F>], target: &Ring<F>) -> Vec<Poly<F>> {
    let n = target.nvars();
    basis
        .iter()
        .filter(|b| b.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|b| {
            let terms = b.terms().iter().map(|(m, c)| {
                (Monomial::from_exponents(&m.exponents()[1..=n]), c.clone())
            });
            Poly::from_terms(target, terms)
        })
        .collect()
}

/// Incremental row echelon form over monomials; rows are monic with distinct
/// leading monomials.
pub(crate) struct Echelon<F: Field> {
    rows: HashMap<Monomial, Poly<F>>,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new() -> Self {
        Echelon {
            rows: HashMap::new(),
        }
    }

    /// Reduce `v` against the rows; returns the residual.
    pub(crate) fn reduce(&self, v: &Poly<F>) -> Poly<F> {
        let ring = v.ring();
        let field = ring.field();
        let order = ring.order();
        let mut acc: BTreeMap<std::cmp::Reverse<OrdMono>, F::Elem> = BTreeMap::new();
        for (m, c) in v.terms() {
            acc.insert(std::cmp::Reverse(OrdMono::new(order, m)), c.clone());
        }
        let mut out = Vec::new();
        while let Some((std::cmp::Reverse(key), c)) = acc.pop_first() {
            if field.is_zero(&c) {
                continue;
            }
            match self.rows.get(&key.mono) {
                None => out.push((key.mono, c)),
                Some(row) => {
                    for (m, d) in &row.terms()[1..] {
                        let delta = field.mul(&c, d);
                        let k = std::cmp::Reverse(OrdMono::new(order, m));
                        match acc.get_mut(&k) {
                            Some(x) => *x = field.sub(x, &delta),
                            None => {
                                acc.insert(k, field.neg(&delta));
                            }
                        }
                    }
                }
            }
        }
        Poly::from_sorted_terms(ring, out)
    }

    /// Insert `v`; returns false when it was already in the span.
    pub(crate) fn insert(&mut self, v: &Poly<F>) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let r = r.monic();
        match self.rows.entry(r.lead_monomial().unwrap().clone()) {
            Entry::Vacant(e) => {
                e.insert(r);
            }
            Entry::Occupied(_) => unreachable!("residual lead is not a pivot"),
        }
        true
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct OrdMono {
    key: smallvec::SmallVec<[i32; 12]>,
    mono: Monomial,
}

impl OrdMono {
    fn new(order: &TermOrder, m: &Monomial) -> Self {
        OrdMono {
            key: order.key(m),
            mono: m.clone(),
        }
    }
}

/// Minimal generating set of a homogeneous ideal: a generator of degree `d`
/// is kept only if it is not in the span of degree-`d` multiples of the
/// generators already kept.
pub fn minimal_homogeneous_generators<F: Field>(gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut by_degree: BTreeMap<u32, Vec<&Poly<F>>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        by_degree.entry(g.total_degree().unwrap()).or_default().push(g);
    }
    let mut kept: Vec<Poly<F>> = Vec::new();
    for (d, cands) in by_degree {
        let mut ech = Echelon::new();
        for k in &kept {
            let kd = k.total_degree().unwrap();
            let one = k.field().one();
            for m in monomials_of_degree(k.ring().nvars(), d - kd) {
                ech.insert(&k.mul_term(&m, &one));
            }
        }
        for c in cands {
            if ech.insert(c) {
                kept.push(c.clone());
            }
        }
    }
    kept
}
