//! Buchberger's algorithm with the Gebauer-Moeller pair criteria and the sugar
//! selection strategy.

use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::{Field, Monomial, Poly};

/// Default limit on single-term reduction steps per basis computation.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// Counts reduction steps against a fixed budget.
#[derive(Debug)]
pub struct StepCounter {
    budget: u64,
    used: u64,
}

impl StepCounter {
    pub fn new(budget: u64) -> Self {
        StepCounter { budget, used: 0 }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            Err(Error::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| if e > 0 { acc | (1 << (i % 64)) } else { acc })
}

struct Reducer<'a, F: Field> {
    poly: &'a Poly<F>,
    mask: u64,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct HeapEntry {
    key: SmallVec<[i32; 12]>,
    mono: Monomial,
}

/// Fully reduce `f` by `basis` (each element monic). Returns the remainder.
fn reduce_with<F: Field>(
    f: &Poly<F>,
    basis: &[Reducer<'_, F>],
    counter: &mut StepCounter,
) -> Result<Poly<F>> {
    let ring = f.ring();
    let field = ring.field();
    let order = ring.order();
    let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(f.len() * 2);
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::with_capacity(f.len() * 2);
    for (m, c) in f.terms() {
        acc.insert(m.clone(), c.clone());
        heap.push(HeapEntry {
            key: order.key(m),
            mono: m.clone(),
        });
    }
    let mut out: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some(HeapEntry { mono, .. }) = heap.pop() {
        let c = match acc.remove(&mono) {
            Some(c) if !field.is_zero(&c) => c,
            _ => continue,
        };
        let mmask = support_mask(&mono);
        let reducer = basis.iter().find(|r| {
            r.mask & !mmask == 0 && r.poly.lead_monomial().expect("nonzero").divides(&mono)
        });
        match reducer {
            None => out.push((mono, c)),
            Some(r) => {
                counter.tick()?;
                let g = r.poly;
                let q = g.lead_monomial().unwrap().quotient_of(&mono).unwrap();
                for (t, d) in &g.terms()[1..] {
                    let m = t.mul(&q);
                    let delta = field.mul(&c, d);
                    match acc.entry(m) {
                        Entry::Occupied(mut e) => {
                            let v = field.sub(e.get(), &delta);
                            *e.get_mut() = v;
                        }
                        Entry::Vacant(e) => {
                            heap.push(HeapEntry {
                                key: order.key(e.key()),
                                mono: e.key().clone(),
                            });
                            e.insert(field.neg(&delta));
                        }
                    }
                }
            }
        }
    }
    Ok(Poly::from_sorted_terms(ring, out))
}

/// Remainder of `f` on division by `basis` (need not be a Groebner basis).
pub fn reduce<F: Field>(f: &Poly<F>, basis: &[Poly<F>], counter: &mut StepCounter) -> Result<Poly<F>> {
    let monics: Vec<Poly<F>> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let reducers: Vec<Reducer<'_, F>> = monics
        .iter()
        .map(|g| Reducer {
            poly: g,
            mask: support_mask(g.lead_monomial().unwrap()),
        })
        .collect();
    reduce_with(f, &reducers, counter)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Element<F: Field> {
    poly: Poly<F>,
    sugar: u32,
    active: bool,
}

fn spoly<F: Field>(f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let one = f.field().one();
    let a = f.lead_monomial().unwrap().quotient_of(lcm).unwrap();
    let b = g.lead_monomial().unwrap().quotient_of(lcm).unwrap();
    // both monic, leading terms cancel
    let fa = f.mul_term(&a, &one);
    let gb = g.mul_term(&b, &one);
    &fa - &gb
}

/// Reduced Groebner basis in the ring's own order: monic, sorted by
/// increasing leading monomial. The unit ideal gives `[1]`, the zero ideal `[]`.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>], counter: &mut StepCounter) -> Result<Vec<Poly<F>>> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(Vec::new()),
    };
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let order = ring.order().clone();
    let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.is_empty() {
        return Ok(Vec::new());
    }
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Poly::one(&ring)]);
    }
    input.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    input.dedup();

    let mut elems: Vec<Element<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for f in input {
        let h = {
            let reducers = active_reducers(&elems);
            reduce_with(&f, &reducers, counter)?
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Poly::one(&ring)]);
        }
        let sugar = h.total_degree().unwrap();
        update(&mut elems, &mut pairs, h.monic(), sugar);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = spoly(&elems[pair.i].poly, &elems[pair.j].poly, &pair.lcm);
        let h = {
            let reducers = active_reducers(&elems);
            reduce_with(&s, &reducers, counter)?
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Poly::one(&ring)]);
        }
        update(&mut elems, &mut pairs, h.monic(), pair.sugar);
    }

    // minimal basis then interreduce
    let mut basis: Vec<Poly<F>> = elems.into_iter().filter(|e| e.active).map(|e| e.poly).collect();
    basis.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for g in basis {
        let lm = g.lead_monomial().unwrap();
        if !minimal.iter().any(|h| h.lead_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Reducer<'_, F>> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| Reducer {
                poly: g,
                mask: support_mask(g.lead_monomial().unwrap()),
            })
            .collect();
        let lead = Poly::from_sorted_terms(&ring, vec![minimal[k].terms()[0].clone()]);
        let tail = Poly::from_sorted_terms(&ring, minimal[k].terms()[1..].to_vec());
        let tail = reduce_with(&tail, &others, counter)?;
        reduced.push(&lead + &tail);
    }
    reduced.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    Ok(reduced)
}

fn active_reducers<F: Field>(elems: &[Element<F>]) -> Vec<Reducer<'_, F>> {
    elems
        .iter()
        .filter(|e| e.active)
        .map(|e| Reducer {
            poly: &e.poly,
            mask: support_mask(e.poly.lead_monomial().unwrap()),
        })
        .collect()
}

/// Gebauer-Moeller installation of a new basis element.
fn update<F: Field>(elems: &mut Vec<Element<F>>, pairs: &mut Vec<Pair>, h: Poly<F>, sugar: u32) {
    let hidx = elems.len();
    let hlm = h.lead_monomial().unwrap().clone();
    let hdeg = hlm.degree();

    // candidate new pairs (g, h)
    let mut cands: Vec<(usize, Monomial, bool)> = elems
        .iter()
        .enumerate()
        .filter(|(_, e)| e.active)
        .map(|(i, e)| {
            let glm = e.poly.lead_monomial().unwrap();
            (i, glm.lcm(&hlm), glm.is_coprime(&hlm))
        })
        .collect();

    // chain criterion among the new pairs: drop (g1,h) if some other (g2,h)
    // has lcm strictly dividing lcm(g1,h); among equal lcms keep one,
    // preferring a coprime one.
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cands[b].1.divides(&cands[a].1) {
                let equal = cands[a].1 == cands[b].1;
                if !equal || (cands[b].2 && !cands[a].2) || (cands[b].2 == cands[a].2 && b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
    }
    // product criterion
    let new_pairs: Vec<Pair> = cands
        .drain(..)
        .zip(keep)
        .filter(|((_, _, coprime), k)| *k && !coprime)
        .map(|((i, lcm, _), _)| {
            let g = &elems[i];
            let glm = g.poly.lead_monomial().unwrap();
            let s = (g.sugar + lcm.degree() - glm.degree()).max(sugar + lcm.degree() - hdeg);
            Pair {
                i,
                j: hidx,
                lcm,
                sugar: s,
            }
        })
        .collect();

    // chain criterion on old pairs
    pairs.retain(|p| {
        if !hlm.divides(&p.lcm) {
            return true;
        }
        let li = elems[p.i].poly.lead_monomial().unwrap().lcm(&hlm);
        let lj = elems[p.j].poly.lead_monomial().unwrap().lcm(&hlm);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for e in elems.iter_mut() {
        if e.active && hlm.divides(e.poly.lead_monomial().unwrap()) {
            e.active = false;
        }
    }
    elems.push(Element {
        poly: h,
        sugar,
        active: true,
    });
}

/// True when `basis` is a Groebner basis: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(basis: &[Poly<F>], counter: &mut StepCounter) -> Result<bool> {
    let monics: Vec<Poly<F>> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    for i in 0..monics.len() {
        for j in i + 1..monics.len() {
            let lcm = monics[i].lead_monomial().unwrap().lcm(monics[j].lead_monomial().unwrap());
            let s = spoly(&monics[i], &monics[j], &lcm);
            if !reduce(&s, &monics, counter)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ring-level convenience used by tests and callers that do not track budgets.
pub fn groebner_basis_default<F: Field>(gens: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    groebner_basis(gens, &mut StepCounter::new(DEFAULT_STEP_BUDGET))
}
