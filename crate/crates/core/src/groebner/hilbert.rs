//! Hilbert series numerators of monomial ideals and standard-monomial counts.

use crate::error::{Error, Result};
use crate::poly::{Exponent, Monomial};

/// Integer polynomial in `t`, coefficients by ascending power.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn sub_shifted(a: &IntPoly, b: &IntPoly, shift: usize) -> IntPoly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        out[i + shift] -= c;
    }
    trim(out)
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n` of `k[x]/(gens)`,
/// by pivoting on variable powers.
pub fn hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // base case: pairwise coprime generators
    let nvars = gens[0].nvars();
    let mut seen = vec![0usize; nvars];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                seen[i] += 1;
            }
        }
    }
    if seen.iter().all(|&c| c <= 1) {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            mul(&acc, &f)
        });
    }
    // pivot: most frequent variable, exponent taken from a generator using it
    let var = (0..nvars).max_by_key(|&i| (seen[i], std::cmp::Reverse(i))).unwrap();
    // exponents from mixed generators only, so the pivot is not already in I
    let mut exps: Vec<Exponent> = gens
        .iter()
        .filter(|g| g.exponents()[var] > 0 && g.degree() > g.exponents()[var] as u32)
        .map(|g| g.exponents()[var])
        .collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = Monomial::one(nvars);
    pivot.set_exponent(var, e);

    // N(I) = N(I + (p)) + t^e N(I : p)
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut q = g.clone();
            q.set_exponent(var, g.exponents()[var].saturating_sub(e));
            q
        })
        .collect();
    let a = numerator(minimalize(with_pivot));
    let b = numerator(minimalize(quotient));
    let neg_b: IntPoly = b.iter().map(|c| -c).collect();
    sub_shifted(&a, &neg_b, e as usize)
}

/// Krull dimension and multiplicity of `k[x_1..x_n]/(gens)`.
pub fn dimension_and_multiplicity(gens: &[Monomial], nvars: usize) -> (usize, i64) {
    let mut num = hilbert_numerator(gens);
    if num == vec![0] {
        return (0, 0);
    }
    let mut dim = nvars;
    // divide by (1 - t) while N(1) == 0
    while dim > 0 && num.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; num.len() - 1];
        // synthetic division by (1 - t): N = (1 - t) Q  =>  Q_k = sum_{i<=k} N_i
        let mut run = 0;
        for (k, c) in num.iter().take(num.len() - 1).enumerate() {
            run += c;
            q[k] = run;
        }
        num = trim(q);
        dim -= 1;
    }
    (dim, num.iter().sum())
}

/// Monomials outside the ideal generated by `leads`, or an error when there
/// are infinitely many.
pub fn standard_monomials(leads: &[Monomial], nvars: usize) -> Result<Vec<Monomial>> {
    // zero-dimensional iff every variable has a pure power among the leads
    let mut bounds = vec![None::<Exponent>; nvars];
    for m in leads {
        let nz: Vec<usize> = (0..nvars).filter(|&i| m.exponents()[i] > 0).collect();
        if nz.is_empty() {
            return Ok(Vec::new());
        }
        if nz.len() == 1 {
            let i = nz[0];
            let e = m.exponents()[i];
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    if bounds.iter().any(|b| b.is_none()) {
        return Err(Error::NotZeroDimensional);
    }
    let bounds: Vec<Exponent> = bounds.into_iter().map(|b| b.unwrap()).collect();
    let mut out = Vec::new();
    let mut cur = Monomial::one(nvars);
    fn rec(
        i: usize,
        cur: &mut Monomial,
        bounds: &[Exponent],
        leads: &[Monomial],
        out: &mut Vec<Monomial>,
    ) {
        if i == bounds.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..bounds[i] {
            cur.set_exponent(i, e);
            // prune: once divisible, larger exponents stay divisible
            if leads.iter().any(|l| l.divides(cur)) {
                break;
            }
            rec(i + 1, cur, bounds, leads, out);
        }
        cur.set_exponent(i, 0);
    }
    rec(0, &mut cur, &bounds, leads, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn numerator_of_principal() {
        // k[x,y,z]/(x^3): 1 - t^3
        assert_eq!(hilbert_numerator(&[m(&[3, 0, 0])]), vec![1, 0, 0, -1]);
    }

    #[test]
    fn dimension_of_monomial_ideals() {
        // (x) in 3 vars: Krull dim 2, degree 1
        assert_eq!(dimension_and_multiplicity(&[m(&[1, 0, 0])], 3), (2, 1));
        // (x^2, xy): line plus embedded point; dim 2, degree 1
        assert_eq!(dimension_and_multiplicity(&[m(&[2, 0, 0]), m(&[1, 1, 0])], 3), (2, 1));
        // (x, y): Krull dim 1
        assert_eq!(dimension_and_multiplicity(&[m(&[1, 0, 0]), m(&[0, 1, 0])], 3), (1, 1));
        // (x^2, y^2, xy) in 2 vars: Krull dim 0, length 3
        assert_eq!(
            dimension_and_multiplicity(&[m(&[2, 0]), m(&[0, 2]), m(&[1, 1])], 2),
            (0, 3)
        );
    }

    #[test]
    fn staircase_counts() {
        assert_eq!(standard_monomials(&[m(&[2, 0]), m(&[0, 1])], 2).unwrap().len(), 2);
        assert_eq!(standard_monomials(&[m(&[2, 0]), m(&[0, 2])], 2).unwrap().len(), 4);
        assert_eq!(
            standard_monomials(&[m(&[1, 1])], 2),
            Err(Error::NotZeroDimensional)
        );
    }
}
