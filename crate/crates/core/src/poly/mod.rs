//! Exact multivariate polynomials over QQ and GF(p).

mod field;
mod monomial;
mod parse;
#[allow(clippy::module_inception)]
mod poly;
mod ring;

pub use field::{fmt_rational, is_prime, Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use monomial::{Exponent, Monomial, TermOrder, MAX_EXPONENT};
pub use parse::parse_poly;
pub use poly::{Homogeneity, Poly};
pub use ring::{is_valid_identifier, Ring};

use crate::error::{Error, Result};

/// Row-major matrix of polynomials.
pub type PolyMatrix<F> = Vec<Vec<Poly<F>>>;

/// Matrix of partial derivatives: row `i` holds the gradient of `polys[i]`.
pub fn jacobian_matrix<F: Field>(polys: &[Poly<F>]) -> PolyMatrix<F> {
    polys
        .iter()
        .map(|p| (0..p.ring().nvars()).map(|j| p.derivative(j)).collect())
        .collect()
}

/// All `size x size` minors, rows and columns taken in lexicographic order of
/// index subsets. Duplicates are kept.
pub fn minors<F: Field>(mat: &PolyMatrix<F>, size: usize) -> Result<Vec<Poly<F>>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    if size == 0 || size > rows.min(cols) {
        return Err(Error::MinorSize { size, rows, cols });
    }
    let mut out = Vec::new();
    for rs in combinations(rows, size) {
        for cs in combinations(cols, size) {
            out.push(laplace_det(mat, &rs, &cs));
        }
    }
    Ok(out)
}

fn laplace_det<F: Field>(mat: &PolyMatrix<F>, rows: &[usize], cols: &[usize]) -> Poly<F> {
    if rows.len() == 1 {
        return mat[rows[0]][cols[0]].clone();
    }
    let ring = mat[rows[0]][cols[0]].ring().clone();
    let mut acc = Poly::zero(&ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &mat[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &laplace_det(mat, &rows[1..], &sub_cols);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// k-element subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All monomials of total degree `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0 as Exponent; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<Exponent>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left as Exponent;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as Exponent;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if nvars == 0 {
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q3() -> Ring<Rationals> {
        Ring::grevlex(Rationals, &["x", "y", "z"]).unwrap()
    }

    fn p(text: &str, ring: &Ring<Rationals>) -> Poly<Rationals> {
        parse_poly(text, ring).unwrap()
    }

    #[test]
    fn parses_cubic() {
        let r = q3();
        let f = p("y^2*z - x^3", &r);
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "-x^3 + y^2*z");
        let coeffs: Vec<String> = f.terms().iter().map(|(_, c)| c.to_string()).collect();
        assert!(coeffs.contains(&"1".to_string()) && coeffs.contains(&"-1".to_string()));
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = p("x - x", &q3());
        assert!(f.is_zero());
        assert_eq!(f.to_string(), "0");
    }

    #[test]
    fn binomial_square() {
        let r = q3();
        assert_eq!(p("(x+y)^2", &r), p("x^2 + 2*x*y + y^2", &r));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = q3();
        match parse_poly("x + w", &r) {
            Err(Error::UnknownVariable { name, column, .. }) => {
                assert_eq!(name, "w");
                assert_eq!(column, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x + ", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(x", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x ^ y", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x / y", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn arithmetic_examples() {
        let r = q3();
        assert_eq!(&p("x+y", &r) * &p("x-y", &r), p("x^2-y^2", &r));
        assert_eq!(p("x", &r).pow(0), Poly::one(&r));
        let g = Ring::grevlex(PrimeField::new(5).unwrap(), &["x"]).unwrap();
        let a = parse_poly("3*x", &g).unwrap();
        let b = parse_poly("4*x", &g).unwrap();
        assert_eq!(&a + &b, parse_poly("2*x", &g).unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = q3();
        let r2 = Ring::grevlex(Rationals, &["a", "b"]).unwrap();
        assert_eq!(p("x", &r1).try_add(&p("a", &r2)), Err(Error::RingMismatch));
    }

    #[test]
    fn jacobian_of_cuspidal_cubic() {
        let r = q3();
        let jac = jacobian_matrix(&[p("y^2*z - x^3", &r)]);
        assert_eq!(jac[0], vec![p("-3*x^2", &r), p("2*y*z", &r), p("y^2", &r)]);
        let jac = jacobian_matrix(&[p("x", &r)]);
        assert_eq!(jac[0], vec![Poly::one(&r), Poly::zero(&r), Poly::zero(&r)]);
    }

    #[test]
    fn two_by_two_minors_count() {
        let r = Ring::grevlex(Rationals, &["x", "y", "z", "w"]).unwrap();
        let jac = jacobian_matrix(&[p("x*y - z*w", &r), p("z", &r)]);
        let ms = minors(&jac, 2).unwrap();
        assert_eq!(ms.len(), 6);
        // columns (0,2): det [[y, -w],[0, 1]] = y
        assert_eq!(ms[1], p("y", &r));
        assert!(minors(&jac, 3).is_err());
        assert!(minors(&jac, 0).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        let r = q3();
        assert_eq!(p("y^2*z - x^3", &r).homogeneity(), Homogeneity::Homogeneous(3));
        assert_eq!(p("x + y^2", &r).homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(Poly::zero(&r).homogeneity(), Homogeneity::Zero);
        assert_eq!(Poly::zero(&r).homogeneity().degree(), None);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let r = q3();
        let f = p("x^3 - 2*x*y*z + z^2 + 7", &r);
        let t = Ring::grevlex(Rationals, &["s", "t"]).unwrap();
        let imgs = vec![p("s + 1", &t), p("2*t - s", &t), p("3", &t)];
        let g = f.substitute(&t, &imgs).unwrap();
        let q = |n: i64| num_rational::BigRational::from_integer(n.into());
        let (s0, t0) = (q(2), q(-3));
        let pt = vec![&s0 + q(1), q(2) * &t0 - &s0, q(3)];
        assert_eq!(g.evaluate(&[s0, t0]), f.evaluate(&pt));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(combinations(4, 2).len(), 6);
    }

    fn arb_poly(ring: Ring<PrimeField>) -> impl Strategy<Value = Poly<PrimeField>> {
        prop::collection::vec((prop::collection::vec(0u16..4, 3), 0u32..101), 0..6).prop_map(
            move |terms| {
                Poly::from_terms(
                    &ring,
                    terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)),
                )
            },
        )
    }

    fn arb_qpoly(ring: Ring<Rationals>) -> impl Strategy<Value = Poly<Rationals>> {
        prop::collection::vec((prop::collection::vec(0u16..4, 3), -20i64..20, 1i64..5), 0..6)
            .prop_map(move |terms| {
                Poly::from_terms(
                    &ring,
                    terms.into_iter().map(|(e, n, d)| {
                        (
                            Monomial::from_exponents(&e),
                            num_rational::BigRational::new(n.into(), d.into()),
                        )
                    }),
                )
            })
    }

    fn f101() -> Ring<PrimeField> {
        Ring::grevlex(PrimeField::new(101).unwrap(), &["x", "y", "z"]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn ring_axioms_mod_p(a in arb_poly(f101()), b in arb_poly(f101()), c in arb_poly(f101())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn ring_axioms_over_q(a in arb_qpoly(q3()), b in arb_qpoly(q3()), c in arb_qpoly(q3())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn print_parse_roundtrip(a in arb_qpoly(q3()), b in arb_poly(f101())) {
            let r = a.ring().clone();
            prop_assert_eq!(parse_poly(&a.to_string(), &r).unwrap(), a.clone());
            let rb = b.ring().clone();
            prop_assert_eq!(parse_poly(&b.to_string(), &rb).unwrap(), b.clone());
        }

        #[test]
        fn derivative_is_linear_and_leibniz(a in arb_qpoly(q3()), b in arb_qpoly(q3()), v in 0usize..3) {
            prop_assert_eq!((&a + &b).derivative(v), &a.derivative(v) + &b.derivative(v));
            prop_assert_eq!((&a * &b).derivative(v), &(&a.derivative(v) * &b) + &(&a * &b.derivative(v)));
        }

        #[test]
        fn fermat_little_theorem(x0 in 0u32..101, y0 in 0u32..101, z0 in 0u32..101) {
            let r = f101();
            let x = Poly::var(&r, 0);
            let xp = x.pow(101);
            prop_assert_eq!(xp.evaluate(&[x0, y0, z0]), x.evaluate(&[x0, y0, z0]));
        }
    }
}
