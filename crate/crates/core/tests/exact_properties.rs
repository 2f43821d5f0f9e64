//! Algebraic invariants of the exact layer, checked against naive oracles.

use num_traits::{One, Zero};
use proptest::prelude::*;

use plane_ivhs::exact::linalg::{determinant, mat_vec, nullspace, rank};
use plane_ivhs::exact::roots::{gcd, mul, rational_roots, to_scalars};
use plane_ivhs::exact::{int, ratio, substitute_series, DiffForm, Monomial, MultiPoly, Scalar, TruncSeries};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn poly2() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), scalar()), 0..6)
        .prop_map(|ts| MultiPoly::from_terms(&["x", "y"], ts.into_iter().map(|((i, j), c)| ([i, j, 0], c))))
}

fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), scalar()), 0..6)
        .prop_map(|ts| MultiPoly::from_terms(&["x", "y", "z"], ts.into_iter().map(|((i, j, k), c)| ([i, j, k], c))))
}

fn point(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), n)
}

/// Term-by-term evaluation with repeated rational products.
fn naive_eval(f: &MultiPoly, p: &[Scalar]) -> Scalar {
    let mut total = Scalar::zero();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (i, x) in p.iter().enumerate() {
            for _ in 0..m[i] {
                t = &t * x;
            }
        }
        total += t;
    }
    total
}

/// Polynomial product by explicit term accumulation.
fn naive_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out: Vec<(Monomial, Scalar)> = Vec::new();
    for (ma, x) in a.terms() {
        for (mb, y) in b.terms() {
            out.push(([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], x * y));
        }
    }
    let vars = ["x", "y", "z"];
    MultiPoly::from_terms(&vars[..a.nvars()], out)
}

fn series() -> impl Strategy<Value = TruncSeries> {
    (-3i64..=1, prop::collection::vec(-5i64..=5, 1..6))
        .prop_map(|(min, cs)| TruncSeries::exact("t", min, cs.into_iter().map(int).collect()))
}

fn windowed() -> impl Strategy<Value = TruncSeries> {
    (-3i64..=0, prop::collection::vec(-5i64..=5, 1..6), 0i64..4).prop_map(|(min, cs, extra)| {
        let order = min + cs.len() as i64 + extra;
        TruncSeries::new("t", min, cs.into_iter().map(int).collect(), Some(order)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in poly2(), b in poly2(), c in poly2()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_matches_naive(a in poly3(), b in poly3()) {
        prop_assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    #[test]
    fn evaluation_matches_naive_and_is_multiplicative(a in poly3(), b in poly3(), p in point(3)) {
        prop_assert_eq!(a.eval(&p), naive_eval(&a, &p));
        prop_assert_eq!((&a * &b).eval(&p), a.eval(&p) * b.eval(&p));
    }

    #[test]
    fn translation_moves_the_point(f in poly2(), a in point(2), v in point(2)) {
        let g = f.translate(&a);
        let moved = [&v[0] + &a[0], &v[1] + &a[1]];
        prop_assert_eq!(naive_eval(&g, &v), naive_eval(&f, &moved));
        let back = g.translate(&[-&a[0], -&a[1]]);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn linear_change_is_composition(f in poly3(), m in prop::collection::vec(point(3), 3), p in point(3)) {
        let image: Vec<Scalar> = m.iter().map(|row| row.iter().zip(&p).map(|(a, b)| a * b).sum()).collect();
        prop_assert_eq!(naive_eval(&f.linear_change(&m), &p), naive_eval(&f, &image));
    }

    #[test]
    fn derivative_is_a_derivation(a in poly2(), b in poly2()) {
        for v in 0..2 {
            let lhs = (&a * &b).derivative(v);
            let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn series_product_is_bilinear_and_associative(a in series(), b in series(), c in series(), k in scalar()) {
        let left = a.add(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.scale(&k).mul(&b).unwrap(), a.mul(&b).unwrap().scale(&k));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn windowed_product_knows_only_what_the_inputs_know(a in windowed(), b in windowed()) {
        let p = a.mul(&b).unwrap();
        let va = a.valuation().unwrap_or(a.min_exponent());
        let vb = b.valuation().unwrap_or(b.min_exponent());
        let expect = (a.truncation_order().unwrap() + vb).min(b.truncation_order().unwrap() + va);
        prop_assert!(p.truncation_order().unwrap() <= expect);
        // every reported coefficient agrees with the exact product of the known parts
        let known = |s: &TruncSeries| {
            let cs = (s.min_exponent()..s.truncation_order().unwrap()).map(|k| s.coeff(k).unwrap()).collect();
            TruncSeries::exact("t", s.min_exponent(), cs)
        };
        let exact = known(&a).mul(&known(&b)).unwrap();
        for k in p.min_exponent()..p.truncation_order().unwrap() {
            prop_assert_eq!(p.coeff(k), exact.coeff(k));
        }
    }

    #[test]
    fn exact_differentials_have_no_residue(f in series()) {
        prop_assert_eq!(DiffForm::exterior_derivative(&f).residue().unwrap(), Scalar::zero());
    }

    #[test]
    fn residue_is_linear(a in series(), b in series(), k in scalar()) {
        let ra = DiffForm::new(a.clone()).residue().unwrap();
        let rb = DiffForm::new(b.clone()).residue().unwrap();
        let sum = DiffForm::new(a.scale(&k).add(&b).unwrap()).residue().unwrap();
        prop_assert_eq!(sum, &k * ra + rb);
    }

    #[test]
    fn substitution_is_a_ring_map(f in poly2(), g in poly2(), x in series(), y in series()) {
        let (x, y) = (x.shift(1 - x.min_exponent()), y.shift(1 - y.min_exponent()));
        let fg = substitute_series(&(&f * &g), &x, &y).unwrap();
        let prod = substitute_series(&f, &x, &y).unwrap().mul(&substitute_series(&g, &x, &y).unwrap()).unwrap();
        prop_assert_eq!(fg, prod);
        let sum = substitute_series(&(&f + &g), &x, &y).unwrap();
        prop_assert_eq!(sum, substitute_series(&f, &x, &y).unwrap().add(&substitute_series(&g, &x, &y).unwrap()).unwrap());
    }

    #[test]
    fn nullspace_is_exact_kernel(rows in prop::collection::vec(point(5), 0..5)) {
        let basis = nullspace(&rows, 5);
        prop_assert_eq!(basis.len(), 5 - rank(&rows, 5));
        for v in &basis {
            prop_assert!(mat_vec(&rows, v).iter().all(Zero::is_zero));
        }
        let stacked: Vec<Vec<Scalar>> = basis.clone();
        prop_assert_eq!(rank(&stacked, 5), basis.len());
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(point(3), 3), b in prop::collection::vec(point(3), 3)) {
        let ab: Vec<Vec<Scalar>> = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect();
        prop_assert_eq!(determinant(&ab), determinant(&a) * determinant(&b));
    }

    #[test]
    fn planted_rational_roots_are_found(rs in prop::collection::vec((-6i64..=6, 1i64..=3), 1..4), extra in 1i64..5) {
        // product of (d x - n) with an irreducible x^2 + extra
        let mut p = to_scalars(&[extra, 0, 1]);
        for &(n, d) in &rs {
            p = mul(&p, &to_scalars(&[-n, d]));
        }
        let found = rational_roots(&p);
        for &(n, d) in &rs {
            prop_assert!(found.contains(&ratio(n, d)));
        }
        prop_assert!(found.len() <= rs.len());
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..5), c in prop::collection::vec(-5i64..=5, 1..4)) {
        let (pa, pb, pc) = (to_scalars(&a), to_scalars(&b), to_scalars(&c));
        let g = gcd(&mul(&pa, &pc), &mul(&pb, &pc));
        let pc_trim: Vec<Scalar> = {
            let mut v = pc.clone();
            while v.last().is_some_and(Zero::is_zero) { v.pop(); }
            v
        };
        if !pc_trim.is_empty() && !mul(&pa, &pc).iter().all(Zero::is_zero) && !mul(&pb, &pc).iter().all(Zero::is_zero) {
            // c divides the gcd, and the gcd is monic
            let (_, rem) = plane_ivhs::exact::roots::divrem(&g, &pc_trim);
            prop_assert!(rem.iter().all(Zero::is_zero));
            prop_assert!(g.last().unwrap().is_one());
        }
    }
}
