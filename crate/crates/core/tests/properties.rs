use proptest::prelude::*;
use vanderkit_core::factor::{
    factor_d, factor_l, factor_u, factor_w, invert_confluent, invert_simple,
};
use vanderkit_core::matfunc::{
    apply_polynomial, hermite_coefficients, matrix_function, HermiteData, MatrixFunction,
    PolynomialCoefficients,
};
use vanderkit_core::oracle::{
    cofactor_det, elementary_symmetric, gauss_jordan_determinant, gauss_jordan_invert, series_exp,
};
use vanderkit_core::vander::{build_confluent, build_vandermonde, derivative_column_entry, det_product_formula};
use vanderkit_core::{DenseMatrix, Node, Rational, Scalar, Spectrum};

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn distinct_ints(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    len.prop_flat_map(|n| {
        proptest::sample::subsequence((-10i64..=10).collect::<Vec<_>>(), n).prop_shuffle()
    })
}

fn simple_spectrum() -> impl Strategy<Value = Spectrum<Rational>> {
    distinct_ints(1..=8).prop_map(|v| Spectrum::simple(v.into_iter().map(q).collect()).unwrap())
}

/// One or two repeated nodes, total order at most 8, nodes in any position.
fn confluent_spectrum() -> impl Strategy<Value = Spectrum<Rational>> {
    (1usize..=2, 0usize..=4, any::<prop::sample::Index>()).prop_flat_map(|(repeated, simple, pos)| {
        let count = repeated + simple;
        (
            distinct_ints(count..=count),
            proptest::collection::vec(2usize..=4, repeated),
            Just(pos),
        )
            .prop_filter_map("order at most 8", move |(vals, mults, pos)| {
                let mut nodes: Vec<Node<Rational>> = vals
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| Node::new(q(v), if k < mults.len() { mults[k] } else { 1 }))
                    .collect();
                let size: usize = nodes.iter().map(|n| n.multiplicity).sum();
                if size > 8 {
                    return None;
                }
                let k = pos.index(nodes.len());
                nodes.rotate_left(k);
                Some(Spectrum::new(nodes).unwrap())
            })
    })
}

fn rational_matrix(n: usize) -> impl Strategy<Value = DenseMatrix<Rational>> {
    proptest::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |v| {
        let entries = v
            .into_iter()
            .map(|(a, b)| q(a).checked_div(&q(b)).unwrap())
            .collect();
        DenseMatrix::new(n, n, entries).unwrap()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| q(a).checked_div(&q(b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Rational::zero());
        if !Scalar::is_zero(&b) {
            prop_assert_eq!(a.checked_div(&b).unwrap() * b, a);
        }
    }

    #[test]
    fn identity_product_rational(n in 1usize..6, seed in any::<u64>()) {
        let m = DenseMatrix::from_fn(n, n, |i, j| q(((seed >> ((i * n + j) % 60)) & 15) as i64 - 7));
        let id = DenseMatrix::identity(n);
        prop_assert_eq!(m.mat_mul(&id).unwrap(), m.clone());
        prop_assert_eq!(id.mat_mul(&m).unwrap(), m);
    }

    #[test]
    fn identity_product_float(entries in proptest::collection::vec(-1e3f64..1e3, 16)) {
        let m = DenseMatrix::new(4, 4, entries).unwrap();
        let id = DenseMatrix::identity(4);
        prop_assert_eq!(m.mat_mul(&id).unwrap(), m.clone());
        prop_assert_eq!(id.mat_mul(&m).unwrap(), m);
    }

    #[test]
    fn product_formula_matches_cofactor_expansion(s in simple_spectrum()) {
        let v = build_vandermonde(&s).unwrap().matrix;
        prop_assert_eq!(det_product_formula(&s).unwrap(), cofactor_det(&v).unwrap());
    }

    #[test]
    fn simple_inverse_is_exact(s in simple_spectrum()) {
        let f = invert_simple(&s).unwrap();
        let v = build_vandermonde(&s).unwrap().matrix;
        prop_assert_eq!(f.inverse.mat_mul(&v).unwrap(), DenseMatrix::identity(s.size()));
        prop_assert_eq!(&f.inverse, &gauss_jordan_invert(&v).unwrap());
        prop_assert!(Scalar::is_zero(&f.residual_norm));
    }

    #[test]
    fn diagonal_times_w_is_u(s in simple_spectrum()) {
        let d = factor_d(&s).unwrap();
        let w = factor_w(&s).unwrap();
        prop_assert_eq!(d.matrix().mat_mul(w.matrix()).unwrap(), factor_u(&s).unwrap().into_matrix());
        let n = s.size();
        for i in 0..n {
            prop_assert_eq!(&w[(i, n - 1)], &q(1));
        }
    }

    #[test]
    fn lower_factor_is_signed_elementary_symmetric(s in simple_spectrum()) {
        let l = factor_l(&s).unwrap();
        let lambda: Vec<Rational> = s.nodes().iter().map(|n| n.value.clone()).collect();
        prop_assert!(l.has_unit_diagonal());
        for i in 0..s.size() {
            for j in 0..i {
                let e = elementary_symmetric(&lambda[..i], i - j).unwrap();
                let expected = if (i - j) % 2 == 0 { e } else { -e };
                prop_assert_eq!(&l[(i, j)], &expected);
            }
        }
    }

    #[test]
    fn confluent_inverse_is_exact(s in confluent_spectrum()) {
        let f = invert_confluent(&s).unwrap();
        let c = build_confluent(&s).unwrap().matrix;
        prop_assert_eq!(c.mat_mul(&f.inverse).unwrap(), DenseMatrix::identity(s.size()));
        prop_assert_eq!(&f.inverse, &gauss_jordan_invert(&c).unwrap());
    }

    #[test]
    fn block_columns_are_derivatives_of_their_left_neighbour(s in confluent_spectrum()) {
        // left neighbour entry: a·λ^p with a = row!/(row-k+1)!, p = row-k+1;
        // its λ-derivative is a·p·λ^(p-1)
        let c = build_confluent(&s).unwrap().matrix;
        for (col, &(node, order)) in s.column_layout().iter().enumerate() {
            if order == 0 {
                continue;
            }
            let lambda = &s.nodes()[node].value;
            for row in 0..s.size() {
                let expected = if row >= order {
                    let p = (row + 1 - order) as i64;
                    let a: i64 = ((p + 1)..=row as i64).product();
                    q(a * p) * lambda.powi(p as u32 - 1)
                } else {
                    q(0)
                };
                prop_assert_eq!(&c[(row, col)], &expected);
            }
        }
    }

    #[test]
    fn scaling_nodes_scales_inverse_columns(vals in distinct_ints(1..=7), c in prop_oneof![-3i64..=-1, 1i64..=3]) {
        let s = Spectrum::simple(vals.iter().map(|&v| q(v)).collect()).unwrap();
        let scaled = Spectrum::simple(vals.iter().map(|&v| q(v * c)).collect()).unwrap();
        let a = invert_simple(&s).unwrap().inverse;
        let b = invert_simple(&scaled).unwrap().inverse;
        for i in 0..s.size() {
            for j in 0..s.size() {
                let factor = Scalar::recip(&q(c).powi(j as u32)).unwrap();
                prop_assert_eq!(&b[(i, j)], &(a[(i, j)].clone() * factor));
            }
        }
    }

    #[test]
    fn hermite_interpolation_reproduces_polynomials(
        s in confluent_spectrum(),
        coeffs in proptest::collection::vec(-6i64..=6, 8),
    ) {
        let n = s.size();
        let poly = PolynomialCoefficients(coeffs[..n].iter().map(|&c| q(c)).collect());
        // values of q^(k)(λ): Σ_r c_r · d^k/dλ^k λ^r
        let values = s
            .column_layout()
            .iter()
            .map(|&(node, order)| {
                let lambda = &s.nodes()[node].value;
                (0..n).fold(q(0), |acc, r| acc + poly.0[r].clone() * derivative_column_entry(lambda, r, order))
            })
            .collect();
        let data = HermiteData::new(s.clone(), values).unwrap();
        prop_assert_eq!(hermite_coefficients(&data).unwrap(), poly);
    }

    #[test]
    fn gauss_jordan_inverts_nonsingular_matrices(m in (1usize..=6).prop_flat_map(rational_matrix)) {
        let det = cofactor_det(&m).unwrap();
        prop_assert_eq!(&det, &gauss_jordan_determinant(&m).unwrap());
        if !Scalar::is_zero(&det) {
            let inv = gauss_jordan_invert(&m).unwrap();
            prop_assert_eq!(inv.mat_mul(&m).unwrap(), DenseMatrix::identity(m.rows()));
        }
    }
}

#[test]
fn degenerate_confluent_path_is_bitwise_simple() {
    let s = Spectrum::simple(vec![-1.5, 0.25, 2.0, 3.75, -0.8]).unwrap();
    let a = invert_simple(&s).unwrap();
    let b = invert_confluent(&s).unwrap();
    let bits = |m: &DenseMatrix<f64>| m.entries().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a.inverse), bits(&b.inverse));
}

#[test]
fn series_exp_stabilizes() {
    let a = DenseMatrix::from_rows(vec![
        vec![0.4, -1.1, 0.3],
        vec![0.7, 0.2, -0.5],
        vec![-0.2, 0.6, -0.9],
    ])
    .unwrap();
    let short = series_exp(&a, 25).unwrap();
    let long = series_exp(&a, 35).unwrap();
    assert!(short.max_abs_diff(&long).unwrap() < 1e-13);
}

fn conj(p: &DenseMatrix<f64>, a: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let p_inv = gauss_jordan_invert(p).unwrap();
    p_inv.mat_mul(a).unwrap().mat_mul(p).unwrap()
}

#[test]
fn matrix_functions_commute_with_similarity() {
    let a = DenseMatrix::from_rows(vec![
        vec![1.0, 2.0, 0.0],
        vec![0.0, 2.0, 0.0],
        vec![0.0, 1.0, 3.0],
    ])
    .unwrap();
    let s = Spectrum::simple(vec![1.0, 2.0, 3.0]).unwrap();
    let p = DenseMatrix::from_rows(vec![
        vec![1.0, 0.3, -0.2],
        vec![0.1, 1.2, 0.4],
        vec![-0.3, 0.2, 0.9],
    ])
    .unwrap();
    for f in [MatrixFunction::Exp, MatrixFunction::Log] {
        let lhs = matrix_function(&conj(&p, &a), &s, f).unwrap();
        let rhs = conj(&p, &matrix_function(&a, &s, f).unwrap());
        assert!(lhs.approx_eq(&rhs, 1e-8), "{f:?}");
    }
}

#[test]
fn horner_agrees_with_power_sum() {
    let a = DenseMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(-1), q(3)]]).unwrap();
    let p = PolynomialCoefficients(vec![q(2), q(-1), q(0), q(4)]);
    let mut power = DenseMatrix::identity(2);
    let mut sum = DenseMatrix::zeros(2, 2);
    for c in &p.0 {
        sum = sum.add(&power.scale(c)).unwrap();
        power = power.mat_mul(&a).unwrap();
    }
    assert_eq!(apply_polynomial(&p, &a).unwrap(), sum);
}
