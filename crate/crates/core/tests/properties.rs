use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;

use frobsum::field::{FiniteField, Polynomial, Tower};
use frobsum::graded::{check_rth_power, graded_tensor_induce, graded_trace, GradedRep};
use frobsum::rep::{Matrix, Scalar};
use frobsum::sums::{kernel_trace_function, SumContext, SumMode};

fn towers() -> impl Strategy<Value = (u64, usize, usize)> {
    prop::sample::select(vec![(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3), (2, 1, 4)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(p_n in prop::sample::select(vec![(2u64, 3usize), (3, 2), (5, 2), (7, 1), (2, 5)]),
                  a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let k = FiniteField::new(p_n.0, p_n.1).unwrap();
        let size = k.size();
        let (a, b, c) = (k.from_index(a % size), k.from_index(b % size), k.from_index(c % size));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.pow(size), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(k.parse_element(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn trace_is_additive_and_norm_multiplicative(shape in towers(), x in any::<u64>(), y in any::<u64>()) {
        let tower = Tower::canonical(shape.0, shape.1, shape.2).unwrap();
        let top = tower.top();
        let (x, y) = (top.from_index(x % top.size()), top.from_index(y % top.size()));
        prop_assert_eq!(tower.trace(&(&x + &y)), &tower.trace(&x) + &tower.trace(&y));
        prop_assert_eq!(tower.norm(&(&x * &y)), &tower.norm(&x) * &tower.norm(&y));
        // Frobenius-invariance
        prop_assert_eq!(tower.trace(&tower.frobenius(&x)), tower.trace(&x));
    }

    #[test]
    fn polynomial_cli_form_round_trips(coeffs in prop::collection::vec(0u64..9, 1..6)) {
        let k = FiniteField::new(3, 2).unwrap();
        let f = Polynomial::from_indices(&k, &coeffs).unwrap();
        let g = Polynomial::parse(&k, &f.to_cli_string()).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn restricted_sums_add_up_to_total(shape in towers(), coeffs in prop::collection::vec(0u64..4, 2..4)) {
        let tower = Tower::canonical(shape.0, shape.1, shape.2).unwrap();
        let top = tower.top();
        let mut idx: Vec<u64> = coeffs.iter().map(|c| c % top.size()).collect();
        idx.push(1);
        let f = Polynomial::from_indices(top, &idx).unwrap();
        for mode in [SumMode::Trace, SumMode::Norm] {
            let t = kernel_trace_function(&f, mode.domain()).unwrap();
            let ctx = SumContext::new(&t, &tower).unwrap();
            let reports = ctx.report_all(mode).unwrap();
            let total: i64 = reports.iter().map(|r| r.exact.unwrap()).sum();
            let fibers: u64 = reports.iter().map(|r| r.fiber_size).sum();
            // Σ_y (#f⁻¹(y) − 1) over the domain of the fibers
            let direct: i64 = match mode {
                SumMode::Trace => 0,
                SumMode::Norm => {
                    let zeros = top.elements().filter(|x| f.eval(x).is_zero()).count() as i64;
                    -zeros + 1
                }
            };
            prop_assert_eq!(total, direct);
            let expected_fibers = match mode {
                SumMode::Trace => top.size(),
                SumMode::Norm => top.size() - 1,
            };
            prop_assert_eq!(fibers, expected_fibers);
        }
    }

    #[test]
    fn matrix_json_round_trips(rows in prop::collection::vec(prop::collection::vec(-50i64..50, 3), 3)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigRational::from_i64(x)).collect()).collect()).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: Matrix<BigRational> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn graded_identities_on_arbitrary_pieces(
        pieces in prop::collection::btree_map(-2i64..=2, prop::collection::vec(-3i64..=3, 1..=4), 1..=3),
        r in 2usize..=3,
    ) {
        // square pieces of dimension 1 or 2 from the sampled entries
        let pieces: BTreeMap<i64, Matrix<i64>> = pieces
            .into_iter()
            .map(|(d, v)| {
                let m = if v.len() == 4 {
                    Matrix::from_rows(vec![vec![v[0], v[1]], vec![v[2], v[3]]]).unwrap()
                } else {
                    Matrix::scalar(v[0])
                };
                (d, m)
            })
            .collect();
        prop_assume!(pieces.values().all(|m| m.is_invertible()));
        let p = GradedRep::new(pieces).unwrap();
        let q = graded_tensor_induce(&p, r).unwrap();
        let report = graded_trace(&p, &q);
        prop_assert!(report.holds());
        prop_assert!(check_rth_power(&p, &q));
    }
}
