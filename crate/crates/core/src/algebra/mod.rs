//! Finite-field, truncated power series and 3x3 matrix arithmetic.
//!
//! Everything here works over a runtime prime `p`. Series live in
//! F_p[t]/(t^{i+1}) with `i` chosen at runtime; matrices are 3x3 over such
//! series and are the group elements fed into closure.

mod fp;
mod mat3;
mod quad;
mod series;

pub use fp::{is_prime, prime_factors, FpScalar, Prime};
pub use mat3::{mat3_inverse, mat3_mul, Mat3};
pub use quad::{
    discrete_log, find_generator_delta, generators, smallest_nonresidue, DiscreteLogTable, QuadExtScalar,
    QuadField,
};
pub use series::{series_invert, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: usize, right: usize },
    #[error("operands use different moduli")]
    ModulusMismatch,
    #[error("quadratic extensions need an odd prime")]
    EvenCharacteristic,
    #[error("{c} is a square mod {p}")]
    NotANonResidue { p: u32, c: u32 },
    #[error("element does not generate the multiplicative group")]
    NotAGenerator,
    #[error("discrete logarithm of zero")]
    LogOfZero,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn prime_constructor_rejects_composites() {
        assert_eq!(Prime::new(4), Err(AlgebraError::NotPrime(4)));
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(7).is_ok());
    }

    #[test]
    fn fp_inverse_of_zero_fails() {
        assert_eq!(FpScalar::zero(p(5)).inverse(), Err(AlgebraError::NotInvertible));
        assert_eq!(FpScalar::new(3, p(5)).inverse().unwrap().value(), 2);
    }

    #[test]
    fn series_inverse_of_one_plus_t() {
        let a = TruncatedSeries::new(p(3), 2, &[1, 1]);
        let inv = series_invert(&a).unwrap();
        assert_eq!(inv.coeffs(), &[1, 2, 1]);
        let t = TruncatedSeries::variable(p(3), 2);
        assert_eq!(series_invert(&t), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn mat_inverse_of_diagonal() {
        let pr = p(3);
        let mut e = Mat3::identity(pr, 1).entries();
        e[0][0] = TruncatedSeries::new(pr, 1, &[1, 1]);
        let a = Mat3::from_entries(e).unwrap();
        let inv = mat3_inverse(&a).unwrap();
        assert_eq!(inv.entry(0, 0).coeffs(), &[1, 2]);
        assert_eq!(inv.entry(1, 1).coeffs(), &[1, 0]);
        assert!(mat3_mul(&a, &inv).unwrap().is_identity());
    }

    #[test]
    fn mat_mul_rejects_precision_mismatch() {
        let a = Mat3::identity(p(3), 1);
        let b = Mat3::identity(p(3), 2);
        assert_eq!(mat3_mul(&a, &b), Err(AlgebraError::PrecisionMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = Mat3::from_ints(p(3), 1, [[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(mat3_inverse(&a), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn generator_orders() {
        let f3 = QuadField::standard(p(3)).unwrap();
        assert_eq!(f3.c, 2);
        let d3 = find_generator_delta(f3);
        assert_eq!(d3.order().unwrap(), 8);

        let f5 = QuadField::new(p(5), 2).unwrap();
        let d5 = find_generator_delta(f5);
        assert_eq!(d5.order().unwrap(), 24);
        assert_eq!(d5.pow(12), -f5.one());
        assert_eq!(d3.pow(4), -f3.one());
    }

    #[test]
    fn generator_is_first_in_scan_order() {
        let f = QuadField::standard(p(7)).unwrap();
        let d = find_generator_delta(f);
        for z in f.elements() {
            if z == d {
                break;
            }
            assert!(!z.is_generator());
        }
    }

    #[test]
    fn nonresidue_rejected_when_square() {
        assert!(matches!(QuadField::new(p(5), 4), Err(AlgebraError::NotANonResidue { .. })));
        assert_eq!(smallest_nonresidue(p(7)).unwrap(), 3);
    }

    #[test]
    fn discrete_log_roundtrip_and_zero() {
        let f = QuadField::standard(p(5)).unwrap();
        let d = find_generator_delta(f);
        let table = DiscreteLogTable::new(d).unwrap();
        for e in 0..24 {
            assert_eq!(table.log(d.pow(e)).unwrap(), e);
        }
        assert_eq!(discrete_log(d, f.zero()), Err(AlgebraError::LogOfZero));
        assert_eq!(DiscreteLogTable::new(f.one()).err(), Some(AlgebraError::NotAGenerator));
    }

    fn series_strategy(pr: u32, prec: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(0i64..pr as i64, prec + 1).prop_map(move |c| TruncatedSeries::new(p(pr), prec, &c))
    }

    fn unit_series(pr: u32, prec: usize) -> impl Strategy<Value = TruncatedSeries> {
        series_strategy(pr, prec).prop_filter("unit", |s| s.is_unit())
    }

    fn mat_strategy(pr: u32, prec: usize) -> impl Strategy<Value = Mat3> {
        prop::collection::vec(series_strategy(pr, prec), 9).prop_map(|v| {
            let mut it = v.into_iter();
            Mat3::from_entries(std::array::from_fn(|_| std::array::from_fn(|_| it.next().unwrap()))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn series_mul_associative(a in series_strategy(5, 3), b in series_strategy(5, 3), c in series_strategy(5, 3)) {
            let l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
            let r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn series_times_inverse_is_one(a in unit_series(7, 4)) {
            let inv = series_invert(&a).unwrap();
            prop_assert_eq!(a.try_mul(&inv).unwrap(), TruncatedSeries::one(p(7), 4));
        }

        #[test]
        fn truncation_is_a_ring_map(a in series_strategy(3, 4), b in series_strategy(3, 4), j in 0usize..=4) {
            let prod = a.try_mul(&b).unwrap().truncate(j).unwrap();
            let sep = a.truncate(j).unwrap().try_mul(&b.truncate(j).unwrap()).unwrap();
            prop_assert_eq!(prod, sep);
            let sum = a.try_add(&b).unwrap().truncate(j).unwrap();
            prop_assert_eq!(sum, a.truncate(j).unwrap().try_add(&b.truncate(j).unwrap()).unwrap());
        }

        #[test]
        fn mat_mul_associative(a in mat_strategy(3, 2), b in mat_strategy(3, 2), c in mat_strategy(3, 2)) {
            let l = mat3_mul(&mat3_mul(&a, &b).unwrap(), &c).unwrap();
            let r = mat3_mul(&a, &mat3_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn det_is_multiplicative(a in mat_strategy(5, 2), b in mat_strategy(5, 2)) {
            let lhs = mat3_mul(&a, &b).unwrap().det();
            prop_assert_eq!(lhs, a.det().try_mul(&b.det()).unwrap());
        }

        #[test]
        fn mat_times_inverse_is_identity(a in mat_strategy(3, 3)) {
            if a.det().is_unit() {
                let inv = mat3_inverse(&a).unwrap();
                prop_assert!(mat3_mul(&a, &inv).unwrap().is_identity());
                prop_assert!(mat3_mul(&inv, &a).unwrap().is_identity());
            } else {
                prop_assert!(mat3_inverse(&a).is_err());
            }
        }

        #[test]
        fn key_roundtrip(a in mat_strategy(3, 2)) {
            prop_assert_eq!(Mat3::from_key(p(3), 2, &a.key()), a);
        }

        #[test]
        fn quad_mul_inverse(a in 0i64..11, b in 0i64..11) {
            let f = QuadField::standard(p(11)).unwrap();
            let z = f.element(a, b);
            if !z.is_zero() {
                prop_assert!((z * z.inverse().unwrap()).is_one());
            }
        }
    }
}
