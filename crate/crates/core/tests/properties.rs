use std::f64::consts::PI;

use multigamma::multigamma::{log_gn_at, recurrence_residual};
use multigamma::pick::{boundary_im_f_n, density_d_n, stieltjes_reconstruct, QuadratureConfig};
use multigamma::{Complex64, CutPlanePoint, Order};
use proptest::prelude::*;

fn ord(n: u32) -> Order {
    Order::new(n).unwrap()
}

fn non_integer(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_filter("away from integers", |t: &f64| (t - t.round()).abs() > 1e-6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry(n in 1u32..=4, re in -15.0f64..15.0, im in 0.01f64..15.0) {
        let a = log_gn_at(CutPlanePoint::new(re, im).unwrap(), ord(n)).unwrap().value;
        let b = log_gn_at(CutPlanePoint::new(re, -im).unwrap(), ord(n)).unwrap().value;
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn recurrence_holds(n in 1u32..=3, rho in 0.05f64..20.0, theta in -3.1f64..3.1) {
        let z = CutPlanePoint::from_complex(Complex64::from_polar(rho, theta)).unwrap();
        prop_assert!(recurrence_residual(z, ord(n)).unwrap() <= 1e-9);
    }

    #[test]
    fn boundary_matches_density(n in 1u32..=3, t in non_integer(-20.0, -1e-3)) {
        let d = density_d_n(t, ord(n)).unwrap().value();
        let b = boundary_im_f_n(t, ord(n)).unwrap();
        prop_assert!((b - PI * d).abs() <= 1e-10 * b.abs().max(1.0));
    }

    #[test]
    fn density_nonnegative(n in 1u32..=3, t in non_integer(-50.0, -1e-6)) {
        prop_assert!(density_d_n(t, ord(n)).unwrap().value() >= -1e-12);
    }

    #[test]
    fn density_vanishes_on_positive_axis(n in 1u32..=6, t in 0.0f64..1e3) {
        prop_assert_eq!(density_d_n(t, ord(n)).unwrap().value(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn low_orders_reconstruct(n in 1u32..=2, rho in 0.01f64..100.0, theta in -3.0f64..3.0) {
        let z = CutPlanePoint::from_complex(Complex64::from_polar(rho, theta)).unwrap();
        let r = stieltjes_reconstruct(z, ord(n), &QuadratureConfig::default()).unwrap();
        prop_assert!(r.residual <= 1e-8, "residual {} at {}", r.residual, z.z());
    }
}
