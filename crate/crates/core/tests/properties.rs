use hprolate::analysis::{paired_squared_distance, plunge_g};
use hprolate::bessel::{eval_j, find_zeros, Order};
use hprolate::ingham::{ingham_eigenvalue, sinc_gram, InghamConfig};
use hprolate::kernels::{continuous_g, correction_f, v_integral, Band, BandwidthC, ProblemConfig};
use hprolate::spectra::{eigensystem, eigenvalues, gram_matrix, Matrix, Method, Spectrum};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = f64> {
    prop_oneof![Just(-0.5), Just(0.0), Just(0.5), Just(1.0), Just(2.0), -0.5f64..3.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bessel_recurrence(a in -0.5f64..4.0, x in 0.1f64..80.0) {
        // J_{α−1} + J_{α+1} = (2α/x) J_α, written for orders ≥ −1/2
        let o = |v: f64| Order::new(v).unwrap();
        let lhs = eval_j(o(a), x).unwrap() + eval_j(o(a + 2.0), x).unwrap();
        let rhs = 2.0 * (a + 1.0) / x * eval_j(o(a + 1.0), x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn zeros_interlace(a in -0.5f64..3.0) {
        let o = Order::new(a).unwrap();
        let z = find_zeros(o, 12).unwrap();
        let z1 = find_zeros(Order::new(a + 1.0).unwrap(), 12).unwrap();
        for n in 1..12 {
            prop_assert!(z.zero(n).unwrap() < z1.zero(n).unwrap());
            prop_assert!(z1.zero(n).unwrap() < z.zero(n + 1).unwrap());
        }
    }

    #[test]
    fn spectrum_range_order_and_trace(a in order(), w in 0.05f64..1.0, n in 1usize..24) {
        let o = Order::new(a).unwrap();
        let cfg = ProblemConfig::new(o, Band::new(w).unwrap(), n).unwrap();
        let z = find_zeros(o, n).unwrap();
        let s = Spectrum::compute(&cfg, &z, Method::GramClosedForm).unwrap();
        prop_assert!(s.eigenvalues().iter().all(|l| (0.0..=1.0).contains(l)));
        prop_assert!(s.eigenvalues().windows(2).all(|p| p[0] >= p[1]));
        let rho = gram_matrix(&cfg, &z).unwrap();
        prop_assert!((s.sum() - rho.trace()).abs() < 1e-10);
    }

    #[test]
    fn spectrum_grows_with_omega(a in order(), w in 0.05f64..0.9, n in 2usize..16) {
        let o = Order::new(a).unwrap();
        let z = find_zeros(o, n).unwrap();
        let at = |w: f64| {
            let cfg = ProblemConfig::new(o, Band::new(w).unwrap(), n).unwrap();
            Spectrum::compute(&cfg, &z, Method::GramClosedForm).unwrap().eigenvalues().to_vec()
        };
        let (lo, hi) = (at(w), at(w + 0.1));
        for (x, y) in lo.iter().zip(&hi) {
            prop_assert!(x <= &(y + 1e-12));
        }
    }

    #[test]
    fn coefficient_vectors_are_orthonormal(a in order(), w in 0.1f64..1.0, n in 1usize..20) {
        let o = Order::new(a).unwrap();
        let cfg = ProblemConfig::new(o, Band::new(w).unwrap(), n).unwrap();
        let z = find_zeros(o, n).unwrap();
        let s = Spectrum::compute(&cfg, &z, Method::GramClosedForm).unwrap();
        for i in 0..n {
            for j in 0..n {
                let d: f64 = s.coeff_vector(i).unwrap().iter().zip(s.coeff_vector(j).unwrap()).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eigensystem_residuals(n in 1usize..90, seed in any::<u64>()) {
        let mut state = seed | 1;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = next();
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        let e = eigensystem(&a).unwrap();
        let scale = a.frobenius_norm().max(1.0);
        for k in 0..n {
            let v = e.vector(k);
            let av = a.mul_vec(&v);
            let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - e.values[k] * y).powi(2)).sum::<f64>().sqrt();
            prop_assert!(r < 1e-10 * scale);
        }
        prop_assert!((e.values.iter().sum::<f64>() - a.trace()).abs() < 1e-10 * scale);
    }

    #[test]
    fn kernels_are_symmetric(a in order(), x in 0.0f64..1.0, y in 0.0f64..1.0, c in 1.0f64..200.0) {
        let o = Order::new(a).unwrap();
        let cn = BandwidthC::new(c).unwrap();
        prop_assert!((continuous_g(o, c * x, c * y) - continuous_g(o, c * y, c * x)).abs() < 1e-12 * c);
        let f = correction_f(cn, o, x * 0.9, y * 0.9).unwrap();
        let g = correction_f(cn, o, y * 0.9, x * 0.9).unwrap();
        prop_assert!((f - g).abs() < 1e-12);
    }

    #[test]
    fn v_is_odd_and_bounded(r in 0.001f64..1.99) {
        let v = v_integral(r).unwrap();
        prop_assert_eq!(v_integral(-r).unwrap(), -v);
        let upper = r / (4.0 - r * r);
        prop_assert!(upper / 2.0 <= v && v <= upper);
    }

    #[test]
    fn padding_does_not_change_distance(a in proptest::collection::vec(0.0f64..1.0, 0..12), b in proptest::collection::vec(0.0f64..1.0, 0..12), pad in 0usize..5) {
        let mut ap = a.clone();
        let mut bp = b.clone();
        ap.extend(std::iter::repeat_n(0.0, pad));
        bp.extend(std::iter::repeat_n(0.0, pad + 1));
        prop_assert!((paired_squared_distance(&a, &b) - paired_squared_distance(&ap, &bp)).abs() < 1e-15);
    }

    #[test]
    fn plunge_g_is_positive(w in 0.001f64..0.999) {
        prop_assert!(plunge_g(w) > 0.0);
    }

    #[test]
    fn sinc_gram_is_positive_semidefinite(mut idx in proptest::collection::btree_set(1u64..200, 1..30), w in 0.001f64..0.499) {
        let idx: Vec<u64> = std::mem::take(&mut idx).into_iter().collect();
        let v = eigenvalues(&sinc_gram(&idx, w).unwrap()).unwrap();
        prop_assert!(*v.last().unwrap() >= -1e-10);
        prop_assert!(v[0] <= 1.0 + 1e-10);
    }

    #[test]
    fn ingham_eigenvalue_in_unit_interval(t in 1.01f64..40.0, n in 1usize..10, k in 1u64..4) {
        let base = InghamConfig::consecutive(t, n).unwrap();
        let r = ingham_eigenvalue(&base).unwrap();
        // saturates at 1 in floating point when the band nearly fills the period
        prop_assert!(r.eigenvalue_used > 0.0 && r.eigenvalue_used <= 1.0);
        let dilated = InghamConfig::new(t, base.frequencies().iter().map(|f| f * k).collect()).unwrap();
        let d = ingham_eigenvalue(&dilated).unwrap();
        prop_assert!(d.eigenvalue_used > 0.0 && d.eigenvalue_used <= 1.0);
    }
}
