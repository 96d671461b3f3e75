//! Property-based tests for the closed-form layers: extended-real exponent
//! arithmetic, the Gaussian oracle, and state construction. Grid-level
//! numerics are covered by the unit and acceptance suites.

use proptest::prelude::*;

use num_complex::Complex64 as C64;
use phasespace_core::fock::StateKind;
use phasespace_core::gaussian::{bbl_bound, bbl_constant, gauss_convolve, gauss_pnorm, ExponentTriple, GaussianFn};
use phasespace_core::inequality::ExponentPair;
use phasespace_core::{DensityMatrix, Ext, FockCutoff};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `C_p * C_{p'} = 1` for every p, and `C_p <= 1` on [1, 2].
    #[test]
    fn bbl_constant_conjugate_product(p in 1.0f64..40.0) {
        let c = bbl_constant(Ext::Finite(p)).unwrap();
        let cc = bbl_constant(Ext::Finite(p).conjugate()).unwrap();
        prop_assert!((c * cc - 1.0).abs() < 1e-12);
        if p <= 2.0 {
            prop_assert!(c <= 1.0 + 1e-15);
        }
    }

    /// The entropy-relation exponent pair satisfies `1 + 1/r = 1/2 + 1/q`
    /// exactly in extended-real arithmetic.
    #[test]
    fn exponent_pair_identity(r in 2.0f64..100.0) {
        let pair = ExponentPair::from_r(Ext::Finite(r)).unwrap();
        let q = pair.q.value();
        prop_assert!((1.0 + 1.0 / r - 0.5 - 1.0 / q).abs() < 1e-14);
        prop_assert!((1.0..=2.0).contains(&q));
    }

    /// Young's inequality holds for arbitrary centred Gaussians, with the
    /// sharp constant from the oracle.
    #[test]
    fn young_inequality_for_gaussians(
        a in 0.2f64..5.0,
        b in 0.2f64..5.0,
        p in 1.05f64..3.0,
        q_frac in 0.05f64..0.95,
    ) {
        // choose q so that 1/r = 1/p + 1/q - 1 stays in (0, 1]
        let inv_q = (1.0 - 1.0 / p) + q_frac * (1.0 / p);
        let q = 1.0 / inv_q;
        let t = ExponentTriple::from_pq(Ext::Finite(p), Ext::Finite(q)).unwrap();
        for dims in [1u8, 2] {
            let f = if dims == 1 { GaussianFn::centred_1d(1.0, a) } else { GaussianFn::standard(a) };
            let g = if dims == 1 { GaussianFn::centred_1d(1.0, b) } else { GaussianFn::standard(b) };
            let lhs = gauss_pnorm(&gauss_convolve(&f, &g).unwrap(), t.r).unwrap();
            let rhs = bbl_bound(
                gauss_pnorm(&f, t.p).unwrap(),
                gauss_pnorm(&g, t.q).unwrap(),
                t,
                dims,
            )
            .unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12), "dims {dims}: {lhs} > {rhs}");
        }
    }

    /// Riesz-Thorin interpolation between the p = 1 and p = inf endpoints:
    /// `||f||_p <= ||f||_1^{1/p} ||f||_inf^{1-1/p}`.
    #[test]
    fn gauss_pnorm_interpolation(a in 0.2f64..5.0, p in 1.0f64..10.0) {
        let f = GaussianFn::standard(a);
        let np = gauss_pnorm(&f, Ext::Finite(p)).unwrap();
        let n1 = gauss_pnorm(&f, Ext::Finite(1.0)).unwrap();
        let ninf = gauss_pnorm(&f, Ext::Inf).unwrap();
        let bound = n1.powf(1.0 / p) * ninf.powf(1.0 - 1.0 / p);
        prop_assert!(np <= bound * (1.0 + 1e-12));
    }

    /// Every two-component mixture builds into a valid density matrix:
    /// unit trace, purity in (0, 1], mean occupation within the cutoff.
    #[test]
    fn mixtures_build_valid_states(
        w in 0.05f64..0.95,
        m in 0usize..6,
        re in -1.0f64..1.0,
        im in -1.0f64..1.0,
    ) {
        let kind = StateKind::Mixture {
            components: vec![
                (w, StateKind::Fock { m }),
                (1.0 - w, StateKind::coherent(C64::new(re, im))),
            ],
        };
        let rho = DensityMatrix::build(&kind, FockCutoff::new(31)).unwrap();
        let purity = rho.purity();
        prop_assert!(purity > 0.0 && purity <= 1.0 + 1e-12);
        let n_mean = rho.mean_occupation();
        prop_assert!(n_mean >= -1e-12 && n_mean <= 31.0);
    }

    /// Displacement leaves purity and adds |beta|^2-plus-cross-term to the
    /// mean occupation -- checked against the closed form for coherent input.
    #[test]
    fn coherent_state_moments(re in -1.5f64..1.5, im in -1.5f64..1.5) {
        let alpha = C64::new(re, im);
        let rho = DensityMatrix::build(&StateKind::coherent(alpha), FockCutoff::new(63)).unwrap();
        prop_assert!((rho.purity() - 1.0).abs() < 1e-10);
        prop_assert!((rho.mean_occupation() - alpha.norm_sqr()).abs() < 1e-9);
    }
}
