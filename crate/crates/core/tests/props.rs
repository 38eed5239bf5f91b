//! Property-based invariants over randomized inputs.

use proptest::prelude::*;

use dirac_coulomb_core::boundary::{reduce_to_hypergeometric, ChargeConfig, Region};
use dirac_coulomb_core::clifford::{alpha_r, Matrix4};
use dirac_coulomb_core::decay::{fit_power_law, DecaySample};
use dirac_coulomb_core::harmonics::AngularMode;
use dirac_coulomb_core::specfun::{gamma_c, hyp2f1, HypergeomParams};
use dirac_coulomb_core::util::linspace;
use dirac_coulomb_core::C64;

fn unit_direction() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(ct, phi)| {
        let st = (1.0 - ct * ct).sqrt();
        [st * phi.cos(), st * phi.sin(), ct]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn alpha_r_is_hermitian_involution(d in unit_direction()) {
        let m = alpha_r(d).unwrap();
        prop_assert!((m * m).max_abs_diff(&Matrix4::identity()) < 1e-14);
        prop_assert!(m.max_abs_diff(&m.adjoint()) < 1e-14);
        // traceless, so the +-1 eigenvalues balance
        prop_assert!(m.trace().norm() < 1e-14);
    }

    #[test]
    fn gamma_recurrence(re in 0.2f64..20.0, im in -20.0f64..20.0) {
        let z = C64::new(re, im);
        let lhs = gamma_c(z + C64::new(1.0, 0.0)).unwrap();
        let rhs = z * gamma_c(z).unwrap();
        prop_assert!((lhs - rhs).norm() / rhs.norm() < 1e-12);
    }

    #[test]
    fn gamma_conjugation_symmetry(re in 0.3f64..15.0, im in 0.1f64..15.0) {
        // Gamma(conj z) = conj Gamma(z)
        let z = C64::new(re, im);
        let a = gamma_c(z).unwrap();
        let b = gamma_c(z.conj()).unwrap();
        prop_assert!((a.conj() - b).norm() / a.norm() < 1e-13);
    }

    #[test]
    fn hyp2f1_tends_to_one_at_origin(
        ar in -2.0f64..2.0, ai in -2.0f64..2.0,
        br in -2.0f64..2.0, bi in -2.0f64..2.0,
        cr in 0.4f64..3.0,
    ) {
        let p = HypergeomParams::new(C64::new(ar, ai), C64::new(br, bi), C64::new(cr, 0.0)).unwrap();
        let v = hyp2f1(&p, 1e-13).unwrap();
        prop_assert!((v - C64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn hyp2f1_binomial_case(ar in -1.5f64..1.5, ai in -1.5f64..1.5, x in 0.05f64..0.55) {
        // F(a, b; b; x) = (1-x)^(-a); b chosen generic positive.
        let a = C64::new(ar, ai);
        let b = C64::new(1.7, 0.0);
        let p = HypergeomParams::new(a, b, b).unwrap();
        let v = hyp2f1(&p, x).unwrap();
        let exact = (C64::new((1.0 - x).ln(), 0.0) * (-a)).exp();
        prop_assert!((v - exact).norm() / exact.norm() < 1e-10);
    }

    #[test]
    fn reduction_parameters_satisfy_defining_relations(
        z in -0.45f64..0.45,
        kappa in prop::sample::select(vec![1i32, -1, 2, -2, 3, -3]),
        sr in -2.0f64..2.0,
        si in -2.0f64..2.0,
    ) {
        let cfg = ChargeConfig::new(z).unwrap();
        let mode = AngularMode::new(kappa, 1).unwrap();
        let sigma = C64::new(sr, si);
        let (pf, pg) = reduce_to_hypergeometric(&cfg, &mode, sigma, Region::CPlus);
        let nu = cfg.nu(kappa);
        // c = 1 + 2 nu, b - a = i sigma + 2 i Z, a b at sigma-independent part
        prop_assert!((pf.c.re - (1.0 + 2.0 * nu)).abs() < 1e-12);
        prop_assert!(pf.c.im.abs() < 1e-14);
        let diff = pf.b - pf.a - C64::new(0.0, 1.0) * sigma - C64::new(0.0, 2.0 * z);
        prop_assert!(diff.norm() < 1e-12);
        prop_assert!((pg.a - pf.a - 1.0).norm() < 1e-14);
        // a * conj(a) = nu^2 + Z^2 = kappa^2 (Clifford square of the mode)
        prop_assert!(((pf.a * pf.a.conj()).re - (kappa * kappa) as f64).abs() < 1e-10);
    }

    #[test]
    fn fit_is_scale_and_phase_covariant(
        exponent in 0.5f64..3.5,
        slope in -0.4f64..0.4,
        lambda in 0.5f64..4.0,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let s_values = linspace(15.0, 120.0, 60);
        let rot = C64::new(0.0, theta).exp();
        let base: Vec<DecaySample> = s_values.iter().map(|&s| DecaySample {
            s,
            value: s.powf(-exponent) * C64::new(0.0, slope * s.ln()).exp(),
        }).collect();
        let transformed: Vec<DecaySample> = base.iter().map(|p| DecaySample {
            s: lambda * p.s,
            value: rot * p.value,
        }).collect();
        let f0 = fit_power_law(&base, (15.0, 120.0)).unwrap();
        let f1 = fit_power_law(&transformed, (15.0 * lambda, 120.0 * lambda)).unwrap();
        prop_assert!((f0.exponent - exponent).abs() < 1e-8);
        prop_assert!((f0.phase_slope - slope).abs() < 1e-8);
        prop_assert!((f1.exponent - f0.exponent).abs() < 1e-8);
        prop_assert!((f1.phase_slope - f0.phase_slope).abs() < 1e-8);
    }
}
