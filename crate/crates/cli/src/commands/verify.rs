//! `verify`: headless identity suites with deterministic per-check output.
//! Exit code 0 when every check passes, 3 otherwise.

use dirac_coulomb_core::boundary::{
    resonance_poles, scan_resolvent_norm, solve_inhomogeneous, solver_residual, ChargeConfig,
    HypergeomKernel, ModeSource, Region,
};
use dirac_coulomb_core::clifford::{alpha, alpha_r, beta, check_anticommutation, Matrix4, Spinor4};
use dirac_coulomb_core::evolution::{
    forward_solve, Component, EvolutionConfig, RadialField, RadialGrid, Scheme, Stepper,
};
use dirac_coulomb_core::harmonics::{
    omega, verify_laplacian_identity, AngularMode, SampledSpinorField, SpherePoint, SphereGrid,
};
use dirac_coulomb_core::specfun::{gamma_c, hyp2f1, HypergeomParams};
use dirac_coulomb_core::util::{linspace, rel_diff, SplitMix64};
use dirac_coulomb_core::C64;

use crate::error::CliError;

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub metric: f64,
    pub bound: f64,
}

fn check(name: &str, metric: f64, bound: f64) -> Check {
    Check { name: name.to_string(), pass: metric <= bound, metric, bound }
}

pub fn run(args: &[String]) -> Result<(), CliError> {
    let suite = args
        .first()
        .map(|s| s.as_str())
        .ok_or_else(|| CliError::Usage("verify needs a suite name (or `all`)".into()))?;
    if args.len() > 1 {
        return Err(CliError::Usage("verify takes exactly one suite name".into()));
    }

    let suites: Vec<&str> = match suite {
        "all" => vec!["clifford", "harmonics", "specfun", "wronskian", "solver", "conservation"],
        s @ ("clifford" | "harmonics" | "specfun" | "wronskian" | "solver" | "conservation") => {
            vec![s]
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite `{other}`; expected clifford|harmonics|specfun|wronskian|solver|conservation|all"
            )))
        }
    };

    let mut all_pass = true;
    for s in suites {
        let checks = match s {
            "clifford" => clifford_suite(),
            "harmonics" => harmonics_suite(),
            "specfun" => specfun_suite(),
            "wronskian" => wronskian_suite(),
            "solver" => solver_suite(),
            "conservation" => conservation_suite(),
            _ => unreachable!(),
        };
        for c in checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            println!(
                "{status} {s}.{} (deviation {:.3e}, bound {:.1e})",
                c.name, c.metric, c.bound
            );
            all_pass &= c.pass;
        }
    }
    if all_pass {
        println!("verify: all checks passed");
        Ok(())
    } else {
        Err(CliError::Verification("one or more checks failed".into()))
    }
}

fn clifford_suite() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("anticommutation", check_anticommutation(), 0.0));

    let b = beta();
    let mut beta_dev = (b * b).max_abs_diff(&Matrix4::identity());
    for j in 1..=3 {
        let aj = alpha(j);
        beta_dev = beta_dev.max((b * aj + aj * b).max_abs());
    }
    out.push(check("beta_alpha_relations", beta_dev, 0.0));

    let mut rng = SplitMix64::new(0xcafe_0001);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let ct: f64 = rng.uniform(-1.0, 1.0);
        let st = (1.0 - ct * ct).sqrt();
        let phi = rng.uniform(0.0, std::f64::consts::TAU);
        let d = [st * phi.cos(), st * phi.sin(), ct];
        let m = alpha_r(d).expect("unit direction");
        worst = worst
            .max((m * m).max_abs_diff(&Matrix4::identity()))
            .max(m.max_abs_diff(&m.adjoint()));
    }
    out.push(check("alpha_r_hermitian_involution", worst, 1e-14));
    out
}

fn harmonics_suite() -> Vec<Check> {
    let mut out = Vec::new();

    // alpha_r action rule, pointwise over a fixed 100-point sample.
    let mut rng = SplitMix64::new(0xcafe_0002);
    let mut worst = 0.0f64;
    for kappa in [1, -1, 2, -2] {
        for two_mu in AngularMode::admissible_two_mu(kappa) {
            let mode = AngularMode::new(kappa, two_mu).expect("mode");
            for _ in 0..25 {
                let ct: f64 = rng.uniform(-0.999, 0.999);
                let phi = rng.uniform(0.0, std::f64::consts::TAU);
                let p = SpherePoint::new(ct.acos(), phi);
                let up = omega(&mode, p).expect("omega");
                let lo = omega(&mode.conjugate(), p).expect("omega");
                let a = C64::new(0.6, -0.2);
                let bb = C64::new(-0.4, 0.9);
                let psi = Spinor4([a * up[0], a * up[1], bb * lo[0], bb * lo[1]]);
                let want = Spinor4([-bb * up[0], -bb * up[1], -a * lo[0], -a * lo[1]]);
                let got = alpha_r(p.unit_vector()).expect("unit").apply(&psi);
                worst = worst.max(got.sub(&want).norm_sq().sqrt());
            }
        }
    }
    out.push(check("alpha_r_action_rule", worst, 1e-10));

    // Orthonormality within and across kappa.
    let grid = SphereGrid::new(8);
    let mut modes = Vec::new();
    for kappa in [1, -1, 2, -2] {
        for two_mu in AngularMode::admissible_two_mu(kappa) {
            modes.push(AngularMode::new(kappa, two_mu).expect("mode"));
        }
    }
    let fields: Vec<SampledSpinorField> = modes
        .iter()
        .map(|m| SampledSpinorField::sample(&grid, |p| omega(m, p)).expect("sample"))
        .collect();
    let mut ortho_dev = 0.0f64;
    for (i, fi) in fields.iter().enumerate() {
        for (j, fj) in fields.iter().enumerate() {
            let g = fi.inner(fj, &grid);
            let want = if i == j { 1.0 } else { 0.0 };
            ortho_dev = ortho_dev.max((g - C64::new(want, 0.0)).norm());
        }
    }
    out.push(check("orthonormality", ortho_dev, 1e-10));

    // Laplacian identity on both blocks.
    let mut lap_dev = 0.0f64;
    for kappa in [1, -1, 2, -2] {
        let mode = AngularMode::new(kappa, 1).expect("mode");
        lap_dev = lap_dev.max(verify_laplacian_identity(&mode).expect("identity"));
    }
    out.push(check("laplacian_identity", lap_dev, 1e-12));
    out
}

fn specfun_suite() -> Vec<Check> {
    let mut out = Vec::new();

    let g_half = gamma_c(C64::new(0.5, 0.0)).expect("gamma");
    out.push(check(
        "gamma_half",
        (g_half.re - std::f64::consts::PI.sqrt()).abs(),
        1e-14,
    ));

    // Recurrence Gamma(z+1) = z Gamma(z) on a fixed complex sample.
    let mut rng = SplitMix64::new(0xcafe_0003);
    let mut rec_dev = 0.0f64;
    for _ in 0..50 {
        let z = C64::new(rng.uniform(0.2, 10.0), rng.uniform(-10.0, 10.0));
        let lhs = gamma_c(z + C64::new(1.0, 0.0)).expect("gamma");
        let rhs = z * gamma_c(z).expect("gamma");
        rec_dev = rec_dev.max(rel_diff(lhs, rhs));
    }
    out.push(check("gamma_recurrence", rec_dev, 1e-13));

    // 2F1(1,1;2;x) = -ln(1-x)/x on the series side of the split.
    let p_log = HypergeomParams::new(C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0))
        .expect("params");
    let mut log_dev = 0.0f64;
    for &x in &[0.1, 0.3, 0.5] {
        let v = hyp2f1(&p_log, x).expect("2f1");
        log_dev = log_dev.max((v.re + (1.0 - x).ln() / x).abs());
    }
    out.push(check("hyp2f1_log_case", log_dev, 1e-12));

    // Gauss summation at the unit argument via a short Richardson step.
    let a = C64::new(0.5, 0.0);
    let b = C64::new(0.25, 0.0);
    let c = C64::new(2.0, 0.0);
    let p = HypergeomParams::new(a, b, c).expect("params");
    let f1 = hyp2f1(&p, 1.0 - 2e-7).expect("2f1");
    let f2 = hyp2f1(&p, 1.0 - 1e-7).expect("2f1");
    let extrapolated = 2.0 * f2 - f1;
    let want = gamma_c(c).expect("g") * gamma_c(c - a - b).expect("g")
        / (gamma_c(c - a).expect("g") * gamma_c(c - b).expect("g"));
    out.push(check("gauss_summation", rel_diff(extrapolated, want), 1e-7));

    // Euler-transform consistency in the middle of the interval.
    let mut tested = 0;
    let mut euler_dev = 0.0f64;
    while tested < 25 {
        let a = C64::new(rng.uniform(-1.5, 2.0), rng.uniform(-1.5, 1.5));
        let b = C64::new(rng.uniform(-1.5, 2.0), rng.uniform(-1.5, 1.5));
        let c = C64::new(rng.uniform(0.3, 3.0), rng.uniform(-1.0, 1.0));
        let s = c - a - b;
        if (s - C64::new(s.re.round(), 0.0)).norm() < 0.05 {
            continue;
        }
        let (Ok(p), Ok(q)) = (HypergeomParams::new(a, b, c), HypergeomParams::new(c - a, c - b, c))
        else {
            continue;
        };
        let x = rng.uniform(0.4, 0.6);
        let Ok(direct) = hyp2f1(&p, x) else { continue };
        let pow = (C64::new((1.0 - x).ln(), 0.0) * s).exp();
        euler_dev = euler_dev.max(rel_diff(direct, pow * hyp2f1(&q, x).expect("2f1")));
        tested += 1;
    }
    out.push(check("series_transform_consistency", euler_dev, 1e-9));
    out
}

fn wronskian_suite() -> Vec<Check> {
    let mut rng = SplitMix64::new(0xb0de_0001);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z = rng.uniform(-0.45, 0.45);
        let kappa = *[1, -1, 2, -2].get((rng.next_u64() % 4) as usize).expect("kappa");
        let sigma = C64::new(rng.uniform(-1.5, 1.5), rng.uniform(-2.0, 2.0));
        let x = rng.uniform(0.05, 0.95);
        let cfg = ChargeConfig::new(z).expect("charge");
        let mode = AngularMode::new(kappa, 1).expect("mode");
        let kernel = HypergeomKernel::new(&cfg, &mode, sigma, Region::CPlus);
        let numeric = kernel.w1(x).expect("w1") * kernel.w4_deriv(x).expect("w4'")
            - kernel.w1_deriv(x).expect("w1'") * kernel.w4(x).expect("w4");
        let closed = kernel.wronskian_closed_form(x).expect("closed form");
        worst = worst.max(rel_diff(numeric, closed));
    }
    vec![check("closed_form_20_draws", worst, 1e-8)]
}

fn solver_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let cfg = ChargeConfig::new(0.3).expect("charge");
    let mode = AngularMode::new(1, 1).expect("mode");
    let src = ModeSource::bump_f1(0.5, 0.15, C64::new(1.0, 0.0)).expect("source");
    let xs = linspace(0.02, 0.98, 961);

    // Residual of the variation-of-parameters inverse for seeded sigma draws
    // away from the pole lattice.
    let poles = resonance_poles(&cfg, &mode, 8);
    let mut rng = SplitMix64::new(0xb0de_0002);
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while drawn < 10 {
        let sigma = C64::new(rng.uniform(-1.5, 1.5), rng.uniform(-3.0, 1.5));
        if poles.iter().any(|p| (sigma - p).norm() < 0.1) {
            continue;
        }
        let sol = solve_inhomogeneous(&cfg, &mode, sigma, &src, &xs).expect("solve");
        worst = worst.max(solver_residual(&cfg, &mode, sigma, &src, &sol));
        drawn += 1;
    }
    out.push(check("first_order_residual_10_draws", worst, 1e-6));

    // Pole localization against the lattice prediction.
    let predicted = poles[0];
    let path: Vec<C64> = linspace(predicted.im - 0.25, predicted.im + 0.25, 51)
        .into_iter()
        .map(|t| C64::new(-0.3, t + 3.1e-4))
        .collect();
    let points = scan_resolvent_norm(&cfg, &mode, &src, &path);
    let fit = dirac_coulomb_core::boundary::fit_pole_from_scan(&points);
    let gap = fit.map(|f| (f.sigma - predicted).norm()).unwrap_or(f64::INFINITY);
    out.push(check("pole_localization", gap, 0.02));
    out
}

fn conservation_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let grid = RadialGrid::staggered(226.0, 0.05).expect("grid");
    let mode = AngularMode::new(1, 1).expect("mode");
    let charge = ChargeConfig::new(0.3).expect("charge");
    let config = EvolutionConfig {
        charge,
        mode,
        dt: 0.025,
        t_final: 200.0,
        scheme: Scheme::CrankNicolson,
        snapshot_every: 0,
    };
    let data = RadialField::gaussian(grid, mode, Component::Plus, 7.0, 0.8, 8.0, C64::new(1.0, 0.0))
        .expect("data");
    let traj = forward_solve(&config, data, &[]).expect("forward solve");
    let drift = (traj.norms.last().expect("norms") - traj.initial_norm).abs() / traj.initial_norm;
    out.push(check("l2_drift_t200", drift, 1e-6));

    // Forward-backward reversibility over 20 steps.
    let f0 = RadialField::gaussian(grid, mode, Component::Plus, 7.0, 0.8, 8.0, C64::new(1.0, 0.0))
        .expect("data");
    let mut f = f0.clone();
    let mut fwd = Stepper::new(&charge, &mode, grid, 0.025, Scheme::CrankNicolson).expect("stepper");
    let mut bwd = Stepper::new(&charge, &mode, grid, -0.025, Scheme::CrankNicolson).expect("stepper");
    for _ in 0..20 {
        fwd.step(&mut f).expect("step");
    }
    for _ in 0..20 {
        bwd.step(&mut f).expect("step");
    }
    let mut dev = 0.0f64;
    for i in 0..grid.len() {
        dev = dev
            .max((f.u_minus[i] - f0.u_minus[i]).norm())
            .max((f.u_plus[i] - f0.u_plus[i]).norm());
    }
    out.push(check("reversibility_20_steps", dev, 1e-9));
    out
}
