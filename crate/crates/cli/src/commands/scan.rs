//! `scan`: resolvent-norm scan along a vertical line in the Mellin plane,
//! with CSV output and fitted pole locations.

use std::fs;

use serde::Serialize;
use serde_json::json;

use dirac_coulomb_core::boundary::{
    fit_pole_from_scan, peak_to_median, resonance_poles, scan_resolvent_norm, ChargeConfig,
    ModeSource, ScanPoint,
};
use dirac_coulomb_core::harmonics::AngularMode;
use dirac_coulomb_core::util::linspace;
use dirac_coulomb_core::C64;

use crate::args::Opts;
use crate::csvout::{fmt_f64, CsvWriter};
use crate::error::CliError;
use crate::manifest::{resolve_out_dir, RunManifest};

#[derive(Serialize)]
struct ScanSummary {
    z: f64,
    kappa: i32,
    sigma_re: f64,
    sigma_im_lo: f64,
    sigma_im_hi: f64,
    n_points: usize,
    n_failed: usize,
    peak_to_median: Option<f64>,
    fitted_pole: Option<FittedPole>,
    predicted_poles_in_range: Vec<(f64, f64)>,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct FittedPole {
    re: f64,
    im: f64,
    amplitude: f64,
}

pub fn run(args: &[String]) -> Result<(), CliError> {
    let opts = Opts::parse(
        args,
        &["Z", "kappa", "sigma-re", "sigma-im-range", "out", "threads"],
    )?;
    let z = opts.require_f64("Z")?;
    let kappa = opts.require_i32("kappa")?;
    let sigma_re = opts.parse_f64("sigma-re")?.unwrap_or(-z);
    let (im_lo, im_hi, n) = opts
        .parse_range("sigma-im-range")?
        .ok_or_else(|| CliError::Usage("missing required flag --sigma-im-range".into()))?;
    let threads = opts.parse_usize("threads")?.unwrap_or(1).max(1);

    let charge = ChargeConfig::new(z)?;
    let mode = AngularMode::new(kappa, 1).map_err(|e| CliError::Usage(e.to_string()))?;
    let src = ModeSource::bump_f1(0.5, 0.15, C64::new(1.0, 0.0))?;

    let path: Vec<C64> = linspace(im_lo, im_hi, n)
        .into_iter()
        .map(|t| C64::new(sigma_re, t))
        .collect();

    let points: Vec<ScanPoint> = if threads <= 1 {
        scan_resolvent_norm(&charge, &mode, &src, &path)
    } else {
        scan_parallel(&charge, &mode, &path, threads)
    };

    let out_dir = resolve_out_dir(opts.get("out"));
    fs::create_dir_all(&out_dir)?;

    let csv_path = out_dir.join("scan.csv");
    let mut csv = CsvWriter::create(&csv_path, &["sigma_re", "sigma_im", "norm"])?;
    let mut failures = Vec::new();
    for p in &points {
        let norm_field = match &p.outcome {
            Ok(n) => fmt_f64(*n),
            Err(e) => {
                failures.push(format!("sigma = {}: {e}", p.sigma));
                "nan".to_string()
            }
        };
        csv.row(&[fmt_f64(p.sigma.re), fmt_f64(p.sigma.im), norm_field])?;
    }
    csv.finish()?;

    let fitted = fit_pole_from_scan(&points);
    let predicted: Vec<(f64, f64)> = resonance_poles(&charge, &mode, 16)
        .into_iter()
        .filter(|p| p.im >= im_lo - 0.5 && p.im <= im_hi + 0.5)
        .map(|p| (p.re, p.im))
        .collect();

    let summary = ScanSummary {
        z,
        kappa,
        sigma_re,
        sigma_im_lo: im_lo,
        sigma_im_hi: im_hi,
        n_points: points.len(),
        n_failed: failures.len(),
        peak_to_median: peak_to_median(&points),
        fitted_pole: fitted.map(|f| FittedPole {
            re: f.sigma.re,
            im: f.sigma.im,
            amplitude: f.amplitude,
        }),
        predicted_poles_in_range: predicted,
        failures,
    };
    let json_path = out_dir.join("scan_fit.json");
    super::poles::write_json(&json_path, &summary)?;

    let mut manifest = RunManifest::new(
        "scan",
        json!({
            "Z": z, "kappa": kappa, "sigma_re": sigma_re,
            "sigma_im_range": [im_lo, im_hi, n], "threads": threads,
        }),
    );
    manifest.add_output(&csv_path)?;
    manifest.add_output(&json_path)?;
    manifest.write(&out_dir)?;

    println!(
        "scan: {} points, {} failed; peak/median = {}",
        summary.n_points,
        summary.n_failed,
        summary
            .peak_to_median
            .map(|r| format!("{r:.3}"))
            .unwrap_or_else(|| "n/a".into())
    );
    if let Some(f) = &summary.fitted_pole {
        println!("  fitted pole: sigma = {} + {}i (amplitude {:.3e})", f.re, f.im, f.amplitude);
    }
    println!("wrote {}", csv_path.display());
    Ok(())
}

/// Scan with a fixed-size thread pool; output order is independent of the
/// scheduling.
fn scan_parallel(
    charge: &ChargeConfig,
    mode: &AngularMode,
    path: &[C64],
    threads: usize,
) -> Vec<ScanPoint> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<ScanPoint>>> = Mutex::new((0..path.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| {
                // one source per worker; evaluations are pure
                let src = ModeSource::bump_f1(0.5, 0.15, C64::new(1.0, 0.0)).expect("source");
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= path.len() {
                        break;
                    }
                    let pts = scan_resolvent_norm(charge, mode, &src, &path[i..=i]);
                    let point = pts.into_iter().next().expect("one point");
                    results.lock().unwrap()[i] = Some(point);
                }
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|p| p.expect("all points computed"))
        .collect()
}
