//! `poles`: the resonance pole lattice of one mode as JSON.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use dirac_coulomb_core::boundary::{resonance_poles, ChargeConfig};
use dirac_coulomb_core::harmonics::AngularMode;

use crate::args::Opts;
use crate::error::CliError;
use crate::manifest::{resolve_out_dir, RunManifest};

#[derive(Serialize)]
struct PoleEntry {
    m: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct PolesFile {
    z: f64,
    kappa: i32,
    nu: f64,
    poles: Vec<PoleEntry>,
    note: Option<String>,
}

pub fn run(args: &[String]) -> Result<(), CliError> {
    let opts = Opts::parse(args, &["Z", "kappa", "m-max", "out"])?;
    let z = opts.require_f64("Z")?;
    let kappa = opts.require_i32("kappa")?;
    let m_max = opts.parse_usize("m-max")?.unwrap_or(2);

    let charge = ChargeConfig::new(z)?;
    let mode = AngularMode::new(kappa, 1).map_err(|e| CliError::Usage(e.to_string()))?;
    let poles = resonance_poles(&charge, &mode, m_max);

    let file = PolesFile {
        z,
        kappa,
        nu: charge.nu(kappa),
        poles: poles
            .iter()
            .enumerate()
            .map(|(m, p)| PoleEntry { m, re: p.re, im: p.im })
            .collect(),
        note: if z == 0.0 {
            Some(
                "At Z = 0 the gamma-factor poles of the inverse cancel: the pole set is empty \
                 (tail-free propagation)."
                    .to_string(),
            )
        } else {
            None
        },
    };

    let out_dir = resolve_out_dir(opts.get("out"));
    fs::create_dir_all(&out_dir)?;
    let path = out_dir.join("poles.json");
    write_json(&path, &file)?;

    let mut manifest = RunManifest::new(
        "poles",
        json!({ "Z": z, "kappa": kappa, "m_max": m_max }),
    );
    manifest.add_output(&path)?;
    manifest.write(&out_dir)?;

    println!("poles: Z={z} kappa={kappa} -> {} pole(s)", file.poles.len());
    for p in &file.poles {
        println!("  m={}: sigma = {} + {}i", p.m, p.re, p.im);
    }
    if let Some(n) = &file.note {
        println!("  note: {n}");
    }
    println!("wrote {}", path.display());
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numerical(format!("serialization: {e}")))?;
    body.push('\n');
    fs::write(path, body)?;
    Ok(())
}
