//! Command-line driver for the Dirac-Coulomb mode toolkit.
//!
//! Subcommands:
//!   poles   --Z <z> --kappa <k> [--m-max <m>] [--out <dir>]
//!   scan    --Z <z> --kappa <k> --sigma-im-range lo:hi:n [--sigma-re <re>]
//!           [--threads <n>] [--out <dir>]
//!   evolve  --config <file.json> [overrides...] [--out <dir>]
//!   verify  <suite>   (clifford|harmonics|specfun|wronskian|solver|conservation|all)
//!
//! The default output directory is `$DIRAC_COULOMB_OUT` or `./out`.
//! Exit codes: 0 success, 1 usage error, 2 numerical failure,
//! 3 verification failure.

mod args;
mod commands;
mod config;
mod csvout;
mod error;
mod manifest;

use error::CliError;

const USAGE: &str = "\
dirac-coulomb <command> [flags]

commands:
  poles    resonance pole lattice of one angular mode (JSON)
  scan     resolvent-norm scan along a vertical Mellin line (CSV + JSON)
  evolve   time-domain mode evolution from a JSON config
  verify   run a self-check suite (clifford|harmonics|specfun|wronskian|solver|conservation|all)

common flags:
  --Z <z>                  Coulomb charge, |Z| < 1/2
  --kappa <k>              angular mode label, nonzero integer
  --mu <m>                 half-integer magnetic label (evolve)
  --m-max <m>              highest pole index (poles)
  --sigma-re <re>          real part of the scan line (default -Z)
  --sigma-im-range lo:hi:n scan line extent and point count
  --grid-n <n>             override the number of radial grid points (evolve)
  --dt <dt>                time step override (evolve)
  --t-final <t>            final time override (evolve)
  --window lo:hi           fit window override (evolve)
  --config <file>          JSON run configuration (evolve)
  --threads <n>            worker threads for scans
  --out <dir>              output directory (default $DIRAC_COULOMB_OUT or ./out)
";

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = argv.first() else {
        eprint!("{USAGE}");
        std::process::exit(1);
    };
    let rest = &argv[1..];
    let result: Result<(), CliError> = match command.as_str() {
        "poles" => commands::poles::run(rest),
        "scan" => commands::scan::run(rest),
        "evolve" => commands::evolve::run(rest),
        "verify" => commands::verify::run(rest),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    };
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
