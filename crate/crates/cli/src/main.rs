use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use supercurve::Config;
use supercurve_cli::{run, Command, Settings};

fn complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected RE,IM")?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t}: {e}"));
    Ok(Complex64::new(p(re)?, p(im)?))
}

#[derive(Parser, Debug)]
#[command(name = "supercurve", version, about = "Verify and explore the genus-1 supercurve family")]
struct Cli {
    /// Highest q-exponent kept in Eisenstein series.
    #[arg(long = "order-q", global = true, default_value_t = 16)]
    order_q: usize,
    /// Highest z-exponent kept in Weierstrass expansions.
    #[arg(long = "order-z", global = true, default_value_t = 20)]
    order_z: i32,
    /// Deepest basis element used by decompositions.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Modular parameter for numeric commands.
    #[arg(long, global = true, value_parser = complex, default_value = "0.3,1.2", allow_hyphen_values = true)]
    tau: Complex64,
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the full symbolic identity suite.
    Verify,
    /// Print the leading terms of a named series or expression.
    Expand {
        name: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Reduce s*EXPR to its class in the basis [s*Psi1], [s*Psi2].
    Reduce { expr: String },
    /// Compute the Gauss-Manin connection.
    Gm,
    /// Evaluate a function numerically.
    Eval {
        name: String,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Integrate dz and zeta1' dz over both cycles.
    Periods {
        #[arg(long = "z-base", value_parser = complex, default_value = "0.37,0.23", allow_hyphen_values = true)]
        z_base: Complex64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.order_z < 1 || cli.order_q < 1 || cli.tol <= 0.0 {
        eprintln!("error: orders and tolerance must be positive");
        return ExitCode::from(2);
    }
    let settings = Settings {
        config: Config {
            nz: cli.order_z,
            nq: cli.order_q,
            depth: cli.depth,
        },
        tau: cli.tau,
        tol: cli.tol,
    };
    let command = match cli.command {
        Cmd::Verify => Command::Verify,
        Cmd::Expand { name, terms } => Command::Expand { name, terms },
        Cmd::Reduce { expr } => Command::Reduce { expr },
        Cmd::Gm => Command::Gm,
        Cmd::Eval { name, z } => Command::Eval { name, z },
        Cmd::Periods { z_base } => Command::Periods { z_base },
    };
    match run(&command, &settings) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if let Some(path) = cli.json {
                let body = serde_json::to_string_pretty(&outcome.report).expect("serializable");
                if let Err(e) = std::fs::write(&path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(outcome.report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
