//! `polycub` — build, export, and apply polyharmonic cubature rules on the
//! disc, and reproduce the benchmark tables for the built-in weights.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use polycub::bench::{reference_oracle, run_benchmark, TestFunction};
use polycub::cubature::{remarkable_inequality_check, CenterPolicy, CubatureRule};
use polycub::io::{
    format_float, read_rule_csv, read_rule_json, read_samples_csv, write_rule_csv,
    write_rule_json, LoadedRule,
};
use polycub::spline::RadialKnots;
use polycub::weight::{BuiltinWeight, WeightFourier};

#[derive(Parser)]
#[command(name = "polycub", version, about = "Weighted cubature rules on the planar disc")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hybrid cubature rule and write it to a file.
    Rule {
        /// Built-in weight id (w1, w2) or a path to a weight JSON file.
        #[arg(long)]
        weight: String,
        /// Gauss points per harmonic.
        #[arg(long = "N")]
        n: usize,
        /// Angular grid size (odd).
        #[arg(long = "M")]
        m: usize,
        /// Harmonic truncation degree.
        #[arg(long = "K")]
        k: Option<u32>,
        /// Number of sampling circles (uniform knots).
        #[arg(long = "N1")]
        n1: usize,
        /// Disc radius.
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long, value_enum, default_value_t = RuleFormat::Csv)]
        format: RuleFormat,
        /// Center handling: extrapolate the innermost spline piece (the
        /// benchmark-table behavior) or fold a center node in.
        #[arg(long, value_enum, default_value_t = CenterArg::Extrapolate)]
        center: CenterArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a rule file to a built-in test function or a samples file.
    Integrate {
        /// Rule file (.csv or .json, as written by `rule`).
        #[arg(long)]
        rule: PathBuf,
        /// Built-in test function f0..f4.
        #[arg(long = "fn", conflicts_with = "samples")]
        function: Option<String>,
        /// Samples CSV (m,s,value with a 0,0 center row).
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Reproduce a benchmark table over an N × M parameter grid.
    Bench {
        #[arg(long)]
        weight: String,
        #[arg(long = "fn")]
        function: String,
        /// Comma-separated list of N values.
        #[arg(long = "N", value_delimiter = ',', default_values_t = vec![10, 15, 25, 35, 50])]
        n_list: Vec<usize>,
        /// Comma-separated list of M values.
        #[arg(long = "M", value_delimiter = ',', default_values_t = vec![9, 25, 63, 83])]
        m_list: Vec<usize>,
        #[arg(long = "K")]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
        /// Recompute the reference by high-resolution quadrature instead of
        /// using the stored value.
        #[arg(long)]
        oracle: bool,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the nodes and weights of one per-harmonic Gaussian radial rule.
    Gauss {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the coefficient-stability inequality (lhs, rhs, slack).
    Check {
        #[arg(long)]
        weight: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "K")]
        k: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterArg {
    Extrapolate,
    Node,
}

impl From<CenterArg> for CenterPolicy {
    fn from(arg: CenterArg) -> Self {
        match arg {
            CenterArg::Extrapolate => CenterPolicy::Extrapolate,
            CenterArg::Node => CenterPolicy::CenterNode,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

/// Resolves `--weight` to a weight: a built-in id gets the requested
/// truncation, anything else is read as a weight JSON file.
fn resolve_weight(spec: &str, radius: f64, k_trunc: Option<u32>) -> polycub::Result<WeightFourier> {
    match BuiltinWeight::from_str(spec) {
        Ok(id) => {
            let k_trunc = k_trunc.unwrap_or(default_k(id));
            WeightFourier::builtin(id, radius, k_trunc)
        }
        Err(_) if std::path::Path::new(spec).exists() => WeightFourier::load(spec),
        Err(e) => Err(e),
    }
}

/// Default harmonic truncation: w1 ends at k = 1; w2 uses the K = 22 of the
/// benchmark tables.
fn default_k(id: BuiltinWeight) -> u32 {
    match id {
        BuiltinWeight::W1 => 1,
        BuiltinWeight::W2 => 22,
    }
}

fn load_rule(path: &PathBuf) -> polycub::Result<LoadedRule> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        read_rule_json(path)
    } else {
        read_rule_csv(path)
    }
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Rule {
            weight,
            n,
            m,
            k,
            n1,
            r,
            format,
            center,
            out,
        } => {
            let w = resolve_weight(&weight, r, k)?;
            let k = k.unwrap_or_else(|| {
                BuiltinWeight::from_str(&weight).map(default_k).unwrap_or(w.k_max())
            });
            let knots = RadialKnots::uniform(r, n1)?;
            let rule = CubatureRule::assemble_with_policy(&w, n, m, k, knots, center.into())?;
            match format {
                RuleFormat::Csv => write_rule_csv(&LoadedRule::from(&rule), &out)?,
                RuleFormat::Json => write_rule_json(&rule, &out)?,
            }
            eprintln!(
                "wrote {} ({} grid nodes + 1 center)",
                out.display(),
                rule.weights().len()
            );
        }
        Command::Integrate {
            rule,
            function,
            samples,
        } => {
            let loaded = load_rule(&rule)?;
            let value = match (function, samples) {
                (Some(name), None) => {
                    let f = TestFunction::from_str(&name)?;
                    loaded.integrate_fn(|x, y| f.eval(x, y))
                }
                (None, Some(path)) => {
                    let grid = read_samples_csv(&path)?;
                    loaded.integrate(&grid)?
                }
                _ => anyhow::bail!("pass exactly one of --fn or --samples"),
            };
            println!("{}", format_float(value));
        }
        Command::Bench {
            weight,
            function,
            n_list,
            m_list,
            k,
            format,
            oracle,
            out,
        } => {
            let f = TestFunction::from_str(&function)?;
            let w = resolve_weight(&weight, 1.0, k)?;
            let k = k.unwrap_or_else(|| {
                BuiltinWeight::from_str(&weight).map(default_k).unwrap_or(w.k_max())
            });
            let reference = if oracle {
                let id = BuiltinWeight::from_str(&weight)?;
                reference_oracle(f, id, w.radius(), 2000, 2000)
            } else {
                BuiltinWeight::from_str(&weight)
                    .ok()
                    .and_then(|id| f.reference(id))
                    .ok_or_else(|| {
                        anyhow::anyhow!(
                            "no stored reference for {} against {}; rerun with --oracle",
                            f.name(),
                            weight
                        )
                    })?
            };
            let table = run_benchmark(&w, f, &n_list, &m_list, k, reference)?;
            let rendered = match format {
                TableFormat::Md => table.to_markdown(),
                TableFormat::Csv => table.to_csv(),
                TableFormat::Json => {
                    let mut text = table.to_json()?;
                    text.push('\n');
                    text
                }
            };
            match out {
                Some(path) => std::fs::write(path, rendered)?,
                None => print!("{rendered}"),
            }
        }
        Command::Gauss {
            weight,
            k,
            ell,
            n,
            out,
        } => {
            let w = resolve_weight(&weight, 1.0, None)?;
            let idx = polycub::HarmonicIndex::new(k, ell)?;
            let profile = w.term(idx).ok_or_else(|| {
                anyhow::anyhow!("weight {weight} has no ({k},{ell}) term")
            })?;
            let rule = polycub::gauss::build_gauss_rule(idx, profile, w.radius(), n)?;
            let mut text = String::from("j,t,lambda\n");
            for (j, (t, lambda)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
                text.push_str(&format!(
                    "{},{},{}\n",
                    j + 1,
                    format_float(*t),
                    format_float(*lambda)
                ));
            }
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Check { weight, n, m, k } => {
            let w = resolve_weight(&weight, 1.0, k)?;
            let k = k.unwrap_or_else(|| {
                BuiltinWeight::from_str(&weight).map(default_k).unwrap_or(w.k_max())
            });
            let check = remarkable_inequality_check(&w, n, m, k)?;
            println!("lhs = {}", format_float(check.lhs));
            println!("rhs = {}", format_float(check.rhs));
            println!("slack = {}", format_float(check.slack));
            if check.slack < -1e-10 {
                anyhow::bail!("coefficient-stability inequality violated");
            }
        }
    }
    Ok(())
}
