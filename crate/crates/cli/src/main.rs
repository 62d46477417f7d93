//! `coherent`: generate, check and decompose association schemes from the
//! command line.
//!
//! Scheme arguments take either a JSON file (anything containing `/` or
//! ending in `.json`) or a catalog spec such as `z7`, `one_class:4` or
//! `cayley:7:1,2,4|3,5,6`. Reports are JSON with a `schema_version` field.
//! Exit status: 0 pass, 1 verification failure, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use coherent::catalog::CatalogSpec;
use coherent::closure::{coherent_closure_with_parent, ColorPartition};
use coherent::equivalenced::{equiv_report, well_order, EquivError, WellOrderReport};
use coherent::idempotents::{theorem_decomposition_with, IdempotentError};
use coherent::io::{IoError, SchemeFile};
use coherent::report::envelope;
use coherent::terwilliger::{
    corner_report, terwilliger_algebra_with, u_subalgebra, verify_extension_equality,
};
use coherent::{wreath_product, Point, Scheme, Tolerances};

#[derive(Parser, Debug)]
#[command(name = "coherent", version, about = "Association schemes, Terwilliger algebras and their central idempotents")]
struct Cli {
    /// Seed for randomized idempotent extraction.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Certification tolerance for residuals.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "out", global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a catalog scheme: `gen one_class 4`, `gen cayley 7 1,2,4|3,5,6`, `gen z13`.
    Gen {
        kind: String,
        params: Vec<String>,
    },
    /// Check the coherent configuration axioms and print basic data.
    Validate { scheme: String },
    /// Coherent closure of a color matrix, optionally after isolating a point.
    Closure {
        input: String,
        #[arg(long)]
        point: Option<Point>,
    },
    /// Wreath product S ≀ T; with `-o` a `.map.json` sidecar is written too.
    Wreath {
        #[arg(long = "s")]
        s: String,
        #[arg(long = "t")]
        t: String,
    },
    /// Terwilliger algebra dimensions against one-point extension ranks.
    Terwilliger {
        scheme: String,
        /// Only this base point (default: every point).
        #[arg(long)]
        point: Option<Point>,
        /// Also report the U subalgebra and corner of LEFT ≀ scheme.
        #[arg(long)]
        left: Option<String>,
    },
    /// Valency check and product classification.
    Equiv {
        #[arg(long = "t")]
        t: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Well-ordered labeling of the one-point extension.
    Wellorder {
        #[arg(long = "t")]
        t: String,
        #[arg(long, default_value_t = 0)]
        y0: Point,
    },
    /// Build and certify every central primitive idempotent of T(S ≀ T).
    Verify {
        #[arg(long = "s")]
        s: String,
        #[arg(long = "t")]
        t: String,
        #[arg(long, default_value_t = 0)]
        x0: Point,
        #[arg(long, default_value_t = 0)]
        y0: Point,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Failed(_) => 1,
            _ => 2,
        }
    }
}

fn is_path(arg: &str) -> bool {
    arg.contains('/') || arg.ends_with(".json")
}

fn load_scheme(arg: &str) -> Result<Scheme, CliError> {
    if is_path(arg) {
        let cc = SchemeFile::read(Path::new(arg))?.to_config()?;
        return Scheme::new(cc).map_err(|e| CliError::Io(IoError::Invalid(e)));
    }
    let spec: CatalogSpec = arg.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    spec.build().map_err(|e| CliError::Usage(format!("{e}")))
}

fn gen_spec(kind: &str, params: &[String]) -> Result<String, CliError> {
    let need = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!("`gen {kind}` takes {k} parameter(s), got {}", params.len())))
        }
    };
    Ok(match kind {
        "one_class" | "group" => {
            need(1)?;
            format!("{kind}:{}", params[0])
        }
        "cayley" | "cayley_abelian" => {
            need(2)?;
            format!("cayley:{}:{}", params[0], params[1])
        }
        _ => {
            need(0)?;
            kind.to_string()
        }
    })
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.path {
            Some(p) => std::fs::write(p, text).map_err(|source| {
                CliError::Io(IoError::Access {
                    path: p.clone(),
                    source,
                })
            }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn report_text<T: Serialize>(command: &str, cli: &Cli, body: &T) -> String {
    let mut v = envelope(command, body);
    if let Value::Object(map) = &mut v {
        map.insert("seed".into(), json!(cli.seed));
        map.insert("tol".into(), json!(cli.tol));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
    s.push('\n');
    s
}

fn tolerances(cli: &Cli) -> Tolerances {
    Tolerances {
        certify: cli.tol,
        ..Tolerances::default()
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.map.json"))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let out = Output { path: cli.out.clone() };
    match &cli.command {
        Command::Gen { kind, params } => {
            let scheme = load_scheme(&gen_spec(kind, params)?)?;
            out.write(&SchemeFile::from_config(scheme.config()).to_json_string())
        }
        Command::Validate { scheme } => {
            let cc = if is_path(scheme) {
                match SchemeFile::read(Path::new(scheme))?.to_config() {
                    Ok(cc) => cc,
                    Err(IoError::Invalid(e)) => {
                        out.write(&report_text("validate", cli, &json!({"valid": false, "error": e.to_string()})))?;
                        return Err(CliError::Failed(e.to_string()));
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                load_scheme(scheme)?.into_config()
            };
            let fibers = cc.fibers();
            let mut body = json!({
                "valid": true,
                "n": cc.n(),
                "rank": cc.rank(),
                "homogeneous": cc.is_homogeneous(),
                "fiber_sizes": fibers.iter().map(Vec::len).collect::<Vec<_>>(),
                "semiregular": cc.is_semiregular(),
            });
            if let Ok(s) = Scheme::new(cc) {
                body["valencies"] = json!(s.valencies());
                body["tensor_identities_hold"] = json!(s.tensor_identity_violation().is_none());
            }
            out.write(&report_text("validate", cli, &body))
        }
        Command::Closure { input, point } => {
            let partition = if is_path(input) {
                SchemeFile::read(Path::new(input))?.to_partition()?
            } else {
                ColorPartition::from_config(load_scheme(input)?.config())
            };
            let original = partition.colors().to_vec();
            let partition = match point {
                Some(x) if *x >= partition.n() => {
                    return Err(CliError::Usage(format!("point {x} out of range for {} points", partition.n())))
                }
                Some(x) => partition.individualize(*x),
                None => partition,
            };
            let (cc, _) = coherent_closure_with_parent(&partition);
            // parents refer to the input coloring, before any point was isolated
            let parent: Vec<_> = (0..cc.rank())
                .map(|c| original[cc.colors().iter().position(|&k| k == c).expect("color used")])
                .collect();
            out.write(&SchemeFile::from_config(&cc).with_parent_color(parent).to_json_string())
        }
        Command::Wreath { s, t } => {
            let w = wreath_product(&load_scheme(s)?, &load_scheme(t)?);
            out.write(&SchemeFile::from_config(w.scheme().config()).to_json_string())?;
            if let Some(path) = &cli.out {
                let map = report_text("wreath-map", cli, &w.map());
                Output {
                    path: Some(sidecar_path(path)),
                }
                .write(&map)?;
            }
            Ok(())
        }
        Command::Terwilliger { scheme, point, left } => {
            let s = load_scheme(scheme)?;
            let points: Vec<Point> = match point {
                Some(p) => vec![*p],
                None => (0..s.n()).collect(),
            };
            let mut rows = Vec::new();
            for &p in &points {
                let ctx = terwilliger_algebra_with(&s, p, tolerances(cli))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let eq = verify_extension_equality(&ctx);
                rows.push(json!({
                    "scheme": scheme,
                    "point": p,
                    "dim_t": eq.terwilliger_dim,
                    "extension_rank": eq.extension_rank,
                    "equal": eq.equal,
                    "containment_residual": eq.containment_residual,
                }));
            }
            let mut body = json!({ "rows": rows });
            if let Some(left) = left {
                let w = wreath_product(&load_scheme(left)?, &s);
                let y0 = points[0];
                let u = u_subalgebra(&w, y0).map_err(|e| CliError::Usage(e.to_string()))?;
                let ctx = terwilliger_algebra_with(w.scheme(), w.point(0, y0), tolerances(cli))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let corner = corner_report(&w, &ctx, y0).map_err(|e| CliError::Usage(e.to_string()))?;
                body["u_subalgebra"] = json!(u.report);
                body["corner"] = json!(corner);
            }
            out.write(&report_text("terwilliger", cli, &body))
        }
        Command::Equiv { t, k } => {
            let s = load_scheme(t)?;
            let report = equiv_report(&s, *k).map_err(|e| match e {
                EquivError::TooFewPoints(_) => CliError::Usage(e.to_string()),
                other => CliError::Failed(other.to_string()),
            })?;
            out.write(&report_text("equiv", cli, &report))?;
            if report.equivalenced {
                Ok(())
            } else {
                Err(CliError::Failed(format!("not {k}-equivalenced")))
            }
        }
        Command::Wellorder { t, y0 } => {
            let s = load_scheme(t)?;
            let w = well_order(&s, *y0).map_err(|e| match e {
                EquivError::Relation(_) | EquivError::TooFewPoints(_) => CliError::Usage(e.to_string()),
                other => CliError::Failed(other.to_string()),
            })?;
            out.write(&report_text("wellorder", cli, &WellOrderReport::from(&w)))
        }
        Command::Verify { s, t, x0, y0 } => {
            let (s, t) = (load_scheme(s)?, load_scheme(t)?);
            let d = theorem_decomposition_with(&s, &t, *x0, *y0, cli.seed, tolerances(cli)).map_err(|e| match e {
                IdempotentError::Relation(_) => CliError::Usage(e.to_string()),
                other => CliError::Failed(other.to_string()),
            })?;
            out.write(&report_text("verify", cli, &d.report))?;
            if d.report.pass {
                Ok(())
            } else {
                Err(CliError::Failed("decomposition did not certify".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
