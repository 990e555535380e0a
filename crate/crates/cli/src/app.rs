//! Command-line front end.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use troplag::constructions::{rp2_curve, trop_family, visible_segment, ThresholdRule};
use troplag::{BaseDiagram, IntVec, RatPoint, Rational};

use crate::format::{parse, parse_intvec, parse_point, parse_rational, serialize, Document};
use crate::report::{
    audin_report, genus_bound_report, homology_report, squeeze_report, topology_report,
    triangle_report, validate_report, Report,
};
use crate::svg::render;

#[derive(Debug, Parser)]
#[command(
    name = "troplag",
    version,
    about = "Tropical Lagrangians in almost toric base diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Threshold {
    Statement,
    Proof,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every curve of a document against its diagram.
    Validate { file: String },
    /// Multiplicities, end kinds, Euler characteristic and surface type.
    Topology { file: String },
    /// Line-sweep parities, mod-2 class and Pontryagin square.
    Homology { file: String },
    /// Pontryagin square against Euler characteristic mod 4.
    Audin { file: String },
    /// Strict triangle inequalities on blow-up sizes.
    Triangle {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Print the family document for a given ell.
    GenFamily { ell: u64 },
    /// Print a vertexless segment document in a width x height rectangle.
    GenVisible {
        width: String,
        height: String,
        #[arg(long, default_value = "(2,1)", allow_hyphen_values = true)]
        dir: String,
        /// Defaults to the centre of the rectangle.
        #[arg(long, allow_hyphen_values = true)]
        anchor: Option<String>,
    },
    /// Print the single-vertex curve document in X_abc of size s.
    GenRp2 {
        a: String,
        b: String,
        c: String,
        s: String,
    },
    /// Upper bound on the nonorientable genus in (S2 x S2, omega_lambda).
    GenusBound {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "statement")]
        threshold: Threshold,
    },
    /// Whether the visible Klein bottle fits over an interval of length I.
    Squeeze {
        #[arg(allow_hyphen_values = true)]
        interval: String,
    },
    /// Draw a document as SVG.
    Render {
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            code: 2,
        }
    }

    fn check_failed(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("{}\n", msg.into()),
            code: 1,
        }
    }
}

impl From<Report> for Outcome {
    fn from(r: Report) -> Self {
        Outcome {
            stdout: r.text,
            stderr: String::new(),
            code: r.status.exit_code(),
        }
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<Document, Outcome> {
    let mut text = String::new();
    let read = if file == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| Outcome::input_error(format!("{file}: {e}")))?;
    parse(&text).map_err(|e| Outcome::input_error(format!("{file}: {e}")))
}

fn rational(name: &str, s: &str) -> Result<Rational, Outcome> {
    parse_rational(s).map_err(|e| Outcome::input_error(format!("{name}: {e}")))
}

fn emit(doc: &Document) -> Outcome {
    Outcome::ok(serialize(doc))
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Outcome> {
    Ok(match command {
        Command::Validate { file } => validate_report(&load(&file, stdin)?).into(),
        Command::Topology { file } => topology_report(&load(&file, stdin)?).into(),
        Command::Homology { file } => homology_report(&load(&file, stdin)?).into(),
        Command::Audin { file } => audin_report(&load(&file, stdin)?).into(),
        Command::Triangle { a, b, c } => triangle_report(
            &rational("a", &a)?,
            &rational("b", &b)?,
            &rational("c", &c)?,
        )
        .into(),
        Command::GenFamily { ell } => {
            let f = trop_family(ell).map_err(|e| Outcome::input_error(e.to_string()))?;
            emit(&Document::new(f.diagram).with_curve(format!("family{ell}"), f.curve))
        }
        Command::GenVisible {
            width,
            height,
            dir,
            anchor,
        } => {
            let (w, h) = (rational("width", &width)?, rational("height", &height)?);
            let dir: IntVec =
                parse_intvec(&dir).map_err(|e| Outcome::input_error(format!("--dir: {e}")))?;
            let anchor = match anchor {
                Some(a) => {
                    parse_point(&a).map_err(|e| Outcome::input_error(format!("--anchor: {e}")))?
                }
                None => {
                    let two = Rational::from_integer(2.into());
                    RatPoint::new(&w / &two, &h / &two)
                }
            };
            let d =
                BaseDiagram::rectangle(w, h).map_err(|e| Outcome::input_error(e.to_string()))?;
            match visible_segment(&d, dir, &anchor) {
                Ok(curve) => emit(&Document::new(d).with_curve("visible", curve)),
                Err(troplag::Error::DoesNotFit(m)) => {
                    Outcome::check_failed(format!("does not fit: {m}"))
                }
                Err(e) => Outcome::input_error(e.to_string()),
            }
        }
        Command::GenRp2 { a, b, c, s } => {
            let (a, b, c, s) = (
                rational("a", &a)?,
                rational("b", &b)?,
                rational("c", &c)?,
                rational("s", &s)?,
            );
            match rp2_curve(a, b, c, s) {
                Ok((d, curve)) => {
                    let mut doc = Document::new(d).with_curve("rp2", curve);
                    doc.curves[0].class = Some(vec![1, 1, 1]);
                    emit(&doc)
                }
                Err(troplag::Error::DegenerateConstruction(m)) => {
                    Outcome::check_failed(format!("degenerate: {m}"))
                }
                Err(e) => Outcome::input_error(e.to_string()),
            }
        }
        Command::GenusBound { lambda, threshold } => {
            let rule = match threshold {
                Threshold::Statement => ThresholdRule::Statement,
                Threshold::Proof => ThresholdRule::Proof,
            };
            genus_bound_report(&rational("lambda", &lambda)?, rule).into()
        }
        Command::Squeeze { interval } => squeeze_report(&rational("interval", &interval)?).into(),
        Command::Render { file, output } => {
            let svg = render(&load(&file, stdin)?);
            match output {
                None => Outcome::ok(svg),
                Some(path) => {
                    std::fs::write(&path, svg)
                        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))?;
                    Outcome::ok(format!("wrote {}\n", path.display()))
                }
            }
        }
    })
}

/// Runs the command line `args` (program name first), reading `-` from `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    execute(cli.command, stdin).unwrap_or_else(|o| o)
}
