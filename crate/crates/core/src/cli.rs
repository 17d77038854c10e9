//! The `graphdesign` command-line tool.
//!
//! Every subcommand prints one JSON report to stdout. Commands that build a
//! graph (`embed`, `from-basis`, `barbell`) write the graph file to `--out`;
//! the others write their report there instead of stdout when it is given.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 verification failure,
//! 3 guard exceeded, 4 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructors::{
    barbell_graph, certify, graph_from_partitioned_basis, graph_from_partitioned_basis_with_lambda,
    graph_from_polytope, reduction, DEFAULT_ALPHA,
};
use crate::designs::{
    enumerate_minimal_designs, find_design_lp, verify_design, EnumerationOptions, DEFAULT_DESIGN_TOL,
};
use crate::error::{Error, Result};
use crate::io::{self, GraphFile};
use crate::polytope::FacetOptions;
use crate::spectral::{spectrum_of, EigenspaceOrdering, SpectralData, DEFAULT_GROUP_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "graphdesign",
    version,
    about = "Graphical designs, eigenpolytopes and graph constructions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file (graph file for constructions, report otherwise).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grouped Laplacian spectrum of a graph file.
    Spectrum {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GROUP_TOL)]
        group_tol: f64,
    },
    /// Find, enumerate or verify positively weighted k-designs.
    Design {
        #[command(subcommand)]
        mode: DesignMode,
    },
    /// Build a graph with the polytope as an eigenpolytope, plus a facet
    /// certificate.
    Embed {
        polytope: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[command(flatten)]
        guards: FacetGuards,
    },
    /// Decide simpliciality of a polytope through minimal 2-designs.
    Reduce {
        polytope: PathBuf,
        #[command(flatten)]
        guards: FacetGuards,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long)]
        max_support: Option<usize>,
    },
    /// Build a graph whose eigenspaces are the parts of a basis file.
    FromBasis {
        basis: PathBuf,
        #[arg(long, conflicts_with = "lambda_file")]
        eps: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        /// Explicit eigenvalues for the non-constant rows.
        #[arg(long)]
        lambda_file: Option<PathBuf>,
    },
    /// Barbell graph on 2n vertices with its closed-form spectrum.
    Barbell {
        n: usize,
        /// Bridge weight.
        #[arg(long, default_value_t = 1.0)]
        w: f64,
    },
}

#[derive(Debug, Args)]
pub struct FacetGuards {
    /// Largest point count for facet enumeration.
    #[arg(long = "max-points", default_value_t = 20)]
    pub max_points: usize,
    #[arg(long, default_value_t = 8)]
    pub max_dim: usize,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// `asc` or a comma-separated permutation of 1..m starting with 1.
    #[arg(long, default_value = "asc")]
    pub ordering: String,
    #[arg(long, default_value_t = DEFAULT_GROUP_TOL)]
    pub group_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum DesignMode {
    /// One design from the LP.
    Find {
        #[command(flatten)]
        common: DesignArgs,
    },
    /// All minimal designs, breadth-first by support size.
    Enumerate {
        #[command(flatten)]
        common: DesignArgs,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long)]
        max_support: Option<usize>,
    },
    /// Check a weight vector (`--weights FILE`) or the uniform weighting of a
    /// vertex set (`--support 1,4`).
    Verify {
        #[command(flatten)]
        common: DesignArgs,
        #[arg(long, required_unless_present = "support")]
        weights: Option<PathBuf>,
        #[arg(long, conflicts_with = "weights")]
        support: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DESIGN_TOL)]
        design_tol: f64,
    },
}

/// What a command produced: the report, and a graph file for constructions.
#[derive(Debug)]
pub struct Output {
    pub report: String,
    pub graph: Option<String>,
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParams(format!("{name} must be positive, got {x}")))
    }
}

fn at_least_one(name: &str, x: usize) -> Result<usize> {
    if x >= 1 {
        Ok(x)
    } else {
        Err(Error::InvalidParams(format!("{name} must be at least 1")))
    }
}

fn facet_options(g: &FacetGuards) -> Result<FacetOptions> {
    Ok(FacetOptions {
        max_n: at_least_one("max-points", g.max_points)?,
        max_dim: at_least_one("max-dim", g.max_dim)?,
        ..Default::default()
    })
}

fn load_design_input(a: &DesignArgs) -> Result<(SpectralData, EigenspaceOrdering)> {
    let g = io::load_graph(&a.graph)?;
    let s = spectrum_of(&g, positive("group-tol", a.group_tol)?)?;
    let ord = EigenspaceOrdering::parse(&a.ordering, s.m())?;
    Ok((s, ord))
}

fn read_text(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

/// Runs one parsed command without touching stdout or the `--out` file.
pub fn execute(cli: &Cli) -> Result<Output> {
    let report_only = |report: String| Output { report, graph: None };
    match &cli.command {
        Command::Spectrum { graph, group_tol } => {
            let g = io::load_graph(graph)?;
            let s = spectrum_of(&g, positive("group-tol", *group_tol)?)?;
            Ok(report_only(io::to_json(&io::SpectrumReport::new(&s))?))
        }
        Command::Design { mode } => match mode {
            DesignMode::Find { common } => {
                let (s, ord) = load_design_input(common)?;
                let d = find_design_lp(&s, &ord, common.k)?;
                Ok(report_only(io::to_json(&io::DesignReport::new(&d))?))
            }
            DesignMode::Enumerate {
                common,
                max_n,
                max_support,
            } => {
                let (s, ord) = load_design_input(common)?;
                let opts = EnumerationOptions {
                    max_support: max_support.map(|m| at_least_one("max-support", m)).transpose()?,
                    max_n: at_least_one("max-n", *max_n)?,
                };
                let e = enumerate_minimal_designs(&s, &ord, common.k, &opts)?;
                Ok(report_only(io::to_json(&io::EnumerationReport::new(&e))?))
            }
            DesignMode::Verify {
                common,
                weights,
                support,
                design_tol,
            } => {
                let (s, ord) = load_design_input(common)?;
                let a = match (weights, support) {
                    (Some(path), _) => io::parse_weights(&read_text(path)?)?,
                    (None, Some(text)) => {
                        let mut a = vec![0.0; s.n()];
                        for i in io::parse_label_set(text, s.n())? {
                            a[i] = 1.0;
                        }
                        a
                    }
                    (None, None) => return Err(Error::InvalidInput("need --weights or --support".into())),
                };
                let d = verify_design(&s, &ord, common.k, &a, positive("design-tol", *design_tol)?)?;
                Ok(report_only(io::to_json(&io::DesignReport::new(&d))?))
            }
        },
        Command::Embed {
            polytope,
            eps,
            alpha,
            guards,
        } => {
            let p = io::load_polytope(polytope)?;
            let e = graph_from_polytope(&p, *eps, *alpha)?;
            let cert = certify(&p, &e, &facet_options(guards)?)?;
            let report = io::EmbedReport {
                construction: io::ConstructionReport::new(&e.construction),
                certificate: io::CertificateReport::new(&cert),
            };
            let graph = io::to_json(&GraphFile::from_graph(&e.construction.graph))?;
            if !cert.equivalent {
                return Err(Error::InvalidInput(format!(
                    "embedded eigenpolytope is not equivalent to the input\n{}",
                    io::to_json(&report)?
                )));
            }
            Ok(Output {
                report: io::to_json(&report)?,
                graph: Some(graph),
            })
        }
        Command::Reduce {
            polytope,
            guards,
            max_n,
            max_support,
        } => {
            let p = io::load_polytope(polytope)?;
            let enum_opts = EnumerationOptions {
                max_support: max_support.map(|m| at_least_one("max-support", m)).transpose()?,
                max_n: at_least_one("max-n", *max_n)?,
            };
            let r = reduction(&p, &facet_options(guards)?, &enum_opts)?;
            Ok(report_only(io::to_json(&io::ReductionSummary::new(&r))?))
        }
        Command::FromBasis {
            basis,
            eps,
            alpha,
            lambda_file,
        } => {
            let pb = io::load_basis(basis)?;
            let c = match lambda_file {
                Some(path) => graph_from_partitioned_basis_with_lambda(&pb, &io::parse_lambda(&read_text(path)?)?)?,
                None => graph_from_partitioned_basis(&pb, *eps, *alpha)?,
            };
            Ok(Output {
                report: io::to_json(&io::ConstructionReport::new(&c))?,
                graph: Some(io::to_json(&GraphFile::from_graph(&c.graph))?),
            })
        }
        Command::Barbell { n, w } => {
            let (g, cf) = barbell_graph(*n, *w)?;
            Ok(Output {
                report: io::to_json(&io::BarbellReport::new(*n, *w, &cf))?,
                graph: Some(io::to_json(&GraphFile::from_graph(&g))?),
            })
        }
    }
}

/// Parses `args`, runs the command, prints or writes results and returns
/// the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|out| deliver(&cli, out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn deliver(cli: &Cli, out: Output) -> Result<()> {
    match (&cli.out, out.graph) {
        (Some(path), Some(graph)) => {
            fs::write(path, graph)?;
            print!("{}", out.report);
        }
        (Some(path), None) => fs::write(path, out.report)?,
        (None, _) => print!("{}", out.report),
    }
    Ok(())
}
