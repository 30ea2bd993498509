//! The `csa` command line. Each subcommand reads one exchange document
//! (a path, or `-` for standard input) and writes one result.
//!
//! Exit status is 0 on success, 1 when the input fails validation and 2 on
//! usage errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::http::HeaderValue;
use clap::{Parser, Subcommand, ValueEnum};
use csa_core::order::{check_axiom, enumerate_semiorder_chains, rank_linear, rank_weak, Axiom};
use csa_core::pipeline::{
    rank_relation, scale_weights, to_json, validate_relation, RankReport, RelationDocument, ScaleInput,
};
use csa_core::trisection::{esv, topo_rank, trisect, trisect_with, Trisection, TrisectionParams};
use csa_core::weighting::{weigh_hierarchy, ComparisonMatrix, Hierarchy, WeightVector};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::api;
use crate::error::{ApiError, Kind};
use crate::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "csa", version, about = "Rank, weigh and trisect candidate disorders")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Session data directory (used by `serve`).
    #[arg(long, env = "CSA_DATA_DIR", default_value = "./data", global = true)]
    pub data_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankAs {
    Linear,
    Weak,
    Semiorder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrisectMethod {
    Percentile,
    Statistical,
    Manual,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the order axioms of a relation document and classify it.
    Validate {
        file: PathBuf,
        /// Report a single axiom, e.g. `ferrers`.
        #[arg(long)]
        property: Option<String>,
    },
    /// Rank a relation document by its class.
    Rank {
        file: PathBuf,
        /// Force one ranking method instead of the most specific class.
        #[arg(long = "as", value_enum)]
        method: Option<RankAs>,
        /// Print a topological order of the strict relation instead.
        #[arg(long, conflicts_with = "method")]
        topological: bool,
    },
    /// Weigh a hierarchy document, or a bare matrix as singleton clusters.
    Weigh { file: PathBuf },
    /// Weigh disorders through an importance scale document.
    Scale { file: PathBuf },
    /// Split values into high, medium and low regions.
    ///
    /// The input may be a relation document (trisected by ESV), a hierarchy
    /// or matrix (weighed first), the output of `weigh` or `scale`, or a
    /// plain `{id: value}` object.
    Trisect {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: TrisectMethod,
        #[arg(long, required_if_eq("method", "percentile"))]
        alpha: Option<f64>,
        #[arg(long, required_if_eq("method", "percentile"))]
        beta: Option<f64>,
        #[arg(long, required_if_eq("method", "statistical"), allow_negative_numbers = true)]
        k1: Option<f64>,
        #[arg(long, required_if_eq("method", "statistical"), allow_negative_numbers = true)]
        k2: Option<f64>,
        #[arg(long, required_if_eq("method", "manual"), allow_negative_numbers = true)]
        h: Option<f64>,
        #[arg(long, required_if_eq("method", "manual"), allow_negative_numbers = true)]
        l: Option<f64>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "CSA_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Origin allowed to make cross-origin requests; repeatable.
        #[arg(long = "allow-origin")]
        allow_origin: Vec<String>,
    },
}

/// What a subcommand produced: the report plus its exit status.
struct Output {
    json: String,
    plain: String,
    code: i32,
}

impl Output {
    fn ok<T: Serialize>(value: &T, plain: String) -> Self {
        Output {
            json: to_json(value),
            plain,
            code: 0,
        }
    }

    fn failing(mut self, failed: bool) -> Self {
        if failed {
            self.code = 1;
        }
        self
    }
}

fn read_input(file: &Path) -> Result<String, ApiError> {
    let unreadable = |e: std::io::Error| {
        ApiError::new(
            Kind::Usage,
            "INPUT_UNREADABLE",
            format!("cannot read {}: {e}", file.display()),
        )
    };
    if file == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(unreadable)?;
        return Ok(s);
    }
    std::fs::read_to_string(file).map_err(unreadable)
}

fn parse_as<T: DeserializeOwned>(file: &Path, text: &str) -> Result<T, ApiError> {
    serde_json::from_str(text).map_err(|e| ApiError::malformed(format!("cannot parse {}: {e}", file.display())))
}

fn from_value<T: DeserializeOwned>(file: &Path, v: Value) -> Result<T, ApiError> {
    serde_json::from_value(v).map_err(|e| ApiError::malformed(format!("cannot parse {}: {e}", file.display())))
}

/// A hierarchy, or a bare `{labels, rows}` matrix as one cluster per label.
fn hierarchy_input(file: &Path, text: &str) -> Result<Hierarchy, ApiError> {
    let v: Value = parse_as(file, text)?;
    if v.get("rows").is_some() {
        return Ok(Hierarchy::flat(from_value::<ComparisonMatrix>(file, v)?));
    }
    from_value(file, v)
}

fn trisect_values(file: &Path, text: &str) -> Result<WeightVector, ApiError> {
    let mut v: Value = parse_as(file, text)?;
    if v.get("disorders").is_some() {
        let doc: RelationDocument = from_value(file, v)?;
        return Ok(esv(&doc.relation()?).values);
    }
    if v.get("clusters").is_some() || v.get("rows").is_some() {
        return Ok(weigh_hierarchy(&hierarchy_input(file, text)?)?.global);
    }
    for key in ["global", "normalized", "values"] {
        if let Some(inner) = v.get_mut(key) {
            return from_value(file, inner.take());
        }
    }
    from_value(file, v)
}

fn execute(cli: &Cli) -> Result<Output, ApiError> {
    match &cli.command {
        Command::Validate { file, property } => {
            let rel = parse_as::<RelationDocument>(file, &read_input(file)?)?.relation()?;
            if let Some(p) = property {
                let ax: Axiom = p.parse()?;
                let r = check_axiom(&rel, ax);
                let failed = !r.holds;
                return Ok(Output::ok(&r, render::axiom(&r) + "\n").failing(failed));
            }
            let r = validate_relation(&rel);
            let failed = r.class == csa_core::order::OrderClass::Unclassified;
            Ok(Output::ok(&r, render::validate(&r)).failing(failed))
        }
        Command::Rank {
            file,
            method,
            topological,
        } => {
            let rel = parse_as::<RelationDocument>(file, &read_input(file)?)?.relation()?;
            if *topological {
                let order = topo_rank(&rel)?;
                return Ok(Output::ok(&order, render::order(&order)));
            }
            let r = match method {
                None => rank_relation(&rel)?,
                Some(m) => {
                    let class = csa_core::order::classify(&rel);
                    let ranking = match m {
                        RankAs::Linear => rank_linear(&rel)?,
                        RankAs::Weak => rank_weak(&rel)?,
                        RankAs::Semiorder => enumerate_semiorder_chains(&rel)?,
                    };
                    RankReport { class, ranking }
                }
            };
            Ok(Output::ok(&r, render::rank(&r)))
        }
        Command::Weigh { file } => {
            let w = weigh_hierarchy(&hierarchy_input(file, &read_input(file)?)?)?;
            Ok(Output::ok(&w, render::weights(&w)))
        }
        Command::Scale { file } => {
            let input: ScaleInput = parse_as(file, &read_input(file)?)?;
            let r = scale_weights(&input, &input.assigned_universe()?)?;
            Ok(Output::ok(&r, render::scale(&r)))
        }
        Command::Trisect {
            file,
            method,
            alpha,
            beta,
            k1,
            k2,
            h,
            l,
        } => {
            let values = trisect_values(file, &read_input(file)?)?;
            // clap enforces the flags each method needs
            let t: Trisection = match method {
                TrisectMethod::Percentile => trisect_with(
                    &values,
                    &TrisectionParams::Percentile {
                        alpha: alpha.unwrap_or_default(),
                        beta: beta.unwrap_or_default(),
                    },
                )?,
                TrisectMethod::Statistical => trisect_with(
                    &values,
                    &TrisectionParams::Statistical {
                        k1: k1.unwrap_or_default(),
                        k2: k2.unwrap_or_default(),
                    },
                )?,
                TrisectMethod::Manual => trisect(&values, h.unwrap_or_default(), l.unwrap_or_default())?,
            };
            Ok(Output::ok(&t, render::trisection(&t)))
        }
        Command::Serve { .. } => unreachable!("serve is handled by run"),
    }
}

fn origins(list: &[String]) -> Result<Vec<HeaderValue>, ApiError> {
    list.iter()
        .map(|o| {
            HeaderValue::from_str(o)
                .map_err(|_| ApiError::new(Kind::Usage, "MALFORMED_REQUEST", format!("bad origin `{o}`")))
        })
        .collect()
}

fn serve(cli: &Cli, port: u16, host: IpAddr, allow_origin: &[String], stderr: &mut dyn Write) -> Result<(), ApiError> {
    let allow = origins(allow_origin)?;
    let store = Arc::new(api::open_store(&cli.data_dir)?);
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| ApiError::internal(e.to_string()))?;
    rt.block_on(async {
        let listener = api::bind(SocketAddr::new(host, port)).await?;
        let addr = listener.local_addr().map_err(|e| ApiError::internal(e.to_string()))?;
        let _ = writeln!(stderr, "csa {} listening on http://{addr}", api::VERSION);
        api::serve(listener, api::router(store, &allow), api::termination_signal()).await
    })
}

fn report_error(e: &ApiError, format: Format, stderr: &mut dyn Write) -> i32 {
    let text = match format {
        Format::Json => to_json(e),
        Format::Plain => render::error(e),
    };
    let _ = stderr.write_all(text.as_bytes());
    e.exit_code()
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let out: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    if let Command::Serve {
        port,
        host,
        allow_origin,
    } = &cli.command
    {
        return match serve(&cli, *port, *host, allow_origin, stderr) {
            Ok(()) => 0,
            Err(e) => report_error(&e, cli.format, stderr),
        };
    }
    match execute(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => out.json,
                Format::Plain => out.plain,
            };
            let _ = stdout.write_all(text.as_bytes());
            out.code
        }
        Err(e) => report_error(&e, cli.format, stderr),
    }
}
