//! Command-line front end: `sdrd evaluate` and `sdrd serve`.

use std::fmt::Write as _;
use std::io;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use sdrd_core::report::{coverage_csv, measures_csv, pyramid_svg, scatter_svg, write_report_zip};
use sdrd_core::{AlgorithmRegistry, ReportOptions, ResultDocument};

use crate::load::{evaluate_sources, Source};
use crate::server::{router, serve, ServerConfig};
use crate::session::SessionStore;

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_IO: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sdrd",
    version,
    about = "Evaluate and report on supervised descriptive rules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a rule file on a KEEL dataset and write reports.
    Evaluate(EvaluateArgs),
    /// Run the HTTP API (and the web UI, if its assets are given).
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// KEEL dataset (training file when --test is given).
    #[arg(long)]
    pub data: PathBuf,
    /// Rule file produced by the mining algorithm.
    #[arg(long)]
    pub rules: PathBuf,
    /// Test partition with the same schema, appended to the data.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Output directory, created if needed.
    #[arg(long)]
    pub out: PathBuf,
    /// Write result.json.
    #[arg(long)]
    pub json: bool,
    /// Write measures.csv and coverage.csv.
    #[arg(long)]
    pub csv: bool,
    /// Write scatter.svg and pyramid.svg.
    #[arg(long)]
    pub svg: bool,
    /// Write report.zip.
    #[arg(long)]
    pub zip: bool,
    /// Extra "<algorithm> <fuzzy|crisp>" lines for the algorithm registry.
    #[arg(long)]
    pub registry: Option<PathBuf>,
    /// Heading of the HTML report.
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: IpAddr,
    #[arg(long, env = "SDRD_PORT", default_value_t = 8080)]
    pub port: u16,
    /// Maximum upload size in MiB.
    #[arg(long, default_value_t = 64)]
    pub max_upload_mb: usize,
    /// Directory with the built web UI.
    #[arg(long)]
    pub assets: Option<PathBuf>,
    /// Extra "<algorithm> <fuzzy|crisp>" lines for the algorithm registry.
    #[arg(long)]
    pub registry: Option<PathBuf>,
}

/// Which exports `evaluate` writes. No flag at all means everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub json: bool,
    pub csv: bool,
    pub svg: bool,
    pub zip: bool,
}

impl Formats {
    pub fn from_flags(json: bool, csv: bool, svg: bool, zip: bool) -> Self {
        if json || csv || svg || zip {
            Self { json, csv, svg, zip }
        } else {
            Self {
                json: true,
                csv: true,
                svg: true,
                zip: true,
            }
        }
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn read_source(path: &Path) -> Result<Source, String> {
    std::fs::read_to_string(path)
        .map(|text| Source::new(path.display().to_string(), text))
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn load_registry(path: Option<&Path>) -> Result<AlgorithmRegistry, ExitCode> {
    let mut registry = AlgorithmRegistry::default();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format_args!("{}: {e}", path.display())))?;
        registry
            .merge_text(&text)
            .map_err(|e| fail(EXIT_INPUT, format_args!("{}:{}: {e}", path.display(), e.line)))?;
    }
    Ok(registry)
}

/// Plain-text table printed after evaluation.
pub fn summary_text(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let classes: Vec<String> = doc
        .dataset
        .classes
        .iter()
        .map(|c| format!("{} {}", c.name, c.count))
        .collect();
    let _ = writeln!(
        out,
        "dataset {}: {} examples, {} attributes, target {} ({})",
        doc.dataset.relation,
        doc.dataset.rows,
        doc.dataset.attributes.len(),
        doc.dataset.target,
        classes.join(", ")
    );
    if doc.dataset.range_warnings > 0 {
        let _ = writeln!(
            out,
            "{} values outside their declared range",
            doc.dataset.range_warnings
        );
    }
    let labels = doc
        .algorithm
        .num_labels
        .map(|k| format!(", {k} labels"))
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "algorithm {} ({}{labels}): {} rules",
        doc.algorithm.name,
        doc.algorithm.dialect,
        doc.rules.len()
    );
    if doc.rules.is_empty() {
        return out;
    }
    let _ = writeln!(
        out,
        "\n{:>4}  {:>6} {:>6} {:>6} {:>6}  {:>8} {:>8} {:>8} {:>9} {:>9}  consequent",
        "rule", "tp", "fp", "fn", "tn", "tpr", "fpr", "conf", "wracc", "wracc_n"
    );
    for r in &doc.rules {
        let (t, m) = (&r.contingency, &r.measures);
        let _ = writeln!(
            out,
            "{:>4}  {:>6} {:>6} {:>6} {:>6}  {:>8.4} {:>8.4} {:>8.4} {:>9.4} {:>9.4}  {}",
            r.id, t.tp, t.fp, t.fn_, t.tn, m.tpr, m.fpr, m.confidence, m.wracc_raw, m.wracc_norm, r.consequent
        );
    }
    out
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> io::Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, bytes)?;
    Ok(path)
}

pub fn evaluate(args: &EvaluateArgs) -> ExitCode {
    let registry = match load_registry(args.registry.as_deref()) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut sources = Vec::new();
    for path in [Some(&args.data), Some(&args.rules), args.test.as_ref()]
        .into_iter()
        .flatten()
    {
        match read_source(path) {
            Ok(s) => sources.push(s),
            Err(message) => return fail(EXIT_IO, message),
        }
    }
    let result = match evaluate_sources(&sources[0], &sources[1], sources.get(2), &registry) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let doc = ResultDocument::from_result(&result);
    let formats = Formats::from_flags(args.json, args.csv, args.svg, args.zip);

    let written = (|| -> Result<Vec<PathBuf>, String> {
        let io = |e: io::Error| format!("{}: {e}", args.out.display());
        std::fs::create_dir_all(&args.out).map_err(io)?;
        let mut files = Vec::new();
        if formats.json {
            files.push(write_file(&args.out, "result.json", &doc.to_json_bytes()).map_err(io)?);
        }
        if formats.csv {
            files.push(write_file(&args.out, "measures.csv", measures_csv(&doc).as_bytes()).map_err(io)?);
            files.push(write_file(&args.out, "coverage.csv", coverage_csv(&doc).as_bytes()).map_err(io)?);
        }
        if formats.svg {
            files.push(write_file(&args.out, "scatter.svg", scatter_svg(&doc.plots.scatter).as_bytes()).map_err(io)?);
            files.push(write_file(&args.out, "pyramid.svg", pyramid_svg(&doc.plots.pyramid).as_bytes()).map_err(io)?);
        }
        if formats.zip {
            let options = ReportOptions {
                title: args.title.clone(),
                ..ReportOptions::default()
            };
            let bytes = write_report_zip(&doc, &options).map_err(|e| e.to_string())?;
            files.push(write_file(&args.out, "report.zip", &bytes).map_err(io)?);
        }
        Ok(files)
    })();

    match written {
        Ok(files) => {
            print!("{}", summary_text(&doc));
            println!();
            for f in files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(message) => fail(EXIT_IO, message),
    }
}

pub fn run_server(args: &ServeArgs) -> ExitCode {
    let registry = match load_registry(args.registry.as_deref()) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let config = ServerConfig {
        max_upload_bytes: args.max_upload_mb.saturating_mul(1024 * 1024),
        assets: args.assets.clone(),
    };
    let app = router(Arc::new(SessionStore::new(registry)), &config);
    let addr = SocketAddr::new(args.bind, args.port);
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => return fail(EXIT_IO, e),
    };
    runtime.block_on(async move {
        let listener = match tokio::net::TcpListener::bind(addr).await {
            Ok(l) => l,
            Err(e) => return fail(EXIT_IO, format_args!("cannot bind {addr}: {e}")),
        };
        eprintln!("listening on http://{addr}");
        match serve(listener, app).await {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_IO, e),
        }
    })
}

pub fn run(cli: Cli) -> ExitCode {
    match &cli.command {
        Command::Evaluate(args) => evaluate(args),
        Command::Serve(args) => run_server(args),
    }
}
