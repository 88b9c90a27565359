use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mskit::faces::faces_of;
use mskit::generate::{hex_construction, primitive, random_lattice_subgraph, HexFamilySpec, Primitive, RemovalParity};
use mskit::geom::ToleranceConfig;
use mskit::io::{
    discharge_summary, graph_summary, read_graph_file, write_text, GraphFile, GraphMetadata, IoError, LoadedGraph,
    PipelineError,
};
use mskit::svg::render_svg;
use mskit::verify::{verify_with, Status, Verdict, VerificationReport, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "mskit",
    version,
    about = "Matchstick graph validator, discharging ledger and bound checker"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Unit-length tolerance.
    #[arg(long, global = true, env = "MSKIT_EPS_LEN", default_value_t = 1e-9)]
    eps_len: f64,
    /// Angle tolerance in radians.
    #[arg(long, global = true, default_value_t = 1e-7)]
    eps_ang: f64,
    /// Orientation determinant band.
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps_orient: f64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a graph file is a matchstick graph.
    Validate { file: PathBuf },
    /// Census and face structure of a graph file.
    Report { file: PathBuf },
    /// Charge ledger before and after redistribution.
    Discharge {
        file: PathBuf,
        /// Also check every vertex and face against its final-charge bound.
        #[arg(long)]
        per_element: bool,
    },
    /// Run every identity and inequality check.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Generate a graph file.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Draw a graph as SVG.
    Svg {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Pixels per unit length.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The hexagonal family H(k), k >= 2.
    Hex {
        k: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A small named example.
    Primitive {
        /// SINGLE_EDGE, TRIANGLE, RHOMBUS, RHOMBUS_PENDANT or TWO_TRIANGLES_DISJOINT.
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random edge subset of a triangular lattice patch.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        k: usize,
        /// Probability of keeping each lattice edge.
        #[arg(long)]
        prob: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit 2: bad usage or unreadable input.
struct InputError(String);

impl From<IoError> for InputError {
    fn from(e: IoError) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match ToleranceConfig::new(cli.global.eps_len, cli.global.eps_ang, cli.global.eps_orient) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = cli.global.json;
    let outcome = match cli.command {
        Command::Validate { file } => validate(&file, &tol, json),
        Command::Report { file } => report(&file, &tol, json),
        Command::Discharge { file, per_element } => run_discharge(&file, &tol, json, per_element),
        Command::Verify { files } => verify(&files, &tol, json),
        Command::Gen { what } => generate(what),
        Command::Svg { file, output, scale } => svg(&file, &output, scale, &tol),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn screaming<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn validate(file: &Path, tol: &ToleranceConfig, json: bool) -> Outcome {
    let g = read_graph_file(file)?.graph;
    let cert = g.validate_matchstick(tol);
    if json {
        print_json(&cert);
    } else if cert.pass {
        println!(
            "PASS: matchstick graph, {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        );
    } else {
        println!("FAIL: {} violations", cert.violations.len());
        for v in &cert.violations {
            match v.measured {
                Some(m) => println!("  {} {:?} measured {m}", screaming(&v.kind), v.witnesses),
                None => println!("  {} {:?}", screaming(&v.kind), v.witnesses),
            }
        }
    }
    Ok(cert.pass)
}

fn report(file: &Path, tol: &ToleranceConfig, json: bool) -> Outcome {
    let g = read_graph_file(file)?.graph;
    let s = graph_summary(&g, tol);
    if json {
        print!("{}", s.to_json());
        return Ok(s.validation.pass && s.faces.is_some());
    }
    let c = &s.census;
    println!("vertices {}  edges {}  components {}", c.n, c.e, c.c);
    let degrees: Vec<String> = c.degree_histogram.iter().map(|(d, n)| format!("n{d}={n}")).collect();
    println!("degrees  {}", degrees.join(" "));
    println!(
        "validation {}",
        if s.validation.pass {
            "PASS".to_string()
        } else {
            format!("FAIL ({} violations)", s.validation.violations.len())
        }
    );
    if let (Some(b), Some(f), Some(fk)) = (c.b, c.f, &c.f_k) {
        let sides: Vec<String> = fk.iter().map(|(k, n)| format!("f{k}={n}")).collect();
        println!("faces    f={f}  b={b}  {}", sides.join(" "));
    }
    for note in &s.notes {
        println!("note: {note}");
    }
    Ok(s.validation.pass && s.faces.is_some())
}

fn run_discharge(file: &Path, tol: &ToleranceConfig, json: bool, per_element: bool) -> Outcome {
    let g = read_graph_file(file)?.graph;
    let s = match discharge_summary(&g, tol, per_element) {
        Ok(s) => s,
        Err(e @ PipelineError::Invalid(_)) => {
            eprintln!("{e}; refusing to discharge");
            return Ok(false);
        }
        Err(e) => {
            eprintln!("{e}");
            return Ok(false);
        }
    };
    let ok = s.element_bounds.as_ref().is_none_or(|r| r.all_pass());
    if json {
        print!("{}", s.to_json());
        return Ok(ok);
    }
    let l = &s.ledger;
    println!(
        "{:<10} {:>4} {:>10} {:>10} {:>10}",
        "vertex", "deg", "initial", "received", "final"
    );
    for (v, c) in l.vertices.iter().enumerate() {
        println!(
            "{:<10} {:>4} {:>10.6} {:>10.6} {:>10.6}",
            v, c.degree, c.initial, c.received, c.final_charge
        );
    }
    println!(
        "{:<10} {:>4} {:>10} {:>10} {:>10}",
        "face", "k", "initial", "sent", "final"
    );
    for (i, f) in l.faces.iter().enumerate() {
        let label = if f.bounded {
            i.to_string()
        } else {
            format!("{i} (outer)")
        };
        println!(
            "{:<10} {:>4} {:>10.6} {:>10.6} {:>10.6}",
            label, f.sides, f.initial, f.sent, f.final_charge
        );
    }
    println!(
        "total initial {:.6}  final {:.6}  expected {}",
        l.total_initial,
        l.total_final,
        l.expected_total()
    );
    if let Some(r) = &s.element_bounds {
        if let Some(why) = &r.precondition_unmet {
            println!("element bounds informational: {why}");
        }
        let failures: Vec<_> = r.failures().collect();
        println!(
            "element bounds: {} checked, {} failed",
            r.elements.len(),
            failures.len()
        );
        for f in failures {
            println!(
                "  {:?} {} final {} bound {}",
                f.element, f.class, f.final_charge, f.bound
            );
        }
    }
    Ok(ok)
}

fn verify_one(path: &Path, tol: &ToleranceConfig) -> Result<VerificationReport, InputError> {
    let LoadedGraph { graph, metadata } = read_graph_file(path)?;
    let opts = VerifyOptions {
        hex_k: metadata.as_ref().and_then(GraphMetadata::hex_k),
    };
    Ok(verify_with(&graph, tol, &opts))
}

#[derive(Serialize)]
struct FileReport<'a> {
    file: String,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

fn verify(files: &[PathBuf], tol: &ToleranceConfig, json: bool) -> Outcome {
    let results: Vec<Result<VerificationReport, InputError>> = thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|f| s.spawn(move || verify_one(f, tol))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verify worker panicked"))
            .collect()
    });
    let mut reports = Vec::with_capacity(files.len());
    for (file, r) in files.iter().zip(results) {
        match r {
            Ok(rep) => reports.push((file, rep)),
            Err(InputError(msg)) => return Err(InputError(format!("{}: {msg}", file.display()))),
        }
    }
    let ok = reports.iter().all(|(_, r)| r.verdict != Verdict::Fail);
    if json {
        if let [(_, single)] = reports.as_slice() {
            print!("{}", single.to_json());
        } else {
            let out: Vec<FileReport> = reports
                .iter()
                .map(|(f, r)| FileReport {
                    file: f.display().to_string(),
                    report: r,
                })
                .collect();
            print_json(&out);
        }
        return Ok(ok);
    }
    for (file, r) in &reports {
        println!("{}: {}", file.display(), screaming(&r.verdict));
        for c in &r.checks {
            let detail = match (c.lhs, c.rhs) {
                (Some(l), Some(rh)) => format!("{l} {} {rh}", c.relation.symbol()),
                _ => c.reason.clone().unwrap_or_default(),
            };
            println!("  {:<8} {:<22} {detail}", screaming(&c.status), c.name);
            if c.status == Status::Fail {
                for w in c.witnesses.iter().take(5) {
                    println!("           {w}");
                }
            }
        }
    }
    Ok(ok)
}

fn emit_graph(file: GraphFile, output: Option<PathBuf>) -> Outcome {
    let text = file.to_json();
    match output {
        Some(path) => write_text(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn generate(what: GenCommand) -> Outcome {
    match what {
        GenCommand::Hex { k, parity, output } => {
            let parity = match parity {
                ParityArg::Even => RemovalParity::EvenFromEastCorner,
                ParityArg::Odd => RemovalParity::OddFromEastCorner,
            };
            let g = hex_construction(&HexFamilySpec::with_parity(k, parity)).map_err(|e| InputError(e.to_string()))?;
            let meta = GraphMetadata {
                generator: Some("hex".into()),
                k: Some(k),
                parity: Some(parity.to_string()),
                ..Default::default()
            };
            emit_graph(GraphFile::from_graph(&g, Some(meta)), output)
        }
        GenCommand::Primitive { name, output } => {
            let which: Primitive = name
                .parse()
                .map_err(|e: mskit::generate::GenerateError| InputError(e.to_string()))?;
            let meta = GraphMetadata {
                generator: Some("primitive".into()),
                name: Some(which.name().into()),
                ..Default::default()
            };
            emit_graph(GraphFile::from_graph(&primitive(which), Some(meta)), output)
        }
        GenCommand::Random { seed, k, prob, output } => {
            if !(0.0..=1.0).contains(&prob) {
                return Err(InputError(format!("--prob must lie in [0, 1], got {prob}")));
            }
            let g = random_lattice_subgraph(seed, k, prob);
            let meta = GraphMetadata {
                generator: Some("random".into()),
                k: Some(k),
                seed: Some(seed),
                prob: Some(prob),
                ..Default::default()
            };
            emit_graph(GraphFile::from_graph(&g, Some(meta)), output)
        }
    }
}

fn svg(file: &Path, output: &Path, scale: f64, tol: &ToleranceConfig) -> Outcome {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(InputError(format!("--scale must be positive, got {scale}")));
    }
    let g = read_graph_file(file)?.graph;
    let valid = g.validate_matchstick(tol).pass;
    let fs = if valid { faces_of(&g, tol).ok() } else { None };
    if !valid {
        eprintln!("not a matchstick graph; drawing edges without faces");
    }
    write_text(output, &render_svg(&g, fs.as_ref(), scale))?;
    Ok(valid)
}
