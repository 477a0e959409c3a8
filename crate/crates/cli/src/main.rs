//! `polarity-lab`: build, verify and inspect polarity graphs and `H(k, q)`.
//!
//! Exit codes: 0 success, 1 invalid parameters, 2 I/O failure, 3 a requested
//! verification suite failed (the report is still printed).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use polarity_lab::analysis::{
    self, build_graph, degree_profile, group_eigenvalues, max_clique, Suite, VerifyConfig,
    DEFAULT_SPECTRUM_CAP, SPECTRAL_TOL,
};
use polarity_lab::construction::{hyperplane_ht, line_ell, ConstructionParams};
use polarity_lab::export::{write_dimacs, write_edge_list, GraphHeader};
use polarity_lab::graph::{Construction, Graph};
use polarity_lab::polarity::{BilinearForm, FormKind};
use polarity_lab::projgeom::point_count;
use polarity_lab::{Error, Field, ProjPoint};

const SPECTRUM_CAP_VAR: &str = "POLARITY_LAB_SPECTRUM_CAP";

#[derive(Parser, Debug)]
#[command(name = "polarity-lab", version, about = "Polarity graphs and K_k-free pseudorandom subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph and write it as an edge list or DIMACS file.
    Build(Opts),
    /// Run verification suites and print a JSON report.
    Verify(Opts),
    /// Print the adjacency spectrum.
    Spectrum(Opts),
    /// Print a maximum clique.
    Clique(Opts),
    /// Describe the field, form and construction.
    Info(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Vector space dimension (points of PG(k-1, q)).
    #[arg(short = 'k')]
    k: usize,
    /// Field order.
    #[arg(short = 'q')]
    q: u32,
    /// Trace-one element t0, as an integer encoding.
    #[arg(long)]
    t0: Option<u16>,
    /// pseudo-symplectic, symplectic or orthogonal.
    #[arg(long, default_value = "pseudo-symplectic")]
    form: String,
    /// paper, nonabsolute or full.
    #[arg(long, default_value = "paper")]
    construction: String,
    /// structure, spectrum, clique, transitivity, mixing or all; repeatable.
    #[arg(long = "suite", value_delimiter = ',')]
    suites: Vec<String>,
    /// edgelist or dimacs for build; text or json otherwise.
    #[arg(long)]
    format: Option<String>,
    /// Output path (build only); standard output when absent.
    #[arg(short = 'o')]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    trials: usize,
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => CliError::Io(e),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Invalid(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Build(o) => cmd_build(&o),
        Command::Verify(o) => cmd_verify(&o),
        Command::Spectrum(o) => cmd_spectrum(&o),
        Command::Clique(o) => cmd_clique(&o),
        Command::Info(o) => cmd_info(&o),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(2)
        }
    }
}

fn spectrum_cap() -> CliResult<usize> {
    match std::env::var(SPECTRUM_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .or_else(|_| invalid(format!("{SPECTRUM_CAP_VAR}={v} is not a vertex count"))),
        Err(_) => Ok(DEFAULT_SPECTRUM_CAP),
    }
}

fn config(o: &Opts) -> CliResult<VerifyConfig> {
    let form = FormKind::parse(&o.form)
        .map_or_else(|| invalid(format!("unknown form '{}'", o.form)), Ok)?;
    let construction = match Construction::parse(&o.construction) {
        Some(Construction::Other) | None => {
            return invalid(format!("unknown construction '{}'", o.construction))
        }
        Some(c) => c,
    };
    if construction == Construction::Paper && !(o.q >= 2 && o.q.is_power_of_two()) {
        return invalid(format!(
            "the trace-one construction needs q a power of two, got {}",
            o.q
        ));
    }
    if o.t0.is_some() && construction != Construction::Paper {
        return invalid("--t0 only applies to --construction paper");
    }
    let mut suites = Vec::new();
    for s in &o.suites {
        if s == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(Suite::parse(s).map_or_else(|| invalid(format!("unknown suite '{s}'")), Ok)?);
        }
    }
    if suites.is_empty() {
        suites.extend(Suite::ALL);
    }
    suites.sort();
    suites.dedup();
    Ok(VerifyConfig {
        k: o.k,
        q: o.q,
        t0: o.t0,
        form,
        construction,
        suites,
        seed: o.seed,
        trials: o.trials,
        spectrum_cap: spectrum_cap()?,
    })
}

fn text_or_json(o: &Opts) -> CliResult<bool> {
    match o.format.as_deref() {
        None | Some("text") => Ok(false),
        Some("json") => Ok(true),
        Some(other) => invalid(format!("format '{other}' not available here (text, json)")),
    }
}

fn cmd_build(o: &Opts) -> CliResult<u8> {
    let dimacs = match o.format.as_deref() {
        None | Some("edgelist") | Some("el") => false,
        Some("dimacs") => true,
        Some(other) => return invalid(format!("unknown graph format '{other}' (edgelist, dimacs)")),
    };
    let cfg = config(o)?;
    let (g, params) = build_graph(&cfg)?;
    let header = GraphHeader {
        k: cfg.k,
        q: cfg.q,
        form: cfg.form,
        construction: cfg.construction,
        n: g.n(),
        t0: params.as_ref().map(|p| p.t0().encoding()),
    };
    let write = |w: &mut dyn Write| -> CliResult<()> {
        let mut w = BufWriter::new(w);
        if dimacs {
            write_dimacs(&mut w, &g)?;
        } else {
            write_edge_list(&mut w, &header, &g)?;
        }
        w.flush()?;
        Ok(())
    };
    let summary = summary_line(&g);
    match &o.output {
        Some(path) => {
            let mut file = File::create(path)?;
            write(&mut file)?;
            println!("{summary}");
        }
        None => {
            write(&mut io::stdout().lock())?;
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn summary_line(g: &Graph) -> String {
    let p = degree_profile(g);
    let d = if p.regular {
        p.max.to_string()
    } else {
        format!("{}..{}", p.min, p.max)
    };
    format!("n={} d={} loops={} edges={}", g.n(), d, p.loop_count, g.edge_count())
}

fn cmd_verify(o: &Opts) -> CliResult<u8> {
    if o.format.as_deref().is_some_and(|f| f != "json") {
        return invalid("verify only emits json");
    }
    if o.output.is_some() {
        return invalid("-o only applies to build");
    }
    let cfg = config(o)?;
    let report = analysis::verify_all(&cfg)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    Ok(if report.all_pass { 0 } else { 3 })
}

/// Integers print without decimals; other values with six.
fn fmt_value(x: f64) -> String {
    if (x - x.round()).abs() <= SPECTRAL_TOL {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.6}")
    }
}

fn cmd_spectrum(o: &Opts) -> CliResult<u8> {
    let json_out = text_or_json(o)?;
    let cfg = config(o)?;
    let (g, _) = build_graph(&cfg)?;
    let ev = analysis::spectrum(&g, cfg.spectrum_cap)?;
    let groups = group_eigenvalues(&ev, SPECTRAL_TOL);
    if json_out {
        let groups: Vec<_> = groups
            .iter()
            .map(|(v, m)| json!({"value": v, "multiplicity": m}))
            .collect();
        let out = json!({
            "n": g.n(),
            "eigenvalues": ev,
            "groups": groups,
            "second_abs": analysis::second_abs(&ev),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        let parts: Vec<String> = groups
            .iter()
            .map(|&(v, m)| {
                if m == 1 {
                    fmt_value(v)
                } else {
                    format!("{}(×{m})", fmt_value(v))
                }
            })
            .collect();
        println!("{}", parts.join(", "));
    }
    Ok(0)
}

fn cmd_clique(o: &Opts) -> CliResult<u8> {
    let json_out = text_or_json(o)?;
    let cfg = config(o)?;
    let (g, _) = build_graph(&cfg)?;
    let c = max_clique(&g);
    if json_out {
        let points: Vec<String> = c
            .witness
            .iter()
            .filter_map(|&v| g.label(v).map(ToString::to_string))
            .collect();
        let out = json!({"omega": c.size, "witness": c.witness, "points": points});
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        let ids: Vec<String> = c.witness.iter().map(ToString::to_string).collect();
        println!("omega={}, witness=[{}]", c.size, ids.join(", "));
    }
    Ok(0)
}

fn cmd_info(o: &Opts) -> CliResult<u8> {
    let json_out = text_or_json(o)?;
    let cfg = config(o)?;
    let field = Field::with_order(cfg.q)?;
    let form = BilinearForm::standard(cfg.form, cfg.k, &field)?;
    let spec = field.spec();
    let gram: Vec<Vec<u16>> = form
        .gram_rows()
        .iter()
        .map(|r| r.iter().map(|c| c.encoding()).collect())
        .collect();
    let q = cfg.q as u64;
    let mut info = json!({
        "k": cfg.k,
        "q": cfg.q,
        "characteristic": spec.characteristic,
        "degree": spec.degree,
        "modulus": spec.modulus,
        "form": cfg.form,
        "construction": cfg.construction,
        "gram": gram,
        "points": point_count(cfg.k, q),
        "polarity_degree": point_count(cfg.k - 1, q),
    });
    let mut lines = vec![
        format!(
            "field: GF({}) p={} h={}{}",
            cfg.q,
            spec.characteristic,
            spec.degree,
            spec.modulus.map(|m| format!(" modulus={m:#b}")).unwrap_or_default()
        ),
        format!("form: {} gram={:?}", cfg.form, gram),
        format!(
            "PG({}, {}): {} points, polarity degree {}",
            cfg.k - 1,
            cfg.q,
            point_count(cfg.k, q),
            point_count(cfg.k - 1, q)
        ),
    ];
    if cfg.construction == Construction::Paper {
        let t0 = cfg.t0.map(|t| field.element(t as u32)).transpose()?;
        let params = ConstructionParams::new(cfg.k, field.clone(), t0)?;
        let ts: Vec<u16> = field.trace_one_set()?.iter().map(|t| t.encoding()).collect();
        let ell = line_ell(cfg.k, &field);
        let ell_ends: Vec<String> = if cfg.k >= 3 {
            let first = if cfg.k % 2 == 1 { cfg.k - 2 } else { cfg.k - 1 };
            vec![
                ProjPoint::unit(cfg.k, first).to_string(),
                ProjPoint::unit(cfg.k, cfg.k).to_string(),
            ]
        } else {
            Vec::new()
        };
        let hts = field
            .trace_one_set()?
            .into_iter()
            .map(|t| hyperplane_ht(&params, t).map(|h| (t.encoding(), h.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let set = |s: &[u16]| {
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        lines.push(format!("T = {{{}}}", set(&ts)));
        lines.push(format!("t0 = {}", params.t0()));
        lines.push(format!("H_inf = {}", params.h_infinity()));
        if ell_ends.is_empty() {
            lines.push("ell = (empty)".into());
        } else {
            lines.push(format!("ell = {} {} ({} points)", ell_ends[0], ell_ends[1], ell.len()));
        }
        for (t, h) in &hts {
            lines.push(format!("H_{t} = {h}"));
        }
        lines.push(format!(
            "H({}, {}): n = {}, d = {}",
            cfg.k,
            cfg.q,
            params.expected_order(),
            params.expected_degree()
        ));
        let extra = json!({
            "trace_one_set": ts,
            "t0": params.t0().encoding(),
            "h_infinity": params.h_infinity().to_string(),
            "ell_endpoints": ell_ends,
            "ell_points": ell.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "hyperplanes": hts.iter().map(|(t, h)| json!({"t": t, "coeffs": h})).collect::<Vec<_>>(),
            "expected_n": params.expected_order(),
            "expected_d": params.expected_degree(),
        });
        if let (Some(obj), Some(extra)) = (info.as_object_mut(), extra.as_object()) {
            obj.extend(extra.clone());
        }
    }
    if json_out {
        println!("{}", serde_json::to_string_pretty(&info).expect("json"));
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    Ok(0)
}
