use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde_json::{json, Value};

use wp_core::comm::{
    build_gra, build_rtilde, gra_relations, gra_ring, is_regular_sequence, load_ring, minimal_generators,
    rtilde_relations, rtilde_ring, QuotientRing,
};
use wp_core::quiver::{emit_dot, Quiver};
use wp_core::rep::{ext_quiver, minimal_projective_resolution, simple_rep, BasicAlgebra};
use wp_core::tate::tate_report;
use wp_core::verify::{run_suite, suite_report, Suite, VerifyOptions};
use wp_core::wp::{
    build_wp_instance, gk_dimension_from_dims, gra_basic_algebra, graded_gra_quiver_window, graded_window_dot,
    zhu_algebra, zhu_yoneda_dims, GkModel,
};

const MAX_DEGREE_CAP: usize = 12;

#[derive(Parser)]
#[command(name = "wpalg", version, about = "Exact algebra computations for the triplet algebras W(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// The parameter p (at least 2).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    p: u32,
    /// Highest homological or internal degree to compute.
    #[arg(long, default_value_t = 6, value_parser = parse_max_degree)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn parse_max_degree(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if n > MAX_DEGREE_CAP {
        return Err(format!("max degree {n} exceeds the cap {MAX_DEGREE_CAP}"));
    }
    Ok(n)
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichQuiver {
    Wp,
    Zhu,
    Gra,
    GraGraded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichRing {
    Gra,
    Rtilde,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one of the quivers.
    Quiver {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = WhichQuiver::Wp)]
        which: WhichQuiver,
        /// Degree window `a:b`, required for `gra-graded`.
        #[arg(long)]
        window: Option<String>,
    },
    /// Dimensions and bases of gr A, the basic algebra, and the Zhu algebra.
    Dims {
        #[command(flatten)]
        common: Common,
    },
    /// Yoneda algebra dimensions, relations, and resolutions of simples.
    Yoneda {
        #[command(flatten)]
        common: Common,
        /// Include differential matrices in resolution output.
        #[arg(long)]
        matrices: bool,
    },
    /// Zhu algebra and its Ext dimensions.
    Zhu {
        #[command(flatten)]
        common: Common,
    },
    /// Groebner basis and certificates for gr A or the enlarged ring.
    Groebner {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = WhichRing::Gra)]
        which: WhichRing,
        /// JSON ring description {variables, weights, relations}.
        #[arg(long)]
        ring: Option<std::path::PathBuf>,
    },
    /// Tate resolution, cohomology, and the image of pi^#.
    Tate {
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Include slow checks.
        #[arg(long)]
        slow: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<wp_core::Error> for Failure {
    fn from(e: wp_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

struct Output {
    body: String,
    passed: bool,
}

fn ok(body: String) -> Result<Output, Failure> {
    Ok(Output { body, passed: true })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn reject(fmt: Format, allowed: &[Format], what: &str) -> Result<(), Failure> {
    if allowed.contains(&fmt) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("unsupported --format for {what}")))
    }
}

fn parse_window(w: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("window `{w}` must look like a:b"));
    let (a, b) = w.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn quiver_text(q: &Quiver) -> String {
    let mut s = format!("{} vertices, {} arrows\n", q.vertex_count(), q.arrow_count());
    for a in q.arrows() {
        s.push_str(&format!(
            "{}: {} -> {}\n",
            a.label,
            q.vertex_label(a.src),
            q.vertex_label(a.tgt)
        ));
    }
    s
}

fn emit_quiver(q: &Quiver, fmt: Format) -> Result<Output, Failure> {
    reject(fmt, &[Format::Json, Format::Dot, Format::Text], "quivers")?;
    ok(match fmt {
        Format::Dot => emit_dot(q),
        Format::Text => quiver_text(q),
        _ => pretty(&serde_json::to_value(q).expect("serializable")),
    })
}

fn cmd_quiver(c: &Common, which: WhichQuiver, window: Option<&str>) -> Result<Output, Failure> {
    if which != WhichQuiver::GraGraded && window.is_some() {
        return Err(Failure::Usage("--window only applies to --which gra-graded".into()));
    }
    match which {
        WhichQuiver::Wp => emit_quiver(&build_wp_instance(c.p)?.quiver, c.format),
        WhichQuiver::Zhu => emit_quiver(&ext_quiver(&zhu_algebra(c.p)?)?, c.format),
        WhichQuiver::Gra => emit_quiver(&ext_quiver(&gra_basic_algebra(c.p)?.0)?, c.format),
        WhichQuiver::GraGraded => {
            let w = window.ok_or_else(|| Failure::Usage("--which gra-graded requires --window a:b".into()))?;
            let (a, b) = parse_window(w)?;
            let win = graded_gra_quiver_window(c.p, a, b)?;
            reject(c.format, &[Format::Json, Format::Dot, Format::Text], "quivers")?;
            ok(match c.format {
                Format::Dot => graded_window_dot(&win),
                Format::Text => {
                    let mut s = format!("window {a}:{b}, {} arrows\n", win.arrows.len());
                    for (x, y) in &win.arrows {
                        s.push_str(&format!("{x} -> {y}\n"));
                    }
                    s
                }
                _ => pretty(&serde_json::to_value(&win).expect("serializable")),
            })
        }
    }
}

fn basis_listing(alg: &BasicAlgebra) -> Vec<String> {
    let q = alg.quiver();
    let n = alg.vertex_count();
    let mut out = Vec::new();
    for v in 0..n {
        for j in 0..n {
            out.extend(alg.basis_paths(v, j).iter().map(|p| p.display(q)));
        }
    }
    out
}

fn cmd_dims(c: &Common) -> Result<Output, Failure> {
    let gra = build_gra(c.p)?;
    let w = build_wp_instance(c.p)?;
    let zhu = zhu_algebra(c.p)?;
    let ring = gra.ring().clone();
    let gra_basis: Vec<String> = gra.quotient_basis()?.iter().map(|m| ring.format_monomial(m)).collect();
    let (dg, de, dz) = (gra_basis.len(), w.algebra.total_dim(), zhu.total_dim());
    reject(c.format, &[Format::Json, Format::Csv, Format::Text], "dims")?;
    ok(match c.format {
        Format::Csv => format!("quantity,value\ndim_grA,{dg}\ndim_E,{de}\ndim_zhu_basic,{dz}\n"),
        Format::Text => format!(
            "dim gr A = {dg}\ndim E = {de}\ndim Zhu basic = {dz}\ngr A basis: {}\n",
            gra_basis.join(", ")
        ),
        _ => pretty(&json!({
            "p": c.p,
            "dim_grA": dg,
            "dim_E": de,
            "dim_zhu_basic": dz,
            "basis": {
                "grA": gra_basis,
                "E": basis_listing(&w.algebra),
                "zhu_basic": basis_listing(&zhu),
            },
        })),
    })
}

fn dims_csv(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn cmd_yoneda(c: &Common, matrices: bool) -> Result<Output, Failure> {
    let w = build_wp_instance(c.p)?;
    let n = c.max_degree;
    let ext = w.yoneda_dims(n)?;
    let pres = w.presentation_dims(n);
    reject(c.format, &[Format::Json, Format::Csv, Format::Text], "yoneda")?;
    match c.format {
        Format::Csv => ok(dims_csv(
            "degree,ext_dim,presentation_dim",
            (0..=n).map(|k| vec![k.to_string(), ext[k].to_string(), pres[k].to_string()]),
        )),
        Format::Text => {
            let mut s = format!("p = {}\n", c.p);
            for k in 0..=n {
                s.push_str(&format!("Ext^{k}: {} (presentation {})\n", ext[k], pres[k]));
            }
            for r in w.yoneda.relations() {
                s.push_str(&format!("relation: {}\n", r.display(&w.quiver)));
            }
            ok(s)
        }
        _ => {
            let mut report = w.report(n)?;
            let mut resolutions = serde_json::Map::new();
            for v in 0..w.algebra.vertex_count() {
                let s = simple_rep(&w.algebra, v)?;
                let res = minimal_projective_resolution(&w.algebra, &s, n)?;
                resolutions.insert(w.quiver.vertex_label(v).to_string(), res.to_json(matrices));
            }
            report["presentation_dims"] = json!(pres);
            report["relations"] = w.yoneda.to_json();
            report["resolutions"] = Value::Object(resolutions);
            if n >= 8 {
                report["gk"] = json!(gk_dimension_from_dims(&ext, GkModel::Polynomial)?);
            }
            ok(pretty(&report))
        }
    }
}

fn cmd_zhu(c: &Common) -> Result<Output, Failure> {
    let alg = zhu_algebra(c.p)?;
    let dims = zhu_yoneda_dims(c.p, c.max_degree)?;
    reject(c.format, &[Format::Json, Format::Csv, Format::Text], "zhu")?;
    ok(match c.format {
        Format::Csv => dims_csv(
            "degree,ext_dim",
            dims.iter().enumerate().map(|(k, d)| vec![k.to_string(), d.to_string()]),
        ),
        Format::Text => format!("dim = {}\nExt dims: {:?}\n", alg.total_dim(), dims),
        _ => pretty(&json!({
            "p": c.p,
            "dim": alg.total_dim(),
            "ext_dims": dims,
            "ext_quiver": ext_quiver(&alg)?,
        })),
    })
}

fn groebner_doc(q: &QuotientRing, cert: Option<Value>, minimal: Option<Vec<usize>>) -> Value {
    json!({
        "groebner_basis": q.gb().to_json(),
        "quotient_dim": q.dim().ok(),
        "regular_sequence": cert,
        "minimal_generators": minimal.map(|v| v.into_iter().map(|i| format!("r{}", i + 1)).collect::<Vec<_>>()),
    })
}

fn cmd_groebner(c: &Common, which: WhichRing, ring_file: Option<&std::path::Path>) -> Result<Output, Failure> {
    reject(c.format, &[Format::Json, Format::Text], "groebner")?;
    let doc = if let Some(path) = ring_file {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let (ring, rels) = load_ring(&text)?;
        info!("groebner: {} generators in {} variables", rels.len(), ring.nvars());
        let q = QuotientRing::new(&ring, rels);
        groebner_doc(&q, None, None)
    } else {
        match which {
            WhichRing::Gra => {
                info!("groebner: gr A, 11 relations in 4 variables");
                let q = build_gra(c.p)?;
                let ring = gra_ring(c.p)?;
                let rels = gra_relations(c.p)?;
                info!("groebner: regular sequence test for r1..r4");
                let cert = is_regular_sequence(&rels[..4], &ring)?;
                let kept = minimal_generators(&rels, &ring)?;
                groebner_doc(&q, Some(serde_json::to_value(cert).expect("serializable")), Some(kept))
            }
            WhichRing::Rtilde => {
                info!("groebner: enlarged ring, 8 relations in 8 variables");
                let q = build_rtilde(c.p)?;
                info!("groebner: regular sequence test, one ideal quotient per step");
                let cert = is_regular_sequence(&rtilde_relations(c.p)?, &rtilde_ring(c.p)?)?;
                groebner_doc(&q, Some(serde_json::to_value(cert).expect("serializable")), None)
            }
        }
    };
    ok(match c.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(gens) = doc["groebner_basis"]["generators"].as_array() {
                for g in gens {
                    s.push_str(&format!("{}\n", g["polynomial"].as_str().unwrap_or("")));
                }
            }
            s.push_str(&format!("quotient dim: {}\n", doc["quotient_dim"]));
            s
        }
        _ => pretty(&doc),
    })
}

fn cmd_tate(c: &Common) -> Result<Output, Failure> {
    reject(c.format, &[Format::Json], "tate")?;
    info!("tate: building the resolution and checking d^2 = 0");
    ok(pretty(&tate_report(c.p, c.max_degree)?))
}

fn cmd_verify(c: &Common, suite: Suite, slow: bool) -> Result<Output, Failure> {
    reject(c.format, &[Format::Json, Format::Text], "verify")?;
    let opts = VerifyOptions {
        max_degree: c.max_degree,
        slow,
    };
    let checks = run_suite(c.p, suite, opts);
    let passed = checks.iter().all(|x| x.passed);
    let body = match c.format {
        Format::Text => {
            let mut s = String::new();
            for x in &checks {
                s.push_str(&format!("{} {}\n", if x.passed { "PASS" } else { "FAIL" }, x.name));
            }
            s
        }
        _ => pretty(&suite_report(c.p, suite, &checks)),
    };
    Ok(Output { body, passed })
}

fn run(cli: &Cli) -> Result<(Output, Option<std::path::PathBuf>), Failure> {
    let common = match &cli.command {
        Command::Quiver { common, .. }
        | Command::Dims { common }
        | Command::Yoneda { common, .. }
        | Command::Zhu { common }
        | Command::Groebner { common, .. }
        | Command::Tate { common }
        | Command::Verify { common, .. } => common,
    };
    if common.p >= 5 {
        warn!("p = {} is beyond the tested range; expect long running times", common.p);
    }
    let out = match &cli.command {
        Command::Quiver { common, which, window } => cmd_quiver(common, *which, window.as_deref()),
        Command::Dims { common } => cmd_dims(common),
        Command::Yoneda { common, matrices } => cmd_yoneda(common, *matrices),
        Command::Zhu { common } => cmd_zhu(common),
        Command::Groebner { common, which, ring } => cmd_groebner(common, *which, ring.as_deref()),
        Command::Tate { common } => cmd_tate(common),
        Command::Verify { common, suite, slow } => cmd_verify(common, *suite, *slow),
    }?;
    Ok((out, common.out.clone()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, path)) => {
            let written = match path {
                Some(p) => fs::write(&p, &out.body).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout()
                    .write_all(out.body.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
