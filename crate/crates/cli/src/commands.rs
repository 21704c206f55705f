use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use icmod_core::{
    build_mk, certificate_diff, choose_k, closure, closure_power_oracle, default_power_bound,
    enumerate_complete, is_complete, module_colength, module_min_gens, poly_ideal_colength,
    valid_ks, zariski_factor, Certificate, DecideOptions, Monomial, MonomialIdeal, NewtonPolygon,
    Poly, Presentation2, Verdict,
};

use crate::parser::{checked_product, parse_ideal, parse_monomial, parse_polys, ParseError};
use crate::render::render_svg;

#[derive(Debug, Parser)]
#[command(
    name = "icmod",
    version,
    about = "Complete monomial ideals in two variables and their rank-two modules"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the minimal generators.
    Normalize { ideal: String },
    /// Largest n with I inside m^n.
    Order { ideal: String },
    /// Number of minimal generators.
    Mu { ideal: String },
    /// Length of R/I.
    Colength { ideal: String },
    /// Whether a monomial lies in the ideal.
    Member { monomial: String, ideal: String },
    /// Product of two ideals.
    Product { left: String, right: String },
    /// Integral closure.
    Closure { ideal: String },
    /// Whether the ideal is integrally closed.
    Complete { ideal: String },
    /// Vertices of the Newton polygon.
    Vertices { ideal: String },
    /// Factorization of a complete ideal into simple complete ideals.
    Factor { ideal: String },
    /// The presentation matrix M_k.
    Construct {
        ideal: String,
        #[arg(long)]
        k: u32,
    },
    /// Ideal of 2x2 minors of M_k.
    Fitting0 {
        ideal: String,
        #[arg(long)]
        k: u32,
    },
    /// Ideal of entries of M_k.
    Fitting1 {
        ideal: String,
        #[arg(long)]
        k: u32,
    },
    /// Choose k with M_k indecomposable and print the certificate.
    Decide {
        ideal: String,
        /// Replace a non-complete ideal by its closure first.
        #[arg(long)]
        close_first: bool,
        /// Use this k instead of the branch default.
        #[arg(long)]
        k: Option<u32>,
        /// List every certified k instead.
        #[arg(long, conflicts_with = "k")]
        all_k: bool,
    },
    /// Length of F/M_k.
    ModuleLength {
        ideal: String,
        #[arg(long)]
        k: u32,
    },
    /// Minimal number of generators of M_k.
    ModuleMu {
        ideal: String,
        #[arg(long)]
        k: u32,
    },
    /// Length of R/(f_1, ..., f_n) for polynomials with integer coefficients.
    PolyColength { polys: String },
    /// List complete ideals with a_0 <= AMAX and b_r <= BMAX.
    Enumerate {
        #[arg(long)]
        amax: u32,
        #[arg(long)]
        bmax: u32,
        /// Also run the decision procedure on each.
        #[arg(long)]
        decide: bool,
    },
    /// Draw the staircase and Newton polygon as SVG.
    Render {
        ideal: String,
        /// Output file, or - for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce the worked examples and a small exhaustive sweep.
    Selftest,
    /// Recompute a JSON certificate and compare.
    Verify { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Domain(#[from] icmod_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed certificate: {0}")]
    Certificate(#[from] serde_json::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(ParseError::Syntax { .. }) => 2,
            _ => 1,
        }
    }
}

/// What a command printed and whether it succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub success: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            success: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub json: bool,
    pub margin: u32,
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    json!({ "ideal": i, "text": i.to_string() })
}

fn emit(s: &Settings, value: Value, text: impl FnOnce() -> String) -> Output {
    if s.json {
        Output::ok(pretty(&value))
    } else {
        Output::ok(text())
    }
}

fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn entry(m: Option<Monomial>) -> String {
    m.map_or_else(|| "0".to_string(), |m| m.to_string())
}

/// Two aligned rows, one per coordinate of `F = R^2`.
pub fn format_matrix(p: &Presentation2) -> String {
    let tops: Vec<String> = p.cols().iter().map(|c| entry(c.top)).collect();
    let bottoms: Vec<String> = p.cols().iter().map(|c| entry(c.bottom)).collect();
    let widths: Vec<usize> = tops
        .iter()
        .zip(&bottoms)
        .map(|(t, b)| t.len().max(b.len()))
        .collect();
    let row = |cells: &[String]| {
        let body: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        format!("[ {} ]", body.join("  "))
    };
    format!("{}\n{}", row(&tops), row(&bottoms))
}

pub fn format_certificate(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input:          {}", c.input);
    if c.closed || c.transposed {
        let _ = writeln!(s, "decided ideal:  {}", c.normalized_input);
    }
    let _ = writeln!(s, "closed:         {}", c.closed);
    let _ = writeln!(s, "transposed:     {}", c.transposed);
    let _ = writeln!(s, "order:          {}", c.order);
    let _ = writeln!(s, "factorization:  {}", c.factorization);
    let _ = writeln!(s, "branch:         {}", c.branch);
    match c.k {
        Some(k) if c.k_forced => {
            let _ = writeln!(s, "k:              {k} (forced)");
        }
        Some(k) => {
            let _ = writeln!(s, "k:              {k}");
        }
        None => {
            let _ = writeln!(s, "k:              none");
        }
    }
    if let Some(m) = &c.matrix {
        let _ = writeln!(s, "matrix:");
        for line in format_matrix(m).lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    if !c.checks.is_empty() {
        let _ = writeln!(s, "checks:");
        for check in &c.checks {
            let mark = if check.pass { "pass" } else { "FAIL" };
            let _ = writeln!(s, "  {mark} {}", check.name);
        }
    }
    let _ = write!(s, "verdict:        {}", c.verdict);
    s
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn proper(src: &str) -> Result<MonomialIdeal, CliError> {
    let i = parse_ideal(src)?;
    i.require_proper()?;
    Ok(i)
}

fn mk(src: &str, k: u32) -> Result<Presentation2, CliError> {
    Ok(build_mk(&proper(src)?, k)?)
}

pub fn execute(cmd: &Command, s: &Settings) -> Result<Output, CliError> {
    let out = match cmd {
        Command::Normalize { ideal } => {
            let i = parse_ideal(ideal)?;
            emit(s, ideal_json(&i), || i.to_string())
        }
        Command::Order { ideal } => {
            let n = proper(ideal)?.order();
            emit(s, json!({ "order": n }), || n.to_string())
        }
        Command::Mu { ideal } => {
            let n = parse_ideal(ideal)?.num_min_gens();
            emit(s, json!({ "mu": n }), || n.to_string())
        }
        Command::Colength { ideal } => {
            let n = parse_ideal(ideal)?.colength();
            emit(s, json!({ "colength": n }), || n.to_string())
        }
        Command::Member { monomial, ideal } => {
            let m = parse_monomial(monomial)?;
            let yes = parse_ideal(ideal)?.member(m);
            emit(s, json!({ "member": yes }), || yes.to_string())
        }
        Command::Product { left, right } => {
            let p = checked_product(&parse_ideal(left)?, &parse_ideal(right)?)?;
            emit(s, ideal_json(&p), || p.to_string())
        }
        Command::Closure { ideal } => {
            let c = closure(&parse_ideal(ideal)?);
            emit(s, ideal_json(&c), || c.to_string())
        }
        Command::Complete { ideal } => {
            let yes = is_complete(&parse_ideal(ideal)?);
            emit(s, json!({ "complete": yes }), || yes.to_string())
        }
        Command::Vertices { ideal } => {
            let np = NewtonPolygon::of(&proper(ideal)?);
            let text = np
                .vertices()
                .iter()
                .map(|m| format!("({},{})", m.a, m.b))
                .collect::<Vec<_>>()
                .join(" ");
            emit(s, json!({ "vertices": np.vertices() }), || text)
        }
        Command::Factor { ideal } => {
            let f = zariski_factor(&proper(ideal)?)?;
            emit(
                s,
                json!({ "factorization": f, "text": f.to_string() }),
                || f.to_string(),
            )
        }
        Command::Construct { ideal, k } => {
            let p = mk(ideal, *k)?;
            emit(s, json!(p), || format_matrix(&p))
        }
        Command::Fitting0 { ideal, k } => {
            let f = mk(ideal, *k)?.fitting0()?;
            emit(s, ideal_json(&f), || f.to_string())
        }
        Command::Fitting1 { ideal, k } => {
            let f = mk(ideal, *k)?.fitting1()?;
            emit(s, ideal_json(&f), || f.to_string())
        }
        Command::Decide {
            ideal,
            close_first,
            k,
            all_k,
        } => {
            let i = proper(ideal)?;
            let opts = DecideOptions {
                close_first: *close_first,
                k: *k,
                margin: s.margin,
            };
            if *all_k {
                let ks = valid_ks(&i, &opts)?;
                let text = ks.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                emit(s, json!({ "valid_k": ks }), || text)
            } else {
                let c = choose_k(&i, &opts)?;
                emit(s, json!(c), || format_certificate(&c))
            }
        }
        Command::ModuleLength { ideal, k } => {
            let n = module_colength(&mk(ideal, *k)?, s.margin)?;
            emit(s, json!({ "module_length": n }), || n.to_string())
        }
        Command::ModuleMu { ideal, k } => {
            let n = module_min_gens(&mk(ideal, *k)?, s.margin)?;
            emit(s, json!({ "module_mu": n }), || n.to_string())
        }
        Command::PolyColength { polys } => {
            let ps: Vec<Poly> = parse_polys(polys)?;
            let n = poly_ideal_colength(&ps)?;
            emit(s, json!({ "colength": n }), || n.to_string())
        }
        Command::Enumerate { amax, bmax, decide } => enumerate(*amax, *bmax, *decide, s)?,
        Command::Render { ideal, out } => {
            let i = proper(ideal)?;
            let svg = render_svg(&i);
            if out.as_os_str() == "-" {
                Output::ok(svg.trim_end().to_string())
            } else {
                fs::write(out, &svg).map_err(|source| CliError::Io {
                    path: out.clone(),
                    source,
                })?;
                let n = NewtonPolygon::of(&i).vertices().len();
                emit(
                    s,
                    json!({ "out": out.display().to_string(), "vertices": n }),
                    || format!("wrote {}", out.display()),
                )
            }
        }
        Command::Selftest => selftest(s),
        Command::Verify { file } => {
            let c: Certificate = serde_json::from_str(&read(file)?)?;
            let diffs = certificate_diff(&c, s.margin);
            let valid = diffs.is_empty();
            let mut out = emit(s, json!({ "valid": valid, "differences": diffs }), || {
                if valid {
                    "certificate verifies".to_string()
                } else {
                    diffs.join("\n")
                }
            });
            out.success = valid;
            out
        }
    };
    Ok(out)
}

fn enumerate(amax: u32, bmax: u32, decide: bool, s: &Settings) -> Result<Output, CliError> {
    let ideals: Vec<MonomialIdeal> = enumerate_complete(amax, bmax).collect();
    if !decide {
        let text = ideals
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("\n");
        let gens: Vec<&MonomialIdeal> = ideals.iter().collect();
        return Ok(emit(s, json!(gens), || text));
    }
    let opts = DecideOptions {
        margin: s.margin,
        ..DecideOptions::default()
    };
    let certs = ideals
        .par_iter()
        .map(|i| choose_k(i, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Value> = certs
        .iter()
        .map(|c| json!({ "ideal": c.input, "branch": c.branch, "k": c.k, "verdict": c.verdict }))
        .collect();
    let text = || {
        certs
            .iter()
            .map(|c| {
                let k = c.k.map_or_else(|| "-".to_string(), |k| k.to_string());
                format!("{}\t{}\t{}\t{}", c.input, c.branch, k, c.verdict)
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    Ok(emit(s, json!(rows), text))
}

fn ideal(src: &str) -> MonomialIdeal {
    parse_ideal(src).expect("built-in example parses")
}

fn selftest(s: &Settings) -> Output {
    let opts = DecideOptions {
        margin: s.margin,
        ..DecideOptions::default()
    };
    let decide_k = |src: &str| choose_k(&ideal(src), &opts).ok().and_then(|c| c.k);
    let two_factor = ideal("(x^5, x^4*y^2, x^3*y^3, x^2*y^4, x*y^6, y^7)");
    let case_one = ideal("(x^7, x^5*y, x^3*y^2, x^2*y^3, x*y^5, y^9)");
    let n4 = ideal("(x,y)*(x,y^2)*closure(x^3,y^2)");

    let mut checks: Vec<(&str, bool)> = vec![
        (
            "two_factor_vertices",
            NewtonPolygon::of(&two_factor).vertices()
                == [
                    Monomial::new(5, 0),
                    Monomial::new(2, 4),
                    Monomial::new(0, 7),
                ],
        ),
        (
            "two_factor_factorization",
            zariski_factor(&two_factor)
                .is_ok_and(|f| f.to_string() == "closure(x^2,y^3) * closure(x^3,y^4)"),
        ),
        (
            "case_one_decision",
            choose_k(&case_one, &opts)
                .is_ok_and(|c| c.k == Some(3) && c.verdict == Verdict::IndecomposableByPaper),
        ),
        (
            "case_two_choices",
            decide_k("(x,y)*(x,y^2)*(x,y^3)*(x,y^4)*(x^2,y)") == Some(5)
                && decide_k("(x,y)*(x,y^2)*(x,y^3)*(x,y^4)*(x,y^3)") == Some(5)
                && decide_k("(x,y)*(x,y^2)*(x,y^3)*(x,y^4)*(x,y^5)") == Some(6),
        ),
        (
            "colength_identities",
            (3..=10u32).all(|r| {
                let a = MonomialIdeal::from_pairs(&[(r, 0), (r - 1, r - 1), (0, r)]);
                let b = MonomialIdeal::from_pairs(&[(r, 0), (1, r - 1), (0, r)]);
                let r = u64::from(r);
                a.is_ok_and(|a| a.colength() == r * r - 1)
                    && b.is_ok_and(|b| b.colength() == r * r - r + 1)
            }),
        ),
        (
            "length_refutation",
            build_mk(&n4, 2)
                .and_then(|p| module_colength(&p, s.margin))
                .is_ok_and(|n| n > 10)
                && ideal("(x^4,x^3*y,y^2)*(x,y^3)") != n4,
        ),
    ];

    let sweep: Vec<MonomialIdeal> = enumerate_complete(5, 6).collect();
    let totality = sweep.par_iter().all(|i| {
        let covered = i.r() >= 3 || (i.r() == 2 && !i.member(Monomial::new(1, 1)));
        match choose_k(i, &opts) {
            Ok(c) => !covered || c.verdict == Verdict::IndecomposableByPaper,
            Err(_) => false,
        }
    });
    checks.push(("decision_totality_5x6", totality));
    let oracle = sweep.par_iter().take(20).all(|i| {
        let c = closure(i);
        let n = default_power_bound(i);
        (0..=8).all(|a| {
            (0..=8).all(|b| {
                let m = Monomial::new(a, b);
                closure_power_oracle(m, i, n) == c.member(m)
            })
        })
    });
    checks.push(("closure_power_oracle_agreement", oracle));

    let success = checks.iter().all(|(_, pass)| *pass);
    let stdout = if s.json {
        let list: Vec<Value> = checks
            .iter()
            .map(|(name, pass)| json!({ "name": name, "pass": pass }))
            .collect();
        pretty(&json!({ "checks": list, "pass": success }))
    } else {
        checks
            .iter()
            .map(|(name, pass)| format!("{} {name}", if *pass { "ok  " } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("\n")
    };
    Output { stdout, success }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code together with stdout and stderr text.
pub fn run<I, T>(args: I, margin: u32) -> (i32, String, String)
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
                (0, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let settings = Settings {
        json: cli.json,
        margin,
    };
    match execute(&cli.command, &settings) {
        Ok(out) => (i32::from(!out.success), out.stdout, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}")),
    }
}
