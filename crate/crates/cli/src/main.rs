//! `barnesbeta`: evaluation, verification suites and Monte-Carlo reports.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::process::ExitCode;

use barnesbeta::mellin::{eta, mass_at_one, moment_int, BarnesBetaParams, MassMethod};
use barnesbeta::multigamma::{ln_barnes_g, log_gamma, log_multigamma};
use barnesbeta::sampling::{mc_mellin_streams, BetaSampler, RngStream, Variate};
use barnesbeta::selberg::{
    critical_log_mellin, critical_sampler, selberg_log_mellin, selberg_moment, selberg_sampler, SelbergParams,
};
use barnesbeta::series::GammaParams;
use barnesbeta::verify::{run_suite, CheckRecord, Suite, VerifyOptions};
use barnesbeta::xi::{theta, xi, zeta_complex, SeriesSampler, TDeltaParams};
use barnesbeta::{Complex64, Error, QuadratureConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_ACCURACY: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "barnesbeta", version, about = "Barnes multiple gamma, Barnes beta, Selberg and xi computations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// RNG seed (decimal or 0x-hex).
    #[arg(long, global = true, value_parser = parse_seed, default_value = "0xB41215")]
    seed: u64,
    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<std::path::PathBuf>,
    /// Omit timestamps so equal inputs give byte-identical reports.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Digits after the decimal point in text output.
    #[arg(long, global = true, default_value_t = 7)]
    digits: usize,
    /// Relative tolerance of the quadratures.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct BetaArgs {
    /// Periods `a`, comma separated (empty for M = 0).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "")]
    a: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    b0: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "")]
    b: Vec<String>,
    /// Expected M, checked against `--a`.
    #[arg(long = "M")]
    m: Option<usize>,
    /// Expected N, checked against `--b`.
    #[arg(long = "N")]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// log Γ_M(w|a), or log G(w) with `--barnes-g`.
    Gamma {
        #[arg(long, value_delimiter = ',', default_value = "")]
        a: Vec<String>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long)]
        barnes_g: bool,
    },
    /// Mellin transform η_{M,N}(q|a,b).
    Eta {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Complex64,
    },
    /// Integer moments E[β^{±k a_i}].
    Moments {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i32,
        #[arg(long, default_value_t = 0)]
        i: usize,
    },
    /// P[β = 1] for M < N.
    Mass {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: MassArg,
    },
    /// Draws from one of the laws.
    Sample {
        #[arg(long, value_enum)]
        law: Law,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "")]
        a: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        b0: Option<f64>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        b: Vec<String>,
        /// Truncation K of the β_{N,N} product sampler.
        #[arg(long = "K", default_value_t = 200)]
        k: usize,
        #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda2: f64,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        /// Floor on every analytic threshold.
        #[arg(long)]
        tol: Option<f64>,
        /// Draws per Monte-Carlo check.
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
    /// Analytic and Monte-Carlo Mellin table of M_(τ,λ₁,λ₂).
    Selberg {
        #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda2: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,-1,0.5")]
        q: Vec<f64>,
        /// Monte-Carlo draws; 0 skips the simulation.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Analytic and Monte-Carlo Mellin table of the critical law.
    Critical {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,-1,0.5")]
        q: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// ξ(s), ζ(s) or θ(t).
    Xi {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        eval: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        zeta: Option<Complex64>,
        #[arg(long)]
        theta: Option<f64>,
        /// Triple-product truncation of θ.
        #[arg(long = "M")]
        m: Option<usize>,
    },
    /// Full report: all suites plus the Selberg and critical moment tables.
    Report {
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MassArg {
    Quadrature,
    SnFormula,
    Product,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Law {
    /// β_{M,N}: compound Poisson for M < N, truncated product for M = N.
    Beta,
    Selberg,
    Critical,
    /// S₂(δ) + Exp(δ).
    TDelta,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16).map_err(|e| e.to_string()),
        None => t.parse().map_err(|e: std::num::ParseIntError| e.to_string()),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `re`, `imi`, `re+imi` or `re-imi`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {s:?}; use re+imi");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|r| Complex64::new(r, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

fn parse_reals(v: &[String]) -> Result<Vec<f64>, Error> {
    v.iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::domain(format!("not a number: {s:?}"))))
        .collect()
}

fn beta_params(b: &BetaArgs) -> Result<BarnesBetaParams<f64>, Error> {
    let a = parse_reals(&b.a)?;
    let bb = parse_reals(&b.b)?;
    if let Some(m) = b.m {
        if m != a.len() {
            return Err(Error::domain(format!("--M {m} but {} periods given", a.len())));
        }
    }
    if let Some(n) = b.n {
        if n != bb.len() {
            return Err(Error::domain(format!("--N {n} but {} b values given", bb.len())));
        }
    }
    BarnesBetaParams::new(a, b.b0, bb)
}

struct Out {
    g: Global,
    buf: String,
}

impl Out {
    fn fmt(&self, default: Format) -> Format {
        self.g.format.unwrap_or(default)
    }

    fn num(&self, x: f64) -> String {
        if x != 0.0 && x.is_finite() && !(1e-4..1e16).contains(&x.abs()) {
            return format!("{x:.*e}", self.g.digits);
        }
        format!("{x:.*}", self.g.digits)
    }

    fn cnum(&self, z: Complex64) -> String {
        if z.im == 0.0 {
            self.num(z.re)
        } else {
            let sign = if z.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", self.num(z.re), self.num(z.im.abs()))
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    fn json(&mut self, mut v: serde_json::Value) {
        if let Some(obj) = v.as_object_mut() {
            obj.insert("seed".into(), json!(self.g.seed));
            obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            if !self.g.deterministic {
                let secs = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                obj.insert("generated_at_unix".into(), json!(secs));
            }
        }
        self.line(serde_json::to_string_pretty(&v).expect("serializable"));
    }

    fn flush(&self) -> std::io::Result<()> {
        match &self.g.output {
            Some(p) => std::fs::write(p, &self.buf),
            None => std::io::stdout().write_all(self.buf.as_bytes()),
        }
    }
}

/// `exp` that keeps a zero imaginary part exact, so overflow reads `inf` rather than `inf+NaNi`.
fn cexp(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re.exp(), 0.0)
    } else {
        z.exp()
    }
}

fn cz(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Pole(_) | Error::Capacity(_) => EXIT_DOMAIN,
        Error::Accuracy { .. } | Error::Truncation { .. } => EXIT_ACCURACY,
    }
}

#[derive(Serialize)]
struct MomentRow {
    q: f64,
    analytic: f64,
    mc_mean: Option<f64>,
    mc_stderr: Option<f64>,
    z: Option<f64>,
}

fn moment_table(
    analytic: impl Fn(f64) -> Result<f64, Error>,
    sampler: Option<&(dyn Variate + Sync)>,
    qs: &[f64],
    n: usize,
    seed: u64,
) -> Result<Vec<MomentRow>, Error> {
    let mut rows = Vec::new();
    for (k, &q) in qs.iter().enumerate() {
        let a = analytic(q)?;
        let mc = match sampler {
            Some(s) if n > 0 => Some(mc_mellin_streams(s, q, n, seed.wrapping_add(k as u64), 8)?),
            _ => None,
        };
        rows.push(MomentRow {
            q,
            analytic: a,
            mc_mean: mc.as_ref().map(|m| m.mean),
            mc_stderr: mc.as_ref().map(|m| m.stderr),
            z: mc.as_ref().map(|m| (m.mean - a).abs() / m.stderr),
        });
    }
    Ok(rows)
}

fn table_text(out: &mut Out, rows: &[MomentRow]) {
    out.line("q,analytic,mc_mean,mc_stderr,z");
    for r in rows {
        let o = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
        out.line(format!("{},{},{},{},{}", r.q, r.analytic, o(r.mc_mean), o(r.mc_stderr), o(r.z)));
    }
}

fn checks_out(out: &mut Out, checks: &[CheckRecord], extra: serde_json::Value) {
    let pass = checks.iter().all(|c| c.pass);
    match out.fmt(Format::Json) {
        Format::Json => {
            let mut v = json!({ "pass": pass, "checks": checks });
            if let (Some(o), Some(e)) = (v.as_object_mut(), extra.as_object()) {
                o.extend(e.clone());
            }
            out.json(v)
        }
        Format::Csv => {
            out.line("name,paper_ref,lhs,rhs,residual,threshold,pass");
            for c in checks {
                out.line(format!("{},\"{}\",{},{},{},{},{}", c.name, c.paper_ref.replace('"', "'"), c.lhs, c.rhs, c.residual, c.threshold, c.pass));
            }
        }
        Format::Text => {
            for c in checks {
                out.line(format!("{} {} residual={:.3e} threshold={:.1e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.residual, c.threshold));
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = cli.global.rel_tol {
        if !(t > 0.0) {
            return Err(Error::domain("--rel-tol must be positive"));
        }
        cfg.rel_tol = t;
    }
    let seed = cli.global.seed;
    let mut out = Out { g: cli.global, buf: String::new() };
    let mut code = 0u8;
    match cli.cmd {
        Cmd::Gamma { a, w, barnes_g } => {
            let (v, err) = if barnes_g {
                (ln_barnes_g(w, &cfg)?, 0.0)
            } else {
                let p = GammaParams::new(parse_reals(&a)?)?;
                let r = if p.M() == 1 { log_gamma(&p, w, &cfg)? } else { log_multigamma(&p, w, &cfg)? };
                (r.value, r.est_error)
            };
            match out.fmt(Format::Text) {
                Format::Json => out.json(json!({ "w": cz(w), "log_value": cz(v), "value": cz(cexp(v)), "est_error": err })),
                Format::Csv => out.line(format!("w_re,w_im,log_re,log_im,est_error\n{},{},{},{},{err}", w.re, w.im, v.re, v.im)),
                Format::Text => {
                    let s = format!("log = {}  value = {}  est_error = {err:.1e}", out.cnum(v), out.cnum(cexp(v)));
                    out.line(s)
                }
            }
        }
        Cmd::Eta { beta, q } => {
            let p = beta_params(&beta)?;
            let v = eta(&p, q, &cfg)?;
            match out.fmt(Format::Text) {
                Format::Json => out.json(json!({ "q": cz(q), "value": cz(v.value), "est_error": v.est_error, "in_strip": v.in_strip })),
                Format::Csv => out.line(format!("q_re,q_im,re,im,est_error\n{},{},{},{},{}", q.re, q.im, v.value.re, v.value.im, v.est_error)),
                Format::Text => {
                    let s = format!("eta = {}  est_error = {:.1e}", out.cnum(v.value), v.est_error);
                    out.line(s)
                }
            }
        }
        Cmd::Moments { beta, k, sign, i } => {
            let p = beta_params(&beta)?;
            let m = moment_int(&p, k, sign, i, &cfg)?;
            let ai = if p.M() == 0 { 1.0 } else { p.a.a.get(i).copied().ok_or_else(|| Error::domain("period index out of range"))? };
            let q = sign as f64 * k as f64 * ai;
            match out.fmt(Format::Text) {
                Format::Json => out.json(json!({ "k": k, "sign": sign, "i": i, "q": q, "moment": m })),
                Format::Csv => out.line(format!("q,moment\n{q},{m}")),
                Format::Text => {
                    let s = format!("E[beta^{q}] = {}", out.num(m));
                    out.line(s)
                }
            }
        }
        Cmd::Mass { beta, method } => {
            let p = beta_params(&beta)?;
            let methods: Vec<(&str, MassMethod)> = match method {
                MassArg::Quadrature => vec![("quadrature", MassMethod::Quadrature)],
                MassArg::SnFormula => vec![("sn_formula", MassMethod::SnFormula)],
                MassArg::Product => vec![("product", MassMethod::Product)],
                MassArg::All => vec![("quadrature", MassMethod::Quadrature), ("sn_formula", MassMethod::SnFormula), ("product", MassMethod::Product)],
            };
            let mut vals = Vec::new();
            for (name, mm) in methods {
                vals.push((name, mass_at_one(&p, mm, &cfg)?));
            }
            match out.fmt(Format::Text) {
                Format::Json => out.json(json!({ "mass_at_one": vals.iter().map(|(n, v)| json!({ "method": n, "value": v })).collect::<Vec<_>>() })),
                Format::Csv => {
                    out.line("method,value");
                    for (n, v) in &vals {
                        out.line(format!("{n},{v}"));
                    }
                }
                Format::Text => {
                    for (n, v) in &vals {
                        let s = format!("{n}: {}", out.num(*v));
                        out.line(s);
                    }
                }
            }
        }
        Cmd::Sample { law, n, a, b0, b, k, tau, lambda1, lambda2, delta, stream } => {
            let mut rng = RngStream::new(seed, stream).rng();
            let draws = match law {
                Law::Beta => {
                    let args = BetaArgs { a, b0: b0.ok_or_else(|| Error::domain("--b0 is required for the beta law"))?, b, m: None, n: None };
                    let p = beta_params(&args)?;
                    let s = if p.M() < p.N() { BetaSampler::compound(&p, &cfg)? } else { BetaSampler::product(&p, 0, k, true, 1e-4, &cfg)? };
                    s.draw_n(&mut rng, n)
                }
                Law::Selberg => selberg_sampler(&SelbergParams::new(tau, lambda1, lambda2)?, k, &cfg)?.draw_n(&mut rng, n),
                Law::Critical => critical_sampler(k, &cfg)?.draw_n(&mut rng, n),
                Law::TDelta => SeriesSampler::new(TDeltaParams::new(delta, 10_000, true)?, true)?.draw_n(&mut rng, n),
            };
            match out.fmt(Format::Csv) {
                Format::Json => out.json(json!({ "draws": draws })),
                Format::Csv => {
                    out.line("index,value");
                    for (i, d) in draws.iter().enumerate() {
                        out.line(format!("{i},{d}"));
                    }
                }
                Format::Text => {
                    for d in &draws {
                        out.line(format!("{d}"));
                    }
                }
            }
        }
        Cmd::Verify { suite, tol, samples } => {
            if tol.is_some_and(|t| !(t > 0.0)) {
                return Err(Error::domain("--tol must be positive"));
            }
            let opts = VerifyOptions { tol, seed, samples, cfg, ..VerifyOptions::default() };
            let checks = run_suite(suite, &opts)?;
            if !checks.iter().all(|c| c.pass) {
                code = EXIT_FAIL;
            }
            checks_out(&mut out, &checks, json!({ "suite": suite }));
        }
        Cmd::Selberg { tau, lambda1, lambda2, q, samples } => {
            let p = SelbergParams::new(tau, lambda1, lambda2)?;
            let sampler = if samples > 0 { Some(selberg_sampler(&p, 200, &cfg)?) } else { None };
            let rows = moment_table(
                |q| Ok(selberg_log_mellin(&p, Complex64::new(q, 0.0), &cfg)?.exp().re),
                sampler.as_ref().map(|s| s as &(dyn Variate + Sync)),
                &q,
                samples,
                seed,
            )?;
            let ints: Vec<_> = (1..=3usize).filter_map(|l| selberg_moment(&p, l, -1).ok().map(|v| json!({ "l": -(l as i64), "moment": v }))).collect();
            match out.fmt(Format::Json) {
                Format::Json => out.json(json!({ "params": p, "rows": rows, "negative_moments": ints })),
                _ => table_text(&mut out, &rows),
            }
        }
        Cmd::Critical { q, samples } => {
            let sampler = if samples > 0 { Some(critical_sampler(200, &cfg)?) } else { None };
            let rows = moment_table(
                |q| Ok(critical_log_mellin(Complex64::new(q, 0.0), &cfg)?.exp().re),
                sampler.as_ref().map(|s| s as &(dyn Variate + Sync)),
                &q,
                samples,
                seed,
            )?;
            match out.fmt(Format::Json) {
                Format::Json => out.json(json!({ "rows": rows })),
                _ => table_text(&mut out, &rows),
            }
        }
        Cmd::Xi { eval, zeta, theta: t, m } => {
            if eval.is_none() && zeta.is_none() && t.is_none() {
                return Err(Error::domain("xi needs one of --eval, --zeta, --theta"));
            }
            let mut items = Vec::new();
            if let Some(s) = eval {
                items.push(("xi", xi(s)?));
            }
            if let Some(s) = zeta {
                items.push(("zeta", zeta_complex(s)?));
            }
            if let Some(t) = t {
                items.push(("theta", Complex64::new(theta(t, m)?, 0.0)));
            }
            match out.fmt(Format::Text) {
                Format::Json => out.json(json!(items.iter().map(|(k, v)| (k.to_string(), cz(*v))).collect::<serde_json::Map<_, _>>())),
                Format::Csv => {
                    out.line("name,re,im");
                    for (k, v) in &items {
                        out.line(format!("{k},{},{}", v.re, v.im));
                    }
                }
                Format::Text => {
                    for (_, v) in &items {
                        let s = out.cnum(*v);
                        out.line(s);
                    }
                }
            }
        }
        Cmd::Report { samples } => {
            let opts = VerifyOptions { seed, samples, cfg, ..VerifyOptions::default() };
            let checks = run_suite(Suite::All, &opts)?;
            if !checks.iter().all(|c| c.pass) {
                code = EXIT_FAIL;
            }
            let p = SelbergParams::new(1.5, 0.0, 0.0)?;
            let ss = selberg_sampler(&p, 200, &cfg)?;
            let sel = moment_table(|q| Ok(selberg_log_mellin(&p, Complex64::new(q, 0.0), &cfg)?.exp().re), Some(&ss), &[-2.0, -1.0, 0.5], samples, seed ^ 0x5e1)?;
            let cs = critical_sampler(200, &cfg)?;
            let crit = moment_table(|q| Ok(critical_log_mellin(Complex64::new(q, 0.0), &cfg)?.exp().re), Some(&cs), &[-2.0, -1.0, 0.5], samples, seed ^ 0xc41)?;
            checks_out(&mut out, &checks, json!({ "suite": Suite::All, "selberg_moments": { "params": p, "rows": sel }, "critical_moments": { "rows": crit } }));
        }
    }
    out.flush().map_err(|e| Error::domain(format!("cannot write output: {e}")))?;
    Ok(code)
}

fn configure_threads() {
    if let Ok(v) = std::env::var("BARNESBETA_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                // only fails if a pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
