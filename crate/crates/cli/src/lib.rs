//! Subcommand bodies of the `rumin` binary. Each returns the text it would
//! print so that tests can compare outputs byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use rumin_core::conformance::{verify, ConformanceReport, VerifyConfig};
use rumin_core::currents::cantor::{cantor_report, StageRow};
use rumin_core::currents::{mass_report, Chain, MassReport};
use rumin_core::{RuminComplex, Q};

pub const MAX_N: usize = 4;

/// `%.17g`: 17 significant digits, trailing zeros trimmed.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn check_n(n: usize) -> Result<()> {
    ensure!((1..=MAX_N).contains(&n), "n must lie in 1..={MAX_N}, got {n}");
    Ok(())
}

/// Parses `3/2`, `2` or `0.5`; decimals are converted exactly.
pub fn parse_lambda(s: &str) -> Result<Q> {
    let s = s.trim();
    let v = match s.parse::<Q>() {
        Ok(v) => v,
        Err(_) => {
            let f: f64 = s.parse().with_context(|| format!("invalid scale factor {s:?}"))?;
            Q::from_float(f).with_context(|| format!("invalid scale factor {s:?}"))?
        }
    };
    ensure!(v > Q::from_integer(0.into()), "scale factor must be positive, got {s}");
    Ok(v)
}

pub fn cmd_tables(n: usize, csv: bool) -> Result<String> {
    check_n(n)?;
    let rc = RuminComplex::get(n);
    let table = rc.dimension_table()?;
    let mut out = String::new();
    let header = ["degree", "dim_lambda", "dim_e0", "weight_min", "weight_max", "e0_weight", "pi_e0_rank"];
    let rows: Vec<[usize; 7]> = table
        .iter()
        .map(|r| {
            let rank = rc.pi_e0().block(r.degree).map_or(1, |b| b.matrix.rank());
            [r.degree, r.dim_lambda, r.dim_e0, r.lambda_weights.0, r.lambda_weights.1, r.e0_weight, rank]
        })
        .collect();
    if csv {
        writeln!(out, "{}", header.join(","))?;
        for r in &rows {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    } else {
        writeln!(out, "H^{n}: dim {}", 2 * n + 1)?;
        let line: Vec<String> = header.iter().map(|h| format!("{h:>10}")).collect();
        writeln!(out, "{}", line.join(" "))?;
        for r in &rows {
            let line: Vec<String> = r.iter().map(|c| format!("{c:>10}")).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    Ok(out)
}

/// Options of the `verify` subcommand.
#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub n: usize,
    pub degree_bound: u32,
    pub seed: u64,
    pub instances: usize,
    pub corrupt_dtheta: bool,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        VerifyArgs {
            n: 1,
            degree_bound: 3,
            seed: 7,
            instances: 200,
            corrupt_dtheta: false,
        }
    }
}

pub fn run_verify(args: &VerifyArgs) -> Result<ConformanceReport> {
    check_n(args.n)?;
    let cfg = VerifyConfig {
        n: args.n,
        degree_bound: args.degree_bound,
        seed: args.seed,
        instances: args.instances,
        current_instances: args.instances.min(50),
        dtheta_sign: if args.corrupt_dtheta { -1 } else { 1 },
    };
    Ok(verify(&cfg)?)
}

pub fn render_report(rep: &ConformanceReport, json: bool) -> Result<String> {
    if json {
        return Ok(serde_json::to_string_pretty(rep)? + "\n");
    }
    let mut out = String::new();
    writeln!(out, "H^{}  degree bound {}  seed {}", rep.n, rep.degree_bound, rep.seed)?;
    let width = rep.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in &rep.rows {
        writeln!(out, "{:<4}  {:<width$}  {:>5}  {}", r.status, r.name, r.instances, r.anchor)?;
        if let Some(c) = &r.counterexample {
            writeln!(out, "      counterexample: {c}")?;
        }
    }
    writeln!(out, "{} passed, {} failed, {} total", rep.passed, rep.failed, rep.total)?;
    Ok(out)
}

/// Returns the rendered report and whether every row passed.
pub fn cmd_verify(args: &VerifyArgs, json: bool) -> Result<(String, bool)> {
    let rep = run_verify(args)?;
    Ok((render_report(&rep, json)?, rep.all_pass()))
}

pub fn load_chain(path: &Path) -> Result<Chain> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Chain::from_json(&text).with_context(|| format!("in {}", path.display()))
}

pub fn cmd_mass(path: &Path, oblique: bool, rumin: bool, csv: bool) -> Result<String> {
    let chain = load_chain(path)?;
    Ok(render_mass(&mass_report(&chain), oblique, rumin, csv))
}

pub fn render_mass(rep: &MassReport, oblique: bool, rumin: bool, csv: bool) -> String {
    let mut cols = vec![("mass", fmt_f64(rep.riemannian_mass))];
    if oblique {
        cols.push(("oblique_mass", fmt_f64(rep.oblique_mass)));
    }
    if rumin {
        cols.push(("rumin_mass", fmt_f64(rep.rumin_mass)));
    }
    cols.push(("quadrature_error_estimate", fmt_f64(rep.quadrature_error_estimate)));
    cols.push(("upper_bound", rep.upper_bound.to_string()));
    if csv {
        let head: Vec<&str> = cols.iter().map(|c| c.0).collect();
        let vals: Vec<&str> = cols.iter().map(|c| c.1.as_str()).collect();
        format!("{}\n{}\n", head.join(","), vals.join(","))
    } else {
        cols.iter().map(|(k, v)| format!("{k:<26}{v}\n")).collect()
    }
}

/// One row of a dilation sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub mass: f64,
    pub oblique_mass: f64,
    pub bound: f64,
    pub ratio: f64,
}

pub fn sweep(chain: &Chain, lambdas: &[Q]) -> Result<Vec<SweepRow>> {
    let k = chain.dim() as i32;
    let base = mass_report(chain);
    lambdas
        .iter()
        .map(|l| {
            let lf = rumin_core::to_f64(l);
            let rep = mass_report(&chain.pushforward_dilation(l)?);
            Ok(SweepRow {
                lambda: lf,
                mass: rep.riemannian_mass,
                oblique_mass: rep.oblique_mass,
                bound: lf.powi(k + 1) * base.oblique_mass + lf.powi(k) * base.riemannian_mass,
                ratio: rep.riemannian_mass / lf.powi(k + 1),
            })
        })
        .collect()
}

pub fn render_sweep(rows: &[SweepRow]) -> String {
    let mut out = String::from("lambda,mass,oblique_mass,bound,ratio_mass_over_lambda_k1\n");
    for r in rows {
        let cells = [r.lambda, r.mass, r.oblique_mass, r.bound, r.ratio].map(fmt_f64);
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn cmd_sweep(path: &Path, lambdas: &[String]) -> Result<String> {
    if lambdas.is_empty() {
        bail!("at least one scale factor is required");
    }
    let chain = load_chain(path)?;
    let ls = lambdas.iter().map(|s| parse_lambda(s)).collect::<Result<Vec<_>>>()?;
    Ok(render_sweep(&sweep(&chain, &ls)?))
}

pub fn render_cantor(rows: &[StageRow]) -> String {
    let mut out = String::from("stage,gap_length,vertical_displacement,s_j,max_abs_theta_on_a\n");
    for r in rows {
        let cells = [r.gap_length, r.vertical_displacement, r.s_j, r.max_abs_theta_on_a].map(fmt_f64);
        out.push_str(&format!("{},{}\n", r.stage, cells.join(",")));
    }
    out
}

pub fn cmd_cantor(levels: usize, gap_exponent: f64, degenerate: bool) -> Result<String> {
    Ok(render_cantor(&cantor_report(levels, gap_exponent, degenerate)?))
}

/// Writes to `out` if given, else returns the text for stdout.
pub fn emit(text: String, out: Option<&Path>) -> Result<Option<String>> {
    match out {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(1.0), "1");
        assert_eq!(fmt_f64(0.1), "0.10000000000000001");
        assert_eq!(fmt_f64(-2.5), "-2.5");
        assert_eq!(fmt_f64(1e-9), "1.0000000000000001e-9");
        assert_eq!(fmt_f64(12.0), "12");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.33333333333333331");
    }

    #[test]
    fn lambdas() {
        assert_eq!(parse_lambda("3/2").unwrap(), rumin_core::q(3, 2));
        assert_eq!(parse_lambda("0.5").unwrap(), rumin_core::q(1, 2));
        assert!(parse_lambda("0").is_err());
        assert!(parse_lambda("-1").is_err());
        assert!(parse_lambda("abc").is_err());
    }

    #[test]
    fn n_range() {
        assert!(cmd_tables(0, false).is_err());
        assert!(cmd_tables(5, true).is_err());
    }
}
