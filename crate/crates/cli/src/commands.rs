//! Subcommand bodies. Each writes to the given streams and returns the exit code.

use crate::args::{ArakiArgs, ComputeArgs, ExamplesArgs, PairArgs, ScanArgs, VerifyArgs};
use crate::curve::{parse_grid, round12, CurveCsv};
use crate::error::{CliError, Result, EXIT_OK, EXIT_VIOLATION};
use crate::state_file::load_state;
use petz::araki::{araki_report, kl_term_compare};
use petz::sequence::{
    builtin, certified_sum, classify, divergence_threshold_ln, entropy_certificate, entropy_partial_sum,
    entropy_series, infty_minus_infty_state, seq_divergence, BuiltinExample, ConvergenceCertificate, Rule, SeqTerm,
    Verdict, DEFAULT_REL_TOL, EXAMPLE_NAMES,
};
use petz::verify::{run_suite, SuiteConfig, INEQ_TOL};
use petz::{petz_renyi, DensityState, ExtendedReal, LogBase};
use std::io::Write;

/// `{:.12}` for finite values, the reason tag otherwise. Values that round
/// to zero print without a sign.
pub fn format_value(v: ExtendedReal) -> String {
    match v {
        ExtendedReal::Finite(x) => {
            let text = format!("{x:.12}");
            match text.strip_prefix('-') {
                Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => format!("{rest} finite"),
                _ => format!("{text} finite"),
            }
        }
        other => other.to_string(),
    }
}

fn load_pair(p: &PairArgs) -> Result<(DensityState, DensityState)> {
    if !(p.tol >= 0.0 && p.tol.is_finite()) {
        return Err(CliError::Core(petz::Error::InvalidInput(format!(
            "--tol must be a nonnegative number, got {}",
            p.tol
        ))));
    }
    let rho = load_state(&p.rho, p.tol)?;
    let sigma = load_state(&p.sigma, p.tol)?;
    if rho.dim() != sigma.dim() {
        return Err(petz::Error::DimMismatch(rho.dim(), sigma.dim()).into());
    }
    Ok((rho, sigma))
}

pub fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<u8> {
    let (rho, sigma) = load_pair(&args.pair)?;
    let d = petz_renyi(&rho, &sigma, args.alpha)?.in_base(args.output.base);
    writeln!(out, "{}", format_value(d))?;
    Ok(EXIT_OK)
}

pub fn scan(args: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let grid = parse_grid(&args.grid)?;
    let (rho, sigma) = load_pair(&args.pair)?;
    let mut curve = petz::petz::alpha_scan(&rho, &sigma, &grid)?;
    for v in &mut curve.values {
        *v = v.in_base(args.output.base);
    }
    for i in curve.monotonicity_violations(INEQ_TOL) {
        writeln!(
            err,
            "warning: D_alpha decreases between alpha={} ({}) and alpha={} ({})",
            curve.grid[i],
            curve.values[i],
            curve.grid[i + 1],
            curve.values[i + 1]
        )?;
    }
    let csv = CurveCsv::from_curve(&curve);
    match &args.csv {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            csv.write(file)?;
            writeln!(out, "wrote {} rows to {}", csv.rows().len(), path.display())?;
        }
        None => csv.write(out)?,
    }
    Ok(EXIT_OK)
}

fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::Geometric => "geometric",
        Rule::QuadraticExponent => "quadratic-exponent",
        Rule::PSeries => "p-series",
        Rule::LogPSeries => "log-p-series",
    }
}

pub fn format_certificate(c: &ConvergenceCertificate) -> String {
    let verdict = match c.verdict {
        Verdict::Converges => "converges",
        Verdict::Diverges => "diverges",
    };
    format!(
        "{verdict} by {} (2^({} j^2) 2^({} j) j^{} ln^{} j)",
        rule_name(c.rule),
        round12(c.quad_log2),
        round12(c.geo_log2),
        round12(c.poly_pow),
        round12(c.log_pow)
    )
}

fn finiteness(finite: bool) -> &'static str {
    if finite {
        "finite"
    } else {
        "infinite"
    }
}

/// Table of expected against computed verdicts; returns the mismatch count.
fn example_table(ex: &BuiltinExample, base: LogBase, out: &mut dyn Write) -> Result<usize> {
    let Some(pair) = &ex.pair else { return Ok(0) };
    let mut mismatches = 0;
    writeln!(
        out,
        "  {:<7} {:<9} {:<28} {:<6} certificate",
        "alpha", "expected", "computed", "match"
    )?;
    for e in &ex.expected {
        let (computed, cert, ok) = match seq_divergence(pair, e.order) {
            Ok(d) => {
                let cert = d
                    .certificate
                    .as_ref()
                    .map(format_certificate)
                    .unwrap_or_else(|| "-".into());
                (format_value(d.value.in_base(base)), cert, d.is_finite() == e.finite)
            }
            Err(err) => (format!("error: {err}"), "-".into(), false),
        };
        if !ok {
            mismatches += 1;
        }
        let flag = if ok { "ok" } else { "FAIL" };
        writeln!(
            out,
            "  {:<7} {:<9} {:<28} {:<6} {cert}",
            e.order.to_string(),
            finiteness(e.finite),
            computed,
            flag
        )?;
    }
    Ok(mismatches)
}

fn counterexample_contrast(out: &mut dyn Write) -> Result<usize> {
    let report = araki_report(100_000, 5.0);
    writeln!(out, "  Araki entropy S(phi_rho||phi_sigma), partial sums c ln2 H_N:")?;
    for n in [1usize, 10, 100, 1_000, 10_000, 100_000] {
        writeln!(out, "    N = {n:<7} {:.12}", report.partial_sums[n - 1])?;
    }
    writeln!(out, "    exceeds {} at N = {}", report.threshold, report.threshold_n)?;
    writeln!(out, "    series: {}", format_certificate(&report.certificate))?;
    writeln!(
        out,
        "    S(phi_rho||phi_sigma) = +inf:{}",
        petz::InfinityReason::DivergentSum.tag()
    )?;
    let it = report.it_value;
    writeln!(out, "  trace expression value = {}", format_value(it.value))?;
    writeln!(
        out,
        "    domain +inf:{}: |log2 sigma_j|^2 w_j = {} for all j, {}",
        it.domain.reason.tag(),
        it.domain.series.coeff,
        format_certificate(&it.domain.certificate)
    )?;
    writeln!(
        out,
        "  mismatch (infinite vs finite): {}",
        if report.mismatch { "yes" } else { "no" }
    )?;
    Ok(usize::from(!report.mismatch))
}

fn entropy_report(out: &mut dyn Write) -> Result<usize> {
    let mut mismatches = 0;
    let raw = SeqTerm::new(1.0).poly(-1.0).log(-2.0);
    let norm = certified_sum(&raw, DEFAULT_REL_TOL)?;
    let norm_cert = classify(&raw);
    writeln!(
        out,
        "  normalizer sum_(i>=2) 1/(i ln^2 i) = {:.12} +- {:.1e}",
        norm.value, norm.tail_bound
    )?;
    writeln!(out, "    {}", format_certificate(&norm_cert))?;
    mismatches += usize::from(!norm_cert.converges());

    let r = infty_minus_infty_state();
    let cert = entropy_certificate(&r)?;
    writeln!(out, "  entropy -sum r_i ln r_i: {}", format_certificate(&cert))?;
    mismatches += usize::from(cert.converges());
    for n in [10u64, 1_000, 100_000] {
        writeln!(out, "    partial sum N = {n:<7} {:.12}", entropy_partial_sum(&r, n))?;
    }
    let (series, _) = entropy_series(&r);
    if let Some((_, dominant)) = series.dominant() {
        if let Some(ln_n) = divergence_threshold_ln(dominant, 5.0) {
            writeln!(out, "    exceeds 5 by ln N = {ln_n:.6e}")?;
        }
    }
    Ok(mismatches)
}

fn run_example(ex: &BuiltinExample, base: LogBase, out: &mut dyn Write) -> Result<usize> {
    writeln!(out, "== {}: {}", ex.name, ex.description)?;
    let mut mismatches = example_table(ex, base, out)?;
    match ex.name {
        "counterexample" => mismatches += counterexample_contrast(out)?,
        "infty-minus-infty" => mismatches += entropy_report(out)?,
        _ => {}
    }
    Ok(mismatches)
}

pub fn examples(args: &ExamplesArgs, out: &mut dyn Write) -> Result<u8> {
    let names: Vec<&str> = match &args.select.name {
        Some(n) => vec![n.as_str()],
        None => EXAMPLE_NAMES.to_vec(),
    };
    let mut mismatches = 0;
    for name in names {
        let ex = builtin(name).ok_or_else(|| CliError::UnknownExample(name.to_string()))?;
        mismatches += run_example(&ex, args.output.base, out)?;
    }
    if mismatches == 0 {
        writeln!(out, "result: PASS")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "result: FAIL ({mismatches} mismatches)")?;
        Ok(EXIT_VIOLATION)
    }
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    if args.trials < 1 || args.dim < 1 {
        return Err(petz::Error::InvalidInput("--trials and --dim must be at least 1".into()).into());
    }
    let report = run_suite(SuiteConfig {
        trials: args.trials,
        max_dim: args.dim,
        seed: args.seed,
        inject_fault: args.inject_bug,
    })?;
    writeln!(out, "{report}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn araki_demo(args: &ArakiArgs, out: &mut dyn Write) -> Result<u8> {
    if args.n < 1 || args.n > 10_000_000 {
        return Err(petz::Error::InvalidInput("--n must be in 1..=10000000".into()).into());
    }
    if !(args.threshold > 0.0 && args.threshold.is_finite()) {
        return Err(petz::Error::InvalidInput("--threshold must be positive and finite".into()).into());
    }
    let report = araki_report(args.n, args.threshold);
    let mut n = 1u64;
    while n <= args.n {
        writeln!(out, "N = {n:<9} S_N = {:.12}", report.partial_sums[n as usize - 1])?;
        n *= 10;
    }
    if (n / 10) != args.n {
        writeln!(
            out,
            "N = {:<9} S_N = {:.12}",
            args.n,
            report.partial_sums[args.n as usize - 1]
        )?;
    }
    writeln!(
        out,
        "S_N exceeds {} first at N = {}",
        report.threshold, report.threshold_n
    )?;
    writeln!(out, "series: {}", format_certificate(&report.certificate))?;
    writeln!(out, "trace expression value: {}", format_value(report.it_value.value))?;
    writeln!(
        out,
        "domain: +inf:{} (terms {} each, {})",
        report.it_value.domain.reason.tag(),
        report.it_value.domain.series.coeff,
        format_certificate(&report.it_value.domain.certificate)
    )?;
    let residual = kl_term_compare(args.n.min(1000))?;
    writeln!(out, "KL term residual over N <= {}: {residual:.3e}", args.n.min(1000))?;
    writeln!(out, "mismatch: {}", if report.mismatch { "yes" } else { "no" })?;
    Ok(EXIT_OK)
}

/// Runs one parsed command line; errors are reported on `err`.
pub fn run(cli: &crate::args::Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    use crate::args::Command;
    let result = match &cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Scan(a) => scan(a, out, err),
        Command::Examples(a) => examples(a, out),
        Command::Verify(a) => verify(a, out),
        Command::ArakiDemo(a) => araki_demo(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
