use crate::output::{emit, fmt_num, render_csv, render_json, Cell, Format, RunManifest, Table};
use crate::{AnalyzeArgs, Check, CliError, Common, InghamArgs, KernelArgs, MethodArg, Problem, SpectrumArgs, Which, ZerosArgs};
use hprolate::analysis::{
    decay_check, kernel_residual, l2_spectral_distance, plunge_check, sandwich_check, trace_check, BoundReport, TRACE_IDENTITY_TOL,
};
use hprolate::bessel::{find_zeros, Order, ZeroTable};
use hprolate::ingham::{chain_link, ingham_eigenvalue, ChainLink, InghamConfig, InghamResult};
use hprolate::kernels::{grid_points, kernel_grid, Band, KernelKind, ProblemConfig};
use hprolate::spectra::{Method, Spectrum};
use serde::Serialize;
use std::collections::BTreeMap;

type Result<T> = std::result::Result<T, CliError>;

fn write(common: &Common, manifest: &RunManifest, table: &Table, body: impl Serialize) -> Result<()> {
    let text = match common.format {
        Format::Csv => render_csv(manifest, table),
        Format::Json => render_json(manifest, body)?,
    };
    emit(&text, common.out.as_deref())?;
    Ok(())
}

fn build_problem(p: &Problem, manifest: &mut RunManifest) -> Result<ProblemConfig> {
    let order = Order::new(p.alpha)?;
    let band = Band::new(p.omega)?;
    if p.n == 0 {
        return Err(CliError::Usage("n must be >= 1".into()));
    }
    let mut config = ProblemConfig::new(order, band, p.n)?;
    if let Some(q) = p.quad_points {
        config = config.with_quad_points(q)?;
    }
    manifest.param("alpha", p.alpha).param("omega", p.omega).param("n", p.n).param("quad_points", config.quad_points());
    Ok(config)
}

#[derive(Serialize)]
struct ZeroRow {
    n: usize,
    s_n: f64,
    residual: f64,
}

pub fn zeros(args: ZerosArgs) -> Result<()> {
    let order = Order::new(args.alpha)?;
    if args.count == 0 {
        return Err(CliError::Usage("count must be >= 1".into()));
    }
    let table_z = find_zeros(order, args.count)?;
    let mut manifest = RunManifest::new("zeros");
    manifest.param("alpha", args.alpha).param("count", args.count);
    let rows: Vec<ZeroRow> = table_z
        .zeros()
        .iter()
        .zip(table_z.residuals())
        .enumerate()
        .map(|(i, (&s_n, residual))| ZeroRow { n: i + 1, s_n, residual })
        .collect();
    let mut table = Table::new(&["n", "s_n", "residual"]);
    for r in &rows {
        table.push(vec![r.n.into(), r.s_n.into(), r.residual.into()]);
    }
    #[derive(Serialize)]
    struct Body<'a> {
        alpha: f64,
        zeros: &'a [ZeroRow],
    }
    write(&args.common, &manifest, &table, Body { alpha: args.alpha, zeros: &rows })
}

#[derive(Serialize)]
struct SpectrumBody {
    method: &'static str,
    eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues_nystrom: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<f64>,
    clamped_by: f64,
    min_gap: f64,
    strictly_decreasing: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    vectors: Option<Vec<Vec<f64>>>,
}

/// Gaps below this are reported as ties rather than strict decrease.
const GAP_TOL: f64 = 1e-12;

pub fn spectrum(args: SpectrumArgs) -> Result<()> {
    let mut manifest = RunManifest::new("spectrum");
    let config = build_problem(&args.problem, &mut manifest)?;
    let method_name = match args.method {
        MethodArg::Gram => "gram",
        MethodArg::Nystrom => "nystrom",
        MethodArg::Both => "both",
    };
    manifest.param("method", method_name).param("vectors", args.vectors);
    let zeros = find_zeros(config.order(), config.n_basis())?;
    let primary_method = if args.method == MethodArg::Nystrom { Method::Nystrom } else { Method::GramClosedForm };
    let primary = Spectrum::compute(&config, &zeros, primary_method)?;
    let nystrom = match args.method {
        MethodArg::Both => Some(Spectrum::compute(&config, &zeros, Method::Nystrom)?),
        _ => None,
    };
    let discrepancy = nystrom.as_ref().map(|ny| {
        primary.eigenvalues().iter().zip(ny.eigenvalues()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    });

    let n = config.n_basis();
    let mut columns: Vec<String> = vec!["n".into()];
    match args.method {
        MethodArg::Both => columns.extend(["gram".into(), "nystrom".into(), "difference".into()]),
        _ => columns.push("eigenvalue".into()),
    }
    if args.vectors {
        columns.extend((1..=n).map(|k| format!("coeff_{k}")));
    }
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&cols);
    for i in 0..n {
        let l = primary.eigenvalues()[i];
        let mut row: Vec<Cell> = vec![i.into(), l.into()];
        if let Some(ny) = &nystrom {
            let m = ny.eigenvalues()[i];
            row.push(m.into());
            row.push((l - m).abs().into());
        }
        if args.vectors {
            row.extend(primary.coeff_vectors()[i].iter().map(|&c| Cell::from(c)));
        }
        table.push(row);
    }
    if let Some(d) = discrepancy {
        table.note("discrepancy", d);
    }
    table.note("clamped_by", primary.clamped_by());
    table.note("min_gap", primary.min_gap());
    table.note("strictly_decreasing", primary.strictly_decreasing(GAP_TOL));

    let body = SpectrumBody {
        method: method_name,
        eigenvalues: primary.eigenvalues().to_vec(),
        eigenvalues_nystrom: nystrom.as_ref().map(|s| s.eigenvalues().to_vec()),
        discrepancy,
        clamped_by: primary.clamped_by(),
        min_gap: primary.min_gap(),
        strictly_decreasing: primary.strictly_decreasing(GAP_TOL),
        vectors: args.vectors.then(|| primary.coeff_vectors().to_vec()),
    };
    write(&args.common, &manifest, &table, body)
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Decay => "decay",
        Check::Sandwich => "sandwich",
        Check::Kernel => "kernel",
        Check::L2 => "l2",
        Check::Trace => "trace",
        Check::Plunge => "plunge",
    }
}

// Max residual at N against 1.05 times the value at ⌈N/2⌉.
fn kernel_report(config: &ProblemConfig, zeros: &ZeroTable, grid: usize) -> Result<BoundReport> {
    let now = kernel_residual(config, zeros, grid)?;
    let half = config.n_basis().div_ceil(2);
    let before = if half < config.n_basis() {
        let c = ProblemConfig::new(config.order(), config.band(), half)?;
        kernel_residual(&c, zeros, grid)?.max
    } else {
        f64::INFINITY
    };
    let mut r = BoundReport::upper("kernel", now.max, 1.05 * before, 0.0)
        .with("alpha", config.alpha())
        .with("omega", config.omega())
        .with("n", config.n_basis() as f64)
        .with("grid", grid as f64)
        .with("rms", now.rms)
        .with("c_n", now.c_n)
        .with("previous_n", half as f64)
        .with("previous_max", before)
        .with("fitted_constant", now.max * now.c_n);
    if !before.is_finite() {
        r.satisfied = true;
    }
    Ok(r)
}

pub fn analyze(args: AnalyzeArgs) -> Result<()> {
    let mut manifest = RunManifest::new("analyze");
    let config = build_problem(&args.problem, &mut manifest)?;
    let explicit = !args.checks.is_empty();
    let mut checks = if explicit {
        args.checks.clone()
    } else {
        let mut all = vec![Check::Decay, Check::Kernel, Check::L2, Check::Trace];
        if config.alpha() > 0.0 {
            all.insert(1, Check::Sandwich);
        }
        if config.omega() < 1.0 {
            all.push(Check::Plunge);
        }
        all
    };
    checks.sort();
    checks.dedup();
    if checks.contains(&Check::Plunge) {
        if !(args.eps > 0.0 && args.eps < 0.5) {
            return Err(CliError::Usage(format!("eps must lie in (0, 1/2), got {}", args.eps)));
        }
        if config.omega() >= 1.0 {
            return Err(CliError::Usage("plunge requires omega < 1".into()));
        }
    }
    if checks.contains(&Check::Sandwich) && config.alpha() <= 0.0 {
        return Err(CliError::Usage(format!("sandwich requires alpha > 0 (got {})", config.alpha())));
    }
    if checks.contains(&Check::Kernel) && args.grid < 2 {
        return Err(CliError::Usage("grid must be >= 2".into()));
    }
    let names: Vec<&str> = checks.iter().map(|&c| check_name(c)).collect();
    manifest.param("checks", &names).param("eps", args.eps).param("grid", args.grid);

    let zeros = find_zeros(config.order(), config.n_basis() + 1)?;
    let spectrum = Spectrum::compute(&config, &zeros, Method::GramClosedForm)?;
    let mut reports: Vec<(&str, BoundReport)> = Vec::new();
    for &c in &checks {
        let name = check_name(c);
        match c {
            Check::Decay => reports.push((name, decay_check(&config, &zeros, &spectrum)?)),
            Check::Sandwich => reports.extend(sandwich_check(&config, &zeros)?.into_iter().map(|r| (name, r))),
            Check::Kernel => reports.push((name, kernel_report(&config, &zeros, args.grid)?)),
            Check::L2 => reports.push((name, l2_spectral_distance(&config, &zeros)?)),
            Check::Trace => reports.push((name, trace_check(&config, &zeros)?)),
            Check::Plunge => reports.push((name, plunge_check(&config, &spectrum, args.eps)?)),
        }
    }

    let mut table = Table::new(&["check", "name", "computed", "bound", "margin", "satisfied", "context"]);
    for (check, r) in &reports {
        let ctx: Vec<String> = r.context.iter().map(|(k, v)| format!("{k}={}", fmt_num(*v))).collect();
        table.push(vec![
            (*check).into(),
            r.name.clone().into(),
            r.computed.into(),
            r.bound.into(),
            r.margin.into(),
            r.satisfied.into(),
            ctx.join(";").into(),
        ]);
    }
    #[derive(Serialize)]
    struct Row<'a> {
        check: &'a str,
        #[serde(flatten)]
        report: &'a BoundReport,
    }
    #[derive(Serialize)]
    struct Body<'a> {
        reports: Vec<Row<'a>>,
    }
    let body = Body { reports: reports.iter().map(|(c, r)| Row { check: c, report: r }).collect() };
    write(&args.common, &manifest, &table, body)?;

    // the trace identity is linear algebra, not a fitted constant
    if let Some((_, r)) = reports.iter().find(|(c, _)| *c == "trace") {
        let err = r.context["identity_error"];
        if !(err <= TRACE_IDENTITY_TOL) {
            return Err(CliError::Numerical(format!("trace identity violated: |sum - trace| = {err:e}")));
        }
    }
    Ok(())
}

fn kind(w: Which) -> KernelKind {
    match w {
        Which::Discrete => KernelKind::Discrete,
        Which::Continuous => KernelKind::Continuous,
        Which::Correction => KernelKind::Correction,
        Which::Residual => KernelKind::Residual,
    }
}

pub fn kernel(args: KernelArgs) -> Result<()> {
    let mut manifest = RunManifest::new("kernel");
    let config = build_problem(&args.problem, &mut manifest)?;
    if args.grid < 2 {
        return Err(CliError::Usage("grid must be >= 2".into()));
    }
    let kinds: Vec<KernelKind> =
        if args.which.is_empty() { KernelKind::ALL.to_vec() } else { args.which.iter().map(|&w| kind(w)).collect() };
    let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
    manifest.param("grid", args.grid).param("which", &names);
    let zeros = find_zeros(config.order(), config.n_basis())?;
    let xs = grid_points(config.omega(), args.grid);
    let mut grids = BTreeMap::new();
    let mut table = Table::new(&["kernel", "x", "y", "value"]);
    for k in &kinds {
        let values = kernel_grid(&config, &zeros, *k, &xs)?;
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in xs.iter().enumerate() {
                table.push(vec![k.name().into(), x.into(), y.into(), values[i * xs.len() + j].into()]);
            }
        }
        let rows: Vec<Vec<f64>> = values.chunks(xs.len()).map(<[f64]>::to_vec).collect();
        grids.insert(k.name(), rows);
    }
    #[derive(Serialize)]
    struct Body<'a> {
        x: &'a [f64],
        kernels: BTreeMap<&'static str, Vec<Vec<f64>>>,
    }
    write(&args.common, &manifest, &table, Body { x: &xs, kernels: grids })
}

pub fn ingham(args: InghamArgs) -> Result<()> {
    let config = if args.freqs.is_empty() {
        if args.n == 0 {
            return Err(CliError::Usage("n must be >= 1".into()));
        }
        InghamConfig::consecutive(args.t, args.n)?
    } else {
        InghamConfig::new(args.t, args.freqs.clone())?
    };
    let mut manifest = RunManifest::new("ingham");
    manifest.param("T", args.t).param("frequencies", config.frequencies());
    let result = ingham_eigenvalue(&config)?;
    let chain = chain_link(&config)?;

    let mut table = Table::new(&["quantity", "value"]);
    let mut put = |k: &str, v: f64| table.push(vec![k.into(), v.into()]);
    put("upper_bound", result.upper_bound);
    put("eigenvalue_used", result.eigenvalue_used);
    if let Some(v) = result.full_problem_eigenvalue {
        put("full_problem_eigenvalue", v);
    }
    put("closed_form", result.closed_form);
    put("a_t", result.a_t);
    put("n_t", result.n_t as f64);
    put("omega", result.omega);
    put("scaled_envelope", chain.scaled_envelope);
    put("asymptotic_upper", result.asymptotic_upper);
    put("asymptotic_lower", result.asymptotic_lower);
    table.note("envelope_index_in_window", chain.in_window);

    #[derive(Serialize)]
    struct Body<'a> {
        #[serde(rename = "T")]
        t: f64,
        frequencies: &'a [u64],
        result: InghamResult,
        chain: ChainLink,
    }
    write(&args.common, &manifest, &table, Body { t: args.t, frequencies: config.frequencies(), result, chain })
}
