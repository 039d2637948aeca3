use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use detmoments::bures::{
    bures_det_moment, bures_pt_det_moment, bures_pt_squared_moment_rebit, qubit_pt_ratio,
    qubit_quartic_constants, rebit_pt_ratio, rebit_quartic_constants, EnsembleVariant,
    MonomialExponents,
};
use detmoments::estimator::{ratio_table, write_ratio_csv, McRun, TableLabels};
use detmoments::fitseq::fit_rational_function;
use detmoments::hs::{
    hs_balanced_moment, hs_bivariate_moment, hs_det_moment, hs_pt_moment, DysonParameter,
    MomentIndex,
};
use detmoments::quadrature::{
    missing_rebit_family_estimate, monomial_expectation, normalization_constant,
    EigenDensitySpec, MissingFamily, QuadRecord,
};
use detmoments::reconstruct::{legendre_coefficients, MomentSequence};
use detmoments::sampler::Measure;
use detmoments::scalar::{int, parse_rational, rat, rational_to_f64};
use detmoments::{DensityExpansion, Rational};

use crate::output::{open, write_json, Meta};
use crate::{
    Cli, Command, EnsembleArgs, ExactArgs, FitArgs, McArgs, MeasureArg, MissingArg, QuadArgs,
    SepprobArgs, VariantArg,
};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Exact(a) => exact(cli, a)?,
        Command::Mc(a) => mc(cli, a)?,
        Command::Quad(a) => quad(cli, a)?,
        Command::Fit(a) => fit(cli, a)?,
        Command::Sepprob(a) => sepprob(cli, a)?,
        Command::Selftest => return Ok(selftest()),
    }
    Ok(ExitCode::SUCCESS)
}

fn measure(m: MeasureArg) -> Measure {
    match m {
        MeasureArg::Hs => Measure::HilbertSchmidt,
        MeasureArg::Bures => Measure::Bures,
    }
}

fn variant(v: VariantArg) -> EnsembleVariant {
    match v {
        VariantArg::TwoQubit => EnsembleVariant::TwoQubit,
        VariantArg::TwoRebit => EnsembleVariant::TwoRebit,
        VariantArg::Retrit => EnsembleVariant::Retrit,
    }
}

fn parse_alpha(s: &str) -> Result<DysonParameter> {
    let q = parse_rational(s).ok_or_else(|| anyhow!("cannot parse alpha `{s}`"))?;
    Ok(DysonParameter::new(q)?)
}

/// `--alpha` if given, else the Dyson parameter of `--variant`.
fn hs_alpha(e: &EnsembleArgs) -> Result<DysonParameter> {
    match (&e.alpha, e.variant) {
        (Some(a), _) => parse_alpha(a),
        (None, Some(VariantArg::TwoQubit)) => Ok(DysonParameter::qubit()),
        (None, Some(VariantArg::TwoRebit)) => Ok(DysonParameter::rebit()),
        (None, Some(VariantArg::Retrit)) => bail!("HS formulas cover 4×4 states only"),
        (None, None) => bail!("--alpha or --variant is required"),
    }
}

fn required_variant(e: &EnsembleArgs) -> Result<EnsembleVariant> {
    e.variant
        .map(variant)
        .ok_or_else(|| anyhow!("--variant is required for this measure"))
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let p = |x: &str| x.parse::<usize>().with_context(|| format!("bad grid `{s}`"));
    match parts.as_slice() {
        [n] => Ok((p(n)?, p(n)?)),
        [n, k] => Ok((p(n)?, p(k)?)),
        _ => bail!("grid must be `N` or `N,K`"),
    }
}

/// Exact `<|ρ^PT|^n |ρ|^k>` where a closed form is available.
fn exact_moment(e: &EnsembleArgs, n: u32, k: u32) -> Result<Rational> {
    match e.measure {
        MeasureArg::Hs => Ok(hs_bivariate_moment(MomentIndex::new(n, k), &hs_alpha(e)?)?),
        MeasureArg::Bures => {
            let v = required_variant(e)?;
            match (n, k, v) {
                (0, k, v) => Ok(bures_det_moment(k, v)?),
                (1, k, v) => Ok(bures_pt_det_moment(k, v)?),
                (2, 0, EnsembleVariant::TwoRebit) => Ok(bures_pt_squared_moment_rebit()),
                _ => bail!("no closed form for Bures {v} at n = {n}, k = {k}"),
            }
        }
    }
}

fn ensemble_labels(e: &EnsembleArgs) -> Result<serde_json::Value> {
    Ok(match e.measure {
        MeasureArg::Hs => json!({ "measure": "hs", "alpha": hs_alpha(e)?.to_string() }),
        MeasureArg::Bures => json!({ "measure": "bures", "variant": required_variant(e)?.name() }),
    })
}

fn exact(cli: &Cli, a: &ExactArgs) -> Result<()> {
    let meta = Meta::new(cli, None)?;
    if let Some(g) = &a.grid {
        let (max_n, max_k) = parse_grid(g)?;
        let mut w = open(a.out.as_deref())?;
        w.write_all(meta.csv_header().as_bytes())?;
        writeln!(w, "n,k,value,decimal")?;
        for n in 0..=max_n as u32 {
            for k in 0..=max_k as u32 {
                let v = exact_moment(&a.ensemble, n, k)?;
                writeln!(w, "{n},{k},{v},{:e}", rational_to_f64(&v))?;
            }
        }
        w.flush()?;
        return Ok(());
    }
    let v = exact_moment(&a.ensemble, a.n, a.k)?;
    let out = json!({
        "meta": meta,
        "ensemble": ensemble_labels(&a.ensemble)?,
        "n": a.n,
        "k": a.k,
        "value": v.to_string(),
        "decimal": rational_to_f64(&v),
    });
    write_json(a.out.as_deref(), &out)
}

#[derive(Serialize)]
struct McEntry {
    n: usize,
    k: usize,
    mean: String,
    se: String,
    exact: String,
    z: Option<f64>,
}

fn mc(cli: &Cli, a: &McArgs) -> Result<()> {
    if a.samples < 1000 {
        bail!("--samples must be at least 1000");
    }
    let v = required_variant(&a.ensemble)?;
    let m = measure(a.ensemble.measure);
    let (max_n, max_k) = parse_grid(&a.grid)?;
    let alpha = match &a.ensemble.alpha {
        Some(s) => parse_alpha(s)?,
        None if v.is_complex() => DysonParameter::qubit(),
        None => DysonParameter::rebit(),
    };
    let run = McRun {
        chunk_size: a.chunk_size,
        ..McRun::new(m, v, a.samples, a.seed).grid(max_n, max_k)
    };
    let out = run.run()?;
    let rows = ratio_table(&out.acc, |n, k| {
        hs_bivariate_moment(MomentIndex::new(n as u32, k as u32), &alpha)
    })?;

    let meta = Meta::new(cli, Some(a.seed))?;
    let mut w = open(a.out.as_deref())?;
    w.write_all(meta.csv_header().as_bytes())?;
    let labels = TableLabels {
        measure: m.name().into(),
        variant: v.name().into(),
        alpha: alpha.to_string(),
    };
    write_ratio_csv(&mut w, &rows, &labels)?;
    w.flush()?;

    // z-scores against the sampled measure's own exact values, where known
    let est = out.acc.estimates()?;
    let mut entries = Vec::new();
    for (n, row) in est.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            let Ok(x) = exact_moment(&a.ensemble, n as u32, k as u32) else {
                continue;
            };
            entries.push(McEntry {
                n,
                k,
                mean: e.mean.to_sci_string(17),
                se: e.se.to_sci_string(17),
                exact: x.to_string(),
                z: e.z_score(&x),
            });
        }
    }
    let summary = json!({
        "meta": meta,
        "measure": m.name(),
        "variant": v.name(),
        "samples": out.acc.count(),
        "range_violations": out.range_violations,
        "moments": entries,
    });
    match &a.summary {
        Some(p) => write_json(Some(p), &summary),
        None => {
            eprintln!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(())
        }
    }
}

fn missing(m: MissingArg) -> MissingFamily {
    match m {
        MissingArg::L53 => MissingFamily::L53,
        MissingArg::L62 => MissingFamily::L62,
        MissingArg::L71 => MissingFamily::L71,
        MissingArg::L8 => MissingFamily::L8,
    }
}

fn quad(cli: &Cli, a: &QuadArgs) -> Result<()> {
    let meta = Meta::new(cli, None)?;
    let m = measure(a.measure);
    let v = variant(a.variant);
    if a.normalization {
        let n = normalization_constant(m, v, a.rel_tol)?;
        let out = json!({
            "meta": meta,
            "measure": m.name(),
            "variant": v.name(),
            "value": n.value,
            "error_bound": n.error_bound,
            "exact": n.exact.map(|p| p.to_string()),
            "rel_tol": a.rel_tol,
        });
        return write_json(a.out.as_deref(), &out);
    }
    let (pattern, k, r) = if let Some(f) = a.missing {
        if m != Measure::Bures || v != EnsembleVariant::TwoRebit {
            bail!("--missing families are two-rebit Bures only");
        }
        let f = missing(f);
        (f.pattern(), Some(a.k), missing_rebit_family_estimate(f, a.k, a.rel_tol)?)
    } else {
        let p = a
            .pattern
            .as_deref()
            .ok_or_else(|| anyhow!("one of --pattern, --missing, --normalization is required"))?;
        let e: Vec<u32> = p
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad pattern `{p}`"))?;
        let spec = EigenDensitySpec::new(m, v)?;
        let r = monomial_expectation(&MonomialExponents::new(e, v)?, &spec, a.rel_tol)?;
        (p.to_string(), None, r)
    };
    let record = QuadRecord {
        pattern,
        k,
        measure: m.name().into(),
        variant: v.name().into(),
        value: r.value,
        error_bound: r.error_bound,
        rel_tol: a.rel_tol,
    };
    write_json(a.out.as_deref(), &json!({ "meta": meta, "result": record }))
}

fn read_points(path: &std::path::Path) -> Result<Vec<(i64, Rational)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut pts = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |j: usize| rec.get(j).ok_or_else(|| anyhow!("row {}: missing column {j}", i + 1));
        let k: i64 = field(0)?.parse().with_context(|| format!("row {}: bad k", i + 1))?;
        let num = parse_rational(field(1)?).ok_or_else(|| anyhow!("row {}: bad numerator", i + 1))?;
        let den = parse_rational(field(2)?).ok_or_else(|| anyhow!("row {}: bad denominator", i + 1))?;
        if den == int(0) {
            log::warn!("row {}: zero denominator, skipped", i + 1);
            continue;
        }
        pts.push((k, num / den));
    }
    Ok(pts)
}

fn fit(cli: &Cli, a: &FitArgs) -> Result<()> {
    let pts = read_points(&a.points)?;
    let f = fit_rational_function(&pts, a.deg_num, a.deg_den)?;
    let (num, den) = f.integer_coeffs();
    let s = |v: &[_]| v.iter().map(ToString::to_string).collect::<Vec<String>>();
    let out = json!({
        "meta": Meta::new(cli, None)?,
        "num_coeffs": s(&num),
        "den_coeffs": s(&den),
        "function": f.to_string(),
    });
    write_json(a.out.as_deref(), &out)
}

fn sepprob(cli: &Cli, a: &SepprobArgs) -> Result<()> {
    let (lo, hi) = (rat(-1, 16), rat(1, 256));
    let (mut d, source): (DensityExpansion, &str) = match a.ensemble.measure {
        MeasureArg::Hs => {
            let alpha = hs_alpha(&a.ensemble)?;
            let mut m = vec![int(1)];
            for n in 1..=a.order as u32 {
                m.push(hs_pt_moment(n, &alpha)?);
            }
            let ms = MomentSequence::new(m, lo.clone(), hi.clone())?;
            (legendre_coefficients(&ms, a.order)?, "exact")
        }
        MeasureArg::Bures => {
            let v = required_variant(&a.ensemble)?;
            let run = McRun::new(Measure::Bures, v, a.samples, a.seed).grid(a.order, 0);
            let out = run.run()?;
            let m: Vec<f64> = out.acc.estimates()?.iter().map(|r| r[0].mean.to_f64()).collect();
            log::warn!("Bures moments are Monte Carlo estimates; high orders amplify their noise");
            let ms = MomentSequence::new(m, rational_to_f64(&lo), rational_to_f64(&hi))?;
            (legendre_coefficients(&ms, a.order)?, "monte-carlo")
        }
    };
    if a.jackson {
        d = d.jackson_damped();
    }
    let estimate = d.tail_probability(a.threshold)?;
    if let Some(p) = &a.density_out {
        let mut w = open(Some(p))?;
        w.write_all(Meta::new(cli, Some(a.seed))?.csv_header().as_bytes())?;
        writeln!(w, "x,f")?;
        for (x, f) in d.grid(a.points) {
            writeln!(w, "{x:e},{f:e}")?;
        }
        w.flush()?;
    }
    let seed = (source == "monte-carlo").then_some(a.seed);
    let out = json!({
        "meta": Meta::new(cli, seed)?,
        "ensemble": ensemble_labels(&a.ensemble)?,
        "estimate": estimate,
        "order": a.order,
        "threshold": a.threshold,
        "support": [lo.to_string(), hi.to_string()],
        "moments": source,
        "jackson": a.jackson,
    });
    write_json(a.out.as_deref(), &out)
}

fn selftest() -> ExitCode {
    type Check = (&'static str, fn() -> detmoments::Result<bool>);
    let checks: [Check; 6] = [
        ("HS first moments", || {
            Ok(hs_pt_moment(1, &DysonParameter::qubit())? == rat(-7, 3876)
                && hs_pt_moment(1, &DysonParameter::rebit())? == rat(-1, 858))
        }),
        ("HS balanced moments", || {
            Ok(hs_balanced_moment(1, &DysonParameter::rebit())? == int(0)
                && hs_balanced_moment(1, &DysonParameter::qubit())? == rat(-1, 4576264))
        }),
        ("HS determinant moments", || {
            Ok(hs_det_moment(1, &DysonParameter::qubit()) == rat(1, 3876))
        }),
        ("Bures first moments", || {
            Ok(bures_pt_det_moment(0, EnsembleVariant::TwoQubit)? == rat(-1, 256)
                && bures_pt_det_moment(0, EnsembleVariant::TwoRebit)? == rat(-2663, 860160))
        }),
        ("quartic closure", || {
            Ok(qubit_quartic_constants().multinomial_closure() == int(1)
                && rebit_quartic_constants().multinomial_closure() == int(1))
        }),
        ("degree-5 ratios", || {
            Ok(qubit_pt_ratio().eval(&int(2))? == rat(-137, 66560)
                && rebit_pt_ratio().eval(&int(2))? == rat(-127, 81))
        }),
    ];
    let mut ok = true;
    for (name, f) in checks {
        let pass = matches!(f(), Ok(true));
        ok &= pass;
        println!("{} {name}", if pass { "PASS" } else { "FAIL" });
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
