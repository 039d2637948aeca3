//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use detmoments::bures::{
    bures_det_moment, bures_monomial_ratio, bures_pt_det_moment, bures_pt_squared_moment_rebit,
    qubit_pt_ratio, qubit_pt_table, qubit_quartic_constants, rebit_pt_ratio, rebit_pt_table,
    rebit_quartic_constants, EnsembleVariant, MonomialExponents, Normalizer,
};
use detmoments::estimator::McRun;
use detmoments::fitseq::fit_rational_function;
use detmoments::hs::{
    hs_balanced_moment, hs_bivariate_moment, hs_det_moment, hs_monomial_exact, hs_normalization,
    hs_pt_moment, DysonParameter, MomentIndex,
};
use detmoments::quadrature::{monomial_expectation, normalization_constant, EigenDensitySpec};
use detmoments::reconstruct::{legendre_coefficients, MomentSequence};
use detmoments::sampler::Measure;
use detmoments::scalar::{int, rat, rational_to_f64};
use detmoments::{DensityExpansion, Rational, Result};

const SEED: u64 = 20240601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn alphas() -> [DysonParameter; 3] {
    [DysonParameter::rebit(), DysonParameter::qubit(), DysonParameter::quaterbit()]
}

fn c1_exact_constants() -> Result<Outcome> {
    let q = DysonParameter::qubit();
    let r = DysonParameter::rebit();
    let checks = [
        ("hs_pt_moment(1, 1)", hs_pt_moment(1, &q)?, rat(-7, 3876)),
        ("hs_pt_moment(1, 1/2)", hs_pt_moment(1, &r)?, rat(-1, 858)),
        ("hs_balanced_moment(1, 1/2)", hs_balanced_moment(1, &r)?, int(0)),
        ("hs_balanced_moment(1, 1)", hs_balanced_moment(1, &q)?, rat(-1, 4576264)),
    ];
    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name} = {got}, expected {want}"))
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "4/4 equalities exact".into() } else { bad.join("; ") })
}

fn c2_cross_formula() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for a in alphas() {
        for n in 0..=10 {
            if hs_bivariate_moment(MomentIndex::new(n, 0), &a)? != hs_pt_moment(n, &a)? {
                bad.push(format!("(n={n},k=0) α={a}"));
            }
            if hs_bivariate_moment(MomentIndex::new(n, n), &a)? != hs_balanced_moment(n, &a)? {
                bad.push(format!("(n={n},k={n}) α={a}"));
            }
            checked += 2;
        }
        for n in 1..=8 {
            for k in n + 1..=8 {
                let x = hs_bivariate_moment(MomentIndex::new(n, k), &a)?;
                let y = hs_bivariate_moment(MomentIndex::new(k, n), &a)?;
                if x != y {
                    bad.push(format!("symmetry ({n},{k}) α={a}"));
                }
                checked += 1;
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} identities, {} failures {}", bad.len(), bad.join(" ")).trim_end().to_string())
}

fn c3_bures_tables() -> Result<Outcome> {
    let mut bad = Vec::new();
    for (k, want) in qubit_pt_table().iter().enumerate() {
        let got = bures_pt_det_moment(k as u32, EnsembleVariant::TwoQubit)?;
        if &got != want {
            bad.push(format!("two-qubit k={k}: {got} vs {want}"));
        }
    }
    for (k, want) in rebit_pt_table().iter().enumerate() {
        let got = bures_pt_det_moment(k as u32, EnsembleVariant::TwoRebit)?;
        if &got != want {
            bad.push(format!("two-rebit k={k}: {got} vs {want}"));
        }
    }
    let sq = bures_pt_squared_moment_rebit();
    if sq != rat(50654227, 1307993702400) {
        bad.push(format!("<|ρ^PT|^2> rebit = {sq}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "11 tabulated constants from the degree-5 ratios, plus <|ρ^PT|^2> rebit".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn c4_index_convention() -> Result<Outcome> {
    let q = EnsembleVariant::TwoQubit;
    let r = EnsembleVariant::TwoRebit;
    let rq = qubit_pt_ratio().eval(&int(2))?;
    let rq_table = rat(-137, 1124597760) / bures_det_moment(1, q)?;
    let sr = rebit_pt_ratio().eval(&int(2))?;
    let sr_table = rat(-127, 1132462080) / bures_det_moment(2, r)?;
    // the literal factor 131072·429 is 1/<|ρ|^2> for two qubits, not rebits
    let literal = rat(-127, 1132462080) * int(131072 * 429);
    let pass = rq == rat(-137, 66560) && rq == rq_table && sr == rat(-127, 81) && sr == sr_table;
    outcome(
        pass,
        format!(
            "R(2) = {rq} = table/<|ρ|>; S(2) = {sr} = table/<|ρ|^2>_rebit (<|ρ|^2>_rebit = {}); literal product with 131072·429 gives {literal}",
            bures_det_moment(2, r)?
        ),
    )
}

fn c5_closure() -> Result<Outcome> {
    let q = qubit_quartic_constants();
    let r = rebit_quartic_constants();
    let (cq, cr) = (q.multinomial_closure(), r.multinomial_closure());
    outcome(
        cq == int(1) && cr == int(1),
        format!(
            "multinomial weights (4,48,36,144,24): qubit {cq}, rebit {cr}; literal weights (4,12,6,12,24) give {} and {}",
            q.pattern_count_sum(),
            r.pattern_count_sum()
        ),
    )
}

fn c6_hs_oracle() -> Result<Outcome> {
    let mut bad = Vec::new();
    for a in [DysonParameter::rebit(), DysonParameter::qubit()] {
        for k in 0..=3 {
            if hs_monomial_exact([k; 4], &a)? != hs_det_moment(k, &a) {
                bad.push(format!("k={k} α={a}"));
            }
        }
    }
    let n_r = hs_normalization(&DysonParameter::rebit())?;
    let n_q = hs_normalization(&DysonParameter::qubit())?;
    let pass = bad.is_empty() && n_r == int(80640) && n_q == int(378378000);
    outcome(pass, format!("det moments k ≤ 3 {}; normalizations {n_r}, {n_q}", if bad.is_empty() { "agree".into() } else { bad.join(" ") }))
}

fn c7_quadrature() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (v, table) in [
        (EnsembleVariant::TwoQubit, qubit_quartic_constants()),
        (EnsembleVariant::TwoRebit, rebit_quartic_constants()),
    ] {
        let spec = EigenDensitySpec::new(Measure::Bures, v)?;
        for (e, want) in table.as_array() {
            let got = monomial_expectation(&MonomialExponents::new(e.to_vec(), v)?, &spec, 1e-9)?;
            let w = rational_to_f64(want);
            worst = worst.max(((got.value - w) / w).abs());
        }
    }
    let nr = normalization_constant(Measure::Bures, EnsembleVariant::TwoRebit, 1e-10)?;
    let nq = normalization_constant(Measure::Bures, EnsembleVariant::TwoQubit, 1e-10)?;
    let er = (nr.value / (128.0 / PI) - 1.0).abs();
    let eq = (nq.value / (71680.0 / (PI * PI)) - 1.0).abs();
    outcome(
        worst < 1e-6 && er < 1e-7 && eq < 1e-7,
        format!("quartic constants max rel err {worst:.1e}; 128/π rel err {er:.1e}; 71680/π² rel err {eq:.1e}"),
    )
}

fn c8_mc_hs() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (v, exact) in [
        (EnsembleVariant::TwoQubit, rat(-7, 3876)),
        (EnsembleVariant::TwoRebit, rat(-1, 858)),
    ] {
        let out = McRun::new(Measure::HilbertSchmidt, v, 1_000_000, SEED).grid(1, 1).run()?;
        let e = out.acc.estimates()?[1][0];
        let z = e.z_score(&exact).unwrap_or(f64::INFINITY);
        pass &= z.abs() < 4.0 && out.range_violations == 0;
        parts.push(format!(
            "{v}: mean {:.6e} vs {exact} (z = {z:+.2}), range violations {}",
            e.mean.to_f64(),
            out.range_violations
        ));
    }
    outcome(pass, parts.join("; "))
}

fn c9_mc_bures() -> Result<Outcome> {
    let out = McRun::new(Measure::Bures, EnsembleVariant::TwoQubit, 10_000_000, SEED).grid(1, 1).run()?;
    let est = out.acc.estimates()?;
    let det = est[0][1];
    let pt = est[1][0];
    let zd = det.z_score(&rat(1, 16896)).unwrap_or(f64::INFINITY);
    let zp = pt.z_score(&rat(-1, 256)).unwrap_or(f64::INFINITY);
    let rel = (pt.mean.to_f64() * -256.0 - 1.0).abs();
    // two-rebit second moment of |ρ^PT|, reported alongside
    let reb = McRun::new(Measure::Bures, EnsembleVariant::TwoRebit, 1_000_000, SEED).grid(2, 0).run()?;
    let zr = reb.acc.estimates()?[2][0]
        .z_score(&bures_pt_squared_moment_rebit())
        .unwrap_or(f64::INFINITY);
    outcome(
        zd.abs() < 5.0 && rel < 0.05 && out.range_violations + reb.range_violations == 0,
        format!(
            "two-qubit 1e7: <|ρ|> z = {zd:+.2}; <|ρ^PT|> = {:.7e} (z = {zp:+.2} vs −1/256, rel dev {rel:.2e}); two-rebit 1e6 <|ρ^PT|^2> z = {zr:+.2}",
            pt.mean.to_f64()
        ),
    )
}

fn c10_fitting() -> Result<Outcome> {
    let q = EnsembleVariant::TwoQubit;
    let r = EnsembleVariant::TwoRebit;
    let mut qp = Vec::new();
    let mut rp = Vec::new();
    for k in 0..13u32 {
        qp.push((k as i64 + 1, bures_pt_det_moment(k, q)? / bures_det_moment(k, q)?));
        rp.push((k as i64 + 1, bures_pt_det_moment(k, r)? / bures_det_moment(k + 1, r)?));
    }
    let fq = fit_rational_function(&qp, 5, 5)?;
    let fr = fit_rational_function(&rp, 5, 5)?;
    let ep: Vec<(i64, Rational)> = (1..=7)
        .map(|k| Ok((k as i64, bures_monomial_ratio(r, &[1, 0, 0, -1], Normalizer::DetK, k)?)))
        .collect::<Result<_>>()?;
    let fe = fit_rational_function(&ep, 2, 2)?;
    let earlier = detmoments::RationalFunction::from_ints_desc(&[8, 22, 11], &[8, -2, -1])?.canonical();
    let pass = fq == qubit_pt_ratio() && fr == rebit_pt_ratio() && fe == earlier;
    let ints = |f: &detmoments::RationalFunction| {
        let (n, _) = f.integer_coeffs();
        n.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    };
    outcome(
        pass,
        format!("qubit numerator [{}]; rebit numerator [{}]; earlier {fe}", ints(&fq), ints(&fr)),
    )
}

fn separability(alpha: &DysonParameter, target: f64, band: f64) -> Result<(bool, String)> {
    let mut moments = vec![int(1)];
    for n in 1..=512u32 {
        moments.push(hs_pt_moment(n, alpha)?);
        if ![128usize, 256, 512].contains(&(n as usize)) {
            continue;
        }
        let ms = MomentSequence::new(moments.clone(), rat(-1, 16), rat(1, 256))?;
        let d: DensityExpansion = legendre_coefficients(&ms, n as usize)?;
        let p = d.tail_probability(0.0)?;
        if (p - target).abs() < band {
            return Ok((true, format!("α={alpha}: {p:.5} at order {n} (target {target:.5})")));
        }
        if n == 512 {
            return Ok((false, format!("α={alpha}: {p:.5} at order 512 (target {target:.5})")));
        }
    }
    unreachable!()
}

fn c11_reconstruction() -> Result<Outcome> {
    let mut m = vec![int(1)];
    for i in 0..64 {
        let last = m.last().unwrap().clone();
        m.push(last * rat(2 + i, 5 + i));
    }
    let ms = MomentSequence::new(m, int(0), int(1))?;
    let d: DensityExpansion = legendre_coefficients(&ms, 64)?;
    let t: f64 = 0.5;
    let exact = 1.0 - (6.0 * t * t - 8.0 * t.powi(3) + 3.0 * t.powi(4));
    let beta_err = (d.tail_probability(t)? - exact).abs();
    let (p1, s1) = separability(&DysonParameter::qubit(), 8.0 / 33.0, 0.01)?;
    let (p2, s2) = separability(&DysonParameter::rebit(), 29.0 / 64.0, 0.015)?;
    outcome(beta_err < 1e-4 && p1 && p2, format!("Beta(2,3) tail err {beta_err:.1e}; {s1}; {s2}"))
}

fn main() {
    type Criterion = fn() -> Result<Outcome>;
    let criteria: [(&str, Criterion); 11] = [
        ("exact HS constants", c1_exact_constants),
        ("cross-formula consistency", c2_cross_formula),
        ("Bures tables", c3_bures_tables),
        ("index conventions", c4_index_convention),
        ("monomial closure", c5_closure),
        ("HS oracle equivalence", c6_hs_oracle),
        ("quadrature", c7_quadrature),
        ("Monte Carlo HS", c8_mc_hs),
        ("Monte Carlo Bures", c9_mc_bures),
        ("sequence fitting", c10_fitting),
        ("reconstruction", c11_reconstruction),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match f() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} ({:.1}s) {detail}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
