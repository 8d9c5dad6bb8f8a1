//! One function per `--mode`. Each returns the rendered body, whether every
//! asserted property held, and a one-line summary for stderr.

use icobr_core::detbounds::{det_outer_region, det_sum_capacity};
use icobr_core::detschemes::{build_scheme, classify_det, symbolic_trace, verify_scheme};
use icobr_core::gausscap::bounds::{DUPLEXING_LIMITS, DUPLEXING_TOL};
use icobr_core::gausscap::gap::{GAP_TOL, SUM_GAP_LIMIT, SYMMETRIC_GAP_LIMIT};
use icobr_core::gausscap::useful::USEFUL_THRESHOLD;
use icobr_core::gausscap::{
    achievable_sum, chain_audit, classify_gauss, constraint_consistency, duplexing_gap_audit, gap_at,
    gap_audit, interference_useful, outer_bounds, product_grid, usefulness_threshold, GaussParams,
    GaussRegime,
};
use icobr_core::DetParams;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::config::{Format, Mode, SweepConfig};
use crate::error::CliError;
use crate::table::{fmt_float, Cell, Table};

pub struct RunOutput {
    pub body: String,
    pub passed: bool,
    pub summary: String,
}

pub fn run(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    if cfg.format == Format::Text && cfg.mode != Mode::DetTrace {
        return Err(CliError::usage("text output is only available for det-trace"));
    }
    match cfg.mode {
        Mode::DetVerify => det_verify(cfg),
        Mode::DetCapacity => det_capacity(cfg),
        Mode::DetTrace => det_trace(cfg),
        Mode::GaussRates => gauss_rates(cfg),
        Mode::GaussGapAudit => gauss_gap_audit(cfg),
        Mode::DuplexingAudit => duplexing_audit(cfg),
        Mode::Fig3 => fig3(cfg),
        Mode::InterferenceUseful => useful(cfg),
    }
}

fn non_negative(axis: &str, v: Vec<i64>) -> Result<Vec<usize>, CliError> {
    v.into_iter()
        .map(|x| usize::try_from(x).map_err(|_| CliError::usage(format!("axis {axis}: levels must be >= 0, got {x}"))))
        .collect()
}

fn det_points(cfg: &SweepConfig, default: [&str; 3]) -> Result<Vec<DetParams>, CliError> {
    let names = ["n_d", "n_c", "n_r"];
    cfg.check_axes(&names)?;
    let mut axes = Vec::new();
    for (name, d) in names.iter().zip(default) {
        axes.push(non_negative(name, cfg.axis(name, d).integers(name)?)?);
    }
    let mut out = Vec::new();
    for &d in &axes[0] {
        for &c in &axes[1] {
            for &r in &axes[2] {
                out.push(DetParams::new(d, c, r));
            }
        }
    }
    Ok(out)
}

fn gauss_points(cfg: &SweepConfig, default: &str) -> Result<Vec<GaussParams>, CliError> {
    let names = ["hd2", "hc2", "hr2"];
    cfg.check_axes(&names)?;
    let axes: Vec<Vec<f64>> = names
        .iter()
        .map(|n| cfg.axis(n, default).reals(n))
        .collect::<Result<_, _>>()?;
    Ok(product_grid(&axes[0], &axes[1], &axes[2])?)
}

fn det_verify(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    let points = det_points(cfg, ["0:8:1"; 3])?;
    let reports: Vec<_> = points.par_iter().map(verify_scheme).collect();
    let mut t = Table::new(&[
        "n_d", "n_c", "n_r", "regime", "r1", "r2", "sum_rate", "sum_capacity", "decode_errors", "passed",
    ]);
    for r in &reports {
        let p = r.params;
        t.push(vec![
            p.n_d.into(),
            p.n_c.into(),
            p.n_r.into(),
            r.regime.name().into(),
            r.rates.r1.to_string().into(),
            r.rates.r2.to_string().into(),
            r.rates.sum().to_string().into(),
            r.sum_capacity.to_string().into(),
            r.decode_errors.into(),
            r.passed().into(),
        ]);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed: failed == 0,
        summary: format!("{} points, {failed} failed", reports.len()),
    })
}

fn det_capacity(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    let points = det_points(cfg, ["0:8:1"; 3])?;
    let mut t = Table::new(&[
        "n_d", "n_c", "n_r", "regime", "sum_capacity", "individual_bound", "sum_bound", "outer_min", "matches",
    ]);
    let mut mismatches = 0;
    for p in &points {
        let cap = det_sum_capacity(p);
        let o = det_outer_region(p);
        let outer_min = if p.n_c >= p.n_d {
            (o.individual_bound + o.individual_bound).min(o.sum_bound)
        } else {
            o.sum_bound
        };
        let ok = cap == outer_min;
        mismatches += usize::from(!ok);
        t.push(vec![
            p.n_d.into(),
            p.n_c.into(),
            p.n_r.into(),
            classify_det(p).name().into(),
            cap.to_string().into(),
            o.individual_bound.to_string().into(),
            o.sum_bound.to_string().into(),
            outer_min.to_string().into(),
            ok.into(),
        ]);
    }
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed: mismatches == 0,
        summary: format!("{} points, {mismatches} differ from the outer-region minimum", points.len()),
    })
}

fn det_trace(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    let points = det_points(cfg, ["1", "4", "2"])?;
    let schemes: Vec<_> = points.iter().map(build_scheme).collect();
    let failed = points.iter().filter(|p| !verify_scheme(p).passed()).count();
    let traces: Vec<_> = schemes.iter().map(symbolic_trace).collect();
    let body = match cfg.format {
        Format::Text => traces.iter().map(|t| t.render_text()).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&traces).expect("serializable trace");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut t = Table::new(&["n_d", "n_c", "n_r", "section", "signal", "level", "symbols"]);
            for tr in &traces {
                let sections = [
                    ("stage1", &tr.stages[0]),
                    ("stage2", &tr.stages[1]),
                    ("relay_band", &tr.relay_band),
                ];
                for (section, signals) in sections {
                    for sig in signals {
                        for (level, sym) in sig.levels.iter().enumerate() {
                            t.push(vec![
                                tr.params.n_d.into(),
                                tr.params.n_c.into(),
                                tr.params.n_r.into(),
                                section.into(),
                                sig.name.as_str().into(),
                                level.into(),
                                sym.as_str().into(),
                            ]);
                        }
                    }
                }
            }
            t.render(Format::Csv)?
        }
    };
    Ok(RunOutput {
        body,
        passed: failed == 0,
        summary: format!("{} traces, {failed} schemes failed certification", traces.len()),
    })
}

fn gauss_rates(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    let grid = gauss_points(cfg, "log:1:1e8:5")?;
    let rows: Vec<(Vec<Cell>, bool)> = grid
        .par_iter()
        .map(|p| -> Result<_, CliError> {
            let ob = outer_bounds(p);
            let head: Vec<Cell> = vec![
                p.hd2.into(),
                p.hc2.into(),
                p.hr2.into(),
                classify_gauss(p).name().into(),
                ob.c1.into(),
                ob.c2.into(),
                ob.c3.into(),
                ob.c4.into(),
                ob.applicable(p).into(),
            ];
            let Ok(rep) = achievable_sum(p) else {
                // Outside the audited domain nothing is asserted.
                let mut row = head;
                row.extend(std::iter::repeat_with(|| Cell::Empty).take(9));
                row.push(true.into());
                return Ok((row, true));
            };
            let g = gap_at(p)?;
            let consistent = constraint_consistency(&rep).holds();
            let steps = chain_audit(p)?;
            let chains_hold = steps.iter().all(|s| s.holds);
            let ok = g.within_limit() && consistent && chains_hold;
            let mut row = head;
            row.extend([
                rep.sum_rate.into(),
                g.gap.into(),
                rep.regime.gap_limit().into(),
                rep.gamma.into(),
                rep.theta.into(),
                rep.beta.into(),
                consistent.into(),
                steps.len().into(),
                chains_hold.into(),
                ok.into(),
            ]);
            Ok((row, ok))
        })
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(&[
        "hd2", "hc2", "hr2", "regime", "c1", "c2", "c3", "c4", "outer_bound", "achievable", "gap", "gap_limit",
        "gamma", "theta", "beta", "reconciled", "chain_steps", "chains_hold", "passed",
    ]);
    let failed = rows.iter().filter(|(_, ok)| !ok).count();
    for (row, _) in rows {
        t.push(row);
    }
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed: failed == 0,
        summary: format!("{} points, {failed} failed", grid.len()),
    })
}

fn gauss_gap_audit(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    let grid = gauss_points(cfg, "log:1:1e8:40")?;
    let rep = gap_audit(&grid);
    if let Some((d, c, r, why)) = rep.skipped.first() {
        return Err(CliError::usage(format!(
            "{} grid points lie outside h_d^2, h_c^2 >= 1, e.g. ({d}, {c}, {r}): {why}",
            rep.skipped.len()
        )));
    }
    let mut t = Table::new(&[
        "regime", "points", "worst_gap", "least_gap", "gap_limit", "argmax_hd2", "argmax_hc2", "argmax_hr2",
        "passed",
    ]);
    for reg in GaussRegime::AUDITED {
        match rep.per_regime.get(&reg) {
            Some(g) => t.push(vec![
                reg.name().into(),
                g.points.into(),
                g.worst_gap.into(),
                g.least_gap.into(),
                g.limit.into(),
                g.argmax.0.into(),
                g.argmax.1.into(),
                g.argmax.2.into(),
                g.passed.into(),
            ]),
            None => t.push(vec![
                reg.name().into(),
                0usize.into(),
                Cell::Empty,
                Cell::Empty,
                reg.gap_limit().into(),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                true.into(),
            ]),
        }
    }
    let worst = rep
        .points
        .iter()
        .max_by(|a, b| a.gap.total_cmp(&b.gap))
        .ok_or_else(|| CliError::usage("empty grid"))?;
    let least = rep.points.iter().map(|g| g.gap).fold(f64::INFINITY, f64::min);
    for (name, scale, limit) in [("sum", 1.0, SUM_GAP_LIMIT), ("symmetric", 0.5, SYMMETRIC_GAP_LIMIT)] {
        let w = rep.worst_sum_gap * scale;
        t.push(vec![
            name.into(),
            rep.points.len().into(),
            w.into(),
            (least * scale).into(),
            limit.into(),
            worst.hd2.into(),
            worst.hc2.into(),
            worst.hr2.into(),
            (w <= limit + GAP_TOL).into(),
        ]);
    }
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed: rep.passed,
        summary: format!(
            "{} points, worst sum gap {}, worst symmetric gap {} (limit {})",
            rep.points.len(),
            fmt_float(rep.worst_sum_gap),
            fmt_float(rep.worst_symmetric_gap),
            SYMMETRIC_GAP_LIMIT
        ),
    })
}

fn duplexing_audit(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    cfg.check_axes(&["hr2"])?;
    let hr2 = cfg.axis("hr2", "log:1e-3:1e8:1000").reals("hr2")?;
    if let Some(h) = hr2.iter().find(|h| **h <= 0.0) {
        return Err(CliError::usage(format!("axis hr2: squared gains must be positive, got {h}")));
    }
    let rep = duplexing_gap_audit(&hr2);
    let mut t = Table::new(&["bound", "points", "max_gap", "argmax_hr2", "limit", "passed"]);
    for (i, (g, limit)) in rep.max_gap.into_iter().zip(DUPLEXING_LIMITS).enumerate() {
        t.push(vec![
            format!("c{}", i + 1).into(),
            rep.points.into(),
            g.into(),
            rep.argmax_hr2[i].into(),
            limit.into(),
            (g <= limit + DUPLEXING_TOL && g >= -DUPLEXING_TOL).into(),
        ]);
    }
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed: rep.passed,
        summary: format!(
            "{} points, max gaps {}",
            rep.points,
            rep.max_gap.map(fmt_float).join(" / ")
        ),
    })
}

/// `ratio * n_d` as a level count, or an error naming an `n_d` that realizes it.
fn realize(axis: &str, ratio: Rational64, n_d: usize) -> Result<usize, CliError> {
    let levels = ratio * Rational64::from_integer(n_d as i64);
    if !levels.is_integer() || levels < Rational64::from_integer(0) {
        let den = *ratio.denom() as usize;
        let suggest = n_d / gcd(n_d, den) * den;
        return Err(CliError::usage(format!(
            "{axis} {ratio} is not realizable at n_d = {n_d} ({levels} levels); use an n_d that is a multiple of {den}, e.g. {suggest}"
        )));
    }
    Ok(*levels.numer() as usize)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// W at `n_r = 0` (non-monotone on `[0, n_d]`); V once `n_r >= 2 n_d`
/// (non-increasing up to `n_c = n_d`, non-decreasing after). Checked only
/// for curves that cover every integer `n_c` in `[0, n_d]` with `n_d >= 4`.
fn shape_check(n_d: usize, n_r: usize, curve: &[(usize, Rational64)]) -> Option<bool> {
    let low: Vec<Rational64> = curve.iter().filter(|(c, _)| *c <= n_d).map(|x| x.1).collect();
    let covered = (0..=n_d).all(|c| curve.iter().any(|(x, _)| *x == c));
    if n_d < 4 || !covered {
        return None;
    }
    if n_r == 0 {
        let up = low.windows(2).any(|w| w[1] > w[0]);
        let down = low.windows(2).any(|w| w[1] < w[0]);
        Some(up && down)
    } else if n_r >= 2 * n_d {
        let high: Vec<Rational64> = curve.iter().filter(|(c, _)| *c >= n_d).map(|x| x.1).collect();
        Some(low.windows(2).all(|w| w[1] <= w[0]) && high.windows(2).all(|w| w[1] >= w[0]))
    } else {
        None
    }
}

fn fig3(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    cfg.check_axes(&["n_d", "c_ratio", "r_ratio"])?;
    let nds = non_negative("n_d", cfg.axis("n_d", "6").integers("n_d")?)?;
    if nds.contains(&0) {
        return Err(CliError::usage("axis n_d: normalization needs n_d >= 1"));
    }
    let cs = cfg.axis("c_ratio", "0:4:1/6").ratios("c_ratio")?;
    let rs = cfg.axis("r_ratio", "0,1/2,1,3/2,2").ratios("r_ratio")?;
    let mut t = Table::new(&[
        "n_d", "r_ratio", "c_ratio", "n_c", "n_r", "sum_capacity", "normalized", "normalized_exact",
    ]);
    let (mut checked, mut broken) = (0, Vec::new());
    for &n_d in &nds {
        for &r in &rs {
            let n_r = realize("r_ratio", r, n_d)?;
            let mut curve = Vec::new();
            for &c in &cs {
                let n_c = realize("c_ratio", c, n_d)?;
                let cap = det_sum_capacity(&DetParams::new(n_d, n_c, n_r));
                let norm = Rational64::new(cap.halves(), 4 * n_d as i64);
                curve.push((n_c, norm));
                t.push(vec![
                    n_d.into(),
                    r.to_string().into(),
                    c.to_string().into(),
                    n_c.into(),
                    n_r.into(),
                    cap.to_string().into(),
                    (*norm.numer() as f64 / *norm.denom() as f64).into(),
                    norm.to_string().into(),
                ]);
            }
            if let Some(ok) = shape_check(n_d, n_r, &curve) {
                checked += 1;
                if !ok {
                    broken.push(format!("n_d={n_d} n_r={n_r}"));
                }
            }
        }
    }
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed: broken.is_empty(),
        summary: if broken.is_empty() {
            format!("{} rows, {checked} curves shape-checked", t.rows.len())
        } else {
            format!("shape check failed for {}", broken.join(", "))
        },
    })
}

fn useful(cfg: &SweepConfig) -> Result<RunOutput, CliError> {
    cfg.check_axes(&["hd2", "hr2"])?;
    let hd2 = cfg.axis("hd2", "1,100,10000").reals("hd2")?;
    let hr2 = cfg.axis("hr2", "log:1e-3:1e8:221").reals("hr2")?;
    if let Some(h) = hd2.iter().chain(&hr2).find(|h| **h <= 0.0) {
        return Err(CliError::usage(format!("squared gains must be positive, got {h}")));
    }
    let mut t = Table::new(&[
        "hd2", "hr2", "log_relay", "no_interference_bound", "es_achievable_floor", "useful",
        "closed_form_useful", "threshold_hr2", "agree",
    ]);
    let mut passed = true;
    for &d in &hd2 {
        let threshold = usefulness_threshold(d);
        passed &= ((1.0 + threshold).log2() - USEFUL_THRESHOLD).abs() <= 1e-9;
        for &r in &hr2 {
            let u = interference_useful(d, r);
            let log_relay = (1.0 + r).log2();
            let agree = u.useful == u.closed_form_useful || (log_relay - USEFUL_THRESHOLD).abs() <= 1e-9;
            passed &= agree;
            t.push(vec![
                d.into(),
                r.into(),
                log_relay.into(),
                u.no_interference_bound.into(),
                u.es_achievable_floor.into(),
                u.useful.into(),
                u.closed_form_useful.into(),
                threshold.into(),
                agree.into(),
            ]);
        }
    }
    Ok(RunOutput {
        body: t.render(cfg.format)?,
        passed,
        summary: format!(
            "{} rows, flip at h_r^2 = {}",
            t.rows.len(),
            fmt_float(USEFUL_THRESHOLD.exp2() - 1.0)
        ),
    })
}
