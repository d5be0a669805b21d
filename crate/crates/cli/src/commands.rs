use anyhow::{bail, Context, Result};

use parking_core::analytic::{
    density_profile, end_density_sequence, expected_run_series, limit_density, psi_pmf,
    renewal_weights, EXPECTED_RUN,
};
use parking_core::simulator::{
    collect_run_stats, end_density_horizon, estimate_bulk_density, estimate_density,
    estimate_end_density, Horizon, LatticeConfig, SimEstimate,
};
use parking_core::{Rational, Scalar};

use crate::args::{LayerRange, TimeGrid};
use crate::csv::{decimal, float, fraction, Table};

/// Horizon for run statistics when none is given.
const RUNS_HORIZON: f64 = 500.0;
const RUNS_REPORTED: usize = 5;

fn require_grid(grid: Option<TimeGrid>) -> Result<TimeGrid> {
    grid.context("a time grid is required: pass --times START:END:STEP or --time T")
}

pub fn density(layers: LayerRange, grid: Option<TimeGrid>) -> Result<String> {
    let grid = require_grid(grid)?;
    let profiles = layers
        .iter()
        .map(density_profile::<Rational>)
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["t", "r", "rho_exact"]);
    for t in grid.points() {
        for profile in &profiles {
            let value = profile.evaluate(t)?;
            table.push([float(t), profile.layer().to_string(), float(value)]);
        }
    }
    Ok(table.into_string())
}

pub fn end_density(layers: LayerRange) -> Result<String> {
    let u = end_density_sequence::<Rational>(layers.last);
    let limit = float(limit_density());
    let mut table = Table::new(&["r", "rho_exact_rational", "rho_exact_decimal", "limit"]);
    for r in layers.iter() {
        let q = &u[r as usize];
        table.push([r.to_string(), fraction(q), decimal(q), limit.clone()]);
    }
    Ok(table.into_string())
}

pub fn psi(distances: LayerRange) -> Result<String> {
    let mut table = Table::new(&["d", "psi_rational", "psi_decimal"]);
    for d in distances.iter() {
        let p = psi_pmf::<Rational>(d)?;
        table.push([d.to_string(), fraction(&p), decimal(&p)]);
    }
    Ok(table.into_string())
}

pub fn weights(layer: u32) -> Result<String> {
    let weights = renewal_weights::<Rational>(layer)?;
    let mut table = Table::new(&["r", "i", "w_rational", "w_decimal"]);
    for (i, w) in (1u32..).zip(weights.weights()) {
        table.push([layer.to_string(), i.to_string(), fraction(w), decimal(w)]);
    }
    Ok(table.into_string())
}

pub fn profile(layers: LayerRange) -> Result<String> {
    let mut table = Table::new(&["r", "l", "coeff_rational", "coeff_decimal"]);
    for r in layers.iter() {
        let profile = density_profile::<Rational>(r)?;
        for (l, b) in profile.coeffs().iter().enumerate() {
            table.push([r.to_string(), l.to_string(), fraction(b), decimal(b)]);
        }
    }
    Ok(table.into_string())
}

pub fn limit(tolerance: f64) -> Result<String> {
    let series = expected_run_series(tolerance)?;
    let ex = series.value();
    let mut table = Table::new(&["quantity", "value", "closed_form"]);
    table.push(["limit_density", &float(limit_density()), "(10-sqrt(5))/19"]);
    table.push(["expected_run_series", &float(ex), "1+1/sqrt(5)"]);
    table.push([
        "expected_run_closed_form",
        &float(EXPECTED_RUN.to_f64()),
        "1+1/sqrt(5)",
    ]);
    table.push([
        "limit_from_expected_run",
        &float(1.0 / (1.0 + ex)),
        "1/(1+EX)",
    ]);
    table.push(["series_terms", &series.terms.to_string(), ""]);
    table.push(["series_tail_bound", &float(series.tail_bound), ""]);
    Ok(table.into_string())
}

#[derive(Debug, Clone)]
pub struct SimRequest {
    pub width: usize,
    pub site: i64,
    pub layers: LayerRange,
    pub times: Option<TimeGrid>,
    pub trials: u64,
    pub seed: u64,
}

impl SimRequest {
    fn config(&self, horizon: f64) -> Result<LatticeConfig> {
        Ok(LatticeConfig::new(
            self.width,
            Horizon::Time(horizon),
            self.seed,
        )?)
    }

    fn single_time(&self) -> Result<Option<f64>> {
        match &self.times {
            None => Ok(None),
            Some(grid) => match grid.points().as_slice() {
                [t] if *t > 0.0 => Ok(Some(*t)),
                _ => bail!("this mode takes a single positive --time as its horizon"),
            },
        }
    }
}

const SIM_HEADER: [&str; 11] = [
    "mode", "width", "site", "layers", "time", "quantity", "mean", "stderr", "trials", "seed",
    "unfrozen",
];

fn sim_row(
    table: &mut Table,
    request: &SimRequest,
    mode: &str,
    layers: &str,
    time: f64,
    quantity: &str,
    e: &SimEstimate,
) {
    table.push([
        mode.to_string(),
        request.width.to_string(),
        request.site.to_string(),
        layers.to_string(),
        float(time),
        quantity.to_string(),
        float(e.mean),
        float(e.stderr),
        e.trials.to_string(),
        request.seed.to_string(),
        e.unfrozen.to_string(),
    ]);
}

pub fn simulate_density(request: &SimRequest) -> Result<String> {
    let points = require_grid(request.times.clone())?.points();
    let horizon = points.iter().cloned().fold(0.0, f64::max);
    let config = request.config(if horizon > 0.0 { horizon } else { 1.0 })?;
    let mut table = Table::new(&SIM_HEADER);
    for r in request.layers.iter() {
        for &t in &points {
            let e = estimate_density(&config, request.site, r, t, request.trials)?;
            sim_row(
                &mut table,
                request,
                "density",
                &r.to_string(),
                t,
                "density",
                &e,
            );
        }
    }
    Ok(table.into_string())
}

pub fn simulate_end(request: &SimRequest) -> Result<String> {
    let horizon = request
        .single_time()?
        .unwrap_or_else(|| end_density_horizon(request.layers.last));
    let config = request.config(horizon)?;
    let mut table = Table::new(&SIM_HEADER);
    for r in request.layers.iter() {
        let e = estimate_end_density(&config, request.site, r, request.trials)?;
        sim_row(
            &mut table,
            request,
            "end",
            &r.to_string(),
            horizon,
            "end_density",
            &e,
        );
    }
    Ok(table.into_string())
}

pub fn simulate_bulk(request: &SimRequest) -> Result<String> {
    let LayerRange { first, last } = request.layers;
    let horizon = request
        .single_time()?
        .unwrap_or_else(|| end_density_horizon(last));
    let config = request.config(horizon)?;
    let e = estimate_bulk_density(&config, request.site, first, last, request.trials)?;
    let mut table = Table::new(&SIM_HEADER);
    let window = request.layers.to_string();
    sim_row(
        &mut table,
        request,
        "bulk",
        &window,
        horizon,
        "bulk_density",
        &e,
    );
    Ok(table.into_string())
}

pub fn simulate_runs(request: &SimRequest) -> Result<String> {
    if request.site != 0 {
        bail!("run statistics describe the center column; --site must be 0");
    }
    let horizon = request.single_time()?.unwrap_or(RUNS_HORIZON);
    let stats = collect_run_stats(&request.config(horizon)?, request.trials)?;
    let Some(mean) = stats.mean_gap() else {
        bail!("no windows survived the transient cutoffs; use a longer --time");
    };
    let mut table = Table::new(&SIM_HEADER);
    sim_row(&mut table, request, "runs", "", horizon, "mean_gap", &mean);
    for x in 0..=RUNS_REPORTED {
        let e = stats.gap_probability(x).expect("windows exist");
        sim_row(
            &mut table,
            request,
            "runs",
            "",
            horizon,
            &format!("P(X={x})"),
            &e,
        );
    }
    for n in 0..=RUNS_REPORTED {
        let e = stats.border_count_probability(n).expect("windows exist");
        sim_row(
            &mut table,
            request,
            "runs",
            "",
            horizon,
            &format!("P(N={n})"),
            &e,
        );
    }
    Ok(table.into_string())
}

const COMPARE_HEADER: [&str; 7] = [
    "layer",
    "time",
    "exact_rational",
    "exact_decimal",
    "mc_mean",
    "mc_stderr",
    "z",
];

fn finish_compare(mut table: Table, max_abs_z: f64) -> String {
    table.comment(&format!("max_abs_z,{}", float(max_abs_z)));
    table.into_string()
}

pub fn compare_end(layers: LayerRange, trials: u64, seed: u64) -> Result<String> {
    let config = LatticeConfig::three_site(end_density_horizon(layers.last), seed)?;
    let u = end_density_sequence::<Rational>(layers.last);
    let mut table = Table::new(&COMPARE_HEADER);
    let mut max_abs_z: f64 = 0.0;
    for r in layers.iter() {
        let exact = &u[r as usize];
        let e = estimate_end_density(&config, 0, r, trials)?;
        let z = e.z_score(exact.to_f64());
        max_abs_z = max_abs_z.max(z.abs());
        table.push([
            r.to_string(),
            "inf".to_string(),
            fraction(exact),
            decimal(exact),
            float(e.mean),
            float(e.stderr),
            float(z),
        ]);
    }
    Ok(finish_compare(table, max_abs_z))
}

pub fn compare_density(
    layers: LayerRange,
    grid: Option<TimeGrid>,
    trials: u64,
    seed: u64,
) -> Result<String> {
    let points = require_grid(grid)?.points();
    let horizon = points.iter().cloned().fold(0.0, f64::max);
    let config = LatticeConfig::three_site(if horizon > 0.0 { horizon } else { 1.0 }, seed)?;
    let mut table = Table::new(&COMPARE_HEADER);
    let mut max_abs_z: f64 = 0.0;
    for r in layers.iter() {
        let profile = density_profile::<Rational>(r)?;
        for &t in &points {
            let exact = profile.evaluate(t)?;
            let e = estimate_density(&config, 0, r, t, trials)?;
            let z = e.z_score(exact);
            max_abs_z = max_abs_z.max(z.abs());
            // Values at finite t are irrational; only the decimal is exact to print.
            let rational = if exact == 0.0 {
                "0/1".to_string()
            } else {
                String::new()
            };
            table.push([
                r.to_string(),
                float(t),
                rational,
                float(exact),
                float(e.mean),
                float(e.stderr),
                float(z),
            ]);
        }
    }
    Ok(finish_compare(table, max_abs_z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(csv: &str) -> Vec<Vec<String>> {
        csv.lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn end_density_table() {
        let out = end_density(LayerRange { first: 1, last: 4 }).unwrap();
        let rows = rows(&out);
        assert_eq!(
            rows[0],
            ["r", "rho_exact_rational", "rho_exact_decimal", "limit"]
        );
        let fractions: Vec<&str> = rows[1..].iter().map(|r| r[1].as_str()).collect();
        assert_eq!(fractions, ["1/3", "11/27", "11/27", "893/2187"]);
        assert_eq!(rows[1][3], "0.408628001184");
    }

    #[test]
    fn density_needs_grid() {
        assert!(density(LayerRange { first: 1, last: 1 }, None).is_err());
        let out = density(
            LayerRange { first: 1, last: 1 },
            Some(TimeGrid::single(0.0)),
        )
        .unwrap();
        assert_eq!(out, "t,r,rho_exact\n0,1,0\n");
    }

    #[test]
    fn profile_table_lists_every_coefficient() {
        let out = profile(LayerRange { first: 3, last: 3 }).unwrap();
        assert!(out.contains("3,2,19/81,"));
        assert!(out.contains("3,3,1/27,"));
        assert_eq!(rows(&out).len(), 1 + 4);
    }

    #[test]
    fn weights_table() {
        let out = weights(2).unwrap();
        assert!(out.contains("2,1,8/27,"));
        assert!(out.contains("2,2,1/9,"));
        assert!(weights(0).is_err());
    }

    #[test]
    fn compare_density_at_time_zero() {
        let out = compare_density(
            LayerRange { first: 1, last: 1 },
            Some(TimeGrid::single(0.0)),
            100,
            1,
        )
        .unwrap();
        let rows = rows(&out);
        assert_eq!(rows[1], ["1", "0", "0/1", "0", "0", "0", "0"]);
        assert!(out.ends_with("# max_abs_z,0\n"));
    }

    #[test]
    fn simulate_rejects_bad_requests() {
        let request = SimRequest {
            width: 3,
            site: 2,
            layers: LayerRange { first: 1, last: 2 },
            times: None,
            trials: 10,
            seed: 1,
        };
        assert!(simulate_end(&request).is_err());
        assert!(simulate_density(&SimRequest {
            site: 0,
            ..request.clone()
        })
        .is_err());
        assert!(simulate_runs(&SimRequest {
            width: 5,
            site: 0,
            ..request.clone()
        })
        .is_err());
        assert!(simulate_end(&SimRequest {
            width: 4,
            site: 0,
            ..request
        })
        .is_err());
    }
}
