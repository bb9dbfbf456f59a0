//! The six subcommands. Each writes its artifacts and returns an exit code.

use std::f64::consts::PI;

use kirkwood::coxaudit::{audit, AuditReport, PlausibilityScale, Verdict};
use kirkwood::hilbert::DensityMatrix;
use kirkwood::quasiprob::{
    bayes_update, kirkwood, marginal_over_a, marginal_over_b, reconstruct_density, ClassicalDistribution, Evidence,
    KirkwoodMatrix, Marginal,
};
use kirkwood::scenarios::{circle_fit, close_period, oam_circle, oam_conditional, CircleFit, OamScenario};
use kirkwood::weaksim::{
    convergence_sweep, exact_run, monte_carlo_run, SweepMode, WeakMeasurementRecord, WeakMeasurementScenario,
};
use kirkwood::Complex64;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliResult, EXIT_INADMISSIBLE, EXIT_OK};
use crate::output::Artifacts;
use crate::{inputs, AuditArgs, BayesArgs, Command, OamArgs, TableArgs, WeaksimArgs};

pub fn dispatch(command: &Command, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    match command {
        Command::Kirkwood(args) => kirkwood_table(args, config, out),
        Command::Audit(args) => audit_curves(args, config, out),
        Command::Oam(args) => oam(args, config, out),
        Command::Tomo(args) => tomography(args, config, out),
        Command::Weaksim(args) => weaksim(args, config, out),
        Command::Bayes(args) => bayes(args, config, out),
    }
}

fn verdict_code(verdict: Verdict) -> u8 {
    if verdict.is_admissible() {
        EXIT_OK
    } else {
        EXIT_INADMISSIBLE
    }
}

#[derive(Serialize)]
struct KirkwoodEntry {
    a_index: usize,
    b_index: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct MatrixEntry {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

fn load_table(args: &TableArgs, config: &RunConfig) -> CliResult<(DensityMatrix, KirkwoodMatrix)> {
    let tol = &config.tolerances;
    let rho = inputs::density(&args.rho, tol)?;
    let a = inputs::basis(&args.basis_a, rho.dim(), tol)?;
    let b = inputs::basis(&args.basis_b, rho.dim(), tol)?;
    let table = kirkwood(&rho, &a, &b)?;
    Ok((rho, table))
}

#[derive(Serialize)]
struct KirkwoodSummary<'a> {
    dim: usize,
    basis_a: &'a str,
    basis_b: &'a str,
    total: Complex64,
    marginal_a: Marginal,
    marginal_b: Marginal,
    born_a: Vec<f64>,
    born_b: Vec<f64>,
    max_marginal_error: f64,
}

#[derive(Serialize)]
struct MarginalRow<'a> {
    basis: &'a str,
    index: usize,
    marginal: f64,
    born: f64,
}

fn kirkwood_table(args: &TableArgs, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    let tol = &config.tolerances;
    let (rho, table) = load_table(args, config)?;
    let born = |basis: &kirkwood::hilbert::OrthonormalBasis| {
        basis
            .vectors()
            .iter()
            .map(|v| rho.probability(v))
            .collect::<kirkwood::Result<Vec<f64>>>()
    };
    let summary = KirkwoodSummary {
        dim: rho.dim(),
        basis_a: table.basis_a().label(),
        basis_b: table.basis_b().label(),
        total: table.total(),
        marginal_a: marginal_over_b(&table, tol)?,
        marginal_b: marginal_over_a(&table, tol)?,
        born_a: born(table.basis_a())?,
        born_b: born(table.basis_b())?,
        max_marginal_error: 0.0,
    };
    let max_marginal_error = [
        (&summary.marginal_a, &summary.born_a),
        (&summary.marginal_b, &summary.born_b),
    ]
    .iter()
    .flat_map(|(m, born)| {
        m.distribution
            .probs()
            .iter()
            .zip(born.iter())
            .map(|(p, q)| (p - q).abs())
    })
    .fold(0.0, f64::max);
    let summary = KirkwoodSummary {
        max_marginal_error,
        ..summary
    };

    if config.format.json() {
        out.json("kirkwood.json", &table.to_file())?;
    }
    if config.format.csv() {
        out.csv(
            "kirkwood.csv",
            table.csv_rows().map(|(a_index, b_index, re, im)| KirkwoodEntry {
                a_index,
                b_index,
                re,
                im,
            }),
        )?;
        let rows = [
            ("A", &summary.marginal_a, &summary.born_a),
            ("B", &summary.marginal_b, &summary.born_b),
        ]
        .into_iter()
        .flat_map(|(basis, m, born)| {
            m.distribution
                .probs()
                .iter()
                .zip(born.iter())
                .enumerate()
                .map(move |(index, (&marginal, &born))| MarginalRow {
                    basis,
                    index,
                    marginal,
                    born,
                })
        })
        .collect::<Vec<_>>();
        out.csv("marginals.csv", rows)?;
    }
    out.json("kirkwood_summary.json", &summary)?;
    println!(
        "total = {} {:+}i, max marginal error {:.3e}",
        summary.total.re, summary.total.im, summary.max_marginal_error
    );
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RankRow {
    param: f64,
    re: f64,
    im: f64,
    rank: f64,
}

fn audit_curves(args: &AuditArgs, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    let tol = &config.tolerances;
    let curves = args
        .curve
        .iter()
        .map(|path| inputs::curve(path, tol))
        .collect::<CliResult<Vec<_>>>()?;
    let scale = PlausibilityScale {
        v_false: args.vf,
        v_true: args.vt,
    };
    let report = audit(&curves, scale, tol);
    out.json("audit.json", &report)?;
    if let (Some(map), true) = (&report.ranking, config.format.csv()) {
        let rows = map
            .curve()
            .param()
            .iter()
            .zip(map.curve().points())
            .zip(map.mapped_values())
            .map(|((&param, z), &rank)| RankRow {
                param,
                re: z.re,
                im: z.im,
                rank,
            });
        out.csv("ranking.csv", rows)?;
    }
    print_verdict(&report);
    Ok(verdict_code(report.verdict))
}

fn print_verdict(report: &AuditReport) {
    println!(
        "verdict {:?}: {} intersection(s), closure gap {:.3e}",
        report.verdict,
        report.intersections.len(),
        report.closure_gap
    );
}

#[derive(Serialize)]
struct OamSummary {
    dim: usize,
    m: i64,
    n: i64,
    delta: f64,
    expected_center: f64,
    expected_radius: f64,
    fit: CircleFit,
    verdict: Verdict,
    closure_gap: f64,
    intersections: usize,
    notes: String,
}

#[derive(Serialize)]
struct AngleRow {
    phi: f64,
    re: f64,
    im: f64,
}

fn oam(args: &OamArgs, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    let tol = &config.tolerances;
    let deltas = match (&args.sweep_delta, args.delta) {
        (Some(list), _) => list.clone(),
        (None, Some(delta)) => vec![delta],
        (None, None) => unreachable!("clap requires --delta or --sweep-delta"),
    };
    let mut summaries = Vec::with_capacity(deltas.len());
    let mut code = EXIT_OK;
    for delta in deltas {
        let scenario = OamScenario::new(args.dim, args.m, args.n, delta)?;
        let samples = oam_conditional(&scenario, tol)?;
        let fit = circle_fit(&samples.values)?;
        let period = close_period(&samples, 2.0 * PI);
        let curve = kirkwood::coxaudit::trace_curve(&period.values, &period.param, &period.label, tol)?;
        let report = audit(&[curve], PlausibilityScale::default(), tol);
        let stem = format!("oam_delta_{delta}");
        if config.format.json() {
            out.json(&format!("{stem}.json"), &period)?;
        }
        if config.format.csv() {
            let rows = period.param.iter().zip(&period.values).map(|(&phi, z)| AngleRow {
                phi,
                re: z.re,
                im: z.im,
            });
            out.csv(&format!("{stem}.csv"), rows)?;
        }
        let (expected_center, expected_radius) = oam_circle(delta);
        println!(
            "delta {delta}: center {:.7} {:+.1e}i, radius {:.7}, verdict {:?}",
            fit.center.re, fit.center.im, fit.radius, report.verdict
        );
        code = code.max(verdict_code(report.verdict));
        summaries.push(OamSummary {
            dim: args.dim,
            m: args.m,
            n: args.n,
            delta,
            expected_center,
            expected_radius,
            fit,
            verdict: report.verdict,
            closure_gap: report.closure_gap,
            intersections: report.intersections.len(),
            notes: report.notes,
        });
    }
    out.json("oam_summary.json", &summaries)?;
    Ok(code)
}

#[derive(Serialize)]
struct TomoSummary<'a> {
    dim: usize,
    basis_a: &'a str,
    basis_b: &'a str,
    frobenius_error: f64,
}

fn tomography(args: &TableArgs, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    let (rho, table) = load_table(args, config)?;
    let back = reconstruct_density(&table, &config.tolerances)?;
    let summary = TomoSummary {
        dim: rho.dim(),
        basis_a: table.basis_a().label(),
        basis_b: table.basis_b().label(),
        frobenius_error: back.frobenius_distance(&rho)?,
    };
    if config.format.json() {
        out.json("reconstructed.json", &back)?;
    }
    if config.format.csv() {
        let m = back.entries();
        let rows = (0..m.nrows()).flat_map(|row| {
            (0..m.ncols()).map(move |col| MatrixEntry {
                row,
                col,
                re: m[(row, col)].re,
                im: m[(row, col)].im,
            })
        });
        out.csv("reconstructed.csv", rows)?;
    }
    out.json("tomo_summary.json", &summary)?;
    println!("frobenius error {:.3e}", summary.frobenius_error);
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RecordRow {
    g: f64,
    estimate_re: f64,
    estimate_im: f64,
    exact_re: f64,
    exact_im: f64,
    error: f64,
    stderr: f64,
    shots: u64,
    seed: u64,
}

fn weaksim(args: &WeaksimArgs, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    let tol = &config.tolerances;
    let coupling = args
        .g
        .or_else(|| args.sweep_g.as_ref().and_then(|gs| gs.first().copied()))
        .expect("clap requires --g or --sweep-g");
    let scenario = WeakMeasurementScenario::new(
        inputs::state(&args.pre, tol)?,
        inputs::state(&args.post, tol)?,
        inputs::observable(&args.obs, tol)?,
        coupling,
        tol,
    )?;
    let records: Vec<WeakMeasurementRecord> = match &args.sweep_g {
        Some(gs) => {
            let mode = match args.shots {
                Some(shots) => SweepMode::MonteCarlo {
                    shots,
                    seed: config.seed,
                },
                None => SweepMode::Exact,
            };
            convergence_sweep(&scenario, gs, mode, tol)?
                .into_iter()
                .map(|row| row.record)
                .collect()
        }
        None => vec![match args.shots {
            Some(shots) => monte_carlo_run(&scenario, shots, config.seed, tol)?,
            None => exact_run(&scenario, config.seed, tol)?,
        }],
    };
    if config.format.json() {
        out.json("weaksim.json", &records)?;
    }
    if config.format.csv() {
        let rows = records.iter().map(|r| RecordRow {
            g: r.g,
            estimate_re: r.estimate.re,
            estimate_im: r.estimate.im,
            exact_re: r.exact.re,
            exact_im: r.exact.im,
            error: (r.estimate - r.exact).norm(),
            stderr: r.stderr,
            shots: r.shots,
            seed: r.seed,
        });
        out.csv("weaksim.csv", rows)?;
    }
    for r in &records {
        println!(
            "g {}: estimate {:.6} {:+.6}i (exact {:.6} {:+.6}i), stderr {:.3e}",
            r.g, r.estimate.re, r.estimate.im, r.exact.re, r.exact.im, r.stderr
        );
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BayesReport<'a> {
    prior: &'a [f64],
    likelihood: &'a [f64],
    posterior: &'a [f64],
}

#[derive(Serialize)]
struct BayesRow {
    index: usize,
    prior: f64,
    likelihood: f64,
    posterior: f64,
}

fn bayes(args: &BayesArgs, config: &RunConfig, out: &mut Artifacts) -> CliResult<u8> {
    let prior = ClassicalDistribution::new(args.prior.clone())?;
    let posterior = bayes_update(&prior, &args.likelihood, Evidence::Computed, &config.tolerances)?;
    if config.format.json() {
        out.json(
            "bayes.json",
            &BayesReport {
                prior: prior.probs(),
                likelihood: &args.likelihood,
                posterior: posterior.probs(),
            },
        )?;
    }
    if config.format.csv() {
        let rows = (0..prior.len()).map(|index| BayesRow {
            index,
            prior: prior.probs()[index],
            likelihood: args.likelihood[index],
            posterior: posterior.probs()[index],
        });
        out.csv("bayes.csv", rows)?;
    }
    let text: Vec<String> = posterior.probs().iter().map(|p| format!("{p:.6}")).collect();
    println!("{}", text.join(","));
    Ok(EXIT_OK)
}
