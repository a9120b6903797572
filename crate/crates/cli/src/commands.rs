//! Command implementations. Each consumes its config keys, rejects
//! leftovers, writes one CSV with a fixed column order, and prints a
//! human-readable summary to stdout.

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;

use vexmem::family::random_field_problems;
use vexmem::{
    mittag_leffler, solve_field, ExponentForm, ExponentFunction, FieldForcing, FieldProblem,
    InitialData, MLParams, ModeForcing, ModeProblem, Scheme, SolverContext, SpectralDomain,
    SplitKernel, TimeGrid,
};

use crate::config::RawConfig;
use crate::csvout::{write_csv, Cell};
use crate::HarnessError;

/// Harness-level settings shared by every command: the output path and the
/// seed are consumed here so `--out`/`--seed` apply uniformly (deterministic
/// commands simply ignore the seed).
pub struct RunEnv {
    out: PathBuf,
    seed: u64,
    verbose: bool,
}

pub fn dispatch(mut raw: RawConfig, verbose: bool) -> Result<(), HarnessError> {
    let command = raw.take_required("command")?;
    let env = RunEnv {
        out: PathBuf::from(raw.take_required("out")?),
        seed: raw.take_u64("seed", Some(0))?,
        verbose,
    };
    match command.as_str() {
        "ml-eval" => ml_eval(raw, &env),
        "kernel-split" => kernel_split(raw, &env),
        "solve-mode" => solve_mode(raw, &env),
        "solve-pde" => solve_pde(raw, &env),
        "contraction-probe" => contraction_probe_cmd(raw, &env),
        "singularity-probe" => singularity_probe_cmd(raw, &env),
        "convergence" => convergence(raw, &env),
        "regularity-report" => regularity_report(raw, &env),
        other => Err(HarnessError::parse(format!("unknown command '{other}'"))),
    }
}

fn parse_kernel(raw: &mut RawConfig) -> Result<Arc<SplitKernel<f64>>, HarnessError> {
    let spec = raw.take_required("exponent")?;
    let horizon = raw.take_f64("horizon", Some(1.0))?;
    let quad_nodes = raw.take_usize("quad_nodes", Some(32))?;
    let quad_tol = raw.take_f64("quad_tolerance", Some(1e-10))?;
    let form = ExponentForm::parse(&spec)?;
    let exponent = ExponentFunction::new(form, horizon)?;
    Ok(Arc::new(SplitKernel::new(exponent, quad_nodes, quad_tol)?))
}

fn parse_grid(
    raw: &mut RawConfig,
    kernel: &SplitKernel<f64>,
    default_n: usize,
) -> Result<TimeGrid<f64>, HarnessError> {
    let n = raw.take_usize("n_time", Some(default_n))?;
    let grid = match raw.take("grading") {
        Some(g) => {
            let g: f64 = g
                .parse()
                .map_err(|_| HarnessError::parse(format!("grading: bad number '{g}'")))?;
            TimeGrid::new(kernel.horizon(), n, g)?
        }
        None => TimeGrid::graded_for(kernel.horizon(), n, kernel.alpha0())?,
    };
    Ok(grid)
}

fn parse_forcing(spec: &str) -> Result<ModeForcing<f64>, HarnessError> {
    if spec == "zero" {
        return Ok(ModeForcing::zero());
    }
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| HarnessError::parse(format!("forcing spec '{spec}' missing ':'")))?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| HarnessError::parse(format!("forcing: bad number '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    match (name, nums.len()) {
        ("constant", 1) => Ok(ModeForcing::constant(nums[0])),
        ("poly", n) if n >= 1 => Ok(ModeForcing::polynomial(nums)),
        ("sin", 3) => Ok(ModeForcing::sinusoid(nums[0], nums[1], nums[2])),
        _ => Err(HarnessError::parse(format!(
            "unrecognized forcing spec '{spec}'"
        ))),
    }
}

fn graded_probe_times(horizon: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|j| horizon * (j as f64 / count as f64).powi(2))
        .collect()
}

// ---------------------------------------------------------------------------
// ml-eval
// ---------------------------------------------------------------------------

fn ml_eval(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let alpha = raw.take_f64("ml_alpha", None)?;
    let beta = raw.take_f64("ml_beta", None)?;
    let z_from = raw.take_f64("z_from", None)?;
    let z_to = raw.take_f64("z_to", Some(0.0))?;
    let count = raw.take_usize("z_count", Some(200))?;
    let tol = raw.take_f64("ml_tolerance", Some(1e-12))?;
    raw.finish().map_err(HarnessError::from)?;
    if count < 2 || z_from > z_to || z_to > 0.0 {
        return Err(HarnessError::parse(
            "ml-eval needs z_from <= z_to <= 0 and z_count >= 2".to_string(),
        ));
    }
    let params = MLParams::new(alpha, beta, tol)?;
    let mut rows = Vec::with_capacity(count);
    for k in 0..count {
        let z = z_from + (z_to - z_from) * k as f64 / (count - 1) as f64;
        let v = mittag_leffler(&params, z)?;
        if env.verbose {
            eprintln!("E_{{{alpha},{beta}}}({z}) = {v}");
        }
        rows.push(vec![Cell::Float(z), Cell::Float(v)]);
    }
    write_csv(&out, &["z", "value"], &rows)?;
    println!("ml-eval: alpha={alpha} beta={beta}, {count} points on [{z_from}, {z_to}]");
    println!("wrote {}", out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// kernel-split
// ---------------------------------------------------------------------------

fn kernel_split(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let kernel = parse_kernel(&mut raw)?;
    let count = raw.take_usize("n_points", Some(200))?;
    raw.finish().map_err(HarnessError::from)?;
    let mut rows = Vec::with_capacity(count);
    let mut max_residual = 0.0f64;
    for t in graded_probe_times(kernel.horizon(), count) {
        let k = kernel.kernel_eval(t)?;
        let b = kernel.beta_part(t)?;
        let g = kernel.gtilde(t)?;
        let gp = kernel.gtilde_prime(t)?;
        let residual = (b + g - k).abs();
        max_residual = max_residual.max(residual);
        if env.verbose {
            eprintln!("t={t}: k={k} beta={b} gtilde={g} residual={residual:.3e}");
        }
        rows.push(vec![
            Cell::Float(t),
            Cell::Float(k),
            Cell::Float(b),
            Cell::Float(g),
            Cell::Float(gp),
            Cell::Float(residual),
        ]);
    }
    write_csv(
        &out,
        &[
            "t",
            "kernel",
            "beta_part",
            "gtilde",
            "gtilde_prime",
            "residual",
        ],
        &rows,
    )?;
    let tol = kernel.quad_tolerance();
    let pass = max_residual <= tol;
    println!(
        "kernel-split: alpha0={} horizon={} max|beta+gtilde-k|={max_residual:.3e} (tolerance {tol:.1e})",
        kernel.alpha0(),
        kernel.horizon()
    );
    println!("split consistency: {}", if pass { "PASS" } else { "FAIL" });
    println!("wrote {}", out.display());
    if !pass {
        return Err(HarnessError::invariant(format!(
            "split residual {max_residual:.3e} exceeds quad_tolerance {tol:.1e}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// solve-mode
// ---------------------------------------------------------------------------

fn solve_mode(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let kernel = parse_kernel(&mut raw)?;
    let grid = parse_grid(&mut raw, &kernel, 256)?;
    let lambda = raw.take_f64("lambda", None)?;
    let u0 = raw.take_f64("u0", Some(0.0))?;
    let forcing = parse_forcing(&raw.take("forcing").unwrap_or_else(|| "zero".into()))?;
    let scheme = raw.take("scheme").unwrap_or_else(|| "oracle".into());
    let picard_tol = raw.take_f64("picard_tol", Some(1e-10))?;
    let max_iter = raw.take_usize("max_iter", Some(50))?;
    let sigma_opt = raw.take_f64("sigma", Some(f64::NAN))?;
    raw.finish().map_err(HarnessError::from)?;

    let p = ModeProblem::new(lambda, u0, forcing, kernel.clone())?;
    let ctx = SolverContext::new(kernel, grid.clone())?;
    let sol = match scheme.as_str() {
        "oracle" => ctx.oracle_solve(&p)?,
        "picard" => {
            let sigma = if sigma_opt.is_nan() {
                ctx.select_sigma(&p)?
            } else {
                sigma_opt
            };
            if env.verbose {
                eprintln!("picard sigma = {sigma}");
            }
            ctx.picard_solve(&p, sigma, picard_tol, max_iter)?
        }
        other => {
            return Err(HarnessError::parse(format!(
                "scheme must be 'oracle' or 'picard', got '{other}'"
            )))
        }
    };
    let rows: Vec<Vec<Cell>> = grid
        .nodes()
        .iter()
        .enumerate()
        .map(|(n, &t)| {
            vec![
                Cell::Float(t),
                Cell::Float(sol.values[n]),
                Cell::Float(sol.derivative[n]),
            ]
        })
        .collect();
    write_csv(&out, &["t", "u", "u_prime"], &rows)?;
    println!(
        "solve-mode ({scheme}): lambda={lambda} u0={u0} N={} gamma={}",
        grid.count(),
        grid.grading()
    );
    println!(
        "H1 norm {:.6e}, iterations {}, residual {:.3e}",
        sol.h1_norm(),
        sol.iterations,
        sol.residual
    );
    println!("wrote {}", out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// solve-pde
// ---------------------------------------------------------------------------

fn parse_domain(spec: &str, truncation: usize) -> Result<SpectralDomain<f64>, HarnessError> {
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| HarnessError::parse(format!("domain spec '{spec}' missing ':'")))?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| HarnessError::parse(format!("domain: bad number '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    match (name, nums.len()) {
        ("interval", 1) => Ok(SpectralDomain::interval(nums[0], truncation)?),
        ("rectangle", 2) => Ok(SpectralDomain::rectangle(nums[0], nums[1], truncation)?),
        _ => Err(HarnessError::parse(format!(
            "unrecognized domain spec '{spec}'"
        ))),
    }
}

fn solve_pde(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let run_id = raw.take("run_id").unwrap_or_else(|| "run".into());
    let kernel = parse_kernel(&mut raw)?;
    let grid = parse_grid(&mut raw, &kernel, 256)?;
    let n_modes = raw.take_usize("n_modes", Some(16))?;
    let domain = parse_domain(
        &raw.take("domain").unwrap_or_else(|| "interval:1.0".into()),
        n_modes,
    )?;
    let scheme_name = raw.take("scheme").unwrap_or_else(|| "oracle".into());
    let picard_tol = raw.take_f64("picard_tol", Some(1e-10))?;
    let max_iter = raw.take_usize("max_iter", Some(50))?;
    let sigma_opt = raw.take_f64("sigma", Some(f64::NAN))?;
    let initial_spec = raw.take("initial").unwrap_or_else(|| "zero".into());
    let forcing_spec = raw.take("forcing").unwrap_or_else(|| "zero".into());
    raw.finish().map_err(HarnessError::from)?;

    let initial_coeffs: Vec<f64> = if initial_spec == "zero" {
        vec![]
    } else if let Some(list) = initial_spec.strip_prefix("coeffs:") {
        list.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| HarnessError::parse(format!("initial: bad number '{s}'")))
            })
            .collect::<Result<_, _>>()?
    } else {
        return Err(HarnessError::parse(format!(
            "initial must be 'zero' or 'coeffs:...', got '{initial_spec}'"
        )));
    };

    // forcing: zero | mode:<index>:<forcing spec> | mms:<tau poly spec>
    let mut mms_tau: Option<Vec<f64>> = None;
    let forcing = if forcing_spec == "zero" {
        FieldForcing::Zero
    } else if let Some(rest) = forcing_spec.strip_prefix("mode:") {
        let (idx, inner) = rest
            .split_once(':')
            .ok_or_else(|| HarnessError::parse("mode forcing needs 'mode:<j>:<spec>'"))?;
        let j: usize = idx
            .parse()
            .map_err(|_| HarnessError::parse(format!("mode forcing: bad index '{idx}'")))?;
        if j == 0 || j > n_modes {
            return Err(HarnessError::parse(format!(
                "mode forcing index {j} outside 1..={n_modes}"
            )));
        }
        let mut all = vec![ModeForcing::zero(); n_modes];
        all[j - 1] = parse_forcing(inner)?;
        FieldForcing::Modal(all)
    } else if let Some(rest) = forcing_spec.strip_prefix("mms:poly:") {
        let coeffs: Vec<f64> = rest
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| HarnessError::parse(format!("mms: bad number '{s}'")))
            })
            .collect::<Result<_, _>>()?;
        let tau = vexmem::spectral::TimeProfile::polynomial(coeffs.clone());
        let f = vexmem::manufactured_forcing(&domain, &kernel, &initial_coeffs, &tau)?;
        mms_tau = Some(coeffs);
        FieldForcing::Modal(f)
    } else {
        return Err(HarnessError::parse(format!(
            "forcing must be 'zero', 'mode:<j>:<spec>' or 'mms:poly:...', got '{forcing_spec}'"
        )));
    };

    // under mms the initial data is X tau(0)
    let initial = if let Some(tau) = &mms_tau {
        let tau0 = tau.first().copied().unwrap_or(0.0);
        InitialData::Coefficients(initial_coeffs.iter().map(|c| c * tau0).collect())
    } else {
        InitialData::Coefficients(initial_coeffs.clone())
    };

    let scheme = match scheme_name.as_str() {
        "oracle" => Scheme::Oracle,
        "picard" => Scheme::Picard {
            sigma: if sigma_opt.is_nan() {
                None
            } else {
                Some(sigma_opt)
            },
            tol: picard_tol,
            max_iter,
        },
        other => {
            return Err(HarnessError::parse(format!(
                "scheme must be 'oracle' or 'picard', got '{other}'"
            )))
        }
    };

    let problem = FieldProblem::new(domain, kernel, initial, forcing)?;
    let sol = solve_field(&problem, &grid, scheme)?;
    let r = &sol.report;

    let mms_error = match &mms_tau {
        None => f64::NAN,
        Some(tau) => {
            let tau_at = |t: f64| tau.iter().rev().fold(0.0f64, |acc, c| acc * t + c);
            let mut err = 0.0f64;
            for (i, m) in sol.modes.iter().enumerate() {
                let ci = initial_coeffs.get(i).copied().unwrap_or(0.0);
                for (n, &t) in grid.nodes().iter().enumerate() {
                    err = err.max((m.values[n] - ci * tau_at(t)).abs());
                }
            }
            err
        }
    };

    if env.verbose {
        eprintln!("solved {} modes", sol.modes.len());
    }
    let header = [
        "run_id",
        "n_modes",
        "n_time",
        "gamma",
        "sigma",
        "h1l2_norm",
        "h1h2_norm",
        "weighted_second",
        "data_h2",
        "data_h4",
        "f_h1l2",
        "f_h1h2",
        "stability_ratio",
        "regularity_ratio",
        "mms_error",
    ];
    let row = vec![
        Cell::Str(run_id.clone()),
        Cell::Int(n_modes as i64),
        Cell::Int(grid.count() as i64),
        Cell::Float(grid.grading()),
        Cell::Float(sol.sigma_used.unwrap_or(0.0)),
        Cell::Float(r.h1l2_norm),
        Cell::Float(r.h1h2_norm),
        Cell::Float(r.weighted_second),
        Cell::Float(r.data_h2),
        Cell::Float(r.data_h4),
        Cell::Float(r.f_h1l2),
        Cell::Float(r.f_h1h2),
        Cell::Float(r.stability_ratio),
        Cell::Float(r.regularity_ratio),
        Cell::Float(mms_error),
    ];
    write_csv(&out, &header, &[row])?;

    println!(
        "solve-pde '{run_id}' ({scheme_name}): N_modes={n_modes} N_time={}",
        grid.count()
    );
    println!("  h1l2_norm        = {:.6e}", r.h1l2_norm);
    println!("  h1h2_norm        = {:.6e}", r.h1h2_norm);
    println!("  weighted_second  = {:.6e}", r.weighted_second);
    println!("  data_h2          = {:.6e}", r.data_h2);
    println!("  data_h4          = {:.6e}", r.data_h4);
    println!("  f_h1l2           = {:.6e}", r.f_h1l2);
    println!("  f_h1h2           = {:.6e}", r.f_h1h2);
    println!("  stability_ratio  = {:.6e}", r.stability_ratio);
    println!("  regularity_ratio = {:.6e}", r.regularity_ratio);
    if mms_error.is_finite() {
        println!("  mms_error        = {mms_error:.6e}");
    }
    let norms_ok = [
        r.h1l2_norm,
        r.h1h2_norm,
        r.weighted_second,
        r.data_h2,
        r.data_h4,
        r.f_h1l2,
        r.f_h1h2,
    ]
    .iter()
    .all(|v| v.is_finite() && *v >= 0.0);
    let denom_stab = r.data_h2 + r.f_h1l2;
    let denom_reg = r.data_h4 + r.f_h1h2;
    let ratios_ok = (denom_stab == 0.0 || r.stability_ratio.is_finite())
        && (denom_reg == 0.0 || r.regularity_ratio.is_finite());
    println!(
        "norms nonnegative: {}",
        if norms_ok { "PASS" } else { "FAIL" }
    );
    println!(
        "ratios finite:     {}",
        if ratios_ok { "PASS" } else { "FAIL" }
    );
    println!("wrote {}", out.display());
    if !(norms_ok && ratios_ok) {
        return Err(HarnessError::invariant(
            "norm report failed invariant checks".to_string(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// contraction-probe
// ---------------------------------------------------------------------------

fn contraction_probe_cmd(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let kernel = parse_kernel(&mut raw)?;
    let grid = parse_grid(&mut raw, &kernel, 256)?;
    let lambda = raw.take_f64("lambda", None)?;
    let sigmas = raw.take_f64_list("sigma", None)?;
    raw.finish().map_err(HarnessError::from)?;
    let p = ModeProblem::new(lambda, 0.0, ModeForcing::zero(), kernel.clone())?;
    let ctx = SolverContext::new(kernel, grid)?;
    let table = ctx.contraction_probe(&p, &sigmas)?;
    if env.verbose && table.skipped > 0 {
        eprintln!(
            "warning: {} zero-norm probe directions skipped",
            table.skipped
        );
    }
    let rows: Vec<Vec<Cell>> = table
        .rows
        .iter()
        .map(|&(s, f)| vec![Cell::Float(s), Cell::Float(f)])
        .collect();
    write_csv(&out, &["sigma", "factor"], &rows)?;
    let monotone = table.rows.windows(2).all(|w| w[1].1 < w[0].1);
    println!("contraction-probe: lambda={lambda}");
    for (s, f) in &table.rows {
        println!("  sigma={s:<8} factor={f:.6e}");
    }
    match table.slope {
        Some(sl) => println!("empirical top-decade slope: {sl:.4}"),
        None => println!("empirical top-decade slope: (not available)"),
    }
    println!(
        "factors strictly decreasing: {}",
        if monotone { "PASS" } else { "FAIL" }
    );
    println!("wrote {}", out.display());
    if !monotone {
        return Err(HarnessError::invariant(
            "contraction factors are not strictly decreasing in sigma".to_string(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// singularity-probe
// ---------------------------------------------------------------------------

fn singularity_probe_cmd(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let kernel = parse_kernel(&mut raw)?;
    let grid = parse_grid(&mut raw, &kernel, 2048)?;
    let lambda = raw.take_f64("lambda", None)?;
    let u0 = raw.take_f64("u0", Some(1.0))?;
    let forcing = parse_forcing(&raw.take("forcing").unwrap_or_else(|| "zero".into()))?;
    raw.finish().map_err(HarnessError::from)?;
    let p = ModeProblem::new(lambda, u0, forcing, kernel.clone())?;
    let ctx = SolverContext::new(kernel, grid)?;
    let est = ctx.singularity_probe(&p)?;
    let rel = est.relative_error();
    if env.verbose {
        eprintln!(
            "probe: estimate {} predicted {}",
            est.limit_estimate, est.predicted
        );
    }
    write_csv(
        &out,
        &["limit_estimate", "predicted", "rel_error"],
        &[vec![
            Cell::Float(est.limit_estimate),
            Cell::Float(est.predicted),
            Cell::Float(rel),
        ]],
    )?;
    println!("singularity-probe: lambda={lambda} u0={u0}");
    println!(
        "  t^alpha0 u'' -> {:.6e} (predicted {:.6e}, relative deviation {:.3e})",
        est.limit_estimate, est.predicted, rel
    );
    println!("wrote {}", out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

fn convergence(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let kernel = parse_kernel(&mut raw)?;
    if !kernel.exponent().is_constant() {
        return Err(HarnessError::parse(
            "convergence requires a constant exponent (closed-form reference)".to_string(),
        ));
    }
    let lambda = raw.take_f64("lambda", Some(1.0))?;
    let u0 = raw.take_f64("u0", Some(1.0))?;
    let grading = raw.take_f64("grading", Some(4.0))?;
    let n_list: Vec<usize> = raw
        .take("n_list")
        .unwrap_or_else(|| "64,128,256,512".into())
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| HarnessError::parse(format!("n_list: bad count '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    raw.finish().map_err(HarnessError::from)?;
    if n_list.len() < 2 {
        return Err(HarnessError::parse(
            "n_list needs at least two sizes".to_string(),
        ));
    }

    let alpha0 = kernel.alpha0();
    let ml_order = 2.0 - alpha0;
    let params = MLParams::new(ml_order, 1.0, 1e-12)?;
    let p = ModeProblem::new(lambda, u0, ModeForcing::zero(), kernel.clone())?;
    let mut rows = Vec::new();
    let mut prev: Option<(usize, f64)> = None;
    let mut orders = Vec::new();
    for &n in &n_list {
        let grid = TimeGrid::new(kernel.horizon(), n, grading)?;
        let sol = vexmem::volterra_oracle_solve(&p, &grid)?;
        let mut max_err = 0.0f64;
        for (i, &t) in grid.nodes().iter().enumerate() {
            let exact = u0 * mittag_leffler(&params, -lambda * t.powf(ml_order))?;
            max_err = max_err.max((sol.values[i] - exact).abs());
        }
        let order = match prev {
            None => f64::NAN,
            Some((pn, pe)) => (pe / max_err).ln() / (n as f64 / pn as f64).ln(),
        };
        if order.is_finite() {
            orders.push(order);
        }
        if env.verbose {
            eprintln!("N={n}: max_error={max_err:.3e} order={order:.3}");
        }
        rows.push(vec![
            Cell::Int(n as i64),
            Cell::Float(max_err),
            Cell::Float(order),
        ]);
        prev = Some((n, max_err));
    }
    write_csv(&out, &["n", "max_error", "observed_order"], &rows)?;
    let min_order = orders.iter().copied().fold(f64::INFINITY, f64::min);
    println!("convergence: alpha0={alpha0} lambda={lambda} gamma={grading}");
    for (row, &n) in rows.iter().zip(&n_list) {
        if let (Cell::Float(e), Cell::Float(o)) = (&row[1], &row[2]) {
            println!("  N={n:<6} max_error={e:.6e} order={o:.3}");
        }
    }
    let pass = min_order >= 0.85;
    println!(
        "observed orders >= 0.85: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    println!("wrote {}", out.display());
    if !pass {
        return Err(HarnessError::invariant(format!(
            "observed convergence order {min_order:.3} below 0.85"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// regularity-report
// ---------------------------------------------------------------------------

fn regularity_report(mut raw: RawConfig, env: &RunEnv) -> Result<(), HarnessError> {
    let out = env.out.clone();
    let kernel = parse_kernel(&mut raw)?;
    let n_modes = raw.take_usize("n_modes", Some(16))?;
    let n_problems = raw.take_usize("n_problems", Some(50))?;
    let n_coarse = raw.take_usize("n_time_coarse", Some(128))?;
    let n_fine = raw.take_usize("n_time_fine", Some(512))?;
    let seed = env.seed;
    let grading = raw.take_f64("grading", Some(f64::NAN))?;
    raw.finish().map_err(HarnessError::from)?;

    let domain = SpectralDomain::interval(1.0, n_modes).map_err(HarnessError::from)?;
    let problems = random_field_problems(&domain, &kernel, n_problems, seed)?;
    let make_grid = |n: usize| -> Result<TimeGrid<f64>, HarnessError> {
        Ok(if grading.is_nan() {
            TimeGrid::graded_for(kernel.horizon(), n, kernel.alpha0())?
        } else {
            TimeGrid::new(kernel.horizon(), n, grading)?
        })
    };
    let grid_coarse = make_grid(n_coarse)?;
    let grid_fine = make_grid(n_fine)?;

    let reports: Vec<Result<_, vexmem::Error>> = problems
        .par_iter()
        .map(|p| {
            let rc = solve_field(p, &grid_coarse, Scheme::Oracle)?.report;
            let rf = solve_field(p, &grid_fine, Scheme::Oracle)?.report;
            Ok((rc, rf))
        })
        .collect();

    let mut rows = Vec::with_capacity(2 * n_problems);
    let mut stab = Vec::new();
    let mut reg_coarse = Vec::new();
    let mut max_growth = 0.0f64;
    for (i, r) in reports.into_iter().enumerate() {
        let (rc, rf) = r?;
        if env.verbose {
            eprintln!(
                "problem {i}: stability {:.3e}, regularity {:.3e} -> {:.3e}",
                rc.stability_ratio, rc.regularity_ratio, rf.regularity_ratio
            );
        }
        stab.push(rc.stability_ratio);
        reg_coarse.push(rc.regularity_ratio);
        max_growth = max_growth.max(rf.regularity_ratio / rc.regularity_ratio - 1.0);
        rows.push(vec![
            Cell::Int(i as i64),
            Cell::Int(n_coarse as i64),
            Cell::Float(rc.stability_ratio),
            Cell::Float(rc.regularity_ratio),
        ]);
        rows.push(vec![
            Cell::Int(i as i64),
            Cell::Int(n_fine as i64),
            Cell::Float(rf.stability_ratio),
            Cell::Float(rf.regularity_ratio),
        ]);
    }
    write_csv(
        &out,
        &[
            "problem_id",
            "n_time",
            "stability_ratio",
            "regularity_ratio",
        ],
        &rows,
    )?;

    let stats = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        (s[s.len() / 2], *s.last().unwrap())
    };
    let (stab_med, stab_max) = stats(&stab);
    let (reg_med, reg_max) = stats(&reg_coarse);
    let stab_ok = stab_max <= 10.0 * stab_med;
    let reg_ok = reg_max <= 10.0 * reg_med;
    let growth_ok = max_growth <= 0.05;
    println!(
        "regularity-report: {n_problems} problems, {n_modes} modes, N={n_coarse} -> {n_fine}, seed={seed}"
    );
    println!("  stability_ratio:  median {stab_med:.4e}, max {stab_max:.4e}");
    println!("  regularity_ratio: median {reg_med:.4e}, max {reg_max:.4e}");
    println!(
        "  max regularity growth under refinement: {:.3}%",
        100.0 * max_growth
    );
    println!(
        "stability max <= 10x median:  {}",
        if stab_ok { "PASS" } else { "FAIL" }
    );
    println!(
        "regularity max <= 10x median: {}",
        if reg_ok { "PASS" } else { "FAIL" }
    );
    println!(
        "regularity growth <= 5%:      {}",
        if growth_ok { "PASS" } else { "FAIL" }
    );
    println!("wrote {}", out.display());
    if !(stab_ok && reg_ok && growth_ok) {
        return Err(HarnessError::invariant(
            "regularity-report ratio checks failed".to_string(),
        ));
    }
    Ok(())
}
