//! Implementations of the CLI subcommands.

use crate::fmt;
use crate::spec::{load_matrix, SystemSpecFile};
use crate::CliError;
use entropy_ray_core::capacity::{capacity_causal, capacity_no_side_info, SUPPORT_TOL};
use entropy_ray_core::channel::{all_strategies, gamma, Channel};
use entropy_ray_core::scalarfn::{rho, threshold_t, threshold_ta, xi, zeta};
use rayon::prelude::*;
use std::path::Path;

/// The erasure side-channel family `[[1−ε, 0, ε], [0, 1−ε, ε]]`.
pub fn erasure_side(eps: f64) -> Result<Channel, CliError> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(CliError::domain(format!(
            "epsilon = {eps} must lie in [0, 1]"
        )));
    }
    Channel::new(vec![vec![1.0 - eps, 0.0, eps], vec![0.0, 1.0 - eps, eps]])
        .map_err(|e| CliError::domain(e.to_string()))
}

fn parse_f64(name: &str, s: &str) -> Result<f64, CliError> {
    s.parse()
        .map_err(|_| CliError::domain(format!("argument {name} = '{s}' is not a number")))
}

pub fn eval(expr: &str, args: &[String]) -> Result<(), CliError> {
    let need = |n: usize| -> Result<(), CliError> {
        if args.len() != n {
            return Err(CliError::domain(format!(
                "{expr} takes {n} argument(s), got {}",
                args.len()
            )));
        }
        Ok(())
    };
    let value = match expr {
        "zeta" => {
            need(2)?;
            zeta(parse_f64("t", &args[0])?, parse_f64("s", &args[1])?)?
        }
        "xi" => {
            need(2)?;
            xi(parse_f64("s", &args[0])?, parse_f64("t", &args[1])?)?
        }
        "rho" => {
            need(3)?;
            rho(
                parse_f64("a", &args[0])?,
                parse_f64("b", &args[1])?,
                parse_f64("c", &args[2])?,
            )?
        }
        "T" => {
            need(0)?;
            threshold_t()
        }
        "Ta" => {
            need(1)?;
            threshold_ta(parse_f64("a", &args[0])?)?
        }
        "gamma" => {
            need(1)?;
            gamma(&load_matrix(Path::new(&args[0]))?)
        }
        other => {
            return Err(CliError::domain(format!(
                "unknown function '{other}'; expected zeta, xi, rho, T, Ta, or gamma"
            )))
        }
    };
    println!("{}", fmt::sig(value, 12));
    Ok(())
}

pub fn build_example(delta: f64, out: Option<&Path>) -> Result<(), CliError> {
    let spec = SystemSpecFile::example(delta)?;
    let json = spec.to_json();
    match out {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(())
}

/// Parse a `start:stop:step` grid specification (inclusive of `stop` within
/// rounding slack).
pub fn parse_grid(grid: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::domain(format!(
            "grid '{grid}' must have the form start:stop:step"
        )));
    }
    let start = parse_f64("start", parts[0])?;
    let stop = parse_f64("stop", parts[1])?;
    let step = parse_f64("step", parts[2])?;
    if !(step > 0.0) || stop < start {
        return Err(CliError::domain(format!(
            "grid '{grid}' must have positive step and stop >= start"
        )));
    }
    let mut out = Vec::new();
    let mut k = 0u64;
    loop {
        let v = start + k as f64 * step;
        if v > stop + 1e-9 {
            break;
        }
        out.push(v.min(stop));
        k += 1;
    }
    Ok(out)
}

pub fn sweep(system: &Path, grid: &str, out: &Path) -> Result<(), CliError> {
    let spec = SystemSpecFile::load(system)?;
    let eps_grid = parse_grid(grid)?;
    if spec.inputs.len() != 2 || spec.states.len() != 2 {
        return Err(CliError::domain(
            "sweep requires a binary-input, two-state system (the erasure \
             side-channel family is 2x3)",
        ));
    }
    // The no-side-information capacity does not depend on epsilon.
    let base = spec.to_system(Some(erasure_side(0.0)?))?;
    let c_lower = capacity_no_side_info(&base).map_err(CliError::from)?;

    let rows: Vec<Result<String, CliError>> = eps_grid
        .par_iter()
        .map(|&eps| {
            let sys = spec.to_system(Some(erasure_side(eps)?))?;
            let g = gamma(sys.side());
            let c = capacity_causal(&sys).map_err(CliError::from)?;
            let gap = c.value - c_lower.value;
            Ok(format!(
                "{},{},{},{},{}",
                fmt::sig(eps, 12),
                fmt::sig(c.value, 12),
                fmt::sig(c_lower.value, 12),
                fmt::sig(gap, 12),
                fmt::sig(g, 12)
            ))
        })
        .collect();

    let mut csv = String::from("epsilon,capacity_causal,capacity_no_side,gap,gamma\n");
    for row in rows {
        csv.push_str(&row?);
        csv.push('\n');
    }
    std::fs::write(out, csv)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

pub fn gap_witness(delta: f64, iota: f64) -> Result<(), CliError> {
    let t = threshold_t();
    if !(iota > 0.0 && iota < t) {
        return Err(CliError::domain(format!(
            "iota = {iota} must lie in (0, T) with T = {}",
            fmt::sig(t, 12)
        )));
    }
    let eps = t - iota;
    let spec = SystemSpecFile::example(delta)?;
    let sys = spec.to_system(Some(erasure_side(eps)?))?;
    let c_lower = capacity_no_side_info(&sys).map_err(CliError::from)?;
    let c = capacity_causal(&sys).map_err(CliError::from)?;
    let gap = c.value - c_lower.value;

    println!("epsilon            = {}", fmt::sig(eps, 12));
    println!("capacity_causal    = {}", fmt::sig(c.value, 12));
    println!("capacity_no_side   = {}", fmt::sig(c_lower.value, 12));
    println!("gap                = {}", fmt::sig(gap, 12));

    // The information-carrying strategy: the supported strategy with the
    // largest mass among those that actually use the side observation
    // (constant strategies ignore it and only pad the mixture).
    let strategies = all_strategies(sys.n_inputs(), sys.n_side_outputs());
    let best = c
        .input_dist
        .probs()
        .iter()
        .enumerate()
        .filter(|(u, &p)| p > SUPPORT_TOL && !strategies[*u].is_constant())
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap());
    match best {
        Some((u, &mass)) => {
            let map = strategies[u].map();
            let desc: Vec<String> =
                map.iter().enumerate().map(|(s, x)| format!("u({s})={x}")).collect();
            println!("best strategy      = {} (mass {})", desc.join(" "), fmt::sig(mass, 12));
        }
        None => println!("best strategy      = none (optimizer uses only constant strategies)"),
    }
    println!(
        "result             = {}",
        if gap > 1e-9 { "FOUND" } else { "NOT-FOUND" }
    );
    Ok(())
}
