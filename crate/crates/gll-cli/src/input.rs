//! Group specs, named generators, and function-file loading.

use std::path::Path;

use gll_core::{
    haar_space, io, GroupStructure, MeasureSpace, SampledFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Parses "Z8" or "Z2xZ3x..." (case-insensitive).
pub fn parse_group(spec: &str) -> Result<GroupStructure, CliError> {
    let mut factors = Vec::new();
    for part in spec.split(['x', 'X']) {
        let digits = part
            .strip_prefix('Z')
            .or_else(|| part.strip_prefix('z'))
            .ok_or_else(|| CliError::parse(format!("bad group factor '{part}' in '{spec}'")))?;
        let n: usize = digits
            .parse()
            .map_err(|_| CliError::parse(format!("bad cyclic order '{digits}' in '{spec}'")))?;
        factors.push(n);
    }
    GroupStructure::new(factors).map_err(CliError::domain)
}

/// Named generators: `constant[:c]`, `point_mass[:x]`, `cosine[:k]`,
/// `random`. Point masses are normalized (`n·δ_x`); `random` draws uniform
/// values in [-1, 1] from the run seed.
pub fn generate(spec: &str, n: usize, seed: u64) -> Result<SampledFunction, CliError> {
    let (name, arg) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let parse_f64 = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::parse(format!("bad generator argument '{s}'")))
    };
    let f = match name {
        "constant" => {
            let c = arg.map(parse_f64).transpose()?.unwrap_or(1.0);
            SampledFunction::constant(c, n).map_err(CliError::domain)?
        }
        "point_mass" => {
            let x = arg
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| CliError::parse(format!("bad point index '{s}'")))
                })
                .transpose()?
                .unwrap_or(0);
            if x >= n {
                return Err(CliError::domain_msg(format!(
                    "point index {x} out of range for n = {n}"
                )));
            }
            let mut values = vec![0.0; n];
            values[x] = n as f64;
            SampledFunction::new(values).map_err(CliError::domain)?
        }
        "cosine" => {
            let k = arg.map(parse_f64).transpose()?.unwrap_or(1.0);
            let values = (0..n)
                .map(|j| (2.0 * std::f64::consts::PI * k * j as f64 / n as f64).cos())
                .collect();
            SampledFunction::new(values).map_err(CliError::domain)?
        }
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            SampledFunction::new(values).map_err(CliError::domain)?
        }
        other => return Err(CliError::parse(format!("unknown generator '{other}'"))),
    };
    Ok(f)
}

/// Loads a function from a JSON (`.json`) or flat binary f64 file.
pub fn load_file(path: &Path) -> Result<(SampledFunction, Option<MeasureSpace>), CliError> {
    let is_json = path.extension().is_some_and(|e| e == "json");
    if is_json {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
        io::function_from_json(&text).map_err(|e| CliError::parse(e.to_string()))
    } else {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
        let f = io::function_from_binary(&bytes).map_err(|e| CliError::parse(e.to_string()))?;
        Ok((f, None))
    }
}

/// Resolves the input function and its space from `--input`/`--gen` plus an
/// optional group.
pub fn resolve_input(
    input: Option<&Path>,
    gen: Option<&str>,
    group: Option<&GroupStructure>,
    seed: u64,
) -> Result<(SampledFunction, MeasureSpace), CliError> {
    let (f, file_space) = match (input, gen) {
        (Some(path), None) => load_file(path)?,
        (None, Some(spec)) => {
            let group = group.ok_or_else(|| {
                CliError::parse("--gen requires --group to size the function")
            })?;
            (generate(spec, group.order(), seed)?, None)
        }
        (Some(_), Some(_)) => {
            return Err(CliError::parse("--input and --gen are mutually exclusive"))
        }
        (None, None) => return Err(CliError::parse("need --input or --gen")),
    };
    let space = match (file_space, group) {
        (Some(_), Some(_)) => {
            return Err(CliError::parse(
                "input file carries weights; do not also pass --group",
            ))
        }
        (Some(space), None) => space,
        (None, Some(group)) => {
            if f.len() != group.order() {
                return Err(CliError::domain_msg(format!(
                    "function length {} does not match group order {}",
                    f.len(),
                    group.order()
                )));
            }
            haar_space(group)
        }
        (None, None) => MeasureSpace::uniform(f.len()).map_err(CliError::domain)?,
    };
    Ok((f, space))
}
