//! The generalized grand Lebesgue norm
//! `sup_{0<ε≤p-1} ε^{θ/(p-ε)} ‖f‖_{p-ε}`, its ε-profile, and the
//! vanishing-tail functional that characterizes the closure subspace.
//!
//! The supremum is discretized on an [`EpsilonGrid`] and polished with
//! golden-section refinement around the best grid point, so the returned
//! value is a certified lower bound of the true supremum that converges with
//! grid density.

use crate::error::{Error, Result};
use crate::measure_space::{lp_norm, ExponentParams, MeasureSpace, SampledFunction};
use crate::optimize::golden_max;

/// `ε^{θ/(p-ε)} ‖f‖_{p-ε}` at a single ε.
pub fn phi(
    f: &SampledFunction,
    params: &ExponentParams,
    space: &MeasureSpace,
    epsilon: f64,
) -> Result<f64> {
    let (p, theta) = (params.p, params.theta);
    if !(epsilon > 0.0 && epsilon <= p - 1.0) {
        return Err(Error::Domain(format!(
            "epsilon = {epsilon} must lie in (0, {}]",
            p - 1.0
        )));
    }
    let weight = if theta == 0.0 {
        1.0
    } else {
        epsilon.powf(theta / (p - epsilon))
    };
    Ok(weight * lp_norm(f, p - epsilon, space)?)
}

/// The map `ε ↦ φ(ε)` sampled over the grid, plus the refined argmax.
#[derive(Debug, Clone)]
pub struct EpsilonProfile {
    pub epsilons: Vec<f64>,
    pub values: Vec<f64>,
    pub argmax_index: usize,
    /// `(ε*, φ(ε*))` after golden-section refinement around the best grid
    /// point; the value never falls below the grid maximum.
    pub refined_argmax: (f64, f64),
}

fn profile_impl(
    f: &SampledFunction,
    params: &ExponentParams,
    space: &MeasureSpace,
) -> Result<EpsilonProfile> {
    let epsilons = params.grid.points(params.p);
    if f.is_zero() {
        // Degenerate input short-circuits: every L^q norm is zero.
        lp_norm(f, params.p, space)?; // still surface alignment errors
        let values = vec![0.0; epsilons.len()];
        let last = *epsilons.last().unwrap();
        return Ok(EpsilonProfile {
            epsilons,
            values,
            argmax_index: 0,
            refined_argmax: (last, 0.0),
        });
    }
    let mut values = Vec::with_capacity(epsilons.len());
    for &eps in &epsilons {
        values.push(phi(f, params, space, eps)?);
    }
    let argmax_index = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let lo = epsilons[argmax_index.saturating_sub(1)];
    let hi = epsilons[(argmax_index + 1).min(epsilons.len() - 1)];
    let seed = (epsilons[argmax_index], values[argmax_index]);
    let refined_argmax = golden_max(
        |eps| phi(f, params, space, eps).unwrap_or(0.0),
        lo,
        hi,
        seed,
        params.grid.refine_tol,
    );
    Ok(EpsilonProfile {
        epsilons,
        values,
        argmax_index,
        refined_argmax,
    })
}

/// The grand norm `‖f‖_{p),θ}` (refined grid maximum of φ).
pub fn grand_norm(
    f: &SampledFunction,
    params: &ExponentParams,
    space: &MeasureSpace,
) -> Result<f64> {
    Ok(profile_impl(f, params, space)?.refined_argmax.1)
}

/// The full ε-profile of `f`.
pub fn epsilon_profile(
    f: &SampledFunction,
    params: &ExponentParams,
    space: &MeasureSpace,
) -> Result<EpsilonProfile> {
    profile_impl(f, params, space)
}

/// φ evaluated along a strictly decreasing tail of ε values.
///
/// For θ > 0 on a finite space the tail must decay to zero, since
/// `φ(ε) ≤ ε^{θ/(p-ε)} ‖f‖_p`; the caller inspects the decay.
pub fn vanishing_tail(
    f: &SampledFunction,
    params: &ExponentParams,
    space: &MeasureSpace,
    tail: &[f64],
) -> Result<Vec<f64>> {
    for pair in tail.windows(2) {
        if pair[1] >= pair[0] {
            return Err(Error::Domain(
                "tail epsilon values must be strictly decreasing".into(),
            ));
        }
    }
    tail.iter().map(|&eps| phi(f, params, space, eps)).collect()
}
