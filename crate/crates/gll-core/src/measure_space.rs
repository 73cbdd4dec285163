//! Finite measure spaces, sampled functions, classical `L^q` norms and the
//! Hölder pairing. Everything else in the crate is built on top of these.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute slack allowed when deciding whether a space has total mass one.
const PROBABILITY_TOL: f64 = 1e-12;

/// A finite set of points with strictly positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    weights: Vec<f64>,
    total_mass: f64,
}

impl MeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("a measure space needs at least one point".into()));
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if w <= 0.0 {
                return Err(Error::Domain(format!("weight {w} at index {index} is not positive")));
            }
        }
        let total_mass: f64 = weights.iter().sum();
        if !total_mass.is_finite() {
            return Err(Error::Domain("total mass overflows".into()));
        }
        Ok(Self { weights, total_mass })
    }

    /// Uniform weights `1/n`; the normalized Haar model on `n` points.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a measure space needs at least one point".into()));
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees n >= 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn is_probability(&self) -> bool {
        (self.total_mass - 1.0).abs() <= PROBABILITY_TOL
    }

    fn check_aligned(&self, f: &SampledFunction) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::Alignment {
                function_len: f.len(),
                space_len: self.len(),
            });
        }
        Ok(())
    }
}

/// A real-valued vector aligned with a measure space's points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        Ok(Self { values })
    }

    pub fn constant(c: f64, n: usize) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn abs(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Alignment {
                function_len: other.len(),
                space_len: self.len(),
            });
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(self.add(&other.scale(-1.0))?)
    }

    /// `|f|^e` pointwise, with `0^e = 0` for every `e > 0`.
    pub fn abs_pow(&self, e: f64) -> Self {
        Self {
            values: self
                .values
                .iter()
                .map(|&v| if v == 0.0 { 0.0 } else { v.abs().powf(e) })
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// How an [`EpsilonGrid`] distributes its points over `(0, p-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Geometric,
    Uniform,
}

/// Discretization policy for the supremum/infimum over `0 < ε ≤ p-1`.
///
/// The grid always contains the endpoint `ε = p-1`; its smallest point is
/// `min_fraction · (p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonGrid {
    pub count: usize,
    pub min_fraction: f64,
    pub spacing: Spacing,
    /// Relative improvement threshold at which golden-section refinement stops.
    pub refine_tol: f64,
}

impl Default for EpsilonGrid {
    fn default() -> Self {
        Self {
            count: 256,
            min_fraction: 1e-8,
            spacing: Spacing::Geometric,
            refine_tol: 1e-10,
        }
    }
}

impl EpsilonGrid {
    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Domain("epsilon grid needs at least 2 points".into()));
        }
        if !(self.min_fraction > 0.0 && self.min_fraction < 1.0) {
            return Err(Error::Domain(format!(
                "min_fraction {} must lie in (0,1)",
                self.min_fraction
            )));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol.is_finite()) {
            return Err(Error::Domain("refine_tol must be positive".into()));
        }
        Ok(())
    }

    /// Grid points in increasing order, ending exactly at `p - 1`.
    pub fn points(&self, p: f64) -> Vec<f64> {
        let top = p - 1.0;
        let bottom = self.min_fraction * top;
        let n = self.count;
        let mut pts = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Geometric => {
                let ratio = (top / bottom).ln() / (n - 1) as f64;
                for i in 0..n {
                    pts.push(bottom * (ratio * i as f64).exp());
                }
            }
            Spacing::Uniform => {
                let step = (top - bottom) / (n - 1) as f64;
                for i in 0..n {
                    pts.push(bottom + step * i as f64);
                }
            }
        }
        *pts.last_mut().unwrap() = top;
        pts
    }
}

/// The exponent pair `(p, θ)` together with the ε-grid policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentParams {
    pub p: f64,
    pub theta: f64,
    pub grid: EpsilonGrid,
}

impl ExponentParams {
    pub fn new(p: f64, theta: f64) -> Result<Self> {
        Self::with_grid(p, theta, EpsilonGrid::default())
    }

    pub fn with_grid(p: f64, theta: f64, grid: EpsilonGrid) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::Domain(format!("p = {p} must lie in (1, ∞)")));
        }
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(Error::Domain(format!("theta = {theta} must be >= 0")));
        }
        grid.validate()?;
        Ok(Self { p, theta, grid })
    }

    pub fn conjugate(&self) -> f64 {
        self.p / (self.p - 1.0)
    }
}

/// Hölder conjugate `q' = q / (q-1)`.
pub fn conjugate_exponent(q: f64) -> Result<f64> {
    if !(q.is_finite() && q > 1.0) {
        return Err(Error::Domain(format!("q = {q} has no conjugate in (1, ∞)")));
    }
    Ok(q / (q - 1.0))
}

/// `(Σ_i w_i |v_i|^q)^{1/q}`, or `max |v_i|` when `q` is infinite.
///
/// The sum is evaluated with the largest magnitude factored out, so large `q`
/// neither overflows nor underflows.
pub fn lp_norm(f: &SampledFunction, q: f64, space: &MeasureSpace) -> Result<f64> {
    space.check_aligned(f)?;
    if q.is_nan() || q < 1.0 {
        return Err(Error::Domain(format!("q = {q} must be >= 1")));
    }
    let m = f.max_abs();
    if m == 0.0 {
        return Ok(0.0);
    }
    if q.is_infinite() {
        return Ok(m);
    }
    let mut sum = 0.0;
    for (&v, &w) in f.values().iter().zip(space.weights()) {
        if v != 0.0 {
            sum += w * (q * (v.abs() / m).ln()).exp();
        }
    }
    Ok(m * sum.powf(1.0 / q))
}

/// The pairing `Σ_i w_i f_i g_i`.
pub fn integrate_product(
    f: &SampledFunction,
    g: &SampledFunction,
    space: &MeasureSpace,
) -> Result<f64> {
    space.check_aligned(f)?;
    space.check_aligned(g)?;
    let mut sum = 0.0;
    for ((&a, &b), &w) in f.values().iter().zip(g.values()).zip(space.weights()) {
        sum += w * a * b;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> MeasureSpace {
        MeasureSpace::new(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn constant_on_probability_space_has_unit_norms() {
        let space = MeasureSpace::uniform(4).unwrap();
        let f = SampledFunction::constant(1.0, 4).unwrap();
        assert!((lp_norm(&f, 2.0, &space).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn l2_norm_of_point_like_function() {
        let f = SampledFunction::new(vec![0.0, 2.0]).unwrap();
        let got = lp_norm(&f, 2.0, &two_point()).unwrap();
        assert!((got - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn normalized_point_mass_has_unit_l1_norm() {
        let space = MeasureSpace::uniform(4).unwrap();
        let f = SampledFunction::new(vec![4.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((lp_norm(&f, 1.0, &space).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_norm_via_infinity_marker() {
        let f = SampledFunction::new(vec![-3.0, 2.0]).unwrap();
        assert_eq!(lp_norm(&f, f64::INFINITY, &two_point()).unwrap(), 3.0);
    }

    #[test]
    fn conjugate_exponents() {
        assert_eq!(conjugate_exponent(2.0).unwrap(), 2.0);
        assert!((conjugate_exponent(1.5).unwrap() - 3.0).abs() < 1e-15);
        assert!((conjugate_exponent(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(conjugate_exponent(1.0).is_err());
        assert!(conjugate_exponent(f64::INFINITY).is_err());
    }

    #[test]
    fn pairing_examples() {
        let space = MeasureSpace::uniform(4).unwrap();
        let one = SampledFunction::constant(1.0, 4).unwrap();
        assert!((integrate_product(&one, &one, &space).unwrap() - 1.0).abs() < 1e-15);

        let space2 = two_point();
        let f = SampledFunction::new(vec![1.0, -1.0]).unwrap();
        let g = SampledFunction::constant(1.0, 2).unwrap();
        assert_eq!(integrate_product(&f, &g, &space2).unwrap(), 0.0);

        let h = SampledFunction::new(vec![0.0, 2.0]).unwrap();
        assert!((integrate_product(&h, &h, &space2).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn alignment_and_domain_errors() {
        let space = two_point();
        let f = SampledFunction::constant(1.0, 3).unwrap();
        assert!(matches!(
            lp_norm(&f, 2.0, &space),
            Err(Error::Alignment { .. })
        ));
        let g = SampledFunction::constant(1.0, 2).unwrap();
        assert!(matches!(lp_norm(&g, 0.5, &space), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_non_finite_values_and_bad_weights() {
        assert!(SampledFunction::new(vec![1.0, f64::NAN]).is_err());
        assert!(MeasureSpace::new(vec![1.0, 0.0]).is_err());
        assert!(MeasureSpace::new(vec![]).is_err());
    }

    #[test]
    fn grid_contains_endpoint_and_stays_in_range() {
        let grid = EpsilonGrid::default();
        for &p in &[1.5, 2.0, 3.0] {
            let pts = grid.points(p);
            assert_eq!(pts.len(), grid.count);
            assert_eq!(*pts.last().unwrap(), p - 1.0);
            assert!(pts.iter().all(|&e| e > 0.0 && e <= p - 1.0));
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn uniform_grid_spacing() {
        let grid = EpsilonGrid {
            spacing: Spacing::Uniform,
            count: 5,
            ..EpsilonGrid::default()
        };
        let pts = grid.points(2.0);
        assert_eq!(pts.len(), 5);
        assert_eq!(*pts.last().unwrap(), 1.0);
    }

    #[test]
    fn probability_flag() {
        assert!(MeasureSpace::uniform(7).unwrap().is_probability());
        assert!(!MeasureSpace::new(vec![1.0, 1.0]).unwrap().is_probability());
    }
}
