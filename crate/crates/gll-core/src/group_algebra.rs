//! Finite abelian groups as desk-scale models of compact abelian `G`:
//! normalized Haar measure, convolution (direct reference semantics and an
//! FFT fast path), translations, and Fejér approximate-identity kernels.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::measure_space::{lp_norm, MeasureSpace, SampledFunction};

/// A finite abelian group given as a product of cyclic factors `Z_{n_j}`.
///
/// Elements are flat indices in `0..order`, row-major over the factors
/// (first factor most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    factors: Vec<usize>,
    order: usize,
}

impl GroupStructure {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Domain("a group needs at least one cyclic factor".into()));
        }
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::Domain("cyclic factors must have n >= 1".into()));
        }
        let order = factors.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
        let order = order.ok_or_else(|| Error::Domain("group order overflows".into()))?;
        Ok(Self { factors, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic_factor(&self) -> bool {
        self.factors.len() == 1
    }

    fn check_element(&self, index: usize) -> Result<()> {
        if index >= self.order {
            return Err(Error::InvalidElement {
                index,
                order: self.order,
            });
        }
        Ok(())
    }

    /// Componentwise `a - b` modulo each factor.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let mut result = 0;
        let (mut ra, mut rb) = (a, b);
        // Walk factors least-significant first, then recombine.
        let mut digits = Vec::with_capacity(self.factors.len());
        for &n in self.factors.iter().rev() {
            let da = ra % n;
            let db = rb % n;
            ra /= n;
            rb /= n;
            digits.push((da + n - db) % n);
        }
        for (&n, &d) in self.factors.iter().zip(digits.iter().rev()) {
            result = result * n + d;
        }
        result
    }

    fn check_aligned(&self, f: &SampledFunction) -> Result<()> {
        if f.len() != self.order {
            return Err(Error::Alignment {
                function_len: f.len(),
                space_len: self.order,
            });
        }
        Ok(())
    }
}

/// The normalized Haar measure: uniform weights `1/order`.
pub fn haar_space(group: &GroupStructure) -> MeasureSpace {
    MeasureSpace::uniform(group.order()).expect("group order >= 1")
}

/// `(f∗g)(x) = (1/order) Σ_y f(y) g(x-y)`. Direct evaluation; this is the
/// reference semantics that the FFT path must match.
pub fn convolve(
    f: &SampledFunction,
    g: &SampledFunction,
    group: &GroupStructure,
) -> Result<SampledFunction> {
    group.check_aligned(f)?;
    group.check_aligned(g)?;
    let n = group.order();
    let scale = 1.0 / n as f64;
    let mut out = vec![0.0; n];
    for (x, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for y in 0..n {
            acc += f.values()[y] * g.values()[group.sub(x, y)];
        }
        *slot = acc * scale;
    }
    SampledFunction::new(out)
}

fn fft_along_axes(
    buffer: &mut [Complex<f64>],
    group: &GroupStructure,
    planner: &mut FftPlanner<f64>,
    inverse: bool,
) {
    let order = group.order();
    let mut stride = order;
    for &n in group.factors() {
        stride /= n;
        let fft = if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        };
        let block = stride * n;
        let mut line = vec![Complex::default(); n];
        for base in (0..order).step_by(block) {
            for offset in 0..stride {
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = buffer[base + offset + k * stride];
                }
                fft.process(&mut line);
                for (k, &v) in line.iter().enumerate() {
                    buffer[base + offset + k * stride] = v;
                }
            }
        }
    }
}

/// Convolution via the separable multidimensional DFT over the factor
/// structure. Identical to [`convolve`] within 1e-9 max-abs.
pub fn convolve_fft(
    f: &SampledFunction,
    g: &SampledFunction,
    group: &GroupStructure,
) -> Result<SampledFunction> {
    group.check_aligned(f)?;
    group.check_aligned(g)?;
    let n = group.order();
    let mut planner = FftPlanner::new();
    let mut a: Vec<Complex<f64>> = f.values().iter().map(|&v| Complex::new(v, 0.0)).collect();
    let mut b: Vec<Complex<f64>> = g.values().iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft_along_axes(&mut a, group, &mut planner, false);
    fft_along_axes(&mut b, group, &mut planner, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    fft_along_axes(&mut a, group, &mut planner, true);
    // One 1/n normalizes the unnormalized inverse transform, the other is the
    // Haar factor in the convolution itself.
    let scale = 1.0 / (n as f64 * n as f64);
    SampledFunction::new(a.iter().map(|c| c.re * scale).collect())
}

/// `(τ_x f)(y) = f(y - x)`.
pub fn translate(
    f: &SampledFunction,
    x: usize,
    group: &GroupStructure,
) -> Result<SampledFunction> {
    group.check_aligned(f)?;
    group.check_element(x)?;
    let out = (0..group.order())
        .map(|y| f.values()[group.sub(y, x)])
        .collect();
    SampledFunction::new(out)
}

/// The normalized point mass `order · δ_x`, the convolution unit at `x = 0`.
pub fn point_mass(group: &GroupStructure, x: usize) -> Result<SampledFunction> {
    group.check_element(x)?;
    let mut values = vec![0.0; group.order()];
    values[x] = group.order() as f64;
    SampledFunction::new(values)
}

/// A finite family `(e_α)` with a common `L¹` bound, nonnegative members.
#[derive(Debug, Clone)]
pub struct ApproximateIdentityFamily {
    members: Vec<SampledFunction>,
    l1_bound: f64,
}

impl ApproximateIdentityFamily {
    pub fn new(
        members: Vec<SampledFunction>,
        l1_bound: f64,
        group: &GroupStructure,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Domain("approximate-identity family is empty".into()));
        }
        let space = haar_space(group);
        for member in &members {
            if member.values().iter().any(|&v| v < 0.0) {
                return Err(Error::Domain("family members must be nonnegative".into()));
            }
            let l1 = lp_norm(member, 1.0, &space)?;
            if l1 > l1_bound + 1e-12 {
                return Err(Error::Domain(format!(
                    "member L1 norm {l1} exceeds the declared bound {l1_bound}"
                )));
            }
        }
        Ok(Self { members, l1_bound })
    }

    pub fn members(&self) -> &[SampledFunction] {
        &self.members
    }

    pub fn l1_bound(&self) -> f64 {
        self.l1_bound
    }
}

/// Fejér kernels on the cyclic group `Z_n`:
/// `F_m(j) = (1/m) (sin(πmj/n) / sin(πj/n))²` for `j ≠ 0`, `F_m(0) = m`.
/// Nonnegative with `‖F_m‖₁ = 1` exactly, so `l1_bound = 1`.
pub fn fejer_family(
    group: &GroupStructure,
    orders: &[usize],
) -> Result<ApproximateIdentityFamily> {
    if !group.is_cyclic_factor() {
        return Err(Error::UnsupportedGroup(
            "Fejér kernels are defined on a single cyclic factor Z_n".into(),
        ));
    }
    let n = group.order();
    let mut members = Vec::with_capacity(orders.len());
    for &m in orders {
        if m < 1 || m >= n {
            return Err(Error::Domain(format!(
                "Fejér order m = {m} must lie in [1, {n})"
            )));
        }
        let mut values = Vec::with_capacity(n);
        values.push(m as f64);
        for j in 1..n {
            let t = std::f64::consts::PI * j as f64 / n as f64;
            let ratio = (t * m as f64).sin() / t.sin();
            values.push(ratio * ratio / m as f64);
        }
        members.push(SampledFunction::new(values)?);
    }
    ApproximateIdentityFamily::new(members, 1.0, group)
}
