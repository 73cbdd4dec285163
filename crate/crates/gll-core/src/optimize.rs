//! Golden-section refinement used by the ε-grid optimizers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// `best` seeds the result with an already-evaluated point, so the returned
/// value never falls below the grid scan that produced the bracket. Stops when
/// the relative improvement per shrink drops below `refine_tol`.
pub(crate) fn golden_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    best: (f64, f64),
    refine_tol: f64,
) -> (f64, f64) {
    let (mut best_x, mut best_v) = best;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        let before = best_v;
        if f1 > f2 {
            if f1 > best_v {
                best_v = f1;
                best_x = x1;
            }
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            if f2 > best_v {
                best_v = f2;
                best_x = x2;
            }
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        let scale = best_v.abs().max(1e-300);
        if (best_v - before) / scale < refine_tol && (b - a) < 1e-9 * (1.0 + b.abs()) {
            break;
        }
        if b - a < f64::EPSILON * (1.0 + b.abs()) {
            break;
        }
    }
    (best_x, best_v)
}

/// Golden-section search for the minimum of `f` on `[a, b]`; mirror of
/// [`golden_max`].
pub(crate) fn golden_min(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    best: (f64, f64),
    refine_tol: f64,
) -> (f64, f64) {
    let (x, neg_v) = golden_max(|x| -f(x), a, b, (best.0, -best.1), refine_tol);
    (x, -neg_v)
}
