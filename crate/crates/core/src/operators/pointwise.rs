//! Pointwise operators: the fractal difference quotient against a
//! staircase function, its inverse, and the local continuous forms.

use crate::error::{FraktalError, Result};
use crate::measure::StaircaseFunction;
use crate::operators::sampled::SampledFunction;
use crate::operators::{local_coefficient, CoeffMode};

fn check_grids_match(f: &SampledFunction, s: &StaircaseFunction) -> Result<()> {
    let tol = f.step() * 1e-9;
    if f.len() != s.grid().len()
        || f.xs().iter().zip(s.grid()).any(|(a, b)| (a - b).abs() > tol)
    {
        return Err(FraktalError::Validation(
            "sampled function and staircase must share the same grid".into(),
        ));
    }
    Ok(())
}

/// Scans outward from `i0` on one side for the first admissible neighbor
/// within `eps` whose staircase increment is non-zero, returning the
/// difference quotient `df/dS` there.
///
/// Neighbors where both increments vanish carry no information about the
/// F-limit and are skipped; a vanishing staircase increment with a
/// non-vanishing function increment is a genuine divergence.
fn side_quotient(
    f: &SampledFunction,
    s_values: &[f64],
    i0: usize,
    eps: f64,
    dir: isize,
) -> Result<Option<f64>> {
    let xs = f.xs();
    let x0 = xs[i0];
    let mut j = i0 as isize + dir;
    while j >= 0 && (j as usize) < f.len() && (xs[j as usize] - x0).abs() <= eps {
        let ju = j as usize;
        if f.admissible(ju) {
            let ds = s_values[ju] - s_values[i0];
            let df = f.values()[ju] - f.values()[i0];
            if ds != 0.0 {
                return Ok(Some(df / ds));
            }
            if df != 0.0 {
                return Err(FraktalError::DivergentQuotient(format!(
                    "S({}) = S({x0}) but f differs by {df}",
                    xs[ju]
                )));
            }
        }
        j += dir;
    }
    Ok(None)
}

/// Fractal derivative of `f` at `x0`: the two-sided difference quotient
/// `[f(x) - f(x0)] / [S(x) - S(x0)]` through admissible neighbors within
/// `eps`, averaging the left and right quotients when both exist. Returns
/// exactly 0 when `x0` is not an admissible point.
pub fn parvate_gangal_derivative(
    f: &SampledFunction,
    s: &StaircaseFunction,
    x0: f64,
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(FraktalError::Validation(format!("eps {eps} must be > 0")));
    }
    check_grids_match(f, s)?;
    let i0 = f.index_of(x0)?;
    if !f.admissible(i0) {
        return Ok(0.0);
    }
    let left = side_quotient(f, s.values(), i0, eps, -1)?;
    let right = side_quotient(f, s.values(), i0, eps, 1)?;
    match (left, right) {
        (Some(l), Some(r)) => Ok((l + r) / 2.0),
        (Some(l), None) => Ok(l),
        (None, Some(r)) => Ok(r),
        (None, None) => Err(FraktalError::InsufficientResolution(format!(
            "no admissible neighbor with a staircase increment within eps = {eps} of x0 = {x0}"
        ))),
    }
}

/// Richardson extrapolation of the fractal quotient over the neighborhood
/// pair `eps in {4h, 2h}`; first-order error in the neighborhood size
/// cancels as `2 D(2h) - D(4h)`.
pub fn parvate_gangal_derivative_extrapolated(
    f: &SampledFunction,
    s: &StaircaseFunction,
    x0: f64,
) -> Result<f64> {
    let h = f.step();
    let slack = 1.0 + 1e-9;
    let d2 = parvate_gangal_derivative(f, s, x0, 2.0 * h * slack)?;
    let d4 = parvate_gangal_derivative(f, s, x0, 4.0 * h * slack)?;
    Ok(2.0 * d2 - d4)
}

/// Fractal derivative of the inverse: the quotient
/// `[S(h(x)) - S(h(x0))] / (x - x0)` with `S` a staircase on the image
/// space of `h`, through admissible neighbors within `eps`.
pub fn inverse_fractal_derivative(
    h: &SampledFunction,
    s_image: &StaircaseFunction,
    x0: f64,
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(FraktalError::Validation(format!("eps {eps} must be > 0")));
    }
    let i0 = h.index_of(x0)?;
    if !h.admissible(i0) {
        return Ok(0.0);
    }
    let s0 = s_image.eval(h.values()[i0])?;
    let mut quotients = Vec::with_capacity(2);
    for dir in [-1isize, 1] {
        let mut j = i0 as isize + dir;
        while j >= 0 && (j as usize) < h.len() && (h.xs()[j as usize] - x0).abs() <= eps {
            let ju = j as usize;
            if h.admissible(ju) {
                let sj = s_image.eval(h.values()[ju])?;
                quotients.push((sj - s0) / (h.xs()[ju] - x0));
                break;
            }
            j += dir;
        }
    }
    if quotients.is_empty() {
        return Err(FraktalError::InsufficientResolution(format!(
            "no admissible neighbor within eps = {eps} of x0 = {x0}"
        )));
    }
    Ok(quotients.iter().sum::<f64>() / quotients.len() as f64)
}

/// Local continuous approximation `C * h(x)^(alpha-1) * h'(x)` with `h'`
/// the centered second-order difference.
pub fn local_fractal_derivative(
    h: &SampledFunction,
    alpha: f64,
    x: f64,
    mode: CoeffMode,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FraktalError::Validation(format!("alpha {alpha} not in (0, 1]")));
    }
    let i = h.index_of(x)?;
    if i == 0 || i + 1 == h.len() {
        return Err(FraktalError::Validation(format!(
            "x = {x} must be an interior grid point"
        )));
    }
    let hx = h.values()[i];
    let pow = if alpha == 1.0 {
        1.0
    } else {
        if hx <= 0.0 {
            return Err(FraktalError::Domain(format!(
                "h(x) = {hx} <= 0 with fractional alpha = {alpha}"
            )));
        }
        hx.powf(alpha - 1.0)
    };
    let deriv = (h.values()[i + 1] - h.values()[i - 1]) / (2.0 * h.step());
    let c = local_coefficient(mode, alpha)?;
    Ok(c * (pow * deriv))
}

/// The q-derivative `f(x)^(q-1) * f'(x)` with `f'` the centered
/// second-order difference.
pub fn q_derivative(f: &SampledFunction, q: f64, x: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(FraktalError::Validation(format!("q {q} must be > 0")));
    }
    let i = f.index_of(x)?;
    if i == 0 || i + 1 == f.len() {
        return Err(FraktalError::Validation(format!(
            "x = {x} must be an interior grid point"
        )));
    }
    let fx = f.values()[i];
    let pow = if q == 1.0 {
        1.0
    } else {
        if fx <= 0.0 {
            return Err(FraktalError::Domain(format!(
                "f(x) = {fx} <= 0 with q = {q} != 1"
            )));
        }
        fx.powf(q - 1.0)
    };
    let deriv = (f.values()[i + 1] - f.values()[i - 1]) / (2.0 * f.step());
    Ok(pow * deriv)
}
