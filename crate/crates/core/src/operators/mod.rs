//! Fractal derivative operators and their continuous approximations.
//!
//! Two exact (sampled) forms work directly against a staircase function:
//! the fractal difference quotient [`parvate_gangal_derivative`] and its
//! inverse [`inverse_fractal_derivative`]. The continuous approximations
//! replace the staircase differential by `(A(alpha)/alpha) d(x^alpha)`:
//!
//! * [`local_fractal_derivative`] — `C * h^(alpha-1) * h'` at a point;
//! * [`q_derivative`] — `f^(q-1) * f'`, the deformed-calculus derivative;
//! * [`caputo_derivative`] — singular-kernel window integral via the L1
//!   product-integration scheme;
//! * [`fractal_space_window_derivative`] — kernel `(x-t)^(1-alpha)`;
//! * [`caputo_like_window_derivative`] — kernel `(h(x)-h(t))^(alpha-1)`;
//! * [`fractal_function_window_derivative`] — closed form
//!   `C * (h(x)^alpha - h(x-delta)^alpha) / alpha`.

mod pointwise;
mod sampled;
mod window;

pub use pointwise::{
    inverse_fractal_derivative, local_fractal_derivative, parvate_gangal_derivative,
    parvate_gangal_derivative_extrapolated, q_derivative,
};
pub use sampled::SampledFunction;
pub use window::{
    caputo_derivative, caputo_like_window_derivative, fractal_function_window_derivative,
    fractal_space_window_derivative, windowed_kernel_derivative,
};

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{FraktalError, Result};

/// Default node count for graded-mesh quadrature.
pub const DEFAULT_GRADED_NODES: usize = 1024;

/// Surface-area coefficient of the alpha-dimensional sphere:
/// `A(alpha) = 2 pi^(alpha/2) / Gamma(alpha/2)`.
pub fn surface_coefficient(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(FraktalError::Domain(format!(
            "surface coefficient needs alpha > 0, got {alpha}"
        )));
    }
    Ok(2.0 * std::f64::consts::PI.powf(alpha / 2.0) / gamma(alpha / 2.0))
}

/// How the `A(alpha)` prefactor is applied. The coefficient is only exact
/// for integer dimensions, so tests and comparisons can pin the shape of an
/// operator independently of the prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffMode {
    /// The operator's complete prefactor: `A(alpha)` for the local form,
    /// `A(alpha)/alpha` for the window integrals.
    Full,
    /// The full prefactor divided by `alpha`.
    OverAlpha,
    /// No prefactor.
    Unit,
}

/// Quadrature path for the window operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadScheme {
    /// Closed-form antiderivative; exact, requires monotone data.
    AnalyticSubstitution,
    /// Product integration on a mesh graded toward the singular endpoint.
    GradedMesh,
    /// Trapezoid rule on the sample grid; valid for bounded kernels.
    Trapezoid,
}

/// Prefactor for the local (pointwise) continuous approximation.
pub fn local_coefficient(mode: CoeffMode, alpha: f64) -> Result<f64> {
    Ok(match mode {
        CoeffMode::Full => surface_coefficient(alpha)?,
        CoeffMode::OverAlpha => surface_coefficient(alpha)? / alpha,
        CoeffMode::Unit => 1.0,
    })
}

/// Prefactor for the finite-window integral forms, whose complete
/// coefficient is `A(alpha)/alpha`.
pub fn window_coefficient(mode: CoeffMode, alpha: f64) -> Result<f64> {
    Ok(match mode {
        CoeffMode::Full => surface_coefficient(alpha)? / alpha,
        CoeffMode::OverAlpha => surface_coefficient(alpha)? / (alpha * alpha),
        CoeffMode::Unit => 1.0,
    })
}

/// The q-exponential `e_q(x) = [1 + (1-q) x]^(1/(1-q))`, reducing to
/// `exp(x)` at `q = 1`.
pub fn q_exponential(q: f64, x: f64) -> Result<f64> {
    if q == 1.0 {
        return Ok(x.exp());
    }
    let base = 1.0 + (1.0 - q) * x;
    if base <= 0.0 {
        return Err(FraktalError::Domain(format!(
            "q-exponential undefined: 1 + (1-q)x = {base} <= 0"
        )));
    }
    Ok(base.powf(1.0 / (1.0 - q)))
}

/// Which derivative variant a configuration selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    ParvateGangal,
    InverseFractal,
    LocalFractal,
    QDeriv,
    Caputo,
    FractalSpaceWindow,
    CaputoLikeWindow,
    FractalFunctionWindow,
}

impl OperatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::ParvateGangal => "parvate_gangal",
            OperatorKind::InverseFractal => "inverse_fractal",
            OperatorKind::LocalFractal => "local_fractal",
            OperatorKind::QDeriv => "q_deriv",
            OperatorKind::Caputo => "caputo",
            OperatorKind::FractalSpaceWindow => "fractal_space_window",
            OperatorKind::CaputoLikeWindow => "caputo_like_window",
            OperatorKind::FractalFunctionWindow => "fractal_function_window",
        }
    }
}

/// A derivative variant with its order, window, coefficient mode, and
/// quadrature scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorConfig {
    pub kind: OperatorKind,
    /// alpha, nu, or q depending on `kind`.
    pub order: f64,
    /// Window width delta for the integral forms; ignored by local forms.
    pub window: f64,
    pub coeff_mode: CoeffMode,
    pub quad: QuadScheme,
    /// Node count for graded-mesh quadrature.
    pub graded_nodes: usize,
}

impl OperatorConfig {
    pub fn new(kind: OperatorKind, order: f64) -> Self {
        let quad = match kind {
            OperatorKind::CaputoLikeWindow => QuadScheme::AnalyticSubstitution,
            _ => QuadScheme::Trapezoid,
        };
        Self {
            kind,
            order,
            window: 0.0,
            coeff_mode: CoeffMode::Full,
            quad,
            graded_nodes: DEFAULT_GRADED_NODES,
        }
    }

    pub fn with_window(mut self, window: f64) -> Self {
        self.window = window;
        self
    }

    pub fn with_coeff(mut self, mode: CoeffMode) -> Self {
        self.coeff_mode = mode;
        self
    }

    pub fn with_quad(mut self, quad: QuadScheme) -> Self {
        self.quad = quad;
        self
    }

    pub fn with_graded_nodes(mut self, nodes: usize) -> Self {
        self.graded_nodes = nodes;
        self
    }

    /// Kind-specific order range and window sanity.
    pub fn validate(&self, domain_span: f64) -> Result<()> {
        let order_ok = match self.kind {
            OperatorKind::Caputo => self.order > 0.0 && self.order < 1.0,
            OperatorKind::QDeriv => self.order > 0.0,
            _ => self.order > 0.0 && self.order <= 1.0,
        };
        if !order_ok {
            return Err(FraktalError::Validation(format!(
                "order {} out of range for {}",
                self.order,
                self.kind.name()
            )));
        }
        if self.window < 0.0 || self.window > domain_span {
            return Err(FraktalError::Validation(format!(
                "window {} outside [0, {domain_span}]",
                self.window
            )));
        }
        Ok(())
    }

    /// Compact human-readable label, used in comparison reports.
    pub fn label(&self) -> String {
        let mut s = format!("{}(order={}", self.kind.name(), self.order);
        match self.kind {
            OperatorKind::Caputo
            | OperatorKind::FractalSpaceWindow
            | OperatorKind::CaputoLikeWindow
            | OperatorKind::FractalFunctionWindow => {
                s.push_str(&format!(",window={}", self.window));
            }
            _ => {}
        }
        match self.kind {
            OperatorKind::QDeriv | OperatorKind::Caputo => {}
            _ => s.push_str(&format!(",coeff={:?}", self.coeff_mode)),
        }
        s.push(')');
        s
    }
}

/// Evaluates a configured operator at `x`. The staircase-based variants
/// (`parvate_gangal`, `inverse_fractal`) need a staircase function and are
/// not available through batch dispatch.
pub fn evaluate(config: &OperatorConfig, h: &SampledFunction, x: f64) -> Result<f64> {
    let span = h.xs()[h.len() - 1] - h.xs()[0];
    config.validate(span)?;
    match config.kind {
        OperatorKind::ParvateGangal | OperatorKind::InverseFractal => {
            Err(FraktalError::Validation(format!(
                "{} requires a staircase function; call the dedicated operation",
                config.kind.name()
            )))
        }
        OperatorKind::LocalFractal => {
            local_fractal_derivative(h, config.order, x, config.coeff_mode)
        }
        OperatorKind::QDeriv => q_derivative(h, config.order, x),
        OperatorKind::Caputo => caputo_derivative(h, config.order, x, config.window),
        OperatorKind::FractalSpaceWindow => fractal_space_window_derivative(
            h,
            config.order,
            x,
            config.window,
            config.coeff_mode,
            config.quad,
        ),
        OperatorKind::CaputoLikeWindow => caputo_like_window_derivative(
            h,
            config.order,
            x,
            config.window,
            config.coeff_mode,
            config.quad,
        ),
        OperatorKind::FractalFunctionWindow => fractal_function_window_derivative(
            h,
            config.order,
            x,
            config.window,
            config.coeff_mode,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_coefficient_integer_dimensions() {
        // Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(3/2) = sqrt(pi)/2.
        assert!((surface_coefficient(1.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((surface_coefficient(2.0).unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((surface_coefficient(3.0).unwrap() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!(surface_coefficient(0.0).is_err());
        assert!(surface_coefficient(-1.0).is_err());
    }

    #[test]
    fn q_exponential_values() {
        assert!((q_exponential(1.0, 0.7).unwrap() - 0.7_f64.exp()).abs() < 1e-15);
        // q = 0.5, x = 0.7: (1 + 0.5*0.7)^2 = 1.35^2
        assert!((q_exponential(0.5, 0.7).unwrap() - 1.8225).abs() < 1e-12);
        assert!(q_exponential(3.0, 1.0).is_err());
    }

    #[test]
    fn config_validation() {
        let h = SampledFunction::from_fn(|x| x, 0.0, 1.0, 11).unwrap();
        let bad = OperatorConfig::new(OperatorKind::Caputo, 1.0).with_window(0.5);
        assert!(evaluate(&bad, &h, 1.0).is_err());
        let wide = OperatorConfig::new(OperatorKind::Caputo, 0.5).with_window(2.0);
        assert!(evaluate(&wide, &h, 1.0).is_err());
        let pg = OperatorConfig::new(OperatorKind::ParvateGangal, 0.5);
        assert!(evaluate(&pg, &h, 0.5).is_err());
    }
}
