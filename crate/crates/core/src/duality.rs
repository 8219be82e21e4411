//! Convex potentials on the line, their Legendre conjugates, and the
//! arc-length generators that turn a Hessian metric into the Euclidean one.
//!
//! For a strictly convex `f` with metric `g = f''`, the arc length
//! `h(θ) = ∫_{θ0}^θ sqrt(f''(u)) du` maps θ-coordinates to a Cartesian
//! coordinate. The same point has dual coordinate `η = f'(θ)`, in which the
//! metric is `(f*)''(η) = 1 / f''(θ(η))` and the arc length is
//! `h⋄(η) = ∫_{η0}^η (f''(θ(u)))^{-1/2} du` with `η0 = f'(θ0)`. Centroids
//! are quasi-arithmetic means under `h` and `h⋄`, and they agree as points:
//! `f'(m_h(a, b)) = m_{h⋄}(f'(a), f'(b))`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::generators::{numeric_inverse, Direction, Generator, ScalarFn};
use crate::interval::Interval;
use crate::numeric::diff::{central_second, second_step};
use crate::numeric::{
    adaptive_simpson, brent_root, expand_bracket, grid_golden_minimize, QuadOptions, RootOptions,
};

/// Sample points used by [`ConvexPotential::validate`].
const CONVEXITY_SAMPLES: usize = 64;

/// Closed-form companions shipped with the built-in potentials. The arc
/// lengths vanish at the potential's base point.
#[derive(Clone)]
struct ClosedForms {
    conjugate: ScalarFn,
    primal_arc: (ScalarFn, ScalarFn),
    dual_arc: (ScalarFn, ScalarFn),
}

/// A smooth strictly convex function with its first two derivatives.
#[derive(Clone)]
pub struct ConvexPotential {
    label: String,
    f: ScalarFn,
    f1: ScalarFn,
    f2: ScalarFn,
    domain: Interval,
    eta_domain: Interval,
    base_point: f64,
    closed: Option<ClosedForms>,
}

impl std::fmt::Debug for ConvexPotential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConvexPotential")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("eta_domain", &self.eta_domain)
            .field("base_point", &self.base_point)
            .finish_non_exhaustive()
    }
}

fn scalar(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ScalarFn {
    Arc::new(move |x| Ok(f(x)))
}

impl ConvexPotential {
    pub fn new(
        label: impl Into<String>,
        f: ScalarFn,
        f1: ScalarFn,
        f2: ScalarFn,
        domain: Interval,
        eta_domain: Interval,
        base_point: f64,
    ) -> Result<Self> {
        domain.check(base_point)?;
        let pot = Self {
            label: label.into(),
            f,
            f1,
            f2,
            domain,
            eta_domain,
            base_point,
            closed: None,
        };
        pot.validate()?;
        Ok(pot)
    }

    /// `f(θ) = e^θ`, with `f* = η log η - η`, `h = 2 e^{θ/2} - 2` and
    /// `h⋄ = 2 sqrt(η) - 2` (base point θ0 = 0).
    pub fn exponential() -> Self {
        let exp = scalar(f64::exp);
        Self {
            label: "exp".into(),
            f: exp.clone(),
            f1: exp.clone(),
            f2: exp,
            domain: Interval::REAL,
            eta_domain: Interval::POSITIVE,
            base_point: 0.0,
            closed: Some(ClosedForms {
                conjugate: Arc::new(|eta: f64| {
                    if eta > 0.0 {
                        Ok(eta * eta.ln() - eta)
                    } else {
                        Err(Error::EtaOutOfRange(eta))
                    }
                }),
                primal_arc: (
                    scalar(|t| 2.0 * (0.5 * t).exp_m1()),
                    scalar(|v| 2.0 * (0.5 * v).ln_1p()),
                ),
                dual_arc: (
                    scalar(|e| 2.0 * (e.sqrt() - 1.0)),
                    scalar(|v| (0.5 * v + 1.0).powi(2)),
                ),
            }),
        }
    }

    /// `f(θ) = θ²/2`, self-conjugate, with `h = θ` and `h⋄ = η`.
    pub fn quadratic() -> Self {
        Self {
            label: "quadratic".into(),
            f: scalar(|t| 0.5 * t * t),
            f1: scalar(|t| t),
            f2: scalar(|_| 1.0),
            domain: Interval::REAL,
            eta_domain: Interval::REAL,
            base_point: 0.0,
            closed: Some(ClosedForms {
                conjugate: scalar(|e| 0.5 * e * e),
                primal_arc: (scalar(|t| t), scalar(|v| v)),
                dual_arc: (scalar(|e| e), scalar(|v| v)),
            }),
        }
    }

    /// A potential given as an expression in `u`. `f'` and `f''` are
    /// obtained by forward-mode differentiation of the expression. The dual
    /// coordinate range is taken as the image of the sampling window under
    /// `f'`.
    pub fn from_expr(expr: Expr, domain: Interval, base_point: f64) -> Result<Self> {
        let expr = Arc::new(expr);
        let (e0, e1, e2) = (Arc::clone(&expr), Arc::clone(&expr), Arc::clone(&expr));
        let f: ScalarFn = Arc::new(move |t| Ok(e0.eval(t)?));
        let f1: ScalarFn = Arc::new(move |t| Ok(e1.eval_jet(t)?.d1));
        let f2: ScalarFn = Arc::new(move |t| Ok(e2.eval_jet(t)?.d2));
        let (lo, hi) = inner_window(domain);
        let eta_domain = Interval::new(f1(lo)?, f1(hi)?);
        Self::new(
            format!("custom({expr})"),
            f,
            f1,
            f2,
            domain,
            eta_domain,
            base_point,
        )
    }

    /// Checks `f'' > 0` and `f'` increasing on sampled points.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = inner_window(self.domain);
        let mut prev = f64::NEG_INFINITY;
        for i in 0..CONVEXITY_SAMPLES {
            let t = lo + (hi - lo) * i as f64 / (CONVEXITY_SAMPLES - 1) as f64;
            let g = (self.f2)(t)?;
            let d = (self.f1)(t)?;
            if !(g > 0.0) || !(d > prev) {
                return Err(Error::NotConvex { at: t });
            }
            prev = d;
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn eta_domain(&self) -> Interval {
        self.eta_domain
    }

    pub fn base_point(&self) -> f64 {
        self.base_point
    }

    pub fn value(&self, theta: f64) -> Result<f64> {
        (self.f)(self.domain.check(theta)?)
    }

    /// The dual coordinate `η = f'(θ)`.
    pub fn eta(&self, theta: f64) -> Result<f64> {
        (self.f1)(self.domain.check(theta)?)
    }

    /// The metric coefficient `g(θ) = f''(θ)`.
    pub fn metric(&self, theta: f64) -> Result<f64> {
        (self.f2)(self.domain.check(theta)?)
    }

    /// Solves `f'(θ) = η` by bracketed root finding started at the base point.
    pub fn theta_of_eta(&self, eta: f64) -> Result<f64> {
        if !self.eta_domain.contains(eta) {
            return Err(Error::EtaOutOfRange(eta));
        }
        let f1 = &self.f1;
        let phi = |t: f64| Ok(f1(t)? - eta);
        let step = self.base_point.abs().max(1.0);
        let bracket = expand_bracket(phi, self.base_point, step, self.domain, 128)?
            .ok_or(Error::EtaOutOfRange(eta))?;
        if bracket.f_lo == 0.0 {
            return Ok(bracket.lo);
        }
        if bracket.f_hi == 0.0 {
            return Ok(bracket.hi);
        }
        let opts = RootOptions {
            rtol: 0.0,
            max_iter: 200,
            ..RootOptions::default()
        };
        Ok(brent_root(phi, bracket.lo, bracket.hi, opts)?.x)
    }

    /// The closed-form conjugate, if this potential ships one.
    pub fn conjugate_closed(&self, eta: f64) -> Option<Result<f64>> {
        self.closed.as_ref().map(|c| (c.conjugate)(eta))
    }

    pub fn has_closed_forms(&self) -> bool {
        self.closed.is_some()
    }
}

/// The finite sampling window pulled in slightly from open finite ends.
fn inner_window(domain: Interval) -> (f64, f64) {
    let (lo, hi) = domain.finite_window();
    let pad = 1e-6 * (hi - lo);
    (
        if domain.lo.is_finite() { lo + pad } else { lo },
        if domain.hi.is_finite() { hi - pad } else { hi },
    )
}

/// Legendre conjugate `f*(η) = η θ* - f(θ*)` where `f'(θ*) = η`.
pub fn conjugate_value(pot: &ConvexPotential, eta: f64) -> Result<f64> {
    let theta = pot.theta_of_eta(eta)?;
    Ok(eta * theta - (pot.f)(theta)?)
}

/// `(f*)''(η)` by a central second difference of [`conjugate_value`].
pub fn conjugate_second_derivative(pot: &ConvexPotential, eta: f64) -> Result<f64> {
    let scale = if eta != 0.0 { eta.abs() } else { 1.0 };
    central_second(|e| conjugate_value(pot, e), eta, second_step(scale))
}

fn arc_quadrature(integrand: ScalarFn, base: f64) -> ScalarFn {
    Arc::new(move |x| adaptive_simpson(|u| integrand(u), base, x, QuadOptions::default()))
}

fn increasing(label: String, forward: ScalarFn, domain: Interval, base: f64) -> Generator {
    let step = base.abs().max(1.0);
    let inverse = numeric_inverse(Arc::clone(&forward), domain, base, step);
    Generator::from_fns(label, forward, inverse, domain, Direction::Increasing)
}

/// `h(θ) = ∫_{θ0}^θ sqrt(f''(u)) du` by adaptive Simpson quadrature
/// (absolute tolerance 1e-10); inverse by root finding.
pub fn primal_arc_generator(pot: &ConvexPotential) -> Generator {
    let f2 = Arc::clone(&pot.f2);
    let integrand: ScalarFn = Arc::new(move |u| Ok(f2(u)?.sqrt()));
    let forward = arc_quadrature(integrand, pot.base_point);
    increasing(
        format!("arc[{}]", pot.label),
        forward,
        pot.domain,
        pot.base_point,
    )
}

/// `h⋄(η) = ∫_{η0}^η (f''(θ(u)))^{-1/2} du` with `θ(u)` from inverting `f'`.
pub fn dual_arc_generator(pot: &ConvexPotential) -> Result<Generator> {
    let eta0 = pot.eta(pot.base_point)?;
    let p = pot.clone();
    let integrand: ScalarFn = Arc::new(move |u| {
        let theta = p.theta_of_eta(u)?;
        Ok((p.f2)(theta)?.sqrt().recip())
    });
    let forward = arc_quadrature(integrand, eta0);
    Ok(increasing(
        format!("dual-arc[{}]", pot.label),
        forward,
        pot.eta_domain,
        eta0,
    ))
}

/// Primal and dual arc-length generators of one potential.
#[derive(Debug, Clone)]
pub struct DualMeanPair {
    pub primal: Generator,
    pub dual: Generator,
    pub potential: ConvexPotential,
}

impl DualMeanPair {
    /// Both generators by quadrature.
    pub fn quadrature(pot: &ConvexPotential) -> Result<Self> {
        Ok(Self {
            primal: primal_arc_generator(pot),
            dual: dual_arc_generator(pot)?,
            potential: pot.clone(),
        })
    }

    /// The built-in closed forms, when the potential has them.
    pub fn closed_form(pot: &ConvexPotential) -> Option<Self> {
        let c = pot.closed.as_ref()?;
        let gen = |label: &str, (f, g): &(ScalarFn, ScalarFn), domain| {
            Generator::from_fns(
                format!("{label}[{}]", pot.label),
                Arc::clone(f),
                Arc::clone(g),
                domain,
                Direction::Increasing,
            )
        };
        Some(Self {
            primal: gen("arc", &c.primal_arc, pot.domain),
            dual: gen("dual-arc", &c.dual_arc, pot.eta_domain),
            potential: pot.clone(),
        })
    }

    /// Evaluates both centroids of `a` and `b` and the residuals linking them.
    pub fn check(&self, a: f64, b: f64) -> Result<DualMeanCheck> {
        let pot = &self.potential;
        let theta_mean = self.primal.mean(a, b)?;
        let eta_mean = self.dual.mean(pot.eta(a)?, pot.eta(b)?)?;
        let transported_eta = pot.eta(theta_mean)?;
        let arc_primal = self.primal.forward(theta_mean)?;
        let arc_dual = self.dual.forward(eta_mean)?;
        Ok(DualMeanCheck {
            theta_mean,
            eta_mean,
            transported_eta,
            arc_primal,
            arc_dual,
            eta_residual: mixed_relative(transported_eta, eta_mean),
            arc_residual: mixed_relative(arc_primal, arc_dual),
        })
    }
}

/// `|x - y| / max(1, |y|)`: relative away from zero, absolute near it.
pub fn mixed_relative(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualMeanCheck {
    /// `m_h(a, b)`.
    pub theta_mean: f64,
    /// `m_{h⋄}(f'(a), f'(b))`.
    pub eta_mean: f64,
    /// `f'(theta_mean)`; equals `eta_mean`.
    pub transported_eta: f64,
    /// `h(theta_mean)`.
    pub arc_primal: f64,
    /// `h⋄(eta_mean)`; equals `arc_primal`.
    pub arc_dual: f64,
    pub eta_residual: f64,
    pub arc_residual: f64,
}

impl DualMeanCheck {
    pub fn consistent(&self, tol: f64) -> bool {
        self.eta_residual <= tol && self.arc_residual <= tol
    }
}

/// Dual-mean consistency check with quadrature-built generators.
pub fn dual_mean_check(pot: &ConvexPotential, a: f64, b: f64) -> Result<DualMeanCheck> {
    DualMeanPair::quadrature(pot)?.check(a, b)
}

/// A line with Riemannian metric coefficient `g11 > 0`.
#[derive(Clone)]
pub struct RiemannianLine {
    g11: ScalarFn,
    base_point: f64,
    domain: Interval,
}

impl std::fmt::Debug for RiemannianLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RiemannianLine")
            .field("base_point", &self.base_point)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl RiemannianLine {
    pub fn new(g11: ScalarFn, base_point: f64, domain: Interval) -> Result<Self> {
        domain.check(base_point)?;
        let line = Self {
            g11,
            base_point,
            domain,
        };
        let (lo, hi) = inner_window(domain);
        for i in 0..CONVEXITY_SAMPLES {
            let t = lo + (hi - lo) * i as f64 / (CONVEXITY_SAMPLES - 1) as f64;
            if !((line.g11)(t)? > 0.0) {
                return Err(Error::NotConvex { at: t });
            }
        }
        Ok(line)
    }

    /// The Euclidean line, `g11 = 1`.
    pub fn euclidean() -> Self {
        Self {
            g11: scalar(|_| 1.0),
            base_point: 0.0,
            domain: Interval::REAL,
        }
    }

    /// The Hessian metric `g11 = f''` of a potential.
    pub fn hessian(pot: &ConvexPotential) -> Self {
        Self {
            g11: Arc::clone(&pot.f2),
            base_point: pot.base_point,
            domain: pot.domain,
        }
    }

    pub fn metric(&self, theta: f64) -> Result<f64> {
        (self.g11)(self.domain.check(theta)?)
    }

    /// Arc-length generator `h(θ) = ∫_{θ0}^θ sqrt(g11)`.
    pub fn arc_generator(&self) -> Generator {
        let g = Arc::clone(&self.g11);
        let integrand: ScalarFn = Arc::new(move |u| Ok(g(u)?.sqrt()));
        increasing(
            "arc".into(),
            arc_quadrature(integrand, self.base_point),
            self.domain,
            self.base_point,
        )
    }
}

/// Geodesic distance `|∫_{θ1}^{θ2} sqrt(g11)|`.
pub fn riemannian_distance(line: &RiemannianLine, theta1: f64, theta2: f64) -> Result<f64> {
    line.domain.check(theta1)?;
    line.domain.check(theta2)?;
    let g = &line.g11;
    let v = adaptive_simpson(|u| Ok(g(u)?.sqrt()), theta1, theta2, QuadOptions::default())?;
    Ok(v.abs())
}

/// Riemannian centroid of two points: the quasi-arithmetic mean under the
/// arc-length generator.
pub fn riemannian_centroid(line: &RiemannianLine, theta1: f64, theta2: f64) -> Result<f64> {
    line.arc_generator().mean(theta1, theta2)
}

/// Centroid by direct minimisation of `ρ²(θ1, θ) + ρ²(θ, θ2)`.
pub fn riemannian_centroid_numeric(line: &RiemannianLine, theta1: f64, theta2: f64) -> Result<f64> {
    if theta1 == theta2 {
        return Ok(theta1);
    }
    let (lo, hi) = (theta1.min(theta2), theta1.max(theta2));
    let energy = |t: f64| {
        let d1 = riemannian_distance(line, lo, t.max(lo).min(hi))?;
        let d2 = riemannian_distance(line, t.max(lo).min(hi), hi)?;
        Ok(d1 * d1 + d2 * d2)
    };
    let (t, _) = grid_golden_minimize(energy, lo, hi, 64, 1e-9)?;
    Ok(t)
}

/// The point whose `chart` image is the Euclidean midpoint of the images of
/// `a'` and `b'`, i.e. `m_chart(a', b')`.
pub fn chart_transport(chart: &Generator, a_prime: f64, b_prime: f64) -> Result<f64> {
    chart.mean(a_prime, b_prime)
}
