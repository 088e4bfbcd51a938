//! Problem data: coefficient families p_j, nonlinearity families f_i, the
//! assembled system spec, sphere extremizers, and the growth antiderivative F.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Dimension, RadialFunction, RadialGrid};
use crate::quad::adaptive_trapezoid;
use crate::scalar::{real, Real};

/// Decay class of a coefficient (or coefficient sum) as t → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass<T> {
    /// Identically zero.
    Zero,
    /// ~ C t^{-exponent} (exponent 0 covers constants).
    Power { exponent: T },
    /// Decays faster than any power.
    Gaussian,
}

/// Slowest-decaying class wins in a sum.
pub fn combine_tails<T: Real>(tails: impl IntoIterator<Item = TailClass<T>>) -> TailClass<T> {
    let mut acc = TailClass::Zero;
    for t in tails {
        acc = match (acc, t) {
            (TailClass::Power { exponent: a }, TailClass::Power { exponent: b }) => {
                TailClass::Power { exponent: a.min(b) }
            }
            (p @ TailClass::Power { .. }, _) | (_, p @ TailClass::Power { .. }) => p,
            (TailClass::Gaussian, _) | (_, TailClass::Gaussian) => TailClass::Gaussian,
            (TailClass::Zero, TailClass::Zero) => TailClass::Zero,
        };
    }
    acc
}

/// Nonnegative coefficient p(x) on R^N, one of the built-in parameterized
/// families. All families except `AnisotropicRational` are radial.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientFamily<T> {
    /// p ≡ c
    Constant { c: T },
    /// p(r) = c (1+r)^{-sigma}
    PowerDecay { c: T, sigma: T },
    /// p(r) = c (1+r²)^{-sigma}
    RationalDecay { c: T, sigma: T },
    /// p(r) = c e^{-r²}
    Gaussian { c: T },
    /// p(x) = c (1 + Σ aᵢ xᵢ²)^{-sigma}; radial iff all aᵢ equal
    AnisotropicRational { c: T, sigma: T, axes: Vec<T> },
}

impl<T: Real> CoefficientFamily<T> {
    pub fn constant(c: T) -> Result<Self> {
        let f = CoefficientFamily::Constant { c };
        f.validate()?;
        Ok(f)
    }

    pub fn power_decay(c: T, sigma: T) -> Result<Self> {
        let f = CoefficientFamily::PowerDecay { c, sigma };
        f.validate()?;
        Ok(f)
    }

    pub fn rational_decay(c: T, sigma: T) -> Result<Self> {
        let f = CoefficientFamily::RationalDecay { c, sigma };
        f.validate()?;
        Ok(f)
    }

    pub fn gaussian(c: T) -> Result<Self> {
        let f = CoefficientFamily::Gaussian { c };
        f.validate()?;
        Ok(f)
    }

    pub fn anisotropic_rational(c: T, sigma: T, axes: Vec<T>) -> Result<Self> {
        let f = CoefficientFamily::AnisotropicRational { c, sigma, axes };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let check_nonneg = |name: &str, v: T| -> Result<()> {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "coefficient parameter {name} must be finite and nonnegative, got {v}"
                )));
            }
            Ok(())
        };
        match self {
            CoefficientFamily::Constant { c } | CoefficientFamily::Gaussian { c } => {
                check_nonneg("c", *c)
            }
            CoefficientFamily::PowerDecay { c, sigma }
            | CoefficientFamily::RationalDecay { c, sigma } => {
                check_nonneg("c", *c)?;
                check_nonneg("sigma", *sigma)
            }
            CoefficientFamily::AnisotropicRational { c, sigma, axes } => {
                check_nonneg("c", *c)?;
                check_nonneg("sigma", *sigma)?;
                if axes.is_empty() {
                    return Err(Error::InvalidParameter(
                        "anisotropic_rational needs a nonempty axis vector".into(),
                    ));
                }
                for (i, &a) in axes.iter().enumerate() {
                    check_nonneg(&format!("a[{i}]"), a)?;
                }
                Ok(())
            }
        }
    }

    pub fn is_radial(&self) -> bool {
        match self {
            CoefficientFamily::AnisotropicRational { axes, .. } => {
                axes.iter().all(|&a| a == axes[0])
            }
            _ => true,
        }
    }

    /// Full evaluation at a point x (length must match the axis vector for
    /// the anisotropic family; radial families use |x|).
    pub fn eval_point(&self, x: &[T]) -> T {
        match self {
            CoefficientFamily::AnisotropicRational { c, sigma, axes } => {
                let q = axes
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (&a, &xi)| acc + a * xi * xi);
                *c * (T::one() + q).powf(-*sigma)
            }
            _ => {
                let r = x.iter().fold(T::zero(), |acc, &xi| acc + xi * xi).sqrt();
                self.sphere_max(r)
            }
        }
    }

    /// φ(t) = max over the sphere |x| = t. Closed form for every family; the
    /// anisotropic max sits on the axis of the smallest aᵢ.
    pub fn sphere_max(&self, t: T) -> T {
        match self {
            CoefficientFamily::Constant { c } => *c,
            CoefficientFamily::PowerDecay { c, sigma } => *c * (T::one() + t).powf(-*sigma),
            CoefficientFamily::RationalDecay { c, sigma } => {
                *c * (T::one() + t * t).powf(-*sigma)
            }
            CoefficientFamily::Gaussian { c } => *c * (-(t * t)).exp(),
            CoefficientFamily::AnisotropicRational { c, sigma, axes } => {
                let a_min = axes.iter().fold(T::infinity(), |m, &a| m.min(a));
                *c * (T::one() + a_min * t * t).powf(-*sigma)
            }
        }
    }

    /// ψ(t) = min over the sphere |x| = t; the anisotropic min sits on the
    /// axis of the largest aᵢ.
    pub fn sphere_min(&self, t: T) -> T {
        match self {
            CoefficientFamily::AnisotropicRational { c, sigma, axes } => {
                let a_max = axes.iter().fold(T::zero(), |m, &a| m.max(a));
                *c * (T::one() + a_max * t * t).powf(-*sigma)
            }
            _ => self.sphere_max(t),
        }
    }

    pub fn phi_tail(&self) -> TailClass<T> {
        self.extremizer_tail(true)
    }

    pub fn psi_tail(&self) -> TailClass<T> {
        self.extremizer_tail(false)
    }

    /// Tail of the radial profile itself; `None` for non-radial coefficients.
    pub fn radial_tail(&self) -> Option<TailClass<T>> {
        if self.is_radial() {
            Some(self.phi_tail())
        } else {
            None
        }
    }

    fn extremizer_tail(&self, max_side: bool) -> TailClass<T> {
        let two = real::<T>(2.0);
        match self {
            CoefficientFamily::Constant { c } => {
                if *c == T::zero() {
                    TailClass::Zero
                } else {
                    TailClass::Power { exponent: T::zero() }
                }
            }
            CoefficientFamily::PowerDecay { c, sigma } => {
                if *c == T::zero() {
                    TailClass::Zero
                } else {
                    TailClass::Power { exponent: *sigma }
                }
            }
            CoefficientFamily::RationalDecay { c, sigma } => {
                if *c == T::zero() {
                    TailClass::Zero
                } else {
                    TailClass::Power { exponent: two * *sigma }
                }
            }
            CoefficientFamily::Gaussian { c } => {
                if *c == T::zero() {
                    TailClass::Zero
                } else {
                    TailClass::Gaussian
                }
            }
            CoefficientFamily::AnisotropicRational { c, sigma, axes } => {
                if *c == T::zero() {
                    return TailClass::Zero;
                }
                let a = if max_side {
                    axes.iter().fold(T::infinity(), |m, &x| m.min(x))
                } else {
                    axes.iter().fold(T::zero(), |m, &x| m.max(x))
                };
                if a == T::zero() || *sigma == T::zero() {
                    TailClass::Power { exponent: T::zero() }
                } else {
                    TailClass::Power { exponent: two * *sigma }
                }
            }
        }
    }

    /// dp/dr at r = 0 for radial families, used by the oracle's series start.
    pub fn radial_slope_at_zero(&self) -> Option<T> {
        if !self.is_radial() {
            return None;
        }
        Some(match self {
            CoefficientFamily::PowerDecay { c, sigma } => -*sigma * *c,
            _ => T::zero(),
        })
    }
}

/// Nonlinearity f(s₁,…,s_d), one of the built-in families. `Constant` exists
/// for oracle fixtures only and fails the f(0)=0 hypothesis by design.
#[derive(Debug, Clone, PartialEq)]
pub enum NonlinearityFamily<T> {
    /// f(s) = (Σ sᵢ)^gamma, gamma > 0
    Power { gamma: T },
    /// f(s) = Σ bᵢ sᵢ, b ≥ 0
    LinearMix { weights: Vec<T> },
    /// f(s) = (Σ sᵢ) ln(1 + Σ sᵢ)
    LogGrowth,
    /// f(s) = Π sᵢ^{γᵢ}, γᵢ ≥ 0, Σ γᵢ ≤ 1 (not strictly positive off the diagonal)
    ProductRoot { exponents: Vec<T> },
    /// f ≡ value (violates f(0) = 0; oracle fixture use)
    Constant { value: T },
}

impl<T: Real> NonlinearityFamily<T> {
    pub fn power(gamma: T) -> Result<Self> {
        let f = NonlinearityFamily::Power { gamma };
        f.validate(None)?;
        Ok(f)
    }

    pub fn linear_mix(weights: Vec<T>) -> Result<Self> {
        let d = weights.len();
        let f = NonlinearityFamily::LinearMix { weights };
        f.validate(Some(d))?;
        Ok(f)
    }

    pub fn log_growth() -> Self {
        NonlinearityFamily::LogGrowth
    }

    pub fn product_root(exponents: Vec<T>) -> Result<Self> {
        let d = exponents.len();
        let f = NonlinearityFamily::ProductRoot { exponents };
        f.validate(Some(d))?;
        Ok(f)
    }

    pub fn constant(value: T) -> Result<Self> {
        let f = NonlinearityFamily::Constant { value };
        f.validate(None)?;
        Ok(f)
    }

    /// Parameter validation; `components` checks vector arity when known.
    pub fn validate(&self, components: Option<usize>) -> Result<()> {
        match self {
            NonlinearityFamily::Power { gamma } => {
                if !(*gamma > T::zero()) || !gamma.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "power nonlinearity needs gamma > 0, got {gamma}"
                    )));
                }
            }
            NonlinearityFamily::LinearMix { weights } => {
                if let Some(d) = components {
                    if weights.len() != d {
                        return Err(Error::InvalidParameter(format!(
                            "linear_mix has {} weights for {d} components",
                            weights.len()
                        )));
                    }
                }
                for (i, &b) in weights.iter().enumerate() {
                    if !(b >= T::zero()) || !b.is_finite() {
                        return Err(Error::InvalidParameter(format!(
                            "linear_mix weight b[{i}] must be finite and nonnegative, got {b}"
                        )));
                    }
                }
            }
            NonlinearityFamily::LogGrowth => {}
            NonlinearityFamily::ProductRoot { exponents } => {
                if let Some(d) = components {
                    if exponents.len() != d {
                        return Err(Error::InvalidParameter(format!(
                            "product_root has {} exponents for {d} components",
                            exponents.len()
                        )));
                    }
                }
                let mut total = T::zero();
                for (i, &g) in exponents.iter().enumerate() {
                    if !(g >= T::zero()) || !g.is_finite() {
                        return Err(Error::InvalidParameter(format!(
                            "product_root exponent gamma[{i}] must be finite and nonnegative, got {g}"
                        )));
                    }
                    total += g;
                }
                if !(total > T::zero()) || total > T::one() {
                    return Err(Error::InvalidParameter(format!(
                        "product_root exponents must sum into (0, 1], got {total}"
                    )));
                }
            }
            NonlinearityFamily::Constant { value } => {
                if !(*value >= T::zero()) || !value.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "constant nonlinearity must be finite and nonnegative, got {value}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when the family satisfies the strict positivity clause of the
    /// growth hypotheses ("f > 0 once some argument is positive").
    pub fn c1_strict(&self) -> bool {
        !matches!(self, NonlinearityFamily::ProductRoot { .. })
    }

    pub fn eval(&self, s: &[T]) -> T {
        match self {
            NonlinearityFamily::Power { gamma } => {
                let total = s.iter().fold(T::zero(), |a, &x| a + x);
                if total == T::zero() {
                    T::zero()
                } else {
                    total.powf(*gamma)
                }
            }
            NonlinearityFamily::LinearMix { weights } => weights
                .iter()
                .zip(s)
                .fold(T::zero(), |a, (&b, &x)| a + b * x),
            NonlinearityFamily::LogGrowth => {
                let total = s.iter().fold(T::zero(), |a, &x| a + x);
                total * total.ln_1p()
            }
            NonlinearityFamily::ProductRoot { exponents } => exponents
                .iter()
                .zip(s)
                .fold(T::one(), |a, (&g, &x)| {
                    if g == T::zero() {
                        a
                    } else {
                        a * x.powf(g)
                    }
                }),
            NonlinearityFamily::Constant { value } => *value,
        }
    }

    /// f(t,…,t) with d equal arguments, in closed form.
    pub fn diag(&self, t: T, components: usize) -> T {
        let d = real::<T>(components as f64);
        match self {
            NonlinearityFamily::Power { gamma } => {
                if t == T::zero() {
                    T::zero()
                } else {
                    (d * t).powf(*gamma)
                }
            }
            NonlinearityFamily::LinearMix { weights } => {
                weights.iter().fold(T::zero(), |a, &b| a + b) * t
            }
            NonlinearityFamily::LogGrowth => {
                let x = d * t;
                x * x.ln_1p()
            }
            NonlinearityFamily::ProductRoot { exponents } => {
                let total = exponents.iter().fold(T::zero(), |a, &g| a + g);
                if t == T::zero() {
                    T::zero()
                } else {
                    t.powf(total)
                }
            }
            NonlinearityFamily::Constant { value } => *value,
        }
    }

    fn diag_growth(&self) -> DiagGrowth<T> {
        match self {
            NonlinearityFamily::Power { gamma } => DiagGrowth::PowerLike { exponent: *gamma },
            NonlinearityFamily::LinearMix { weights } => {
                if weights.iter().all(|&b| b == T::zero()) {
                    DiagGrowth::Null
                } else {
                    DiagGrowth::PowerLike { exponent: T::one() }
                }
            }
            NonlinearityFamily::LogGrowth => DiagGrowth::LogCorrected,
            NonlinearityFamily::ProductRoot { exponents } => DiagGrowth::PowerLike {
                exponent: exponents.iter().fold(T::zero(), |a, &g| a + g),
            },
            NonlinearityFamily::Constant { value } => {
                if *value == T::zero() {
                    DiagGrowth::Null
                } else {
                    DiagGrowth::PowerLike { exponent: T::zero() }
                }
            }
        }
    }

    /// Antiderivative ∫₀ˢ f(t,…,t) dt. Closed form where available, adaptive
    /// trapezoid refinement otherwise.
    fn diag_antiderivative(&self, s: T, components: usize) -> T {
        let d = real::<T>(components as f64);
        match self {
            NonlinearityFamily::Power { gamma } => {
                let gp1 = *gamma + T::one();
                d.powf(*gamma) * s.powf(gp1) / gp1
            }
            NonlinearityFamily::LinearMix { weights } => {
                weights.iter().fold(T::zero(), |a, &b| a + b) * s * s / real(2.0)
            }
            NonlinearityFamily::Constant { value } => *value * s,
            _ => adaptive_trapezoid(&|t| self.diag(t, components), T::zero(), s, real(1e-12)),
        }
    }
}

/// Growth class of the summed diagonal nonlinearity as t → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagGrowth<T> {
    /// Identically zero.
    Null,
    /// ~ C t^{exponent}
    PowerLike { exponent: T },
    /// Power-of-t with a logarithmic correction (not exponent-decidable).
    LogCorrected,
}

/// F(s) = ∫₀ˢ Σᵢ fᵢ(t,…,t) dt.
#[derive(Debug, Clone)]
pub struct BigF<T> {
    families: Vec<NonlinearityFamily<T>>,
}

impl<T: Real> BigF<T> {
    pub fn new(families: Vec<NonlinearityFamily<T>>) -> Result<Self> {
        if families.is_empty() {
            return Err(Error::InvalidParameter(
                "F needs at least one nonlinearity".into(),
            ));
        }
        let d = families.len();
        for f in &families {
            f.validate(Some(d))?;
        }
        Ok(BigF { families })
    }

    pub fn components(&self) -> usize {
        self.families.len()
    }

    pub fn families(&self) -> &[NonlinearityFamily<T>] {
        &self.families
    }

    /// Σᵢ fᵢ(t,…,t)
    pub fn diag_sum(&self, t: T) -> T {
        let d = self.families.len();
        self.families
            .iter()
            .fold(T::zero(), |a, f| a + f.diag(t, d))
    }

    /// F(s), s ≥ 0.
    pub fn eval(&self, s: T) -> T {
        let d = self.families.len();
        self.families
            .iter()
            .fold(T::zero(), |a, f| a + f.diag_antiderivative(s, d))
    }

    /// Growth class of the summed diagonal: dominant pure power if it beats
    /// every log-corrected term, log-corrected otherwise.
    pub fn growth(&self) -> DiagGrowth<T> {
        let mut max_power: Option<T> = None;
        let mut has_log = false;
        for f in &self.families {
            match f.diag_growth() {
                DiagGrowth::Null => {}
                DiagGrowth::PowerLike { exponent } => {
                    max_power = Some(match max_power {
                        Some(m) => m.max(exponent),
                        None => exponent,
                    });
                }
                DiagGrowth::LogCorrected => has_log = true,
            }
        }
        match (max_power, has_log) {
            (Some(p), true) if p > T::one() => DiagGrowth::PowerLike { exponent: p },
            (_, true) => DiagGrowth::LogCorrected,
            (Some(p), false) => DiagGrowth::PowerLike { exponent: p },
            (None, false) => DiagGrowth::Null,
        }
    }
}

/// The assembled system: dimension N, d coefficient/nonlinearity pairs, and
/// the ε used by the weighted integral conditions.
#[derive(Debug, Clone)]
pub struct ProblemSpec<T> {
    dimension: Dimension,
    coefficients: Vec<CoefficientFamily<T>>,
    nonlinearities: Vec<NonlinearityFamily<T>>,
    epsilon: T,
}

impl<T: Real> ProblemSpec<T> {
    pub fn new(
        dimension: Dimension,
        coefficients: Vec<CoefficientFamily<T>>,
        nonlinearities: Vec<NonlinearityFamily<T>>,
        epsilon: T,
    ) -> Result<Self> {
        if coefficients.is_empty() || coefficients.len() != nonlinearities.len() {
            return Err(Error::InvalidParameter(format!(
                "need d >= 1 matching coefficient/nonlinearity pairs, got {} and {}",
                coefficients.len(),
                nonlinearities.len()
            )));
        }
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        let d = coefficients.len();
        for c in &coefficients {
            c.validate()?;
            if let CoefficientFamily::AnisotropicRational { axes, .. } = c {
                if axes.len() != dimension.get() as usize {
                    return Err(Error::InvalidParameter(format!(
                        "anisotropic axis vector has {} entries for dimension {}",
                        axes.len(),
                        dimension.get()
                    )));
                }
            }
        }
        for f in &nonlinearities {
            f.validate(Some(d))?;
        }
        Ok(ProblemSpec {
            dimension,
            coefficients,
            nonlinearities,
            epsilon,
        })
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn components(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[CoefficientFamily<T>] {
        &self.coefficients
    }

    pub fn nonlinearities(&self) -> &[NonlinearityFamily<T>] {
        &self.nonlinearities
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn with_epsilon(mut self, epsilon: T) -> Result<Self> {
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn is_radial(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_radial())
    }

    pub fn big_f(&self) -> BigF<T> {
        BigF {
            families: self.nonlinearities.clone(),
        }
    }

    /// φⱼ sampled on a grid, one function per component.
    pub fn sample_phi(&self, grid: &Arc<RadialGrid<T>>) -> Vec<RadialFunction<T>> {
        self.coefficients
            .iter()
            .map(|c| {
                RadialFunction::from_fn(grid.clone(), |r| c.sphere_max(r))
                    .expect("sphere_max of a valid family is finite")
            })
            .collect()
    }

    /// ψⱼ sampled on a grid.
    pub fn sample_psi(&self, grid: &Arc<RadialGrid<T>>) -> Vec<RadialFunction<T>> {
        self.coefficients
            .iter()
            .map(|c| {
                RadialFunction::from_fn(grid.clone(), |r| c.sphere_min(r))
                    .expect("sphere_min of a valid family is finite")
            })
            .collect()
    }

    /// pⱼ sampled on a grid; requires a radial spec.
    pub fn sample_p(&self, grid: &Arc<RadialGrid<T>>) -> Result<Vec<RadialFunction<T>>> {
        if !self.is_radial() {
            return Err(Error::Precondition(
                "coefficients must be radial to sample p directly".into(),
            ));
        }
        Ok(self.sample_phi(grid))
    }

    pub fn phi_sum_tail(&self) -> TailClass<T> {
        combine_tails(self.coefficients.iter().map(|c| c.phi_tail()))
    }

    pub fn psi_sum_tail(&self) -> TailClass<T> {
        combine_tails(self.coefficients.iter().map(|c| c.psi_tail()))
    }

    /// Tail of Σpⱼ; `None` when any coefficient is non-radial.
    pub fn p_sum_tail(&self) -> Option<TailClass<T>> {
        let mut tails = Vec::with_capacity(self.coefficients.len());
        for c in &self.coefficients {
            tails.push(c.radial_tail()?);
        }
        Some(combine_tails(tails))
    }
}

/// Which hypothesis an audit entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisId {
    /// Coefficients map into [0, ∞).
    P1,
    /// f(0) = 0 and f > 0 once some argument is positive.
    C1,
    /// f nondecreasing in each variable.
    C2,
}

impl HypothesisId {
    pub fn label(self) -> &'static str {
        match self {
            HypothesisId::P1 => "P1",
            HypothesisId::C1 => "C1",
            HypothesisId::C2 => "C2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditVerdict {
    Pass,
    Fail,
    /// A family-level exception (e.g. product_root's zero off the diagonal).
    Flagged,
}

impl AuditVerdict {
    pub fn label(self) -> &'static str {
        match self {
            AuditVerdict::Pass => "pass",
            AuditVerdict::Fail => "fail",
            AuditVerdict::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone)]
pub struct HypothesisFinding {
    pub id: HypothesisId,
    pub verdict: AuditVerdict,
    pub evidence: String,
}

/// Audit lattice: [0, 10]^d, up to 21 points per axis, capped at 1e5 points.
fn lattice_points_per_axis(d: usize) -> usize {
    let mut m = 21usize;
    while m > 2 && (m as f64).powi(d as i32) > 1e5 {
        m -= 1;
    }
    m.max(2)
}

const MONOTONE_SLACK: f64 = 1e-12;

/// Samples the hypotheses (P1), (C1), (C2) on a documented lattice and
/// reports one pass/fail/flagged finding per hypothesis. Never aborts.
pub fn hypothesis_audit<T: Real>(spec: &ProblemSpec<T>) -> Vec<HypothesisFinding> {
    let d = spec.components();
    vec![
        audit_p1(spec),
        audit_c1(spec, d),
        audit_c2(spec, d),
    ]
}

fn audit_p1<T: Real>(spec: &ProblemSpec<T>) -> HypothesisFinding {
    let n = spec.dimension().get() as usize;
    let radii: Vec<T> = (0..=20).map(|i| real::<T>(i as f64 * 0.5)).collect();
    let mut checked = 0usize;
    for (j, coeff) in spec.coefficients().iter().enumerate() {
        // axis directions plus the normalized diagonal
        let mut dirs: Vec<Vec<T>> = Vec::new();
        for axis in 0..n {
            let mut e = vec![T::zero(); n];
            e[axis] = T::one();
            dirs.push(e);
        }
        let diag = real::<T>(1.0 / (n as f64).sqrt());
        dirs.push(vec![diag; n]);
        for dir in &dirs {
            for &r in &radii {
                let x: Vec<T> = dir.iter().map(|&e| e * r).collect();
                let v = coeff.eval_point(&x);
                checked += 1;
                if !(v >= T::zero()) || !v.is_finite() {
                    return HypothesisFinding {
                        id: HypothesisId::P1,
                        verdict: AuditVerdict::Fail,
                        evidence: format!(
                            "coefficient {j} evaluates to {v} at |x| = {r}"
                        ),
                    };
                }
            }
        }
    }
    HypothesisFinding {
        id: HypothesisId::P1,
        verdict: AuditVerdict::Pass,
        evidence: format!("nonnegative and finite at {checked} sampled points"),
    }
}

fn audit_c1<T: Real>(spec: &ProblemSpec<T>, d: usize) -> HypothesisFinding {
    let mut flagged: Vec<String> = Vec::new();
    for (i, f) in spec.nonlinearities().iter().enumerate() {
        let at_zero = f.eval(&vec![T::zero(); d]);
        if at_zero != T::zero() {
            return HypothesisFinding {
                id: HypothesisId::C1,
                verdict: AuditVerdict::Fail,
                evidence: format!("f_{i}(0,…,0) = {at_zero}, expected 0"),
            };
        }
        // positivity along each axis
        for axis in 0..d {
            for &s in &[0.5_f64, 1.0, 5.0, 10.0] {
                let mut args = vec![T::zero(); d];
                args[axis] = real(s);
                let v = f.eval(&args);
                if !(v >= T::zero()) || !v.is_finite() {
                    return HypothesisFinding {
                        id: HypothesisId::C1,
                        verdict: AuditVerdict::Fail,
                        evidence: format!("f_{i} is {v} at s_{axis} = {s}"),
                    };
                }
                if v == T::zero() {
                    if f.c1_strict() {
                        return HypothesisFinding {
                            id: HypothesisId::C1,
                            verdict: AuditVerdict::Fail,
                            evidence: format!(
                                "f_{i} vanishes at s_{axis} = {s} with other arguments 0"
                            ),
                        };
                    } else if flagged.is_empty() {
                        flagged.push(format!(
                            "f_{i} vanishes off the diagonal (family-level exception, strict positivity waived)"
                        ));
                    }
                }
            }
        }
    }
    if let Some(msg) = flagged.into_iter().next() {
        HypothesisFinding {
            id: HypothesisId::C1,
            verdict: AuditVerdict::Flagged,
            evidence: msg,
        }
    } else {
        HypothesisFinding {
            id: HypothesisId::C1,
            verdict: AuditVerdict::Pass,
            evidence: "f(0) = 0 and positivity hold on the audit lattice".into(),
        }
    }
}

fn audit_c2<T: Real>(spec: &ProblemSpec<T>, d: usize) -> HypothesisFinding {
    let m = lattice_points_per_axis(d);
    let step = real::<T>(10.0 / (m - 1) as f64);
    let slack = real::<T>(MONOTONE_SLACK);
    let mut idx = vec![0usize; d];
    let mut args = vec![T::zero(); d];
    let mut points = 0usize;
    let mut strict = true;
    loop {
        for (k, &i) in idx.iter().enumerate() {
            args[k] = real::<T>(i as f64) * step;
        }
        points += 1;
        for (i, f) in spec.nonlinearities().iter().enumerate() {
            let base = f.eval(&args);
            for axis in 0..d {
                let saved = args[axis];
                args[axis] = saved + step;
                let bumped = f.eval(&args);
                args[axis] = saved;
                if bumped < base - slack {
                    return HypothesisFinding {
                        id: HypothesisId::C2,
                        verdict: AuditVerdict::Fail,
                        evidence: format!(
                            "f_{i} decreases along axis {axis} at {:?}: {base} -> {bumped}",
                            args.iter().map(|v| format!("{v}")).collect::<Vec<_>>()
                        ),
                    };
                }
                if bumped <= base {
                    strict = false;
                }
            }
        }
        // advance the multi-index
        let mut carry = 0;
        loop {
            if carry == d {
                let strictness = if strict {
                    "strictly increasing"
                } else {
                    "nondecreasing (not strict everywhere)"
                };
                return HypothesisFinding {
                    id: HypothesisId::C2,
                    verdict: AuditVerdict::Pass,
                    evidence: format!(
                        "{strictness} on a {m}^{d} lattice over [0,10]^{d} ({points} points)"
                    ),
                };
            }
            idx[carry] += 1;
            if idx[carry] < m {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim3() -> Dimension {
        Dimension::new(3).unwrap()
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(CoefficientFamily::constant(-1.0).is_err());
        assert!(CoefficientFamily::power_decay(1.0, -0.5).is_err());
        assert!(CoefficientFamily::anisotropic_rational(1.0, 1.0, vec![1.0, -4.0, 4.0]).is_err());
        assert!(NonlinearityFamily::power(0.0).is_err());
        assert!(NonlinearityFamily::linear_mix(vec![-1.0]).is_err());
        assert!(NonlinearityFamily::product_root(vec![0.7, 0.7]).is_err());
        assert!(NonlinearityFamily::product_root(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn radial_extremizers_equal_profile() {
        let fams = [
            CoefficientFamily::constant(2.0).unwrap(),
            CoefficientFamily::power_decay(1.5, 4.0).unwrap(),
            CoefficientFamily::rational_decay(1.0, 1.0).unwrap(),
            CoefficientFamily::gaussian(0.7).unwrap(),
            CoefficientFamily::anisotropic_rational(1.0, 2.0, vec![3.0, 3.0, 3.0]).unwrap(),
        ];
        for f in &fams {
            assert!(f.is_radial());
            for t in [0.0, 0.3, 1.0, 7.5] {
                assert_eq!(f.sphere_max(t), f.sphere_min(t));
            }
        }
    }

    #[test]
    fn anisotropic_extremizers() {
        let f = CoefficientFamily::anisotropic_rational(1.0, 1.0, vec![1.0, 4.0, 4.0]).unwrap();
        assert!(!f.is_radial());
        assert!((f.sphere_max(1.0) - 0.5).abs() < 1e-15);
        assert!((f.sphere_min(1.0) - 0.2).abs() < 1e-15);
        assert_eq!(f.sphere_max(0.0), f.sphere_min(0.0));
        assert_eq!(f.sphere_max(0.0), 1.0);
    }

    #[test]
    fn phi_dominates_psi_everywhere() {
        let fams = [
            CoefficientFamily::anisotropic_rational(2.0, 1.5, vec![0.5, 2.0, 8.0]).unwrap(),
            CoefficientFamily::anisotropic_rational(1.0, 0.5, vec![0.0, 1.0, 1.0]).unwrap(),
            CoefficientFamily::power_decay(1.0, 2.0).unwrap(),
        ];
        for f in &fams {
            for i in 0..200 {
                let t = i as f64 * 0.1;
                assert!(f.sphere_max(t) >= f.sphere_min(t));
            }
        }
    }

    #[test]
    fn closed_form_extremizers_match_sphere_sampling() {
        // Quasi-uniform directions on S^2 via the golden-angle spiral.
        let n = 20_000;
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let dirs: Vec<[f64; 3]> = (0..n)
            .map(|k| {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                let rho = (1.0 - z * z).sqrt();
                let th = golden * k as f64;
                [rho * th.cos(), rho * th.sin(), z]
            })
            .collect();
        let fams = [
            CoefficientFamily::anisotropic_rational(1.0, 1.0, vec![1.0, 4.0, 4.0]).unwrap(),
            CoefficientFamily::anisotropic_rational(2.0, 3.0, vec![0.5, 1.0, 6.0]).unwrap(),
            CoefficientFamily::anisotropic_rational(1.0, 0.5, vec![0.0, 2.0, 9.0]).unwrap(),
        ];
        for f in &fams {
            for t in [0.5, 1.0, 3.0] {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for d in &dirs {
                    let x = [d[0] * t, d[1] * t, d[2] * t];
                    let v = f.eval_point(&x);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                let phi = f.sphere_max(t);
                let psi = f.sphere_min(t);
                assert!(hi <= phi + 1e-12, "sampled max exceeded closed form");
                assert!(psi <= lo + 1e-12, "sampled min undercut closed form");
                assert!((phi - hi) / phi < 1e-3, "phi gap {}", (phi - hi) / phi);
                assert!((lo - psi) / psi < 1e-3, "psi gap {}", (lo - psi) / psi);
            }
        }
    }

    #[test]
    fn big_f_closed_forms() {
        let lin = BigF::new(vec![NonlinearityFamily::linear_mix(vec![1.0]).unwrap()]).unwrap();
        assert_eq!(lin.eval(0.0), 0.0);
        assert!((lin.eval(2.0) - 2.0).abs() < 1e-14);
        let pow = BigF::new(vec![NonlinearityFamily::power(2.0).unwrap()]).unwrap();
        assert!((pow.eval(1.0) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn big_f_numeric_matches_parts_integration() {
        let f = BigF::new(vec![NonlinearityFamily::log_growth()]).unwrap();
        // d = 1: F(s) = int_0^s t ln(1+t) dt = (s^2-1)/2 ln(1+s) - s^2/4 + s/2
        let closed = |s: f64| (s * s - 1.0) / 2.0 * (1.0 + s).ln() - s * s / 4.0 + s / 2.0;
        for s in [0.5, 1.0, 4.0, 10.0] {
            let got = f.eval(s);
            assert!(
                ((got - closed(s)) / closed(s)).abs() < 1e-9,
                "s = {s}: {got} vs {}",
                closed(s)
            );
        }
    }

    #[test]
    fn big_f_superadditive_consistency() {
        let f = BigF::new(vec![
            NonlinearityFamily::power(1.5).unwrap(),
            NonlinearityFamily::log_growth(),
        ])
        .unwrap();
        for (a, s) in [(0.5, 2.0), (1.0, 10.0), (3.0, 7.0)] {
            let direct = f.eval(s);
            let split = f.eval(a) + adaptive_trapezoid(&|t| f.diag_sum(t), a, s, 1e-12);
            assert!(
                ((direct - split) / direct).abs() < 1e-10,
                "a = {a}, s = {s}: {direct} vs {split}"
            );
        }
    }

    #[test]
    fn big_f_growth_classes() {
        let g = BigF::new(vec![NonlinearityFamily::power(2.0).unwrap()])
            .unwrap()
            .growth();
        assert_eq!(g, DiagGrowth::PowerLike { exponent: 2.0 });
        let g = BigF::new(vec![
            NonlinearityFamily::log_growth(),
            NonlinearityFamily::power(3.0).unwrap(),
        ])
        .unwrap()
        .growth();
        assert_eq!(g, DiagGrowth::PowerLike { exponent: 3.0 });
        let g = BigF::new(vec![
            NonlinearityFamily::log_growth(),
            NonlinearityFamily::linear_mix(vec![1.0, 1.0]).unwrap(),
        ])
        .unwrap()
        .growth();
        assert_eq!(g, DiagGrowth::LogCorrected);
    }

    #[test]
    fn spec_validation() {
        let spec = ProblemSpec::new(
            dim3(),
            vec![CoefficientFamily::constant(1.0).unwrap()],
            vec![NonlinearityFamily::power(1.0).unwrap()],
            0.5,
        )
        .unwrap();
        assert_eq!(spec.components(), 1);
        assert!(spec.is_radial());

        assert!(ProblemSpec::new(
            dim3(),
            vec![CoefficientFamily::constant(1.0).unwrap()],
            vec![
                NonlinearityFamily::power(1.0).unwrap(),
                NonlinearityFamily::power(1.0).unwrap()
            ],
            0.5,
        )
        .is_err());

        // axis vector arity must match the dimension
        assert!(ProblemSpec::new(
            dim3(),
            vec![CoefficientFamily::anisotropic_rational(1.0, 1.0, vec![1.0, 2.0]).unwrap()],
            vec![NonlinearityFamily::power(1.0).unwrap()],
            0.5,
        )
        .is_err());

        assert!(ProblemSpec::new(
            dim3(),
            vec![CoefficientFamily::constant(1.0).unwrap()],
            vec![NonlinearityFamily::power(1.0).unwrap()],
            0.0,
        )
        .is_err());
    }

    #[test]
    fn audit_passes_clean_spec() {
        let spec = ProblemSpec::new(
            dim3(),
            vec![CoefficientFamily::constant(1.0).unwrap()],
            vec![NonlinearityFamily::power(1.0).unwrap()],
            0.5,
        )
        .unwrap();
        let findings = hypothesis_audit(&spec);
        assert!(findings.iter().all(|f| f.verdict == AuditVerdict::Pass));
    }

    #[test]
    fn audit_flags_product_root() {
        let spec = ProblemSpec::new(
            dim3(),
            vec![
                CoefficientFamily::constant(1.0).unwrap(),
                CoefficientFamily::constant(1.0).unwrap(),
            ],
            vec![
                NonlinearityFamily::product_root(vec![0.5, 0.5]).unwrap(),
                NonlinearityFamily::product_root(vec![0.5, 0.5]).unwrap(),
            ],
            0.5,
        )
        .unwrap();
        let findings = hypothesis_audit(&spec);
        let c1 = findings
            .iter()
            .find(|f| f.id == HypothesisId::C1)
            .unwrap();
        assert_eq!(c1.verdict, AuditVerdict::Flagged);
        let c2 = findings
            .iter()
            .find(|f| f.id == HypothesisId::C2)
            .unwrap();
        assert_eq!(c2.verdict, AuditVerdict::Pass);
    }

    #[test]
    fn audit_fails_constant_nonlinearity() {
        let spec = ProblemSpec::new(
            dim3(),
            vec![CoefficientFamily::constant(1.0).unwrap()],
            vec![NonlinearityFamily::constant(1.0).unwrap()],
            0.5,
        )
        .unwrap();
        let c1 = hypothesis_audit(&spec)
            .into_iter()
            .find(|f| f.id == HypothesisId::C1)
            .unwrap();
        assert_eq!(c1.verdict, AuditVerdict::Fail);
    }

    #[test]
    fn tail_classes() {
        let p = CoefficientFamily::power_decay(1.0, 4.0).unwrap();
        assert_eq!(p.phi_tail(), TailClass::Power { exponent: 4.0 });
        let r = CoefficientFamily::rational_decay(1.0, 1.0).unwrap();
        assert_eq!(r.phi_tail(), TailClass::Power { exponent: 2.0 });
        let g = CoefficientFamily::gaussian(1.0).unwrap();
        assert_eq!(g.phi_tail(), TailClass::Gaussian);
        let z = CoefficientFamily::constant(0.0).unwrap();
        assert_eq!(z.phi_tail(), TailClass::Zero);
        let a = CoefficientFamily::anisotropic_rational(1.0, 1.0, vec![0.0, 4.0, 4.0]).unwrap();
        assert_eq!(a.phi_tail(), TailClass::Power { exponent: 0.0 });
        assert_eq!(a.psi_tail(), TailClass::Power { exponent: 2.0 });
        assert_eq!(a.radial_tail(), None);

        let combined = combine_tails([
            TailClass::Gaussian,
            TailClass::Power { exponent: 3.0 },
            TailClass::Power { exponent: 5.0 },
        ]);
        assert_eq!(combined, TailClass::Power { exponent: 3.0 });
    }

    #[test]
    fn diag_matches_eval_on_equal_arguments() {
        let fams: Vec<NonlinearityFamily<f64>> = vec![
            NonlinearityFamily::power(1.7).unwrap(),
            NonlinearityFamily::linear_mix(vec![0.5, 2.0]).unwrap(),
            NonlinearityFamily::log_growth(),
            NonlinearityFamily::product_root(vec![0.25, 0.5]).unwrap(),
        ];
        for f in &fams {
            for t in [0.0, 0.5, 3.0] {
                let direct = f.eval(&[t, t]);
                let diag = f.diag(t, 2);
                assert!(
                    (direct - diag).abs() <= 1e-12 * (1.0 + direct.abs()),
                    "{f:?} at {t}: {direct} vs {diag}"
                );
            }
        }
    }
}
