//! Scalar quadrature helpers: adaptive trapezoid refinement for one-off
//! integrals and cumulative curves on composite (linear + geometric) meshes
//! for tail diagnostics up to Λ = 10⁴.

use crate::scalar::{real, Real};

const MAX_DEPTH: u32 = 48;

/// ∫_a^b f via adaptive trapezoid refinement with Richardson correction.
/// Tolerance is relative to the accumulated value, with a tiny absolute floor.
pub fn adaptive_trapezoid<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, rel_tol: T) -> T {
    if !(b > a) {
        return T::zero();
    }
    let fa = f(a);
    let fb = f(b);
    let half = real::<T>(0.5);
    let whole = half * (b - a) * (fa + fb);
    panel(f, a, fa, b, fb, whole, rel_tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn panel<T: Real>(
    f: &impl Fn(T) -> T,
    a: T,
    fa: T,
    b: T,
    fb: T,
    whole: T,
    rel_tol: T,
    depth: u32,
) -> T {
    let half = real::<T>(0.5);
    let m = half * (a + b);
    let fm = f(m);
    let left = half * (m - a) * (fa + fm);
    let right = half * (b - m) * (fm + fb);
    let refined = left + right;
    let diff = refined - whole;
    let scale = refined.abs().max(real(1e-300));
    if depth == 0 || diff.abs() <= rel_tol * scale {
        // one Richardson step on the trapezoid pair
        return refined + diff / real(3.0);
    }
    panel(f, a, fa, m, fm, left, rel_tol, depth - 1)
        + panel(f, m, fm, b, fb, right, rel_tol, depth - 1)
}

/// Nodes for a composite mesh: linear on [a, knee], geometric beyond, with
/// `per_decade` points per factor of 10 up to b.
pub fn composite_nodes<T: Real>(a: T, b: T, linear_cells: usize, per_decade: usize) -> Vec<T> {
    let mut nodes = vec![a];
    let knee = T::one().max(a);
    if a < knee && knee <= b {
        let n = real::<T>(linear_cells as f64);
        for i in 1..=linear_cells {
            nodes.push(a + (knee - a) * real::<T>(i as f64) / n);
        }
    }
    let mut t = *nodes.last().unwrap();
    if t < b {
        let step = real::<T>(10f64.powf(1.0 / per_decade as f64));
        loop {
            t = t * step;
            if t >= b {
                nodes.push(b);
                break;
            }
            nodes.push(t);
        }
    }
    nodes
}

/// Cumulative trapezoid of f over explicit nodes, with linear interpolation
/// between them.
#[derive(Debug, Clone)]
pub struct CumulativeCurve<T> {
    nodes: Vec<T>,
    values: Vec<T>,
    cumulative: Vec<T>,
}

impl<T: Real> CumulativeCurve<T> {
    pub fn build(f: impl Fn(T) -> T, nodes: Vec<T>) -> Self {
        let values: Vec<T> = nodes.iter().map(|&t| f(t)).collect();
        let half = real::<T>(0.5);
        let mut cumulative = Vec::with_capacity(nodes.len());
        let mut acc = T::zero();
        cumulative.push(acc);
        for i in 1..nodes.len() {
            acc = acc + half * (nodes[i] - nodes[i - 1]) * (values[i - 1] + values[i]);
            cumulative.push(acc);
        }
        CumulativeCurve {
            nodes,
            values,
            cumulative,
        }
    }

    pub fn start(&self) -> T {
        self.nodes[0]
    }

    pub fn end(&self) -> T {
        *self.nodes.last().unwrap()
    }

    /// ∫ from the first node to x (clamped to the mesh).
    pub fn integral_to(&self, x: T) -> T {
        if x <= self.nodes[0] {
            return T::zero();
        }
        if x >= self.end() {
            return *self.cumulative.last().unwrap();
        }
        let i = match self
            .nodes
            .binary_search_by(|n| n.partial_cmp(&x).expect("finite nodes"))
        {
            Ok(i) => return self.cumulative[i],
            Err(i) => i,
        };
        let (a, b) = (self.nodes[i - 1], self.nodes[i]);
        let frac = (x - a) / (b - a);
        let fx = self.values[i - 1] + (self.values[i] - self.values[i - 1]) * frac;
        let half = real::<T>(0.5);
        self.cumulative[i - 1] + half * (x - a) * (self.values[i - 1] + fx)
    }

    /// Integrand value at x (linear interpolation).
    pub fn value_at(&self, x: T) -> T {
        if x <= self.nodes[0] {
            return self.values[0];
        }
        if x >= self.end() {
            return *self.values.last().unwrap();
        }
        let i = match self
            .nodes
            .binary_search_by(|n| n.partial_cmp(&x).expect("finite nodes"))
        {
            Ok(i) => return self.values[i],
            Err(i) => i,
        };
        let (a, b) = (self.nodes[i - 1], self.nodes[i]);
        let frac = (x - a) / (b - a);
        self.values[i - 1] + (self.values[i] - self.values[i - 1]) * frac
    }
}

/// The four probe cutoffs Λ = 10¹ … 10⁴.
pub fn probe_lambdas<T: Real>() -> [T; 4] {
    [real(1e1), real(1e2), real(1e3), real(1e4)]
}

/// Tail diagnostics of ∫_lower^∞ h: partial integrals P(Λ) at the probe
/// cutoffs and the least-squares slope of log(Λ·h(Λ)) vs log Λ over the last
/// two decades.
#[derive(Debug, Clone)]
pub struct TailDiagnostics<T> {
    pub lambdas: [T; 4],
    pub partials: [T; 4],
    pub growth_metric: [T; 4],
    pub slope: T,
}

pub fn tail_diagnostics<T: Real>(h: impl Fn(T) -> T, lower: T) -> TailDiagnostics<T> {
    let lambdas = probe_lambdas::<T>();
    let nodes = composite_nodes(lower, lambdas[3], 64, 256);
    let curve = CumulativeCurve::build(&h, nodes);
    let partials = [
        curve.integral_to(lambdas[0]),
        curve.integral_to(lambdas[1]),
        curve.integral_to(lambdas[2]),
        curve.integral_to(lambdas[3]),
    ];
    let growth_metric = [
        lambdas[0] * h(lambdas[0]),
        lambdas[1] * h(lambdas[1]),
        lambdas[2] * h(lambdas[2]),
        lambdas[3] * h(lambdas[3]),
    ];
    // Slope over the last two decades (Lambda = 1e2, 1e3, 1e4). A metric that
    // underflows to zero means the integrand tail is dead: slope -inf.
    let floor = real::<T>(1e-290);
    let slope = if growth_metric[1..].iter().any(|&m| m <= floor || !m.is_finite()) {
        T::neg_infinity()
    } else {
        least_squares_slope(&[
            (lambdas[1].ln(), growth_metric[1].ln()),
            (lambdas[2].ln(), growth_metric[2].ln()),
            (lambdas[3].ln(), growth_metric[3].ln()),
        ])
    };
    TailDiagnostics {
        lambdas,
        partials,
        growth_metric,
        slope,
    }
}

fn least_squares_slope<T: Real>(pts: &[(T, T)]) -> T {
    let n = real::<T>(pts.len() as f64);
    let mut sx = T::zero();
    let mut sy = T::zero();
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for &(x, y) in pts {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adaptive_trapezoid_polynomial() {
        let v = adaptive_trapezoid(&|x: f64| x * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 4.0).abs() < 1e-10);
    }

    #[test]
    fn adaptive_trapezoid_transcendental() {
        let v = adaptive_trapezoid(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn adaptive_trapezoid_empty_interval() {
        assert_eq!(adaptive_trapezoid(&|x: f64| x, 1.0, 1.0, 1e-10), 0.0);
    }

    #[test]
    fn cumulative_curve_tracks_closed_form() {
        let nodes = composite_nodes(0.0f64, 1e4, 64, 256);
        let curve = CumulativeCurve::build(|t| 1.0 / (1.0 + t * t), nodes);
        // integral to x is atan(x)
        for x in [0.5, 10.0, 1e3] {
            let got = curve.integral_to(x);
            assert!(
                (got - x.atan()).abs() < 1e-4,
                "x = {x}: got {got}, want {}",
                x.atan()
            );
        }
    }

    #[test]
    fn slope_identifies_power_tails() {
        // h ~ t^-alpha gives slope 1 - alpha.
        let d = tail_diagnostics(|t: f64| (1.0 + t).powf(-3.0), 0.0);
        assert!((d.slope - (1.0 - 3.0)).abs() < 0.05, "slope {}", d.slope);
        let d = tail_diagnostics(|t: f64| 1.0 / (1.0 + t).sqrt(), 0.0);
        assert!((d.slope - 0.5).abs() < 0.05, "slope {}", d.slope);
    }

    #[test]
    fn slope_of_dead_tail_is_neg_infinity() {
        let d = tail_diagnostics(|t: f64| (-t * t).exp(), 0.0);
        assert!(d.slope == f64::NEG_INFINITY);
    }

    #[test]
    fn partials_are_nondecreasing() {
        let d = tail_diagnostics(|t: f64| 1.0 / (1.0 + t), 0.0);
        assert!(d.partials[0] <= d.partials[1]);
        assert!(d.partials[1] <= d.partials[2]);
        assert!(d.partials[2] <= d.partials[3]);
    }
}
