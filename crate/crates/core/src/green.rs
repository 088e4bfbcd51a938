//! The radial Green operator G[g](r) = ∫₀ʳ t^{1-N} ∫₀ᵗ s^{N-1} g(s) ds dt and
//! its inner cumulative integral.
//!
//! The inner integral uses a product-trapezoid rule: g is interpolated
//! linearly on each cell and the moment ∫ s^{N-1}·(linear) is integrated
//! exactly. Expanding in the cell-local variable gives weights that are sums
//! of nonnegative terms, so the rule is positivity- and monotonicity-
//! preserving, linear in g, exact for linear g, and free of the cancellation
//! that a naive (b^N - a^N) evaluation would suffer on fine grids.

use crate::error::{Error, Result};
use crate::grid::{Dimension, RadialFunction};
use crate::scalar::{powi, real, Real};

/// Per-cell weights w_a, w_b with ∫_a^b s^{N-1} L(s) ds = w_a g(a) + w_b g(b)
/// for the linear interpolant L of g.
fn cell_weights<T: Real>(a: T, b: T, dim: u32) -> (T, T) {
    let h = b - a;
    let m = dim - 1; // exponent of the weight s^m
    let mut wa = T::zero();
    let mut wb = T::zero();
    // (a + h u)^m = sum_j C(m,j) a^(m-j) h^j u^j, u in [0,1];
    // int u^j (1-u) du = 1/((j+1)(j+2)), int u^(j+1) du = 1/(j+2).
    let mut coeff = powi(a, m); // C(m,j) * a^(m-j) * h^j, built incrementally
    for j in 0..=m {
        let jp1 = real::<T>((j + 1) as f64);
        let jp2 = real::<T>((j + 2) as f64);
        wa = wa + coeff / (jp1 * jp2);
        wb = wb + coeff / jp2;
        if j < m {
            // advance C(m,j) a^(m-j) h^j  ->  C(m,j+1) a^(m-j-1) h^(j+1)
            if a > T::zero() {
                coeff = coeff * real::<T>((m - j) as f64) / jp1 * h / a;
            } else {
                // a = 0: only the j = m term survives.
                coeff = if j + 1 == m { powi(h, m) } else { T::zero() };
            }
        }
    }
    (wa * h, wb * h)
}

/// Cumulative inner integral I(r_i) = ∫₀^{r_i} s^{N-1} g(s) ds, one forward pass.
pub fn cumulative_inner<T: Real>(
    g: &RadialFunction<T>,
    dim: Dimension,
) -> Result<RadialFunction<T>> {
    if g.is_blow_up_trace() {
        return Err(Error::NonFiniteData(
            "cannot integrate a blow-up trace".into(),
        ));
    }
    let grid = g.grid().clone();
    let nodes = grid.nodes();
    let v = g.values();
    let mut out = Vec::with_capacity(v.len());
    let mut acc = T::zero();
    out.push(acc);
    for i in 0..v.len() - 1 {
        let (wa, wb) = cell_weights(nodes[i], nodes[i + 1], dim.get());
        acc = acc + wa * v[i] + wb * v[i + 1];
        out.push(acc);
    }
    RadialFunction::new(grid, out)
}

/// G[g] sampled on g's grid. Requires g ≥ 0; the t = 0 endpoint of the outer
/// integrand takes its analytic limit 0 (I(t) = O(t^N) kills the t^{1-N}).
pub fn green_apply<T: Real>(g: &RadialFunction<T>, dim: Dimension) -> Result<RadialFunction<T>> {
    if let Some(i) = g.values().iter().position(|&v| v < T::zero()) {
        return Err(Error::NegativeData(format!(
            "green_apply requires nonnegative samples, node {i} is {}",
            g.values()[i]
        )));
    }
    let inner = cumulative_inner(g, dim)?;
    let grid = g.grid().clone();
    let nodes = grid.nodes();
    let half = real::<T>(0.5);
    let mut q_prev = T::zero(); // limit of I(t)/t^(N-1) at t = 0
    let mut acc = T::zero();
    let mut out = Vec::with_capacity(nodes.len());
    out.push(acc);
    for i in 1..nodes.len() {
        let q = inner.values()[i] / powi(nodes[i], dim.get() - 1);
        acc = acc + half * (nodes[i] - nodes[i - 1]) * (q_prev + q);
        out.push(acc);
        q_prev = q;
    }
    RadialFunction::new(grid, out)
}

/// Radial derivative of w = c + G[g]: w'(r) = r^{1-N} I(r) with w'(0) = 0.
pub fn green_derivative<T: Real>(
    g: &RadialFunction<T>,
    dim: Dimension,
) -> Result<RadialFunction<T>> {
    let inner = cumulative_inner(g, dim)?;
    let grid = g.grid().clone();
    let nodes = grid.nodes();
    let mut out = Vec::with_capacity(nodes.len());
    out.push(T::zero());
    for i in 1..nodes.len() {
        out.push(inner.values()[i] / powi(nodes[i], dim.get() - 1));
    }
    RadialFunction::new(grid, out)
}

/// Discrete radial Laplacian (r^{N-1} w')' / r^{N-1} by conservative
/// finite volumes. Interior nodes only; the two endpoint samples copy their
/// neighbors and should not be asserted on.
pub fn discrete_radial_laplacian<T: Real>(
    w: &RadialFunction<T>,
    dim: Dimension,
) -> Result<RadialFunction<T>> {
    let grid = w.grid().clone();
    let nodes = grid.nodes();
    let v = w.values();
    let n = nodes.len();
    if n < 3 {
        return Err(Error::InvalidGrid("need at least 3 nodes".into()));
    }
    let half = real::<T>(0.5);
    let m = dim.get() - 1;
    let mut out = vec![T::zero(); n];
    for i in 1..n - 1 {
        let r_minus = half * (nodes[i - 1] + nodes[i]);
        let r_plus = half * (nodes[i] + nodes[i + 1]);
        let flux_minus = powi(r_minus, m) * (v[i] - v[i - 1]) / (nodes[i] - nodes[i - 1]);
        let flux_plus = powi(r_plus, m) * (v[i + 1] - v[i]) / (nodes[i + 1] - nodes[i]);
        let cell = half * (nodes[i + 1] - nodes[i - 1]);
        out[i] = (flux_plus - flux_minus) / (powi(nodes[i], m) * cell);
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    RadialFunction::new(grid, out)
}
