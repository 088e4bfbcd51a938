//! Radial grids on [0, R_max] and scalar functions sampled on them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Space dimension N ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be at least 3, got {n}"
            )));
        }
        Ok(Dimension(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

/// How grid nodes are spaced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpacingPolicy<T> {
    Uniform,
    /// Geometric interval growth away from the origin, ratio in (1, 1.05].
    Graded { ratio: T },
}

/// Mesh 0 = r₀ < r₁ < … < r_n = R_max with per-node trapezoid weights for
/// plain dr-integration.
#[derive(Debug, Clone)]
pub struct RadialGrid<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    policy: SpacingPolicy<T>,
}

/// Smallest admissible number of intervals.
pub const MIN_INTERVALS: usize = 16;

/// Largest admissible grading ratio.
pub const MAX_GRADING_RATIO: f64 = 1.05;

impl<T: Real> RadialGrid<T> {
    /// Uniform grid with `intervals` cells on [0, r_max].
    pub fn uniform(r_max: T, intervals: usize) -> Result<Self> {
        if !(r_max > T::zero()) || !r_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "r_max must be positive and finite, got {r_max}"
            )));
        }
        if intervals < MIN_INTERVALS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_INTERVALS} intervals, got {intervals}"
            )));
        }
        let n = real::<T>(intervals as f64);
        let nodes: Vec<T> = (0..=intervals)
            .map(|i| r_max * real::<T>(i as f64) / n)
            .collect();
        Self::from_parts(nodes, SpacingPolicy::Uniform)
    }

    /// Geometrically graded grid, denser near the origin.
    pub fn graded(r_max: T, intervals: usize, ratio: T) -> Result<Self> {
        if !(ratio > T::one()) || ratio > real(MAX_GRADING_RATIO) {
            return Err(Error::InvalidParameter(format!(
                "grading ratio must lie in (1, {MAX_GRADING_RATIO}], got {ratio}"
            )));
        }
        if !(r_max > T::zero()) || !r_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "r_max must be positive and finite, got {r_max}"
            )));
        }
        if intervals < MIN_INTERVALS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_INTERVALS} intervals, got {intervals}"
            )));
        }
        // First interval h0 with h0 (ratio^n - 1)/(ratio - 1) = r_max.
        let n = intervals as i32;
        let h0 = r_max * (ratio - T::one()) / (ratio.powi(n) - T::one());
        let mut nodes = Vec::with_capacity(intervals + 1);
        let mut r = T::zero();
        let mut h = h0;
        nodes.push(T::zero());
        for i in 0..intervals {
            if i + 1 == intervals {
                r = r_max; // absorb roundoff so the last node is exact
            } else {
                r = r + h;
            }
            nodes.push(r);
            h = h * ratio;
        }
        Self::from_parts(nodes, SpacingPolicy::Graded { ratio })
    }

    /// Builds a grid from explicit nodes (r₀ must be 0, nodes strictly increasing).
    pub fn from_nodes(nodes: Vec<T>) -> Result<Self> {
        Self::from_parts(nodes, SpacingPolicy::Uniform)
    }

    fn from_parts(nodes: Vec<T>, policy: SpacingPolicy<T>) -> Result<Self> {
        if nodes.len() < MIN_INTERVALS + 1 {
            return Err(Error::InvalidGrid(format!(
                "need at least {} nodes, got {}",
                MIN_INTERVALS + 1,
                nodes.len()
            )));
        }
        if nodes[0] != T::zero() {
            return Err(Error::InvalidGrid("first node must be exactly 0".into()));
        }
        for w in nodes.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::InvalidGrid(
                    "nodes must be finite and strictly increasing".into(),
                ));
            }
        }
        let mut weights = vec![T::zero(); nodes.len()];
        let half = real::<T>(0.5);
        for i in 0..nodes.len() - 1 {
            let h = nodes[i + 1] - nodes[i];
            weights[i] += half * h;
            weights[i + 1] += half * h;
        }
        Ok(RadialGrid {
            nodes,
            weights,
            policy,
        })
    }

    #[inline]
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    pub fn r_max(&self) -> T {
        *self.nodes.last().unwrap()
    }

    #[inline]
    pub fn policy(&self) -> SpacingPolicy<T> {
        self.policy
    }

    /// Per-node trapezoid weights for ∫₀^{R_max} · dr.
    #[inline]
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn max_spacing(&self) -> T {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(T::zero(), T::max)
    }

    /// Trapezoid integral of nodal samples over the whole grid.
    pub fn integrate(&self, values: &[T]) -> T {
        assert_eq!(values.len(), self.nodes.len(), "sample count mismatch");
        self.weights
            .iter()
            .zip(values)
            .fold(T::zero(), |acc, (&w, &v)| acc + w * v)
    }

    /// Index of the node closest to `r`.
    pub fn nearest_node(&self, r: T) -> usize {
        let mut best = 0;
        let mut dist = T::infinity();
        for (i, &x) in self.nodes.iter().enumerate() {
            let d = (x - r).abs();
            if d < dist {
                dist = d;
                best = i;
            }
        }
        best
    }
}

/// Scalar radial quantity sampled at every grid node.
#[derive(Debug, Clone)]
pub struct RadialFunction<T> {
    grid: Arc<RadialGrid<T>>,
    values: Vec<T>,
    blow_up_trace: bool,
}

impl<T: Real> RadialFunction<T> {
    /// Finite samples, one per node.
    pub fn new(grid: Arc<RadialGrid<T>>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData(format!(
                "sample at node {i} (r = {}) is not finite",
                grid.nodes()[i]
            )));
        }
        Ok(RadialFunction {
            grid,
            values,
            blow_up_trace: false,
        })
    }

    /// Trajectory that overflowed: non-finite samples allowed past the blow-up node.
    pub fn blow_up_trace(grid: Arc<RadialGrid<T>>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(RadialFunction {
            grid,
            values,
            blow_up_trace: true,
        })
    }

    pub fn from_fn(grid: Arc<RadialGrid<T>>, f: impl Fn(T) -> T) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(grid, values)
    }

    pub fn constant(grid: Arc<RadialGrid<T>>, c: T) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![c; n])
    }

    #[inline]
    pub fn grid(&self) -> &Arc<RadialGrid<T>> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn is_blow_up_trace(&self) -> bool {
        self.blow_up_trace
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid.nodes() == other.grid.nodes()
    }

    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::neg_infinity(), |a, &b| a.max(b))
    }

    pub fn min_value(&self) -> T {
        self.values.iter().fold(T::infinity(), |a, &b| a.min(b))
    }

    /// Sup-norm distance to another sampling on the same grid.
    pub fn sup_diff(&self, other: &Self) -> T {
        assert_eq!(self.len(), other.len(), "sample count mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    /// True when samples never decrease by more than `tol` from node to node.
    pub fn is_nondecreasing(&self, tol: T) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] - tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid64(r_max: f64, n: usize) -> Arc<RadialGrid<f64>> {
        Arc::new(RadialGrid::uniform(r_max, n).unwrap())
    }

    #[test]
    fn dimension_rejects_low_n() {
        assert!(Dimension::new(2).is_err());
        assert_eq!(Dimension::new(3).unwrap().get(), 3);
    }

    #[test]
    fn uniform_grid_shape() {
        let g = RadialGrid::uniform(2.0, 20).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g.nodes()[0], 0.0);
        assert_eq!(g.r_max(), 2.0);
    }

    #[test]
    fn rejects_too_few_intervals() {
        assert!(RadialGrid::uniform(1.0, 15).is_err());
        assert!(RadialGrid::uniform(1.0, 16).is_ok());
    }

    #[test]
    fn quad_weights_reproduce_r_max() {
        for g in [
            RadialGrid::uniform(7.5, 33).unwrap(),
            RadialGrid::graded(7.5, 64, 1.03).unwrap(),
        ] {
            let total: f64 = g.weights().iter().sum();
            assert!((total - 7.5).abs() / 7.5 < 1e-12);
        }
    }

    #[test]
    fn graded_grid_is_denser_near_origin() {
        let g = RadialGrid::graded(10.0, 100, 1.05).unwrap();
        let h_first = g.nodes()[1] - g.nodes()[0];
        let h_last = g.nodes()[100] - g.nodes()[99];
        assert!(h_first < h_last);
        assert_eq!(g.r_max(), 10.0);
        for w in g.nodes().windows(2) {
            let ratio = (w[1] - w[0]) / h_first;
            assert!(ratio < 1.05f64.powi(101));
        }
    }

    #[test]
    fn graded_ratio_bounds() {
        assert!(RadialGrid::graded(1.0, 32, 1.06).is_err());
        assert!(RadialGrid::graded(1.0, 32, 1.0).is_err());
        assert!(RadialGrid::graded(1.0, 32, 1.05).is_ok());
    }

    #[test]
    fn from_nodes_validates_ordering() {
        let mut nodes: Vec<f64> = (0..=20).map(|i| i as f64).collect();
        assert!(RadialGrid::from_nodes(nodes.clone()).is_ok());
        nodes[5] = nodes[6];
        assert!(RadialGrid::from_nodes(nodes.clone()).is_err());
        nodes[5] = 5.0;
        nodes[0] = 0.5;
        assert!(RadialGrid::from_nodes(nodes).is_err());
    }

    #[test]
    fn radial_function_rejects_non_finite() {
        let g = grid64(1.0, 16);
        let mut v = vec![1.0; 17];
        v[3] = f64::NAN;
        assert!(RadialFunction::new(g.clone(), v.clone()).is_err());
        assert!(RadialFunction::blow_up_trace(g, v).is_ok());
    }

    #[test]
    fn integrate_constant() {
        let g = grid64(3.0, 30);
        let one = vec![1.0; g.len()];
        assert!((g.integrate(&one) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn nearest_node_picks_closest() {
        let g = grid64(1.0, 20);
        assert_eq!(g.nearest_node(0.0), 0);
        assert_eq!(g.nearest_node(0.52), 10);
        assert_eq!(g.nearest_node(2.0), 20);
    }
}
