//! Uniform sample grids and the sampled series that live on them.

use crate::error::{Error, Result};

/// Relative tolerance used when comparing two grids.
pub const GRID_MATCH_TOL: f64 = 1e-9;

/// A uniform grid `start + n·step`, `n = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    step: f64,
    count: usize,
}

impl Grid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() {
            return Err(Error::Grid(format!("non-finite grid (start={start}, step={step})")));
        }
        if step <= 0.0 {
            return Err(Error::Grid(format!("grid step must be positive, got {step}")));
        }
        if count == 0 {
            return Err(Error::Grid("grid must have at least one sample".into()));
        }
        Ok(Grid { start, step, count })
    }

    /// Grid of `count` samples centred on the origin: `start = −(count/2)·step`.
    pub fn centered(step: f64, count: usize) -> Result<Self> {
        Grid::new(-((count / 2) as f64) * step, step, count)
    }

    #[inline]
    pub fn start(&self) -> f64 {
        self.start
    }

    #[inline]
    pub fn step(&self) -> f64 {
        self.step
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn at(&self, n: usize) -> f64 {
        self.start + n as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.at(self.count - 1)
    }

    /// Width covered by the samples, `count·step`.
    pub fn span(&self) -> f64 {
        self.count as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |n| self.at(n))
    }

    /// Same count, and start/step agree to [`GRID_MATCH_TOL`] relative to the step.
    pub fn matches(&self, other: &Grid) -> bool {
        self.count == other.count
            && (self.step - other.step).abs() <= GRID_MATCH_TOL * self.step.max(other.step)
            && (self.start - other.start).abs() <= GRID_MATCH_TOL * self.step.max(other.step) * (1.0 + self.count as f64)
    }

    pub fn ensure_matches(&self, other: &Grid, what: &str) -> Result<()> {
        if self.matches(other) {
            Ok(())
        } else {
            Err(Error::Shape(format!("{what}: grid {self:?} does not match {other:?}")))
        }
    }

    /// Index `k` with `start + k·step = 0`, if the origin lies on the sample lattice.
    ///
    /// The index may fall outside `0..count`.
    pub fn origin_index(&self) -> Option<i64> {
        let k = -self.start / self.step;
        let r = k.round();
        if (k - r).abs() <= 1e-9 * (1.0 + k.abs()) {
            Some(r as i64)
        } else {
            None
        }
    }
}

/// Samples of some quantity on a uniform [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled<T> {
    grid: Grid,
    samples: Vec<T>,
}

impl<T> Sampled<T> {
    pub fn new(grid: Grid, samples: Vec<T>) -> Result<Self> {
        if samples.len() != grid.count() {
            return Err(Error::Shape(format!(
                "{} samples supplied for a grid of {} points",
                samples.len(),
                grid.count()
            )));
        }
        Ok(Sampled { grid, samples })
    }

    pub fn from_fn(grid: Grid, f: impl FnMut(f64) -> T) -> Self {
        let samples = grid.points().map(f).collect();
        Sampled { grid, samples }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    #[inline]
    pub fn samples_mut(&mut self) -> &mut [T] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Sampled<U> {
        Sampled { grid: self.grid, samples: self.samples.iter().map(f).collect() }
    }

    /// Pointwise combination of two series on matching grids.
    pub fn zip_with<U, V>(&self, other: &Sampled<U>, mut f: impl FnMut(&T, &U) -> V) -> Result<Sampled<V>> {
        self.grid.ensure_matches(&other.grid, "pointwise operation")?;
        Ok(Sampled {
            grid: self.grid,
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| f(a, b)).collect(),
        })
    }
}
