// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Deterministic derivative-free maximization over the angle box
//! `θ ∈ [0, π]³ × φ ∈ [0, 2π]³`.
//!
//! A coarse scan (full tensor grid, or a Halton point set once the grid would
//! exceed [`MAX_COARSE_POINTS`]) seeds a coordinate-wise golden-section ascent
//! from the best few candidates.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[θ1, θ2, θ3, φ1, φ2, φ3]`.
pub type Angles = [f64; 6];

pub const BOX_UPPER: Angles = [PI, PI, PI, 2.0 * PI, 2.0 * PI, 2.0 * PI];
pub const MAX_COARSE_POINTS: usize = 1_000_000;
pub const REFINE_STARTS: usize = 5;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const HALTON_BASES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub grid_points_per_axis: usize,
    pub refine_iterations: usize,
    pub tolerance: f64,
    /// Offset into the Halton sequence; unused when the full grid fits.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { grid_points_per_axis: 9, refine_iterations: 200, tolerance: 1e-8, seed: 0 }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_axis < 3 {
            return Err(Error::InvalidParameter(format!(
                "grid_points_per_axis must be >= 3 (got {})",
                self.grid_points_per_axis
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be > 0 (got {})", self.tolerance)));
        }
        Ok(())
    }

    fn full_grid_size(&self) -> Option<usize> {
        self.grid_points_per_axis.checked_pow(6).filter(|&n| n <= MAX_COARSE_POINTS)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumReport {
    pub best_value: f64,
    pub best_point: Angles,
    pub evaluations: u64,
    /// Step size of the winning ascent fell below the tolerance.
    pub converged: bool,
    /// Best value after the coarse scan.
    pub coarse_value: f64,
    /// Per start: value after each refinement cycle, beginning with the coarse value.
    pub refinement_trace: Vec<Vec<f64>>,
}

fn grid_point(index: usize, n: usize) -> Angles {
    let mut out = [0.0; 6];
    let mut rem = index;
    for axis in (0..6).rev() {
        let k = rem % n;
        rem /= n;
        out[axis] = BOX_UPPER[axis] * k as f64 / (n - 1) as f64;
    }
    out
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

fn halton_point(index: u64) -> Angles {
    let mut out = [0.0; 6];
    for axis in 0..6 {
        out[axis] = BOX_UPPER[axis] * radical_inverse(index, HALTON_BASES[axis]);
    }
    out
}

struct Counted<'a, F> {
    f: &'a F,
    evaluations: u64,
}

impl<F: Fn(&Angles) -> f64> Counted<'_, F> {
    fn eval(&mut self, x: &Angles) -> f64 {
        self.evaluations += 1;
        (self.f)(x)
    }
}

/// Maximizes a finite objective over the angle box.
pub fn maximize_box<F>(objective: F, config: &OptimizerConfig) -> Result<OptimumReport>
where
    F: Fn(&Angles) -> f64 + Sync,
{
    config.validate()?;
    let n = config.grid_points_per_axis;

    let points: Box<dyn Fn(usize) -> Angles + Sync> = match config.full_grid_size() {
        Some(_) => Box::new(move |i| grid_point(i, n)),
        None => {
            let seed = config.seed;
            Box::new(move |i| halton_point(seed.wrapping_add(i as u64 + 1)))
        }
    };
    let count = config.full_grid_size().unwrap_or(MAX_COARSE_POINTS);

    let values: Vec<f64> = (0..count).into_par_iter().map(|i| objective(&points(i))).collect();

    // Top candidates ordered by value, ties broken by index.
    let mut top: Vec<(f64, usize)> = Vec::with_capacity(REFINE_STARTS + 1);
    for (i, &v) in values.iter().enumerate() {
        if top.len() == REFINE_STARTS && v <= top[REFINE_STARTS - 1].0 {
            continue;
        }
        let pos = top.iter().position(|&(tv, _)| v > tv).unwrap_or(top.len());
        top.insert(pos, (v, i));
        top.truncate(REFINE_STARTS);
    }

    let mut counter = Counted { f: &objective, evaluations: count as u64 };
    let base_step: Angles = BOX_UPPER.map(|u| u / (n - 1) as f64);
    let coarse_value = top[0].0;

    let mut best: Option<(f64, Angles, bool)> = None;
    let mut refinement_trace = Vec::with_capacity(top.len());
    for &(value, index) in &top {
        let start = points(index);
        let (v, x, converged, trace) = ascend(&mut counter, start, value, base_step, config);
        refinement_trace.push(trace);
        if best.as_ref().is_none_or(|(bv, _, _)| v > *bv) {
            best = Some((v, x, converged));
        }
    }
    let (best_value, best_point, converged) = best.expect("at least one coarse point");

    Ok(OptimumReport {
        best_value,
        best_point,
        evaluations: counter.evaluations,
        converged,
        coarse_value,
        refinement_trace,
    })
}

/// Coordinate-wise golden-section ascent within a shrinking trust box.
fn ascend<F: Fn(&Angles) -> f64>(
    counter: &mut Counted<'_, F>,
    mut x: Angles,
    mut fx: f64,
    mut step: Angles,
    config: &OptimizerConfig,
) -> (f64, Angles, bool, Vec<f64>) {
    let tol = config.tolerance;
    let mut trace = vec![fx];
    let mut converged = false;
    for _ in 0..config.refine_iterations {
        let before = fx;
        for axis in 0..6 {
            let lo = (x[axis] - step[axis]).max(0.0);
            let hi = (x[axis] + step[axis]).min(BOX_UPPER[axis]);
            let (t, ft) = golden_section(counter, &x, axis, lo, hi, tol);
            if ft > fx {
                x[axis] = t;
                fx = ft;
            }
        }
        trace.push(fx);
        if fx - before < tol {
            for s in &mut step {
                *s *= 0.5;
            }
        }
        if step.iter().all(|&s| s < tol) {
            converged = true;
            break;
        }
    }
    (fx, x, converged, trace)
}

fn golden_section<F: Fn(&Angles) -> f64>(
    counter: &mut Counted<'_, F>,
    x: &Angles,
    axis: usize,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut probe = *x;
    let mut at = |t: f64, c: &mut Counted<'_, F>| {
        probe[axis] = t;
        c.eval(&probe)
    };
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = at(c, counter);
    let mut fd = at(d, counter);
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = at(c, counter);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = at(d, counter);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
