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

//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! An `N x N` Hermitian matrix `A = R + iI` is embedded as the real symmetric
//! `2N x 2N` matrix `[[R, -I], [I, R]]`. Each eigenvalue of `A` appears twice
//! in the embedding, and an embedded eigenvector `[u; w]` maps back to the
//! complex eigenvector `u + iw`.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const REL_OFF_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`; unit norm.
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianEigen {
    /// `max_k ||A v_k - lambda_k v_k||_2`.
    pub fn max_residual(&self, a: &ComplexMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&lambda, v)| {
                let av = a.mat_vec(v).expect("eigenvector length matches matrix");
                av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }
}

struct Symmetric {
    n: usize,
    a: Vec<f64>,
}

impl Symmetric {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    fn off_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.at(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    fn norm(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

fn embed(m: &ComplexMatrix) -> Symmetric {
    let n = m.dim();
    let size = 2 * n;
    let mut a = vec![0.0; size * size];
    for i in 0..n {
        for j in 0..n {
            // Symmetrise so rounding-level asymmetry in the input cannot bias the sweep.
            let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
            a[i * size + j] = z.re;
            a[(i + n) * size + (j + n)] = z.re;
            a[i * size + (j + n)] = -z.im;
            a[(i + n) * size + j] = z.im;
        }
    }
    Symmetric { n: size, a }
}

pub(super) fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let mut s = embed(m);
    let size = s.n;
    let mut v = vec![0.0; size * size];
    for i in 0..size {
        v[i * size + i] = 1.0;
    }

    let threshold = REL_OFF_TOL * s.norm();
    let mut sweeps = 0;
    loop {
        let off = s.off_norm();
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..size - 1 {
            for q in p + 1..size {
                rotate(&mut s, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&i, &j| s.at(i, i).total_cmp(&s.at(j, j)).then(i.cmp(&j)));

    let n = m.dim();
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for &k in order.iter().step_by(2) {
        values.push(s.at(k, k));
        vectors.push((0..n).map(|i| Complex64::new(v[i * size + k], v[(i + n) * size + k])).collect());
    }
    Ok(HermitianEigen { values, vectors })
}

fn rotate(s: &mut Symmetric, v: &mut [f64], p: usize, q: usize) {
    let n = s.n;
    let apq = s.at(p, q);
    if apq == 0.0 {
        return;
    }
    let theta = (s.at(q, q) - s.at(p, p)) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let sn = t * c;

    for k in 0..n {
        let akp = s.a[k * n + p];
        let akq = s.a[k * n + q];
        s.a[k * n + p] = c * akp - sn * akq;
        s.a[k * n + q] = sn * akp + c * akq;
    }
    for k in 0..n {
        let apk = s.a[p * n + k];
        let aqk = s.a[q * n + k];
        s.a[p * n + k] = c * apk - sn * aqk;
        s.a[q * n + k] = sn * apk + c * aqk;
    }
    s.a[p * n + q] = 0.0;
    s.a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - sn * vkq;
        v[k * n + q] = sn * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let e = hermitian_eigen(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, 1-i], [1+i, 3]] has eigenvalues 1 and 4.
        let m = ComplexMatrix::from_vec(
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, -1.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 4.0).abs() < 1e-14);
        assert!(e.max_residual(&m) < 1e-13);
    }
}
