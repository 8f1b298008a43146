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

//! Three-qubit density matrices: the Kay and Kye families, pure product
//! states on the Bloch sphere, and partial transposition.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DEFAULT_HERMITIAN_TOL};

pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Slack on the `bc >= 1` constraint so that `c = 1/b` is accepted for every `b`.
const KYE_PRODUCT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Kay { a: f64 },
    Kye { b: f64, c: f64 },
    Product { state: ProductState },
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Kay { .. } => "kay",
            Family::Kye { .. } => "kye",
            Family::Product { .. } => "product",
            Family::Custom => "custom",
        }
    }
}

/// An 8x8 Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    family: Family,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, family: Family) -> Result<Self> {
        if mat.dim() != 8 {
            return Err(Error::DimensionMismatch { left: mat.dim(), right: 8 });
        }
        let deviation = mat.hermitian_deviation();
        if deviation > DEFAULT_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation, tol: DEFAULT_HERMITIAN_TOL });
        }
        let tr = mat.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::NotADensityMatrix(format!("trace {tr} differs from 1")));
        }
        let min = mat.min_eigenvalue(DEFAULT_HERMITIAN_TOL)?;
        if min < -PSD_TOL {
            return Err(Error::NotADensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat, family })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.mat.hermitian_eigenvalues(DEFAULT_HERMITIAN_TOL)
    }

    pub fn partial_transpose(&self, qubit: usize) -> Result<ComplexMatrix> {
        partial_transpose(&self.mat, qubit)
    }

    /// Smallest eigenvalue of the partial transpose on each qubit.
    pub fn pt_min_eigenvalues(&self) -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for (q, slot) in out.iter_mut().enumerate() {
            *slot = self.partial_transpose(q + 1)?.min_eigenvalue(DEFAULT_HERMITIAN_TOL)?;
        }
        Ok(out)
    }
}

fn symmetric_8x8(diagonal: [f64; 8], couplings: [(usize, usize, f64); 4], norm: f64) -> ComplexMatrix {
    let mut data = [0.0; 64];
    for (i, d) in diagonal.iter().enumerate() {
        data[i * 8 + i] = d / norm;
    }
    for (i, j, v) in couplings {
        data[i * 8 + j] = v / norm;
        data[j * 8 + i] = v / norm;
    }
    ComplexMatrix::from_real(8, &data).expect("finite entries")
}

/// Kay's family, valid for `a >= 2`.
pub fn kay_state(a: f64) -> Result<DensityMatrix> {
    if !a.is_finite() || a < 2.0 {
        return Err(Error::InvalidParameter(format!("a must be >= 2 (got {a})")));
    }
    let mat = symmetric_8x8(
        [4.0 + a, a, a, a, a, a, a, 4.0 + a],
        [(0, 7, 2.0), (1, 6, 2.0), (2, 5, -2.0), (3, 4, 2.0)],
        8.0 + 8.0 * a,
    );
    DensityMatrix::new(mat, Family::Kay { a })
}

/// Kye's family, valid for `b, c > 0` with `bc >= 1`.
pub fn kye_state(b: f64, c: f64) -> Result<DensityMatrix> {
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::InvalidParameter(format!("b must be > 0 (got {b})")));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!("c must be > 0 (got {c})")));
    }
    if b * c < 1.0 - KYE_PRODUCT_SLACK {
        return Err(Error::InvalidParameter(format!("b*c must be >= 1 (got {})", b * c)));
    }
    let mat = symmetric_8x8(
        [1.0, 1.0, 1.0, b, c, 1.0, 1.0, 1.0],
        [(0, 7, -1.0), (1, 6, -1.0), (2, 5, 1.0), (3, 4, -1.0)],
        6.0 + b + c,
    );
    DensityMatrix::new(mat, Family::Kye { b, c })
}

/// Polar angle `theta` in `[0, π]` and azimuth `phi` in `[0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    theta: f64,
    phi: f64,
}

impl BlochVector {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!("theta must lie in [0, pi] (got {theta})")));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!("phi must lie in [0, 2pi] (got {phi})")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(x, y, z) = (sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn components(&self) -> [f64; 3] {
        bloch_components(self.theta, self.phi)
    }
}

pub(crate) fn bloch_components(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// `(cos(θ/2), e^{iφ} sin(θ/2))`.
pub fn single_qubit_ket(v: &BlochVector) -> [Complex64; 2] {
    ket_from_angles(v.theta, v.phi)
}

pub(crate) fn ket_from_angles(theta: f64, phi: f64) -> [Complex64; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductState {
    pub qubits: [BlochVector; 3],
}

impl ProductState {
    pub fn new(q1: BlochVector, q2: BlochVector, q3: BlochVector) -> Self {
        Self { qubits: [q1, q2, q3] }
    }

    /// From the optimizer layout `[θ1, θ2, θ3, φ1, φ2, φ3]`.
    pub fn from_angles(angles: &[f64; 6]) -> Result<Self> {
        Ok(Self::new(
            BlochVector::new(angles[0], angles[3])?,
            BlochVector::new(angles[1], angles[4])?,
            BlochVector::new(angles[2], angles[5])?,
        ))
    }

    pub fn angles(&self) -> [f64; 6] {
        let [a, b, c] = self.qubits;
        [a.theta, b.theta, c.theta, a.phi, b.phi, c.phi]
    }

    pub fn ket(&self) -> [Complex64; 8] {
        product_ket(&self.angles())
    }
}

/// Three-qubit product ket for angles `[θ1, θ2, θ3, φ1, φ2, φ3]`; no range check.
pub(crate) fn product_ket(angles: &[f64; 6]) -> [Complex64; 8] {
    let k1 = ket_from_angles(angles[0], angles[3]);
    let k2 = ket_from_angles(angles[1], angles[4]);
    let k3 = ket_from_angles(angles[2], angles[5]);
    let mut out = [Complex64::new(0.0, 0.0); 8];
    for (idx, slot) in out.iter_mut().enumerate() {
        *slot = k1[idx >> 2] * k2[(idx >> 1) & 1] * k3[idx & 1];
    }
    out
}

pub fn product_density(p: &ProductState) -> DensityMatrix {
    let ket = p.ket();
    let mat = ComplexMatrix::outer(&ket, &ket).expect("equal lengths");
    DensityMatrix { mat, family: Family::Product { state: *p } }
}

/// Seeded stream of Haar-random pure product states.
#[derive(Debug, Clone)]
pub struct ProductSampler {
    rng: ChaCha8Rng,
}

impl ProductSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn bloch(&mut self) -> BlochVector {
        let cos_theta: f64 = 2.0 * self.rng.random::<f64>() - 1.0;
        let phi = 2.0 * PI * self.rng.random::<f64>();
        BlochVector { theta: cos_theta.clamp(-1.0, 1.0).acos(), phi }
    }
}

impl Iterator for ProductSampler {
    type Item = ProductState;

    fn next(&mut self) -> Option<ProductState> {
        Some(ProductState::new(self.bloch(), self.bloch(), self.bloch()))
    }
}

/// First state of `ProductSampler::new(seed)`.
pub fn random_product_state(seed: u64) -> ProductState {
    ProductSampler::new(seed).next().expect("sampler is infinite")
}

/// Transposes the indices of one qubit (1, 2 or 3) of an 8x8 operator.
///
/// For three qubits, transposing one qubit equals transposing the other two
/// up to a full transpose, so the spectra of the three single-qubit partial
/// transposes cover every bipartition.
pub fn partial_transpose(m: &ComplexMatrix, qubit: usize) -> Result<ComplexMatrix> {
    if !(1..=3).contains(&qubit) {
        return Err(Error::InvalidQubit(qubit));
    }
    if m.dim() != 8 {
        return Err(Error::DimensionMismatch { left: m.dim(), right: 8 });
    }
    let bit = 1 << (3 - qubit);
    ComplexMatrix::from_fn(8, |i, j| {
        let (bi, bj) = (i & bit, j & bit);
        let si = (i & !bit) | bj;
        let sj = (j & !bit) | bi;
        m.get(si, sj)
    })
}

/// Per-qubit PPT flags: `min eig(PT_q(rho)) >= -tol`.
pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<[bool; 3]> {
    Ok(rho.pt_min_eigenvalues()?.map(|v| v >= -tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{pauli, PauliLabel};

    fn ghz() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut ket = [Complex64::new(0.0, 0.0); 8];
        ket[0] = Complex64::new(s, 0.0);
        ket[7] = Complex64::new(s, 0.0);
        DensityMatrix::new(ComplexMatrix::outer(&ket, &ket).unwrap(), Family::Custom).unwrap()
    }

    fn sorted_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn kay_entries_and_spectrum() {
        let rho = kay_state(2.0).unwrap();
        assert!((rho.matrix().get(0, 0).re - 0.25).abs() < 1e-15);
        assert!((rho.matrix().get(0, 7).re - 2.0 / 24.0).abs() < 1e-15);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
        sorted_close(
            &rho.eigenvalues().unwrap(),
            &[0.0, 0.0, 0.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0],
            1e-12,
        );
        assert!(rho.matrix().min_eigenvalue(1e-10).unwrap().abs() < 1e-12);
    }

    #[test]
    fn kay_rejects_small_a() {
        assert!(matches!(kay_state(1.5), Err(Error::InvalidParameter(_))));
        assert!(kay_state(f64::NAN).is_err());
    }

    #[test]
    fn kye_entries() {
        let rho = kye_state(1.0, 1.0).unwrap();
        let m = rho.matrix();
        assert!((m.get(0, 0).re - 0.125).abs() < 1e-15);
        assert!((m.get(3, 3).re - 0.125).abs() < 1e-15);
        assert!((m.get(3, 4).re + 0.125).abs() < 1e-15);
        assert!(m.is_hermitian(0.0));
        assert!(m.min_eigenvalue(1e-10).unwrap().abs() < 1e-12);
        let t = kye_state(2.0, 0.5).unwrap().matrix().trace();
        assert!((t.re - 1.0).abs() < 1e-15 && t.im == 0.0);
    }

    #[test]
    fn kye_rejects_invalid() {
        assert!(kye_state(0.0, 2.0).is_err());
        assert!(kye_state(2.0, -1.0).is_err());
        assert!(kye_state(0.5, 0.5).is_err());
        for b in [0.3, 1.0 / 3.0, 0.7, 7.0, 1e-3] {
            assert!(kye_state(b, 1.0 / b).is_ok(), "b = {b}");
        }
    }

    #[test]
    fn family_invariants_on_grids() {
        for k in 0..=20 {
            let a = 2.0 + 0.1 * k as f64;
            let rho = kay_state(a).unwrap();
            assert_eq!(is_ppt(&rho, 1e-10).unwrap(), [true; 3], "a = {a}");
        }
        for b in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let rho = kye_state(b, 1.0 / b).unwrap();
            assert_eq!(is_ppt(&rho, 1e-10).unwrap(), [true; 3], "b = {b}");
            assert!(kye_state(b, 2.0 / b).is_ok());
        }
    }

    #[test]
    fn ket_examples() {
        let north = single_qubit_ket(&BlochVector::new(0.0, 1.3).unwrap());
        assert_eq!(north[0], Complex64::new(1.0, 0.0));
        assert!(north[1].norm() == 0.0);
        assert!((BlochVector::new(PI, 0.7).unwrap().components()[2] + 1.0).abs() < 1e-15);
        let eq = BlochVector::new(PI / 2.0, 0.0).unwrap().components();
        assert!((eq[0] - 1.0).abs() < 1e-15 && eq[1].abs() < 1e-15 && eq[2].abs() < 1e-15);
    }

    #[test]
    fn ket_expectations_match_bloch_components() {
        for (k, p) in ProductSampler::new(3).take(200).enumerate() {
            let v = p.qubits[k % 3];
            let ket = single_qubit_ket(&v);
            let r = v.components();
            for (idx, label) in [PauliLabel::X, PauliLabel::Y, PauliLabel::Z].into_iter().enumerate() {
                let e = pauli(label).quadratic_form(&ket).unwrap();
                assert!((e.re - r[idx]).abs() < 1e-12 && e.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bloch_ranges_enforced() {
        assert!(BlochVector::new(-0.1, 0.0).is_err());
        assert!(BlochVector::new(0.0, 7.0).is_err());
        assert!(BlochVector::new(PI, 2.0 * PI).is_ok());
    }

    #[test]
    fn product_density_examples() {
        let z = BlochVector::new(0.0, 0.0).unwrap();
        let p = ProductState::new(z, z, z);
        let mut want = [0.0; 8];
        want[0] = 1.0;
        assert!(product_density(&p).matrix().max_abs_diff(&ComplexMatrix::diag(&want)).unwrap() < 1e-15);

        let flipped = ProductState::new(BlochVector::new(PI, 0.0).unwrap(), z, z);
        let mut want = [0.0; 8];
        want[4] = 1.0;
        assert!(product_density(&flipped).matrix().max_abs_diff(&ComplexMatrix::diag(&want)).unwrap() < 1e-15);

        for p in ProductSampler::new(11).take(50) {
            let rho = product_density(&p);
            let m = rho.matrix();
            assert!(m.matmul(m).unwrap().max_abs_diff(m).unwrap() < 1e-14);
            assert!((m.trace().re - 1.0).abs() < 1e-14);
            assert!(DensityMatrix::new(m.clone(), Family::Custom).is_ok());
        }
    }

    #[test]
    fn sampler_is_deterministic_and_unbiased() {
        assert_eq!(random_product_state(42), random_product_state(42));
        assert_ne!(random_product_state(42), random_product_state(43));

        let n = 100_000;
        let mut sum_z = 0.0;
        for p in ProductSampler::new(2024).take(n) {
            for q in p.qubits {
                let [x, y, z] = q.components();
                assert!((x * x + y * y + z * z - 1.0).abs() < 1e-12);
            }
            sum_z += p.qubits[0].components()[2];
        }
        assert!((sum_z / n as f64).abs() < 5.0 / (n as f64).sqrt());
    }

    #[test]
    fn partial_transpose_examples() {
        let diag = DensityMatrix::new(ComplexMatrix::diag(&[0.125; 8]), Family::Custom).unwrap();
        for q in 1..=3 {
            assert_eq!(&diag.partial_transpose(q).unwrap(), diag.matrix());
        }
        let g = ghz();
        for q in 1..=3 {
            let min = g.partial_transpose(q).unwrap().min_eigenvalue(1e-10).unwrap();
            assert!((min + 0.5).abs() < 1e-12, "qubit {q}: {min}");
        }
        assert_eq!(is_ppt(&g, 1e-10).unwrap(), [false; 3]);
        assert!(matches!(g.partial_transpose(0), Err(Error::InvalidQubit(0))));
        assert!(matches!(g.partial_transpose(4), Err(Error::InvalidQubit(4))));
        assert!(partial_transpose(&ComplexMatrix::identity(4), 1).is_err());
    }

    #[test]
    fn partial_transpose_on_qubit_moves_expected_entry() {
        // |000><100| under PT on qubit 1 becomes |100><000|.
        let mut data = vec![Complex64::new(0.0, 0.0); 64];
        data[4] = Complex64::new(1.0, 0.0);
        let m = ComplexMatrix::from_vec(8, data).unwrap();
        let pt = partial_transpose(&m, 1).unwrap();
        assert_eq!(pt.get(4, 0), Complex64::new(1.0, 0.0));
        assert_eq!(pt.get(0, 4), Complex64::new(0.0, 0.0));
        // Qubit 3 leaves it alone.
        assert_eq!(partial_transpose(&m, 3).unwrap(), m);
    }

    #[test]
    fn ppt_claims() {
        assert_eq!(is_ppt(&kay_state(2.0).unwrap(), 1e-10).unwrap(), [true; 3]);
        assert_eq!(is_ppt(&kye_state(1.0, 1.0).unwrap(), 1e-10).unwrap(), [true; 3]);
    }

    #[test]
    fn density_constructor_rejects_bad_input() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(8), Family::Custom).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(4).scale(0.25), Family::Custom).is_err());
        let neg = ComplexMatrix::diag(&[0.5, 0.5, 0.5, -0.5, 0.0, 0.0, 0.0, 0.0]);
        assert!(DensityMatrix::new(neg, Family::Custom).is_err());
    }
}
