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

//! Entanglement witnesses `W = I − s·(A1 + (A2 + A3)/√2)` over the twelve
//! permutation/sign variants of the observable triple, their expectation
//! values, numerical certification of the separable bound, and family scans.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DEFAULT_HERMITIAN_TOL};
use crate::optimizer::{maximize_box, Angles, OptimizerConfig};
use crate::pauli::{observable_triple, PauliLabel, PauliPermutation, Sign};
use crate::states::{bloch_components, kay_state, kye_state, product_ket, DensityMatrix, Family, ProductState};

/// Largest accepted imaginary part of `Tr(Wρ)`.
pub const IMAGINARY_TOL: f64 = 1e-10;
/// Certification passes when the product-state maximum of the objective is at most `1 + CERTIFY_TOL`.
pub const CERTIFY_TOL: f64 = 1e-6;
/// Allowed gap between trace evaluation and closed form in scans.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessOrigin {
    Family { perm: PauliPermutation, sign: Sign },
    Custom,
}

#[derive(Debug, Clone)]
pub struct Witness {
    mat: ComplexMatrix,
    origin: WitnessOrigin,
    label: String,
}

impl Witness {
    /// Wraps an arbitrary 8x8 Hermitian operator, e.g. a candidate to be certified.
    pub fn custom(mat: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        if mat.dim() != 8 {
            return Err(Error::DimensionMismatch { left: mat.dim(), right: 8 });
        }
        let deviation = mat.hermitian_deviation();
        if deviation > DEFAULT_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation, tol: DEFAULT_HERMITIAN_TOL });
        }
        Ok(Self { mat, origin: WitnessOrigin::Custom, label: label.into() })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn origin(&self) -> WitnessOrigin {
        self.origin
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `<ψ|W|ψ>` for the product state with angles `[θ1, θ2, θ3, φ1, φ2, φ3]`.
    pub fn product_expectation(&self, angles: &Angles) -> f64 {
        let ket = product_ket(angles);
        self.mat.quadratic_form(&ket).expect("8-dimensional ket").re
    }

    /// `1 − <ψ|W|ψ>`; for family members this is evaluated in Bloch coordinates.
    pub fn separable_objective(&self, angles: &Angles) -> f64 {
        match self.origin {
            WitnessOrigin::Family { perm, sign } => angle_objective_at(angles, perm, sign),
            WitnessOrigin::Custom => 1.0 - self.product_expectation(angles),
        }
    }

    fn is_identity_with(&self, want: Sign) -> bool {
        matches!(self.origin, WitnessOrigin::Family { perm, sign } if perm.is_identity() && sign == want)
    }
}

pub fn family_label(perm: PauliPermutation, sign: Sign) -> String {
    match (perm.is_identity(), sign) {
        (true, Sign::Plus) => "W1".to_string(),
        (true, Sign::Minus) => "W2".to_string(),
        _ => format!("W{}{}", perm.code(), sign.symbol()),
    }
}

/// `I − sign·(A1 + (A2 + A3)/√2)` with the triple built from `perm`.
pub fn build_witness(perm: PauliPermutation, sign: Sign) -> Witness {
    let t = observable_triple(perm, Sign::Plus);
    let correlations = t.a2.add(&t.a3).expect("8x8").scale(1.0 / SQRT_2).add(&t.a1).expect("8x8");
    let mat = ComplexMatrix::identity(8).sub(&correlations.scale(sign.value())).expect("8x8");
    Witness { mat, origin: WitnessOrigin::Family { perm, sign }, label: family_label(perm, sign) }
}

/// Six permutations × two signs, ordered by permutation code then `+` before `-`.
pub fn witness_family() -> Vec<Witness> {
    PauliPermutation::all()
        .into_iter()
        .flat_map(|perm| [Sign::Plus, Sign::Minus].map(|sign| build_witness(perm, sign)))
        .collect()
}

/// Resolves `W1`, `W2` or a family code such as `Wxzy-`.
pub fn witness_by_label(label: &str) -> Result<Witness> {
    let unknown = || Error::UnknownWitness(label.to_string());
    let rest = label.strip_prefix(['W', 'w']).ok_or_else(unknown)?;
    match rest {
        "1" => return Ok(build_witness(PauliPermutation::IDENTITY, Sign::Plus)),
        "2" => return Ok(build_witness(PauliPermutation::IDENTITY, Sign::Minus)),
        _ => {}
    }
    if rest.len() != 4 || !rest.is_ascii() {
        return Err(unknown());
    }
    let (code, sign) = rest.split_at(3);
    let perm: PauliPermutation = code.parse().map_err(|_| unknown())?;
    let sign = match sign {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        _ => return Err(unknown()),
    };
    Ok(build_witness(perm, sign))
}

/// `Re Tr(Wρ)`; both operands are Hermitian so the imaginary part must vanish.
pub fn expectation(w: &Witness, rho: &DensityMatrix) -> Result<f64> {
    let tr = w.mat.matmul(rho.matrix())?.trace();
    if tr.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidual(tr.im));
    }
    Ok(tr.re)
}

/// `Tr(W1 ρ_Kay(a)) = 1 − (2√2 + 1)/(a + 1)`, for `a >= 2`.
pub fn closed_form_kay(a: f64) -> f64 {
    1.0 - (2.0 * SQRT_2 + 1.0) / (a + 1.0)
}

/// `Tr(W2 ρ_Kye(b, c)) = −8(√2 − 1)/(6 + b + c)`, for `b, c > 0`, `bc >= 1`.
pub fn closed_form_kye(b: f64, c: f64) -> f64 {
    -8.0 * (SQRT_2 - 1.0) / (6.0 + b + c)
}

/// `sign·(<A1> + (<A2> + <A3>)/√2)` over the product state, in Bloch coordinates.
pub fn angle_objective(p: &ProductState, perm: PauliPermutation, sign: Sign) -> f64 {
    angle_objective_at(&p.angles(), perm, sign)
}

/// As [`angle_objective`] for raw angles `[θ1, θ2, θ3, φ1, φ2, φ3]`; angles outside the box are allowed.
pub fn angle_objective_at(angles: &Angles, perm: PauliPermutation, sign: Sign) -> f64 {
    let r1 = bloch_components(angles[0], angles[3]);
    let r2 = bloch_components(angles[1], angles[4]);
    let r3 = bloch_components(angles[2], angles[5]);
    let idx = |l: PauliLabel| perm.apply(l).bloch_index().expect("non-identity label");
    let (x, y, z) = (idx(PauliLabel::X), idx(PauliLabel::Y), idx(PauliLabel::Z));

    let a1 = r1[z] * r2[z];
    let a2 = r1[x] * (r2[x] * r3[x] - r2[y] * r3[y]);
    let a3 = r1[y] * (r2[x] * r3[y] - r2[y] * r3[x]);
    sign.value() * (a1 + (a2 + a3) / SQRT_2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub witness: String,
    /// Maximum over product states of `1 − Tr(Wρ)`.
    pub max_angle_objective: f64,
    pub min_expectation: f64,
    pub pass: bool,
    pub best_angles: Angles,
    pub evaluations: u64,
    pub converged: bool,
}

/// Maximizes `1 − Tr(Wρ_prod)` over product states; the witness bound holds
/// numerically when that maximum does not exceed `1 + CERTIFY_TOL`.
pub fn certify_witness(w: &Witness, config: &OptimizerConfig) -> Result<Certification> {
    let report = maximize_box(|x: &Angles| w.separable_objective(x), config)?;
    let max = report.best_value;
    Ok(Certification {
        witness: w.label.clone(),
        max_angle_objective: max,
        min_expectation: 1.0 - max,
        pass: max <= 1.0 + CERTIFY_TOL,
        best_angles: report.best_point,
        evaluations: report.evaluations,
        converged: report.converged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionRecord {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub witness: String,
    pub expectation: f64,
    /// `expectation < 0`, with no tolerance band.
    pub detected: bool,
    pub ppt: [bool; 3],
    /// Analytic value when one is known for this witness/family pair.
    pub closed_form: Option<f64>,
}

impl DetectionRecord {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }

    /// `a` for Kay records, `b` for Kye records.
    pub fn primary_param(&self) -> Option<f64> {
        match self.family.as_str() {
            "kay" => self.param("a"),
            "kye" => self.param("b"),
            _ => None,
        }
    }
}

/// Closed form for `(W1, Kay)` and `(W2, Kye)`.
pub fn closed_form_for(w: &Witness, family: &Family) -> Option<f64> {
    match family {
        Family::Kay { a } if w.is_identity_with(Sign::Plus) => Some(closed_form_kay(*a)),
        Family::Kye { b, c } if w.is_identity_with(Sign::Minus) => Some(closed_form_kye(*b, *c)),
        _ => None,
    }
}

pub fn evaluate(w: &Witness, rho: &DensityMatrix, ppt_tol: f64) -> Result<DetectionRecord> {
    let value = expectation(w, rho)?;
    let params = match rho.family() {
        Family::Kay { a } => BTreeMap::from([("a".to_string(), *a)]),
        Family::Kye { b, c } => BTreeMap::from([("b".to_string(), *b), ("c".to_string(), *c)]),
        _ => BTreeMap::new(),
    };
    Ok(DetectionRecord {
        family: rho.family().name().to_string(),
        params,
        witness: w.label.clone(),
        expectation: value,
        detected: value < 0.0,
        ppt: crate::states::is_ppt(rho, ppt_tol)?,
        closed_form: closed_form_for(w, rho.family()),
    })
}

fn checked(record: DetectionRecord) -> Result<DetectionRecord> {
    if let Some(closed) = record.closed_form {
        if (record.expectation - closed).abs() > CLOSED_FORM_TOL {
            return Err(Error::ClosedFormMismatch {
                param: format!("{:?}", record.params),
                trace: record.expectation,
                closed,
            });
        }
    }
    Ok(record)
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
        .collect()
}

/// Evaluates `w` on `ρ_Kay(a)` for `steps` grid points spanning `[a_min, a_max]`.
pub fn scan_kay(a_min: f64, a_max: f64, steps: usize, w: &Witness) -> Result<Vec<DetectionRecord>> {
    if !(a_min.is_finite() && a_max.is_finite()) || a_min < 2.0 || a_min >= a_max {
        return Err(Error::InvalidParameter(format!("need 2 <= a_min < a_max (got {a_min}, {a_max})")));
    }
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("steps must be >= 2 (got {steps})")));
    }
    linspace(a_min, a_max, steps)
        .into_par_iter()
        .map(|a| checked(evaluate(w, &kay_state(a)?, crate::states::PSD_TOL)?))
        .collect()
}

/// How `c` is derived from `b` in a Kye scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CRule {
    Fixed(f64),
    /// `c = 1/b`, the PPT boundary.
    Inverse,
    /// `c = k/b`.
    ScaledInverse(f64),
}

impl CRule {
    pub fn c_for(self, b: f64) -> f64 {
        match self {
            CRule::Fixed(c) => c,
            CRule::Inverse => 1.0 / b,
            CRule::ScaledInverse(k) => k / b,
        }
    }
}

pub fn scan_kye(b_list: &[f64], rule: CRule, w: &Witness) -> Result<Vec<DetectionRecord>> {
    let pairs: Vec<(f64, f64)> = b_list.iter().map(|&b| (b, rule.c_for(b))).collect();
    scan_kye_pairs(&pairs, w)
}

pub fn scan_kye_pairs(pairs: &[(f64, f64)], w: &Witness) -> Result<Vec<DetectionRecord>> {
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("empty (b, c) list".to_string()));
    }
    pairs
        .par_iter()
        .map(|&(b, c)| checked(evaluate(w, &kye_state(b, c)?, crate::states::PSD_TOL)?))
        .collect()
}

/// First adjacent pair of records whose detected flags differ, as
/// `(primary parameter before, primary parameter after)`.
pub fn detection_boundary(records: &[DetectionRecord]) -> Option<(f64, f64)> {
    records
        .windows(2)
        .find(|w| w[0].detected != w[1].detected)
        .and_then(|w| Some((w[0].primary_param()?, w[1].primary_param()?)))
}
