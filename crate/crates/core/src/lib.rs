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

//! Three-qubit entanglement witnesses built from Pauli correlations, the
//! Kay and Kye families of bound entangled states, and numerical
//! certification of the witnesses' separable bound over product states.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`] dense complex matrices and a Jacobi Hermitian eigensolver,
//! * [`pauli`] Pauli matrices, three-qubit Pauli strings and the observable triples,
//! * [`states`] density matrices, Bloch-sphere product states and partial transposition,
//! * [`optimizer`] deterministic box-constrained maximization over six angles,
//! * [`witness`] witness construction, expectations, certification and parameter scans.

pub mod error;
pub mod matrix;
pub mod optimizer;
pub mod pauli;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianEigen, DEFAULT_HERMITIAN_TOL};
pub use num_complex::Complex64;
pub use optimizer::{maximize_box, Angles, OptimizerConfig, OptimumReport};
pub use pauli::{observable_triple, pauli, pauli_string, ObservableTriple, PauliLabel, PauliPermutation, Sign};
pub use states::{
    is_ppt, kay_state, kye_state, partial_transpose, product_density, random_product_state, single_qubit_ket,
    BlochVector, DensityMatrix, Family, ProductSampler, ProductState,
};
pub use witness::{
    angle_objective, angle_objective_at, build_witness, certify_witness, closed_form_for, closed_form_kay,
    closed_form_kye, detection_boundary, evaluate, expectation, family_label, linspace, scan_kay, scan_kye,
    scan_kye_pairs, witness_by_label, witness_family, CRule, Certification, DetectionRecord, Witness, WitnessOrigin,
};
