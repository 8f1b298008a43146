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

//! Pauli matrices, three-qubit Pauli strings and the correlation observables
//! `A1 = Z⊗Z⊗I`, `A2 = X⊗(X⊗X − Y⊗Y)`, `A3 = Y⊗(X⊗Y − Y⊗X)`, optionally with
//! the single-qubit labels permuted and the overall sign flipped.
//!
//! Basis order is `|000>, |001>, ..., |111>` with qubit 1 the most significant bit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub fn code(self) -> char {
        match self {
            PauliLabel::I => 'i',
            PauliLabel::X => 'x',
            PauliLabel::Y => 'y',
            PauliLabel::Z => 'z',
        }
    }

    /// Position of a Bloch component (`X -> 0`, `Y -> 1`, `Z -> 2`); `None` for identity.
    pub fn bloch_index(self) -> Option<usize> {
        match self {
            PauliLabel::I => None,
            PauliLabel::X => Some(0),
            PauliLabel::Y => Some(1),
            PauliLabel::Z => Some(2),
        }
    }
}

pub fn pauli(label: PauliLabel) -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let data = match label {
        PauliLabel::I => vec![one, o, o, one],
        PauliLabel::X => vec![o, one, one, o],
        PauliLabel::Y => vec![o, -i, i, o],
        PauliLabel::Z => vec![one, o, o, -one],
    };
    ComplexMatrix::from_vec(2, data).expect("Pauli matrices are finite 2x2")
}

/// `pauli(l1) ⊗ pauli(l2) ⊗ pauli(l3)`.
pub fn pauli_string(l1: PauliLabel, l2: PauliLabel, l3: PauliLabel) -> ComplexMatrix {
    pauli(l1).kron(&pauli(l2).kron(&pauli(l3)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A bijection of `{X, Y, Z}`, stored as the images of `X`, `Y` and `Z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliPermutation([PauliLabel; 3]);

impl PauliPermutation {
    pub const IDENTITY: Self = Self([PauliLabel::X, PauliLabel::Y, PauliLabel::Z]);

    pub fn new(images: [PauliLabel; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for l in images {
            match l.bloch_index() {
                Some(k) if !seen[k] => seen[k] = true,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "not a permutation of x, y, z: {}",
                        images.iter().map(|l| l.code()).collect::<String>()
                    )))
                }
            }
        }
        Ok(Self(images))
    }

    /// All six permutations in lexicographic order of their codes, identity first.
    pub fn all() -> [Self; 6] {
        use PauliLabel::{X, Y, Z};
        [
            Self([X, Y, Z]),
            Self([X, Z, Y]),
            Self([Y, X, Z]),
            Self([Y, Z, X]),
            Self([Z, X, Y]),
            Self([Z, Y, X]),
        ]
    }

    /// Image of a label; identity maps to itself.
    pub fn apply(self, label: PauliLabel) -> PauliLabel {
        match label {
            PauliLabel::I => PauliLabel::I,
            PauliLabel::X => self.0[0],
            PauliLabel::Y => self.0[1],
            PauliLabel::Z => self.0[2],
        }
    }

    pub fn images(self) -> [PauliLabel; 3] {
        self.0
    }

    /// Three-letter code such as `xzy`.
    pub fn code(self) -> String {
        self.0.iter().map(|l| l.code()).collect()
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl fmt::Debug for PauliPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliPermutation({})", self.code())
    }
}

impl fmt::Display for PauliPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for PauliPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels: Vec<PauliLabel> = s
            .chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'x' => Ok(PauliLabel::X),
                'y' => Ok(PauliLabel::Y),
                'z' => Ok(PauliLabel::Z),
                _ => Err(Error::InvalidParameter(format!("bad permutation code '{s}'"))),
            })
            .collect::<Result<_>>()?;
        let images: [PauliLabel; 3] =
            labels.try_into().map_err(|_| Error::InvalidParameter(format!("bad permutation code '{s}'")))?;
        Self::new(images)
    }
}

#[derive(Debug, Clone)]
pub struct ObservableTriple {
    pub a1: ComplexMatrix,
    pub a2: ComplexMatrix,
    pub a3: ComplexMatrix,
    pub perm: PauliPermutation,
    pub sign: Sign,
}

impl ObservableTriple {
    pub fn as_array(&self) -> [&ComplexMatrix; 3] {
        [&self.a1, &self.a2, &self.a3]
    }
}

pub fn observable_triple(perm: PauliPermutation, sign: Sign) -> ObservableTriple {
    let x = perm.apply(PauliLabel::X);
    let y = perm.apply(PauliLabel::Y);
    let z = perm.apply(PauliLabel::Z);
    let s = sign.value();
    let diff = |a: ComplexMatrix, b: ComplexMatrix| a.sub(&b).expect("8x8 operands").scale(s);

    ObservableTriple {
        a1: pauli_string(z, z, PauliLabel::I).scale(s),
        a2: diff(pauli_string(x, x, x), pauli_string(x, y, y)),
        a3: diff(pauli_string(y, x, y), pauli_string(y, y, x)),
        perm,
        sign,
    }
}
