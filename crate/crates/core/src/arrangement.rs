//! Central hyperplane arrangements, multiderivation modules, Terao's
//! exponents for the braid arrangement, and the matrix-level comparison of
//! splines on the Alfeld split with multiderivations of `A_n`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::binomial;
use crate::geometry::alfeld_split;
use crate::linalg::{Limits, Matrix};
use crate::poly::LinearForm;
use crate::spline::{billera_rose_matrix, SmoothnessProblem, SymbolicBlockMatrix};
use crate::Int;

/// A central arrangement: distinct (up to scaling) homogeneous forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    num_vars: usize,
    forms: Vec<LinearForm>,
}

impl Arrangement {
    /// Normalizes each form and rejects zero, inhomogeneous or proportional forms.
    pub fn new(num_vars: usize, forms: Vec<LinearForm>) -> Result<Self> {
        let mut out: Vec<LinearForm> = Vec::with_capacity(forms.len());
        for (i, f) in forms.into_iter().enumerate() {
            if f.num_vars() != num_vars {
                return Err(Error::InvalidArrangement(format!("form {i} has {} variables", f.num_vars())));
            }
            if !f.is_homogeneous() {
                return Err(Error::InvalidArrangement(format!("form {i} ({f}) is not homogeneous")));
            }
            let f = f
                .normalized()
                .map_err(|_| Error::InvalidArrangement(format!("form {i} is zero")))?;
            if out.contains(&f) {
                return Err(Error::InvalidArrangement(format!("form {i} ({f}) is repeated up to scaling")));
            }
            out.push(f);
        }
        Ok(Arrangement { num_vars, forms: out })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// `A_n`: the forms `x_i - x_j`, `1 <= i < j <= n+1`, in lexicographic pair order.
pub fn braid_arrangement(n: usize) -> Arrangement {
    assert!(n >= 1, "braid arrangement needs n >= 1");
    let forms = (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| LinearForm::difference(n + 1, i, j)))
        .collect();
    Arrangement::new(n + 1, forms).expect("braid forms are distinct")
}

/// `ψ = [δ | diag(l_1^m, …, l_d^m)]` where row `j` of `δ` holds the
/// coefficients of `l_j` (one column per variable).
pub fn multider_matrix(arrangement: &Arrangement, m: u32) -> Result<SymbolicBlockMatrix> {
    multider_matrix_from_forms(arrangement.forms(), arrangement.num_vars(), m)
}

/// Like [`multider_matrix`] but uses the forms exactly as given, without normalization.
pub fn multider_matrix_from_forms(forms: &[LinearForm], num_vars: usize, m: u32) -> Result<SymbolicBlockMatrix> {
    if m == 0 {
        return Err(Error::InvalidParameter("multiplicity must be at least 1".into()));
    }
    // δ rows are cleared of denominators; the cofactor absorbs the scalar
    let mut left = Matrix::zeros(forms.len(), num_vars);
    for (j, f) in forms.iter().enumerate() {
        let denom = crate::Rational::from_integer(crate::scalar::common_denominator(f.coefficients()));
        for (i, c) in f.coefficients().iter().enumerate() {
            left.add_to(j, i, (c * &denom).to_integer());
        }
    }
    SymbolicBlockMatrix::new(left, forms.to_vec(), m, num_vars)
}

/// `dim D^m(A)_k`, including the constant derivations.
pub fn multider_dim(arrangement: &Arrangement, m: u32, k: u32, limits: &Limits) -> Result<usize> {
    multider_matrix(arrangement, m)?.graded_kernel_dim(k, limits)
}

/// Exponents of the free module `D^m(A_n)`, excluding the degree-0 generator
/// `Σ ∂/∂x_i`, which is recorded separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentMultiset {
    pub exponents: Vec<u64>,
    pub constant_derivation: bool,
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", list.join(", "))?;
        if self.constant_derivation {
            write!(f, " + constant derivation in degree 0")?;
        }
        Ok(())
    }
}

/// Terao's exponents: `m` even gives `m(n+1)/2` with multiplicity `n`; `m` odd
/// gives `(m-1)(n+1)/2 + j` for `j = 1..=n`.
pub fn terao_exponents(n: u64, m: u64) -> Result<ExponentMultiset> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParameter("terao exponents need n >= 1 and m >= 1".into()));
    }
    let exponents = if m.is_multiple_of(2) {
        vec![halve_exact(m * (n + 1)); n as usize]
    } else {
        let base = halve_exact((m - 1) * (n + 1));
        (1..=n).map(|j| base + j).collect()
    };
    Ok(ExponentMultiset {
        exponents,
        constant_derivation: true,
    })
}

fn halve_exact(v: u64) -> u64 {
    assert!(v.is_multiple_of(2), "exponent numerator {v} must be even");
    v / 2
}

/// `C(k+n, n) + Σ_d C(n - d + k, n)` over the Terao exponents `d`.
pub fn terao_dim(n: u64, m: u64, k: u64) -> Result<u64> {
    let exps = terao_exponents(n, m)?;
    let n_i = n as i64;
    let k_i = k as i64;
    let mut total = binomial(k_i + n_i, n)?;
    for d in exps.exponents {
        total = total
            .checked_add(binomial(n_i - d as i64 + k_i, n)?)
            .ok_or(Error::Overflow("terao_dim"))?;
    }
    Ok(total)
}

/// Certificate that `φ` (Billera-Rose, canonical `AS(Δ_n)`) and `ψ`
/// (multiderivations of `A_n`, `m = r + 1`) agree up to signed row pairing and
/// column relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// `row_pairing[i]`: row of `ψ` matched with row `i` of `φ`.
    pub row_pairing: Vec<usize>,
    /// `column_permutation[c]`: column of `δ` matched with cell column `c` of `∂_n`.
    pub column_permutation: Vec<usize>,
    /// Sign applied to row `i` of `φ`.
    pub row_signs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoFailure {
    ShapeMismatch { phi: (usize, usize), psi: (usize, usize) },
    UnmatchedRow { row: usize, form: String },
    NoColumnPermutation,
    Build(Error),
}

impl fmt::Display for IsoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoFailure::ShapeMismatch { phi, psi } => {
                write!(f, "left blocks differ in shape: phi {phi:?} vs psi {psi:?}")
            }
            IsoFailure::UnmatchedRow { row, form } => {
                write!(f, "phi row {row} has diagonal form {form} with no counterpart in psi")
            }
            IsoFailure::NoColumnPermutation => {
                write!(f, "no column permutation and row signs make the left blocks equal")
            }
            IsoFailure::Build(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IsoFailure {}

impl IsoWitness {
    /// Re-applies the witness: diagonal forms must coincide after pairing and
    /// `sign_i * φ_left[i][c] == ψ_left[pair_i][perm_c]` for all entries.
    pub fn verify(&self, phi: &SymbolicBlockMatrix, psi: &SymbolicBlockMatrix) -> bool {
        let rows = phi.rows();
        let cols = phi.left.cols();
        if psi.rows() != rows || psi.left.cols() != cols || phi.exponent != psi.exponent {
            return false;
        }
        if self.row_pairing.len() != rows || self.row_signs.len() != rows || self.column_permutation.len() != cols {
            return false;
        }
        if !is_permutation(&self.row_pairing) || !is_permutation(&self.column_permutation) {
            return false;
        }
        if self.row_signs.iter().any(|s| s.abs() != 1) {
            return false;
        }
        let transformed = apply_witness(&phi.left, self);
        let paired = psi.left.select_rows(&self.row_pairing);
        if transformed != paired {
            return false;
        }
        (0..rows).all(|i| {
            matches!(
                (phi.diagonal[i].normalized(), psi.diagonal[self.row_pairing[i]].normalized()),
                (Ok(a), Ok(b)) if a == b
            )
        })
    }

    /// Rows of `φ` whose sign is flipped.
    pub fn flipped_rows(&self) -> Vec<usize> {
        (0..self.row_signs.len()).filter(|&i| self.row_signs[i] < 0).collect()
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "row pairing (phi -> psi): {:?}", self.row_pairing)?;
        writeln!(f, "row signs: {:?}", self.row_signs)?;
        write!(f, "column permutation (cell -> variable): {:?}", self.column_permutation)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// `φ_left` with row `i` scaled by `sign_i` and columns relabeled.
fn apply_witness(left: &Matrix<Int>, w: &IsoWitness) -> Matrix<Int> {
    let mut m = left.permute_columns(&w.column_permutation);
    for (i, &s) in w.row_signs.iter().enumerate() {
        if s < 0 {
            m.scale_row(i, &-Int::one());
        }
    }
    m
}

/// Searches for a witness that `phi` and `psi` coincide up to signed row
/// pairing (rows matched by their normalized diagonal form) and a column
/// permutation of the left blocks.
pub fn match_block_matrices(
    phi: &SymbolicBlockMatrix,
    psi: &SymbolicBlockMatrix,
) -> std::result::Result<IsoWitness, IsoFailure> {
    let shape = |b: &SymbolicBlockMatrix| (b.rows(), b.left.cols());
    if shape(phi) != shape(psi) || phi.exponent != psi.exponent {
        return Err(IsoFailure::ShapeMismatch {
            phi: shape(phi),
            psi: shape(psi),
        });
    }
    let psi_forms: Vec<LinearForm> = psi
        .diagonal
        .iter()
        .map(|f| f.normalized())
        .collect::<Result<_>>()
        .map_err(IsoFailure::Build)?;
    let mut row_pairing = Vec::with_capacity(phi.rows());
    for (i, f) in phi.diagonal.iter().enumerate() {
        let f = f.normalized().map_err(IsoFailure::Build)?;
        match psi_forms.iter().position(|g| *g == f) {
            Some(j) if !row_pairing.contains(&j) => row_pairing.push(j),
            _ => {
                return Err(IsoFailure::UnmatchedRow {
                    row: i,
                    form: f.to_string(),
                })
            }
        }
    }

    let cols = phi.left.cols();
    let phi_dense = phi.left.to_dense();
    let psi_dense = psi.left.select_rows(&row_pairing).to_dense();
    let mut perm = vec![usize::MAX; cols];
    let mut used = vec![false; cols];
    if !assign_columns(0, &phi_dense, &psi_dense, &mut perm, &mut used) {
        return Err(IsoFailure::NoColumnPermutation);
    }
    let row_signs = row_signs_for(&phi_dense, &psi_dense, &perm).ok_or(IsoFailure::NoColumnPermutation)?;
    Ok(IsoWitness {
        row_pairing,
        column_permutation: perm,
        row_signs,
    })
}

/// Backtracking over column assignments, pruning whenever some row can no
/// longer be matched up to sign.
fn assign_columns(col: usize, phi: &[Vec<Int>], psi: &[Vec<Int>], perm: &mut [usize], used: &mut [bool]) -> bool {
    let cols = perm.len();
    if col == cols {
        return row_signs_for(phi, psi, perm).is_some();
    }
    for target in 0..cols {
        if used[target] {
            continue;
        }
        perm[col] = target;
        used[target] = true;
        if partial_consistent(phi, psi, perm, col + 1) && assign_columns(col + 1, phi, psi, perm, used) {
            return true;
        }
        used[target] = false;
        perm[col] = usize::MAX;
    }
    false
}

fn partial_consistent(phi: &[Vec<Int>], psi: &[Vec<Int>], perm: &[usize], assigned: usize) -> bool {
    phi.iter().zip(psi).all(|(a, b)| {
        let mut sign: Option<bool> = None;
        for c in 0..assigned {
            let x = &a[c];
            let y = &b[perm[c]];
            if x.is_zero() != y.is_zero() {
                return false;
            }
            if x.is_zero() {
                continue;
            }
            let same = *x == *y;
            if !same && *x != -y.clone() {
                return false;
            }
            match sign {
                None => sign = Some(same),
                Some(s) if s != same => return false,
                _ => {}
            }
        }
        true
    })
}

fn row_signs_for(phi: &[Vec<Int>], psi: &[Vec<Int>], perm: &[usize]) -> Option<Vec<i64>> {
    phi.iter()
        .zip(psi)
        .map(|(a, b)| {
            let permuted: Vec<Int> = {
                let mut v = vec![Int::zero(); a.len()];
                for (c, x) in a.iter().enumerate() {
                    v[perm[c]] = x.clone();
                }
                v
            };
            if permuted == *b {
                Some(1)
            } else if permuted.iter().map(|x| -x.clone()).collect::<Vec<_>>() == *b {
                Some(-1)
            } else {
                None
            }
        })
        .collect()
}

/// Builds `φ` for the canonical `AS(Δ_n)` and `ψ` for `A_n` with `m = r + 1`
/// and matches them.
pub fn iso_check(n: usize, r: u32) -> std::result::Result<IsoWitness, IsoFailure> {
    let (phi, psi) = iso_matrices(n, r).map_err(IsoFailure::Build)?;
    match_block_matrices(&phi, &psi)
}

/// The pair `(φ, ψ)` compared by [`iso_check`].
pub fn iso_matrices(n: usize, r: u32) -> Result<(SymbolicBlockMatrix, SymbolicBlockMatrix)> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let phi = billera_rose_matrix(&SmoothnessProblem::new(alfeld_split(n), r))?.block;
    let psi = multider_matrix(&braid_arrangement(n), r + 1)?;
    Ok((phi, psi))
}
