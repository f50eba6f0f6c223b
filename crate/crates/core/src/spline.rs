//! Billera-Rose matrices and exact spline space dimensions.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{Face, SimplicialComplex};
use crate::linalg::{Echelon, Limits, Matrix, SparseRow};
use crate::poly::{expand_linear_form_power, graded_dim, monomials_up_to, multiplication_matrix, LinearForm, Poly};
use crate::{Int, Rational};

/// `C^r` splines on a complex.
#[derive(Debug, Clone)]
pub struct SmoothnessProblem {
    pub complex: SimplicialComplex,
    pub r: u32,
}

impl SmoothnessProblem {
    pub fn new(complex: SimplicialComplex, r: u32) -> Self {
        SmoothnessProblem { complex, r }
    }

    /// Number of homogeneous variables after coning.
    pub fn num_vars(&self) -> usize {
        self.complex.dim() + 1
    }
}

/// A matrix `[B | diag(f_1^e, …, f_d^e)]` with a scalar left block `B` and
/// one power of a homogeneous linear form per row. Both the Billera-Rose
/// matrix and the multiderivation matrix have this shape.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicBlockMatrix {
    pub left: Matrix<Int>,
    pub diagonal: Vec<LinearForm>,
    pub exponent: u32,
    pub num_vars: usize,
}

impl SymbolicBlockMatrix {
    pub fn new(left: Matrix<Int>, diagonal: Vec<LinearForm>, exponent: u32, num_vars: usize) -> Result<Self> {
        if left.rows() != diagonal.len() {
            return Err(Error::InvalidParameter(format!(
                "{} rows but {} diagonal forms",
                left.rows(),
                diagonal.len()
            )));
        }
        for f in &diagonal {
            if f.num_vars() != num_vars || !f.is_homogeneous() || f.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "diagonal form {f} must be a nonzero homogeneous form in {num_vars} variables"
                )));
            }
        }
        Ok(SymbolicBlockMatrix {
            left,
            diagonal,
            exponent,
            num_vars,
        })
    }

    pub fn rows(&self) -> usize {
        self.left.rows()
    }

    /// Column count of the symbolic matrix: left block plus one per diagonal form.
    pub fn cols(&self) -> usize {
        self.left.cols() + self.diagonal.len()
    }

    /// Dimension of the assembled degree-`k` matrix: `(rows, cols)`.
    pub fn graded_shape(&self, k: u32) -> (usize, usize) {
        let s = graded_dim(self.num_vars, k as i64);
        let c = graded_dim(self.num_vars, k as i64 - self.exponent as i64);
        (self.rows() * s, self.left.cols() * s + self.rows() * c)
    }

    /// Exact matrix of the degree-`k` slice. Unknowns are the left-block
    /// entries as degree-`k` polynomials followed by one cofactor of degree
    /// `k - exponent` per row (absent when `k < exponent`).
    pub fn graded_matrix(&self, k: u32, limits: &Limits) -> Result<Matrix<Rational>> {
        let (rows, cols) = self.graded_shape(k);
        limits.check(rows, cols)?;
        let mut m = Matrix::zeros(0, cols);
        for row in self.graded_rows(k)? {
            m.push_row(row);
        }
        Ok(m)
    }

    fn graded_rows(&self, k: u32) -> Result<Vec<SparseRow<Rational>>> {
        let s = graded_dim(self.num_vars, k as i64);
        let c = graded_dim(self.num_vars, k as i64 - self.exponent as i64);
        let cofactor_base = self.left.cols() * s;
        let mut out = Vec::with_capacity(self.rows() * s);
        for (j, form) in self.diagonal.iter().enumerate() {
            let mult = if c > 0 {
                let power = expand_linear_form_power(form, self.exponent)?;
                Some(multiplication_matrix(&power, k - self.exponent, k)?)
            } else {
                None
            };
            for t in 0..s {
                let mut row: SparseRow<Rational> = self
                    .left
                    .row(j)
                    .iter()
                    .map(|(a, b)| (a * s + t, Rational::from_integer(b.clone())))
                    .collect();
                if let Some(mult) = &mult {
                    row.extend(mult.row(t).iter().map(|(u, v)| (cofactor_base + j * c + u, v.clone())));
                }
                out.push(row);
            }
        }
        Ok(out)
    }

    /// Kernel dimension of the degree-`k` slice.
    pub fn graded_kernel_dim(&self, k: u32, limits: &Limits) -> Result<usize> {
        let (rows, cols) = self.graded_shape(k);
        limits.check(rows, cols)?;
        let mut echelon: Echelon<Int> = Echelon::new(cols);
        for row in self.graded_rows(k)? {
            echelon.insert(<Rational as crate::linalg::ExactScalar>::integer_row(&row));
        }
        Ok(cols - echelon.rank())
    }
}

/// The Billera-Rose matrix of a smoothness problem, with its row and column labels.
#[derive(Debug, Clone)]
pub struct BilleraRoseMatrix {
    /// Interior (n-1)-faces, one per row.
    pub facets: Vec<Face>,
    /// Cells, one per left-block column.
    pub cells: Vec<Vec<usize>>,
    pub block: SymbolicBlockMatrix,
}

/// Rows are interior facets, the left block is the relative boundary map
/// `∂_n` and the diagonal entry of facet `τ` is `L_τ^{r+1}`.
pub fn billera_rose_matrix(problem: &SmoothnessProblem) -> Result<BilleraRoseMatrix> {
    let k = &problem.complex;
    let boundary = k.boundary_matrix_relative(k.dim())?;
    let forms = boundary
        .row_faces
        .iter()
        .map(|f| k.facet_form(f))
        .collect::<Result<Vec<_>>>()?;
    let left = boundary.matrix.map(|&v| Int::from(v));
    let block = SymbolicBlockMatrix::new(left, forms, problem.r + 1, problem.num_vars())?;
    Ok(BilleraRoseMatrix {
        facets: boundary.row_faces,
        cells: k.cells().to_vec(),
        block,
    })
}

/// `dim C^r(Δ̂)_k`, the kernel dimension of the Billera-Rose matrix in degree `k`.
pub fn spline_dim_graded(problem: &SmoothnessProblem, k: u32, limits: &Limits) -> Result<usize> {
    billera_rose_matrix(problem)?.block.graded_kernel_dim(k, limits)
}

/// `dim C^r_k(Δ)` computed without coning: one polynomial of degree `<= k` in
/// `n` variables per cell, and for every interior facet `τ` between cells
/// `σ, σ'` an explicit cofactor `c_τ` with `p_σ - p_σ' = ℓ_τ^{r+1} c_τ`.
pub fn spline_dim_affine(problem: &SmoothnessProblem, k: u32, limits: &Limits) -> Result<usize> {
    let complex = &problem.complex;
    let n = complex.dim();
    let e = problem.r + 1;
    let basis = monomials_up_to(n, k);
    let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let cofactor_basis = if k >= e { monomials_up_to(n, k - e) } else { Vec::new() };
    let facets = complex.interior_faces(n - 1);
    let s = basis.len();
    let c = cofactor_basis.len();
    let cols = complex.cells().len() * s + facets.len() * c;
    limits.check(facets.len() * s, cols)?;

    let mut echelon: Echelon<Int> = Echelon::new(cols);
    for (j, facet) in facets.iter().enumerate() {
        let owners = complex.cells_of_facet(facet);
        let (a, b) = match owners {
            [a, b] => (*a, *b),
            _ => return Err(Error::InvalidComplex(format!("interior facet {:?} is not shared by two cells", facet.vertex_indices))),
        };
        let affine = complex.facet_form(facet)?.dehomogenize()?;
        let power = Poly::from_affine_form(&affine).pow(e, n);
        // column entries of ℓ^e · m for every cofactor monomial m, grouped by target row
        let mut by_row: Vec<SparseRow<Rational>> = vec![Vec::new(); s];
        for (u, m) in cofactor_basis.iter().enumerate() {
            for (pm, coef) in power.terms() {
                let t = index[&pm.mul(m)];
                by_row[t].push((complex.cells().len() * s + j * c + u, -coef.clone()));
            }
        }
        for (t, extra) in by_row.into_iter().enumerate() {
            let mut row: SparseRow<Rational> = vec![
                (a * s + t, Rational::from_integer(Int::from(1))),
                (b * s + t, Rational::from_integer(Int::from(-1))),
            ];
            row.extend(extra.into_iter().filter(|e| !e.1.is_zero()));
            row.sort_by_key(|e| e.0);
            echelon.insert(<Rational as crate::linalg::ExactScalar>::integer_row(&row));
        }
    }
    Ok(cols - echelon.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::alfeld_split;
    use crate::linalg::{kernel_basis, kernel_dimension};

    fn lim() -> Limits {
        Limits::default()
    }

    fn problem(n: usize, r: u32) -> SmoothnessProblem {
        SmoothnessProblem::new(alfeld_split(n), r)
    }

    #[test]
    fn canonical_two_split_diagonal() {
        let br = billera_rose_matrix(&problem(2, 0)).unwrap();
        let mut forms: Vec<String> = br.block.diagonal.iter().map(|f| f.to_string()).collect();
        forms.sort();
        assert_eq!(forms, vec!["x1 - x2", "x1 - x3", "x2 - x3"]);
        assert_eq!(br.block.exponent, 1);
    }

    #[test]
    fn one_split_has_one_row_and_three_columns() {
        let br = billera_rose_matrix(&problem(1, 2)).unwrap();
        assert_eq!((br.block.rows(), br.block.cols()), (1, 3));
    }

    #[test]
    fn graded_examples() {
        assert_eq!(spline_dim_graded(&problem(2, 1), 3, &lim()).unwrap(), 12);
        assert_eq!(spline_dim_graded(&problem(2, 1), 2, &lim()).unwrap(), 6);
        for n in 1..=3 {
            for r in 0..3 {
                assert_eq!(spline_dim_graded(&problem(n, r), 0, &lim()).unwrap(), 1);
            }
        }
    }

    #[test]
    fn affine_examples() {
        assert_eq!(spline_dim_affine(&problem(2, 0), 1, &lim()).unwrap(), 4);
        assert_eq!(spline_dim_affine(&problem(2, 1), 1, &lim()).unwrap(), 3);
    }

    #[test]
    fn graded_matrix_kernel_matches_fast_path() {
        let p = problem(2, 1);
        let br = billera_rose_matrix(&p).unwrap();
        for k in 0..5 {
            let m = br.block.graded_matrix(k, &lim()).unwrap();
            let dim = kernel_dimension(&m, &lim()).unwrap();
            assert_eq!(dim, br.block.graded_kernel_dim(k, &lim()).unwrap());
            for v in kernel_basis(&m, &lim()).unwrap() {
                assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn constant_tuple_is_a_spline() {
        let p = problem(3, 1);
        let br = billera_rose_matrix(&p).unwrap();
        let m = br.block.graded_matrix(0, &lim()).unwrap();
        let mut v = vec![Rational::zero(); m.cols()];
        for x in v.iter_mut().take(br.cells.len()) {
            *x = Rational::from_integer(Int::from(1));
        }
        assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
    }

    #[test]
    fn affine_and_graded_agree_on_small_grid() {
        for n in 1..=2 {
            for r in 0..3 {
                for k in 0..7 {
                    let p = problem(n, r);
                    assert_eq!(
                        spline_dim_affine(&p, k, &lim()).unwrap(),
                        spline_dim_graded(&p, k, &lim()).unwrap(),
                        "n={n} r={r} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn monotone_in_k_and_r() {
        for r in 0..3 {
            let dims: Vec<usize> = (0..7).map(|k| spline_dim_graded(&problem(2, r), k, &lim()).unwrap()).collect();
            assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        }
        for k in 0..7 {
            let dims: Vec<usize> = (0..4).map(|r| spline_dim_graded(&problem(2, r), k, &lim()).unwrap()).collect();
            assert!(dims.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn too_large_is_reported() {
        let tiny = Limits { max_entries: 100 };
        assert!(matches!(
            spline_dim_graded(&problem(3, 1), 5, &tiny),
            Err(Error::InstanceTooLarge { .. })
        ));
        assert!(matches!(
            spline_dim_affine(&problem(3, 1), 5, &tiny),
            Err(Error::InstanceTooLarge { .. })
        ));
    }
}
