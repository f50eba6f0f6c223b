//! Ideals generated by powers of linear forms and the per-degree homology of
//! the chain complex `R/J` over interior faces.
//!
//! The degree-`k` slice of `S/I` is realized on the pivot complement of the
//! ideal's echelon form: monomials that are not pivot columns form the
//! quotient basis, and the normal form of any polynomial is its projection
//! onto those coordinates along the ideal.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{Face, SimplicialComplex};
use crate::linalg::{rank, Echelon, ExactScalar, Limits, Matrix, SparseRow};
use crate::poly::{expand_linear_form_power, graded_dim, multiplication_matrix, GradedPolySpace, LinearForm};
use crate::{Int, Rational};

/// `⟨g_1^e, …, g_t^e⟩` for distinct homogeneous forms `g_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerIdeal {
    generators: Vec<LinearForm>,
    exponent: u32,
    num_vars: usize,
}

impl PowerIdeal {
    pub fn new(generators: Vec<LinearForm>, exponent: u32, num_vars: usize) -> Result<Self> {
        let mut normalized: Vec<LinearForm> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.num_vars() != num_vars || !g.is_homogeneous() {
                return Err(Error::InvalidParameter(format!(
                    "generator {g} is not a homogeneous form in {num_vars} variables"
                )));
            }
            let g = g.normalized()?;
            if normalized.contains(&g) {
                return Err(Error::InvalidParameter(format!("generator {g} is repeated up to scaling")));
            }
            normalized.push(g);
        }
        Ok(PowerIdeal {
            generators: normalized,
            exponent,
            num_vars,
        })
    }

    pub fn generators(&self) -> &[LinearForm] {
        &self.generators
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

/// The degree-`k` slice of `S/I` (of `S` itself when `ideal` is `None`).
#[derive(Debug, Clone)]
pub struct QuotientSlice {
    space: GradedPolySpace,
    echelon: Echelon<Int>,
    /// Monomial index -> quotient coordinate, for non-pivot monomials.
    coordinate: Vec<Option<usize>>,
    dim: usize,
}

impl QuotientSlice {
    pub fn new(ideal: Option<&PowerIdeal>, num_vars: usize, k: u32, limits: &Limits) -> Result<Self> {
        let space = GradedPolySpace::new(num_vars, k);
        let mut echelon = Echelon::new(space.dim());
        if let Some(ideal) = ideal {
            if ideal.num_vars() != num_vars {
                return Err(Error::InvalidParameter("ideal lives in a different ring".into()));
            }
            if k >= ideal.exponent() {
                let source = k - ideal.exponent();
                let per_gen = graded_dim(num_vars, source as i64);
                limits.check(ideal.generators().len() * per_gen, space.dim())?;
                for g in ideal.generators() {
                    let power = expand_linear_form_power(g, ideal.exponent())?;
                    let m = multiplication_matrix(&power, source, k)?.transpose();
                    for row in m.row_iter() {
                        echelon.insert(Rational::integer_row(row));
                    }
                }
            }
        }
        let mut coordinate = vec![None; space.dim()];
        let mut dim = 0;
        for (i, slot) in coordinate.iter_mut().enumerate() {
            if !echelon.is_pivot(i) {
                *slot = Some(dim);
                dim += 1;
            }
        }
        Ok(QuotientSlice {
            space,
            echelon,
            coordinate,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the ideal slice.
    pub fn ideal_dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn space(&self) -> &GradedPolySpace {
        &self.space
    }

    /// Monomial indices forming the quotient basis, in coordinate order.
    pub fn basis_monomials(&self) -> Vec<usize> {
        (0..self.space.dim()).filter(|&i| self.coordinate[i].is_some()).collect()
    }

    /// Quotient coordinates of the monomial with index `m`.
    pub fn normal_form(&self, m: usize) -> SparseRow<Rational> {
        if let Some(c) = self.coordinate[m] {
            return vec![(c, Rational::from_integer(Int::from(1)))];
        }
        self.echelon
            .reduce(&[(m, Rational::from_integer(Int::from(1)))])
            .into_iter()
            .map(|(i, v)| (self.coordinate[i].expect("reduced onto non-pivots"), v))
            .collect()
    }
}

/// Dimension of the degree-`k` slice of the ideal.
pub fn ideal_graded_dim(ideal: &PowerIdeal, k: u32, limits: &Limits) -> Result<usize> {
    Ok(QuotientSlice::new(Some(ideal), ideal.num_vars(), k, limits)?.ideal_dim())
}

/// `dim (S/I)_k`.
pub fn quotient_graded_dim(ideal: &PowerIdeal, k: u32, limits: &Limits) -> Result<usize> {
    Ok(QuotientSlice::new(Some(ideal), ideal.num_vars(), k, limits)?.dim())
}

/// Hilbert function of `S/I` in degrees `0..=max_degree`.
pub fn quotient_hilbert_function(ideal: &PowerIdeal, max_degree: u32, limits: &Limits) -> Result<Vec<usize>> {
    (0..=max_degree).map(|k| quotient_graded_dim(ideal, k, limits)).collect()
}

/// `I_γ`: the `(r+1)`-st powers of the forms of all interior facets containing `face`.
pub fn local_ideal(complex: &SimplicialComplex, face: &Face, r: u32) -> Result<PowerIdeal> {
    if !face.interior {
        return Err(Error::InvalidParameter(format!("{:?} is not interior", face.vertex_indices)));
    }
    let forms = complex.incident_hyperplanes(face)?;
    PowerIdeal::new(forms, r + 1, complex.dim() + 1)
}

/// Degree-`k` slice of `R/J`: chain modules for `i = 0..=n` and the induced
/// boundary maps `∂̄_i : C_i -> C_{i-1}` for `i = 1..=n`.
#[derive(Debug, Clone)]
pub struct GradedChainComplex {
    /// `modules[i]`: one slice per interior i-face (cells carry `S_k`).
    pub modules: Vec<Vec<QuotientSlice>>,
    /// `maps[i - 1]` is `∂̄_i`.
    pub maps: Vec<Matrix<Rational>>,
}

impl GradedChainComplex {
    pub fn build(complex: &SimplicialComplex, r: u32, k: u32, limits: &Limits) -> Result<Self> {
        let n = complex.dim();
        let num_vars = n + 1;
        let mut modules = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let slices = complex
                .interior_faces(i)
                .iter()
                .map(|face| {
                    if i == n {
                        QuotientSlice::new(None, num_vars, k, limits)
                    } else {
                        QuotientSlice::new(Some(&local_ideal(complex, face, r)?), num_vars, k, limits)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            modules.push(slices);
        }
        let mut maps = Vec::with_capacity(n);
        for i in 1..=n {
            let boundary = complex.boundary_matrix_relative(i)?.matrix;
            maps.push(induced_map(&boundary, &modules[i], &modules[i - 1], limits)?);
        }
        Ok(GradedChainComplex { modules, maps })
    }

    pub fn chain_dims(&self) -> Vec<usize> {
        self.modules
            .iter()
            .map(|slices| slices.iter().map(QuotientSlice::dim).sum())
            .collect()
    }

    /// `dim H_i = dim C_i - rank ∂̄_i - rank ∂̄_{i+1}`.
    pub fn homology_dims(&self, limits: &Limits) -> Result<Vec<usize>> {
        let dims = self.chain_dims();
        let ranks = self
            .maps
            .iter()
            .map(|m| rank(m, limits))
            .collect::<Result<Vec<_>>>()?;
        let top = dims.len() - 1;
        Ok((0..=top)
            .map(|i| {
                let out = if i == 0 { 0 } else { ranks[i - 1] };
                let inc = if i == top { 0 } else { ranks[i] };
                dims[i] - out - inc
            })
            .collect())
    }

    /// True when every composition `∂̄_{i-1} ∘ ∂̄_i` is zero.
    pub fn compositions_vanish(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

fn induced_map(
    boundary: &Matrix<i64>,
    source: &[QuotientSlice],
    target: &[QuotientSlice],
    limits: &Limits,
) -> Result<Matrix<Rational>> {
    let source_offsets = offsets(source);
    let target_offsets = offsets(target);
    let rows = *target_offsets.last().expect("offsets");
    let cols = *source_offsets.last().expect("offsets");
    limits.check(rows, cols)?;
    let columns = boundary.transpose();
    let mut entries: Vec<SparseRow<Rational>> = vec![Vec::new(); rows];
    let mut cache: HashMap<(usize, usize), SparseRow<Rational>> = HashMap::new();
    for (gamma, slice) in source.iter().enumerate() {
        for (coord, m) in slice.basis_monomials().into_iter().enumerate() {
            let col = source_offsets[gamma] + coord;
            for (face, sign) in columns.row(gamma) {
                let nf = cache
                    .entry((*face, m))
                    .or_insert_with(|| target[*face].normal_form(m));
                for (c, v) in nf.iter() {
                    let v = if *sign < 0 { -v.clone() } else { v.clone() };
                    entries[target_offsets[*face] + c].push((col, v));
                }
            }
        }
    }
    Ok(Matrix::from_sparse_rows(cols, entries))
}

fn offsets(slices: &[QuotientSlice]) -> Vec<usize> {
    let mut out = vec![0];
    for s in slices {
        out.push(out.last().expect("nonempty") + s.dim());
    }
    out
}

/// Per-degree homology `dim H_i(R/J)_k` for `i = 0..=n`.
pub fn homology_dims(complex: &SimplicialComplex, r: u32, k: u32, limits: &Limits) -> Result<Vec<usize>> {
    GradedChainComplex::build(complex, r, k, limits)?.homology_dims(limits)
}

/// `Σ_i (-1)^{n-i} dim (C_i)_k`, from ideal dimensions alone.
pub fn euler_alternating_sum(complex: &SimplicialComplex, r: u32, k: u32, limits: &Limits) -> Result<i64> {
    let n = complex.dim();
    let num_vars = n + 1;
    let mut total: i64 = 0;
    for i in 0..=n {
        let dim: usize = if i == n {
            complex.cells().len() * graded_dim(num_vars, k as i64)
        } else {
            complex
                .interior_faces(i)
                .iter()
                .map(|face| quotient_graded_dim(&local_ideal(complex, face, r)?, k, limits))
                .sum::<Result<usize>>()?
        };
        let sign = if (n - i).is_multiple_of(2) { 1 } else { -1 };
        total += sign * dim as i64;
    }
    Ok(total)
}
