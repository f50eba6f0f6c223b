//! Simplicial complexes with exact rational coordinates, the Alfeld split,
//! relative boundary matrices and facet hyperplane equations.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, kernel_basis, Limits, Matrix};
use crate::poly::LinearForm;
use crate::{Int, Rational};

/// A face given by its sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
    pub interior: bool,
}

/// A pure n-dimensional simplicial complex in which every (n-1)-face lies in
/// one or two cells.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    cells: Vec<Vec<usize>>,
    /// Sign of the volume determinant of each sorted cell.
    orientation: Vec<i64>,
    /// `faces[i]`: all i-faces (i < n) in lexicographic order.
    faces: Vec<Vec<Face>>,
    facet_cells: HashMap<Vec<usize>, Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(dim: usize, vertices: Vec<Vec<Rational>>, cells: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidComplex("dimension must be at least 1".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidComplex(format!(
                    "vertex {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
        }
        if cells.is_empty() {
            return Err(Error::InvalidComplex("no cells".into()));
        }
        let mut sorted_cells = Vec::with_capacity(cells.len());
        let mut orientation = Vec::with_capacity(cells.len());
        let mut seen = BTreeSet::new();
        for (ci, cell) in cells.into_iter().enumerate() {
            let mut cell = cell;
            cell.sort_unstable();
            cell.dedup();
            if cell.len() != dim + 1 {
                return Err(Error::InvalidComplex(format!(
                    "cell {ci} needs {} distinct vertices",
                    dim + 1
                )));
            }
            if let Some(&bad) = cell.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidComplex(format!(
                    "cell {ci} references missing vertex {bad}"
                )));
            }
            if !seen.insert(cell.clone()) {
                return Err(Error::InvalidComplex(format!("cell {ci} is repeated")));
            }
            let base = &vertices[cell[0]];
            let edges: Vec<Vec<Rational>> = cell[1..]
                .iter()
                .map(|&v| vertices[v].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let vol = determinant(&edges);
            if vol.is_zero() {
                return Err(Error::InvalidComplex(format!("cell {ci} is degenerate")));
            }
            orientation.push(if vol.is_positive() { 1 } else { -1 });
            sorted_cells.push(cell);
        }

        let mut facet_cells: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (ci, cell) in sorted_cells.iter().enumerate() {
            for facet in subsets(cell, dim) {
                facet_cells.entry(facet).or_default().push(ci);
            }
        }
        if let Some((facet, owners)) = facet_cells.iter().find(|(_, c)| c.len() > 2) {
            return Err(Error::InvalidComplex(format!(
                "facet {facet:?} is shared by cells {owners:?}; not a pseudomanifold"
            )));
        }
        let boundary: Vec<&Vec<usize>> = facet_cells
            .iter()
            .filter(|(_, c)| c.len() == 1)
            .map(|(f, _)| f)
            .collect();

        let mut faces = Vec::with_capacity(dim);
        for i in 0..dim {
            let all: BTreeSet<Vec<usize>> = sorted_cells
                .iter()
                .flat_map(|cell| subsets(cell, i + 1))
                .collect();
            faces.push(
                all.into_iter()
                    .map(|vs| {
                        let interior = !boundary.iter().any(|b| is_subset(&vs, b));
                        Face {
                            vertex_indices: vs,
                            dim: i,
                            interior,
                        }
                    })
                    .collect(),
            );
        }

        Ok(SimplicialComplex {
            dim,
            vertices,
            cells: sorted_cells,
            orientation,
            faces,
            facet_cells,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_complex()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// +1 or -1 per cell: sign of its volume with vertices in sorted order.
    pub fn orientation(&self) -> &[i64] {
        &self.orientation
    }

    /// All i-faces, with their interior flags. For `i == n` these are the cells.
    pub fn faces(&self, i: usize) -> Vec<Face> {
        assert!(i <= self.dim, "face dimension exceeds complex dimension");
        if i == self.dim {
            return self
                .cells
                .iter()
                .map(|c| Face {
                    vertex_indices: c.clone(),
                    dim: i,
                    interior: true,
                })
                .collect();
        }
        self.faces[i].clone()
    }

    pub fn interior_faces(&self, i: usize) -> Vec<Face> {
        self.faces(i).into_iter().filter(|f| f.interior).collect()
    }

    /// Indices of the cells containing the given (n-1)-face.
    pub fn cells_of_facet(&self, facet: &Face) -> &[usize] {
        self.facet_cells
            .get(&facet.vertex_indices)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// The normalized homogeneous form in `n + 1` variables vanishing on the
    /// cone over the facet, from the determinant `det[x | (p_1,1) | ... | (p_n,1)]`.
    pub fn facet_form(&self, facet: &Face) -> Result<LinearForm> {
        if facet.vertex_indices.len() != self.dim {
            return Err(Error::InvalidParameter(format!(
                "{:?} is not an (n-1)-face",
                facet.vertex_indices
            )));
        }
        let points: Vec<Vec<Rational>> = facet
            .vertex_indices
            .iter()
            .map(|&v| homogenized_point(&self.vertices[v]))
            .collect();
        form_through_columns(&points)
            .normalized()
            .map_err(|_| Error::DegenerateFacet(facet.vertex_indices.clone()))
    }

    /// Same hyperplane as [`facet_form`](Self::facet_form), computed from the
    /// kernel of the matrix whose rows are the homogenized facet vertices.
    pub fn facet_form_by_nullspace(&self, facet: &Face) -> Result<LinearForm> {
        let rows: Vec<Vec<Rational>> = facet
            .vertex_indices
            .iter()
            .map(|&v| homogenized_point(&self.vertices[v]))
            .collect();
        let m = Matrix::from_dense(self.dim + 1, rows);
        let kernel = kernel_basis(&m, &Limits::default())?;
        match kernel.as_slice() {
            [v] => LinearForm::homogeneous(v.clone()).normalized(),
            _ => Err(Error::DegenerateFacet(facet.vertex_indices.clone())),
        }
    }

    /// Relative boundary map from interior i-faces to interior (i-1)-faces.
    ///
    /// `∂[σ] = Σ_j (-1)^j [σ minus its j-th vertex]` on sorted vertex lists;
    /// top cells are additionally multiplied by their orientation sign so that
    /// the two cells on an interior facet induce opposite signs there.
    pub fn boundary_matrix_relative(&self, i: usize) -> Result<BoundaryMatrix> {
        if i == 0 || i > self.dim {
            return Err(Error::InvalidParameter(format!(
                "boundary index {i} outside 1..={}",
                self.dim
            )));
        }
        let row_faces = self.interior_faces(i - 1);
        let col_faces = self.interior_faces(i);
        let row_index: HashMap<&[usize], usize> = row_faces
            .iter()
            .enumerate()
            .map(|(r, f)| (f.vertex_indices.as_slice(), r))
            .collect();
        let mut matrix = Matrix::zeros(row_faces.len(), col_faces.len());
        for (c, face) in col_faces.iter().enumerate() {
            let orient = if i == self.dim { self.orientation[c] } else { 1 };
            for j in 0..face.vertex_indices.len() {
                let mut sub = face.vertex_indices.clone();
                sub.remove(j);
                if let Some(&r) = row_index.get(sub.as_slice()) {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    matrix.add_to(r, c, sign * orient);
                }
            }
        }
        Ok(BoundaryMatrix {
            row_faces,
            col_faces,
            matrix,
        })
    }

    /// Distinct normalized forms of the interior facets containing `face`,
    /// in facet order.
    pub fn incident_hyperplanes(&self, face: &Face) -> Result<Vec<LinearForm>> {
        let mut out: Vec<LinearForm> = Vec::new();
        for facet in self.interior_faces(self.dim - 1) {
            if is_subset(&face.vertex_indices, &facet.vertex_indices) {
                let form = self.facet_form(&facet)?;
                if !out.contains(&form) {
                    out.push(form);
                }
            }
        }
        Ok(out)
    }

    /// Applies `x -> A x + b` to every vertex.
    pub fn transformed(&self, linear: &[Vec<Rational>], shift: &[Rational]) -> Result<Self> {
        if determinant(linear).is_zero() {
            return Err(Error::InvalidParameter("affine map is not invertible".into()));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|p| {
                linear
                    .iter()
                    .zip(shift)
                    .map(|(row, b)| row.iter().zip(p).fold(b.clone(), |acc, (a, x)| acc + a * x))
                    .collect()
            })
            .collect();
        SimplicialComplex::new(self.dim, vertices, self.cells.clone())
    }

    /// Renumbers vertices by `perm` (old index `i` becomes `perm[i]`) and
    /// lists the cells in the given order.
    pub fn relabeled(&self, perm: &[usize], cell_order: &[usize]) -> Result<Self> {
        let mut vertices = vec![Vec::new(); self.vertices.len()];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        let cells = cell_order
            .iter()
            .map(|&c| self.cells[c].iter().map(|&v| perm[v]).collect())
            .collect();
        SimplicialComplex::new(self.dim, vertices, cells)
    }
}

#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub row_faces: Vec<Face>,
    pub col_faces: Vec<Face>,
    pub matrix: Matrix<i64>,
}

/// JSON ingestion format; coordinates are strings such as `"1/3"` to stay exact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub cells: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let coords = v
                .iter()
                .map(|s| crate::scalar::parse_rational(s))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::InvalidComplex(format!("vertex {i}: {e}")))?;
            vertices.push(coords);
        }
        SimplicialComplex::new(self.dim, vertices, self.cells)
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile {
            dim: k.dim(),
            vertices: k
                .vertices()
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
            cells: k.cells().to_vec(),
        }
    }
}

/// Canonical Alfeld split: `v = (1,…,1)` (index 0), `e_0 = 0` (index 1) and
/// `e_i = v + ε_i` (index `i + 1`). Cell `j` omits `e_{n-j}`, so cells are in
/// lexicographic order of their sorted vertex lists.
pub fn alfeld_split(n: usize) -> SimplicialComplex {
    assert!(n >= 1, "alfeld split needs n >= 1");
    let coords = AlfeldCoordinates::canonical(n);
    let mut vertices = vec![coords.center.clone()];
    vertices.extend(coords.corners.iter().cloned());
    let cells = (0..=n)
        .rev()
        .map(|omit| {
            std::iter::once(0)
                .chain((0..=n).filter(|&t| t != omit).map(|t| t + 1))
                .collect()
        })
        .collect();
    SimplicialComplex::new(n, vertices, cells).expect("canonical alfeld split is valid")
}

/// Alfeld split with an arbitrary interior point and simplex corners.
pub fn alfeld_split_from(center: Vec<Rational>, corners: Vec<Vec<Rational>>) -> Result<SimplicialComplex> {
    let n = center.len();
    if corners.len() != n + 1 {
        return Err(Error::InvalidComplex(format!("need {} corners", n + 1)));
    }
    let mut vertices = vec![center];
    vertices.extend(corners);
    let cells = (0..=n)
        .rev()
        .map(|omit| {
            std::iter::once(0)
                .chain((0..=n).filter(|&t| t != omit).map(|t| t + 1))
                .collect()
        })
        .collect();
    SimplicialComplex::new(n, vertices, cells)
}

/// The symbolic `(n+1) x (n+3)` matrix with columns `x`, `v`, `e_0, …, e_n`
/// (points extended by a final 1).
#[derive(Debug, Clone)]
pub struct AlfeldCoordinates {
    pub center: Vec<Rational>,
    pub corners: Vec<Vec<Rational>>,
}

impl AlfeldCoordinates {
    pub fn canonical(n: usize) -> Self {
        let one = Rational::one();
        let center = vec![one.clone(); n];
        let mut corners = vec![vec![Rational::zero(); n]];
        for i in 0..n {
            let mut e = center.clone();
            e[i] = &e[i] + &one;
            corners.push(e);
        }
        AlfeldCoordinates { center, corners }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `det(M_ij)`: the form obtained by deleting the columns of `e_i` and `e_j`.
    /// Not normalized.
    pub fn minor_form(&self, i: usize, j: usize) -> LinearForm {
        let n = self.dim();
        assert!(i != j && i <= n && j <= n);
        let mut columns = vec![homogenized_point(&self.center)];
        columns.extend(
            (0..=n)
                .filter(|&t| t != i && t != j)
                .map(|t| homogenized_point(&self.corners[t])),
        );
        form_through_columns(&columns)
    }
}

fn homogenized_point(p: &[Rational]) -> Vec<Rational> {
    let mut h = p.to_vec();
    h.push(Rational::one());
    h
}

/// Cofactor expansion of `det[x | c_1 | … | c_n]` along its first column.
fn form_through_columns(columns: &[Vec<Rational>]) -> LinearForm {
    let size = columns.len() + 1;
    let coefficients = (0..size)
        .map(|t| {
            let minor: Vec<Vec<Rational>> = (0..size)
                .filter(|&row| row != t)
                .map(|row| columns.iter().map(|c| c[row].clone()).collect())
                .collect();
            let d = determinant(&minor);
            if t % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    LinearForm::homogeneous(coefficients)
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// All `size`-element subsets of a sorted slice, in lexicographic order.
pub fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn go(items: &[usize], size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - current.len() {
                break;
            }
            current.push(items[i]);
            go(items, size, i + 1, current, out);
            current.pop();
        }
    }
    go(items, size, 0, &mut current, &mut out);
    out
}

/// Parses coordinates given as small integers; convenience for fixtures.
pub fn int_point(coords: &[i64]) -> Vec<Rational> {
    coords.iter().map(|&c| Rational::from_integer(Int::from(c))).collect()
}
