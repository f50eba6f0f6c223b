//! Monomial bases, linear forms and the per-degree multiplication maps that
//! turn symbolic block matrices into exact matrices.
//!
//! Monomials are ordered graded-lexicographically with `x1` the greatest
//! variable; the homogenizing variable is always the last one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Ring;
use crate::{Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.num_vars(), other.num_vars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of exact total degree `degree` in `num_vars` variables,
/// greatest first (`x1^degree` leads).
pub fn monomial_basis(num_vars: usize, degree: u32) -> Vec<Monomial> {
    assert!(num_vars >= 1, "need at least one variable");
    let mut out = Vec::new();
    let mut current = vec![0u32; num_vars];
    fill_basis(&mut out, &mut current, 0, degree);
    out
}

fn fill_basis(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_basis(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// The degree-`degree` graded piece of a polynomial ring, with index lookup.
#[derive(Debug, Clone)]
pub struct GradedPolySpace {
    num_vars: usize,
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPolySpace {
    pub fn new(num_vars: usize, degree: u32) -> Self {
        let basis = monomial_basis(num_vars, degree);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedPolySpace {
            num_vars,
            degree,
            basis,
            index,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `dim S_k` for `num_vars` variables, i.e. `C(k + num_vars - 1, num_vars - 1)`;
/// zero for negative `k`.
pub fn graded_dim(num_vars: usize, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    let top = k as u128 + num_vars as u128 - 1;
    for i in 0..(num_vars as u128 - 1) {
        acc = acc * (top - i) / (i + 1);
    }
    acc as usize
}

/// A homogeneous polynomial as a coefficient vector over [`monomial_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly<T> {
    num_vars: usize,
    degree: u32,
    coeffs: Vec<T>,
}

impl<T: Ring> HomogeneousPoly<T> {
    pub fn new(num_vars: usize, degree: u32, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), graded_dim(num_vars, degree as i64), "coefficient count");
        HomogeneousPoly {
            num_vars,
            degree,
            coeffs,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> HomogeneousPoly<U> {
        HomogeneousPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Nonzero terms `(monomial, coefficient)`.
    pub fn terms(&self) -> Vec<(Monomial, T)> {
        monomial_basis(self.num_vars, self.degree)
            .into_iter()
            .zip(self.coeffs.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// `(sum_i c_i x_i)^e` by the multinomial theorem.
pub fn power_of_linear<T: Ring>(coeffs: &[T], e: u32) -> HomogeneousPoly<T> {
    let n = coeffs.len();
    let binom = pascal::<T>(e as usize);
    let basis = monomial_basis(n, e);
    let out = basis
        .iter()
        .map(|m| {
            let mut remaining = e as usize;
            let mut c = T::one();
            for (exp, a) in m.exponents().iter().zip(coeffs) {
                let exp = *exp as usize;
                if exp > 0 {
                    if a.is_zero() {
                        return T::zero();
                    }
                    c = c * binom[remaining][exp].clone();
                    for _ in 0..exp {
                        c = c * a.clone();
                    }
                    remaining -= exp;
                }
            }
            c
        })
        .collect();
    HomogeneousPoly::new(n, e, out)
}

fn pascal<T: Ring>(n: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![T::one(); i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1].clone() + rows[i - 1][j].clone();
        }
        rows.push(row);
    }
    rows
}

/// Matrix of `g -> f * g` from degree `source_degree` to degree `target_degree`.
/// Rows index the target basis and columns the source basis.
pub fn multiplication_matrix<T: Ring>(
    f: &HomogeneousPoly<T>,
    source_degree: u32,
    target_degree: u32,
) -> Result<Matrix<T>> {
    if source_degree.checked_add(f.degree()) != Some(target_degree) {
        return Err(Error::DegreeMismatch {
            factor: f.degree(),
            source_degree,
            target: target_degree,
        });
    }
    let source = GradedPolySpace::new(f.num_vars(), source_degree);
    let target = GradedPolySpace::new(f.num_vars(), target_degree);
    let terms = f.terms();
    let mut m = Matrix::zeros(target.dim(), source.dim());
    for (col, g) in source.basis().iter().enumerate() {
        for (mono, c) in &terms {
            let row = target.index_of(&mono.mul(g)).expect("product lies in target degree");
            m.add_to(row, col, c.clone());
        }
    }
    Ok(m)
}

/// A linear form `sum_i c_i x_i + constant` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coefficients: Vec<Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Rational>, constant: Rational) -> Self {
        LinearForm {
            coefficients,
            constant,
        }
    }

    pub fn homogeneous(coefficients: Vec<Rational>) -> Self {
        LinearForm::new(coefficients, Rational::zero())
    }

    pub fn from_integers(coefficients: &[i64], constant: i64) -> Self {
        LinearForm::new(
            coefficients.iter().map(|&c| Rational::from_integer(Int::from(c))).collect(),
            Rational::from_integer(Int::from(constant)),
        )
    }

    /// `x_a - x_b` in `num_vars` variables (0-based indices).
    pub fn difference(num_vars: usize, a: usize, b: usize) -> Self {
        let mut c = vec![Rational::zero(); num_vars];
        c[a] = Rational::one();
        c[b] = -Rational::one();
        LinearForm::homogeneous(c)
    }

    pub fn num_vars(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars());
        self.coefficients
            .iter()
            .zip(point)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    /// Scales to coprime integer coefficients (constant included) whose first
    /// nonzero entry is positive.
    pub fn normalized(&self) -> Result<LinearForm> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let all: Vec<&Rational> = self.coefficients.iter().chain([&self.constant]).collect();
        let denom = all.iter().fold(Int::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<Int> = all
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        let mut g = ints.iter().fold(Int::zero(), |acc, v| acc.gcd(v));
        if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            g = -g;
        }
        let mut scaled: Vec<Rational> = ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect();
        let constant = scaled.pop().expect("constant slot");
        Ok(LinearForm::new(scaled, constant))
    }

    /// Integer coefficients of the normalized form (constant excluded).
    pub fn integer_coefficients(&self) -> Result<Vec<Int>> {
        Ok(self
            .normalized()?
            .coefficients
            .into_iter()
            .map(|c| c.to_integer())
            .collect())
    }

    /// Moves the constant onto a new last variable.
    pub fn homogenize(&self) -> Result<LinearForm> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let mut c = self.coefficients.clone();
        c.push(self.constant.clone());
        Ok(LinearForm::homogeneous(c))
    }

    /// Inverse of [`homogenize`](Self::homogenize): substitutes 1 for the last variable.
    pub fn dehomogenize(&self) -> Result<LinearForm> {
        if !self.is_homogeneous() || self.coefficients.is_empty() {
            return Err(Error::InvalidParameter(
                "dehomogenize needs a homogeneous form in at least one variable".into(),
            ));
        }
        let mut c = self.coefficients.clone();
        let last = c.pop().expect("nonempty");
        Ok(LinearForm::new(c, last))
    }

    /// True when the two forms differ by a nonzero scalar factor.
    pub fn is_proportional_to(&self, other: &LinearForm) -> bool {
        match (self.normalized(), other.normalized()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn to_poly(&self) -> Result<HomogeneousPoly<Rational>> {
        if !self.is_homogeneous() {
            return Err(Error::InvalidParameter("form is not homogeneous".into()));
        }
        Ok(HomogeneousPoly::new(self.num_vars(), 1, self.coefficients.clone()))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| (Some(i), c))
            .chain([(None, &self.constant)]);
        for (var, c) in terms {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match var {
                Some(i) if mag.is_one() => write!(f, "x{}", i + 1)?,
                Some(i) => write!(f, "{mag}*x{}", i + 1)?,
                None => write!(f, "{mag}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `ell^e` as a coefficient vector on `monomial_basis(ell.num_vars(), e)`.
pub fn expand_linear_form_power(form: &LinearForm, e: u32) -> Result<HomogeneousPoly<Rational>> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !form.is_homogeneous() {
        return Err(Error::InvalidParameter("form is not homogeneous".into()));
    }
    Ok(power_of_linear(form.coefficients(), e))
}

/// Sparse polynomial of mixed degree, used by the affine (non-coned) computations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Ring> Poly<T> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(T::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn mul(&self, other: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32, num_vars: usize) -> Poly<T> {
        (0..e).fold(Poly::constant(num_vars, T::one()), |acc, _| acc.mul(self))
    }
}

impl Poly<Rational> {
    /// The affine polynomial `sum c_i x_i + constant`.
    pub fn from_affine_form(form: &LinearForm) -> Self {
        let n = form.num_vars();
        let mut p = Poly::constant(n, form.constant().clone());
        for (i, c) in form.coefficients().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial::new(e), c.clone());
        }
        p
    }
}

/// All monomials of total degree at most `max_degree`, by increasing degree.
pub fn monomials_up_to(num_vars: usize, max_degree: u32) -> Vec<Monomial> {
    (0..=max_degree)
        .flat_map(|d| monomial_basis(num_vars, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(Int::from(v))
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis(3, 0), vec![Monomial::one(3)]);
        let b = monomial_basis(2, 2);
        assert_eq!(
            b,
            vec![Monomial::new(vec![2, 0]), Monomial::new(vec![1, 1]), Monomial::new(vec![0, 2])]
        );
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(b[0].to_string(), "x1^2");
        assert_eq!(b[1].to_string(), "x1*x2");
    }

    #[test]
    fn basis_sizes_match_binomials() {
        for n in 1..=6 {
            for k in 0..=12u32 {
                assert_eq!(monomial_basis(n, k).len(), graded_dim(n, k as i64));
                // independent count: C(k+n-1, n-1) by multiplicative formula over u128
                let mut c: u128 = 1;
                for i in 1..n as u128 {
                    c = c * (k as u128 + i) / i;
                }
                assert_eq!(graded_dim(n, k as i64) as u128, c);
            }
        }
        assert_eq!(graded_dim(3, -1), 0);
    }

    #[test]
    fn basis_is_strictly_decreasing() {
        let b = monomial_basis(4, 5);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn power_examples() {
        let f = LinearForm::from_integers(&[1, -1], 0);
        assert_eq!(expand_linear_form_power(&f, 2).unwrap().coeffs(), qs(&[1, -2, 1]).as_slice());
        let f = LinearForm::from_integers(&[1, 0, -1], 0);
        assert_eq!(expand_linear_form_power(&f, 1).unwrap().coeffs(), qs(&[1, 0, -1]).as_slice());
        let f = LinearForm::from_integers(&[1, 1], 0);
        assert_eq!(expand_linear_form_power(&f, 3).unwrap().coeffs(), qs(&[1, 3, 3, 1]).as_slice());
        assert_eq!(
            expand_linear_form_power(&LinearForm::from_integers(&[0, 0], 0), 2),
            Err(Error::ZeroForm)
        );
    }

    #[test]
    fn power_agrees_with_repeated_sparse_products() {
        let f = LinearForm::from_integers(&[2, -3, 1], 0);
        let dense = expand_linear_form_power(&f, 4).unwrap();
        let sparse = Poly::from_affine_form(&f).pow(4, 3);
        let from_sparse: Vec<Rational> = monomial_basis(3, 4)
            .iter()
            .map(|m| sparse.terms.get(m).cloned().unwrap_or_else(Rational::zero))
            .collect();
        assert_eq!(dense.coeffs(), from_sparse.as_slice());
    }

    #[test]
    fn multiplication_matrix_examples() {
        let one = HomogeneousPoly::new(2, 0, qs(&[1]));
        assert_eq!(multiplication_matrix(&one, 2, 2).unwrap(), Matrix::identity(3));

        let x = HomogeneousPoly::new(1, 1, qs(&[1]));
        let m = multiplication_matrix(&x, 2, 3).unwrap();
        assert_eq!(m.to_dense(), vec![qs(&[1])]);

        let sq = expand_linear_form_power(&LinearForm::from_integers(&[1, -1], 0), 2).unwrap();
        let m = multiplication_matrix(&sq, 1, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert_eq!(crate::linalg::rank(&m, &Default::default()).unwrap(), 2);

        assert!(matches!(multiplication_matrix(&sq, 1, 4), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn homogenize_examples() {
        let h = LinearForm::from_integers(&[1, 0], -1).homogenize().unwrap();
        assert_eq!(h.normalized().unwrap(), LinearForm::from_integers(&[1, 0, -1], 0));
        let h = LinearForm::from_integers(&[0, 1], -1).homogenize().unwrap();
        assert_eq!(h.normalized().unwrap(), LinearForm::from_integers(&[0, 1, -1], 0));
        // x1 - x2 is already homogeneous: homogenizing adds a zero coefficient
        let h = LinearForm::from_integers(&[1, -1], 0).homogenize().unwrap();
        assert_eq!(h, LinearForm::from_integers(&[1, -1, 0], 0));
        assert_eq!(h.to_string(), "x1 - x2");
        assert_eq!(LinearForm::from_integers(&[0, 0], 0).homogenize(), Err(Error::ZeroForm));
    }

    #[test]
    fn normalization_is_canonical() {
        let half = Rational::new(Int::from(-1), Int::from(2));
        let f = LinearForm::homogeneous(vec![Rational::zero(), half, q(3)]);
        let n = f.normalized().unwrap();
        assert_eq!(n, LinearForm::from_integers(&[0, 1, -6], 0));
        assert!(f.is_proportional_to(&n));
        assert_eq!(n.to_string(), "x2 - 6*x3");
        assert_eq!(LinearForm::from_integers(&[2, 0], 4).to_string(), "2*x1 + 4");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_form(n: usize) -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-3i64..=3, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]

            #[test]
            fn power_splits_as_product(c in small_form(3), a in 0u32..4, b in 0u32..4) {
                let f = LinearForm::from_integers(&c, 0);
                let fa = expand_linear_form_power(&f, a).unwrap();
                let fb = expand_linear_form_power(&f, b).unwrap();
                let fab = expand_linear_form_power(&f, a + b).unwrap();
                let m = multiplication_matrix(&fa, b, a + b).unwrap();
                prop_assert_eq!(m.mul_vec(fb.coeffs()), fab.coeffs().to_vec());
            }

            #[test]
            fn nonzero_multiplication_is_injective(c in small_form(3), e in 0u32..4, s in 0u32..4) {
                let f = expand_linear_form_power(&LinearForm::from_integers(&c, 0), e).unwrap();
                let m = multiplication_matrix(&f, s, s + e).unwrap();
                prop_assert_eq!(crate::linalg::rank(&m, &Default::default()).unwrap(), m.cols());
            }

            #[test]
            fn homogenize_round_trips(c in proptest::collection::vec(-5i64..=5, 2..5), k in -5i64..=5) {
                let f = LinearForm::from_integers(&c, k);
                prop_assume!(!f.is_zero());
                let h = f.homogenize().unwrap();
                prop_assert!(h.is_homogeneous());
                prop_assert_eq!(h.dehomogenize().unwrap(), f.clone());
                // substituting x_{n+1} = 1 evaluates identically
                let pt: Vec<Rational> = (0..c.len()).map(|i| q(i as i64 - 2)).collect();
                let mut pt1 = pt.clone();
                pt1.push(q(1));
                prop_assert_eq!(h.eval(&pt1), f.eval(&pt));
            }
        }
    }
}
