//! Matrices over graded rings: parity-tagged index sets, graded Kronecker
//! products, the super permutation matrix, and exact inverses.
//!
//! Entries are any ring-like type; scalar matrices use Grassmann scalars and
//! the FRT construction uses matrices of noncommutative polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::SuperPoly;
use crate::scalars::gaussian::GRat;
use crate::scalars::grassmann::GScalar;
use crate::scalars::{ParamSig, ScalarError};

pub trait Entry: Clone {
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Entry for GScalar {
    fn add(&self, rhs: &Self) -> Self {
        GScalar::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GScalar::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        GScalar::neg(self)
    }
    fn is_zero(&self) -> bool {
        GScalar::is_zero(self)
    }
}

impl Entry for SuperPoly {
    fn add(&self, rhs: &Self) -> Self {
        SuperPoly::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        SuperPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        SuperPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        SuperPoly::is_zero(self)
    }
}

/// How the Kronecker product signs its entries. The two graded variants
/// differ in which factor's parities produce the sign; fixture comparison
/// decides which one the source material uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KronMode {
    Ungraded,
    /// sign (-1)^{tau_B_row(k) (tau_A_row(i) + tau_A_col(j))}
    GradedLeft,
    /// sign (-1)^{tau_A_col(j) (tau_B_row(k) + tau_B_col(l))}
    GradedRight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMat<T> {
    pub row_par: Vec<u8>,
    pub col_par: Vec<u8>,
    entries: Vec<T>,
    zero: T,
}

impl<T: Entry> GMat<T> {
    pub fn new(row_par: Vec<u8>, col_par: Vec<u8>, entries: Vec<T>, zero: T) -> Self {
        assert_eq!(entries.len(), row_par.len() * col_par.len());
        GMat { row_par, col_par, entries, zero }
    }

    pub fn from_fn(
        row_par: Vec<u8>,
        col_par: Vec<u8>,
        zero: T,
        f: impl Fn(usize, usize) -> T,
    ) -> Self {
        let mut entries = Vec::with_capacity(row_par.len() * col_par.len());
        for i in 0..row_par.len() {
            for j in 0..col_par.len() {
                entries.push(f(i, j));
            }
        }
        GMat { row_par, col_par, entries, zero }
    }

    pub fn zeros(row_par: Vec<u8>, col_par: Vec<u8>, zero: T) -> Self {
        let n = row_par.len() * col_par.len();
        GMat { row_par, col_par, entries: vec![zero.clone(); n], zero }
    }

    pub fn identity(par: Vec<u8>, one: T, zero: T) -> Self {
        Self::from_fn(par.clone(), par, zero.clone(), |i, j| {
            if i == j {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.row_par.len()
    }

    pub fn cols(&self) -> usize {
        self.col_par.len()
    }

    pub fn zero_entry(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let c = self.cols();
        self.entries[i * c + j] = v;
    }

    pub fn map<U: Entry>(&self, zero: U, f: impl Fn(&T) -> U) -> GMat<U> {
        GMat {
            row_par: self.row_par.clone(),
            col_par: self.col_par.clone(),
            entries: self.entries.iter().map(&f).collect(),
            zero,
        }
    }

    pub fn try_map(&self, f: impl Fn(&T) -> Result<T, ScalarError>) -> Result<Self, ScalarError> {
        let entries: Vec<T> = self.entries.iter().map(&f).collect::<Result<_, _>>()?;
        Ok(GMat {
            row_par: self.row_par.clone(),
            col_par: self.col_par.clone(),
            entries,
            zero: self.zero.clone(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows(), self.cols()), (rhs.rows(), rhs.cols()));
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        GMat {
            row_par: self.row_par.clone(),
            col_par: self.col_par.clone(),
            entries,
            zero: self.zero.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        GMat {
            row_par: self.row_par.clone(),
            col_par: self.col_par.clone(),
            entries: self.entries.iter().map(|a| a.neg()).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Left scalar multiple of every entry.
    pub fn scale(&self, c: &T) -> Self {
        GMat {
            row_par: self.row_par.clone(),
            col_par: self.col_par.clone(),
            entries: self.entries.iter().map(|a| c.mul(a)).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols(), rhs.rows());
        GMat::from_fn(self.row_par.clone(), rhs.col_par.clone(), self.zero.clone(), |i, j| {
            let mut acc = self.zero.clone();
            for k in 0..self.cols() {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn eq(&self, rhs: &Self) -> bool {
        self.sub(rhs).is_zero()
    }

    /// First nonzero entry of the difference, as an equality witness.
    pub fn first_diff(&self, rhs: &Self) -> Option<(usize, usize, T)> {
        let d = self.sub(rhs);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if !d.get(i, j).is_zero() {
                    return Some((i, j, d.get(i, j).clone()));
                }
            }
        }
        None
    }

    /// Kronecker product with composite indices (i,k), i outer; the sign of
    /// each entry depends on the selected mode.
    pub fn kron(&self, rhs: &Self, mode: KronMode) -> Self {
        let row_par: Vec<u8> = self
            .row_par
            .iter()
            .flat_map(|&a| rhs.row_par.iter().map(move |&b| (a + b) % 2))
            .collect();
        let col_par: Vec<u8> = self
            .col_par
            .iter()
            .flat_map(|&a| rhs.col_par.iter().map(move |&b| (a + b) % 2))
            .collect();
        let (rb, cb) = (rhs.rows(), rhs.cols());
        GMat::from_fn(row_par, col_par, self.zero.clone(), |ri, cj| {
            let (i, k) = (ri / rb, ri % rb);
            let (j, l) = (cj / cb, cj % cb);
            let v = self.get(i, j).mul(rhs.get(k, l));
            let flip = match mode {
                KronMode::Ungraded => false,
                KronMode::GradedLeft => {
                    rhs.row_par[k] == 1 && (self.row_par[i] + self.col_par[j]) % 2 == 1
                }
                KronMode::GradedRight => {
                    self.col_par[j] == 1 && (rhs.row_par[k] + rhs.col_par[l]) % 2 == 1
                }
            };
            if flip {
                v.neg()
            } else {
                v
            }
        })
    }

    /// Signed transpose; the closure decides, from the composite row and
    /// column parities, whether the moved entry flips sign.
    pub fn transpose_signed(&self, sign: impl Fn(u8, u8) -> bool) -> Self {
        GMat::from_fn(self.col_par.clone(), self.row_par.clone(), self.zero.clone(), |i, j| {
            let v = self.get(j, i).clone();
            if sign(self.col_par[i], self.row_par[j]) {
                v.neg()
            } else {
                v
            }
        })
    }
}

/// The super permutation matrix on V (x) V: P_{(i,j),(k,l)} =
/// (-1)^{tau(i) tau(j)} delta_{i,l} delta_{j,k}.
pub fn super_permutation(par: &[u8], sig: &Arc<ParamSig>) -> GMat<GScalar> {
    let n = par.len();
    let composite: Vec<u8> =
        par.iter().flat_map(|&a| par.iter().map(move |&b| (a + b) % 2)).collect();
    GMat::from_fn(composite.clone(), composite, GScalar::zero(sig), |ri, cj| {
        let (i, j) = (ri / n, ri % n);
        let (k, l) = (cj / n, cj % n);
        if i == l && j == k {
            if par[i] == 1 && par[j] == 1 {
                GScalar::from_int(sig, -1)
            } else {
                GScalar::one(sig)
            }
        } else {
            GScalar::zero(sig)
        }
    })
}

impl GMat<GScalar> {
    /// Exact inverse: nilpotent series when the matrix is I + N with N
    /// nilpotent, otherwise Gauss-Jordan elimination pivoting on entries with
    /// invertible body.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        assert_eq!(self.rows(), self.cols());
        let sig = self.zero.sig().clone();
        let one = GScalar::one(&sig);
        let id = GMat::identity(self.row_par.clone(), one, self.zero.clone());
        let n_mat = self.sub(&id);
        // nilpotency bound: odd monomials cap the length of nonzero products
        // when every entry of N is body-free
        if n_mat.entries.iter().all(|e| e.body().is_zero()) {
            let max = sig.odd.len() + 1;
            let mut acc = id.clone();
            let mut pw = id.clone();
            for k in 1..=max {
                pw = pw.mul(&n_mat);
                if pw.is_zero() {
                    break;
                }
                let term = if k % 2 == 1 { pw.neg() } else { pw.clone() };
                acc = acc.add(&term);
            }
            return Ok(acc);
        }
        // augmented elimination
        let n = self.rows();
        let mut a: Vec<Vec<GScalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut b: Vec<Vec<GScalar>> = (0..n)
            .map(|i| (0..n).map(|j| id.get(i, j).clone()).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r][col].inv().is_ok())
                .ok_or_else(|| {
                    ScalarError::NotInvertible(format!("no invertible pivot in column {col}"))
                })?;
            a.swap(col, piv);
            b.swap(col, piv);
            let pinv = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = pinv.mul(&a[col][j]);
                b[col][j] = pinv.mul(&b[col][j]);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = f.mul(&a[col][j]);
                    a[r][j] = a[r][j].sub(&av);
                    let bv = f.mul(&b[col][j]);
                    b[r][j] = b[r][j].sub(&bv);
                }
            }
        }
        let mut out = GMat::zeros(self.row_par.clone(), self.col_par.clone(), self.zero.clone());
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, b[i][j].clone());
            }
        }
        Ok(out)
    }

    /// Rank after sending every odd parameter to zero and evaluating the even
    /// parameters at the given point.
    pub fn rank_at(&self, point: &BTreeMap<usize, GRat>) -> Result<usize, ScalarError> {
        let mut rows: Vec<Vec<GRat>> = Vec::new();
        for i in 0..self.rows() {
            let mut row = Vec::new();
            for j in 0..self.cols() {
                let body = self.get(i, j).body();
                let v = body.limit(point)?;
                let c = v.as_constant().ok_or_else(|| {
                    ScalarError::Parse("rank point must fix all even parameters".into())
                })?;
                row.push(c);
            }
            rows.push(row);
        }
        let cols = self.cols();
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pinv = rows[rank][col].inv().expect("nonzero Gaussian rational");
            for j in 0..cols {
                rows[rank][j] = &rows[rank][j] * &pinv;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for j in 0..cols {
                        let s = &f * &rows[rank][j];
                        rows[r][j] = &rows[r][j] - &s;
                    }
                }
            }
            rank += 1;
        }
        Ok(rank)
    }
}

impl<T: Entry + fmt::Display> fmt::Display for GMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse::parse_scalar;

    fn sig() -> Arc<ParamSig> {
        ParamSig::new(&["q", "p"], &["h", "h'"])
    }

    fn scal(s: &str, sg: &Arc<ParamSig>) -> GScalar {
        parse_scalar(s, sg).unwrap()
    }

    fn g_full(sg: &Arc<ParamSig>) -> GMat<GScalar> {
        GMat::new(
            vec![0, 1, 1],
            vec![0, 1, 1],
            vec![
                scal("1", sg),
                scal("0", sg),
                scal("h'/(p*q - 1)", sg),
                scal("0", sg),
                scal("1", sg),
                scal("0", sg),
                scal("h/(q - 1)", sg),
                scal("0", sg),
                scal("1", sg),
            ],
            GScalar::zero(sg),
        )
    }

    #[test]
    fn unipotent_inverse() {
        let sg = sig();
        let g = g_full(&sg);
        let gi = g.inv().unwrap();
        let id = GMat::identity(vec![0, 1, 1], GScalar::one(&sg), GScalar::zero(&sg));
        assert!(g.mul(&gi).eq(&id));
        assert!(gi.mul(&g).eq(&id));
    }

    #[test]
    fn super_permutation_squares_to_identity() {
        let sg = sig();
        let p = super_permutation(&[0, 1, 1], &sg);
        let id =
            GMat::identity(p.row_par.clone(), GScalar::one(&sg), GScalar::zero(&sg));
        assert!(p.mul(&p).eq(&id));
        // entry at composite (2,2),(2,2) is -1 (both odd indices)
        assert!(p.get(4, 4).eq(&GScalar::from_int(&sg, -1)));
    }

    #[test]
    fn kron_mixed_product_property() {
        let sg = sig();
        let g = g_full(&sg);
        let gi = g.inv().unwrap();
        // (A (x) B)(C (x) D) = (AC) (x) (BD) for even supermatrices
        for mode in [KronMode::GradedLeft, KronMode::GradedRight] {
            let lhs = g.kron(&gi, mode).mul(&gi.kron(&g, mode));
            let rhs = g.mul(&gi).kron(&gi.mul(&g), mode);
            assert!(lhs.eq(&rhs), "mixed product fails in {mode:?}");
        }
    }

    #[test]
    fn graded_and_ungraded_kron_differ() {
        let sg = sig();
        let g = g_full(&sg);
        let a = g.kron(&g, KronMode::GradedLeft);
        let b = g.kron(&g, KronMode::Ungraded);
        assert!(!a.eq(&b));
    }
}
