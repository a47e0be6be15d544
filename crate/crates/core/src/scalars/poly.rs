//! Multivariate Laurent polynomials over the Gaussian rationals.
//!
//! Exponent vectors are indexed by the even parameters of a `ParamSig` and may
//! be negative. Ordering of terms is lexicographic on the exponent vector,
//! which is only used to pick deterministic leading terms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::gaussian::GRat;
use super::{ParamSig, ScalarError};

pub type Expo = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    sig: Arc<ParamSig>,
    terms: BTreeMap<Expo, GRat>,
}

impl Poly {
    pub fn zero(sig: &Arc<ParamSig>) -> Self {
        Poly { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(sig: &Arc<ParamSig>, c: GRat) -> Self {
        let mut p = Poly::zero(sig);
        if !c.is_zero() {
            p.terms.insert(vec![0; sig.even.len()], c);
        }
        p
    }

    pub fn one(sig: &Arc<ParamSig>) -> Self {
        Poly::constant(sig, GRat::one())
    }

    pub fn var(sig: &Arc<ParamSig>, idx: usize, exp: i32) -> Self {
        let mut e = vec![0; sig.even.len()];
        e[idx] = exp;
        Poly::monomial(sig, e, GRat::one())
    }

    pub fn monomial(sig: &Arc<ParamSig>, expo: Expo, c: GRat) -> Self {
        assert_eq!(expo.len(), sig.even.len());
        let mut p = Poly::zero(sig);
        if !c.is_zero() {
            p.terms.insert(expo, c);
        }
        p
    }

    pub fn sig(&self) -> &Arc<ParamSig> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &GRat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<GRat> {
        if self.terms.is_empty() {
            return Some(GRat::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// The unique term if the polynomial is a single monomial.
    pub fn as_monomial(&self) -> Option<(Expo, GRat)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.clone(), c.clone()))
        } else {
            None
        }
    }

    fn insert(&mut self, e: Expo, c: GRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(prev) => {
                let sum = &*prev + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *prev = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.sig, rhs.sig);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.sig, rhs.sig);
        let mut out = Poly::zero(&self.sig);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Expo = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.sig);
        }
        Poly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.sig);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn leading(&self) -> Option<(&Expo, &GRat)> {
        self.terms.iter().next_back()
    }

    /// Per-variable minimum exponent over all terms (zero polynomial: zeros).
    pub fn min_exponents(&self) -> Expo {
        let n = self.sig.even.len();
        let mut mins = vec![i32::MAX; n];
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        if self.terms.is_empty() {
            mins = vec![0; n];
        }
        mins
    }

    fn shift(&self, by: &Expo) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Splits `self` into `unit * x^shift * monic` with `monic` having
    /// min-exponent zero in every variable and leading coefficient one.
    /// Panics on the zero polynomial.
    pub fn normalize(&self) -> (GRat, Expo, Poly) {
        assert!(!self.is_zero(), "normalize of zero polynomial");
        let mins = self.min_exponents();
        let shifted = self.shift(&mins.iter().map(|x| -x).collect());
        let unit = shifted.leading().unwrap().1.clone();
        let inv = unit.inv().unwrap();
        (unit, mins, shifted.scale(&inv))
    }

    /// Exact division; `None` when `rhs` does not divide `self` (as Laurent
    /// polynomials, so monomial factors never obstruct). Both operands are
    /// shifted to plain polynomials first; the quotient of two min-exponent-0
    /// polynomials is itself a polynomial, so requiring nonnegative quotient
    /// exponents below is sound and makes the lex descent well-founded.
    pub fn exact_div(&self, rhs: &Poly) -> Option<Poly> {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(&self.sig));
        }
        let self_mins = self.min_exponents();
        let rhs_mins = rhs.min_exponents();
        let num = self.shift(&self_mins.iter().map(|x| -x).collect());
        let den = rhs.shift(&rhs_mins.iter().map(|x| -x).collect());
        let mut rem = num;
        let mut quo = Poly::zero(&self.sig);
        let (dl_e, dl_c) = den.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dl_inv = dl_c.inv().unwrap();
        while !rem.is_zero() {
            let (rl_e, rl_c) = rem.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let qe: Expo = rl_e.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = &rl_c * &dl_inv;
            let qterm = Poly::monomial(&self.sig, qe, qc);
            rem = rem.sub(&qterm.mul(&den));
            quo = quo.add(&qterm);
        }
        let back: Expo = self_mins.iter().zip(&rhs_mins).map(|(a, b)| a - b).collect();
        Some(quo.shift(&back))
    }

    /// Substitutes Gaussian-rational values for a subset of the variables.
    pub fn eval_partial(&self, vals: &BTreeMap<usize, GRat>) -> Result<Poly, ScalarError> {
        let mut out = Poly::zero(&self.sig);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut expo = e.clone();
            for (&idx, v) in vals {
                let k = expo[idx];
                expo[idx] = 0;
                if k == 0 {
                    continue;
                }
                if v.is_zero() {
                    if k < 0 {
                        return Err(ScalarError::PoleAtLimit(format!(
                            "{} -> 0 raised to {}",
                            self.sig.even[idx], k
                        )));
                    }
                    coeff = GRat::zero();
                    break;
                }
                coeff = &coeff * &v.pow(k).unwrap();
            }
            out.insert(expo, coeff);
        }
        Ok(out)
    }

    /// Applies a Gaussian conjugation to every coefficient.
    pub fn conj_coeffs(&self) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    /// Keeps only terms whose weighted total degree passes the filter.
    pub fn filter_terms(&self, keep: impl Fn(&Expo) -> bool) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Smallest weighted degree among terms; `None` for the zero polynomial.
    pub fn min_weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(&x, &w)| x as i64 * w).sum())
            .min()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.sig.even[i].clone()
                    } else {
                        format!("{}^{}", self.sig.even[i], x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", c, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<ParamSig> {
        ParamSig::new(&["q", "p"], &[])
    }

    fn q(s: &Arc<ParamSig>) -> Poly {
        Poly::var(s, 0, 1)
    }

    #[test]
    fn ring_laws() {
        let s = sig();
        let a = q(&s).add(&Poly::one(&s));
        let b = q(&s).sub(&Poly::one(&s));
        let prod = a.mul(&b);
        let direct = q(&s).mul(&q(&s)).sub(&Poly::one(&s));
        assert_eq!(prod, direct);
    }

    #[test]
    fn exact_division() {
        let s = sig();
        let q2m1 = q(&s).pow(2).sub(&Poly::one(&s));
        let qm1 = q(&s).sub(&Poly::one(&s));
        let quo = q2m1.exact_div(&qm1).unwrap();
        assert_eq!(quo, q(&s).add(&Poly::one(&s)));
        assert!(q2m1.add(&Poly::one(&s)).exact_div(&qm1).is_none());
    }

    #[test]
    fn laurent_normalize() {
        let s = sig();
        // 2*q^-1*(q - 1) = 2 - 2*q^-1
        let p = Poly::monomial(&s, vec![0, 0], GRat::from_int(2))
            .sub(&Poly::monomial(&s, vec![-1, 0], GRat::from_int(2)));
        let (unit, shift, monic) = p.normalize();
        assert_eq!(unit, GRat::from_int(2));
        assert_eq!(shift, vec![-1, 0]);
        assert_eq!(monic, q(&s).sub(&Poly::one(&s)));
    }
}
