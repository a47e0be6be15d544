//! Fractions of Laurent polynomials, kept reduced against a factored
//! denominator. Denominator factors are monic, monomial-free and non-constant;
//! monomial and unit content always lives in the numerator (Laurent monomials
//! are invertible). A fraction is zero iff its numerator is zero, so equality
//! is decidable without a multivariate gcd.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::gaussian::GRat;
use super::poly::{Expo, Poly};
use super::{ParamSig, ScalarError};

#[derive(Debug, Clone, PartialOrd, Ord, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl RatFun {
    pub fn zero(sig: &Arc<ParamSig>) -> Self {
        RatFun { num: Poly::zero(sig), den: BTreeMap::new() }
    }

    pub fn one(sig: &Arc<ParamSig>) -> Self {
        RatFun { num: Poly::one(sig), den: BTreeMap::new() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: BTreeMap::new() }
    }

    pub fn constant(sig: &Arc<ParamSig>, c: GRat) -> Self {
        RatFun::from_poly(Poly::constant(sig, c))
    }

    pub fn var(sig: &Arc<ParamSig>, idx: usize, exp: i32) -> Self {
        RatFun::from_poly(Poly::var(sig, idx, exp))
    }

    pub fn sig(&self) -> &Arc<ParamSig> {
        self.num.sig()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &BTreeMap<Poly, u32> {
        &self.den
    }

    pub fn den_poly(&self) -> Poly {
        let mut d = Poly::one(self.sig());
        for (f, &k) in &self.den {
            d = d.mul(&f.pow(k));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<GRat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else if self.num.is_zero() {
            Some(GRat::zero())
        } else {
            None
        }
    }

    pub fn eq(&self, rhs: &RatFun) -> bool {
        self.sub(rhs).is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut den = BTreeMap::new();
        for (f, mut k) in std::mem::take(&mut self.den) {
            while k > 0 {
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                den.insert(f, k);
            }
        }
        self.den = den;
    }

    fn raw(num: Poly, den: BTreeMap<Poly, u32>) -> RatFun {
        let mut out = RatFun { num, den };
        out.reduce();
        out
    }

    /// Pushes a polynomial divisor into the denominator: unit and monomial
    /// content are inverted into the numerator, the monic part is recorded as
    /// a factor (constants disappear entirely).
    fn div_poly(&self, d: &Poly) -> Result<RatFun, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (unit, shift, monic) = d.normalize();
        let inv_mono = Poly::monomial(
            self.sig(),
            shift.iter().map(|x| -x).collect::<Expo>(),
            unit.inv().unwrap(),
        );
        let mut den = self.den.clone();
        if !monic.is_one() {
            *den.entry(monic).or_insert(0) += 1;
        }
        Ok(RatFun::raw(self.num.mul(&inv_mono), den))
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        // Common denominator over the union of factor multisets.
        let mut den: BTreeMap<Poly, u32> = self.den.clone();
        for (f, &k) in &rhs.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let mut lnum = self.num.clone();
        let mut rnum = rhs.num.clone();
        for (f, &k) in &den {
            let lk = self.den.get(f).copied().unwrap_or(0);
            let rk = rhs.den.get(f).copied().unwrap_or(0);
            if k > lk {
                lnum = lnum.mul(&f.pow(k - lk));
            }
            if k > rk {
                rnum = rnum.mul(&f.pow(k - rk));
            }
        }
        RatFun::raw(lnum.add(&rnum), den)
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        let mut den = self.den.clone();
        for (f, &k) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RatFun::raw(self.num.mul(&rhs.num), den)
    }

    pub fn scale(&self, c: &GRat) -> RatFun {
        RatFun::raw(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFun, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut num = Poly::one(self.sig());
        for (f, &k) in &self.den {
            num = num.mul(&f.pow(k));
        }
        RatFun::from_poly(num).div_poly(&self.num)
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFun, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = RatFun::one(self.sig());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Evaluates a subset of the even variables at exact points, cancelling
    /// vanishing denominator factors against the numerator first. Errors with
    /// `PoleAtLimit` when a factor vanishes and does not divide the numerator.
    pub fn limit(&self, vals: &BTreeMap<usize, GRat>) -> Result<RatFun, ScalarError> {
        let mut cur = self.clone();
        cur.reduce();
        let num = cur.num.eval_partial(vals)?;
        let mut out = RatFun::from_poly(num);
        for (f, &k) in &cur.den {
            let fe = f.eval_partial(vals)?;
            if fe.is_zero() {
                return Err(ScalarError::PoleAtLimit(format!(
                    "denominator factor {} vanishes",
                    f
                )));
            }
            for _ in 0..k {
                out = out.div_poly(&fe)?;
            }
        }
        Ok(out)
    }

    /// Substitutes every even variable by a rational function (images indexed
    /// like the signature's even list), optionally conjugating `i`. Images of
    /// variables occurring with negative exponents must be invertible.
    pub fn subst_even(
        &self,
        images: &[RatFun],
        conj_i: bool,
    ) -> Result<RatFun, ScalarError> {
        let sig = images
            .first()
            .map(|r| r.sig().clone())
            .unwrap_or_else(|| self.sig().clone());
        let map_poly = |p: &Poly| -> Result<RatFun, ScalarError> {
            let mut acc = RatFun::zero(&sig);
            for (e, c) in p.terms() {
                let c = if conj_i { c.conj() } else { c.clone() };
                let mut t = RatFun::constant(&sig, c);
                for (idx, &k) in e.iter().enumerate() {
                    if k != 0 {
                        t = t.mul(&images[idx].pow(k)?);
                    }
                }
                acc = acc.add(&t);
            }
            Ok(acc)
        };
        let mut out = map_poly(&self.num)?;
        for (f, &k) in &self.den {
            let fi = map_poly(f)?;
            for _ in 0..k {
                out = out.div(&fi)?;
            }
        }
        Ok(out)
    }

    /// Smallest weighted degree of the numerator (denominators are required to
    /// have weight zero by the caller); used for series truncation.
    pub fn min_weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.num.min_weighted_degree(weights)
    }

    /// Drops numerator terms failing the filter (series truncation).
    pub fn filter_num_terms(&self, keep: impl Fn(&Expo) -> bool) -> RatFun {
        RatFun { num: self.num.filter_terms(keep), den: self.den.clone() }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            if self.num.terms().count() > 1 {
                return write!(f, "({})", self.num);
            }
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<ParamSig> {
        ParamSig::new(&["q", "p"], &[])
    }

    fn q(s: &Arc<ParamSig>) -> RatFun {
        RatFun::var(s, 0, 1)
    }

    #[test]
    fn removable_singularity_cancels() {
        let s = sig();
        let one = RatFun::one(&s);
        // (q^2 - 1)/(q - 1) -> q + 1, limit at q = 1 is 2.
        let f = q(&s).mul(&q(&s)).sub(&one).div(&q(&s).sub(&one)).unwrap();
        assert_eq!(f, q(&s).add(&one));
        let mut at = BTreeMap::new();
        at.insert(0, GRat::one());
        assert_eq!(f.limit(&at).unwrap(), RatFun::constant(&s, GRat::from_int(2)));
    }

    #[test]
    fn genuine_pole_reported() {
        let s = sig();
        let one = RatFun::one(&s);
        let f = one.div(&q(&s).sub(&one)).unwrap();
        let mut at = BTreeMap::new();
        at.insert(0, GRat::one());
        assert!(matches!(f.limit(&at), Err(ScalarError::PoleAtLimit(_))));
    }

    #[test]
    fn field_laws() {
        let s = sig();
        let one = RatFun::one(&s);
        let p = RatFun::var(&s, 1, 1);
        let a = q(&s).add(&one).div(&p.sub(&q(&s))).unwrap();
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert!(a.sub(&a).is_zero());
        // Laurent monomials never land in the denominator factor set.
        let b = one.div(&q(&s)).unwrap();
        assert!(b.den_factors().is_empty());
    }

    #[test]
    fn deferred_cancellation_across_sums() {
        let s = sig();
        let one = RatFun::one(&s);
        let qm1 = q(&s).sub(&one);
        // 1/(q-1) + (q-2)/(q-1) = (q-1)/(q-1) = 1
        let f = one.div(&qm1).unwrap().add(
            &q(&s).sub(&RatFun::constant(&s, GRat::from_int(2))).div(&qm1).unwrap(),
        );
        assert!(f.is_one());
    }
}
