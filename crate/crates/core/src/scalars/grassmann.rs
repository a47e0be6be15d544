//! Grassmann-valued scalars: linear combinations of monomials in the odd
//! (anticommuting, square-zero) parameters with rational-function coefficients.
//! Components are keyed by a bitmask over the signature's odd parameter list.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::gaussian::GRat;
use super::ratfun::RatFun;
use super::{ParamSig, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GScalar {
    sig: Arc<ParamSig>,
    comps: BTreeMap<u64, RatFun>,
}

/// Sign of merging the odd monomial `b` after `a` into sorted order:
/// counts inversions between the two sorted bit sets.
fn merge_sign(a: u64, b: u64) -> i8 {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // bits of `a` strictly above position j must jump over b_j
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GScalar {
    pub fn zero(sig: &Arc<ParamSig>) -> Self {
        GScalar { sig: sig.clone(), comps: BTreeMap::new() }
    }

    pub fn one(sig: &Arc<ParamSig>) -> Self {
        GScalar::from_ratfun(sig, RatFun::one(sig))
    }

    pub fn from_ratfun(sig: &Arc<ParamSig>, r: RatFun) -> Self {
        let mut s = GScalar::zero(sig);
        s.insert(0, r);
        s
    }

    pub fn constant(sig: &Arc<ParamSig>, c: GRat) -> Self {
        GScalar::from_ratfun(sig, RatFun::constant(sig, c))
    }

    pub fn from_int(sig: &Arc<ParamSig>, n: i64) -> Self {
        GScalar::constant(sig, GRat::from_int(n))
    }

    pub fn even_var(sig: &Arc<ParamSig>, name: &str) -> Self {
        let idx = sig.even_index(name).unwrap_or_else(|| panic!("unknown even parameter {name}"));
        GScalar::from_ratfun(sig, RatFun::var(sig, idx, 1))
    }

    pub fn odd_var(sig: &Arc<ParamSig>, name: &str) -> Self {
        let idx = sig.odd_index(name).unwrap_or_else(|| panic!("unknown odd parameter {name}"));
        let mut s = GScalar::zero(sig);
        s.insert(1u64 << idx, RatFun::one(sig));
        s
    }

    pub fn component(sig: &Arc<ParamSig>, mask: u64, r: RatFun) -> Self {
        let mut s = GScalar::zero(sig);
        s.insert(mask, r);
        s
    }

    pub fn sig(&self) -> &Arc<ParamSig> {
        &self.sig
    }

    pub fn comps(&self) -> impl Iterator<Item = (&u64, &RatFun)> {
        self.comps.iter()
    }

    fn insert(&mut self, mask: u64, r: RatFun) {
        if r.is_zero() {
            return;
        }
        match self.comps.get_mut(&mask) {
            Some(prev) => {
                let sum = prev.add(&r);
                if sum.is_zero() {
                    self.comps.remove(&mask);
                } else {
                    *prev = sum;
                }
            }
            None => {
                self.comps.insert(mask, r);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.comps.len() == 1 && self.comps.get(&0).map(|r| r.is_one()).unwrap_or(false)
    }

    pub fn eq(&self, rhs: &GScalar) -> bool {
        self.sub(rhs).is_zero()
    }

    pub fn pow_scalar(&self, e: u32) -> GScalar {
        let mut out = GScalar::one(&self.sig);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The coefficient of the empty odd monomial.
    pub fn body(&self) -> RatFun {
        self.comps.get(&0).cloned().unwrap_or_else(|| RatFun::zero(&self.sig))
    }

    /// Parity if homogeneous: 0 (even), 1 (odd); `None` when mixed or zero.
    pub fn parity(&self) -> Option<u8> {
        let mut par = None;
        for mask in self.comps.keys() {
            let p = (mask.count_ones() % 2) as u8;
            match par {
                None => par = Some(p),
                Some(q) if q == p => {}
                _ => return None,
            }
        }
        par
    }

    pub fn is_even(&self) -> bool {
        self.is_zero() || self.parity() == Some(0)
    }

    /// Minimum number of odd factors across components (nilpotency degree 0
    /// means the body is present). `None` for zero.
    pub fn min_odd_degree(&self) -> Option<u32> {
        self.comps.keys().map(|m| m.count_ones()).min()
    }

    pub fn add(&self, rhs: &GScalar) -> GScalar {
        assert_eq!(self.sig, rhs.sig);
        let mut out = self.clone();
        for (m, r) in &rhs.comps {
            out.insert(*m, r.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &GScalar) -> GScalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> GScalar {
        GScalar {
            sig: self.sig.clone(),
            comps: self.comps.iter().map(|(m, r)| (*m, r.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &GScalar) -> GScalar {
        assert_eq!(self.sig, rhs.sig);
        let mut out = GScalar::zero(&self.sig);
        for (m1, r1) in &self.comps {
            for (m2, r2) in &rhs.comps {
                if m1 & m2 != 0 {
                    continue; // repeated odd factor squares to zero
                }
                let mut prod = r1.mul(r2);
                if merge_sign(*m1, *m2) < 0 {
                    prod = prod.neg();
                }
                out.insert(m1 | m2, prod);
            }
        }
        out
    }

    pub fn scale(&self, r: &RatFun) -> GScalar {
        let mut out = GScalar::zero(&self.sig);
        for (m, c) in &self.comps {
            out.insert(*m, c.mul(r));
        }
        out
    }

    /// Flips the sign of odd-parity components; this is the Koszul transport
    /// of the scalar across an odd element.
    pub fn koszul_flip(&self) -> GScalar {
        GScalar {
            sig: self.sig.clone(),
            comps: self
                .comps
                .iter()
                .map(|(m, r)| (*m, if m.count_ones() % 2 == 1 { r.neg() } else { r.clone() }))
                .collect(),
        }
    }

    /// Inverse when the body is a nonzero rational function: writes
    /// `self = b(1 + n)` with `n` nilpotent and sums the finite geometric
    /// series.
    pub fn inv(&self) -> Result<GScalar, ScalarError> {
        let body = self.body();
        if body.is_zero() {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        let binv = GScalar::from_ratfun(&self.sig, body.inv()?);
        let n = binv.mul(self).sub(&GScalar::one(&self.sig)); // nilpotent
        let mut out = GScalar::one(&self.sig);
        let mut pw = GScalar::one(&self.sig);
        loop {
            pw = pw.mul(&n).neg();
            if pw.is_zero() {
                break;
            }
            out = out.add(&pw);
        }
        Ok(out.mul(&binv))
    }

    pub fn limit(&self, vals: &BTreeMap<usize, GRat>) -> Result<GScalar, ScalarError> {
        let mut out = GScalar::zero(&self.sig);
        for (m, r) in &self.comps {
            out.insert(*m, r.limit(vals)?);
        }
        Ok(out)
    }

    /// Conjugation by a `ConjSpec`: coefficients get their even parameters
    /// substituted (and optionally `i` negated), odd monomials are mapped
    /// symbol-by-symbol and reversed, with the resulting permutation sign.
    pub fn conj(&self, spec: &ConjSpec) -> Result<GScalar, ScalarError> {
        let mut out = GScalar::zero(&self.sig);
        for (m, r) in &self.comps {
            let coeff = r.subst_even(&spec.even_images, spec.conj_i)?;
            // Collect mask bits ascending, then process the starred product
            // in reverse order, inserting into a sorted accumulator.
            let mut sign = 1i8;
            let mut acc: Vec<usize> = Vec::new();
            let mut bits: Vec<usize> = Vec::new();
            let mut mm = *m;
            while mm != 0 {
                let j = mm.trailing_zeros() as usize;
                bits.push(j);
                mm &= mm - 1;
            }
            for &j in bits.iter().rev() {
                let (negate, img) = spec.odd_images[j];
                if negate {
                    sign = -sign;
                }
                // insertion sort position; count how many accumulated symbols
                // the new one must jump over (it is appended at the right)
                let pos = acc.iter().position(|&k| k > img).unwrap_or(acc.len());
                let jumps = acc.len() - pos;
                if acc.contains(&img) {
                    sign = 0; // non-injective image: component dies
                    break;
                }
                if jumps % 2 == 1 {
                    sign = -sign;
                }
                acc.insert(pos, img);
            }
            if sign == 0 {
                continue;
            }
            let mut mask = 0u64;
            for j in acc {
                mask |= 1u64 << j;
            }
            let coeff = if sign < 0 { coeff.neg() } else { coeff };
            out.insert(mask, coeff);
        }
        Ok(out)
    }

    /// Keeps only the components whose odd mask passes the filter (e.g.
    /// dropping every monomial containing both h and h').
    pub fn retain_comps(&self, keep: impl Fn(u64) -> bool) -> GScalar {
        let mut out = GScalar::zero(&self.sig);
        for (m, r) in &self.comps {
            if keep(*m) {
                out.insert(*m, r.clone());
            }
        }
        out
    }

    /// Substitutes even parameters without touching the odd monomials or the
    /// imaginary unit (a plain ring endomorphism, not a conjugation).
    pub fn subst_even_only(&self, images: &[RatFun]) -> Result<GScalar, ScalarError> {
        let mut out = GScalar::zero(&self.sig);
        for (m, r) in &self.comps {
            out.insert(*m, r.subst_even(images, false)?);
        }
        Ok(out)
    }

    /// Substitutes odd parameters by signed odd parameters (or zero), e.g. the
    /// constraint `hbar -> -h`. `map[j] = None` sends the symbol to zero.
    pub fn subst_odd(&self, map: &[Option<(bool, usize)>]) -> GScalar {
        let mut out = GScalar::zero(&self.sig);
        'comp: for (m, r) in &self.comps {
            let mut sign = 1i8;
            let mut acc: Vec<usize> = Vec::new();
            let mut mm = *m;
            // process ascending; each image lands at the right end then sorts in
            while mm != 0 {
                let j = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                let Some((negate, img)) = map[j] else { continue 'comp };
                if negate {
                    sign = -sign;
                }
                if acc.contains(&img) {
                    continue 'comp;
                }
                let pos = acc.iter().position(|&k| k > img).unwrap_or(acc.len());
                let jumps = acc.len() - pos;
                if jumps % 2 == 1 {
                    sign = -sign;
                }
                acc.insert(pos, img);
            }
            let mut mask = 0u64;
            for j in acc {
                mask |= 1u64 << j;
            }
            let coeff = if sign < 0 { r.neg() } else { r.clone() };
            out.insert(mask, coeff);
        }
        out
    }

    /// Keeps only components/terms whose weighted even-exponent degree plus
    /// odd weight stays within `bound` (used for exponential truncations).
    pub fn truncate_weighted(&self, even_weights: &[i64], bound: i64) -> GScalar {
        let mut out = GScalar::zero(&self.sig);
        for (m, r) in &self.comps {
            let kept = r.filter_num_terms(|e| {
                let d: i64 = e.iter().zip(even_weights).map(|(&x, &w)| x as i64 * w).sum();
                d <= bound
            });
            out.insert(*m, kept);
        }
        out
    }

    /// Renames this scalar into a larger signature (matching by name).
    pub fn promote(&self, target: &Arc<ParamSig>) -> Result<GScalar, ScalarError> {
        let even_map: Vec<usize> = self
            .sig
            .even
            .iter()
            .map(|n| target.even_index(n).ok_or_else(|| ScalarError::UnknownParameter(n.clone())))
            .collect::<Result<_, _>>()?;
        let odd_map: Vec<usize> = self
            .sig
            .odd
            .iter()
            .map(|n| target.odd_index(n).ok_or_else(|| ScalarError::UnknownParameter(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = GScalar::zero(target);
        for (m, r) in &self.comps {
            let mut mask = 0u64;
            let mut mm = *m;
            while mm != 0 {
                let j = mm.trailing_zeros() as usize;
                mask |= 1u64 << odd_map[j];
                mm &= mm - 1;
            }
            // rebuild the rational function term by term
            let map_poly = |p: &super::poly::Poly| {
                let mut acc = RatFun::zero(target);
                for (e, c) in p.terms() {
                    let mut expo = vec![0i32; target.even.len()];
                    for (i, &x) in e.iter().enumerate() {
                        expo[even_map[i]] = x;
                    }
                    acc = acc.add(&RatFun::from_poly(super::poly::Poly::monomial(
                        target,
                        expo,
                        c.clone(),
                    )));
                }
                acc
            };
            let mut coeff = map_poly(r.num());
            for (f, &k) in r.den_factors() {
                let fi = map_poly(f);
                for _ in 0..k {
                    coeff = coeff.div(&fi).map_err(|_| ScalarError::DivisionByZero)?;
                }
            }
            out.insert(mask, coeff);
        }
        Ok(out)
    }
}

/// An involutive conjugation of the parameter ring: images for every even
/// parameter (rational functions), signed images for every odd parameter
/// (odd conjugations reverse products, which `GScalar::conj` accounts for),
/// and whether `i` maps to `-i`.
#[derive(Debug, Clone)]
pub struct ConjSpec {
    pub even_images: Vec<RatFun>,
    pub odd_images: Vec<(bool, usize)>,
    pub conj_i: bool,
}

impl ConjSpec {
    /// Identity on everything.
    pub fn identity(sig: &Arc<ParamSig>) -> Self {
        ConjSpec {
            even_images: (0..sig.even.len()).map(|i| RatFun::var(sig, i, 1)).collect(),
            odd_images: (0..sig.odd.len()).map(|i| (false, i)).collect(),
            conj_i: false,
        }
    }

    pub fn with_even(mut self, sig: &Arc<ParamSig>, name: &str, image: RatFun) -> Self {
        self.even_images[sig.even_index(name).unwrap()] = image;
        self
    }

    pub fn with_odd(mut self, sig: &Arc<ParamSig>, name: &str, negate: bool, image: &str) -> Self {
        self.odd_images[sig.odd_index(name).unwrap()] = (negate, sig.odd_index(image).unwrap());
        self
    }

    /// Checks the spec squares to the identity on all parameters.
    pub fn is_involutive(&self, sig: &Arc<ParamSig>) -> bool {
        for i in 0..sig.even.len() {
            let img = &self.even_images[i];
            let twice = match img.subst_even(&self.even_images, self.conj_i) {
                Ok(t) => t,
                Err(_) => return false,
            };
            if !twice.eq(&RatFun::var(sig, i, 1)) {
                return false;
            }
        }
        for j in 0..sig.odd.len() {
            let (neg1, k) = self.odd_images[j];
            let (neg2, l) = self.odd_images[k];
            if l != j || (neg1 ^ neg2) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for GScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, r) in &self.comps {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let mut parts = vec![format!("{}", r)];
            let mut mm = *m;
            while mm != 0 {
                let j = mm.trailing_zeros() as usize;
                parts.push(self.sig.odd[j].clone());
                mm &= mm - 1;
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<ParamSig> {
        ParamSig::new(&["q", "p"], &["h", "h'"])
    }

    #[test]
    fn odd_squares_vanish_and_anticommute() {
        let s = sig();
        let h = GScalar::odd_var(&s, "h");
        let hp = GScalar::odd_var(&s, "h'");
        assert!(h.mul(&h).is_zero());
        assert!(h.mul(&hp).add(&hp.mul(&h)).is_zero());
        assert!(!h.mul(&hp).is_zero());
    }

    #[test]
    fn inverse_of_unipotent() {
        let s = sig();
        let one = GScalar::one(&s);
        let h = GScalar::odd_var(&s, "h");
        let hp = GScalar::odd_var(&s, "h'");
        let u = one.add(&h.mul(&hp));
        let uinv = u.inv().unwrap();
        assert!(u.mul(&uinv).is_one());
        // (1 + hh')^-1 = 1 - hh'
        assert!(uinv.eq(&one.sub(&h.mul(&hp))));
        assert!(h.inv().is_err());
    }

    #[test]
    fn conj_reverses_odd_products() {
        let s = sig();
        // star: q -> q^-1, h -> -h, h' -> h'
        let spec = ConjSpec::identity(&s)
            .with_even(&s, "q", RatFun::var(&s, 0, -1))
            .with_odd(&s, "h", true, "h");
        assert!(spec.is_involutive(&s));
        let h = GScalar::odd_var(&s, "h");
        let hp = GScalar::odd_var(&s, "h'");
        let prod = h.mul(&hp);
        // (h h')* = h'* h* = h' (-h) = h h'
        let starred = prod.conj(&spec).unwrap();
        assert!(starred.eq(&prod));
        // q h -> q^-1 (-h)
        let qh = GScalar::even_var(&s, "q").mul(&h);
        let img = qh.conj(&spec).unwrap();
        let expect = GScalar::from_ratfun(&s, RatFun::var(&s, 0, -1)).mul(&h).neg();
        assert!(img.eq(&expect));
    }

    #[test]
    fn koszul_flip_only_negates_odd_part() {
        let s = sig();
        let x = GScalar::one(&s).add(&GScalar::odd_var(&s, "h"));
        let flipped = x.koszul_flip();
        assert!(flipped.eq(&GScalar::one(&s).sub(&GScalar::odd_var(&s, "h"))));
    }
}
