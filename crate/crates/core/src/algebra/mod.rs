//! Noncommutative polynomials over Grassmann-valued scalars and graded
//! presentations with oriented rewrite rules.
//!
//! Generators are listed in ascending precedence; normal forms sort words
//! toward ascending generator index (PBW order). Scalar coefficients always
//! sit on the left of a word; moving an odd scalar across an odd word costs
//! the Koszul sign, which every operation below accounts for.

pub mod oracle;
pub mod presentation;
pub mod presets;
pub mod span;
pub mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalars::grassmann::GScalar;
use crate::scalars::parse::Ast;
use crate::scalars::{ParamSig, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub name: String,
    pub parity: u8,
}

/// Generator table plus scalar signature; shared by all polynomials of an
/// algebra. Generator order in `gens` is the precedence used by rewriting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgSig {
    pub gens: Vec<GenSpec>,
    pub scal: Arc<ParamSig>,
}

impl AlgSig {
    pub fn new(gens: Vec<(&str, u8)>, scal: &Arc<ParamSig>) -> Arc<Self> {
        let gens: Vec<GenSpec> = gens
            .into_iter()
            .map(|(n, p)| GenSpec { name: n.to_string(), parity: p })
            .collect();
        let mut names: Vec<&String> = gens.iter().map(|g| &g.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), gens.len(), "duplicate generator name");
        Arc::new(AlgSig { gens, scal: scal.clone() })
    }

    pub fn index(&self, name: &str) -> Option<u16> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn parity(&self, g: u16) -> u8 {
        self.gens[g as usize].parity
    }

    pub fn word_parity(&self, w: &[u16]) -> u8 {
        w.iter().map(|&g| self.parity(g) as u32).sum::<u32>() as u8 % 2
    }
}

pub type Word = Vec<u16>;

/// Number of descending pairs; the rewriting order's tie-breaker.
pub fn inversions(w: &[u16]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// Total order on words used to pick leading terms when orienting relations:
/// longer first, then more inversions, then lexicographically larger.
pub fn word_cmp(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| inversions(a).cmp(&inversions(b)))
        .then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPoly {
    sig: Arc<AlgSig>,
    terms: BTreeMap<Word, GScalar>,
}

impl SuperPoly {
    pub fn zero(sig: &Arc<AlgSig>) -> Self {
        SuperPoly { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn one(sig: &Arc<AlgSig>) -> Self {
        SuperPoly::term(sig, Vec::new(), GScalar::one(&sig.scal))
    }

    pub fn gen(sig: &Arc<AlgSig>, name: &str) -> Self {
        let idx = sig.index(name).unwrap_or_else(|| panic!("unknown generator {name}"));
        SuperPoly::term(sig, vec![idx], GScalar::one(&sig.scal))
    }

    pub fn gen_idx(sig: &Arc<AlgSig>, idx: u16) -> Self {
        SuperPoly::term(sig, vec![idx], GScalar::one(&sig.scal))
    }

    pub fn scalar(sig: &Arc<AlgSig>, c: GScalar) -> Self {
        SuperPoly::term(sig, Vec::new(), c)
    }

    pub fn term(sig: &Arc<AlgSig>, w: Word, c: GScalar) -> Self {
        let mut p = SuperPoly::zero(sig);
        p.insert(w, c);
        p
    }

    pub fn sig(&self) -> &Arc<AlgSig> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[u16]) -> GScalar {
        self.terms.get(w).cloned().unwrap_or_else(|| GScalar::zero(&self.sig.scal))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eq(&self, rhs: &SuperPoly) -> bool {
        self.sub(rhs).is_zero()
    }

    pub(crate) fn insert(&mut self, w: Word, c: GScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(prev) => {
                let sum = prev.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *prev = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, rhs: &SuperPoly) -> SuperPoly {
        assert_eq!(self.sig, rhs.sig);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SuperPoly) -> SuperPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SuperPoly {
        SuperPoly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    /// Product; the right coefficient is Koszul-transported across the left
    /// word before the scalars multiply.
    pub fn mul(&self, rhs: &SuperPoly) -> SuperPoly {
        assert_eq!(self.sig, rhs.sig);
        let mut out = SuperPoly::zero(&self.sig);
        for (w1, c1) in &self.terms {
            let flip = self.sig.word_parity(w1) == 1;
            for (w2, c2) in &rhs.terms {
                let c2t = if flip { c2.koszul_flip() } else { c2.clone() };
                let coeff = c1.mul(&c2t);
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.insert(w, coeff);
            }
        }
        out
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: &GScalar) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        for (w, k) in &self.terms {
            out.insert(w.clone(), c.mul(k));
        }
        out
    }

    /// Right multiplication by a scalar: `(c w) s = c (w s) = c Koszul(s) w`.
    pub fn scale_right(&self, s: &GScalar) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        for (w, k) in &self.terms {
            let st = if self.sig.word_parity(w) == 1 { s.koszul_flip() } else { s.clone() };
            out.insert(w.clone(), k.mul(&st));
        }
        out
    }

    pub fn pow(&self, e: u32) -> SuperPoly {
        let mut out = SuperPoly::one(&self.sig);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes each generator by an image polynomial (indexed by
    /// generator), multiplying images in word order.
    pub fn subst_gens(&self, images: &[SuperPoly], target: &Arc<AlgSig>) -> SuperPoly {
        let mut out = SuperPoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = SuperPoly::scalar(
                target,
                c.promote(&target.scal).expect("coefficient promotes to target signature"),
            );
            for &g in w {
                acc = acc.mul(&images[g as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&GScalar) -> GScalar) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        for (w, c) in &self.terms {
            out.insert(w.clone(), f(c));
        }
        out
    }

    /// Same, but fallible (limits, conjugations).
    pub fn try_map_coeffs(
        &self,
        f: impl Fn(&GScalar) -> Result<GScalar, ScalarError>,
    ) -> Result<SuperPoly, ScalarError> {
        let mut out = SuperPoly::zero(&self.sig);
        for (w, c) in &self.terms {
            out.insert(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Leading term under `word_cmp`, restricted to terms whose coefficient
    /// passes the filter.
    pub fn leading_where(&self, pred: impl Fn(&GScalar) -> bool) -> Option<(&Word, &GScalar)> {
        self.terms
            .iter()
            .filter(|(_, c)| pred(c))
            .max_by(|(a, _), (b, _)| word_cmp(a, b))
    }

    /// Evaluates a parsed expression in this algebra: identifiers resolve to
    /// generators first, then scalar parameters.
    pub fn from_ast(ast: &Ast, sig: &Arc<AlgSig>) -> Result<SuperPoly, ScalarError> {
        match ast {
            Ast::Ident(name) if sig.index(name).is_some() => Ok(SuperPoly::gen(sig, name)),
            Ast::Neg(a) => Ok(Self::from_ast(a, sig)?.neg()),
            Ast::Add(a, b) => Ok(Self::from_ast(a, sig)?.add(&Self::from_ast(b, sig)?)),
            Ast::Sub(a, b) => Ok(Self::from_ast(a, sig)?.sub(&Self::from_ast(b, sig)?)),
            Ast::Mul(a, b) => Ok(Self::from_ast(a, sig)?.mul(&Self::from_ast(b, sig)?)),
            Ast::Div(a, b) => {
                let den = Self::from_ast(b, sig)?;
                let c = den
                    .as_scalar()
                    .ok_or_else(|| ScalarError::Parse("division by a non-scalar".into()))?;
                Ok(Self::from_ast(a, sig)?.scale_right(&c.inv()?))
            }
            Ast::Pow(a, e) => {
                let base = Self::from_ast(a, sig)?;
                if *e < 0 {
                    let c = base.as_scalar().ok_or_else(|| {
                        ScalarError::Parse("negative power of a non-scalar".into())
                    })?;
                    return Ok(SuperPoly::scalar(sig, c.inv()?.pow_scalar(e.unsigned_abs())));
                }
                Ok(base.pow(*e as u32))
            }
            other => {
                let c = crate::scalars::parse::parse_scalar_ast(other, &sig.scal)?;
                Ok(SuperPoly::scalar(sig, c))
            }
        }
    }

    pub fn parse(input: &str, sig: &Arc<AlgSig>) -> Result<SuperPoly, ScalarError> {
        Self::from_ast(&crate::scalars::parse::parse_ast(input)?, sig)
    }

    /// The constant coefficient when the polynomial has no generator letters.
    pub fn as_scalar(&self) -> Option<GScalar> {
        if self.is_zero() {
            return Some(GScalar::zero(&self.sig.scal));
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Vec::new()) {
                return Some(c.clone());
            }
        }
        None
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut sorted: Vec<(&Word, &GScalar)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| word_cmp(b, a));
        let mut first = true;
        for (w, c) in sorted {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let coeff = c.to_string();
            let needs_parens = coeff.contains(" + ") || coeff.contains(" - ");
            let mut parts: Vec<String> = Vec::new();
            if !(c.is_one() && !w.is_empty()) {
                if needs_parens {
                    parts.push(format!("({})", coeff));
                } else {
                    parts.push(coeff);
                }
            }
            for &g in w.iter() {
                parts.push(self.sig.gens[g as usize].name.clone());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Arc<AlgSig> {
        let scal = ParamSig::new(&["q"], &["h"]);
        AlgSig::new(vec![("theta", 1), ("x", 0)], &scal)
    }

    #[test]
    fn odd_scalar_anticommutes_with_odd_generator() {
        let a = alg();
        let theta = SuperPoly::gen(&a, "theta");
        let h = SuperPoly::parse("h", &a).unwrap();
        // theta * h = -h * theta
        let lhs = theta.mul(&h);
        let rhs = h.mul(&theta).neg();
        assert!(lhs.eq(&rhs));
        // and x * h = h * x
        let x = SuperPoly::gen(&a, "x");
        assert!(x.mul(&h).eq(&h.mul(&x)));
    }

    #[test]
    fn parse_mixed_products() {
        let a = alg();
        let p = SuperPoly::parse("x*h*theta - h*x*theta", &a).unwrap();
        assert!(p.is_zero());
        let p2 = SuperPoly::parse("theta*h*x + h*theta*x", &a).unwrap();
        assert!(p2.is_zero());
    }

    #[test]
    fn associativity_spot_check() {
        let a = alg();
        let u = SuperPoly::parse("h*theta + q*x", &a).unwrap();
        let v = SuperPoly::parse("theta*x - h*x", &a).unwrap();
        let w = SuperPoly::parse("x + h*theta", &a).unwrap();
        assert!(u.mul(&v).mul(&w).eq(&u.mul(&v.mul(&w))));
    }
}
