//! Exact linear spans of relations over the even fraction field.
//!
//! A relation is flattened to a sparse vector indexed by (word, odd-monomial
//! mask); closing a relation set under left multiplication by the odd
//! parameters makes span comparison decide two-sided-ideal equality in the
//! quadratic, parity-homogeneous setting the deformed matrix algebras live in.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{inversions, AlgSig, SuperPoly, Word};
use crate::scalars::grassmann::GScalar;
use crate::scalars::ratfun::RatFun;

pub type VecKey = (Word, u64);

/// Pivot preference: longer words first, then lower odd degree, then more
/// inversions, then lexicographic, then mask. Mirrors the rewriting measure
/// so echelon reduction eliminates the same leading words rewriting does.
pub fn key_cmp(a: &VecKey, b: &VecKey) -> std::cmp::Ordering {
    a.0.len()
        .cmp(&b.0.len())
        .then_with(|| b.1.count_ones().cmp(&a.1.count_ones()))
        .then_with(|| inversions(&a.0).cmp(&inversions(&b.0)))
        .then_with(|| a.0.cmp(&b.0))
        .then_with(|| a.1.cmp(&b.1))
}

pub type Row = BTreeMap<VecKey, RatFun>;

pub fn poly_to_row(p: &SuperPoly) -> Row {
    let mut row = Row::new();
    for (w, c) in p.terms() {
        for (mask, f) in c.comps() {
            row.insert((w.clone(), *mask), f.clone());
        }
    }
    row
}

pub fn row_to_poly(row: &Row, sig: &Arc<AlgSig>) -> SuperPoly {
    let mut out = SuperPoly::zero(sig);
    for ((w, mask), f) in row {
        out.insert(w.clone(), GScalar::component(&sig.scal, *mask, f.clone()));
    }
    out
}

fn pivot(row: &Row) -> Option<VecKey> {
    row.keys().max_by(|a, b| key_cmp(a, b)).cloned()
}

#[derive(Debug, Clone, Default)]
pub struct Span {
    /// Rows normalized to pivot coefficient 1, keyed by pivot.
    rows: BTreeMap<VecKey, Row>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Fully reduces a row against the span: repeatedly cancels the largest
    /// key of the row that is a stored pivot, so no pivot key survives even
    /// below non-pivot keys.
    pub fn reduce(&self, mut row: Row) -> Row {
        loop {
            let Some(p) = row
                .keys()
                .filter(|k| self.rows.contains_key(*k))
                .max_by(|a, b| key_cmp(a, b))
                .cloned()
            else {
                return row;
            };
            let r = self.rows.get(&p).expect("pivot is stored");
            let c = row.get(&p).expect("pivot key present").clone();
            for (k, v) in r {
                let delta = c.mul(v);
                match row.get_mut(k) {
                    Some(e) => {
                        let s = e.sub(&delta);
                        if s.is_zero() {
                            row.remove(k);
                        } else {
                            *e = s;
                        }
                    }
                    None => {
                        row.insert(k.clone(), delta.neg());
                    }
                }
            }
        }
    }

    /// Inserts a row; returns false when it was already in the span.
    pub fn insert(&mut self, row: Row) -> bool {
        let row = self.reduce(row);
        let Some(p) = pivot(&row) else { return false };
        let c = row.get(&p).expect("pivot present").inv().expect("field coefficient");
        let normalized: Row = row.iter().map(|(k, v)| (k.clone(), c.mul(v))).collect();
        self.rows.insert(p, normalized);
        true
    }

    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.values()
    }

    pub fn basis(&self) -> impl Iterator<Item = (&VecKey, &Row)> {
        self.rows.iter()
    }

    /// Reduces every row against all the others, yielding the unique reduced
    /// echelon form (pivots are stable, so one pass suffices).
    pub fn interreduce(&mut self) {
        let pivots: Vec<VecKey> = self.rows.keys().cloned().collect();
        for p in pivots {
            let row = self.rows.remove(&p).expect("pivot listed");
            let red = self.reduce(row);
            debug_assert!(red.contains_key(&p), "own pivot must survive");
            self.rows.insert(p, red);
        }
    }
}

/// All nonzero left odd-monomial multiples of a relation, the relation
/// itself included.
pub fn odd_closure(rel: &SuperPoly) -> Vec<SuperPoly> {
    let sig = rel.sig().clone();
    let n = sig.scal.odd.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let m = GScalar::component(&sig.scal, mask, RatFun::one(&sig.scal));
        let scaled = rel.scale(&m);
        if !scaled.is_zero() {
            out.push(scaled);
        }
    }
    out
}

pub fn span_of(rels: &[SuperPoly]) -> Span {
    let mut s = Span::new();
    for r in rels {
        for m in odd_closure(r) {
            s.insert(poly_to_row(&m));
        }
    }
    s
}

/// Decides equality of the closed spans; a failure witness is a relation in
/// one span that is not in the other.
pub fn ideal_equiv(a: &[SuperPoly], b: &[SuperPoly]) -> Result<(), SuperPoly> {
    let sa = span_of(a);
    let sb = span_of(b);
    for r in b {
        if !sa.contains(poly_to_row(r)) {
            return Err(r.clone());
        }
    }
    for r in a {
        if !sb.contains(poly_to_row(r)) {
            return Err(r.clone());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamSig;

    fn alg() -> Arc<AlgSig> {
        let scal = ParamSig::new(&["q"], &["h", "h'"]);
        AlgSig::new(vec![("t", 1), ("s", 0)], &scal)
    }

    #[test]
    fn span_detects_membership_and_closure() {
        let a = alg();
        let r1 = SuperPoly::parse("s*t - t*s - h*s*s", &a).unwrap();
        let r2 = SuperPoly::parse("t*t", &a).unwrap();
        let s = span_of(&[r1.clone(), r2]);
        // h times r1 kills the h term, so h*(s*t - t*s) is in the closure
        let member = SuperPoly::parse("h*(s*t - t*s)", &a).unwrap();
        assert!(s.contains(poly_to_row(&member)));
        let non_member = SuperPoly::parse("s*t - t*s", &a).unwrap();
        assert!(!s.contains(poly_to_row(&non_member)));
    }

    #[test]
    fn ideal_equiv_finds_witness() {
        let a = alg();
        let r1 = SuperPoly::parse("s*t - q*t*s", &a).unwrap();
        let r2 = SuperPoly::parse("t*t", &a).unwrap();
        assert!(ideal_equiv(&[r1.clone(), r2.clone()], &[r2.clone(), r1.clone()]).is_ok());
        let w = ideal_equiv(&[r1.clone()], &[r1, r2.clone()]).unwrap_err();
        assert!(w.eq(&r2));
    }
}
