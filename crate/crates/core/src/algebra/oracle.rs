//! Degree-bounded linear-algebra normal forms, used as an independent oracle
//! against the rewriting engine.
//!
//! Every context product of every rule up to a total word-degree bound is
//! flattened into a sparse vector and eliminated; reducing an element against
//! the resulting echelon basis yields a normal form computed without any
//! rewriting, which must agree with the rewriting normal form whenever the
//! system is confluent.

use crate::algebra::presentation::Presentation;
use crate::algebra::span::{odd_closure, poly_to_row, row_to_poly, Span};
use crate::algebra::{SuperPoly, Word};
use crate::scalars::grassmann::GScalar;

pub struct Oracle {
    pres: Presentation,
    max_deg: usize,
    span: Span,
}

fn words_up_to(n_gens: u16, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n_gens {
                let mut w2 = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl Oracle {
    pub fn build(pres: &Presentation, max_deg: usize) -> Self {
        let sig = pres.sig().clone();
        let n_gens = sig.gens.len() as u16;
        let one = GScalar::one(&sig.scal);
        let mut span = Span::new();
        let mut rels: Vec<SuperPoly> = Vec::new();
        for rule in pres.rules() {
            let base = SuperPoly::term(&sig, rule.lhs.clone(), one.clone()).sub(&rule.rhs);
            rels.push(base);
        }
        for rel in pres.extra_relations() {
            rels.push(rel.clone());
        }
        for rel in &rels {
            let deg = rel.terms().map(|(w, _)| w.len()).max().unwrap_or(0);
            if deg > max_deg {
                continue;
            }
            let room = max_deg - deg;
            for u in words_up_to(n_gens, room) {
                let left = SuperPoly::term(&sig, u.clone(), one.clone());
                let partial = left.mul(rel);
                for v in words_up_to(n_gens, room - u.len()) {
                    let right = SuperPoly::term(&sig, v, one.clone());
                    let ctx = partial.mul(&right);
                    for m in odd_closure(&ctx) {
                        span.insert(poly_to_row(&m));
                    }
                }
            }
        }
        Oracle { pres: pres.clone(), max_deg, span }
    }

    /// Linear-algebra normal form of an element of word degree <= the bound.
    pub fn reduce(&self, p: &SuperPoly) -> SuperPoly {
        let row = self.span.reduce(poly_to_row(p));
        row_to_poly(&row, self.pres.sig())
    }

    /// Checks agreement with the rewriting normal form on every basis word.
    pub fn agrees_on_all_words(&self) -> Result<(), (Word, SuperPoly, SuperPoly)> {
        let sig = self.pres.sig().clone();
        let one = GScalar::one(&sig.scal);
        for w in words_up_to(sig.gens.len() as u16, self.max_deg) {
            let p = SuperPoly::term(&sig, w.clone(), one.clone());
            let nf = self.pres.normal_form(&p);
            if nf.terms().any(|(word, _)| word.len() > self.max_deg) {
                // rewriting may leave the bounded window (inverses), skip
                continue;
            }
            let lin = self.reduce(&p);
            if !nf.eq(&lin) {
                return Err((w, nf, lin));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgSig;
    use crate::scalars::ParamSig;

    #[test]
    fn oracle_matches_rewriting_on_h_superspace() {
        let scal = ParamSig::new(&[], &["h"]);
        let sig = AlgSig::new(vec![("theta1", 1), ("theta2", 1), ("x", 0)], &scal);
        let rules = vec![
            Presentation::rule(&sig, "x*theta1", "theta1*x").unwrap(),
            Presentation::rule(&sig, "x*theta2", "theta2*x + h*x^2").unwrap(),
            Presentation::rule(&sig, "theta2*theta1", "-theta1*theta2").unwrap(),
            Presentation::rule(&sig, "theta1*theta1", "0").unwrap(),
            Presentation::rule(&sig, "theta2*theta2", "-h*theta2*x").unwrap(),
        ];
        let pres = Presentation::new(&sig, rules).unwrap();
        let oracle = Oracle::build(&pres, 4);
        if let Err((w, nf, lin)) = oracle.agrees_on_all_words() {
            panic!("disagreement on {w:?}: rewriting {nf} vs linear {lin}");
        }
    }
}
