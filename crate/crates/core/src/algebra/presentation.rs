//! Presentations by oriented rewrite rules, normal forms, and local
//! confluence via critical pairs.
//!
//! Rules rewrite a word into a polynomial that is strictly smaller under a
//! well-founded measure: first word length, then the minimal Grassmann degree
//! of the coefficient (larger degree means smaller, and degrees are bounded by
//! the number of odd parameters), then inversion count among words with the
//! same letter multiset. Every rule is checked against this measure when a
//! presentation is built, so normal-form computation always terminates even
//! when the system is not confluent.

use std::sync::Arc;

use crate::algebra::{inversions, word_cmp, AlgSig, SuperPoly, Word};
use crate::scalars::grassmann::GScalar;
use crate::scalars::ScalarError;

#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: SuperPoly,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    sig: Arc<AlgSig>,
    rules: Vec<Rule>,
    /// Relations that could not be oriented into decreasing rules. They are
    /// still part of the ideal and participate in membership tests, just not
    /// in rewriting.
    extra_relations: Vec<SuperPoly>,
}

#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub word: Word,
    pub difference: SuperPoly,
}

fn multiset(w: &[u16]) -> Vec<u16> {
    let mut m = w.to_vec();
    m.sort_unstable();
    m
}

/// True when every term of `rhs` is strictly below the bare word `lhs`.
pub fn rule_decreasing(lhs: &[u16], rhs: &SuperPoly) -> bool {
    let lhs_ms = multiset(lhs);
    let lhs_inv = inversions(lhs);
    for (w, c) in rhs.terms() {
        if w.len() > lhs.len() {
            return false;
        }
        if w.len() < lhs.len() {
            continue;
        }
        // Equal length: each coefficient component must either raise the
        // Grassmann degree or keep degree zero while strictly lowering the
        // inversion count within the same letter multiset.
        let needs_inv_drop = c.comps().any(|(mask, _)| mask.count_ones() == 0);
        if needs_inv_drop {
            if multiset(w) != lhs_ms || inversions(w) >= lhs_inv {
                return false;
            }
        } else if multiset(w) == lhs_ms {
            // Degree raised; always smaller regardless of inversions.
        } else {
            // Degree raised on a different multiset of the same length is
            // still smaller: the degree tier dominates the word tie-breaks.
        }
    }
    true
}

impl Presentation {
    pub fn new(sig: &Arc<AlgSig>, rules: Vec<Rule>) -> Result<Self, ScalarError> {
        for r in &rules {
            if !rule_decreasing(&r.lhs, &r.rhs) {
                return Err(ScalarError::Parse(format!(
                    "rule for word {:?} is not decreasing",
                    r.lhs
                )));
            }
        }
        Ok(Presentation { sig: sig.clone(), rules, extra_relations: Vec::new() })
    }

    /// Orients each relation by its largest word with an invertible
    /// coefficient; relations admitting no decreasing orientation are kept
    /// aside as extra ideal relations.
    pub fn from_relations(
        sig: &Arc<AlgSig>,
        relations: &[SuperPoly],
    ) -> Result<Self, ScalarError> {
        let mut rules = Vec::new();
        let mut extra = Vec::new();
        for rel in relations {
            if rel.is_zero() {
                continue;
            }
            match orient_relation(rel) {
                Some(rule) => rules.push(rule),
                None => extra.push(rel.clone()),
            }
        }
        let mut p = Presentation::new(sig, rules)?;
        p.extra_relations = extra;
        Ok(p)
    }

    pub fn sig(&self) -> &Arc<AlgSig> {
        &self.sig
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn extra_relations(&self) -> &[SuperPoly] {
        &self.extra_relations
    }

    pub fn set_extra_relations(&mut self, rels: Vec<SuperPoly>) {
        self.extra_relations = rels;
    }

    pub fn rule(sig: &Arc<AlgSig>, lhs: &str, rhs: &str) -> Result<Rule, ScalarError> {
        let lp = SuperPoly::parse(lhs, sig)?;
        let mut words: Vec<&Word> = lp.terms().map(|(w, _)| w).collect();
        if words.len() != 1 || !lp.coeff(words[0]).is_one() {
            return Err(ScalarError::Parse(format!("rule left side `{lhs}` is not a bare word")));
        }
        let lhs_word = words.pop().unwrap().clone();
        Ok(Rule { lhs: lhs_word, rhs: SuperPoly::parse(rhs, sig)? })
    }

    fn find_match(&self, w: &[u16]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, r) in self.rules.iter().enumerate() {
                let l = r.lhs.len();
                if pos + l <= w.len() && w[pos..pos + l] == r.lhs[..] {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Rewrites to a normal form; unique when the system is confluent.
    pub fn normal_form(&self, p: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.sig);
        let mut work: Vec<(Word, GScalar)> =
            p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match self.find_match(&w) {
                None => out.insert(w, c),
                Some((pos, ri)) => {
                    let r = &self.rules[ri];
                    let prefix = SuperPoly::term(&self.sig, w[..pos].to_vec(), c);
                    let suffix = SuperPoly::term(
                        &self.sig,
                        w[pos + r.lhs.len()..].to_vec(),
                        GScalar::one(&self.sig.scal),
                    );
                    let repl = prefix.mul(&r.rhs).mul(&suffix);
                    for (w2, c2) in repl.terms() {
                        work.push((w2.clone(), c2.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn reduces_to_zero(&self, p: &SuperPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// All critical pairs whose two reductions disagree.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        let one = GScalar::one(&self.sig.scal);
        let mut check = |word: Word, red1: SuperPoly, red2: SuperPoly| {
            let d = self.normal_form(&red1).sub(&self.normal_form(&red2));
            if !d.is_zero() {
                out.push(CriticalPair { word, difference: d });
            }
        };
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                // Overlaps: a proper suffix of r1.lhs equals a prefix of
                // r2.lhs, giving the superposition r1.lhs + tail of r2.lhs.
                let l1 = r1.lhs.len();
                let l2 = r2.lhs.len();
                for o in 1..l1.min(l2) {
                    if r1.lhs[l1 - o..] == r2.lhs[..o] {
                        let mut word = r1.lhs.clone();
                        word.extend_from_slice(&r2.lhs[o..]);
                        let suffix =
                            SuperPoly::term(&self.sig, r2.lhs[o..].to_vec(), one.clone());
                        let red1 = r1.rhs.mul(&suffix);
                        let prefix =
                            SuperPoly::term(&self.sig, r1.lhs[..l1 - o].to_vec(), one.clone());
                        let red2 = prefix.mul(&r2.rhs);
                        check(word, red1, red2);
                    }
                }
                // Containment: r2.lhs occurs strictly inside r1.lhs.
                if i != j && l2 < l1 {
                    for pos in 0..=l1 - l2 {
                        if r1.lhs[pos..pos + l2] == r2.lhs[..] {
                            let prefix =
                                SuperPoly::term(&self.sig, r1.lhs[..pos].to_vec(), one.clone());
                            let suffix = SuperPoly::term(
                                &self.sig,
                                r1.lhs[pos + l2..].to_vec(),
                                one.clone(),
                            );
                            let red2 = prefix.mul(&r2.rhs).mul(&suffix);
                            check(r1.lhs.clone(), r1.rhs.clone(), red2);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_locally_confluent(&self) -> bool {
        self.critical_pairs().is_empty()
    }

    /// Bounded completion: repeatedly orients failing critical pairs into new
    /// rules. Returns `Ok` once locally confluent, `Err` with the survivors
    /// if the bound is hit or a pair cannot be oriented.
    pub fn complete(&mut self, max_new_rules: usize) -> Result<(), Vec<CriticalPair>> {
        for _ in 0..max_new_rules {
            let pairs = self.critical_pairs();
            if pairs.is_empty() {
                return Ok(());
            }
            let mut added = false;
            for cp in &pairs {
                if let Some(rule) = orient_relation(&cp.difference) {
                    self.rules.push(rule);
                    added = true;
                    break;
                }
            }
            if !added {
                return Err(pairs);
            }
        }
        let pairs = self.critical_pairs();
        if pairs.is_empty() {
            Ok(())
        } else {
            Err(pairs)
        }
    }

    /// Ideal membership certificate by rewriting. A zero normal form proves
    /// membership even without confluence; a nonzero one is inconclusive in
    /// general but definitive when the system is locally confluent.
    pub fn in_ideal(&self, p: &SuperPoly) -> bool {
        self.reduces_to_zero(p)
    }
}

/// Picks the largest word with an invertible coefficient as the left side and
/// solves for it; `None` when no choice yields a decreasing rule.
pub fn orient_relation(rel: &SuperPoly) -> Option<Rule> {
    let mut candidates: Vec<(&Word, &GScalar)> =
        rel.terms().filter(|(_, c)| c.inv().is_ok()).collect();
    candidates.sort_by(|(a, _), (b, _)| word_cmp(b, a));
    for (w, c) in candidates {
        let lhs = w.clone();
        let cinv = c.inv().expect("candidate coefficient is invertible");
        let mut rest = rel.clone();
        rest.insert(lhs.clone(), c.neg());
        let rhs = rest.neg().scale(&cinv);
        if rule_decreasing(&lhs, &rhs) {
            return Some(Rule { lhs, rhs });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamSig;

    fn h_superspace() -> (Arc<AlgSig>, Presentation) {
        let scal = ParamSig::new(&[], &["h"]);
        let sig = AlgSig::new(vec![("theta1", 1), ("theta2", 1), ("x", 0)], &scal);
        let rules = vec![
            Presentation::rule(&sig, "x*theta1", "theta1*x").unwrap(),
            Presentation::rule(&sig, "x*theta2", "theta2*x + h*x^2").unwrap(),
            Presentation::rule(&sig, "theta2*theta1", "-theta1*theta2").unwrap(),
            Presentation::rule(&sig, "theta1*theta1", "0").unwrap(),
            Presentation::rule(&sig, "theta2*theta2", "-h*theta2*x").unwrap(),
        ];
        let p = Presentation::new(&sig, rules).unwrap();
        (sig, p)
    }

    #[test]
    fn h_superspace_normal_forms() {
        let (sig, p) = h_superspace();
        let nf = p.normal_form(&SuperPoly::parse("x*theta2*x", &sig).unwrap());
        let expect = SuperPoly::parse("theta2*x^2 + h*x^3", &sig).unwrap();
        assert!(nf.eq(&expect), "got {nf}");
        // theta2^2 collapses all the way: theta2*theta2*theta2 -> 0
        let nf2 = p.normal_form(&SuperPoly::parse("theta2*theta2*theta2", &sig).unwrap());
        assert!(nf2.is_zero(), "got {nf2}");
    }

    #[test]
    fn h_superspace_locally_confluent() {
        let (_, p) = h_superspace();
        let pairs = p.critical_pairs();
        assert!(pairs.is_empty(), "unexpected pairs: {:?}", pairs.len());
    }

    #[test]
    fn nondecreasing_rule_rejected() {
        let scal = ParamSig::new(&["q"], &[]);
        let sig = AlgSig::new(vec![("a", 0), ("b", 0)], &scal);
        let bad = Presentation::rule(&sig, "b*a", "q*a*b*b").unwrap();
        assert!(Presentation::new(&sig, vec![bad]).is_err());
    }

    #[test]
    fn orientation_picks_largest_invertible_term() {
        let scal = ParamSig::new(&["q"], &[]);
        let sig = AlgSig::new(vec![("a", 0), ("b", 0)], &scal);
        let rel = SuperPoly::parse("b*a - q*a*b", &sig).unwrap();
        let rule = orient_relation(&rel).unwrap();
        assert_eq!(rule.lhs, vec![1, 0]);
        assert!(rule.rhs.eq(&SuperPoly::parse("q*a*b", &sig).unwrap()));
    }
}
