//! Graded tensor products of presented algebras.
//!
//! Letters from distinct factors commute up to the Koszul sign, so the
//! product algebra is presented by each factor's rules plus swap rules that
//! move later-factor letters past earlier-factor ones.

use std::sync::Arc;

use crate::algebra::presentation::{Presentation, Rule};
use crate::algebra::{AlgSig, SuperPoly, Word};
use crate::scalars::grassmann::GScalar;

/// Tensor product of the given factors; generator names get the paired
/// suffix so the factors stay distinguishable.
pub fn tensor(factors: &[(&Presentation, &str)]) -> Presentation {
    assert!(!factors.is_empty());
    let scal = factors[0].0.sig().scal.clone();
    for (p, _) in factors {
        assert_eq!(p.sig().scal, scal, "factors share one scalar signature");
    }
    let mut gens: Vec<(String, u8)> = Vec::new();
    let mut offsets = Vec::new();
    for (p, suffix) in factors {
        offsets.push(gens.len() as u16);
        for g in &p.sig().gens {
            gens.push((format!("{}{}", g.name, suffix), g.parity));
        }
    }
    let sig = AlgSig::new(gens.iter().map(|(n, p)| (n.as_str(), *p)).collect(), &scal);

    let shift_word = |w: &Word, off: u16| -> Word { w.iter().map(|&g| g + off).collect() };
    let shift_poly = |p: &SuperPoly, off: u16, target: &Arc<AlgSig>| -> SuperPoly {
        let mut out = SuperPoly::zero(target);
        for (w, c) in p.terms() {
            out.insert(shift_word(w, off), c.clone());
        }
        out
    };

    let mut rules = Vec::new();
    let mut extra = Vec::new();
    for (k, (p, _)) in factors.iter().enumerate() {
        let off = offsets[k];
        for r in p.rules() {
            rules.push(Rule {
                lhs: shift_word(&r.lhs, off),
                rhs: shift_poly(&r.rhs, off, &sig),
            });
        }
        for rel in p.extra_relations() {
            extra.push(shift_poly(rel, off, &sig));
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            for (ai, a) in factors[i].0.sig().gens.iter().enumerate() {
                for (bi, b) in factors[j].0.sig().gens.iter().enumerate() {
                    let lo = offsets[i] + ai as u16;
                    let hi = offsets[j] + bi as u16;
                    let mut coeff = GScalar::one(&scal);
                    if a.parity == 1 && b.parity == 1 {
                        coeff = coeff.neg();
                    }
                    rules.push(Rule {
                        lhs: vec![hi, lo],
                        rhs: SuperPoly::term(&sig, vec![lo, hi], coeff),
                    });
                }
            }
        }
    }
    let mut out = Presentation::new(&sig, rules).expect("tensor rules are decreasing");
    out.set_extra_relations(extra);
    out
}

/// `n`-fold tensor power with copies suffixed `1..=n`.
pub fn tensor_power(p: &Presentation, n: usize) -> Presentation {
    let suffixes: Vec<String> = (1..=n).map(|k| format!("_{k}")).collect();
    let factors: Vec<(&Presentation, &str)> =
        suffixes.iter().map(|s| (p, s.as_str())).collect();
    tensor(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParamSig;

    #[test]
    fn cross_letters_koszul_commute() {
        let scal = ParamSig::new(&["q"], &[]);
        let sig = AlgSig::new(vec![("theta", 1), ("x", 0)], &scal);
        let rules = vec![
            Presentation::rule(&sig, "x*theta", "q*theta*x").unwrap(),
            Presentation::rule(&sig, "theta*theta", "0").unwrap(),
        ];
        let p = Presentation::new(&sig, rules).unwrap();
        let t = tensor_power(&p, 2);
        let ts = t.sig();
        let a = SuperPoly::parse("theta_2*theta_1 + theta_1*theta_2", ts).unwrap();
        assert!(t.normal_form(&a).is_zero());
        let b = SuperPoly::parse("x_2*theta_1 - theta_1*x_2", ts).unwrap();
        assert!(t.normal_form(&b).is_zero());
        let c = SuperPoly::parse("x_1*theta_1 - q*theta_1*x_1", ts).unwrap();
        assert!(t.normal_form(&c).is_zero());
        assert!(t.is_locally_confluent());
    }
}
