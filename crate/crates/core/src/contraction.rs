//! Singular basis-change contractions: substitute old = g * new coordinates
//! into a presented algebra, derive the transformed relation set, take
//! pole-certified limits of the deformation parameters, and contract an
//! R-matrix by conjugation with g (x) g.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::span::span_of;
use crate::algebra::{AlgSig, SuperPoly};
use crate::linalg::{GMat, KronMode};
use crate::scalars::{GRat, GScalar, ScalarError};

/// An invertible change of coordinates old_i = sum_j g[i][j] * new_j between
/// two generator lists of matching parities.
pub struct BasisChange {
    pub mat: GMat<GScalar>,
    pub source: Vec<String>,
    pub target: Vec<String>,
}

impl BasisChange {
    pub fn new(
        mat: GMat<GScalar>,
        source: &[&str],
        target: &[&str],
    ) -> Result<Self, ScalarError> {
        assert_eq!(mat.rows(), source.len());
        assert_eq!(mat.cols(), target.len());
        mat.inv()?;
        Ok(BasisChange {
            mat,
            source: source.iter().map(|s| s.to_string()).collect(),
            target: target.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        BasisChange {
            mat: self.mat.inv().expect("checked invertible at construction"),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// The image of each source generator in the target free algebra.
    pub fn images(&self, target_sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
        (0..self.source.len())
            .map(|i| {
                let mut p = SuperPoly::zero(target_sig);
                for (j, name) in self.target.iter().enumerate() {
                    let c = self.mat.get(i, j);
                    if !c.is_zero() {
                        p = p.add(&SuperPoly::gen(target_sig, name).scale(c));
                    }
                }
                p
            })
            .collect()
    }
}

/// Substitutes old = g * new into each relation and returns the canonical
/// echelon basis of the resulting relation span on the new coordinates.
pub fn transform_relations(
    bc: &BasisChange,
    rels: &[SuperPoly],
    target_sig: &Arc<AlgSig>,
) -> Vec<SuperPoly> {
    if rels.is_empty() {
        return Vec::new();
    }
    let src_sig = rels[0].sig().clone();
    let images = bc.images(target_sig);
    let ordered: Vec<SuperPoly> = src_sig
        .gens
        .iter()
        .map(|g| {
            let i = bc
                .source
                .iter()
                .position(|n| *n == g.name)
                .unwrap_or_else(|| panic!("basis change does not cover generator `{}`", g.name));
            images[i].clone()
        })
        .collect();
    let substituted: Vec<SuperPoly> =
        rels.iter().map(|r| r.subst_gens(&ordered, target_sig)).collect();
    canonical_span(&substituted, target_sig)
}

/// Canonical echelon representatives of the odd-closed span of a relation
/// list; two relation lists generate the same ideal in degree two iff their
/// canonical spans coincide.
pub fn canonical_span(rels: &[SuperPoly], sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
    let mut span = span_of(rels);
    span.interreduce();
    span.basis_rows().map(|r| crate::algebra::span::row_to_poly(r, sig)).collect()
}

/// The rows of the canonical span whose pivot carries no odd-parameter
/// factor: the printed form of a transformed relation set, with the odd
/// closure rows stripped back off.
pub fn body_relations(rels: &[SuperPoly], sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
    let mut span = span_of(rels);
    span.interreduce();
    span.basis()
        .filter(|((_, mask), _)| *mask == 0)
        .map(|(_, r)| crate::algebra::span::row_to_poly(r, sig))
        .collect()
}

/// True when no coefficient of any relation mentions the named odd parameter.
pub fn free_of_odd_param(rels: &[SuperPoly], name: &str) -> bool {
    rels.iter().all(|r| {
        r.terms().all(|(_, c)| {
            let sig = c.sig();
            let bit = 1u64 << sig.odd_index(name).expect("parameter known");
            c.comps().all(|(mask, _)| mask & bit == 0)
        })
    })
}

/// An even-parameter evaluation point by name.
pub fn point(
    sig: &Arc<crate::scalars::ParamSig>,
    vals: &[(&str, i64)],
) -> BTreeMap<usize, GRat> {
    vals.iter()
        .map(|(n, v)| {
            let i = sig.even_index(n).unwrap_or_else(|| panic!("unknown even parameter `{n}`"));
            (i, GRat::from_int(*v))
        })
        .collect()
}

/// Evaluates every coefficient at the point, certifying each limit pole-free.
pub fn limit_relations(
    rels: &[SuperPoly],
    vals: &BTreeMap<usize, GRat>,
) -> Result<Vec<SuperPoly>, ScalarError> {
    rels.iter().map(|r| r.try_map_coeffs(|c| c.limit(vals))).collect()
}

/// Conjugates the R-matrix by g (x) g and takes the entrywise limit at the
/// point: lim (g (x) g)^-1 Rhat (g (x) g). Every entry limit is certified
/// pole-free.
pub fn contract_rmatrix(
    rhat: &GMat<GScalar>,
    bc: &BasisChange,
    vals: &BTreeMap<usize, GRat>,
) -> Result<GMat<GScalar>, ScalarError> {
    let gg = bc.mat.kron(&bc.mat, KronMode::GradedRight);
    let conj = gg.inv()?.mul(rhat).mul(&gg);
    conj.try_map(|e| e.limit(vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::{
        alg_sig, build_presentation, matrix_fixture, preset_relations, relation_fixture,
    };
    use crate::algebra::span::ideal_equiv;

    fn polys(named: Vec<(String, SuperPoly)>) -> Vec<SuperPoly> {
        named.into_iter().map(|(_, p)| p).collect()
    }

    fn full_g(source: &[&str; 3], target: &[&str; 3]) -> BasisChange {
        BasisChange::new(matrix_fixture("g_full").mat, source, target).unwrap()
    }

    #[test]
    fn superspace_route_reproduces_intermediate_relations_verbatim() {
        let src = polys(preset_relations("Aq12"));
        let target = alg_sig("Ah12");
        let bc = full_g(&["X", "Theta1", "Theta2"], &["x", "theta1", "theta2"]);
        let got = transform_relations(&bc, &src, &target);
        let expected = canonical_span(&polys(relation_fixture("eq32", &target).1), &target);
        assert_eq!(got.len(), expected.len());
        for (a, b) in got.iter().zip(expected.iter()) {
            assert!(a.eq(b), "mismatch:\n  got      {a}\n  expected {b}");
        }
        let body = body_relations(&got, &target);
        assert_eq!(body.len(), 5);
        assert!(free_of_odd_param(&body, "h'"));
        assert!(!free_of_odd_param(&body, "h"));
    }

    #[test]
    fn limits_reproduce_both_h_deformed_presets() {
        let target = alg_sig("Ah12");
        let bc = full_g(&["X", "Theta1", "Theta2"], &["x", "theta1", "theta2"]);
        let pre = transform_relations(&bc, &polys(preset_relations("Aq12")), &target);
        let sig = target.scal.clone();
        let lim = limit_relations(&pre, &point(&sig, &[("q", 1)])).unwrap();
        assert!(ideal_equiv(&lim, &polys(preset_relations("Ah12"))).is_ok());

        let dual_target = alg_sig("Ahp21");
        let dual_bc = full_g(&["Phi", "Y1", "Y2"], &["phi", "y1", "y2"]);
        let dual_pre =
            transform_relations(&dual_bc, &polys(preset_relations("Apq21")), &dual_target);
        let dual_lim = limit_relations(&dual_pre, &point(&sig, &[("q", 1), ("p", 1)])).unwrap();
        assert!(ideal_equiv(&dual_lim, &polys(preset_relations("Ahp21"))).is_ok());
        assert!(free_of_odd_param(&body_relations(&dual_lim, &dual_target), "h"));
    }

    #[test]
    fn round_trip_recovers_source_relations() {
        let src_sig = alg_sig("Aq12");
        let target = alg_sig("Ah12");
        let bc = full_g(&["X", "Theta1", "Theta2"], &["x", "theta1", "theta2"]);
        let rels = polys(preset_relations("Aq12"));
        let there = transform_relations(&bc, &rels, &target);
        let back = transform_relations(&bc.inverse(), &there, &src_sig);
        let expected = canonical_span(&rels, &src_sig);
        assert_eq!(back.len(), expected.len());
        for (a, b) in back.iter().zip(expected.iter()) {
            assert!(a.eq(b));
        }
    }

    #[test]
    fn pole_is_detected() {
        let target = alg_sig("Ah12");
        let sig = target.scal.clone();
        let q = crate::scalars::parse_scalar("1/(q-1)", &sig).unwrap();
        let rel = SuperPoly::gen(&target, "x").scale(&q);
        let err = limit_relations(&[rel], &point(&sig, &[("q", 1)])).unwrap_err();
        assert!(matches!(err, ScalarError::PoleAtLimit(_)));
    }

    #[test]
    fn contracted_rmatrix_matches_printed_two_parameter_matrix() {
        let pq = matrix_fixture("rhat_pq").mat;
        let bc = full_g(&["X", "Theta1", "Theta2"], &["x", "theta1", "theta2"]);
        let sig = pq.zero_entry().sig().clone();
        let got = contract_rmatrix(&pq, &bc, &point(&sig, &[("q", 1), ("p", 1)])).unwrap();
        let printed = matrix_fixture("rhat_hh").mat;
        if let Some((i, j, _)) = got.first_diff(&printed) {
            panic!("entry ({i},{j}): got {}, printed {}", got.get(i, j), printed.get(i, j));
        }
    }

    #[test]
    fn conjugation_preserves_braid_before_the_limit() {
        let pq = matrix_fixture("rhat_pq").mat;
        let bc = full_g(&["X", "Theta1", "Theta2"], &["x", "theta1", "theta2"]);
        let gg = bc.mat.kron(&bc.mat, KronMode::GradedRight);
        let conj = gg.inv().unwrap().mul(&pq).mul(&gg);
        assert!(crate::rmatrix::braid_check(&conj, true).is_ok());
    }

    #[test]
    fn limit_ideal_agrees_with_kernel_route() {
        let pq = matrix_fixture("rhat_pq").mat;
        let bc = full_g(&["X", "Theta1", "Theta2"], &["x", "theta1", "theta2"]);
        let sig = pq.zero_entry().sig().clone();
        let contracted =
            contract_rmatrix(&pq, &bc, &point(&sig, &[("q", 1), ("p", 1)])).unwrap();
        let (_, p_minus) = crate::rmatrix::projectors(&contracted).unwrap();
        let target = alg_sig("Ah12");
        let kernel = crate::rmatrix::kernel_relations(
            &p_minus,
            &target,
            &["x", "theta1", "theta2"],
            false,
        );
        let pres = build_presentation(&target, &polys(preset_relations("Ah12")));
        let _ = pres;
        assert!(ideal_equiv(&kernel, &polys(preset_relations("Ah12"))).is_ok());
    }
}
