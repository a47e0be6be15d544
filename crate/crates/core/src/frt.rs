//! Quantum supermatrix relations by two independent routes: coaction
//! preservation on the deformed superspaces and the matrix equation
//! Rhat T1 T2 = T1 T2 Rhat over the free t-algebra, plus the bialgebra and
//! comodule axiom checks for the resulting presentation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::presentation::Presentation;
use crate::algebra::tensor::{tensor, tensor_power};
use crate::algebra::{presets, AlgSig, SuperPoly, Word};
use crate::linalg::{super_permutation, GMat, KronMode};
use crate::scalars::GScalar;

/// Entry names of the supermatrix T, row-major.
pub const T_NAMES: [[&str; 3]; 3] =
    [["a", "alpha", "beta"], ["gamma", "b", "c"], ["delta", "d", "e"]];

fn t_position(name: &str) -> Option<(usize, usize)> {
    (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).find(|&(i, j)| T_NAMES[i][j] == name)
}

/// The matrix T over the given t-algebra signature.
pub fn t_matrix(sig: &Arc<AlgSig>) -> GMat<SuperPoly> {
    let par = vec![0u8, 1, 1];
    GMat::from_fn(par.clone(), par, SuperPoly::zero(sig), |i, j| {
        SuperPoly::gen(sig, T_NAMES[i][j])
    })
}

fn promote(m: &GMat<GScalar>, sig: &Arc<AlgSig>) -> GMat<SuperPoly> {
    GMat::new(
        m.row_par.clone(),
        m.col_par.clone(),
        (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| SuperPoly::term(sig, Vec::new(), m.get(i, j).clone()))
            .collect(),
        SuperPoly::zero(sig),
    )
}

fn identity3_poly(sig: &Arc<AlgSig>) -> GMat<SuperPoly> {
    GMat::identity(vec![0, 1, 1], SuperPoly::one(sig), SuperPoly::zero(sig))
}

/// The 81 entries of Rhat T1 T2 - T1 T2 Rhat as quadratic relations in the
/// t's, zero entries pruned. T1 = T (x) I3 and T2 = P T1 P.
pub fn frt_relations(rhat: &GMat<GScalar>, sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
    let t1 = t_matrix(sig).kron(&identity3_poly(sig), KronMode::GradedRight);
    let p = promote(&super_permutation(&[0, 1, 1], &sig.scal), sig);
    let t2 = p.mul(&t1).mul(&p);
    let r = promote(rhat, sig);
    let diff = r.mul(&t1).mul(&t2).sub(&t1.mul(&t2).mul(&r));
    let mut out = Vec::new();
    for i in 0..9 {
        for j in 0..9 {
            let e = diff.get(i, j);
            if !e.is_zero() {
                out.push(e.clone());
            }
        }
    }
    out
}

/// The t-relations forced by requiring x'_i = sum_k t_ik x_k to satisfy the
/// space's defining relations, with the t's free and supercommuting with the
/// coordinates. `coords` lists the coordinate names in T's index order.
pub fn coaction_relations(
    space: &Presentation,
    coords: &[&str; 3],
    t_sig: &Arc<AlgSig>,
) -> Vec<SuperPoly> {
    let free_t = Presentation::new(t_sig, Vec::new()).expect("free presentation");
    let mixed = tensor(&[(&free_t, ""), (space, "")]);
    let msig = mixed.sig().clone();
    let t_count = t_sig.gens.len() as u16;

    let image_of = |coord_pos: usize| -> SuperPoly {
        let mut p = SuperPoly::zero(&msig);
        for k in 0..3 {
            let t = msig.index(T_NAMES[coord_pos][k]).expect("t generator");
            let c = msig.index(coords[k]).expect("coordinate generator");
            p = p.add(&SuperPoly::term(&msig, vec![t, c], GScalar::one(&msig.scal)));
        }
        p
    };
    let images: Vec<SuperPoly> = space
        .sig()
        .gens
        .iter()
        .map(|g| {
            let pos = coords
                .iter()
                .position(|c| *c == g.name)
                .unwrap_or_else(|| panic!("coordinate list misses `{}`", g.name));
            image_of(pos)
        })
        .collect();

    let rels: Vec<SuperPoly> = space
        .rules()
        .iter()
        .map(|r| {
            SuperPoly::term(space.sig(), r.lhs.clone(), GScalar::one(&space.sig().scal))
                .sub(&r.rhs)
        })
        .chain(space.extra_relations().iter().cloned())
        .collect();

    let mut out = Vec::new();
    for rel in &rels {
        let nf = mixed.normal_form(&rel.subst_gens(&images, &msig));
        let mut groups: BTreeMap<Word, SuperPoly> = BTreeMap::new();
        for (w, c) in nf.terms() {
            let split = w.iter().position(|&g| g >= t_count).unwrap_or(w.len());
            let (tpart, cpart) = w.split_at(split);
            assert!(tpart.iter().all(|&g| g < t_count), "word not normal ordered");
            let tword: Word = tpart.to_vec();
            groups
                .entry(cpart.to_vec())
                .or_insert_with(|| SuperPoly::zero(t_sig))
                .insert(tword, c.clone());
        }
        for (_, p) in groups {
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    out
}

/// The coproduct image of each t-generator in the tensor square of the
/// presentation: Delta(t_ij) = sum_k t_ik (x) t_kj.
fn coproduct_images(sig: &Arc<AlgSig>, t2_sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
    sig.gens
        .iter()
        .map(|g| {
            let (i, j) = t_position(&g.name).expect("t generator");
            let mut p = SuperPoly::zero(t2_sig);
            for k in 0..3 {
                let l1 = t2_sig.index(&format!("{}_1", T_NAMES[i][k])).expect("leg 1");
                let l2 = t2_sig.index(&format!("{}_2", T_NAMES[k][j])).expect("leg 2");
                p = p.add(&SuperPoly::term(t2_sig, vec![l1, l2], GScalar::one(&t2_sig.scal)));
            }
            p
        })
        .collect()
}

fn counit_scalar(name: &str, scal: &Arc<crate::scalars::ParamSig>) -> GScalar {
    let (i, j) = t_position(name).expect("t generator");
    if i == j {
        GScalar::one(scal)
    } else {
        GScalar::zero(scal)
    }
}

/// Verifies the super bialgebra axioms for the t-presentation: the coproduct
/// and counit extend to algebra maps, the coproduct is coassociative, and the
/// counit laws hold on generators. Returns the failures, one message each.
pub fn bialgebra_check(pres: &Presentation) -> Vec<String> {
    let sig = pres.sig().clone();
    let t2 = tensor_power(pres, 2);
    let t2_sig = t2.sig().clone();
    let images = coproduct_images(&sig, &t2_sig);
    let mut failures = Vec::new();

    for (name, rel) in presets::preset_relations_in("Mhh12", &sig) {
        let nf = t2.normal_form(&rel.subst_gens(&images, &t2_sig));
        if !nf.is_zero() {
            failures.push(format!("coproduct does not respect `{name}`: residue {nf}"));
        }
    }

    let t3 = tensor_power(pres, 3);
    let t3_sig = t3.sig().clone();
    let leg = |name: &str, k: usize| -> SuperPoly {
        SuperPoly::gen(&t3_sig, &format!("{name}_{k}"))
    };
    // images of t2 generators under (Delta (x) id) and (id (x) Delta)
    let mut left: Vec<SuperPoly> = Vec::new();
    let mut right: Vec<SuperPoly> = Vec::new();
    for g in &t2_sig.gens {
        let (base, legno) = g.name.rsplit_once('_').expect("suffixed generator");
        let (i, j) = t_position(base).expect("t generator");
        let delta_into = |a: usize, b: usize| -> SuperPoly {
            let mut p = SuperPoly::zero(&t3_sig);
            for k in 0..3 {
                p = p.add(&leg(T_NAMES[i][k], a).mul(&leg(T_NAMES[k][j], b)));
            }
            p
        };
        match legno {
            "1" => {
                left.push(delta_into(1, 2));
                right.push(leg(base, 1));
            }
            "2" => {
                left.push(leg(base, 3));
                right.push(delta_into(2, 3));
            }
            _ => unreachable!("tensor square has two legs"),
        }
    }
    for g in &sig.gens {
        let d = images[sig.index(&g.name).unwrap() as usize].clone();
        let lhs = t3.normal_form(&d.subst_gens(&left, &t3_sig));
        let rhs = t3.normal_form(&d.subst_gens(&right, &t3_sig));
        if !lhs.eq(&rhs) {
            failures.push(format!("coassociativity fails on `{}`", g.name));
        }
    }

    for (name, rel) in presets::preset_relations_in("Mhh12", &sig) {
        let eps_images: Vec<SuperPoly> = sig
            .gens
            .iter()
            .map(|g| SuperPoly::term(&sig, Vec::new(), counit_scalar(&g.name, &sig.scal)))
            .collect();
        let v = rel.subst_gens(&eps_images, &sig);
        if !v.is_zero() {
            failures.push(format!("counit is not an algebra map on `{name}`: {v}"));
        }
    }

    // counit laws: collapsing either leg of the coproduct recovers the generator
    let eps_first: Vec<SuperPoly> = t2_sig
        .gens
        .iter()
        .map(|g| {
            let (base, legno) = g.name.rsplit_once('_').expect("suffixed generator");
            match legno {
                "1" => SuperPoly::term(&sig, Vec::new(), counit_scalar(base, &sig.scal)),
                _ => SuperPoly::gen(&sig, base),
            }
        })
        .collect();
    let eps_second: Vec<SuperPoly> = t2_sig
        .gens
        .iter()
        .map(|g| {
            let (base, legno) = g.name.rsplit_once('_').expect("suffixed generator");
            match legno {
                "2" => SuperPoly::term(&sig, Vec::new(), counit_scalar(base, &sig.scal)),
                _ => SuperPoly::gen(&sig, base),
            }
        })
        .collect();
    for g in &sig.gens {
        let d = images[sig.index(&g.name).unwrap() as usize].clone();
        let id = SuperPoly::gen(&sig, &g.name);
        for (tag, eps) in [("first", &eps_first), ("second", &eps_second)] {
            let v = pres.normal_form(&d.subst_gens(eps, &sig));
            if !v.eq(&pres.normal_form(&id)) {
                failures.push(format!("{tag} counit law fails on `{}`: {v}", g.name));
            }
        }
    }

    failures
}

/// Verifies that delta(x_i) = sum_k t_ik (x) x_k makes the space a left
/// comodule algebra over the t-presentation: relations are preserved, the
/// coaction is coassociative, and the counit law holds.
pub fn comodule_check(
    matrix: &Presentation,
    space: &Presentation,
    coords: &[&str; 3],
) -> Vec<String> {
    let mut failures = Vec::new();
    let mixed = tensor(&[(matrix, "_m"), (space, "_s")]);
    let msig = mixed.sig().clone();
    let image_of = |pos: usize, target: &Arc<AlgSig>, msuf: &str, ssuf: &str| -> SuperPoly {
        let mut p = SuperPoly::zero(target);
        for k in 0..3 {
            let t = target.index(&format!("{}{}", T_NAMES[pos][k], msuf)).expect("t gen");
            let c = target.index(&format!("{}{}", coords[k], ssuf)).expect("coordinate");
            p = p.add(&SuperPoly::term(target, vec![t, c], GScalar::one(&target.scal)));
        }
        p
    };
    let images: Vec<SuperPoly> = space
        .sig()
        .gens
        .iter()
        .map(|g| {
            let pos = coords.iter().position(|c| *c == g.name).expect("coordinate listed");
            image_of(pos, &msig, "_m", "_s")
        })
        .collect();
    for r in space.rules() {
        let rel = SuperPoly::term(space.sig(), r.lhs.clone(), GScalar::one(&space.sig().scal))
            .sub(&r.rhs);
        let nf = mixed.normal_form(&rel.subst_gens(&images, &msig));
        if !nf.is_zero() {
            failures.push(format!("coaction does not respect a relation: residue {nf}"));
        }
    }

    // coassociativity of the coaction in matrix (x) matrix (x) space
    let triple = tensor(&[(matrix, "_1"), (matrix, "_2"), (space, "_s")]);
    let tsig = triple.sig().clone();
    let mut via_coproduct: Vec<SuperPoly> = Vec::new();
    let mut via_coaction: Vec<SuperPoly> = Vec::new();
    for g in &msig.gens {
        let (base, suf) = g.name.rsplit_once('_').expect("suffixed generator");
        if suf == "m" {
            let (i, j) = t_position(base).expect("t generator");
            let mut d = SuperPoly::zero(&tsig);
            for k in 0..3 {
                d = d.add(&SuperPoly::gen(&tsig, &format!("{}_1", T_NAMES[i][k]))
                    .mul(&SuperPoly::gen(&tsig, &format!("{}_2", T_NAMES[k][j]))));
            }
            via_coproduct.push(d);
            via_coaction.push(SuperPoly::gen(&tsig, &format!("{base}_1")));
        } else {
            via_coproduct.push(SuperPoly::gen(&tsig, &format!("{base}_s")));
            let pos = coords.iter().position(|c| *c == base).expect("coordinate listed");
            let mut d = SuperPoly::zero(&tsig);
            for k in 0..3 {
                d = d.add(&SuperPoly::gen(&tsig, &format!("{}_2", T_NAMES[pos][k]))
                    .mul(&SuperPoly::gen(&tsig, &format!("{}_s", coords[k]))));
            }
            via_coaction.push(d);
        }
    }
    for g in &space.sig().gens {
        let pos = coords.iter().position(|c| *c == g.name).expect("coordinate listed");
        let d = image_of(pos, &msig, "_m", "_s");
        let lhs = triple.normal_form(&d.subst_gens(&via_coproduct, &tsig));
        let rhs = triple.normal_form(&d.subst_gens(&via_coaction, &tsig));
        if !lhs.eq(&rhs) {
            failures.push(format!("coaction coassociativity fails on `{}`", g.name));
        }
    }

    // counit law: collapsing the matrix leg recovers the coordinate
    let collapse: Vec<SuperPoly> = msig
        .gens
        .iter()
        .map(|g| {
            let (base, suf) = g.name.rsplit_once('_').expect("suffixed generator");
            if suf == "m" {
                SuperPoly::term(space.sig(), Vec::new(), counit_scalar(base, &msig.scal))
            } else {
                SuperPoly::gen(space.sig(), base)
            }
        })
        .collect();
    for g in &space.sig().gens {
        let pos = coords.iter().position(|c| *c == g.name).expect("coordinate listed");
        let d = image_of(pos, &msig, "_m", "_s");
        let v = space.normal_form(&d.subst_gens(&collapse, space.sig()));
        if !v.eq(&SuperPoly::gen(space.sig(), &g.name)) {
            failures.push(format!("counit law fails on `{}`", g.name));
        }
    }

    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::{alg_sig, preset, relation_fixture};
    use crate::algebra::span::ideal_equiv;

    fn eq51(sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
        relation_fixture("eq51", sig).1.into_iter().map(|(_, p)| p).collect()
    }

    #[test]
    fn frt_route_matches_fixture_ideal() {
        let sig = alg_sig("Mhh12");
        let rhat = crate::algebra::presets::matrix_fixture("rhat_hh").mat;
        let rels = frt_relations(&rhat, &sig);
        assert!(rels.iter().all(|r| !r.is_zero()));
        if let Err(w) = ideal_equiv(&rels, &eq51(&sig)) {
            panic!("routes disagree, witness {w}");
        }
    }

    #[test]
    fn coaction_route_matches_fixture_ideal() {
        let sig = alg_sig("Mhh12");
        let space = preset("Ah12");
        let dual = preset("Ahp21");
        let mut rels = coaction_relations(&space, &["x", "theta1", "theta2"], &sig);
        rels.extend(coaction_relations(&dual, &["phi", "y1", "y2"], &sig));
        if let Err(w) = ideal_equiv(&rels, &eq51(&sig)) {
            panic!("coaction route disagrees with fixture, witness {w}");
        }
    }

    #[test]
    fn generated_relations_are_parity_homogeneous() {
        let sig = alg_sig("Mhh12");
        let rhat = crate::algebra::presets::matrix_fixture("rhat_hh").mat;
        for r in frt_relations(&rhat, &sig) {
            let mut parities = std::collections::BTreeSet::new();
            for (w, c) in r.terms() {
                let wp = sig.word_parity(w);
                for (m, _) in c.comps() {
                    parities.insert((wp as u32 + m.count_ones()) % 2);
                }
            }
            assert!(parities.len() <= 1, "non-homogeneous relation {r}");
        }
    }

    #[test]
    fn one_parameter_specialization_is_consistent() {
        let sig = alg_sig("Mhh12");
        let hp = sig.scal.odd_index("h'").expect("odd parameter");
        let drop_hp = |c: &GScalar| c.retain_comps(|m| m & (1u64 << hp) == 0);
        let fx = crate::algebra::presets::matrix_fixture("rhat_hh");
        let rhat_h = fx.mat.map(GScalar::zero(&sig.scal), |c| drop_hp(c));
        let specialized = frt_relations(&rhat_h, &sig);
        let projected: Vec<SuperPoly> =
            eq51(&sig).iter().map(|r| r.map_coeffs(|c| drop_hp(c))).collect();
        if let Err(w) = ideal_equiv(&specialized, &projected) {
            panic!("specialization disagrees, witness {w}");
        }
    }

    #[test]
    fn bialgebra_axioms_hold() {
        let pres = preset("Mhh12");
        let failures = bialgebra_check(&pres);
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn comodule_axioms_hold_for_both_coactions() {
        let pres = preset("Mhh12");
        let space = preset("Ah12");
        let failures = comodule_check(&pres, &space, &["x", "theta1", "theta2"]);
        assert!(failures.is_empty(), "{failures:?}");
        let dual = preset("Ahp21");
        let failures = comodule_check(&pres, &dual, &["phi", "y1", "y2"]);
        assert!(failures.is_empty(), "{failures:?}");
    }
}
