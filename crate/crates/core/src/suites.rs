//! Named verification suites: each suite wraps one module's checks into
//! report records, classifies them as asserted or adjudication, and runs them
//! concurrently with ordered, deterministic output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::presets::{
    alg_sig, alg_sig_in, build_presentation, matrix_fixture, matrix_fixture_in, preset,
    preset_relations, preset_relations_in, relation_fixture,
};
use crate::algebra::span::ideal_equiv;
use crate::algebra::SuperPoly;
use crate::contraction::{self, BasisChange};
use crate::frt;
use crate::hopfstar::{self, InvolutionSpec};
use crate::liesuper;
use crate::report::{citation, CheckRecord, Gating, Report, Verdict};
use crate::reps;
use crate::rmatrix;
use crate::scalars::{parse_scalar, ConjSpec, GScalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Graded,
    Ungraded,
    Both,
}

impl Mode {
    fn includes(self, graded: bool) -> bool {
        match self {
            Mode::Both => true,
            Mode::Graded => graded,
            Mode::Ungraded => !graded,
        }
    }
}

#[derive(Clone, Copy)]
pub struct SuiteOptions {
    /// Which tensor-grading modes the R-matrix identity checks run in.
    pub mode: Mode,
    /// Truncation order for the exponential relation checks.
    pub order: u32,
    /// Worker threads for running checks; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { mode: Mode::Both, order: 6, jobs: 0 }
    }
}

pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub notes: Option<String>,
}

fn pass() -> Outcome {
    Outcome { verdict: Verdict::Pass, witness: None, notes: None }
}

fn pass_note(notes: impl Into<String>) -> Outcome {
    Outcome { verdict: Verdict::Pass, witness: None, notes: Some(notes.into()) }
}

fn fail(witness: impl Into<String>, notes: Option<String>) -> Outcome {
    Outcome { verdict: Verdict::Fail, witness: Some(witness.into()), notes }
}

fn from_failures(failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        pass()
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        fail(shown.join("; "), Some(format!("{} failing checks", failures.len())))
    }
}

type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    id: &'static str,
    gating: Gating,
    run: CheckFn,
}

fn check(
    id: &'static str,
    gating: Gating,
    run: impl Fn() -> Outcome + Send + Sync + 'static,
) -> Check {
    Check { id, gating, run: Box::new(run) }
}

fn execute(c: &Check) -> CheckRecord {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)())).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".to_string());
        Outcome {
            verdict: Verdict::Indeterminate,
            witness: None,
            notes: Some(format!("check panicked: {msg}")),
        }
    });
    CheckRecord {
        id: c.id.to_string(),
        citation: citation(c.id),
        verdict: outcome.verdict,
        gating: c.gating,
        witness: outcome.witness,
        notes: outcome.notes,
        millis: start.elapsed().as_millis(),
    }
}

pub fn suite_names() -> &'static [&'static str] {
    &["rmatrix", "contraction", "frt", "hopf", "star", "liesuper", "reps"]
}

/// Runs the named suite (or `all`) and assembles the ordered report.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report, String> {
    let checks: Vec<Check> = if name == "all" {
        suite_names().iter().flat_map(|n| suite_checks(n, opts)).collect()
    } else if suite_names().contains(&name) {
        suite_checks(name, opts)
    } else {
        return Err(format!(
            "unknown suite `{name}`; expected all or one of {}",
            suite_names().join(", ")
        ));
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    let records: Vec<CheckRecord> = pool.install(|| checks.par_iter().map(execute).collect());
    Ok(Report::new(name, records))
}

fn suite_checks(name: &str, opts: &SuiteOptions) -> Vec<Check> {
    match name {
        "rmatrix" => rmatrix_checks(opts.mode),
        "contraction" => contraction_checks(),
        "frt" => frt_checks(),
        "hopf" => hopf_checks(),
        "star" => star_checks(),
        "liesuper" => liesuper_checks(opts.order),
        "reps" => reps_checks(),
        _ => unreachable!("suite names validated by run_suite"),
    }
}

fn polys(named: Vec<(String, SuperPoly)>) -> Vec<SuperPoly> {
    named.into_iter().map(|(_, p)| p).collect()
}

fn entry_witness((i, j, w): (usize, usize, GScalar)) -> String {
    format!("entry ({i},{j}) = {w}")
}

fn matrix_outcome(res: Result<(), (usize, usize, GScalar)>, refutation: Option<&str>) -> Outcome {
    match res {
        Ok(()) => pass(),
        Err(w) => fail(entry_witness(w), refutation.map(str::to_string)),
    }
}

fn equiv_outcome(res: Result<(), SuperPoly>) -> Outcome {
    match res {
        Ok(()) => pass(),
        Err(w) => fail(format!("ideal mismatch at {w}"), None),
    }
}

fn rmatrix_checks(mode: Mode) -> Vec<Check> {
    const UNGRADED_REFUTED: &str =
        "refutes the printed ungraded claim; the graded identity holds";
    let mut v = Vec::new();
    if mode.includes(true) {
        v.push(check("rmatrix.braid-pq-graded", Gating::Asserted, || {
            matrix_outcome(rmatrix::braid_check(&matrix_fixture("rhat_pq").mat, true), None)
        }));
        v.push(check("rmatrix.ybe-pq-graded", Gating::Asserted, || {
            let pq = matrix_fixture("rhat_pq").mat;
            let sig = pq.zero_entry().sig().clone();
            let r = rmatrix::flip(&sig, true).mul(&pq);
            matrix_outcome(rmatrix::ybe_check(&r, true), None)
        }));
        v.push(check("rmatrix.braid-hh-graded", Gating::Asserted, || {
            matrix_outcome(rmatrix::braid_check(&matrix_fixture("rhat_hh").mat, true), None)
        }));
        v.push(check("rmatrix.ybe-hh-graded", Gating::Asserted, || {
            let hh = matrix_fixture("rhat_hh").mat;
            let sig = hh.zero_entry().sig().clone();
            let r = rmatrix::flip(&sig, true).mul(&hh);
            matrix_outcome(rmatrix::ybe_check(&r, true), None)
        }));
    }
    if mode.includes(false) {
        v.push(check("rmatrix.braid-pq-ungraded", Gating::Adjudication, || {
            matrix_outcome(rmatrix::braid_check(&matrix_fixture("rhat_pq").mat, false), None)
        }));
        v.push(check("rmatrix.braid-hh-ungraded", Gating::Adjudication, || {
            matrix_outcome(
                rmatrix::braid_check(&matrix_fixture("rhat_hh").mat, false),
                Some(UNGRADED_REFUTED),
            )
        }));
        v.push(check("rmatrix.ybe-hh-ungraded", Gating::Adjudication, || {
            let hh = matrix_fixture("rhat_hh").mat;
            let sig = hh.zero_entry().sig().clone();
            let r = rmatrix::flip(&sig, true).mul(&hh);
            matrix_outcome(rmatrix::ybe_check(&r, false), Some(UNGRADED_REFUTED))
        }));
    }
    v.push(check("rmatrix.involutive-hh", Gating::Asserted, || {
        matrix_outcome(rmatrix::involutive_check(&matrix_fixture("rhat_hh").mat), None)
    }));
    v.push(check("rmatrix.projectors-hh", Gating::Asserted, || {
        match rmatrix::projectors(&matrix_fixture("rhat_hh").mat) {
            Ok(_) => pass(),
            Err(e) => fail(e.to_string(), None),
        }
    }));
    v.push(check("rmatrix.decompose-hh", Gating::Asserted, || {
        let hh = matrix_fixture("rhat_hh").mat;
        let printed = matrix_fixture("r_h").mat;
        match rmatrix::decompose_check(&hh, &printed) {
            Ok(out) => pass_note(format!("supertranspose convention: {}", out.convention)),
            Err(e) => fail(e, None),
        }
    }));
    v.push(check("rmatrix.printed-h-factor", Gating::Adjudication, || {
        let hh = matrix_fixture("rhat_hh").mat;
        let printed = matrix_fixture("r_h").mat;
        match rmatrix::decompose_check(&hh, &printed) {
            Ok(out) => match out.printed_mismatch {
                None => pass(),
                Some((i, j, w)) => fail(
                    format!("printed entry ({i},{j}) differs from the derived factor by {w}"),
                    Some(
                        "transcription discrepancy in the displayed matrix; the derived \
                         factor satisfies every claimed identity"
                            .to_string(),
                    ),
                ),
            },
            Err(e) => fail(e, None),
        }
    }));
    for graded in [true, false] {
        if !mode.includes(graded) {
            continue;
        }
        let (h_id, hp_id) = if graded {
            ("rmatrix.ybe-h-factor-graded", "rmatrix.ybe-hprime-factor-graded")
        } else {
            ("rmatrix.ybe-h-factor-ungraded", "rmatrix.ybe-hprime-factor-ungraded")
        };
        v.push(check(h_id, Gating::Asserted, move || {
            let hh = matrix_fixture("rhat_hh").mat;
            let printed = matrix_fixture("r_h").mat;
            let out = rmatrix::decompose_check(&hh, &printed).expect("decomposition holds");
            matrix_outcome(rmatrix::ybe_check(&out.r_h, graded), None)
        }));
        v.push(check(hp_id, Gating::Asserted, move || {
            let hh = matrix_fixture("rhat_hh").mat;
            let printed = matrix_fixture("r_h").mat;
            let out = rmatrix::decompose_check(&hh, &printed).expect("decomposition holds");
            matrix_outcome(rmatrix::ybe_check(&out.r_hprime, graded), None)
        }));
    }
    v.push(check("rmatrix.kernel-minus", Gating::Asserted, || {
        let hh = matrix_fixture("rhat_hh").mat;
        let (_, p_minus) = rmatrix::projectors(&hh).expect("projectors exist");
        let sig = alg_sig("Ah12");
        let rels = rmatrix::kernel_relations(&p_minus, &sig, &["x", "theta1", "theta2"], false);
        equiv_outcome(ideal_equiv(&rels, &polys(preset_relations("Ah12"))))
    }));
    v.push(check("rmatrix.kernel-plus", Gating::Asserted, || {
        let hh = matrix_fixture("rhat_hh").mat;
        let (p_plus, _) = rmatrix::projectors(&hh).expect("projectors exist");
        let sig = alg_sig("Ahp21");
        let rels = rmatrix::kernel_relations(&p_plus, &sig, &["phi", "y1", "y2"], true);
        let mut out = equiv_outcome(ideal_equiv(&rels, &polys(preset_relations("Ahp21"))));
        if out.verdict == Verdict::Pass {
            out.notes = Some(
                "parity prefactor adjudicated to the second coordinate of each column pair"
                    .to_string(),
            );
        }
        out
    }));
    v.push(check("rmatrix.compact-hh", Gating::Asserted, || {
        let hh = matrix_fixture("rhat_hh").mat;
        let scal = hh.zero_entry().sig().clone();
        compact_outcome(rmatrix::compact_form_check(
            &hh,
            &preset("Ah12"),
            &["x", "theta1", "theta2"],
            &GScalar::one(&scal),
        ))
    }));
    v.push(check("rmatrix.compact-pq-one-parameter", Gating::Asserted, || {
        let pq = matrix_fixture("rhat_pq").mat;
        let scal = pq.zero_entry().sig().clone();
        compact_outcome(rmatrix::compact_form_check(
            &pq,
            &preset("Aq12"),
            &["X", "Theta1", "Theta2"],
            &GScalar::even_var(&scal, "p"),
        ))
    }));
    v.push(check("rmatrix.compact-pq-two-parameter", Gating::Adjudication, || {
        let pq = matrix_fixture("rhat_pq").mat;
        let scal = pq.zero_entry().sig().clone();
        let mut out = compact_outcome(rmatrix::compact_form_check(
            &pq,
            &preset("Apq12"),
            &["X", "Theta1", "Theta2"],
            &GScalar::even_var(&scal, "p"),
        ));
        if out.verdict == Verdict::Fail {
            out.notes = Some(
                "every residue is proportional to p - q: the compact form encodes the \
                 one-parameter relations, not the two-parameter ones"
                    .to_string(),
            );
        }
        out
    }));
    v
}

fn compact_outcome(res: Result<(), Vec<(usize, SuperPoly)>>) -> Outcome {
    match res {
        Ok(()) => pass(),
        Err(fails) => {
            let (row, nf) = &fails[0];
            fail(
                format!("composite index {row}: residue {nf}"),
                Some(format!("{} of 9 composite indices fail", fails.len())),
            )
        }
    }
}

fn superspace_bc() -> BasisChange {
    BasisChange::new(
        matrix_fixture("g_full").mat,
        &["X", "Theta1", "Theta2"],
        &["x", "theta1", "theta2"],
    )
    .expect("change of basis is invertible")
}

fn contraction_checks() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(check("contraction.superspace-relations", Gating::Asserted, || {
        let target = alg_sig("Ah12");
        let got = contraction::transform_relations(
            &superspace_bc(),
            &polys(preset_relations("Aq12")),
            &target,
        );
        let expected =
            contraction::canonical_span(&polys(relation_fixture("eq32", &target).1), &target);
        if got.len() != expected.len() {
            return fail(
                format!("{} transformed rows vs {} expected", got.len(), expected.len()),
                None,
            );
        }
        for (a, b) in got.iter().zip(expected.iter()) {
            if !a.eq(b) {
                return fail(format!("row mismatch: got {a}, expected {b}"), None);
            }
        }
        let body = contraction::body_relations(&got, &target);
        if !contraction::free_of_odd_param(&body, "h'") {
            return fail("a transformed relation mentions h'".to_string(), None);
        }
        pass()
    }));
    v.push(check("contraction.superspace-limit", Gating::Asserted, || {
        let target = alg_sig("Ah12");
        let pre = contraction::transform_relations(
            &superspace_bc(),
            &polys(preset_relations("Aq12")),
            &target,
        );
        let vals = contraction::point(&target.scal, &[("q", 1)]);
        match contraction::limit_relations(&pre, &vals) {
            Ok(lim) => equiv_outcome(ideal_equiv(&lim, &polys(preset_relations("Ah12")))),
            Err(e) => fail(format!("limit not pole-free: {e}"), None),
        }
    }));
    v.push(check("contraction.exterior-limit", Gating::Asserted, || {
        let target = alg_sig("Ahp21");
        let bc = BasisChange::new(
            matrix_fixture("g_full").mat,
            &["Phi", "Y1", "Y2"],
            &["phi", "y1", "y2"],
        )
        .expect("change of basis is invertible");
        let pre =
            contraction::transform_relations(&bc, &polys(preset_relations("Apq21")), &target);
        let vals = contraction::point(&target.scal, &[("q", 1), ("p", 1)]);
        let lim = match contraction::limit_relations(&pre, &vals) {
            Ok(lim) => lim,
            Err(e) => return fail(format!("limit not pole-free: {e}"), None),
        };
        let mut out = equiv_outcome(ideal_equiv(&lim, &polys(preset_relations("Ahp21"))));
        if out.verdict == Verdict::Pass
            && !contraction::free_of_odd_param(
                &contraction::body_relations(&lim, &target),
                "h",
            )
        {
            out = fail("a limit relation mentions h".to_string(), None);
        }
        out
    }));
    v.push(check("contraction.round-trip", Gating::Asserted, || {
        let src_sig = alg_sig("Aq12");
        let target = alg_sig("Ah12");
        let bc = superspace_bc();
        let rels = polys(preset_relations("Aq12"));
        let there = contraction::transform_relations(&bc, &rels, &target);
        let back = contraction::transform_relations(&bc.inverse(), &there, &src_sig);
        let expected = contraction::canonical_span(&rels, &src_sig);
        if back.len() == expected.len() && back.iter().zip(&expected).all(|(a, b)| a.eq(b)) {
            pass()
        } else {
            fail("round trip does not recover the source relations".to_string(), None)
        }
    }));
    v.push(check("contraction.rmatrix", Gating::Asserted, || {
        let pq = matrix_fixture("rhat_pq").mat;
        let sig = pq.zero_entry().sig().clone();
        let vals = contraction::point(&sig, &[("q", 1), ("p", 1)]);
        let got = match contraction::contract_rmatrix(&pq, &superspace_bc(), &vals) {
            Ok(m) => m,
            Err(e) => return fail(format!("limit not pole-free: {e}"), None),
        };
        let printed = matrix_fixture("rhat_hh").mat;
        match got.first_diff(&printed) {
            None => pass_note("all 81 entry limits certified pole-free".to_string()),
            Some(w) => fail(entry_witness(w), None),
        }
    }));
    v.push(check("contraction.braid-before-limit", Gating::Asserted, || {
        let pq = matrix_fixture("rhat_pq").mat;
        let bc = superspace_bc();
        let gg = bc.mat.kron(&bc.mat, crate::linalg::KronMode::GradedRight);
        let conj = gg.inv().expect("g (x) g invertible").mul(&pq).mul(&gg);
        matrix_outcome(rmatrix::braid_check(&conj, true), None)
    }));
    v
}

fn eq51_polys(sig: &std::sync::Arc<crate::algebra::AlgSig>) -> Vec<SuperPoly> {
    polys(relation_fixture("eq51", sig).1)
}

fn frt_checks() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(check("frt.relations-match-fixture", Gating::Asserted, || {
        let sig = alg_sig("Mhh12");
        let rels = frt::frt_relations(&matrix_fixture("rhat_hh").mat, &sig);
        equiv_outcome(ideal_equiv(&rels, &eq51_polys(&sig)))
    }));
    v.push(check("frt.coaction-matches-fixture", Gating::Asserted, || {
        let sig = alg_sig("Mhh12");
        let mut rels = frt::coaction_relations(&preset("Ah12"), &["x", "theta1", "theta2"], &sig);
        rels.extend(frt::coaction_relations(&preset("Ahp21"), &["phi", "y1", "y2"], &sig));
        equiv_outcome(ideal_equiv(&rels, &eq51_polys(&sig)))
    }));
    v.push(check("frt.routes-agree", Gating::Asserted, || {
        let sig = alg_sig("Mhh12");
        let a = frt::frt_relations(&matrix_fixture("rhat_hh").mat, &sig);
        let mut b = frt::coaction_relations(&preset("Ah12"), &["x", "theta1", "theta2"], &sig);
        b.extend(frt::coaction_relations(&preset("Ahp21"), &["phi", "y1", "y2"], &sig));
        equiv_outcome(ideal_equiv(&a, &b))
    }));
    v.push(check("frt.one-parameter-specialization", Gating::Adjudication, || {
        let sig = alg_sig("Mhh12");
        let hp = sig.scal.odd_index("h'").expect("h' present");
        let bit = 1u64 << hp;
        let rhat = matrix_fixture("rhat_hh").mat;
        let zero = rhat.zero_entry().clone();
        let specialized = rhat.map(zero, |e| e.retain_comps(|m| m & bit == 0));
        let a = frt::frt_relations(&specialized, &sig);
        let b: Vec<SuperPoly> = polys(relation_fixture("eq51", &sig).1)
            .into_iter()
            .map(|r| r.map_coeffs(|c| c.retain_comps(|m| m & bit == 0)))
            .filter(|r| !r.is_zero())
            .collect();
        equiv_outcome(ideal_equiv(&a, &b))
    }));
    v.push(check("frt.bialgebra", Gating::Asserted, || {
        from_failures(frt::bialgebra_check(&preset("Mhh12")))
    }));
    v.push(check("frt.comodule-superspace", Gating::Asserted, || {
        from_failures(frt::comodule_check(
            &preset("Mhh12"),
            &preset("Ah12"),
            &["x", "theta1", "theta2"],
        ))
    }));
    v.push(check("frt.comodule-exterior", Gating::Asserted, || {
        from_failures(frt::comodule_check(
            &preset("Mhh12"),
            &preset("Ahp21"),
            &["phi", "y1", "y2"],
        ))
    }));
    v
}

fn hopf_checks() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(check("hopf.axioms", Gating::Asserted, || {
        from_failures(hopfstar::hopf_check(&preset("FAq12")))
    }));
    v.push(check("hopf.antipode-antihom", Gating::Asserted, || {
        let report = hopfstar::antipode_antihom_report(&preset("FAq12"));
        let coherent = report.iter().all(|r| r.ok == (r.invert_q == r.target_inverted));
        let validated = report.iter().any(|r| r.ok && r.invert_q && r.target_inverted);
        if coherent && validated {
            pass_note(
                "antihomomorphism holds exactly when the parameter inversion matches the \
                 target algebra; both reversal sign conventions agree"
                    .to_string(),
            )
        } else {
            fail(format!("convention grid: {report:?}"), None)
        }
    }));
    v
}

fn star_checks() -> Vec<Check> {
    let mut v = Vec::new();
    for name in ["Aq12", "Apq21", "Ah12", "Ahp21"] {
        let id = match name {
            "Aq12" => "star.Aq12",
            "Apq21" => "star.Apq21",
            "Ah12" => "star.Ah12",
            _ => "star.Ahp21",
        };
        v.push(check(id, Gating::Asserted, move || {
            let (pres, inv) = hopfstar::star_preset(name).expect("preset star");
            from_failures(hopfstar::star_check(&pres, &inv))
        }));
    }
    v.push(check("star.induce-h-only", Gating::Asserted, || {
        induced_star_outcome("g_h", true, false)
    }));
    v.push(check("star.induce-hprime-only", Gating::Asserted, || {
        induced_star_outcome("g_hprime", false, true)
    }));
    v.push(check("star.induce-full", Gating::Adjudication, || {
        induced_star_outcome("g_full", true, true)
    }));
    v
}

/// Pushes the source star through the named change-of-basis fixture and
/// compares the induced images with the target star. The h-route starts from
/// the identity star on the one-parameter superspace; the h'-route from the
/// negation star on the exterior superspace; the full route from the identity
/// star, constraining both conjugate parameters.
fn induced_star_outcome(g_fixture: &str, constrain_h: bool, constrain_hp: bool) -> Outcome {
    let scal = hopfstar::conjugate_sig();
    let conj = hopfstar::conjugate_spec(&scal);
    let dual_route = g_fixture == "g_hprime";
    let (src_name, target_name, source_names, target_names): (_, _, [&str; 3], [&str; 3]) =
        if dual_route {
            ("Apq21", "Ahp21", ["Phi", "Y1", "Y2"], ["phi", "y1", "y2"])
        } else {
            ("Aq12", "Ah12", ["X", "Theta1", "Theta2"], ["x", "theta1", "theta2"])
        };
    let src_sig = alg_sig_in(src_name, &scal);
    let target_sig = alg_sig_in(target_name, &scal);
    let bc = BasisChange::new(
        matrix_fixture_in(g_fixture, &scal).mat,
        &source_names,
        &target_names,
    )
    .expect("change of basis is invertible");
    let src_images: Vec<SuperPoly> = src_sig
        .gens
        .iter()
        .map(|g| {
            let v = SuperPoly::gen(&src_sig, &g.name);
            if dual_route && g.name.starts_with('Y') {
                v.neg()
            } else {
                v
            }
        })
        .collect();
    let mut constraints: Vec<Option<(bool, usize)>> =
        (0..scal.odd.len()).map(|i| Some((false, i))).collect();
    if constrain_h {
        constraints[scal.odd_index("hb").unwrap()] =
            Some((true, scal.odd_index("h").unwrap()));
    }
    if constrain_hp {
        constraints[scal.odd_index("hb'").unwrap()] =
            Some((false, scal.odd_index("h'").unwrap()));
    }
    let forbidden = [scal.odd_index("hb").unwrap(), scal.odd_index("hb'").unwrap()];
    let induced = match hopfstar::induce_star(
        &bc,
        &src_images,
        &conj,
        &constraints,
        &target_sig,
        &forbidden,
    ) {
        Ok(ind) => ind,
        Err(e) => return fail(e, None),
    };

    let expected: Vec<SuperPoly> = if dual_route {
        let hp = GScalar::odd_var(&scal, "h'");
        vec![
            SuperPoly::gen(&target_sig, "y1").neg(),
            SuperPoly::gen(&target_sig, "y2").neg(),
            SuperPoly::gen(&target_sig, "phi").sub(&SuperPoly::gen(&target_sig, "y2").scale(&hp)),
        ]
    } else {
        let h = GScalar::odd_var(&scal, "h");
        vec![
            SuperPoly::gen(&target_sig, "theta1"),
            SuperPoly::gen(&target_sig, "theta2").sub(&SuperPoly::gen(&target_sig, "x").scale(&h)),
            SuperPoly::gen(&target_sig, "x"),
        ]
    };
    let diffs: Vec<String> = induced
        .images
        .iter()
        .zip(&expected)
        .zip(&target_sig.gens)
        .filter(|((got, want), _)| !got.eq(want))
        .map(|((got, want), gen)| {
            format!("image of {} differs from the target star by {}", gen.name, got.sub(want))
        })
        .collect();
    if !diffs.is_empty() {
        return fail(
            diffs.join("; "),
            Some(
                "the induced involution does not close on the claimed star; stable refutation"
                    .to_string(),
            ),
        );
    }

    let mut notes = Vec::new();
    if g_fixture == "g_h" {
        let t2 = target_sig.index("theta2").unwrap() as usize;
        let x_letter = target_sig.index("x").unwrap();
        let x_coeff = induced.pre_constraint[t2]
            .terms()
            .find(|(w, _)| w.as_slice() == [x_letter])
            .map(|(_, c)| c.clone());
        let want = parse_scalar("(h + q*hb)/(q - 1)", &scal).expect("parses");
        match x_coeff {
            Some(c) if c.sub(&want).is_zero() => notes.push(
                "pre-constraint coefficient (h + q conj(h))/(q - 1) matched symbolically"
                    .to_string(),
            ),
            other => {
                let shown =
                    other.map(|c| c.to_string()).unwrap_or_else(|| "missing".to_string());
                return fail(format!("unexpected pre-constraint coefficient {shown}"), None);
            }
        }
    }

    let pres = build_presentation(
        &target_sig,
        &polys(preset_relations_in(target_name, &target_sig)),
    );
    let mut conj_t = ConjSpec::identity(&scal);
    if !dual_route {
        conj_t = conj_t.with_odd(&scal, "h", true, "h").with_odd(&scal, "hb", true, "hb");
    }
    let inv = InvolutionSpec { images: induced.images, conj: conj_t, superstar: false };
    let failures = hopfstar::star_check(&pres, &inv);
    if failures.is_empty() {
        notes.push("induced involution passes the target star checks".to_string());
        pass_note(notes.join("; "))
    } else {
        fail(failures.join("; "), None)
    }
}

fn liesuper_checks(order: u32) -> Vec<Check> {
    let mut v = Vec::new();
    v.push(check("liesuper.exponential-relations", Gating::Asserted, move || {
        let mut out = from_failures(liesuper::exp_relation_check(order));
        if out.verdict == Verdict::Pass {
            out.notes = Some(format!("verified through truncation order {order}"));
        }
        out
    }));
    v.push(check("liesuper.primitive-hopf", Gating::Asserted, || {
        from_failures(liesuper::primitive_hopf_check())
    }));
    v.push(check("liesuper.matrix-brackets", Gating::Asserted, || {
        from_failures(liesuper::mu_check())
    }));
    v
}

fn reps_checks() -> Vec<Check> {
    let mut v = Vec::new();
    for (id, target) in [("reps.Aq12", "Aq12"), ("reps.Apq21", "Apq21")] {
        v.push(check(id, Gating::Asserted, move || example_outcome(target)));
    }
    v.push(check("reps.Apq12", Gating::Adjudication, || example_outcome("Apq12")));
    v.push(check("reps.transported", Gating::Asserted, || {
        let scal = reps::example_sig();
        let bc = BasisChange::new(
            matrix_fixture_in("g_full", &scal).mat,
            &["X", "Theta1", "Theta2"],
            &["x", "theta1", "theta2"],
        )
        .expect("change of basis is invertible");
        let moved = reps::transform_rep(&reps::example_rep("Aq12", true).unwrap(), &bc);
        let sig = alg_sig_in("Ah12", &scal);
        let rels = relation_fixture("eq32", &sig).1;
        let verdicts = reps::rep_check(&moved, &rels, &sig);
        match verdicts.into_iter().find(|(_, w)| w.is_some()) {
            None => pass_note(
                "transported images satisfy the intermediate relations under the \
                 opposite convention"
                    .to_string(),
            ),
            Some((label, w)) => {
                fail(format!("relation {label}: {}", entry_witness(w.unwrap())), None)
            }
        }
    }));
    v
}

/// Evaluates one worked example under both multiplication conventions; the
/// claim passes when at least one convention validates every relation, and
/// the notes record each convention's verdict.
fn example_outcome(target: &str) -> Outcome {
    let scal = reps::example_sig();
    let sig = alg_sig_in(target, &scal);
    let rels = preset_relations_in(target, &sig);
    let verdict_for = |opposite: bool| {
        let spec = reps::example_rep(target, opposite).expect("example exists");
        reps::rep_check(&spec, &rels, &sig)
            .into_iter()
            .find(|(_, w)| w.is_some())
    };
    let left = verdict_for(false);
    let opposite = verdict_for(true);
    let describe = |v: &Option<(String, Option<(usize, usize, GScalar)>)>| match v {
        None => "passes".to_string(),
        Some((label, w)) => {
            format!("fails at {label} with {}", entry_witness(w.clone().unwrap()))
        }
    };
    let notes = format!(
        "left convention {}; opposite convention {}",
        describe(&left),
        describe(&opposite)
    );
    if left.is_none() || opposite.is_none() {
        pass_note(notes)
    } else {
        let (label, w) = opposite.unwrap();
        Outcome {
            verdict: Verdict::Fail,
            witness: Some(format!("relation {label}: {}", entry_witness(w.unwrap()))),
            notes: Some(notes),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(report: &Report, id: &str) -> CheckRecord {
        report
            .checks
            .iter()
            .find(|c| c.id == id)
            .unwrap_or_else(|| panic!("missing record `{id}`"))
            .clone()
    }

    #[test]
    fn rmatrix_suite_verdicts() {
        let opts = SuiteOptions::default();
        let report = run_suite("rmatrix", &opts).unwrap();
        assert!(report.gate_ok(false));
        assert!(!report.gate_ok(true));
        assert_eq!(record(&report, "rmatrix.braid-hh-graded").verdict, Verdict::Pass);
        let ungraded = record(&report, "rmatrix.braid-hh-ungraded");
        assert_eq!(ungraded.verdict, Verdict::Fail);
        assert_eq!(ungraded.witness.as_deref(), Some("entry (1,11) = -2*h'"));
        let typo = record(&report, "rmatrix.printed-h-factor");
        assert_eq!(typo.verdict, Verdict::Fail);
        assert!(typo.witness.as_deref().unwrap().contains("(6,2)"));
        assert_eq!(record(&report, "rmatrix.compact-pq-one-parameter").verdict, Verdict::Pass);
        assert_eq!(record(&report, "rmatrix.compact-pq-two-parameter").verdict, Verdict::Fail);
        assert_eq!(record(&report, "rmatrix.kernel-plus").verdict, Verdict::Pass);
    }

    #[test]
    fn mode_filter_selects_checks() {
        let graded = SuiteOptions { mode: Mode::Graded, ..SuiteOptions::default() };
        let report = run_suite("rmatrix", &graded).unwrap();
        assert!(report.checks.iter().all(|c| !c.id.ends_with("-ungraded")));
        assert!(report.gate_ok(false));
        let ungraded = SuiteOptions { mode: Mode::Ungraded, ..SuiteOptions::default() };
        let report = run_suite("rmatrix", &ungraded).unwrap();
        assert!(report.checks.iter().all(|c| !c.id.ends_with("-graded")));
    }

    #[test]
    fn star_suite_verdicts() {
        let report = run_suite("star", &SuiteOptions::default()).unwrap();
        assert!(report.gate_ok(false));
        assert_eq!(record(&report, "star.induce-h-only").verdict, Verdict::Pass);
        assert_eq!(record(&report, "star.induce-hprime-only").verdict, Verdict::Pass);
        let full = record(&report, "star.induce-full");
        assert_eq!(full.verdict, Verdict::Fail);
        assert_eq!(full.gating, Gating::Adjudication);
        assert!(full.witness.as_deref().unwrap().contains("image of x"));
    }

    #[test]
    fn reps_suite_verdicts() {
        let report = run_suite("reps", &SuiteOptions::default()).unwrap();
        assert!(report.gate_ok(false));
        let two = record(&report, "reps.Apq12");
        assert_eq!(two.verdict, Verdict::Fail);
        assert!(two.notes.as_deref().unwrap().contains("left convention fails"));
        assert_eq!(record(&report, "reps.transported").verdict, Verdict::Pass);
    }

    #[test]
    fn reports_are_deterministic_modulo_timing() {
        let opts = SuiteOptions::default();
        let strip = |r: &Report| {
            r.checks
                .iter()
                .map(|c| {
                    (c.id.clone(), c.verdict, c.witness.clone(), c.notes.clone())
                })
                .collect::<Vec<_>>()
        };
        let a = run_suite("contraction", &opts).unwrap();
        let b = run_suite("contraction", &opts).unwrap();
        assert_eq!(strip(&a) == strip(&b), true);
        assert_eq!(a.fixtures, b.fixtures);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &SuiteOptions::default()).is_err());
    }
}
