//! Built-in algebra presentations and matrix data loaded from the JSON
//! fixtures embedded in the crate. Every relation and matrix entry carries a
//! citation string locating it in the source material; the loaders here turn
//! the textual fixtures into presentations and matrices over exact scalars.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::algebra::presentation::Presentation;
use crate::algebra::{AlgSig, SuperPoly};
use crate::linalg::GMat;
use crate::scalars::{parse_scalar, GScalar, ParamSig};

pub const FIXTURES: &[(&str, &str)] = &[
    ("presets.json", include_str!("../../fixtures/presets.json")),
    ("eq51.json", include_str!("../../fixtures/eq51.json")),
    ("eq32.json", include_str!("../../fixtures/eq32.json")),
    ("rhat_pq.json", include_str!("../../fixtures/rhat_pq.json")),
    ("rhat_hh.json", include_str!("../../fixtures/rhat_hh.json")),
    ("r_h.json", include_str!("../../fixtures/r_h.json")),
    ("g_full.json", include_str!("../../fixtures/g_full.json")),
    ("g_h.json", include_str!("../../fixtures/g_h.json")),
    ("g_hprime.json", include_str!("../../fixtures/g_hprime.json")),
    ("citations.json", include_str!("../../fixtures/citations.json")),
];

pub fn fixture_text(file: &str) -> &'static str {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == file)
        .unwrap_or_else(|| panic!("unknown fixture `{file}`"))
        .1
}

/// Hex SHA-256 of an embedded fixture, for inclusion in reports.
pub fn fixture_sha256(file: &str) -> String {
    let mut h = Sha256::new();
    h.update(fixture_text(file).as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Deserialize)]
struct RelDef {
    citation: String,
    expr: String,
}

#[derive(Deserialize)]
struct PresetDef {
    name: String,
    citation: String,
    generators: Vec<(String, u8)>,
    #[serde(default)]
    relations: Vec<RelDef>,
    #[serde(default)]
    relations_from: Option<String>,
}

#[derive(Deserialize)]
struct PresetsFile {
    even_params: Vec<String>,
    odd_params: Vec<String>,
    presets: Vec<PresetDef>,
}

#[derive(Deserialize)]
struct RelationsFile {
    #[allow(dead_code)]
    name: String,
    citation: String,
    relations: Vec<RelDef>,
}

#[derive(Deserialize)]
struct MatrixFile {
    name: String,
    citation: String,
    #[serde(default)]
    parities: Option<Vec<u8>>,
    entries: Vec<Vec<String>>,
}

fn presets_file() -> &'static PresetsFile {
    static FILE: OnceLock<PresetsFile> = OnceLock::new();
    FILE.get_or_init(|| {
        serde_json::from_str(fixture_text("presets.json")).expect("presets.json is well formed")
    })
}

/// The shared scalar parameter signature used by every preset.
pub fn param_sig() -> Arc<ParamSig> {
    static SIG: OnceLock<Arc<ParamSig>> = OnceLock::new();
    SIG.get_or_init(|| {
        let f = presets_file();
        let even: Vec<&str> = f.even_params.iter().map(|s| s.as_str()).collect();
        let odd: Vec<&str> = f.odd_params.iter().map(|s| s.as_str()).collect();
        ParamSig::new(&even, &odd)
    })
    .clone()
}

pub fn preset_names() -> Vec<&'static str> {
    presets_file().presets.iter().map(|p| p.name.as_str()).collect()
}

fn preset_def(name: &str) -> &'static PresetDef {
    presets_file()
        .presets
        .iter()
        .find(|p| p.name == name)
        .unwrap_or_else(|| panic!("unknown preset `{name}`"))
}

pub fn preset_citation(name: &str) -> &'static str {
    &preset_def(name).citation
}

pub fn alg_sig(name: &str) -> Arc<AlgSig> {
    alg_sig_in(name, &param_sig())
}

/// The preset's generator signature over a caller-supplied scalar signature,
/// for contexts that need extra parameters (conjugates, Grassmann entries).
pub fn alg_sig_in(name: &str, scal: &Arc<ParamSig>) -> Arc<AlgSig> {
    let def = preset_def(name);
    let gens: Vec<(&str, u8)> = def.generators.iter().map(|(n, p)| (n.as_str(), *p)).collect();
    AlgSig::new(gens, scal)
}

fn parse_rel_defs(defs: &[RelDef], sig: &Arc<AlgSig>) -> Vec<(String, SuperPoly)> {
    defs.iter()
        .map(|r| {
            let p = SuperPoly::parse(&r.expr, sig)
                .unwrap_or_else(|e| panic!("bad relation `{}`: {e}", r.expr));
            (r.citation.clone(), p)
        })
        .collect()
}

/// Defining relations of a preset together with their citations.
pub fn preset_relations(name: &str) -> Vec<(String, SuperPoly)> {
    preset_relations_in(name, &alg_sig(name))
}

/// Defining relations parsed in a caller-supplied generator signature.
pub fn preset_relations_in(name: &str, sig: &Arc<AlgSig>) -> Vec<(String, SuperPoly)> {
    let def = preset_def(name);
    match &def.relations_from {
        Some(file) => {
            let f: RelationsFile = serde_json::from_str(fixture_text(&format!("{file}.json")))
                .expect("relations fixture is well formed");
            parse_rel_defs(&f.relations, sig)
        }
        None => parse_rel_defs(&def.relations, sig),
    }
}

/// A relation list loaded from a standalone relation fixture in the given
/// generator signature.
pub fn relation_fixture(file: &str, sig: &Arc<AlgSig>) -> (String, Vec<(String, SuperPoly)>) {
    let f: RelationsFile = serde_json::from_str(fixture_text(&format!("{file}.json")))
        .expect("relations fixture is well formed");
    (f.citation.clone(), parse_rel_defs(&f.relations, sig))
}

/// The preset as an oriented rewriting system, run through bounded completion.
/// Completion is expected to terminate for every built-in preset; the result
/// may still keep non-orientable relations aside in `extra_relations`.
pub fn preset(name: &str) -> Presentation {
    let sig = alg_sig(name);
    let rels: Vec<SuperPoly> = preset_relations(name).into_iter().map(|(_, p)| p).collect();
    let mut pres = Presentation::from_relations(&sig, &rels)
        .unwrap_or_else(|e| panic!("preset `{name}` fails to orient: {e}"));
    if let Err(pairs) = pres.complete(256) {
        panic!("preset `{name}` fails completion with {} unresolved pairs", pairs.len());
    }
    pres
}

/// Orients an arbitrary relation list and runs bounded completion, the same
/// way the built-in presets are constructed.
pub fn build_presentation(sig: &Arc<AlgSig>, rels: &[SuperPoly]) -> Presentation {
    let mut pres =
        Presentation::from_relations(sig, rels).unwrap_or_else(|e| panic!("orientation: {e}"));
    if let Err(pairs) = pres.complete(256) {
        panic!("completion left {} unresolved pairs", pairs.len());
    }
    pres
}

/// A square matrix fixture over exact graded scalars, with its citation. Base
/// parities come from the fixture when present; 9x9 fixtures without explicit
/// composite parities inherit them from the listed base parities.
pub struct MatrixFixture {
    pub name: String,
    pub citation: String,
    pub mat: GMat<GScalar>,
}

pub fn matrix_fixture(file: &str) -> MatrixFixture {
    matrix_fixture_in(file, &param_sig())
}

pub fn matrix_fixture_in(file: &str, sig: &Arc<ParamSig>) -> MatrixFixture {
    let f: MatrixFile = serde_json::from_str(fixture_text(&format!("{file}.json")))
        .expect("matrix fixture is well formed");
    let n = f.entries.len();
    let par: Vec<u8> = match &f.parities {
        Some(base) if base.len() == n => base.clone(),
        Some(base) => {
            assert_eq!(base.len() * base.len(), n, "parity list does not match matrix size");
            composite_parity(base)
        }
        None => vec![0; n],
    };
    let mut entries = Vec::with_capacity(n * n);
    for row in &f.entries {
        assert_eq!(row.len(), n, "matrix fixture is not square");
        for s in row {
            entries.push(
                parse_scalar(s, &sig).unwrap_or_else(|e| panic!("bad matrix entry `{s}`: {e}")),
            );
        }
    }
    MatrixFixture {
        name: f.name,
        citation: f.citation,
        mat: GMat::new(par.clone(), par, entries, GScalar::zero(&sig)),
    }
}

/// Parities of the graded tensor square index (i, j) -> 3 i + j.
pub fn composite_parity(base: &[u8]) -> Vec<u8> {
    let n = base.len();
    (0..n * n).map(|k| (base[k / n] + base[k % n]) % 2).collect()
}

/// Evaluation points avoiding denominators of the built-in fixtures, handy
/// for rank computations: q = 2, p = 3, hbar1 = 5, hbar2 = 7.
pub fn generic_point() -> BTreeMap<usize, crate::scalars::GRat> {
    use crate::scalars::GRat;
    let mut pt = BTreeMap::new();
    pt.insert(0, GRat::from_int(2));
    pt.insert(1, GRat::from_int(3));
    pt.insert(2, GRat::from_int(5));
    pt.insert(3, GRat::from_int(7));
    pt
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_load_and_are_confluent() {
        for name in preset_names() {
            let pres = preset(name);
            assert!(pres.is_locally_confluent(), "preset {name} not confluent");
            for (cit, rel) in preset_relations(name) {
                assert!(pres.reduces_to_zero(&rel), "relation not in ideal: {cit}");
            }
            for extra in pres.extra_relations() {
                assert!(
                    pres.reduces_to_zero(extra),
                    "{name}: non-orientable relation does not follow from the rules: {extra}"
                );
            }
        }
    }

    #[test]
    fn matrix_fixtures_load() {
        for file in ["rhat_pq", "rhat_hh", "r_h"] {
            let m = matrix_fixture(file);
            assert_eq!(m.mat.rows(), 9);
            assert_eq!(m.mat.row_par, vec![0, 1, 1, 1, 0, 0, 1, 0, 0]);
        }
        for file in ["g_full", "g_h", "g_hprime"] {
            let m = matrix_fixture(file);
            assert_eq!(m.mat.rows(), 3);
            assert!(m.mat.get(0, 0).is_one());
        }
    }

    #[test]
    fn fixture_hashes_are_stable_length() {
        for (name, _) in FIXTURES {
            assert_eq!(fixture_sha256(name).len(), 64);
        }
    }
}
