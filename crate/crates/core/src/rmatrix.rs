//! R-matrix checks: braid and Yang-Baxter equations, involutivity and the
//! eigenprojectors, kernel-to-ideal extraction, the compact-form equation on
//! a presented superspace, and the h-decomposition with its supertranspose
//! adjudication. Everything is exact; failures carry entry witnesses.

use std::sync::Arc;

use crate::algebra::span::{ideal_equiv, span_of};
use crate::algebra::{presets, AlgSig, SuperPoly};
use crate::linalg::{super_permutation, GMat, KronMode};
use crate::scalars::{GScalar, ParamSig, RatFun, ScalarError};

pub fn identity3(sig: &Arc<ParamSig>) -> GMat<GScalar> {
    GMat::identity(vec![0, 1, 1], GScalar::one(sig), GScalar::zero(sig))
}

/// The flip operator on the tensor square: the parity-signed super
/// permutation in graded mode, the plain permutation otherwise.
pub fn flip(sig: &Arc<ParamSig>, graded: bool) -> GMat<GScalar> {
    if graded {
        return super_permutation(&[0, 1, 1], sig);
    }
    let par = presets::composite_parity(&[0, 1, 1]);
    GMat::from_fn(par.clone(), par, GScalar::zero(sig), |ri, cj| {
        let (i, j) = (ri / 3, ri % 3);
        let (k, l) = (cj / 3, cj % 3);
        if i == l && j == k {
            GScalar::one(sig)
        } else {
            GScalar::zero(sig)
        }
    })
}

fn kron_mode(graded: bool) -> KronMode {
    if graded {
        KronMode::GradedRight
    } else {
        KronMode::Ungraded
    }
}

/// A matrix over the commutative nilpotent ring Q(p,q)[h,h']/(h^2, h'^2),
/// the arithmetic behind the "ungraded" reading of the equations: h and h'
/// commute with everything and each component multiplies like a polynomial.
#[derive(Clone)]
pub struct NilMat {
    n: usize,
    /// entry (i, j), component mask m -> coefficient
    comps: Vec<[RatFun; 4]>,
}

impl NilMat {
    pub fn from_graded(m: &GMat<GScalar>) -> Self {
        let sig = m.zero_entry().sig().clone();
        let hi = sig.odd_index("h").expect("h present");
        let hpi = sig.odd_index("h'").expect("h' present");
        let n = m.rows();
        let mut comps = vec![std::array::from_fn(|_| RatFun::zero(&sig)); n * n];
        for i in 0..n {
            for j in 0..n {
                for (mask, f) in m.get(i, j).comps() {
                    let mut idx = 0usize;
                    let mut rest = *mask;
                    if rest & (1 << hi) != 0 {
                        idx |= 1;
                        rest &= !(1 << hi);
                    }
                    if rest & (1 << hpi) != 0 {
                        idx |= 2;
                        rest &= !(1 << hpi);
                    }
                    assert_eq!(rest, 0, "entry mentions odd parameters other than h, h'");
                    comps[i * n + j][idx] = f.clone();
                }
            }
        }
        NilMat { n, comps }
    }

    fn zero_like(&self) -> [RatFun; 4] {
        let sig = self.comps[0][0].sig();
        std::array::from_fn(|_| RatFun::zero(sig))
    }

    pub fn mul(&self, rhs: &NilMat) -> NilMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut comps = vec![self.zero_like(); n * n];
        for i in 0..n {
            for j in 0..n {
                let acc = &mut comps[i * n + j];
                for k in 0..n {
                    let a = &self.comps[i * n + k];
                    let b = &rhs.comps[k * n + j];
                    for ma in 0..4usize {
                        if a[ma].is_zero() {
                            continue;
                        }
                        for mb in 0..4usize {
                            if ma & mb != 0 || b[mb].is_zero() {
                                continue;
                            }
                            let m = ma | mb;
                            acc[m] = acc[m].add(&a[ma].mul(&b[mb]));
                        }
                    }
                }
            }
        }
        NilMat { n, comps }
    }

    pub fn kron(&self, rhs: &NilMat) -> NilMat {
        let (na, nb) = (self.n, rhs.n);
        let n = na * nb;
        let mut comps = vec![self.zero_like(); n * n];
        for i in 0..na {
            for j in 0..na {
                for k in 0..nb {
                    for l in 0..nb {
                        let a = &self.comps[i * na + j];
                        let b = &rhs.comps[k * nb + l];
                        let acc = &mut comps[(i * nb + k) * n + (j * nb + l)];
                        for ma in 0..4usize {
                            if a[ma].is_zero() {
                                continue;
                            }
                            for mb in 0..4usize {
                                if ma & mb != 0 || b[mb].is_zero() {
                                    continue;
                                }
                                let m = ma | mb;
                                acc[m] = acc[m].add(&a[ma].mul(&b[mb]));
                            }
                        }
                    }
                }
            }
        }
        NilMat { n, comps }
    }

    pub fn entry(&self, i: usize, j: usize) -> GScalar {
        let sig = self.comps[0][0].sig().clone();
        let c = &self.comps[i * self.n + j];
        let h = GScalar::odd_var(&sig, "h");
        let hp = GScalar::odd_var(&sig, "h'");
        GScalar::from_ratfun(&sig, c[0].clone())
            .add(&h.mul(&GScalar::from_ratfun(&sig, c[1].clone())))
            .add(&hp.mul(&GScalar::from_ratfun(&sig, c[2].clone())))
            .add(&h.mul(&hp).mul(&GScalar::from_ratfun(&sig, c[3].clone())))
    }

    pub fn first_diff(&self, rhs: &NilMat) -> Option<EntryWitness> {
        for i in 0..self.n {
            for j in 0..self.n {
                if (0..4usize).any(|m| !self.comps[i * self.n + j][m].eq(&rhs.comps[i * self.n + j][m])) {
                    return Some((i, j, self.entry(i, j).sub(&rhs.entry(i, j))));
                }
            }
        }
        None
    }
}

/// First differing entry of two matrices, as a witness.
pub type EntryWitness = (usize, usize, GScalar);

/// Checks the braid equation R12 R23 R12 = R23 R12 R23 on the triple tensor.
pub fn braid_check(rhat: &GMat<GScalar>, graded: bool) -> Result<(), EntryWitness> {
    let sig = rhat.zero_entry().sig().clone();
    let id = identity3(&sig);
    if !graded {
        let r = NilMat::from_graded(rhat);
        let i3 = NilMat::from_graded(&id);
        let r12 = r.kron(&i3);
        let r23 = i3.kron(&r);
        let lhs = r12.mul(&r23).mul(&r12);
        let rhs = r23.mul(&r12).mul(&r23);
        return match lhs.first_diff(&rhs) {
            None => Ok(()),
            Some(w) => Err(w),
        };
    }
    let mode = kron_mode(graded);
    let r12 = rhat.kron(&id, mode);
    let r23 = id.kron(rhat, mode);
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    match lhs.first_diff(&rhs) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Checks the Yang-Baxter equation R12 R13 R23 = R23 R13 R12, with R13 built
/// by conjugating R23 with the 12-flip of the selected mode.
pub fn ybe_check(r: &GMat<GScalar>, graded: bool) -> Result<(), EntryWitness> {
    let sig = r.zero_entry().sig().clone();
    let id = identity3(&sig);
    if !graded {
        let rn = NilMat::from_graded(r);
        let i3 = NilMat::from_graded(&id);
        let p = NilMat::from_graded(&flip(&sig, false));
        let r12 = rn.kron(&i3);
        let r23 = i3.kron(&rn);
        let p12 = p.kron(&i3);
        let r13 = p12.mul(&r23).mul(&p12);
        let lhs = r12.mul(&r13).mul(&r23);
        let rhs = r23.mul(&r13).mul(&r12);
        return match lhs.first_diff(&rhs) {
            None => Ok(()),
            Some(w) => Err(w),
        };
    }
    let mode = kron_mode(graded);
    let r12 = r.kron(&id, mode);
    let r23 = id.kron(r, mode);
    let p12 = flip(&sig, graded).kron(&id, mode);
    let r13 = p12.mul(&r23).mul(&p12);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    match lhs.first_diff(&rhs) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

pub fn involutive_check(rhat: &GMat<GScalar>) -> Result<(), EntryWitness> {
    let sig = rhat.zero_entry().sig().clone();
    let id = GMat::identity(rhat.row_par.clone(), GScalar::one(&sig), GScalar::zero(&sig));
    match rhat.mul(rhat).first_diff(&id) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// The eigenprojectors (I +- Rhat)/2, checked for idempotence, completeness,
/// orthogonality, and Rhat = P+ - P-.
pub fn projectors(rhat: &GMat<GScalar>) -> Result<(GMat<GScalar>, GMat<GScalar>), ScalarError> {
    involutive_check(rhat).map_err(|(i, j, w)| {
        ScalarError::Parse(format!("matrix is not involutive: square has entry ({i},{j}) = {w}"))
    })?;
    let sig = rhat.zero_entry().sig().clone();
    let id = GMat::identity(rhat.row_par.clone(), GScalar::one(&sig), GScalar::zero(&sig));
    let half = GScalar::from_ratfun(
        &sig,
        RatFun::constant(&sig, crate::scalars::GRat::from_int(1))
            .div(&RatFun::constant(&sig, crate::scalars::GRat::from_int(2)))?,
    );
    let p_plus = id.add(rhat).scale(&half);
    let p_minus = id.sub(rhat).scale(&half);
    assert!(p_plus.mul(&p_plus).eq(&p_plus), "P+ not idempotent");
    assert!(p_minus.mul(&p_minus).eq(&p_minus), "P- not idempotent");
    assert!(p_plus.add(&p_minus).eq(&id), "P+ + P- != I");
    assert!(p_plus.mul(&p_minus).is_zero(), "P+ P- != 0");
    assert!(p_minus.mul(&p_plus).is_zero(), "P- P+ != 0");
    assert!(p_plus.sub(&p_minus).eq(rhat), "P+ - P- != Rhat");
    Ok((p_plus, p_minus))
}

/// Expands M (x (x) x) = 0 into quadratic relations on the coordinates, one
/// per nonzero row; `col_sign` optionally flips the contribution of a column
/// by the parity of its second coordinate, the prefactor that compensates for
/// reading a matrix indexed by one parity assignment against coordinates of
/// the opposite one.
pub fn kernel_relations(
    m: &GMat<GScalar>,
    sig: &Arc<AlgSig>,
    coords: &[&str],
    col_sign: bool,
) -> Vec<SuperPoly> {
    assert_eq!(coords.len(), 3);
    let xs: Vec<SuperPoly> = coords.iter().map(|n| SuperPoly::gen(sig, n)).collect();
    let par: Vec<u8> = coords.iter().map(|n| sig.parity(sig.index(n).unwrap())).collect();
    let mut out = Vec::new();
    for row in 0..9 {
        let mut rel = SuperPoly::zero(sig);
        for col in 0..9 {
            let c = m.get(row, col);
            if c.is_zero() {
                continue;
            }
            let mut term = xs[col / 3].mul(&xs[col % 3]).scale(c);
            if col_sign && par[col % 3] == 1 {
                term = term.neg();
            }
            rel = rel.add(&term);
        }
        if !rel.is_zero() {
            out.push(rel);
        }
    }
    out
}

/// Checks lhs_scalar * x_i x_j = sum_kl Rhat[(i,j),(k,l)] x_k x_l modulo the
/// presentation, coordinate order as listed. Failures carry the row index and
/// the nonzero normal form.
pub fn compact_form_check(
    rhat: &GMat<GScalar>,
    pres: &crate::algebra::presentation::Presentation,
    coords: &[&str],
    lhs_scalar: &GScalar,
) -> Result<(), Vec<(usize, SuperPoly)>> {
    let sig = pres.sig();
    let xs: Vec<SuperPoly> = coords.iter().map(|n| SuperPoly::gen(sig, n)).collect();
    let mut failures = Vec::new();
    for row in 0..9 {
        let mut p = xs[row / 3].mul(&xs[row % 3]).scale(lhs_scalar);
        for col in 0..9 {
            let c = rhat.get(row, col);
            if !c.is_zero() {
                p = p.sub(&xs[col / 3].mul(&xs[col % 3]).scale(c));
            }
        }
        let nf = pres.normal_form(&p);
        if !nf.is_zero() {
            failures.push((row, nf));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

/// Renames the odd parameter h to h' in every entry.
pub fn rename_h_to_hprime(m: &GMat<GScalar>) -> GMat<GScalar> {
    let sig = m.zero_entry().sig().clone();
    let hi = sig.odd_index("h").expect("h present");
    let hpi = sig.odd_index("h'").expect("h' present");
    let mut map: Vec<Option<(bool, usize)>> = (0..sig.odd.len()).map(|k| Some((false, k))).collect();
    map[hi] = Some((false, hpi));
    m.map(m.zero_entry().clone(), |e| e.subst_odd(&map))
}

/// Drops every component that contains both h and h' (the paper's hh' = 0).
pub fn drop_hh_prime(m: &GMat<GScalar>) -> GMat<GScalar> {
    let sig = m.zero_entry().sig().clone();
    let hi = sig.odd_index("h").expect("h present");
    let hpi = sig.odd_index("h'").expect("h' present");
    let both = (1u64 << hi) | (1u64 << hpi);
    m.map(m.zero_entry().clone(), |e| e.retain_comps(|mask| mask & both != both))
}

/// The candidate parity-signed transposes used to pin down the paper's
/// supertranspose convention.
pub fn supertranspose_candidates(m: &GMat<GScalar>) -> Vec<(&'static str, GMat<GScalar>)> {
    vec![
        ("plain transpose", m.transpose_signed(|_, _| false)),
        ("sign on odd entries", m.transpose_signed(|r, c| r != c)),
        ("sign on odd-odd entries", m.transpose_signed(|r, c| r == 1 && c == 1)),
        ("sign on odd rows", m.transpose_signed(|r, _| r == 1)),
        ("sign on odd columns", m.transpose_signed(|_, c| c == 1)),
    ]
}

pub struct DecomposeOutcome {
    /// Name of the supertranspose convention matching the decomposition.
    pub convention: &'static str,
    /// The h-factor derived from R_{h,h'} itself (identity plus its pure
    /// h-component).
    pub r_h: GMat<GScalar>,
    pub r_hprime: GMat<GScalar>,
    /// First entry where the printed R(h) deviates from the derived factor.
    pub printed_mismatch: Option<EntryWitness>,
}

/// Verifies R_{h,h'} |_{hh'=0} = R(h) R(h') with R(h') a supertranspose of
/// R(h)|_{h -> h'}, adjudicating the supertranspose convention.
///
/// The factors are derived from R_{h,h'} itself: with hh' = 0 the cross term
/// of the product vanishes, so the h-factor must be the identity plus the
/// pure h-component and likewise for h'. The printed R(h) is compared against
/// the derived factor and any deviation is reported as a witness rather than
/// failing the decomposition.
pub fn decompose_check(
    rhat_hh: &GMat<GScalar>,
    printed_r_h: &GMat<GScalar>,
) -> Result<DecomposeOutcome, String> {
    let sig = rhat_hh.zero_entry().sig().clone();
    let p = super_permutation(&[0, 1, 1], &sig);
    let r_full = p.mul(rhat_hh);
    let target = drop_hh_prime(&r_full);
    let hi = sig.odd_index("h").expect("h present");
    let hpi = sig.odd_index("h'").expect("h' present");
    let id = GMat::identity(target.row_par.clone(), GScalar::one(&sig), GScalar::zero(&sig));
    let zero = target.zero_entry().clone();
    let part = |bit: usize| target.map(zero.clone(), |e| e.retain_comps(|m| m == 1 << bit));
    let r_h = id.add(&part(hi));
    let r_hprime = id.add(&part(hpi));
    let body = target.map(zero.clone(), |e| e.retain_comps(|m| m == 0));
    if !body.eq(&id) {
        return Err("R_{h,h'} |_{hh'=0} is not identity plus nilpotent".to_string());
    }
    if !drop_hh_prime(&r_h.mul(&r_hprime)).eq(&target) {
        return Err("derived factors do not multiply back to R_{h,h'} |_{hh'=0}".to_string());
    }
    let renamed = rename_h_to_hprime(&r_h);
    let convention = supertranspose_candidates(&renamed)
        .into_iter()
        .find(|(_, cand)| cand.eq(&r_hprime))
        .map(|(name, _)| name)
        .ok_or_else(|| {
            "no supertranspose convention turns the h-factor into the h'-factor".to_string()
        })?;
    let printed_mismatch = printed_r_h.first_diff(&r_h).map(|(i, j, _)| {
        (i, j, printed_r_h.get(i, j).sub(r_h.get(i, j)))
    });
    Ok(DecomposeOutcome { convention, r_h, r_hprime, printed_mismatch })
}

/// Ideal equality of two quadratic relation lists, reusing the span engine.
pub fn relations_equiv(a: &[SuperPoly], b: &[SuperPoly]) -> Result<(), SuperPoly> {
    ideal_equiv(a, b)
}

/// Canonical echelon representatives of the odd-closed span of a relation
/// list, a convention-free normal form for relation sets.
pub fn canonical_relations(rels: &[SuperPoly], sig: &Arc<AlgSig>) -> Vec<SuperPoly> {
    let mut span = span_of(rels);
    span.interreduce();
    span.basis_rows().map(|r| crate::algebra::span::row_to_poly(r, sig)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::{matrix_fixture, preset};

    #[test]
    fn printed_entries_match_fixture() {
        let pq = matrix_fixture("rhat_pq").mat;
        let sig = pq.zero_entry().sig().clone();
        let q = GScalar::even_var(&sig, "q");
        assert!(pq.get(1, 3).eq(&q));
        assert!(pq.get(4, 4).eq(&GScalar::from_int(&sig, -1)));
        let hh = matrix_fixture("rhat_hh").mat;
        let hhp = GScalar::odd_var(&sig, "h").mul(&GScalar::odd_var(&sig, "h'"));
        assert!(hh.get(0, 0).eq(&GScalar::one(&sig).add(&hhp)));
        assert!(hh.get(8, 8).eq(&hhp.sub(&GScalar::one(&sig))));
    }

    #[test]
    fn braid_holds_graded_and_fails_ungraded_for_rhat_hh() {
        let pq = matrix_fixture("rhat_pq").mat;
        assert!(braid_check(&pq, true).is_ok());
        assert!(braid_check(&pq, false).is_ok());
        let hh = matrix_fixture("rhat_hh").mat;
        assert!(braid_check(&hh, true).is_ok());
        let (i, j, w) = braid_check(&hh, false).unwrap_err();
        assert_eq!((i, j), (1, 11));
        assert_eq!(w.to_string(), "-2*h'");
    }

    #[test]
    fn ybe_holds_graded_for_p_rhat_hh() {
        let hh = matrix_fixture("rhat_hh").mat;
        let sig = hh.zero_entry().sig().clone();
        let r = flip(&sig, true).mul(&hh);
        assert!(ybe_check(&r, true).is_ok());
        assert!(ybe_check(&r, false).is_err());
    }

    #[test]
    fn decomposition_derives_factors_and_flags_printed_typo() {
        let hh = matrix_fixture("rhat_hh").mat;
        let printed = matrix_fixture("r_h").mat;
        let out = decompose_check(&hh, &printed).unwrap();
        assert_eq!(out.convention, "sign on odd entries");
        let (i, j, w) = out.printed_mismatch.unwrap();
        assert_eq!((i, j), (6, 2));
        assert_eq!(w.to_string(), "1");
        for graded in [true, false] {
            assert!(ybe_check(&out.r_h, graded).is_ok());
            assert!(ybe_check(&out.r_hprime, graded).is_ok());
        }
    }

    #[test]
    fn rhat_hh_is_involutive_and_pq_is_not() {
        let hh = matrix_fixture("rhat_hh").mat;
        assert!(involutive_check(&hh).is_ok());
        assert!(projectors(&hh).is_ok());
        let pq = matrix_fixture("rhat_pq").mat;
        assert!(involutive_check(&pq).is_err());
    }

    #[test]
    fn signed_kernel_of_p_plus_gives_dual_superspace_ideal() {
        let hh = matrix_fixture("rhat_hh").mat;
        let (p_plus, _) = projectors(&hh).unwrap();
        let pres = preset("Ahp21");
        let rels = kernel_relations(&p_plus, pres.sig(), &["phi", "y1", "y2"], true);
        let defining: Vec<SuperPoly> = crate::algebra::presets::preset_relations("Ahp21")
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        assert!(relations_equiv(&rels, &defining).is_ok());
        // without the sign the dual ideal is missed
        let unsigned = kernel_relations(&p_plus, pres.sig(), &["phi", "y1", "y2"], false);
        assert!(relations_equiv(&unsigned, &defining).is_err());
    }

    #[test]
    fn mutated_r_h_fails_ybe_with_witness() {
        let mut r = matrix_fixture("r_h").mat;
        let sig = r.zero_entry().sig().clone();
        r.set(0, 1, GScalar::even_var(&sig, "q"));
        assert!(ybe_check(&r, true).is_err());
    }

    #[test]
    fn kernel_of_p_minus_gives_h_superspace_ideal() {
        let hh = matrix_fixture("rhat_hh").mat;
        let (_, p_minus) = projectors(&hh).unwrap();
        let pres = preset("Ah12");
        let rels = kernel_relations(&p_minus, pres.sig(), &["x", "theta1", "theta2"], false);
        let defining: Vec<SuperPoly> =
            crate::algebra::presets::preset_relations("Ah12").into_iter().map(|(_, p)| p).collect();
        assert!(relations_equiv(&rels, &defining).is_ok());
    }
}
