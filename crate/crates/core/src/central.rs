//! Deciding the centrally essential property: for every nonzero `r` there
//! must be nonzero central `c`, `d` with `r c = d`.
//!
//! The decision for a fixed probe `r` is pure subspace algebra, no search.
//! Inside the center `C`, the candidates form
//! `V_r = { c in C : r c in C }` and the annihilating part
//! `N_r = { c in C : r c = 0 }`. A certificate exists iff `N_r` is a proper
//! subspace of `V_r`; in that case any `V_r`-basis vector outside `N_r`
//! yields `(c, d = r c)`. Otherwise the pair `(V_r, N_r)`, exhibited equal,
//! is a checkable proof of absence.

use serde::Serialize;

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::rng::SplitMix64;

/// A verified witness that `r` meets the center: `r c = d` with `c`, `d`
/// central and nonzero.
#[derive(Debug, Clone)]
pub struct CeCertificate {
    pub r: AlgElem,
    pub c: AlgElem,
    pub d: AlgElem,
}

impl CeCertificate {
    /// Re-checks all four certificate conditions by direct computation.
    pub fn verify(&self, a: &Algebra) -> Result<bool> {
        let center = a.center();
        Ok(!self.c.is_zero()
            && !self.d.is_zero()
            && center.contains(self.c.coeffs())?
            && center.contains(self.d.coeffs())?
            && a.mul(&self.r, &self.c)? == self.d)
    }
}

/// Constructive evidence that no certificate exists for `r`: the candidate
/// space and its annihilating subspace, equal.
#[derive(Debug, Clone)]
pub struct CeAbsence {
    /// `V_r = { c in C : r c in C }`, in algebra coordinates.
    pub candidates: Subspace,
    /// `N_r = { c in V_r : r c = 0 }`, in algebra coordinates.
    pub annihilated: Subspace,
}

impl CeAbsence {
    /// Recomputes both subspaces for `(a, r)` and compares.
    pub fn verify(&self, a: &Algebra, r: &AlgElem) -> Result<bool> {
        let (candidates, annihilated) = certificate_subspaces(a, r)?;
        Ok(self.candidates == candidates
            && self.annihilated == annihilated
            && self.candidates == self.annihilated)
    }
}

#[derive(Debug, Clone)]
pub enum CeOutcome {
    Certificate(CeCertificate),
    Absence(CeAbsence),
}

/// Computes `V_r` and `N_r` in algebra coordinates.
fn certificate_subspaces(a: &Algebra, r: &AlgElem) -> Result<(Subspace, Subspace)> {
    let f = a.field();
    let center = a.center();
    let k = center.dim();
    let dim = a.dim();
    let z: Vec<AlgElem> = center
        .basis_vectors()
        .into_iter()
        .map(|v| a.elem(v))
        .collect::<Result<_>>()?;
    // images u_i = r z_i and their residuals modulo the center
    let mut images = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for zi in &z {
        let u = a.mul(r, zi)?;
        residuals.push(center.reduce(u.coeffs())?);
        images.push(u);
    }
    let residual_mat = FpMatrix::from_fn(f, dim, k, |row, col| residuals[col][row]);
    let image_mat = FpMatrix::from_fn(f, dim, k, |row, col| images[col].coeffs()[row]);
    let v_t = residual_mat.kernel();
    let n_t = image_mat.kernel();
    let to_ambient = |coords: &Subspace| -> Result<Subspace> {
        let mut vectors = Vec::with_capacity(coords.dim());
        for t in coords.basis_vectors() {
            let mut v = a.zero();
            for (i, &ti) in t.iter().enumerate() {
                if ti != 0 {
                    v = a.add(&v, &a.scale(ti, &z[i])?)?;
                }
            }
            vectors.push(v.coeffs().to_vec());
        }
        Subspace::from_vectors(f, dim, &vectors)
    };
    Ok((to_ambient(&v_t)?, to_ambient(&n_t)?))
}

/// Decides whether the nonzero probe `r` admits a central pair, returning a
/// verified certificate or a constructive proof of absence. Deterministic.
pub fn ce_certificate(a: &Algebra, r: &AlgElem) -> Result<CeOutcome> {
    a.check_elem(r)?;
    if r.is_zero() {
        return Err(Error::Precondition(
            "centrally essential probes are quantified over nonzero elements".into(),
        ));
    }
    let (candidates, annihilated) = certificate_subspaces(a, r)?;
    if candidates.dim() == annihilated.dim() {
        return Ok(CeOutcome::Absence(CeAbsence {
            candidates,
            annihilated,
        }));
    }
    let c = candidates
        .basis_vectors()
        .into_iter()
        .find(|v| {
            !annihilated
                .contains(v)
                .expect("candidate vectors share the ambient space")
        })
        .expect("dim V > dim N leaves a basis vector outside N");
    let c = a.elem(c)?;
    let d = a.mul(r, &c)?;
    let cert = CeCertificate {
        r: r.clone(),
        c,
        d,
    };
    debug_assert!(cert.verify(a)?);
    Ok(CeOutcome::Certificate(cert))
}

/// How `ce_check` quantifies over the probe elements.
#[derive(Debug, Clone, Copy)]
pub enum CeStrategy {
    /// Every nonzero element, one representative per scalar line
    /// (`V_{lambda r} = V_r`, so lines share a verdict).
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CeVerdict {
    Essential,
    EssentialSampled,
    NotEssential,
}

/// Summary of a centrally-essential run. Serializes to the report JSON;
/// wall-clock time is kept out of the serialized form so seeded runs stay
/// byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct CeReport {
    pub algebra: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub verdict: CeVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    pub certificate_counts: CertificateCounts,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateCounts {
    pub probed: u64,
    pub certified: u64,
}

/// Runs the certificate decision over the probe set chosen by `strategy`.
///
/// Probes are visited in ascending element order, so a not-essential verdict
/// carries the smallest failing representative.
pub fn ce_check(a: &Algebra, strategy: CeStrategy) -> Result<CeReport> {
    let start = std::time::Instant::now();
    let p = a.field().p() as u64;
    let mut probed = 0u64;
    let mut certified = 0u64;
    let report = |verdict: CeVerdict,
                      witness: Option<Vec<u32>>,
                      mode: &str,
                      seed: Option<u64>,
                      samples: Option<u64>,
                      probed: u64,
                      certified: u64| {
        CeReport {
            algebra: a.name().to_string(),
            mode: mode.into(),
            seed,
            samples,
            verdict,
            witness,
            certificate_counts: CertificateCounts { probed, certified },
            elapsed_ms: start.elapsed().as_millis(),
        }
    };
    match strategy {
        CeStrategy::Exhaustive => {
            let count = a.element_count().ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "exhaustive sweep over {}^{} elements",
                    p,
                    a.dim()
                ))
            })?;
            for ordinal in 1..count {
                let e = a.elem_from_ordinal(ordinal);
                // one representative per scalar line: lowest nonzero digit 1
                let first = e.coeffs().iter().find(|&&c| c != 0).copied().unwrap_or(0);
                if first != 1 {
                    continue;
                }
                probed += 1;
                match ce_certificate(a, &e)? {
                    CeOutcome::Certificate(_) => certified += 1,
                    CeOutcome::Absence(_) => {
                        return Ok(report(
                            CeVerdict::NotEssential,
                            Some(e.coeffs().to_vec()),
                            "exhaustive",
                            None,
                            None,
                            probed,
                            certified,
                        ));
                    }
                }
            }
            Ok(report(
                CeVerdict::Essential,
                None,
                "exhaustive",
                None,
                None,
                probed,
                certified,
            ))
        }
        CeStrategy::Randomized { samples, seed } => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..samples {
                let e = a.random_nonzero_elem(&mut rng);
                probed += 1;
                match ce_certificate(a, &e)? {
                    CeOutcome::Certificate(_) => certified += 1,
                    CeOutcome::Absence(_) => {
                        return Ok(report(
                            CeVerdict::NotEssential,
                            Some(e.coeffs().to_vec()),
                            "randomized",
                            Some(seed),
                            Some(samples),
                            probed,
                            certified,
                        ));
                    }
                }
            }
            Ok(report(
                CeVerdict::EssentialSampled,
                None,
                "randomized",
                Some(seed),
                Some(samples),
                probed,
                certified,
            ))
        }
    }
}

/// Combines factor verdicts for a product algebra: essential iff every
/// factor is; a failing factor witness is embedded into the product and the
/// lifted proof of absence is re-verified there.
pub fn ce_product(product: &Algebra, factor_reports: &[CeReport]) -> Result<CeReport> {
    let factors = product.factors().ok_or_else(|| {
        Error::InvalidInput(format!("{} is not a product algebra", product.name()))
    })?;
    if factor_reports.is_empty() {
        return Err(Error::InvalidInput(
            "empty report list: the empty product has no nonzero identity".into(),
        ));
    }
    if factor_reports.len() != factors.len() {
        return Err(Error::InvalidInput(format!(
            "{} factor reports against {} factors",
            factor_reports.len(),
            factors.len()
        )));
    }
    for (factor, rep) in factors.iter().zip(factor_reports) {
        if factor.name() != rep.algebra {
            return Err(Error::InvalidInput(format!(
                "report for {} does not match factor {}",
                rep.algebra,
                factor.name()
            )));
        }
    }
    let sampled = factor_reports
        .iter()
        .any(|r| r.verdict == CeVerdict::EssentialSampled);
    let probed = factor_reports.iter().map(|r| r.certificate_counts.probed).sum();
    let certified = factor_reports
        .iter()
        .map(|r| r.certificate_counts.certified)
        .sum();
    let failing = factor_reports
        .iter()
        .enumerate()
        .find(|(_, r)| r.verdict == CeVerdict::NotEssential);
    let (verdict, witness) = match failing {
        Some((idx, rep)) => {
            let w = rep
                .witness
                .clone()
                .ok_or_else(|| Error::InvalidInput("not-essential report lacks a witness".into()))?;
            let factor_elem = factors[idx].elem(w)?;
            let lifted = product.embed(idx, &factor_elem)?;
            match ce_certificate(product, &lifted)? {
                CeOutcome::Absence(_) => {}
                CeOutcome::Certificate(_) => {
                    return Err(Error::InvalidInput(
                        "factor witness failed to lift: certificate found in the product".into(),
                    ))
                }
            }
            (CeVerdict::NotEssential, Some(lifted.coeffs().to_vec()))
        }
        None => (
            if sampled {
                CeVerdict::EssentialSampled
            } else {
                CeVerdict::Essential
            },
            None,
        ),
    };
    Ok(CeReport {
        algebra: product.name().to_string(),
        mode: "product".into(),
        seed: None,
        samples: None,
        verdict,
        witness,
        certificate_counts: CertificateCounts { probed, certified },
        elapsed_ms: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, matrix_algebra, product_algebra};
    use crate::field::PrimeField;
    use crate::group::{make_cyclic, make_heisenberg, make_quaternion8, GroupParams};
    use std::sync::Arc;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn ga(p: u32, n: u32) -> Algebra {
        let params = GroupParams::new(p, n).unwrap();
        group_algebra(f(p), Arc::new(make_heisenberg(params).unwrap())).unwrap()
    }

    #[test]
    fn commutative_algebras_certify_everything() {
        let c4 = group_algebra(f(3), Arc::new(make_cyclic(4).unwrap())).unwrap();
        let count = c4.element_count().unwrap();
        for ordinal in 1..count {
            let r = c4.elem_from_ordinal(ordinal);
            match ce_certificate(&c4, &r).unwrap() {
                CeOutcome::Certificate(cert) => assert!(cert.verify(&c4).unwrap()),
                CeOutcome::Absence(_) => panic!("commutative algebra must certify ordinal {ordinal}"),
            }
        }
        let report = ce_check(&c4, CeStrategy::Exhaustive).unwrap();
        assert_eq!(report.verdict, CeVerdict::Essential);
    }

    #[test]
    fn matrix_unit_has_no_certificate() {
        let m2 = matrix_algebra(f(2), 2).unwrap();
        let e12 = m2.basis_elem(1);
        match ce_certificate(&m2, &e12).unwrap() {
            CeOutcome::Absence(absence) => {
                assert!(absence.verify(&m2, &e12).unwrap());
                assert_eq!(absence.candidates.dim(), absence.annihilated.dim());
            }
            CeOutcome::Certificate(_) => panic!("e12 in M2(F2) cannot be certified"),
        }
    }

    #[test]
    fn matrix_algebra_not_essential_with_smallest_witness() {
        let m2 = matrix_algebra(f(2), 2).unwrap();
        let report = ce_check(&m2, CeStrategy::Exhaustive).unwrap();
        assert_eq!(report.verdict, CeVerdict::NotEssential);
        // E11 (ordinal 1) already fails: E11 * scalar is never central
        assert_eq!(report.witness.unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn quaternion_group_algebra_is_essential() {
        let q8 = group_algebra(f(2), Arc::new(make_quaternion8())).unwrap();
        let report = ce_check(&q8, CeStrategy::Exhaustive).unwrap();
        assert_eq!(report.verdict, CeVerdict::Essential);
        assert_eq!(report.certificate_counts.probed, 255);
        assert_eq!(report.certificate_counts.certified, 255);
    }

    #[test]
    fn zero_probe_is_a_precondition_violation() {
        let a = ga(2, 1);
        assert!(matches!(
            ce_certificate(&a, &a.zero()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn scaling_invariance_of_certificates_over_f3() {
        // V_{lambda r} = V_r: the outcome class is constant on scalar lines
        let m2 = matrix_algebra(f(3), 2).unwrap();
        let count = m2.element_count().unwrap();
        for ordinal in 1..count {
            let r = m2.elem_from_ordinal(ordinal);
            let r2 = m2.scale(2, &r).unwrap();
            let a = matches!(ce_certificate(&m2, &r).unwrap(), CeOutcome::Certificate(_));
            let b = matches!(ce_certificate(&m2, &r2).unwrap(), CeOutcome::Certificate(_));
            assert_eq!(a, b, "scalar line split at ordinal {ordinal}");
        }
    }

    #[test]
    fn randomized_reports_are_reproducible() {
        let a = ga(2, 2);
        let r1 = ce_check(&a, CeStrategy::Randomized { samples: 200, seed: 42 }).unwrap();
        let r2 = ce_check(&a, CeStrategy::Randomized { samples: 200, seed: 42 }).unwrap();
        assert_eq!(r1.verdict, CeVerdict::EssentialSampled);
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
    }

    #[test]
    fn product_combination_rules() {
        let g1 = Arc::new(ga(2, 1));
        let q8 = Arc::new(group_algebra(f(2), Arc::new(make_quaternion8())).unwrap());
        let m2 = Arc::new(matrix_algebra(f(2), 2).unwrap());

        let both = product_algebra(vec![g1.clone(), q8.clone()]).unwrap();
        let rep_g1 = ce_check(&g1, CeStrategy::Exhaustive).unwrap();
        let rep_q8 = ce_check(&q8, CeStrategy::Exhaustive).unwrap();
        let combined = ce_product(&both, &[rep_g1.clone(), rep_q8.clone()]).unwrap();
        assert_eq!(combined.verdict, CeVerdict::Essential);

        let mixed = product_algebra(vec![g1.clone(), m2.clone()]).unwrap();
        let rep_m2 = ce_check(&m2, CeStrategy::Exhaustive).unwrap();
        let combined = ce_product(&mixed, &[rep_g1.clone(), rep_m2.clone()]).unwrap();
        assert_eq!(combined.verdict, CeVerdict::NotEssential);
        let witness = mixed.elem(combined.witness.unwrap()).unwrap();
        assert!(matches!(
            ce_certificate(&mixed, &witness).unwrap(),
            CeOutcome::Absence(_)
        ));

        // mismatched report lists are rejected
        assert!(ce_product(&mixed, std::slice::from_ref(&rep_g1)).is_err());
        assert!(ce_product(&mixed, &[rep_m2.clone(), rep_g1]).is_err());
        assert!(ce_product(&mixed, &[]).is_err());
    }
}
