//! Algebraic and integral degree over the center: the least `n` admitting
//! `c_n r^n + ... + c_1 r + c_0 = 0` with every `c_i` central and `c_n` a
//! non-zero-divisor (regular mode) or a unit (invertible mode).
//!
//! For each degree `n` the relation coefficients form a linear solution
//! space: writing `c_i` in the center basis turns `sum c_i r^i = 0` into a
//! kernel computation, and projecting the kernel onto the `c_n` block gives
//! the subspace `W_n` of possible leading coefficients. The degree is found
//! at the first `n` where `W_n` contains a unit. Deciding that is not a
//! linear condition in general, so three routes are used, in order of
//! preference:
//!
//! - group algebras of `p`-groups in characteristic `p` are local, so
//!   "contains a unit" is "not inside the augmentation kernel" (linear,
//!   exact); products of such algebras use one augmentation functional per
//!   factor, which over `F_2` is again an exact linear solve;
//! - small leading spaces are enumerated outright;
//! - anything else is sampled, and a failed sampled search is reported as
//!   `Inconclusive`, never as a degree.
//!
//! The loop is capped at the algebra dimension: the minimal polynomial of
//! `r` over `F_p` is a monic central relation, so a relation of degree at
//! most `dim` always exists and the exact routes must find one.

use serde::Serialize;

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::rng::SplitMix64;

/// Enumerating the leading-coefficient space is allowed up to this many
/// vectors; beyond it the sampled route takes over.
pub const UNIT_ENUM_BUDGET: u64 = 1 << 16;
/// Sample count for the sampled unit search.
pub const UNIT_SEARCH_SAMPLES: u64 = 4096;

/// `d(m) = m(m+1)/2 + m`: a ring whose elements are all algebraic of degree
/// at most `m` over the center satisfies a polynomial identity of this
/// degree.
pub fn d_of_m(m: u64) -> u64 {
    m * (m + 1) / 2 + m
}

/// Which leading-coefficient condition the relation must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    /// `c_n` a non-zero-divisor (defines `n_1`).
    Regular,
    /// `c_n` invertible (defines `n_2`).
    Invertible,
}

/// A verified relation `sum_i c_i r^i = 0` with central coefficients.
#[derive(Debug, Clone)]
pub struct CentralRelation {
    pub degree: usize,
    pub mode: DegreeMode,
    /// `c_0 .. c_degree`.
    pub coefficients: Vec<AlgElem>,
}

impl CentralRelation {
    /// Recomputes the sum, centrality of every coefficient, and the leading
    /// condition by the mode's own route (rank test for regular, explicit
    /// two-sided inverse for invertible).
    pub fn verify(&self, a: &Algebra, r: &AlgElem) -> Result<bool> {
        if self.coefficients.len() != self.degree + 1 {
            return Ok(false);
        }
        let center = a.center();
        for c in &self.coefficients {
            if !center.contains(c.coeffs())? {
                return Ok(false);
            }
        }
        if !self.residual(a, r)?.is_zero() {
            return Ok(false);
        }
        let leading = &self.coefficients[self.degree];
        Ok(match self.mode {
            DegreeMode::Regular => a.is_nonzerodivisor(leading)?,
            DegreeMode::Invertible => a.inverse(leading)?.is_some(),
        })
    }

    /// `sum_i c_i r^i`, recomputed.
    pub fn residual(&self, a: &Algebra, r: &AlgElem) -> Result<AlgElem> {
        let mut acc = a.zero();
        let mut power = a.one();
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                power = a.mul(&power, r)?;
            }
            acc = a.add(&acc, &a.mul(c, &power)?)?;
        }
        Ok(acc)
    }

    /// FNV-1a hash of the recomputed residual vector, for report files.
    pub fn residual_hash(&self, a: &Algebra, r: &AlgElem) -> Result<String> {
        let residual = self.residual(a, r)?;
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        for &c in residual.coeffs() {
            for byte in c.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        Ok(format!("{h:016x}"))
    }

    /// Serializable form with raw coefficient vectors.
    pub fn to_report(&self, a: &Algebra, r: &AlgElem) -> Result<RelationReport> {
        Ok(RelationReport {
            degree: self.degree,
            mode: self.mode,
            element: r.coeffs().to_vec(),
            coefficients: self.coefficients.iter().map(|c| c.coeffs().to_vec()).collect(),
            residual_hash: self.residual_hash(a, r)?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub degree: usize,
    pub mode: DegreeMode,
    pub element: Vec<u32>,
    pub coefficients: Vec<Vec<u32>>,
    pub residual_hash: String,
}

/// Outcome of a degree computation. `Inconclusive` occurs only on the
/// sampled unit-search route.
#[derive(Debug, Clone)]
pub enum DegreeOutcome {
    Found(CentralRelation),
    Inconclusive { degree_reached: usize, reason: String },
}

impl DegreeOutcome {
    pub fn relation(&self) -> Option<&CentralRelation> {
        match self {
            DegreeOutcome::Found(rel) => Some(rel),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.relation().map(|r| r.degree)
    }
}

/// Linear functionals that jointly detect units: `a` is a unit iff every
/// functional is nonzero on it. Available exactly for `p`-group algebras
/// (augmentation) and products of them (componentwise augmentations).
fn unit_functionals(a: &Algebra) -> Option<Vec<Vec<u32>>> {
    if a.is_p_group_algebra() {
        return Some(vec![vec![1u32; a.dim()]]);
    }
    let factors = a.factors()?;
    let mut out = Vec::new();
    let mut offset = 0usize;
    for factor in factors {
        let inner = unit_functionals(factor)?;
        for f in inner {
            let mut big = vec![0u32; a.dim()];
            big[offset..offset + factor.dim()].copy_from_slice(&f);
            out.push(big);
        }
        offset += factor.dim();
    }
    Some(out)
}

enum UnitSearch {
    /// Coefficients over the given basis rows combining to a unit.
    Found(Vec<u32>),
    Absent,
    Inconclusive(String),
}

/// Decides whether the span of `basis` (vectors in algebra coordinates)
/// contains a unit, returning a combination when it does.
fn find_unit_in_span(
    a: &Algebra,
    basis: &[Vec<u32>],
    mode: DegreeMode,
    enum_budget: u64,
    samples: u64,
) -> Result<UnitSearch> {
    let t = basis.len();
    if t == 0 {
        return Ok(UnitSearch::Absent);
    }
    let f = a.field();
    let p = f.p();
    if let Some(functionals) = unit_functionals(a) {
        let dot = |func: &[u32], v: &[u32]| -> u32 {
            let mut acc = 0u64;
            for (&x, &y) in func.iter().zip(v) {
                acc += x as u64 * y as u64;
            }
            (acc % p as u64) as u32
        };
        if functionals.len() == 1 {
            // local algebra: a unit exists iff the span escapes the kernel
            return Ok(
                match basis.iter().position(|w| dot(&functionals[0], w) != 0) {
                    Some(i) => {
                        let mut combo = vec![0u32; t];
                        combo[i] = 1;
                        UnitSearch::Found(combo)
                    }
                    None => UnitSearch::Absent,
                },
            );
        }
        if p == 2 {
            // nonzero over F_2 means equal to 1: the unit condition becomes
            // the linear system  sum_i lambda_i phi_f(w_i) = 1  for all f
            let rows: Vec<Vec<u32>> = functionals
                .iter()
                .map(|func| {
                    let mut row: Vec<u32> = basis.iter().map(|w| dot(func, w)).collect();
                    row.push(1);
                    row
                })
                .collect();
            let m = FpMatrix::from_rows(f, t + 1, &rows)?;
            let (rank, red) = m.rref_in_columns(t);
            // inconsistent iff a row reduces to [0 .. 0 | 1]
            for i in rank..red.rows() {
                if red.get(i, t) != 0 {
                    return Ok(UnitSearch::Absent);
                }
            }
            let mut combo = vec![0u32; t];
            for i in 0..rank {
                let pivot = (0..t).find(|&j| red.get(i, j) != 0).expect("pivot in rank rows");
                combo[pivot] = red.get(i, t);
            }
            return Ok(UnitSearch::Found(combo));
        }
        // p > 2 with several functionals: fall through, but the functional
        // test keeps the per-candidate predicate cheap
        let predicate = |elem: &AlgElem| -> Result<bool> {
            Ok(functionals.iter().all(|func| dot(func, elem.coeffs()) != 0))
        };
        return search_combinations(a, basis, predicate, enum_budget, samples);
    }
    let predicate = |elem: &AlgElem| -> Result<bool> {
        match mode {
            DegreeMode::Regular => a.is_nonzerodivisor(elem),
            DegreeMode::Invertible => Ok(a.inverse(elem)?.is_some()),
        }
    };
    search_combinations(a, basis, predicate, enum_budget, samples)
}

fn search_combinations(
    a: &Algebra,
    basis: &[Vec<u32>],
    predicate: impl Fn(&AlgElem) -> Result<bool>,
    enum_budget: u64,
    samples: u64,
) -> Result<UnitSearch> {
    let t = basis.len();
    let f = a.field();
    let p = f.p() as u64;
    let combine = |combo: &[u32]| -> Result<AlgElem> {
        let mut v = vec![0u32; a.dim()];
        for (i, &ci) in combo.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (o, &b) in v.iter_mut().zip(&basis[i]) {
                *o = f.add(*o, f.mul(ci, b));
            }
        }
        a.elem(v)
    };
    let total = p.checked_pow(t as u32).filter(|&n| n <= enum_budget);
    if let Some(total) = total {
        for ordinal in 1..total {
            let mut k = ordinal;
            let combo: Vec<u32> = (0..t)
                .map(|_| {
                    let d = (k % p) as u32;
                    k /= p;
                    d
                })
                .collect();
            if predicate(&combine(&combo)?)? {
                return Ok(UnitSearch::Found(combo));
            }
        }
        return Ok(UnitSearch::Absent);
    }
    let mut rng = SplitMix64::new(0x0eed_dead);
    for _ in 0..samples {
        let combo = rng.nonzero_residues(f.p(), t);
        if predicate(&combine(&combo)?)? {
            return Ok(UnitSearch::Found(combo));
        }
    }
    Ok(UnitSearch::Inconclusive(format!(
        "no unit found in a {t}-dimensional leading space after {samples} samples"
    )))
}

/// The least degree of a central relation for `r`, with the concrete
/// verified relation.
pub fn algebraic_degree(a: &Algebra, r: &AlgElem, mode: DegreeMode) -> Result<DegreeOutcome> {
    algebraic_degree_capped(a, r, mode, UNIT_ENUM_BUDGET, UNIT_SEARCH_SAMPLES)
}

pub(crate) fn algebraic_degree_capped(
    a: &Algebra,
    r: &AlgElem,
    mode: DegreeMode,
    enum_budget: u64,
    samples: u64,
) -> Result<DegreeOutcome> {
    a.check_elem(r)?;
    let f = a.field();
    let dim = a.dim();
    let center = a.center();
    let k = center.dim();
    let z: Vec<AlgElem> = center
        .basis_vectors()
        .into_iter()
        .map(|v| a.elem(v))
        .collect::<Result<_>>()?;
    let mut powers = vec![a.one()];
    for n in 1..=dim {
        powers.push(a.mul(powers.last().expect("nonempty"), r)?);
        // columns (i, j) -> z_j r^i; kernel = all relations of degree <= n
        let mut cols = Vec::with_capacity(k * (n + 1));
        for power in powers.iter().take(n + 1) {
            for zj in &z {
                cols.push(a.mul(zj, power)?);
            }
        }
        let m = FpMatrix::from_fn(f, dim, k * (n + 1), |row, col| cols[col].coeffs()[row]);
        let solutions = m.kernel();
        if solutions.dim() == 0 {
            continue;
        }
        // project onto the c_n block while carrying full solutions along
        let rows: Vec<Vec<u32>> = solutions
            .basis_vectors()
            .into_iter()
            .map(|s| {
                let mut row = Vec::with_capacity(k + s.len());
                row.extend_from_slice(&s[n * k..]);
                row.extend_from_slice(&s);
                row
            })
            .collect();
        let stacked = FpMatrix::from_rows(f, k + k * (n + 1), &rows)?;
        let (lead_rank, red) = stacked.rref_in_columns(k);
        if lead_rank == 0 {
            continue;
        }
        let lead_basis: Vec<Vec<u32>> = (0..lead_rank)
            .map(|i| {
                let tcoords = &red.row(i)[..k];
                let mut v = vec![0u32; dim];
                for (j, &tj) in tcoords.iter().enumerate() {
                    if tj == 0 {
                        continue;
                    }
                    for (o, &b) in v.iter_mut().zip(z[j].coeffs()) {
                        *o = f.add(*o, f.mul(tj, b));
                    }
                }
                v
            })
            .collect();
        match find_unit_in_span(a, &lead_basis, mode, enum_budget, samples)? {
            UnitSearch::Absent => continue,
            UnitSearch::Inconclusive(reason) => {
                return Ok(DegreeOutcome::Inconclusive {
                    degree_reached: n,
                    reason,
                })
            }
            UnitSearch::Found(combo) => {
                // assemble the full solution lifted by the same combination
                let mut solution = vec![0u32; k * (n + 1)];
                for (i, &ci) in combo.iter().enumerate() {
                    if ci == 0 {
                        continue;
                    }
                    let lift = &red.row(i)[k..];
                    for (o, &l) in solution.iter_mut().zip(lift) {
                        *o = f.add(*o, f.mul(ci, l));
                    }
                }
                let coefficients: Vec<AlgElem> = (0..=n)
                    .map(|i| {
                        let mut v = vec![0u32; dim];
                        for (j, zj) in z.iter().enumerate() {
                            let tj = solution[i * k + j];
                            if tj == 0 {
                                continue;
                            }
                            for (o, &b) in v.iter_mut().zip(zj.coeffs()) {
                                *o = f.add(*o, f.mul(tj, b));
                            }
                        }
                        a.elem(v)
                    })
                    .collect::<Result<_>>()?;
                let relation = CentralRelation {
                    degree: n,
                    mode,
                    coefficients,
                };
                assert!(
                    relation.verify(a, r)?,
                    "assembled relation failed re-verification"
                );
                return Ok(DegreeOutcome::Found(relation));
            }
        }
    }
    unreachable!("the minimal polynomial bounds the degree by the dimension")
}

/// The monic minimal polynomial of `r` over `F_p`, as coefficients
/// `c_0 .. c_n` with `c_n = 1`: the first linear dependence among the powers
/// of `r`.
pub fn minimal_polynomial(a: &Algebra, r: &AlgElem) -> Result<Vec<u32>> {
    a.check_elem(r)?;
    let f = a.field();
    let dim = a.dim();
    let mut powers = vec![a.one()];
    for n in 1..=dim {
        powers.push(a.mul(powers.last().expect("nonempty"), r)?);
        // solve sum_{i<n} x_i r^i = r^n
        let m = FpMatrix::from_fn(f, dim, n + 1, |row, col| {
            if col < n {
                powers[col].coeffs()[row]
            } else {
                powers[n].coeffs()[row]
            }
        });
        let (rank, red) = m.rref_in_columns(n);
        let consistent = (rank..red.rows()).all(|i| red.get(i, n) == 0);
        if !consistent {
            continue;
        }
        let mut coeffs = vec![0u32; n + 1];
        coeffs[n] = 1;
        for i in 0..rank {
            let pivot = (0..n).find(|&j| red.get(i, j) != 0).expect("pivot row");
            coeffs[pivot] = f.neg(red.get(i, n));
        }
        return Ok(coeffs);
    }
    unreachable!("dim + 1 powers are linearly dependent")
}

/// How `m1_estimate` quantifies over elements.
#[derive(Debug, Clone, Copy)]
pub enum SweepStrategy {
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct M1Report {
    pub algebra: String,
    pub mode: DegreeMode,
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Max observed degree.
    pub m1: usize,
    /// First element attaining the max, in sweep order.
    pub witness: Vec<u32>,
    /// True only for a completed exhaustive sweep with no inconclusive
    /// elements.
    pub exact: bool,
    pub checked: u64,
    pub inconclusive: u64,
}

/// Max of the algebraic degree over swept elements, with a witness.
pub fn m1_estimate(a: &Algebra, mode: DegreeMode, strategy: SweepStrategy) -> Result<M1Report> {
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut checked = 0u64;
    let mut inconclusive = 0u64;
    let mut consider = |a: &Algebra, e: &AlgElem| -> Result<()> {
        checked += 1;
        match algebraic_degree(a, e, mode)? {
            DegreeOutcome::Found(rel) => {
                if best.as_ref().is_none_or(|(b, _)| rel.degree > *b) {
                    best = Some((rel.degree, e.coeffs().to_vec()));
                }
            }
            DegreeOutcome::Inconclusive { .. } => inconclusive += 1,
        }
        Ok(())
    };
    let (strategy_name, seed, exact) = match strategy {
        SweepStrategy::Exhaustive => {
            let count = a.element_count().ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "exhaustive sweep over {}^{} elements",
                    a.field().p(),
                    a.dim()
                ))
            })?;
            for ordinal in 0..count {
                consider(a, &a.elem_from_ordinal(ordinal))?;
            }
            ("exhaustive", None, inconclusive == 0)
        }
        SweepStrategy::Randomized { samples, seed } => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..samples {
                consider(a, &a.random_nonzero_elem(&mut rng))?;
            }
            ("randomized", Some(seed), false)
        }
    };
    let (m1, witness) = best.ok_or_else(|| {
        Error::InvalidInput("sweep produced no conclusive degree at all".into())
    })?;
    Ok(M1Report {
        algebra: a.name().to_string(),
        mode,
        strategy: strategy_name.into(),
        seed,
        m1,
        witness,
        exact,
        checked,
        inconclusive,
    })
}

/// A probe element of a product algebra, componentwise.
#[derive(Debug, Clone)]
pub struct TruncatedProductElement {
    pub components: Vec<AlgElem>,
    pub assembled: AlgElem,
}

#[derive(Debug, Clone)]
pub struct EscapeReport {
    pub element: TruncatedProductElement,
    pub component_degrees: Vec<usize>,
    pub degree: usize,
    pub relation: CentralRelation,
}

/// Assembles the componentwise element of a product algebra and verifies
/// that its degree over the product center is the max of the component
/// degrees (a lower-degree factor relation pads by multiplying through by
/// the element, keeping the leading coefficient a unit; a projection
/// argument gives the converse).
pub fn escape_element(
    product: &Algebra,
    components: &[AlgElem],
    mode: DegreeMode,
) -> Result<EscapeReport> {
    let factors = product
        .factors()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not a product algebra", product.name())))?
        .to_vec();
    if components.len() != factors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} components for {} factors",
            components.len(),
            factors.len()
        )));
    }
    if components.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition(
            "the assembled probe must be nonzero".into(),
        ));
    }
    let mut assembled = product.zero();
    let mut component_degrees = Vec::with_capacity(components.len());
    for (idx, (factor, comp)) in factors.iter().zip(components).enumerate() {
        assembled = product.add(&assembled, &product.embed(idx, comp)?)?;
        match algebraic_degree(factor, comp, mode)? {
            DegreeOutcome::Found(rel) => component_degrees.push(rel.degree),
            DegreeOutcome::Inconclusive { reason, .. } => {
                return Err(Error::BudgetExceeded(format!(
                    "factor {idx} degree inconclusive: {reason}"
                )))
            }
        }
    }
    let expected = *component_degrees.iter().max().expect("nonempty product");
    let relation = match algebraic_degree(product, &assembled, mode)? {
        DegreeOutcome::Found(rel) => rel,
        DegreeOutcome::Inconclusive { reason, .. } => {
            return Err(Error::BudgetExceeded(format!(
                "product degree inconclusive: {reason}"
            )))
        }
    };
    assert_eq!(
        relation.degree, expected,
        "product degree must equal the max of component degrees"
    );
    Ok(EscapeReport {
        element: TruncatedProductElement {
            components: components.to_vec(),
            assembled,
        },
        component_degrees,
        degree: relation.degree,
        relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{custom_algebra, group_algebra, matrix_algebra, product_algebra};
    use crate::field::PrimeField;
    use crate::group::{make_heisenberg, GElem, GroupParams};
    use std::sync::Arc;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn ga(p: u32, n: u32) -> Algebra {
        let params = GroupParams::new(p, n).unwrap();
        group_algebra(f(p), Arc::new(make_heisenberg(params).unwrap())).unwrap()
    }

    #[test]
    fn d_of_m_formula() {
        assert_eq!(d_of_m(1), 2);
        assert_eq!(d_of_m(2), 5);
        assert_eq!(d_of_m(4), 14);
        for m in 1..=10 {
            assert_eq!(d_of_m(m), m * (m + 1) / 2 + m);
        }
    }

    #[test]
    fn central_elements_have_degree_one() {
        let a = ga(2, 1);
        for v in a.center().basis_vectors() {
            let r = a.elem(v).unwrap();
            if r.is_zero() {
                continue;
            }
            for mode in [DegreeMode::Regular, DegreeMode::Invertible] {
                let rel = algebraic_degree(&a, &r, mode)
                    .unwrap()
                    .relation()
                    .cloned()
                    .expect("central elements are conclusive");
                assert_eq!(rel.degree, 1);
                assert!(rel.verify(&a, &r).unwrap());
            }
        }
    }

    #[test]
    fn noncentral_nilpotent_has_degree_two() {
        // e_a + 1 is not central and squares to zero: degree exactly 2
        let a = ga(2, 1);
        let group = a.group().unwrap().clone();
        let params = group.params().unwrap();
        let ia = GElem::new(params, 1, 0, 0).index(params);
        let r = a.add(&a.basis_elem(ia), &a.one()).unwrap();
        assert!(!a.center().contains(r.coeffs()).unwrap());
        let rel = algebraic_degree(&a, &r, DegreeMode::Invertible)
            .unwrap()
            .relation()
            .cloned()
            .unwrap();
        assert_eq!(rel.degree, 2);
        assert!(rel.verify(&a, &r).unwrap());
    }

    #[test]
    fn zero_element_has_degree_one() {
        let a = ga(2, 1);
        let rel = algebraic_degree(&a, &a.zero(), DegreeMode::Regular)
            .unwrap()
            .relation()
            .cloned()
            .unwrap();
        assert_eq!(rel.degree, 1);
        assert!(rel.verify(&a, &a.zero()).unwrap());
    }

    #[test]
    fn minimal_polynomial_basics() {
        let a = ga(2, 1);
        // minpoly of 1 is x - 1
        assert_eq!(minimal_polynomial(&a, &a.one()).unwrap(), vec![1, 1]);
        // minpoly of 0 is x
        assert_eq!(minimal_polynomial(&a, &a.zero()).unwrap(), vec![0, 1]);
        // minpoly of the nilpotent e_a + 1 is x^2
        let group = a.group().unwrap().clone();
        let params = group.params().unwrap();
        let ia = GElem::new(params, 1, 0, 0).index(params);
        let r = a.add(&a.basis_elem(ia), &a.one()).unwrap();
        assert_eq!(minimal_polynomial(&a, &r).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn degree_bounded_by_minimal_polynomial_on_q8_algebra() {
        let a = ga(2, 1);
        let count = a.element_count().unwrap();
        for ordinal in 0..count {
            let r = a.elem_from_ordinal(ordinal);
            let n2 = algebraic_degree(&a, &r, DegreeMode::Invertible)
                .unwrap()
                .degree()
                .expect("exact route is conclusive here");
            let minpoly_degree = minimal_polynomial(&a, &r).unwrap().len() - 1;
            assert!(n2 <= minpoly_degree, "ordinal {ordinal}");
        }
    }

    #[test]
    fn regular_and_invertible_agree_on_matrix_algebra() {
        let m2 = matrix_algebra(f(2), 2).unwrap();
        for ordinal in 0..m2.element_count().unwrap() {
            let r = m2.elem_from_ordinal(ordinal);
            let n1 = algebraic_degree(&m2, &r, DegreeMode::Regular).unwrap();
            let n2 = algebraic_degree(&m2, &r, DegreeMode::Invertible).unwrap();
            assert_eq!(n1.degree(), n2.degree());
            assert!(n1.degree().is_some());
        }
    }

    #[test]
    fn m1_of_the_base_field_is_one() {
        let one_dim = matrix_algebra(f(5), 1).unwrap();
        let report = m1_estimate(&one_dim, DegreeMode::Regular, SweepStrategy::Exhaustive).unwrap();
        assert_eq!(report.m1, 1);
        assert!(report.exact);
        assert_eq!(report.checked, 5);
    }

    #[test]
    fn m1_exhaustive_on_g1() {
        let a = ga(2, 1);
        let report = m1_estimate(&a, DegreeMode::Regular, SweepStrategy::Exhaustive).unwrap();
        assert!(report.exact);
        assert_eq!(report.checked, 256);
        assert_eq!(report.inconclusive, 0);
        assert!(report.m1 >= 2, "noncentral elements exist");
        // the witness really attains the reported degree
        let w = a.elem(report.witness.clone()).unwrap();
        let rel = algebraic_degree(&a, &w, DegreeMode::Regular)
            .unwrap()
            .relation()
            .cloned()
            .unwrap();
        assert_eq!(rel.degree, report.m1);
    }

    #[test]
    fn central_unit_scaling_preserves_degree() {
        let a = ga(2, 1);
        // central units: center elements with nonzero augmentation
        let center = a.center().clone();
        let mut central_units = Vec::new();
        for ordinal in 1..a.element_count().unwrap() {
            let e = a.elem_from_ordinal(ordinal);
            if center.contains(e.coeffs()).unwrap() && a.is_unit(&e).unwrap() {
                central_units.push(e);
            }
        }
        assert_eq!(central_units.len(), 16);
        for ordinal in 0..a.element_count().unwrap() {
            let r = a.elem_from_ordinal(ordinal);
            let base = algebraic_degree(&a, &r, DegreeMode::Regular).unwrap().degree();
            for u in &central_units {
                let ur = a.mul(u, &r).unwrap();
                let scaled = algebraic_degree(&a, &ur, DegreeMode::Regular).unwrap().degree();
                assert_eq!(base, scaled);
            }
        }
    }

    #[test]
    fn escape_element_on_two_factors() {
        let g1 = Arc::new(ga(2, 1));
        let g2 = Arc::new(ga(2, 2));
        let prod = product_algebra(vec![g1.clone(), g2.clone()]).unwrap();
        // component degrees (2, 1): nilpotent noncentral in the first
        // factor, central in the second
        let report =
            escape_element(&prod, &[nil_for(&g1), g2.one()], DegreeMode::Invertible).unwrap();
        assert_eq!(report.component_degrees, vec![2, 1]);
        assert_eq!(report.degree, 2);
        assert!(report.relation.verify(&prod, &report.element.assembled).unwrap());

        // e_a + 1 in the n = 2 factor: a has order 4, so the degree is 4
        // and it dominates the product
        let nil = nil_for(&g2);
        let report =
            escape_element(&prod, &[g1.one(), nil.clone()], DegreeMode::Invertible).unwrap();
        assert_eq!(report.component_degrees, vec![1, 4]);
        assert_eq!(report.degree, 4);
        assert!(report.relation.verify(&prod, &report.element.assembled).unwrap());

        // single factor: degree matches the component
        let single = product_algebra(vec![g1.clone()]).unwrap();
        let rep = escape_element(&single, &[nil_for(&g1)], DegreeMode::Invertible).unwrap();
        assert_eq!(rep.degree, rep.component_degrees[0]);

        // all-zero probe rejected, zero in one component fine
        assert!(matches!(
            escape_element(&prod, &[g1.zero(), g2.zero()], DegreeMode::Invertible),
            Err(Error::Precondition(_))
        ));
        let partial = escape_element(&prod, &[g1.zero(), nil], DegreeMode::Invertible).unwrap();
        assert_eq!(partial.component_degrees, vec![1, 4]);
        assert_eq!(partial.degree, 4);
    }

    fn nil_for(a: &Algebra) -> AlgElem {
        let group = a.group().unwrap().clone();
        let params = group.params().unwrap();
        let ia = GElem::new(params, 1, 0, 0).index(params);
        a.add(&a.basis_elem(ia), &a.one()).unwrap()
    }

    #[test]
    fn sampled_route_reports_inconclusive_not_a_degree() {
        // a commutative 2-dim algebra over F_3 with the enumeration budget
        // forced to zero: the unit search must say so rather than guess
        let table = vec![
            vec![vec![1, 0], vec![0, 0]],
            vec![vec![0, 0], vec![0, 1]],
        ];
        let a = custom_algebra(
            "F3xF3",
            f(3),
            vec!["u".into(), "v".into()],
            vec![1, 1],
            &table,
        )
        .unwrap();
        let r = a.basis_elem(0);
        let out = algebraic_degree_capped(&a, &r, DegreeMode::Invertible, 0, 0).unwrap();
        assert!(matches!(out, DegreeOutcome::Inconclusive { .. }));
        // with real budgets the same probe is conclusive
        let out = algebraic_degree(&a, &r, DegreeMode::Invertible).unwrap();
        assert!(out.relation().is_some());
    }

    #[test]
    fn relation_report_is_serializable_and_hashed() {
        let a = ga(2, 1);
        let r = a.basis_elem(3);
        let rel = algebraic_degree(&a, &r, DegreeMode::Regular)
            .unwrap()
            .relation()
            .cloned()
            .unwrap();
        let report = rel.to_report(&a, &r).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("residual_hash"));
        // residual of a valid relation is zero, so the hash is the hash of
        // the zero vector of the algebra's dimension
        let zero_rel = CentralRelation {
            degree: 1,
            mode: DegreeMode::Regular,
            coefficients: vec![a.zero(), a.zero()],
        };
        assert_eq!(
            report.residual_hash,
            zero_rel.residual_hash(&a, &a.zero()).unwrap()
        );
    }
}
