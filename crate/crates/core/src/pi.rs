//! Multilinear polynomial identities and witness search.
//!
//! A degree-`d` multilinear polynomial is a map from permutations of the
//! variables to integer coefficients; the standard identity `St_d` assigns
//! each permutation its sign. By multilinearity a polynomial vanishes on the
//! whole algebra iff it vanishes on all basis tuples, so a completed
//! basis-exhaustive search is a proof, not just evidence.
//!
//! For alternating polynomials (every `St_d` is one, and alternation is
//! detected structurally, never assumed) the basis search collapses further:
//! tuples with a repeated entry vanish and permuted tuples agree up to sign,
//! so only strictly increasing index tuples need evaluation, via a
//! subset-DP expansion instead of the `d!`-term sum. The first witness in
//! lexicographic order is the same either way, and the unit tests compare
//! the two routes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Factorial budget: `8! = 40320` terms.
pub const MAX_DEGREE: usize = 8;
/// Basis-exhaustive search budget on `dim^degree`.
pub const BASIS_TUPLE_BUDGET: u64 = 1 << 24;
/// Secondary guard: total term evaluations for the general (non-alternating)
/// path.
pub const TERM_EVAL_BUDGET: u64 = 1 << 28;

/// A multilinear integer-coefficient polynomial of fixed degree: a finite
/// sum of monomials `coeff * x_{s(1)} ... x_{s(d)}`, one per permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    degree: usize,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl MultilinearPolynomial {
    /// Builds from `(permutation, coefficient)` pairs; permutations are
    /// 0-based position lists of length `degree`. Zero coefficients are
    /// dropped; duplicate permutations are rejected.
    pub fn new(degree: usize, terms: Vec<(Vec<u8>, i64)>) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::BudgetExceeded(format!(
                "degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut map = BTreeMap::new();
        for (perm, coeff) in terms {
            if perm.len() != degree {
                return Err(Error::InvalidInput(format!(
                    "monomial of length {} in a degree-{degree} polynomial",
                    perm.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in &perm {
                if v as usize >= degree || seen[v as usize] {
                    return Err(Error::InvalidInput(format!(
                        "{perm:?} is not a permutation of 0..{degree}"
                    )));
                }
                seen[v as usize] = true;
            }
            if coeff == 0 {
                continue;
            }
            if map.insert(perm.clone(), coeff).is_some() {
                return Err(Error::InvalidInput(format!("duplicate monomial {perm:?}")));
            }
        }
        Ok(Self { degree, terms: map })
    }

    /// The standard identity `St_d = sum_s sign(s) x_{s(1)} ... x_{s(d)}`.
    pub fn standard(degree: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::BudgetExceeded(format!(
                "standard identity degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut terms = Vec::new();
        let mut perm: Vec<u8> = (0..degree as u8).collect();
        loop {
            terms.push((perm.clone(), sign_of(&perm)));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Self::new(degree, terms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], i64)> {
        self.terms.iter().map(|(p, &c)| (p.as_slice(), c))
    }

    pub fn coefficient(&self, perm: &[u8]) -> i64 {
        self.terms.get(perm).copied().unwrap_or(0)
    }

    /// A polynomial-identity candidate must carry `1` among its
    /// coefficients.
    pub fn has_unit_coefficient(&self) -> bool {
        self.terms.values().any(|&c| c == 1)
    }

    /// Structural alternation test: swapping any two adjacent variables
    /// negates the coefficient map. Alternating multilinear polynomials are
    /// exactly the scalar multiples of `St_d`.
    pub fn is_alternating(&self) -> bool {
        for (perm, &coeff) in &self.terms {
            for i in 0..self.degree - 1 {
                let mut swapped = perm.clone();
                for v in swapped.iter_mut() {
                    if *v as usize == i {
                        *v = (i + 1) as u8;
                    } else if *v as usize == i + 1 {
                        *v = i as u8;
                    }
                }
                if self.coefficient(&swapped) != -coeff {
                    return false;
                }
            }
        }
        true
    }

    /// Exact evaluation in `A` by substitution, coefficients reduced mod `p`.
    pub fn evaluate(&self, a: &Algebra, args: &[AlgElem]) -> Result<AlgElem> {
        if args.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} arguments for a degree-{} polynomial",
                args.len(),
                self.degree
            )));
        }
        for arg in args {
            a.check_elem(arg)?;
        }
        let p = a.field().p();
        let mut acc = a.zero();
        for (perm, &coeff) in &self.terms {
            let c = coeff.rem_euclid(p as i64) as u32;
            if c == 0 {
                continue;
            }
            let mut prod = a.one();
            for &pos in perm {
                prod = a.mul(&prod, &args[pos as usize])?;
            }
            acc = a.add(&acc, &a.scale(c, &prod)?)?;
        }
        Ok(acc)
    }

    /// Evaluation of an alternating polynomial through the subset expansion
    /// `St_d(x_1..x_d) = sum_i (-1)^(i-1) x_i St_{d-1}(.. x_i omitted ..)`,
    /// scaled by the identity-permutation coefficient. `O(2^d d)` algebra
    /// products instead of `d! d`.
    fn evaluate_alternating(&self, a: &Algebra, args: &[AlgElem]) -> Result<AlgElem> {
        debug_assert!(self.is_alternating());
        let d = self.degree;
        let lambda = self
            .coefficient(&(0..d as u8).collect::<Vec<_>>())
            .rem_euclid(a.field().p() as i64) as u32;
        if lambda == 0 {
            return Ok(a.zero());
        }
        let mut table: Vec<Option<AlgElem>> = vec![None; 1 << d];
        for (i, arg) in args.iter().enumerate() {
            table[1 << i] = Some(arg.clone());
        }
        for mask in 1usize..1 << d {
            if mask.count_ones() < 2 {
                continue;
            }
            let mut acc = a.zero();
            let mut rank = 0;
            for i in 0..d {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let sub = table[mask ^ (1 << i)]
                    .as_ref()
                    .expect("smaller masks are filled first");
                let term = a.mul(&args[i], sub)?;
                acc = if rank % 2 == 0 {
                    a.add(&acc, &term)?
                } else {
                    a.sub(&acc, &term)?
                };
                rank += 1;
            }
            table[mask] = Some(acc);
        }
        let st = table[(1 << d) - 1].take().expect("full mask filled");
        a.scale(lambda, &st)
    }
}

fn sign_of(perm: &[u8]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(perm: &mut [u8]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Search strategy for identity witnesses.
#[derive(Debug, Clone, Copy)]
pub enum PiStrategy {
    /// All basis tuples; completing it proves the identity holds.
    BasisExhaustive,
    /// Seeded random general elements; completing it is evidence only.
    Randomized { samples: u64, seed: u64 },
}

/// A substitution on which the polynomial does not vanish.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityWitness {
    pub degree: usize,
    pub algebra: String,
    pub args: WitnessArgs,
    pub value: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessArgs {
    BasisIndices(Vec<usize>),
    Elements(Vec<Vec<u32>>),
}

impl IdentityWitness {
    pub fn args_as_elems(&self, a: &Algebra) -> Result<Vec<AlgElem>> {
        match &self.args {
            WitnessArgs::BasisIndices(idx) => idx
                .iter()
                .map(|&i| {
                    if i < a.dim() {
                        Ok(a.basis_elem(i))
                    } else {
                        Err(Error::InvalidInput(format!("basis index {i} out of range")))
                    }
                })
                .collect(),
            WitnessArgs::Elements(vecs) => vecs.iter().map(|v| a.elem(v.clone())).collect(),
        }
    }

    /// Re-evaluates the polynomial on the recorded arguments.
    pub fn verify(&self, a: &Algebra, f: &MultilinearPolynomial) -> Result<bool> {
        let args = self.args_as_elems(a)?;
        let value = f.evaluate(a, &args)?;
        Ok(!value.is_zero() && value.coeffs() == self.value)
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Witness(IdentityWitness),
    /// Basis-exhaustive search completed: `f` is an identity of the algebra.
    ExhaustedProof { tuples_checked: u64 },
    /// Randomized search completed without a witness.
    ExhaustedSampled { samples: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&IdentityWitness> {
        match self {
            SearchOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// Hunts for a tuple on which `f` does not vanish. Basis-exhaustive order is
/// lexicographic, and the reported witness is the lexicographically first
/// one overall (for alternating `f`, a nonzero tuple sorts to a nonzero
/// sorted tuple, so scanning sorted tuples preserves that minimum).
pub fn identity_witness_search(
    a: &Algebra,
    f: &MultilinearPolynomial,
    strategy: PiStrategy,
) -> Result<SearchOutcome> {
    match strategy {
        PiStrategy::BasisExhaustive => {
            let d = f.degree();
            let tuple_count = (a.dim() as u64)
                .checked_pow(d as u32)
                .filter(|&n| n <= BASIS_TUPLE_BUDGET)
                .ok_or_else(|| {
                    Error::BudgetExceeded(format!(
                        "basis-exhaustive search over {}^{d} tuples",
                        a.dim()
                    ))
                })?;
            if f.is_alternating() {
                search_alternating_basis(a, f, tuple_count)
            } else {
                let terms = f.terms.len() as u64;
                if tuple_count.saturating_mul(terms) > TERM_EVAL_BUDGET {
                    return Err(Error::BudgetExceeded(format!(
                        "{tuple_count} tuples x {terms} terms exceeds the evaluation budget"
                    )));
                }
                search_general_basis(a, f, tuple_count)
            }
        }
        PiStrategy::Randomized { samples, seed } => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..samples {
                let args: Vec<AlgElem> = (0..f.degree()).map(|_| a.random_elem(&mut rng)).collect();
                let value = f.evaluate(a, &args)?;
                if !value.is_zero() {
                    return Ok(SearchOutcome::Witness(IdentityWitness {
                        degree: f.degree(),
                        algebra: a.name().to_string(),
                        args: WitnessArgs::Elements(
                            args.iter().map(|e| e.coeffs().to_vec()).collect(),
                        ),
                        value: value.coeffs().to_vec(),
                    }));
                }
            }
            Ok(SearchOutcome::ExhaustedSampled { samples })
        }
    }
}

fn search_general_basis(
    a: &Algebra,
    f: &MultilinearPolynomial,
    tuple_count: u64,
) -> Result<SearchOutcome> {
    let d = f.degree();
    let dim = a.dim();
    let mut tuple = vec![0usize; d];
    for _ in 0..tuple_count {
        let args: Vec<AlgElem> = tuple.iter().map(|&i| a.basis_elem(i)).collect();
        let value = f.evaluate(a, &args)?;
        if !value.is_zero() {
            return Ok(SearchOutcome::Witness(IdentityWitness {
                degree: d,
                algebra: a.name().to_string(),
                args: WitnessArgs::BasisIndices(tuple.clone()),
                value: value.coeffs().to_vec(),
            }));
        }
        // lexicographic increment, most significant slot first
        for slot in (0..d).rev() {
            tuple[slot] += 1;
            if tuple[slot] < dim {
                break;
            }
            tuple[slot] = 0;
        }
    }
    Ok(SearchOutcome::ExhaustedProof {
        tuples_checked: tuple_count,
    })
}

fn search_alternating_basis(
    a: &Algebra,
    f: &MultilinearPolynomial,
    tuple_count: u64,
) -> Result<SearchOutcome> {
    let d = f.degree();
    let dim = a.dim();
    if d > dim {
        // alternating and multilinear: any tuple of more than dim basis
        // elements repeats one, so every basis tuple vanishes
        return Ok(SearchOutcome::ExhaustedProof {
            tuples_checked: tuple_count,
        });
    }
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        let args: Vec<AlgElem> = combo.iter().map(|&i| a.basis_elem(i)).collect();
        let value = f.evaluate_alternating(a, &args)?;
        if !value.is_zero() {
            return Ok(SearchOutcome::Witness(IdentityWitness {
                degree: d,
                algebra: a.name().to_string(),
                args: WitnessArgs::BasisIndices(combo.clone()),
                value: value.coeffs().to_vec(),
            }));
        }
        // next strictly increasing tuple
        let mut slot = d;
        loop {
            if slot == 0 {
                return Ok(SearchOutcome::ExhaustedProof {
                    tuples_checked: tuple_count,
                });
            }
            slot -= 1;
            if combo[slot] < dim - (d - slot) {
                combo[slot] += 1;
                for i in slot + 1..d {
                    combo[i] = combo[i - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Result of scanning the standard identities `St_1, St_2, ...` in order.
#[derive(Debug, Clone, Serialize)]
pub struct MinDegreeReport {
    /// Smallest degree whose search found no witness, if any within range.
    pub d_min: Option<usize>,
    /// True when `d_min` came from a completed basis-exhaustive search.
    pub proof_grade: bool,
    /// One witness per degree below `d_min` (or through `d_max`).
    pub witnesses: Vec<IdentityWitness>,
}

/// Finds the least `d <= d_max` with no `St_d` witness, collecting witnesses
/// for every smaller degree.
pub fn min_standard_degree(
    a: &Algebra,
    d_max: usize,
    strategy: PiStrategy,
) -> Result<MinDegreeReport> {
    if d_max > MAX_DEGREE {
        return Err(Error::BudgetExceeded(format!(
            "degree cap {d_max} exceeds {MAX_DEGREE}"
        )));
    }
    let mut witnesses = Vec::new();
    for d in 1..=d_max {
        let st = MultilinearPolynomial::standard(d)?;
        match identity_witness_search(a, &st, strategy)? {
            SearchOutcome::Witness(w) => witnesses.push(w),
            SearchOutcome::ExhaustedProof { .. } => {
                return Ok(MinDegreeReport {
                    d_min: Some(d),
                    proof_grade: true,
                    witnesses,
                })
            }
            SearchOutcome::ExhaustedSampled { .. } => {
                return Ok(MinDegreeReport {
                    d_min: Some(d),
                    proof_grade: false,
                    witnesses,
                })
            }
        }
    }
    Ok(MinDegreeReport {
        d_min: None,
        proof_grade: false,
        witnesses,
    })
}
