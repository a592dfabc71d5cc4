//! Brute-force helpers shared by the oracle and acceptance suites. These
//! deliberately recompute results from definitions, independent of the
//! library's structured algorithms.

use celab_core::algebra::{AlgElem, Algebra};
use celab_core::group::FiniteGroup;

/// All subsets of an order-8 group that contain the identity and are closed
/// under multiplication and inverses, by scanning all 2^8 subsets.
pub fn subgroups_by_subset_bruteforce(group: &FiniteGroup) -> Vec<Vec<usize>> {
    assert_eq!(group.order(), 8);
    let mut found = Vec::new();
    for mask in 0u32..256 {
        if mask & 1 == 0 {
            continue; // identity is element 0
        }
        let members: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&g| members.iter().all(|&h| mask >> group.mul(g, h) & 1 == 1));
        let has_inverses = members.iter().all(|&g| mask >> group.inv(g) & 1 == 1);
        if closed && has_inverses {
            found.push(members);
        }
    }
    found.sort_by_key(|m| (m.len(), m.clone()));
    found
}

/// Every element of the center, enumerated through the center basis.
pub fn center_elements(a: &Algebra) -> Vec<AlgElem> {
    let center = a.center();
    let basis = center.basis_vectors();
    let p = a.field().p() as u64;
    let total = p.pow(basis.len() as u32);
    let mut out = Vec::with_capacity(total as usize);
    for ordinal in 0..total {
        let mut k = ordinal;
        let mut v = vec![0u32; a.dim()];
        for b in &basis {
            let digit = (k % p) as u32;
            k /= p;
            if digit != 0 {
                for (o, &x) in v.iter_mut().zip(b) {
                    *o = a.field().add(*o, a.field().mul(digit, x));
                }
            }
        }
        out.push(a.elem(v).unwrap());
    }
    out
}

/// Literal central-pair search: does some nonzero central `c` give a nonzero
/// central `r c`?
pub fn has_central_pair_bruteforce(a: &Algebra, r: &AlgElem) -> bool {
    let center = a.center();
    for c in center_elements(a) {
        if c.is_zero() {
            continue;
        }
        let d = a.mul(r, &c).unwrap();
        if !d.is_zero() && center.contains(d.coeffs()).unwrap() {
            return true;
        }
    }
    false
}

/// Does any relation `sum c_i r^i = 0` of exactly this degree exist, with
/// central coefficients and a non-zero-divisor leading coefficient? Checked
/// by enumerating every central coefficient tuple.
pub fn relation_exists_bruteforce(a: &Algebra, r: &AlgElem, degree: usize) -> bool {
    let centers = center_elements(a);
    let mut powers = vec![a.one()];
    for _ in 0..degree {
        powers.push(a.mul(powers.last().unwrap(), r).unwrap());
    }
    let mut idx = vec![0usize; degree + 1];
    loop {
        let leading = &centers[idx[degree]];
        if a.is_nonzerodivisor(leading).unwrap() {
            let mut acc = a.zero();
            for (i, &ci) in idx.iter().enumerate() {
                acc = a.add(&acc, &a.mul(&centers[ci], &powers[i]).unwrap()).unwrap();
            }
            if acc.is_zero() {
                return true;
            }
        }
        let mut slot = 0;
        loop {
            if slot > degree {
                return false;
            }
            idx[slot] += 1;
            if idx[slot] < centers.len() {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
    }
}
