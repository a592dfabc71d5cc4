//! Finite groups with enumerated elements: the modular Heisenberg family
//! `G(n)`, the quaternion fixture `Q_8`, and table-defined groups, plus the
//! structural analyses (center, derived subgroup, nilpotency class, subgroup
//! lattice) the group-algebra experiments depend on.
//!
//! `G(n)` is generated by `a`, `b`, `c` of order `p^n` with `c` central and
//! `a b a^-1 = b c`. Elements are kept in the normal form `b^y c^z a^x` and
//! multiplied by the closed-form law
//!
//! ```text
//! (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x*y')   (mod p^n)
//! ```
//!
//! The law is derived from the defining relations once, and every
//! construction re-verifies the relations and the group axioms instead of
//! trusting the derivation. Commutators then collapse to
//! `[g, h] = c^(x y' - y x')`, which `verify_commutator_formula` checks
//! against the raw definition `g h g^-1 h^-1`.

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::rng::SplitMix64;

/// Hard cap on enumerated group order (`p^{3n}`).
pub const GROUP_ORDER_BUDGET: u64 = 1 << 20;
/// Orders up to this get a materialized multiplication table.
pub const TABLE_BUDGET: usize = 1024;
/// Orders up to this get exhaustive associativity checks at construction;
/// larger groups are sampled. `verify_axioms` can re-run exhaustively up to
/// the analysis budget on request.
pub const ASSOC_EXHAUSTIVE_BUDGET: usize = 729;
/// Cap for the quadratic element-wise analyses (center, classes, series).
pub const ANALYSIS_BUDGET: usize = 4096;
/// Cap for full subgroup-lattice enumeration.
pub const SUBGROUP_BUDGET: usize = 64;
/// Pair budget below which the commutator formula is checked exhaustively.
pub const COMMUTATOR_EXHAUSTIVE_BUDGET: usize = 4096;
/// Sample count for sampled verifications.
pub const SAMPLED_CHECKS: u64 = 100_000;

/// Parameters `(p, n)` of the group `G(n)` of order `p^{3n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupParams {
    p: u32,
    n: u32,
}

impl GroupParams {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n < 1 {
            return Err(Error::InvalidInput("exponent n must be at least 1".into()));
        }
        let mut order = 1u64;
        for _ in 0..3 * n {
            order = order.saturating_mul(p as u64);
            if order > GROUP_ORDER_BUDGET {
                return Err(Error::BudgetExceeded(format!(
                    "|G| = {p}^{} exceeds {GROUP_ORDER_BUDGET}",
                    3 * n
                )));
            }
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`, the common order of the three generators.
    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    pub fn order(&self) -> u64 {
        self.modulus().pow(3)
    }
}

/// An element of `G(n)` in the normal form `b^y c^z a^x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GElem {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl GElem {
    pub fn new(params: GroupParams, x: u64, y: u64, z: u64) -> Self {
        let m = params.modulus();
        Self {
            x: x % m,
            y: y % m,
            z: z % m,
        }
    }

    pub fn identity() -> Self {
        Self { x: 0, y: 0, z: 0 }
    }

    /// Fixed enumeration order: `x*p^{2n} + y*p^n + z`.
    pub fn index(&self, params: GroupParams) -> usize {
        let m = params.modulus();
        (self.x * m * m + self.y * m + self.z) as usize
    }

    pub fn from_index(params: GroupParams, idx: usize) -> Self {
        let m = params.modulus();
        let idx = idx as u64;
        Self {
            x: idx / (m * m),
            y: idx / m % m,
            z: idx % m,
        }
    }
}

fn heisenberg_mul(m: u64, g: GElem, h: GElem) -> GElem {
    GElem {
        x: (g.x + h.x) % m,
        y: (g.y + h.y) % m,
        z: (g.z + h.z + g.x * h.y % m) % m,
    }
}

fn heisenberg_inv(m: u64, g: GElem) -> GElem {
    // (x,y,z)^-1 = (-x, -y, -z + x y)
    GElem {
        x: (m - g.x) % m,
        y: (m - g.y) % m,
        z: ((m - g.z) % m + g.x * g.y % m) % m,
    }
}

enum GroupLaw {
    Table { table: Vec<u32>, inverse: Vec<u32> },
    HeisenbergClosed { modulus: u64 },
}

/// A finite group with elements enumerated `0..order`, index 0 the identity.
pub struct FiniteGroup {
    name: String,
    order: usize,
    law: GroupLaw,
    labels: Option<Vec<String>>,
    heisenberg: Option<GroupParams>,
}

/// How thoroughly `verify_axioms` checks associativity.
#[derive(Debug, Clone, Copy)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { triples: u64, seed: u64 },
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        match &self.law {
            GroupLaw::Table { table, .. } => table[g * self.order + h] as usize,
            GroupLaw::HeisenbergClosed { modulus } => {
                let params = self.heisenberg.expect("closed law implies params");
                heisenberg_mul(
                    *modulus,
                    GElem::from_index(params, g),
                    GElem::from_index(params, h),
                )
                .index(params)
            }
        }
    }

    pub fn inv(&self, g: usize) -> usize {
        match &self.law {
            GroupLaw::Table { inverse, .. } => inverse[g] as usize,
            GroupLaw::HeisenbergClosed { modulus } => {
                let params = self.heisenberg.expect("closed law implies params");
                heisenberg_inv(*modulus, GElem::from_index(params, g)).index(params)
            }
        }
    }

    pub fn pow(&self, g: usize, mut e: u64) -> usize {
        let mut base = g;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inv(by))
    }

    /// `g h g^-1 h^-1` straight from the group law.
    pub fn commutator_index(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.mul(g, h), self.inv(g)), self.inv(h))
    }

    pub fn label(&self, g: usize) -> String {
        if let Some(labels) = &self.labels {
            return labels[g].clone();
        }
        if let Some(params) = self.heisenberg {
            return heisenberg_label(GElem::from_index(params, g));
        }
        format!("g{g}")
    }

    pub fn params(&self) -> Option<GroupParams> {
        self.heisenberg
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Re-checks identity, inverses and associativity. Identity and inverses
    /// are always exhaustive; associativity follows `mode`.
    pub fn verify_axioms(&self, mode: VerifyMode) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(Error::GroupAxiom("empty element set".into()));
        }
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::GroupAxiom(format!("identity fails at element {g}")));
            }
            let h = self.inv(g);
            if h >= n || self.mul(g, h) != 0 || self.mul(h, g) != 0 {
                return Err(Error::GroupAxiom(format!("inverse fails at element {g}")));
            }
        }
        match mode {
            VerifyMode::Exhaustive => {
                if n > ANALYSIS_BUDGET {
                    return Err(Error::BudgetExceeded(format!(
                        "exhaustive associativity at order {n} (cap {ANALYSIS_BUDGET})"
                    )));
                }
                for g in 0..n {
                    for h in 0..n {
                        let gh = self.mul(g, h);
                        for k in 0..n {
                            if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                                return Err(Error::GroupAxiom(format!(
                                    "associativity fails at ({g}, {h}, {k})"
                                )));
                            }
                        }
                    }
                }
            }
            VerifyMode::Sampled { triples, seed } => {
                let mut rng = SplitMix64::new(seed);
                for _ in 0..triples {
                    let g = rng.below(n as u64) as usize;
                    let h = rng.below(n as u64) as usize;
                    let k = rng.below(n as u64) as usize;
                    if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)) {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails at ({g}, {h}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn default_verify(&self) -> Result<()> {
        let mode = if self.order <= ASSOC_EXHAUSTIVE_BUDGET {
            VerifyMode::Exhaustive
        } else {
            VerifyMode::Sampled {
                triples: SAMPLED_CHECKS,
                seed: 0x5eed,
            }
        };
        self.verify_axioms(mode)
    }
}

fn heisenberg_label(g: GElem) -> String {
    let mut parts = Vec::new();
    for (sym, e) in [("b", g.y), ("c", g.z), ("a", g.x)] {
        match e {
            0 => {}
            1 => parts.push(sym.to_string()),
            _ => parts.push(format!("{sym}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Builds `G(n)` and verifies, at construction, the group axioms, the six
/// defining relations, and that conjugation by `a` has order exactly `p^n`
/// on `<b, c>`.
pub fn make_heisenberg(params: GroupParams) -> Result<FiniteGroup> {
    let order = params.order() as usize;
    let m = params.modulus();
    let law = if order <= TABLE_BUDGET {
        let mut table = vec![0u32; order * order];
        for g in 0..order {
            let ge = GElem::from_index(params, g);
            for h in 0..order {
                let he = GElem::from_index(params, h);
                table[g * order + h] = heisenberg_mul(m, ge, he).index(params) as u32;
            }
        }
        let inverse = (0..order)
            .map(|g| heisenberg_inv(m, GElem::from_index(params, g)).index(params) as u32)
            .collect();
        GroupLaw::Table { table, inverse }
    } else {
        GroupLaw::HeisenbergClosed { modulus: m }
    };
    let group = FiniteGroup {
        name: format!("G({}) over p={}", params.n, params.p),
        order,
        law,
        labels: None,
        heisenberg: Some(params),
    };
    group.default_verify()?;
    verify_defining_relations(&group, params)?;
    Ok(group)
}

fn verify_defining_relations(g: &FiniteGroup, params: GroupParams) -> Result<()> {
    let m = params.modulus();
    let a = GElem::new(params, 1, 0, 0).index(params);
    let b = GElem::new(params, 0, 1, 0).index(params);
    let c = GElem::new(params, 0, 0, 1).index(params);
    let rel = |ok: bool, desc: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::GroupAxiom(format!("defining relation fails: {desc}")))
        }
    };
    rel(g.pow(a, m) == 0, "a^(p^n) = 1")?;
    rel(g.pow(b, m) == 0, "b^(p^n) = 1")?;
    rel(g.pow(c, m) == 0, "c^(p^n) = 1")?;
    rel(g.mul(b, c) == g.mul(c, b), "bc = cb")?;
    rel(g.mul(a, c) == g.mul(c, a), "ac = ca")?;
    rel(
        g.mul(g.mul(a, b), g.inv(a)) == g.mul(b, c),
        "a b a^-1 = b c",
    )?;
    // Conjugation by a acts on <b, c> as b -> bc, c -> c; its order must be
    // exactly p^n: a^k b a^-k = b c^k is trivial only when p^n divides k.
    let mut ak = a;
    for k in 1..m {
        if g.conjugate(b, ak) == b && g.conjugate(c, ak) == c {
            return Err(Error::GroupAxiom(format!(
                "conjugation by a has order {k}, expected {m}"
            )));
        }
        ak = g.mul(ak, a);
    }
    Ok(())
}

/// The commutator of two normal-form elements, from the group law.
pub fn commutator(group: &FiniteGroup, g: GElem, h: GElem) -> Result<GElem> {
    let params = group
        .params()
        .ok_or_else(|| Error::InvalidInput("commutator in normal form needs G(n)".into()))?;
    let idx = group.commutator_index(g.index(params), h.index(params));
    Ok(GElem::from_index(params, idx))
}

/// Outcome of checking `[g, h] = c^(x y' - y x')` over element pairs.
#[derive(Debug, Clone)]
pub struct CommutatorCheck {
    pub holds: bool,
    pub pairs_checked: u64,
    pub exhaustive: bool,
    pub counterexample: Option<(usize, usize)>,
}

/// Checks the closed commutator formula on all pairs (small orders) or on
/// seeded samples (large orders).
pub fn verify_commutator_formula(group: &FiniteGroup, seed: u64) -> Result<CommutatorCheck> {
    let params = group
        .params()
        .ok_or_else(|| Error::InvalidInput("commutator formula applies to G(n)".into()))?;
    let m = params.modulus();
    let order = group.order() as u64;
    let check_pair = |gi: usize, hi: usize| -> bool {
        let g = GElem::from_index(params, gi);
        let h = GElem::from_index(params, hi);
        let expected = GElem {
            x: 0,
            y: 0,
            z: ((g.x * h.y % m) + m - (g.y * h.x % m)) % m,
        };
        group.commutator_index(gi, hi) == expected.index(params)
    };
    if group.order() <= COMMUTATOR_EXHAUSTIVE_BUDGET {
        let mut checked = 0u64;
        for g in 0..group.order() {
            for h in 0..group.order() {
                checked += 1;
                if !check_pair(g, h) {
                    return Ok(CommutatorCheck {
                        holds: false,
                        pairs_checked: checked,
                        exhaustive: true,
                        counterexample: Some((g, h)),
                    });
                }
            }
        }
        Ok(CommutatorCheck {
            holds: true,
            pairs_checked: checked,
            exhaustive: true,
            counterexample: None,
        })
    } else {
        let mut rng = SplitMix64::new(seed);
        for i in 0..SAMPLED_CHECKS {
            let g = rng.below(order) as usize;
            let h = rng.below(order) as usize;
            if !check_pair(g, h) {
                return Ok(CommutatorCheck {
                    holds: false,
                    pairs_checked: i + 1,
                    exhaustive: false,
                    counterexample: Some((g, h)),
                });
            }
        }
        Ok(CommutatorCheck {
            holds: true,
            pairs_checked: SAMPLED_CHECKS,
            exhaustive: false,
            counterexample: None,
        })
    }
}

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Closure, identity membership, and inverse-closure, re-checked.
    pub fn is_valid_in(&self, group: &FiniteGroup) -> bool {
        if !self.contains(group.identity()) {
            return false;
        }
        self.members.iter().all(|&g| {
            self.contains(group.inv(g)) && self.members.iter().all(|&h| self.contains(group.mul(g, h)))
        })
    }
}

fn analysis_guard(group: &FiniteGroup) -> Result<()> {
    if group.order() > ANALYSIS_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "element-wise analysis at order {} (cap {ANALYSIS_BUDGET})",
            group.order()
        )));
    }
    Ok(())
}

/// Closure of a set of elements under the group operation.
pub fn closure_of(group: &FiniteGroup, seed: &[usize]) -> Subgroup {
    let mut in_set = vec![false; group.order()];
    let mut queue: Vec<usize> = Vec::new();
    let push = |g: usize, in_set: &mut Vec<bool>, queue: &mut Vec<usize>| {
        if !in_set[g] {
            in_set[g] = true;
            queue.push(g);
        }
    };
    push(group.identity(), &mut in_set, &mut queue);
    for &g in seed {
        push(g, &mut in_set, &mut queue);
    }
    let mut frontier = 0;
    while frontier < queue.len() {
        let g = queue[frontier];
        frontier += 1;
        for i in 0..queue.len() {
            let h = queue[i];
            push(group.mul(g, h), &mut in_set, &mut queue);
            push(group.mul(h, g), &mut in_set, &mut queue);
        }
    }
    let mut members = queue;
    members.sort_unstable();
    Subgroup { members }
}

/// The center, computed from the definition.
pub fn center(group: &FiniteGroup) -> Result<Subgroup> {
    analysis_guard(group)?;
    let members = group
        .elements()
        .filter(|&g| group.elements().all(|h| group.mul(g, h) == group.mul(h, g)))
        .collect();
    Ok(Subgroup { members })
}

/// The derived subgroup: closure of all commutators.
pub fn derived_subgroup(group: &FiniteGroup) -> Result<Subgroup> {
    analysis_guard(group)?;
    derived_of_members(group, &group.elements().collect::<Vec<_>>())
}

fn derived_of_members(group: &FiniteGroup, members: &[usize]) -> Result<Subgroup> {
    let mut commutators = Vec::new();
    for &g in members {
        for &h in members {
            commutators.push(group.commutator_index(g, h));
        }
    }
    commutators.sort_unstable();
    commutators.dedup();
    Ok(closure_of(group, &commutators))
}

/// Derived subgroup of a subgroup, as a subgroup of the parent.
pub fn derived_of_subgroup(group: &FiniteGroup, sub: &Subgroup) -> Result<Subgroup> {
    derived_of_members(group, sub.members())
}

/// Nilpotency class via the ascending central series
/// `Z_{i+1} = { g : [g, x] in Z_i for all x }`.
pub fn nilpotency_class(group: &FiniteGroup) -> Result<u32> {
    analysis_guard(group)?;
    let mut level = vec![false; group.order()];
    level[group.identity()] = true;
    let mut size = 1usize;
    let mut class = 0u32;
    if group.order() == 1 {
        return Ok(0);
    }
    loop {
        let next: Vec<bool> = group
            .elements()
            .map(|g| group.elements().all(|x| level[group.commutator_index(g, x)]))
            .collect();
        let next_size = next.iter().filter(|&&b| b).count();
        class += 1;
        if next_size == group.order() {
            return Ok(class);
        }
        if next_size == size {
            return Err(Error::InvalidInput(format!(
                "group {} is not nilpotent: central series stabilizes at order {size}",
                group.name()
            )));
        }
        level = next;
        size = next_size;
    }
}

/// Conjugacy classes, each sorted, ordered by smallest member.
pub fn conjugacy_classes(group: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    analysis_guard(group)?;
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for g in group.elements() {
        if seen[g] {
            continue;
        }
        let mut class: Vec<usize> = group.elements().map(|x| group.conjugate(g, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &m in &class {
            seen[m] = true;
        }
        classes.push(class);
    }
    Ok(classes)
}

/// The complete subgroup lattice, by incremental closure: every subgroup is
/// reachable from a smaller one by adjoining a single generator, so the
/// breadth-first sweep below visits all of them.
pub fn enumerate_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    if group.order() > SUBGROUP_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "subgroup enumeration at order {} (cap {SUBGROUP_BUDGET})",
            group.order()
        )));
    }
    let mut found = std::collections::BTreeSet::new();
    let trivial = closure_of(group, &[]);
    let mut queue = vec![trivial.members.clone()];
    found.insert(trivial.members);
    while let Some(current) = queue.pop() {
        for g in group.elements() {
            if current.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = current.clone();
            seed.push(g);
            let bigger = closure_of(group, &seed);
            if found.insert(bigger.members.clone()) {
                queue.push(bigger.members);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
    subgroups.sort_by_key(|s| (s.order(), s.members.clone()));
    debug_assert!(subgroups.iter().all(|s| s.is_valid_in(group)));
    Ok(subgroups)
}

/// Minimum of `[G : H] * |H'|` over the whole subgroup lattice, with a
/// minimizing subgroup. For `G(n)` this is bounded below by `p^n`.
pub fn min_index_commutator_product(group: &FiniteGroup) -> Result<(u64, Subgroup)> {
    let subgroups = enumerate_subgroups(group)?;
    let mut best: Option<(u64, Subgroup)> = None;
    for sub in subgroups {
        let derived = derived_of_subgroup(group, &sub)?;
        let value = sub.index_in(group) as u64 * derived.order() as u64;
        match &best {
            Some((b, _)) if *b <= value => {}
            _ => best = Some((value, sub)),
        }
    }
    best.ok_or_else(|| Error::InvalidInput("no subgroups enumerated".into()))
}

/// The quaternion group `Q_8` as a table group with labels
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn make_quaternion8() -> FiniteGroup {
    // element = 2*axis + sign, axes 0:1, 1:i, 2:j, 3:k
    const AXIS_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let mul = |g: usize, h: usize| -> usize {
        let (a1, s1) = (g / 2, g % 2);
        let (a2, s2) = (h / 2, h % 2);
        let (axis, extra) = AXIS_MUL[a1][a2];
        2 * axis + (s1 ^ s2 ^ extra)
    };
    let table: Vec<Vec<usize>> = (0..8).map(|g| (0..8).map(|h| mul(g, h)).collect()).collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    let mut group =
        make_from_table("Q8", &table).expect("the quaternion table satisfies the group axioms");
    group.labels = Some(labels);
    group
}

/// Builds a group from an explicit multiplication table. Element `0` must be
/// the identity; the violated axiom is named on failure.
pub fn make_from_table(name: &str, table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::GroupAxiom("empty table".into()));
    }
    if n > ANALYSIS_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "table group of order {n} (cap {ANALYSIS_BUDGET})"
        )));
    }
    let mut flat = vec![0u32; n * n];
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::GroupAxiom(format!(
                "table row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::GroupAxiom(format!(
                    "entry ({i}, {j}) = {v} is out of range"
                )));
            }
            flat[i * n + j] = v as u32;
        }
    }
    // cancellation: every row and column is a permutation
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let r = flat[i * n + j] as usize;
            let c = flat[j * n + i] as usize;
            if row_seen[r] {
                return Err(Error::GroupAxiom(format!("cancellation fails in row {i}")));
            }
            if col_seen[c] {
                return Err(Error::GroupAxiom(format!(
                    "cancellation fails in column {i}"
                )));
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    let mut inverse = vec![0u32; n];
    for g in 0..n {
        match (0..n).find(|&h| flat[g * n + h] == 0 && flat[h * n + g] == 0) {
            Some(h) => inverse[g] = h as u32,
            None => {
                return Err(Error::GroupAxiom(format!("element {g} has no inverse")));
            }
        }
    }
    let group = FiniteGroup {
        name: name.to_string(),
        order: n,
        law: GroupLaw::Table {
            table: flat,
            inverse,
        },
        labels: None,
        heisenberg: None,
    };
    group.default_verify()?;
    Ok(group)
}

/// The cyclic group of order `n` (a fixture; abelian control case).
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
    make_from_table(&format!("C{n}"), &table)
}

#[cfg(test)]
pub(crate) fn make_tampered_heisenberg(params: GroupParams) -> FiniteGroup {
    // Drops the x*y' twist: a valid (abelian) group on the same carrier, so
    // axiom checks pass but the commutator formula must fail.
    let order = params.order() as usize;
    let m = params.modulus();
    let mul = |g: usize, h: usize| -> usize {
        let a = GElem::from_index(params, g);
        let b = GElem::from_index(params, h);
        GElem {
            x: (a.x + b.x) % m,
            y: (a.y + b.y) % m,
            z: (a.z + b.z) % m,
        }
        .index(params)
    };
    let table: Vec<u32> = (0..order)
        .flat_map(|g| (0..order).map(move |h| mul(g, h) as u32))
        .collect();
    let inverse = (0..order)
        .map(|g| {
            let e = GElem::from_index(params, g);
            GElem {
                x: (m - e.x) % m,
                y: (m - e.y) % m,
                z: (m - e.z) % m,
            }
            .index(params) as u32
        })
        .collect();
    FiniteGroup {
        name: "tampered".into(),
        order,
        law: GroupLaw::Table {
            table,
            inverse,
        },
        labels: None,
        heisenberg: Some(params),
    }
}
