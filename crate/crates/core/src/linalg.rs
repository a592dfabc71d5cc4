//! Exact linear algebra over `F_p`: reduced row echelon form, kernels, and
//! subspace arithmetic.
//!
//! Everything downstream (centers, annihilators, certificate subspaces,
//! coefficient solution spaces) reduces to the operations in this module, so
//! the `p = 2` elimination path is bit-packed into `u64` words. The generic
//! per-entry path doubles as the reference implementation the packed path is
//! tested against.
//!
//! Matrices and subspaces are value types: no operation mutates its input.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A dense `rows x cols` matrix over `F_p`, row-major, entries reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors, reducing every entry mod `p`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| v % field.p()))
            .collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.field.p() as u64;
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc = 0u64;
            for (a, b) in row.iter().zip(v) {
                acc += *a as u64 * *b as u64;
                // p <= 2^16 so each term is < 2^32; fold before overflow.
                if acc >= 1 << 60 {
                    acc %= p;
                }
            }
            *o = (acc % p) as u32;
        }
        Ok(out)
    }

    /// Vertical stack; both operands keep their column count.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form and rank. Row space is preserved.
    pub fn rref(&self) -> (usize, FpMatrix) {
        if self.field.p() == 2 {
            self.rref_bitpacked(self.cols)
        } else {
            self.rref_generic(self.cols)
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// RREF restricted to choosing pivots in the first `pivot_cols` columns;
    /// trailing columns ride along. Rows past the returned rank have a zero
    /// left block. Used to project solution spaces while keeping lifts.
    pub fn rref_in_columns(&self, pivot_cols: usize) -> (usize, FpMatrix) {
        assert!(pivot_cols <= self.cols);
        if self.field.p() == 2 {
            self.rref_bitpacked(pivot_cols)
        } else {
            self.rref_generic(pivot_cols)
        }
    }

    fn rref_generic(&self, pivot_cols: usize) -> (usize, FpMatrix) {
        let f = self.field;
        let p = f.p();
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..pivot_cols {
            let Some(pivot) = (rank..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot, rank);
            let inv = f.inv(m.get(rank, col));
            if inv != 1 {
                for j in 0..m.cols {
                    let v = f.mul(m.get(rank, j), inv);
                    m.data[rank * m.cols + j] = v;
                }
            }
            for i in 0..m.rows {
                if i == rank {
                    continue;
                }
                let factor = m.get(i, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(rank, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        debug_assert!(p == f.p());
        (rank, m)
    }

    fn rref_bitpacked(&self, pivot_cols: usize) -> (usize, FpMatrix) {
        let words = self.cols.div_ceil(64).max(1);
        let mut packed: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                let mut w = vec![0u64; words];
                for (j, &v) in self.row(i).iter().enumerate() {
                    if v & 1 == 1 {
                        w[j / 64] |= 1 << (j % 64);
                    }
                }
                w
            })
            .collect();
        let mut rank = 0usize;
        for col in 0..pivot_cols {
            let (w, b) = (col / 64, col % 64);
            let Some(pivot) = (rank..self.rows).find(|&i| packed[i][w] >> b & 1 == 1) else {
                continue;
            };
            packed.swap(pivot, rank);
            let pivot_row = packed[rank].clone();
            for (i, row) in packed.iter_mut().enumerate() {
                if i != rank && row[w] >> b & 1 == 1 {
                    for (dst, src) in row.iter_mut().zip(&pivot_row) {
                        *dst ^= src;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        let mut out = FpMatrix::zeros(self.field, self.rows, self.cols);
        for (i, row) in packed.iter().enumerate() {
            for j in 0..self.cols {
                out.data[i * self.cols + j] = (row[j / 64] >> (j % 64) & 1) as u32;
            }
        }
        (rank, out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Right kernel `{v : M v = 0}` as a subspace of `F_p^cols`.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (rank, red) = self.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        for i in 0..rank {
            let col = (0..self.cols).find(|&j| red.get(i, j) != 0);
            pivot_cols.push(col.expect("nonzero row above rank"));
        }
        let is_pivot = {
            let mut mask = vec![false; self.cols];
            for &c in &pivot_cols {
                mask[c] = true;
            }
            mask
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(red.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis).expect("kernel vectors have ambient length")
    }
}

/// A subspace of `F_p^n` held as a reduced-row-echelon basis. The RREF basis
/// is canonical, so equality of subspaces is equality of the struct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            basis: FpMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            basis: FpMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn from_vectors(field: PrimeField, ambient_dim: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let m = FpMatrix::from_rows(field, ambient_dim, vectors)?;
        let (rank, red) = m.rref();
        let mut basis = FpMatrix::zeros(field, rank, ambient_dim);
        let mut pivots = Vec::with_capacity(rank);
        for i in 0..rank {
            for j in 0..ambient_dim {
                basis.set(i, j, red.get(i, j));
            }
            let pc = (0..ambient_dim).find(|&j| red.get(i, j) != 0);
            pivots.push(pc.expect("nonzero row above rank"));
        }
        Ok(Self {
            field,
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Residual of `v` after elimination against the basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let f = self.field;
        let mut out: Vec<u32> = v.iter().map(|&x| x % f.p()).collect();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let factor = out[pc];
            if factor == 0 {
                continue;
            }
            let row = self.basis.row(i);
            for (o, b) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(factor, *b));
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for row in self.basis.row_vecs() {
            if !other.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Subspace::from_vectors(self.field, self.ambient_dim, &stacked.row_vecs())
    }

    /// Intersection via the kernel of the stacked bases: solve
    /// `sum x_i a_i = sum y_j b_j` in the coefficients `(x, y)` and read the
    /// common vectors off the `x`-part. No vector enumeration.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field;
        let (k, l) = (self.dim(), other.dim());
        let stacked = FpMatrix::from_fn(f, self.ambient_dim, k + l, |i, j| {
            if j < k {
                self.basis.get(j, i)
            } else {
                f.neg(other.basis.get(j - k, i))
            }
        });
        let coeffs = stacked.kernel();
        let mut vectors = Vec::with_capacity(coeffs.dim());
        for c in coeffs.basis_vectors() {
            let mut v = vec![0u32; self.ambient_dim];
            for (i, &ci) in c[..k].iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                let row = self.basis.row(i);
                for (o, b) in v.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(ci, *b));
                }
            }
            vectors.push(v);
        }
        Subspace::from_vectors(f, self.ambient_dim, &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random_matrix(rng: &mut SplitMix64, field: PrimeField, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix::from_fn(field, rows, cols, |_, _| rng.below(field.p() as u64) as u32)
    }

    fn is_rref(m: &FpMatrix, rank: usize) -> bool {
        let mut last_pivot: Option<usize> = None;
        for i in 0..m.rows() {
            let pivot = (0..m.cols()).find(|&j| m.get(i, j) != 0);
            match pivot {
                Some(pc) => {
                    if i >= rank || m.get(i, pc) != 1 {
                        return false;
                    }
                    if let Some(prev) = last_pivot {
                        if pc <= prev {
                            return false;
                        }
                    }
                    if (0..m.rows()).any(|k| k != i && m.get(k, pc) != 0) {
                        return false;
                    }
                    last_pivot = Some(pc);
                }
                None => {
                    if i < rank {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn rref_identity_unchanged() {
        let m = FpMatrix::identity(f(2), 3);
        let (rank, red) = m.rref();
        assert_eq!(rank, 3);
        assert_eq!(red, m);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = FpMatrix::zeros(f(3), 2, 4);
        let (rank, red) = m.rref();
        assert_eq!(rank, 0);
        assert_eq!(red, m);
    }

    #[test]
    fn rref_duplicate_rows_over_f2() {
        let m = FpMatrix::from_rows(f(2), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (rank, red) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(red.row(0), &[1, 1]);
        assert_eq!(red.row(1), &[0, 0]);
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = SplitMix64::new(11);
        for &p in &[2u32, 3, 5] {
            let field = f(p);
            for _ in 0..50 {
                let m = random_matrix(&mut rng, field, 5, 7);
                let (rank, red) = m.rref();
                let (rank2, red2) = red.rref();
                assert_eq!(rank, rank2);
                assert_eq!(red, red2);
                assert!(is_rref(&red, rank));
            }
        }
    }

    #[test]
    fn bitpacked_agrees_with_reference_per_entry() {
        // 1000 random F_2 matrices up to 64x64: packed and per-entry paths
        // must agree entry-for-entry.
        let field = f(2);
        let mut rng = SplitMix64::new(2024);
        for _ in 0..1000 {
            let rows = 1 + rng.below(64) as usize;
            let cols = 1 + rng.below(64) as usize;
            let m = random_matrix(&mut rng, field, rows, cols);
            let (rank_bit, red_bit) = m.rref_bitpacked(cols);
            let (rank_gen, red_gen) = m.rref_generic(cols);
            assert_eq!(rank_bit, rank_gen);
            assert_eq!(red_bit, red_gen);
        }
    }

    #[test]
    fn kernel_identity_is_zero() {
        for n in 1..6 {
            let ker = FpMatrix::identity(f(5), n).kernel();
            assert!(ker.is_zero());
        }
    }

    #[test]
    fn kernel_zero_matrix_is_full() {
        let ker = FpMatrix::zeros(f(2), 4, 4).kernel();
        assert_eq!(ker.dim(), 4);
        assert_eq!(ker, Subspace::full(f(2), 4));
    }

    #[test]
    fn kernel_single_parity_row() {
        let m = FpMatrix::from_rows(f(2), 2, &[vec![1, 1]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains(&[1, 1]).unwrap());
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let mut rng = SplitMix64::new(5);
        for &p in &[2u32, 3, 7] {
            let field = f(p);
            for _ in 0..100 {
                let rows = 1 + rng.below(10) as usize;
                let cols = 1 + rng.below(10) as usize;
                let m = random_matrix(&mut rng, field, rows, cols);
                let ker = m.kernel();
                assert_eq!(m.rank() + ker.dim(), cols);
                for v in ker.basis_vectors() {
                    assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn intersect_is_idempotent() {
        let mut rng = SplitMix64::new(9);
        let field = f(2);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, field, 3, 6);
            let a = Subspace::from_vectors(field, 6, &m.row_vecs()).unwrap();
            assert_eq!(a.intersect(&a).unwrap(), a);
        }
    }

    #[test]
    fn coordinate_axes_intersect_trivially() {
        let field = f(2);
        let e1 = Subspace::from_vectors(field, 2, &[vec![1, 0]]).unwrap();
        let e2 = Subspace::from_vectors(field, 2, &[vec![0, 1]]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(field, 2));
    }

    #[test]
    fn grassmann_dimension_identity_vs_enumeration() {
        // dim a + dim b = dim(a meet b) + dim(a join b), with the meet checked
        // against literal enumeration of all vectors at ambient dim 8 over F_2.
        let field = f(2);
        let mut rng = SplitMix64::new(31);
        for _ in 0..40 {
            let ra = 1 + rng.below(4) as usize;
            let rb = 1 + rng.below(4) as usize;
            let a = Subspace::from_vectors(field, 8, &random_matrix(&mut rng, field, ra, 8).row_vecs()).unwrap();
            let b = Subspace::from_vectors(field, 8, &random_matrix(&mut rng, field, rb, 8).row_vecs()).unwrap();
            let meet = a.intersect(&b).unwrap();
            let join = a.sum(&b).unwrap();
            assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());

            let mut common = Vec::new();
            for bits in 0..256u32 {
                let v: Vec<u32> = (0..8).map(|i| bits >> i & 1).collect();
                if a.contains(&v).unwrap() && b.contains(&v).unwrap() {
                    common.push(v);
                }
            }
            let enumerated = Subspace::from_vectors(field, 8, &common).unwrap();
            assert_eq!(meet, enumerated);
        }
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = Subspace::full(f(2), 3);
        let b = Subspace::full(f(2), 4);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
        let c = Subspace::full(f(3), 3);
        assert!(a.intersect(&c).is_err());
        assert!(a.reduce(&[1, 0]).is_err());
    }

    #[test]
    fn rref_in_columns_keeps_lift_columns() {
        // Rows [v | id] reduced with pivots in the left block: right block of
        // the surviving rows records which input combinations produced them.
        let field = f(3);
        let rows = vec![vec![1, 2, 1, 0], vec![1, 1, 0, 1]];
        let m = FpMatrix::from_rows(field, 4, &rows).unwrap();
        let (rank, red) = m.rref_in_columns(2);
        assert_eq!(rank, 2);
        for i in 0..rank {
            let lift = [red.get(i, 2), red.get(i, 3)];
            let left = [red.get(i, 0), red.get(i, 1)];
            // recombine the original rows by the lift coefficients
            let mut expect = [0u32; 2];
            for (coef, row) in lift.iter().zip(&rows) {
                expect[0] = field.add(expect[0], field.mul(*coef, row[0]));
                expect[1] = field.add(expect[1], field.mul(*coef, row[1]));
            }
            assert_eq!(expect, left);
        }
    }
}
