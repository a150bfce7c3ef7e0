//! Matrices, canonical subspaces and exhaustive enumeration over F_q.
//!
//! Vectors are rows, maps act on the right (`v * M`), and every subspace
//! is stored as the unique reduced row echelon basis of its row space.
//! Enumerations are complete, duplicate-free and emitted in a documented
//! order: subspaces by (pivot profile, free entries) lexicographically,
//! matrices by their entry vector read as a little-endian base-q number.

use crate::error::{Error, Result};
use crate::gfq::Field;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Dense row-major matrix over F_q. Rows = source dimension,
/// cols = target dimension under the row-vector convention.
#[derive(Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
    pub field: Arc<Field>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field.q == other.field.q
            && self.data == other.data
    }
}
impl Eq for Matrix {}

impl std::hash::Hash for Matrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{}:", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(field: &Arc<Field>, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, cols: usize, rows: &[Vec<u8>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data, field: field.clone() }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix product; `self` then `rhs` under the row-vector convention.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b != 0 {
                        let cur = out.at(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    /// Applies the map to a row vector.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0u8; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.cols {
                let b = self.at(k, j);
                if b != 0 {
                    out[j] = f.add(out[j], f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Entrywise Frobenius. A ring homomorphism entry by entry, so it
    /// commutes with matrix products.
    pub fn frobenius(&self) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.frobenius(a)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    /// Block diagonal sum: `self` acting on the first coordinates,
    /// `rhs` on the remaining ones.
    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.at(i, j));
            }
        }
        out
    }

    /// Kronecker product, matching the basis order `e_i (x) e_j |->
    /// index i * dim + j` used for tensor products of functor values.
    pub fn kronecker(&self, rhs: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.at(k, l);
                        if b != 0 {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(&self.field, row_range.len(), col_range.len());
        for (i, r) in row_range.clone().enumerate() {
            for (j, c) in col_range.clone().enumerate() {
                out.set(i, j, self.at(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form, rank, and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        if self.field.q == 2 {
            return self.rref_gf2();
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else { continue };
            // swap rows r, pr
            for j in 0..m.cols {
                let (a, b) = (m.at(r, j), m.at(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let inv = f.inv(m.at(r, c)).expect("pivot nonzero");
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.at(r, j), inv));
            }
            for i in 0..m.rows {
                if i != r && m.at(i, c) != 0 {
                    let factor = m.at(i, c);
                    for j in 0..m.cols {
                        let v = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    /// GF(2) path: rows packed into machine words, elimination by XOR.
    fn rref_gf2(&self) -> (Matrix, usize, Vec<usize>) {
        debug_assert!(self.cols <= 64);
        let mut packed: Vec<u64> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &v)| acc | ((v as u64 & 1) << j))
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == packed.len() {
                break;
            }
            let Some(pr) = (r..packed.len()).find(|&i| packed[i] >> c & 1 == 1) else { continue };
            packed.swap(r, pr);
            let prow = packed[r];
            for (i, row) in packed.iter_mut().enumerate() {
                if i != r && *row >> c & 1 == 1 {
                    *row ^= prow;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Matrix::zero(&self.field, self.rows, self.cols);
        for (i, row) in packed.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, (row >> j & 1) as u8);
            }
        }
        (out, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Canonical (RREF) basis of the row kernel `{v : v * M = 0}`.
    pub fn kernel(&self) -> Matrix {
        // Solve v * M = 0, i.e. M^T x^T = 0 in column language; work with
        // the transpose and read off free variables.
        let t = self.transpose(); // cols x rows
        let (r, rank, pivots) = t.rref();
        let f = &self.field;
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u8; n];
            v[fc] = 1;
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(r.at(pi, fc));
            }
            rows.push(v);
        }
        let m = Matrix::from_rows(f, n, &rows);
        let (rr, _, _) = m.rref();
        rr
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        // augment [self | I], reduce, read right half
        let mut aug = Matrix::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, rank, _) = aug.rref();
        if rank < n || (0..n).any(|i| (0..n).any(|j| red.at(i, j) != u8::from(i == j))) {
            return None;
        }
        Some(red.submatrix(0..n, n..2 * n))
    }

    /// Little-endian base-q index of the entry vector; inverse of
    /// [`Matrix::from_index`]. The enumeration order for hom-sets.
    pub fn to_index(&self) -> u64 {
        let q = self.field.q as u64;
        self.data.iter().rev().fold(0u64, |acc, &v| acc * q + v as u64)
    }

    pub fn from_index(field: &Arc<Field>, rows: usize, cols: usize, mut idx: u64) -> Matrix {
        let q = field.q as u64;
        let mut m = Matrix::zero(field, rows, cols);
        for k in 0..rows * cols {
            m.data[k] = (idx % q) as u8;
            idx /= q;
        }
        m
    }
}

/// A subspace of F_q^n in canonical reduced-row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub ambient: usize,
    pub dim: usize,
    /// RREF basis, `dim` rows of length `ambient`; pivot columns strictly
    /// increasing. The zero subspace has an empty basis.
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.serialize())?;
        write!(f, ">")
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim, &self.pivots, &self.basis.data).cmp(&(
            other.ambient,
            other.dim,
            &other.pivots,
            &other.basis.data,
        ))
    }
}

impl Subspace {
    pub fn zero(field: &Arc<Field>, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            dim: 0,
            basis: Matrix::zero(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: &Arc<Field>, ambient: usize) -> Subspace {
        Subspace::coordinate(field, ambient, ambient)
    }

    /// The coordinate subspace `E_m = span(e_1..e_m)`.
    pub fn coordinate(field: &Arc<Field>, ambient: usize, m: usize) -> Subspace {
        assert!(m <= ambient);
        let mut b = Matrix::zero(field, m, ambient);
        for i in 0..m {
            b.set(i, i, 1);
        }
        Subspace { ambient, dim: m, basis: b, pivots: (0..m).collect() }
    }

    /// Canonical subspace spanned by arbitrary vectors.
    pub fn from_vectors(field: &Arc<Field>, ambient: usize, vectors: &[Vec<u8>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {}",
                    v.len(),
                    ambient
                )));
            }
        }
        let m = Matrix::from_rows(field, ambient, vectors);
        Ok(Subspace::from_matrix_rows(&m))
    }

    /// Canonical subspace spanned by the rows of a matrix.
    pub fn from_matrix_rows(m: &Matrix) -> Subspace {
        let (r, rank, pivots) = m.rref();
        let basis = r.submatrix(0..rank, 0..m.cols);
        Subspace { ambient: m.cols, dim: rank, basis, pivots }
    }

    /// Image under a linear map (the map's source must be the ambient).
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.rows, self.ambient);
        Subspace::from_matrix_rows(&self.basis.mul(map))
    }

    /// Preimage under a linear map into this subspace's ambient space:
    /// `{v : v * M in self}`.
    pub fn preimage(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols, self.ambient);
        // v * M in W  <=>  (v * M) * P_W = 0 for the quotient projection
        let (_, proj, _) = quotient(&self.basis.field, self.ambient, self);
        Subspace::from_matrix_rows(&map.mul(&proj).kernel())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace sum".into()));
        }
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for i in 0..self.dim {
            rows.push(self.basis.row(i).to_vec());
        }
        for i in 0..other.dim {
            rows.push(other.basis.row(i).to_vec());
        }
        Subspace::from_vectors(&self.basis.field, self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace intersection".into()));
        }
        let f = &self.basis.field;
        // Rows (x | y) with x * A = y * B span the intersection via x * A.
        let mut stacked = Matrix::zero(f, self.dim + other.dim, self.ambient);
        for i in 0..self.dim {
            for j in 0..self.ambient {
                stacked.set(i, j, self.basis.at(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..self.ambient {
                stacked.set(self.dim + i, j, f.neg(other.basis.at(i, j)));
            }
        }
        let ker = stacked.kernel(); // rows (x, y)
        let mut vecs = Vec::new();
        for i in 0..ker.rows {
            let x = &ker.row(i)[..self.dim];
            vecs.push(self.basis.apply_coords(x));
        }
        Subspace::from_vectors(f, self.ambient, &vecs)
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        // reduce v against the RREF basis
        let f = &self.basis.field;
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p] != 0 {
                let c = v[p];
                for j in 0..self.ambient {
                    v[j] = f.sub(v[j], f.mul(c, self.basis.at(i, j)));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace containment".into()));
        }
        Ok((0..other.dim).all(|i| self.contains_vector(other.basis.row(i))))
    }

    /// The orthogonal complement in the dual space, with the dual space
    /// identified with F_q^n through the dual of the standard basis.
    pub fn orthogonal(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::full(&self.basis.field, self.ambient);
        }
        // v in W^perp  <=>  v * basis^T = 0
        let k = self.basis.transpose().kernel();
        Subspace::from_matrix_rows(&k)
    }

    /// Completion of the RREF basis to an ambient basis: the rows are the
    /// subspace basis followed by the standard vectors at non-pivot
    /// columns, in ascending order. Always invertible.
    pub fn completion(&self) -> Matrix {
        let f = &self.basis.field;
        let n = self.ambient;
        let mut rows: Vec<Vec<u8>> = (0..self.dim).map(|i| self.basis.row(i).to_vec()).collect();
        for c in 0..n {
            if !self.pivots.contains(&c) {
                let mut e = vec![0u8; n];
                e[c] = 1;
                rows.push(e);
            }
        }
        Matrix::from_rows(f, n, &rows)
    }

    /// List of all vectors in the subspace, in coordinate enumeration
    /// order of the basis coefficients.
    pub fn vectors(&self) -> Vec<Vec<u8>> {
        let f = &self.basis.field;
        let q = f.q as u64;
        let count = q.pow(self.dim as u32);
        (0..count)
            .map(|idx| {
                let mut coords = vec![0u8; self.dim];
                let mut i = idx;
                for c in coords.iter_mut() {
                    *c = (i % q) as u8;
                    i /= q;
                }
                self.basis.apply_coords(&coords)
            })
            .collect()
    }

    /// Compact text form `n:m:hex-rows` used in JSON reports. Each entry
    /// is one hex digit; rows are joined with '.'.
    pub fn serialize(&self) -> String {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| self.basis.row(i).iter().map(|&v| format!("{v:x}")).collect())
            .collect();
        format!("{}:{}:{}", self.ambient, self.dim, rows.join("."))
    }
}

impl Matrix {
    /// Linear combination of the rows with the given coefficients.
    pub fn apply_coords(&self, coords: &[u8]) -> Vec<u8> {
        assert_eq!(coords.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0u8; self.cols];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                let v = self.at(i, j);
                if v != 0 {
                    out[j] = f.add(out[j], f.mul(c, v));
                }
            }
        }
        out
    }
}

/// Number of m-dimensional subspaces of F_q^n (Gaussian binomial), as an
/// exact integer via the product formula.
pub fn gaussian_binomial(q: u64, n: u64, m: u64) -> u64 {
    if m > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for j in 0..m {
        num *= (q.pow((n - j) as u32) - 1) as u128;
        den *= (q.pow((m - j) as u32) - 1) as u128;
    }
    (num / den) as u64
}

/// All m-dimensional subspaces of F_q^n, by (pivot profile, free entries)
/// lexicographically. The count is checked against the product formula.
pub fn enum_subspaces(field: &Arc<Field>, n: usize, m: usize) -> Result<Vec<Subspace>> {
    if m > n || n > 16 {
        return Err(Error::TruncationExceeded(format!("subspaces({n},{m})")));
    }
    let q = field.q as u64;
    let mut out = Vec::new();
    let mut profile: Vec<usize> = (0..m).collect();
    loop {
        // free cells for this profile: (i, j) with j > profile[i], j not a pivot
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| {
                let profile = &profile;
                (profile[i] + 1..n)
                    .filter(move |j| !profile.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for idx in 0..total {
            let mut b = Matrix::zero(field, m, n);
            for (i, &p) in profile.iter().enumerate() {
                b.set(i, p, 1);
            }
            let mut rem = idx;
            for &(i, j) in &free {
                b.set(i, j, (rem % q) as u8);
                rem /= q;
            }
            out.push(Subspace { ambient: n, dim: m, basis: b, pivots: profile.clone() });
        }
        // next m-combination of 0..n in lexicographic order
        if m == 0 {
            break;
        }
        let mut i = m;
        loop {
            if i == 0 {
                profile.clear();
                break;
            }
            i -= 1;
            if profile[i] < n - (m - i) {
                profile[i] += 1;
                for k in i + 1..m {
                    profile[k] = profile[k - 1] + 1;
                }
                break;
            }
        }
        if profile.is_empty() {
            break;
        }
    }
    let expected = gaussian_binomial(q, n as u64, m as u64) as usize;
    assert_eq!(out.len(), expected, "enumeration count must match the product formula");
    Ok(out)
}

/// All subspaces of F_q^n of every dimension, ordered by dimension then
/// the per-dimension enumeration order.
pub fn enum_all_subspaces(field: &Arc<Field>, n: usize) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for m in 0..=n {
        out.extend(enum_subspaces(field, n, m)?);
    }
    Ok(out)
}

/// Map kinds for [`enum_maps`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    All,
    Epi,
    Mono,
    Iso,
}

/// Complete duplicate-free list of linear maps F_q^s -> F_q^t of the given
/// kind, in base-q index order of the matrix entries.
pub fn enum_maps(field: &Arc<Field>, source_dim: usize, target_dim: usize, kind: MapKind) -> Result<Vec<Matrix>> {
    let cells = source_dim * target_dim;
    let q = field.q as u64;
    if cells > 0 && (cells as u32) * (q as f64).log2().ceil() as u32 > 48 {
        return Err(Error::TruncationExceeded(format!(
            "hom({source_dim},{target_dim}) over F_{q}"
        )));
    }
    let total = q.pow(cells as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let m = Matrix::from_index(field, source_dim, target_dim, idx);
        let keep = match kind {
            MapKind::All => true,
            MapKind::Epi => m.rank() == target_dim,
            MapKind::Mono => m.rank() == source_dim,
            MapKind::Iso => source_dim == target_dim && m.rank() == source_dim,
        };
        if keep {
            out.push(m);
        }
    }
    Ok(out)
}

/// Quotient of F_q^n by a subspace: returns (dim, projection, section)
/// with `section * projection = id` on the quotient and
/// `kernel(projection) = W`.
pub fn quotient(_field: &Arc<Field>, n: usize, w: &Subspace) -> (usize, Matrix, Matrix) {
    assert_eq!(w.ambient, n);
    let u = w.completion();
    let uinv = u.inverse().expect("completion is invertible");
    let qd = n - w.dim;
    // projection: coordinates w.. of v * u^{-1}
    let proj = uinv.submatrix(0..n, w.dim..n);
    // section: rows w.. of u
    let section = u.submatrix(w.dim..n, 0..n);
    (qd, proj, section)
}

/// The matrix of the induced map A -> B for a linear map with f(A) ⊆ B,
/// written in the RREF bases of A and B.
pub fn restrict_map(f: &Matrix, a: &Subspace, b: &Subspace) -> Matrix {
    assert_eq!(f.rows, a.ambient);
    assert_eq!(f.cols, b.ambient);
    let field = &f.field;
    let mut rows = Vec::with_capacity(a.dim);
    for i in 0..a.dim {
        let v = f.apply(a.basis.row(i));
        // RREF coordinates: read off pivot columns
        let coords: Vec<u8> = b.pivots.iter().map(|&p| v[p]).collect();
        debug_assert_eq!(b.basis.apply_coords(&coords), v, "image must lie in the target subspace");
        rows.push(coords);
    }
    Matrix::from_rows(field, b.dim, &rows)
}

/// The matrix of the induced map V/W -> V'/W' for f with f(W) ⊆ W',
/// in the canonical quotient coordinates of [`quotient`].
pub fn quotient_map(f: &Matrix, w: &Subspace, w2: &Subspace) -> Matrix {
    let field = &f.field;
    let (_, _, section) = quotient(field, w.ambient, w);
    let (_, proj2, _) = quotient(field, w2.ambient, w2);
    section.mul(f).mul(&proj2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::Field;

    fn f2() -> Arc<Field> {
        Field::new(2, 1).unwrap()
    }
    fn f3() -> Arc<Field> {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = f2();
        let id = Matrix::identity(&f, 3);
        let (r, rank, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
        assert_eq!(piv, vec![0, 1, 2]);
        let z = Matrix::zero(&f, 2, 2);
        let (rz, rankz, pivz) = z.rref();
        assert!(rz.is_zero());
        assert_eq!(rankz, 0);
        assert!(pivz.is_empty());
    }

    #[test]
    fn rref_rank_one_example() {
        let f = f2();
        let m = Matrix::from_rows(&f, 2, &[vec![1, 1], vec![1, 1]]);
        let (r, rank, _) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[1, 1]);
        assert_eq!(r.row(1), &[0, 0]);
    }

    #[test]
    fn rref_gf3_matches_generic_properties() {
        let f = f3();
        for idx in 0..3u64.pow(4) {
            let m = Matrix::from_index(&f, 2, 2, idx);
            let (r, rank, piv) = m.rref();
            assert_eq!(rank, piv.len());
            // row space unchanged: each original row reduces to zero against r
            let s = Subspace::from_matrix_rows(&m);
            let s2 = Subspace::from_matrix_rows(&r);
            assert_eq!(s, s2);
        }
    }

    #[test]
    fn subspace_from_vectors_examples() {
        let f = f2();
        // {e1, e1+e2} in F_2^3 spans the coordinate plane
        let s = Subspace::from_vectors(&f, 3, &[vec![1, 0, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(s, Subspace::coordinate(&f, 3, 2));
        // empty set spans zero
        let z = Subspace::from_vectors(&f, 3, &[]).unwrap();
        assert_eq!(z, Subspace::zero(&f, 3));
        // duplicates collapse
        let d = Subspace::from_vectors(&f, 3, &[vec![0, 1, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(d.dim, 1);
    }

    #[test]
    fn canonical_form_is_total_invariant() {
        // any two spanning sets of the same space give bit-identical bases
        let f = f3();
        let a = Subspace::from_vectors(&f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::from_vectors(&f, 3, &[vec![1, 0, 1], vec![2, 1, 0], vec![1, 2, 0]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_modular_law() {
        let f = f2();
        let l1 = Subspace::from_vectors(&f, 2, &[vec![1, 0]]).unwrap();
        let l2 = Subspace::from_vectors(&f, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(l1.sum(&l1).unwrap(), l1);
        assert_eq!(l1.sum(&l2).unwrap(), Subspace::full(&f, 2));
        // dim(A ∩ B) = dim A + dim B - dim(A+B) over all pairs in F_2^3
        let all = enum_all_subspaces(&f, 3).unwrap();
        for a in &all {
            for b in &all {
                let s = a.sum(b).unwrap();
                let i = a.intersect(b).unwrap();
                assert_eq!(i.dim + s.dim, a.dim + b.dim);
                assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
                assert!(s.contains(a).unwrap() && s.contains(b).unwrap());
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let f = f2();
        let z = Subspace::zero(&f, 2);
        let (d0, p0, _) = quotient(&f, 2, &z);
        assert_eq!(d0, 2);
        assert_eq!(p0, Matrix::identity(&f, 2));
        let full = Subspace::full(&f, 2);
        let (d1, _, _) = quotient(&f, 2, &full);
        assert_eq!(d1, 0);
        let w = Subspace::coordinate(&f, 2, 1);
        let (d2, p2, s2) = quotient(&f, 2, &w);
        assert_eq!(d2, 1);
        assert_eq!(s2.mul(&p2), Matrix::identity(&f, 1));
        assert_eq!(Subspace::from_matrix_rows(&p2.kernel()), w);
    }

    #[test]
    fn orthogonal_examples() {
        let f = f2();
        assert_eq!(Subspace::zero(&f, 2).orthogonal(), Subspace::full(&f, 2));
        assert_eq!(Subspace::full(&f, 2).orthogonal(), Subspace::zero(&f, 2));
        let e1 = Subspace::coordinate(&f, 2, 1);
        let e2 = Subspace::from_vectors(&f, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(e1.orthogonal(), e2);
    }

    #[test]
    fn orthogonal_is_inclusion_reversing_bijection() {
        for field in [f2(), f3()] {
            let n = 3;
            let all = enum_all_subspaces(&field, n).unwrap();
            for a in &all {
                let ao = a.orthogonal();
                assert_eq!(ao.dim, n - a.dim);
                assert_eq!(ao.orthogonal(), *a, "double orthogonal is the identity");
                for b in &all {
                    if a.contains(b).unwrap() {
                        assert!(b.orthogonal().contains(&a.orthogonal()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for field in [f2(), f3()] {
            let q = field.q as u64;
            let nmax = if q == 2 { 4 } else { 3 };
            for n in 0..=nmax {
                for m in 0..=n {
                    let list = enum_subspaces(&field, n, m).unwrap();
                    assert_eq!(list.len() as u64, gaussian_binomial(q, n as u64, m as u64));
                    // all distinct
                    let mut sorted = list.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), list.len());
                }
            }
        }
        let f4 = Field::new(2, 2).unwrap();
        for n in 0..=2usize {
            for m in 0..=n {
                let list = enum_subspaces(&f4, n, m).unwrap();
                assert_eq!(list.len() as u64, gaussian_binomial(4, n as u64, m as u64));
            }
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(35 % 2, 1);
        assert_eq!(gaussian_binomial(3, 2, 1), 4);
        assert_eq!(4 % 3, 1);
        for q in [2u64, 3, 4] {
            for n in 0..=4 {
                assert_eq!(gaussian_binomial(q, n, n), 1);
                assert_eq!(gaussian_binomial(q, n, 0), 1);
            }
        }
    }

    #[test]
    fn equivalence_class_sizes_mod_translation() {
        // For nonzero a and i > 0, classes of {W ∈ Gr_i : a ∉ W} under
        // W + <a> = W' + <a> all have size q^i.
        for field in [f2(), f3()] {
            let q = field.q as u64;
            let l = 3usize;
            for vec_idx in 1..q.pow(l as u32) {
                let a_vec: Vec<u8> = {
                    let mut v = vec![0u8; l];
                    let mut i = vec_idx;
                    for c in v.iter_mut() {
                        *c = (i % q) as u8;
                        i /= q;
                    }
                    v
                };
                let a_line = Subspace::from_vectors(&field, l, &[a_vec.clone()]).unwrap();
                for i in 1..l {
                    let spaces: Vec<_> = enum_subspaces(&field, l, i)
                        .unwrap()
                        .into_iter()
                        .filter(|w| !w.contains_vector(&a_vec))
                        .collect();
                    use std::collections::HashMap;
                    let mut classes: HashMap<String, usize> = HashMap::new();
                    for w in &spaces {
                        let key = w.sum(&a_line).unwrap().serialize();
                        *classes.entry(key).or_insert(0) += 1;
                    }
                    for (_, size) in classes {
                        assert_eq!(size as u64, q.pow(i as u32));
                    }
                }
            }
        }
    }

    #[test]
    fn map_counts() {
        let f = f2();
        assert_eq!(enum_maps(&f, 2, 1, MapKind::Epi).unwrap().len(), 3);
        assert_eq!(enum_maps(&f, 2, 2, MapKind::Iso).unwrap().len(), 6);
        assert_eq!(enum_maps(&f, 2, 2, MapKind::All).unwrap().len(), 16);
    }

    #[test]
    fn restrict_and_quotient_maps_compose() {
        let f = f2();
        // f: F_2^2 -> F_2^2 swapping coordinates; A = span(e1), B = span(e2)
        let m = Matrix::from_rows(&f, 2, &[vec![0, 1], vec![1, 0]]);
        let a = Subspace::coordinate(&f, 2, 1);
        let b = Subspace::from_vectors(&f, 2, &[vec![0, 1]]).unwrap();
        let r = restrict_map(&m, &a, &b);
        assert_eq!(r, Matrix::identity(&f, 1));
        let qm = quotient_map(&m, &a, &b);
        assert_eq!(qm.rows, 1);
        assert_eq!(qm.cols, 1);
    }

    #[test]
    fn serialize_round_shape() {
        let f = f2();
        let s = Subspace::from_vectors(&f, 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(s.serialize(), "3:2:101.011");
    }
}
