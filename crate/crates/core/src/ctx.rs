//! Shared per-field context: enumerated subspace tables for every ambient
//! dimension in range, together with the fixed completion and quotient
//! data that turn values "at an arbitrary subspace" into values at the
//! skeletal coordinate objects.
//!
//! For a subspace `W` of F_q^n, [`Subspace::completion`] gives an
//! invertible `u_W` whose first `dim W` rows are the RREF basis of `W`.
//! The canonical chart `(n, W) ~ (n, E_w)` transports a site morphism
//! with ambient matrix `M : (n, W) -> (n', W')` to the skeletal matrix
//! `u_W * M * u_{W'}^{-1}`. All such charts are fixed once per context,
//! so transported actions compose strictly.

use crate::gfq::Field;
use crate::linalg::{enum_subspaces, quotient, Matrix, Subspace};
use crate::error::Result;
use std::collections::HashMap;
use std::sync::Arc;

pub struct AmbientTables {
    /// Subspaces of F_q^n grouped by dimension, each group in enumeration
    /// order.
    pub by_dim: Vec<Vec<Subspace>>,
    /// All subspaces, dimension-major.
    pub all: Vec<Subspace>,
    /// Subspace -> (dim, index within its dimension group).
    pub index: HashMap<Subspace, (usize, usize)>,
    /// Completion matrix and its inverse, per subspace (dim-major order).
    pub charts: Vec<(Matrix, Matrix)>,
    /// Quotient projection and section, per subspace (dim-major order).
    pub quotients: Vec<(Matrix, Matrix)>,
}

impl AmbientTables {
    fn new(field: &Arc<Field>, n: usize) -> Result<AmbientTables> {
        let mut by_dim = Vec::with_capacity(n + 1);
        for m in 0..=n {
            by_dim.push(enum_subspaces(field, n, m)?);
        }
        let all: Vec<Subspace> = by_dim.iter().flatten().cloned().collect();
        let mut index = HashMap::new();
        for (m, group) in by_dim.iter().enumerate() {
            for (i, s) in group.iter().enumerate() {
                index.insert(s.clone(), (m, i));
            }
        }
        let mut charts = Vec::with_capacity(all.len());
        let mut quotients = Vec::with_capacity(all.len());
        for s in &all {
            let u = s.completion();
            let uinv = u.inverse().expect("completion invertible");
            charts.push((u, uinv));
            let (_, proj, section) = quotient(field, n, s);
            quotients.push((proj, section));
        }
        Ok(AmbientTables { by_dim, all, index, charts, quotients })
    }

    pub fn flat_index(&self, s: &Subspace) -> usize {
        let (m, i) = self.index[s];
        self.by_dim[..m].iter().map(|g| g.len()).sum::<usize>() + i
    }
}

/// Immutable per-field context with precomputed tables for all ambient
/// dimensions up to `namb`.
pub struct Ctx {
    pub field: Arc<Field>,
    pub namb: usize,
    per_n: Vec<AmbientTables>,
}

impl Ctx {
    pub fn new(field: Arc<Field>, namb: usize) -> Result<Arc<Ctx>> {
        let mut per_n = Vec::with_capacity(namb + 1);
        for n in 0..=namb {
            per_n.push(AmbientTables::new(&field, n)?);
        }
        Ok(Arc::new(Ctx { field, namb, per_n }))
    }

    pub fn tables(&self, n: usize) -> &AmbientTables {
        &self.per_n[n]
    }

    pub fn subspaces(&self, n: usize, m: usize) -> &[Subspace] {
        &self.per_n[n].by_dim[m]
    }

    pub fn all_subspaces(&self, n: usize) -> &[Subspace] {
        &self.per_n[n].all
    }

    /// `(u_W, u_W^{-1})` for the fixed chart at `W`.
    pub fn chart(&self, w: &Subspace) -> &(Matrix, Matrix) {
        let t = self.tables(w.ambient);
        &t.charts[t.flat_index(w)]
    }

    /// Quotient projection/section pair for `F_q^n / W` in the fixed chart.
    pub fn quot(&self, w: &Subspace) -> &(Matrix, Matrix) {
        let t = self.tables(w.ambient);
        &t.quotients[t.flat_index(w)]
    }

    /// Transports an ambient matrix `M` with `M(W) ⊆ W'` (or `= W'`) to
    /// the skeletal morphism `(n, E_w) -> (n', E_{w'})`:
    /// `u_W * M * u_{W'}^{-1}`.
    pub fn gr_transport(&self, m: &Matrix, w_src: &Subspace, w_tgt: &Subspace) -> Matrix {
        let (u_src, _) = self.chart(w_src);
        let (_, uinv_tgt) = self.chart(w_tgt);
        u_src.mul(m).mul(uinv_tgt)
    }

    /// Embeds a subspace of F_q^m into F_q^n (n >= m) along the first
    /// coordinates.
    pub fn embed_subspace(&self, s: &Subspace, n: usize) -> Subspace {
        assert!(s.ambient <= n);
        let f = &self.field;
        let rows: Vec<Vec<u8>> = (0..s.dim)
            .map(|i| {
                let mut v = s.basis.row(i).to_vec();
                v.resize(n, 0);
                v
            })
            .collect();
        Subspace::from_vectors(f, n, &rows).expect("embedding keeps independence")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_are_consistent() {
        let field = Field::new(2, 1).unwrap();
        let ctx = Ctx::new(field.clone(), 3).unwrap();
        for n in 0..=3usize {
            for s in ctx.all_subspaces(n) {
                let (u, uinv) = ctx.chart(s);
                assert_eq!(u.mul(uinv), Matrix::identity(&field, n));
                // first dim rows of u are the basis
                for i in 0..s.dim {
                    assert_eq!(u.row(i), s.basis.row(i));
                }
                // E_w * u = W
                let e = Subspace::coordinate(&field, n, s.dim);
                assert_eq!(e.image(u), *s);
            }
        }
    }

    #[test]
    fn transport_composes() {
        let field = Field::new(2, 1).unwrap();
        let ctx = Ctx::new(field.clone(), 2).unwrap();
        // two composable ambient maps carrying lines to lines
        let all1 = ctx.subspaces(2, 1).to_vec();
        for w0 in &all1 {
            for m1_idx in 0..16u64 {
                let m1 = Matrix::from_index(&field, 2, 2, m1_idx);
                let w1 = w0.image(&m1);
                if w1.dim != 1 {
                    continue;
                }
                for m2_idx in 0..16u64 {
                    let m2 = Matrix::from_index(&field, 2, 2, m2_idx);
                    let w2 = w1.image(&m2);
                    if w2.dim != 1 {
                        continue;
                    }
                    let t12 = ctx.gr_transport(&m1, w0, &w1);
                    let t23 = ctx.gr_transport(&m2, &w1, &w2);
                    let t13 = ctx.gr_transport(&m1.mul(&m2), w0, &w2);
                    assert_eq!(t12.mul(&t23), t13);
                }
            }
        }
    }
}
