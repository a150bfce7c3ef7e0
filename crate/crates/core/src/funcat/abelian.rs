//! Pointwise abelian structure (kernels, cokernels, images) and the
//! naturality solver behind hom-spaces.

use super::{FiniteFunctor, NatTrans, FF};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use std::sync::Arc;

/// Kernel of a natural transformation, with the inclusion into the
/// source. Kernel bases are kept in RREF so induced actions can be read
/// off by pivot-coordinate extraction.
pub fn kernel(t: &NatTrans) -> (FF, NatTrans) {
    let site = t.src.site.clone();
    let field = &site.ctx.field;
    let bases: Vec<Matrix> = t.comps.iter().map(|c| c.kernel()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.rows).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let kf = bases[f.src].mul(t.src.act(f));
        // coordinates in the RREF kernel basis at the target
        let sub = Subspace::from_matrix_rows(&bases[f.tgt]);
        let mut m = Matrix::zero(field, dims[f.src], dims[f.tgt]);
        for i in 0..kf.rows {
            let coords: Vec<u8> = sub.pivots.iter().map(|&p| kf.at(i, p)).collect();
            debug_assert_eq!(bases[f.tgt].apply_coords(&coords), kf.row(i).to_vec());
            for (j, &c) in coords.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        action.push(m);
    }
    let ker = Arc::new(FiniteFunctor {
        site: site.clone(),
        name: format!("ker({}→{})", t.src.name, t.tgt.name),
        dims,
        action,
        valid: t.src.valid.iter().zip(&t.tgt.valid).map(|(&a, &b)| a && b).collect(),
    });
    let incl = NatTrans::new(&ker, &t.src, bases);
    (ker, incl)
}

/// Cokernel with the projection from the target, in the canonical
/// quotient chart of the image subspace.
pub fn cokernel(t: &NatTrans) -> (FF, NatTrans) {
    let site = t.src.site.clone();
    let field = &site.ctx.field;
    let images: Vec<Subspace> = (0..t.comps.len())
        .map(|x| Subspace::from_matrix_rows(&t.comps[x]))
        .collect();
    let mut projs = Vec::with_capacity(images.len());
    let mut sections = Vec::with_capacity(images.len());
    for im in &images {
        let (_, p, s) = crate::linalg::quotient(field, im.ambient, im);
        projs.push(p);
        sections.push(s);
    }
    let dims: Vec<usize> = images.iter().map(|im| im.ambient - im.dim).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        action.push(sections[f.src].mul(t.tgt.act(f)).mul(&projs[f.tgt]));
    }
    let coker = Arc::new(FiniteFunctor {
        site: site.clone(),
        name: format!("coker({}→{})", t.src.name, t.tgt.name),
        dims,
        action,
        valid: t.src.valid.iter().zip(&t.tgt.valid).map(|(&a, &b)| a && b).collect(),
    });
    let proj = NatTrans::new(&t.tgt, &coker, projs);
    (coker, proj)
}

/// Image, as a subfunctor of the target with its inclusion.
pub fn image(t: &NatTrans) -> (FF, NatTrans) {
    let site = t.src.site.clone();
    let field = &site.ctx.field;
    let bases: Vec<Matrix> = t
        .comps
        .iter()
        .map(|c| {
            let s = Subspace::from_matrix_rows(c);
            s.basis
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.rows).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let mapped = bases[f.src].mul(t.tgt.act(f));
        let sub = Subspace::from_matrix_rows(&bases[f.tgt]);
        let mut m = Matrix::zero(field, dims[f.src], dims[f.tgt]);
        for i in 0..mapped.rows {
            let coords: Vec<u8> = sub.pivots.iter().map(|&p| mapped.at(i, p)).collect();
            debug_assert_eq!(bases[f.tgt].apply_coords(&coords), mapped.row(i).to_vec());
            for (j, &c) in coords.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        action.push(m);
    }
    let im = Arc::new(FiniteFunctor {
        site: site.clone(),
        name: format!("im({}→{})", t.src.name, t.tgt.name),
        dims,
        action,
        valid: t.src.valid.iter().zip(&t.tgt.valid).map(|(&a, &b)| a && b).collect(),
    });
    let incl = NatTrans::new(&im, &t.tgt, bases);
    (im, incl)
}

/// Incremental nullspace solver: collects linear constraints over F_q
/// and returns a canonical basis of the solution space. GF(2) rows are
/// bit-packed.
pub struct NullspaceSolver {
    field: Arc<crate::gfq::Field>,
    ncols: usize,
    // generic path: RREF rows with their pivot columns
    rows: Vec<(usize, Vec<u8>)>,
    // GF(2) path
    bits: Vec<(usize, Vec<u64>)>,
    packed: bool,
}

impl NullspaceSolver {
    pub fn new(field: &Arc<crate::gfq::Field>, ncols: usize) -> NullspaceSolver {
        NullspaceSolver {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            bits: Vec::new(),
            packed: field.q == 2,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn add_row(&mut self, row: &[u8]) {
        debug_assert_eq!(row.len(), self.ncols);
        if self.packed {
            let words = self.ncols.div_ceil(64);
            let mut r = vec![0u64; words];
            for (j, &v) in row.iter().enumerate() {
                if v & 1 == 1 {
                    r[j / 64] |= 1 << (j % 64);
                }
            }
            self.add_packed(r);
        } else {
            self.add_generic(row.to_vec());
        }
    }

    fn add_packed(&mut self, mut r: Vec<u64>) {
        for (p, pr) in &self.bits {
            if r[p / 64] >> (p % 64) & 1 == 1 {
                for (w, pw) in r.iter_mut().zip(pr) {
                    *w ^= pw;
                }
            }
        }
        if let Some(pivot) = first_set_bit(&r, self.ncols) {
            // eliminate the new pivot from existing rows
            for (_, pr) in self.bits.iter_mut() {
                if pr[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    for (w, nw) in pr.iter_mut().zip(&r) {
                        *w ^= nw;
                    }
                }
            }
            self.bits.push((pivot, r));
            self.bits.sort_by_key(|(p, _)| *p);
        }
    }

    fn add_generic(&mut self, mut r: Vec<u8>) {
        let f = self.field.clone();
        for (p, pr) in &self.rows {
            let c = r[*p];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(pr) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        if let Some(pivot) = r.iter().position(|&x| x != 0) {
            let inv = f.inv(r[pivot]).unwrap();
            for x in r.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for (_, pr) in self.rows.iter_mut() {
                let c = pr[pivot];
                if c != 0 {
                    for (x, y) in pr.iter_mut().zip(&r) {
                        *x = f.sub(*x, f.mul(c, *y));
                    }
                }
            }
            self.rows.push((pivot, r));
            self.rows.sort_by_key(|(p, _)| *p);
        }
    }

    pub fn rank(&self) -> usize {
        if self.packed {
            self.bits.len()
        } else {
            self.rows.len()
        }
    }

    /// Solution-space basis plus the free column indices; restricted to
    /// the free columns the basis is the identity, so coordinates of a
    /// solution vector are read off directly.
    pub fn nullspace(&self) -> (Vec<Vec<u8>>, Vec<usize>) {
        let f = &self.field;
        let pivots: Vec<usize> = if self.packed {
            self.bits.iter().map(|(p, _)| *p).collect()
        } else {
            self.rows.iter().map(|(p, _)| *p).collect()
        };
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u8; self.ncols];
            v[fc] = 1;
            if self.packed {
                for (p, pr) in &self.bits {
                    if pr[fc / 64] >> (fc % 64) & 1 == 1 {
                        v[*p] = 1;
                    }
                }
            } else {
                for (p, pr) in &self.rows {
                    v[*p] = f.neg(pr[fc]);
                }
            }
            basis.push(v);
        }
        (basis, free)
    }
}

fn first_set_bit(r: &[u64], ncols: usize) -> Option<usize> {
    for (w, &word) in r.iter().enumerate() {
        if word != 0 {
            let b = w * 64 + word.trailing_zeros() as usize;
            if b < ncols {
                return Some(b);
            }
        }
    }
    None
}

/// Basis of the space of natural transformations F -> G, together with
/// the free-coordinate layout used to express arbitrary transformations
/// in this basis.
pub struct HomBasis {
    pub basis: Vec<NatTrans>,
    pub objs: Vec<usize>,
    pub free_cols: Vec<usize>,
    pub offsets: Vec<usize>,
    /// True unless an exact presentation certified truncation
    /// independence elsewhere.
    pub truncation_relative: bool,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a transformation in this basis (the basis is
    /// normalized so free columns carry an identity block). Returns None
    /// if the transformation is not in the span.
    pub fn coords(&self, t: &NatTrans) -> Option<Vec<u8>> {
        let flat = t.flatten(&self.objs);
        let coords: Vec<u8> = self.free_cols.iter().map(|&c| flat[c]).collect();
        // verify membership
        let field = &t.src.site.ctx.field;
        let mut recon = vec![0u8; flat.len()];
        for (b, &c) in self.basis.iter().zip(&coords) {
            if c != 0 {
                let bf = b.flatten(&self.objs);
                for (r, &x) in recon.iter_mut().zip(&bf) {
                    *r = field.add(*r, field.mul(c, x));
                }
            }
        }
        if recon == flat {
            Some(coords)
        } else {
            None
        }
    }
}

/// Solves the naturality system for transformations F -> G over the
/// composition-generating morphisms of the site, restricted to objects
/// valid in both functors.
pub fn hom_space(f: &FF, g: &FF) -> Result<HomBasis> {
    if !Arc::ptr_eq(&f.site, &g.site) {
        return Err(Error::SiteMismatch(format!("hom({}, {})", f.name, g.name)));
    }
    let site = f.site.clone();
    let field = &site.ctx.field;
    let objs = f.common_valid(g);
    let mut offsets = vec![usize::MAX; f.dims.len()];
    let mut ncols = 0usize;
    for &x in &objs {
        offsets[x] = ncols;
        ncols += f.dims[x] * g.dims[x];
    }
    let mut solver = NullspaceSolver::new(field, ncols);
    let mut row = vec![0u8; ncols];
    for m in site.generators() {
        if offsets[m.src] == usize::MAX || offsets[m.tgt] == usize::MAX {
            continue;
        }
        let a = f.act(m); // dimF(src) x dimF(tgt)
        let b = g.act(m); // dimG(src) x dimG(tgt)
        let (dfs, dft) = (f.dims[m.src], f.dims[m.tgt]);
        let (dgs, dgt) = (g.dims[m.src], g.dims[m.tgt]);
        // constraint: T_src * b - a * T_tgt = 0, entry (i, l)
        for i in 0..dfs {
            for l in 0..dgt {
                row.iter_mut().for_each(|x| *x = 0);
                let mut nonzero = false;
                for j in 0..dgs {
                    let c = b.at(j, l);
                    if c != 0 {
                        let col = offsets[m.src] + i * dgs + j;
                        row[col] = field.add(row[col], c);
                        nonzero = true;
                    }
                }
                for k in 0..dft {
                    let c = a.at(i, k);
                    if c != 0 {
                        let col = offsets[m.tgt] + k * dgt + l;
                        row[col] = field.sub(row[col], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    solver.add_row(&row);
                }
            }
        }
    }
    let (vectors, free_cols) = solver.nullspace();
    let mut basis = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut comps: Vec<Matrix> =
            (0..f.dims.len()).map(|x| Matrix::zero(field, f.dims[x], g.dims[x])).collect();
        for &x in &objs {
            let o = offsets[x];
            for i in 0..f.dims[x] {
                for j in 0..g.dims[x] {
                    comps[x].set(i, j, v[o + i * g.dims[x] + j]);
                }
            }
        }
        let t = NatTrans::new(f, g, comps);
        debug_assert!(t.check_natural().is_ok());
        basis.push(t);
    }
    Ok(HomBasis {
        basis,
        objs,
        free_cols,
        offsets,
        truncation_relative: true,
    })
}

/// Dimension of hom(F, G) (naturality solve).
pub fn hom_dim(f: &FF, g: &FF) -> Result<usize> {
    Ok(hom_space(f, g)?.dim())
}

/// Checks that a short sequence A -> B -> C is exact at B over the
/// commonly valid objects, by ranks.
pub fn exact_at(incl: &NatTrans, proj: &NatTrans) -> bool {
    // composite zero and rank(incl) + rank(proj) = dim B pointwise
    let comp = incl.compose(proj);
    if !comp.is_zero() {
        return false;
    }
    let objs: Vec<usize> = (0..incl.src.dims.len())
        .filter(|&x| {
            incl.src.valid[x] && incl.tgt.valid[x] && proj.tgt.valid[x]
        })
        .collect();
    objs.iter().all(|&x| {
        incl.comps[x].rank() + proj.comps[x].rank() == incl.tgt.dims[x]
    })
}
