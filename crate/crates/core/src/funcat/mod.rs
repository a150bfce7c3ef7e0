//! The finite-functor engine: explicit functors on a truncated site,
//! natural transformations, and the pointwise abelian structure.
//!
//! A [`FiniteFunctor`] stores one dimension per site object and one
//! matrix per site morphism (row convention: `F(g.f) = F(f) * F(g)`).
//! Truncation honesty is tracked per object through the `valid` mask:
//! an operation that consumes range (a shift, a relative embedding)
//! clears the mask wherever the needed source object falls outside the
//! site, and all comparisons run on the intersection of masks.

#[cfg(test)]
mod tests;

mod abelian;
mod ops;
mod lattice;

pub use abelian::*;
pub use ops::*;
pub use lattice::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::sites::{Mor, Site};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

pub type FF = Arc<FiniteFunctor>;

pub struct FiniteFunctor {
    pub site: Arc<Site>,
    pub name: String,
    pub dims: Vec<usize>,
    /// One matrix per morphism, indexed by [`Site::flat`].
    pub action: Vec<Matrix>,
    /// Objects at which the stored values are faithful.
    pub valid: Vec<bool>,
}

impl fmt::Debug for FiniteFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name, self.dims)
    }
}

impl FiniteFunctor {
    pub fn act(&self, m: Mor) -> &Matrix {
        &self.action[self.site.flat(m)]
    }

    pub fn dim(&self, obj: usize) -> usize {
        self.dims[obj]
    }

    pub fn total_dim(&self) -> usize {
        self.dims
            .iter()
            .zip(&self.valid)
            .filter(|(_, &v)| v)
            .map(|(d, _)| d)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().zip(&self.valid).all(|(&d, &v)| !v || d == 0)
    }

    /// Objects valid in both functors.
    pub fn common_valid(&self, other: &FiniteFunctor) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|&i| self.valid[i] && other.valid[i])
            .collect()
    }

    pub fn same_dims(&self, other: &FiniteFunctor) -> bool {
        self.common_valid(other)
            .iter()
            .all(|&i| self.dims[i] == other.dims[i])
    }

    /// Exhaustive functoriality check: identities act as identities and
    /// every composable pair of morphisms between valid objects is
    /// compatible. Returns the first offending pair on failure.
    pub fn check_functoriality(&self) -> Result<()> {
        let site = &self.site;
        for (i, &v) in self.valid.iter().enumerate() {
            if !v {
                continue;
            }
            let idm = site.identity(i);
            if *self.act(idm) != Matrix::identity(&site.ctx.field, self.dims[i]) {
                return Err(Error::NonFunctorialData(format!(
                    "identity at object {i} does not act as identity in {}",
                    self.name
                )));
            }
        }
        for f in site.morphisms() {
            if !self.valid[f.src] || !self.valid[f.tgt] {
                continue;
            }
            for g in site.morphisms() {
                if g.src != f.tgt || !self.valid[g.tgt] {
                    continue;
                }
                let gf = site.compose(g, f)?;
                if self.valid[gf.src] && self.valid[gf.tgt]
                    && *self.act(gf) != self.act(f).mul(self.act(g))
                {
                    return Err(Error::NonFunctorialData(format!(
                        "composition failure in {} at {:?} then {:?}",
                        self.name, f, g
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rename(self: &Arc<Self>, name: &str) -> FF {
        Arc::new(FiniteFunctor {
            site: self.site.clone(),
            name: name.to_string(),
            dims: self.dims.clone(),
            action: self.action.clone(),
            valid: self.valid.clone(),
        })
    }

    /// Serializes the functor description (dims plus sparse actions).
    pub fn describe(&self) -> serde_json::Value {
        let site = &self.site;
        let mut actions = Vec::new();
        for m in site.morphisms() {
            let mat = self.act(m);
            if !mat.is_zero() && mat.rows > 0 && mat.cols > 0 {
                actions.push(serde_json::json!({
                    "src": m.src, "tgt": m.tgt, "k": m.k,
                    "matrix": mat.data,
                }));
            }
        }
        serde_json::json!({
            "name": self.name,
            "q": site.ctx.field.q,
            "nmax": site.nmax,
            "dims": self.dims,
            "valid": self.valid,
            "actions": actions,
        })
    }
}

/// Builds a functor with every value the zero space.
pub fn zero_functor(site: &Arc<Site>) -> FF {
    let f = &site.ctx.field;
    let dims = vec![0usize; site.objects.len()];
    let mut action = Vec::with_capacity(site.total_mors);
    for m in site.morphisms() {
        let _ = m;
        action.push(Matrix::zero(f, 0, 0));
    }
    Arc::new(FiniteFunctor {
        site: site.clone(),
        name: "0".into(),
        dims,
        action,
        valid: vec![true; site.objects.len()],
    })
}

/// The constant functor with value k^d.
pub fn constant(site: &Arc<Site>, d: usize) -> FF {
    let f = &site.ctx.field;
    let dims = vec![d; site.objects.len()];
    let action = site.morphisms().map(|_| Matrix::identity(f, d)).collect();
    Arc::new(FiniteFunctor {
        site: site.clone(),
        name: if d == 1 { "k".into() } else { format!("k^{d}") },
        dims,
        action,
        valid: vec![true; site.objects.len()],
    })
}

/// The standard projective `P_E = k[hom(E, -)]`, with basis labelled by
/// the enumerated hom-set and action by post-composition.
pub fn std_projective(site: &Arc<Site>, e: usize) -> FF {
    let field = &site.ctx.field;
    let dims: Vec<usize> = (0..site.objects.len()).map(|x| site.hom(e, x).len()).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let mut m = Matrix::zero(field, dims[f.src], dims[f.tgt]);
        for k in 0..dims[f.src] {
            let h = Mor { src: e, tgt: f.src, k };
            let fh = site.compose(f, h).expect("post-composition stays in the site");
            m.set(k, fh.k, 1);
        }
        action.push(m);
    }
    Arc::new(FiniteFunctor {
        site: site.clone(),
        name: format!("P[{:?}]", site.objects[e]),
        dims,
        action,
        valid: vec![true; site.objects.len()],
    })
}

/// The standard injective `I_E = k^{hom(-, E)}`, the dual of
/// pre-composition.
pub fn std_injective(site: &Arc<Site>, e: usize) -> FF {
    let field = &site.ctx.field;
    let dims: Vec<usize> = (0..site.objects.len()).map(|x| site.hom(x, e).len()).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let mut m = Matrix::zero(field, dims[f.src], dims[f.tgt]);
        for k in 0..dims[f.tgt] {
            let h = Mor { src: f.tgt, tgt: e, k };
            let hf = site.compose(h, f).expect("pre-composition stays in the site");
            m.set(hf.k, k, 1);
        }
        action.push(m);
    }
    Arc::new(FiniteFunctor {
        site: site.clone(),
        name: format!("I[{:?}]", site.objects[e]),
        dims,
        action,
        valid: vec![true; site.objects.len()],
    })
}

/// A finite set-valued functor given by element counts and the map each
/// morphism induces on element indices.
pub struct SetFunctor {
    pub counts: Vec<usize>,
    /// Per flat morphism index: image element index for each source
    /// element.
    pub maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn validate(&self, site: &Site) -> Result<()> {
        for (i, _) in site.objects.iter().enumerate() {
            let id = site.identity(i);
            let m = &self.maps[site.flat(id)];
            if m.iter().enumerate().any(|(a, &b)| a != b) {
                return Err(Error::NonFunctorialData("identity must act trivially".into()));
            }
        }
        for f in site.morphisms() {
            for g in site.morphisms() {
                if g.src != f.tgt {
                    continue;
                }
                let gf = site.compose(g, f)?;
                let mf = &self.maps[site.flat(f)];
                let mg = &self.maps[site.flat(g)];
                let mgf = &self.maps[site.flat(gf)];
                for a in 0..self.counts[f.src] {
                    if mgf[a] != mg[mf[a]] {
                        return Err(Error::NonFunctorialData(format!(
                            "set-level composition failure at {f:?}, {g:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Free functor on a set-valued functor (linearization).
pub fn linearize(site: &Arc<Site>, t: &SetFunctor, name: &str) -> Result<FF> {
    t.validate(site)?;
    let field = &site.ctx.field;
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let map = &t.maps[site.flat(f)];
        let mut m = Matrix::zero(field, t.counts[f.src], t.counts[f.tgt]);
        for (a, &b) in map.iter().enumerate() {
            m.set(a, b, 1);
        }
        action.push(m);
    }
    Ok(Arc::new(FiniteFunctor {
        site: site.clone(),
        name: name.to_string(),
        dims: t.counts.clone(),
        action,
        valid: vec![true; site.objects.len()],
    }))
}

/// The tautological functor `V -> V` on an ambient-map site (the action
/// of a morphism is its own ambient matrix). The degree-one simple over
/// prime fields.
pub fn tautological(site: &Arc<Site>) -> FF {
    let dims: Vec<usize> = site.objects.iter().map(|o| o.ambient()).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let mat = site.matrix(f);
        // ambient block only (for Pair sites the Vect part)
        let a = site.objects[f.src].ambient();
        let b = site.objects[f.tgt].ambient();
        action.push(mat.submatrix(0..a, 0..b));
    }
    Arc::new(FiniteFunctor {
        site: site.clone(),
        name: "Id".into(),
        dims,
        action,
        valid: vec![true; site.objects.len()],
    })
}

/// Direct sum of functors on one site.
pub fn direct_sum(parts: &[FF]) -> FF {
    assert!(!parts.is_empty());
    let site = parts[0].site.clone();
    let field = &site.ctx.field;
    let dims: Vec<usize> =
        (0..site.objects.len()).map(|x| parts.iter().map(|p| p.dims[x]).sum()).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let mut m = Matrix::zero(field, dims[f.src], dims[f.tgt]);
        let mut ro = 0;
        let mut co = 0;
        for p in parts {
            let blk = p.act(f);
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.set(ro + i, co + j, blk.at(i, j));
                }
            }
            ro += p.dims[f.src];
            co += p.dims[f.tgt];
        }
        action.push(m);
    }
    let valid = (0..site.objects.len())
        .map(|x| parts.iter().all(|p| p.valid[x]))
        .collect();
    Arc::new(FiniteFunctor {
        site,
        name: format!("({})", parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join("⊕")),
        dims,
        action,
        valid,
    })
}

/// Pointwise tensor product.
pub fn tensor(a: &FF, b: &FF) -> Result<FF> {
    if !Arc::ptr_eq(&a.site, &b.site) {
        return Err(Error::SiteMismatch(format!("{} ⊗ {}", a.name, b.name)));
    }
    let site = a.site.clone();
    let dims: Vec<usize> = (0..site.objects.len()).map(|x| a.dims[x] * b.dims[x]).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        action.push(a.act(f).kronecker(b.act(f)));
    }
    let valid = (0..site.objects.len()).map(|x| a.valid[x] && b.valid[x]).collect();
    Ok(Arc::new(FiniteFunctor {
        site,
        name: format!("({}⊗{})", a.name, b.name),
        dims,
        action,
        valid,
    }))
}

/// Generic builder for functors whose values are direct sums indexed by
/// enumerable labels (subspaces, pairs of subspaces, ...).
///
/// `summands(obj)` lists the labels with their dimensions; `component(f,
/// label)` returns the target summands hit by the given source summand
/// with their block matrices (usually zero or one). Target labels must
/// be among those listed at the target object.
pub fn build_block_functor<L, FS, FC, FV>(
    site: &Arc<Site>,
    name: &str,
    summands: FS,
    component: FC,
    valid: FV,
) -> FF
where
    L: Clone + Eq + Hash,
    FS: Fn(usize) -> Vec<(L, usize)>,
    FC: Fn(Mor, &L) -> Vec<(L, Matrix)>,
    FV: Fn(usize) -> bool,
{
    let field = &site.ctx.field;
    let per_obj: Vec<Vec<(L, usize)>> = (0..site.objects.len()).map(&summands).collect();
    let offsets: Vec<HashMap<L, (usize, usize)>> = per_obj
        .iter()
        .map(|list| {
            let mut m = HashMap::new();
            let mut off = 0;
            for (l, d) in list {
                m.insert(l.clone(), (off, *d));
                off += d;
            }
            m
        })
        .collect();
    let dims: Vec<usize> = per_obj.iter().map(|l| l.iter().map(|(_, d)| d).sum()).collect();
    let mut action = Vec::with_capacity(site.total_mors);
    for f in site.morphisms() {
        let mut m = Matrix::zero(field, dims[f.src], dims[f.tgt]);
        let mut off_src = 0usize;
        for (l, d) in &per_obj[f.src] {
            for (l2, blk) in component(f, l) {
                let (off_tgt, d2) = offsets[f.tgt][&l2];
                assert_eq!((blk.rows, blk.cols), (*d, d2), "component block shape");
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        m.set(off_src + i, off_tgt + j, blk.at(i, j));
                    }
                }
            }
            off_src += d;
        }
        action.push(m);
    }
    let valid = (0..site.objects.len()).map(valid).collect();
    Arc::new(FiniteFunctor {
        site: site.clone(),
        name: name.to_string(),
        dims,
        action,
        valid,
    })
}

/// A natural transformation between functors on one site, stored as one
/// component matrix per object.
#[derive(Clone)]
pub struct NatTrans {
    pub src: FF,
    pub tgt: FF,
    pub comps: Vec<Matrix>,
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src.name, self.tgt.name)
    }
}

impl NatTrans {
    pub fn new(src: &FF, tgt: &FF, comps: Vec<Matrix>) -> NatTrans {
        NatTrans { src: src.clone(), tgt: tgt.clone(), comps }
    }

    pub fn identity(f: &FF) -> NatTrans {
        let field = &f.site.ctx.field;
        let comps = f.dims.iter().map(|&d| Matrix::identity(field, d)).collect();
        NatTrans::new(f, f, comps)
    }

    pub fn zero(src: &FF, tgt: &FF) -> NatTrans {
        let field = &src.site.ctx.field;
        let comps = (0..src.dims.len())
            .map(|x| Matrix::zero(field, src.dims[x], tgt.dims[x]))
            .collect();
        NatTrans::new(src, tgt, comps)
    }

    /// Exhaustive naturality sweep over all morphisms between commonly
    /// valid objects.
    pub fn check_natural(&self) -> Result<()> {
        let site = &self.src.site;
        for f in site.morphisms() {
            if !(self.src.valid[f.src]
                && self.src.valid[f.tgt]
                && self.tgt.valid[f.src]
                && self.tgt.valid[f.tgt])
            {
                continue;
            }
            let lhs = self.comps[f.src].mul(self.tgt.act(f));
            let rhs = self.src.act(f).mul(&self.comps[f.tgt]);
            if lhs != rhs {
                return Err(Error::NotNatural(format!(
                    "{} -> {} at {:?}",
                    self.src.name, self.tgt.name, f
                )));
            }
        }
        Ok(())
    }

    /// Natural isomorphism: all components square and invertible at
    /// commonly valid objects, plus the naturality sweep.
    pub fn is_iso(&self) -> bool {
        if self.check_natural().is_err() {
            return false;
        }
        self.src.common_valid(&self.tgt).iter().all(|&x| {
            let c = &self.comps[x];
            c.rows == c.cols && c.rank() == c.rows
        })
    }

    pub fn compose(&self, then: &NatTrans) -> NatTrans {
        let comps = self
            .comps
            .iter()
            .zip(&then.comps)
            .map(|(a, b)| a.mul(b))
            .collect();
        NatTrans::new(&self.src, &then.tgt, comps)
    }

    pub fn add(&self, other: &NatTrans) -> NatTrans {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        NatTrans::new(&self.src, &self.tgt, comps)
    }

    pub fn sub(&self, other: &NatTrans) -> NatTrans {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.sub(b))
            .collect();
        NatTrans::new(&self.src, &self.tgt, comps)
    }

    pub fn scale(&self, c: u8) -> NatTrans {
        let comps = self.comps.iter().map(|m| m.scale(c)).collect();
        NatTrans::new(&self.src, &self.tgt, comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    /// Flattened component entries at valid objects, for linear algebra
    /// over transformation spaces.
    pub fn flatten(&self, objs: &[usize]) -> Vec<u8> {
        let mut v = Vec::new();
        for &x in objs {
            v.extend_from_slice(&self.comps[x].data);
        }
        v
    }
}
