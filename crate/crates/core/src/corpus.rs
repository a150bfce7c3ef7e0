//! A shared bundle of canonical sites plus the fixed corpus of small
//! functors every verification sweep draws from. Sites are built lazily
//! and cached so functors constructed through one `World` can interact.

use crate::ctx::Ctx;
use crate::error::Result;
use crate::funcat::{self, FF};
use crate::gfq::Field;
use crate::linalg::Subspace;
use crate::sites::{DimSet, Obj, Site, SiteKind};
use std::sync::{Arc, OnceLock};

pub struct World {
    pub ctx: Arc<Ctx>,
    pub nmax: usize,
    vect: OnceLock<Arc<Site>>,
    surj: OnceLock<Arc<Site>>,
    inj: OnceLock<Arc<Site>>,
    gr: OnceLock<Arc<Site>>,
    gr_tilde: OnceLock<Arc<Site>>,
    bigr: OnceLock<Arc<Site>>,
    pair: OnceLock<Arc<Site>>,
}

impl World {
    pub fn new(p: u8, d: u8, nmax: usize) -> Result<Arc<World>> {
        let field = Field::new(p, d)?;
        let ctx = Ctx::new(field, nmax)?;
        Ok(Arc::new(World {
            ctx,
            nmax,
            vect: OnceLock::new(),
            surj: OnceLock::new(),
            inj: OnceLock::new(),
            gr: OnceLock::new(),
            gr_tilde: OnceLock::new(),
            bigr: OnceLock::new(),
            pair: OnceLock::new(),
        }))
    }

    pub fn q(&self) -> u8 {
        self.ctx.field.q
    }

    fn site(&self, slot: &OnceLock<Arc<Site>>, kind: SiteKind) -> Arc<Site> {
        slot.get_or_init(|| Site::new(&self.ctx, kind, self.nmax).expect("site builds"))
            .clone()
    }

    pub fn vect(&self) -> Arc<Site> {
        self.site(&self.vect, SiteKind::Vect)
    }
    pub fn surj(&self) -> Arc<Site> {
        self.site(&self.surj, SiteKind::Surj)
    }
    pub fn inj(&self) -> Arc<Site> {
        self.site(&self.inj, SiteKind::Inj)
    }
    pub fn gr(&self) -> Arc<Site> {
        self.site(&self.gr, SiteKind::Gr(DimSet::all_up_to(self.nmax)))
    }
    pub fn gr_tilde(&self) -> Arc<Site> {
        self.site(&self.gr_tilde, SiteKind::GrTilde(DimSet::all_up_to(self.nmax)))
    }
    pub fn bigr(&self) -> Arc<Site> {
        self.site(&self.bigr, SiteKind::BiGr)
    }
    pub fn pair(&self) -> Arc<Site> {
        self.site(&self.pair, SiteKind::Pair(DimSet::all_up_to(self.nmax)))
    }

    /// A Gr site with restricted base dimensions (not cached).
    pub fn gr_with(&self, dims: DimSet) -> Result<Arc<Site>> {
        Site::new(&self.ctx, SiteKind::Gr(dims), self.nmax)
    }
    pub fn pair_with(&self, dims: DimSet) -> Result<Arc<Site>> {
        Site::new(&self.ctx, SiteKind::Pair(dims), self.nmax)
    }

    /// The subspace linearization `k[Gr]` on the Vect site: basis given
    /// by the canonical subspaces, action `[W] -> [f(W)]`.
    pub fn k_gr(&self) -> FF {
        self.k_gr_le(self.nmax)
    }

    /// `k[Gr_{<=j}]`: span of the classes of subspaces of dimension at
    /// most j.
    pub fn k_gr_le(&self, j: usize) -> FF {
        let site = self.vect();
        let ctx = &self.ctx;
        let counts: Vec<usize> = site
            .objects
            .iter()
            .map(|o| ctx.all_subspaces(o.ambient()).iter().filter(|s| s.dim <= j).count())
            .collect();
        let spaces: Vec<Vec<Subspace>> = site
            .objects
            .iter()
            .map(|o| {
                ctx.all_subspaces(o.ambient())
                    .iter()
                    .filter(|s| s.dim <= j)
                    .cloned()
                    .collect()
            })
            .collect();
        let mut maps = Vec::with_capacity(site.total_mors);
        for m in site.morphisms() {
            let mat = site.matrix(m);
            let map: Vec<usize> = spaces[m.src]
                .iter()
                .map(|s| {
                    let img = s.image(mat);
                    spaces[m.tgt].iter().position(|t| *t == img).expect("image has dim <= j")
                })
                .collect();
            maps.push(map);
        }
        let t = funcat::SetFunctor { counts, maps };
        let name = if j >= self.nmax { "k[Gr]".to_string() } else { format!("k[Gr≤{j}]") };
        funcat::linearize(&site, &t, &name).expect("subspace functor is functorial")
    }

    /// The augmentation `k[Gr_{<=j}] -> k` (all basis classes to 1).
    pub fn augmentation(&self, kgr: &FF) -> funcat::NatTrans {
        let one = funcat::constant(&self.vect(), 1);
        let field = &self.ctx.field;
        let comps: Vec<crate::linalg::Matrix> = kgr
            .dims
            .iter()
            .map(|&d| {
                let mut m = crate::linalg::Matrix::zero(field, d, 1);
                for i in 0..d {
                    m.set(i, 0, 1);
                }
                m
            })
            .collect();
        funcat::NatTrans::new(kgr, &one, comps)
    }

    /// The reduced part of `k[Gr_{<=j}]`: the kernel of the
    /// augmentation (spanned by the differences `[W] - [0]`).
    pub fn k_gr_bar(&self, j: usize) -> FF {
        let kgr = self.k_gr_le(j);
        let (ker, _) = funcat::kernel(&self.augmentation(&kgr));
        ker.rename(&format!("k̄[Gr≤{j}]"))
    }

    /// Standard projective of the Vect site at E_n.
    pub fn p_vect(&self, n: usize) -> FF {
        funcat::std_projective(&self.vect(), n)
    }
    pub fn i_vect(&self, n: usize) -> FF {
        funcat::std_injective(&self.vect(), n)
    }

    /// The reduced projective: complement of the weight-0 summand of
    /// P_{E_n}.
    pub fn p_bar(&self, n: usize) -> FF {
        let p = self.p_vect(n);
        let parts = funcat::scalar_decomposition(&p).expect("Vect site splits");
        let nonzero: Vec<FF> = parts
            .into_iter()
            .filter(|(w, _, _)| *w > 0)
            .map(|(_, f, _)| f)
            .collect();
        funcat::direct_sum(&nonzero).rename(&format!("P̄[E{n}]"))
    }

    /// The weight-(q-1) summand of P_{E_1} (the reduced projective
    /// indexed by the top scalar weight).
    pub fn p_weight(&self, n: usize, w: usize) -> FF {
        let p = self.p_vect(n);
        let parts = funcat::scalar_decomposition(&p).expect("Vect site splits");
        parts
            .into_iter()
            .find(|(i, _, _)| *i == w)
            .map(|(_, f, _)| f)
            .expect("weight present")
    }

    /// `Is_n` on the Surj site: k at E_n (trivial action), zero
    /// elsewhere.
    pub fn is_n(&self, n: usize) -> FF {
        self.surj_point(n, "Is")
    }

    /// `k^{>= i}` on the Surj site: the image of the constant functor
    /// supported on dimensions >= i.
    pub fn k_ge(&self, i: usize) -> FF {
        let site = self.surj();
        let field = &self.ctx.field;
        let dims: Vec<usize> = site.objects.iter().map(|o| usize::from(o.ambient() >= i)).collect();
        let mut action = Vec::with_capacity(site.total_mors);
        for m in site.morphisms() {
            let d = (dims[m.src], dims[m.tgt]);
            let mat = if d == (1, 1) {
                crate::linalg::Matrix::identity(field, 1)
            } else {
                crate::linalg::Matrix::zero(field, d.0, d.1)
            };
            action.push(mat);
        }
        Arc::new(funcat::FiniteFunctor {
            site,
            name: format!("k≥{i}"),
            dims,
            action,
            valid: vec![true; self.nmax + 1],
        })
    }

    fn surj_point(&self, n: usize, tag: &str) -> FF {
        let site = self.surj();
        let field = &self.ctx.field;
        let dims: Vec<usize> = site.objects.iter().map(|o| usize::from(o.ambient() == n)).collect();
        let mut action = Vec::with_capacity(site.total_mors);
        for m in site.morphisms() {
            let d = (dims[m.src], dims[m.tgt]);
            let mat = if d == (1, 1) && m.src == m.tgt {
                crate::linalg::Matrix::identity(field, 1)
            } else {
                crate::linalg::Matrix::zero(field, d.0, d.1)
            };
            action.push(mat);
        }
        Arc::new(funcat::FiniteFunctor {
            site,
            name: format!("{tag}_{n}"),
            dims,
            action,
            valid: vec![true; self.nmax + 1],
        })
    }

    /// Object index helpers.
    pub fn gr_obj(&self, n: usize, m: usize) -> usize {
        self.gr().obj(Obj::with_base(n, m)).expect("object in range")
    }
    pub fn vect_obj(&self, n: usize) -> usize {
        self.vect().obj(Obj::plain(n)).expect("object in range")
    }
}

/// The fixed corpus of small functors on the Gr site used by the
/// catalog sweeps: constants, the total tensor unit, standard
/// projectives/injectives, and images of the embeddings.
pub fn gr_corpus(w: &Arc<World>) -> Vec<FF> {
    use crate::fundops::catalog;
    let gr = w.gr();
    vec![
        funcat::constant(&gr, 1),
        catalog::rho_unit(w),
        funcat::std_projective(&gr, w.gr_obj(1, 1)),
        funcat::std_injective(&gr, w.gr_obj(1, 1)),
        catalog::iota(w, &w.p_bar(1)),
        catalog::kappa(w, &w.p_bar(1)),
        catalog::rho(w, &w.is_n(1)),
    ]
}

/// Small functors on the Vect site used by hom/Ext sweeps.
pub fn vect_corpus(w: &Arc<World>) -> Vec<FF> {
    let v = w.vect();
    vec![
        funcat::constant(&v, 1),
        funcat::tautological(&v),
        w.p_vect(1),
        w.p_bar(1),
        w.i_vect(1),
        w.k_gr(),
    ]
}
