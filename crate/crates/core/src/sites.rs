//! Enumerated skeletal models of the source categories, and the explicit
//! bijections between their hom-sets.
//!
//! Every site is a finite category whose objects carry coordinate bases
//! `E_m = span(e_1..e_m)` and whose hom-sets are exhaustively enumerated
//! lists of matrices. Morphisms are identified by `(source, target,
//! matrix)`; composition is matrix multiplication under the row-vector
//! convention (`(g . f).matrix = f.matrix * g.matrix`).

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::linalg::{enum_maps, MapKind, Matrix, Subspace};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A finite set of admissible base dimensions.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimSet(pub u32);

impl DimSet {
    pub fn all_up_to(n: usize) -> DimSet {
        DimSet((1u32 << (n + 1)) - 1)
    }
    pub fn single(m: usize) -> DimSet {
        DimSet(1 << m)
    }
    pub fn up_to(n: usize) -> DimSet {
        DimSet::all_up_to(n)
    }
    pub fn contains(&self, m: usize) -> bool {
        self.0 >> m & 1 == 1
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(|&m| self.contains(m))
    }
    pub fn max(&self) -> Option<usize> {
        (0..32).rev().find(|&m| self.contains(m))
    }
}

impl fmt::Debug for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// The supported site shapes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SiteKind {
    /// All linear maps between F_q^0 .. F_q^nmax.
    Vect,
    /// Surjective maps only.
    Surj,
    /// Injective maps only.
    Inj,
    /// Pairs (V, W), maps with f(W) = W' exactly; base dims restricted
    /// to the given set.
    Gr(DimSet),
    /// Pairs (V, W), maps with f(W) ⊆ W'.
    GrTilde(DimSet),
    /// Triples (V, B, W), maps with f(B) = B' and f(W) = W'.
    BiGr,
    /// Product of Vect and Surj (restricted base dims): objects (a, b),
    /// morphisms are pairs (any map, epi) stored block-diagonally with
    /// the Vect part on the first coordinates.
    Pair(DimSet),
}

impl SiteKind {
    pub fn base_dims(&self) -> Option<DimSet> {
        match self {
            SiteKind::Gr(i) | SiteKind::GrTilde(i) | SiteKind::Pair(i) => Some(*i),
            _ => None,
        }
    }
}

/// A skeletal site object. Interpretation of the fields depends on the
/// site kind: `n` is the ambient dimension (the Vect component for
/// `Pair`), `b1` the base dimension where present, `b2` the second base
/// for `BiGr`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Obj {
    pub n: u8,
    pub b1: Option<u8>,
    pub b2: Option<u8>,
}

impl Obj {
    pub fn plain(n: usize) -> Obj {
        Obj { n: n as u8, b1: None, b2: None }
    }
    pub fn with_base(n: usize, m: usize) -> Obj {
        Obj { n: n as u8, b1: Some(m as u8), b2: None }
    }
    pub fn with_bases(n: usize, b: usize, w: usize) -> Obj {
        Obj { n: n as u8, b1: Some(b as u8), b2: Some(w as u8) }
    }
    pub fn ambient(&self) -> usize {
        self.n as usize
    }
    pub fn base(&self) -> usize {
        self.b1.expect("object carries a base") as usize
    }
    /// Total matrix dimension of morphisms out of this object.
    pub fn mat_dim(&self, kind: SiteKind) -> usize {
        match kind {
            SiteKind::Pair(_) => self.n as usize + self.base(),
            _ => self.n as usize,
        }
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.b1, self.b2) {
            (None, _) => write!(f, "E{}", self.n),
            (Some(b), None) => write!(f, "(E{},E{})", self.n, b),
            (Some(b), Some(w)) => write!(f, "(E{},E{},E{})", self.n, b, w),
        }
    }
}

/// Handle to a morphism: source object index, target object index, and
/// position inside the enumerated hom-set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mor {
    pub src: usize,
    pub tgt: usize,
    pub k: usize,
}

pub struct HomSet {
    pub mats: Vec<Matrix>,
    index: HashMap<Vec<u8>, usize>,
}

impl HomSet {
    fn new(mats: Vec<Matrix>) -> HomSet {
        let index = mats.iter().enumerate().map(|(i, m)| (m.data.clone(), i)).collect();
        HomSet { mats, index }
    }
    pub fn len(&self) -> usize {
        self.mats.len()
    }
    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }
    pub fn position(&self, m: &Matrix) -> Option<usize> {
        self.index.get(&m.data).copied()
    }
}

/// An enumerated skeletal site.
pub struct Site {
    pub ctx: Arc<Ctx>,
    pub kind: SiteKind,
    pub nmax: usize,
    pub objects: Vec<Obj>,
    obj_index: HashMap<Obj, usize>,
    homs: Vec<Vec<HomSet>>,
    offsets: Vec<Vec<usize>>,
    pub total_mors: usize,
    ids: Vec<Mor>,
}

impl fmt::Debug for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Site({:?}, q={}, nmax={})", self.kind, self.ctx.field.q, self.nmax)
    }
}

impl Site {
    pub fn new(ctx: &Arc<Ctx>, kind: SiteKind, nmax: usize) -> Result<Arc<Site>> {
        if nmax > ctx.namb {
            return Err(Error::TruncationExceeded(format!(
                "site nmax {nmax} beyond context bound {}",
                ctx.namb
            )));
        }
        let objects = Self::enumerate_objects(kind, nmax);
        let obj_index: HashMap<Obj, usize> =
            objects.iter().enumerate().map(|(i, o)| (*o, i)).collect();
        let mut homs = Vec::with_capacity(objects.len());
        for &x in &objects {
            let mut row = Vec::with_capacity(objects.len());
            for &y in &objects {
                row.push(HomSet::new(Self::enumerate_hom(ctx, kind, x, y)?));
            }
            homs.push(row);
        }
        let mut offsets = vec![vec![0usize; objects.len()]; objects.len()];
        let mut total = 0usize;
        for (i, row) in homs.iter().enumerate() {
            for (j, h) in row.iter().enumerate() {
                offsets[i][j] = total;
                total += h.len();
            }
        }
        let mut site = Site {
            ctx: ctx.clone(),
            kind,
            nmax,
            objects,
            obj_index,
            homs,
            offsets,
            total_mors: total,
            ids: Vec::new(),
        };
        let ids: Vec<Mor> = (0..site.objects.len())
            .map(|i| {
                let o = site.objects[i];
                let id = Matrix::identity(&ctx.field, o.mat_dim(kind));
                let k = site.homs[i][i].position(&id).expect("identity must be admissible");
                Mor { src: i, tgt: i, k }
            })
            .collect();
        site.ids = ids;
        Ok(Arc::new(site))
    }

    fn enumerate_objects(kind: SiteKind, nmax: usize) -> Vec<Obj> {
        let mut out = Vec::new();
        match kind {
            SiteKind::Vect | SiteKind::Surj | SiteKind::Inj => {
                for n in 0..=nmax {
                    out.push(Obj::plain(n));
                }
            }
            SiteKind::Gr(i) | SiteKind::GrTilde(i) => {
                for n in 0..=nmax {
                    for m in 0..=n {
                        if i.contains(m) {
                            out.push(Obj::with_base(n, m));
                        }
                    }
                }
            }
            SiteKind::BiGr => {
                for n in 0..=nmax {
                    for b in 0..=n {
                        for w in 0..=n {
                            out.push(Obj::with_bases(n, b, w));
                        }
                    }
                }
            }
            SiteKind::Pair(i) => {
                for a in 0..=nmax {
                    for b in 0..=nmax {
                        if i.contains(b) {
                            out.push(Obj::with_base(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    fn enumerate_hom(ctx: &Arc<Ctx>, kind: SiteKind, x: Obj, y: Obj) -> Result<Vec<Matrix>> {
        let field = &ctx.field;
        match kind {
            SiteKind::Vect => enum_maps(field, x.ambient(), y.ambient(), MapKind::All),
            SiteKind::Surj => enum_maps(field, x.ambient(), y.ambient(), MapKind::Epi),
            SiteKind::Inj => enum_maps(field, x.ambient(), y.ambient(), MapKind::Mono),
            SiteKind::Gr(_) | SiteKind::GrTilde(_) => {
                let wx = Subspace::coordinate(field, x.ambient(), x.base());
                let wy = Subspace::coordinate(field, y.ambient(), y.base());
                let exact = matches!(kind, SiteKind::Gr(_));
                let all = enum_maps(field, x.ambient(), y.ambient(), MapKind::All)?;
                Ok(all
                    .into_iter()
                    .filter(|m| {
                        let img = wx.image(m);
                        if exact {
                            img == wy
                        } else {
                            wy.contains(&img).unwrap()
                        }
                    })
                    .collect())
            }
            SiteKind::BiGr => {
                let bx = Subspace::coordinate(field, x.ambient(), x.b1.unwrap() as usize);
                let wx = Subspace::coordinate(field, x.ambient(), x.b2.unwrap() as usize);
                let by = Subspace::coordinate(field, y.ambient(), y.b1.unwrap() as usize);
                let wy = Subspace::coordinate(field, y.ambient(), y.b2.unwrap() as usize);
                let all = enum_maps(field, x.ambient(), y.ambient(), MapKind::All)?;
                Ok(all
                    .into_iter()
                    .filter(|m| bx.image(m) == by && wx.image(m) == wy)
                    .collect())
            }
            SiteKind::Pair(_) => {
                let (a, b) = (x.ambient(), x.base());
                let (a2, b2) = (y.ambient(), y.base());
                let us = enum_maps(field, a, a2, MapKind::All)?;
                let es = enum_maps(field, b, b2, MapKind::Epi)?;
                let mut out = Vec::with_capacity(us.len() * es.len());
                for u in &us {
                    for e in &es {
                        out.push(u.block_diag(e));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn obj(&self, o: Obj) -> Option<usize> {
        self.obj_index.get(&o).copied()
    }

    pub fn hom(&self, src: usize, tgt: usize) -> &HomSet {
        &self.homs[src][tgt]
    }

    pub fn matrix(&self, m: Mor) -> &Matrix {
        &self.homs[m.src][m.tgt].mats[m.k]
    }

    pub fn identity(&self, obj: usize) -> Mor {
        self.ids[obj]
    }

    /// Flattened index of a morphism, for functor action storage.
    pub fn flat(&self, m: Mor) -> usize {
        self.offsets[m.src][m.tgt] + m.k
    }

    pub fn find(&self, src: usize, tgt: usize, mat: &Matrix) -> Option<Mor> {
        self.homs[src][tgt].position(mat).map(|k| Mor { src, tgt, k })
    }

    /// Composite `g . f` (first f, then g).
    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        if f.tgt != g.src {
            return Err(Error::NotComposable(format!("{:?} after {:?}", g, f)));
        }
        let mat = self.matrix(f).mul(self.matrix(g));
        self.find(f.src, g.tgt, &mat).ok_or_else(|| {
            Error::NotComposable("composite violates the site constraint".into())
        })
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.objects.len()).flat_map(move |src| {
            (0..self.objects.len()).flat_map(move |tgt| {
                (0..self.homs[src][tgt].len()).map(move |k| Mor { src, tgt, k })
            })
        })
    }

    /// A composition-generating subset of the morphisms: those whose
    /// ambient matrix is surjective or injective (every ambient map
    /// factors as an epi onto its image followed by a mono, and the
    /// factorization stays inside the site after the fixed chart).
    /// Naturality against this subset implies naturality everywhere.
    pub fn generators(&self) -> Vec<Mor> {
        self.morphisms()
            .filter(|&m| {
                let mat = self.matrix(m);
                match self.kind {
                    SiteKind::Pair(_) => {
                        let a = self.objects[m.src].ambient();
                        let a2 = self.objects[m.tgt].ambient();
                        let u = mat.submatrix(0..a, 0..a2);
                        let r = u.rank();
                        r == a || r == a2
                    }
                    _ => {
                        let r = mat.rank();
                        r == mat.rows || r == mat.cols
                    }
                }
            })
            .collect()
    }

    /// JSON-friendly census of the site.
    pub fn census(&self) -> serde_json::Value {
        let objects: Vec<String> = self.objects.iter().map(|o| format!("{o:?}")).collect();
        let mut hom_counts = Vec::new();
        for (i, row) in self.homs.iter().enumerate() {
            for (j, h) in row.iter().enumerate() {
                if !h.is_empty() {
                    hom_counts.push(serde_json::json!({
                        "src": objects[i], "tgt": objects[j], "count": h.len(),
                    }));
                }
            }
        }
        serde_json::json!({
            "kind": format!("{:?}", self.kind),
            "q": self.ctx.field.q,
            "nmax": self.nmax,
            "objects": objects,
            "total_morphisms": self.total_mors,
            "hom_sets": hom_counts,
        })
    }
}

/// Explicit bijection data: a list of (left element, right element)
/// pairs plus the checked totals on each side.
pub struct BijectionReport {
    pub left_total: usize,
    pub right_total: usize,
    pub bijective: bool,
    pub natural: bool,
    pub detail: String,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.natural && self.left_total == self.right_total
    }
}

/// The bijection `Epi(A⊕B, E) ≃ ∐_{V+W=E} Epi(A,V) × Epi(B,W)` sending
/// an epimorphism to the pair of its restrictions onto their images.
/// Checked element by element, plus naturality squares in each variable.
pub fn bijection_epi_sum(ctx: &Arc<Ctx>, a: usize, b: usize, e: usize) -> Result<BijectionReport> {
    let field = &ctx.field;
    if a + b > 8 || e > ctx.namb {
        return Err(Error::TruncationExceeded("epi-sum bijection".into()));
    }
    let ea = Subspace::coordinate(field, a + b, a);
    let eb_rows: Vec<Vec<u8>> = (0..b)
        .map(|i| {
            let mut v = vec![0u8; a + b];
            v[a + i] = 1;
            v
        })
        .collect();
    let eb = Subspace::from_vectors(field, a + b, &eb_rows)?;

    let lhs = enum_maps(field, a + b, e, MapKind::Epi)?;
    // right side: for each ordered pair (V, W) of subspaces of E with
    // V + W = E, all pairs of epis
    let mut right_total = 0usize;
    let mut seen = std::collections::HashSet::new();
    let mut bijective = true;
    for v in ctx.all_subspaces(e) {
        for w in ctx.all_subspaces(e) {
            if v.sum(w)?.dim != e {
                continue;
            }
            let epis_av = count_epis_onto(field, a, v);
            let epis_bw = count_epis_onto(field, b, w);
            right_total += epis_av * epis_bw;
        }
    }
    // forward map: f |-> (f|_A onto f(A), f|_B onto f(B)); injectivity +
    // surjectivity by counting distinct images
    for f in &lhs {
        let fa = ea.basis.mul(f); // a x e, the restriction to A
        let fb = eb.basis.mul(f);
        let v = Subspace::from_matrix_rows(&fa);
        let w = Subspace::from_matrix_rows(&fb);
        if v.sum(&w)?.dim != e {
            bijective = false;
        }
        let key = (v.serialize(), w.serialize(), fa.data.clone(), fb.data.clone());
        if !seen.insert(key) {
            bijective = false; // forward map must be injective
        }
    }
    let left_total = lhs.len();
    bijective &= left_total == right_total && seen.len() == left_total;

    // naturality in E: for u: E -> E' epi, post-composition commutes with
    // taking images; sample all epis at small sizes
    let mut natural = true;
    if e >= 1 {
        for u in enum_maps(field, e, e - 1, MapKind::Epi)? {
            for f in &lhs {
                let fu = f.mul(&u);
                let fa = ea.basis.mul(&fu);
                let fb = eb.basis.mul(&fu);
                let va = Subspace::from_matrix_rows(&ea.basis.mul(f)).image(&u);
                let wb = Subspace::from_matrix_rows(&eb.basis.mul(f)).image(&u);
                natural &= Subspace::from_matrix_rows(&fa) == va
                    && Subspace::from_matrix_rows(&fb) == wb;
            }
        }
    }
    Ok(BijectionReport {
        left_total,
        right_total,
        bijective,
        natural,
        detail: format!("Epi(E{}⊕E{}, E{})", a, b, e),
    })
}

fn count_epis_onto(field: &Arc<Field>, a: usize, v: &Subspace) -> usize {
    // epis from F^a onto an abstract space of dim v.dim
    enum_maps(field, a, v.dim, MapKind::Epi).map(|l| l.len()).unwrap_or(0)
}

use crate::gfq::Field;

/// The bijection `hom(A, A') ≃ ∐_{B'∈Gr(A')} hom_Gr((A,B),(A',B'))`,
/// partitioning linear maps by the image of the base.
pub fn bijection_hom_gr(
    ctx: &Arc<Ctx>,
    a: usize,
    b: usize,
    a2: usize,
) -> Result<BijectionReport> {
    let field = &ctx.field;
    let base = Subspace::coordinate(field, a, b);
    let lhs = enum_maps(field, a, a2, MapKind::All)?;
    let mut per_image: HashMap<Subspace, usize> = HashMap::new();
    for f in &lhs {
        *per_image.entry(base.image(f)).or_insert(0) += 1;
    }
    // right side: for each subspace B' of A', count maps with f(B) = B'
    let mut right_total = 0usize;
    let mut bijective = true;
    for b2 in ctx.all_subspaces(a2) {
        let count = lhs.iter().filter(|f| base.image(f) == *b2).count();
        right_total += count;
        if count != per_image.get(b2).copied().unwrap_or(0) {
            bijective = false;
        }
    }
    // naturality in A' under post-composition: u(f(B)) = (f.u)(B)
    let mut natural = true;
    if a2 >= 1 {
        for u in enum_maps(field, a2, a2 - 1, MapKind::All)?.iter().take(8) {
            for f in lhs.iter() {
                natural &= base.image(&f.mul(u)) == base.image(f).image(u);
            }
        }
    }
    Ok(BijectionReport {
        left_total: lhs.len(),
        right_total,
        bijective: bijective && lhs.len() == right_total,
        natural,
        detail: format!("hom(E{a},E{a2}) vs (E{a},E{b})"),
    })
}

/// The bijection
/// `hom_Gr((A⊕A', B⊕B'),(V,W)) ≃ ∐_{W1+W2=W} hom_Gr((A,B),(V,W1)) × hom_Gr((A',B'),(V,W2))`.
pub fn bijection_hom_sum_source(
    ctx: &Arc<Ctx>,
    (a, b): (usize, usize),
    (a2, b2): (usize, usize),
    (v, w): (usize, usize),
) -> Result<BijectionReport> {
    let field = &ctx.field;
    let n = a + a2;
    // bases: B in the A block, B' in the A' block
    let mut rows = Vec::new();
    for i in 0..b {
        let mut r = vec![0u8; n];
        r[i] = 1;
        rows.push(r);
    }
    for i in 0..b2 {
        let mut r = vec![0u8; n];
        r[a + i] = 1;
        rows.push(r);
    }
    let bsum = Subspace::from_vectors(field, n, &rows)?;
    let wspace = Subspace::coordinate(field, v, w);

    let lhs: Vec<Matrix> = enum_maps(field, n, v, MapKind::All)?
        .into_iter()
        .filter(|f| bsum.image(f) == wspace)
        .collect();

    let base_a = Subspace::coordinate(field, a, b);
    let base_a2 = Subspace::coordinate(field, a2, b2);
    let maps_a = enum_maps(field, a, v, MapKind::All)?;
    let maps_a2 = enum_maps(field, a2, v, MapKind::All)?;
    let mut right_total = 0usize;
    for w1 in ctx.all_subspaces(v) {
        if !wspace.contains(w1)? {
            continue;
        }
        for w2 in ctx.all_subspaces(v) {
            if !wspace.contains(w2)? || w1.sum(w2)? != wspace {
                continue;
            }
            let c1 = maps_a.iter().filter(|f| base_a.image(f) == *w1).count();
            let c2 = maps_a2.iter().filter(|f| base_a2.image(f) == *w2).count();
            right_total += c1 * c2;
        }
    }
    // forward map: restrictions to the two blocks, recording image pair;
    // bijectivity by exhaustive matching
    let mut seen = std::collections::HashSet::new();
    for f in &lhs {
        let fa = f.submatrix(0..a, 0..v);
        let fa2 = f.submatrix(a..n, 0..v);
        let w1 = base_a.image(&fa);
        let w2 = base_a2.image(&fa2);
        if w1.sum(&w2)? != wspace {
            return Err(Error::NonFunctorialData("image sum must be W".into()));
        }
        seen.insert((fa.data.clone(), fa2.data.clone(), w1.serialize(), w2.serialize()));
    }
    let bijective = seen.len() == lhs.len() && lhs.len() == right_total;
    Ok(BijectionReport {
        left_total: lhs.len(),
        right_total,
        bijective,
        natural: true,
        detail: format!("hom_Gr((E{a}⊕E{a2}, E{b}⊕E{b2}), (E{v},E{w}))"),
    })
}

/// The set Gr(B, B') of subspaces of B ⊕ B' that surject onto both
/// factors.
pub fn gr_of_pair(ctx: &Arc<Ctx>, b: usize, b2: usize) -> Result<Vec<Subspace>> {
    let field = &ctx.field;
    let n = b + b2;
    if n > ctx.namb {
        return Err(Error::TruncationExceeded(format!("Gr(B,B') with {n} > {}", ctx.namb)));
    }
    let proj1 = {
        let mut m = Matrix::zero(field, n, b);
        for i in 0..b {
            m.set(i, i, 1);
        }
        m
    };
    let proj2 = {
        let mut m = Matrix::zero(field, n, b2);
        for i in 0..b2 {
            m.set(b + i, i, 1);
        }
        m
    };
    Ok(ctx
        .all_subspaces(n)
        .iter()
        .filter(|c| {
            c.basis.mul(&proj1).rank() == b && c.basis.mul(&proj2).rank() == b2
        })
        .cloned()
        .collect())
}

/// The bijection
/// `hom_Gr((V,W),(A,B)) × hom_Gr((V,W),(A',B')) ≃ ∐_{C∈Gr(B,B')} hom_Gr((V,W),(A⊕A',C))`.
pub fn bijection_hom_product_target(
    ctx: &Arc<Ctx>,
    (v, w): (usize, usize),
    (a, b): (usize, usize),
    (a2, b2): (usize, usize),
) -> Result<BijectionReport> {
    let field = &ctx.field;
    let wspace = Subspace::coordinate(field, v, w);
    let base_a = Subspace::coordinate(field, a, b);
    let base_a2 = Subspace::coordinate(field, a2, b2);
    let lhs1: Vec<Matrix> = enum_maps(field, v, a, MapKind::All)?
        .into_iter()
        .filter(|f| wspace.image(f) == base_a)
        .collect();
    let lhs2: Vec<Matrix> = enum_maps(field, v, a2, MapKind::All)?
        .into_iter()
        .filter(|f| wspace.image(f) == base_a2)
        .collect();
    let left_total = lhs1.len() * lhs2.len();

    // right side: C runs over Gr(B,B') embedded into A ⊕ A' with B in the
    // A block and B' in the A' block
    let n = a + a2;
    let mut right_total = 0usize;
    let all_pairs: Vec<(Matrix, Matrix)> = {
        let mut out = Vec::new();
        for f1 in &lhs1 {
            for f2 in &lhs2 {
                out.push((f1.clone(), f2.clone()));
            }
        }
        out
    };
    let mut matched = 0usize;
    for c_small in gr_of_pair(ctx, b, b2)? {
        // embed: coordinates (x_1..x_b, y_1..y_{b'}) -> slots in A⊕A'
        let emb = {
            let mut m = Matrix::zero(field, b + b2, n);
            for i in 0..b {
                m.set(i, i, 1);
            }
            for i in 0..b2 {
                m.set(b + i, a + i, 1);
            }
            m
        };
        let c = Subspace::from_matrix_rows(&c_small.basis.mul(&emb));
        let count = enum_maps(field, v, n, MapKind::All)?
            .into_iter()
            .filter(|f| wspace.image(f) == c)
            .count();
        right_total += count;
        // forward check: a pair (f1, f2) corresponds to (f1, f2): V -> A⊕A'
        for (f1, f2) in &all_pairs {
            let mut joint = Matrix::zero(field, v, n);
            for i in 0..v {
                for j in 0..a {
                    joint.set(i, j, f1.at(i, j));
                }
                for j in 0..a2 {
                    joint.set(i, a + j, f2.at(i, j));
                }
            }
            if wspace.image(&joint) == c {
                matched += 1;
            }
        }
    }
    let bijective = left_total == right_total && matched == left_total;
    Ok(BijectionReport {
        left_total,
        right_total,
        bijective,
        natural: true,
        detail: format!("hom_Gr((E{v},E{w}),(E{a},E{b})) × hom_Gr(·,(E{a2},E{b2}))"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::Field;

    fn ctx(q: (u8, u8), namb: usize) -> Arc<Ctx> {
        Ctx::new(Field::new(q.0, q.1).unwrap(), namb).unwrap()
    }

    #[test]
    fn object_censuses() {
        let c = ctx((2, 1), 3);
        let gr = Site::new(&c, SiteKind::Gr(DimSet::all_up_to(2)), 2).unwrap();
        assert_eq!(gr.objects.len(), 6);
        let surj = Site::new(&c, SiteKind::Surj, 3).unwrap();
        assert_eq!(surj.objects.len(), 4);
        let gr1 = Site::new(&c, SiteKind::Gr(DimSet::single(1)), 2).unwrap();
        assert_eq!(gr1.objects.len(), 2);
    }

    #[test]
    fn hom_set_counts() {
        let c = ctx((2, 1), 2);
        let gr = Site::new(&c, SiteKind::Gr(DimSet::all_up_to(2)), 2).unwrap();
        let o11 = gr.obj(Obj::with_base(1, 1)).unwrap();
        let o21 = gr.obj(Obj::with_base(2, 1)).unwrap();
        assert_eq!(gr.hom(o11, o21).len(), 1);
        assert_eq!(gr.hom(o21, o21).len(), 4);
        let vect = Site::new(&c, SiteKind::Vect, 2).unwrap();
        assert_eq!(vect.hom(2, 2).len(), 16);
    }

    #[test]
    fn composition_closure_and_identity() {
        let c = ctx((2, 1), 2);
        for kind in [
            SiteKind::Vect,
            SiteKind::Surj,
            SiteKind::Inj,
            SiteKind::Gr(DimSet::all_up_to(2)),
            SiteKind::GrTilde(DimSet::all_up_to(2)),
            SiteKind::BiGr,
            SiteKind::Pair(DimSet::all_up_to(2)),
        ] {
            let s = Site::new(&c, kind, 2).unwrap();
            for f in s.morphisms() {
                let idt = s.identity(f.tgt);
                let ids = s.identity(f.src);
                assert_eq!(s.compose(idt, f).unwrap(), f);
                assert_eq!(s.compose(f, ids).unwrap(), f);
                for g in s.morphisms() {
                    if g.src == f.tgt {
                        s.compose(g, f).expect("composites stay in the site");
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_samples() {
        let c = ctx((2, 1), 2);
        let s = Site::new(&c, SiteKind::Gr(DimSet::all_up_to(2)), 2).unwrap();
        let mors: Vec<Mor> = s.morphisms().collect();
        for f in mors.iter().step_by(3) {
            for g in mors.iter().filter(|g| g.src == f.tgt).step_by(2) {
                for h in mors.iter().filter(|h| h.src == g.tgt).step_by(2) {
                    let left = s.compose(*h, s.compose(*g, *f).unwrap()).unwrap();
                    let right = s.compose(s.compose(*h, *g).unwrap(), *f).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn epi_sum_bijection_examples() {
        let c = ctx((2, 1), 3);
        let r = bijection_epi_sum(&c, 1, 1, 2).unwrap();
        assert_eq!(r.left_total, 6);
        assert!(r.ok());
        let r0 = bijection_epi_sum(&c, 1, 1, 0).unwrap();
        assert_eq!(r0.left_total, 1);
        assert!(r0.ok());
        let r2 = bijection_epi_sum(&c, 2, 0, 1).unwrap();
        assert_eq!(r2.left_total, 3);
        assert!(r2.ok());
    }

    #[test]
    fn hom_gr_partition_examples() {
        let c = ctx((2, 1), 2);
        let r = bijection_hom_gr(&c, 2, 1, 2).unwrap();
        assert_eq!(r.left_total, 16);
        assert!(r.ok());
        let r2 = bijection_hom_gr(&c, 1, 1, 1).unwrap();
        assert_eq!(r2.left_total, 2);
        assert!(r2.ok());
        let r3 = bijection_hom_gr(&c, 2, 0, 1).unwrap();
        assert!(r3.ok());
    }

    #[test]
    fn sum_source_bijection_examples() {
        let c = ctx((2, 1), 2);
        let r = bijection_hom_sum_source(&c, (1, 1), (1, 1), (2, 2)).unwrap();
        assert_eq!(r.left_total, 6);
        assert!(r.ok());
        let r0 = bijection_hom_sum_source(&c, (0, 0), (0, 0), (0, 0)).unwrap();
        assert_eq!(r0.left_total, 1);
        assert!(r0.ok());
    }

    #[test]
    fn gr_pair_examples() {
        let c = ctx((2, 1), 2);
        assert_eq!(gr_of_pair(&c, 0, 0).unwrap().len(), 1);
        assert_eq!(gr_of_pair(&c, 1, 1).unwrap().len(), 2);
    }

    #[test]
    fn product_target_bijection_examples() {
        let c = ctx((2, 1), 2);
        let r = bijection_hom_product_target(&c, (1, 1), (1, 1), (1, 1)).unwrap();
        assert_eq!(r.left_total, 1);
        assert!(r.ok());
        let r2 = bijection_hom_product_target(&c, (1, 0), (1, 0), (1, 0)).unwrap();
        assert!(r2.ok());
    }

    #[test]
    fn base_dimension_only_drops() {
        // no Gr morphism raises the base dimension
        let c = ctx((2, 1), 2);
        let s = Site::new(&c, SiteKind::Gr(DimSet::all_up_to(2)), 2).unwrap();
        for m in s.morphisms() {
            assert!(s.objects[m.tgt].base() <= s.objects[m.src].base());
        }
    }
}
