//! The functor catalog between the sites.
//!
//! Naming follows the roles: embeddings pull a functor up to a richer
//! site by precomposition (`iota` through the ambient space, `kappa`
//! through the quotient, `rho` through the base, `xi`/`theta` through
//! the product decompositions, `sigma` the relative shift), integrals
//! push down by summing over grassmannians (`omega`, `varpi` and their
//! variants), and the tilde constructions mediate between exact-base
//! and contained-base pair sites.
//!
//! Skeletal bookkeeping: values at a non-coordinate base `W` are the
//! values at `(n, E_{dim W})`, and morphism components are the actions
//! at the chart-transported matrices `u_W * M * u_{W'}^{-1}` (see
//! [`crate::ctx::Ctx::gr_transport`]). All charts are fixed, so these
//! components compose strictly.

use crate::corpus::World;
use crate::funcat::{build_block_functor, FiniteFunctor, NatTrans, FF};
use crate::linalg::{quotient_map, restrict_map, Matrix, Subspace};
use crate::sites::{Mor, Obj, Site, SiteKind};
use std::sync::Arc;

fn base_space(site: &Site, obj: usize) -> Subspace {
    let o = site.objects[obj];
    Subspace::coordinate(&site.ctx.field, o.ambient(), o.base())
}

/// ι: functors on ambient spaces, evaluated through the principal
/// forgetful functor: `(ιF)(V, W) = F(V)`.
pub fn iota(w: &World, f: &FF) -> FF {
    let gr = w.gr();
    let vect = f.site.clone();
    assert_eq!(vect.kind, SiteKind::Vect);
    let dims: Vec<usize> = gr.objects.iter().map(|o| f.dims[o.ambient()]).collect();
    let valid: Vec<bool> = gr.objects.iter().map(|o| f.valid[o.ambient()]).collect();
    let mut action = Vec::with_capacity(gr.total_mors);
    for m in gr.morphisms() {
        let vm = vect
            .find(gr.objects[m.src].ambient(), gr.objects[m.tgt].ambient(), gr.matrix(m))
            .expect("ambient matrix is a Vect morphism");
        action.push(f.act(vm).clone());
    }
    Arc::new(FiniteFunctor {
        site: gr,
        name: format!("ι({})", f.name),
        dims,
        action,
        valid,
    })
}

/// κ: evaluation through the reduction `(κF)(V, W) = F(V/W)`.
pub fn kappa(w: &World, f: &FF) -> FF {
    let gr = w.gr();
    let vect = f.site.clone();
    assert_eq!(vect.kind, SiteKind::Vect);
    let field = &gr.ctx.field;
    let dims: Vec<usize> = gr
        .objects
        .iter()
        .map(|o| f.dims[o.ambient() - o.base()])
        .collect();
    let valid: Vec<bool> = gr
        .objects
        .iter()
        .map(|o| f.valid[o.ambient() - o.base()])
        .collect();
    let mut action = Vec::with_capacity(gr.total_mors);
    for m in gr.morphisms() {
        let ws = base_space(&gr, m.src);
        let wt = base_space(&gr, m.tgt);
        let bar = quotient_map(gr.matrix(m), &ws, &wt);
        let vm = vect
            .find(bar.rows, bar.cols, &bar)
            .expect("induced quotient map is a Vect morphism");
        let _ = field;
        action.push(f.act(vm).clone());
    }
    Arc::new(FiniteFunctor {
        site: gr,
        name: format!("κ({})", f.name),
        dims,
        action,
        valid,
    })
}

/// ρ: evaluation through the base `(ρA)(V, W) = A(W)`; the image
/// consists of the pseudo-constant functors.
pub fn rho(w: &World, a: &FF) -> FF {
    let gr = w.gr();
    let surj = a.site.clone();
    assert_eq!(surj.kind, SiteKind::Surj);
    let dims: Vec<usize> = gr.objects.iter().map(|o| a.dims[o.base()]).collect();
    let valid: Vec<bool> = gr.objects.iter().map(|o| a.valid[o.base()]).collect();
    let mut action = Vec::with_capacity(gr.total_mors);
    for m in gr.morphisms() {
        let b = gr.objects[m.src].base();
        let b2 = gr.objects[m.tgt].base();
        let blk = gr.matrix(m).submatrix(0..b, 0..b2);
        let sm = surj.find(b, b2, &blk).expect("base block is an epi");
        action.push(a.act(sm).clone());
    }
    Arc::new(FiniteFunctor {
        site: gr,
        name: format!("ρ({})", a.name),
        dims,
        action,
        valid,
    })
}

/// The unit of the total tensor structure: ρ of the functor
/// concentrated at dimension 0.
pub fn rho_unit(w: &World) -> FF {
    rho(w, &w.is_n(0)).rename("ρ(Is₀)")
}

/// ε: generalized evaluation `(εX)(V) = X(V, V)`.
pub fn epsilon(w: &World, x: &FF) -> FF {
    let surj = w.surj();
    let gr = x.site.clone();
    assert!(matches!(gr.kind, SiteKind::Gr(_)));
    let dims: Vec<usize> = surj
        .objects
        .iter()
        .map(|o| x.dims[gr.obj(Obj::with_base(o.ambient(), o.ambient())).unwrap()])
        .collect();
    let valid: Vec<bool> = surj
        .objects
        .iter()
        .map(|o| x.valid[gr.obj(Obj::with_base(o.ambient(), o.ambient())).unwrap()])
        .collect();
    let mut action = Vec::with_capacity(surj.total_mors);
    for m in surj.morphisms() {
        let a = surj.objects[m.src].ambient();
        let b = surj.objects[m.tgt].ambient();
        let src = gr.obj(Obj::with_base(a, a)).unwrap();
        let tgt = gr.obj(Obj::with_base(b, b)).unwrap();
        let gm = gr.find(src, tgt, surj.matrix(m)).expect("an epi maps (V,V) to (W,W)");
        action.push(x.act(gm).clone());
    }
    Arc::new(FiniteFunctor {
        site: surj,
        name: format!("ε({})", x.name),
        dims,
        action,
        valid,
    })
}

fn pair_morphism(w: &World, pair: &Site, src: usize, tgt: usize, u: &Matrix, e: &Matrix) -> Mor {
    let _ = w;
    pair
        .find(src, tgt, &u.block_diag(e))
        .expect("pair (map, epi) is a product-site morphism")
}

/// ξ: the complete embedding `(ξF)(V, W) = F(V, W)` of product-site
/// functors.
pub fn xi(w: &World, f: &FF) -> FF {
    let gr = w.gr();
    let pair = f.site.clone();
    assert!(matches!(pair.kind, SiteKind::Pair(_)));
    let pobj = |o: Obj| pair.obj(Obj::with_base(o.ambient(), o.base())).expect("pair object");
    let dims: Vec<usize> = gr.objects.iter().map(|&o| f.dims[pobj(o)]).collect();
    let valid: Vec<bool> = gr.objects.iter().map(|&o| f.valid[pobj(o)]).collect();
    let mut action = Vec::with_capacity(gr.total_mors);
    for m in gr.morphisms() {
        let (os, ot) = (gr.objects[m.src], gr.objects[m.tgt]);
        let mat = gr.matrix(m);
        let e = mat.submatrix(0..os.base(), 0..ot.base());
        let pm = pair_morphism(w, &pair, pobj(os), pobj(ot), mat, &e);
        action.push(f.act(pm).clone());
    }
    Arc::new(FiniteFunctor {
        site: gr,
        name: format!("ξ({})", f.name),
        dims,
        action,
        valid,
    })
}

/// θ: the total embedding `(θF)(V, W) = F(V/W, W)`; in monad terms, the
/// modules with vanishing reduced action.
pub fn theta(w: &World, f: &FF) -> FF {
    let gr = w.gr();
    let pair = f.site.clone();
    assert!(matches!(pair.kind, SiteKind::Pair(_)));
    let pobj = |o: Obj| {
        pair.obj(Obj::with_base(o.ambient() - o.base(), o.base())).expect("pair object")
    };
    let dims: Vec<usize> = gr.objects.iter().map(|&o| f.dims[pobj(o)]).collect();
    let valid: Vec<bool> = gr.objects.iter().map(|&o| f.valid[pobj(o)]).collect();
    let mut action = Vec::with_capacity(gr.total_mors);
    for m in gr.morphisms() {
        let (os, ot) = (gr.objects[m.src], gr.objects[m.tgt]);
        let mat = gr.matrix(m);
        let bar = quotient_map(mat, &base_space(&gr, m.src), &base_space(&gr, m.tgt));
        let e = mat.submatrix(0..os.base(), 0..ot.base());
        let pm = pair_morphism(w, &pair, pobj(os), pobj(ot), &bar, &e);
        action.push(f.act(pm).clone());
    }
    Arc::new(FiniteFunctor {
        site: gr,
        name: format!("θ({})", f.name),
        dims,
        action,
        valid,
    })
}

/// σ: the grassmannian shift `(σX)(A, B) = X(A ⊕ B, B)` (base placed on
/// the leading coordinates of the extended ambient). Consumes range.
pub fn sigma(w: &World, x: &FF) -> FF {
    let pair = w.pair();
    let gr = x.site.clone();
    assert!(matches!(gr.kind, SiteKind::Gr(_)));
    let field = &pair.ctx.field;
    let target = |o: Obj| -> Option<usize> {
        let (a, b) = (o.ambient(), o.base());
        gr.obj(Obj::with_base(b + a, b))
    };
    let dims: Vec<usize> = pair
        .objects
        .iter()
        .map(|&o| target(o).map(|i| x.dims[i]).unwrap_or(0))
        .collect();
    let valid: Vec<bool> = pair
        .objects
        .iter()
        .map(|&o| target(o).map(|i| x.valid[i]).unwrap_or(false))
        .collect();
    let mut action = Vec::with_capacity(pair.total_mors);
    for m in pair.morphisms() {
        let (os, ot) = (pair.objects[m.src], pair.objects[m.tgt]);
        let mat = match (target(os), target(ot)) {
            (Some(s), Some(t)) => {
                let (a, b) = (os.ambient(), os.base());
                let (a2, b2) = (ot.ambient(), ot.base());
                let pm = pair.matrix(m);
                let u = pm.submatrix(0..a, 0..a2);
                let e = pm.submatrix(a..a + b, a2..a2 + b2);
                // ambient map on B ⊕ A: e on the leading block, u after
                let amb = e.block_diag(&u);
                let gm = gr.find(s, t, &amb).expect("relative embedding morphism");
                x.act(gm).clone()
            }
            _ => Matrix::zero(field, dims[m.src], dims[m.tgt]),
        };
        action.push(mat);
    }
    Arc::new(FiniteFunctor {
        site: pair,
        name: format!("σ({})", x.name),
        dims,
        action,
        valid,
    })
}

/// ω and its restricted variants: `(ωX)(V) = ⊕_{W ∈ Gr(V), dim W ∈ I}
/// X(V, W)`, the left adjoint of ι. The admissible base dimensions are
/// read off the source site.
pub fn omega(w: &World, x: &FF) -> FF {
    let vect = w.vect();
    let gr = x.site.clone();
    let SiteKind::Gr(iset) = gr.kind else { panic!("omega needs an exact-base pair site") };
    let ctx = gr.ctx.clone();
    let x2 = x.clone();
    let gr2 = gr.clone();
    let name = format!("ω({})", x.name);
    build_block_functor(
        &vect,
        &name,
        move |obj| {
            let n = obj;
            ctx.all_subspaces(n)
                .iter()
                .filter(|s| iset.contains(s.dim))
                .map(|s| {
                    let o = gr2.obj(Obj::with_base(n, s.dim)).unwrap();
                    (s.clone(), x2.dims[o])
                })
                .collect()
        },
        {
            let ctx = gr.ctx.clone();
            let gr = gr.clone();
            let x = x.clone();
            let vect = vect.clone();
            move |f: Mor, s: &Subspace| {
                let mat = vect.matrix(f);
                let img = s.image(mat);
                if !iset.contains(img.dim) {
                    return vec![];
                }
                let src = gr.obj(Obj::with_base(f.src, s.dim)).unwrap();
                let tgt = gr.obj(Obj::with_base(f.tgt, img.dim)).unwrap();
                let t = ctx.gr_transport(mat, s, &img);
                let gm = gr.find(src, tgt, &t).expect("chart transport is exact on the base");
                vec![(img, x.act(gm).clone())]
            }
        },
        {
            let gr = gr.clone();
            let x = x.clone();
            move |obj| {
                (0..=obj).all(|m| {
                    !iset.contains(m)
                        || gr.obj(Obj::with_base(obj, m)).map(|i| x.valid[i]).unwrap_or(true)
                })
            }
        },
    )
}

/// ϖ: `(ϖA)(V) = ⊕_{W ∈ Gr(V)} A(W)`, summands identified through the
/// RREF charts of the subspaces.
pub fn varpi(w: &World, a: &FF) -> FF {
    let vect = w.vect();
    let surj = a.site.clone();
    assert_eq!(surj.kind, SiteKind::Surj);
    let ctx = surj.ctx.clone();
    let a2 = a.clone();
    let name = format!("ϖ({})", a.name);
    build_block_functor(
        &vect,
        &name,
        {
            let ctx = ctx.clone();
            let a = a.clone();
            move |obj| {
                ctx.all_subspaces(obj)
                    .iter()
                    .map(|s| (s.clone(), a.dims[s.dim]))
                    .collect()
            }
        },
        {
            let vect = vect.clone();
            let surj = surj.clone();
            move |f: Mor, s: &Subspace| {
                let mat = vect.matrix(f);
                let img = s.image(mat);
                let rm = restrict_map(mat, s, &img);
                let sm = surj.find(s.dim, img.dim, &rm).expect("restriction onto image is epi");
                vec![(img, a2.act(sm).clone())]
            }
        },
        |_| true,
    )
}

/// o: restriction of an ambient functor to surjections.
pub fn oblivion(w: &World, f: &FF) -> FF {
    precompose_inclusion(f, &w.surj(), "o")
}

/// o_inj: restriction to injections.
pub fn oblivion_inj(w: &World, f: &FF) -> FF {
    precompose_inclusion(f, &w.inj(), "o_inj")
}

fn precompose_inclusion(f: &FF, sub: &Arc<Site>, tag: &str) -> FF {
    let vect = f.site.clone();
    assert_eq!(vect.kind, SiteKind::Vect);
    let dims = f.dims.clone();
    let valid = f.valid.clone();
    let mut action = Vec::with_capacity(sub.total_mors);
    for m in sub.morphisms() {
        let vm = vect
            .find(sub.objects[m.src].ambient(), sub.objects[m.tgt].ambient(), sub.matrix(m))
            .expect("sub-site morphism is a Vect morphism");
        action.push(f.act(vm).clone());
    }
    Arc::new(FiniteFunctor {
        site: sub.clone(),
        name: format!("{tag}({})", f.name),
        dims,
        action,
        valid,
    })
}

/// ϖ_inj: `(ϖ_inj X)(V) = ⊕_{W ∈ Gr(V)} X(V/W)`, components supported
/// on exact preimages.
pub fn varpi_inj(w: &World, x: &FF) -> FF {
    let vect = w.vect();
    let inj = x.site.clone();
    assert_eq!(inj.kind, SiteKind::Inj);
    let ctx = inj.ctx.clone();
    let name = format!("ϖ_inj({})", x.name);
    build_block_functor(
        &vect,
        &name,
        {
            let ctx = ctx.clone();
            let x = x.clone();
            move |obj| {
                ctx.all_subspaces(obj)
                    .iter()
                    .map(|s| (s.clone(), x.dims[obj - s.dim]))
                    .collect()
            }
        },
        {
            let vect = vect.clone();
            let inj = inj.clone();
            let ctx = ctx.clone();
            let x = x.clone();
            move |f: Mor, s: &Subspace| {
                let mat = vect.matrix(f);
                // components target every W' with f^{-1}(W') = W
                let mut out = Vec::new();
                for w2 in ctx.all_subspaces(f.tgt) {
                    if w2.preimage(mat) != *s {
                        continue;
                    }
                    let qm = quotient_map(mat, s, w2);
                    let im = inj
                        .find(f.src - s.dim, f.tgt - w2.dim, &qm)
                        .expect("induced quotient map is injective");
                    out.push((w2.clone(), x.act(im).clone()));
                }
                out
            }
        },
        |_| true,
    )
}

/// The inclusion-summing endofunctor on the exact-base site:
/// `(𝓘X)(V, W) = ⊕_{B ∈ Gr(W)} X(V, B)`.
pub fn script_i(w: &World, x: &FF) -> FF {
    let gr = w.gr();
    assert!(Arc::ptr_eq(&gr, &x.site));
    let ctx = gr.ctx.clone();
    let name = format!("𝓘({})", x.name);
    let gr2 = gr.clone();
    let x2 = x.clone();
    build_block_functor(
        &gr,
        &name,
        {
            let ctx = ctx.clone();
            let gr = gr.clone();
            let x = x.clone();
            move |obj| {
                let o = gr.objects[obj];
                let em = Subspace::coordinate(&ctx.field, o.ambient(), o.base());
                ctx.all_subspaces(o.ambient())
                    .iter()
                    .filter(|b| em.contains(b).unwrap())
                    .map(|b| {
                        let io = gr.obj(Obj::with_base(o.ambient(), b.dim)).unwrap();
                        (b.clone(), x.dims[io])
                    })
                    .collect()
            }
        },
        move |f: Mor, b: &Subspace| {
            let mat = gr2.matrix(f);
            let img = b.image(mat);
            let src = gr2.obj(Obj::with_base(gr2.objects[f.src].ambient(), b.dim)).unwrap();
            let tgt = gr2.obj(Obj::with_base(gr2.objects[f.tgt].ambient(), img.dim)).unwrap();
            let t = ctx.gr_transport(mat, b, &img);
            let gm = gr2.find(src, tgt, &t).expect("transported inclusion morphism");
            vec![(img, x2.act(gm).clone())]
        },
        |_| true,
    )
}

/// The quotient-summing endofunctor:
/// `(𝓙X)(V, B) = ⊕_{W ∈ Gr(B)} X(V/W, B/W)`.
pub fn script_j(w: &World, x: &FF) -> FF {
    let gr = w.gr();
    assert!(Arc::ptr_eq(&gr, &x.site));
    let ctx = gr.ctx.clone();
    let name = format!("𝓙({})", x.name);
    // inner object for a label W at (n, E_m): ambient n - dim W, base
    // the image of E_m in the quotient chart
    let inner = {
        let ctx = ctx.clone();
        let gr = gr.clone();
        move |obj: usize, w_sub: &Subspace| -> (usize, Subspace) {
            let o = gr.objects[obj];
            let em = Subspace::coordinate(&ctx.field, o.ambient(), o.base());
            let (proj, _) = {
                let q = ctx.quot(w_sub);
                (q.0.clone(), q.1.clone())
            };
            let base_img = Subspace::from_matrix_rows(&em.basis.mul(&proj));
            let io = gr
                .obj(Obj::with_base(o.ambient() - w_sub.dim, base_img.dim))
                .expect("quotient object in range");
            (io, base_img)
        }
    };
    let gr2 = gr.clone();
    let x2 = x.clone();
    let inner2 = inner.clone();
    build_block_functor(
        &gr,
        &name,
        {
            let ctx = ctx.clone();
            let gr = gr.clone();
            let x = x.clone();
            let inner = inner.clone();
            move |obj| {
                let o = gr.objects[obj];
                let em = Subspace::coordinate(&ctx.field, o.ambient(), o.base());
                ctx.all_subspaces(o.ambient())
                    .iter()
                    .filter(|s| em.contains(s).unwrap())
                    .map(|s| {
                        let (io, _) = inner(obj, s);
                        (s.clone(), x.dims[io])
                    })
                    .collect()
            }
        },
        move |f: Mor, w_sub: &Subspace| {
            let mat = gr2.matrix(f);
            let img = w_sub.image(mat);
            let (src_io, src_base) = inner2(f.src, w_sub);
            let (tgt_io, tgt_base) = inner2(f.tgt, &img);
            // induced map on quotients, then chart transport of the bases
            let qm = quotient_map(mat, w_sub, &img);
            let t = ctx.gr_transport(&qm, &src_base, &tgt_base);
            let gm = gr2.find(src_io, tgt_io, &t).expect("quotient transport morphism");
            vec![(img, x2.act(gm).clone())]
        },
        |_| true,
    )
}

/// 𝔍: from exact-base functors to contained-base functors, summing over
/// subspaces of the base: `(𝔍X)(V, B) = ⊕_{W ∈ Gr(B)} X(V, W)`.
pub fn jmath(w: &World, x: &FF) -> FF {
    let tilde = w.gr_tilde();
    let gr = x.site.clone();
    assert!(matches!(gr.kind, SiteKind::Gr(_)));
    let ctx = gr.ctx.clone();
    let name = format!("𝔍({})", x.name);
    let tilde2 = tilde.clone();
    let gr2 = gr.clone();
    let x2 = x.clone();
    build_block_functor(
        &tilde,
        &name,
        {
            let ctx = ctx.clone();
            let tilde = tilde.clone();
            let gr = gr.clone();
            let x = x.clone();
            move |obj| {
                let o = tilde.objects[obj];
                let em = Subspace::coordinate(&ctx.field, o.ambient(), o.base());
                ctx.all_subspaces(o.ambient())
                    .iter()
                    .filter(|s| em.contains(s).unwrap())
                    .map(|s| {
                        let io = gr.obj(Obj::with_base(o.ambient(), s.dim)).unwrap();
                        (s.clone(), x.dims[io])
                    })
                    .collect()
            }
        },
        move |f: Mor, s: &Subspace| {
            let mat = tilde2.matrix(f);
            let img = s.image(mat);
            let src = gr2.obj(Obj::with_base(tilde2.objects[f.src].ambient(), s.dim)).unwrap();
            let tgt = gr2.obj(Obj::with_base(tilde2.objects[f.tgt].ambient(), img.dim)).unwrap();
            let t = ctx.gr_transport(mat, s, &img);
            let gm = gr2.find(src, tgt, &t).expect("exact-base transport");
            vec![(img, x2.act(gm).clone())]
        },
        |_| true,
    )
}

/// 𝔑: restriction of a contained-base functor to the exact-base site
/// (the right adjoint of 𝔍).
pub fn nmath(w: &World, y: &FF) -> FF {
    let gr = w.gr();
    let tilde = y.site.clone();
    assert!(matches!(tilde.kind, SiteKind::GrTilde(_)));
    let dims: Vec<usize> = gr
        .objects
        .iter()
        .map(|&o| y.dims[tilde.obj(o).expect("shared object")])
        .collect();
    let valid: Vec<bool> = gr
        .objects
        .iter()
        .map(|&o| y.valid[tilde.obj(o).expect("shared object")])
        .collect();
    let mut action = Vec::with_capacity(gr.total_mors);
    for m in gr.morphisms() {
        let s = tilde.obj(gr.objects[m.src]).unwrap();
        let t = tilde.obj(gr.objects[m.tgt]).unwrap();
        let tm = tilde.find(s, t, gr.matrix(m)).expect("exact maps are contained maps");
        action.push(y.act(tm).clone());
    }
    Arc::new(FiniteFunctor {
        site: gr,
        name: format!("𝔑({})", y.name),
        dims,
        action,
        valid,
    })
}

/// ω̃: the integral of a contained-base functor, with image components.
pub fn omega_tilde(w: &World, x: &FF) -> FF {
    let vect = w.vect();
    let tilde = x.site.clone();
    assert!(matches!(tilde.kind, SiteKind::GrTilde(_)));
    let ctx = tilde.ctx.clone();
    let name = format!("ω̃({})", x.name);
    let vect2 = vect.clone();
    let tilde2 = tilde.clone();
    let x2 = x.clone();
    build_block_functor(
        &vect,
        &name,
        {
            let ctx = ctx.clone();
            let tilde = tilde.clone();
            let x = x.clone();
            move |obj| {
                ctx.all_subspaces(obj)
                    .iter()
                    .map(|s| {
                        let io = tilde.obj(Obj::with_base(obj, s.dim)).unwrap();
                        (s.clone(), x.dims[io])
                    })
                    .collect()
            }
        },
        move |f: Mor, s: &Subspace| {
            let mat = vect2.matrix(f);
            let img = s.image(mat);
            let src = tilde2.obj(Obj::with_base(f.src, s.dim)).unwrap();
            let tgt = tilde2.obj(Obj::with_base(f.tgt, img.dim)).unwrap();
            let t = ctx.gr_transport(mat, s, &img);
            let tm = tilde2.find(src, tgt, &t).expect("image transport is contained");
            vec![(img, x2.act(tm).clone())]
        },
        |_| true,
    )
}

/// ω̃′: the integral with preimage components — a summand B at the
/// source feeds every B' with f^{-1}(B') = B.
pub fn omega_tilde_prime(w: &World, x: &FF) -> FF {
    let vect = w.vect();
    let tilde = x.site.clone();
    assert!(matches!(tilde.kind, SiteKind::GrTilde(_)));
    let ctx = tilde.ctx.clone();
    let name = format!("ω̃′({})", x.name);
    let vect2 = vect.clone();
    let tilde2 = tilde.clone();
    let x2 = x.clone();
    build_block_functor(
        &vect,
        &name,
        {
            let ctx = ctx.clone();
            let tilde = tilde.clone();
            let x = x.clone();
            move |obj| {
                ctx.all_subspaces(obj)
                    .iter()
                    .map(|s| {
                        let io = tilde.obj(Obj::with_base(obj, s.dim)).unwrap();
                        (s.clone(), x.dims[io])
                    })
                    .collect()
            }
        },
        move |f: Mor, b: &Subspace| {
            let mat = vect2.matrix(f);
            let mut out = Vec::new();
            for b2 in ctx.all_subspaces(f.tgt) {
                if b2.preimage(mat) != *b {
                    continue;
                }
                // f(B) ⊆ B', so the transported matrix is a contained-base
                // morphism
                let src = tilde2.obj(Obj::with_base(f.src, b.dim)).unwrap();
                let tgt = tilde2.obj(Obj::with_base(f.tgt, b2.dim)).unwrap();
                let t = ctx.gr_transport(mat, b, b2);
                let tm = tilde2.find(src, tgt, &t).expect("preimage transport is contained");
                out.push((b2.clone(), x2.act(tm).clone()));
            }
            out
        },
        |_| true,
    )
}

/// κ̃: contained-base evaluation through the reduction,
/// `(κ̃F)(V, W) = F(V/W)`.
pub fn kappa_tilde(w: &World, f: &FF) -> FF {
    let tilde = w.gr_tilde();
    let vect = f.site.clone();
    assert_eq!(vect.kind, SiteKind::Vect);
    let dims: Vec<usize> = tilde
        .objects
        .iter()
        .map(|o| f.dims[o.ambient() - o.base()])
        .collect();
    let valid: Vec<bool> = tilde
        .objects
        .iter()
        .map(|o| f.valid[o.ambient() - o.base()])
        .collect();
    let mut action = Vec::with_capacity(tilde.total_mors);
    for m in tilde.morphisms() {
        let ws = Subspace::coordinate(&tilde.ctx.field, tilde.objects[m.src].ambient(), tilde.objects[m.src].base());
        let wt = Subspace::coordinate(&tilde.ctx.field, tilde.objects[m.tgt].ambient(), tilde.objects[m.tgt].base());
        let bar = quotient_map(tilde.matrix(m), &ws, &wt);
        let vm = vect.find(bar.rows, bar.cols, &bar).expect("quotient map is a Vect morphism");
        action.push(f.act(vm).clone());
    }
    Arc::new(FiniteFunctor {
        site: tilde,
        name: format!("κ̃({})", f.name),
        dims,
        action,
        valid,
    })
}

/// The translation functor by a pair object:
/// `(τ_A X)(E) = X(E ⊞ A)`, the ambient of A extended by E on the
/// trailing coordinates. Consumes range.
pub fn tau_translate(w: &World, x: &FF, a: Obj) -> FF {
    let vect = w.vect();
    let gr = x.site.clone();
    assert!(matches!(gr.kind, SiteKind::Gr(_)));
    let field = &vect.ctx.field;
    let target = |e: usize| gr.obj(Obj::with_base(a.ambient() + e, a.base()));
    let dims: Vec<usize> = (0..vect.objects.len())
        .map(|e| target(e).map(|i| x.dims[i]).unwrap_or(0))
        .collect();
    let valid: Vec<bool> = (0..vect.objects.len())
        .map(|e| target(e).map(|i| x.valid[i]).unwrap_or(false))
        .collect();
    let mut action = Vec::with_capacity(vect.total_mors);
    for m in vect.morphisms() {
        let mat = match (target(m.src), target(m.tgt)) {
            (Some(s), Some(t)) => {
                let big = Matrix::identity(field, a.ambient()).block_diag(vect.matrix(m));
                let gm = gr.find(s, t, &big).expect("translation morphism");
                x.act(gm).clone()
            }
            _ => Matrix::zero(field, dims[m.src], dims[m.tgt]),
        };
        action.push(mat);
    }
    Arc::new(FiniteFunctor {
        site: vect,
        name: format!("τ[{:?}]({})", a, x.name),
        dims,
        action,
        valid,
    })
}

/// Applies ω objectwise to the components of a transformation between
/// exact-base functors (block-diagonal over the subspace summands).
pub fn omega_nat(w: &World, t: &NatTrans) -> NatTrans {
    let ox = omega(w, &t.src);
    let oy = omega(w, &t.tgt);
    let gr = t.src.site.clone();
    let SiteKind::Gr(iset) = gr.kind else { unreachable!() };
    let ctx = gr.ctx.clone();
    let field = &ctx.field;
    let comps: Vec<Matrix> = (0..ox.dims.len())
        .map(|n| {
            let mut m = Matrix::zero(field, ox.dims[n], oy.dims[n]);
            let mut ro = 0;
            let mut co = 0;
            for s in ctx.all_subspaces(n) {
                if !iset.contains(s.dim) {
                    continue;
                }
                let o = gr.obj(Obj::with_base(n, s.dim)).unwrap();
                let blk = &t.comps[o];
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        m.set(ro + i, co + j, blk.at(i, j));
                    }
                }
                ro += t.src.dims[o];
                co += t.tgt.dims[o];
            }
            m
        })
        .collect();
    NatTrans::new(&ox, &oy, comps)
}
