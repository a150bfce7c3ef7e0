//! Structural isomorphism checks with explicit witnesses, adjunction
//! triangle identities, the shift-of-integral splitting, and the
//! essential-extension probe.
//!
//! Every claimed isomorphism here is produced as an explicit natural
//! transformation whose components are then checked invertible and
//! natural by exhaustive sweeps; dimension agreement alone is reported
//! separately and counts as a weaker verdict.

use super::catalog::*;
use super::monad;
use crate::corpus::World;
use crate::error::{Error, Result};
use crate::funcat::{
    self, hom_dim, std_injective, std_projective, NatTrans, FF,
};
use crate::linalg::{quotient_map, Matrix, Subspace};
use crate::sites::{Obj, SiteKind};
use std::sync::Arc;

pub struct IsoReport {
    pub dims_equal: bool,
    pub invertible: bool,
    pub natural: bool,
    pub detail: String,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.dims_equal && self.invertible && self.natural
    }
    fn from_nat(iso: NatTrans, detail: String) -> IsoReport {
        let dims_equal = iso.src.same_dims(&iso.tgt);
        let invertible = iso
            .src
            .common_valid(&iso.tgt)
            .iter()
            .all(|&x| iso.comps[x].rows == iso.comps[x].cols && iso.comps[x].rank() == iso.comps[x].rows);
        let natural = iso.check_natural().is_ok();
        IsoReport { dims_equal, invertible, natural, detail }
    }
}

// ---------------------------------------------------------------------
// integrals of standard objects

/// `ω(P_{(V,W)}) ≅ P_V`: the summand-label bijection sends a skeletal
/// morphism h at the summand U to the ambient map h * u_U.
pub fn iso_omega_projective(w: &World, v: usize, m: usize) -> Result<IsoReport> {
    let gr = w.gr();
    let vect = w.vect();
    let ctx = &gr.ctx;
    let field = &ctx.field;
    let src_obj = gr
        .obj(Obj::with_base(v, m))
        .ok_or_else(|| Error::TruncationExceeded(format!("({v},{m})")))?;
    let p_gr = std_projective(&gr, src_obj);
    let lhs = omega(w, &p_gr);
    let rhs = std_projective(&vect, v);
    let mut comps = Vec::with_capacity(vect.objects.len());
    for a in 0..vect.objects.len() {
        let mut mtx = Matrix::zero(field, lhs.dims[a], rhs.dims[a]);
        let mut row = 0usize;
        for u_space in ctx.all_subspaces(a) {
            let tgt_obj = gr.obj(Obj::with_base(a, u_space.dim)).unwrap();
            let (chart, _) = ctx.chart(u_space);
            for h in &gr.hom(src_obj, tgt_obj).mats {
                let f = h.mul(chart);
                let col = vect.hom(v, a).position(&f).expect("ambient map exists");
                mtx.set(row, col, 1);
                row += 1;
            }
        }
        comps.push(mtx);
    }
    let iso = NatTrans::new(&lhs, &rhs, comps);
    Ok(IsoReport::from_nat(iso, format!("ω(P[({v},{m})]) ≅ P[E{v}]")))
}

/// `ι(I_V) ≅ ⊕_{W ∈ Gr(V)} I_{(V,W)}`: the dual-basis label g goes to
/// the summand of the image of the base, at the chart-corrected label.
pub fn iso_iota_injective(w: &World, v: usize) -> Result<IsoReport> {
    let gr = w.gr();
    let vect = w.vect();
    let ctx = &gr.ctx;
    let field = &ctx.field;
    let lhs = iota(w, &std_injective(&vect, v));
    let summand_objs: Vec<usize> = ctx
        .all_subspaces(v)
        .iter()
        .map(|s| gr.obj(Obj::with_base(v, s.dim)).unwrap())
        .collect();
    let parts: Vec<FF> = summand_objs.iter().map(|&o| std_injective(&gr, o)).collect();
    let rhs = funcat::direct_sum(&parts);
    let mut comps = Vec::with_capacity(gr.objects.len());
    for (oi, _) in gr.objects.iter().enumerate() {
        let n = gr.objects[oi].ambient();
        let base = Subspace::coordinate(field, n, gr.objects[oi].base());
        let mut mtx = Matrix::zero(field, lhs.dims[oi], rhs.dims[oi]);
        for (row, g) in vect.hom(n, v).mats.iter().enumerate() {
            let w_img = base.image(g);
            let wi = ctx
                .all_subspaces(v)
                .iter()
                .position(|s| *s == w_img)
                .expect("image among subspaces");
            let (_, uinv) = ctx.chart(&w_img);
            let skel = g.mul(uinv);
            let k = gr
                .hom(oi, summand_objs[wi])
                .position(&skel)
                .expect("chart-corrected label");
            let col: usize = summand_objs[..wi]
                .iter()
                .map(|&so| gr.hom(oi, so).len())
                .sum::<usize>()
                + k;
            mtx.set(row, col, 1);
        }
        comps.push(mtx);
    }
    let iso = NatTrans::new(&lhs, &rhs, comps);
    Ok(IsoReport::from_nat(iso, format!("ι(I[E{v}]) ≅ ⊕_W I[({v},W)]")))
}

/// `ω(X ⊗̃ Y) ≅ ω(X) ⊗ ω(Y)`: summand (U, A', B') of the left side maps
/// to the pair (A' u_U, B' u_U) on the right, with the chart-change
/// action as the block.
pub fn iso_omega_monoidal(w: &World, x: &FF, y: &FF) -> Result<IsoReport> {
    let gr = w.gr();
    let vect = w.vect();
    let ctx = &gr.ctx;
    let field = &ctx.field;
    let tt = funcat::total_tensor(x, y)?;
    let lhs = omega(w, &tt);
    let ox = omega(w, x);
    let oy = omega(w, y);
    let rhs = funcat::tensor(&ox, &oy)?;

    let xdim = |a: usize, d: usize| x.dims[gr.obj(Obj::with_base(a, d)).unwrap()];
    let ydim = |a: usize, d: usize| y.dims[gr.obj(Obj::with_base(a, d)).unwrap()];
    let mut comps = Vec::with_capacity(vect.objects.len());
    for a in 0..vect.objects.len() {
        // offsets of the summands of ωX and ωY at E_a
        let all: Vec<&Subspace> = ctx.all_subspaces(a).iter().collect();
        let mut offx = Vec::with_capacity(all.len());
        let mut offy = Vec::with_capacity(all.len());
        let mut ax = 0usize;
        let mut ay = 0usize;
        for s in &all {
            offx.push(ax);
            offy.push(ay);
            ax += xdim(a, s.dim);
            ay += ydim(a, s.dim);
        }
        let dy_total = oy.dims[a];
        let mut mtx = Matrix::zero(field, lhs.dims[a], rhs.dims[a]);
        let mut row = 0usize;
        for u_space in &all {
            let (chart_u, _) = ctx.chart(u_space).clone();
            let eu = Subspace::coordinate(field, a, u_space.dim);
            // summand order inside the total tensor at (a, E_u): as in
            // total_tensor
            for ap in ctx.all_subspaces(a) {
                if !eu.contains(ap).unwrap() {
                    continue;
                }
                for bp in ctx.all_subspaces(a) {
                    if !eu.contains(bp).unwrap() || ap.sum(bp).unwrap() != eu {
                        continue;
                    }
                    let dxa = xdim(a, ap.dim);
                    let dyb = ydim(a, bp.dim);
                    if dxa * dyb == 0 {
                        continue;
                    }
                    let a_img = ap.image(&chart_u);
                    let b_img = bp.image(&chart_u);
                    let ai = all.iter().position(|s| **s == a_img).unwrap();
                    let bi = all.iter().position(|s| **s == b_img).unwrap();
                    // chart-change corrections
                    let ga = ctx.gr_transport(&chart_u, ap, &a_img);
                    let gb = ctx.gr_transport(&chart_u, bp, &b_img);
                    let sa = gr.obj(Obj::with_base(a, ap.dim)).unwrap();
                    let ta = gr.obj(Obj::with_base(a, a_img.dim)).unwrap();
                    let sb = gr.obj(Obj::with_base(a, bp.dim)).unwrap();
                    let tb = gr.obj(Obj::with_base(a, b_img.dim)).unwrap();
                    let cx = x.act(gr.find(sa, ta, &ga).expect("chart change")).clone();
                    let cy = y.act(gr.find(sb, tb, &gb).expect("chart change")).clone();
                    for i in 0..dxa {
                        for jj in 0..dyb {
                            // value C_x[i, p] * C_y[jj, r] lands at
                            // (offx[ai] + p) * dy_total + offy[bi] + r
                            for p in 0..cx.cols {
                                let vx = cx.at(i, p);
                                if vx == 0 {
                                    continue;
                                }
                                for r in 0..cy.cols {
                                    let vy = cy.at(jj, r);
                                    if vy != 0 {
                                        let col = (offx[ai] + p) * dy_total + offy[bi] + r;
                                        let cur = mtx.at(row + i * dyb + jj, col);
                                        mtx.set(
                                            row + i * dyb + jj,
                                            col,
                                            field.add(cur, field.mul(vx, vy)),
                                        );
                                    }
                                }
                            }
                        }
                    }
                    row += dxa * dyb;
                }
            }
        }
        comps.push(mtx);
    }
    let iso = NatTrans::new(&lhs, &rhs, comps);
    Ok(IsoReport::from_nat(iso, format!("ω({} ⊗̃ {}) ≅ ω⊗ω", x.name, y.name)))
}

// ---------------------------------------------------------------------
// adjunction units, counits and triangles

pub struct AdjunctionReport {
    pub unit_natural: bool,
    pub counit_natural: bool,
    pub triangle_left: bool,
    pub triangle_right: bool,
    pub hom_dims_match: bool,
    pub detail: String,
}

impl AdjunctionReport {
    pub fn ok(&self) -> bool {
        self.unit_natural
            && self.counit_natural
            && self.triangle_left
            && self.triangle_right
            && self.hom_dims_match
    }
}

fn eq_on_common(a: &NatTrans, b: &NatTrans) -> bool {
    eq_guarded(a, b, &[])
}

/// Equality of transformations at every object where both endpoints and
/// all the guard functors (the intermediates of the composites being
/// compared) are valid.
fn eq_guarded(a: &NatTrans, b: &NatTrans, guards: &[&FF]) -> bool {
    (0..a.comps.len()).all(|x| {
        let va = a.src.valid[x] && a.tgt.valid[x];
        let vb = b.src.valid[x] && b.tgt.valid[x];
        let vg = guards.iter().all(|g| g.valid[x]);
        !(va && vb && vg) || a.comps[x] == b.comps[x]
    })
}

/// Applies ι to a transformation on the ambient site.
pub fn iota_nat(w: &World, t: &NatTrans) -> NatTrans {
    let s = iota(w, &t.src);
    let tt = iota(w, &t.tgt);
    let gr = w.gr();
    let comps: Vec<Matrix> = gr.objects.iter().map(|o| t.comps[o.ambient()].clone()).collect();
    NatTrans::new(&s, &tt, comps)
}

/// Applies ϖ to a transformation on the surjection site.
pub fn varpi_nat(w: &World, t: &NatTrans) -> NatTrans {
    let s = varpi(w, &t.src);
    let tt = varpi(w, &t.tgt);
    let ctx = &w.ctx;
    let field = &ctx.field;
    let comps: Vec<Matrix> = (0..=w.nmax)
        .map(|a| {
            let mut m = Matrix::zero(field, s.dims[a], tt.dims[a]);
            let mut ro = 0;
            let mut co = 0;
            for sub in ctx.all_subspaces(a) {
                let blk = &t.comps[sub.dim];
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        m.set(ro + i, co + j, blk.at(i, j));
                    }
                }
                ro += t.src.dims[sub.dim];
                co += t.tgt.dims[sub.dim];
            }
            m
        })
        .collect();
    NatTrans::new(&s, &tt, comps)
}

/// (ω ⊣ ι): unit X -> ιωX (inclusion of the exact-base summand), counit
/// ωιF -> F (fold of the copies), triangles bit-exact, hom dims checked.
pub fn adjunction_omega_iota(w: &World, x: &FF, f: &FF) -> Result<AdjunctionReport> {
    let gr = w.gr();
    let ctx = &gr.ctx;
    let field = &ctx.field;
    // unit: X -> ιω(X)
    let iox = iota(w, &omega(w, x));
    let unit_comps: Vec<Matrix> = (0..gr.objects.len())
        .map(|oi| {
            let o = gr.objects[oi];
            let (n, m) = (o.ambient(), o.base());
            let em = Subspace::coordinate(field, n, m);
            let mut mtx = Matrix::zero(field, x.dims[oi], iox.dims[oi]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                let so = gr.obj(Obj::with_base(n, s.dim)).unwrap();
                if *s == em {
                    for i in 0..x.dims[oi] {
                        mtx.set(i, off + i, 1);
                    }
                }
                off += x.dims[so];
            }
            mtx
        })
        .collect();
    let unit = NatTrans::new(x, &iox, unit_comps);

    // counit: ωι(F) -> F. The W-summand of the integral carries the
    // chart-conjugated action, so the fold applies the chart of W.
    let vect = w.vect();
    let omega_iota_counit = |g: &FF| -> NatTrans {
        let oig = omega(w, &iota(w, g));
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| {
                let d = g.dims[n];
                let count = ctx.all_subspaces(n).len();
                let mut mtx = Matrix::zero(field, count * d, d);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    let (chart, _) = ctx.chart(s);
                    let cm = vect.find(n, n, chart).expect("chart is an automorphism");
                    let blk = g.act(cm);
                    for i in 0..d {
                        for j in 0..d {
                            mtx.set(off + i, j, blk.at(i, j));
                        }
                    }
                    off += d;
                }
                mtx
            })
            .collect();
        NatTrans::new(&oig, g, comps)
    };
    let counit = omega_iota_counit(f);

    // triangles
    let om_unit = omega_nat(w, &unit); // ωX -> ωιωX
    let ox = omega(w, x);
    let counit_at_ox = omega_iota_counit(&ox);
    let tri_left = om_unit.compose(&counit_at_ox);
    let id_ox = NatTrans::identity(&ox);
    let triangle_left = eq_guarded(&tri_left, &id_ox, &[&om_unit.tgt]);

    let unit_at_if = {
        // unit of ιF: ιF -> ιωιF
        let fi = iota(w, f);
        let io_fi = iota(w, &omega(w, &fi));
        let comps: Vec<Matrix> = (0..gr.objects.len())
            .map(|oi| {
                let o = gr.objects[oi];
                let (n, m) = (o.ambient(), o.base());
                let em = Subspace::coordinate(field, n, m);
                let mut mtx = Matrix::zero(field, fi.dims[oi], io_fi.dims[oi]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    let so = gr.obj(Obj::with_base(n, s.dim)).unwrap();
                    if *s == em {
                        for i in 0..fi.dims[oi] {
                            mtx.set(i, off + i, 1);
                        }
                    }
                    off += fi.dims[so];
                }
                mtx
            })
            .collect();
        NatTrans::new(&fi, &io_fi, comps)
    };
    let i_counit = iota_nat(w, &counit);
    let tri_right = unit_at_if.compose(&i_counit);
    let id_if = NatTrans::identity(&iota(w, f));
    let triangle_right = eq_guarded(&tri_right, &id_if, &[&unit_at_if.tgt]);

    let hom_dims_match =
        hom_dim(x, &iota(w, f))? == hom_dim(&omega(w, x), f)?;
    Ok(AdjunctionReport {
        unit_natural: unit.check_natural().is_ok(),
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("ω ⊣ ι at ({}, {})", x.name, f.name),
    })
}

/// (ϖ ⊣ o): unit = inclusion of the full-subspace summand, counit =
/// sum of the restrictions along the subspace inclusions.
pub fn adjunction_varpi_o(w: &World, a: &FF, f: &FF) -> Result<AdjunctionReport> {
    let ctx = &w.ctx;
    let field = &ctx.field;
    // unit: A -> oϖA
    let opa = oblivion(w, &varpi(w, a));
    let unit_comps: Vec<Matrix> = (0..=w.nmax)
        .map(|n| {
            let full = Subspace::full(field, n);
            let mut mtx = Matrix::zero(field, a.dims[n], opa.dims[n]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                if *s == full {
                    for i in 0..a.dims[n] {
                        mtx.set(i, off + i, 1);
                    }
                }
                off += a.dims[s.dim];
            }
            mtx
        })
        .collect();
    let unit = NatTrans::new(a, &opa, unit_comps);

    // counit: ϖoF -> F, component at W given by the basis inclusion
    let pof = varpi(w, &oblivion(w, f));
    let vect = w.vect();
    let counit_comps: Vec<Matrix> = (0..=w.nmax)
        .map(|n| {
            let mut mtx = Matrix::zero(field, pof.dims[n], f.dims[n]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                let incl = vect
                    .find(s.dim, n, &s.basis)
                    .expect("basis rows give the subspace inclusion");
                let blk = f.act(incl);
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        mtx.set(off + i, j, blk.at(i, j));
                    }
                }
                off += f.dims[s.dim];
            }
            mtx
        })
        .collect();
    let counit = NatTrans::new(&pof, f, counit_comps);

    // triangles
    let v_unit = varpi_nat(w, &unit);
    let counit_at_pa = {
        let pa = varpi(w, a);
        let popa = varpi(w, &oblivion(w, &pa));
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| {
                let mut mtx = Matrix::zero(field, popa.dims[n], pa.dims[n]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    let incl = vect.find(s.dim, n, &s.basis).unwrap();
                    let blk = pa.act(incl);
                    for i in 0..blk.rows {
                        for j in 0..blk.cols {
                            mtx.set(off + i, j, blk.at(i, j));
                        }
                    }
                    off += pa.dims[s.dim];
                }
                mtx
            })
            .collect();
        NatTrans::new(&popa, &pa, comps)
    };
    let triangle_left = eq_guarded(&v_unit.compose(&counit_at_pa), &NatTrans::identity(&varpi(w, a)), &[&v_unit.tgt]);

    let unit_at_of = {
        let of = oblivion(w, f);
        let opof = oblivion(w, &varpi(w, &of));
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| {
                let full = Subspace::full(field, n);
                let mut mtx = Matrix::zero(field, of.dims[n], opof.dims[n]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    if *s == full {
                        for i in 0..of.dims[n] {
                            mtx.set(i, off + i, 1);
                        }
                    }
                    off += of.dims[s.dim];
                }
                mtx
            })
            .collect();
        NatTrans::new(&of, &opof, comps)
    };
    let o_counit = {
        // o applied to the counit: same components on the Surj site
        let s = oblivion(w, &counit.src);
        let t = oblivion(w, &counit.tgt);
        NatTrans::new(&s, &t, counit.comps.clone())
    };
    let triangle_right = eq_guarded(&unit_at_of.compose(&o_counit), &NatTrans::identity(&oblivion(w, f)), &[&unit_at_of.tgt]);

    let hom_dims_match = hom_dim(a, &oblivion(w, f))? == hom_dim(&varpi(w, a), f)?;
    Ok(AdjunctionReport {
        unit_natural: unit.check_natural().is_ok(),
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("ϖ ⊣ o at ({}, {})", a.name, f.name),
    })
}

/// (ρ ⊣ ε): the unit is an isomorphism; the counit is induced by the
/// base inclusion.
pub fn adjunction_rho_epsilon(w: &World, a: &FF, x: &FF) -> Result<AdjunctionReport> {
    let gr = w.gr();
    let field = &gr.ctx.field;
    // unit A -> ερA: identity on values
    let era = epsilon(w, &rho(w, a));
    let unit = NatTrans::new(a, &era, a.dims.iter().map(|&d| Matrix::identity(field, d)).collect());
    // counit ρεX -> X at (n,m): X((m, E_m) -> (n, E_m))
    let rex = rho(w, &epsilon(w, x));
    let counit_comps: Vec<Matrix> = (0..gr.objects.len())
        .map(|oi| {
            let o = gr.objects[oi];
            let (n, m) = (o.ambient(), o.base());
            let src = gr.obj(Obj::with_base(m, m)).unwrap();
            let mut incl = Matrix::zero(field, m, n);
            for i in 0..m {
                incl.set(i, i, 1);
            }
            let gm = gr.find(src, oi, &incl).expect("base inclusion");
            x.act(gm).clone()
        })
        .collect();
    let counit = NatTrans::new(&rex, x, counit_comps);

    // triangles: ρ(unit) ; counit_ρA = id and unit_εX ; ε(counit) = id
    let rho_nat = |t: &NatTrans| {
        let s = rho(w, &t.src);
        let tt = rho(w, &t.tgt);
        let comps: Vec<Matrix> = gr.objects.iter().map(|o| t.comps[o.base()].clone()).collect();
        NatTrans::new(&s, &tt, comps)
    };
    let eps_nat = |t: &NatTrans| {
        let s = epsilon(w, &t.src);
        let tt = epsilon(w, &t.tgt);
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| t.comps[gr.obj(Obj::with_base(n, n)).unwrap()].clone())
            .collect();
        NatTrans::new(&s, &tt, comps)
    };
    let counit_at_ra = {
        let ra = rho(w, a);
        let re_ra = rho(w, &epsilon(w, &ra));
        let comps: Vec<Matrix> = (0..gr.objects.len())
            .map(|oi| {
                let o = gr.objects[oi];
                let (n, m) = (o.ambient(), o.base());
                let src = gr.obj(Obj::with_base(m, m)).unwrap();
                let mut incl = Matrix::zero(field, m, n);
                for i in 0..m {
                    incl.set(i, i, 1);
                }
                let gm = gr.find(src, oi, &incl).unwrap();
                ra.act(gm).clone()
            })
            .collect();
        NatTrans::new(&re_ra, &ra, comps)
    };
    let rn_unit = rho_nat(&unit);
    let triangle_left = eq_guarded(&rn_unit.compose(&counit_at_ra), &NatTrans::identity(&rho(w, a)), &[&rn_unit.tgt]);
    let unit_at_ex = {
        let ex = epsilon(w, x);
        let er_ex = epsilon(w, &rho(w, &ex));
        NatTrans::new(&ex, &er_ex, ex.dims.iter().map(|&d| Matrix::identity(field, d)).collect())
    };
    let triangle_right = eq_guarded(&unit_at_ex.compose(&eps_nat(&counit)), &NatTrans::identity(&epsilon(w, x)), &[&unit_at_ex.tgt]);
    // unit is an isomorphism
    let unit_iso = unit.is_iso();
    let hom_dims_match = hom_dim(&rho(w, a), x)? == hom_dim(a, &epsilon(w, x))?;
    Ok(AdjunctionReport {
        unit_natural: unit_iso,
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("ρ ⊣ ε at ({}, {})", a.name, x.name),
    })
}

/// (ξ ⊣ σ): the monad adjunction; the unit is the trailing inclusion,
/// the counit the fold.
pub fn adjunction_xi_sigma(w: &World, g: &FF, x: &FF) -> Result<AdjunctionReport> {
    let gr = w.gr();
    let pair = w.pair();
    let field = &gr.ctx.field;
    // unit: G -> σξG (the monad unit transported through σξ = T)
    let unit = monad::monad_unit(w, g);
    let sxg = sigma(w, &xi(w, g));
    // identify T(G) with σξ(G): same dims by construction
    let unit = NatTrans::new(g, &sxg, unit.comps);
    // counit: ξσX -> X
    let xsx = xi(w, &sigma(w, x));
    let counit_comps: Vec<Matrix> = (0..gr.objects.len())
        .map(|oi| {
            let o = gr.objects[oi];
            let (n, m) = (o.ambient(), o.base());
            match gr.obj(Obj::with_base(m + n, m)) {
                Some(src) => {
                    let mut q = Matrix::zero(field, m + n, n);
                    for i in 0..m {
                        q.set(i, i, 1);
                    }
                    for i in 0..n {
                        q.set(m + i, i, 1);
                    }
                    let gm = gr.find(src, oi, &q).expect("counit morphism");
                    x.act(gm).clone()
                }
                None => Matrix::zero(field, xsx.dims[oi], x.dims[oi]),
            }
        })
        .collect();
    let counit = NatTrans::new(&xsx, x, counit_comps);

    // triangles
    let xi_nat = |t: &NatTrans| {
        let s = xi(w, &t.src);
        let tt = xi(w, &t.tgt);
        let comps: Vec<Matrix> = gr
            .objects
            .iter()
            .map(|&o| t.comps[pair.obj(Obj::with_base(o.ambient(), o.base())).unwrap()].clone())
            .collect();
        NatTrans::new(&s, &tt, comps)
    };
    let sigma_nat = |t: &NatTrans| {
        let s = sigma(w, &t.src);
        let tt = sigma(w, &t.tgt);
        let comps: Vec<Matrix> = (0..pair.objects.len())
            .map(|pi| {
                let o = pair.objects[pi];
                match t.src.site.obj(Obj::with_base(o.base() + o.ambient(), o.base())) {
                    Some(i) => t.comps[i].clone(),
                    None => Matrix::zero(field, s.dims[pi], tt.dims[pi]),
                }
            })
            .collect();
        NatTrans::new(&s, &tt, comps)
    };
    let xg = xi(w, g);
    let counit_at_xg = {
        let xsxg = xi(w, &sigma(w, &xg));
        let comps: Vec<Matrix> = (0..gr.objects.len())
            .map(|oi| {
                let o = gr.objects[oi];
                let (n, m) = (o.ambient(), o.base());
                match gr.obj(Obj::with_base(m + n, m)) {
                    Some(src) => {
                        let mut q = Matrix::zero(field, m + n, n);
                        for i in 0..m {
                            q.set(i, i, 1);
                        }
                        for i in 0..n {
                            q.set(m + i, i, 1);
                        }
                        let gm = gr.find(src, oi, &q).unwrap();
                        xg.act(gm).clone()
                    }
                    None => Matrix::zero(field, xsxg.dims[oi], xg.dims[oi]),
                }
            })
            .collect();
        NatTrans::new(&xsxg, &xg, comps)
    };
    let xn_unit = xi_nat(&unit);
    let triangle_left = eq_guarded(&xn_unit.compose(&counit_at_xg), &NatTrans::identity(&xg), &[&xn_unit.tgt]);
    let sx = sigma(w, x);
    let unit_at_sx = NatTrans::new(&sx, &sigma(w, &xi(w, &sx)), monad::monad_unit(w, &sx).comps);
    let triangle_right = eq_guarded(&unit_at_sx.compose(&sigma_nat(&counit)), &NatTrans::identity(&sx), &[&unit_at_sx.tgt]);
    let hom_dims_match = hom_dim(&xi(w, g), x)? == hom_dim(g, &sigma(w, x))?;
    Ok(AdjunctionReport {
        unit_natural: unit.check_natural().is_ok(),
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("ξ ⊣ σ at ({}, {})", g.name, x.name),
    })
}

/// (η ⊣ θ): the unit is the quotient projection, the counit the
/// canonical identification ηθ ≅ id.
pub fn adjunction_eta_theta(w: &World, x: &FF, f: &FF) -> Result<AdjunctionReport> {
    let gr = w.gr();
    let pair = w.pair();
    let field = &gr.ctx.field;
    let (ex, q) = monad::eta(w, x);
    // unit X -> θη(X): at (n, m) the projection at the pair object (n-m, m)
    let tex = theta(w, &ex);
    let unit_comps: Vec<Matrix> = (0..gr.objects.len())
        .map(|oi| {
            let o = gr.objects[oi];
            let p = pair.obj(Obj::with_base(o.ambient() - o.base(), o.base())).unwrap();
            q.comps[p].clone()
        })
        .collect();
    let unit = NatTrans::new(x, &tex, unit_comps);
    // counit ηθ(F) -> F
    let (etf, _) = monad::eta(w, &theta(w, f));
    let counit = {
        // ηθF has the dims of F; the identification is the quotient by
        // the zero image, i.e. the identity in the canonical chart
        let comps: Vec<Matrix> = (0..pair.objects.len())
            .map(|p| {
                if etf.dims[p] == f.dims[p] {
                    Matrix::identity(field, f.dims[p])
                } else {
                    Matrix::zero(field, etf.dims[p], f.dims[p])
                }
            })
            .collect();
        NatTrans::new(&etf, f, comps)
    };
    let theta_nat = |t: &NatTrans| {
        let s = theta(w, &t.src);
        let tt = theta(w, &t.tgt);
        let comps: Vec<Matrix> = gr
            .objects
            .iter()
            .map(|&o| {
                t.comps
                    [pair.obj(Obj::with_base(o.ambient() - o.base(), o.base())).unwrap()]
                .clone()
            })
            .collect();
        NatTrans::new(&s, &tt, comps)
    };
    // triangles: η(unit) ; counit_ηX = id; unit_θF ; θ(counit) = id
    let eta_nat_of_unit = {
        // induced map on cokernels: η is functorial through σ
        let (ex2, q2) = monad::eta(w, &tex);
        let sx_unit = {
            // σ applied to the unit
            let s = &q.src;
            let s2 = &q2.src;
            let comps: Vec<Matrix> = (0..pair.objects.len())
                .map(|pi| {
                    let o = pair.objects[pi];
                    match gr.obj(Obj::with_base(o.base() + o.ambient(), o.base())) {
                        Some(i) => unit.comps[i].clone(),
                        None => Matrix::zero(field, s.dims[pi], s2.dims[pi]),
                    }
                })
                .collect();
            NatTrans::new(s, s2, comps)
        };
        // induced on quotients: section ; σ(unit) ; q2
        let comps: Vec<Matrix> = (0..pair.objects.len())
            .map(|pi| {
                if ex.dims[pi] == 0 {
                    return Matrix::zero(field, 0, ex2.dims[pi]);
                }
                let s1 = section_of(&q.comps[pi], field);
                s1.mul(&sx_unit.comps[pi]).mul(&q2.comps[pi])
            })
            .collect();
        NatTrans::new(&ex, &ex2, comps)
    };
    let counit_at_ex = {
        let (e_tex, _) = monad::eta(w, &tex);
        let comps: Vec<Matrix> = (0..pair.objects.len())
            .map(|p| {
                if e_tex.dims[p] == ex.dims[p] {
                    Matrix::identity(field, ex.dims[p])
                } else {
                    Matrix::zero(field, e_tex.dims[p], ex.dims[p])
                }
            })
            .collect();
        NatTrans::new(&e_tex, &ex, comps)
    };
    let triangle_left = eq_guarded(&eta_nat_of_unit.compose(&counit_at_ex), &NatTrans::identity(&ex), &[&eta_nat_of_unit.tgt]);
    let tf = theta(w, f);
    let unit_at_tf = {
        let (etf2, q3) = monad::eta(w, &tf);
        let t_etf = theta(w, &etf2);
        let comps: Vec<Matrix> = (0..gr.objects.len())
            .map(|oi| {
                let o = gr.objects[oi];
                let p = pair.obj(Obj::with_base(o.ambient() - o.base(), o.base())).unwrap();
                q3.comps[p].clone()
            })
            .collect();
        NatTrans::new(&tf, &t_etf, comps)
    };
    let triangle_right = eq_guarded(&unit_at_tf.compose(&theta_nat(&counit)), &NatTrans::identity(&tf), &[&unit_at_tf.tgt]);
    let hom_dims_match = hom_dim(&ex, f)? == hom_dim(x, &theta(w, f))?;
    Ok(AdjunctionReport {
        unit_natural: unit.check_natural().is_ok(),
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("η ⊣ θ at ({}, {})", x.name, f.name),
    })
}

/// (𝔍 ⊣ 𝔑): unit = inclusion of the full-base summand; counit =
/// chart-transported base inclusions.
pub fn adjunction_jmath_nmath(w: &World, x: &FF, y: &FF) -> Result<AdjunctionReport> {
    let gr = w.gr();
    let tilde = w.gr_tilde();
    let ctx = &gr.ctx;
    let field = &ctx.field;
    // unit: X -> 𝔑𝔍X
    let njx = nmath(w, &jmath(w, x));
    let unit_comps: Vec<Matrix> = (0..gr.objects.len())
        .map(|oi| {
            let o = gr.objects[oi];
            let (n, m) = (o.ambient(), o.base());
            let em = Subspace::coordinate(field, n, m);
            let mut mtx = Matrix::zero(field, x.dims[oi], njx.dims[oi]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                if !em.contains(s).unwrap() {
                    continue;
                }
                let so = gr.obj(Obj::with_base(n, s.dim)).unwrap();
                if *s == em {
                    for i in 0..x.dims[oi] {
                        mtx.set(i, off + i, 1);
                    }
                }
                off += x.dims[so];
            }
            mtx
        })
        .collect();
    let unit = NatTrans::new(x, &njx, unit_comps);
    // counit: 𝔍𝔑Y -> Y on the tilde site
    let jny = jmath(w, &nmath(w, y));
    let counit_comps: Vec<Matrix> = (0..tilde.objects.len())
        .map(|oi| {
            let o = tilde.objects[oi];
            let (n, m) = (o.ambient(), o.base());
            let em = Subspace::coordinate(field, n, m);
            let mut mtx = Matrix::zero(field, jny.dims[oi], y.dims[oi]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                if !em.contains(s).unwrap() {
                    continue;
                }
                let src = tilde.obj(Obj::with_base(n, s.dim)).unwrap();
                let (chart, _) = ctx.chart(s);
                let tm = tilde.find(src, oi, chart).expect("base inclusion in tilde");
                let blk = y.act(tm);
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        mtx.set(off + i, j, blk.at(i, j));
                    }
                }
                off += blk.rows;
            }
            mtx
        })
        .collect();
    let counit = NatTrans::new(&jny, y, counit_comps);
    // hom dims
    let hom_dims_match = hom_dim(&jmath(w, x), y)? == hom_dim(x, &nmath(w, y))?;
    // triangles via generic composites
    let jx = jmath(w, x);
    let j_unit = {
        let jnjx = jmath(w, &njx);
        // 𝔍 applied to the unit: blockwise over base subspaces
        let comps: Vec<Matrix> = (0..tilde.objects.len())
            .map(|oi| {
                let o = tilde.objects[oi];
                let (n, m) = (o.ambient(), o.base());
                let em = Subspace::coordinate(field, n, m);
                let mut mtx = Matrix::zero(field, jx.dims[oi], jnjx.dims[oi]);
                let mut ro = 0;
                let mut co = 0;
                for s in ctx.all_subspaces(n) {
                    if !em.contains(s).unwrap() {
                        continue;
                    }
                    let so = gr.obj(Obj::with_base(n, s.dim)).unwrap();
                    let blk = &unit.comps[so];
                    for i in 0..blk.rows {
                        for j in 0..blk.cols {
                            mtx.set(ro + i, co + j, blk.at(i, j));
                        }
                    }
                    ro += blk.rows;
                    co += blk.cols;
                }
                mtx
            })
            .collect();
        NatTrans::new(&jx, &jmath(w, &njx), comps)
    };
    let counit_at_jx = {
        let jnjx = jmath(w, &nmath(w, &jx));
        let comps: Vec<Matrix> = (0..tilde.objects.len())
            .map(|oi| {
                let o = tilde.objects[oi];
                let (n, m) = (o.ambient(), o.base());
                let em = Subspace::coordinate(field, n, m);
                let mut mtx = Matrix::zero(field, jnjx.dims[oi], jx.dims[oi]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    if !em.contains(s).unwrap() {
                        continue;
                    }
                    let src = tilde.obj(Obj::with_base(n, s.dim)).unwrap();
                    let (chart, _) = ctx.chart(s);
                    let tm = tilde.find(src, oi, chart).unwrap();
                    let blk = jx.act(tm);
                    for i in 0..blk.rows {
                        for j in 0..blk.cols {
                            mtx.set(off + i, j, blk.at(i, j));
                        }
                    }
                    off += blk.rows;
                }
                mtx
            })
            .collect();
        NatTrans::new(&jnjx, &jx, comps)
    };
    let triangle_left = eq_guarded(&j_unit.compose(&counit_at_jx), &NatTrans::identity(&jx), &[&j_unit.tgt]);
    let ny = nmath(w, y);
    let unit_at_ny = {
        let njny = nmath(w, &jmath(w, &ny));
        let comps: Vec<Matrix> = (0..gr.objects.len())
            .map(|oi| {
                let o = gr.objects[oi];
                let (n, m) = (o.ambient(), o.base());
                let em = Subspace::coordinate(field, n, m);
                let mut mtx = Matrix::zero(field, ny.dims[oi], njny.dims[oi]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    if !em.contains(s).unwrap() {
                        continue;
                    }
                    let so = gr.obj(Obj::with_base(n, s.dim)).unwrap();
                    if *s == em {
                        for i in 0..ny.dims[oi] {
                            mtx.set(i, off + i, 1);
                        }
                    }
                    off += ny.dims[so];
                }
                mtx
            })
            .collect();
        NatTrans::new(&ny, &njny, comps)
    };
    let n_counit = {
        let s = nmath(w, &counit.src);
        let t = nmath(w, &counit.tgt);
        let comps: Vec<Matrix> = gr
            .objects
            .iter()
            .map(|&o| counit.comps[tilde.obj(o).unwrap()].clone())
            .collect();
        NatTrans::new(&s, &t, comps)
    };
    let triangle_right = eq_guarded(&unit_at_ny.compose(&n_counit), &NatTrans::identity(&ny), &[&unit_at_ny.tgt]);
    Ok(AdjunctionReport {
        unit_natural: unit.check_natural().is_ok(),
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("𝔍 ⊣ 𝔑 at ({}, {})", x.name, y.name),
    })
}

/// (o_inj ⊣ ϖ_inj): unit = stacked quotient maps, counit = projection
/// onto the zero-subspace summand.
pub fn adjunction_oinj_varpiinj(w: &World, f: &FF, x: &FF) -> Result<AdjunctionReport> {
    let ctx = &w.ctx;
    let field = &ctx.field;
    let vect = w.vect();
    // unit: F -> ϖ_inj o_inj F
    let pof = varpi_inj(w, &oblivion_inj(w, f));
    let unit_comps: Vec<Matrix> = (0..=w.nmax)
        .map(|n| {
            let mut mtx = Matrix::zero(field, f.dims[n], pof.dims[n]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                let (proj, _) = ctx.quot(s);
                let pm = vect.find(n, n - s.dim, proj).expect("projection morphism");
                let blk = f.act(pm);
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        mtx.set(i, off + j, blk.at(i, j));
                    }
                }
                off += blk.cols;
            }
            mtx
        })
        .collect();
    let unit = NatTrans::new(f, &pof, unit_comps);
    // counit: o_inj ϖ_inj X -> X: the zero-subspace summand
    let opx = oblivion_inj(w, &varpi_inj(w, x));
    let counit_comps: Vec<Matrix> = (0..=w.nmax)
        .map(|n| {
            let mut mtx = Matrix::zero(field, opx.dims[n], x.dims[n]);
            let mut off = 0usize;
            for s in ctx.all_subspaces(n) {
                let d = x.dims[n - s.dim];
                if s.dim == 0 {
                    for i in 0..d {
                        mtx.set(off + i, i, 1);
                    }
                }
                off += d;
            }
            mtx
        })
        .collect();
    let counit = NatTrans::new(&opx, x, counit_comps);
    let hom_dims_match = hom_dim(&oblivion_inj(w, f), x)? == hom_dim(f, &varpi_inj(w, x))?;
    // triangles
    let o_unit = {
        let s = oblivion_inj(w, &unit.src);
        let t = oblivion_inj(w, &unit.tgt);
        NatTrans::new(&s, &t, unit.comps.clone())
    };
    let counit_at_of = {
        let of = oblivion_inj(w, f);
        let opof = oblivion_inj(w, &varpi_inj(w, &of));
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| {
                let mut mtx = Matrix::zero(field, opof.dims[n], of.dims[n]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    let d = of.dims[n - s.dim];
                    if s.dim == 0 {
                        for i in 0..d {
                            mtx.set(off + i, i, 1);
                        }
                    }
                    off += d;
                }
                mtx
            })
            .collect();
        NatTrans::new(&opof, &of, comps)
    };
    let triangle_left = eq_guarded(&o_unit.compose(&counit_at_of), &NatTrans::identity(&oblivion_inj(w, f)), &[&o_unit.tgt]);
    let unit_at_px = {
        let px = varpi_inj(w, x);
        let ppx = varpi_inj(w, &oblivion_inj(w, &px));
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| {
                let mut mtx = Matrix::zero(field, px.dims[n], ppx.dims[n]);
                let mut off = 0usize;
                for s in ctx.all_subspaces(n) {
                    let (proj, _) = ctx.quot(s);
                    let pm = vect.find(n, n - s.dim, proj).unwrap();
                    let blk = px.act(pm);
                    for i in 0..blk.rows {
                        for j in 0..blk.cols {
                            mtx.set(i, off + j, blk.at(i, j));
                        }
                    }
                    off += blk.cols;
                }
                mtx
            })
            .collect();
        NatTrans::new(&px, &ppx, comps)
    };
    let p_counit = {
        // ϖ_inj applied to the counit: blockwise across W-summands
        let s = varpi_inj(w, &counit.src);
        let t = varpi_inj(w, &counit.tgt);
        let comps: Vec<Matrix> = (0..=w.nmax)
            .map(|n| {
                let mut mtx = Matrix::zero(field, s.dims[n], t.dims[n]);
                let mut ro = 0;
                let mut co = 0;
                for sub in ctx.all_subspaces(n) {
                    let blk = &counit.comps[n - sub.dim];
                    for i in 0..blk.rows {
                        for j in 0..blk.cols {
                            mtx.set(ro + i, co + j, blk.at(i, j));
                        }
                    }
                    ro += blk.rows;
                    co += blk.cols;
                }
                mtx
            })
            .collect();
        NatTrans::new(&s, &t, comps)
    };
    let triangle_right = eq_guarded(&unit_at_px.compose(&p_counit), &NatTrans::identity(&varpi_inj(w, x)), &[&unit_at_px.tgt]);
    Ok(AdjunctionReport {
        unit_natural: unit.check_natural().is_ok(),
        counit_natural: counit.check_natural().is_ok(),
        triangle_left,
        triangle_right,
        hom_dims_match,
        detail: format!("o_inj ⊣ ϖ_inj at ({}, {})", f.name, x.name),
    })
}

fn section_of(q: &Matrix, field: &Arc<crate::gfq::Field>) -> Matrix {
    // section s with s * q = id for a surjective q (rows >= cols)
    let a = q.rows;
    let b = q.cols;
    let mut rows = Vec::with_capacity(b);
    for i in 0..b {
        let mut stacked = Matrix::zero(field, a + 1, b);
        for r in 0..a {
            for c in 0..b {
                stacked.set(r, c, q.at(r, c));
            }
        }
        stacked.set(a, i, field.neg(1));
        let ker = stacked.kernel();
        let mut found = None;
        for r in 0..ker.rows {
            let last = ker.at(r, a);
            if last != 0 {
                let inv = field.inv(last).unwrap();
                found = Some((0..a).map(|c| field.mul(ker.at(r, c), inv)).collect::<Vec<u8>>());
                break;
            }
        }
        rows.push(found.expect("q surjective"));
    }
    Matrix::from_rows(field, a, &rows)
}

// ---------------------------------------------------------------------
// the triangular integral comparison and its quotient-side shadow

/// The triangular natural isomorphism between the image-component and
/// preimage-component integrals of a contained-base functor: component
/// W -> B is the action of the inclusion when W ⊆ B, zero otherwise.
pub fn omega_tilde_triangular(w: &World, x: &FF) -> Result<IsoReport> {
    let tilde = x.site.clone();
    if !matches!(tilde.kind, SiteKind::GrTilde(_)) {
        return Err(Error::KindMismatch("triangular comparison needs a tilde functor".into()));
    }
    let ctx = &tilde.ctx;
    let field = &ctx.field;
    let lhs = omega_tilde(w, x);
    let rhs = omega_tilde_prime(w, x);
    let mut comps = Vec::with_capacity(w.nmax + 1);
    for a in 0..=w.nmax {
        let all: Vec<&Subspace> = ctx.all_subspaces(a).iter().collect();
        let dims_at: Vec<usize> = all
            .iter()
            .map(|s| x.dims[tilde.obj(Obj::with_base(a, s.dim)).unwrap()])
            .collect();
        let offs: Vec<usize> = dims_at
            .iter()
            .scan(0usize, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = dims_at.iter().sum();
        let mut mtx = Matrix::zero(field, total, total);
        for (wi, wsub) in all.iter().enumerate() {
            for (bi, bsub) in all.iter().enumerate() {
                if !bsub.contains(wsub).unwrap() {
                    continue;
                }
                let src = tilde.obj(Obj::with_base(a, wsub.dim)).unwrap();
                let tgt = tilde.obj(Obj::with_base(a, bsub.dim)).unwrap();
                let t = ctx.gr_transport(&Matrix::identity(field, a), wsub, bsub);
                let tm = tilde.find(src, tgt, &t).expect("inclusion transport");
                let blk = x.act(tm);
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        mtx.set(offs[wi] + i, offs[bi] + j, blk.at(i, j));
                    }
                }
            }
        }
        comps.push(mtx);
    }
    let iso = NatTrans::new(&lhs, &rhs, comps);
    Ok(IsoReport::from_nat(iso, format!("ω̃({}) ≅ ω̃′({})", x.name, x.name)))
}

/// The quotient-side comparison: the preimage-component integral of the
/// injection restriction agrees with the integral of the reduction.
/// Both sides sum F(V/W); the triangular isomorphism is inherited from
/// the contained-base comparison applied to the tilde reduction.
pub fn quotient_integrals_iso(w: &World, f: &FF) -> Result<IsoReport> {
    let ctx = &w.ctx;
    let field = &ctx.field;
    let vect = w.vect();
    let lhs = omega(w, &kappa(w, f));
    let rhs = varpi_inj(w, &oblivion_inj(w, f));
    let mut comps = Vec::with_capacity(w.nmax + 1);
    for a in 0..=w.nmax {
        let all: Vec<&Subspace> = ctx.all_subspaces(a).iter().collect();
        let dims_at: Vec<usize> = all.iter().map(|s| f.dims[a - s.dim]).collect();
        let offs: Vec<usize> = dims_at
            .iter()
            .scan(0usize, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = dims_at.iter().sum();
        let mut mtx = Matrix::zero(field, total, total);
        for (wi, wsub) in all.iter().enumerate() {
            for (bi, bsub) in all.iter().enumerate() {
                if !bsub.contains(wsub).unwrap() {
                    continue;
                }
                // induced quotient-onto-quotient map V/W -> V/B
                let qm = quotient_map(&Matrix::identity(field, a), wsub, bsub);
                let vm = vect.find(a - wsub.dim, a - bsub.dim, &qm).expect("quotient map");
                let blk = f.act(vm);
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        mtx.set(offs[wi] + i, offs[bi] + j, blk.at(i, j));
                    }
                }
            }
        }
        comps.push(mtx);
    }
    let iso = NatTrans::new(&lhs, &rhs, comps);
    Ok(IsoReport::from_nat(iso, format!("ωκ({}) ≅ ϖ_inj o_inj({})", f.name, f.name)))
}

// ---------------------------------------------------------------------
// division by standard injectives and the shift-of-integral splitting

/// Direct construction of `(X : I_{(V,W)})` from the joint-subspace
/// description: at (A, B) the sum of X(A ⊕ V, C) over C inside
/// B ⊕ W surjecting onto both (the extension coordinates trail).
pub fn division_by_std_injective_formula(_w: &World, x: &FF, v: usize, wsub: &Subspace) -> FF {
    let gr = x.site.clone();
    let ctx = gr.ctx.clone();
    let field = ctx.field.clone();
    let name = format!("({} : I[({v},{})])", x.name, wsub.serialize());
    // W embedded on the trailing v coordinates of F^{a+v}
    let embed_w = |a: usize| -> Subspace {
        let rows: Vec<Vec<u8>> = (0..wsub.dim)
            .map(|i| {
                let mut r = vec![0u8; a + v];
                for (j, &c) in wsub.basis.row(i).iter().enumerate() {
                    r[a + j] = c;
                }
                r
            })
            .collect();
        Subspace::from_vectors(&field, a + v, &rows).unwrap()
    };
    let labels = {
        let ctx = ctx.clone();
        let field = field.clone();
        let gr = gr.clone();
        let x = x.clone();
        move |obj: usize| -> Vec<(Subspace, usize)> {
            let o = gr.objects[obj];
            let (a, b) = (o.ambient(), o.base());
            if a + v > ctx.namb {
                return vec![];
            }
            let wemb = embed_w(a);
            let eb = Subspace::coordinate(&field, a + v, b);
            let hull = eb.sum(&wemb).unwrap();
            let mut proj_a = Matrix::zero(&field, a + v, a);
            for i in 0..a {
                proj_a.set(i, i, 1);
            }
            let mut proj_v = Matrix::zero(&field, a + v, v);
            for i in 0..v {
                proj_v.set(a + i, i, 1);
            }
            let wdown = Subspace::from_matrix_rows(&wemb.basis.mul(&proj_v));
            ctx.all_subspaces(a + v)
                .iter()
                .filter(|c| {
                    hull.contains(c).unwrap()
                        && Subspace::from_matrix_rows(&c.basis.mul(&proj_a))
                            == Subspace::coordinate(&field, a, b)
                        && Subspace::from_matrix_rows(&c.basis.mul(&proj_v)) == wdown
                })
                .map(|c| {
                    let io = gr.obj(Obj::with_base(a + v, c.dim)).unwrap();
                    (c.clone(), x.dims[io])
                })
                .collect()
        }
    };
    let gr2 = gr.clone();
    let ctx2 = ctx.clone();
    let field2 = field.clone();
    let x2 = x.clone();
    funcat::build_block_functor(
        &gr,
        &name,
        labels,
        move |fm, c: &Subspace| {
            let o = gr2.objects[fm.src];
            let o2 = gr2.objects[fm.tgt];
            let (a, a2) = (o.ambient(), o2.ambient());
            if a + v > ctx2.namb || a2 + v > ctx2.namb {
                return vec![];
            }
            let ext = gr2.matrix(fm).block_diag(&Matrix::identity(&field2, v));
            let img = c.image(&ext);
            let src = gr2.obj(Obj::with_base(a + v, c.dim)).unwrap();
            let tgt = gr2.obj(Obj::with_base(a2 + v, img.dim)).unwrap();
            let t = ctx2.gr_transport(&ext, c, &img);
            let gm = gr2.find(src, tgt, &t).expect("extended transport");
            vec![(img, x2.act(gm).clone())]
        },
        {
            let gr = gr.clone();
            let ctx = ctx.clone();
            move |obj| gr.objects[obj].ambient() + v <= ctx.namb
        },
    )
}

pub struct SplittingReport {
    pub dims_equal: bool,
    pub iso: IsoReport,
    pub formula_matches_division: bool,
}

/// The shift of an integral splits over the base grassmannian:
/// `Δ_V ω(X) ≅ ⊕_{W ∈ Gr(V)} ω(X : I_{(V,W)})`, with the divisions
/// realized by the joint-subspace formula. Also cross-checks the
/// formula against the brute-adjunction division on dims when asked.
pub fn delta_omega_splitting(
    w: &World,
    x: &FF,
    v: usize,
    check_division_oracle: bool,
) -> Result<SplittingReport> {
    let gr = x.site.clone();
    let ctx = gr.ctx.clone();
    let field = &ctx.field;
    let vect = w.vect();
    let lhs = funcat::shift(&omega(w, x), v);
    let parts: Vec<(Subspace, FF)> = ctx
        .all_subspaces(v)
        .iter()
        .map(|ws| (ws.clone(), omega(w, &division_by_std_injective_formula(w, x, v, ws))))
        .collect();
    let rhs = funcat::direct_sum(&parts.iter().map(|(_, f)| f.clone()).collect::<Vec<_>>());
    let dims_equal = lhs.same_dims(&rhs);

    // explicit iso: the U-summand of Δ_V ω(X)(E_a) (U ⊆ F^{a+v}) goes to
    // (W, B, C) with W and B the two coordinate shadows and C the chart
    // transport of U
    let mut comps = Vec::with_capacity(vect.objects.len());
    for a in 0..vect.objects.len() {
        if a + v > ctx.namb {
            comps.push(Matrix::zero(field, lhs.dims[a], rhs.dims[a]));
            continue;
        }
        // right-hand offsets: (W, B, C) in nested enumeration order
        use std::collections::HashMap;
        let mut offsets: HashMap<(String, String, String), usize> = HashMap::new();
        let mut off = 0usize;
        for (ws, _) in &parts {
            let _ = &ws;
            for bsub in ctx.all_subspaces(a) {
                let bo = gr.obj(Obj::with_base(a, bsub.dim)).unwrap();
                let o = bo;
                // labels of div at the skeletal object (a, dim B)
                let labels = div_labels(w, x, v, ws, a, gr.objects[o].base());
                for (c, d) in labels {
                    offsets.insert((ws.serialize(), bsub.serialize(), c.serialize()), off);
                    off += d;
                }
            }
        }
        debug_assert_eq!(off, rhs.dims[a]);

        let mut proj_a = Matrix::zero(field, a + v, a);
        for i in 0..a {
            proj_a.set(i, i, 1);
        }
        let mut proj_v = Matrix::zero(field, a + v, v);
        for i in 0..v {
            proj_v.set(a + i, i, 1);
        }
        let mut mtx = Matrix::zero(field, lhs.dims[a], rhs.dims[a]);
        let mut row = 0usize;
        for u_space in ctx.all_subspaces(a + v) {
            let xo = gr.obj(Obj::with_base(a + v, u_space.dim)).unwrap();
            let d = x.dims[xo];
            if d == 0 {
                continue;
            }
            let wsub = Subspace::from_matrix_rows(&u_space.basis.mul(&proj_v));
            let bsub = Subspace::from_matrix_rows(&u_space.basis.mul(&proj_a));
            // transport U through the chart of B: C = U (u_B^{-1} ⊕ 1)
            let (_, ubinv) = ctx.chart(&bsub);
            let trans = ubinv.block_diag(&Matrix::identity(field, v));
            let c = u_space.image(&trans);
            let key = (wsub.serialize(), bsub.serialize(), c.serialize());
            let col0 = *offsets.get(&key).expect("label triple present on the right");
            // correction block: chart change from U to C
            let t = ctx.gr_transport(&trans, u_space, &c);
            let co = gr.obj(Obj::with_base(a + v, c.dim)).unwrap();
            let gm = gr.find(xo, co, &t).expect("chart change morphism");
            let blk = x.act(gm);
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    mtx.set(row + i, col0 + j, blk.at(i, j));
                }
            }
            row += d;
        }
        comps.push(mtx);
    }
    let iso = NatTrans::new(&lhs, &rhs, comps);
    let iso = IsoReport::from_nat(iso, format!("Δ_{v} ω({}) splitting", x.name));

    // optional cross-check of the formula against brute division
    let mut formula_matches_division = true;
    if check_division_oracle {
        for (ws, _) in &parts {
            let formula = division_by_std_injective_formula(w, x, v, ws);
            let wo = gr.obj(Obj::with_base(v, ws.dim)).unwrap();
            let igr = std_injective(&gr, wo);
            let brute = funcat::division(x, &igr)?;
            formula_matches_division &= (0..gr.objects.len()).all(|o| {
                !formula.valid[o] || formula.dims[o] == brute.dims[o]
            });
        }
    }
    Ok(SplittingReport { dims_equal, iso, formula_matches_division })
}

fn div_labels(
    w: &World,
    x: &FF,
    v: usize,
    wsub: &Subspace,
    a: usize,
    b: usize,
) -> Vec<(Subspace, usize)> {
    let gr = x.site.clone();
    let ctx = &gr.ctx;
    let field = &ctx.field;
    let _ = w;
    let rows: Vec<Vec<u8>> = (0..wsub.dim)
        .map(|i| {
            let mut r = vec![0u8; a + v];
            for (j, &c) in wsub.basis.row(i).iter().enumerate() {
                r[a + j] = c;
            }
            r
        })
        .collect();
    let wemb = Subspace::from_vectors(field, a + v, &rows).unwrap();
    let eb = Subspace::coordinate(field, a + v, b);
    let hull = eb.sum(&wemb).unwrap();
    let mut proj_a = Matrix::zero(field, a + v, a);
    for i in 0..a {
        proj_a.set(i, i, 1);
    }
    let mut proj_v = Matrix::zero(field, a + v, v);
    for i in 0..v {
        proj_v.set(a + i, i, 1);
    }
    let wdown = Subspace::from_matrix_rows(&wemb.basis.mul(&proj_v));
    ctx.all_subspaces(a + v)
        .iter()
        .filter(|c| {
            hull.contains(c).unwrap()
                && Subspace::from_matrix_rows(&c.basis.mul(&proj_a))
                    == Subspace::coordinate(field, a, b)
                && Subspace::from_matrix_rows(&c.basis.mul(&proj_v)) == wdown
        })
        .map(|c| {
            let io = gr.obj(Obj::with_base(a + v, c.dim)).unwrap();
            (c.clone(), x.dims[io])
        })
        .collect()
}

// ---------------------------------------------------------------------
// translation hom comparison and the essential extension probe

/// Degree-zero instance of the internal-hom translation identity:
/// `Hom_Gr(ιF, X)(A) ≅ hom(F, τ_A X)`.
pub fn tau_hom_check(w: &World, f: &FF, x: &FF, a: Obj) -> Result<(usize, usize)> {
    let gr = w.gr();
    let ao = gr
        .obj(a)
        .ok_or_else(|| Error::TruncationExceeded(format!("{a:?}")))?;
    let ih = funcat::internal_hom(&iota(w, f), x)?;
    let lhs = ih.dims[ao];
    let rhs = hom_dim(f, &tau_translate(w, x, a))?;
    Ok((lhs, rhs))
}

pub struct EssentialExtensionReport {
    pub functorial: bool,
    pub nonsplit: bool,
    pub cardinal_vanishes: bool,
}

/// Builds the two-step object with trivial group actions and injective
/// connecting map, integrates it, and verifies the resulting extension
/// admits no splitting; also recomputes the supporting cardinal
/// congruence by enumeration.
pub fn essential_extension_probe(
    w: &World,
    n: usize,
    m_dim: usize,
    n_dim: usize,
    u: &Matrix,
) -> Result<EssentialExtensionReport> {
    if n == 0 || u.rows != m_dim || u.cols != n_dim || u.rank() != m_dim {
        return Err(Error::HypothesisViolated(
            "need n >= 1, trivial actions, and an injective connecting map".into(),
        ));
    }
    if n + 1 > w.nmax {
        return Err(Error::TruncationExceeded("two-step support exceeds the site".into()));
    }
    let surj = w.surj();
    let field = &surj.ctx.field;
    // Z: M at E_{n+1}, N at E_n, connecting epis act by u
    let dims: Vec<usize> = surj
        .objects
        .iter()
        .map(|o| {
            if o.ambient() == n + 1 {
                m_dim
            } else if o.ambient() == n {
                n_dim
            } else {
                0
            }
        })
        .collect();
    let mut action = Vec::with_capacity(surj.total_mors);
    for m in surj.morphisms() {
        let (a, b) = (surj.objects[m.src].ambient(), surj.objects[m.tgt].ambient());
        let mat = if a == n + 1 && b == n + 1 {
            Matrix::identity(field, m_dim)
        } else if a == n && b == n {
            Matrix::identity(field, n_dim)
        } else if a == n + 1 && b == n {
            u.clone()
        } else {
            Matrix::zero(field, dims[m.src], dims[m.tgt])
        };
        action.push(mat);
    }
    let z: FF = Arc::new(funcat::FiniteFunctor {
        site: surj.clone(),
        name: "Z".into(),
        dims,
        action,
        valid: vec![true; surj.objects.len()],
    });
    let functorial = z.check_functoriality().is_ok();

    // quotient Z -> X (identity at E_{n+1})
    let x_top: FF = {
        let dims: Vec<usize> = surj
            .objects
            .iter()
            .map(|o| if o.ambient() == n + 1 { m_dim } else { 0 })
            .collect();
        let mut action = Vec::with_capacity(surj.total_mors);
        for m in surj.morphisms() {
            let (a, b) = (surj.objects[m.src].ambient(), surj.objects[m.tgt].ambient());
            let mat = if a == n + 1 && b == n + 1 {
                Matrix::identity(field, m_dim)
            } else {
                Matrix::zero(field, dims[m.src], dims[m.tgt])
            };
            action.push(mat);
        }
        Arc::new(funcat::FiniteFunctor {
            site: surj.clone(),
            name: "X".into(),
            dims,
            action,
            valid: vec![true; surj.objects.len()],
        })
    };
    let proj = NatTrans::new(&z, &x_top, {
        (0..surj.objects.len())
            .map(|o| {
                if surj.objects[o].ambient() == n + 1 {
                    Matrix::identity(field, m_dim)
                } else {
                    Matrix::zero(field, z.dims[o], x_top.dims[o])
                }
            })
            .collect()
    });
    proj.check_natural().map_err(|_| Error::HypothesisViolated("projection not natural".into()))?;

    // integrate and look for a splitting of ϖ(proj)
    let vproj = varpi_nat(w, &proj);
    let hom = funcat::hom_space(&vproj.tgt, &vproj.src)?;
    let objs = hom.objs.clone();
    // does some s in hom(ϖX, ϖZ) satisfy s . ϖ(proj) = id?
    let field2 = field.clone();
    let id_flat = NatTrans::identity(&vproj.tgt).flatten(&objs);
    let mut solver = funcat::NullspaceSolver::new(&field2, hom.dim() + 1);
    // we need membership of id in the affine span {coeffs . (basis_i . vproj)}
    // encode: sum c_i * flat(basis_i . vproj) - t * id = 0 with t != 0
    let flats: Vec<Vec<u8>> = hom
        .basis
        .iter()
        .map(|b| b.compose(&vproj).flatten(&objs))
        .collect();
    for pos in 0..id_flat.len() {
        let mut row = vec![0u8; hom.dim() + 1];
        for (i, fl) in flats.iter().enumerate() {
            row[i] = fl[pos];
        }
        row[hom.dim()] = field2.neg(id_flat[pos]);
        solver.add_row(&row);
    }
    let (null, _) = solver.nullspace();
    let nonsplit = !null.iter().any(|v| v[hom.dim()] != 0);

    // the supporting congruence: |W \ B| = q^{n+1} - q^n vanishes in k
    let q = field.q as u64;
    let card = q.pow((n + 1) as u32) - q.pow(n as u32);
    let cardinal_vanishes = (card % field.p as u64) == 0;
    Ok(EssentialExtensionReport { functorial, nonsplit, cardinal_vanishes })
}

// ---------------------------------------------------------------------
// commutation invariants

/// `Δ ∘ ι = ι ∘ Δ` bit-exactly at the site level.
pub fn delta_iota_commutes(w: &World, f: &FF) -> bool {
    let (lhs, _) = funcat::difference(&iota(w, f));
    let (df, _) = funcat::difference(f);
    let rhs = iota(w, &df);
    lhs.same_dims(&rhs)
        && w.gr().morphisms().all(|m| {
            !(lhs.valid[m.src] && lhs.valid[m.tgt] && rhs.valid[m.src] && rhs.valid[m.tgt])
                || lhs.act(m) == rhs.act(m)
        })
}

/// `Δ ∘ κ = κ ∘ Δ` bit-exactly.
pub fn delta_kappa_commutes(w: &World, f: &FF) -> bool {
    let (lhs, _) = funcat::difference(&kappa(w, f));
    let (df, _) = funcat::difference(f);
    let rhs = kappa(w, &df);
    lhs.same_dims(&rhs)
        && w.gr().morphisms().all(|m| {
            !(lhs.valid[m.src] && lhs.valid[m.tgt] && rhs.valid[m.src] && rhs.valid[m.tgt])
                || lhs.act(m) == rhs.act(m)
        })
}

/// The difference of a pseudo-constant functor vanishes, and the
/// pseudo-constant counit is invertible exactly in that case.
pub fn pseudo_constant_check(w: &World, x: &FF) -> (bool, bool) {
    let (dx, _) = funcat::difference(x);
    let delta_zero = dx.is_zero();
    // counit ρε(X) -> X
    let gr = w.gr();
    let field = &gr.ctx.field;
    let rex = rho(w, &epsilon(w, x));
    let comps: Vec<Matrix> = (0..gr.objects.len())
        .map(|oi| {
            let o = gr.objects[oi];
            let (n, m) = (o.ambient(), o.base());
            let src = gr.obj(Obj::with_base(m, m)).unwrap();
            let mut incl = Matrix::zero(field, m, n);
            for i in 0..m {
                incl.set(i, i, 1);
            }
            let gm = gr.find(src, oi, &incl).unwrap();
            x.act(gm).clone()
        })
        .collect();
    let counit = NatTrans::new(&rex, x, comps);
    (delta_zero, counit.is_iso())
}

/// ε ∘ ι is the restriction to surjections, bit-exactly.
pub fn epsilon_iota_is_oblivion(w: &World, f: &FF) -> bool {
    let lhs = epsilon(w, &iota(w, f));
    let rhs = oblivion(w, f);
    lhs.dims == rhs.dims
        && w.surj().morphisms().all(|m| lhs.act(m) == rhs.act(m))
}

/// ω ∘ ρ is the subspace-summed integral of the base functor,
/// bit-exactly.
pub fn omega_rho_is_varpi(w: &World, a: &FF) -> bool {
    let lhs = omega(w, &rho(w, a));
    let rhs = varpi(w, a);
    lhs.dims == rhs.dims
        && w.vect().morphisms().all(|m| lhs.act(m) == rhs.act(m))
}
