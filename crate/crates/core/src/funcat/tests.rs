use super::*;
use crate::corpus::World;
use crate::fundops::catalog;
use crate::linalg::gaussian_binomial;
use std::sync::Arc;

fn w2(nmax: usize) -> Arc<World> {
    World::new(2, 1, nmax).unwrap()
}
fn w3(nmax: usize) -> Arc<World> {
    World::new(3, 1, nmax).unwrap()
}

#[test]
fn projective_basics() {
    let w = w2(3);
    let v = w.vect();
    let p0 = std_projective(&v, 0);
    assert_eq!(p0.dims, vec![1, 1, 1, 1], "P_0 is the constant functor");
    let p1 = w.p_vect(1);
    assert_eq!(p1.dims, vec![1, 2, 4, 8]);
    p1.check_functoriality().unwrap();
    std_projective(&w.gr(), w.gr_obj(2, 1)).check_functoriality().unwrap();
}

#[test]
fn injective_basics() {
    let w = w2(3);
    let v = w.vect();
    let i0 = std_injective(&v, 0);
    assert_eq!(i0.dims, vec![1, 1, 1, 1]);
    let i1 = w.i_vect(1);
    assert_eq!(i1.dims, vec![1, 2, 4, 8]);
    i1.check_functoriality().unwrap();
}

#[test]
fn functoriality_negative_control() {
    let w = w2(2);
    let p1 = w.p_vect(1);
    let mut action = p1.action.clone();
    // corrupt one non-identity action matrix
    let v = w.vect();
    let bad = v
        .morphisms()
        .find(|m| m.src == 1 && m.tgt == 2)
        .unwrap();
    let idx = v.flat(bad);
    let flipped = action[idx].at(0, 0) ^ 1;
    action[idx].set(0, 0, flipped);
    let corrupted = FiniteFunctor {
        site: p1.site.clone(),
        name: "bad".into(),
        dims: p1.dims.clone(),
        action,
        valid: p1.valid.clone(),
    };
    assert!(corrupted.check_functoriality().is_err());
}

#[test]
fn yoneda_hom_dims() {
    let w = w2(2);
    let v = w.vect();
    let samples = vec![
        constant(&v, 1),
        tautological(&v),
        w.p_vect(1),
        w.i_vect(1),
        w.k_gr(),
    ];
    for e in 0..=2usize {
        let pe = std_projective(&v, e);
        for g in &samples {
            let hom = hom_space(&pe, g).unwrap();
            assert_eq!(hom.dim(), g.dims[e], "hom(P_E, G) = G(E) for {}", g.name);
        }
    }
    // co-Yoneda: hom(F, I_E) = F(E)^*
    for e in 0..=2usize {
        let ie = std_injective(&v, e);
        for g in &samples {
            let hom = hom_space(g, &ie).unwrap();
            assert_eq!(hom.dim(), g.dims[e], "hom(F, I_E) = F(E)* for {}", g.name);
        }
    }
    assert_eq!(hom_dim(&constant(&v, 1), &constant(&v, 1)).unwrap(), 1);
}

#[test]
fn k_gr_dims() {
    let w = w2(3);
    let kgr = w.k_gr();
    assert_eq!(kgr.dims, vec![1, 2, 5, 16]);
    kgr.check_functoriality().unwrap();
    let w3 = w3(2);
    assert_eq!(w3.k_gr().dims, vec![1, 2, 6]);
    // F_3: subspaces of F_3^2: 1 + 4 + 1 = 6
    assert_eq!(
        w3.k_gr().dims[2] as u64,
        gaussian_binomial(3, 2, 0) + gaussian_binomial(3, 2, 1) + gaussian_binomial(3, 2, 2)
    );
}

#[test]
fn duality_on_vect() {
    let w = w2(2);
    let v = w.vect();
    let k = constant(&v, 1);
    let dk = dual(&k, None).unwrap();
    assert_eq!(dk.dims, k.dims);
    dk.check_functoriality().unwrap();
    // D(P_V) has the dims of I_V and vice versa
    let p1 = w.p_vect(1);
    let dp1 = dual(&p1, None).unwrap();
    assert_eq!(dp1.dims, w.i_vect(1).dims);
    dp1.check_functoriality().unwrap();
    // double dual is bit-equal on dims and actions for these
    let ddp1 = dual(&dp1, None).unwrap();
    assert_eq!(ddp1.dims, p1.dims);
    for m in v.morphisms() {
        assert_eq!(ddp1.act(m), p1.act(m));
    }
}

#[test]
fn duality_surj_inj_swap() {
    let w = w2(2);
    let surj = w.surj();
    let inj = w.inj();
    let ps = std_projective(&surj, 1);
    let d = dual(&ps, Some(&inj)).unwrap();
    d.check_functoriality().unwrap();
    assert_eq!(d.dims, std_injective(&inj, 1).dims);
}

#[test]
fn tensor_unit_and_exactness() {
    let w = w2(2);
    let v = w.vect();
    let k = constant(&v, 1);
    let p1 = w.p_vect(1);
    let t = tensor(&p1, &k).unwrap();
    assert_eq!(t.dims, p1.dims);
    t.check_functoriality().unwrap();
    // kernel of the augmentation has codimension one pointwise
    let kgr = w.k_gr();
    let aug = w.augmentation(&kgr);
    aug.check_natural().unwrap();
    let (ker, incl) = kernel(&aug);
    assert_eq!(ker.dims, vec![0, 1, 4]);
    ker.check_functoriality().unwrap();
    incl.check_natural().unwrap();
    let (_, proj) = cokernel(&incl);
    assert!(exact_at(&incl, &proj));
}

#[test]
fn kernel_cokernel_trivia() {
    let w = w2(2);
    let p = w.p_vect(1);
    let (kid, _) = kernel(&NatTrans::identity(&p));
    assert!(kid.is_zero());
    let z = zero_functor(&p.site);
    let (ck, _) = cokernel(&NatTrans::zero(&z, &p));
    assert_eq!(ck.dims, p.dims);
}

#[test]
fn total_tensor_of_surj_projectives() {
    let w = w2(3);
    let s = w.surj();
    let p1 = std_projective(&s, 1);
    let tt = total_tensor(&p1, &p1).unwrap();
    let p2 = std_projective(&s, 2);
    assert_eq!(tt.dims, p2.dims, "P1 ⊗̃ P1 has the dims of P2");
    tt.check_functoriality().unwrap();
    // unit: F ⊗̃ Is_0 = F
    let is0 = w.is_n(0);
    let unit = total_tensor(&p1, &is0).unwrap();
    assert_eq!(unit.dims, p1.dims);
    unit.check_functoriality().unwrap();
}

#[test]
fn total_tensor_gr_projectives() {
    let w = w2(2);
    let gr = w.gr();
    let p11 = std_projective(&gr, w.gr_obj(1, 1));
    let tt = total_tensor(&p11, &p11).unwrap();
    tt.check_functoriality().unwrap();
    let p22 = std_projective(&gr, w.gr_obj(2, 2));
    assert_eq!(tt.dims, p22.dims);
    // monomorphism from the plain tensor
    let (mono, _) = tensor_into_total(&p11, &p11).unwrap();
    mono.check_natural().unwrap();
    for c in &mono.comps {
        assert_eq!(c.rank(), c.rows, "injective components");
    }
}

#[test]
fn shift_and_difference() {
    let w = w2(3);
    let v = w.vect();
    let k = constant(&v, 1);
    let (dk, _) = difference(&k);
    assert!(dk.is_zero(), "difference of a constant vanishes");
    // unit splits the counit
    let p1 = w.p_vect(1);
    let unit = shift_unit(&p1);
    let counit = shift_counit(&p1);
    let comp = unit.compose(&counit);
    for (i, c) in comp.comps.iter().enumerate() {
        if comp.src.valid[i] && counit.tgt.valid[i] && unit.tgt.valid[i] {
            assert_eq!(*c, crate::linalg::Matrix::identity(&v.ctx.field, p1.dims[i]));
        }
    }
    // difference of P_{E_1} over F_2 has dims 2^n on the valid range
    let (dp, _) = difference(&p1);
    for n in 0..=2usize {
        assert!(dp.valid[n]);
        assert_eq!(dp.dims[n], 1 << n);
    }
    dp.check_functoriality().unwrap();
}

#[test]
fn degrees() {
    let w = w2(3);
    let v = w.vect();
    assert_eq!(polynomial_degree(&constant(&v, 1)), Degree::Poly(0));
    assert_eq!(polynomial_degree(&tautological(&v)), Degree::Poly(1));
    assert_eq!(polynomial_degree(&zero_functor(&v)), Degree::ZeroFunctor);
    // standard projectives are not polynomial at any truncation
    assert_eq!(polynomial_degree(&w.p_vect(1)), Degree::ExceedsRange);
    // the reduced projective has the degree-one simple as quotient but
    // is itself non-polynomial
    assert_eq!(polynomial_degree(&w.p_bar(1)), Degree::ExceedsRange);
}

#[test]
fn scalar_decomposition_q2() {
    let w = w2(3);
    let p1 = w.p_vect(1);
    let parts = scalar_decomposition(&p1).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0].0, 0);
    assert_eq!(parts[0].1.dims, vec![1, 1, 1, 1]);
    assert_eq!(parts[1].0, 1);
    assert_eq!(parts[1].1.dims, vec![0, 1, 3, 7]);
    for (_, f, incl) in &parts {
        f.check_functoriality().unwrap();
        incl.check_natural().unwrap();
    }
}

#[test]
fn scalar_decomposition_q3() {
    let w = w3(1);
    let p1 = w.p_vect(1);
    let parts = scalar_decomposition(&p1).unwrap();
    // dims at E_1: q^1 = 3 split as 1 + 1 + 1 across weights 0, 1, 2
    let at_e1: Vec<usize> = parts.iter().map(|(_, f, _)| f.dims[1]).collect();
    assert_eq!(at_e1, vec![1, 1, 1]);
    // k[Gr] = k ⊕ reduced part of weight q-1
    let w3b = w3(2);
    let kgr = w3b.k_gr();
    let parts = scalar_decomposition(&kgr).unwrap();
    assert_eq!(parts[0].0, 0);
    assert_eq!(parts[0].1.dims, vec![1, 1, 1]);
    assert!(parts.iter().filter(|(i, _, _)| *i > 0 && *i < 2).all(|(_, f, _)| f.is_zero()));
    let top = parts.iter().find(|(i, _, _)| *i == 2).unwrap();
    assert_eq!(top.1.dims, vec![0, 1, 5]);
}

#[test]
fn frobenius_twist_f4() {
    let w = Arc::new(World::new(2, 2, 1).unwrap());
    let p1 = w.p_vect(1);
    let t = frobenius_twist(&p1);
    assert_eq!(t.dims, p1.dims);
    t.check_functoriality().unwrap();
    let tt = frobenius_twist(&t);
    for m in w.vect().morphisms() {
        assert_eq!(tt.act(m), p1.act(m), "twist squared is the identity over F_4");
    }
    // over prime fields the twist is the identity on the nose
    let wp = w2(2);
    let p = wp.p_vect(1);
    let tp = frobenius_twist(&p);
    for m in wp.vect().morphisms() {
        assert_eq!(tp.act(m), p.act(m));
    }
}

#[test]
fn prolong_restrict_roundtrip() {
    let w = w2(2);
    use crate::sites::DimSet;
    let gr_all = w.gr();
    let gr0 = w.gr_with(DimSet::single(0)).unwrap();
    let k = constant(&gr_all, 1);
    let r = restrict(&k, &gr0).unwrap();
    assert_eq!(r.dims, vec![1; gr0.objects.len()]);
    // prolong a base-0 functor back and restrict again
    let p = prolong_zero(&r, &gr_all).unwrap();
    p.check_functoriality().unwrap();
    let r2 = restrict(&p, &gr0).unwrap();
    assert_eq!(r2.dims, r.dims);
    for m in gr0.morphisms() {
        assert_eq!(r2.act(m), r.act(m));
    }
    // gap in the retained dimensions is rejected
    let gr02 = w.gr_with(DimSet(0b101)).unwrap();
    let r3 = restrict(&k, &gr02).unwrap();
    assert!(matches!(
        prolong_zero(&r3, &gr_all),
        Err(crate::error::Error::SubcategoryNotComplete(_))
    ));
}

#[test]
fn internal_hom_unit_and_shift_comparison() {
    let w = w2(2);
    let v = w.vect();
    let k = constant(&v, 1);
    let p1 = w.p_vect(1);
    let h = internal_hom(&k, &p1).unwrap();
    assert_eq!(h.dims, p1.dims, "Hom(k, Y) = Y");
    h.check_functoriality().unwrap();
    // Hom(P̄_1, F) has the dims of the difference functor of F
    let pbar = w.p_bar(1);
    let kgr = w.k_gr();
    let hq = internal_hom(&pbar, &kgr).unwrap();
    let (dk, _) = difference(&kgr);
    for n in 0..=1usize {
        assert_eq!(hq.dims[n], dk.dims[n]);
    }
}

#[test]
fn division_unit_and_shift_comparison() {
    let w = w2(2);
    let v = w.vect();
    let k = constant(&v, 1);
    let p1 = w.p_vect(1);
    let d = division(&p1, &k).unwrap();
    assert_eq!(d.dims, p1.dims, "(X : k) = X");
    d.check_functoriality().unwrap();
    // (F : I_{E_1}) is the shift of F by one line
    let i1 = w.i_vect(1);
    let kgr = w.k_gr();
    let dv = division(&kgr, &i1).unwrap();
    let sh = shift(&kgr, 1);
    for n in 0..=1usize {
        assert_eq!(dv.dims[n], sh.dims[n], "division by I_1 is the shift at E_{n}");
    }
    // adjunction: hom((X:A), Y) = hom(X, A ⊗ Y) on samples
    let x = w.k_gr();
    for y in [constant(&v, 1), w.p_vect(1)] {
        let lhs = hom_dim(&division(&x, &i1).unwrap(), &y).unwrap();
        let rhs = hom_dim(&x, &tensor(&i1, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "division adjunction count for {}", y.name);
    }
}

#[test]
fn subfunctor_chain_of_constant_on_surj() {
    let w = w2(3);
    let k = constant(&w.surj(), 1);
    let lat = subfunctor_lattice(&k, 14).unwrap();
    assert_eq!(lat.len(), 5, "constant functor on the 0..3 surjection site is uniserial");
    assert!(is_chain(&lat));
    // the chain is the canonical filtration: supports are upward closed
    for s in &lat {
        let dims: Vec<usize> = s.spaces.iter().map(|x| x.dim).collect();
        let mut seen_one = false;
        for &d in dims.iter().rev() {
            if d == 1 {
                seen_one = true;
            } else {
                assert!(!seen_one, "support must be an upper set of dimensions");
            }
        }
    }
}

#[test]
fn reduced_k_gr1_is_indecomposable() {
    let w = w2(3);
    let f = w.k_gr_bar(1);
    assert_eq!(f.dims, vec![0, 1, 3, 7]);
    let lat = subfunctor_lattice(&f, 14).unwrap();
    assert!(is_indecomposable(&f, &lat));
}

#[test]
fn injective_tensor_decomposition() {
    let w = w2(2);
    let site = w.gr();
    let r = injective_tensor_check(&site, (1, 1), (1, 1)).unwrap();
    assert!(r.dims_equal);
    assert!(r.iso_natural);
    assert_eq!(r.summands, 2);
    let r0 = injective_tensor_check(&site, (1, 0), (1, 0)).unwrap();
    assert!(r0.dims_equal && r0.iso_natural);
    assert_eq!(r0.summands, 1);
}

#[test]
fn full_injective_tensor_sweep_nmax2() {
    let w = w2(2);
    let site = w.gr();
    for a in 0..=1usize {
        for b in 0..=a {
            for a2 in 0..=(2 - a) {
                for b2 in 0..=a2 {
                    let r = injective_tensor_check(&site, (a, b), (a2, b2)).unwrap();
                    assert!(
                        r.dims_equal && r.iso_natural,
                        "injective tensor at ({a},{b}) ⊗ ({a2},{b2})"
                    );
                }
            }
        }
    }
}

#[test]
fn tensor_exact_in_each_variable() {
    // tensoring the augmentation sequence with P_1 keeps it exact
    let w = w2(2);
    let kgr = w.k_gr();
    let aug = w.augmentation(&kgr);
    let (ker, incl) = kernel(&aug);
    let _ = ker;
    let p1 = w.p_vect(1);
    let field = &w.ctx.field;
    let tens_incl = NatTrans::new(
        &tensor(&incl.src, &p1).unwrap(),
        &tensor(&incl.tgt, &p1).unwrap(),
        incl.comps
            .iter()
            .enumerate()
            .map(|(x, c)| c.kronecker(&crate::linalg::Matrix::identity(field, p1.dims[x])))
            .collect(),
    );
    let (_, proj) = cokernel(&tens_incl);
    assert!(exact_at(&tens_incl, &proj));
}

#[test]
fn hom_space_basis_are_natural_and_coords_work() {
    let w = w2(2);
    let v = w.vect();
    let kgr = w.k_gr();
    let h = hom_space(&kgr, &kgr).unwrap();
    assert_eq!(h.dim(), w.nmax + 1, "endomorphisms of k[Gr] at truncation N have dim N+1");
    for t in &h.basis {
        t.check_natural().unwrap();
    }
    // coords of a linear combination come back exactly
    if h.dim() >= 2 {
        let combo = h.basis[0].add(&h.basis[1]);
        let c = h.coords(&combo).unwrap();
        assert_eq!(c[0], 1);
        assert_eq!(c[1], 1);
        assert!(c[2..].iter().all(|&x| x == 0));
    }
    let _ = v;
}

#[test]
fn iota_rho_kappa_functorial() {
    let w = w2(2);
    let p1 = w.p_vect(1);
    catalog::iota(&w, &p1).check_functoriality().unwrap();
    catalog::kappa(&w, &p1).check_functoriality().unwrap();
    catalog::rho(&w, &std_projective(&w.surj(), 1)).check_functoriality().unwrap();
    catalog::rho_unit(&w).check_functoriality().unwrap();
}
