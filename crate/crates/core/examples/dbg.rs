use grfun::corpus::World;
use grfun::fundops::*;
use grfun::funcat::{self, std_projective, constant, hom_dim, tautological};

fn main() {
    let w = World::new(2, 1, 2).unwrap();
    let gr = w.gr();
    let pair = w.pair();
    let p11 = std_projective(&gr, w.gr_obj(1, 1));
    let candidates: Vec<(&str, funcat::FF, funcat::FF)> = vec![
        ("G=k_pair, X=P11", constant(&pair, 1), p11.clone()),
        ("G=k_pair, X=rho_unit", constant(&pair, 1), rho_unit(&w)),
        ("G=P_pair(1,1), X=P11", std_projective(&pair, pair.obj(grfun::sites::Obj::with_base(1,1)).unwrap()), p11.clone()),
        ("G=taut_pair, X=P11", tautological(&pair), p11.clone()),
        ("G=taut_pair, X=iota(k)", tautological(&pair), iota(&w, &constant(&w.vect(), 1))),
    ];
    for (name, g, x) in candidates {
        let l = hom_dim(&xi(&w, &g), &x).unwrap();
        let r = hom_dim(&g, &sigma(&w, &x)).unwrap();
        println!("{name}: hom(xiG,X)={l} hom(G,sigmaX)={r}");
        let rep = adjunction_xi_sigma(&w, &g, &x).unwrap();
        println!("   triangles: {} {} unit={} counit={}", rep.triangle_left, rep.triangle_right, rep.unit_natural, rep.counit_natural);
    }
}
