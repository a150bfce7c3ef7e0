//! Subfunctor lattices by brute enumeration: cyclic subfunctors
//! generated by single vectors, closed under joins (every subfunctor is
//! a join of cyclic ones).

use super::FF;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use std::collections::{BTreeMap, HashSet};

/// A subfunctor, stored as one canonical subspace of F(x) per object.
#[derive(Clone, PartialEq, Eq)]
pub struct SubFunctor {
    pub spaces: Vec<Subspace>,
}

impl SubFunctor {
    pub fn key(&self) -> String {
        self.spaces.iter().map(|s| s.serialize()).collect::<Vec<_>>().join("|")
    }
    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim).sum()
    }
    pub fn contains(&self, other: &SubFunctor) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.contains(b).unwrap())
    }
}

/// All subfunctors of F (over the valid objects), as a poset. Guarded by
/// a total-dimension budget since the scan is exponential in principle.
pub fn subfunctor_lattice(f: &FF, budget_total_dim: usize) -> Result<Vec<SubFunctor>> {
    let site = &f.site;
    let field = &site.ctx.field;
    let total: usize = f.total_dim();
    if total > budget_total_dim {
        return Err(Error::BudgetExceeded(format!(
            "total dimension {total} over budget {budget_total_dim}"
        )));
    }
    let objs: Vec<usize> = (0..f.dims.len()).filter(|&x| f.valid[x]).collect();

    // close an assignment of spanning sets under all morphism actions
    let close = |seed: Vec<Vec<Vec<u8>>>| -> SubFunctor {
        let mut spaces: Vec<Subspace> = (0..f.dims.len())
            .map(|x| {
                Subspace::from_vectors(field, f.dims[x], &seed[x]).expect("seed vectors fit")
            })
            .collect();
        loop {
            let mut changed = false;
            for m in site.morphisms() {
                if !f.valid[m.src] || !f.valid[m.tgt] {
                    continue;
                }
                let img = spaces[m.src].image(f.act(m));
                let joined = spaces[m.tgt].sum(&img).unwrap();
                if joined != spaces[m.tgt] {
                    spaces[m.tgt] = joined;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        SubFunctor { spaces }
    };

    let zero_seed: Vec<Vec<Vec<u8>>> = (0..f.dims.len()).map(|_| Vec::new()).collect();
    let mut found: BTreeMap<String, SubFunctor> = BTreeMap::new();
    let zero = close(zero_seed.clone());
    found.insert(zero.key(), zero);

    // cyclic subfunctors from every nonzero vector at every valid object
    for &x in &objs {
        let d = f.dims[x];
        let q = field.q as u64;
        for idx in 1..q.pow(d as u32) {
            let mut v = vec![0u8; d];
            let mut i = idx;
            for c in v.iter_mut() {
                *c = (i % q) as u8;
                i /= q;
            }
            let mut seed = zero_seed.clone();
            seed[x].push(v);
            let s = close(seed);
            found.insert(s.key(), s);
        }
    }

    // join closure
    loop {
        let snapshot: Vec<SubFunctor> = found.values().cloned().collect();
        let mut new = Vec::new();
        let keys: HashSet<String> = found.keys().cloned().collect();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let spaces: Vec<Subspace> = snapshot[i]
                    .spaces
                    .iter()
                    .zip(&snapshot[j].spaces)
                    .map(|(a, b)| a.sum(b).unwrap())
                    .collect();
                let s = SubFunctor { spaces };
                if !keys.contains(&s.key()) && !new.iter().any(|n: &SubFunctor| n.key() == s.key())
                {
                    new.push(s);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        for s in new {
            found.insert(s.key(), s);
        }
    }

    let mut out: Vec<SubFunctor> = found.into_values().collect();
    out.sort_by_key(|s| (s.total_dim(), s.key()));
    Ok(out)
}

/// True when the lattice is totally ordered by inclusion.
pub fn is_chain(lattice: &[SubFunctor]) -> bool {
    for i in 0..lattice.len() {
        for j in i + 1..lattice.len() {
            if !lattice[i].contains(&lattice[j]) && !lattice[j].contains(&lattice[i]) {
                return false;
            }
        }
    }
    true
}

/// True when no pair of proper nonzero subfunctors is complementary
/// (meet zero, join everything).
pub fn is_indecomposable(f: &FF, lattice: &[SubFunctor]) -> bool {
    let field = &f.site.ctx.field;
    let full: usize = f.total_dim();
    if full == 0 {
        return true;
    }
    let meet_dim = |a: &SubFunctor, b: &SubFunctor| -> usize {
        a.spaces
            .iter()
            .zip(&b.spaces)
            .map(|(x, y)| x.intersect(y).unwrap().dim)
            .sum()
    };
    let _ = field;
    for (i, a) in lattice.iter().enumerate() {
        let da = a.total_dim();
        if da == 0 || da == full {
            continue;
        }
        for b in lattice.iter().skip(i + 1) {
            let db = b.total_dim();
            if db == 0 || db == full {
                continue;
            }
            if da + db == full && meet_dim(a, b) == 0 {
                return false;
            }
        }
    }
    true
}
