//! Oracles shared by the integration tests. They use only the public
//! groupoid API and recompute composites from scratch.

#![allow(dead_code)]

use coherence::groupoid::{FinGroupoid, MorId, ObjId};
use coherence::monoidal::MonStructure;

/// Compose in diagram order (first arrow first) with bare table lookups.
pub fn follow(g: &FinGroupoid, path: &[MorId]) -> MorId {
    let mut acc = path[0];
    for &m in &path[1..] {
        assert_eq!(g.dst(acc), g.src(m), "oracle path does not meet");
        acc = g.compose(m, acc).expect("composable");
    }
    acc
}

pub fn inv(g: &FinGroupoid, f: MorId) -> MorId {
    g.inverse(f).expect("groupoid")
}

/// The lower border of the diagram defining `b`, built from `a` and `c`:
/// `a(x⊕y,z,t)`, `a⁻¹(x,y,z)⊕id`, `(id⊕c(y,z))⊕id`, `a(x,z,y)⊕id`, `a⁻¹(x⊕z,y,t)`.
pub fn lower_route(m: &MonStructure, [x, y, z, t]: [ObjId; 4]) -> MorId {
    let g = &*m.carrier;
    let o = |p, q| m.sum.obj(p, q);
    let s = |f, h| m.sum.mor(f, h);
    let a = |p, q, r| m.a.get3(p, q, r);
    let c = m.c.as_ref().expect("symmetric");
    let path = [
        a(o(x, y), z, t),
        s(inv(g, a(x, y, z)), g.id(t)),
        s(s(g.id(x), c.get2(y, z)), g.id(t)),
        s(a(x, z, y), g.id(t)),
        inv(g, a(o(x, z), y, t)),
    ];
    follow(g, &path)
}

/// Every tuple of `arity` objects in lexicographic index order.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<ObjId>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut i| {
        let mut xs = vec![ObjId(0); arity];
        for k in (0..arity).rev() {
            xs[k] = ObjId((i % n) as u32);
            i /= n;
        }
        xs
    })
}

/// A different morphism with the same endpoints, if any, chosen by `pick`.
pub fn parallel_other(g: &FinGroupoid, f: MorId, pick: usize) -> Option<MorId> {
    let others: Vec<MorId> = g.hom(g.src(f), g.dst(f)).iter().copied().filter(|&h| h != f).collect();
    (!others.is_empty()).then(|| others[pick % others.len()])
}
