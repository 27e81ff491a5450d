//! Deterministic example structures: dual numbers over ℤ/m with the
//! multiplication functors `F(a,b)`, the super-line, strict cyclic 2-groups,
//! and strict 2-rings built from finite ring tables.

use std::sync::Arc;

use crate::ac::ACStructure;
use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, GFunctor, GroupoidBuilder, MorId, ObjId};
use crate::homs::StructuredFunctor;
use crate::monoidal::MonStructure;
use crate::tensor::Bifunctor;
use crate::tworing::{AddPresentation, TwoRingData};

/// Modulus and multiplier `a + bε` for the dual-numbers example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualNumbersParams {
    pub m: u32,
    pub a: u32,
    pub b: u32,
}

impl DualNumbersParams {
    pub fn new(m: u32, a: u32, b: u32) -> Result<Self> {
        check_modulus(m)?;
        Ok(DualNumbersParams { m, a: a % m, b: b % m })
    }
}

impl Default for DualNumbersParams {
    fn default() -> Self {
        DualNumbersParams { m: 5, a: 1, b: 2 }
    }
}

fn check_modulus(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(())
}

/// Objects named by `names`, each with `Hom(x,x) = ℤ/q` and nothing between
/// distinct objects. Morphism `k` at object `x` has index `x*q + k` and name `k@x`.
pub fn endo_carrier(names: &[String], q: u32) -> Result<FinGroupoid> {
    if q == 0 {
        return Err(Error::InvalidModulus(q));
    }
    let mut b = GroupoidBuilder::new();
    let objs: Vec<_> = names.iter().map(|n| b.object(n.clone())).collect();
    for (x, name) in objs.iter().zip(names) {
        for k in 0..q {
            b.morphism(format!("{k}@{name}"), *x, *x);
        }
    }
    for x in 0..objs.len() as u32 {
        b.identity(objs[x as usize], MorId(x * q));
        for i in 0..q {
            for j in 0..q {
                b.compose(MorId(x * q + i), MorId(x * q + j), MorId(x * q + (i + j) % q));
            }
        }
    }
    b.build()
}

/// Label and object of a morphism in an [`endo_carrier`].
pub fn endo_parts(f: MorId, q: u32) -> (u32, ObjId) {
    (f.0 % q, ObjId(f.0 / q))
}

pub fn endo_mor(x: ObjId, k: u32, q: u32) -> MorId {
    MorId(x.0 * q + k % q)
}

fn dual_names(m: u32) -> Vec<String> {
    (0..m).flat_map(|x| (0..m).map(move |y| format!("{x}+{y}e"))).collect()
}

/// `x + yε` as the object with index `x*m + y`.
pub fn dual_obj(m: u32, x: u32, y: u32) -> ObjId {
    ObjId((x % m) * m + y % m)
}

pub fn dual_coords(m: u32, o: ObjId) -> (u32, u32) {
    (o.0 / m, o.0 % m)
}

/// `G(ℤ/m[ε])`: carrier and componentwise sum.
pub fn dual_carrier(m: u32) -> Result<(Arc<FinGroupoid>, Bifunctor)> {
    check_modulus(m)?;
    let g = endo_carrier(&dual_names(m), m)?;
    let add = move |p: ObjId, q: ObjId| {
        let ((x1, y1), (x2, y2)) = (dual_coords(m, p), dual_coords(m, q));
        dual_obj(m, x1 + x2, y1 + y2)
    };
    let sum = Bifunctor::from_fns(&g, add, |f, h| {
        let ((k1, o1), (k2, o2)) = (endo_parts(f, m), endo_parts(h, m));
        endo_mor(add(o1, o2), k1 + k2, m)
    })?;
    Ok((Arc::new(g), sum))
}

/// The totally strict AC 2-group on the dual numbers mod `m`.
pub fn dual_numbers_2group(m: u32) -> Result<ACStructure> {
    let (g, sum) = dual_carrier(m)?;
    ACStructure::strict(g, sum, ObjId(0))
}

/// The strict symmetric twin of [`dual_numbers_2group`], on the same carrier.
pub fn dual_numbers_sm_twin(ac: &ACStructure) -> Result<MonStructure> {
    MonStructure::strict(ac.carrier.clone(), ac.sum.clone(), ac.unit, true)
}

/// `F(a,b)`: multiplication by `a + bε`, with `F⊕` labelled `b(x+x')` and no `F₀`.
pub fn mult_endofunctor(ac: &ACStructure, p: DualNumbersParams) -> Result<StructuredFunctor> {
    let DualNumbersParams { m, a, b } = p;
    check_modulus(m)?;
    let g = ac.carrier.clone();
    if g.num_objects() != (m * m) as usize || g.num_morphisms() != (m * m * m) as usize {
        return Err(Error::StructureMismatch(format!("carrier is not the dual numbers mod {m}")));
    }
    let fo = move |o: ObjId| {
        let (x, y) = dual_coords(m, o);
        dual_obj(m, a * x, a * y + b * x)
    };
    let base = GFunctor::from_fns(g.clone(), g.clone(), fo, |f| {
        let (k, o) = endo_parts(f, m);
        endo_mor(fo(o), a * k, m)
    })?;
    let view = ac.view();
    let fsum = |p: ObjId, q: ObjId| {
        let ((x1, _), (x2, _)) = (dual_coords(m, p), dual_coords(m, q));
        endo_mor(fo(view.o(p, q)), b * ((x1 + x2) % m), m)
    };
    StructuredFunctor::from_fn(base, fsum, None, &view, &view)
}

/// Objects `ℤ/n`, automorphisms `ℤ/q` at each, everything added.
pub fn cyclic_carrier(n: u32, q: u32) -> Result<(Arc<FinGroupoid>, Bifunctor)> {
    if n == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let names: Vec<String> = (0..n).map(|x| x.to_string()).collect();
    let g = endo_carrier(&names, q)?;
    let sum = Bifunctor::from_fns(
        &g,
        |x, y| ObjId((x.0 + y.0) % n),
        |f, h| {
            let ((k1, x), (k2, y)) = (endo_parts(f, q), endo_parts(h, q));
            endo_mor(ObjId((x.0 + y.0) % n), k1 + k2, q)
        },
    )?;
    Ok((Arc::new(g), sum))
}

/// Strict symmetric 2-group on `ℤ/n` with `ℤ/q` automorphisms.
pub fn strict_cyclic_2group(n: u32, q: u32) -> Result<MonStructure> {
    let (g, sum) = cyclic_carrier(n, q)?;
    MonStructure::strict(g, sum, ObjId(0), true)
}

/// `ℤ/2` objects, `ℤ/2` automorphisms, `c(x,y)` labelled `xy`, everything else identity.
pub fn super_line_2group() -> Result<MonStructure> {
    let (g, sum) = cyclic_carrier(2, 2)?;
    let gg = g.clone();
    let c = |x: ObjId, y: ObjId| endo_mor(ObjId((x.0 + y.0) % 2), x.0 * y.0, 2);
    MonStructure::from_fns(
        g,
        sum,
        ObjId(0),
        |x, y, z| endo_mor(ObjId((x.0 + y.0 + z.0) % 2), 0, 2),
        Some(&c),
        |x| gg.id(x),
        |x| gg.id(x),
    )
}

/// A finite ring given by its operation tables, with unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    pub names: Vec<String>,
    /// Row-major `add[x*n + y]`.
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub zero: u32,
    pub one: u32,
}

impl FiniteRing {
    /// Checks the commutative ring laws, reporting the first violated one.
    pub fn new(names: Vec<String>, add: Vec<u32>, mul: Vec<u32>, zero: u32, one: u32) -> Result<Self> {
        let n = names.len();
        if n == 0 || add.len() != n * n || mul.len() != n * n {
            return Err(Error::MalformedTable("ring tables must be n×n over a nonempty set".into()));
        }
        if add.iter().chain(&mul).chain([&zero, &one]).any(|&v| v as usize >= n) {
            return Err(Error::MalformedTable("ring table entry out of range".into()));
        }
        let r = FiniteRing {
            names,
            add,
            mul,
            zero,
            one,
        };
        r.check_laws()?;
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn plus(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.len() + y as usize]
    }

    pub fn times(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.len() + y as usize]
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len() as u32;
        let fail = |law: &str, xs: &[u32]| {
            let w: Vec<&str> = xs.iter().map(|&x| self.names[x as usize].as_str()).collect();
            Err(Error::NotARing {
                law: law.into(),
                witness: format!("({})", w.join(",")),
            })
        };
        for x in 0..n {
            if self.plus(self.zero, x) != x || self.plus(x, self.zero) != x {
                return fail("additive unit", &[x]);
            }
            if self.times(self.one, x) != x || self.times(x, self.one) != x {
                return fail("multiplicative unit", &[x]);
            }
            if !(0..n).any(|y| self.plus(x, y) == self.zero) {
                return fail("additive inverse", &[x]);
            }
            for y in 0..n {
                if self.plus(x, y) != self.plus(y, x) {
                    return fail("additive commutativity", &[x, y]);
                }
                if self.times(x, y) != self.times(y, x) {
                    return fail("multiplicative commutativity", &[x, y]);
                }
                for z in 0..n {
                    if self.plus(self.plus(x, y), z) != self.plus(x, self.plus(y, z)) {
                        return fail("additive associativity", &[x, y, z]);
                    }
                    if self.times(self.times(x, y), z) != self.times(x, self.times(y, z)) {
                        return fail("multiplicative associativity", &[x, y, z]);
                    }
                    if self.times(x, self.plus(y, z)) != self.plus(self.times(x, y), self.times(x, z)) {
                        return fail("left distributivity", &[x, y, z]);
                    }
                    if self.times(self.plus(x, y), z) != self.plus(self.times(x, z), self.times(y, z)) {
                        return fail("right distributivity", &[x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// `ℤ/n`.
pub fn integers_mod(n: u32) -> Result<FiniteRing> {
    check_modulus(n)?;
    let names = (0..n).map(|x| x.to_string()).collect();
    let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
    FiniteRing::new(names, add, mul, 0, 1 % n)
}

/// `ℤ/m[ε]/(ε²)`, element `x + yε` at index `x*m + y`.
pub fn dual_numbers_mod(m: u32) -> Result<FiniteRing> {
    check_modulus(m)?;
    let n = m * m;
    let op = |f: &dyn Fn(u32, u32, u32, u32) -> (u32, u32)| -> Vec<u32> {
        (0..n * n)
            .map(|i| {
                let ((x1, y1), (x2, y2)) = ((i / n / m, i / n % m), (i % n / m, i % n % m));
                let (x, y) = f(x1, y1, x2, y2);
                dual_obj(m, x, y).0
            })
            .collect()
    };
    let add = op(&|x1, y1, x2, y2| (x1 + x2, y1 + y2));
    let mul = op(&|x1, y1, x2, y2| (x1 * x2, x1 * y2 + y1 * x2));
    FiniteRing::new(dual_names(m), add, mul, 0, dual_obj(m, 1, 0).0)
}

/// Discrete groupoid on the ring, every structural family identity. The
/// additive side is symmetric (Quang form) and carries no absorbers.
pub fn strict_2ring(ring: &FiniteRing) -> Result<TwoRingData> {
    let mut b = GroupoidBuilder::new();
    for name in &ring.names {
        let x = b.object(name.clone());
        let f = b.morphism(format!("id@{name}"), x, x);
        b.identity(x, f).compose(f, f, f);
    }
    let g = Arc::new(b.build()?);
    // Object x has the single morphism x.
    let table = |op: fn(&FiniteRing, u32, u32) -> u32| {
        Bifunctor::from_fns(&g, |x, y| ObjId(op(ring, x.0, y.0)), |f, h| MorId(op(ring, f.0, h.0)))
    };
    let add = MonStructure::strict(g.clone(), table(FiniteRing::plus)?, ObjId(ring.zero), true)?;
    let mul = MonStructure::strict(g.clone(), table(FiniteRing::times)?, ObjId(ring.one), false)?;
    identity_distributors(AddPresentation::Symmetric(add), mul)
}

fn identity_distributors(add: AddPresentation, mul: MonStructure) -> Result<TwoRingData> {
    let view = add.view();
    let (g, s, p) = (view.g, view.sum, &mul.sum);
    let mut d = Vec::new();
    let mut e = Vec::new();
    for x in g.objects() {
        for y in g.objects() {
            for z in g.objects() {
                d.push(g.id(s.obj(p.obj(x, y), p.obj(x, z))));
                e.push(g.id(s.obj(p.obj(x, z), p.obj(y, z))));
            }
        }
    }
    TwoRingData::new(add, mul, d, e, None, None)
}

/// The dual numbers mod `m` on the non-discrete carrier `G(ℤ/m[ε])`, with
/// product `(k₁@o₁)·(k₂@o₂) = (k₁·re o₂ + re o₁·k₂)@(o₁o₂)` and all families identity.
pub fn dual_numbers_2ring(m: u32) -> Result<TwoRingData> {
    let (g, sum) = dual_carrier(m)?;
    let times = move |p: ObjId, q: ObjId| {
        let ((x1, y1), (x2, y2)) = (dual_coords(m, p), dual_coords(m, q));
        dual_obj(m, x1 * x2, x1 * y2 + y1 * x2)
    };
    let prod = Bifunctor::from_fns(&g, times, |f, h| {
        let ((k1, o1), (k2, o2)) = (endo_parts(f, m), endo_parts(h, m));
        let (re1, re2) = (dual_coords(m, o1).0, dual_coords(m, o2).0);
        endo_mor(times(o1, o2), k1 * re2 + re1 * k2, m)
    })?;
    let add = MonStructure::strict(g.clone(), sum, ObjId(0), true)?;
    let mul = MonStructure::strict(g, prod, dual_obj(m, 1, 0), false)?;
    identity_distributors(AddPresentation::Symmetric(add), mul)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ac::validate_ac;
    use crate::check::CheckConfig;
    use crate::monoidal::{validate_2group, validate_sm};

    #[test]
    fn dual_numbers_counts() {
        let ac = dual_numbers_2group(2).unwrap();
        assert_eq!((ac.carrier.num_objects(), ac.carrier.num_morphisms()), (4, 8));
        let ac = dual_numbers_2group(5).unwrap();
        assert_eq!((ac.carrier.num_objects(), ac.carrier.num_morphisms()), (25, 125));
        assert_eq!(ac.carrier.obj_name(ac.unit), "0+0e");
        assert_eq!(dual_numbers_2group(1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn dual_numbers_pass() {
        let cfg = CheckConfig::thorough();
        let ac = dual_numbers_2group(2).unwrap();
        assert!(validate_ac(&ac, &cfg).unwrap().passed());
        let sm = dual_numbers_sm_twin(&ac).unwrap();
        assert!(validate_2group(&sm, &cfg).unwrap().passed());
    }

    #[test]
    fn mult_functor_tables() {
        let ac = dual_numbers_2group(5).unwrap();
        let f = mult_endofunctor(&ac, DualNumbersParams::new(5, 1, 0).unwrap()).unwrap();
        assert!(f.fsum.is_identity(&ac.carrier));
        let f = mult_endofunctor(&ac, DualNumbersParams::default()).unwrap();
        // (1+2ε)(1+0ε) = 1+2ε; F⊕(1,1) is labelled 2·2.
        assert_eq!(f.base.obj(dual_obj(5, 1, 0)), dual_obj(5, 1, 2));
        let one = dual_obj(5, 1, 0);
        assert_eq!(endo_parts(f.fsum.get2(one, one), 5).0, 4);
    }

    #[test]
    fn super_line_passes() {
        let cfg = CheckConfig::thorough();
        let s = super_line_2group().unwrap();
        assert!(validate_sm(&s, &cfg).unwrap().passed());
        assert!(validate_2group(&s, &cfg).unwrap().passed());
        let c = s.c.as_ref().unwrap();
        assert!(!s.carrier.is_identity(c.get2(ObjId(1), ObjId(1))));
        assert!(s.carrier.objects().all(|y| s.carrier.is_identity(c.get2(ObjId(0), y))));
    }

    #[test]
    fn ring_laws() {
        assert_eq!(integers_mod(6).unwrap().times(4, 5), 2);
        let d = dual_numbers_mod(3).unwrap();
        let eps = dual_obj(3, 0, 1).0;
        assert_eq!(d.times(eps, eps), d.zero);
        let mut bad = integers_mod(3).unwrap();
        bad.mul[4] = 2; // 1·1 = 2
        let err = FiniteRing::new(bad.names, bad.add, bad.mul, 0, 1).unwrap_err();
        assert!(matches!(err, Error::NotARing { .. }));
    }
}
