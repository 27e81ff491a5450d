//! 2-rings: one groupoid with an additive 2-group, a multiplicative monoidal
//! structure and distributors. Three axiom suites (Quang, Jibladze–Pirashvili,
//! AC), the conversions between the Quang and AC forms, and the absorber
//! search that upgrades a JP 2-ring.

use crate::ac::{canonical_b_family, to_ac, to_sm, ACStructure};
use crate::check::{
    commute, AxiomOutcome, AxiomReport, Chain, CheckConfig, InstanceResult, Mismatch,
};
use crate::error::{Error, Result};
use crate::family::{k, op, v, ExprEnv, NatFamily, ObjExpr};
use crate::groupoid::{same_carrier, FinGroupoid, MorId, ObjId};
use crate::homs::{af1, canonical_zero_iso, sf1, sf2, sf3, FunctorView};
use crate::monoidal::{all_identity, run_axiom, MonStructure, SumView};
use crate::tensor::Bifunctor;

/// Endpoint words over `ops = [+, ·]`, `consts = [0, 1]`.
pub mod role {
    use super::*;

    /// `d(x,y,z): xy+xz → x(y+z)`
    pub fn d() -> (ObjExpr, ObjExpr) {
        (op(0, op(1, v(0), v(1)), op(1, v(0), v(2))), op(1, v(0), op(0, v(1), v(2))))
    }

    /// `e(x,y,z): xz+yz → (x+y)z`
    pub fn e() -> (ObjExpr, ObjExpr) {
        (op(0, op(1, v(0), v(2)), op(1, v(1), v(2))), op(1, op(0, v(0), v(1)), v(2)))
    }

    /// `m(x): 0 → x0`
    pub fn m() -> (ObjExpr, ObjExpr) {
        (k(0), op(1, v(0), k(0)))
    }

    /// `n(x): 0 → 0x`
    pub fn n() -> (ObjExpr, ObjExpr) {
        (k(0), op(1, k(0), v(0)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AddPresentation {
    Symmetric(MonStructure),
    Ac(ACStructure),
}

impl AddPresentation {
    pub fn name(&self) -> &'static str {
        match self {
            AddPresentation::Symmetric(_) => "symmetric",
            AddPresentation::Ac(_) => "ac",
        }
    }

    pub fn view(&self) -> SumView<'_> {
        match self {
            AddPresentation::Symmetric(m) => m.view(),
            AddPresentation::Ac(a) => a.view(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRingData {
    pub add: AddPresentation,
    pub mul: MonStructure,
    pub d: NatFamily,
    pub e: NatFamily,
    pub m: Option<NatFamily>,
    pub n: Option<NatFamily>,
}

fn ring_env<'a>(g: &FinGroupoid, add: &SumView<'a>, mul: &'a MonStructure) -> ExprEnv<'a> {
    ExprEnv {
        ops: vec![add.sum, &mul.sum],
        consts: vec![(add.unit, g.id(add.unit)), (mul.unit, g.id(mul.unit))],
        functors: vec![],
    }
}

impl TwoRingData {
    pub fn new(
        add: AddPresentation,
        mul: MonStructure,
        d: Vec<MorId>,
        e: Vec<MorId>,
        m: Option<Vec<MorId>>,
        n: Option<Vec<MorId>>,
    ) -> Result<Self> {
        let av = add.view();
        if !same_carrier(&mul.carrier, match &add {
            AddPresentation::Symmetric(s) => &s.carrier,
            AddPresentation::Ac(a) => &a.carrier,
        }) {
            return Err(Error::StructureMismatch("sum and product live on different carriers".into()));
        }
        if mul.c.is_some() {
            return Err(Error::StructureMismatch("the product is monoidal only; drop its commutator".into()));
        }
        let g = av.g;
        let env = ring_env(g, &av, &mul);
        let nobj = g.num_objects();
        let fam = |name: &str, (s, t): (ObjExpr, ObjExpr), comps: Vec<MorId>| -> Result<NatFamily> {
            let f = NatFamily::new(name, nobj, s, t, comps)?;
            f.check_endpoints(g, &env)?;
            Ok(f)
        };
        let d = fam("d", role::d(), d)?;
        let e = fam("e", role::e(), e)?;
        let m = m.map(|c| absorber_family("m", g, &av, &mul, role::m(), c)).transpose()?;
        let n = n.map(|c| absorber_family("n", g, &av, &mul, role::n(), c)).transpose()?;
        Ok(TwoRingData {
            add,
            mul,
            d,
            e,
            m,
            n,
        })
    }

    pub fn carrier(&self) -> &FinGroupoid {
        self.add.view().g
    }

    pub fn env(&self) -> ExprEnv<'_> {
        let av = self.add.view();
        ring_env(av.g, &av, &self.mul)
    }
}

/// Absorber families are unary; their source word is the constant `0`.
fn absorber_family(
    name: &str,
    g: &FinGroupoid,
    add: &SumView,
    mul: &MonStructure,
    (s, t): (ObjExpr, ObjExpr),
    comps: Vec<MorId>,
) -> Result<NatFamily> {
    let fam = NatFamily::new(name, g.num_objects(), s, t, comps)?;
    if fam.arity != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: fam.arity,
        });
    }
    let env = ring_env(g, add, mul);
    fam.check_endpoints(g, &env)?;
    Ok(fam)
}

/// `y ↦ x·y` with `F⊕(y,z) = d(x,y,z)`.
pub struct LeftMul<'a> {
    pub g: &'a FinGroupoid,
    pub mul: &'a Bifunctor,
    pub d: &'a NatFamily,
    pub x: ObjId,
    pub zero: Option<MorId>,
}

impl FunctorView for LeftMul<'_> {
    fn obj(&self, y: ObjId) -> ObjId {
        self.mul.obj(self.x, y)
    }

    fn mor(&self, f: MorId) -> MorId {
        self.mul.mor(self.g.id(self.x), f)
    }

    fn fsum(&self, y: ObjId, z: ObjId) -> MorId {
        self.d.get3(self.x, y, z)
    }

    fn fzero(&self) -> Option<MorId> {
        self.zero
    }

    fn fsum_is_identity(&self, target: &FinGroupoid) -> bool {
        target
            .objects()
            .all(|y| target.objects().all(|z| target.is_identity(self.d.get3(self.x, y, z))))
    }
}

/// `x ↦ x·z` with `F⊕(x,y) = e(x,y,z)`.
pub struct RightMul<'a> {
    pub g: &'a FinGroupoid,
    pub mul: &'a Bifunctor,
    pub e: &'a NatFamily,
    pub z: ObjId,
    pub zero: Option<MorId>,
}

impl FunctorView for RightMul<'_> {
    fn obj(&self, x: ObjId) -> ObjId {
        self.mul.obj(x, self.z)
    }

    fn mor(&self, f: MorId) -> MorId {
        self.mul.mor(f, self.g.id(self.z))
    }

    fn fsum(&self, x: ObjId, y: ObjId) -> MorId {
        self.e.get3(x, y, self.z)
    }

    fn fzero(&self) -> Option<MorId> {
        self.zero
    }

    fn fsum_is_identity(&self, target: &FinGroupoid) -> bool {
        target
            .objects()
            .all(|x| target.objects().all(|y| target.is_identity(self.e.get3(x, y, self.z))))
    }
}

fn left<'a>(r: &'a TwoRingData, x: ObjId) -> LeftMul<'a> {
    LeftMul {
        g: r.carrier(),
        mul: &r.mul.sum,
        d: &r.d,
        x,
        zero: r.m.as_ref().map(|m| m.get1(x)),
    }
}

fn right<'a>(r: &'a TwoRingData, z: ObjId) -> RightMul<'a> {
    RightMul {
        g: r.carrier(),
        mul: &r.mul.sum,
        e: &r.e,
        z,
        zero: r.n.as_ref().map(|n| n.get1(z)),
    }
}

fn tagged(res: InstanceResult, tag: &str) -> InstanceResult {
    res.map(|o| {
        o.map(|m| Mismatch {
            diagram: format!("{tag}: {}", m.diagram),
            ..m
        })
    })
}

/// The additive view with `b` filled in: AC tables, or canonical ones.
fn with_b<'a>(r: &'a TwoRingData, b: &'a Option<NatFamily>) -> SumView<'a> {
    let mut s = r.add.view();
    if let Some(b) = b {
        s.b = Some(b);
    }
    s
}

fn materialize_b(r: &TwoRingData) -> Result<Option<NatFamily>> {
    match &r.add {
        AddPresentation::Ac(_) => Ok(None),
        AddPresentation::Symmetric(m) => Ok(Some(canonical_b_family(&m.view())?)),
    }
}

fn ring_2r2(s: &SumView, p: &SumView, d: &NatFamily, e: &NatFamily, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z, t) = (xs[0], xs[1], xs[2], xs[3]);
    let (xz, xt, yz, yt) = (p.o(x, z), p.o(x, t), p.o(y, z), p.o(y, t));
    let lhs = Chain::new(s.g, trace)
        .then(s.b(xz, xt, yz, yt), || "b(xz,xt,yz,yt)".into())?
        .then(s.m(e.get3(x, y, z), e.get3(x, y, t)), || "e(x,y,z)+e(x,y,t)".into())?
        .then(d.get3(s.o(x, y), z, t), || "d(x+y,z,t)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(d.get3(x, z, t), d.get3(y, z, t)), || "d(x,z,t)+d(y,z,t)".into())?
        .then(e.get3(x, y, s.o(z, t)), || "e(x,y,z+t)".into())?
        .finish()?;
    commute!("distributors vs associo-commutator", lhs, rhs);
    Ok(None)
}

/// The same square read from `(xz+yz)+(xt+yt)`.
pub(crate) fn ring_2r2_dform(
    s: &SumView,
    p: &SumView,
    d: &NatFamily,
    e: &NatFamily,
    xs: &[ObjId],
    trace: bool,
) -> InstanceResult {
    let (x, y, z, t) = (xs[0], xs[1], xs[2], xs[3]);
    let (xz, xt, yz, yt) = (p.o(x, z), p.o(x, t), p.o(y, z), p.o(y, t));
    let lhs = Chain::new(s.g, trace)
        .then(s.b(xz, yz, xt, yt), || "b(xz,yz,xt,yt)".into())?
        .then(s.m(d.get3(x, z, t), d.get3(y, z, t)), || "d(x,z,t)+d(y,z,t)".into())?
        .then(e.get3(x, y, s.o(z, t)), || "e(x,y,z+t)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(e.get3(x, y, z), e.get3(x, y, t)), || "e(x,y,z)+e(x,y,t)".into())?
        .then(d.get3(s.o(x, y), z, t), || "d(x+y,z,t)".into())?
        .finish()?;
    commute!("distributors vs associo-commutator (d-form)", lhs, rhs);
    Ok(None)
}

fn ring_2r3(s: &SumView, p: &SumView, d: &NatFamily, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z, t) = (xs[0], xs[1], xs[2], xs[3]);
    let lhs = Chain::new(s.g, trace)
        .then(d.get3(x, p.o(y, z), p.o(y, t)), || "d(x,yz,yt)".into())?
        .then(p.m(p.id(x), d.get3(y, z, t)), || "id·d(y,z,t)".into())?
        .then(p.a(x, y, s.o(z, t)), || "a×(x,y,z+t)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(p.a(x, y, z), p.a(x, y, t)), || "a×(x,y,z)+a×(x,y,t)".into())?
        .then(d.get3(p.o(x, y), z, t), || "d(xy,z,t)".into())?
        .finish()?;
    commute!("left distributor vs product associator", lhs, rhs);
    Ok(None)
}

fn ring_2r4(s: &SumView, p: &SumView, d: &NatFamily, e: &NatFamily, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z, t) = (xs[0], xs[1], xs[2], xs[3]);
    let lhs = Chain::new(s.g, trace)
        .then(d.get3(x, p.o(z, y), p.o(t, y)), || "d(x,zy,ty)".into())?
        .then(p.m(p.id(x), e.get3(z, t, y)), || "id·e(z,t,y)".into())?
        .then(p.a(x, s.o(z, t), y), || "a×(x,z+t,y)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(p.a(x, z, y), p.a(x, t, y)), || "a×(x,z,y)+a×(x,t,y)".into())?
        .then(e.get3(p.o(x, z), p.o(x, t), y), || "e(xz,xt,y)".into())?
        .then(p.m(d.get3(x, z, t), p.id(y)), || "d(x,z,t)·id".into())?
        .finish()?;
    commute!("mixed distributors vs product associator", lhs, rhs);
    Ok(None)
}

fn ring_2r5(s: &SumView, p: &SumView, e: &NatFamily, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z, t) = (xs[0], xs[1], xs[2], xs[3]);
    let lhs = Chain::new(s.g, trace)
        .then(e.get3(t, z, p.o(y, x)), || "e(t,z,yx)".into())?
        .then(p.a(s.o(t, z), y, x), || "a×(t+z,y,x)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(p.a(t, y, x), p.a(z, y, x)), || "a×(t,y,x)+a×(z,y,x)".into())?
        .then(e.get3(p.o(t, y), p.o(z, y), x), || "e(ty,zy,x)".into())?
        .then(p.m(e.get3(t, z, y), p.id(x)), || "e(t,z,y)·id".into())?
        .finish()?;
    commute!("right distributor vs product associator", lhs, rhs);
    Ok(None)
}

fn ring_2r6(s: &SumView, p: &SumView, d: &NatFamily, e: &NatFamily, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y) = (xs[0], xs[1]);
    let lhs = Chain::new(s.g, trace)
        .then(d.get3(p.unit, x, y), || "d(1,x,y)".into())?
        .then(p.l(s.o(x, y)), || "l×(x+y)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace).then(s.m(p.l(x), p.l(y)), || "l×(x)+l×(y)".into())?.finish()?;
    commute!("left distributor vs product unit", lhs, rhs);
    let lhs = Chain::new(s.g, trace)
        .then(e.get3(x, y, p.unit), || "e(x,y,1)".into())?
        .then(p.r(s.o(x, y)), || "r×(x+y)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace).then(s.m(p.r(x), p.r(y)), || "r×(x)+r×(y)".into())?.finish()?;
    commute!("right distributor vs product unit", lhs, rhs);
    Ok(None)
}

/// 2R2–2R6, shared by every presentation. `s` must carry `b`.
fn common_axioms(r: &TwoRingData, s: &SumView, cfg: &CheckConfig) -> Result<Vec<AxiomOutcome>> {
    let g = s.g;
    let p = r.mul.view();
    let (d, e) = (&r.d, &r.e);
    let (di, ei) = (Some(d), Some(e));
    let am = Some(&r.mul.a);
    Ok(vec![
        run_axiom("2R2", g, 4, cfg, all_identity(g, &[s.b, di, ei]), |xs, t| ring_2r2(s, &p, d, e, xs, t))?,
        run_axiom("2R3", g, 4, cfg, all_identity(g, &[di, am]), |xs, t| ring_2r3(s, &p, d, xs, t))?,
        run_axiom("2R4", g, 4, cfg, all_identity(g, &[di, ei, am]), |xs, t| ring_2r4(s, &p, d, e, xs, t))?,
        run_axiom("2R5", g, 4, cfg, all_identity(g, &[ei, am]), |xs, t| ring_2r5(s, &p, e, xs, t))?,
        run_axiom(
            "2R6",
            g,
            2,
            cfg,
            all_identity(g, &[di, ei, Some(&r.mul.l), Some(&r.mul.r)]),
            |xs, t| ring_2r6(s, &p, d, e, xs, t),
        )?,
    ])
}

/// 2R1 as SF1+SF2 for `x·−` and `−·z`.
fn quang_2r1(r: &TwoRingData, s: &SumView, cfg: &CheckConfig) -> Result<AxiomOutcome> {
    let g = s.g;
    let (di, ei) = (Some(&r.d), Some(&r.e));
    let strict1 = all_identity(g, &[di, ei, s.a]);
    let strict2 = all_identity(g, &[di, ei, s.c]);
    let parts = vec![
        run_axiom("2R1", g, 4, cfg, strict1, |xs, t| {
            tagged(sf1(&left(r, xs[0]), s, s, &xs[1..], t), "x·− (associators)")
        })?,
        run_axiom("2R1", g, 4, cfg, strict1, |xs, t| {
            tagged(sf1(&right(r, xs[3]), s, s, &xs[..3], t), "−·t (associators)")
        })?,
        run_axiom("2R1", g, 3, cfg, strict2, |xs, t| {
            tagged(sf2(&left(r, xs[0]), s, s, &xs[1..], t), "x·− (commutators)")
        })?,
        run_axiom("2R1", g, 3, cfg, strict2, |xs, t| {
            tagged(sf2(&right(r, xs[0]), s, s, &xs[1..], t), "−·x (commutators)")
        })?,
    ];
    Ok(AxiomOutcome::merge("2R1", parts))
}

/// AF1 for `x·−` at `(y,z,t,u)` and for `−·u` at `(x,y,z,t)`, over 5-tuples.
fn prime_2r1(axiom: &str, r: &TwoRingData, s: &SumView, cfg: &CheckConfig) -> Result<AxiomOutcome> {
    let g = s.g;
    let strict = all_identity(g, &[Some(&r.d), Some(&r.e), s.b]);
    let parts = vec![
        run_axiom(axiom, g, 5, cfg, strict, |xs, t| {
            tagged(af1(&left(r, xs[0]), s, s, &xs[1..], t), "x·−")
        })?,
        run_axiom(axiom, g, 5, cfg, strict, |xs, t| {
            tagged(af1(&right(r, xs[4]), s, s, &xs[..4], t), "−·u")
        })?,
    ];
    Ok(AxiomOutcome::merge(axiom, parts))
}

fn need_symmetric(r: &TwoRingData) -> Result<&MonStructure> {
    match &r.add {
        AddPresentation::Symmetric(m) => Ok(m),
        AddPresentation::Ac(_) => Err(Error::PresentationMismatch {
            expected: "symmetric".into(),
            found: "ac".into(),
        }),
    }
}

pub fn validate_quang(r: &TwoRingData, cfg: &CheckConfig) -> Result<AxiomReport> {
    need_symmetric(r)?;
    let b = materialize_b(r)?;
    let s = with_b(r, &b);
    let mut report = AxiomReport::new("quang");
    report.push(quang_2r1(r, &s, cfg)?);
    for o in common_axioms(r, &s, cfg)? {
        report.push(o);
    }
    Ok(report)
}

pub fn validate_jp(r: &TwoRingData, cfg: &CheckConfig) -> Result<AxiomReport> {
    need_symmetric(r)?;
    let b = materialize_b(r)?;
    let s = with_b(r, &b);
    let mut report = AxiomReport::new("jp");
    report.push(prime_2r1("2R1-prime", r, &s, cfg)?);
    for o in common_axioms(r, &s, cfg)? {
        report.push(o);
    }
    Ok(report)
}

fn absorber_squares(r: &TwoRingData, s: &SumView, cfg: &CheckConfig) -> Result<AxiomOutcome> {
    let (m, n) = match (&r.m, &r.n) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::MissingAbsorbers),
    };
    let g = s.g;
    let strict = all_identity(g, &[Some(m), Some(n), Some(&r.d), Some(&r.e), Some(s.l), Some(s.r)]);
    run_axiom("2R1-dprime-absorbers", g, 2, cfg, strict, |xs, t| {
        let (x, y) = (xs[0], xs[1]);
        if let Some(mm) = tagged(sf3(&left(r, x), m.get1(x), s, s, &[y], t), "m(x)")? {
            return Ok(Some(mm));
        }
        tagged(sf3(&right(r, y), n.get1(y), s, s, &[x], t), "n(y)")
    })
}

pub fn validate_ac_ring(r: &TwoRingData, cfg: &CheckConfig) -> Result<AxiomReport> {
    if let AddPresentation::Symmetric(_) = r.add {
        return Err(Error::PresentationMismatch {
            expected: "ac".into(),
            found: "symmetric".into(),
        });
    }
    if r.m.is_none() || r.n.is_none() {
        return Err(Error::MissingAbsorbers);
    }
    let s = r.add.view();
    let mut report = AxiomReport::new("acring");
    report.push(prime_2r1("2R1-dprime", r, &s, cfg)?);
    report.push(absorber_squares(r, &s, cfg)?);
    for o in common_axioms(r, &s, cfg)? {
        report.push(o);
    }
    Ok(report)
}

/// Quang → AC: `b` from the canonical associo-commutator, absorbers from the
/// canonical zero isomorphisms of `x·−` and `−·z`.
pub fn quang_to_ac_ring(r: &TwoRingData, cfg: &CheckConfig) -> Result<TwoRingData> {
    let add = need_symmetric(r)?;
    validate_quang(r, cfg)?.require("quang_to_ac_ring")?;
    let g = r.carrier();
    let mut m = Vec::with_capacity(g.num_objects());
    let mut n = Vec::with_capacity(g.num_objects());
    for x in g.objects() {
        m.push(canonical_zero_iso(&left(r, x), add, add, cfg)?);
        n.push(canonical_zero_iso(&right(r, x), add, add, cfg)?);
    }
    TwoRingData::new(
        AddPresentation::Ac(to_ac(add, cfg)?),
        r.mul.clone(),
        r.d.components().to_vec(),
        r.e.components().to_vec(),
        Some(m),
        Some(n),
    )
}

/// AC → Quang: the additive structure goes through `to_sm`, absorbers are dropped.
pub fn ac_ring_to_quang(r: &TwoRingData, cfg: &CheckConfig) -> Result<TwoRingData> {
    let add = match &r.add {
        AddPresentation::Ac(a) => a,
        AddPresentation::Symmetric(_) => {
            return Err(Error::PresentationMismatch {
                expected: "ac".into(),
                found: "symmetric".into(),
            })
        }
    };
    validate_ac_ring(r, cfg)?.require("ac_ring_to_quang")?;
    Ok(TwoRingData {
        add: AddPresentation::Symmetric(to_sm(add, cfg)?),
        mul: r.mul.clone(),
        d: r.d.clone(),
        e: r.e.clone(),
        m: None,
        n: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `m(x): 0 → x0`
    Left,
    /// `n(x): 0 → 0x`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JpUpgrade {
    /// The AC 2-ring with the first absorbers found, and how many candidates
    /// passed per object.
    Upgraded {
        ring: Box<TwoRingData>,
        left_solutions: Vec<usize>,
        right_solutions: Vec<usize>,
    },
    NoAbsorbers { side: Side, object: String },
}

/// Search every `0 → x0` and `0 → 0x` for absorbers making the four unit
/// squares commute.
pub fn jp_upgrade(r: &TwoRingData, cfg: &CheckConfig) -> Result<JpUpgrade> {
    validate_jp(r, cfg)?.require("jp_upgrade")?;
    let ac = match &r.add {
        AddPresentation::Symmetric(m) => to_ac(m, cfg)?,
        AddPresentation::Ac(a) => a.clone(),
    };
    let base = TwoRingData {
        add: AddPresentation::Ac(ac),
        mul: r.mul.clone(),
        d: r.d.clone(),
        e: r.e.clone(),
        m: None,
        n: None,
    };
    let s = base.add.view();
    let g = s.g;
    let p = base.mul.view();
    let mut m = Vec::new();
    let mut n = Vec::new();
    let mut left_solutions = Vec::new();
    let mut right_solutions = Vec::new();
    for x in g.objects() {
        let lm = left(&base, x);
        let mut found = Vec::new();
        'cand: for &cand in g.hom(s.unit, p.o(x, s.unit)) {
            for y in g.objects() {
                if sf3(&lm, cand, &s, &s, &[y], false)?.is_some() {
                    continue 'cand;
                }
            }
            found.push(cand);
        }
        match found.first() {
            Some(&c) => m.push(c),
            None => {
                return Ok(JpUpgrade::NoAbsorbers {
                    side: Side::Left,
                    object: g.obj_name(x).to_string(),
                })
            }
        }
        left_solutions.push(found.len());
    }
    for y in g.objects() {
        let rm = right(&base, y);
        let mut found = Vec::new();
        'cand: for &cand in g.hom(s.unit, p.o(s.unit, y)) {
            for x in g.objects() {
                if sf3(&rm, cand, &s, &s, &[x], false)?.is_some() {
                    continue 'cand;
                }
            }
            found.push(cand);
        }
        match found.first() {
            Some(&c) => n.push(c),
            None => {
                return Ok(JpUpgrade::NoAbsorbers {
                    side: Side::Right,
                    object: g.obj_name(y).to_string(),
                })
            }
        }
        right_solutions.push(found.len());
    }
    let ring = TwoRingData::new(
        base.add,
        base.mul,
        base.d.components().to_vec(),
        base.e.components().to_vec(),
        Some(m),
        Some(n),
    )?;
    Ok(JpUpgrade::Upgraded {
        ring: Box::new(ring),
        left_solutions,
        right_solutions,
    })
}

/// Both readings of 2R2 over every 4-tuple; `(e-form failures, d-form failures)`.
pub fn compare_2r2_forms(r: &TwoRingData) -> Result<(u64, u64)> {
    let b = materialize_b(r)?;
    let s = with_b(r, &b);
    let p = r.mul.view();
    let g = s.g;
    let (mut fe, mut fd) = (0, 0);
    for x in g.objects() {
        for y in g.objects() {
            for z in g.objects() {
                for t in g.objects() {
                    let xs = [x, y, z, t];
                    if ring_2r2(&s, &p, &r.d, &r.e, &xs, false)?.is_some() {
                        fe += 1;
                    }
                    if ring_2r2_dform(&s, &p, &r.d, &r.e, &xs, false)?.is_some() {
                        fd += 1;
                    }
                }
            }
        }
    }
    Ok((fe, fd))
}
