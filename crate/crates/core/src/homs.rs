//! Structured functors and transformations between sum structures: the SF,
//! AF and T axiom suites, composition, the pointwise sum `⊞`, the canonical
//! zero isomorphism and its brute-force oracle.

use std::sync::Arc;

use crate::ac::{canonical_b, to_sm, ACStructure};
use crate::check::{commute, AxiomOutcome, AxiomReport, Chain, CheckConfig, Coverage, InstanceResult, Status};
use crate::error::{Error, Result};
use crate::family::{ap, check_naturality, op, v, ExprEnv, FunctorMap, NatFamily};
use crate::groupoid::{same_carrier, validate_functor, FinGroupoid, GFunctor, MorId, ObjId};
use crate::monoidal::{
    all_identity, basic_unitor_view, find_weak_inverse_view, run_axiom, validate_2group, MonStructure, SumView,
    WeakInverseCert,
};

/// The data the functor axioms read: object and morphism maps, `F⊕` and `F₀`.
pub trait FunctorView: Sync {
    fn obj(&self, x: ObjId) -> ObjId;
    fn mor(&self, f: MorId) -> MorId;
    /// `F⊕(x,y): Fx ⊕' Fy → F(x⊕y)`
    fn fsum(&self, x: ObjId, y: ObjId) -> MorId;
    fn fzero(&self) -> Option<MorId>;
    /// Whether every `F⊕` component is an identity.
    fn fsum_is_identity(&self, target: &FinGroupoid) -> bool;
}

/// `(F, F⊕, F₀)` with `F₀` optional.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredFunctor {
    pub base: GFunctor,
    pub fsum: NatFamily,
    pub fzero: Option<MorId>,
}

impl FunctorView for StructuredFunctor {
    fn obj(&self, x: ObjId) -> ObjId {
        self.base.obj(x)
    }

    fn mor(&self, f: MorId) -> MorId {
        self.base.mor(f)
    }

    fn fsum(&self, x: ObjId, y: ObjId) -> MorId {
        self.fsum.get2(x, y)
    }

    fn fzero(&self) -> Option<MorId> {
        self.fzero
    }

    fn fsum_is_identity(&self, target: &FinGroupoid) -> bool {
        self.fsum.is_identity(target)
    }
}

fn fsum_family(n: usize, comps: Vec<MorId>) -> Result<NatFamily> {
    NatFamily::new("F⊕", n, op(1, ap(0, v(0)), ap(0, v(1))), ap(0, op(0, v(0), v(1))), comps)
}

impl StructuredFunctor {
    /// Checked constructor: `F⊕` and `F₀` must have the right endpoints.
    pub fn new(
        base: GFunctor,
        fsum: Vec<MorId>,
        fzero: Option<MorId>,
        src: &SumView,
        tgt: &SumView,
    ) -> Result<Self> {
        if !std::ptr::eq(src.g, &*base.source) && *src.g != *base.source {
            return Err(Error::StructureMismatch("functor source is not the source structure's carrier".into()));
        }
        if !std::ptr::eq(tgt.g, &*base.target) && *tgt.g != *base.target {
            return Err(Error::StructureMismatch("functor target is not the target structure's carrier".into()));
        }
        let f = StructuredFunctor {
            fsum: fsum_family(base.source.num_objects(), fsum)?,
            base,
            fzero,
        };
        let env = f.fsum_env(src, tgt);
        f.fsum.check_endpoints(tgt.g, &env)?;
        if let Some(z) = fzero {
            let t = &*f.base.target;
            if z.index() >= t.num_morphisms() || t.src(z) != tgt.unit || t.dst(z) != f.base.obj(src.unit) {
                return Err(Error::BadFamily {
                    family: "F₀".into(),
                    detail: "zero isomorphism must run 0' → F0".into(),
                });
            }
        }
        Ok(f)
    }

    pub fn from_fn(
        base: GFunctor,
        fsum: impl Fn(ObjId, ObjId) -> MorId,
        fzero: Option<MorId>,
        src: &SumView,
        tgt: &SumView,
    ) -> Result<Self> {
        let s = base.source.clone();
        let comps = s.objects().flat_map(|x| s.objects().map(move |y| (x, y))).map(|(x, y)| fsum(x, y)).collect();
        Self::new(base, comps, fzero, src, tgt)
    }

    /// The identity endofunctor with identity `F⊕` and `F₀`.
    pub fn identity(carrier: Arc<FinGroupoid>, s: &SumView) -> Result<Self> {
        let g = carrier.clone();
        Self::from_fn(
            GFunctor::identity(carrier),
            |x, y| g.id(s.o(x, y)),
            Some(g.id(s.unit)),
            s,
            s,
        )
    }

    pub fn with_zero(mut self, fzero: Option<MorId>) -> Self {
        self.fzero = fzero;
        self
    }

    pub fn fsum_env<'a>(&'a self, src: &SumView<'a>, tgt: &SumView<'a>) -> ExprEnv<'a> {
        ExprEnv {
            ops: vec![src.sum, tgt.sum],
            consts: vec![],
            functors: vec![&self.base as &dyn FunctorMap],
        }
    }

    /// Naturality of `F⊕` in both arguments.
    pub fn naturality(&self, src: &SumView, tgt: &SumView, cfg: &CheckConfig) -> Result<AxiomReport> {
        check_naturality(&self.fsum, src.g, tgt.g, &self.fsum_env(src, tgt), cfg)
    }
}

fn check_carriers(f: &GFunctor, src: &FinGroupoid, tgt: &FinGroupoid) -> Result<()> {
    if (!std::ptr::eq(src, &*f.source) && *src != *f.source) || (!std::ptr::eq(tgt, &*f.target) && *tgt != *f.target) {
        return Err(Error::StructureMismatch("functor endpoints differ from the given structures".into()));
    }
    validate_functor(f).require("functor")
}

pub(crate) fn sf1(f: &dyn FunctorView, s: &SumView, t: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z) = (xs[0], xs[1], xs[2]);
    let (fx, fy, fz) = (f.obj(x), f.obj(y), f.obj(z));
    let lhs = Chain::new(t.g, trace)
        .then(t.a(fx, fy, fz), || "a'(Fx,Fy,Fz)".into())?
        .then(t.m(f.fsum(x, y), t.id(fz)), || "F⊕(x,y)⊕'id".into())?
        .then(f.fsum(s.o(x, y), z), || "F⊕(x⊕y,z)".into())?
        .finish()?;
    let rhs = Chain::new(t.g, trace)
        .then(t.m(t.id(fx), f.fsum(y, z)), || "id⊕'F⊕(y,z)".into())?
        .then(f.fsum(x, s.o(y, z)), || "F⊕(x,y⊕z)".into())?
        .then(f.mor(s.a(x, y, z)), || "F(a(x,y,z))".into())?
        .finish()?;
    commute!("monoidality vs associators", lhs, rhs);
    Ok(None)
}

pub(crate) fn sf2(f: &dyn FunctorView, s: &SumView, t: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y) = (xs[0], xs[1]);
    let lhs = Chain::new(t.g, trace)
        .then(t.c(f.obj(x), f.obj(y)), || "c'(Fx,Fy)".into())?
        .then(f.fsum(y, x), || "F⊕(y,x)".into())?
        .finish()?;
    let rhs = Chain::new(t.g, trace)
        .then(f.fsum(x, y), || "F⊕(x,y)".into())?
        .then(f.mor(s.c(x, y)), || "F(c(x,y))".into())?
        .finish()?;
    commute!("monoidality vs commutators", lhs, rhs);
    Ok(None)
}

/// Both unit squares for a given candidate `F₀`.
pub(crate) fn sf3(
    f: &dyn FunctorView,
    f0: MorId,
    s: &SumView,
    t: &SumView,
    xs: &[ObjId],
    trace: bool,
) -> InstanceResult {
    let x = xs[0];
    let fx = f.obj(x);
    let lhs = Chain::new(t.g, trace)
        .then(t.m(t.id(fx), f0), || "id⊕'F₀".into())?
        .then(f.fsum(x, s.unit), || "F⊕(x,0)".into())?
        .then(f.mor(s.r(x)), || "F(r(x))".into())?
        .finish()?;
    let rhs = Chain::new(t.g, trace).then(t.r(fx), || "r'(Fx)".into())?.finish()?;
    commute!("right unit", lhs, rhs);
    let lhs = Chain::new(t.g, trace)
        .then(t.m(f0, t.id(fx)), || "F₀⊕'id".into())?
        .then(f.fsum(s.unit, x), || "F⊕(0,x)".into())?
        .then(f.mor(s.l(x)), || "F(l(x))".into())?
        .finish()?;
    let rhs = Chain::new(t.g, trace).then(t.l(fx), || "l'(Fx)".into())?.finish()?;
    commute!("left unit", lhs, rhs);
    Ok(None)
}

pub(crate) fn af1(f: &dyn FunctorView, s: &SumView, t: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z, w) = (xs[0], xs[1], xs[2], xs[3]);
    let lhs = Chain::new(t.g, trace)
        .then(t.b(f.obj(x), f.obj(y), f.obj(z), f.obj(w)), || "b'(Fx,Fy,Fz,Ft)".into())?
        .then(t.m(f.fsum(x, z), f.fsum(y, w)), || "F⊕(x,z)⊕'F⊕(y,t)".into())?
        .then(f.fsum(s.o(x, z), s.o(y, w)), || "F⊕(x⊕z,y⊕t)".into())?
        .finish()?;
    let rhs = Chain::new(t.g, trace)
        .then(t.m(f.fsum(x, y), f.fsum(z, w)), || "F⊕(x,y)⊕'F⊕(z,t)".into())?
        .then(f.fsum(s.o(x, y), s.o(z, w)), || "F⊕(x⊕y,z⊕t)".into())?
        .then(f.mor(s.b(x, y, z, w)), || "F(b(x,y,z,t))".into())?
        .finish()?;
    commute!("AC isomorphisms vs associo-commutators", lhs, rhs);
    Ok(None)
}

fn zero_axiom(
    axiom: &str,
    f: &dyn FunctorView,
    s: &SumView,
    t: &SumView,
    cfg: &CheckConfig,
) -> Result<AxiomOutcome> {
    match f.fzero() {
        None => Ok(AxiomOutcome::skipped(axiom, Status::MissingData, "MissingZeroIso")),
        Some(f0) => {
            let strict = t.g.is_identity(f0)
                && f.fsum_is_identity(t.g)
                && all_identity(s.g, &[Some(s.l), Some(s.r)])
                && all_identity(t.g, &[Some(t.l), Some(t.r)]);
            run_axiom(axiom, s.g, 1, cfg, strict, |xs, tr| sf3(f, f0, s, t, xs, tr))
        }
    }
}

/// SF1–SF3 for any functor view; shared with the 2-ring suites.
pub(crate) fn sm_functor_axioms(
    f: &dyn FunctorView,
    s: &SumView,
    t: &SumView,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("sm-functor");
    let fid = f.fsum_is_identity(t.g);
    let strict1 = fid && all_identity(s.g, &[s.a]) && all_identity(t.g, &[t.a]);
    report.push(run_axiom("SF1", s.g, 3, cfg, strict1, |xs, tr| sf1(f, s, t, xs, tr))?);
    if s.c.is_some() && t.c.is_some() {
        let strict2 = fid && all_identity(s.g, &[s.c]) && all_identity(t.g, &[t.c]);
        report.push(run_axiom("SF2", s.g, 2, cfg, strict2, |xs, tr| sf2(f, s, t, xs, tr))?);
    } else {
        report.push(AxiomOutcome::skipped("SF2", Status::NotApplicable, "no commutator"));
    }
    report.push(zero_axiom("SF3", f, s, t, cfg)?);
    Ok(report)
}

/// SF1 (3-tuples), SF2 (pairs) and SF3 (objects).
pub fn validate_sm_functor(
    f: &StructuredFunctor,
    src: &MonStructure,
    tgt: &MonStructure,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    check_carriers(&f.base, &src.carrier, &tgt.carrier)?;
    sm_functor_axioms(f, &src.view(), &tgt.view(), cfg)
}

/// AF1 (4-tuples) and AF2 (objects).
pub fn validate_ac_functor(
    f: &StructuredFunctor,
    src: &ACStructure,
    tgt: &ACStructure,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    check_carriers(&f.base, &src.carrier, &tgt.carrier)?;
    ac_functor_axioms(f, &src.view(), &tgt.view(), cfg)
}

pub(crate) fn ac_functor_axioms(
    f: &dyn FunctorView,
    s: &SumView,
    t: &SumView,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("ac-functor");
    let strict = f.fsum_is_identity(t.g) && all_identity(s.g, &[s.b]) && all_identity(t.g, &[t.b]);
    report.push(run_axiom("AF1", s.g, 4, cfg, strict, |xs, tr| af1(f, s, t, xs, tr))?);
    report.push(zero_axiom("AF2", f, s, t, cfg)?);
    Ok(report)
}

/// A transformation `τ: F ⇒ F'` between structured functors.
#[derive(Clone, Debug, PartialEq)]
pub struct MonTransformation {
    pub source: StructuredFunctor,
    pub target: StructuredFunctor,
    pub tau: NatFamily,
}

impl MonTransformation {
    pub fn new(source: StructuredFunctor, target: StructuredFunctor, tau: Vec<MorId>) -> Result<Self> {
        if !same_carrier(&source.base.source, &target.base.source)
            || !same_carrier(&source.base.target, &target.base.target)
        {
            return Err(Error::StructureMismatch("τ must relate parallel functors".into()));
        }
        let n = source.base.source.num_objects();
        let tau = NatFamily::new("τ", n, ap(0, v(0)), ap(1, v(0)), tau)?;
        let t = MonTransformation { source, target, tau };
        t.tau.check_endpoints(&t.source.base.target, &t.env())?;
        Ok(t)
    }

    pub fn from_fn(source: StructuredFunctor, target: StructuredFunctor, tau: impl Fn(ObjId) -> MorId) -> Result<Self> {
        let comps = source.base.source.objects().map(tau).collect();
        Self::new(source, target, comps)
    }

    pub fn env(&self) -> ExprEnv<'_> {
        ExprEnv {
            ops: vec![],
            consts: vec![],
            functors: vec![&self.source.base as &dyn FunctorMap, &self.target.base],
        }
    }

    pub fn naturality(&self, cfg: &CheckConfig) -> Result<AxiomReport> {
        check_naturality(&self.tau, &self.source.base.source, &self.source.base.target, &self.env(), cfg)
    }
}

pub(crate) fn t1(tr: &MonTransformation, s: &SumView, t: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y) = (xs[0], xs[1]);
    let (f, f2, tau) = (&tr.source, &tr.target, &tr.tau);
    let lhs = Chain::new(t.g, trace)
        .then(f.fsum.get2(x, y), || "F⊕(x,y)".into())?
        .then(tau.get1(s.o(x, y)), || "τ(x⊕y)".into())?
        .finish()?;
    let rhs = Chain::new(t.g, trace)
        .then(t.m(tau.get1(x), tau.get1(y)), || "τ(x)⊕'τ(y)".into())?
        .then(f2.fsum.get2(x, y), || "G⊕(x,y)".into())?
        .finish()?;
    commute!("τ vs monoidality", lhs, rhs);
    Ok(None)
}

/// T1 over pairs and T2; T2 is `MissingData` unless both functors carry `F₀`.
pub fn validate_transformation(
    tr: &MonTransformation,
    src: &SumView,
    tgt: &SumView,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    check_carriers(&tr.source.base, src.g, tgt.g)?;
    let mut report = AxiomReport::new("transformation");
    let strict = tr.tau.is_identity(tgt.g)
        && tr.source.fsum.is_identity(tgt.g)
        && tr.target.fsum.is_identity(tgt.g);
    report.push(run_axiom("T1", src.g, 2, cfg, strict, |xs, t| t1(tr, src, tgt, xs, t))?);
    report.push(match (tr.source.fzero, tr.target.fzero) {
        (Some(z), Some(z2)) => {
            let g = tgt.g;
            let lhs = Chain::new(g, true)
                .then(z, || "F₀".into())?
                .then(tr.tau.get1(src.unit), || "τ(0)".into())?
                .finish()?;
            let rhs = Chain::new(g, true).then(z2, || "G₀".into())?.finish()?;
            if lhs.mor == rhs.mor {
                AxiomOutcome::pass("T2", 1, Coverage::Exhaustive)
            } else {
                AxiomOutcome::fail(
                    "T2",
                    1,
                    Coverage::Exhaustive,
                    crate::check::Witness {
                        diagram: "τ vs zero isomorphisms".into(),
                        index: vec![src.g.obj_name(src.unit).to_string()],
                        lhs,
                        rhs,
                    },
                )
            }
        }
        _ => AxiomOutcome::skipped("T2", Status::MissingData, "MissingZeroIso"),
    });
    Ok(report)
}

/// `second ∘ first`, with `(G∘F)⊕(x,y) = G(F⊕(x,y)) ∘ G⊕(Fx,Fy)` and
/// `(G∘F)₀ = G(F₀) ∘ G₀`.
pub fn compose_functors(second: &StructuredFunctor, first: &StructuredFunctor) -> Result<StructuredFunctor> {
    let base = GFunctor::then(&first.base, &second.base)?;
    let g = &*second.base.target;
    let src = &*first.base.source;
    let mut comps = Vec::with_capacity(first.fsum.len());
    for x in src.objects() {
        for y in src.objects() {
            let m = g
                .compose(second.base.mor(first.fsum.get2(x, y)), second.fsum.get2(first.base.obj(x), first.base.obj(y)))
                .ok_or_else(|| Error::StructureMismatch("monoidality components do not compose".into()))?;
            comps.push(m);
        }
    }
    let fzero = match (first.fzero, second.fzero) {
        (Some(z1), Some(z2)) => Some(
            g.compose(second.base.mor(z1), z2)
                .ok_or_else(|| Error::StructureMismatch("zero isomorphisms do not compose".into()))?,
        ),
        _ => None,
    };
    Ok(StructuredFunctor {
        fsum: fsum_family(src.num_objects(), comps)?,
        base,
        fzero,
    })
}

/// Pointwise sum `F ⊞ G` into a symmetric 2-group `tgt`.
pub fn boxplus(
    f: &StructuredFunctor,
    h: &StructuredFunctor,
    tgt: &MonStructure,
    cfg: &CheckConfig,
) -> Result<StructuredFunctor> {
    if !same_carrier(&f.base.source, &h.base.source)
        || !same_carrier(&f.base.target, &h.base.target)
        || !same_carrier(&f.base.target, &tgt.carrier)
    {
        return Err(Error::StructureMismatch("⊞ needs parallel functors into the given 2-group".into()));
    }
    let (fz, hz) = match (f.fzero, h.fzero) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::MissingZeroIso),
    };
    validate_2group(tgt, cfg)?.require("⊞ target")?;
    let t = tgt.view();
    let g = &*tgt.carrier;
    let base = GFunctor::from_fns(
        f.base.source.clone(),
        tgt.carrier.clone(),
        |x| t.o(f.base.obj(x), h.base.obj(x)),
        |m| t.m(f.base.mor(m), h.base.mor(m)),
    )?;
    let src = &*f.base.source;
    let mut comps = Vec::with_capacity(f.fsum.len());
    for x in src.objects() {
        for y in src.objects() {
            let b = canonical_b(&t, [f.base.obj(x), h.base.obj(x), f.base.obj(y), h.base.obj(y)], false)?;
            let m = Chain::new(g, false)
                .then(b.mor, String::new)?
                .then(t.m(f.fsum.get2(x, y), h.fsum.get2(x, y)), String::new)?
                .finish()?;
            comps.push(m.mor);
        }
    }
    let d = basic_unitor_view(&t)?;
    let zero = Chain::new(g, false)
        .then(g.inv(d)?, String::new)?
        .then(t.m(fz, hz), String::new)?
        .finish()?;
    Ok(StructuredFunctor {
        fsum: fsum_family(src.num_objects(), comps)?,
        base,
        fzero: Some(zero.mor),
    })
}

/// `l'(F0) ∘ (η⁻¹⊕'id) ∘ a'(F0*,F0,F0) ∘ (id⊕'F⊕(0,0)⁻¹) ∘ (id⊕'F(d⁻¹)) ∘ η`
/// for a given weak-inverse certificate of `F0`.
pub fn zero_iso_formula(f: &dyn FunctorView, s: &SumView, t: &SumView, cert: &WeakInverseCert) -> Result<MorId> {
    let f0 = f.obj(s.unit);
    if cert.object != f0 {
        return Err(Error::StructureMismatch("certificate is not for F0".into()));
    }
    let d = basic_unitor_view(s)?;
    let inv = cert.inverse;
    Ok(Chain::new(t.g, false)
        .then(cert.eta, String::new)?
        .then(t.m(t.id(inv), f.mor(s.g.inv(d)?)), String::new)?
        .then(t.m(t.id(inv), t.g.inv(f.fsum(s.unit, s.unit))?), String::new)?
        .then(t.a(inv, f0, f0), String::new)?
        .then(t.m(t.g.inv(cert.eta)?, t.id(f0)), String::new)?
        .then(t.l(f0), String::new)?
        .finish()?
        .mor)
}

pub(crate) fn require_sf1(f: &dyn FunctorView, s: &SumView, t: &SumView, cfg: &CheckConfig) -> Result<()> {
    let strict = f.fsum_is_identity(t.g) && all_identity(s.g, &[s.a]) && all_identity(t.g, &[t.a]);
    let o = run_axiom("SF1", s.g, 3, cfg, strict, |xs, tr| sf1(f, s, t, xs, tr))?;
    match o.witness {
        Some(w) => Err(Error::precondition("SF1", w.to_string())),
        None => Ok(()),
    }
}

/// The unique zero isomorphism of a functor satisfying SF1 into a 2-group,
/// computed from the first weak-inverse certificate of `F0`.
pub fn canonical_zero_iso(
    f: &dyn FunctorView,
    src: &MonStructure,
    tgt: &MonStructure,
    cfg: &CheckConfig,
) -> Result<MorId> {
    let (s, t) = (src.view(), tgt.view());
    require_sf1(f, &s, &t, cfg)?;
    let cert = find_weak_inverse_view(&t, f.obj(s.unit))?;
    zero_iso_formula(f, &s, &t, &cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMode {
    SF3,
    AF2,
}

/// Every carrier morphism `0' → F0` satisfying both unit squares, by brute force.
///
/// The two modes evaluate the same squares; the mode only names the ambient
/// presentation.
pub fn enumerate_zero_isos(f: &dyn FunctorView, src: &SumView, tgt: &SumView, _mode: ZeroMode) -> Result<Vec<MorId>> {
    let mut out = Vec::new();
    'cand: for &cand in tgt.g.hom(tgt.unit, f.obj(src.unit)) {
        for x in src.g.objects() {
            if sf3(f, cand, src, tgt, &[x], false)?.is_some() {
                continue 'cand;
            }
        }
        out.push(cand);
    }
    Ok(out)
}

/// Translate both AC structures to the symmetric presentation and run SF1–SF3.
///
/// Requires AF1 and AF2 to pass first.
pub fn derive_sm_axioms_from_ac(
    f: &StructuredFunctor,
    src: &ACStructure,
    tgt: &ACStructure,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    let pre = validate_ac_functor(f, src, tgt, cfg)?;
    pre.require("AC functor")?;
    if pre.status("AF2") != Some(Status::Pass) {
        return Err(Error::precondition("AF2", "no zero isomorphism attached"));
    }
    let s2 = to_sm(src, cfg)?;
    let t2 = if src == tgt { s2.clone() } else { to_sm(tgt, cfg)? };
    let mut r = validate_sm_functor(f, &s2, &t2, cfg)?;
    r.suite = "derived-sm-functor".into();
    Ok(r)
}
