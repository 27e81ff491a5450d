//! Symmetric monoidal structure on a finite groupoid: axioms SC1–SC4, the
//! basic unitor, weak inverses and 2-group detection.

use std::sync::Arc;

use crate::check::{
    commute, run_instances, AxiomOutcome, AxiomReport, Chain, CheckConfig, Coverage, InstanceResult, Status,
    Witness,
};
use crate::error::{Error, Result};
use crate::family::{check_naturality, k, op, v, ExprEnv, NatFamily, ObjExpr};
use crate::groupoid::{validate_groupoid, FinGroupoid, MorId, ObjId};
use crate::tensor::{validate_bifunctor, Bifunctor};

/// Endpoint words of the structural families, over `ops[0] = ⊕`, `consts[0] = 0`.
pub mod role {
    use super::*;

    /// `a_{x,y,z}: x⊕(y⊕z) → (x⊕y)⊕z`
    pub fn a() -> (ObjExpr, ObjExpr) {
        (op(0, v(0), op(0, v(1), v(2))), op(0, op(0, v(0), v(1)), v(2)))
    }

    /// `c_{x,y}: x⊕y → y⊕x`
    pub fn c() -> (ObjExpr, ObjExpr) {
        (op(0, v(0), v(1)), op(0, v(1), v(0)))
    }

    /// `l_x: 0⊕x → x`
    pub fn l() -> (ObjExpr, ObjExpr) {
        (op(0, k(0), v(0)), v(0))
    }

    /// `r_x: x⊕0 → x`
    pub fn r() -> (ObjExpr, ObjExpr) {
        (op(0, v(0), k(0)), v(0))
    }

    /// `b(x,y,z,t): (x⊕y)⊕(z⊕t) → (x⊕z)⊕(y⊕t)`
    pub fn b() -> (ObjExpr, ObjExpr) {
        (
            op(0, op(0, v(0), v(1)), op(0, v(2), v(3))),
            op(0, op(0, v(0), v(2)), op(0, v(1), v(3))),
        )
    }

    pub(crate) fn family(
        name: &str,
        g: &FinGroupoid,
        env: &ExprEnv,
        (s, t): (ObjExpr, ObjExpr),
        components: Vec<MorId>,
    ) -> Result<NatFamily> {
        let fam = NatFamily::new(name, g.num_objects(), s, t, components)?;
        fam.check_endpoints(g, env)?;
        Ok(fam)
    }

    pub(crate) fn family_fn(
        name: &str,
        g: &FinGroupoid,
        env: &ExprEnv,
        (s, t): (ObjExpr, ObjExpr),
        f: impl Fn(&[ObjId]) -> MorId,
    ) -> Result<NatFamily> {
        let fam = NatFamily::from_fn(name, g.num_objects(), s, t, f)?;
        fam.check_endpoints(g, env)?;
        Ok(fam)
    }
}

/// Borrowed view of a sum structure in either presentation.
#[derive(Clone, Copy)]
pub struct SumView<'a> {
    pub g: &'a FinGroupoid,
    pub sum: &'a Bifunctor,
    pub unit: ObjId,
    pub a: Option<&'a NatFamily>,
    pub c: Option<&'a NatFamily>,
    pub b: Option<&'a NatFamily>,
    pub l: &'a NatFamily,
    pub r: &'a NatFamily,
}

impl<'a> SumView<'a> {
    #[inline]
    pub fn o(&self, x: ObjId, y: ObjId) -> ObjId {
        self.sum.obj(x, y)
    }

    #[inline]
    pub fn m(&self, f: MorId, g: MorId) -> MorId {
        self.sum.mor(f, g)
    }

    #[inline]
    pub fn id(&self, x: ObjId) -> MorId {
        self.g.id(x)
    }

    pub fn a(&self, x: ObjId, y: ObjId, z: ObjId) -> MorId {
        self.a.expect("associator present").get3(x, y, z)
    }

    pub fn c(&self, x: ObjId, y: ObjId) -> MorId {
        self.c.expect("commutator present").get2(x, y)
    }

    pub fn b(&self, x: ObjId, y: ObjId, z: ObjId, t: ObjId) -> MorId {
        self.b.expect("associo-commutator present").get4(x, y, z, t)
    }

    pub fn l(&self, x: ObjId) -> MorId {
        self.l.get1(x)
    }

    pub fn r(&self, x: ObjId) -> MorId {
        self.r.get1(x)
    }

    pub fn inv(&self, f: MorId) -> Result<MorId> {
        self.g.inv(f)
    }

    pub fn env(&self) -> ExprEnv<'a> {
        ExprEnv {
            ops: vec![self.sum],
            consts: vec![(self.unit, self.g.id(self.unit))],
            functors: vec![],
        }
    }
}

/// `(C, ⊕, 0, a, c, l, r)`; without `c` the structure is monoidal only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonStructure {
    pub carrier: Arc<FinGroupoid>,
    pub sum: Bifunctor,
    pub unit: ObjId,
    pub a: NatFamily,
    pub c: Option<NatFamily>,
    pub l: NatFamily,
    pub r: NatFamily,
}

impl MonStructure {
    pub fn new(
        carrier: Arc<FinGroupoid>,
        sum: Bifunctor,
        unit: ObjId,
        a: Vec<MorId>,
        c: Option<Vec<MorId>>,
        l: Vec<MorId>,
        r: Vec<MorId>,
    ) -> Result<Self> {
        let g = &*carrier;
        let env = env_for(g, &sum, unit);
        let a = role::family("a", g, &env, role::a(), a)?;
        let c = c.map(|c| role::family("c", g, &env, role::c(), c)).transpose()?;
        let l = role::family("l", g, &env, role::l(), l)?;
        let r = role::family("r", g, &env, role::r(), r)?;
        Ok(MonStructure {
            carrier,
            sum,
            unit,
            a,
            c,
            l,
            r,
        })
    }

    /// Build the families from component functions.
    pub fn from_fns(
        carrier: Arc<FinGroupoid>,
        sum: Bifunctor,
        unit: ObjId,
        a: impl Fn(ObjId, ObjId, ObjId) -> MorId,
        c: Option<&dyn Fn(ObjId, ObjId) -> MorId>,
        l: impl Fn(ObjId) -> MorId,
        r: impl Fn(ObjId) -> MorId,
    ) -> Result<Self> {
        let g = &*carrier;
        let env = env_for(g, &sum, unit);
        let a = role::family_fn("a", g, &env, role::a(), |xs| a(xs[0], xs[1], xs[2]))?;
        let c = c
            .map(|c| role::family_fn("c", g, &env, role::c(), |xs| c(xs[0], xs[1])))
            .transpose()?;
        let l = role::family_fn("l", g, &env, role::l(), |xs| l(xs[0]))?;
        let r = role::family_fn("r", g, &env, role::r(), |xs| r(xs[0]))?;
        Ok(MonStructure {
            carrier,
            sum,
            unit,
            a,
            c,
            l,
            r,
        })
    }

    /// All families identity, given a bifunctor on the carrier.
    pub fn strict(carrier: Arc<FinGroupoid>, sum: Bifunctor, unit: ObjId, symmetric: bool) -> Result<Self> {
        let g = carrier.clone();
        let sm = sum.clone();
        let c = |x: ObjId, y: ObjId| g.id(sm.obj(x, y));
        Self::from_fns(
            carrier.clone(),
            sum,
            unit,
            |x, y, z| g.id(sm.obj(x, sm.obj(y, z))),
            if symmetric { Some(&c) } else { None },
            |x| g.id(x),
            |x| g.id(x),
        )
    }

    pub fn view(&self) -> SumView<'_> {
        SumView {
            g: &self.carrier,
            sum: &self.sum,
            unit: self.unit,
            a: Some(&self.a),
            c: self.c.as_ref(),
            b: None,
            l: &self.l,
            r: &self.r,
        }
    }

    pub fn env(&self) -> ExprEnv<'_> {
        self.view().env()
    }

    pub fn is_symmetric(&self) -> bool {
        self.c.is_some()
    }

    /// Groupoid laws, bifunctoriality of ⊕ and naturality of every family.
    pub fn preflight(&self, cfg: &CheckConfig) -> Result<AxiomReport> {
        let g = &*self.carrier;
        let mut report = validate_groupoid(g);
        report.suite = "preflight".into();
        for o in validate_bifunctor(g, &self.sum).outcomes {
            report.push(AxiomOutcome { axiom: format!("sum-{}", o.axiom), ..o });
        }
        let env = self.env();
        let fams = [Some(&self.a), self.c.as_ref(), Some(&self.l), Some(&self.r)];
        for fam in fams.into_iter().flatten() {
            report.outcomes.extend(check_naturality(fam, g, g, &env, cfg)?.outcomes);
        }
        Ok(report)
    }
}

pub(crate) fn env_for<'a>(g: &FinGroupoid, sum: &'a Bifunctor, unit: ObjId) -> ExprEnv<'a> {
    ExprEnv {
        ops: vec![sum],
        consts: vec![(unit, g.id(unit))],
        functors: vec![],
    }
}

/// Run `f` over `arity`-tuples unless every listed family is pointwise identity.
pub(crate) fn run_axiom<F>(
    axiom: &str,
    g: &FinGroupoid,
    arity: usize,
    cfg: &CheckConfig,
    strict: bool,
    f: F,
) -> Result<AxiomOutcome>
where
    F: Fn(&[ObjId], bool) -> InstanceResult + Sync,
{
    if cfg.strict_shortcut && strict {
        let n = crate::check::instance_space(g.num_objects(), arity).unwrap_or(u64::MAX);
        return Ok(AxiomOutcome::strict(axiom, n));
    }
    run_instances(axiom, g, arity, cfg, f)
}

pub(crate) fn all_identity(g: &FinGroupoid, fams: &[Option<&NatFamily>]) -> bool {
    fams.iter().all(|f| f.map_or(true, |f| f.is_identity(g)))
}

pub(crate) fn sc1(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z, t) = (xs[0], xs[1], xs[2], xs[3]);
    let g = s.g;
    let lhs = Chain::new(g, trace)
        .then(s.a(x, y, s.o(z, t)), || "a(x,y,z⊕t)".into())?
        .then(s.a(s.o(x, y), z, t), || "a(x⊕y,z,t)".into())?
        .finish()?;
    let rhs = Chain::new(g, trace)
        .then(s.m(s.id(x), s.a(y, z, t)), || "id⊕a(y,z,t)".into())?
        .then(s.a(x, s.o(y, z), t), || "a(x,y⊕z,t)".into())?
        .then(s.m(s.a(x, y, z), s.id(t)), || "a(x,y,z)⊕id".into())?
        .finish()?;
    commute!("pentagon", lhs, rhs);
    Ok(None)
}

pub(crate) fn sc2(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y) = (xs[0], xs[1]);
    let lhs = Chain::new(s.g, trace)
        .then(s.a(x, s.unit, y), || "a(x,0,y)".into())?
        .then(s.m(s.r(x), s.id(y)), || "r(x)⊕id".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(s.id(x), s.l(y)), || "id⊕l(y)".into())?
        .finish()?;
    commute!("triangle", lhs, rhs);
    Ok(None)
}

pub(crate) fn sc3(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, z) = (xs[0], xs[1], xs[2]);
    let lhs = Chain::new(s.g, trace)
        .then(s.a(x, y, z), || "a(x,y,z)".into())?
        .then(s.c(s.o(x, y), z), || "c(x⊕y,z)".into())?
        .then(s.a(z, x, y), || "a(z,x,y)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.m(s.id(x), s.c(y, z)), || "id⊕c(y,z)".into())?
        .then(s.a(x, z, y), || "a(x,z,y)".into())?
        .then(s.m(s.c(x, z), s.id(y)), || "c(x,z)⊕id".into())?
        .finish()?;
    commute!("hexagon", lhs, rhs);
    Ok(None)
}

pub(crate) fn sc4(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y) = (xs[0], xs[1]);
    let lhs = Chain::new(s.g, trace)
        .then(s.c(x, y), || "c(x,y)".into())?
        .then(s.c(y, x), || "c(y,x)".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.id(s.o(x, y)), || "id".into())?
        .finish()?;
    commute!("symmetry", lhs, rhs);
    Ok(None)
}

/// SC1–SC4 with first-failure witnesses; SC3/SC4 are not applicable without `c`.
pub fn validate_sm(m: &MonStructure, cfg: &CheckConfig) -> Result<AxiomReport> {
    validate_sm_view(&m.view(), cfg)
}

pub(crate) fn validate_sm_view(s: &SumView, cfg: &CheckConfig) -> Result<AxiomReport> {
    let g = s.g;
    let mut report = AxiomReport::new("sm");
    let (a, l, r) = (s.a, Some(s.l), Some(s.r));
    if a.is_none() {
        return Err(Error::MissingFamily("a".into()));
    }
    report.push(run_axiom("SC1", g, 4, cfg, all_identity(g, &[a]), |xs, t| sc1(s, xs, t))?);
    report.push(run_axiom("SC2", g, 2, cfg, all_identity(g, &[a, l, r]), |xs, t| sc2(s, xs, t))?);
    match s.c {
        Some(_) => {
            report.push(run_axiom("SC3", g, 3, cfg, all_identity(g, &[a, s.c]), |xs, t| sc3(s, xs, t))?);
            report.push(run_axiom("SC4", g, 2, cfg, all_identity(g, &[s.c]), |xs, t| sc4(s, xs, t))?);
        }
        None => {
            report.push(AxiomOutcome::skipped("SC3", Status::NotApplicable, "no commutator"));
            report.push(AxiomOutcome::skipped("SC4", Status::NotApplicable, "no commutator"));
        }
    }
    Ok(report)
}

/// The basic unitor `d = l₀ = r₀ : 0⊕0 → 0`.
pub fn basic_unitor(m: &MonStructure) -> Result<MorId> {
    basic_unitor_view(&m.view())
}

pub(crate) fn basic_unitor_view(s: &SumView) -> Result<MorId> {
    let (l0, r0) = (s.l(s.unit), s.r(s.unit));
    if l0 != r0 {
        return Err(Error::UnitorMismatch {
            l0: s.g.mor_name(l0).to_string(),
            r0: s.g.mor_name(r0).to_string(),
        });
    }
    Ok(l0)
}

/// A weak inverse `x̄` of `x` with `η: 0 → x̄⊕x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeakInverseCert {
    pub object: ObjId,
    pub inverse: ObjId,
    pub eta: MorId,
}

/// Every `(x̄, η)` in canonical order.
pub fn all_weak_inverses(m: &MonStructure, x: ObjId) -> Vec<WeakInverseCert> {
    all_weak_inverses_view(&m.view(), x)
}

pub(crate) fn all_weak_inverses_view(s: &SumView, x: ObjId) -> Vec<WeakInverseCert> {
    s.g.objects()
        .flat_map(|xb| {
            s.g.hom(s.unit, s.o(xb, x)).iter().map(move |&eta| WeakInverseCert {
                object: x,
                inverse: xb,
                eta,
            })
        })
        .collect()
}

/// The first weak inverse of `x` in canonical order.
pub fn find_weak_inverse(m: &MonStructure, x: ObjId) -> Result<WeakInverseCert> {
    find_weak_inverse_view(&m.view(), x)
}

pub(crate) fn find_weak_inverse_view(s: &SumView, x: ObjId) -> Result<WeakInverseCert> {
    for xb in s.g.objects() {
        if let Some(&eta) = s.g.hom(s.unit, s.o(xb, x)).first() {
            return Ok(WeakInverseCert {
                object: x,
                inverse: xb,
                eta,
            });
        }
    }
    Err(Error::NoInverse(s.g.obj_name(x).to_string()))
}

/// One certificate per object, or `NoInverse` for the first object lacking one.
pub fn weak_inverse_certificates(m: &MonStructure) -> Result<Vec<WeakInverseCert>> {
    m.carrier.objects().map(|x| find_weak_inverse(m, x)).collect()
}

/// SC1–SC4, the groupoid laws and a weak inverse for every object.
pub fn validate_2group(m: &MonStructure, cfg: &CheckConfig) -> Result<AxiomReport> {
    let mut report = validate_sm(m, cfg)?;
    report.suite = "2group".into();
    let gr = validate_groupoid(&m.carrier);
    report.push(match gr.first_failure() {
        None => AxiomOutcome::pass("groupoid", gr.outcomes.iter().map(|o| o.instances).sum(), Coverage::Exhaustive),
        Some(o) => {
            let mut o = o.clone();
            o.axiom = format!("groupoid-{}", o.axiom);
            o
        }
    });
    let n = m.carrier.num_objects() as u64;
    report.push(match weak_inverse_certificates(m) {
        Ok(certs) => AxiomOutcome::pass("weak-inverses", n, Coverage::Exhaustive).with_note(
            certs
                .iter()
                .map(|c| {
                    format!(
                        "{}*={} via {}",
                        m.carrier.obj_name(c.object),
                        m.carrier.obj_name(c.inverse),
                        m.carrier.mor_name(c.eta)
                    )
                })
                .collect::<Vec<_>>()
                .join("; "),
        ),
        Err(Error::NoInverse(name)) => {
            let g = &*m.carrier;
            let x = g.obj_by_name(&name).expect("named object");
            let empty = crate::check::Composite {
                mor: g.id(m.unit),
                name: format!("no arrow 0 → x̄⊕{name}"),
                legs: vec![],
            };
            AxiomOutcome::fail(
                "weak-inverses",
                n,
                Coverage::Exhaustive,
                Witness {
                    diagram: "η: 0 → x̄⊕x exists".into(),
                    index: vec![g.obj_name(x).to_string()],
                    lhs: empty.clone(),
                    rhs: empty,
                },
            )
            .with_note(format!("NoInverse({name})"))
        }
        Err(e) => return Err(e),
    });
    Ok(report)
}
