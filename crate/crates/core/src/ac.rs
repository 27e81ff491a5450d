//! AC structure `(C, ⊕, 0, b, l, r)`, axioms AC1–AC3 and the translations
//! between the symmetric and AC presentations.

use std::sync::Arc;

use crate::check::{commute, AxiomOutcome, AxiomReport, Chain, CheckConfig, Composite, InstanceResult};
use crate::error::{Error, Result};
use crate::family::{check_naturality, ExprEnv, NatFamily};
use crate::groupoid::{validate_groupoid, FinGroupoid, MorId, ObjId};
use crate::monoidal::{all_identity, env_for, role, run_axiom, validate_sm, MonStructure, SumView};
use crate::tensor::{validate_bifunctor, Bifunctor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACStructure {
    pub carrier: Arc<FinGroupoid>,
    pub sum: Bifunctor,
    pub unit: ObjId,
    pub b: NatFamily,
    pub l: NatFamily,
    pub r: NatFamily,
}

impl ACStructure {
    pub fn new(
        carrier: Arc<FinGroupoid>,
        sum: Bifunctor,
        unit: ObjId,
        b: Vec<MorId>,
        l: Vec<MorId>,
        r: Vec<MorId>,
    ) -> Result<Self> {
        let g = &*carrier;
        let env = env_for(g, &sum, unit);
        let b = role::family("b", g, &env, role::b(), b)?;
        let l = role::family("l", g, &env, role::l(), l)?;
        let r = role::family("r", g, &env, role::r(), r)?;
        Ok(ACStructure {
            carrier,
            sum,
            unit,
            b,
            l,
            r,
        })
    }

    pub fn from_fns(
        carrier: Arc<FinGroupoid>,
        sum: Bifunctor,
        unit: ObjId,
        b: impl Fn(&[ObjId]) -> MorId,
        l: impl Fn(ObjId) -> MorId,
        r: impl Fn(ObjId) -> MorId,
    ) -> Result<Self> {
        let g = &*carrier;
        let env = env_for(g, &sum, unit);
        let b = role::family_fn("b", g, &env, role::b(), b)?;
        let l = role::family_fn("l", g, &env, role::l(), |xs| l(xs[0]))?;
        let r = role::family_fn("r", g, &env, role::r(), |xs| r(xs[0]))?;
        Ok(ACStructure {
            carrier,
            sum,
            unit,
            b,
            l,
            r,
        })
    }

    /// All families identity.
    pub fn strict(carrier: Arc<FinGroupoid>, sum: Bifunctor, unit: ObjId) -> Result<Self> {
        let g = carrier.clone();
        let sm = sum.clone();
        Self::from_fns(
            carrier.clone(),
            sum,
            unit,
            |xs| g.id(sm.obj(sm.obj(xs[0], xs[1]), sm.obj(xs[2], xs[3]))),
            |x| g.id(x),
            |x| g.id(x),
        )
    }

    pub fn view(&self) -> SumView<'_> {
        SumView {
            g: &self.carrier,
            sum: &self.sum,
            unit: self.unit,
            a: None,
            c: None,
            b: Some(&self.b),
            l: &self.l,
            r: &self.r,
        }
    }

    pub fn env(&self) -> ExprEnv<'_> {
        self.view().env()
    }

    /// Groupoid laws, bifunctoriality of ⊕ and naturality of b, l, r.
    pub fn preflight(&self, cfg: &CheckConfig) -> Result<AxiomReport> {
        let g = &*self.carrier;
        let mut report = validate_groupoid(g);
        report.suite = "preflight".into();
        for o in validate_bifunctor(g, &self.sum).outcomes {
            report.push(AxiomOutcome { axiom: format!("sum-{}", o.axiom), ..o });
        }
        let env = self.env();
        for fam in [&self.b, &self.l, &self.r] {
            report.outcomes.extend(check_naturality(fam, g, g, &env, cfg)?.outcomes);
        }
        Ok(report)
    }
}

pub(crate) fn ac1(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let [x, y, z, t, x2, y2, z2, t2] = [xs[0], xs[1], xs[2], xs[3], xs[4], xs[5], xs[6], xs[7]];
    let o = |p, q| s.o(p, q);
    let lhs = Chain::new(s.g, trace)
        .then(s.m(s.b(x, y, z, t), s.b(x2, y2, z2, t2)), || "b(x,y,z,t)⊕b(x',y',z',t')".into())?
        .then(s.b(o(x, z), o(y, t), o(x2, z2), o(y2, t2)), || "b(x⊕z,y⊕t,x'⊕z',y'⊕t')".into())?
        .then(s.m(s.b(x, z, x2, z2), s.b(y, t, y2, t2)), || "b(x,z,x',z')⊕b(y,t,y',t')".into())?
        .finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.b(o(x, y), o(z, t), o(x2, y2), o(z2, t2)), || "b(x⊕y,z⊕t,x'⊕y',z'⊕t')".into())?
        .then(s.m(s.b(x, y, x2, y2), s.b(z, t, z2, t2)), || "b(x,y,x',y')⊕b(z,t,z',t')".into())?
        .then(s.b(o(x, x2), o(y, y2), o(z, z2), o(t, t2)), || "b(x⊕x',y⊕y',z⊕z',t⊕t')".into())?
        .finish()?;
    commute!("4×4", lhs, rhs);
    Ok(None)
}

pub(crate) fn ac2(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, e) = (xs[0], xs[1], s.unit);
    let g = s.g;
    let lhs = Chain::new(g, trace)
        .then(s.b(x, e, y, e), || "b(x,0,y,0)".into())?
        .then(s.m(s.id(s.o(x, y)), s.l(e)), || "id⊕l(0)".into())?
        .then(s.r(s.o(x, y)), || "r(x⊕y)".into())?
        .finish()?;
    let rhs = Chain::new(g, trace).then(s.m(s.r(x), s.r(y)), || "r(x)⊕r(y)".into())?.finish()?;
    commute!("unital (r, b(x,0,y,0))", lhs, rhs);

    let lhs = Chain::new(g, trace)
        .then(s.b(e, x, e, y), || "b(0,x,0,y)".into())?
        .then(s.m(s.r(e), s.id(s.o(x, y))), || "r(0)⊕id".into())?
        .then(s.l(s.o(x, y)), || "l(x⊕y)".into())?
        .finish()?;
    let rhs = Chain::new(g, trace).then(s.m(s.l(x), s.l(y)), || "l(x)⊕l(y)".into())?.finish()?;
    commute!("unital (l, b(0,x,0,y))", lhs, rhs);

    let lhs = Chain::new(g, trace)
        .then(s.b(x, y, e, e), || "b(x,y,0,0)".into())?
        .then(s.m(s.r(x), s.r(y)), || "r(x)⊕r(y)".into())?
        .finish()?;
    let rhs = Chain::new(g, trace)
        .then(s.m(s.id(s.o(x, y)), s.l(e)), || "id⊕l(0)".into())?
        .then(s.r(s.o(x, y)), || "r(x⊕y)".into())?
        .finish()?;
    commute!("unital (r, b(x,y,0,0))", lhs, rhs);

    let lhs = Chain::new(g, trace)
        .then(s.b(e, e, x, y), || "b(0,0,x,y)".into())?
        .then(s.m(s.l(x), s.l(y)), || "l(x)⊕l(y)".into())?
        .finish()?;
    let rhs = Chain::new(g, trace)
        .then(s.m(s.r(e), s.id(s.o(x, y))), || "r(0)⊕id".into())?
        .then(s.l(s.o(x, y)), || "l(x⊕y)".into())?
        .finish()?;
    commute!("unital (l, b(0,0,x,y))", lhs, rhs);
    Ok(None)
}

pub(crate) fn ac3(s: &SumView, xs: &[ObjId], trace: bool) -> InstanceResult {
    let (x, y, e) = (xs[0], xs[1], s.unit);
    let lhs = Chain::new(s.g, trace).then(s.b(x, e, e, y), || "b(x,0,0,y)".into())?.finish()?;
    let rhs = Chain::new(s.g, trace)
        .then(s.id(s.o(s.o(x, e), s.o(e, y))), || "id".into())?
        .finish()?;
    commute!("normalization", lhs, rhs);
    Ok(None)
}

/// AC1 over 8-tuples, AC2 (four diagrams) and AC3 over pairs.
pub fn validate_ac(a: &ACStructure, cfg: &CheckConfig) -> Result<AxiomReport> {
    validate_ac_view(&a.view(), cfg)
}

pub(crate) fn validate_ac_view(s: &SumView, cfg: &CheckConfig) -> Result<AxiomReport> {
    if s.b.is_none() {
        return Err(Error::MissingFamily("b".into()));
    }
    let g = s.g;
    let mut report = AxiomReport::new("ac");
    let (b, l, r) = (s.b, Some(s.l), Some(s.r));
    report.push(run_axiom("AC1", g, 8, cfg, all_identity(g, &[b]), |xs, t| ac1(s, xs, t))?);
    report.push(run_axiom("AC2", g, 2, cfg, all_identity(g, &[b, l, r]), |xs, t| ac2(s, xs, t))?);
    report.push(run_axiom("AC3", g, 2, cfg, all_identity(g, &[b]), |xs, t| ac3(s, xs, t))?);
    Ok(report)
}

/// The canonical associo-commutator `b(x,y,z,t)` of a symmetric structure,
/// evaluated along `a⁻¹(x,y,z⊕t)`, `id⊕a(y,z,t)`, `id⊕(c(y,z)⊕id)`,
/// `id⊕a⁻¹(z,y,t)`, `a(x,z,y⊕t)`.
pub fn canonical_associo_commutator(m: &MonStructure, xs: [ObjId; 4], trace: bool) -> Result<Composite> {
    canonical_b(&m.view(), xs, trace)
}

pub(crate) fn canonical_b(s: &SumView, [x, y, z, t]: [ObjId; 4], trace: bool) -> Result<Composite> {
    if s.c.is_none() {
        return Err(Error::MissingFamily("c".into()));
    }
    Chain::new(s.g, trace)
        .then(s.inv(s.a(x, y, s.o(z, t)))?, || "a⁻¹(x,y,z⊕t)".into())?
        .then(s.m(s.id(x), s.a(y, z, t)), || "id⊕a(y,z,t)".into())?
        .then(s.m(s.id(x), s.m(s.c(y, z), s.id(t))), || "id⊕(c(y,z)⊕id)".into())?
        .then(s.m(s.id(x), s.inv(s.a(z, y, t))?), || "id⊕a⁻¹(z,y,t)".into())?
        .then(s.a(x, z, s.o(y, t)), || "a(x,z,y⊕t)".into())?
        .finish()
}

/// Full table of canonical associo-commutators, without validating the input.
pub(crate) fn canonical_b_family(s: &SumView) -> Result<NatFamily> {
    let g = s.g;
    let n = g.num_objects();
    let mut comps = Vec::with_capacity(n.pow(4));
    for x in g.objects() {
        for y in g.objects() {
            for z in g.objects() {
                for t in g.objects() {
                    comps.push(canonical_b(s, [x, y, z, t], false)?.mor);
                }
            }
        }
    }
    let (src, dst) = role::b();
    NatFamily::new("b", n, src, dst, comps)
}

/// The AC presentation of a validated symmetric structure.
pub fn to_ac(m: &MonStructure, cfg: &CheckConfig) -> Result<ACStructure> {
    if m.c.is_none() {
        return Err(Error::MissingFamily("c".into()));
    }
    validate_sm(m, cfg)?.require("to_ac")?;
    let b = canonical_b_family(&m.view())?;
    Ok(ACStructure {
        carrier: m.carrier.clone(),
        sum: m.sum.clone(),
        unit: m.unit,
        b,
        l: m.l.clone(),
        r: m.r.clone(),
    })
}

/// The symmetric presentation of a validated AC structure: canonical
/// associator `(id⊕l_z)∘b(x,0,y,z)∘(r_x⁻¹⊕id)` and commutator
/// `(l_y⊕r_x)∘b(0,x,y,0)∘(l_x⁻¹⊕r_y⁻¹)`.
pub fn to_sm(a: &ACStructure, cfg: &CheckConfig) -> Result<MonStructure> {
    validate_ac(a, cfg)?.require("to_sm")?;
    let s = a.view();
    let g = s.g;
    let e = s.unit;
    let assoc = |x: ObjId, y: ObjId, z: ObjId| -> Result<MorId> {
        Ok(Chain::new(g, false)
            .then(s.m(s.inv(s.r(x))?, s.id(s.o(y, z))), String::new)?
            .then(s.b(x, e, y, z), String::new)?
            .then(s.m(s.id(s.o(x, y)), s.l(z)), String::new)?
            .finish()?
            .mor)
    };
    let comm = |x: ObjId, y: ObjId| -> Result<MorId> {
        Ok(Chain::new(g, false)
            .then(s.m(s.inv(s.l(x))?, s.inv(s.r(y))?), String::new)?
            .then(s.b(e, x, y, e), String::new)?
            .then(s.m(s.l(y), s.r(x)), String::new)?
            .finish()?
            .mor)
    };
    let n = g.num_objects();
    let mut av = Vec::with_capacity(n.pow(3));
    for x in g.objects() {
        for y in g.objects() {
            for z in g.objects() {
                av.push(assoc(x, y, z)?);
            }
        }
    }
    let mut cv = Vec::with_capacity(n * n);
    for x in g.objects() {
        for y in g.objects() {
            cv.push(comm(x, y)?);
        }
    }
    MonStructure::new(
        a.carrier.clone(),
        a.sum.clone(),
        a.unit,
        av,
        Some(cv),
        a.l.components().to_vec(),
        a.r.components().to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Status;
    use crate::monoidal::tests::cyclic_carrier;

    fn super_line() -> MonStructure {
        let (g, s) = cyclic_carrier(2, 2);
        let lab = |x: u32, kk: u32| MorId(x * 2 + kk);
        let c = move |x: ObjId, y: ObjId| lab((x.0 + y.0) % 2, x.0 * y.0);
        MonStructure::from_fns(
            g,
            s,
            ObjId(0),
            move |x, y, z| lab((x.0 + y.0 + z.0) % 2, 0),
            Some(&c),
            move |x| lab(x.0, 0),
            move |x| lab(x.0, 0),
        )
        .unwrap()
    }

    #[test]
    fn super_line_b_is_yz() {
        let m = super_line();
        let a = to_ac(&m, &CheckConfig::default()).unwrap();
        for xs in (0..16u32).map(|i| [i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1]) {
            let tuple: Vec<ObjId> = xs.iter().map(|&x| ObjId(x)).collect();
            let comp = a.b.get(&tuple);
            assert_eq!(comp.0 % 2, xs[1] * xs[2], "b at {xs:?}");
        }
        assert!(validate_ac(&a, &CheckConfig::thorough()).unwrap().passed());
        assert_eq!(to_sm(&a, &CheckConfig::default()).unwrap(), m);
    }

    #[test]
    fn flipped_b_breaks_ac1() {
        let m = super_line();
        let mut a = to_ac(&m, &CheckConfig::default()).unwrap();
        let one = [ObjId(1); 4];
        let cur = a.b.get(&one);
        a.b.set(&one, MorId(cur.0 ^ 1));
        let r = validate_ac(&a, &CheckConfig::thorough()).unwrap();
        assert_eq!(r.status("AC1"), Some(Status::Fail));
        assert_eq!(r.get("AC1").unwrap().witness.as_ref().unwrap().index.len(), 8);
    }

    #[test]
    fn to_ac_refuses_broken_input() {
        let mut m = super_line();
        m.a.set(&[ObjId(1); 3], MorId(3));
        assert!(matches!(
            to_ac(&m, &CheckConfig::default()),
            Err(Error::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn to_sm_refuses_ac3_violation() {
        let (g, s) = cyclic_carrier(2, 2);
        let mut a = ACStructure::strict(g, s, ObjId(0)).unwrap();
        let xs = [ObjId(1), ObjId(0), ObjId(0), ObjId(0)];
        let cur = a.b.get(&xs);
        a.b.set(&xs, MorId(cur.0 ^ 1));
        let r = validate_ac(&a, &CheckConfig::thorough()).unwrap();
        assert_eq!(r.status("AC3"), Some(Status::Fail));
        assert!(to_sm(&a, &CheckConfig::default()).is_err());
    }
}
