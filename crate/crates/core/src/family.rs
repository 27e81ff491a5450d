//! Object-indexed morphism families and their naturality check.
//!
//! A family of arity `k` assigns a morphism to every `k`-tuple of objects.
//! Its expected endpoints are formal words ([`ObjExpr`]) over the bifunctors,
//! constants and functors of an [`ExprEnv`]; the same words, evaluated on
//! morphisms, give the functorial actions used by the naturality squares.

use std::fmt;

use crate::check::{commute, run_instances, AxiomReport, CheckConfig, Chain, InstanceResult};
use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, GFunctor, MorId, ObjId};
use crate::tensor::Bifunctor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjExpr {
    Var(u8),
    Const(u8),
    /// Binary operation `k` of the environment.
    Op(u8, Box<ObjExpr>, Box<ObjExpr>),
    /// Functor `k` of the environment.
    Ap(u8, Box<ObjExpr>),
}

pub fn v(i: u8) -> ObjExpr {
    ObjExpr::Var(i)
}

pub fn k(c: u8) -> ObjExpr {
    ObjExpr::Const(c)
}

pub fn op(o: u8, a: ObjExpr, b: ObjExpr) -> ObjExpr {
    ObjExpr::Op(o, Box::new(a), Box::new(b))
}

pub fn ap(f: u8, e: ObjExpr) -> ObjExpr {
    ObjExpr::Ap(f, Box::new(e))
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const VARS: [&str; 8] = ["x", "y", "z", "t", "u", "x'", "y'", "z'"];
        match self {
            ObjExpr::Var(i) => f.write_str(VARS.get(*i as usize).copied().unwrap_or("?")),
            ObjExpr::Const(c) => write!(f, "k{c}"),
            ObjExpr::Op(o, a, b) => write!(f, "({a} ⊗{o} {b})"),
            ObjExpr::Ap(j, e) => write!(f, "F{j}{e}"),
        }
    }
}

impl ObjExpr {
    /// Largest variable index used, plus one.
    pub fn arity(&self) -> usize {
        match self {
            ObjExpr::Var(i) => *i as usize + 1,
            ObjExpr::Const(_) => 0,
            ObjExpr::Op(_, a, b) => a.arity().max(b.arity()),
            ObjExpr::Ap(_, e) => e.arity(),
        }
    }
}

/// Anything with an object and morphism action.
pub trait FunctorMap: Sync {
    fn obj(&self, x: ObjId) -> ObjId;
    fn mor(&self, f: MorId) -> MorId;
}

impl FunctorMap for GFunctor {
    fn obj(&self, x: ObjId) -> ObjId {
        GFunctor::obj(self, x)
    }

    fn mor(&self, f: MorId) -> MorId {
        GFunctor::mor(self, f)
    }
}

/// The symbols an [`ObjExpr`] may refer to.
#[derive(Clone, Default)]
pub struct ExprEnv<'a> {
    pub ops: Vec<&'a Bifunctor>,
    /// Constant objects, living in the carrier where they are used.
    pub consts: Vec<(ObjId, MorId)>,
    pub functors: Vec<&'a dyn FunctorMap>,
}

impl<'a> ExprEnv<'a> {
    pub fn eval_obj(&self, e: &ObjExpr, xs: &[ObjId]) -> ObjId {
        match e {
            ObjExpr::Var(i) => xs[*i as usize],
            ObjExpr::Const(c) => self.consts[*c as usize].0,
            ObjExpr::Op(o, a, b) => self.ops[*o as usize].obj(self.eval_obj(a, xs), self.eval_obj(b, xs)),
            ObjExpr::Ap(j, a) => self.functors[*j as usize].obj(self.eval_obj(a, xs)),
        }
    }

    pub fn eval_mor(&self, e: &ObjExpr, fs: &[MorId]) -> MorId {
        match e {
            ObjExpr::Var(i) => fs[*i as usize],
            ObjExpr::Const(c) => self.consts[*c as usize].1,
            ObjExpr::Op(o, a, b) => self.ops[*o as usize].mor(self.eval_mor(a, fs), self.eval_mor(b, fs)),
            ObjExpr::Ap(j, a) => self.functors[*j as usize].mor(self.eval_mor(a, fs)),
        }
    }
}

/// Mixed-radix position of a tuple, first coordinate most significant.
#[inline]
pub fn tuple_index(n: usize, xs: &[ObjId]) -> usize {
    xs.iter().fold(0, |acc, x| acc * n + x.index())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatFamily {
    pub name: String,
    pub arity: usize,
    /// Number of objects in the index domain.
    pub n: usize,
    pub source: ObjExpr,
    pub target: ObjExpr,
    components: Vec<MorId>,
}

impl NatFamily {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        source: ObjExpr,
        target: ObjExpr,
        components: Vec<MorId>,
    ) -> Result<Self> {
        let name = name.into();
        let arity = source.arity().max(target.arity());
        let expected = n.checked_pow(arity as u32).unwrap_or(usize::MAX);
        if components.len() != expected {
            return Err(Error::BadFamily {
                family: name,
                detail: format!("{} components, expected {expected}", components.len()),
            });
        }
        Ok(NatFamily {
            name,
            arity,
            n,
            source,
            target,
            components,
        })
    }

    pub fn from_fn(
        name: impl Into<String>,
        n: usize,
        source: ObjExpr,
        target: ObjExpr,
        f: impl Fn(&[ObjId]) -> MorId,
    ) -> Result<Self> {
        let arity = source.arity().max(target.arity());
        let total = n.pow(arity as u32);
        let mut buf = vec![ObjId(0); arity];
        let mut comps = Vec::with_capacity(total);
        for idx in 0..total {
            let mut r = idx;
            for slot in buf.iter_mut().rev() {
                *slot = ObjId((r % n) as u32);
                r /= n;
            }
            comps.push(f(&buf));
        }
        Self::new(name, n, source, target, comps)
    }

    #[inline]
    pub fn get(&self, xs: &[ObjId]) -> MorId {
        debug_assert_eq!(xs.len(), self.arity);
        self.components[tuple_index(self.n, xs)]
    }

    #[inline]
    pub fn get1(&self, x: ObjId) -> MorId {
        self.components[x.index()]
    }

    #[inline]
    pub fn get2(&self, x: ObjId, y: ObjId) -> MorId {
        self.components[x.index() * self.n + y.index()]
    }

    #[inline]
    pub fn get3(&self, x: ObjId, y: ObjId, z: ObjId) -> MorId {
        self.components[(x.index() * self.n + y.index()) * self.n + z.index()]
    }

    #[inline]
    pub fn get4(&self, x: ObjId, y: ObjId, z: ObjId, t: ObjId) -> MorId {
        self.components[((x.index() * self.n + y.index()) * self.n + z.index()) * self.n + t.index()]
    }

    pub fn set(&mut self, xs: &[ObjId], m: MorId) {
        let i = tuple_index(self.n, xs);
        self.components[i] = m;
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Decode a flat component position into its index tuple.
    pub fn tuple_at(&self, mut idx: usize) -> Vec<ObjId> {
        let mut out = vec![ObjId(0); self.arity];
        for slot in out.iter_mut().rev() {
            *slot = ObjId((idx % self.n) as u32);
            idx /= self.n;
        }
        out
    }

    /// Every component is the identity of its source.
    pub fn is_identity(&self, g: &FinGroupoid) -> bool {
        self.components.iter().all(|&m| g.is_identity(m))
    }

    /// Every component runs from the evaluated source to the evaluated target.
    pub fn check_endpoints(&self, g: &FinGroupoid, env: &ExprEnv) -> Result<()> {
        for (idx, &m) in self.components.iter().enumerate() {
            if m.index() >= g.num_morphisms() {
                return Err(Error::BadFamily {
                    family: self.name.clone(),
                    detail: format!("unknown morphism id {}", m.0),
                });
            }
            let xs = self.tuple_at(idx);
            let (s, t) = (env.eval_obj(&self.source, &xs), env.eval_obj(&self.target, &xs));
            if g.src(m) != s || g.dst(m) != t {
                return Err(Error::BadFamily {
                    family: self.name.clone(),
                    detail: format!(
                        "component at ({}) is {}: {} → {}, expected {} → {}",
                        xs.iter().map(|&x| x.0.to_string()).collect::<Vec<_>>().join(","),
                        g.mor_name(m),
                        g.obj_name(g.src(m)),
                        g.obj_name(g.dst(m)),
                        g.obj_name(s),
                        g.obj_name(t)
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Check every naturality square of `fam`, one variable at a time.
///
/// For an index tuple `xs`, a position `i` and a non-identity `f: xs[i] → y`,
/// the square `T(f) ∘ α(xs) = α(xs[i := y]) ∘ S(f)` must commute, where `S`
/// and `T` are the source and target words evaluated on morphisms (identities
/// in the other positions). Squares in several variables at once follow by
/// functoriality.
pub fn check_naturality(
    fam: &NatFamily,
    domain: &FinGroupoid,
    codomain: &FinGroupoid,
    env: &ExprEnv,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    let needed = fam.source.arity().max(fam.target.arity());
    if needed != fam.arity {
        return Err(Error::ArityMismatch {
            expected: needed,
            found: fam.arity,
        });
    }
    if fam.n != domain.num_objects() {
        return Err(Error::DomainMismatch(format!(
            "family {} is indexed by {} objects, domain has {}",
            fam.name,
            fam.n,
            domain.num_objects()
        )));
    }
    let mut report = AxiomReport::new(format!("naturality({})", fam.name));
    let axiom = format!("natural({})", fam.name);
    let outcome = if fam.arity == 0 {
        crate::check::AxiomOutcome::pass(&axiom, 0, crate::check::Coverage::Exhaustive)
    } else {
        run_instances(&axiom, domain, fam.arity, cfg, |xs, trace| -> InstanceResult {
            let mut fs: Vec<MorId> = xs.iter().map(|&x| domain.id(x)).collect();
            let mut ys = xs.to_vec();
            let alpha = fam.get(xs);
            for i in 0..fam.arity {
                for &f in domain.out_of(xs[i]) {
                    if domain.is_identity(f) {
                        continue;
                    }
                    fs[i] = f;
                    ys[i] = domain.dst(f);
                    let s = env.eval_mor(&fam.source, &fs);
                    let t = env.eval_mor(&fam.target, &fs);
                    let beta = fam.get(&ys);
                    let diagram = || {
                        format!(
                            "naturality of {} in argument {} along {}",
                            fam.name,
                            i + 1,
                            domain.mor_name(f)
                        )
                    };
                    let lhs = Chain::new(codomain, trace)
                        .then(alpha, || format!("{}(xs)", fam.name))?
                        .then(t, || "T(f)".into())?
                        .finish()?;
                    let rhs = Chain::new(codomain, trace)
                        .then(s, || "S(f)".into())?
                        .then(beta, || format!("{}(ys)", fam.name))?
                        .finish()?;
                    commute!(diagram(), lhs, rhs);
                    fs[i] = domain.id(xs[i]);
                    ys[i] = xs[i];
                }
            }
            Ok(None)
        })?
    };
    report.push(outcome);
    Ok(report)
}
