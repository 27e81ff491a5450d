//! Finite groupoids given by explicit tables, and functors between them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::check::{AxiomOutcome, AxiomReport, Composite, Coverage, Leg, ValidationReport, Witness};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum ComposeTable {
    Dense { n: usize, table: Vec<u32> },
    Sparse(HashMap<(u32, u32), u32>),
}

impl ComposeTable {
    fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            ComposeTable::Dense {
                n,
                table: vec![NONE; n * n],
            }
        } else {
            ComposeTable::Sparse(HashMap::new())
        }
    }

    fn get(&self, g: MorId, f: MorId) -> Option<MorId> {
        match self {
            ComposeTable::Dense { n, table } => {
                let v = table[g.index() * n + f.index()];
                (v != NONE).then_some(MorId(v))
            }
            ComposeTable::Sparse(map) => map.get(&(g.0, f.0)).map(|&v| MorId(v)),
        }
    }

    fn set(&mut self, g: MorId, f: MorId, gf: MorId) {
        match self {
            ComposeTable::Dense { n, table } => table[g.index() * *n + f.index()] = gf.0,
            ComposeTable::Sparse(map) => {
                map.insert((g.0, f.0), gf.0);
            }
        }
    }
}

/// A finite groupoid: objects, morphisms and total composition/identity tables.
///
/// Ids are dense indices; their order is the canonical order used by every
/// search and by the first-witness rule.
#[derive(Clone, Debug)]
pub struct FinGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: ComposeTable,
    identity: Vec<MorId>,
    inverse: Vec<Option<MorId>>,
    inverses_declared: bool,
    out: Vec<Vec<MorId>>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

impl PartialEq for FinGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.inverse == other.inverse
            && self.compose == other.compose
    }
}

impl Eq for FinGroupoid {}

impl FinGroupoid {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.index()]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f.index()].name
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.index()]
    }

    #[inline]
    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].src
    }

    #[inline]
    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].dst
    }

    #[inline]
    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.index()]
    }

    /// `g ∘ f`, defined iff `dst(f) = src(g)`.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(g, f)
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.inverse[f.index()]
    }

    pub fn inv(&self, f: MorId) -> Result<MorId> {
        self.inverse(f)
            .ok_or_else(|| Error::NotInvertible(self.mor_name(f).to_string()))
    }

    pub fn inverses_declared(&self) -> bool {
        self.inverses_declared
    }

    /// Morphisms `x → y` in canonical order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Morphisms out of `x` in canonical order.
    pub fn out_of(&self, x: ObjId) -> &[MorId] {
        &self.out[x.index()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.id(self.src(f)) == f
    }
}

/// Incremental constructor for [`FinGroupoid`].
#[derive(Clone, Debug, Default)]
pub struct GroupoidBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: HashMap<(MorId, MorId), MorId>,
    identity: HashMap<ObjId, MorId>,
    inverse: HashMap<MorId, MorId>,
}

impl GroupoidBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        ObjId(self.objects.len() as u32 - 1)
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: ObjId, dst: ObjId) -> MorId {
        self.morphisms.push(Morphism {
            name: name.into(),
            src,
            dst,
        });
        MorId(self.morphisms.len() as u32 - 1)
    }

    /// Record `g ∘ f = gf`, replacing any earlier entry.
    pub fn compose(&mut self, g: MorId, f: MorId, gf: MorId) -> &mut Self {
        self.compose.insert((g, f), gf);
        self
    }

    pub fn identity(&mut self, x: ObjId, m: MorId) -> &mut Self {
        self.identity.insert(x, m);
        self
    }

    pub fn inverse(&mut self, f: MorId, f_inv: MorId) -> &mut Self {
        self.inverse.insert(f, f_inv);
        self
    }

    pub fn build(self) -> Result<FinGroupoid> {
        let n_obj = self.objects.len();
        let n_mor = self.morphisms.len();
        let mut obj_index = HashMap::new();
        for (i, name) in self.objects.iter().enumerate() {
            if obj_index.insert(name.clone(), ObjId(i as u32)).is_some() {
                return Err(Error::MalformedTable(format!("duplicate object {name}")));
            }
        }
        let mut mor_index = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.src.index() >= n_obj || m.dst.index() >= n_obj {
                return Err(Error::MalformedTable(format!(
                    "morphism {} has an unknown endpoint",
                    m.name
                )));
            }
            if mor_index.insert(m.name.clone(), MorId(i as u32)).is_some() {
                return Err(Error::MalformedTable(format!("duplicate morphism {}", m.name)));
            }
        }
        let known = |f: MorId| f.index() < n_mor;

        let mut compose = ComposeTable::new(n_mor);
        for (&(g, f), &gf) in &self.compose {
            if !known(g) || !known(f) || !known(gf) {
                return Err(Error::MalformedTable(
                    "compose references an unknown morphism id".into(),
                ));
            }
            let (mg, mf, mgf) = (
                &self.morphisms[g.index()],
                &self.morphisms[f.index()],
                &self.morphisms[gf.index()],
            );
            if mf.dst != mg.src {
                return Err(Error::MalformedTable(format!(
                    "compose({}, {}) given for a non-composable pair",
                    mg.name, mf.name
                )));
            }
            if mgf.src != mf.src || mgf.dst != mg.dst {
                return Err(Error::MalformedTable(format!(
                    "compose({}, {}) = {} has the wrong endpoints",
                    mg.name, mf.name, mgf.name
                )));
            }
            compose.set(g, f, gf);
        }

        let mut out: Vec<Vec<MorId>> = vec![Vec::new(); n_obj];
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            out[m.src.index()].push(MorId(i as u32));
            hom.entry((m.src, m.dst)).or_default().push(MorId(i as u32));
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            for &g in &out[m.dst.index()] {
                if compose.get(g, MorId(i as u32)).is_none() {
                    return Err(Error::MalformedTable(format!(
                        "compose({}, {}) missing",
                        self.morphisms[g.index()].name, m.name
                    )));
                }
            }
        }

        let mut identity = Vec::with_capacity(n_obj);
        for x in 0..n_obj {
            let x = ObjId(x as u32);
            let m = *self.identity.get(&x).ok_or_else(|| {
                Error::MalformedTable(format!("no identity for {}", self.objects[x.index()]))
            })?;
            if !known(m) || self.morphisms[m.index()].src != x || self.morphisms[m.index()].dst != x {
                return Err(Error::MalformedTable(format!(
                    "identity of {} is not an endomorphism of it",
                    self.objects[x.index()]
                )));
            }
            identity.push(m);
        }

        let inverses_declared = !self.inverse.is_empty();
        let mut inverse = vec![None; n_mor];
        if inverses_declared {
            for (i, slot) in inverse.iter_mut().enumerate() {
                let f = MorId(i as u32);
                let fi = *self.inverse.get(&f).ok_or_else(|| {
                    Error::MalformedTable(format!("no inverse entry for {}", self.morphisms[i].name))
                })?;
                if !known(fi) {
                    return Err(Error::MalformedTable("inverse references an unknown morphism id".into()));
                }
                let (mf, mi) = (&self.morphisms[i], &self.morphisms[fi.index()]);
                if mi.src != mf.dst || mi.dst != mf.src {
                    return Err(Error::MalformedTable(format!(
                        "inverse of {} has the wrong endpoints",
                        mf.name
                    )));
                }
                *slot = Some(fi);
            }
        } else {
            for (i, slot) in inverse.iter_mut().enumerate() {
                let m = &self.morphisms[i];
                let f = MorId(i as u32);
                *slot = hom.get(&(m.dst, m.src)).and_then(|cands| {
                    cands.iter().copied().find(|&g| {
                        compose.get(g, f) == Some(identity[m.src.index()])
                            && compose.get(f, g) == Some(identity[m.dst.index()])
                    })
                });
            }
        }

        Ok(FinGroupoid {
            objects: self.objects,
            morphisms: self.morphisms,
            compose,
            identity,
            inverse,
            inverses_declared,
            out,
            hom,
            obj_index,
            mor_index,
        })
    }
}

impl From<&FinGroupoid> for GroupoidBuilder {
    fn from(g: &FinGroupoid) -> Self {
        let mut b = GroupoidBuilder {
            objects: g.objects.clone(),
            morphisms: g.morphisms.clone(),
            ..Default::default()
        };
        for f in g.morphisms() {
            for &h in g.out_of(g.dst(f)) {
                b.compose.insert((h, f), g.compose(h, f).expect("total on composable pairs"));
            }
            if g.inverses_declared {
                b.inverse.insert(f, g.inverse(f).expect("declared"));
            }
        }
        for x in g.objects() {
            b.identity.insert(x, g.id(x));
        }
        b
    }
}

fn composite(g: &FinGroupoid, mor: MorId, legs: &[(String, MorId)]) -> Composite {
    Composite {
        mor,
        name: g.mor_name(mor).to_string(),
        legs: legs
            .iter()
            .map(|(label, m)| Leg {
                label: label.clone(),
                mor: *m,
                mor_name: g.mor_name(*m).to_string(),
            })
            .collect(),
    }
}

fn witness(diagram: &str, index: Vec<String>, lhs: Composite, rhs: Composite) -> Witness {
    Witness {
        diagram: diagram.to_string(),
        index,
        lhs,
        rhs,
    }
}

/// Check associativity, unit and inverse laws, reporting the first failure of each.
pub fn validate_groupoid(g: &FinGroupoid) -> ValidationReport {
    let mut report = AxiomReport::new("groupoid");
    let c = |h: MorId, f: MorId| g.compose(h, f).expect("total on composable pairs");
    let name = |f: MorId| g.mor_name(f).to_string();

    let mut triples = 0u64;
    let mut assoc = None;
    'outer: for f in g.morphisms() {
        for &gm in g.out_of(g.dst(f)) {
            for &h in g.out_of(g.dst(gm)) {
                triples += 1;
                let lhs = c(c(h, gm), f);
                let rhs = c(h, c(gm, f));
                if lhs != rhs {
                    assoc = Some(witness(
                        "(h∘g)∘f = h∘(g∘f)",
                        vec![name(h), name(gm), name(f)],
                        composite(g, lhs, &[("f".into(), f), ("h∘g".into(), c(h, gm))]),
                        composite(g, rhs, &[("g∘f".into(), c(gm, f)), ("h".into(), h)]),
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.push(match assoc {
        None => AxiomOutcome::pass("associativity", triples, Coverage::Exhaustive),
        Some(w) => AxiomOutcome::fail("associativity", triples, Coverage::Exhaustive, w),
    });

    let mut unit = None;
    for f in g.morphisms() {
        let (s, t) = (g.id(g.src(f)), g.id(g.dst(f)));
        if c(f, s) != f {
            unit = Some(witness(
                "f∘id = f",
                vec![name(f)],
                composite(g, c(f, s), &[("id".into(), s), ("f".into(), f)]),
                composite(g, f, &[("f".into(), f)]),
            ));
            break;
        }
        if c(t, f) != f {
            unit = Some(witness(
                "id∘f = f",
                vec![name(f)],
                composite(g, c(t, f), &[("f".into(), f), ("id".into(), t)]),
                composite(g, f, &[("f".into(), f)]),
            ));
            break;
        }
    }
    let n = g.num_morphisms() as u64;
    report.push(match unit {
        None => AxiomOutcome::pass("unit", n, Coverage::Exhaustive),
        Some(w) => AxiomOutcome::fail("unit", n, Coverage::Exhaustive, w),
    });

    let mut inv = None;
    for f in g.morphisms() {
        let idsrc = g.id(g.src(f));
        match g.inverse(f) {
            None => {
                inv = Some(witness(
                    "f⁻¹ exists",
                    vec![name(f)],
                    composite(g, f, &[("f".into(), f)]),
                    composite(g, idsrc, &[]),
                ));
                break;
            }
            Some(fi) => {
                if c(fi, f) != idsrc {
                    inv = Some(witness(
                        "f⁻¹∘f = id",
                        vec![name(f)],
                        composite(g, c(fi, f), &[("f".into(), f), ("f⁻¹".into(), fi)]),
                        composite(g, idsrc, &[]),
                    ));
                    break;
                }
                let iddst = g.id(g.dst(f));
                if c(f, fi) != iddst {
                    inv = Some(witness(
                        "f∘f⁻¹ = id",
                        vec![name(f)],
                        composite(g, c(f, fi), &[("f⁻¹".into(), fi), ("f".into(), f)]),
                        composite(g, iddst, &[]),
                    ));
                    break;
                }
            }
        }
    }
    report.push(match inv {
        None => AxiomOutcome::pass("inverse", n, Coverage::Exhaustive),
        Some(w) => AxiomOutcome::fail("inverse", n, Coverage::Exhaustive, w),
    });
    report
}

/// Compose a chain written in composition order: `[h, g, f]` is `h∘g∘f`.
pub fn compose_path(g: &FinGroupoid, chain: &[MorId]) -> Result<MorId> {
    let (&last, rest) = chain.split_last().ok_or(Error::EmptyChain)?;
    let mut acc = last;
    for (pos, &next) in rest.iter().enumerate().rev() {
        if g.src(next) != g.dst(acc) {
            return Err(Error::EndpointMismatch {
                position: pos,
                detail: format!(
                    "{} starts at {} but {} ends at {}",
                    g.mor_name(next),
                    g.obj_name(g.src(next)),
                    g.mor_name(acc),
                    g.obj_name(g.dst(acc))
                ),
            });
        }
        acc = g
            .compose(next, acc)
            .ok_or_else(|| Error::MalformedTable("composite undefined".into()))?;
    }
    Ok(acc)
}

/// A functor between finite groupoids, as object and morphism tables.
#[derive(Clone, Debug)]
pub struct GFunctor {
    pub source: Arc<FinGroupoid>,
    pub target: Arc<FinGroupoid>,
    obj: Vec<ObjId>,
    mor: Vec<MorId>,
}

impl PartialEq for GFunctor {
    fn eq(&self, other: &Self) -> bool {
        same_carrier(&self.source, &other.source)
            && same_carrier(&self.target, &other.target)
            && self.obj == other.obj
            && self.mor == other.mor
    }
}

/// Pointer equality first, table equality otherwise.
pub fn same_carrier(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GFunctor {
    pub fn new(
        source: Arc<FinGroupoid>,
        target: Arc<FinGroupoid>,
        obj: Vec<ObjId>,
        mor: Vec<MorId>,
    ) -> Result<Self> {
        if obj.len() != source.num_objects() || mor.len() != source.num_morphisms() {
            return Err(Error::DomainMismatch(format!(
                "functor tables have {} objects and {} morphisms, source has {} and {}",
                obj.len(),
                mor.len(),
                source.num_objects(),
                source.num_morphisms()
            )));
        }
        if obj.iter().any(|x| x.index() >= target.num_objects())
            || mor.iter().any(|f| f.index() >= target.num_morphisms())
        {
            return Err(Error::DomainMismatch("functor maps outside its target".into()));
        }
        Ok(GFunctor {
            source,
            target,
            obj,
            mor,
        })
    }

    pub fn from_fns(
        source: Arc<FinGroupoid>,
        target: Arc<FinGroupoid>,
        obj: impl Fn(ObjId) -> ObjId,
        mor: impl Fn(MorId) -> MorId,
    ) -> Result<Self> {
        let o = source.objects().map(obj).collect();
        let m = source.morphisms().map(mor).collect();
        Self::new(source, target, o, m)
    }

    pub fn identity(g: Arc<FinGroupoid>) -> Self {
        let obj = g.objects().collect();
        let mor = g.morphisms().collect();
        GFunctor {
            source: g.clone(),
            target: g,
            obj,
            mor,
        }
    }

    #[inline]
    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj[x.index()]
    }

    #[inline]
    pub fn mor(&self, f: MorId) -> MorId {
        self.mor[f.index()]
    }

    pub fn obj_table(&self) -> &[ObjId] {
        &self.obj
    }

    pub fn mor_table(&self) -> &[MorId] {
        &self.mor
    }

    /// `second ∘ first`.
    pub fn then(first: &GFunctor, second: &GFunctor) -> Result<GFunctor> {
        if !same_carrier(&first.target, &second.source) {
            return Err(Error::StructureMismatch(
                "target of the first functor is not the source of the second".into(),
            ));
        }
        Ok(GFunctor {
            source: first.source.clone(),
            target: second.target.clone(),
            obj: first.obj.iter().map(|&x| second.obj(x)).collect(),
            mor: first.mor.iter().map(|&f| second.mor(f)).collect(),
        })
    }
}

/// Check that `f` preserves endpoints, identities and composition.
pub fn validate_functor(f: &GFunctor) -> ValidationReport {
    let (s, t) = (&*f.source, &*f.target);
    let mut report = AxiomReport::new("functor");
    let n = s.num_morphisms() as u64;

    let bad_endpoint = s
        .morphisms()
        .find(|&m| t.src(f.mor(m)) != f.obj(s.src(m)) || t.dst(f.mor(m)) != f.obj(s.dst(m)));
    report.push(match bad_endpoint {
        None => AxiomOutcome::pass("endpoints", n, Coverage::Exhaustive),
        Some(m) => AxiomOutcome::fail(
            "endpoints",
            n,
            Coverage::Exhaustive,
            witness(
                "F(f): F(src f) → F(dst f)",
                vec![s.mor_name(m).to_string()],
                composite(t, f.mor(m), &[("F(f)".into(), f.mor(m))]),
                composite(t, t.id(f.obj(s.src(m))), &[]),
            ),
        ),
    });
    if bad_endpoint.is_some() {
        report.push(AxiomOutcome::skipped("identities", Status::NotApplicable, "endpoints fail"));
        report.push(AxiomOutcome::skipped("composition", Status::NotApplicable, "endpoints fail"));
        return report;
    }

    let bad_id = s.objects().find(|&x| f.mor(s.id(x)) != t.id(f.obj(x)));
    report.push(match bad_id {
        None => AxiomOutcome::pass("identities", s.num_objects() as u64, Coverage::Exhaustive),
        Some(x) => AxiomOutcome::fail(
            "identities",
            s.num_objects() as u64,
            Coverage::Exhaustive,
            witness(
                "F(id x) = id(Fx)",
                vec![s.obj_name(x).to_string()],
                composite(t, f.mor(s.id(x)), &[("F(id)".into(), f.mor(s.id(x)))]),
                composite(t, t.id(f.obj(x)), &[]),
            ),
        ),
    });

    let mut pairs = 0u64;
    let mut bad = None;
    'outer: for a in s.morphisms() {
        for &b in s.out_of(s.dst(a)) {
            pairs += 1;
            let lhs = f.mor(s.compose(b, a).expect("total"));
            let rhs = t.compose(f.mor(b), f.mor(a)).expect("endpoints checked");
            if lhs != rhs {
                bad = Some(witness(
                    "F(g∘f) = F(g)∘F(f)",
                    vec![s.mor_name(b).to_string(), s.mor_name(a).to_string()],
                    composite(t, lhs, &[("F(g∘f)".into(), lhs)]),
                    composite(t, rhs, &[("F(f)".into(), f.mor(a)), ("F(g)".into(), f.mor(b))]),
                ));
                break 'outer;
            }
        }
    }
    report.push(match bad {
        None => AxiomOutcome::pass("composition", pairs, Coverage::Exhaustive),
        Some(w) => AxiomOutcome::fail("composition", pairs, Coverage::Exhaustive, w),
    });
    report
}

use crate::check::Status;

impl fmt::Display for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "groupoid with {} objects and {} morphisms",
            self.num_objects(),
            self.num_morphisms()
        )
    }
}
