//! The JSON structure document: one carrier groupoid plus named structure
//! blocks referring to it by object and morphism names.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ac::ACStructure;
use crate::error::{Error, Result};
use crate::family::{tuple_index, NatFamily};
use crate::groupoid::{FinGroupoid, GFunctor, GroupoidBuilder, MorId, ObjId};
use crate::homs::{MonTransformation, StructuredFunctor};
use crate::monoidal::{MonStructure, SumView};
use crate::tensor::Bifunctor;
use crate::tworing::{AddPresentation, TwoRingData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub groupoid: GroupoidDoc,
    #[serde(default)]
    pub structures: Vec<StructureDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    /// `[g, f, g∘f]`
    pub compose: Vec<[String; 3]>,
    pub identities: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureDoc {
    Sm(SumDoc),
    Ac(SumDoc),
    Mul(SumDoc),
    Functor(FunctorDoc),
    Transformation(TransformationDoc),
    Tworing(TwoRingDoc),
}

impl StructureDoc {
    pub fn id(&self) -> &str {
        match self {
            StructureDoc::Sm(s) | StructureDoc::Ac(s) | StructureDoc::Mul(s) => &s.id,
            StructureDoc::Functor(f) => &f.id,
            StructureDoc::Transformation(t) => &t.id,
            StructureDoc::Tworing(r) => &r.id,
        }
    }
}

/// `"identity"` or explicit rows `[x₁, …, xₖ, component]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyDoc {
    Identity(String),
    Rows(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumDoc {
    pub id: String,
    pub unit: String,
    pub sum: TableDoc,
    pub families: BTreeMap<String, FamilyDoc>,
}

/// Rows `[x, y, x⊕y]` and `[f, g, f⊕g]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub objects: Vec<[String; 3]>,
    pub morphisms: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub objects: Vec<[String; 2]>,
    pub morphisms: Vec<[String; 2]>,
    pub fsum: FamilyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fzero: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationDoc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub components: FamilyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoRingDoc {
    pub id: String,
    pub add: String,
    pub mul: String,
    pub d: FamilyDoc,
    pub e: FamilyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<FamilyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<FamilyDoc>,
}

/// Document parsing failures carry the line and column reported by the parser.
pub fn parse(text: &str) -> Result<Document> {
    serde_json::from_str(text)
        .map_err(|e| Error::MalformedTable(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Sorted keys; rows of scalars on a single line.
pub fn to_canonical_string(doc: &Document) -> String {
    let value = serde_json::to_value(doc).expect("document serializes");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(m) => m.values().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    if is_flat(v) {
        out.push_str(&serde_json::to_string(v).expect("json value"));
        return;
    }
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                write_value(x, depth + 1, out);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(m) => {
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("json key"));
                out.push_str(": ");
                write_value(x, depth + 1, out);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        _ => unreachable!("scalars are flat"),
    }
}

/// A loaded structure block.
#[derive(Clone, Debug)]
pub enum Item {
    Sm(MonStructure),
    Ac(ACStructure),
    Mul(MonStructure),
    Functor {
        source: String,
        target: String,
        f: StructuredFunctor,
    },
    Transformation {
        source: String,
        target: String,
        t: MonTransformation,
    },
    TwoRing {
        add: String,
        mul: String,
        r: TwoRingData,
    },
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Sm(_) => "sm",
            Item::Ac(_) => "ac",
            Item::Mul(_) => "mul",
            Item::Functor { .. } => "functor",
            Item::Transformation { .. } => "transformation",
            Item::TwoRing { .. } => "tworing",
        }
    }
}

/// The carrier and its structures, in document order.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub carrier: Arc<FinGroupoid>,
    pub items: Vec<(String, Item)>,
}

impl Workspace {
    pub fn new(carrier: Arc<FinGroupoid>) -> Self {
        Workspace {
            carrier,
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, item: Item) {
        self.items.push((id.into(), item));
    }

    pub fn get(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|(i, _)| i == id).map(|(_, it)| it)
    }

    /// The named item, or the first one accepted by `pick`.
    pub fn find<'a>(&'a self, id: Option<&str>, pick: impl Fn(&Item) -> bool) -> Option<(&'a str, &'a Item)> {
        self.items
            .iter()
            .find(|(i, it)| id.map_or(pick(it), |want| i == want))
            .map(|(i, it)| (i.as_str(), it))
    }

    pub fn view(&self, id: &str) -> Result<SumView<'_>> {
        match self.get(id) {
            Some(Item::Sm(s)) | Some(Item::Mul(s)) => Ok(s.view()),
            Some(Item::Ac(a)) => Ok(a.view()),
            _ => Err(unknown("sum structure", id)),
        }
    }

    pub fn functor(&self, id: &str) -> Result<&StructuredFunctor> {
        match self.get(id) {
            Some(Item::Functor { f, .. }) => Ok(f),
            _ => Err(unknown("functor", id)),
        }
    }
}

fn unknown(what: &str, name: &str) -> Error {
    Error::MalformedTable(format!("unknown {what} '{name}'"))
}

struct Names<'a> {
    g: &'a FinGroupoid,
    objs: HashMap<&'a str, ObjId>,
    mors: HashMap<&'a str, MorId>,
}

impl<'a> Names<'a> {
    fn new(g: &'a FinGroupoid) -> Self {
        Names {
            g,
            objs: g.objects().map(|x| (g.obj_name(x), x)).collect(),
            mors: g.morphisms().map(|f| (g.mor_name(f), f)).collect(),
        }
    }

    fn obj(&self, s: &str) -> Result<ObjId> {
        self.objs.get(s).copied().ok_or_else(|| unknown("object", s))
    }

    fn mor(&self, s: &str) -> Result<MorId> {
        self.mors.get(s).copied().ok_or_else(|| unknown("morphism", s))
    }

    /// Fill a dense table from keyed rows, rejecting duplicates and gaps.
    fn dense<T: Copy>(&self, what: &str, size: usize, rows: impl Iterator<Item = Result<(usize, T)>>) -> Result<Vec<T>> {
        let mut out: Vec<Option<T>> = vec![None; size];
        for row in rows {
            let (i, v) = row?;
            if out[i].replace(v).is_some() {
                return Err(Error::MalformedTable(format!("{what}: duplicate row")));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MalformedTable(format!("{what}: row {i} missing"))))
            .collect()
    }

    fn table(&self, id: &str, t: &TableDoc) -> Result<Bifunctor> {
        let (no, nm) = (self.g.num_objects(), self.g.num_morphisms());
        let obj = self.dense(
            &format!("{id}.sum.objects"),
            no * no,
            t.objects.iter().map(|[x, y, z]| Ok((self.obj(x)?.index() * no + self.obj(y)?.index(), self.obj(z)?))),
        )?;
        let mor = self.dense(
            &format!("{id}.sum.morphisms"),
            nm * nm,
            t.morphisms.iter().map(|[f, h, fh]| Ok((self.mor(f)?.index() * nm + self.mor(h)?.index(), self.mor(fh)?))),
        )?;
        Bifunctor::from_tables(self.g, obj, mor)
    }

    /// Components of an `arity`-ary family; `identity` needs the source word.
    fn family(
        &self,
        what: &str,
        arity: usize,
        doc: &FamilyDoc,
        source: impl Fn(&[ObjId]) -> ObjId,
    ) -> Result<Vec<MorId>> {
        let n = self.g.num_objects();
        let size = n.pow(arity as u32);
        match doc {
            FamilyDoc::Identity(s) if s == "identity" => Ok((0..size)
                .map(|i| {
                    let xs = tuple_at(n, arity, i);
                    self.g.id(source(&xs))
                })
                .collect()),
            FamilyDoc::Identity(s) => Err(Error::MalformedTable(format!("{what}: expected rows or \"identity\", got \"{s}\""))),
            FamilyDoc::Rows(rows) => self.dense(
                what,
                size,
                rows.iter().map(|row| {
                    if row.len() != arity + 1 {
                        return Err(Error::ArityMismatch {
                            expected: arity + 1,
                            found: row.len(),
                        });
                    }
                    let xs = row[..arity].iter().map(|s| self.obj(s)).collect::<Result<Vec<_>>>()?;
                    Ok((tuple_index(n, &xs), self.mor(&row[arity])?))
                }),
            ),
        }
    }

    fn pairs_obj(&self, what: &str, rows: &[[String; 2]]) -> Result<Vec<ObjId>> {
        self.dense(what, self.g.num_objects(), rows.iter().map(|[x, y]| Ok((self.obj(x)?.index(), self.obj(y)?))))
    }

    fn pairs_mor(&self, what: &str, rows: &[[String; 2]]) -> Result<Vec<MorId>> {
        self.dense(what, self.g.num_morphisms(), rows.iter().map(|[f, h]| Ok((self.mor(f)?.index(), self.mor(h)?))))
    }
}

fn tuple_at(n: usize, arity: usize, mut i: usize) -> Vec<ObjId> {
    let mut xs = vec![ObjId(0); arity];
    for k in (0..arity).rev() {
        xs[k] = ObjId((i % n) as u32);
        i /= n;
    }
    xs
}

fn build_groupoid(d: &GroupoidDoc) -> Result<FinGroupoid> {
    let mut b = GroupoidBuilder::new();
    let mut objs = HashMap::new();
    for name in &d.objects {
        if objs.insert(name.as_str(), b.object(name.clone())).is_some() {
            return Err(Error::MalformedTable(format!("duplicate object '{name}'")));
        }
    }
    let obj = |s: &str| objs.get(s).copied().ok_or_else(|| unknown("object", s));
    let mut mors = HashMap::new();
    for m in &d.morphisms {
        let f = b.morphism(m.id.clone(), obj(&m.src)?, obj(&m.dst)?);
        if mors.insert(m.id.as_str(), f).is_some() {
            return Err(Error::MalformedTable(format!("duplicate morphism '{}'", m.id)));
        }
    }
    let mor = |s: &str| mors.get(s).copied().ok_or_else(|| unknown("morphism", s));
    for [g, f, gf] in &d.compose {
        b.compose(mor(g)?, mor(f)?, mor(gf)?);
    }
    for [x, f] in &d.identities {
        b.identity(obj(x)?, mor(f)?);
    }
    for [f, fi] in d.inverses.iter().flatten() {
        b.inverse(mor(f)?, mor(fi)?);
    }
    b.build()
}

fn sum_families<'a>(s: &'a SumDoc, allowed: &[&str], required: &[&str]) -> Result<&'a BTreeMap<String, FamilyDoc>> {
    if let Some(k) = s.families.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::MalformedTable(format!("{}: unexpected family '{k}'", s.id)));
    }
    if let Some(k) = required.iter().find(|k| !s.families.contains_key(**k)) {
        return Err(Error::MissingFamily(format!("{}.{k}", s.id)));
    }
    Ok(&s.families)
}

fn load_mon(names: &Names, g: &Arc<FinGroupoid>, s: &SumDoc, symmetric_ok: bool) -> Result<MonStructure> {
    let allowed: &[&str] = if symmetric_ok { &["a", "c", "l", "r"] } else { &["a", "l", "r"] };
    let fams = sum_families(s, allowed, &["a", "l", "r"])?;
    let sum = names.table(&s.id, &s.sum)?;
    let unit = names.obj(&s.unit)?;
    let o = |x, y| sum.obj(x, y);
    let a = names.family(&format!("{}.a", s.id), 3, &fams["a"], |xs| o(xs[0], o(xs[1], xs[2])))?;
    let c = fams
        .get("c")
        .map(|c| names.family(&format!("{}.c", s.id), 2, c, |xs| o(xs[0], xs[1])))
        .transpose()?;
    let l = names.family(&format!("{}.l", s.id), 1, &fams["l"], |xs| o(unit, xs[0]))?;
    let r = names.family(&format!("{}.r", s.id), 1, &fams["r"], |xs| o(xs[0], unit))?;
    MonStructure::new(g.clone(), sum, unit, a, c, l, r)
}

fn load_ac(names: &Names, g: &Arc<FinGroupoid>, s: &SumDoc) -> Result<ACStructure> {
    let fams = sum_families(s, &["b", "l", "r"], &["b", "l", "r"])?;
    let sum = names.table(&s.id, &s.sum)?;
    let unit = names.obj(&s.unit)?;
    let o = |x, y| sum.obj(x, y);
    let b = names.family(&format!("{}.b", s.id), 4, &fams["b"], |xs| o(o(xs[0], xs[1]), o(xs[2], xs[3])))?;
    let l = names.family(&format!("{}.l", s.id), 1, &fams["l"], |xs| o(unit, xs[0]))?;
    let r = names.family(&format!("{}.r", s.id), 1, &fams["r"], |xs| o(xs[0], unit))?;
    ACStructure::new(g.clone(), sum, unit, b, l, r)
}

fn load_functor(names: &Names, ws: &Workspace, d: &FunctorDoc) -> Result<StructuredFunctor> {
    let g = &ws.carrier;
    let (src, tgt) = (ws.view(&d.source)?, ws.view(&d.target)?);
    let obj = names.pairs_obj(&format!("{}.objects", d.id), &d.objects)?;
    let mor = names.pairs_mor(&format!("{}.morphisms", d.id), &d.morphisms)?;
    let base = GFunctor::new(g.clone(), g.clone(), obj, mor)?;
    let fsum = names.family(&format!("{}.fsum", d.id), 2, &d.fsum, |xs| tgt.o(base.obj(xs[0]), base.obj(xs[1])))?;
    let fzero = d.fzero.as_deref().map(|z| names.mor(z)).transpose()?;
    StructuredFunctor::new(base, fsum, fzero, &src, &tgt)
}

fn load_ring(names: &Names, ws: &Workspace, d: &TwoRingDoc) -> Result<TwoRingData> {
    let add = match ws.get(&d.add) {
        Some(Item::Sm(s)) => AddPresentation::Symmetric(s.clone()),
        Some(Item::Ac(a)) => AddPresentation::Ac(a.clone()),
        _ => return Err(unknown("additive structure", &d.add)),
    };
    let mul = match ws.get(&d.mul) {
        Some(Item::Mul(m)) => m.clone(),
        _ => return Err(unknown("multiplicative structure", &d.mul)),
    };
    let (s, p) = (add.view(), mul.view());
    let dd = names.family(&format!("{}.d", d.id), 3, &d.d, |xs| s.o(p.o(xs[0], xs[1]), p.o(xs[0], xs[2])))?;
    let ee = names.family(&format!("{}.e", d.id), 3, &d.e, |xs| s.o(p.o(xs[0], xs[2]), p.o(xs[1], xs[2])))?;
    let mm = d.m.as_ref().map(|m| names.family(&format!("{}.m", d.id), 1, m, |_| s.unit)).transpose()?;
    let nn = d.n.as_ref().map(|n| names.family(&format!("{}.n", d.id), 1, n, |_| s.unit)).transpose()?;
    TwoRingData::new(add, mul, dd, ee, mm, nn)
}

/// Build every structure, resolving references by id.
pub fn load(doc: &Document) -> Result<Workspace> {
    let g = Arc::new(build_groupoid(&doc.groupoid)?);
    let names = Names::new(&g);
    let mut ws = Workspace::new(g.clone());
    let mut seen = std::collections::HashSet::new();
    for s in &doc.structures {
        if !seen.insert(s.id()) {
            return Err(Error::MalformedTable(format!("duplicate structure id '{}'", s.id())));
        }
    }
    // Sums first, then functors, then everything that refers to functors or sums.
    let mut slots: Vec<Option<Item>> = vec![None; doc.structures.len()];
    for (i, s) in doc.structures.iter().enumerate() {
        let item = match s {
            StructureDoc::Sm(d) => Item::Sm(load_mon(&names, &g, d, true)?),
            StructureDoc::Mul(d) => Item::Mul(load_mon(&names, &g, d, false)?),
            StructureDoc::Ac(d) => Item::Ac(load_ac(&names, &g, d)?),
            _ => continue,
        };
        ws.push(s.id(), item.clone());
        slots[i] = Some(item);
    }
    for (i, s) in doc.structures.iter().enumerate() {
        if let StructureDoc::Functor(d) = s {
            let item = Item::Functor {
                source: d.source.clone(),
                target: d.target.clone(),
                f: load_functor(&names, &ws, d)?,
            };
            ws.push(s.id(), item.clone());
            slots[i] = Some(item);
        }
    }
    for (i, s) in doc.structures.iter().enumerate() {
        let item = match s {
            StructureDoc::Transformation(d) => {
                let (f1, f2) = (ws.functor(&d.source)?.clone(), ws.functor(&d.target)?.clone());
                let tau = names.family(&format!("{}.components", d.id), 1, &d.components, |xs| f1.base.obj(xs[0]))?;
                Item::Transformation {
                    source: d.source.clone(),
                    target: d.target.clone(),
                    t: MonTransformation::new(f1, f2, tau)?,
                }
            }
            StructureDoc::Tworing(d) => Item::TwoRing {
                add: d.add.clone(),
                mul: d.mul.clone(),
                r: load_ring(&names, &ws, d)?,
            },
            _ => continue,
        };
        slots[i] = Some(item);
    }
    ws.items = doc
        .structures
        .iter()
        .zip(slots)
        .map(|(s, it)| (s.id().to_string(), it.expect("every block loaded")))
        .collect();
    Ok(ws)
}

fn family_doc(g: &FinGroupoid, fam: &NatFamily) -> FamilyDoc {
    if fam.is_identity(g) {
        return FamilyDoc::Identity("identity".into());
    }
    FamilyDoc::Rows(
        (0..fam.len())
            .map(|i| {
                let mut row: Vec<String> = fam.tuple_at(i).iter().map(|&x| g.obj_name(x).to_string()).collect();
                row.push(g.mor_name(fam.components()[i]).to_string());
                row
            })
            .collect(),
    )
}

fn table_doc(g: &FinGroupoid, sum: &Bifunctor) -> TableDoc {
    let on = |x| g.obj_name(x).to_string();
    let mn = |f| g.mor_name(f).to_string();
    TableDoc {
        objects: g
            .objects()
            .flat_map(|x| g.objects().map(move |y| (x, y)))
            .map(|(x, y)| [on(x), on(y), on(sum.obj(x, y))])
            .collect(),
        morphisms: g
            .morphisms()
            .flat_map(|f| g.morphisms().map(move |h| (f, h)))
            .map(|(f, h)| [mn(f), mn(h), mn(sum.mor(f, h))])
            .collect(),
    }
}

fn sum_doc(id: &str, g: &FinGroupoid, sum: &Bifunctor, unit: ObjId, fams: &[(&str, &NatFamily)]) -> SumDoc {
    SumDoc {
        id: id.into(),
        unit: g.obj_name(unit).into(),
        sum: table_doc(g, sum),
        families: fams.iter().map(|(k, f)| (k.to_string(), family_doc(g, f))).collect(),
    }
}

fn mon_doc(id: &str, m: &MonStructure) -> SumDoc {
    let mut fams = vec![("a", &m.a), ("l", &m.l), ("r", &m.r)];
    if let Some(c) = &m.c {
        fams.push(("c", c));
    }
    sum_doc(id, &m.carrier, &m.sum, m.unit, &fams)
}

fn groupoid_doc(g: &FinGroupoid) -> GroupoidDoc {
    let mn = |f| g.mor_name(f).to_string();
    let mut compose = Vec::new();
    for f in g.morphisms() {
        for &h in g.out_of(g.dst(f)) {
            compose.push([mn(h), mn(f), mn(g.compose(h, f).expect("composable"))]);
        }
    }
    GroupoidDoc {
        objects: g.objects().map(|x| g.obj_name(x).to_string()).collect(),
        morphisms: g
            .morphisms()
            .map(|f| MorphismDoc {
                id: mn(f),
                src: g.obj_name(g.src(f)).into(),
                dst: g.obj_name(g.dst(f)).into(),
            })
            .collect(),
        compose,
        identities: g.objects().map(|x| [g.obj_name(x).to_string(), mn(g.id(x))]).collect(),
        inverses: g
            .inverses_declared()
            .then(|| g.morphisms().map(|f| [mn(f), mn(g.inverse(f).expect("groupoid"))]).collect()),
    }
}

/// Serialize a workspace; items keep their order and ids.
pub fn to_document(ws: &Workspace) -> Document {
    let g = &*ws.carrier;
    let structures = ws
        .items
        .iter()
        .map(|(id, it)| match it {
            Item::Sm(m) => StructureDoc::Sm(mon_doc(id, m)),
            Item::Mul(m) => StructureDoc::Mul(mon_doc(id, m)),
            Item::Ac(a) => StructureDoc::Ac(sum_doc(id, g, &a.sum, a.unit, &[("b", &a.b), ("l", &a.l), ("r", &a.r)])),
            Item::Functor { source, target, f } => StructureDoc::Functor(FunctorDoc {
                id: id.clone(),
                source: source.clone(),
                target: target.clone(),
                objects: g.objects().map(|x| [g.obj_name(x).into(), g.obj_name(f.base.obj(x)).into()]).collect(),
                morphisms: g.morphisms().map(|h| [g.mor_name(h).into(), g.mor_name(f.base.mor(h)).into()]).collect(),
                fsum: family_doc(g, &f.fsum),
                fzero: f.fzero.map(|z| g.mor_name(z).into()),
            }),
            Item::Transformation { source, target, t } => StructureDoc::Transformation(TransformationDoc {
                id: id.clone(),
                source: source.clone(),
                target: target.clone(),
                components: family_doc(g, &t.tau),
            }),
            Item::TwoRing { add, mul, r } => StructureDoc::Tworing(TwoRingDoc {
                id: id.clone(),
                add: add.clone(),
                mul: mul.clone(),
                d: family_doc(g, &r.d),
                e: family_doc(g, &r.e),
                m: r.m.as_ref().map(|m| family_doc(g, m)),
                n: r.n.as_ref().map(|n| family_doc(g, n)),
            }),
        })
        .collect();
    Document {
        groupoid: groupoid_doc(g),
        structures,
    }
}
