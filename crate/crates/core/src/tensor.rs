//! Bifunctors `C × C → C` stored as full object and morphism tables.

use crate::check::{AxiomOutcome, AxiomReport, Composite, Coverage, Witness};
use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, MorId, ObjId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bifunctor {
    n_obj: usize,
    n_mor: usize,
    obj: Vec<ObjId>,
    mor: Vec<MorId>,
}

impl Bifunctor {
    /// Tables in row-major order: `obj[x * n + y] = x ⊗ y`, likewise for morphisms.
    pub fn from_tables(g: &FinGroupoid, obj: Vec<ObjId>, mor: Vec<MorId>) -> Result<Self> {
        let (n_obj, n_mor) = (g.num_objects(), g.num_morphisms());
        if obj.len() != n_obj * n_obj || mor.len() != n_mor * n_mor {
            return Err(Error::DomainMismatch(format!(
                "bifunctor tables have {} object and {} morphism entries, expected {} and {}",
                obj.len(),
                mor.len(),
                n_obj * n_obj,
                n_mor * n_mor
            )));
        }
        if obj.iter().any(|x| x.index() >= n_obj) || mor.iter().any(|f| f.index() >= n_mor) {
            return Err(Error::MalformedTable("bifunctor table references an unknown id".into()));
        }
        Ok(Bifunctor {
            n_obj,
            n_mor,
            obj,
            mor,
        })
    }

    pub fn from_fns(
        g: &FinGroupoid,
        obj: impl Fn(ObjId, ObjId) -> ObjId,
        mor: impl Fn(MorId, MorId) -> MorId,
    ) -> Result<Self> {
        let o = g.objects().flat_map(|x| g.objects().map(move |y| (x, y))).map(|(x, y)| obj(x, y)).collect();
        let m = g
            .morphisms()
            .flat_map(|f| g.morphisms().map(move |h| (f, h)))
            .map(|(f, h)| mor(f, h))
            .collect();
        Self::from_tables(g, o, m)
    }

    #[inline]
    pub fn obj(&self, x: ObjId, y: ObjId) -> ObjId {
        self.obj[x.index() * self.n_obj + y.index()]
    }

    #[inline]
    pub fn mor(&self, f: MorId, g: MorId) -> MorId {
        self.mor[f.index() * self.n_mor + g.index()]
    }

    pub fn set_mor(&mut self, f: MorId, g: MorId, fg: MorId) {
        self.mor[f.index() * self.n_mor + g.index()] = fg;
    }
}

fn single(g: &FinGroupoid, m: MorId, label: &str) -> Composite {
    Composite {
        mor: m,
        name: g.mor_name(m).to_string(),
        legs: vec![crate::check::Leg {
            label: label.to_string(),
            mor: m,
            mor_name: g.mor_name(m).to_string(),
        }],
    }
}

/// Endpoints, identities and interchange `(g∘f)⊗(g'∘f') = (g⊗g')∘(f⊗f')`.
pub fn validate_bifunctor(g: &FinGroupoid, s: &Bifunctor) -> AxiomReport {
    let mut report = AxiomReport::new("bifunctor");
    let nm = g.num_morphisms() as u64;
    let mut bad = None;
    'ep: for f in g.morphisms() {
        for h in g.morphisms() {
            let fh = s.mor(f, h);
            if g.src(fh) != s.obj(g.src(f), g.src(h)) || g.dst(fh) != s.obj(g.dst(f), g.dst(h)) {
                bad = Some((f, h, fh));
                break 'ep;
            }
        }
    }
    report.push(match bad {
        None => AxiomOutcome::pass("endpoints", nm * nm, Coverage::Exhaustive),
        Some((f, h, fh)) => {
            let x = s.obj(g.src(f), g.src(h));
            AxiomOutcome::fail(
                "endpoints",
                nm * nm,
                Coverage::Exhaustive,
                Witness {
                    diagram: "f⊗g : src f ⊗ src g → dst f ⊗ dst g".into(),
                    index: vec![g.mor_name(f).into(), g.mor_name(h).into()],
                    lhs: single(g, fh, "f⊗g"),
                    rhs: single(g, g.id(x), "id"),
                },
            )
        }
    });
    if !report.passed() {
        return report;
    }

    let no = g.num_objects() as u64;
    let mut bad = None;
    'id: for x in g.objects() {
        for y in g.objects() {
            if s.mor(g.id(x), g.id(y)) != g.id(s.obj(x, y)) {
                bad = Some((x, y));
                break 'id;
            }
        }
    }
    report.push(match bad {
        None => AxiomOutcome::pass("identities", no * no, Coverage::Exhaustive),
        Some((x, y)) => AxiomOutcome::fail(
            "identities",
            no * no,
            Coverage::Exhaustive,
            Witness {
                diagram: "id⊗id = id".into(),
                index: vec![g.obj_name(x).into(), g.obj_name(y).into()],
                lhs: single(g, s.mor(g.id(x), g.id(y)), "id⊗id"),
                rhs: single(g, g.id(s.obj(x, y)), "id"),
            },
        ),
    });

    let pairs: Vec<(MorId, MorId)> = g
        .morphisms()
        .flat_map(|f| g.out_of(g.dst(f)).iter().map(move |&h| (f, h)))
        .collect();
    let mut count = 0u64;
    let mut bad = None;
    'ic: for &(f, h) in &pairs {
        for &(f2, h2) in &pairs {
            count += 1;
            let lhs = s.mor(g.compose(h, f).unwrap(), g.compose(h2, f2).unwrap());
            let rhs = g.compose(s.mor(h, h2), s.mor(f, f2)).unwrap();
            if lhs != rhs {
                bad = Some((f, h, f2, h2, lhs, rhs));
                break 'ic;
            }
        }
    }
    report.push(match bad {
        None => AxiomOutcome::pass("composition", count, Coverage::Exhaustive),
        Some((f, h, f2, h2, lhs, rhs)) => AxiomOutcome::fail(
            "composition",
            count,
            Coverage::Exhaustive,
            Witness {
                diagram: "(g∘f)⊗(g'∘f') = (g⊗g')∘(f⊗f')".into(),
                index: [h, f, h2, f2].iter().map(|&m| g.mor_name(m).to_string()).collect(),
                lhs: single(g, lhs, "(g∘f)⊗(g'∘f')"),
                rhs: single(g, rhs, "(g⊗g')∘(f⊗f')"),
            },
        ),
    });
    report
}
