//! Axiom reports, witnesses and the instance runner shared by every suite.
//!
//! An axiom is checked by evaluating, for each tuple of objects, two composite
//! paths through the carrier and comparing the resulting morphism ids. The
//! runner enumerates tuples in canonical (lexicographic) order, either
//! exhaustively or on a seeded sample when the instance space exceeds the
//! configured budget. On failure the offending instance is re-evaluated with
//! leg tracing switched on so the witness carries both full paths.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, MorId, ObjId};

/// Knobs shared by all validators.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Largest instance space enumerated exhaustively.
    pub exhaustive_budget: u64,
    /// Sample size used above the budget.
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    /// Skip instances whose every leg comes from a pointwise-identity family.
    pub strict_shortcut: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            exhaustive_budget: 20_000_000,
            samples: 200_000,
            seed: 0x5EED_2026,
            threads: 1,
            strict_shortcut: true,
        }
    }
}

impl CheckConfig {
    /// Evaluate every instance, whatever the strictness profile says.
    pub fn thorough() -> Self {
        CheckConfig {
            strict_shortcut: false,
            ..Self::default()
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    MissingData,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::MissingData => "missing-data",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64 },
    /// Every leg is an identity, so the instance holds without evaluation.
    Strict,
    Skipped,
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coverage::Exhaustive => f.write_str("exhaustive"),
            Coverage::Sampled { seed } => write!(f, "sampled(seed={seed:#x})"),
            Coverage::Strict => f.write_str("strict"),
            Coverage::Skipped => f.write_str("skipped"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub label: String,
    pub mor: MorId,
    pub mor_name: String,
}

/// The result of following a path; `legs` is only populated when traced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite {
    pub mor: MorId,
    pub name: String,
    pub legs: Vec<Leg>,
}

/// A concrete failing instance: the index tuple and the two unequal composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub diagram: String,
    pub index: Vec<String>,
    pub lhs: Composite,
    pub rhs: Composite,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): {} != {}",
            self.diagram,
            self.index.join(","),
            self.lhs.name,
            self.rhs.name
        )
    }
}

impl Witness {
    /// Both paths leg by leg, one leg per line.
    pub fn render_chains(&self) -> String {
        let mut out = String::new();
        for (side, c) in [("lhs", &self.lhs), ("rhs", &self.rhs)] {
            out.push_str(&format!("    {side} = {}\n", c.name));
            for leg in &c.legs {
                out.push_str(&format!("      then {} = {}\n", leg.label, leg.mor_name));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct AxiomOutcome {
    pub axiom: String,
    pub status: Status,
    pub instances: u64,
    pub coverage: Coverage,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl AxiomOutcome {
    pub fn pass(axiom: impl Into<String>, instances: u64, coverage: Coverage) -> Self {
        AxiomOutcome {
            axiom: axiom.into(),
            status: Status::Pass,
            instances,
            coverage,
            witness: None,
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn fail(axiom: impl Into<String>, instances: u64, coverage: Coverage, w: Witness) -> Self {
        AxiomOutcome {
            axiom: axiom.into(),
            status: Status::Fail,
            instances,
            coverage,
            witness: Some(w),
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn skipped(axiom: impl Into<String>, status: Status, note: impl Into<String>) -> Self {
        AxiomOutcome {
            axiom: axiom.into(),
            status,
            instances: 0,
            coverage: Coverage::Skipped,
            witness: None,
            note: Some(note.into()),
            elapsed: Duration::ZERO,
        }
    }

    pub fn strict(axiom: impl Into<String>, instances: u64) -> Self {
        Self::pass(axiom, instances, Coverage::Strict)
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Combine several runs of one axiom; the first failing part wins.
    pub fn merge(axiom: impl Into<String>, parts: Vec<AxiomOutcome>) -> Self {
        let axiom = axiom.into();
        let elapsed = parts.iter().map(|p| p.elapsed).sum();
        let instances = parts.iter().map(|p| p.instances).sum();
        if let Some(failed) = parts.iter().find(|p| p.status == Status::Fail) {
            let mut out = failed.clone();
            out.axiom = axiom;
            out.instances = instances;
            out.elapsed = elapsed;
            return out;
        }
        let coverage = parts
            .iter()
            .map(|p| p.coverage.clone())
            .find(|c| matches!(c, Coverage::Sampled { .. }))
            .or_else(|| {
                parts
                    .iter()
                    .map(|p| p.coverage.clone())
                    .find(|c| *c == Coverage::Exhaustive)
            })
            .unwrap_or(Coverage::Strict);
        let mut out = AxiomOutcome::pass(axiom, instances, coverage);
        out.elapsed = elapsed;
        out
    }
}

impl fmt::Display for AxiomOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<22} {:<14} instances={} coverage={}",
            self.axiom, self.status, self.instances, self.coverage
        )?;
        if let Some(note) = &self.note {
            write!(f, " note=\"{note}\"")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub suite: String,
    pub outcomes: Vec<AxiomOutcome>,
}

/// Reports produced by the groupoid/functor validators share the axiom format.
pub type ValidationReport = AxiomReport;

impl AxiomReport {
    pub fn new(suite: impl Into<String>) -> Self {
        AxiomReport {
            suite: suite.into(),
            outcomes: Vec::new(),
        }
    }

    pub fn push(&mut self, o: AxiomOutcome) {
        self.outcomes.push(o);
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }

    pub fn status(&self, axiom: &str) -> Option<Status> {
        self.get(axiom).map(|o| o.status)
    }

    pub fn first_failure(&self) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.status == Status::Fail)
    }

    /// Turn a failing report into a `PreconditionFailed` error.
    pub fn require(&self, what: &str) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(o) => Err(Error::precondition(
                format!("{what}: {}", o.axiom),
                o.witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_else(|| "failed".into()),
            )),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Follows arrows in diagram order, composing as it goes.
pub struct Chain<'g> {
    g: &'g FinGroupoid,
    acc: Option<MorId>,
    legs: Option<Vec<Leg>>,
    position: usize,
}

impl<'g> Chain<'g> {
    pub fn new(g: &'g FinGroupoid, trace: bool) -> Self {
        Chain {
            g,
            acc: None,
            legs: trace.then(Vec::new),
            position: 0,
        }
    }

    pub fn then(mut self, m: MorId, label: impl FnOnce() -> String) -> Result<Self> {
        let next = match self.acc {
            None => m,
            Some(acc) => {
                if self.g.dst(acc) != self.g.src(m) {
                    return Err(Error::EndpointMismatch {
                        position: self.position,
                        detail: format!(
                            "{} ends at {} but {} ({}) starts at {}",
                            self.g.mor_name(acc),
                            self.g.obj_name(self.g.dst(acc)),
                            label(),
                            self.g.mor_name(m),
                            self.g.obj_name(self.g.src(m))
                        ),
                    });
                }
                self.g.compose(m, acc).ok_or_else(|| {
                    Error::MalformedTable(format!(
                        "composite of {} after {} undefined",
                        self.g.mor_name(m),
                        self.g.mor_name(acc)
                    ))
                })?
            }
        };
        if let Some(legs) = self.legs.as_mut() {
            legs.push(Leg {
                label: label(),
                mor: m,
                mor_name: self.g.mor_name(m).to_string(),
            });
        }
        self.acc = Some(next);
        self.position += 1;
        Ok(self)
    }

    pub fn finish(self) -> Result<Composite> {
        let mor = self.acc.ok_or(Error::EmptyChain)?;
        Ok(match self.legs {
            Some(legs) => Composite {
                mor,
                name: self.g.mor_name(mor).to_string(),
                legs,
            },
            None => Composite {
                mor,
                name: String::new(),
                legs: Vec::new(),
            },
        })
    }
}

/// A diagram that failed to commute inside one instance.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub diagram: String,
    pub lhs: Composite,
    pub rhs: Composite,
}

pub type InstanceResult = Result<Option<Mismatch>>;

/// Compare the two sides of a diagram, returning early on mismatch.
macro_rules! commute {
    ($diagram:expr, $lhs:expr, $rhs:expr) => {{
        let lhs = $lhs;
        let rhs = $rhs;
        if lhs.mor != rhs.mor {
            return Ok(Some($crate::check::Mismatch {
                diagram: ($diagram).to_string(),
                lhs,
                rhs,
            }));
        }
    }};
}
pub(crate) use commute;

/// Number of `arity`-tuples over `n` objects, if it fits in a u64.
pub fn instance_space(n: usize, arity: usize) -> Option<u64> {
    (n as u64).checked_pow(arity as u32)
}

enum Plan {
    Exhaustive(u64),
    /// Flat buffer of sampled tuples.
    Sampled(Vec<ObjId>),
}

fn decode(mut idx: u64, n: usize, out: &mut [ObjId]) {
    for slot in out.iter_mut().rev() {
        *slot = ObjId((idx % n as u64) as u32);
        idx /= n as u64;
    }
}

/// Evaluate `f` over the instance space of `arity`-tuples of objects of `domain`.
///
/// `f(tuple, trace)` returns `Some(mismatch)` when the instance fails. The
/// reported witness is the first failure in canonical order (or in sample
/// order), independent of `cfg.threads`.
pub fn run_instances<F>(
    axiom: &str,
    domain: &FinGroupoid,
    arity: usize,
    cfg: &CheckConfig,
    f: F,
) -> Result<AxiomOutcome>
where
    F: Fn(&[ObjId], bool) -> InstanceResult + Sync,
{
    let start = Instant::now();
    let n = domain.num_objects();
    if n == 0 {
        return Ok(AxiomOutcome::pass(axiom, 0, Coverage::Exhaustive));
    }
    let (plan, coverage) = match instance_space(n, arity) {
        Some(total) if total <= cfg.exhaustive_budget => (Plan::Exhaustive(total), Coverage::Exhaustive),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let flat = (0..cfg.samples as usize * arity)
                .map(|_| ObjId(rng.gen_range(0..n as u32)))
                .collect();
            (Plan::Sampled(flat), Coverage::Sampled { seed: cfg.seed })
        }
    };
    let total = match &plan {
        Plan::Exhaustive(t) => *t,
        Plan::Sampled(_) => cfg.samples,
    };
    let fill = |pos: u64, buf: &mut [ObjId]| match &plan {
        Plan::Exhaustive(_) => decode(pos, n, buf),
        Plan::Sampled(flat) => {
            let at = pos as usize * arity;
            buf.copy_from_slice(&flat[at..at + arity]);
        }
    };

    let best = AtomicU64::new(u64::MAX);
    let errors: Mutex<Option<(u64, Error)>> = Mutex::new(None);
    let scan = |from: u64, to: u64| {
        let mut buf = vec![ObjId(0); arity];
        for pos in from..to {
            if pos >= best.load(Ordering::Relaxed) {
                break;
            }
            fill(pos, &mut buf);
            match f(&buf, false) {
                Ok(None) => {}
                Ok(Some(_)) => {
                    best.fetch_min(pos, Ordering::Relaxed);
                    break;
                }
                Err(e) => {
                    best.fetch_min(pos, Ordering::Relaxed);
                    let mut slot = errors.lock().unwrap();
                    if slot.as_ref().map_or(true, |(p, _)| pos < *p) {
                        *slot = Some((pos, e));
                    }
                    break;
                }
            }
        }
    };
    let threads = cfg.threads.max(1) as u64;
    if threads == 1 || total < 1024 {
        scan(0, total);
    } else {
        let chunk = total.div_ceil(threads);
        std::thread::scope(|s| {
            for t in 0..threads {
                let from = t * chunk;
                let to = ((t + 1) * chunk).min(total);
                if from < to {
                    let scan = &scan;
                    s.spawn(move || scan(from, to));
                }
            }
        });
    }

    let first = best.load(Ordering::Relaxed);
    let mut outcome = if first == u64::MAX {
        AxiomOutcome::pass(axiom, total, coverage)
    } else {
        if let Some((pos, e)) = errors.into_inner().unwrap() {
            if pos == first {
                return Err(e);
            }
        }
        let mut buf = vec![ObjId(0); arity];
        fill(first, &mut buf);
        let m = f(&buf, true)?.ok_or_else(|| {
            Error::MalformedTable(format!("{axiom}: instance failed only once"))
        })?;
        let w = Witness {
            diagram: m.diagram,
            index: buf.iter().map(|&x| domain.obj_name(x).to_string()).collect(),
            lhs: m.lhs,
            rhs: m.rhs,
        };
        AxiomOutcome::fail(axiom, total, coverage, w)
    };
    outcome.elapsed = start.elapsed();
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::GroupoidBuilder;

    fn points(n: usize) -> FinGroupoid {
        let mut b = GroupoidBuilder::new();
        for i in 0..n {
            let x = b.object(i.to_string());
            let m = b.morphism(format!("id{i}"), x, x);
            b.identity(x, m);
            b.compose(m, m, m);
        }
        b.build().unwrap()
    }

    fn fail_at(target: [u32; 3]) -> impl Fn(&[ObjId], bool) -> InstanceResult + Sync {
        move |xs: &[ObjId], _| {
            if xs.iter().zip(target).all(|(x, t)| x.0 >= t) {
                Ok(Some(Mismatch {
                    diagram: "d".into(),
                    lhs: Composite {
                        mor: MorId(0),
                        name: "a".into(),
                        legs: vec![],
                    },
                    rhs: Composite {
                        mor: MorId(1),
                        name: "b".into(),
                        legs: vec![],
                    },
                }))
            } else {
                Ok(None)
            }
        }
    }

    #[test]
    fn first_witness_is_canonical_minimum() {
        let g = points(12);
        let cfg = CheckConfig::default();
        let o = run_instances("X", &g, 3, &cfg, fail_at([2, 5, 7])).unwrap();
        assert_eq!(o.status, Status::Fail);
        assert_eq!(o.witness.unwrap().index, vec!["2", "5", "7"]);
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = points(12);
        let seq = run_instances("X", &g, 3, &CheckConfig::default(), fail_at([3, 1, 4])).unwrap();
        let par = run_instances(
            "X",
            &g,
            3,
            &CheckConfig::default().with_threads(4),
            fail_at([3, 1, 4]),
        )
        .unwrap();
        assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn sampling_above_budget() {
        let g = points(10);
        let cfg = CheckConfig {
            exhaustive_budget: 100,
            samples: 500,
            ..CheckConfig::default()
        };
        let o = run_instances("X", &g, 3, &cfg, |_, _| Ok(None)).unwrap();
        assert_eq!(o.instances, 500);
        assert!(matches!(o.coverage, Coverage::Sampled { .. }));
    }

    #[test]
    fn merge_prefers_failure() {
        let a = AxiomOutcome::pass("A", 3, Coverage::Exhaustive);
        let w = Witness {
            diagram: "d".into(),
            index: vec![],
            lhs: Composite { mor: MorId(0), name: "x".into(), legs: vec![] },
            rhs: Composite { mor: MorId(1), name: "y".into(), legs: vec![] },
        };
        let b = AxiomOutcome::fail("B", 4, Coverage::Exhaustive, w);
        let m = AxiomOutcome::merge("M", vec![a, b]);
        assert_eq!(m.status, Status::Fail);
        assert_eq!(m.instances, 7);
        assert_eq!(m.axiom, "M");
    }
}
