use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;

use super::document::{load, parse, to_canonical_string, to_document, Item, Workspace};
use super::{CheckArgs, CliError, ConvertArgs, FixtureArgs, Presentation, Suite, ZeroIsoArgs, ZeroIsoMode, EXIT_FAIL, EXIT_PASS};
use crate::ac::{to_ac, to_sm, validate_ac, ACStructure};
use crate::check::{AxiomReport, CheckConfig};
use crate::error::Error;
use crate::fixtures::{
    dual_numbers_2group, dual_numbers_2ring, dual_numbers_mod, integers_mod, mult_endofunctor, strict_2ring,
    super_line_2group, DualNumbersParams,
};
use crate::homs::{
    canonical_zero_iso, enumerate_zero_isos, validate_ac_functor, validate_sm_functor, validate_transformation,
    StructuredFunctor, ZeroMode,
};
use crate::monoidal::{validate_2group, validate_sm, MonStructure};
use crate::tworing::{
    ac_ring_to_quang, quang_to_ac_ring, validate_ac_ring, validate_jp, validate_quang, AddPresentation, TwoRingData,
};

type CmdResult = Result<i32, CliError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn load_file(path: &Path) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    Ok(load(&parse(&text)?)?)
}

fn emit(ws: &Workspace, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = to_canonical_string(&to_document(ws));
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err(p)),
        None => out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn missing(what: &str, id: Option<&str>) -> CliError {
    CliError::Usage(match id {
        Some(id) => format!("no {what} with id '{id}'"),
        None => format!("document has no {what}"),
    })
}

fn sum_id<'a>(ws: &'a Workspace, id: Option<&str>) -> Result<&'a str, CliError> {
    ws.find(id, |it| matches!(it, Item::Sm(_) | Item::Ac(_)))
        .filter(|(_, it)| matches!(it, Item::Sm(_) | Item::Ac(_)))
        .map(|(i, _)| i)
        .ok_or_else(|| missing("sum structure", id))
}

/// The sum structure in symmetric form, converting AC input.
fn as_sm(ws: &Workspace, id: &str, cfg: &CheckConfig) -> Result<MonStructure, CliError> {
    match ws.get(id) {
        Some(Item::Sm(m)) => Ok(m.clone()),
        Some(Item::Ac(a)) => Ok(to_sm(a, cfg)?),
        _ => Err(missing("sum structure", Some(id))),
    }
}

fn as_ac(ws: &Workspace, id: &str, cfg: &CheckConfig) -> Result<ACStructure, CliError> {
    match ws.get(id) {
        Some(Item::Ac(a)) => Ok(a.clone()),
        Some(Item::Sm(m)) => Ok(to_ac(m, cfg)?),
        _ => Err(missing("sum structure", Some(id))),
    }
}

fn functor<'a>(ws: &'a Workspace, id: Option<&str>) -> Result<(&'a str, &'a str, &'a str, &'a StructuredFunctor), CliError> {
    match ws.find(id, |it| matches!(it, Item::Functor { .. })) {
        Some((fid, Item::Functor { source, target, f })) => Ok((fid, source, target, f)),
        _ => Err(missing("functor", id)),
    }
}

fn ring<'a>(ws: &'a Workspace, id: Option<&str>) -> Result<(&'a str, &'a TwoRingData), CliError> {
    match ws.find(id, |it| matches!(it, Item::TwoRing { .. })) {
        Some((rid, Item::TwoRing { r, .. })) => Ok((rid, r)),
        _ => Err(missing("2-ring", id)),
    }
}

fn config(parallel: usize, thorough: bool) -> CheckConfig {
    let cfg = if thorough { CheckConfig::thorough() } else { CheckConfig::default() };
    cfg.with_threads(parallel)
}

fn run_suite(a: &CheckArgs, ws: &Workspace, cfg: &CheckConfig) -> Result<(String, AxiomReport, Option<AxiomReport>), CliError> {
    let sid = a.structure.as_deref();
    Ok(match a.suite {
        Suite::Sm | Suite::TwoGroup => {
            let id = sum_id(ws, sid)?;
            let m = as_sm(ws, id, cfg)?;
            let pre = a.preflight.then(|| m.preflight(cfg)).transpose()?;
            let rep = if a.suite == Suite::Sm { validate_sm(&m, cfg)? } else { validate_2group(&m, cfg)? };
            (id.to_string(), rep, pre)
        }
        Suite::Ac => {
            let id = sum_id(ws, sid)?;
            let s = as_ac(ws, id, cfg)?;
            let pre = a.preflight.then(|| s.preflight(cfg)).transpose()?;
            (id.to_string(), validate_ac(&s, cfg)?, pre)
        }
        Suite::SmFunctor | Suite::AcFunctor => {
            let (fid, src, tgt, f) = functor(ws, a.functor.as_deref())?;
            let pre = if a.preflight {
                Some(f.naturality(&ws.view(src)?, &ws.view(tgt)?, cfg)?)
            } else {
                None
            };
            let rep = if a.suite == Suite::SmFunctor {
                validate_sm_functor(f, &as_sm(ws, src, cfg)?, &as_sm(ws, tgt, cfg)?, cfg)?
            } else {
                validate_ac_functor(f, &as_ac(ws, src, cfg)?, &as_ac(ws, tgt, cfg)?, cfg)?
            };
            (fid.to_string(), rep, pre)
        }
        Suite::Transformation => match ws.find(sid, |it| matches!(it, Item::Transformation { .. })) {
            Some((tid, Item::Transformation { source, t, .. })) => {
                let (_, src, tgt, _) = functor(ws, Some(source))?;
                let pre = a.preflight.then(|| t.naturality(cfg)).transpose()?;
                (tid.to_string(), validate_transformation(t, &ws.view(src)?, &ws.view(tgt)?, cfg)?, pre)
            }
            _ => return Err(missing("transformation", sid)),
        },
        Suite::Quang | Suite::Jp | Suite::Acring => {
            let (rid, r) = ring(ws, sid)?;
            let rep = match (a.suite, &r.add) {
                (Suite::Acring, AddPresentation::Ac(_)) => validate_ac_ring(r, cfg)?,
                (Suite::Acring, AddPresentation::Symmetric(_)) => validate_ac_ring(&quang_to_ac_ring(r, cfg)?, cfg)?,
                (s, add) => {
                    let q = match add {
                        AddPresentation::Symmetric(_) => r.clone(),
                        AddPresentation::Ac(_) => ac_ring_to_quang(r, cfg)?,
                    };
                    if s == Suite::Quang {
                        validate_quang(&q, cfg)?
                    } else {
                        validate_jp(&q, cfg)?
                    }
                }
            };
            (rid.to_string(), rep, None)
        }
    })
}

pub(super) fn check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let ws = load_file(&a.file)?;
    let cfg = config(a.parallel, a.thorough);
    let start = Instant::now();
    let (subject, report, pre) = run_suite(a, &ws, &cfg)?;
    let w = |e| io_err(Path::new("<stdout>"))(e);
    let suite = a.suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    writeln!(out, "suite {suite} on {subject}").map_err(w)?;
    let mut ok = report.passed();
    for rep in pre.iter().chain(std::iter::once(&report)) {
        ok &= rep.passed();
        for o in &rep.outcomes {
            writeln!(out, "{o}").map_err(w)?;
            if a.witness {
                if let Some(wt) = &o.witness {
                    write!(out, "{}", wt.render_chains()).map_err(w)?;
                }
            }
            let _ = writeln!(err, "time {} {:.3} ms", o.axiom, o.elapsed.as_secs_f64() * 1e3);
        }
    }
    let _ = writeln!(err, "time total {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn convert_ws(ws: &Workspace, to: Presentation, cfg: &CheckConfig) -> Result<Workspace, Error> {
    let mut next = ws.clone();
    for (_, item) in next.items.iter_mut() {
        let replaced = match (to, &*item) {
            (Presentation::Ac, Item::Sm(m)) => Item::Ac(to_ac(m, cfg)?),
            (Presentation::Sm, Item::Ac(a)) => Item::Sm(to_sm(a, cfg)?),
            (Presentation::Ac, Item::TwoRing { add, mul, r }) if matches!(r.add, AddPresentation::Symmetric(_)) => {
                Item::TwoRing {
                    add: add.clone(),
                    mul: mul.clone(),
                    r: quang_to_ac_ring(r, cfg)?,
                }
            }
            (Presentation::Sm, Item::TwoRing { add, mul, r }) if matches!(r.add, AddPresentation::Ac(_)) => Item::TwoRing {
                add: add.clone(),
                mul: mul.clone(),
                r: ac_ring_to_quang(r, cfg)?,
            },
            _ => continue,
        };
        *item = replaced;
    }
    Ok(next)
}

pub(super) fn convert(a: &ConvertArgs, out: &mut dyn Write) -> CmdResult {
    let ws = load_file(&a.file)?;
    let next = convert_ws(&ws, a.to, &CheckConfig::default())?;
    emit(&next, a.out.as_deref(), out)?;
    Ok(EXIT_PASS)
}

pub(super) fn zero_iso(a: &ZeroIsoArgs, out: &mut dyn Write) -> CmdResult {
    let ws = load_file(&a.file)?;
    let cfg = CheckConfig::default();
    let (fid, src, tgt, f) = functor(&ws, a.functor.as_deref())?;
    let g = &*ws.carrier;
    let w = |e| io_err(Path::new("<stdout>"))(e);
    match a.mode {
        ZeroIsoMode::Canonical => {
            let z = canonical_zero_iso(f, &as_sm(&ws, src, &cfg)?, &as_sm(&ws, tgt, &cfg)?, &cfg)?;
            writeln!(out, "{fid}: canonical zero isomorphism {}", g.mor_name(z)).map_err(w)?;
        }
        ZeroIsoMode::Enumerate => {
            let mode = match ws.get(src) {
                Some(Item::Ac(_)) => ZeroMode::AF2,
                _ => ZeroMode::SF3,
            };
            let (s, t) = (ws.view(src)?, ws.view(tgt)?);
            let scanned = t.g.hom(t.unit, f.base.obj(s.unit)).len();
            let sols = enumerate_zero_isos(f, &s, &t, mode)?;
            writeln!(out, "{fid}: {} solutions ({scanned} candidates scanned)", sols.len()).map_err(w)?;
            for z in sols {
                writeln!(out, "  {}", g.mor_name(z)).map_err(w)?;
            }
        }
    }
    Ok(EXIT_PASS)
}

fn parse_ring(spec: &str) -> Result<crate::fixtures::FiniteRing, CliError> {
    let bad = || CliError::Usage(format!("unknown ring '{spec}' (expected zN or dualM)"));
    if let Some(n) = spec.strip_prefix("dual") {
        Ok(dual_numbers_mod(n.parse().map_err(|_| bad())?)?)
    } else if let Some(n) = spec.strip_prefix('z') {
        Ok(integers_mod(n.parse().map_err(|_| bad())?)?)
    } else {
        Err(bad())
    }
}

fn ring_workspace(r: TwoRingData) -> Workspace {
    let add = match &r.add {
        AddPresentation::Symmetric(m) => Item::Sm(m.clone()),
        AddPresentation::Ac(a) => Item::Ac(a.clone()),
    };
    let carrier = r.mul.carrier.clone();
    let mut ws = Workspace::new(carrier);
    ws.push("add", add);
    ws.push("mul", Item::Mul(r.mul.clone()));
    ws.push(
        "R",
        Item::TwoRing {
            add: "add".into(),
            mul: "mul".into(),
            r,
        },
    );
    ws
}

pub(super) fn fixture(a: &FixtureArgs, out: &mut dyn Write) -> CmdResult {
    let ws = match a.name.as_str() {
        "dual-numbers" => {
            let (ma, mb) = match &a.mult {
                None => (1, 2),
                Some(s) => {
                    let parts: Vec<_> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
                    match parts.as_slice() {
                        [Ok(x), Ok(y)] => (*x, *y),
                        _ => return Err(CliError::Usage(format!("--mult expects a,b, got '{s}'"))),
                    }
                }
            };
            let p = DualNumbersParams::new(a.modulus.unwrap_or(5), ma, mb)?;
            let g = dual_numbers_2group(p.m)?;
            let f = mult_endofunctor(&g, p)?;
            let mut ws = Workspace::new(g.carrier.clone());
            ws.push("G", Item::Ac(g));
            ws.push(
                "F",
                Item::Functor {
                    source: "G".into(),
                    target: "G".into(),
                    f,
                },
            );
            ws
        }
        "super-line" => {
            let s = super_line_2group()?;
            let mut ws = Workspace::new(s.carrier.clone());
            ws.push("S", Item::Sm(s));
            ws
        }
        "strict-2ring" => ring_workspace(strict_2ring(&parse_ring(a.ring.as_deref().unwrap_or("z6"))?)?),
        "dual-2ring" => ring_workspace(dual_numbers_2ring(a.modulus.unwrap_or(3))?),
        other => {
            return Err(CliError::Usage(format!(
                "unknown fixture '{other}' (expected dual-numbers, super-line, strict-2ring or dual-2ring)"
            )))
        }
    };
    emit(&ws, a.out.as_deref(), out)?;
    Ok(EXIT_PASS)
}
