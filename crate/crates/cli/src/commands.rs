//! One function per command, each producing the `result` part of a report.

use std::path::PathBuf;

use idexp::algebra::Poly;
use idexp::charprep::{delta_invariant, prepare, PrepareOptions};
use idexp::coeff::{coeff_order, coefficient_pairs, maximal_contact, y_block_spans_directrix, ContactOptions};
use idexp::cone::{
    dir_rid_pairs, directrix, itc_pair, maximal_contact_directions, ridge, system_directrix, tangent_cone,
    DirectionWitness,
};
use idexp::json::{ext_json, scalar_json};
use idexp::pairs::{probe_equiv, run_lsb, LsbStep, PairSystem, ProbeOptions};
use idexp::polyhedra::{ideal_polyhedron, newton_polyhedron, nu_polyhedron, pair_polyhedron, NuWeights};
use idexp::{Error, Result};
use serde_json::{json, Value};

use crate::document::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Order,
    Newton,
    Poly,
    IdealPoly,
    Coeff,
    Directrix,
    Ridge,
    TangentCone,
    MaxContact,
    Prepare,
    Delta,
    NuPoly,
    Transform,
    Lsb,
    ProbeEquiv,
    Plot,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Order => "order",
            Command::Newton => "newton",
            Command::Poly => "poly",
            Command::IdealPoly => "ideal-poly",
            Command::Coeff => "coeff",
            Command::Directrix => "directrix",
            Command::Ridge => "ridge",
            Command::TangentCone => "tangent-cone",
            Command::MaxContact => "max-contact",
            Command::Prepare => "prepare",
            Command::Delta => "delta",
            Command::NuPoly => "nu-poly",
            Command::Transform => "transform",
            Command::Lsb => "lsb",
            Command::ProbeEquiv => "probe-equiv",
            Command::Plot => "plot",
        }
    }
}

pub struct Settings {
    pub degree_bound: u32,
    pub search_depth: usize,
    pub svg: Option<PathBuf>,
}

/// A command result; `honest_failure` carries the reason for exit status 2.
pub struct Outcome {
    pub result: Value,
    pub honest_failure: Option<String>,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Outcome {
        Outcome { result, honest_failure: None }
    }
}

pub fn run(cmd: Command, p: &Problem, settings: &Settings) -> Result<Outcome> {
    let s = &p.system;
    Ok(match cmd {
        Command::Order => order(s).into(),
        Command::Newton => newton_polyhedron(s).to_json().into(),
        Command::Poly => pair_polyhedron(s).to_json().into(),
        Command::IdealPoly => {
            let gens: Vec<Poly> = s.components().iter().flat_map(|c| c.generators().iter().cloned()).collect();
            ideal_polyhedron(&gens, s.split())?.to_json().into()
        }
        Command::Coeff => coeff(s).into(),
        Command::Directrix => directrix_report(s)?.into(),
        Command::Ridge => ridge_report(s)?.into(),
        Command::TangentCone => json!({
            "tangent_cone": tangent_cone(s)?.format(),
            "itc_pair": itc_pair(s)?.format(),
        })
        .into(),
        Command::MaxContact => max_contact(s, settings)?.into(),
        Command::Prepare => prepare(s, &prep_options(settings)).to_json().into(),
        Command::Delta => {
            let (delta, status) = delta_invariant(s, &prep_options(settings));
            json!({
                "delta": ext_json(&delta),
                "status": status.as_str(),
                "unprepared_delta": ext_json(&pair_polyhedron(s).delta()),
            })
            .into()
        }
        Command::NuPoly => {
            let w = p.weights.clone().unwrap_or_else(|| NuWeights::unit(s.split()));
            nu_polyhedron(s, &w)?.to_json().into()
        }
        Command::Transform => transform(s, script(p)?)?.into(),
        Command::Lsb => lsb(s, script(p)?)?.into(),
        Command::ProbeEquiv => probe(p, settings)?,
        Command::Plot => plot(s, settings)?.into(),
    })
}

fn prep_options(settings: &Settings) -> PrepareOptions {
    PrepareOptions { degree_bound: settings.degree_bound, ..PrepareOptions::default() }
}

fn script(p: &Problem) -> Result<&[LsbStep]> {
    p.script.as_deref().ok_or_else(|| Error::Input("this command needs a `script`".into()))
}

fn order(s: &PairSystem) -> Value {
    let comps: Vec<Value> = s
        .components()
        .iter()
        .map(|c| {
            json!({
                "pair": c.format(),
                "ideal_order": c.ideal_order().finite(),
                "ord": ext_json(&c.ord_origin()),
                "origin_in_sing": c.origin_in_sing(),
            })
        })
        .collect();
    json!({ "components": comps, "ord": ext_json(&s.ord_origin()), "origin_in_sing": s.origin_in_sing() })
}

fn coeff(s: &PairSystem) -> Value {
    let cps = coefficient_pairs(s);
    let comps: Vec<Value> = cps
        .iter()
        .map(|cp| {
            let names = cp.split().names();
            let levels: Vec<Value> = (0..cp.weight())
                .map(|l| json!(cp.level(l).iter().map(|g| g.format(&names)).collect::<Vec<_>>()))
                .collect();
            json!({ "weight": cp.weight(), "levels": levels, "order": ext_json(&cp.order()) })
        })
        .collect();
    let vars = cps.first().map(|cp| cp.split().u_names().to_vec()).unwrap_or_default();
    json!({ "variables": vars, "components": comps, "coeff_order": ext_json(&coeff_order(&cps)) })
}

fn directrix_report(s: &PairSystem) -> Result<Value> {
    let mut comps = Vec::new();
    for c in s.components() {
        let tc = tangent_cone(&PairSystem::single(c.clone()))?;
        let dir = directrix(&tc)?;
        comps.push(json!({ "tangent_cone": tc.format(), "directrix": dir.format(&tc.names()), "dim": dir.dim() }));
    }
    let names = idexp::cone::graded_names(s.split());
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let dir = system_directrix(s)?;
    Ok(json!({
        "components": comps,
        "directrix": dir.format(&names),
        "dim": dir.dim(),
        "y_block_spans_directrix": y_block_spans_directrix(s)?,
    }))
}

fn ridge_report(s: &PairSystem) -> Result<Value> {
    let mut comps = Vec::new();
    for c in s.components() {
        let tc = tangent_cone(&PairSystem::single(c.clone()))?;
        let names = tc.names();
        let r = ridge(&tc)?;
        comps.push(json!({
            "tangent_cone": tc.format(),
            "ridge": r.iter().map(|a| a.format(tc.field(), &names)).collect::<Vec<_>>(),
        }));
    }
    let dr = dir_rid_pairs(s)?;
    Ok(json!({
        "components": comps,
        "dir_pair": dr.dir.format(),
        "rid_pair": dr.rid.format(),
        "reduction_matches": dr.reduction_matches,
    }))
}

fn max_contact(s: &PairSystem, settings: &Settings) -> Result<Value> {
    let opts = ContactOptions { degree_bound: settings.degree_bound, ..ContactOptions::default() };
    let names = s.split().names();
    let mut comps = Vec::new();
    for c in s.components() {
        let mc = maximal_contact(c, &opts)?;
        let witnesses: Vec<Value> = mc
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "direction": s.split().y_names()[w.direction],
                    "generator": w.generator,
                    "multi_index": w.multi_index.exps(),
                    "epsilon": scalar_json(&w.epsilon),
                    "verified": w.verify(s.split()),
                })
            })
            .collect();
        comps.push(json!({
            "z": mc.z.iter().map(|z| z.format(&names)).collect::<Vec<_>>(),
            "reexpanded": mc.reexpanded.format(),
            "truncated": mc.truncated,
            "witnesses": witnesses,
        }));
    }
    let dirs = maximal_contact_directions(s)?;
    let gnames = idexp::cone::graded_names(s.split());
    let gnames: Vec<&str> = gnames.iter().map(String::as_str).collect();
    Ok(json!({
        "components": comps,
        "directions": dirs.span.format(&gnames),
        "directions_verified": dirs.witnesses.iter().all(DirectionWitness::verify),
    }))
}

pub fn step_json(step: &LsbStep) -> Value {
    match step {
        LsbStep::Adjoin(name) => json!({ "adjoin": name }),
        LsbStep::Blowup(b) => json!({ "center": b.center, "chart": b.chart }),
    }
}

fn system_json(s: &PairSystem) -> Value {
    let names = s.split().names();
    json!({
        "system": s.format(),
        "variables": { "u": s.split().u_names(), "y": s.split().y_names(), "t": s.split().t_names() },
        "pairs": s.components().iter().map(|c| json!({
            "generators": c.generators().iter().map(|g| g.format(&names)).collect::<Vec<_>>(),
            "b": idexp::algebra::format_rational(c.weight()),
        })).collect::<Vec<_>>(),
    })
}

fn transform(s: &PairSystem, script: &[LsbStep]) -> Result<Value> {
    let trace = run_lsb(s, script)?;
    if let Some(k) = trace.stopped_at {
        return Err(Error::Precondition(format!("step {k} is not permissible; see `lsb` for the trace")));
    }
    Ok(system_json(&trace.final_system))
}

fn lsb(s: &PairSystem, script: &[LsbStep]) -> Result<Value> {
    let trace = run_lsb(s, script)?;
    let steps: Vec<Value> = trace
        .records
        .iter()
        .map(|r| {
            json!({
                "step": step_json(&r.step),
                "permissible": r.permissible,
                "after": r.after.as_ref().map(PairSystem::format),
            })
        })
        .collect();
    Ok(json!({
        "steps": steps,
        "stopped_at": trace.stopped_at,
        "fully_permissible": trace.fully_permissible(),
        "final": trace.final_system.format(),
    }))
}

fn probe(p: &Problem, settings: &Settings) -> Result<Outcome> {
    let other = p.other.as_ref().ok_or_else(|| Error::Input("probe-equiv needs an `other` system".into()))?;
    let opts = ProbeOptions { depth: settings.search_depth, ..ProbeOptions::default() };
    let r = probe_equiv(&p.system, other, &opts)?;
    let result = json!({
        "verdict": r.verdict(),
        "depth": settings.search_depth,
        "explored": r.explored,
        "complete": r.complete,
        "witness": r.witness.as_ref().map(|w| json!({
            "script": w.script.iter().map(step_json).collect::<Vec<_>>(),
            "permissible_for_first": w.permissible_for_first,
        })),
    });
    let honest_failure = (!r.complete).then(|| r.verdict().to_string());
    Ok(Outcome { result, honest_failure })
}

fn plot(s: &PairSystem, settings: &Settings) -> Result<Value> {
    let poly = pair_polyhedron(s);
    let mut out = poly.to_json();
    let us = s.split().u_side_names();
    if poly.dim() != 2 {
        out["svg"] = Value::Null;
        out["note"] = json!(format!("no picture for dimension {}", poly.dim()));
        return Ok(out);
    }
    let svg = poly.to_svg([us[0], us[1]])?;
    match &settings.svg {
        Some(path) => {
            std::fs::write(path, &svg).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            out["svg"] = json!(path.display().to_string());
        }
        None => out["svg"] = json!(svg),
    }
    Ok(out)
}
