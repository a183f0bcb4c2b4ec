//! Local sequences of blow-ups at coordinate centers, their execution on pair
//! systems, and bounded searches for sequences separating two systems.

use super::{Pair, PairSystem};
use crate::algebra::VarSplit;
use crate::error::{Error, Result};

/// Blow-up of `V(center)` viewed in the chart where `chart` generates the
/// exceptional divisor. A one-variable center is the divisorial case.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlowupChart {
    pub center: Vec<String>,
    pub chart: String,
}

impl BlowupChart {
    pub fn new<S: AsRef<str>>(center: &[S], chart: &str) -> BlowupChart {
        BlowupChart { center: center.iter().map(|s| s.as_ref().to_string()).collect(), chart: chart.to_string() }
    }

    /// Center and chart as variable indices of `split`.
    pub fn resolve(&self, split: &VarSplit) -> Result<(Vec<usize>, usize)> {
        if self.center.is_empty() {
            return Err(Error::Input("blow-up center must be nonempty".into()));
        }
        let mut idx = Vec::new();
        for name in &self.center {
            let i = split.require_index(name)?;
            if idx.contains(&i) {
                return Err(Error::Input(format!("center lists `{name}` twice")));
            }
            idx.push(i);
        }
        let chart = split.require_index(&self.chart)?;
        if !idx.contains(&chart) {
            return Err(Error::Input(format!("chart variable `{}` is not in the center", self.chart)));
        }
        idx.sort_unstable();
        Ok((idx, chart))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LsbStep {
    Adjoin(String),
    Blowup(BlowupChart),
}

/// `[adjoin t] + α × (blow up the origin, t-chart) + β × (blow up V(t), t-chart)`.
pub fn s_alpha_beta(split: &VarSplit, alpha: usize, beta: usize) -> Vec<LsbStep> {
    let t = split.fresh_name("t");
    let mut all: Vec<String> = split.names().iter().map(|s| s.to_string()).collect();
    all.push(t.clone());
    let mut script = vec![LsbStep::Adjoin(t.clone())];
    script.extend((0..alpha).map(|_| LsbStep::Blowup(BlowupChart { center: all.clone(), chart: t.clone() })));
    script.extend((0..beta).map(|_| LsbStep::Blowup(BlowupChart { center: vec![t.clone()], chart: t.clone() })));
    script
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub step: LsbStep,
    /// Per-component verdicts; adjoining is always permissible.
    pub permissible: Vec<bool>,
    /// The system after the step, absent when the step was not permissible.
    pub after: Option<PairSystem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsbTrace {
    pub records: Vec<StepRecord>,
    /// Index of the first impermissible step, if execution stopped early.
    pub stopped_at: Option<usize>,
    pub final_system: PairSystem,
}

impl LsbTrace {
    pub fn fully_permissible(&self) -> bool {
        self.stopped_at.is_none()
    }
}

/// Executes `script`, stopping at the first step impermissible for some component.
pub fn run_lsb(system: &PairSystem, script: &[LsbStep]) -> Result<LsbTrace> {
    validate_script(system.split(), script)?;
    let mut cur = system.clone();
    let mut records = Vec::new();
    for (k, step) in script.iter().enumerate() {
        match step {
            LsbStep::Adjoin(name) => {
                cur = cur.adjoin(name)?;
                records.push(StepRecord {
                    step: step.clone(),
                    permissible: vec![true; cur.components().len()],
                    after: Some(cur.clone()),
                });
            }
            LsbStep::Blowup(chart) => {
                let (center, c) = chart.resolve(cur.split())?;
                let outcomes: Vec<Option<Pair>> = cur.components().iter().map(|p| p.transform(&center, c)).collect();
                let permissible: Vec<bool> = outcomes.iter().map(Option::is_some).collect();
                if permissible.iter().all(|&p| p) {
                    cur = PairSystem::new(outcomes.into_iter().map(Option::unwrap).collect())?;
                    records.push(StepRecord { step: step.clone(), permissible, after: Some(cur.clone()) });
                } else {
                    records.push(StepRecord { step: step.clone(), permissible, after: None });
                    return Ok(LsbTrace { records, stopped_at: Some(k), final_system: cur });
                }
            }
        }
    }
    Ok(LsbTrace { records, stopped_at: None, final_system: cur })
}

fn validate_script(split: &VarSplit, script: &[LsbStep]) -> Result<()> {
    let mut s = split.clone();
    for step in script {
        match step {
            LsbStep::Adjoin(name) => s = s.adjoin(name)?,
            LsbStep::Blowup(chart) => {
                chart.resolve(&s)?;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    /// Maximum number of blow-ups in a candidate sequence.
    pub depth: usize,
    /// Also try sequences starting with one adjoined indeterminate.
    pub adjoin: bool,
    /// Upper bound on evaluated candidate steps.
    pub budget: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { depth: 3, adjoin: true, budget: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeWitness {
    pub script: Vec<LsbStep>,
    /// True when the script is permissible for the first system only.
    pub permissible_for_first: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub witness: Option<ProbeWitness>,
    /// Candidate steps evaluated.
    pub explored: usize,
    /// False when the budget stopped the search before the depth bound.
    pub complete: bool,
}

impl ProbeResult {
    pub fn verdict(&self) -> &'static str {
        match (&self.witness, self.complete) {
            (Some(_), _) => "distinguished",
            (None, true) => "no distinguishing sequence found",
            (None, false) => "undetermined: search budget exhausted",
        }
    }
}

/// Depth-bounded search over coordinate-center blow-up sequences for one that
/// is permissible for exactly one of the systems. Never certifies equivalence.
pub fn probe_equiv(s1: &PairSystem, s2: &PairSystem, opts: &ProbeOptions) -> Result<ProbeResult> {
    if s1.split() != s2.split() {
        return Err(Error::Input("equivalence probes need systems over the same variables".into()));
    }
    let mut explored = 0usize;
    let mut starts = vec![(Vec::new(), s1.clone(), s2.clone())];
    if opts.adjoin {
        let t = s1.split().fresh_name("t");
        starts.push((vec![LsbStep::Adjoin(t.clone())], s1.adjoin(&t)?, s2.adjoin(&t)?));
    }
    for (prefix, a, b) in starts {
        let mut script = prefix;
        match search(&a, &b, opts.depth, &mut script, &mut explored, opts.budget) {
            Search::Found(w) => return Ok(ProbeResult { witness: Some(w), explored, complete: true }),
            Search::Budget => return Ok(ProbeResult { witness: None, explored, complete: false }),
            Search::Exhausted => {}
        }
    }
    Ok(ProbeResult { witness: None, explored, complete: true })
}

enum Search {
    Found(ProbeWitness),
    Exhausted,
    Budget,
}

fn transform_all(s: &PairSystem, center: &[usize], chart: usize) -> Option<PairSystem> {
    let comps: Option<Vec<Pair>> = s.components().iter().map(|p| p.transform(center, chart)).collect();
    comps.map(|c| PairSystem::new(c).expect("same ring"))
}

fn permissible_all(s: &PairSystem, center: &[usize]) -> bool {
    s.components().iter().all(|p| p.permissible_center(center))
}

fn search(a: &PairSystem, b: &PairSystem, depth: usize, script: &mut Vec<LsbStep>, explored: &mut usize, budget: usize) -> Search {
    if depth == 0 {
        return Search::Exhausted;
    }
    let split = a.split().clone();
    let names = split.names();
    let n = names.len();
    for mask in 1u64..(1u64 << n) {
        let center: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let pa = permissible_all(a, &center);
        let pb = permissible_all(b, &center);
        for &chart in &center {
            *explored += 1;
            if *explored > budget {
                return Search::Budget;
            }
            let step = LsbStep::Blowup(BlowupChart {
                center: center.iter().map(|&i| names[i].to_string()).collect(),
                chart: names[chart].to_string(),
            });
            if pa != pb {
                script.push(step);
                return Search::Found(ProbeWitness { script: script.clone(), permissible_for_first: pa });
            }
            if !pa || depth == 1 {
                continue;
            }
            let ta = transform_all(a, &center, chart).expect("checked permissible");
            let tb = transform_all(b, &center, chart).expect("checked permissible");
            script.push(step);
            match search(&ta, &tb, depth - 1, script, explored, budget) {
                Search::Exhausted => {
                    script.pop();
                }
                other => return other,
            }
        }
    }
    Search::Exhausted
}

/// Searches the scripts `S(α, β)` with `α ≤ max_alpha`, `β ≤ max_beta` for one
/// whose full execution is permissible for exactly one system.
pub fn probe_s_family(s1: &PairSystem, s2: &PairSystem, max_alpha: usize, max_beta: usize) -> Result<ProbeResult> {
    let mut explored = 0;
    for alpha in 0..=max_alpha {
        for beta in 0..=max_beta {
            explored += 1;
            let script = s_alpha_beta(s1.split(), alpha, beta);
            let p1 = run_lsb(s1, &script)?.fully_permissible();
            let p2 = run_lsb(s2, &script)?.fully_permissible();
            if p1 != p2 {
                return Ok(ProbeResult {
                    witness: Some(ProbeWitness { script, permissible_for_first: p1 }),
                    explored,
                    complete: true,
                });
            }
        }
    }
    Ok(ProbeResult { witness: None, explored, complete: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn sys(split: &VarSplit, gens: &[&str], b: &str) -> PairSystem {
        PairSystem::single(Pair::parse(Field::Rationals, split, gens, b).unwrap())
    }

    #[test]
    fn s_alpha_beta_shape() {
        let s = VarSplit::new(&["x"], &["y"]).unwrap();
        assert_eq!(s_alpha_beta(&s, 0, 0), vec![LsbStep::Adjoin("t".into())]);
        let script = s_alpha_beta(&s, 2, 1);
        assert_eq!(script.len(), 4);
        assert_eq!(script[1], LsbStep::Blowup(BlowupChart::new(&["x", "y", "t"], "t")));
        assert_eq!(script[3], LsbStep::Blowup(BlowupChart::new(&["t"], "t")));
    }

    #[test]
    fn first_origin_blowup_in_t_chart() {
        let s = VarSplit::new(&["x"], &["y"]).unwrap();
        let e = sys(&s, &["y^2 + x^3"], "2");
        let trace = run_lsb(&e, &s_alpha_beta(&s, 1, 0)).unwrap();
        assert!(trace.fully_permissible());
        let t_split = s.adjoin("t").unwrap();
        let expected = Pair::parse(Field::Rationals, &t_split, &["y^2 + t*x^3"], "2").unwrap();
        assert_eq!(trace.final_system.components()[0], expected);
    }

    #[test]
    fn empty_script_is_identity() {
        let s = VarSplit::new(&["x"], &["y"]).unwrap();
        let e = sys(&s, &["y^2 + x^3"], "2");
        let trace = run_lsb(&e, &[]).unwrap();
        assert!(trace.records.is_empty());
        assert_eq!(trace.final_system, e);
    }

    #[test]
    fn malformed_scripts_are_input_errors() {
        let s = VarSplit::new(&["x"], &["y"]).unwrap();
        let e = sys(&s, &["y^2"], "2");
        let bad = [LsbStep::Blowup(BlowupChart::new(&["x"], "y"))];
        assert!(matches!(run_lsb(&e, &bad), Err(Error::Input(_))));
        let bad = [LsbStep::Adjoin("x".into())];
        assert!(run_lsb(&e, &bad).is_err());
        let bad = [LsbStep::Blowup(BlowupChart::new(&["w"], "w"))];
        assert!(run_lsb(&e, &bad).is_err());
    }

    #[test]
    fn system_trace_matches_componentwise_traces() {
        let s = VarSplit::new(&["x"], &["y"]).unwrap();
        let a = Pair::parse(Field::Rationals, &s, &["y^2 + x^5"], "2").unwrap();
        let b = Pair::parse(Field::Rationals, &s, &["y^3 + x^4"], "3").unwrap();
        let both = PairSystem::new(vec![a.clone(), b.clone()]).unwrap();
        let script = s_alpha_beta(&s, 2, 3);
        let tr = run_lsb(&both, &script).unwrap();
        let ta = run_lsb(&PairSystem::single(a), &script).unwrap();
        let tb = run_lsb(&PairSystem::single(b), &script).unwrap();
        let stop = [ta.stopped_at, tb.stopped_at].into_iter().flatten().min();
        assert_eq!(tr.stopped_at, stop);
        for (k, rec) in tr.records.iter().enumerate() {
            assert_eq!(rec.permissible[0], ta.records[k].permissible[0]);
            assert_eq!(rec.permissible[1], tb.records[k].permissible[0]);
            if let Some(after) = &rec.after {
                assert_eq!(Some(&after.components()[0]), ta.records[k].after.as_ref().map(|s| &s.components()[0]));
                assert_eq!(Some(&after.components()[1]), tb.records[k].after.as_ref().map(|s| &s.components()[0]));
            }
        }
    }

    #[test]
    fn different_orders_are_separated_by_s_family() {
        let s = VarSplit::new(&[] as &[&str], &["y"]).unwrap();
        let e1 = sys(&s, &["y^3"], "2");
        let e2 = sys(&s, &["y^3"], "3");
        // α₀ = b₁b₂ = 6 and β₀ = (ord(E₁) − 1)·α₀ = 3
        let script = s_alpha_beta(&s, 6, 3);
        assert!(run_lsb(&e1, &script).unwrap().fully_permissible());
        assert!(!run_lsb(&e2, &script).unwrap().fully_permissible());
        let r = probe_s_family(&e1, &e2, 6, 6).unwrap();
        assert!(r.witness.unwrap().permissible_for_first);
    }

    #[test]
    fn cusps_need_a_richer_search_than_s_family() {
        let s = VarSplit::new(&["x"], &["y"]).unwrap();
        let e1 = sys(&s, &["y^2 + x^3"], "2");
        let e2 = sys(&s, &["x^2 + y^3"], "2");
        assert_eq!(probe_s_family(&e1, &e2, 6, 6).unwrap().witness, None);
        let r = probe_equiv(&e1, &e2, &ProbeOptions::default()).unwrap();
        let w = r.witness.expect("coordinate-center search separates the cusps");
        let t1 = run_lsb(&e1, &w.script).unwrap().fully_permissible();
        let t2 = run_lsb(&e2, &w.script).unwrap().fully_permissible();
        assert_ne!(t1, t2);
        assert_eq!(t1, w.permissible_for_first);
    }
}
