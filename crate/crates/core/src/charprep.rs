//! Vertex solving by translations `y_j ↦ y_j + c_j u^v` and the preparation
//! loop approximating the characteristic polyhedron and δ.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{ExtRational, Field, Monomial, Poly, Scalar};
use crate::coeff::y_block_spans_directrix;
use crate::error::{Error, Result};
use crate::json::{ext_json, scalar_json};
use crate::linalg;
use crate::pairs::PairSystem;
use crate::polyhedra::{pair_polyhedron, OrthantPolyhedron, Point};

/// `y_j ↦ y_j + c·u^v`, with `j` indexing the y-block and `v` the u-side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub y: usize,
    pub c: Scalar,
    pub v: Vec<u32>,
}

impl Substitution {
    pub fn to_json(&self, s: &PairSystem) -> Value {
        json!({ "y": s.split().y_names()[self.y], "c": scalar_json(&self.c), "v": self.v })
    }
}

/// Applies simultaneous translations; they commute since the shifts involve only u.
pub fn apply_substitutions(s: &PairSystem, subs: &[Substitution]) -> PairSystem {
    if subs.is_empty() {
        return s.clone();
    }
    let split = s.split();
    let n = split.len();
    let field = s.field();
    let (us, ys) = (split.u_side(), split.y_side());
    let mut assign: Vec<Option<Poly>> = vec![None; n];
    for sub in subs {
        let i = ys[sub.y];
        let mut e = vec![0u32; n];
        for (k, &idx) in us.iter().enumerate() {
            e[idx] = sub.v[k];
        }
        let current = assign[i].take().unwrap_or_else(|| Poly::var(field, n, i));
        assign[i] = Some(&current + &Poly::monomial(field, Monomial::new(e), sub.c.clone()));
    }
    s.map_components(|p| p.map_generators(|g| g.substitute(&assign)))
}

#[derive(Clone, Debug)]
pub struct VertexSolution {
    pub vertex: Point,
    pub substitutions: Vec<Substitution>,
    pub system: PairSystem,
    pub polyhedron: OrthantPolyhedron,
}

#[derive(Clone, Debug)]
pub enum VertexVerdict {
    Solved(VertexSolution),
    /// No translation can remove the vertex (it is not a lattice point).
    CertifiedUnsolvable(String),
    /// The candidate search found nothing acceptable; other methods might.
    NotSolvableByMethod(String),
}

impl VertexVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            VertexVerdict::Solved(_) => "solved",
            VertexVerdict::CertifiedUnsolvable(_) => "certified-unsolvable",
            VertexVerdict::NotSolvableByMethod(_) => "not-solvable-by-method",
        }
    }
}

/// Effect of a proposed substitution on the pair polyhedron.
#[derive(Clone, Debug)]
pub struct SubstitutionCheck {
    pub system: PairSystem,
    pub polyhedron: OrthantPolyhedron,
    /// New polyhedron is contained in the old one.
    pub shrinks: bool,
    /// Old vertices that are no longer in the new polyhedron.
    pub removed: Vec<Point>,
}

impl SubstitutionCheck {
    /// Only polyhedron-shrinking substitutions removing something are accepted.
    pub fn accepted(&self) -> bool {
        self.shrinks && !self.removed.is_empty()
    }
}

pub fn try_substitution(s: &PairSystem, subs: &[Substitution]) -> SubstitutionCheck {
    let old = pair_polyhedron(s);
    let system = apply_substitutions(s, subs);
    let polyhedron = pair_polyhedron(&system);
    let shrinks = polyhedron.is_subset_of(&old);
    let removed = old.vertices().iter().filter(|v| !polyhedron.contains(v)).cloned().collect();
    SubstitutionCheck { system, polyhedron, shrinks, removed }
}

fn integral_point(v: &[BigRational]) -> Option<Vec<u32>> {
    v.iter().map(|x| if x.is_integer() { u32::try_from(x.to_integer()).ok() } else { None }).collect()
}

pub fn solve_vertex(s: &PairSystem, v: &[BigRational]) -> Result<VertexVerdict> {
    let poly = pair_polyhedron(s);
    if !poly.vertices().iter().any(|w| w.as_slice() == v) {
        return Err(Error::Input("not a vertex of the pair polyhedron".into()));
    }
    let Some(vi) = integral_point(v) else {
        return Ok(VertexVerdict::CertifiedUnsolvable("vertex is not a lattice point".into()));
    };
    if vi.iter().sum::<u32>() < 2 {
        return Ok(VertexVerdict::NotSolvableByMethod("translations by monomials of degree below 2 are excluded".into()));
    }
    let r = s.split().y_side().len();
    let field = s.field();
    let candidates: Vec<Vec<Scalar>> = match field {
        Field::Rationals => match linear_candidate(s, &vi) {
            Some(c) => vec![c],
            None => return Ok(VertexVerdict::NotSolvableByMethod("initial-form equations have no nonzero solution".into())),
        },
        Field::Prime(_) => nonzero_vectors(field, r),
    };
    for c in candidates {
        let subs: Vec<Substitution> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| Substitution { y: j, c: x.clone(), v: vi.clone() })
            .collect();
        let check = try_substitution(s, &subs);
        if check.shrinks && !check.polyhedron.contains(v) {
            return Ok(VertexVerdict::Solved(VertexSolution {
                vertex: v.to_vec(),
                substitutions: subs,
                system: check.system,
                polyhedron: check.polyhedron,
            }));
        }
    }
    Ok(VertexVerdict::NotSolvableByMethod("no candidate translation removes the vertex".into()))
}

/// All of `F_p^r ∖ {0}` in lexicographic order of residues.
fn nonzero_vectors(field: Field, r: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements().expect("finite field");
    let mut out: Vec<Vec<Scalar>> = vec![Vec::new()];
    for _ in 0..r {
        out = out.into_iter().flat_map(|pre| elems.iter().map(move |e| [pre.clone(), vec![e.clone()]].concat())).collect();
    }
    out.retain(|c| c.iter().any(|x| !x.is_zero()));
    out
}

/// Solves `G_{b−1} + Σ_j c_j ∂_j G_b = 0` for the v-initial forms `G` of every
/// cleared generator; free variables are set to zero.
fn linear_candidate(s: &PairSystem, v: &[u32]) -> Option<Vec<Scalar>> {
    let split = s.split();
    let field = s.field();
    let n = split.len();
    let (us, ys) = (split.u_side(), split.y_side());
    let r = ys.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for pair in s.components() {
        let cleared = pair.clear_denominator();
        let b = cleared.integral_weight().expect("cleared weight is integral");
        for g in cleared.generators() {
            let mut top = Poly::zero(field, n);
            let mut next = Poly::zero(field, n);
            for (m, c) in g.terms() {
                let beta: u32 = ys.iter().map(|&i| m.exps()[i]).sum();
                if beta > b || !us.iter().zip(v).all(|(&i, &vk)| m.exps()[i] == (b - beta) * vk) {
                    continue;
                }
                let mut e = vec![0u32; n];
                for &i in &ys {
                    e[i] = m.exps()[i];
                }
                let t = Poly::monomial(field, Monomial::new(e), c.clone());
                if beta == b {
                    top = &top + &t;
                } else if beta + 1 == b {
                    next = &next + &t;
                }
            }
            let partials: Vec<Poly> = ys.iter().map(|&i| top.hasse_derive(&Monomial::unit(n, i))).collect();
            let mut monos: Vec<Monomial> = partials.iter().chain([&next]).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
            monos.sort();
            monos.dedup();
            for m in monos {
                rows.push(partials.iter().map(|p| p.coeff(&m)).collect());
                rhs.push(-&next.coeff(&m));
            }
        }
    }
    let c = linalg::solve(field, &rows, &rhs, r)?;
    c.iter().any(|x| !x.is_zero()).then_some(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VertexOrder {
    /// Increasing `|v|`, ties broken lexicographically.
    #[default]
    Ascending,
    Descending,
}

#[derive(Clone, Debug)]
pub struct PrepareOptions {
    pub degree_bound: u32,
    pub max_steps: usize,
    pub order: VertexOrder,
}

impl Default for PrepareOptions {
    fn default() -> Self {
        PrepareOptions { degree_bound: 64, max_steps: 64, order: VertexOrder::Ascending }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrepStatus {
    Prepared,
    Truncated,
    HypothesisWarning,
}

impl PrepStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PrepStatus::Prepared => "prepared",
            PrepStatus::Truncated => "truncated-at-degree-bound",
            PrepStatus::HypothesisWarning => "hypothesis-warning",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PreparationReport {
    pub steps: Vec<Substitution>,
    pub system: PairSystem,
    pub polyhedron: OrthantPolyhedron,
    pub delta: ExtRational,
    /// The y-block spans the directrix of every component.
    pub hypothesis_holds: bool,
    pub truncated: bool,
    pub status: PrepStatus,
}

impl PreparationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "steps": self.steps.iter().map(|s| s.to_json(&self.system)).collect::<Vec<_>>(),
            "system": self.system.format(),
            "polyhedron": self.polyhedron.to_json(),
            "delta": ext_json(&self.delta),
            "hypothesis_holds": self.hypothesis_holds,
            "truncated": self.truncated,
            "status": self.status.as_str(),
        })
    }
}

/// Replays a substitution record step by step.
pub fn replay(s: &PairSystem, steps: &[Substitution]) -> PairSystem {
    steps.iter().fold(s.clone(), |acc, sub| apply_substitutions(&acc, std::slice::from_ref(sub)))
}

fn sort_vertices(vs: &[Point], order: VertexOrder) -> Vec<Point> {
    let mut out = vs.to_vec();
    out.sort_by(|a, b| {
        let (sa, sb): (BigRational, BigRational) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    if order == VertexOrder::Descending {
        out.reverse();
    }
    out
}

pub fn prepare(s: &PairSystem, opts: &PrepareOptions) -> PreparationReport {
    let hypothesis_holds = y_block_spans_directrix(s).unwrap_or(false);
    let mut current = s.clone();
    let mut steps = Vec::new();
    let mut truncated = false;
    let bound = BigRational::from_integer(opts.degree_bound.into());
    'outer: loop {
        if steps.len() >= opts.max_steps {
            truncated = true;
            break;
        }
        let poly = pair_polyhedron(&current);
        for v in sort_vertices(poly.vertices(), opts.order) {
            if integral_point(&v).is_some() && v.iter().sum::<BigRational>() > bound {
                truncated = true;
                break 'outer;
            }
            if let Ok(VertexVerdict::Solved(sol)) = solve_vertex(&current, &v) {
                steps.extend(sol.substitutions);
                current = sol.system;
                continue 'outer;
            }
        }
        break;
    }
    let polyhedron = pair_polyhedron(&current);
    let status = if !hypothesis_holds {
        PrepStatus::HypothesisWarning
    } else if truncated {
        PrepStatus::Truncated
    } else {
        PrepStatus::Prepared
    };
    PreparationReport { steps, delta: polyhedron.delta(), polyhedron, system: current, hypothesis_holds, truncated, status }
}

/// δ of the prepared polyhedron, with the preparation status.
pub fn delta_invariant(s: &PairSystem, opts: &PrepareOptions) -> (ExtRational, PrepStatus) {
    let r = prepare(s, opts);
    (r.delta, r.status)
}
