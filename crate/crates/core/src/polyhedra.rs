//! Orthant polyhedra `conv(points) + ℝ^e_{≥0}` with exact vertices, and the
//! Newton, pair, ideal and ν-weighted polyhedra of pairs.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{format_rational, ExtRational, Poly, VarSplit};
use crate::error::{Error, Result};
use crate::json::{ext_json, point_json};
use crate::lp;
use crate::pairs::PairSystem;

pub type Point = Vec<BigRational>;

/// `conv(points) + ℝ^e_{≥0}`, with its vertex set computed once.
#[derive(Clone, Debug)]
pub struct OrthantPolyhedron {
    dim: usize,
    points: Vec<Point>,
    vertices: Vec<Point>,
}

impl PartialEq for OrthantPolyhedron {
    /// Set equality; vertex sets are canonical.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for OrthantPolyhedron {}

impl OrthantPolyhedron {
    pub fn new(dim: usize, points: Vec<Point>) -> OrthantPolyhedron {
        let mut points = points;
        for p in &points {
            assert_eq!(p.len(), dim, "point dimension");
            assert!(p.iter().all(|x| !x.is_negative()), "points lie in the closed orthant");
        }
        points.sort();
        points.dedup();
        let vertices = compute_vertices(&points);
        OrthantPolyhedron { dim, points, vertices }
    }

    pub fn empty(dim: usize) -> OrthantPolyhedron {
        OrthantPolyhedron { dim, points: Vec::new(), vertices: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `q ∈ P` iff `q` dominates a convex combination of the generator points.
    pub fn contains(&self, q: &[BigRational]) -> bool {
        contains_in(&self.points, q)
    }

    pub fn is_subset_of(&self, other: &OrthantPolyhedron) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// Union hull: the polyhedron generated by both point sets.
    pub fn union(&self, other: &OrthantPolyhedron) -> OrthantPolyhedron {
        assert_eq!(self.dim, other.dim);
        OrthantPolyhedron::new(self.dim, self.points.iter().chain(&other.points).cloned().collect())
    }

    /// `inf |v|` over the polyhedron; ∞ when empty.
    pub fn delta(&self) -> ExtRational {
        self.vertices
            .iter()
            .map(|v| v.iter().sum::<BigRational>())
            .min()
            .map_or(ExtRational::Infinite, ExtRational::Finite)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dim,
            "points": self.points.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
            "delta": ext_json(&self.delta()),
        })
    }

    /// Picture of a two-dimensional polyhedron: axes, generator points, the
    /// vertex staircase and the line `x_1 + x_2 = δ`.
    pub fn to_svg(&self, labels: [&str; 2]) -> Result<String> {
        if self.dim != 2 {
            return Err(Error::Input(format!("SVG output needs dimension 2, got {}", self.dim)));
        }
        const SIZE: i64 = 400;
        const MARGIN: i64 = 40;
        let mut extent = BigRational::one();
        for p in &self.points {
            for x in p {
                if *x > extent {
                    extent = x.clone();
                }
            }
        }
        let extent = extent * BigRational::new(5.into(), 4.into());
        let px = |x: &BigRational| -> i64 {
            let v = x * BigRational::from_integer(SIZE.into()) / &extent;
            MARGIN + v.round().to_integer().to_i64().unwrap_or(SIZE)
        };
        let py = |y: &BigRational| -> i64 { MARGIN + SIZE - (px(y) - MARGIN) };
        let mut s = String::new();
        let total = SIZE + 2 * MARGIN;
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#).unwrap();
        let (x0, y0) = (MARGIN, MARGIN + SIZE);
        writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, MARGIN + SIZE).unwrap();
        writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>"#).unwrap();
        writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, MARGIN + SIZE - 10, y0 + 20, labels[0]).unwrap();
        writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, 8, MARGIN + 10, labels[1]).unwrap();
        if !self.vertices.is_empty() {
            // staircase: vertical ray above the first vertex, the vertex chain, horizontal ray
            let mut pts = vec![(px(&self.vertices[0][0]), MARGIN)];
            pts.extend(self.vertices.iter().map(|v| (px(&v[0]), py(&v[1]))));
            let last = self.vertices.last().unwrap();
            pts.push((MARGIN + SIZE, py(&last[1])));
            let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
            writeln!(s, r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#, list.join(" ")).unwrap();
        }
        for p in &self.points {
            let fill = if self.vertices.contains(p) { "steelblue" } else { "gray" };
            writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="{fill}"/>"#, px(&p[0]), py(&p[1])).unwrap();
        }
        if let ExtRational::Finite(d) = self.delta() {
            writeln!(
                s,
                r#"<line x1="{}" y1="{y0}" x2="{x0}" y2="{}" stroke="firebrick" stroke-dasharray="6,4"/>"#,
                px(&d),
                py(&d)
            )
            .unwrap();
            writeln!(s, r#"<text x="{}" y="{}" fill="firebrick">δ = {}</text>"#, px(&d) + 6, y0 - 6, format_rational(&d)).unwrap();
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

fn contains_in(points: &[Point], q: &[BigRational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let e = q.len();
    let m = points.len();
    // variables: λ_1..λ_m, slacks s_1..s_e;  Σ λ_k p_k + s = q,  Σ λ_k = 1
    let mut a = Vec::with_capacity(e + 1);
    let mut b = Vec::with_capacity(e + 1);
    for i in 0..e {
        let mut row: Vec<BigRational> = points.iter().map(|p| p[i].clone()).collect();
        row.extend((0..e).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        a.push(row);
        b.push(q[i].clone());
    }
    let mut row = vec![BigRational::one(); m];
    row.extend(vec![BigRational::zero(); e]);
    a.push(row);
    b.push(BigRational::one());
    lp::feasible(&a, &b).is_some()
}

fn dominates(a: &[BigRational], b: &[BigRational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Non-dominated points `p` admitting `w ≥ 1` with `w·(q − p) ≥ 1` for every other `q`.
fn compute_vertices(points: &[Point]) -> Vec<Point> {
    let minimal: Vec<&Point> = points
        .iter()
        .filter(|p| !points.iter().any(|q| q != *p && dominates(p, q)))
        .collect();
    let mut out = Vec::new();
    for (k, p) in minimal.iter().enumerate() {
        let others: Vec<&Point> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, q)| *q).collect();
        if others.is_empty() || exposed(p, &others) {
            out.push((*p).clone());
        }
    }
    out
}

fn exposed(p: &[BigRational], others: &[&Point]) -> bool {
    let e = p.len();
    let m = others.len();
    // w = 1 + w', variables w'_1..w'_e and surplus s_1..s_m:
    // Σ_i w'_i d_i − s_q = 1 − Σ_i d_i  with d = q − p
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (j, q) in others.iter().enumerate() {
        let d: Vec<BigRational> = q.iter().zip(p).map(|(x, y)| x - y).collect();
        let mut row = d.clone();
        row.extend((0..m).map(|k| if k == j { -BigRational::one() } else { BigRational::zero() }));
        a.push(row);
        b.push(BigRational::one() - d.iter().sum::<BigRational>());
    }
    debug_assert!(a.iter().all(|r| r.len() == e + m));
    lp::feasible(&a, &b).is_some()
}

fn q(n: u32) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Terms of every component, weights cleared to integers: `(A, B, b)`.
fn cleared_terms(s: &PairSystem) -> Vec<(Vec<u32>, Vec<u32>, u32)> {
    let split = s.split();
    let (us, ys) = (split.u_side(), split.y_side());
    let mut out = Vec::new();
    for pair in s.components() {
        let cleared = pair.clear_denominator();
        let b = cleared.integral_weight().expect("cleared weight is integral");
        for g in cleared.generators() {
            for (m, _) in g.terms() {
                let a: Vec<u32> = us.iter().map(|&i| m.exps()[i]).collect();
                let bb: Vec<u32> = ys.iter().map(|&i| m.exps()[i]).collect();
                out.push((a, bb, b));
            }
        }
    }
    out
}

/// `Δ^N`: points `(A, B)/b` with `|B| ≤ b`, over `(u, t, y)` coordinates.
pub fn newton_polyhedron(s: &PairSystem) -> OrthantPolyhedron {
    let split = s.split();
    let dim = split.u_side().len() + split.y_side().len();
    let points = cleared_terms(s)
        .into_iter()
        .filter(|(_, bb, b)| bb.iter().sum::<u32>() <= *b)
        .map(|(a, bb, b)| a.iter().chain(&bb).map(|&x| BigRational::new(x.into(), b.into())).collect())
        .collect();
    OrthantPolyhedron::new(dim, points)
}

/// `Δ(E, u, y)`: points `A/(b − |B|)` with `|B| < b`, over the u-side coordinates.
pub fn pair_polyhedron(s: &PairSystem) -> OrthantPolyhedron {
    let dim = s.split().u_side().len();
    let points = cleared_terms(s)
        .into_iter()
        .filter_map(|(a, bb, b)| {
            let beta: u32 = bb.iter().sum();
            (beta < b).then(|| a.iter().map(|&x| BigRational::new(x.into(), (b - beta).into())).collect())
        })
        .collect();
    OrthantPolyhedron::new(dim, points)
}

/// Order of `f` modulo the u-side variables: lowest degree of its pure-y terms.
pub fn order_mod_u(f: &Poly, split: &VarSplit) -> Option<u32> {
    let us = split.u_side();
    f.terms().filter(|(m, _)| us.iter().all(|&i| m.exps()[i] == 0)).map(|(m, _)| m.degree()).min()
}

/// Hironaka's polyhedron of an ideal: per generator, `A/(n_f − |B|)` with `|B| < n_f`.
pub fn ideal_polyhedron(gens: &[Poly], split: &VarSplit) -> Result<OrthantPolyhedron> {
    let (us, ys) = (split.u_side(), split.y_side());
    let mut points = Vec::new();
    for f in gens {
        let n = order_mod_u(f, split)
            .ok_or_else(|| Error::Precondition(format!("{} lies in the ideal of the u-variables", f.format(&split.names()))))?;
        for (m, _) in f.terms() {
            let beta: u32 = ys.iter().map(|&i| m.exps()[i]).sum();
            if beta < n {
                points.push(us.iter().map(|&i| BigRational::new(m.exps()[i].into(), (n - beta).into())).collect());
            }
        }
    }
    Ok(OrthantPolyhedron::new(us.len(), points))
}

/// Positive monomial weights `α` on the u-side and `β` on the y-block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuWeights {
    alpha: Vec<BigRational>,
    beta: Vec<BigRational>,
}

impl NuWeights {
    pub fn new(alpha: Vec<BigRational>, beta: Vec<BigRational>) -> Result<NuWeights> {
        if alpha.iter().chain(&beta).any(|x| !x.is_positive()) {
            return Err(Error::Input("ν-weights must be strictly positive".into()));
        }
        Ok(NuWeights { alpha, beta })
    }

    pub fn unit(split: &VarSplit) -> NuWeights {
        NuWeights { alpha: vec![q(1); split.u_side().len()], beta: vec![q(1); split.y_side().len()] }
    }

    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[BigRational] {
        &self.beta
    }
}

/// `Δ^ν`: points `(α·A)/(b − β·B)` with `β·B < b`.
pub fn nu_polyhedron(s: &PairSystem, w: &NuWeights) -> Result<OrthantPolyhedron> {
    let split = s.split();
    let dim = split.u_side().len();
    if w.alpha.len() != dim || w.beta.len() != split.y_side().len() {
        return Err(Error::Input(format!(
            "ν-weights need {} u-side and {} y entries, got {} and {}",
            dim,
            split.y_side().len(),
            w.alpha.len(),
            w.beta.len()
        )));
    }
    let mut points = Vec::new();
    for (a, bb, b) in cleared_terms(s) {
        let bw: BigRational = bb.iter().zip(&w.beta).map(|(&x, y)| y * q(x)).sum();
        let gap = q(b) - bw;
        if gap.is_positive() {
            points.push(a.iter().zip(&w.alpha).map(|(&x, al)| al * q(x) / &gap).collect());
        }
    }
    Ok(OrthantPolyhedron::new(dim, points))
}

/// Image of `Δ^N` on the u-side: vertex `(a, β) ↦ a/(1 − |β|)` for `|β| < 1`.
pub fn project_newton(newton: &OrthantPolyhedron, u_dim: usize) -> OrthantPolyhedron {
    let points = newton
        .vertices()
        .iter()
        .filter_map(|v| {
            let beta: BigRational = v[u_dim..].iter().sum();
            let gap = BigRational::one() - beta;
            gap.is_positive().then(|| v[..u_dim].iter().map(|x| x / &gap).collect())
        })
        .collect();
    OrthantPolyhedron::new(u_dim, points)
}
