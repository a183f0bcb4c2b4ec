//! Tangent cones of pairs, their directrix and ridge, the idealistic versions
//! of all three, and maximal-contact directions.

pub mod graded;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Field, Monomial, Poly, Scalar, VarSplit};
use crate::error::{Error, Result};
use crate::linalg::{self, RowSpace};
use crate::pairs::{Pair, PairSystem};
pub use graded::{linear_coeffs, linear_form};
use graded::{subalgebra_generates, GradedPieces};

/// Budget (subalgebra membership tests) for the small-characteristic searches.
pub const DEFAULT_SEARCH_BUDGET: usize = 100_000;

/// A homogeneous ideal of the graded ring `K[W_1..W_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogIdeal {
    field: Field,
    names: Vec<String>,
    generators: Vec<Poly>,
}

impl HomogIdeal {
    pub fn new(field: Field, names: Vec<String>, generators: Vec<Poly>) -> Result<HomogIdeal> {
        for g in &generators {
            if g.field() != field || g.nvars() != names.len() {
                return Err(Error::Input("generator lives over a different ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::Input(format!("{} is not homogeneous", g.format(&str_names(&names)))));
            }
        }
        let mut gens: Vec<Poly> = Vec::new();
        for g in generators {
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(HomogIdeal { field, names, generators: gens })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> Vec<&str> {
        str_names(&self.names)
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Graded pieces up to degree `top`.
    pub fn pieces(&self, top: u32) -> GradedPieces {
        GradedPieces::new(self.field, self.nvars(), &self.generators, top)
    }

    /// Membership of an arbitrary polynomial, checked on each homogeneous part.
    pub fn contains(&self, f: &Poly) -> bool {
        let Some(d) = f.degree() else { return true };
        let pieces = self.pieces(d);
        (0..=d).all(|k| pieces.contains(&f.homogeneous_part(k)))
    }

    /// Equality as ideals, degree by degree up to the larger generator degree.
    pub fn same_ideal(&self, other: &HomogIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g)) && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn format(&self) -> String {
        let names = self.names();
        let gens: Vec<String> = self.generators.iter().map(|g| g.format(&names)).collect();
        format!("<{}>", gens.join(", "))
    }
}

fn str_names(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

/// Names of the graded variables: the ring names upper-cased when that stays unambiguous.
pub fn graded_names(split: &VarSplit) -> Vec<String> {
    let upper: Vec<String> = split.names().iter().map(|n| n.to_uppercase()).collect();
    let mut seen = std::collections::HashSet::new();
    if upper.iter().all(|n| seen.insert(n.clone())) {
        upper
    } else {
        split.names().iter().map(|n| n.to_string()).collect()
    }
}

/// The graded ring as a split mirroring `split`'s u/y/t blocks.
pub fn graded_split(split: &VarSplit) -> VarSplit {
    let names = graded_names(split);
    let (nu, ny) = (split.u_names().len(), split.y_names().len());
    VarSplit::with_t(&names[..nu], &names[nu..nu + ny], &names[nu + ny..]).expect("graded names are distinct")
}

/// A linear subspace of degree-one forms, stored by coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpan {
    space: RowSpace,
}

impl LinearSpan {
    pub fn new(space: RowSpace) -> LinearSpan {
        LinearSpan { space }
    }

    pub fn from_forms(field: Field, n: usize, forms: &[Poly]) -> LinearSpan {
        LinearSpan { space: RowSpace::from_rows(field, n, forms.iter().map(linear_coeffs)) }
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn forms(&self) -> Vec<Poly> {
        self.space.rows().iter().map(|r| linear_form(self.space.field(), r)).collect()
    }

    pub fn sum(&self, other: &LinearSpan) -> LinearSpan {
        LinearSpan { space: self.space.sum(&other.space) }
    }

    pub fn format(&self, names: &[&str]) -> String {
        let forms: Vec<String> = self.forms().iter().map(|f| f.format(names)).collect();
        format!("span{{{}}}", forms.join(", "))
    }
}

/// `φ = Σ λ_i W_i^q` with `q` a power of the characteristic (`q = 1` in char 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly {
    pub q: u64,
    pub coeffs: Vec<Scalar>,
}

impl AdditivePoly {
    pub fn to_poly(&self, field: Field) -> Poly {
        let n = self.coeffs.len();
        let q = u32::try_from(self.q).expect("exponent fits");
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0u32; n];
            e[i] = q;
            (Monomial::new(e), c.clone())
        });
        Poly::from_terms(field, n, terms)
    }

    /// The linear form `Σ λ_i^{1/q} W_i`; over a prime field `λ^{1/q} = λ`.
    pub fn root(&self) -> Vec<Scalar> {
        self.coeffs.clone()
    }

    pub fn format(&self, field: Field, names: &[&str]) -> String {
        let base = linear_form(field, &self.coeffs).format(names);
        if self.q == 1 {
            base
        } else if self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1 && self.coeffs.iter().any(Scalar::is_one) {
            format!("{base}^{}", self.q)
        } else {
            format!("({base})^{}", self.q)
        }
    }
}

/// Ideal generated by the degree-`b` initial forms of every component.
pub fn tangent_cone(s: &PairSystem) -> Result<HomogIdeal> {
    let names = graded_names(s.split());
    let mut gens = Vec::new();
    for comp in itc_components(s)? {
        gens.extend(comp);
    }
    HomogIdeal::new(s.field(), names, gens)
}

/// Initial forms per component (empty for non-integral weights).
fn itc_components(s: &PairSystem) -> Result<Vec<Vec<Poly>>> {
    let mut out = Vec::new();
    for pair in s.components() {
        if !pair.origin_in_sing() {
            return Err(Error::Precondition(format!("origin is not in Sing of {}", pair.format())));
        }
        let gens = pair
            .generators()
            .iter()
            .map(|g| g.initial_form(pair.weight()))
            .collect::<Result<Vec<_>>>()?;
        out.push(gens.into_iter().filter(|g| !g.is_zero()).collect());
    }
    Ok(out)
}

fn component_cones(s: &PairSystem) -> Result<Vec<HomogIdeal>> {
    let names = graded_names(s.split());
    itc_components(s)?.into_iter().map(|g| HomogIdeal::new(s.field(), names.clone(), g)).collect()
}

/// The idealistic tangent cone: `(In(E_i), b_i)` per component on the graded ring.
pub fn itc_pair(s: &PairSystem) -> Result<PairSystem> {
    let split = graded_split(s.split());
    let comps = itc_components(s)?
        .into_iter()
        .zip(s.components())
        .map(|(gens, pair)| Pair::new(s.field(), split.clone(), gens, pair.weight().clone()))
        .collect::<Result<Vec<_>>>()?;
    PairSystem::new(comps)
}

/// Directrix of the cone `Spec(S/I)`.
pub fn directrix(i: &HomogIdeal) -> Result<LinearSpan> {
    directrix_with_budget(i, DEFAULT_SEARCH_BUDGET)
}

pub fn directrix_with_budget(i: &HomogIdeal, budget: usize) -> Result<LinearSpan> {
    if derivative_method_valid(i) {
        return Ok(derivative_directrix(i));
    }
    let ridge = ridge_with_budget(i, budget)?;
    let roots: Vec<Vec<Scalar>> = ridge.iter().map(AdditivePoly::root).collect();
    Ok(LinearSpan::new(RowSpace::from_rows(i.field(), i.nvars(), roots)))
}

/// First derivatives decide the directrix in char 0 and in char `p > max degree`.
pub fn derivative_method_valid(i: &HomogIdeal) -> bool {
    let p = i.field().characteristic();
    p == 0 || p > i.max_degree()
}

/// `T^⊥` for `T = {v : Σ v_k ∂_k g ∈ I for every generator g}`.
///
/// In any characteristic this is contained in the directrix; it equals it when
/// `derivative_method_valid` holds.
pub fn derivative_directrix(i: &HomogIdeal) -> LinearSpan {
    let n = i.nvars();
    let field = i.field();
    let pieces = i.pieces(i.max_degree().saturating_sub(1));
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in i.generators() {
        let d = g.degree().unwrap();
        let basis = pieces.basis(d - 1);
        let residuals: Vec<Vec<Scalar>> = (0..n)
            .map(|k| pieces.piece(d - 1).reduce(&basis.vector(&g.hasse_derive(&Monomial::unit(n, k)))))
            .collect();
        for c in 0..basis.len() {
            rows.push(residuals.iter().map(|r| r[c].clone()).collect());
        }
    }
    let t = linalg::kernel(field, n, &rows);
    LinearSpan::new(t.annihilator())
}

/// Coordinate subspace spanned by the variables occurring in the generators.
fn occurring_span(i: &HomogIdeal) -> RowSpace {
    let n = i.nvars();
    let rows = (0..n)
        .filter(|&k| i.generators().iter().any(|g| g.terms().any(|(m, _)| m.exps()[k] > 0)))
        .map(|k| linalg::unit(i.field(), n, k));
    RowSpace::from_rows(i.field(), n, rows)
}

/// Rows of `top` that extend `base` to a basis of `top`.
fn complement(base: &RowSpace, top: &RowSpace) -> Vec<Vec<Scalar>> {
    let mut acc = base.clone();
    top.rows().iter().filter(|r| acc.insert((*r).clone())).cloned().collect()
}

/// Subspaces `V` with `base ⊆ V ⊆ top`, by increasing dimension.
fn between(base: &RowSpace, top: &RowSpace) -> impl Iterator<Item = RowSpace> {
    let field = base.field();
    let comp = complement(base, top);
    let m = comp.len();
    let base = base.clone();
    (0..=m).flat_map(move |k| {
        let base = base.clone();
        let comp = comp.clone();
        linalg::subspaces(field, m, k).into_iter().map(move |w| {
            let mut v = base.clone();
            for coeffs in w.rows() {
                let n = base.ambient_dim();
                let mut row = vec![field.zero(); n];
                for (c, r) in coeffs.iter().zip(&comp) {
                    for (x, y) in row.iter_mut().zip(r) {
                        *x = &*x + &(c * y);
                    }
                }
                v.insert(row);
            }
            v
        })
    })
}

/// Generators of `K[V_0, V_1^{p}, …, V_E^{p^E}]` for a flag of linear spans.
fn flag_algebra(field: Field, flag: &[RowSpace]) -> Vec<Poly> {
    let p = u64::from(field.characteristic().max(1));
    let mut out = Vec::new();
    for (e, v) in flag.iter().enumerate() {
        let q = p.pow(e as u32) as u32;
        for r in v.rows() {
            out.push(linear_form(field, r).pow(q));
        }
    }
    out
}

/// Ridge of the cone `Spec(S/I)` as a list of additive generators.
pub fn ridge(i: &HomogIdeal) -> Result<Vec<AdditivePoly>> {
    ridge_with_budget(i, DEFAULT_SEARCH_BUDGET)
}

pub fn ridge_with_budget(i: &HomogIdeal, budget: usize) -> Result<Vec<AdditivePoly>> {
    let field = i.field();
    if derivative_method_valid(i) {
        let dir = derivative_directrix(i);
        return Ok(dir.space().rows().iter().map(|r| AdditivePoly { q: 1, coeffs: r.clone() }).collect());
    }
    let p = u64::from(field.characteristic());
    let d = u64::from(i.max_degree());
    let mut top_level = 0usize;
    while p.pow(top_level as u32 + 1) <= d {
        top_level += 1;
    }
    let pieces = i.pieces(i.max_degree());
    let mut spent = 0usize;
    let mut check = |flag: &[RowSpace]| -> Result<bool> {
        spent += 1;
        if spent > budget {
            return Err(Error::Undetermined(format!("ridge search exceeded {budget} candidate checks")));
        }
        Ok(subalgebra_generates(&pieces, i.generators(), &flag_algebra(field, flag)))
    };

    // top level: the directrix, between the derivative bound and the occurring variables
    let lower = derivative_directrix(i).space().clone();
    let upper = occurring_span(i).sum(&lower);
    let mut flag: Vec<RowSpace> = vec![upper.clone(); top_level + 1];
    let mut found = None;
    for v in between(&lower, &upper) {
        if check(std::slice::from_ref(&v))? {
            found = Some(v);
            break;
        }
    }
    let dir = found.expect("the occurring variables always suffice");
    for level in flag.iter_mut() {
        *level = dir.clone();
    }
    // shrink the lower levels top-down, lower levels pinned to the current candidate
    for e in (0..top_level).rev() {
        let zero = RowSpace::zero(field, i.nvars());
        let mut chosen = None;
        for v in between(&zero, &flag[e + 1]) {
            let mut trial = flag.clone();
            for level in trial.iter_mut().take(e + 1) {
                *level = v.clone();
            }
            if check(&trial)? {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("the level above always suffices");
        for level in flag.iter_mut().take(e + 1) {
            *level = v.clone();
        }
    }
    let mut out = Vec::new();
    let mut below = RowSpace::zero(field, i.nvars());
    for (e, v) in flag.iter().enumerate() {
        for r in complement(&below, v) {
            out.push(AdditivePoly { q: p.pow(e as u32), coeffs: r });
        }
        below = v.clone();
    }
    Ok(out)
}

/// Idealistic directrix and ridge of a system.
#[derive(Clone, Debug)]
pub struct DirRid {
    pub dir_span: LinearSpan,
    pub dir: Pair,
    pub ridge: Vec<AdditivePoly>,
    pub rid: PairSystem,
    /// Over `F_p`: whether the Frobenius roots of the ridge span the directrix.
    pub reduction_matches: Option<bool>,
}

/// Per-component directrix spans summed: `IDir(E_1) + IDir(E_2) + …`.
pub fn system_directrix(s: &PairSystem) -> Result<LinearSpan> {
    let n = s.split().len();
    let mut span = LinearSpan::new(RowSpace::zero(s.field(), n));
    for cone in component_cones(s)? {
        span = span.sum(&directrix(&cone)?);
    }
    Ok(span)
}

pub fn dir_rid_pairs(s: &PairSystem) -> Result<DirRid> {
    let field = s.field();
    let n = s.split().len();
    let split = graded_split(s.split());
    let mut dir_span = LinearSpan::new(RowSpace::zero(field, n));
    let mut roots = RowSpace::zero(field, n);
    let mut ridge_all = Vec::new();
    for cone in component_cones(s)? {
        dir_span = dir_span.sum(&directrix(&cone)?);
        for phi in ridge(&cone)? {
            roots.insert(phi.root());
            if !ridge_all.contains(&phi) {
                ridge_all.push(phi);
            }
        }
    }
    let dir = Pair::new(field, split.clone(), dir_span.forms(), BigRational::one())?;
    let rid_components: Vec<Pair> = if ridge_all.is_empty() {
        vec![Pair::new(field, split.clone(), Vec::new(), BigRational::one())?]
    } else {
        ridge_all
            .iter()
            .map(|phi| {
                Pair::new(field, split.clone(), vec![phi.to_poly(field)], BigRational::from_integer(BigInt::from(phi.q)))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let reduction_matches = (field.characteristic() != 0).then(|| &roots == dir_span.space());
    Ok(DirRid { dir_span, dir, ridge: ridge_all, rid: PairSystem::new(rid_components)?, reduction_matches })
}

/// One step of the maximal-contact direction procedure.
#[derive(Clone, Debug)]
pub struct DirectionWitness {
    /// Index `j` of the direction in the adapted coordinates.
    pub direction: usize,
    pub component: usize,
    pub generator: usize,
    /// `M(j) = B(j) − e_j`, in the step coordinates.
    pub multi_index: Monomial,
    /// `F(j)` rewritten in the step coordinates.
    pub generator_in_step: Poly,
    /// `ε = C_{B(j)} · B(j)_j`.
    pub epsilon: Scalar,
    /// `Y*_j` in the step coordinates (coefficient of the `j`-th coordinate is 1).
    pub linear_form_in_step: Poly,
    /// `Y*_j` in the original graded variables.
    pub y_star: Vec<Scalar>,
}

impl DirectionWitness {
    /// `D_{M(j)} F(j) = ε · Y*_j`, recomputed.
    pub fn verify(&self) -> bool {
        self.generator_in_step.hasse_derive(&self.multi_index) == self.linear_form_in_step.scale(&self.epsilon)
    }
}

#[derive(Clone, Debug)]
pub struct MaxContactDirections {
    pub span: LinearSpan,
    pub witnesses: Vec<DirectionWitness>,
}

pub fn maximal_contact_directions(s: &PairSystem) -> Result<MaxContactDirections> {
    let field = s.field();
    let p = field.characteristic();
    if p != 0 {
        let bound = BigRational::from_integer(BigInt::from(p));
        if let Some(pair) = s.components().iter().find(|c| *c.weight() >= bound) {
            return Err(Error::UnsupportedCharacteristic(format!(
                "weight of {} is not below the characteristic {p}",
                pair.format()
            )));
        }
    }
    let cones = component_cones(s)?;
    if cones.iter().all(HomogIdeal::is_zero) {
        return Err(Error::Precondition("tangent cone is zero".into()));
    }
    let n = s.split().len();
    let mut dir = LinearSpan::new(RowSpace::zero(field, n));
    for c in &cones {
        dir = dir.sum(&directrix(c)?);
    }
    let r = dir.dim();
    // adapted coordinates: c = A·W, first r rows a basis of the directrix
    let mut a: Vec<Vec<Scalar>> = dir.space().rows().to_vec();
    for k in (0..n).filter(|k| !dir.space().pivots().contains(k)) {
        a.push(linalg::unit(field, n, k));
    }
    let inv = linalg::inverse(field, &a).expect("adapted coordinates are invertible");
    let to_c: Vec<Option<Poly>> = (0..n).map(|i| Some(linear_form(field, &inv[i]))).collect();
    let mut gens: Vec<Vec<Poly>> = cones.iter().map(|c| c.generators().iter().map(|g| g.substitute(&to_c)).collect()).collect();

    let mut witnesses = Vec::new();
    for j in 0..r {
        let mut pick = None;
        'search: for (ci, comp) in gens.iter().enumerate() {
            for (gi, g) in comp.iter().enumerate() {
                if let Some((b, c)) = g.terms().find(|(m, _)| m.exps()[j] > 0) {
                    pick = Some((ci, gi, b.clone(), c.clone()));
                    break 'search;
                }
            }
        }
        let (ci, gi, b, c) =
            pick.ok_or_else(|| Error::Precondition(format!("no generator involves direction {j}")))?;
        let m = b.div(&Monomial::unit(n, j)).expect("B_j ≥ 1");
        let f = gens[ci][gi].clone();
        let l = f.hasse_derive(&m);
        let eps = &c * &field.from_i64(i64::from(b.exps()[j]));
        let normalized: Vec<Scalar> = linear_coeffs(&l).iter().map(|x| x / &eps).collect();
        // new coordinate c'_j = Σ normalized_i c_i
        let mut row = vec![field.zero(); n];
        for (i, w) in normalized.iter().enumerate() {
            for (x, y) in row.iter_mut().zip(&a[i]) {
                *x = &*x + &(w * y);
            }
        }
        a[j] = row.clone();
        witnesses.push(DirectionWitness {
            direction: j,
            component: ci,
            generator: gi,
            multi_index: m,
            generator_in_step: f,
            epsilon: eps,
            linear_form_in_step: linear_form(field, &normalized),
            y_star: row,
        });
        // c_j = c'_j − Σ_{i≠j} normalized_i c'_i
        let mut back = vec![field.zero(); n];
        for (i, w) in normalized.iter().enumerate() {
            back[i] = if i == j { field.one() } else { -w };
        }
        let mut assign: Vec<Option<Poly>> = vec![None; n];
        assign[j] = Some(linear_form(field, &back));
        for comp in gens.iter_mut() {
            for g in comp.iter_mut() {
                *g = g.substitute(&assign);
            }
        }
    }
    let span = LinearSpan::new(RowSpace::from_rows(field, n, a.iter().take(r).cloned()));
    debug_assert_eq!(&span, &dir);
    Ok(MaxContactDirections { span, witnesses })
}

#[cfg(test)]
mod tests;
