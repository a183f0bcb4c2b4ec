//! Coefficient pairs `D(E, u, y)` and the maximal-contact construction.

use num_rational::BigRational;

use crate::algebra::{ExtRational, Field, Monomial, Poly, Scalar, VarSplit};
use crate::cone::{directrix, tangent_cone, LinearSpan};
use crate::error::{Error, Result};
use crate::linalg::{self, RowSpace};
use crate::pairs::{Pair, PairSystem};

/// Coefficient data of one integral-weight pair: `I(l)` for `0 ≤ l < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffPair {
    /// The u-side ring: u-block and t-block, no y-variables.
    split: VarSplit,
    weight: u32,
    levels: Vec<Vec<Poly>>,
}

impl CoeffPair {
    pub fn split(&self) -> &VarSplit {
        &self.split
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Generators of `I(l)`; empty when the level is the zero ideal.
    pub fn level(&self, l: u32) -> &[Poly] {
        &self.levels[l as usize]
    }

    /// `⋂_l (I(l), b − l)`, zero levels kept as explicit zero components.
    pub fn system(&self, field: Field) -> PairSystem {
        let comps = self
            .levels
            .iter()
            .enumerate()
            .map(|(l, gens)| {
                Pair::new(field, self.split.clone(), gens.clone(), BigRational::from_integer((self.weight - l as u32).into()))
                    .expect("coefficients live in the u-side ring")
            })
            .collect();
        PairSystem::new(comps).expect("at least one level")
    }

    /// `min_l ord(I(l))/(b − l)`, the raw ratio; ∞ when every level is zero.
    pub fn order(&self) -> ExtRational {
        let mut best = ExtRational::Infinite;
        for (l, gens) in self.levels.iter().enumerate() {
            let Some(o) = gens.iter().filter_map(|g| g.order_origin().finite()).min() else { continue };
            let ratio = BigRational::new(o.into(), (self.weight - l as u32).into());
            if best.finite().is_none_or(|b| ratio < *b) {
                best = ExtRational::Finite(ratio);
            }
        }
        best
    }
}

/// The u-side ring of a split: its u-block and t-block.
pub fn u_side_split(split: &VarSplit) -> VarSplit {
    VarSplit::with_t(split.u_names(), &[] as &[String], split.t_names()).expect("names stay distinct")
}

/// `I(l) = ⟨f_B : f ∈ J, |B| = l⟩` for `l < b`; rational weights are cleared first.
pub fn coefficient_pair(e: &Pair) -> CoeffPair {
    let cleared = e.clear_denominator();
    let b = cleared.integral_weight().expect("cleared weight is integral");
    let split = e.split();
    let keep = split.u_side();
    let mut levels: Vec<Vec<Poly>> = vec![Vec::new(); b as usize];
    for g in cleared.generators() {
        for (exps, coeff) in g.expand_in(&split.y_side()) {
            let l: u32 = exps.iter().sum();
            if l < b && !coeff.is_zero() {
                let c = coeff.drop_vars(&keep);
                if !levels[l as usize].contains(&c) {
                    levels[l as usize].push(c);
                }
            }
        }
    }
    CoeffPair { split: u_side_split(split), weight: b, levels }
}

/// Coefficient pairs of every component.
pub fn coefficient_pairs(s: &PairSystem) -> Vec<CoeffPair> {
    s.components().iter().map(coefficient_pair).collect()
}

/// The intersection of all components' coefficient systems.
pub fn coefficient_system(s: &PairSystem) -> PairSystem {
    let comps = coefficient_pairs(s).iter().flat_map(|c| c.system(s.field()).components().to_vec()).collect();
    PairSystem::new(comps).expect("at least one level")
}

/// Order of the intersection: the minimum over components.
pub fn coeff_order(pairs: &[CoeffPair]) -> ExtRational {
    let mut best = ExtRational::Infinite;
    for p in pairs {
        if let ExtRational::Finite(q) = p.order() {
            if best.finite().is_none_or(|b| q < *b) {
                best = ExtRational::Finite(q);
            }
        }
    }
    best
}

/// Expresses `f(u, y)` in the coordinates `(u, z)` where `z_j = Z[j](u, y)`.
///
/// The y-linear part of `Z` must be invertible and `Z(0) = 0`. The inverse
/// `y(u, z)` is found by fixed-point iteration; when it is not a polynomial it
/// is truncated above `degree` and so is the result.
pub fn reexpand(f: &Poly, z: &[Poly], split: &VarSplit, degree: u32) -> Result<Poly> {
    let inverse = invert_coordinates(z, split, degree)?;
    let ys = split.y_side();
    let mut assign: Vec<Option<Poly>> = vec![None; split.len()];
    for (k, &i) in ys.iter().enumerate() {
        assign[i] = Some(inverse[k].clone());
    }
    let out = f.substitute(&assign);
    Ok(if inverse.iter().any(|p| p.precision().is_some()) { out.with_precision(degree) } else { out })
}

/// `y(u, z)` with `z = Z(u, y)`, the y-slots of the ring now holding `z`.
pub fn invert_coordinates(z: &[Poly], split: &VarSplit, degree: u32) -> Result<Vec<Poly>> {
    let ys = split.y_side();
    let r = ys.len();
    if z.len() != r {
        return Err(Error::Input(format!("need {r} coordinate functions, got {}", z.len())));
    }
    let Some(first) = z.first() else { return Ok(Vec::new()) };
    let field = first.field();
    let n = split.len();
    let mut a = vec![vec![field.zero(); r]; r];
    let mut h = Vec::with_capacity(r);
    for (j, zj) in z.iter().enumerate() {
        if !zj.coeff(&Monomial::one(n)).is_zero() {
            return Err(Error::Precondition("coordinate functions must vanish at the origin".into()));
        }
        let mut rest = zj.clone();
        for (k, &i) in ys.iter().enumerate() {
            a[j][k] = zj.coeff(&Monomial::unit(n, i));
            rest = &rest - &Poly::monomial(field, Monomial::unit(n, i), a[j][k].clone());
        }
        h.push(rest);
    }
    let inv = linalg::inverse(field, &a)
        .ok_or_else(|| Error::Precondition("y-linear part of the new coordinates is singular".into()))?;
    let zvars: Vec<Poly> = ys.iter().map(|&i| Poly::var(field, n, i)).collect();
    let combine = |rhs: &[Poly]| -> Vec<Poly> {
        (0..r)
            .map(|i| {
                let mut acc = Poly::zero(field, n);
                for (k, p) in rhs.iter().enumerate() {
                    acc = &acc + &p.scale(&inv[i][k]);
                }
                acc
            })
            .collect()
    };
    let mut y = combine(&zvars);
    for _ in 0..=degree + 1 {
        let mut assign: Vec<Option<Poly>> = vec![None; n];
        for (k, &i) in ys.iter().enumerate() {
            assign[i] = Some(y[k].clone().with_precision(degree));
        }
        let rhs: Vec<Poly> = zvars.iter().zip(&h).map(|(zv, hk)| zv - &hk.substitute(&assign)).collect();
        let next: Vec<Poly> = combine(&rhs);
        let stable = next.iter().zip(&y).all(|(a, b)| same_terms(a, b));
        y = next;
        if stable {
            break;
        }
    }
    // exact when the iteration closed up without dropping terms
    if y.iter().any(Poly::is_truncated) {
        Ok(y.into_iter().map(|p| p.with_precision(degree)).collect())
    } else {
        Ok(y.into_iter().map(|p| strip_precision(&p)).collect())
    }
}

fn same_terms(a: &Poly, b: &Poly) -> bool {
    a.terms().eq(b.terms())
}

fn strip_precision(p: &Poly) -> Poly {
    Poly::from_terms(p.field(), p.nvars(), p.terms().map(|(m, c)| (m.clone(), c.clone())))
}

/// Which generator supplies `F(j)` when several qualify.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ContactChoice {
    #[default]
    First,
    Last,
}

#[derive(Clone, Debug)]
pub struct ContactOptions {
    pub degree_bound: u32,
    pub choice: ContactChoice,
}

impl Default for ContactOptions {
    fn default() -> Self {
        ContactOptions { degree_bound: 24, choice: ContactChoice::First }
    }
}

/// `z_j = ε^{-1} D_{M(j)} f(j)` with all data needed to recheck it.
#[derive(Clone, Debug)]
pub struct ContactWitness {
    pub direction: usize,
    pub generator: usize,
    /// Pure y-multi-index over the whole ring.
    pub multi_index: Monomial,
    pub epsilon: Scalar,
    /// `f(j)` in the step coordinates `(u, z_1..z_{j-1}, y_j..y_r)`.
    pub generator_in_step: Poly,
    /// `D_{M(j)}` of it, still in step coordinates.
    pub derivative: Poly,
}

impl ContactWitness {
    /// The derivative is recomputable and normalizes to a form with `z_j`-coefficient 1.
    pub fn verify(&self, split: &VarSplit) -> bool {
        let n = split.len();
        let lead = Monomial::unit(n, split.y_side()[self.direction]);
        self.generator_in_step.hasse_derive(&self.multi_index) == self.derivative
            && self.derivative.coeff(&lead) == self.epsilon
            && !self.epsilon.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct MaximalContact {
    /// `z_j` in the original coordinates `(u, y)`.
    pub z: Vec<Poly>,
    pub witnesses: Vec<ContactWitness>,
    /// The pair rewritten in `(u, z)`; the y-slots of the ring hold `z`.
    pub reexpanded: Pair,
    pub truncated: bool,
}

/// Checks that the y-block spans the directrix of the tangent cone of every component.
pub fn y_block_spans_directrix(s: &PairSystem) -> Result<bool> {
    let n = s.split().len();
    let field = s.field();
    let y_span = RowSpace::from_rows(field, n, s.split().y_side().iter().map(|&i| linalg::unit(field, n, i)));
    let mut dir = LinearSpan::new(RowSpace::zero(field, n));
    for c in s.components() {
        dir = dir.sum(&directrix(&tangent_cone(&PairSystem::single(c.clone()))?)?);
    }
    Ok(*dir.space() == y_span)
}

pub fn maximal_contact(e: &Pair, opts: &ContactOptions) -> Result<MaximalContact> {
    let field = e.field();
    let e = e.clear_denominator();
    let b = e.integral_weight()?;
    let p = field.characteristic();
    if p != 0 && b >= p {
        return Err(Error::UnsupportedCharacteristic(format!("weight {b} is not below the characteristic {p}")));
    }
    let split = e.split().clone();
    if !y_block_spans_directrix(&PairSystem::single(e.clone()))? {
        return Err(Error::Precondition("the y-block does not span the directrix".into()));
    }
    let n = split.len();
    let ys = split.y_side();
    let mut z: Vec<Poly> = ys.iter().map(|&i| Poly::var(field, n, i)).collect();
    let mut witnesses = Vec::new();
    for j in 0..ys.len() {
        let step: Vec<Poly> =
            e.generators().iter().map(|g| reexpand(g, &z, &split, opts.degree_bound)).collect::<Result<_>>()?;
        let candidates: Vec<(usize, Monomial, Scalar)> = step
            .iter()
            .enumerate()
            .filter_map(|(gi, g)| {
                g.homogeneous_part(b)
                    .terms()
                    .find(|(m, _)| m.exps()[ys[j]] > 0)
                    .map(|(m, c)| (gi, m.clone(), c.clone()))
            })
            .collect();
        let pick = match opts.choice {
            ContactChoice::First => candidates.first(),
            ContactChoice::Last => candidates.last(),
        };
        let (gi, bexp, c) = pick.cloned().ok_or_else(|| Error::Precondition(format!("no generator involves {}", split.y_names()[j])))?;
        let m = bexp.div(&Monomial::unit(n, ys[j])).expect("B_j ≥ 1");
        let eps = &c * &field.from_i64(i64::from(bexp.exps()[ys[j]]));
        let derivative = step[gi].hasse_derive(&m);
        let zj_step = derivative.scale(&eps.inverse());
        // back to (u, y): step coordinate slots hold the current z's
        let mut assign: Vec<Option<Poly>> = vec![None; n];
        for (k, &i) in ys.iter().enumerate() {
            assign[i] = Some(z[k].clone());
        }
        z[j] = zj_step.substitute(&assign);
        witnesses.push(ContactWitness {
            direction: j,
            generator: gi,
            multi_index: m,
            epsilon: eps,
            generator_in_step: step[gi].clone(),
            derivative,
        });
    }
    let gens: Vec<Poly> =
        e.generators().iter().map(|g| reexpand(g, &z, &split, opts.degree_bound)).collect::<Result<_>>()?;
    let truncated = gens.iter().chain(&z).any(|p| p.is_truncated());
    Ok(MaximalContact { z, witnesses, reexpanded: e.with_generators(gens), truncated })
}
