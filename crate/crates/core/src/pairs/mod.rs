//! Pairs `(J, b)`, finite intersections of pairs, and the pair algebra:
//! powers, merges, products, blow-up transforms and derivative closures.

mod lsb;

pub use lsb::{
    probe_equiv, probe_s_family, run_lsb, s_alpha_beta, BlowupChart, LsbStep, LsbTrace, ProbeOptions, ProbeResult,
    ProbeWitness, StepRecord,
};

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{format_rational, parse_poly, parse_rational, ExtRational, Field, Monomial, Order, Poly, VarSplit};
use crate::error::{Error, Result};

/// A pair `(J, b)`: generators of an ideal and a positive rational weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    field: Field,
    split: VarSplit,
    generators: Vec<Poly>,
    weight: BigRational,
}

impl Pair {
    pub fn new(field: Field, split: VarSplit, generators: Vec<Poly>, weight: BigRational) -> Result<Pair> {
        if weight <= BigRational::zero() {
            return Err(Error::Input(format!("weight {} must be positive", format_rational(&weight))));
        }
        for g in &generators {
            if g.field() != field || g.nvars() != split.len() {
                return Err(Error::Input("generator lives over a different ring".into()));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Pair { field, split, generators, weight })
    }

    /// Parses generator strings and a weight written `n` or `n/d`.
    pub fn parse<S: AsRef<str>>(field: Field, split: &VarSplit, generators: &[S], weight: &str) -> Result<Pair> {
        let gens = generators.iter().map(|g| parse_poly(g.as_ref(), split, field)).collect::<Result<Vec<_>>>()?;
        Pair::new(field, split.clone(), gens, parse_rational(weight)?)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn split(&self) -> &VarSplit {
        &self.split
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Smallest order at the origin among the generators.
    pub fn ideal_order(&self) -> Order {
        self.generators.iter().map(Poly::order_origin).min().unwrap_or(Order::Infinite)
    }

    /// `ord(J)/b` when `ord(J) ≥ b`, else 0; ∞ for the zero ideal.
    pub fn ord_origin(&self) -> ExtRational {
        match self.ideal_order() {
            Order::Infinite => ExtRational::Infinite,
            Order::Finite(o) => {
                let o = BigRational::from_integer(o.into());
                if o >= self.weight {
                    ExtRational::Finite(o / &self.weight)
                } else {
                    ExtRational::Finite(BigRational::zero())
                }
            }
        }
    }

    /// True when the origin lies in the singular locus, i.e. `ord(J) ≥ b`.
    pub fn origin_in_sing(&self) -> bool {
        match self.ideal_order() {
            Order::Infinite => true,
            Order::Finite(o) => BigRational::from_integer(o.into()) >= self.weight,
        }
    }

    /// `(J^a, a·b)` with generators all a-fold products.
    pub fn power(&self, a: u32) -> Pair {
        assert!(a >= 1, "power exponent must be positive");
        Pair {
            field: self.field,
            split: self.split.clone(),
            generators: products(&self.generators, a),
            weight: &self.weight * BigRational::from_integer(a.into()),
        }
    }

    /// Integral-weight representative `(J^d, d·b)` with `d` the weight's denominator.
    pub fn clear_denominator(&self) -> Pair {
        let d: u32 = self.weight.denom().try_into().expect("weight denominator fits in u32");
        if d == 1 {
            self.clone()
        } else {
            self.power(d)
        }
    }

    /// The weight as an integer; fails when it is not integral.
    pub fn integral_weight(&self) -> Result<u32> {
        if !self.weight.is_integer() {
            return Err(Error::Input(format!("weight {} is not integral", format_rational(&self.weight))));
        }
        self.weight.to_integer().try_into().map_err(|_| Error::Input("weight too large".into()))
    }

    /// Is the coordinate center `V(x_i : i ∈ center)` inside `Sing(J, b)`?
    pub fn permissible_center(&self, center: &[usize]) -> bool {
        let o = self.generators.iter().map(|g| g.order_along(center)).min().unwrap_or(Order::Infinite);
        match o {
            Order::Infinite => true,
            Order::Finite(o) => BigRational::from_integer(o.into()) >= self.weight,
        }
    }

    /// Transform under the blow-up chart: `w ↦ chart·w` for the other center
    /// variables, then division by `chart^b`. Returns `None` if the center is
    /// not permissible. The result is the power-cleared representative.
    pub fn transform(&self, center: &[usize], chart: usize) -> Option<Pair> {
        if !self.permissible_center(center) {
            return None;
        }
        let cleared = self.clear_denominator();
        let b = cleared.integral_weight().expect("cleared weight is integral");
        let n = self.split.len();
        let xc = Poly::var(self.field, n, chart);
        let assignment: Vec<Option<Poly>> = (0..n)
            .map(|i| if i != chart && center.contains(&i) { Some(&xc * &Poly::var(self.field, n, i)) } else { None })
            .collect();
        let generators = cleared
            .generators
            .iter()
            .map(|g| g.substitute(&assignment).div_var_power(chart, b).expect("permissible transform divides exactly"))
            .collect();
        Some(Pair { generators, ..cleared })
    }

    /// Same pair with the variables re-partitioned (names must agree).
    pub fn resplit(&self, target: &VarSplit) -> Result<Pair> {
        if *target == self.split {
            return Ok(self.clone());
        }
        let map = self.split.index_map_to(target)?;
        let generators = self.generators.iter().map(|g| g.reindex(&map, target.len())).collect();
        Ok(Pair { field: self.field, split: target.clone(), generators, weight: self.weight.clone() })
    }

    /// Embeds into the ring with one more adjoined indeterminate.
    pub fn adjoin(&self, name: &str) -> Result<Pair> {
        let split = self.split.adjoin(name)?;
        let generators = self.generators.iter().map(|g| g.extend_vars(split.len())).collect();
        Ok(Pair { field: self.field, split, generators, weight: self.weight.clone() })
    }

    /// Replaces the generators, keeping ring and weight.
    pub fn with_generators(&self, generators: Vec<Poly>) -> Pair {
        Pair::new(self.field, self.split.clone(), generators, self.weight.clone()).expect("same ring")
    }

    pub fn map_generators<F: Fn(&Poly) -> Poly>(&self, f: F) -> Pair {
        self.with_generators(self.generators.iter().map(f).collect())
    }

    pub fn format(&self) -> String {
        let names = self.split.names();
        let gens: Vec<String> = self.generators.iter().map(|g| g.format(&names)).collect();
        format!("(<{}>, {})", gens.join(", "), format_rational(&self.weight))
    }

    fn key(&self) -> (String, Vec<String>) {
        let names = self.split.names();
        let mut gens: Vec<String> = self.generators.iter().map(|g| g.format(&names)).collect();
        gens.sort();
        gens.dedup();
        (format_rational(&self.weight), gens)
    }
}

/// All `a`-fold products (multisets) of the given polynomials.
pub fn products(gens: &[Poly], a: u32) -> Vec<Poly> {
    fn rec(gens: &[Poly], start: usize, left: u32, acc: &Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..gens.len() {
            rec(gens, i, left - 1, &(acc * &gens[i]), out);
        }
    }
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    rec(gens, 0, a, &Poly::one(first.field(), first.nvars()), &mut out);
    out.retain(|p| !p.is_zero());
    out
}

/// Relation recorded for a product pair `(J₁J₂, b₁+b₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductRelation {
    /// Both factors have order `< b_i + 1` at the origin, so the product is
    /// equivalent to the intersection near the origin.
    Equivalent,
    /// Only `E₁ ∩ E₂ ⊂ (J₁J₂, b₁+b₂)` is guaranteed.
    InclusionOnly,
}

pub fn product_pair(e1: &Pair, e2: &Pair) -> Result<(Pair, ProductRelation)> {
    if e1.field != e2.field || e1.split != e2.split {
        return Err(Error::Input("product of pairs over different rings".into()));
    }
    let generators = e1.generators.iter().flat_map(|f| e2.generators.iter().map(move |g| f * g)).collect();
    let pair = Pair::new(e1.field, e1.split.clone(), generators, &e1.weight + &e2.weight)?;
    let below = |e: &Pair| match e.ideal_order() {
        Order::Infinite => false,
        Order::Finite(o) => BigRational::from_integer(o.into()) < &e.weight + BigRational::one(),
    };
    let relation = if below(e1) && below(e2) { ProductRelation::Equivalent } else { ProductRelation::InclusionOnly };
    Ok((pair, relation))
}

/// A finite intersection `E₁ ∩ … ∩ E_k` of pairs over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSystem {
    components: Vec<Pair>,
}

impl PairSystem {
    pub fn new(components: Vec<Pair>) -> Result<PairSystem> {
        let Some(first) = components.first() else {
            return Err(Error::Input("a pair system needs at least one component".into()));
        };
        if components.iter().any(|c| c.field != first.field || c.split != first.split) {
            return Err(Error::Input("components live over different rings".into()));
        }
        Ok(PairSystem { components })
    }

    pub fn single(pair: Pair) -> PairSystem {
        PairSystem { components: vec![pair] }
    }

    pub fn components(&self) -> &[Pair] {
        &self.components
    }

    pub fn field(&self) -> Field {
        self.components[0].field
    }

    pub fn split(&self) -> &VarSplit {
        &self.components[0].split
    }

    /// Minimum of the component orders.
    pub fn ord_origin(&self) -> ExtRational {
        self.components.iter().map(Pair::ord_origin).min().expect("nonempty")
    }

    pub fn origin_in_sing(&self) -> bool {
        self.components.iter().all(Pair::origin_in_sing)
    }

    /// `(Σ J_i^{m/b_i}, m)`; each weight must be an integer dividing `m`.
    pub fn merge(&self, m: u32) -> Result<Pair> {
        let mut generators = Vec::new();
        for c in &self.components {
            let b = c.integral_weight()?;
            if b == 0 || !m.is_multiple_of(b) {
                return Err(Error::Input(format!("weight {b} does not divide {m}")));
            }
            generators.extend(products(&c.generators, m / b));
        }
        Pair::new(self.field(), self.split().clone(), generators, BigRational::from_integer(m.into()))
    }

    pub fn resplit(&self, target: &VarSplit) -> Result<PairSystem> {
        Ok(PairSystem { components: self.components.iter().map(|c| c.resplit(target)).collect::<Result<_>>()? })
    }

    pub fn adjoin(&self, name: &str) -> Result<PairSystem> {
        Ok(PairSystem { components: self.components.iter().map(|c| c.adjoin(name)).collect::<Result<_>>()? })
    }

    /// Every component with integral weight.
    pub fn clear_denominators(&self) -> PairSystem {
        PairSystem { components: self.components.iter().map(Pair::clear_denominator).collect() }
    }

    pub fn map_components<F: Fn(&Pair) -> Pair>(&self, f: F) -> PairSystem {
        PairSystem { components: self.components.iter().map(f).collect() }
    }

    pub fn with_component(&self, pair: Pair) -> Result<PairSystem> {
        let mut components = self.components.clone();
        components.push(pair);
        PairSystem::new(components)
    }

    /// Appends `(⟨D_M f_i⟩, b − m)` for each component with `m < b` and each
    /// multi-index `|M| = m`; zero ideals are discarded.
    pub fn diff_closure(&self, m: u32) -> PairSystem {
        let mut components = self.components.clone();
        let mq = BigRational::from_integer(m.into());
        let n = self.split().len();
        for c in &self.components {
            if mq >= c.weight {
                continue;
            }
            for mono in Monomial::all_of_degree(n, m) {
                let gens: Vec<Poly> = c.generators.iter().map(|f| f.hasse_derive(&mono)).filter(|g| !g.is_zero()).collect();
                if !gens.is_empty() {
                    components.push(Pair { generators: gens, weight: &c.weight - &mq, ..c.clone() });
                }
            }
        }
        PairSystem { components }
    }

    /// Iterates `diff_closure` over all `1 ≤ m < b` until no new components
    /// appear. Returns the system and whether it stabilized within the bounds.
    pub fn diff_saturate(&self, max_rounds: usize, max_components: usize) -> (PairSystem, bool) {
        let mut seen: HashSet<(String, Vec<String>)> = HashSet::new();
        let mut components = Vec::new();
        for c in &self.components {
            if seen.insert(c.key()) {
                components.push(c.clone());
            }
        }
        let mut frontier = components.clone();
        for _ in 0..max_rounds {
            let mut fresh = Vec::new();
            for c in &frontier {
                let top = c.weight.ceil().to_integer();
                let top: u32 = top.try_into().unwrap_or(u32::MAX);
                for m in 1..top {
                    if BigRational::from_integer(m.into()) >= c.weight {
                        break;
                    }
                    let closed = PairSystem::single(c.clone()).diff_closure(m);
                    for d in closed.components.into_iter().skip(1) {
                        if seen.insert(d.key()) {
                            fresh.push(d);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                return (PairSystem { components }, true);
            }
            components.extend(fresh.iter().cloned());
            if components.len() > max_components {
                return (PairSystem { components }, false);
            }
            frontier = fresh;
        }
        (PairSystem { components }, false)
    }

    pub fn format(&self) -> String {
        self.components.iter().map(Pair::format).collect::<Vec<_>>().join(" ∩ ")
    }
}
