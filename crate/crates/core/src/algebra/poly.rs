//! Sparse multivariate polynomials over a (u; y; t) variable split.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Variable names partitioned into the u-block, the y-block and adjoined
/// indeterminates t. Polynomial variable indices follow the layout u, y, t.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSplit {
    u: Vec<String>,
    y: Vec<String>,
    t: Vec<String>,
}

impl VarSplit {
    pub fn new<S: AsRef<str>>(u: &[S], y: &[S]) -> Result<VarSplit> {
        if u.is_empty() && y.is_empty() {
            return Err(Error::Input("a variable split needs at least one variable".into()));
        }
        Self::with_t(u, y, &[] as &[&str])
    }

    /// Like `new` plus a t-block; the empty split (the ground field) is allowed.
    pub fn with_t<S: AsRef<str>, T: AsRef<str>>(u: &[S], y: &[S], t: &[T]) -> Result<VarSplit> {
        let split = VarSplit {
            u: u.iter().map(|s| s.as_ref().to_string()).collect(),
            y: y.iter().map(|s| s.as_ref().to_string()).collect(),
            t: t.iter().map(|s| s.as_ref().to_string()).collect(),
        };
        let mut seen = std::collections::HashSet::new();
        for name in split.names() {
            if !is_identifier(name) {
                return Err(Error::Input(format!("`{name}` is not a valid variable name")));
            }
            if !seen.insert(name) {
                return Err(Error::Input(format!("variable `{name}` declared twice")));
            }
        }
        Ok(split)
    }

    pub fn u_names(&self) -> &[String] {
        &self.u
    }

    pub fn y_names(&self) -> &[String] {
        &self.y
    }

    pub fn t_names(&self) -> &[String] {
        &self.t
    }

    /// All names in index order.
    pub fn names(&self) -> Vec<&str> {
        self.u.iter().chain(&self.y).chain(&self.t).map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.u.len() + self.y.len() + self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| *n == name)
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::Input(format!("unknown variable `{name}`")))
    }

    /// Indices playing the role of u-coordinates in polyhedra: the u-block
    /// followed by the adjoined t-block.
    pub fn u_side(&self) -> Vec<usize> {
        let e = self.u.len();
        let r = self.y.len();
        (0..e).chain(e + r..self.len()).collect()
    }

    pub fn y_side(&self) -> Vec<usize> {
        let e = self.u.len();
        (e..e + self.y.len()).collect()
    }

    /// Names of the u-side coordinates, in polyhedron coordinate order.
    pub fn u_side_names(&self) -> Vec<&str> {
        self.u.iter().chain(&self.t).map(String::as_str).collect()
    }

    /// Appends a fresh adjoined indeterminate; its index is the old `len()`.
    pub fn adjoin(&self, name: &str) -> Result<VarSplit> {
        if self.index_of(name).is_some() {
            return Err(Error::Input(format!("adjoined variable `{name}` is not fresh")));
        }
        let mut t = self.t.clone();
        t.push(name.to_string());
        VarSplit::with_t(&self.u, &self.y, &t)
    }

    /// A name not yet used, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..).map(|k| format!("{base}{k}")).find(|n| self.index_of(n).is_none()).unwrap()
    }

    /// True when both splits declare the same set of names.
    pub fn same_names(&self, other: &VarSplit) -> bool {
        let mut a = self.names();
        let mut b = other.names();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// For each index of `self`, the index of the same name in `target`.
    pub fn index_map_to(&self, target: &VarSplit) -> Result<Vec<usize>> {
        if !self.same_names(target) {
            return Err(Error::Input("re-split must use the same variable names".into()));
        }
        Ok(self.names().iter().map(|n| target.index_of(n).unwrap()).collect())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn partial_degree(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.0[i]).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Product of componentwise binomials `binom(self, m)`, computed in ℤ.
    pub fn binomial(&self, m: &Monomial) -> BigInt {
        let mut acc = BigInt::one();
        for (&n, &k) in self.0.iter().zip(&m.0) {
            if k > n {
                return BigInt::zero();
            }
            acc *= num_integer::binomial(BigInt::from(n), BigInt::from(k));
        }
        acc
    }

    /// All exponent vectors of total degree `d` in `n` variables, ascending.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for k in 0..=left {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Same exponents re-indexed: position `i` moves to `map[i]` in a vector of length `n`.
    pub fn reindex(&self, map: &[usize], n: usize) -> Monomial {
        let mut e = vec![0; n];
        for (i, &x) in self.0.iter().enumerate() {
            e[map[i]] += x;
        }
        Monomial(e)
    }

    pub fn format(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An extended natural number: orders of polynomials (∞ for zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A nonnegative rational or ∞; `Finite < Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinite,
}

impl ExtRational {
    pub fn integer(n: i64) -> ExtRational {
        ExtRational::Finite(BigRational::from_integer(n.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinite => None,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{}", super::field::format_rational(q)),
            ExtRational::Infinite => write!(f, "inf"),
        }
    }
}

/// Sparse polynomial. `precision = Some(D)` marks a power series truncated
/// above total degree `D`; `truncated` records that terms were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
    precision: Option<u32>,
    truncated: bool,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Poly {
        Poly { field, nvars, terms: BTreeMap::new(), precision: None, truncated: false }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Poly {
        Poly::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Poly {
        Poly::constant(field, nvars, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Poly {
        Poly::monomial(field, Monomial::unit(nvars, i), field.one())
    }

    pub fn monomial(field: Field, m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero(field, m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(field: Field, nvars: usize, terms: I) -> Poly {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(d) = self.precision {
            if m.degree() > d {
                self.truncated = true;
                return;
            }
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Marks the value as a power series known up to degree `d`, dropping higher terms.
    pub fn with_precision(mut self, d: u32) -> Poly {
        let d = self.precision.map_or(d, |p| p.min(d));
        self.precision = Some(d);
        let before = self.terms.len();
        self.terms.retain(|m, _| m.degree() <= d);
        if self.terms.len() != before {
            self.truncated = true;
        }
        self
    }

    fn combined(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        let precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: BTreeMap::new(),
            precision,
            truncated: self.truncated || other.truncated,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn order_origin(&self) -> Order {
        self.terms.keys().next().map_or(Order::Infinite, |m| Order::Finite(m.degree()))
    }

    /// Minimum partial degree in the given variable indices.
    pub fn order_along(&self, idx: &[usize]) -> Order {
        self.terms.keys().map(|m| m.partial_degree(idx)).min().map_or(Order::Infinite, Order::Finite)
    }

    pub fn order_along_names(&self, split: &VarSplit, names: &[&str]) -> Result<Order> {
        if names.is_empty() {
            return Err(Error::Input("order_along needs a nonempty variable set".into()));
        }
        let idx = names.iter().map(|n| split.require_index(n)).collect::<Result<Vec<_>>>()?;
        Ok(self.order_along(&idx))
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut p = self.combined(self);
        p.truncated = self.truncated;
        for (m, c) in &self.terms {
            if m.degree() == d {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// `in(f, b)`: the degree-b part when `b` is a positive integer, zero otherwise.
    pub fn initial_form(&self, b: &BigRational) -> Result<Poly> {
        if let Order::Finite(o) = self.order_origin() {
            if BigRational::from_integer(o.into()) < *b {
                return Err(Error::Precondition(format!(
                    "initial form with weight {} exceeds order {o}",
                    super::field::format_rational(b)
                )));
            }
        }
        if !b.is_integer() || *b <= BigRational::zero() {
            return Ok(Poly::zero(self.field, self.nvars));
        }
        let d: u32 = b.to_integer().try_into().map_err(|_| Error::Input("weight too large".into()))?;
        Ok(self.homogeneous_part(d))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = self.combined(self);
        if c.is_zero() {
            return p;
        }
        for (m, a) in &self.terms {
            p.terms.insert(m.clone(), a * c);
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let mut p = self.combined(self);
        for (n, a) in &self.terms {
            p.add_term(n.mul(m), a.clone());
        }
        p
    }

    /// Exact division by `x_i^k`; `None` if some term is not divisible.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<Poly> {
        let mut p = self.combined(self);
        for (m, a) in &self.terms {
            if m.0[i] < k {
                return None;
            }
            let mut e = m.0.clone();
            e[i] -= k;
            p.terms.insert(Monomial(e), a.clone());
        }
        Some(p)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        acc.precision = self.precision;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Hasse derivative `D_M`: `D_M(x^E) = binom(E, M) x^{E-M}`.
    pub fn hasse_derive(&self, m: &Monomial) -> Poly {
        let mut p = self.combined(self);
        for (e, a) in &self.terms {
            if let Some(rest) = e.div(m) {
                let c = self.field.from_bigint(&e.binomial(m));
                p.add_term(rest, a * &c);
            }
        }
        p
    }

    /// Logarithmic Hasse derivative `x^M D_M`; its support is contained in the input's.
    pub fn hasse_derive_log(&self, m: &Monomial) -> Poly {
        let mut p = self.combined(self);
        for (e, a) in &self.terms {
            if m.divides(e) {
                let c = self.field.from_bigint(&e.binomial(m));
                p.add_term(e.clone(), a * &c);
            }
        }
        p
    }

    /// Ring homomorphism sending `x_i` to `assignment[i]` (or itself when `None`).
    pub fn substitute(&self, assignment: &[Option<Poly>]) -> Poly {
        assert_eq!(assignment.len(), self.nvars, "assignment arity");
        let mut acc = self.combined(self);
        for r in assignment.iter().flatten() {
            acc = acc.combined(r);
        }
        let template = acc.clone();
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        for (m, a) in &self.terms {
            let mut kept = vec![0u32; self.nvars];
            let mut term = template.clone();
            term.add_term(Monomial::one(self.nvars), a.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &assignment[i] {
                    None => kept[i] = e,
                    Some(r) => {
                        let pw = cache.entry((i, e)).or_insert_with(|| r.pow(e));
                        term = &term * &*pw;
                    }
                }
            }
            let term = term.mul_monomial(&Monomial(kept));
            acc = &acc + &term;
        }
        acc
    }

    /// Substitution by variable names of `split`.
    pub fn substitute_names(&self, split: &VarSplit, assignment: &[(&str, Poly)]) -> Result<Poly> {
        let mut a: Vec<Option<Poly>> = vec![None; self.nvars];
        for (name, p) in assignment {
            let i = split.require_index(name)?;
            a[i] = Some(p.clone());
        }
        Ok(self.substitute(&a))
    }

    /// Moves variable `i` to index `map[i]` in a ring with `n` variables.
    pub fn reindex(&self, map: &[usize], n: usize) -> Poly {
        let mut p = Poly { field: self.field, nvars: n, terms: BTreeMap::new(), precision: self.precision, truncated: self.truncated };
        for (m, a) in &self.terms {
            p.add_term(m.reindex(map, n), a.clone());
        }
        p
    }

    /// Embeds into a ring with `n ≥ nvars` variables, new ones appended.
    pub fn extend_vars(&self, n: usize) -> Poly {
        assert!(n >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.reindex(&map, n)
    }

    /// Removes the given variable indices; they must not occur in any term.
    pub fn drop_vars(&self, keep: &[usize]) -> Poly {
        let n = keep.len();
        let mut p = Poly { field: self.field, nvars: n, terms: BTreeMap::new(), precision: self.precision, truncated: self.truncated };
        for (m, a) in &self.terms {
            debug_assert_eq!(m.degree(), m.partial_degree(keep), "dropped variable occurs");
            let e: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            p.add_term(Monomial(e), a.clone());
        }
        p
    }

    /// Sum of all monomials of `self` restricted to those with partial degree `d`
    /// in `idx`, as a map from the `idx`-exponents to the remaining polynomial.
    pub fn expand_in(&self, idx: &[usize]) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, a) in &self.terms {
            let key: Vec<u32> = idx.iter().map(|&i| m.0[i]).collect();
            let mut rest = m.0.clone();
            for &i in idx {
                rest[i] = 0;
            }
            let entry = out.entry(key).or_insert_with(|| {
                let mut z = Poly::zero(self.field, self.nvars);
                z.precision = self.precision;
                z.truncated = self.truncated;
                z
            });
            entry.add_term(Monomial(rest), a.clone());
        }
        out
    }

    pub fn format(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let q = c.signed_rational();
            let neg = q < BigRational::zero();
            let abs = if neg { -q } else { q };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format(names);
            let is_const = m.degree() == 0;
            if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&super::field::format_rational(&abs));
                if !is_const {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.combined(rhs);
        for (m, a) in self.terms.iter().chain(&rhs.terms) {
            p.add_term(m.clone(), a.clone());
        }
        p
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -&*c;
        }
        p
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = self.combined(rhs);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                p.add_term(m.mul(n), a * b);
            }
        }
        p
    }
}
