//! Degree-wise linear algebra on homogeneous ideals of `K[W_1..W_n]`.

use std::collections::HashMap;

use crate::algebra::{Field, Monomial, Poly, Scalar};
use crate::linalg::RowSpace;

/// Monomials of one degree with their coordinate positions.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(n: usize, d: u32) -> DegreeBasis {
        let monomials = Monomial::all_of_degree(n, d);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn vector(&self, f: &Poly) -> Vec<Scalar> {
        let mut v = vec![f.field().zero(); self.len()];
        for (m, c) in f.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn poly(&self, field: Field, n: usize, v: &[Scalar]) -> Poly {
        Poly::from_terms(field, n, self.monomials.iter().cloned().zip(v.iter().cloned()))
    }
}

/// A homogeneous ideal with its graded pieces `I_d` computed up to a degree bound.
#[derive(Clone, Debug)]
pub struct GradedPieces {
    field: Field,
    n: usize,
    bases: Vec<DegreeBasis>,
    pieces: Vec<RowSpace>,
}

impl GradedPieces {
    /// `I_d` for `d ≤ top`: spans of `m·g` over generators `g` with `deg g ≤ d`.
    pub fn new(field: Field, n: usize, gens: &[Poly], top: u32) -> GradedPieces {
        let bases: Vec<DegreeBasis> = (0..=top).map(|d| DegreeBasis::new(n, d)).collect();
        let pieces = (0..=top).map(|d| span_of_multiples(field, gens, d, &bases)).collect();
        GradedPieces { field, n, bases, pieces }
    }

    pub fn top(&self) -> u32 {
        (self.pieces.len() - 1) as u32
    }

    pub fn basis(&self, d: u32) -> &DegreeBasis {
        &self.bases[d as usize]
    }

    pub fn piece(&self, d: u32) -> &RowSpace {
        &self.pieces[d as usize]
    }

    /// Membership of a homogeneous polynomial of degree `≤ top`.
    pub fn contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        let d = f.degree().unwrap();
        assert!(f.is_homogeneous() && d <= self.top(), "membership needs a homogeneous polynomial within the bound");
        self.pieces[d as usize].contains(&self.bases[d as usize].vector(f))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }
}

/// Span in degree `d` of all `m·g` with `g` homogeneous of degree `≤ d`.
pub fn span_of_multiples(field: Field, gens: &[Poly], d: u32, bases: &[DegreeBasis]) -> RowSpace {
    let target = &bases[d as usize];
    let mut s = RowSpace::zero(field, target.len());
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in &bases[(d - dg) as usize].monomials {
            s.insert(target.vector(&g.mul_monomial(m)));
            if s.dim() == target.len() {
                return s;
            }
        }
    }
    s
}

/// Does the ideal generated by `I ∩ A` contain every generator, where `A` is the
/// subalgebra generated by the homogeneous polynomials `alg`?
pub fn subalgebra_generates(pieces: &GradedPieces, gens: &[Poly], alg: &[Poly]) -> bool {
    let field = pieces.field();
    let n = pieces.nvars();
    let top = gens.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let alg_degrees: Vec<u32> = alg.iter().map(|a| a.degree().expect("nonzero algebra generator")).collect();
    // (I ∩ A)_d for 1 ≤ d ≤ top, as homogeneous polynomials
    let mut meets: Vec<Vec<Poly>> = vec![Vec::new(); top as usize + 1];
    for d in 1..=top {
        let basis = pieces.basis(d);
        let mut a_d = RowSpace::zero(field, basis.len());
        for prod in algebra_products(alg, &alg_degrees, d) {
            a_d.insert(basis.vector(&prod));
        }
        if a_d.dim() == 0 {
            continue;
        }
        let meet = a_d.intersect(pieces.piece(d));
        meets[d as usize] = meet.rows().iter().map(|v| basis.poly(field, n, v)).collect();
    }
    let generated: Vec<Poly> = meets.into_iter().flatten().collect();
    gens.iter().all(|g| {
        let Some(d) = g.degree() else { return true };
        let bases: Vec<DegreeBasis> = (0..=d).map(|k| pieces.basis(k).clone()).collect();
        let span = span_of_multiples(field, &generated, d, &bases);
        span.contains(&pieces.basis(d).vector(g))
    })
}

/// All products of the algebra generators of total degree exactly `d`.
fn algebra_products(alg: &[Poly], degs: &[u32], d: u32) -> Vec<Poly> {
    fn rec(alg: &[Poly], degs: &[u32], start: usize, left: u32, acc: &Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..alg.len() {
            if degs[i] <= left {
                rec(alg, degs, i, left - degs[i], &(acc * &alg[i]), out);
            }
        }
    }
    let mut out = Vec::new();
    if let Some(first) = alg.first() {
        rec(alg, degs, 0, d, &Poly::one(first.field(), first.nvars()), &mut out);
    }
    out
}

/// Linear form `Σ v_i W_i`.
pub fn linear_form(field: Field, v: &[Scalar]) -> Poly {
    let n = v.len();
    Poly::from_terms(field, n, v.iter().enumerate().map(|(i, c)| (Monomial::unit(n, i), c.clone())))
}

/// Coefficient vector of a linear form.
pub fn linear_coeffs(f: &Poly) -> Vec<Scalar> {
    let n = f.nvars();
    (0..n).map(|i| f.coeff(&Monomial::unit(n, i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, VarSplit};

    #[test]
    fn graded_membership() {
        let s = VarSplit::new(&["X", "Y"], &[] as &[&str]).unwrap();
        let q = Field::Rationals;
        let g = vec![parse_poly("X^2 - Y^2", &s, q).unwrap()];
        let pieces = GradedPieces::new(q, 2, &g, 3);
        assert!(pieces.contains(&parse_poly("X^3 - X*Y^2", &s, q).unwrap()));
        assert!(!pieces.contains(&parse_poly("X^3", &s, q).unwrap()));
        assert_eq!(pieces.piece(3).dim(), 2);
    }

    #[test]
    fn subalgebra_test_on_a_square() {
        let s = VarSplit::new(&["X", "Y"], &[] as &[&str]).unwrap();
        let f2 = Field::prime(2).unwrap();
        let g = vec![parse_poly("X^2 + Y^2", &s, f2).unwrap()];
        let pieces = GradedPieces::new(f2, 2, &g, 2);
        let x_plus_y = parse_poly("X + Y", &s, f2).unwrap();
        assert!(subalgebra_generates(&pieces, &g, std::slice::from_ref(&x_plus_y)));
        assert!(subalgebra_generates(&pieces, &g, &[x_plus_y.pow(2)]));
        assert!(!subalgebra_generates(&pieces, &g, &[parse_poly("X", &s, f2).unwrap()]));
    }
}
