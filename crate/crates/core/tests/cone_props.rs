mod common;

use idexp::algebra::{Field, Monomial, Poly};
use idexp::cone::{
    dir_rid_pairs, directrix, graded_names, itc_pair, linear_coeffs, ridge, tangent_cone, HomogIdeal,
};
use idexp::linalg::{self, RowSpace};
use idexp::pairs::{products, PairSystem};
use idexp::fixtures;
use proptest::prelude::*;
use rand::Rng;

fn singular(seed: u64) -> PairSystem {
    let mut g = common::rng(seed);
    common::random_singular_pair(&mut g, common::FIELDS[(seed % 3) as usize])
}

fn small_ideal(seed: u64) -> HomogIdeal {
    let mut g = common::rng(seed);
    let field = [Field::Rationals, Field::Prime(2), Field::Prime(3)][(seed % 3) as usize];
    let n = g.gen_range(1..=3);
    let gens: Vec<Poly> = (0..g.gen_range(1..=2))
        .map(|_| {
            let d = g.gen_range(1..=4);
            common::random_form(&mut g, field, n, d)
        })
        .filter(|f| !f.is_zero())
        .collect();
    HomogIdeal::new(field, ["X", "Y", "Z"][..n].iter().map(|s| s.to_string()).collect(), gens).unwrap()
}

/// Rewrites `f` in coordinates whose first `k` entries are the given linear
/// forms; the remaining ones complete them with unit vectors.
fn in_adapted_coordinates(f: &Poly, forms: &[Vec<idexp::algebra::Scalar>]) -> (Poly, usize) {
    let field = f.field();
    let n = f.nvars();
    let mut basis = RowSpace::from_rows(field, n, forms.iter().cloned());
    let mut rows: Vec<_> = forms.to_vec();
    for i in 0..n {
        let e = linalg::unit(field, n, i);
        if basis.insert(e.clone()) {
            rows.push(e);
        }
    }
    // new coordinates W = A X, so X = A^{-1} W
    let inv = linalg::inverse(field, &rows).expect("completed basis is invertible");
    let assign: Vec<Option<Poly>> = inv
        .iter()
        .map(|row| {
            Some(row.iter().enumerate().fold(Poly::zero(field, n), |acc, (j, c)| {
                &acc + &Poly::var(field, n, j).scale(c)
            }))
        })
        .collect();
    (f.substitute(&assign), forms.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tangent_cone_of_a_power(seed in any::<u64>(), a in 2u32..=3) {
        let s = singular(seed);
        let base = tangent_cone(&s).unwrap();
        let lhs = tangent_cone(&PairSystem::single(s.components()[0].power(a))).unwrap();
        let rhs = HomogIdeal::new(s.field(), graded_names(s.split()), products(base.generators(), a)).unwrap();
        prop_assert!(lhs.same_ideal(&rhs));
    }

    /// In coordinates `(W_dir, W_rest)` the ideal is stable under every Hasse
    /// derivative in the `W_rest` directions, i.e. generated inside `K[W_dir]`.
    #[test]
    fn ideal_is_translation_invariant_off_the_directrix(seed in any::<u64>()) {
        let i = small_ideal(seed);
        let dir = directrix(&i).unwrap();
        let forms: Vec<_> = dir.forms().iter().map(linear_coeffs).collect();
        let moved: Vec<Poly> = i.generators().iter().map(|g| in_adapted_coordinates(g, &forms).0).collect();
        let k = forms.len();
        let n = i.nvars();
        let j = HomogIdeal::new(i.field(), i.names().iter().map(|s| s.to_string()).collect(), moved.clone()).unwrap();
        for h in &moved {
            for d in 1..=h.degree().unwrap_or(0) {
                for m in Monomial::all_of_degree(n - k, d) {
                    let full = Monomial::new([vec![0; k], m.exps().to_vec()].concat());
                    prop_assert!(j.contains(&h.hasse_derive(&full)), "{}: D_{:?} leaves the ideal", i.format(), full.exps());
                }
            }
        }
    }

    #[test]
    fn ridge_generates_the_cone(seed in any::<u64>()) {
        let i = small_ideal(seed);
        let r = ridge(&i).unwrap();
        let alg: Vec<Poly> = r.iter().map(|a| a.to_poly(i.field())).collect();
        let top = i.max_degree();
        let pieces = i.pieces(top);
        prop_assert!(idexp::cone::graded::subalgebra_generates(&pieces, i.generators(), &alg));
    }

    #[test]
    fn singular_locus_chain(seed in any::<u64>()) {
        let s = singular(seed);
        let dr = dir_rid_pairs(&s).unwrap();
        let itc = itc_pair(&s).unwrap();
        if PairSystem::single(dr.dir.clone()).origin_in_sing() {
            prop_assert!(dr.rid.origin_in_sing());
        }
        if dr.rid.origin_in_sing() {
            prop_assert!(itc.origin_in_sing());
        }
    }
}

#[test]
fn singular_locus_chain_on_fixtures() {
    let mut checked = 0;
    for f in fixtures::all() {
        let s = f.system();
        let Ok(dr) = dir_rid_pairs(&s) else { continue };
        let itc = itc_pair(&s).unwrap();
        checked += 1;
        if PairSystem::single(dr.dir.clone()).origin_in_sing() {
            assert!(dr.rid.origin_in_sing(), "{}", f.name);
        }
        if dr.rid.origin_in_sing() {
            assert!(itc.origin_in_sing(), "{}", f.name);
        }
    }
    assert!(checked >= 5);
}
