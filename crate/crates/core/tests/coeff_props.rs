mod common;

use idexp::algebra::{Field, Monomial, Poly, VarSplit};
use idexp::coeff::{coeff_order, coefficient_pair, coefficient_pairs, maximal_contact, ContactChoice, ContactOptions};
use idexp::pairs::{Pair, PairSystem};
use idexp::polyhedra::pair_polyhedron;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn system(seed: u64) -> PairSystem {
    let mut g = common::rng(seed);
    common::random_system(&mut g, common::FIELDS[(seed % 3) as usize])
}

/// Random polynomial in the u-variables with every term of degree in `lo..=hi`.
fn u_poly(g: &mut ChaCha8Rng, field: Field, split: &VarSplit, lo: u32, hi: u32) -> Poly {
    let n = split.len();
    let us = split.u_side();
    let terms: Vec<_> = (0..g.gen_range(1..=3))
        .map(|_| {
            let d = g.gen_range(lo..=hi);
            (Monomial::new(common::random_exponents(g, n, &us, d)), field.from_i64(g.gen_range(1..=4)))
        })
        .collect();
    Poly::from_terms(field, n, terms)
}

/// `y² + y·g(u) + h(u)` with `g ∈ ⟨u⟩²`, `h ∈ ⟨u⟩³`: the y-block spans the directrix.
fn contact_generator(g: &mut ChaCha8Rng, field: Field, split: &VarSplit) -> Poly {
    let n = split.len();
    let y = Poly::var(field, n, split.y_side()[0]);
    &(&(&y * &y) + &(&y * &u_poly(g, field, split, 2, 3))) + &u_poly(g, field, split, 3, 5)
}

fn contact_pair(seed: u64, gens: usize) -> Pair {
    let mut g = common::rng(seed);
    let field = [Field::Rationals, Field::Prime(5), Field::Prime(7)][(seed % 3) as usize];
    let split = common::split(g.gen_range(1..=2), 1);
    let polys = (0..gens).map(|_| contact_generator(&mut g, field, &split)).collect();
    Pair::new(field, split, polys, BigRational::from_integer(2.into())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coeff_order_is_delta(seed in any::<u64>()) {
        let s = system(seed);
        prop_assert_eq!(coeff_order(&coefficient_pairs(&s)), pair_polyhedron(&s).delta());
    }

    #[test]
    fn coeff_order_survives_powers(seed in any::<u64>(), a in 1u32..=3) {
        let s = system(seed);
        let powered = s.map_components(|c| c.power(a));
        prop_assert_eq!(coeff_order(&coefficient_pairs(&powered)), coeff_order(&coefficient_pairs(&s)));
    }

    #[test]
    fn contact_coordinate_kills_the_linear_term(seed in any::<u64>()) {
        let e = contact_pair(seed, 1);
        let mc = maximal_contact(&e, &ContactOptions::default()).unwrap();
        prop_assert!(!mc.truncated);
        prop_assert!(mc.witnesses.iter().all(|w| w.verify(e.split())));
        let cp = coefficient_pair(&mc.reexpanded);
        prop_assert!(cp.level(1).iter().all(Poly::is_zero), "level 1 of {}", mc.reexpanded.format());
    }

    #[test]
    fn contact_choices_agree_on_the_polyhedron(seed in any::<u64>()) {
        let e = contact_pair(seed, 2);
        let run = |choice| maximal_contact(&e, &ContactOptions { choice, ..ContactOptions::default() }).unwrap();
        let (first, last) = (run(ContactChoice::First), run(ContactChoice::Last));
        prop_assert_eq!(
            pair_polyhedron(&PairSystem::single(first.reexpanded)),
            pair_polyhedron(&PairSystem::single(last.reexpanded))
        );
    }
}
