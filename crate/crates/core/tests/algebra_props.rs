use idexp::algebra::{parse_poly, Field, Monomial, Order, Poly, VarSplit};
use proptest::prelude::*;

const N: usize = 3;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

fn poly_in(f: Field) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..4, N), -5i64..=5), 0..6).prop_map(move |terms| {
        Poly::from_terms(f, N, terms.into_iter().map(|(e, c)| (Monomial::new(e), f.from_i64(c))))
    })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..3, N).prop_map(Monomial::new)
}

fn add_orders(a: Order, b: Order) -> Order {
    match (a, b) {
        (Order::Finite(x), Order::Finite(y)) => Order::Finite(x + y),
        _ => Order::Infinite,
    }
}

proptest! {
    #[test]
    fn order_is_additive((f, g) in field().prop_flat_map(|k| (poly_in(k), poly_in(k)))) {
        prop_assert_eq!((&f * &g).order_origin(), add_orders(f.order_origin(), g.order_origin()));
    }

    #[test]
    fn hasse_derivatives_compose((f, m, n) in field().prop_flat_map(|k| (poly_in(k), monomial(), monomial()))) {
        let lhs = f.hasse_derive(&n).hasse_derive(&m);
        let mn = m.mul(&n);
        let c = f.field().from_bigint(&mn.binomial(&m));
        prop_assert_eq!(lhs, f.hasse_derive(&mn).scale(&c));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        (f, g, images) in field().prop_flat_map(|k| (poly_in(k), poly_in(k), prop::collection::vec(prop::option::of(poly_in(k)), N)))
    ) {
        let sub = |p: &Poly| p.substitute(&images);
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
    }

    #[test]
    fn log_derivative_keeps_support((f, m) in field().prop_flat_map(|k| (poly_in(k), monomial()))) {
        let d = f.hasse_derive_log(&m);
        for (mono, _) in d.terms() {
            prop_assert!(!f.coeff(mono).is_zero());
        }
    }

    #[test]
    fn format_parses_back(f in field().prop_flat_map(poly_in)) {
        let split = VarSplit::new(&["a", "b"], &["c"]).unwrap();
        let text = f.format(&split.names());
        prop_assert_eq!(parse_poly(&text, &split, f.field()).unwrap(), f);
    }
}
