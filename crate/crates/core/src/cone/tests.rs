use super::*;
use crate::algebra::parse_poly;

fn q() -> Field {
    Field::Rationals
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn split(u: &[&str], y: &[&str]) -> VarSplit {
    VarSplit::new(u, y).unwrap()
}

fn system(field: Field, s: &VarSplit, pairs: &[(&[&str], &str)]) -> PairSystem {
    PairSystem::new(pairs.iter().map(|(g, b)| Pair::parse(field, s, g, b).unwrap()).collect()).unwrap()
}

fn ideal(field: Field, names: &[&str], gens: &[&str]) -> HomogIdeal {
    let s = split(&[], names);
    let polys = gens.iter().map(|g| parse_poly(g, &s, field).unwrap()).collect();
    HomogIdeal::new(field, names.iter().map(|n| n.to_string()).collect(), polys).unwrap()
}

fn span_of(field: Field, names: &[&str], forms: &[&str]) -> LinearSpan {
    let s = split(&[], names);
    let polys: Vec<Poly> = forms.iter().map(|g| parse_poly(g, &s, field).unwrap()).collect();
    LinearSpan::from_forms(field, names.len(), &polys)
}

#[test]
fn tangent_cone_examples() {
    let s = split(&["u1", "u2"], &["y"]);
    let e = system(q(), &s, &[(&["y^2 + u1^7*u2^3"], "2")]);
    let tc = tangent_cone(&e).unwrap();
    assert_eq!(tc.format(), "<Y^2>");

    let e = system(q(), &s, &[(&["y^3"], "3/2")]);
    assert!(tangent_cone(&e).unwrap().is_zero());

    let s = split(&["x", "y"], &["z", "t"]);
    let e = system(q(), &s, &[(&["z^2 - x*y"], "2"), (&["t"], "1")]);
    let tc = tangent_cone(&e).unwrap();
    let expected = ideal(q(), &["X", "Y", "Z", "T"], &["Z^2 - X*Y", "T"]);
    assert!(tc.same_ideal(&expected));
}

#[test]
fn tangent_cone_requires_singular_origin() {
    let s = split(&["u"], &["y"]);
    let e = system(q(), &s, &[(&["y + u^2"], "2")]);
    assert!(matches!(tangent_cone(&e), Err(Error::Precondition(_))));
}

#[test]
fn itc_pair_examples() {
    let s = split(&["u1", "u2"], &["y"]);
    let e = system(q(), &s, &[(&["y^2 + u1^7*u2^3"], "2")]);
    let itc = itc_pair(&e).unwrap();
    assert_eq!(itc.components().len(), 1);
    assert_eq!(itc.components()[0].format(), "(<Y^2>, 2)");

    let e = system(q(), &s, &[(&["y^3"], "3/2"), (&["y^2"], "2")]);
    let itc = itc_pair(&e).unwrap();
    assert!(itc.components()[0].is_zero_ideal());
    assert_eq!(itc.components()[0].weight(), &BigRational::new(3.into(), 2.into()));
}

#[test]
fn itc_of_power_is_power_of_itc() {
    let s = split(&["u"], &["y", "z"]);
    let e = system(q(), &s, &[(&["y^2 + u^3", "y*z + z^3"], "2")]);
    for a in 1..=3 {
        let lhs = tangent_cone(&PairSystem::single(e.components()[0].power(a))).unwrap();
        let base = tangent_cone(&e).unwrap();
        let rhs = HomogIdeal::new(q(), graded_names(&s), crate::pairs::products(base.generators(), a)).unwrap();
        assert!(lhs.same_ideal(&rhs), "a = {a}");
    }
}

#[test]
fn directrix_examples() {
    let i = ideal(q(), &["Y"], &["Y^2"]);
    assert_eq!(directrix(&i).unwrap(), span_of(q(), &["Y"], &["Y"]));

    let i = ideal(q(), &["X", "Y", "Z"], &["Z^2 - X*Y"]);
    assert_eq!(directrix(&i).unwrap().dim(), 3);

    let i = ideal(fp(2), &["X", "Y"], &["X^2 + Y^2"]);
    assert_eq!(directrix(&i).unwrap(), span_of(fp(2), &["X", "Y"], &["X + Y"]));

    let i = ideal(q(), &["X", "Y", "Z"], &["X", "Y^2 + X*Z"]);
    assert_eq!(directrix(&i).unwrap(), span_of(q(), &["X", "Y", "Z"], &["X", "Y"]));

    assert_eq!(directrix(&ideal(q(), &["X", "Y"], &[])).unwrap().dim(), 0);
}

#[test]
fn derivative_method_misses_frobenius_powers() {
    let i = ideal(fp(3), &["X", "Y"], &["X^3"]);
    assert_eq!(derivative_directrix(&i).dim(), 0);
    assert_eq!(directrix(&i).unwrap(), span_of(fp(3), &["X", "Y"], &["X"]));
}

#[test]
fn ridge_examples() {
    let i = ideal(fp(2), &["X", "Y"], &["X^2 + Y^2"]);
    let r = ridge(&i).unwrap();
    assert_eq!(r, vec![AdditivePoly { q: 2, coeffs: vec![fp(2).one(), fp(2).one()] }]);
    assert_eq!(r[0].format(fp(2), &["X", "Y"]), "(X + Y)^2");

    for p in [2u64, 3, 5] {
        let f = fp(p);
        let i = ideal(f, &["Y"], &[&format!("Y^{p}")]);
        assert_eq!(ridge(&i).unwrap(), vec![AdditivePoly { q: p, coeffs: vec![f.one()] }]);
    }

    let i = ideal(q(), &["X", "Y", "Z"], &["Z^2 - X*Y"]);
    let r = ridge(&i).unwrap();
    assert_eq!(r.len(), 3);
    assert!(r.iter().all(|a| a.q == 1));
}

#[test]
fn ridge_mixes_levels() {
    // Y and Z are needed at level 0, X only through X^2 + Y^2
    let f = fp(2);
    let i = ideal(f, &["X", "Y", "Z"], &["X^2 + Y^2", "Y*Z"]);
    let r = ridge(&i).unwrap();
    let levels: Vec<u64> = r.iter().map(|a| a.q).collect();
    assert_eq!(levels, vec![1, 1, 2]);
    let dir = directrix(&i).unwrap();
    assert_eq!(dir.dim(), 3);
    for g in i.generators() {
        let alg: Vec<Poly> = r.iter().map(|a| a.to_poly(f)).collect();
        assert!(subalgebra_generates(&i.pieces(2), std::slice::from_ref(g), &alg));
    }
}

#[test]
fn ridge_budget_is_honest() {
    let i = ideal(fp(2), &["X", "Y", "Z"], &["X^2 + Y*Z"]);
    assert!(matches!(ridge_with_budget(&i, 1), Err(Error::Undetermined(_))));
    assert!(ridge_with_budget(&i, DEFAULT_SEARCH_BUDGET).is_ok());
}

#[test]
fn dir_rid_examples() {
    let s = split(&["u"], &["y"]);
    let e = system(q(), &s, &[(&["y^2 + u^5"], "2")]);
    let dr = dir_rid_pairs(&e).unwrap();
    assert_eq!(dr.dir.format(), "(<Y>, 1)");
    assert_eq!(dr.rid.format(), "(<Y>, 1)");
    assert_eq!(dr.reduction_matches, None);

    let s = split(&["x"], &["y"]);
    let e = system(fp(2), &s, &[(&["x^2 + y^2 + x^3"], "2")]);
    let dr = dir_rid_pairs(&e).unwrap();
    assert_eq!(dr.dir.format(), "(<X + Y>, 1)");
    assert_eq!(dr.rid.components().len(), 1);
    assert_eq!(dr.rid.components()[0].format(), "(<X^2 + Y^2>, 2)");
    assert_eq!(dr.reduction_matches, Some(true));

    let e = system(q(), &s, &[(&["y^3"], "5/2")]);
    let dr = dir_rid_pairs(&e).unwrap();
    assert!(dr.dir.is_zero_ideal());
    assert_eq!(dr.rid.components().len(), 1);
    assert!(dr.rid.components()[0].is_zero_ideal());
}

#[test]
fn singular_locus_chain_at_origin() {
    let s = split(&["x"], &["y", "z"]);
    let e = system(fp(3), &s, &[(&["y^3 + x^4", "z^2"], "2"), (&["z + x^2"], "1")]);
    let dr = dir_rid_pairs(&e).unwrap();
    let itc = itc_pair(&e).unwrap();
    if PairSystem::single(dr.dir.clone()).origin_in_sing() {
        assert!(dr.rid.origin_in_sing());
    }
    if dr.rid.origin_in_sing() {
        assert!(itc.origin_in_sing());
    }
}

#[test]
fn max_contact_examples() {
    let s = split(&["u"], &["y"]);
    let e = system(q(), &s, &[(&["y^2 + u^3"], "2")]);
    let mc = maximal_contact_directions(&e).unwrap();
    assert_eq!(mc.witnesses.len(), 1);
    let w = &mc.witnesses[0];
    // adapted coordinates put the directrix direction Y first
    assert_eq!(w.multi_index, Monomial::new(vec![1, 0]));
    assert_eq!(w.epsilon, q().from_i64(2));
    assert_eq!(w.y_star, vec![q().zero(), q().one()]);
    assert!(w.verify());

    let s = split(&[], &["y1", "y2"]);
    let e = system(q(), &s, &[(&["y1*y2"], "2")]);
    let mc = maximal_contact_directions(&e).unwrap();
    assert_eq!(mc.span.dim(), 2);
    assert!(mc.witnesses.iter().all(DirectionWitness::verify));
    assert_eq!(mc.witnesses[0].multi_index, Monomial::new(vec![0, 1]));
    assert_eq!(mc.witnesses[1].multi_index, Monomial::new(vec![1, 0]));

    let s = split(&["u"], &["y"]);
    let e = system(fp(2), &s, &[(&["y^2 + u^3"], "2")]);
    assert!(matches!(maximal_contact_directions(&e), Err(Error::UnsupportedCharacteristic(_))));
}

#[test]
fn max_contact_directions_span_the_directrix() {
    let s = split(&["u"], &["y", "z"]);
    let e = system(q(), &s, &[(&["(y + u)^2 + z^2 + u*z", "z^3"], "2")]);
    let mc = maximal_contact_directions(&e).unwrap();
    let dir = system_directrix(&e).unwrap();
    assert_eq!(mc.span, dir);
    assert!(mc.witnesses.iter().all(DirectionWitness::verify));
}
