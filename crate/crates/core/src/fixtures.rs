//! Named built-in problems: the worked examples used by the tests and by
//! `idexp --fixture NAME`.

use crate::algebra::{Field, VarSplit};
use crate::error::{Error, Result};
use crate::pairs::{Pair, PairSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub summary: String,
    pub field: Field,
    pub u: Vec<String>,
    pub y: Vec<String>,
    /// `(generators, weight)` per component, in the polynomial grammar.
    pub pairs: Vec<(Vec<String>, String)>,
}

impl Fixture {
    fn new(name: &str, summary: &str, field: Field, u: &[&str], y: &[&str], pairs: &[(&[&str], &str)]) -> Fixture {
        Fixture {
            name: name.to_string(),
            summary: summary.to_string(),
            field,
            u: u.iter().map(|s| s.to_string()).collect(),
            y: y.iter().map(|s| s.to_string()).collect(),
            pairs: pairs
                .iter()
                .map(|(g, b)| (g.iter().map(|s| s.to_string()).collect(), b.to_string()))
                .collect(),
        }
    }

    pub fn split(&self) -> VarSplit {
        VarSplit::new(&self.u, &self.y).expect("fixture variables are distinct")
    }

    pub fn system(&self) -> PairSystem {
        let split = self.split();
        let comps = self
            .pairs
            .iter()
            .map(|(g, b)| Pair::parse(self.field, &split, g, b).expect("fixture parses"))
            .collect();
        PairSystem::new(comps).expect("fixture components share a ring")
    }
}

fn fp(p: u64) -> Field {
    Field::prime(p).expect("prime")
}

/// `y² + u₁⁷u₂³` with vertex `(7/2, 3/2)`.
pub fn delta_five() -> Fixture {
    Fixture::new("delta-five", "(y^2 + u1^7*u2^3, 2)", Field::Rationals, &["u1", "u2"], &["y"], &[
        (&["y^2 + u1^7*u2^3"], "2"),
    ])
}

/// The same pair after `y = z + u₁²`.
pub fn delta_five_z(field: Field) -> Fixture {
    let name = match field {
        Field::Rationals => "delta-five-z".to_string(),
        Field::Prime(p) => format!("delta-five-z-f{p}"),
    };
    Fixture::new(&name, "(z^2 + 2*z*u1^2 + u1^4 + u1^7*u2^3, 2)", field, &["u1", "u2"], &["z"], &[
        (&["z^2 + 2*z*u1^2 + u1^4 + u1^7*u2^3"], "2"),
    ])
}

/// `E₁ = (z^d − x^{d−1}y^{d−1}, d) ∩ (t, 1)`, over `u = (x, y)`, `y = (t, z)`.
pub fn poly_not_unique_e1(d: u32) -> Fixture {
    assert!(d >= 2);
    let g = format!("z^{d} - x^{}*y^{}", d - 1, d - 1);
    let b = d.to_string();
    Fixture::new(&format!("poly-not-unique-e1-d{d}"), &format!("({g}, {d}) ∩ (t, 1)"), Field::Rationals, &["x", "y"], &[
        "t", "z",
    ], &[(&[g.as_str()], b.as_str()), (&["t"], "1")])
}

/// `E₂ = (z^d − x^{d−1}y^{d−1}, d) ∩ (t^{d−1} − x^{d−2}y^{d−1}, d − 1)`.
pub fn poly_not_unique_e2(d: u32) -> Fixture {
    assert!(d >= 2);
    let g1 = format!("z^{d} - x^{}*y^{}", d - 1, d - 1);
    let g2 = format!("t^{} - x^{}*y^{}", d - 1, d - 2, d - 1);
    let (b1, b2) = (d.to_string(), (d - 1).to_string());
    Fixture::new(
        &format!("poly-not-unique-e2-d{d}"),
        &format!("({g1}, {d}) ∩ ({g2}, {})", d - 1),
        Field::Rationals,
        &["x", "y"],
        &["t", "z"],
        &[(&[g1.as_str()], b1.as_str()), (&[g2.as_str()], b2.as_str())],
    )
}

/// Characteristic three, where the ideal and pair polyhedra differ.
pub fn char_three() -> Fixture {
    Fixture::new("char-three", "(<z1^2 + u1^3, z2^3 + z2^2*u2^2 + u2^9>, 2) over F_3", fp(3), &["u1", "u2"], &[
        "z1", "z2",
    ], &[(&["z1^2 + u1^3", "z2^3 + z2^2*u2^2 + u2^9"], "2")])
}

/// `p = 3, n = 2, h₁ = u₁⁵, h₂ = 0` in the `y`-presentation.
pub fn assump_y() -> Fixture {
    Fixture::new("assump-y", "(<y1^2 + u1^5, u3*y2 + (y2 + u2^2)^3>, 2) over F_3", fp(3), &["u1", "u2", "u3"], &[
        "y1", "y2",
    ], &[(&["y1^2 + u1^5", "u3*y2 + (y2 + u2^2)^3"], "2")])
}

/// The same pair in `z = (y₁, y₂ + u₂²)`.
pub fn assump_z() -> Fixture {
    Fixture::new(
        "assump-z",
        "(<z1^2 + u1^5, u3*z2 - u2^2*u3 + z2^3>, 2) over F_3",
        fp(3),
        &["u1", "u2", "u3"],
        &["z1", "z2"],
        &[(&["z1^2 + u1^5", "u3*z2 - u2^2*u3 + z2^3"], "2")],
    )
}

/// The directrix needs `u₃`, and `u₃y` puts `(0, 0, 1)` in the polyhedron.
pub fn delta_eins() -> Fixture {
    Fixture::new("delta-eins", "(y^2 + u3*y + u1^3, 2)", Field::Rationals, &["u1", "u2", "u3"], &["y"], &[
        (&["y^2 + u3*y + u1^3"], "2"),
    ])
}

pub fn numexp_first() -> Fixture {
    Fixture::new("numexp-1", "(y^3, 2)", Field::Rationals, &[], &["y"], &[(&["y^3"], "2")])
}

pub fn numexp_second() -> Fixture {
    Fixture::new("numexp-2", "(y^3, 3)", Field::Rationals, &[], &["y"], &[(&["y^3"], "3")])
}

pub fn cusp_first() -> Fixture {
    Fixture::new("cusp-1", "(y^2 + x^3, 2)", Field::Rationals, &["x"], &["y"], &[(&["y^2 + x^3"], "2")])
}

pub fn cusp_second() -> Fixture {
    Fixture::new("cusp-2", "(x^2 + y^3, 2)", Field::Rationals, &["x"], &["y"], &[(&["x^2 + y^3"], "2")])
}

/// Two generators of order two; either can supply the maximal-contact variable.
pub fn max_contact() -> Fixture {
    Fixture::new("max-contact", "(<y^2 - u^3, y^2 + 2*y*u^3 + u^7>, 2)", Field::Rationals, &["u"], &["y"], &[(
        &["y^2 - u^3", "y^2 + 2*y*u^3 + u^7"],
        "2",
    )])
}

/// Tangent cone `<X^2 + Y^2>` over `F_2`.
pub fn ridge_f2() -> Fixture {
    Fixture::new("ridge-f2", "(x^2 + y^2 + x^3, 2) over F_2", fp(2), &["x"], &["y"], &[(&["x^2 + y^2 + x^3"], "2")])
}

pub fn all() -> Vec<Fixture> {
    let mut v = vec![delta_five(), delta_five_z(Field::Rationals), delta_five_z(fp(5))];
    for d in 2..=5 {
        v.push(poly_not_unique_e1(d));
        v.push(poly_not_unique_e2(d));
    }
    v.extend([
        char_three(),
        assump_y(),
        assump_z(),
        delta_eins(),
        numexp_first(),
        numexp_second(),
        cusp_first(),
        cusp_second(),
        max_contact(),
        ridge_f2(),
    ]);
    v
}

/// The second system for two-system commands (`probe-equiv`), if any.
pub fn partner(name: &str) -> Option<Fixture> {
    if let Some(d) = name.strip_prefix("poly-not-unique-e1-d") {
        return d.parse().ok().map(poly_not_unique_e2);
    }
    if let Some(d) = name.strip_prefix("poly-not-unique-e2-d") {
        return d.parse().ok().map(poly_not_unique_e1);
    }
    match name {
        "numexp-1" => Some(numexp_second()),
        "numexp-2" => Some(numexp_first()),
        "cusp-1" => Some(cusp_second()),
        "cusp-2" => Some(cusp_first()),
        _ => None,
    }
}

pub fn by_name(name: &str) -> Result<Fixture> {
    all().into_iter().find(|f| f.name == name).ok_or_else(|| {
        let names: Vec<String> = all().into_iter().map(|f| f.name).collect();
        Error::Input(format!("unknown fixture `{name}`; known: {}", names.join(", ")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_builds() {
        for f in all() {
            let s = f.system();
            assert_eq!(s.components().len(), f.pairs.len(), "{}", f.name);
        }
        assert!(by_name("delta-five").is_ok());
        assert!(matches!(by_name("nope"), Err(Error::Input(_))));
        assert_eq!(partner("poly-not-unique-e1-d3"), Some(poly_not_unique_e2(3)));
        assert_eq!(partner("delta-five"), None);
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<String> = all().into_iter().map(|f| f.name).collect();
        names.sort();
        let n = names.len();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}
