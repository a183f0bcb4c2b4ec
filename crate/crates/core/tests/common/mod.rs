//! Seeded random systems shared by the integration suites.
#![allow(dead_code)]

use idexp::algebra::{parse_rational, Field, Monomial, Poly, Scalar, VarSplit};
use idexp::pairs::{Pair, PairSystem};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub const FIELDS: [Field; 3] = [Field::Rationals, Field::Prime(2), Field::Prime(3)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn split(e: usize, r: usize) -> VarSplit {
    let u: Vec<String> = (1..=e).map(|i| format!("u{i}")).collect();
    let y: Vec<String> = (1..=r).map(|i| format!("y{i}")).collect();
    VarSplit::new(&u, &y).unwrap()
}

/// Exponent vector of total degree `d` spread over `idx`.
pub fn random_exponents(rng: &mut ChaCha8Rng, n: usize, idx: &[usize], d: u32) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[*idx.choose(rng).unwrap()] += 1;
    }
    e
}

fn coefficient(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A polynomial with 1..=4 terms of total degree in `lo..=hi`: one pure `y`
/// term, the others of `y`-degree at most 1 so they contribute points.
pub fn random_poly(rng: &mut ChaCha8Rng, field: Field, split: &VarSplit, lo: u32, hi: u32) -> Poly {
    let n = split.len();
    let (us, ys) = (split.u_side(), split.y_side());
    let d = rng.gen_range(lo.max(1)..=hi);
    let mut terms = vec![(Monomial::new(random_exponents(rng, n, &ys, d)), coefficient(rng, field))];
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(lo.max(1)..=hi);
        let yd = if us.is_empty() { d } else { rng.gen_range(0..=1.min(d - 1)) };
        let mut e = random_exponents(rng, n, &us, d - yd);
        for (a, b) in e.iter_mut().zip(random_exponents(rng, n, &ys, yd)) {
            *a += b;
        }
        terms.push((Monomial::new(e), coefficient(rng, field)));
    }
    Poly::from_terms(field, n, terms)
}

/// One of the suite's systems: 1 or 2 components, 1 or 2 generators each,
/// weights in {1, 2, 3, 3/2}, at most 3 variables per block, degree at most 6.
pub fn random_system(rng: &mut ChaCha8Rng, field: Field) -> PairSystem {
    let e = rng.gen_range(1..=3);
    let r = rng.gen_range(1..=3);
    let s = split(e, r);
    let weights = ["1", "2", "3", "3/2"];
    let comps = (0..rng.gen_range(1..=2))
        .map(|_| {
            let gens: Vec<Poly> =
                (0..rng.gen_range(1..=2)).map(|_| random_poly(rng, field, &s, 1, 6)).filter(|p| !p.is_zero()).collect();
            let b: BigRational = parse_rational(weights.choose(rng).unwrap()).unwrap();
            Pair::new(field, s.clone(), gens, b).unwrap()
        })
        .collect();
    PairSystem::new(comps).unwrap()
}

/// The 100-case suite: fields cycle through Q, F_2, F_3.
pub fn suite(seed: u64, n: usize) -> Vec<PairSystem> {
    let mut g = rng(seed);
    (0..n).map(|i| random_system(&mut g, FIELDS[i % 3])).collect()
}

/// A single pair `(J, b)` with integral `b` whose generators have order at
/// least `b`, so the origin is singular and the tangent cone is defined.
pub fn random_singular_pair(rng: &mut ChaCha8Rng, field: Field) -> PairSystem {
    let e = rng.gen_range(0..=2);
    let r = rng.gen_range(1..=3);
    let s = split(e, r);
    let b: u32 = rng.gen_range(1..=3);
    let gens: Vec<Poly> =
        (0..rng.gen_range(1..=2)).map(|_| random_poly(rng, field, &s, b, b + 2)).filter(|p| !p.is_zero()).collect();
    PairSystem::single(Pair::new(field, s, gens, BigRational::from_integer(b.into())).unwrap())
}

/// A random homogeneous polynomial of degree `d` in `n` variables.
pub fn random_form(rng: &mut ChaCha8Rng, field: Field, n: usize, d: u32) -> Poly {
    let all: Vec<usize> = (0..n).collect();
    let terms: Vec<_> = (0..rng.gen_range(1..=3))
        .map(|_| (Monomial::new(random_exponents(rng, n, &all, d)), coefficient(rng, field)))
        .collect();
    Poly::from_terms(field, n, terms)
}
