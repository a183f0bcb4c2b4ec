mod common;

use idexp::algebra::{Monomial, Poly};
use idexp::pairs::{run_lsb, BlowupChart, LsbStep, PairSystem};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn system(seed: u64) -> PairSystem {
    let mut g = common::rng(seed);
    let field = common::FIELDS[(seed % 3) as usize];
    common::random_system(&mut g, field)
}

fn random_script(seed: u64, s: &PairSystem, len: usize) -> Vec<LsbStep> {
    let mut g = common::rng(seed ^ 0xa5a5);
    let mut names: Vec<String> = s.split().names().iter().map(|n| n.to_string()).collect();
    let mut script = Vec::new();
    if g.gen_bool(0.5) {
        let t = s.split().fresh_name("t");
        names.push(t.clone());
        script.push(LsbStep::Adjoin(t));
    }
    for _ in 0..len {
        let k = g.gen_range(1..=names.len());
        let center: Vec<String> = names.choose_multiple(&mut g, k).cloned().collect();
        let chart = center.choose(&mut g).unwrap().clone();
        script.push(LsbStep::Blowup(BlowupChart { center, chart }));
    }
    script
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_keeps_the_order(seed in any::<u64>(), a in 1u32..=3) {
        let s = system(seed);
        for c in s.components() {
            prop_assert_eq!(c.power(a).ord_origin(), c.ord_origin());
        }
    }

    #[test]
    fn permissible_transforms_divide_exactly(seed in any::<u64>(), mask in 1u64..64, pick in 0usize..6) {
        let s = system(seed);
        let n = s.split().len();
        let center: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!center.is_empty());
        let chart = center[pick % center.len()];
        for c in s.components() {
            let Some(t) = c.transform(&center, chart) else {
                prop_assert!(!c.permissible_center(&center));
                continue;
            };
            let cleared = c.clear_denominator();
            let b = cleared.integral_weight().unwrap();
            let xc = Poly::var(s.field(), n, chart);
            let assign: Vec<Option<Poly>> = (0..n)
                .map(|i| (i != chart && center.contains(&i)).then(|| &xc * &Poly::var(s.field(), n, i)))
                .collect();
            let power = Monomial::new((0..n).map(|i| if i == chart { b } else { 0 }).collect());
            for (orig, new) in cleared.generators().iter().zip(t.generators()) {
                prop_assert_eq!(orig.substitute(&assign), new.mul_monomial(&power));
            }
        }
    }

    #[test]
    fn system_trace_is_componentwise(seed in any::<u64>(), len in 0usize..4) {
        let s = system(seed);
        let script = random_script(seed, &s, len);
        let whole = run_lsb(&s, &script).unwrap();
        let parts: Vec<_> = s.components().iter().map(|c| run_lsb(&PairSystem::single(c.clone()), &script).unwrap()).collect();
        for (k, rec) in whole.records.iter().enumerate() {
            for (j, part) in parts.iter().enumerate() {
                let pr = &part.records[k];
                prop_assert_eq!(rec.permissible[j], pr.permissible[0]);
                if let Some(after) = &rec.after {
                    prop_assert_eq!(&after.components()[j], &pr.after.as_ref().unwrap().components()[0]);
                }
            }
        }
        let stop = parts.iter().filter_map(|p| p.stopped_at).min();
        prop_assert_eq!(whole.stopped_at, stop);
    }
}
