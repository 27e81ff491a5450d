//! Randomised properties over small fixtures.

mod common;

use coherence::ac::{to_ac, to_sm};
use coherence::cli::document::{load, parse, to_canonical_string, to_document, Item, Workspace};
use coherence::fixtures::{
    dual_numbers_2group, dual_numbers_sm_twin, mult_endofunctor, strict_cyclic_2group, DualNumbersParams,
};
use coherence::homs::{validate_ac_functor, validate_sm_functor};
use coherence::monoidal::validate_sm;
use coherence::{CheckConfig, Status};
use common::parallel_other;
use proptest::prelude::*;

fn cfg() -> CheckConfig {
    CheckConfig::thorough()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn presentations_roundtrip(n in 1u32..5, q in 1u32..4) {
        let m = strict_cyclic_2group(n, q).unwrap();
        let a = to_ac(&m, &cfg()).unwrap();
        prop_assert_eq!(to_sm(&a, &cfg()).unwrap(), m.clone());
        prop_assert_eq!(to_ac(&to_sm(&a, &cfg()).unwrap(), &cfg()).unwrap(), a);
    }

    /// `b(x−z)` vanishes for all real parts exactly when `b = 0`.
    #[test]
    fn mult_functor_sf1_iff_b_zero(m in 2u32..5, a in 0u32..5, b in 0u32..5) {
        let ac = dual_numbers_2group(m).unwrap();
        let sm = dual_numbers_sm_twin(&ac).unwrap();
        let p = DualNumbersParams::new(m, a, b).unwrap();
        let f = mult_endofunctor(&ac, p).unwrap();
        prop_assert!(validate_ac_functor(&f, &ac, &ac, &cfg()).unwrap().status("AF1") == Some(Status::Pass));
        let sf1 = validate_sm_functor(&f, &sm, &sm, &cfg()).unwrap().status("SF1");
        prop_assert_eq!(sf1 == Some(Status::Pass), b % m == 0);
    }

    #[test]
    fn documents_reserialize_identically(m in 2u32..4, a in 0u32..4, b in 0u32..4) {
        let ac = dual_numbers_2group(m).unwrap();
        let f = mult_endofunctor(&ac, DualNumbersParams::new(m, a, b).unwrap()).unwrap();
        let mut ws = Workspace::new(ac.carrier.clone());
        ws.push("G", Item::Ac(ac));
        ws.push("F", Item::Functor { source: "G".into(), target: "G".into(), f });
        let text = to_canonical_string(&to_document(&ws));
        let again = to_canonical_string(&to_document(&load(&parse(&text).unwrap()).unwrap()));
        prop_assert_eq!(text, again);
    }

    /// Changing one associator component of a strict structure is always noticed.
    #[test]
    fn associator_flip_is_detected(n in 2u32..4, q in 2u32..4, idx in any::<prop::sample::Index>(), pick in 0usize..8) {
        let mut m = strict_cyclic_2group(n, q).unwrap();
        let xs = m.a.tuple_at(idx.index(m.a.len()));
        let new = parallel_other(&m.carrier, m.a.get(&xs), pick).unwrap();
        m.a.set(&xs, new);
        let rep = validate_sm(&m, &cfg()).unwrap();
        prop_assert!(rep.outcomes.iter().any(|o| o.status == Status::Fail && o.witness.is_some()));
    }
}
