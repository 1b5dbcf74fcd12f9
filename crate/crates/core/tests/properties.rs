use limitlab::limit_engine::{
    az_index, read_trace, run_stages, stabilization, write_trace, AzLifted, BudgetSchedule,
    GuessStream, Property, Verdict,
};
use limitlab::machine::literal_index;
use limitlab::oracle::{brute_equal_upto, brute_incompressible, brute_k};
use limitlab::properties::{catalog_property, pair_input, PROPERTY_IDS};
use limitlab::{zoo, Nat};
use proptest::prelude::*;

fn nat(v: u64) -> Nat {
    Nat::from(v)
}

fn stream(p: &dyn Property, input: &Nat, t_max: u64) -> GuessStream {
    run_stages(p, input, t_max, BudgetSchedule::default()).unwrap()
}

fn sample_input(id: &str) -> Nat {
    match id {
        "k" => nat(5),
        "incompressible" => nat(2),
        "partial-detect" => zoo::loops_on_two().into_value(),
        "easy-eq" | "class-eq" => pair_input(&zoo::fast_identity(), &zoo::slow_identity()),
        "error-ratio" => pair_input(&zoo::append_zero(), &zoo::mark_multiples_of_three()),
        _ => nat(0),
    }
}

// Prefix codes double in bit length per stage, so the lifted runs stay short.
#[test]
fn az_lifting_preserves_every_stream() {
    for id in PROPERTY_IDS {
        let p = catalog_property(id).unwrap();
        let x = sample_input(id);
        let direct = stream(p.as_ref(), &x, 10);
        let lifted = AzLifted::new(p.clone());
        let via = stream(&lifted, az_index(&x).value(), 10);
        assert_eq!(direct.outcomes(), via.outcomes(), "{id}");
    }
}

#[test]
fn k_of_five_never_increases() {
    let k = catalog_property("k").unwrap();
    let s = stream(k.as_ref(), &nat(5), 64);
    let bound = literal_index(&nat(5)).into_value();
    let guesses: Vec<&Nat> = s.guesses().collect();
    assert!(!guesses.is_empty());
    assert!(guesses.windows(2).all(|w| w[1] <= w[0]));
    assert!(guesses.iter().all(|g| **g <= bound));
    let r = stabilization(&s, 16);
    assert_eq!(r.verdict, Verdict::Stabilized);
    assert_eq!(r.last_value, Some(brute_k(&nat(5), 2000)));
}

#[test]
fn incompressible_positions_follow_the_census() {
    let census = brute_incompressible(32, 2000);
    let p = catalog_property("incompressible").unwrap();
    for n in 0..4u64 {
        let r = stabilization(&stream(p.as_ref(), &nat(n), 80), 16);
        assert_eq!(r.verdict, Verdict::Stabilized, "n = {n}");
        assert_eq!(r.last_value.as_ref(), Some(&census[n as usize]));
    }
}

#[test]
fn canonical_positions_are_pairwise_distinct() {
    let p = catalog_property("canonical").unwrap();
    let mut settled = Vec::new();
    for n in 0..3u64 {
        let r = stabilization(&stream(p.as_ref(), &nat(n), 40), 16);
        assert_eq!(r.verdict, Verdict::Stabilized);
        settled.push(r.last_value.unwrap());
    }
    assert_eq!(settled, [5u64, 6, 13].map(nat).to_vec());
    for a in 0..settled.len() {
        for b in a + 1..settled.len() {
            let c = brute_equal_upto(
                &settled[a].clone().into(),
                &settled[b].clone().into(),
                40,
                4000,
            );
            assert!(c.witness().is_some(), "{} vs {}", settled[a], settled[b]);
        }
    }
}

#[test]
fn traces_round_trip() {
    let p = catalog_property("partial-detect").unwrap();
    let s = stream(p.as_ref(), &zoo::loops_on_two().into_value(), 30);
    let r = stabilization(&s, 16);
    let mut buf = Vec::new();
    write_trace(&s, Some(&r), &mut buf).unwrap();
    let (back, report) = read_trace(buf.as_slice()).unwrap();
    assert_eq!(back, s);
    assert_eq!(report, Some(r));
}

#[test]
fn unknown_ids_are_rejected() {
    assert!(catalog_property("kolmogorov").is_err());
    let lifted = AzLifted::new(catalog_property("k").unwrap());
    assert!(lifted.stage_function(&nat(11)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn streams_are_deterministic(id in 0..PROPERTY_IDS.len(), x in 0u64..40, t_max in 0u64..24) {
        let p = catalog_property(PROPERTY_IDS[id]).unwrap();
        let a = stream(p.as_ref(), &nat(x), t_max);
        let b = stream(p.as_ref(), &nat(x), t_max);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn k_streams_stay_under_the_literal(x in 0u64..256, t_max in 1u64..48) {
        let k = catalog_property("k").unwrap();
        let s = stream(k.as_ref(), &nat(x), t_max);
        let bound = literal_index(&nat(x)).into_value();
        let guesses: Vec<&Nat> = s.guesses().collect();
        prop_assert!(guesses.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(guesses.iter().all(|g| **g <= bound));
    }
}
