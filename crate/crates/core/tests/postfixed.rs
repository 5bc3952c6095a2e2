mod common;

use common::{lh_programs, lp_case, seq_battery, seq_space, supremum_check, LeftMeet};
use ultrafix::defeedback::delay_component;
use ultrafix::designal::{DesignalSpace, EventSignal};
use ultrafix::solver::{
    all_pairs, check_contracting, check_strictly_contracting, check_strictly_contracting_on_orbits,
    exhaustive_fixed_points, is_post_fixed,
};
use ultrafix::{
    audit_axioms, derived_order, phi, solve_fixed_point, AxiomId, Endofunction, RationalTime,
    SolveConfig, UltrametricSemilattice,
};

fn phi_endofunction<S>(space: &S, f: &Endofunction<S::Elem>) -> Endofunction<S::Elem>
where
    S: UltrametricSemilattice + Clone + Send + Sync + 'static,
    S::Elem: 'static,
{
    let (space, f) = (space.clone(), f.clone());
    Endofunction::new(format!("phi {}", f.name()), move |a: &S::Elem| {
        phi(&space, &f, a)
    })
}

fn signal_space() -> DesignalSpace {
    DesignalSpace::new(RationalTime::integer(4), &["a", "b"]).unwrap()
}

fn signal_samples(n: usize) -> Vec<EventSignal> {
    let space = signal_space();
    let mut rng = rand_chacha::ChaCha8Rng::from_seed_u64(21);
    (0..n).map(|_| space.sample(&mut rng)).collect()
}

trait FromSeedU64 {
    fn from_seed_u64(seed: u64) -> Self;
}

impl FromSeedU64 for rand_chacha::ChaCha8Rng {
    fn from_seed_u64(seed: u64) -> Self {
        rand::SeedableRng::seed_from_u64(seed)
    }
}

#[test]
fn progression_phi_yields_post_fixed_points() {
    let space = seq_space(3);
    let carrier = space.enumerate();
    for (f, _) in seq_battery(3) {
        for a in &carrier {
            assert!(
                is_post_fixed(&space, &f, &phi(&space, &f, a)),
                "{} at {a}",
                f.name()
            );
        }
    }
    for case in lh_programs(20, &[1, 2, 3, 4], 1).into_iter().map(lp_case) {
        for a in &case.carrier {
            assert!(is_post_fixed(
                &case.space,
                &case.f,
                &phi(&case.space, &case.f, a)
            ));
        }
    }
    let space = signal_space();
    for delta in [RationalTime::new(1, 2), RationalTime::integer(1)] {
        let f = delay_component(delta).unwrap().endofunction();
        for a in signal_samples(300) {
            assert!(is_post_fixed(&space, &f, &phi(&space, &f, &a)));
        }
    }
}

#[test]
fn progression_phi_is_above_post_fixed_points() {
    let space = seq_space(3);
    let carrier = space.enumerate();
    let mut checked = 0;
    for (f, _) in seq_battery(3) {
        for a in carrier.iter().filter(|a| is_post_fixed(&space, &f, a)) {
            assert!(
                derived_order(&space, a, &phi(&space, &f, a)),
                "{} at {a}",
                f.name()
            );
            checked += 1;
        }
    }
    for case in lh_programs(20, &[2, 3, 4], 2).into_iter().map(lp_case) {
        for a in case
            .carrier
            .iter()
            .filter(|a| is_post_fixed(&case.space, &case.f, a))
        {
            assert!(derived_order(&case.space, a, &phi(&case.space, &case.f, a)));
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn every_trace_ascends() {
    let space = seq_space(3);
    for (f, strict) in seq_battery(3) {
        for seed in space.enumerate() {
            match solve_fixed_point(&space, &f, &seed, SolveConfig::with_budget(32)) {
                Ok(fix) => assert!(fix.trace.is_ascending(&space)),
                Err(e) => {
                    assert!(!strict, "{} from {seed}: {e}", f.name());
                    assert!(e.trace().is_none_or(|t| t.is_ascending(&space)));
                }
            }
        }
    }
    for case in lh_programs(20, &[3, 4], 3).into_iter().map(lp_case) {
        for seed in &case.carrier {
            let fix = solve_fixed_point(&case.space, &case.f, seed, SolveConfig::with_budget(32))
                .unwrap();
            assert!(fix.trace.is_ascending(&case.space));
            let limited = solve_fixed_point(
                &case.space,
                &case.f,
                seed,
                SolveConfig::with_budget(64).limit_every(1),
            )
            .unwrap();
            assert!(limited.trace.is_ascending(&case.space));
            assert_eq!(limited.fixed_point, fix.fixed_point);
        }
    }
}

#[test]
fn supremum_of_directed_post_fixed_points_is_post_fixed() {
    let space = seq_space(3);
    let carrier = space.enumerate();
    assert_eq!(carrier.len(), 15);
    let mut directed = 0;
    for (f, _) in seq_battery(3) {
        let (n, bad) = supremum_check(&space, &f, &carrier);
        assert!(bad.is_empty(), "{}: {bad:?}", f.name());
        directed += n;
    }
    for case in lh_programs(10, &[4], 4).into_iter().map(lp_case) {
        let (n, bad) = supremum_check(&case.space, &case.f, &case.carrier);
        assert!(bad.is_empty(), "{}", case.program);
        directed += n;
    }
    assert!(directed > 150, "{directed}");
}

#[test]
fn fixed_points_of_f_and_phi_coincide() {
    let space = seq_space(3);
    let carrier = space.enumerate();
    for (f, strict) in seq_battery(3) {
        if !strict {
            continue;
        }
        let orbits = check_strictly_contracting_on_orbits(&space, &f, &carrier, 16).unwrap();
        assert!(orbits.is_clean());
        let phi_f = phi_endofunction(&space, &f);
        assert_eq!(
            exhaustive_fixed_points(&f, &carrier),
            exhaustive_fixed_points(&phi_f, &carrier)
        );
    }
    for case in lh_programs(20, &[2, 3, 4, 5], 5).into_iter().map(lp_case) {
        let phi_f = phi_endofunction(&case.space, &case.f);
        assert_eq!(
            exhaustive_fixed_points(&case.f, &case.carrier),
            exhaustive_fixed_points(&phi_f, &case.carrier)
        );
    }
}

#[test]
fn strictly_contracting_functions_have_one_fixed_point() {
    let space = seq_space(3);
    let carrier = space.enumerate();
    for (f, strict) in seq_battery(3) {
        if !strict {
            continue;
        }
        assert!(check_strictly_contracting(&space, &f, &all_pairs(&carrier))
            .unwrap()
            .is_clean());
        let fixed = exhaustive_fixed_points(&f, &carrier);
        assert_eq!(fixed.len(), 1, "{}", f.name());
        let solved =
            solve_fixed_point(&space, &f, &space.bottom(), SolveConfig::default()).unwrap();
        assert!(solved.f_fixed_check);
        assert_eq!(solved.fixed_point, fixed[0]);
    }
}

#[test]
fn strictly_contracting_implies_contracting() {
    let space = seq_space(3);
    let pairs = all_pairs(&space.enumerate());
    for (f, _) in seq_battery(3) {
        if check_strictly_contracting(&space, &f, &pairs)
            .unwrap()
            .is_clean()
        {
            assert!(
                check_contracting(&space, &f, &pairs).unwrap().is_clean(),
                "{}",
                f.name()
            );
        }
    }
    let space = signal_space();
    let samples = signal_samples(200);
    let pairs: Vec<_> = samples
        .chunks(2)
        .map(|p| (p[0].clone(), p[1].clone()))
        .collect();
    let f = delay_component(RationalTime::new(1, 2))
        .unwrap()
        .endofunction();
    assert!(check_strictly_contracting(&space, &f, &pairs)
        .unwrap()
        .is_clean());
    assert!(check_contracting(&space, &f, &pairs).unwrap().is_clean());
}

#[test]
fn audit_catches_a_broken_meet() {
    let space = LeftMeet(seq_space(4));
    let report = audit_axioms(&space, 200, 0).unwrap();
    let comm: Vec<_> = report
        .violations
        .iter()
        .filter(|v| v.axiom == AxiomId::Commutativity)
        .collect();
    assert!(!comm.is_empty());
    for v in &report.violations {
        assert!(v.replay(&space), "{v:?}");
        assert!(!v.replay(&space.0));
    }
    let w = &comm[0].witness;
    assert_ne!(w[0], w[1]);
}

/// Φ F need not preserve the order; search the battery for a witness
/// `a ⊑ b` with `Φ(a) ⋢ Φ(b)`. Either outcome is acceptable.
#[test]
fn phi_order_preservation_inconclusive() {
    let space = seq_space(3);
    let carrier = space.enumerate();
    let mut witnesses = Vec::new();
    for (f, _) in seq_battery(3) {
        for a in &carrier {
            for b in &carrier {
                if derived_order(&space, a, b)
                    && !derived_order(&space, &phi(&space, &f, a), &phi(&space, &f, b))
                {
                    witnesses.push(format!("{}: {a} <= {b}", f.name()));
                }
            }
        }
    }
    for case in lh_programs(20, &[3, 4], 6).into_iter().map(lp_case) {
        for a in &case.carrier {
            for b in &case.carrier {
                if derived_order(&case.space, a, b)
                    && !derived_order(
                        &case.space,
                        &phi(&case.space, &case.f, a),
                        &phi(&case.space, &case.f, b),
                    )
                {
                    witnesses.push(format!(
                        "T_P: {} <= {}",
                        a.render(case.program.base()),
                        b.render(case.program.base())
                    ));
                }
            }
        }
    }
    match witnesses.first() {
        Some(w) => println!(
            "inconclusive: {} order-reversing pairs, e.g. {w}",
            witnesses.len()
        ),
        None => println!("inconclusive: no order-reversing pair found"),
    }
}

#[test]
fn phi_reverses_order_on_a_two_atom_program() {
    let case = lp_case(ultrafix::lpfront::load_program("b :- not a.").unwrap());
    let base = case.program.base();
    let (lo, hi) = (
        base.empty_interpretation(),
        base.interpretation(&["a"]).unwrap(),
    );
    assert!(derived_order(&case.space, &lo, &hi));
    let (plo, phi_hi) = (
        phi(&case.space, &case.f, &lo),
        phi(&case.space, &case.f, &hi),
    );
    assert_eq!(plo.render(base), "{b}");
    assert_eq!(phi_hi.render(base), "{}");
    assert!(!derived_order(&case.space, &plo, &phi_hi));
}
