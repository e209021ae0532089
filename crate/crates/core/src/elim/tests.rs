use super::*;
use crate::sysfile::parse_system;

fn load(src: &str) -> DiffSystem {
    parse_system(src).unwrap().system
}

const VANDERPOL: &str = include_str!("../../../../systems/vanderpol.sys");
const LOTKA: &str = include_str!("../../../../systems/lotka_volterra.sys");
const CHAIN: &str = include_str!("../../../../systems/linear_chain.sys");
const INCONSISTENT: &str = include_str!("../../../../systems/inconsistent.sys");
const CONSISTENT: &str = include_str!("../../../../systems/consistent.sys");
const PENDULUM_X: &str = include_str!("../../../../systems/pendulum_x.sys");
const CONTROL_X1X3: &str = include_str!("../../../../systems/control_x1x3.sys");

#[test]
fn window_covers_all_orders_below_alpha() {
    let sys = load(PENDULUM_X);
    let names: Vec<String> = x_window(&sys).iter().map(|&v| sys.registry().render(v)).collect();
    assert_eq!(names.len(), 6);
    for n in ["y", "y'", "y''", "T", "F1", "F2"] {
        assert!(names.contains(&n.to_string()), "{n} missing from {names:?}");
    }
}

#[test]
fn vanderpol_geometry_and_relation() {
    let sys = load(VANDERPOL);
    let config = ElimConfig::default();
    let out = bound_for(&sys, &config).unwrap();
    assert_eq!(out.geometry.m, Some(0));
    assert_eq!(out.geometry.top_degree, 2);
    assert_eq!(out.geometry.radical, RadicalStatus::Verified);
    assert_eq!(out.bound.b, BigUint::from(1u32));

    let rep = run_elimination(&sys, &config).unwrap();
    assert_eq!(rep.verdict, Verdict::RelationFound);
    assert_eq!(rep.depth, Some(1));
    assert_eq!(rep.relations.len(), 1);
    let rel = &rep.relation_polys[0];
    let reg = rel.registry();
    let z = reg.lookup("z", 0).unwrap();
    let z1 = reg.lookup("z", 1).unwrap();
    let terms: Vec<(Vec<(usize, u32)>, i64)> = vec![
        (vec![(z1, 2)], 1),
        (vec![(z1, 1), (z, 1)], -1),
        (vec![(z1, 1), (z, 3)], -4),
        (vec![(z, 4)], 1),
        (vec![(z, 6)], 4),
    ];
    let expected = Polynomial::from_terms(
        reg,
        terms.into_iter().map(|(m, c)| {
            (crate::polycore::Monomial::from_sparse(&m), crate::polycore::Q::from_integer(c.into()))
        }),
    );
    assert!(rel == &expected || rel == &-&expected, "got {rel}");
}

#[test]
fn lotka_volterra_relation_at_bound() {
    let sys = load(LOTKA);
    let rep = run_elimination(&sys, &ElimConfig::default()).unwrap();
    assert_eq!(rep.bound.b, BigUint::from(1u32));
    assert_eq!(rep.verdict, Verdict::RelationFound);
    let beta = rep.relation_polys[0].registry().lookup("beta", 0);
    if let Some(b) = beta {
        assert!(!rep.relation_polys[0].variables().contains(&b));
    }
}

#[test]
fn linear_chain_relation_at_depth_zero() {
    let sys = load(CHAIN);
    let rep = run_elimination(&sys, &ElimConfig::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::RelationFound);
    assert_eq!(rep.depth, Some(0));
    assert_eq!(rep.bound.b, BigUint::from(0u32));
    assert_eq!(rep.relations, vec!["y".to_string()]);
}

#[test]
fn consistency_depends_on_depth() {
    let limits = GbLimits::unlimited();
    let bad = load(INCONSISTENT);
    assert!(check_consistency(&bad, 0, &limits).unwrap());
    assert!(!check_consistency(&bad, 1, &limits).unwrap());
    let good = load(CONSISTENT);
    for n in 0..4 {
        assert!(check_consistency(&good, n, &limits).unwrap());
    }
}

#[test]
fn control_x1x3_profile() {
    let sys = load(CONTROL_X1X3);
    let config = ElimConfig {
        assume_radical: true,
        ..ElimConfig::default()
    };
    let out = bound_for(&sys, &config).unwrap();
    assert_eq!(out.bound.inputs.abs_alpha, 5);
    assert_eq!(out.geometry.m, Some(2));
    assert_eq!(out.geometry.top_degree, 1);
    assert_eq!(out.bound.b, BigUint::from(3u32));
}

#[test]
fn trials_are_reproducible() {
    let sys = load(PENDULUM_X);
    let config = ElimConfig {
        seed: 7,
        trials: 4,
        ..ElimConfig::default()
    };
    let a = bound_for(&sys, &config).unwrap();
    let b = bound_for(&sys, &config).unwrap();
    assert_eq!(a.geometry.trials, b.geometry.trials);
    assert_eq!(a.bound, b.bound);
}

#[test]
fn zero_trials_rejected() {
    let sys = load(VANDERPOL);
    let config = ElimConfig {
        trials: 0,
        ..ElimConfig::default()
    };
    assert_eq!(bound_for(&sys, &config).unwrap_err(), ElimError::NoTrials);
}

#[test]
fn pair_cutoff_is_inconclusive() {
    let sys = load(PENDULUM_X);
    let config = ElimConfig {
        assume_radical: true,
        augment: true,
        ..ElimConfig::default()
    };
    let bound = bound_for(&sys, &config).unwrap();
    let limited = ElimConfig {
        max_pairs: Some(1),
        ..config
    };
    match run_elimination(&sys, &limited) {
        Ok(rep) => {
            assert_eq!(rep.verdict, Verdict::Inconclusive);
            assert!(matches!(rep.inconclusive, Some(InconclusiveReason::Cutoff { .. })));
        }
        Err(ElimError::Gb(GbError::Cutoff { .. })) => {}
        Err(e) => panic!("unexpected {e}"),
    }
    assert!(bound.bound.b >= BigUint::from(1u32));
}

#[test]
fn depth_cap_below_bound_is_inconclusive() {
    let sys = load(VANDERPOL);
    let config = ElimConfig {
        max_depth: Some(0),
        ..ElimConfig::default()
    };
    let rep = run_elimination(&sys, &config).unwrap();
    assert_eq!(rep.verdict, Verdict::Inconclusive);
    assert!(matches!(rep.inconclusive, Some(InconclusiveReason::DepthLimit { max_depth: 0 })));
    assert_eq!(rep.per_depth.len(), 1);
}

#[test]
fn pendulum_rows_with_augmentation() {
    let rows = [
        (include_str!("../../../../systems/pendulum_x.sys"), 1, 5),
        (include_str!("../../../../systems/pendulum_y.sys"), 1, 5),
        (include_str!("../../../../systems/pendulum_x_F1.sys"), 0, 1),
        (include_str!("../../../../systems/pendulum_y_F2.sys"), 0, 1),
    ];
    for (src, m, b) in rows {
        let config = ElimConfig {
            augment: true,
            ..ElimConfig::default()
        };
        let out = bound_for(&load(src), &config).unwrap();
        assert_eq!(out.geometry.m, Some(m));
        assert_eq!(out.geometry.top_degree, 2);
        assert_eq!(out.geometry.radical, RadicalStatus::Verified);
        assert_eq!(out.bound.b, BigUint::from(b as u32));
    }
}
