use gallai::formulas::{ceil_half_sqrt, matching_rules};
use gallai::{evaluate, evaluate_with, pq_decompose, GrKind, TargetGraph};

fn h(s: &str) -> TargetGraph {
    s.parse().unwrap()
}

fn choose2(v: u64) -> u64 {
    v * (v - 1) / 2
}

/// Targets of the consistency grid: `t ∈ [3, 12]`, `r ∈ [0, ⌊(t-1)/2⌋]`, `ω ∈ [4, 8]`.
fn grid_targets() -> Vec<TargetGraph> {
    let mut out = Vec::new();
    for t in 3..=12 {
        out.push(TargetGraph::complete(t).unwrap());
        out.push(TargetGraph::complete_minus_matching(t).unwrap());
        for r in 0..=(t - 1) / 2 {
            out.push(TargetGraph::star_plus(t, r).unwrap());
        }
        for omega in 4..=8 {
            if t > omega {
                out.push(TargetGraph::pineapple(t, omega).unwrap());
            }
        }
    }
    out
}

#[test]
fn cross_rule_sweep_has_no_contradictions() {
    let start = std::time::Instant::now();
    let mut multi_exact = 0;
    for target in grid_targets() {
        for k in 3..=20 {
            let r = evaluate(&target, k).unwrap_or_else(|e| panic!("{target} k={k}: {e}"));
            if let GrKind::Bounds { lo, hi: Some(hi) } = r.kind {
                assert!(lo <= hi, "{target} k={k}");
            }
            let rules = matching_rules(&target, k, None).unwrap();
            let exact: Vec<u64> = rules.iter().filter_map(|(_, r)| r.exact()).collect();
            if exact.len() >= 2 {
                multi_exact += 1;
            }
            assert!(
                exact.windows(2).all(|w| w[0] == w[1]),
                "{target} k={k}: {rules:?}"
            );
        }
    }
    assert!(
        multi_exact > 100,
        "sweep should exercise overlapping rules, got {multi_exact}"
    );
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn ceil_formula_has_its_defining_property() {
    for k in 7..=200u64 {
        let v = ceil_half_sqrt(k);
        assert!(choose2(v) >= k && k > choose2(v - 1), "k = {k}, v = {v}");
    }
}

#[test]
fn generic_lower_bound_is_never_undercut() {
    for target in grid_targets() {
        let p = target.properties().unwrap();
        let a = p.clique_number;
        for k in 4..=a {
            let generic = ((a - 1) * (p.order - 1) + 1) as u64;
            let r = evaluate(&target, k).unwrap();
            assert!(r.lo().unwrap() >= generic, "{target} k={k}: {r}");
        }
    }
}

#[test]
fn spec_examples() {
    assert_eq!(pq_decompose(4, 2).unwrap(), (2, 0));
    assert_eq!(pq_decompose(4, 3).unwrap(), (1, 1));
    assert_eq!(pq_decompose(0, 5).unwrap(), (0, 0));
    let r = evaluate(&h("S4^1"), 3).unwrap();
    assert_eq!(
        (r.exact(), r.provenance.clone()),
        (Some(17), vec!["th3-6".to_string(), "le3-3".to_string()])
    );
    assert_eq!(evaluate(&h("K5"), 5).unwrap().exact(), Some(17));
    assert_eq!(evaluate(&h("PA6,5"), 4).unwrap().exact(), Some(24));
    assert_eq!(evaluate(&h("PA7,5"), 4).unwrap().exact(), Some(26));
    assert_eq!(evaluate(&h("S6^1"), 4).unwrap().exact(), Some(7));
    assert_eq!(evaluate(&h("S13^3"), 4).unwrap().exact(), Some(17));
    for t4 in ["K4-M", "S4^1", "PA4,3"] {
        assert_eq!(evaluate(&h(t4), 12).unwrap().exact(), Some(6), "{t4}");
    }
}

#[test]
fn printed_star_tables() {
    let s41 = [
        (3, 17),
        (4, 6),
        (5, 5),
        (6, 5),
        (7, 5),
        (10, 5),
        (11, 6),
        (15, 6),
        (16, 7),
    ];
    for (k, v) in s41 {
        assert_eq!(
            evaluate(&h("S4^1"), k).unwrap().exact(),
            Some(v),
            "S4^1 k={k}"
        );
    }
    let s51 = [(3, 21), (4, 6), (5, 6), (6, 5), (7, 5), (11, 6)];
    for (k, v) in s51 {
        assert_eq!(
            evaluate(&h("S5^1"), k).unwrap().exact(),
            Some(v),
            "S5^1 k={k}"
        );
    }
    let s61 = [(3, 26), (4, 7), (5, 7), (6, 7), (7, 5), (21, 7), (22, 8)];
    for (k, v) in s61 {
        assert_eq!(
            evaluate(&h("S6^1"), k).unwrap().exact(),
            Some(v),
            "S6^1 k={k}"
        );
    }
}

#[test]
fn unmatched_queries_are_unknown() {
    let r = evaluate(&h("K3"), 3).unwrap();
    assert_eq!(r.kind, GrKind::Unknown);
    assert!(r.provenance.is_empty());
}

#[test]
fn pineapple_upper_bounds_scale_with_c() {
    let loose = evaluate_with(&h("PA10,6"), 5, Some(0.01)).unwrap();
    let tight = evaluate_with(&h("PA10,6"), 5, Some(0.2)).unwrap();
    assert!(loose.hi().unwrap() >= tight.hi().unwrap());
    assert_eq!(loose.lo(), Some(46));
}
