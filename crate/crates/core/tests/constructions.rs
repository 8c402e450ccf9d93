use gallai::detect::find_mono_copy_in_color;
use gallai::{
    construction_grid, doubling, evaluate, lower_bound_witness, pentagon, pentagon_blowup,
    r35_witness, verify_witness, ColoredComplete, Construction, TargetGraph,
};

fn h(s: &str) -> TargetGraph {
    s.parse().unwrap()
}

#[test]
fn grid_constructions_certify_and_match_printed_orders() {
    let grid = construction_grid();
    assert_eq!(grid.len(), 53);
    for e in &grid {
        let c = e.construction.build().unwrap();
        assert_eq!(c.n(), e.order, "{}", e.construction);
        assert_eq!(
            e.construction.expected_order().unwrap(),
            e.order,
            "{}",
            e.construction
        );
        assert_eq!(c.k(), e.k, "{}", e.construction);
        assert!(c.is_exact(), "{}", e.construction);
        let cert = verify_witness(&c, &e.target)
            .unwrap_or_else(|f| panic!("{} vs {}: {f}", e.construction, e.target));
        assert!(cert.replay());
    }
}

#[test]
fn grid_orders_respect_evaluated_values() {
    for e in construction_grid() {
        let r = evaluate(&e.target, e.k).unwrap();
        if let Some(hi) = r.hi() {
            assert!(
                (e.order as u64) < hi,
                "{} for {} k={}: {r}",
                e.construction,
                e.target,
                e.k
            );
        }
    }
}

#[test]
fn tight_constructions_meet_the_value() {
    let tight = [
        (Construction::F3, "S4^1", 4),
        (Construction::G4 { a: 5, t: 5, k: 5 }, "K5", 5),
        (Construction::F12, "PA6,5", 4),
    ];
    for (c, target, k) in tight {
        let value = evaluate(&h(target), k).unwrap().exact().unwrap();
        assert_eq!(c.build().unwrap().n() as u64 + 1, value, "{c}");
    }
}

#[test]
fn lower_bound_witness_examples() {
    let w = lower_bound_witness(&h("S4^1"), 4).unwrap().unwrap();
    assert_eq!((w.construction, w.certificate.order), (Construction::F3, 5));
    let w = lower_bound_witness(&h("PA6,5"), 4).unwrap().unwrap();
    assert_eq!(
        (w.construction, w.certificate.order),
        (Construction::F12, 23)
    );
    let w = lower_bound_witness(&h("K5"), 5).unwrap().unwrap();
    assert_eq!(w.certificate.order, 16);
    assert!(w.certificate.replay());
}

/// Brute-force check that the color-`j` graph has no clique of size `s`.
fn clique_free(c: &ColoredComplete, j: u8, s: usize) -> bool {
    let n = c.n();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == s)
        .all(|m| {
            let vs: Vec<usize> = (0..n).filter(|&v| m & (1 << v) != 0).collect();
            vs.iter()
                .enumerate()
                .any(|(x, &a)| vs[x + 1..].iter().any(|&b| c.color(a, b) != j))
        })
}

#[test]
fn r35_witness_is_triangle_free_and_k5_free() {
    let start = std::time::Instant::now();
    let w = r35_witness();
    assert_eq!((w.n(), w.k()), (13, 2));
    assert!(clique_free(&w, 1, 3));
    assert!(clique_free(&w, 2, 5));
    assert!(find_mono_copy_in_color(&w, &h("K3"), 1).is_none());
    assert!(find_mono_copy_in_color(&w, &h("K5"), 2).is_none());
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn pentagon_blowup_examples() {
    let f = pentagon_blowup(4).unwrap();
    assert_eq!((f.n(), f.used_colors()), (15, vec![1, 2, 3]));
    let f = pentagon_blowup(3).unwrap();
    assert_eq!(f.n(), 10);
    for j in [2, 3] {
        assert!(find_mono_copy_in_color(&f, &h("K3"), j).is_none());
    }
    assert_eq!(pentagon_blowup(2).unwrap(), pentagon());
}

#[test]
fn doubling_examples() {
    let c5 = ColoredComplete::from_fn(5, 2, |i, j| if j - i == 1 || j - i == 4 { 1 } else { 2 })
        .unwrap();
    let d = doubling(&c5).unwrap();
    assert_eq!(d.n(), 10);
    assert!(gallai::find_mono_copy(&d, &h("K3")).is_none());
    let d = doubling(&r35_witness()).unwrap();
    assert_eq!(d.n(), 26);
    // R_3(S6^1) = 26, so this K26 must contain a monochromatic S6^1.
    let e = gallai::find_mono_copy(&d, &h("S6^1")).expect("K26 contains a monochromatic S6^1");
    assert!(e.verify_mono(&d, &h("S6^1")));
}
