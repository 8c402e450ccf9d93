use std::collections::BTreeSet;

use gallai::{
    classify_p4free, classify_p5free, construction_grid, enumerate_p5free, find_gallai_partition,
    pentagon, verify_gallai_partition, ColoredComplete, Error, GallaiPartition, P4Class,
};

#[test]
fn every_enumerated_coloring_has_a_verified_case() {
    let mut seen = BTreeSet::new();
    for (n, k) in [(5, 4), (5, 5), (6, 4), (6, 5), (6, 6), (7, 4), (7, 6)] {
        let all = enumerate_p5free(n, k).unwrap();
        assert!(!all.is_empty(), "n={n} k={k}");
        for c in &all {
            let report = classify_p5free(c).unwrap();
            assert!(!report.is_empty() && report.rainbow_p5.is_none());
            for w in &report.cases {
                assert!(w.verify(c), "{w:?}");
                seen.insert(w.letter());
            }
        }
    }
    assert_eq!(seen.into_iter().collect::<String>(), "bcdef");
    // Ten edges cannot carry six colors without a rainbow P5.
    assert!(enumerate_p5free(5, 6).unwrap().is_empty());
}

#[test]
fn grid_witnesses_fall_under_the_structure_theorem() {
    for e in construction_grid() {
        let c = e.construction.build().unwrap();
        if c.k() < 4 {
            continue;
        }
        let report = classify_p5free(&c).unwrap();
        assert!(!report.is_empty(), "{}", e.construction);
        assert!(report.cases.iter().all(|w| w.verify(&c)));
    }
}

#[test]
fn few_colors_are_case_a() {
    let c = ColoredComplete::from_fn(7, 3, |i, j| ((i + j) % 3) as u8 + 1).unwrap();
    let report = classify_p5free(&c).unwrap();
    assert!(report.contains('a'));
    assert_eq!(
        classify_p4free(&pentagon()).unwrap(),
        P4Class::AtMostTwoColors
    );
}

#[test]
fn contract_errors() {
    let small = ColoredComplete::monochromatic(4, 1, 1).unwrap();
    assert!(matches!(
        classify_p5free(&small),
        Err(Error::InvalidArgument(_))
    ));
    let tiny = ColoredComplete::monochromatic(3, 1, 1).unwrap();
    assert!(matches!(
        classify_p4free(&tiny),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(enumerate_p5free(6, 3), Err(Error::Unsupported(_))));
    assert!(matches!(
        enumerate_p5free(4, 4),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        enumerate_p5free(10, 4),
        Err(Error::UnsupportedSize { .. })
    ));
    let c = ColoredComplete::monochromatic(4, 1, 1).unwrap();
    for blocks in [
        vec![vec![0, 1, 2, 3]],
        vec![vec![0, 1], vec![2]],
        vec![vec![0, 1], vec![1, 2, 3]],
        vec![vec![0, 1], vec![], vec![2, 3]],
    ] {
        assert!(matches!(
            verify_gallai_partition(&c, &GallaiPartition { blocks }),
            Err(Error::InvalidArgument(_))
        ));
    }
    assert!(find_gallai_partition(&c).unwrap().is_some());
}
