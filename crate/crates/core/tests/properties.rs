use gallai::detect::find_mono_copy_generic;
use gallai::{
    canonical_form, classify_p4free, classify_p5free, find_gallai_partition, find_mono_copy,
    find_rainbow_path, from_witness_json, to_witness_json, verify_gallai_partition, Color,
    ColoredComplete, GallaiPartition, SymmetryMode, TargetGraph,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coloring(max_n: usize, max_k: usize) -> impl Strategy<Value = ColoredComplete> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        prop::collection::vec(1..=k as Color, n * (n - 1) / 2)
            .prop_map(move |colors| ColoredComplete::new(n, k, colors).unwrap())
    })
}

/// Monochromatic `K_n` with a few edges recolored: hits every structure case.
fn perturbed(min_n: usize, max_n: usize, max_k: usize) -> impl Strategy<Value = ColoredComplete> {
    (min_n..=max_n, 2..=max_k).prop_flat_map(|(n, k)| {
        let m = n * (n - 1) / 2;
        prop::collection::vec((0..m, 1..=k as Color), 0..=7).prop_map(move |changes| {
            let mut colors = vec![1 as Color; m];
            for (e, c) in changes {
                colors[e] = c;
            }
            ColoredComplete::new(n, k, colors).unwrap()
        })
    })
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn relabel(c: &ColoredComplete, seed: u64) -> ColoredComplete {
    let vmap = permutation(c.n(), seed);
    let cmap: Vec<Color> = permutation(c.k(), seed ^ 0x9e37)
        .iter()
        .map(|&x| x as Color + 1)
        .collect();
    c.relabeled(&vmap, &cmap).unwrap()
}

/// Rainbow path with `m` edges by exhaustive search over vertex sequences.
fn brute_rainbow(c: &ColoredComplete, m: usize) -> bool {
    fn go(c: &ColoredComplete, path: &mut Vec<usize>, m: usize, used: u64) -> bool {
        if path.len() == m + 1 {
            return true;
        }
        let last = *path.last().unwrap();
        for v in 0..c.n() {
            if path.contains(&v) {
                continue;
            }
            let col = c.color(last, v);
            if used & (1 << col) != 0 {
                continue;
            }
            path.push(v);
            if go(c, path, m, used | 1 << col) {
                return true;
            }
            path.pop();
        }
        false
    }
    (0..c.n()).any(|v| go(c, &mut vec![v], m, 0))
}

fn targets() -> Vec<TargetGraph> {
    [
        "K3",
        "K4",
        "S4^1",
        "S5^2",
        "S6^0",
        "PA5,3",
        "PA6,4",
        "K5-M",
        r#"{"order":5,"edges":[[0,1],[1,2],[2,3],[3,4]]}"#,
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_key_is_invariant(c in coloring(8, 5), seed in any::<u64>()) {
        let r = relabel(&c, seed);
        prop_assert_eq!(canonical_form(&c, SymmetryMode::VertexAndColor).unwrap(),
                        canonical_form(&r, SymmetryMode::VertexAndColor).unwrap());
        let v = c.relabeled(&permutation(c.n(), seed), &(1..=c.k() as Color).collect::<Vec<_>>()).unwrap();
        let key = canonical_form(&c, SymmetryMode::VertexOnly).unwrap();
        prop_assert_eq!(&key, &canonical_form(&v, SymmetryMode::VertexOnly).unwrap());
        prop_assert_eq!(canonical_form(&key.to_coloring(), SymmetryMode::VertexOnly).unwrap(), key);
    }

    #[test]
    fn rainbow_detector_matches_brute_force(c in coloring(7, 6), m in 1usize..=4) {
        prop_assume!(m < c.n());
        let found = find_rainbow_path(&c, m).unwrap();
        prop_assert_eq!(found.is_some(), brute_rainbow(&c, m));
        if let Some(e) = found {
            prop_assert!(e.verify_rainbow(&c));
        }
    }

    #[test]
    fn mono_fast_paths_match_generic(c in coloring(9, 3), which in 0usize..9) {
        let h = &targets()[which];
        let fast = find_mono_copy(&c, h);
        prop_assert_eq!(fast.is_some(), find_mono_copy_generic(&c, h).is_some(), "{}", h);
        if let Some(e) = fast {
            prop_assert!(e.verify_mono(&c, h));
        }
    }

    #[test]
    fn detection_is_monotone_in_the_host(c in coloring(8, 4), mask in any::<u8>(), which in 0usize..9) {
        let keep: Vec<usize> = (0..c.n()).filter(|v| mask & (1 << v) != 0).collect();
        prop_assume!(keep.len() >= 2);
        let sub = c.induced(&keep).unwrap();
        let h = &targets()[which];
        if find_mono_copy(&sub, h).is_some() {
            prop_assert!(find_mono_copy(&c, h).is_some());
        }
        if sub.n() >= 5 && find_rainbow_path(&sub, 4).unwrap().is_some() {
            prop_assert!(find_rainbow_path(&c, 4).unwrap().is_some());
        }
    }

    #[test]
    fn p5_structure_conforms(c in perturbed(5, 9, 8), seed in any::<u64>()) {
        let report = classify_p5free(&c).unwrap();
        prop_assert_eq!(report.is_empty(), find_rainbow_path(&c, 4).unwrap().is_some());
        for w in &report.cases {
            prop_assert!(w.verify(&c));
        }
        let again = classify_p5free(&relabel(&c, seed)).unwrap();
        prop_assert_eq!(report.letters(), again.letters());
    }

    #[test]
    fn p4_structure_conforms(c in perturbed(4, 8, 5)) {
        classify_p4free(&c).unwrap();
    }

    #[test]
    fn uniform_colorings_never_violate_the_structure_theorems(c in coloring(9, 8)) {
        if c.n() >= 5 {
            classify_p5free(&c).unwrap();
        }
        if c.n() >= 4 {
            classify_p4free(&c).unwrap();
        }
    }

    #[test]
    fn witness_json_round_trips(c in coloring(9, 6)) {
        prop_assert_eq!(from_witness_json(&to_witness_json(&c)).unwrap(), c);
    }
}

/// A coloring without a rainbow triangle, by recursive substitution into
/// two-colored reduced graphs.
fn gallai_coloring(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ColoredComplete {
    let mut colors = vec![vec![0 as Color; n]; n];
    fn fill(rng: &mut ChaCha8Rng, vs: &[usize], k: usize, colors: &mut [Vec<Color>]) {
        if vs.len() < 2 {
            return;
        }
        let blocks = rng.gen_range(2..=vs.len());
        let mut assignment: Vec<usize> = (0..vs.len())
            .map(|i| {
                if i < blocks {
                    i
                } else {
                    rng.gen_range(0..blocks)
                }
            })
            .collect();
        assignment.shuffle(rng);
        let pair = [rng.gen_range(1..=k as Color), rng.gen_range(1..=k as Color)];
        let reduced: Vec<Vec<Color>> = (0..blocks)
            .map(|_| (0..blocks).map(|_| pair[rng.gen_range(0..2)]).collect())
            .collect();
        for (x, &u) in vs.iter().enumerate() {
            for (y, &v) in vs.iter().enumerate() {
                let (bx, by) = (assignment[x], assignment[y]);
                if bx != by {
                    let col = reduced[bx.min(by)][bx.max(by)];
                    colors[u][v] = col;
                }
            }
        }
        for b in 0..blocks {
            let part: Vec<usize> = vs
                .iter()
                .zip(&assignment)
                .filter(|(_, &a)| a == b)
                .map(|(&v, _)| v)
                .collect();
            fill(rng, &part, k, colors);
        }
    }
    let all: Vec<usize> = (0..n).collect();
    fill(rng, &all, k, &mut colors);
    ColoredComplete::from_fn(n, k, |i, j| colors[i][j]).unwrap()
}

fn has_rainbow_triangle(c: &ColoredComplete) -> bool {
    let n = c.n();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|d| {
                let (x, y, z) = (c.color(a, b), c.color(a, d), c.color(b, d));
                x != y && y != z && x != z
            })
        })
    })
}

/// Every set partition of `0..n` in restricted-growth form.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(v: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(vec![v]);
            } else {
                blocks[b].push(v);
            }
            go(v + 1, n, blocks, out);
            if blocks[b].len() == 1 {
                blocks.pop();
            } else {
                blocks[b].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn gallai_partitions_exist_without_rainbow_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(1..=6);
        let c = gallai_coloring(&mut rng, n, k);
        assert!(!has_rainbow_triangle(&c));
        let p = find_gallai_partition(&c)
            .unwrap()
            .expect("Gallai partition exists");
        assert!(verify_gallai_partition(&c, &p).unwrap());
    }
}

#[test]
fn gallai_search_matches_partition_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let partitions: Vec<Vec<Vec<Vec<usize>>>> = (0..=6).map(set_partitions).collect();
    for _ in 0..400 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(2..=4);
        let c = if rng.gen_bool(0.5) {
            gallai_coloring(&mut rng, n, k)
        } else {
            ColoredComplete::from_fn(n, k, |_, _| rng.gen_range(1..=k as Color)).unwrap()
        };
        let exists = partitions[n]
            .iter()
            .filter(|p| p.len() >= 2)
            .any(|p| verify_gallai_partition(&c, &GallaiPartition { blocks: p.clone() }).unwrap());
        assert_eq!(find_gallai_partition(&c).unwrap().is_some(), exists);
    }
}
