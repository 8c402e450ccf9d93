//! Self-check suites shared by `gallai selftest` and the acceptance target.
//!
//! Each suite compares the library against something computed another way:
//! brute force, a printed formula, an independently generated golden file,
//! or a path search written here from scratch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use gallai::formulas::matching_rules;
use gallai::search::brute_force_p5free;
use gallai::{
    canonical_form, classify_p4free, classify_p5free, construction_grid, enumerate_p5free,
    evaluate, verify_witness, CanonicalKey, Color, ColoredComplete, Error, GrKind, P4Class,
    SymmetryMode, TargetGraph,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Queries of the golden formula sweep, one `H k` per line.
pub const GOLDEN_QUERIES: &str = include_str!("../data/eval_sweep.queries");
/// Expected `eval --format table` output for [`GOLDEN_QUERIES`].
pub const GOLDEN_TABLE: &str = include_str!("../data/eval_sweep.golden");

/// Failures listed in a suite result before the rest are only counted.
const MAX_LISTED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>, failures: Vec<String>, summary: String) -> Self {
        let mut listed = failures;
        let total = listed.len();
        listed.truncate(MAX_LISTED);
        if total > MAX_LISTED {
            listed.push(format!("... and {} more", total - MAX_LISTED));
        }
        SuiteResult {
            name: name.into(),
            passed: total == 0,
            summary,
            failures: listed,
        }
    }

    fn error(name: impl Into<String>, e: Error) -> Self {
        SuiteResult::new(name, vec![e.to_string()], "aborted".into())
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.summary)?;
        for line in &self.failures {
            write!(f, "\n       {line}")?;
        }
        Ok(())
    }
}

/// Every suite `gallai selftest` runs, in order.
pub fn selftest(seed: u64, samples: usize) -> Vec<SuiteResult> {
    vec![
        oracle_agreement(5, 4),
        oracle_agreement(5, 5),
        witness_grid(),
        p5_conformance(seed, samples),
        p4_conformance(seed, samples),
        golden_eval(),
        cross_rule_sweep(),
    ]
}

fn keys(colorings: &[ColoredComplete]) -> Result<BTreeSet<CanonicalKey>, Error> {
    colorings
        .iter()
        .map(|c| canonical_form(c, SymmetryMode::VertexAndColor))
        .collect()
}

/// The structured enumerator against brute force filtered by rainbow path search.
pub fn oracle_agreement(n: usize, k: usize) -> SuiteResult {
    let name = format!("oracle agreement n={n} k={k}");
    let run = || -> Result<SuiteResult, Error> {
        let fast = keys(&enumerate_p5free(n, k)?)?;
        let slow: BTreeSet<CanonicalKey> = brute_force_p5free(n, k)?.into_keys().collect();
        let mut failures = Vec::new();
        for key in fast.difference(&slow) {
            failures.push(format!(
                "enumerated only: {}",
                gallai::to_witness_json(&key.to_coloring())
            ));
        }
        for key in slow.difference(&fast) {
            failures.push(format!(
                "brute force only: {}",
                gallai::to_witness_json(&key.to_coloring())
            ));
        }
        let summary = format!(
            "{} classes enumerated, {} by brute force",
            fast.len(),
            slow.len()
        );
        Ok(SuiteResult::new(name.clone(), failures, summary))
    };
    run().unwrap_or_else(|e| SuiteResult::error(name.clone(), e))
}

/// Every grid construction certifies and has its printed order.
pub fn witness_grid() -> SuiteResult {
    let grid = construction_grid();
    let mut failures = Vec::new();
    for e in &grid {
        let label = format!("{} for {} k={}", e.construction, e.target, e.k);
        let c = match e.construction.build() {
            Ok(c) => c,
            Err(err) => {
                failures.push(format!("{label}: {err}"));
                continue;
            }
        };
        match e.construction.expected_order() {
            Ok(order) if order == e.order && c.n() == e.order => {}
            Ok(order) => failures.push(format!(
                "{label}: built {} vertices, formula {order}, printed {}",
                c.n(),
                e.order
            )),
            Err(err) => failures.push(format!("{label}: {err}")),
        }
        if c.k() != e.k {
            failures.push(format!("{label}: uses {} colors", c.k()));
        }
        match verify_witness(&c, &e.target) {
            Ok(cert) if cert.replay() => {}
            Ok(_) => failures.push(format!("{label}: certificate does not replay")),
            Err(f) => failures.push(format!("{label}: {f}")),
        }
    }
    SuiteResult::new(
        "witness grid",
        failures,
        format!("{} constructions", grid.len()),
    )
}

/// Ways [`sample`] draws a coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Every edge uniform over `1..=k`.
    Uniform,
    /// A monochromatic `K_n` with up to six edges recolored.
    Sparse,
    /// A monochromatic `K_{n-1}` plus a vertex with random spokes.
    Apex,
    /// Monochromatic cross edges between random parts, parts colored freely.
    Blowup,
    /// Uniform over at most three of the `k` colors.
    FewColors,
    /// `K_4` split into three perfect matchings, possibly with one edge recolored.
    OneFactors,
    /// The four-color configurations of cases (d), (e) and (f), relabeled,
    /// sometimes with one edge recolored.
    Planted,
}

impl Family {
    const P5: [Family; 6] = [
        Family::Uniform,
        Family::Sparse,
        Family::Apex,
        Family::Blowup,
        Family::FewColors,
        Family::Planted,
    ];
    const P4: [Family; 6] = [
        Family::Uniform,
        Family::Sparse,
        Family::Apex,
        Family::Blowup,
        Family::FewColors,
        Family::OneFactors,
    ];
}

/// Draws an `n`-vertex coloring with declared color count `k`.
pub fn sample(rng: &mut ChaCha8Rng, family: Family, n: usize, k: usize) -> ColoredComplete {
    let color = |rng: &mut ChaCha8Rng| rng.gen_range(1..=k as Color);
    let mut m = vec![vec![0 as Color; n]; n];
    let set = |m: &mut Vec<Vec<Color>>, i: usize, j: usize, c: Color| {
        m[i][j] = c;
        m[j][i] = c;
    };
    match family {
        Family::Uniform => {
            for j in 1..n {
                for i in 0..j {
                    let c = color(rng);
                    set(&mut m, i, j, c);
                }
            }
        }
        Family::Sparse => {
            let base = color(rng);
            for j in 1..n {
                for i in 0..j {
                    set(&mut m, i, j, base);
                }
            }
            for _ in 0..rng.gen_range(0..=6) {
                let (i, j) = distinct_pair(rng, n);
                let c = color(rng);
                set(&mut m, i, j, c);
            }
        }
        Family::Apex => {
            let base = color(rng);
            let apex = rng.gen_range(0..n);
            for j in 1..n {
                for i in 0..j {
                    let c = if i == apex || j == apex {
                        color(rng)
                    } else {
                        base
                    };
                    set(&mut m, i, j, c);
                }
            }
        }
        Family::Blowup => {
            let parts = rng.gen_range(2..=n);
            let mut part: Vec<usize> = (0..n)
                .map(|v| {
                    if v < parts {
                        v
                    } else {
                        rng.gen_range(0..parts)
                    }
                })
                .collect();
            part.shuffle(rng);
            let cross = color(rng);
            let inner: Vec<Color> = (0..parts).map(|_| color(rng)).collect();
            for j in 1..n {
                for i in 0..j {
                    let c = if part[i] != part[j] {
                        cross
                    } else if rng.gen_bool(0.8) {
                        inner[part[i]]
                    } else {
                        color(rng)
                    };
                    set(&mut m, i, j, c);
                }
            }
        }
        Family::FewColors => {
            let mut palette: Vec<Color> = (1..=k as Color).collect();
            palette.shuffle(rng);
            palette.truncate(rng.gen_range(1..=3.min(k)));
            for j in 1..n {
                for i in 0..j {
                    let c = *palette.choose(rng).expect("palette is nonempty");
                    set(&mut m, i, j, c);
                }
            }
        }
        Family::OneFactors => {
            assert!(n == 4 && k >= 3, "one-factor samples are 3-colorings of K4");
            let mut palette: Vec<Color> = (1..=k as Color).collect();
            palette.shuffle(rng);
            for (f, pairs) in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
                .iter()
                .enumerate()
            {
                for &(i, j) in pairs {
                    set(&mut m, i, j, palette[f]);
                }
            }
            if rng.gen_bool(0.3) {
                let (i, j) = distinct_pair(rng, n);
                let c = color(rng);
                set(&mut m, i, j, c);
            }
        }
        Family::Planted if k < 4 => return sample(rng, Family::FewColors, n, k),
        Family::Planted => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut palette: Vec<Color> = (1..=k as Color).collect();
            palette.shuffle(rng);
            let [c1, c2, c3, c4] = [palette[0], palette[1], palette[2], palette[3]];
            let (a, b, c, d) = (order[0], order[1], order[2], order[3]);
            for j in 1..n {
                for i in 0..j {
                    set(&mut m, i, j, c1);
                }
            }
            let template = if n == 5 {
                rng.gen_range(0..3)
            } else {
                rng.gen_range(0..2)
            };
            match template {
                0 => {
                    set(&mut m, a, b, c2);
                    set(&mut m, a, c, c3);
                    set(&mut m, b, c, c4);
                    for &v in &order[3..] {
                        if rng.gen_bool(0.3) {
                            set(&mut m, a, v, c4);
                        }
                    }
                }
                1 => {
                    set(&mut m, a, b, c2);
                    if rng.gen_bool(0.5) {
                        set(&mut m, c, d, c2);
                    }
                    set(&mut m, a, c, c3);
                    set(&mut m, b, d, c3);
                    set(&mut m, a, d, c4);
                    set(&mut m, b, c, c4);
                }
                _ => {
                    let f = gallai::construct::Construction::TwCaseF
                        .build()
                        .expect("fixed coloring builds");
                    for j in 1..5 {
                        for i in 0..j {
                            set(
                                &mut m,
                                order[i],
                                order[j],
                                palette[f.color(i, j) as usize - 1],
                            );
                        }
                    }
                }
            }
            if rng.gen_bool(0.25) {
                let (i, j) = distinct_pair(rng, n);
                let col = color(rng);
                set(&mut m, i, j, col);
            }
        }
    }
    ColoredComplete::from_fn(n, k, |i, j| m[i][j]).expect("sampled colors are in range")
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    (i.min(j), i.max(j))
}

/// Whether `c` has a rainbow path with `m` edges, by plain backtracking over
/// vertex sequences. Deliberately independent of the library's detector.
pub fn has_rainbow_path(c: &ColoredComplete, m: usize) -> bool {
    fn extend(c: &ColoredComplete, path: &mut Vec<usize>, m: usize, used: u64) -> bool {
        if path.len() == m + 1 {
            return true;
        }
        let last = path[path.len() - 1];
        for v in 0..c.n() {
            if path.contains(&v) {
                continue;
            }
            let bit = 1u64 << c.color(last, v);
            if used & bit == 0 {
                path.push(v);
                if extend(c, path, m, used | bit) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..c.n()).any(|v| extend(c, &mut vec![v], m, 0))
}

/// Rainbow-`P5` theorem conformance on seeded samples, `n ∈ [5, 9]`, `k ∈ [2, 8]`:
/// the case set is nonempty exactly when no rainbow `P5` exists, and every
/// reported case rechecks.
pub fn p5_conformance(seed: u64, samples: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut free = 0;
    let mut letters: BTreeMap<char, usize> = BTreeMap::new();
    let mut families: BTreeMap<Family, usize> = BTreeMap::new();
    for i in 0..samples {
        let family = Family::P5[i % Family::P5.len()];
        let (n, k) = (rng.gen_range(5..=9), rng.gen_range(2..=8));
        let c = sample(&mut rng, family, n, k);
        *families.entry(family).or_default() += 1;
        let rainbow = has_rainbow_path(&c, 4);
        match classify_p5free(&c) {
            Ok(report) => {
                if report.is_empty() != rainbow {
                    failures.push(format!(
                        "cases {:?} but rainbow P5 = {rainbow}: {}",
                        report.letters(),
                        gallai::to_witness_json(&c)
                    ));
                }
                if let Some(w) = report.cases.iter().find(|w| !w.verify(&c)) {
                    failures.push(format!(
                        "case ({}) does not recheck: {}",
                        w.letter(),
                        gallai::to_witness_json(&c)
                    ));
                }
                if !report.is_empty() {
                    free += 1;
                }
                for w in &report.cases {
                    *letters.entry(w.letter()).or_default() += 1;
                }
            }
            Err(e) => failures.push(format!("{e}: {}", gallai::to_witness_json(&c))),
        }
    }
    let seen: Vec<String> = letters
        .iter()
        .map(|(l, count)| format!("{l}={count}"))
        .collect();
    let summary = format!(
        "{samples} samples (seed {seed}), {free} rainbow-P5-free; cases {}; families {:?}",
        seen.join(" "),
        families
    );
    SuiteResult::new("P5 structure conformance", failures, summary)
}

/// The class the rainbow-`P4` theorem predicts, from first principles.
fn expected_p4(c: &ColoredComplete) -> Option<&'static str> {
    let used = c.used_colors();
    if used.len() <= 2 {
        return Some("at-most-two-colors");
    }
    let matching = |j: Color| {
        (0..c.n()).all(|v| (0..c.n()).filter(|&u| u != v && c.color(u, v) == j).count() == 1)
    };
    (c.n() == 4 && used.len() == 3 && used.iter().all(|&j| matching(j)))
        .then_some("three-one-factors")
}

/// Rainbow-`P4` theorem conformance on seeded samples, `n ∈ [4, 8]`, `k ∈ [2, 8]`.
pub fn p4_conformance(seed: u64, samples: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0004);
    let mut failures = Vec::new();
    let mut classes: BTreeMap<&'static str, usize> = BTreeMap::new();
    for i in 0..samples {
        let family = Family::P4[i % Family::P4.len()];
        let (n, k) = match family {
            Family::OneFactors => (4, rng.gen_range(3..=8)),
            _ => (rng.gen_range(4..=8), rng.gen_range(2..=8)),
        };
        let c = sample(&mut rng, family, n, k);
        let rainbow = has_rainbow_path(&c, 3);
        let expected = expected_p4(&c);
        // The theorem: no rainbow P4 exactly when one of its two cases holds.
        if rainbow == expected.is_some() {
            failures.push(format!(
                "theorem fails by direct check: {}",
                gallai::to_witness_json(&c)
            ));
            continue;
        }
        let got = match classify_p4free(&c) {
            Ok(P4Class::AtMostTwoColors) => "at-most-two-colors",
            Ok(P4Class::ThreeOneFactors) => "three-one-factors",
            Ok(P4Class::RainbowP4 { path }) => {
                if !path.verify_rainbow(&c) {
                    failures.push(format!(
                        "reported path is not rainbow: {}",
                        gallai::to_witness_json(&c)
                    ));
                }
                "rainbow-p4"
            }
            Err(e) => {
                failures.push(format!("{e}: {}", gallai::to_witness_json(&c)));
                continue;
            }
        };
        if got != expected.unwrap_or("rainbow-p4") {
            failures.push(format!(
                "classified {got}, expected {expected:?}: {}",
                gallai::to_witness_json(&c)
            ));
        }
        *classes.entry(got).or_default() += 1;
    }
    let summary = format!("{samples} samples (seed {seed}); classes {classes:?}");
    SuiteResult::new("P4 structure conformance", failures, summary)
}

/// Evaluates the golden queries and renders them as `eval --format table` does.
pub fn golden_table() -> Result<String, Error> {
    let mut rows = Vec::new();
    for (h, k) in crate::read_queries(GOLDEN_QUERIES)? {
        let r = evaluate(&h, k)?;
        rows.push((h, k, r));
    }
    Ok(crate::eval_table(&rows))
}

/// Byte-exact comparison of the evaluator against the golden table.
pub fn golden_eval() -> SuiteResult {
    let name = "golden formula table";
    let table = match golden_table() {
        Ok(t) => t,
        Err(e) => return SuiteResult::error(name, e),
    };
    let mut failures = Vec::new();
    let (got, want): (Vec<&str>, Vec<&str>) =
        (table.lines().collect(), GOLDEN_TABLE.lines().collect());
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        if g != w {
            failures.push(format!("line {}: got {g:?}, golden {w:?}", i + 1));
        }
    }
    if got.len() != want.len() {
        failures.push(format!("{} lines, golden has {}", got.len(), want.len()));
    }
    if failures.is_empty() && table != GOLDEN_TABLE {
        failures.push("line endings or trailing bytes differ".into());
    }
    SuiteResult::new(
        name,
        failures,
        format!("{} rows", want.len().saturating_sub(1)),
    )
}

/// Targets of the consistency grid: `t ∈ [3, 12]`, `r ∈ [0, ⌊(t-1)/2⌋]`, `ω ∈ [4, 8]`.
pub fn sweep_targets() -> Result<Vec<TargetGraph>, Error> {
    let mut out = Vec::new();
    for t in 3..=12 {
        out.push(TargetGraph::complete(t)?);
        out.push(TargetGraph::complete_minus_matching(t)?);
        for r in 0..=(t - 1) / 2 {
            out.push(TargetGraph::star_plus(t, r)?);
        }
        for omega in (4..=8).filter(|&w| w < t) {
            out.push(TargetGraph::pineapple(t, omega)?);
        }
    }
    Ok(out)
}

/// Every `(H, k)` of the grid with `k ∈ [3, 20]`: matching exact rules agree
/// and bounds are ordered.
pub fn cross_rule_sweep() -> SuiteResult {
    let name = "cross-rule consistency";
    let targets = match sweep_targets() {
        Ok(t) => t,
        Err(e) => return SuiteResult::error(name, e),
    };
    let mut failures = Vec::new();
    let (mut queries, mut overlaps) = (0, 0);
    for h in &targets {
        for k in 3..=20 {
            queries += 1;
            match evaluate(h, k) {
                Ok(r) => {
                    if let GrKind::Bounds { lo, hi: Some(hi) } = r.kind {
                        if lo > hi {
                            failures.push(format!("{h} k={k}: bounds [{lo}, {hi}]"));
                        }
                    }
                }
                Err(e) => failures.push(format!("{h} k={k}: {e}")),
            }
            let exact: Vec<(String, u64)> = match matching_rules(h, k, None) {
                Ok(rules) => rules
                    .into_iter()
                    .filter_map(|(id, r)| r.exact().map(|v| (id, v)))
                    .collect(),
                Err(e) => {
                    failures.push(format!("{h} k={k}: {e}"));
                    continue;
                }
            };
            if exact.len() >= 2 {
                overlaps += 1;
            }
            if exact.windows(2).any(|w| w[0].1 != w[1].1) {
                failures.push(format!("{h} k={k}: {exact:?}"));
            }
        }
    }
    let summary = format!("{queries} queries, {overlaps} with two or more exact rules");
    SuiteResult::new(name, failures, summary)
}
