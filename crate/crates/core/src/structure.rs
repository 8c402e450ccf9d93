//! Structure of colorings without a rainbow `P4` or `P5`.
//!
//! [`classify_p5free`] evaluates every case (a)-(f) of the Thomason-Wagner
//! theorem independently and cross-checks the verdict against the rainbow
//! detector. [`enumerate_p5free`] runs the theorem backwards: it generates
//! the colorings described by cases (b)-(f) and keeps the rainbow-`P5`-free
//! exact ones, one per isomorphism class.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, SymmetryMode};
use crate::construct::sporadic;
use crate::detect::{find_rainbow_path, Embedding};
use crate::error::{invalid, Error, Result};
use crate::graph::{members, pair_count, Color, ColoredComplete, VertexSet};

/// Largest order accepted by [`enumerate_p5free`] and [`find_gallai_partition`].
pub const MAX_ENUMERATION_ORDER: usize = 9;
/// Largest color count accepted by [`enumerate_p5free`].
pub const MAX_ENUMERATION_COLORS: usize = 12;
/// Largest order accepted by [`find_gallai_partition`].
pub const MAX_PARTITION_ORDER: usize = 10;

/// Verdict of the rainbow-`P4` structure theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum P4Class {
    /// At most two colors are used.
    AtMostTwoColors,
    /// `n = 4` and three colors each form a perfect matching.
    ThreeOneFactors,
    RainbowP4 {
        path: Embedding,
    },
}

/// Classifies a coloring of `K_n`, `n >= 4`, against the rainbow-`P4` theorem.
///
/// Fails with [`Error::TheoremViolation`] if neither case holds and yet no
/// rainbow `P4` exists.
pub fn classify_p4free(c: &ColoredComplete) -> Result<P4Class> {
    if c.n() < 4 {
        return invalid("the rainbow-P4 structure theorem needs n >= 4");
    }
    let used = c.used_colors();
    let class = if used.len() <= 2 {
        Some(P4Class::AtMostTwoColors)
    } else if c.n() == 4 && used.len() == 3 && used.iter().all(|&j| is_perfect_matching(c, j)) {
        Some(P4Class::ThreeOneFactors)
    } else {
        None
    };
    let path = find_rainbow_path(c, 3)?;
    match (class, path) {
        (Some(_), Some(p)) => Err(Error::TheoremViolation(format!(
            "coloring satisfies a P4 case but has a rainbow P4 on {:?}",
            p.vertices
        ))),
        (Some(class), None) => Ok(class),
        (None, Some(path)) => Ok(P4Class::RainbowP4 { path }),
        (None, None) => Err(Error::TheoremViolation(
            "no rainbow P4, yet neither structure case holds".into(),
        )),
    }
}

fn is_perfect_matching(c: &ColoredComplete, j: Color) -> bool {
    (0..c.n()).all(|v| c.degree(v, j) == 1)
}

/// One satisfied case of the rainbow-`P5` structure theorem, with the data
/// that realizes it. Colors named `c1..c4` are host colors playing the
/// theorem's colors `1..4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum CaseWitness {
    /// (a) at most three colors are used.
    A { colors: usize },
    /// (b) the sets `V^(j)` of the non-dominant colors are pairwise disjoint.
    B {
        dominant: Color,
        parts: Vec<(Color, Vec<usize>)>,
    },
    /// (c) `K_n - apex` is monochromatic.
    C { apex: usize, color: Color },
    /// (d) `E2 = {ab}`, `E3 = {ac}`, `bc ∈ E4 ⊆ {bc} ∪ edges at a`, the rest `E1`.
    D {
        a: usize,
        b: usize,
        c: usize,
        colors: [Color; 4],
        e4: Vec<(usize, usize)>,
    },
    /// (e) `{ab} ⊆ E2 ⊆ {ab, cd}`, `E3 = {ac, bd}`, `E4 = {ad, bc}`, the rest `E1`.
    E {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        colors: [Color; 4],
        cd_in_e2: bool,
    },
    /// (f) `n = 5` with the fixed four-coloring; `labels` lists `a, b, c, d, e`.
    F {
        labels: [usize; 5],
        colors: [Color; 4],
    },
}

impl CaseWitness {
    pub fn letter(&self) -> char {
        match self {
            CaseWitness::A { .. } => 'a',
            CaseWitness::B { .. } => 'b',
            CaseWitness::C { .. } => 'c',
            CaseWitness::D { .. } => 'd',
            CaseWitness::E { .. } => 'e',
            CaseWitness::F { .. } => 'f',
        }
    }

    /// Rechecks the case's defining predicate on `c` using the recorded data.
    pub fn verify(&self, c: &ColoredComplete) -> bool {
        let n = c.n();
        match self {
            CaseWitness::A { colors } => *colors == c.used_color_count() && *colors <= 3,
            CaseWitness::B { dominant, parts } => {
                let listed: Vec<Color> = parts.iter().map(|(j, _)| *j).collect();
                let expected: Vec<Color> = c
                    .used_colors()
                    .into_iter()
                    .filter(|j| j != dominant)
                    .collect();
                if listed != expected {
                    return false;
                }
                let mut seen: VertexSet = 0;
                for (j, vs) in parts {
                    let set = vs.iter().fold(0u64, |s, &v| s | 1 << v);
                    if set != c.touched_by(*j) || seen & set != 0 {
                        return false;
                    }
                    seen |= set;
                }
                true
            }
            CaseWitness::C { apex, color } => {
                *apex < n
                    && (0..n).all(|j| {
                        (0..j).all(|i| i == *apex || j == *apex || c.color(i, j) == *color)
                    })
            }
            CaseWitness::D {
                a,
                b,
                c: cc,
                colors,
                e4,
            } => {
                let [c1, c2, c3, c4] = *colors;
                let (a, b, cv) = (*a, *b, *cc);
                distinct(&[a, b, cv], n)
                    && distinct_colors(colors)
                    && c.edges_of(c2) == vec![ordered(a, b)]
                    && c.edges_of(c3) == vec![ordered(a, cv)]
                    && *e4 == c.edges_of(c4)
                    && e4.contains(&ordered(b, cv))
                    && e4
                        .iter()
                        .all(|&(x, y)| (x, y) == ordered(b, cv) || x == a || y == a)
                    && c.edge_count(c1) + 2 + e4.len() == pair_count(n)
            }
            CaseWitness::E {
                a,
                b,
                c: cc,
                d,
                colors,
                cd_in_e2,
            } => {
                let [c1, c2, c3, c4] = *colors;
                let (a, b, cv, d) = (*a, *b, *cc, *d);
                let mut e2 = vec![ordered(a, b)];
                if *cd_in_e2 {
                    e2.push(ordered(cv, d));
                }
                e2.sort_unstable();
                let mut e3 = vec![ordered(a, cv), ordered(b, d)];
                e3.sort_unstable();
                let mut e4 = vec![ordered(a, d), ordered(b, cv)];
                e4.sort_unstable();
                distinct(&[a, b, cv, d], n)
                    && distinct_colors(colors)
                    && sorted_edges(c, c2) == e2
                    && sorted_edges(c, c3) == e3
                    && sorted_edges(c, c4) == e4
                    && c.edge_count(c1) + e2.len() + 4 == pair_count(n)
            }
            CaseWitness::F { labels, colors } => {
                n == 5 && distinct(labels, n) && distinct_colors(colors) && {
                    let [a, b, cv, d, e] = *labels;
                    let classes: [&[(usize, usize)]; 4] = [
                        &[(a, d), (a, e), (b, cv)],
                        &[(b, d), (b, e), (a, cv)],
                        &[(cv, d), (cv, e), (a, b)],
                        &[(d, e)],
                    ];
                    classes
                        .iter()
                        .zip(colors)
                        .all(|(edges, &col)| edges.iter().all(|&(x, y)| c.color(x, y) == col))
                }
            }
        }
    }
}

fn sorted_edges(c: &ColoredComplete, j: Color) -> Vec<(usize, usize)> {
    let mut e = c.edges_of(j);
    e.sort_unstable();
    e
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn distinct(vs: &[usize], n: usize) -> bool {
    vs.iter().all(|&v| v < n) && (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| vs[i] != vs[j]))
}

fn distinct_colors(cs: &[Color; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| cs[i] != cs[j]))
}

/// All satisfied cases of the rainbow-`P5` theorem, in case order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub cases: Vec<CaseWitness>,
    /// A rainbow `P5`, present exactly when `cases` is empty.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rainbow_p5: Option<Embedding>,
}

impl StructureReport {
    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    /// The satisfied case letters, e.g. `"bc"`.
    pub fn letters(&self) -> String {
        self.cases.iter().map(CaseWitness::letter).collect()
    }

    pub fn contains(&self, letter: char) -> bool {
        self.cases.iter().any(|w| w.letter() == letter)
    }
}

/// Evaluates cases (a)-(f) of the rainbow-`P5` structure theorem on `c`.
///
/// Every case implies the absence of a rainbow `P5`, and the theorem says
/// one case holds whenever there is none; both directions are checked
/// against the detector and a mismatch is reported as
/// [`Error::TheoremViolation`].
pub fn classify_p5free(c: &ColoredComplete) -> Result<StructureReport> {
    if c.n() < 5 {
        return invalid("the rainbow-P5 structure theorem needs n >= 5");
    }
    let cases: Vec<CaseWitness> = [
        case_a(c),
        case_b(c),
        case_c(c),
        case_d(c),
        case_e(c),
        case_f(c),
    ]
    .into_iter()
    .flatten()
    .collect();
    for w in &cases {
        if !w.verify(c) {
            return Err(Error::InternalInconsistency(format!(
                "case ({}) witness fails its own predicate",
                w.letter()
            )));
        }
    }
    let rainbow_p5 = find_rainbow_path(c, 4)?;
    match (cases.is_empty(), &rainbow_p5) {
        (true, None) => Err(Error::TheoremViolation(
            "no rainbow P5, yet none of the cases (a)-(f) holds".into(),
        )),
        (false, Some(p)) => Err(Error::TheoremViolation(format!(
            "case ({}) holds but there is a rainbow P5 on {:?}",
            cases[0].letter(),
            p.vertices
        ))),
        _ => Ok(StructureReport { cases, rainbow_p5 }),
    }
}

fn case_a(c: &ColoredComplete) -> Option<CaseWitness> {
    let colors = c.used_color_count();
    (colors <= 3).then_some(CaseWitness::A { colors })
}

fn case_b(c: &ColoredComplete) -> Option<CaseWitness> {
    let used = c.used_colors();
    used.iter().find_map(|&dominant| {
        let mut seen = 0u64;
        let mut parts = Vec::new();
        for &j in used.iter().filter(|&&j| j != dominant) {
            let set = c.touched_by(j);
            if seen & set != 0 {
                return None;
            }
            seen |= set;
            parts.push((j, members(set).collect()));
        }
        Some(CaseWitness::B { dominant, parts })
    })
}

fn case_c(c: &ColoredComplete) -> Option<CaseWitness> {
    let n = c.n();
    (0..n).find_map(|apex| {
        let (i0, j0) = if apex == 0 {
            (1, 2)
        } else if apex == 1 {
            (0, 2)
        } else {
            (0, 1)
        };
        let color = c.color(i0, j0);
        let mono = (0..n).all(|j| (0..j).all(|i| i == apex || j == apex || c.color(i, j) == color));
        mono.then_some(CaseWitness::C { apex, color })
    })
}

fn case_d(c: &ColoredComplete) -> Option<CaseWitness> {
    let used = c.used_colors();
    if used.len() != 4 {
        return None;
    }
    let singles: Vec<(Color, (usize, usize))> = used
        .iter()
        .filter(|&&j| c.edge_count(j) == 1)
        .map(|&j| (j, c.edges_of(j)[0]))
        .collect();
    for &(c2, (x, y)) in &singles {
        for &(c3, (u, v)) in &singles {
            if c2 == c3 {
                continue;
            }
            let (a, b, cv) = if x == u && y != v {
                (x, y, v)
            } else if x == v && y != u {
                (x, y, u)
            } else if y == u && x != v {
                (y, x, v)
            } else if y == v && x != u {
                (y, x, u)
            } else {
                continue;
            };
            let c4 = c.color(b, cv);
            if c4 == c2 || c4 == c3 {
                continue;
            }
            let c1 = *used
                .iter()
                .find(|&&j| j != c2 && j != c3 && j != c4)
                .expect("four colors");
            let e4 = c.edges_of(c4);
            if e4
                .iter()
                .all(|&(p, q)| (p, q) == ordered(b, cv) || p == a || q == a)
            {
                return Some(CaseWitness::D {
                    a,
                    b,
                    c: cv,
                    colors: [c1, c2, c3, c4],
                    e4,
                });
            }
        }
    }
    None
}

fn two_edge_matching(c: &ColoredComplete, j: Color) -> Option<[(usize, usize); 2]> {
    let e = c.edges_of(j);
    (e.len() == 2 && distinct(&[e[0].0, e[0].1, e[1].0, e[1].1], c.n())).then(|| [e[0], e[1]])
}

fn case_e(c: &ColoredComplete) -> Option<CaseWitness> {
    let used = c.used_colors();
    if used.len() != 4 {
        return None;
    }
    for &c3 in &used {
        let Some(m3) = two_edge_matching(c, c3) else {
            continue;
        };
        let set3 = [m3[0].0, m3[0].1, m3[1].0, m3[1].1]
            .iter()
            .fold(0u64, |s, &v| s | 1 << v);
        for &c4 in &used {
            if c4 == c3 {
                continue;
            }
            let Some(m4) = two_edge_matching(c, c4) else {
                continue;
            };
            let set4 = [m4[0].0, m4[0].1, m4[1].0, m4[1].1]
                .iter()
                .fold(0u64, |s, &v| s | 1 << v);
            if set3 != set4 || m3.contains(&m4[0]) {
                continue;
            }
            // The third pairing of the same four vertices.
            let p = m3[0].0;
            let partner3 = if m3[0].0 == p { m3[0].1 } else { m3[0].0 };
            let partner4 = if m4[0].0 == p || m4[0].1 == p {
                if m4[0].0 == p {
                    m4[0].1
                } else {
                    m4[0].0
                }
            } else if m4[1].0 == p {
                m4[1].1
            } else {
                m4[1].0
            };
            let q = members(set3 & !(1 << p | 1 << partner3 | 1 << partner4))
                .next()
                .expect("fourth vertex");
            let rest: Vec<usize> = members(set3 & !(1 << p | 1 << q)).collect();
            let pairing = [ordered(p, q), ordered(rest[0], rest[1])];
            for (ab, cd) in [(pairing[0], pairing[1]), (pairing[1], pairing[0])] {
                let c2 = c.color(ab.0, ab.1);
                if c2 == c3 || c2 == c4 {
                    continue;
                }
                let c1 = *used
                    .iter()
                    .find(|&&j| j != c2 && j != c3 && j != c4)
                    .expect("four colors");
                let col_cd = c.color(cd.0, cd.1);
                let e2 = c.edges_of(c2);
                let e2_ok = e2.iter().all(|e| *e == ab || *e == cd);
                if !e2_ok || (col_cd != c2 && col_cd != c1) {
                    continue;
                }
                let (a, b) = ab;
                let cv = if m3.iter().any(|&e| e == ordered(a, cd.0)) {
                    cd.0
                } else {
                    cd.1
                };
                let d = if cv == cd.0 { cd.1 } else { cd.0 };
                return Some(CaseWitness::E {
                    a,
                    b,
                    c: cv,
                    d,
                    colors: [c1, c2, c3, c4],
                    cd_in_e2: col_cd == c2,
                });
            }
        }
    }
    None
}

fn case_f(c: &ColoredComplete) -> Option<CaseWitness> {
    if c.n() != 5 || c.used_color_count() != 4 {
        return None;
    }
    let mut perm = [0, 1, 2, 3, 4];
    for_each_permutation(&mut perm, 0, &mut |labels| {
        let [a, b, cv, d, e] = *labels;
        let colors = [c.color(a, d), c.color(b, d), c.color(cv, d), c.color(d, e)];
        let w = CaseWitness::F {
            labels: *labels,
            colors,
        };
        w.verify(c).then_some(w)
    })
}

fn for_each_permutation<T>(
    perm: &mut [usize; 5],
    at: usize,
    f: &mut impl FnMut(&[usize; 5]) -> Option<T>,
) -> Option<T> {
    if at == perm.len() {
        return f(perm);
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        if let Some(x) = for_each_permutation(perm, at + 1, f) {
            return Some(x);
        }
        perm.swap(at, i);
    }
    None
}

/// A nontrivial vertex partition whose blocks are joined by single colors,
/// at most two colors in total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPartition {
    pub blocks: Vec<Vec<usize>>,
}

/// Checks both Gallai conditions. Errors if `p` is not a partition of the
/// vertex set into at least two nonempty blocks.
pub fn verify_gallai_partition(c: &ColoredComplete, p: &GallaiPartition) -> Result<bool> {
    let n = c.n();
    if p.blocks.len() < 2 {
        return invalid("a Gallai partition needs at least two blocks");
    }
    let mut block_of = vec![usize::MAX; n];
    for (b, block) in p.blocks.iter().enumerate() {
        if block.is_empty() {
            return invalid(format!("block {b} is empty"));
        }
        for &v in block {
            if v >= n {
                return invalid(format!("vertex {v} outside 0..{n}"));
            }
            if block_of[v] != usize::MAX {
                return invalid(format!("vertex {v} appears twice"));
            }
            block_of[v] = b;
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return invalid(format!("vertex {v} is in no block"));
    }
    let t = p.blocks.len();
    let mut between = vec![0 as Color; t * t];
    let mut colors = 0u64;
    for j in 0..n {
        for i in 0..j {
            let (bi, bj) = (block_of[i], block_of[j]);
            if bi == bj {
                continue;
            }
            let col = c.color(i, j);
            let slot = &mut between[bi.min(bj) * t + bi.max(bj)];
            if *slot == 0 {
                *slot = col;
            } else if *slot != col {
                return Ok(false);
            }
            colors |= 1 << col;
        }
    }
    Ok(colors.count_ones() <= 2)
}

/// Some Gallai partition of `c`, searching set partitions in
/// restricted-growth order with pruning; `None` if there is none.
pub fn find_gallai_partition(c: &ColoredComplete) -> Result<Option<GallaiPartition>> {
    let n = c.n();
    if n > MAX_PARTITION_ORDER {
        return Err(Error::UnsupportedSize {
            what: "Gallai partition order",
            got: n,
            max: MAX_PARTITION_ORDER,
        });
    }
    if n < 2 {
        return Ok(None);
    }
    let mut block_of = vec![0usize; n];
    let mut between = vec![0 as Color; n * n];
    if gallai_extend(c, 1, 1, &mut block_of, &mut between, 0) {
        let blocks_count = block_of.iter().max().expect("nonempty") + 1;
        let mut blocks = vec![Vec::new(); blocks_count];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b].push(v);
        }
        let p = GallaiPartition { blocks };
        debug_assert!(verify_gallai_partition(c, &p).unwrap_or(false));
        Ok(Some(p))
    } else {
        Ok(None)
    }
}

fn gallai_extend(
    c: &ColoredComplete,
    v: usize,
    blocks: usize,
    block_of: &mut [usize],
    between: &mut [Color],
    colors: u64,
) -> bool {
    let n = c.n();
    if v == n {
        return blocks >= 2;
    }
    for b in 0..=blocks {
        // Tentatively place v in block b and record new block-pair colors.
        let mut set: Vec<usize> = Vec::new();
        let mut new_colors = colors;
        let mut ok = true;
        for (u, &bu) in block_of.iter().enumerate().take(v) {
            if bu == b {
                continue;
            }
            let slot = bu.min(b) * n + bu.max(b);
            let col = c.color(u, v);
            if between[slot] == 0 {
                between[slot] = col;
                set.push(slot);
                new_colors |= 1 << col;
            } else if between[slot] != col {
                ok = false;
                break;
            }
        }
        if ok && new_colors.count_ones() <= 2 {
            block_of[v] = b;
            let next_blocks = if b == blocks { blocks + 1 } else { blocks };
            if gallai_extend(c, v + 1, next_blocks, block_of, between, new_colors) {
                return true;
            }
        }
        for slot in set {
            between[slot] = 0;
        }
    }
    false
}

type EdgeList = Vec<(usize, usize)>;

/// Graphs on `s` vertices without isolated vertices, one per isomorphism
/// class, as edge lists.
fn graphs_without_isolated(s: usize) -> &'static [Vec<(usize, usize)>] {
    static CACHE: OnceLock<Vec<Vec<EdgeList>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| (0..=6).map(build_graphs_without_isolated).collect());
    &all[s]
}

fn build_graphs_without_isolated(s: usize) -> Vec<Vec<(usize, usize)>> {
    if s < 2 {
        return Vec::new();
    }
    let m = pair_count(s);
    let mut seen = BTreeMap::new();
    for mask in 1u32..(1 << m) {
        let g = ColoredComplete::new(
            s,
            2,
            (0..m)
                .map(|e| if mask & (1 << e) != 0 { 2 } else { 1 })
                .collect(),
        )
        .expect("valid");
        if g.touched_by(2).count_ones() as usize != s {
            continue;
        }
        let key = canonical_form(&g, SymmetryMode::VertexOnly).expect("small");
        seen.entry(key).or_insert_with(|| g.edges_of(2));
    }
    seen.into_values().collect()
}

/// Nonincreasing sequences of `parts` integers, each at least `min`, with
/// sum at most `budget`.
fn compositions(parts: usize, min: usize, budget: usize) -> Vec<Vec<usize>> {
    fn go(
        parts: usize,
        min: usize,
        cap: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            out.push(cur.clone());
            return;
        }
        for s in min..=cap.min(budget.saturating_sub(min * (parts - 1))) {
            cur.push(s);
            go(parts - 1, min, s, budget - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts * min <= budget {
        go(parts, min, budget, budget, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions of `total` into exactly `parts` positive parts, nonincreasing.
fn partitions_exact(total: usize, parts: usize) -> Vec<Vec<usize>> {
    compositions(parts, 1, total)
        .into_iter()
        .filter(|p| p.iter().sum::<usize>() == total)
        .collect()
}

fn case_b_candidates(n: usize, k: usize) -> Vec<ColoredComplete> {
    let mut out = Vec::new();
    for sizes in compositions(k - 1, 2, n) {
        let options: Vec<&[Vec<(usize, usize)>]> =
            sizes.iter().map(|&s| graphs_without_isolated(s)).collect();
        let mut choice = vec![0usize; sizes.len()];
        loop {
            // Equal-sized parts are interchangeable by a color swap, so keep
            // their graph indices nondecreasing.
            let canonical_order =
                (1..sizes.len()).all(|i| sizes[i] != sizes[i - 1] || choice[i] >= choice[i - 1]);
            if canonical_order {
                let mut part_of = vec![usize::MAX; n];
                let mut offset = 0;
                for (p, &s) in sizes.iter().enumerate() {
                    part_of[offset..offset + s].fill(p);
                    offset += s;
                }
                let mut starts = Vec::with_capacity(sizes.len());
                let mut acc = 0;
                for &s in &sizes {
                    starts.push(acc);
                    acc += s;
                }
                let c = ColoredComplete::from_fn(n, k, |i, j| {
                    let (pi, pj) = (part_of[i], part_of[j]);
                    if pi != usize::MAX && pi == pj {
                        let (li, lj) = (i - starts[pi], j - starts[pi]);
                        let g = &options[pi][choice[pi]];
                        if g.contains(&ordered(li, lj)) {
                            return (pi + 2) as Color;
                        }
                    }
                    1
                })
                .expect("valid");
                out.push(c);
            }
            if !advance(&mut choice, &options) {
                break;
            }
        }
    }
    out
}

/// Odometer step over per-part graph choices; false once it wraps.
fn advance(choice: &mut [usize], options: &[&[Vec<(usize, usize)>]]) -> bool {
    for (i, slot) in choice.iter_mut().enumerate() {
        *slot += 1;
        if *slot < options[i].len() {
            return true;
        }
        *slot = 0;
    }
    false
}

fn case_c_candidates(n: usize, k: usize) -> Vec<ColoredComplete> {
    let mut out = Vec::new();
    let spokes = n - 1;
    if k - 1 > spokes {
        return out;
    }
    for base_spokes in 0..=spokes - (k - 1) {
        for counts in partitions_exact(spokes - base_spokes, k - 1) {
            let mut colors: Vec<Color> = vec![1; base_spokes];
            for (i, &cnt) in counts.iter().enumerate() {
                colors.extend(std::iter::repeat_n((i + 2) as Color, cnt));
            }
            let apex = n - 1;
            out.push(
                ColoredComplete::from_fn(n, k, |i, j| if j == apex { colors[i] } else { 1 })
                    .expect("valid"),
            );
        }
    }
    out
}

fn case_d_candidates(n: usize) -> Vec<ColoredComplete> {
    (0..=n - 3)
        .map(|extra| {
            ColoredComplete::from_fn(n, 4, |i, j| match (i, j) {
                (0, 1) => 2,
                (0, 2) => 3,
                (1, 2) => 4,
                (0, x) if x < 3 + extra => 4,
                _ => 1,
            })
            .expect("valid")
        })
        .collect()
}

fn case_e_candidates(n: usize) -> Vec<ColoredComplete> {
    [false, true]
        .into_iter()
        .map(|cd_in_e2| {
            // a, b, c, d = 0, 1, 2, 3
            ColoredComplete::from_fn(n, 4, |i, j| match (i, j) {
                (0, 1) => 2,
                (2, 3) if cd_in_e2 => 2,
                (0, 2) | (1, 3) => 3,
                (0, 3) | (1, 2) => 4,
                _ => 1,
            })
            .expect("valid")
        })
        .collect()
}

/// Every exact `k`-coloring of `K_n` without a rainbow `P5`, one per class
/// under vertex and color permutations, sorted by canonical key.
///
/// Needs `5 <= n <= 9` and `4 <= k <= 12`; with three or fewer colors every
/// coloring qualifies and the problem is a Ramsey search, which is refused.
pub fn enumerate_p5free(n: usize, k: usize) -> Result<Vec<ColoredComplete>> {
    if k <= 3 {
        return Err(Error::Unsupported(format!(
            "k = {k}: every coloring with at most three colors avoids a rainbow P5"
        )));
    }
    if n < 5 {
        return invalid("enumeration needs n >= 5");
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedSize {
            what: "enumeration order",
            got: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    if k > MAX_ENUMERATION_COLORS {
        return Err(Error::UnsupportedSize {
            what: "enumeration color count",
            got: k,
            max: MAX_ENUMERATION_COLORS,
        });
    }
    let mut candidates = case_b_candidates(n, k);
    candidates.extend(case_c_candidates(n, k));
    if k == 4 {
        candidates.extend(case_d_candidates(n));
        candidates.extend(case_e_candidates(n));
        if n == 5 {
            candidates.push(sporadic("TW-case-f")?);
        }
    }
    let keyed: Vec<_> = candidates
        .into_par_iter()
        .filter(|c| c.is_exact())
        .filter(|c| find_rainbow_path(c, 4).expect("n >= 5").is_none())
        .map(|c| {
            (
                canonical_form(&c, SymmetryMode::VertexAndColor).expect("n <= 9"),
                c,
            )
        })
        .collect();
    let mut unique = BTreeMap::new();
    for (key, _) in keyed {
        unique.entry(key).or_insert(());
    }
    Ok(unique.into_keys().map(|key| key.to_coloring()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{star_augmented, Construction};

    #[test]
    fn p4_examples() {
        let two =
            ColoredComplete::from_fn(6, 2, |i, j| if (i + j) % 2 == 0 { 1 } else { 2 }).unwrap();
        assert_eq!(classify_p4free(&two).unwrap(), P4Class::AtMostTwoColors);
        let factors = ColoredComplete::from_fn(4, 3, |i, j| match (i, j) {
            (0, 1) | (2, 3) => 1,
            (0, 2) | (1, 3) => 2,
            _ => 3,
        })
        .unwrap();
        assert_eq!(classify_p4free(&factors).unwrap(), P4Class::ThreeOneFactors);
        let g2 = sporadic("G2").unwrap();
        assert!(matches!(
            classify_p4free(&g2).unwrap(),
            P4Class::RainbowP4 { .. }
        ));
    }

    #[test]
    fn p5_examples() {
        let f = classify_p5free(&sporadic("TW-case-f").unwrap()).unwrap();
        assert!(f.contains('f'));
        let g4 = Construction::G4 { a: 5, t: 4, k: 4 }.build().unwrap();
        let report = classify_p5free(&g4).unwrap();
        let Some(CaseWitness::B { dominant, parts }) =
            report.cases.iter().find(|w| w.letter() == 'b')
        else {
            panic!("G4 should be in case (b): {report:?}");
        };
        assert_eq!(*dominant, 1);
        assert_eq!(parts.len(), 3);
        let g3 = star_augmented(5, 1, &[2, 3, 4, 5, 6]).unwrap();
        let report = classify_p5free(&g3).unwrap();
        assert!(report.cases.contains(&CaseWitness::C { apex: 5, color: 1 }));
        assert!(classify_p5free(&sporadic("G1").unwrap()).is_err());
    }

    #[test]
    fn templates_classify_as_their_cases() {
        for c in case_d_candidates(7) {
            assert!(classify_p5free(&c).unwrap().contains('d'));
        }
        for c in case_e_candidates(6) {
            assert!(classify_p5free(&c).unwrap().contains('e'));
        }
    }

    #[test]
    fn gallai_examples() {
        let two = ColoredComplete::from_fn(5, 2, |i, j| if j - i == 1 { 1 } else { 2 }).unwrap();
        let singletons = GallaiPartition {
            blocks: (0..5).map(|v| vec![v]).collect(),
        };
        assert!(verify_gallai_partition(&two, &singletons).unwrap());
        let g4 = Construction::G4 { a: 5, t: 4, k: 4 }.build().unwrap();
        let parts = GallaiPartition {
            blocks: (0..4).map(|p| (3 * p..3 * p + 3).collect()).collect(),
        };
        assert!(verify_gallai_partition(&g4, &parts).unwrap());
        let trivial = GallaiPartition {
            blocks: vec![(0..5).collect()],
        };
        assert!(verify_gallai_partition(&two, &trivial).is_err());
        let mono = ColoredComplete::monochromatic(6, 1, 1).unwrap();
        let p = find_gallai_partition(&mono).unwrap().unwrap();
        assert!(p.blocks.len() >= 2);
        assert!(verify_gallai_partition(&mono, &p).unwrap());
    }

    #[test]
    fn graph_catalogue_sizes() {
        // Graphs without isolated vertices on 2..=5 vertices (OEIS A002494).
        let counts: Vec<usize> = (2..=5).map(|s| graphs_without_isolated(s).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 23]);
    }

    #[test]
    fn compositions_are_nonincreasing_and_bounded() {
        assert_eq!(compositions(3, 2, 7), vec![vec![2, 2, 2], vec![3, 2, 2]]);
        assert_eq!(partitions_exact(5, 2), vec![vec![3, 2], vec![4, 1]]);
    }

    #[test]
    fn enumeration_output_is_sound() {
        for k in 4..=6 {
            for c in enumerate_p5free(6, k).unwrap() {
                assert!(c.is_exact());
                assert_eq!(c.used_color_count(), k);
                assert!(find_rainbow_path(&c, 4).unwrap().is_none());
            }
        }
        assert!(matches!(enumerate_p5free(5, 3), Err(Error::Unsupported(_))));
        assert!(matches!(
            enumerate_p5free(10, 4),
            Err(Error::UnsupportedSize { .. })
        ));
    }
}
