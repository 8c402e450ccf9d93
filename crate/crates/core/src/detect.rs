//! Rainbow-path and monochromatic-copy detection.
//!
//! Both detectors are exhaustive and deterministic: vertices and colors are
//! tried in increasing order and the first embedding found is returned.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{full_set, members, Color, ColoredComplete, VertexSet};
use crate::target::TargetGraph;

/// Largest vertex set accepted by [`max_matching`].
pub const MAX_MATCHING_VERTICES: usize = 12;

/// A copy of a pattern inside a host coloring.
///
/// `vertices[p]` is the host vertex playing pattern vertex `p`. For a
/// rainbow path the pattern vertices are the path in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: String,
    pub vertices: Vec<usize>,
    /// Color of a monochromatic copy; `None` for rainbow paths.
    pub color: Option<Color>,
}

impl Embedding {
    /// True iff the vertices are distinct and consecutive path edges have
    /// pairwise distinct colors.
    pub fn verify_rainbow(&self, host: &ColoredComplete) -> bool {
        if !distinct_in_range(&self.vertices, host.n()) || self.vertices.len() < 2 {
            return false;
        }
        let mut seen = 0u64;
        for w in self.vertices.windows(2) {
            let c = host.color(w[0], w[1]);
            if seen & (1 << c) != 0 {
                return false;
            }
            seen |= 1 << c;
        }
        true
    }

    /// True iff the vertices are distinct and every pattern edge of `h` maps
    /// to a host edge of the stated color.
    pub fn verify_mono(&self, host: &ColoredComplete, h: &TargetGraph) -> bool {
        let Some(color) = self.color else {
            return false;
        };
        self.vertices.len() == h.order()
            && distinct_in_range(&self.vertices, host.n())
            && h.edges()
                .iter()
                .all(|&(p, q)| host.color(self.vertices[p], self.vertices[q]) == color)
    }
}

fn distinct_in_range(vs: &[usize], n: usize) -> bool {
    let mut seen = 0u64;
    for &v in vs {
        if v >= n || seen & (1 << v) != 0 {
            return false;
        }
        seen |= 1 << v;
    }
    true
}

/// Visits every rainbow path with `m` edges, each undirected path once per
/// direction, until `visit` breaks.
pub fn visit_rainbow_paths<B>(
    c: &ColoredComplete,
    m: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    if m == 0 || m >= c.n() {
        return invalid(format!(
            "a path with {m} edges needs 1 <= m <= n - 1 = {}",
            c.n() - 1
        ));
    }
    if m > c.used_color_count() {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(m + 1);
    for start in 0..c.n() {
        path.push(start);
        let flow = extend_rainbow(c, m, &mut path, 1 << start, 0, &mut visit);
        path.pop();
        if let ControlFlow::Break(b) = flow {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

fn extend_rainbow<B>(
    c: &ColoredComplete,
    m: usize,
    path: &mut Vec<usize>,
    visited: VertexSet,
    colors: u64,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if path.len() == m + 1 {
        return visit(path);
    }
    let last = *path.last().expect("nonempty");
    for w in members(full_set(c.n()) & !visited) {
        let col = c.color(last, w);
        if colors & (1 << col) != 0 {
            continue;
        }
        path.push(w);
        let flow = extend_rainbow(c, m, path, visited | 1 << w, colors | 1 << col, visit);
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// A rainbow path with `m` edges, if one exists.
pub fn find_rainbow_path(c: &ColoredComplete, m: usize) -> Result<Option<Embedding>> {
    let found = visit_rainbow_paths(c, m, |p| ControlFlow::Break(p.to_vec()))?;
    Ok(found.map(|vertices| {
        let e = Embedding {
            pattern: format!("P{}", m + 1),
            vertices,
            color: None,
        };
        assert!(
            e.verify_rainbow(c),
            "rainbow detector produced an invalid path"
        );
        e
    }))
}

/// A monochromatic copy of `h` in any color, if one exists.
///
/// Uses the closed-form fast path of each target family and falls back to
/// generic backtracking for `K_t - M` and arbitrary targets.
pub fn find_mono_copy(c: &ColoredComplete, h: &TargetGraph) -> Option<Embedding> {
    (1..=c.k() as Color).find_map(|col| find_mono_copy_in_color(c, h, col))
}

/// A copy of `h` inside color class `color`, if one exists.
pub fn find_mono_copy_in_color(
    c: &ColoredComplete,
    h: &TargetGraph,
    color: Color,
) -> Option<Embedding> {
    if h.order() > c.n() || color == 0 || color as usize > c.k() {
        return None;
    }
    if c.used_mask() & (1 << color) == 0 && !h.edges().is_empty() {
        return None;
    }
    let class = c.color_class(color);
    let vertices = match *h {
        TargetGraph::Complete { t } => find_clique(class, full_set(c.n()), t),
        TargetGraph::StarPlus { t, r } => star_plus_in_class(class, c.n(), t, r),
        TargetGraph::Pineapple { t, omega } => pineapple_in_class(class, c.n(), t, omega),
        TargetGraph::CompleteMinusMaxMatching { .. } | TargetGraph::Arbitrary { .. } => {
            embed_in_class(class, c.n(), h)
        }
    }?;
    let e = Embedding {
        pattern: h.to_string(),
        vertices,
        color: Some(color),
    };
    assert!(
        e.verify_mono(c, h),
        "mono detector produced an invalid embedding"
    );
    Some(e)
}

/// Generic backtracking search in every color, ignoring family fast paths.
pub fn find_mono_copy_generic(c: &ColoredComplete, h: &TargetGraph) -> Option<Embedding> {
    if h.order() > c.n() {
        return None;
    }
    (1..=c.k() as Color).find_map(|col| {
        let vertices = embed_in_class(c.color_class(col), c.n(), h)?;
        let e = Embedding {
            pattern: h.to_string(),
            vertices,
            color: Some(col),
        };
        assert!(e.verify_mono(c, h));
        Some(e)
    })
}

/// A clique of exactly `size` vertices inside `cand`, smallest labels first.
pub(crate) fn find_clique(class: &[VertexSet], cand: VertexSet, size: usize) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(size);
    if grow_clique(class, cand, size, &mut out) {
        Some(out)
    } else {
        None
    }
}

fn grow_clique(class: &[VertexSet], cand: VertexSet, size: usize, out: &mut Vec<usize>) -> bool {
    if out.len() == size {
        return true;
    }
    let need = size - out.len();
    let mut rest = cand;
    while rest.count_ones() as usize >= need {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out.push(v);
        if grow_clique(class, rest & class[v], size, out) {
            return true;
        }
        out.pop();
    }
    false
}

fn star_plus_in_class(class: &[VertexSet], n: usize, t: usize, r: usize) -> Option<Vec<usize>> {
    for center in 0..n {
        let nbrs = class[center];
        if (nbrs.count_ones() as usize) < t - 1 {
            continue;
        }
        if let Some(pairs) = find_matching(nbrs, class, r) {
            let mut vertices = vec![center];
            let mut used = 0u64;
            for (a, b) in pairs {
                vertices.extend([a, b]);
                used |= 1 << a | 1 << b;
            }
            vertices.extend(members(nbrs & !used).take(t - 1 - 2 * r));
            return Some(vertices);
        }
    }
    None
}

fn pineapple_in_class(class: &[VertexSet], n: usize, t: usize, omega: usize) -> Option<Vec<usize>> {
    for apex in 0..n {
        let nbrs = class[apex];
        if (nbrs.count_ones() as usize) < t - 1 {
            continue;
        }
        if let Some(clique) = find_clique(class, nbrs, omega - 1) {
            let used = clique.iter().fold(0u64, |s, &v| s | 1 << v);
            let mut vertices = vec![apex];
            vertices.extend(&clique);
            vertices.extend(members(nbrs & !used).take(t - omega));
            return Some(vertices);
        }
    }
    None
}

/// Subgraph monomorphism of `h` into one color class by degree-ordered backtracking.
fn embed_in_class(class: &[VertexSet], n: usize, h: &TargetGraph) -> Option<Vec<usize>> {
    let t = h.order();
    let padj = h.adjacency();
    let pdeg: Vec<usize> = padj.iter().map(|a| a.count_ones() as usize).collect();

    // Order pattern vertices: most already-placed neighbors, then degree, then label.
    let mut order = Vec::with_capacity(t);
    let mut placed = 0u64;
    while order.len() < t {
        let next = (0..t)
            .filter(|&p| placed & (1 << p) == 0)
            .max_by_key(|&p| {
                (
                    (padj[p] & placed).count_ones(),
                    pdeg[p],
                    std::cmp::Reverse(p),
                )
            })
            .expect("unplaced vertex");
        order.push(next);
        placed |= 1 << next;
    }

    let hdeg: Vec<usize> = class.iter().map(|a| a.count_ones() as usize).collect();
    let mut image = vec![usize::MAX; t];
    if backtrack_embed(class, &hdeg, n, &padj, &pdeg, &order, 0, 0, &mut image) {
        Some(image)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack_embed(
    class: &[VertexSet],
    hdeg: &[usize],
    n: usize,
    padj: &[u64],
    pdeg: &[usize],
    order: &[usize],
    step: usize,
    used: VertexSet,
    image: &mut [usize],
) -> bool {
    if step == order.len() {
        return true;
    }
    let p = order[step];
    let mut cand = full_set(n) & !used;
    for q in members(padj[p]) {
        if image[q] != usize::MAX {
            cand &= class[image[q]];
        }
    }
    for v in members(cand) {
        if hdeg[v] < pdeg[p] {
            continue;
        }
        image[p] = v;
        if backtrack_embed(
            class,
            hdeg,
            n,
            padj,
            pdeg,
            order,
            step + 1,
            used | 1 << v,
            image,
        ) {
            return true;
        }
    }
    image[p] = usize::MAX;
    false
}

/// Exact maximum matching size of the subgraph of `class` induced on `vertices`.
pub fn max_matching(vertices: VertexSet, class: &[VertexSet]) -> Result<usize> {
    let size = vertices.count_ones() as usize;
    if size > MAX_MATCHING_VERTICES {
        return Err(Error::UnsupportedSize {
            what: "matching vertex set",
            got: size,
            max: MAX_MATCHING_VERTICES,
        });
    }
    if vertices >> class.len().min(63) != 0 && class.len() < 64 {
        return invalid("matching vertex set exceeds the host");
    }
    Ok(max_matching_branch(vertices, class))
}

fn max_matching_branch(set: VertexSet, class: &[VertexSet]) -> usize {
    if set.count_ones() < 2 {
        return 0;
    }
    let u = set.trailing_zeros() as usize;
    let rest = set & !(1 << u);
    // u unmatched
    let mut best = max_matching_branch(rest, class);
    let bound = (rest.count_ones() as usize).div_ceil(2);
    for w in members(class[u] & rest) {
        if best == bound {
            break;
        }
        best = best.max(1 + max_matching_branch(rest & !(1 << w), class));
    }
    best
}

/// A matching with exactly `r` edges in the subgraph induced on `set`, if any.
///
/// Tries a greedy matching first and falls back to exact branching on the
/// lowest-degree vertex (matched to each neighbor, or left out), memoizing
/// failed states.
pub(crate) fn find_matching(
    set: VertexSet,
    class: &[VertexSet],
    r: usize,
) -> Option<Vec<(usize, usize)>> {
    if r == 0 {
        return Some(Vec::new());
    }
    let greedy = greedy_matching(set, class);
    if greedy.len() >= r {
        return Some(greedy.into_iter().take(r).collect());
    }
    let mut failed = HashSet::new();
    let mut out = Vec::with_capacity(r);
    if matching_branch(set, class, r, &mut out, &mut failed) {
        Some(out)
    } else {
        None
    }
}

fn greedy_matching(set: VertexSet, class: &[VertexSet]) -> Vec<(usize, usize)> {
    let mut left = set;
    let mut out = Vec::new();
    loop {
        let pick = members(left)
            .filter(|&v| class[v] & left != 0)
            .min_by_key(|&v| ((class[v] & left).count_ones(), v));
        let Some(u) = pick else {
            return out;
        };
        let w = members(class[u] & left)
            .min_by_key(|&w| ((class[w] & left).count_ones(), w))
            .expect("u has a neighbor");
        out.push((u.min(w), u.max(w)));
        left &= !(1 << u | 1 << w);
    }
}

fn matching_branch(
    set: VertexSet,
    class: &[VertexSet],
    r: usize,
    out: &mut Vec<(usize, usize)>,
    failed: &mut HashSet<(VertexSet, usize)>,
) -> bool {
    if r == 0 {
        return true;
    }
    let live = members(set)
        .filter(|&v| class[v] & set != 0)
        .fold(0u64, |s, v| s | 1 << v);
    if (live.count_ones() as usize) < 2 * r || failed.contains(&(live, r)) {
        return false;
    }
    let u = members(live)
        .min_by_key(|&v| ((class[v] & live).count_ones(), v))
        .expect("live is nonempty");
    for w in members(class[u] & live) {
        out.push((u.min(w), u.max(w)));
        if matching_branch(live & !(1 << u | 1 << w), class, r - 1, out, failed) {
            return true;
        }
        out.pop();
    }
    if matching_branch(live & !(1 << u), class, r, out, failed) {
        return true;
    }
    failed.insert((live, r));
    false
}
