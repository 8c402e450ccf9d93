//! Exact canonical forms of colored complete graphs.
//!
//! The key of a coloring is the lexicographically smallest pair-color
//! sequence over all vertex orderings (and, in [`SymmetryMode::VertexAndColor`],
//! over all color renamings). Orderings are restricted to those compatible
//! with an isomorphism-invariant ordered partition obtained by color-degree
//! refinement; within cells the search is exhaustive, with prefix pruning and
//! twin pruning (two vertices that see every other vertex in the same colors
//! are interchangeable).
//!
//! The minimum over color renamings for a fixed vertex ordering is obtained
//! by relabeling colors in order of first occurrence, so color permutations
//! are never enumerated.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{pair_count, Color, ColoredComplete};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 10;

/// Symmetry group under which two colorings are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryMode {
    /// Vertex permutations only; color names are significant.
    VertexOnly,
    /// Simultaneous vertex and color permutations.
    VertexAndColor,
}

/// Byte string identifying a coloring up to the chosen symmetry group.
///
/// Layout: `[mode, n, k, c_0, c_1, ...]` where `c_i` are the pair colors of
/// the canonical representative in colex pair order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn mode(&self) -> SymmetryMode {
        if self.0[0] == 0 {
            SymmetryMode::VertexOnly
        } else {
            SymmetryMode::VertexAndColor
        }
    }

    /// The canonical representative encoded by this key.
    pub fn to_coloring(&self) -> ColoredComplete {
        let n = self.0[1] as usize;
        let k = self.0[2] as usize;
        ColoredComplete::new(n, k, self.0[3..].to_vec())
            .expect("canonical keys encode valid colorings")
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Canonical key of `c` under `mode`.
pub fn canonical_form(c: &ColoredComplete, mode: SymmetryMode) -> Result<CanonicalKey> {
    canonical_labeling(c, mode).map(|(key, _)| key)
}

/// Canonical key together with a labeling realizing it: `order[p]` is the
/// vertex of `c` placed at canonical position `p`.
pub fn canonical_labeling(
    c: &ColoredComplete,
    mode: SymmetryMode,
) -> Result<(CanonicalKey, Vec<usize>)> {
    let n = c.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::UnsupportedSize {
            what: "canonical form order",
            got: n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let cells = refine(c, mode);
    let mut cell_at_pos = cells.clone();
    cell_at_pos.sort_unstable();

    let mut twins = vec![0u64; n];
    for u in 0..n {
        for v in u + 1..n {
            if (0..n).all(|w| w == u || w == v || c.color(u, w) == c.color(v, w)) {
                twins[u] |= 1 << v;
                twins[v] |= 1 << u;
            }
        }
    }

    let mut search = Search {
        c,
        mode,
        cells: &cells,
        cell_at_pos: &cell_at_pos,
        twins: &twins,
        seq: Vec::with_capacity(pair_count(n)),
        order: Vec::with_capacity(n),
        placed: 0,
        relabel: [0; 64],
        next_label: 1,
        best: None,
    };
    search.run();
    let (best_seq, best_order) = search.best.expect("at least one ordering exists");

    let mut bytes = Vec::with_capacity(3 + best_seq.len());
    bytes.push(match mode {
        SymmetryMode::VertexOnly => 0,
        SymmetryMode::VertexAndColor => 1,
    });
    bytes.push(n as u8);
    bytes.push(c.k() as u8);
    bytes.extend_from_slice(&best_seq);
    Ok((CanonicalKey(bytes), best_order))
}

/// Iterated color-degree refinement. Returns an invariant cell id per vertex.
fn refine(c: &ColoredComplete, mode: SymmetryMode) -> Vec<u32> {
    let n = c.n();
    let colors = c.used_colors();
    let mut cells = vec![0u32; n];
    let mut count = 1;
    loop {
        let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..n)
            .map(|v| {
                let mut per_color: Vec<Vec<u32>> = colors
                    .iter()
                    .map(|&col| {
                        let mut cs: Vec<u32> = crate::graph::members(c.neighbors(v, col))
                            .map(|w| cells[w])
                            .collect();
                        cs.sort_unstable();
                        cs
                    })
                    .collect();
                if mode == SymmetryMode::VertexAndColor {
                    per_color.sort_unstable();
                }
                (cells[v], per_color)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present") as u32)
            .collect();
        let new_count = distinct.len();
        cells = next;
        if new_count == count {
            return cells;
        }
        count = new_count;
    }
}

struct Search<'a> {
    c: &'a ColoredComplete,
    mode: SymmetryMode,
    cells: &'a [u32],
    cell_at_pos: &'a [u32],
    twins: &'a [u64],
    seq: Vec<Color>,
    order: Vec<usize>,
    placed: u64,
    relabel: [Color; 64],
    next_label: Color,
    best: Option<(Vec<Color>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self) {
        let n = self.c.n();
        let m = self.order.len();
        if m == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.seq < *b,
            };
            if better {
                self.best = Some((self.seq.clone(), self.order.clone()));
            }
            return;
        }
        let cell = self.cell_at_pos[m];
        let mut tried = 0u64;
        for v in 0..n {
            if self.placed & (1 << v) != 0 || self.cells[v] != cell {
                continue;
            }
            if self.twins[v] & tried != 0 {
                continue;
            }
            tried |= 1 << v;

            let seq_len = self.seq.len();
            let labels_before = self.next_label;
            let mut fresh: [Color; 16] = [0; 16];
            let mut fresh_len = 0;
            for i in 0..m {
                let raw = self.c.color(self.order[i], v);
                let out = match self.mode {
                    SymmetryMode::VertexOnly => raw,
                    SymmetryMode::VertexAndColor => {
                        if self.relabel[raw as usize] == 0 {
                            self.relabel[raw as usize] = self.next_label;
                            self.next_label += 1;
                            if fresh_len < fresh.len() {
                                fresh[fresh_len] = raw;
                                fresh_len += 1;
                            }
                        }
                        self.relabel[raw as usize]
                    }
                };
                self.seq.push(out);
            }

            let keep = match &self.best {
                None => true,
                Some((b, _)) => self.seq[..] <= b[..self.seq.len()],
            };
            if keep {
                self.order.push(v);
                self.placed |= 1 << v;
                self.run();
                self.placed &= !(1 << v);
                self.order.pop();
            }

            self.seq.truncate(seq_len);
            if self.mode == SymmetryMode::VertexAndColor {
                // At most m <= 9 new colors per step, so `fresh` never overflows.
                for &raw in &fresh[..fresh_len] {
                    self.relabel[raw as usize] = 0;
                }
                self.next_label = labels_before;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rainbow_k4() -> ColoredComplete {
        ColoredComplete::new(4, 6, vec![1, 2, 3, 4, 5, 6]).unwrap()
    }

    #[test]
    fn monochromatic_is_fully_symmetric() {
        let mono = ColoredComplete::monochromatic(4, 1, 1).unwrap();
        let key = canonical_form(&mono, SymmetryMode::VertexAndColor).unwrap();
        let perm = mono.relabeled(&[2, 0, 3, 1], &[1]).unwrap();
        assert_eq!(
            key,
            canonical_form(&perm, SymmetryMode::VertexAndColor).unwrap()
        );
    }

    #[test]
    fn color_swap_is_invisible_only_in_color_mode() {
        let g = ColoredComplete::new(4, 3, vec![1, 2, 3, 1, 1, 2]).unwrap();
        let swapped = g.relabeled(&[0, 1, 2, 3], &[1, 3, 2]).unwrap();
        assert_eq!(
            canonical_form(&g, SymmetryMode::VertexAndColor).unwrap(),
            canonical_form(&swapped, SymmetryMode::VertexAndColor).unwrap()
        );
        assert_ne!(
            canonical_form(&g, SymmetryMode::VertexOnly).unwrap(),
            canonical_form(&swapped, SymmetryMode::VertexOnly).unwrap()
        );
    }

    #[test]
    fn key_decodes_to_an_isomorphic_coloring() {
        let g = rainbow_k4();
        let (key, order) = canonical_labeling(&g, SymmetryMode::VertexOnly).unwrap();
        let rep = key.to_coloring();
        for q in 0..4 {
            for p in 0..q {
                assert_eq!(rep.color(p, q), g.color(order[p], order[q]));
            }
        }
        assert_eq!(canonical_form(&rep, SymmetryMode::VertexOnly).unwrap(), key);
    }

    #[test]
    fn oversize_is_rejected() {
        let big = ColoredComplete::monochromatic(11, 1, 1).unwrap();
        assert!(matches!(
            canonical_form(&big, SymmetryMode::VertexOnly),
            Err(Error::UnsupportedSize { .. })
        ));
        let ten = ColoredComplete::monochromatic(10, 1, 1).unwrap();
        assert!(canonical_form(&ten, SymmetryMode::VertexOnly).is_ok());
    }

    /// Isomorphism by trying every vertex and color permutation.
    fn isomorphic_brute(a: &ColoredComplete, b: &ColoredComplete) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        if a.n() != b.n() || a.k() != b.k() {
            return false;
        }
        let cps = perms(a.k());
        perms(a.n()).iter().any(|vp| {
            cps.iter().any(|cp| {
                let cmap: Vec<Color> = cp.iter().map(|&x| x as Color + 1).collect();
                &a.relabeled(vp, &cmap).unwrap() == b
            })
        })
    }

    #[test]
    fn keys_separate_exactly_the_isomorphism_classes_of_small_colorings() {
        // All 3-colorings of K4: 729 colorings; compare key equality against brute force
        // on a deterministic sample of pairs.
        let all: Vec<ColoredComplete> = (0..729u32)
            .map(|mut code| {
                let colors = (0..6)
                    .map(|_| {
                        let c = (code % 3) as Color + 1;
                        code /= 3;
                        c
                    })
                    .collect();
                ColoredComplete::new(4, 3, colors).unwrap()
            })
            .collect();
        let keys: Vec<CanonicalKey> = all
            .iter()
            .map(|g| canonical_form(g, SymmetryMode::VertexAndColor).unwrap())
            .collect();
        for a in (0..729).step_by(7) {
            for b in (0..729).step_by(11) {
                assert_eq!(
                    keys[a] == keys[b],
                    isomorphic_brute(&all[a], &all[b]),
                    "{a} {b}"
                );
            }
        }
    }
}
