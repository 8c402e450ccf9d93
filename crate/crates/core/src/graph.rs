//! Edge indexing and the colored complete graph.
//!
//! Vertices are `0..n`, colors are `1..=k`. Unordered pairs are indexed in
//! colex order, `(0,1), (0,2), (1,2), (0,3), ...`, so the index of `{i, j}`
//! with `i < j` is `j(j-1)/2 + i` and does not depend on `n`. Growing a
//! coloring by one vertex therefore only appends indices.

use crate::error::{invalid, Error, Result};

/// An edge color. Colors are 1-based; 0 never appears in a built coloring.
pub type Color = u8;

/// A set of vertices of a host coloring, one bit per vertex.
pub type VertexSet = u64;

/// Largest supported host order (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// Largest supported color count (colors are tracked in a `u64` mask).
pub const MAX_COLORS: usize = 63;

/// Number of unordered pairs of an `n`-set.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the unordered pair `{i, j}` in a coloring of `K_n`.
///
/// The pair may be given in either order. Fails when `i == j` or either
/// endpoint is not below `n`.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == j {
        return invalid(format!("self-loop at vertex {i}"));
    }
    if i >= n || j >= n {
        return invalid(format!("pair ({i}, {j}) out of range for n = {n}"));
    }
    Ok(pair_index(i, j))
}

#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

/// Inverse of [`edge_index`]: the pair `(i, j)`, `i < j`, stored at `index`.
pub fn edge_endpoints(index: usize) -> (usize, usize) {
    // Largest j with j(j-1)/2 <= index.
    let mut j = (((8 * index + 1) as f64).sqrt() as usize).div_ceil(2);
    while j * (j - 1) / 2 > index {
        j -= 1;
    }
    while (j + 1) * j / 2 <= index {
        j += 1;
    }
    (index - j * (j - 1) / 2, j)
}

/// Iterator over the vertices of a [`VertexSet`] in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Members(VertexSet);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Vertices of `set` in increasing order.
#[inline]
pub fn members(set: VertexSet) -> Members {
    Members(set)
}

/// The set `{0, ..., n-1}`.
#[inline]
pub const fn full_set(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A k-edge-coloring of the complete graph `K_n`.
///
/// Stored as a flat pair-indexed color array together with per-color
/// adjacency bitsets that are built once at construction. Values are
/// immutable; the `recolored`/`relabeled`/`induced` methods return new
/// colorings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredComplete {
    n: usize,
    k: Color,
    colors: Vec<Color>,
    // adj[c * n + v] = neighbors of v in color c; row block 0 is unused.
    adj: Vec<VertexSet>,
    used: u64,
}

impl ColoredComplete {
    /// Builds a coloring from its pair-indexed color array.
    pub fn new(n: usize, k: usize, colors: Vec<Color>) -> Result<Self> {
        if n == 0 {
            return invalid("a complete graph needs at least one vertex");
        }
        if n > MAX_VERTICES {
            return Err(Error::UnsupportedSize {
                what: "vertex count",
                got: n,
                max: MAX_VERTICES,
            });
        }
        if k == 0 {
            return invalid("at least one color must be declared");
        }
        if k > MAX_COLORS {
            return Err(Error::UnsupportedSize {
                what: "color count",
                got: k,
                max: MAX_COLORS,
            });
        }
        if colors.len() != pair_count(n) {
            return invalid(format!(
                "expected {} pair colors for n = {n}, got {}",
                pair_count(n),
                colors.len()
            ));
        }
        let mut adj = vec![0; (k + 1) * n];
        let mut used = 0u64;
        for (idx, &c) in colors.iter().enumerate() {
            if c == 0 || c as usize > k {
                let (i, j) = edge_endpoints(idx);
                return invalid(format!("color {c} of pair ({i}, {j}) outside 1..={k}"));
            }
            let (i, j) = edge_endpoints(idx);
            adj[c as usize * n + i] |= 1 << j;
            adj[c as usize * n + j] |= 1 << i;
            used |= 1 << c;
        }
        Ok(ColoredComplete {
            n,
            k: k as Color,
            colors,
            adj,
            used,
        })
    }

    /// Builds a coloring by asking `color(i, j)` for every pair `i < j`.
    pub fn from_fn(
        n: usize,
        k: usize,
        mut color: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self> {
        let colors = (0..pair_count(n))
            .map(|idx| {
                let (i, j) = edge_endpoints(idx);
                color(i, j)
            })
            .collect();
        Self::new(n, k, colors)
    }

    /// `K_n` with every edge in `color`, declaring `k` colors.
    pub fn monochromatic(n: usize, k: usize, color: Color) -> Result<Self> {
        Self::new(n, k, vec![color; pair_count(n)])
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared number of colors.
    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Color of the pair `{i, j}`. Panics on `i == j` or out-of-range vertices.
    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Color {
        assert!(i != j && i < self.n && j < self.n, "bad pair ({i}, {j})");
        self.colors[pair_index(i, j)]
    }

    /// Pair-indexed color array.
    #[inline]
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Neighbors of `v` joined to it by an edge of color `c`.
    #[inline]
    pub fn neighbors(&self, v: usize, c: Color) -> VertexSet {
        if c == 0 || c > self.k {
            return 0;
        }
        self.adj[c as usize * self.n + v]
    }

    /// Adjacency rows of color `c`, indexed by vertex.
    #[inline]
    pub fn color_class(&self, c: Color) -> &[VertexSet] {
        let start = c as usize * self.n;
        &self.adj[start..start + self.n]
    }

    #[inline]
    pub fn degree(&self, v: usize, c: Color) -> usize {
        self.neighbors(v, c).count_ones() as usize
    }

    /// Bit `c` is set iff color `c` appears on some edge.
    #[inline]
    pub fn used_mask(&self) -> u64 {
        self.used
    }

    /// Colors that appear on at least one edge, in increasing order.
    pub fn used_colors(&self) -> Vec<Color> {
        (1..=self.k)
            .filter(|&c| self.used & (1 << c) != 0)
            .collect()
    }

    #[inline]
    pub fn used_color_count(&self) -> usize {
        self.used.count_ones() as usize
    }

    /// True iff every declared color appears on at least one edge.
    #[inline]
    pub fn is_exact(&self) -> bool {
        self.used_color_count() == self.k()
    }

    /// Vertices incident with at least one edge of color `c`.
    pub fn touched_by(&self, c: Color) -> VertexSet {
        if c == 0 || c > self.k {
            return 0;
        }
        (0..self.n)
            .filter(|&v| self.neighbors(v, c) != 0)
            .fold(0, |s, v| s | 1 << v)
    }

    /// Edges `(i, j)`, `i < j`, of color `c`, in colex order.
    pub fn edges_of(&self, c: Color) -> Vec<(usize, usize)> {
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == c)
            .map(|(idx, _)| edge_endpoints(idx))
            .collect()
    }

    /// Number of edges of color `c`.
    pub fn edge_count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    /// A copy with the pair `{i, j}` recolored.
    pub fn recolored(&self, i: usize, j: usize, c: Color) -> Result<Self> {
        let idx = edge_index(i, j, self.n)?;
        let mut colors = self.colors.clone();
        colors[idx] = c;
        Self::new(self.n, self.k(), colors)
    }

    /// A copy declaring `k` colors instead of the current count.
    pub fn with_declared_colors(&self, k: usize) -> Result<Self> {
        Self::new(self.n, k, self.colors.clone())
    }

    /// Applies a vertex permutation and a color permutation.
    ///
    /// `vertex_map[v]` is the new label of vertex `v`; `color_map[c - 1]` is
    /// the new color of color `c`. Both must be permutations.
    pub fn relabeled(&self, vertex_map: &[usize], color_map: &[Color]) -> Result<Self> {
        if !is_permutation(vertex_map, self.n) {
            return invalid("vertex map is not a permutation");
        }
        let cmap: Vec<usize> = color_map.iter().map(|&c| c as usize - 1).collect();
        if color_map.contains(&0) || !is_permutation(&cmap, self.k()) {
            return invalid("color map is not a permutation of the declared colors");
        }
        let mut colors = vec![0; self.colors.len()];
        for (idx, &c) in self.colors.iter().enumerate() {
            let (i, j) = edge_endpoints(idx);
            colors[pair_index(vertex_map[i], vertex_map[j])] = color_map[c as usize - 1];
        }
        Self::new(self.n, self.k(), colors)
    }

    /// The coloring induced on `vertices` (listed order becomes `0..`).
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.iter().any(|&v| v >= self.n) {
            return invalid("induced vertex out of range");
        }
        let mut seen = 0u64;
        for &v in vertices {
            if seen & (1 << v) != 0 {
                return invalid(format!("vertex {v} listed twice"));
            }
            seen |= 1 << v;
        }
        Self::from_fn(vertices.len(), self.k(), |i, j| {
            self.color(vertices[i], vertices[j])
        })
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Mutable staging area for a coloring; every pair must be set before
/// [`ColoringBuilder::build`].
#[derive(Clone, Debug)]
pub struct ColoringBuilder {
    n: usize,
    k: usize,
    colors: Vec<Color>,
}

impl ColoringBuilder {
    pub fn new(n: usize, k: usize) -> Self {
        ColoringBuilder {
            n,
            k,
            colors: vec![0; pair_count(n)],
        }
    }

    /// Starts from an existing coloring.
    pub fn from_coloring(c: &ColoredComplete) -> Self {
        ColoringBuilder {
            n: c.n(),
            k: c.k(),
            colors: c.colors().to_vec(),
        }
    }

    pub fn set_color(&mut self, i: usize, j: usize, c: Color) -> Result<&mut Self> {
        let idx = edge_index(i, j, self.n)?;
        if c == 0 || c as usize > self.k {
            return invalid(format!("color {c} outside 1..={}", self.k));
        }
        self.colors[idx] = c;
        Ok(self)
    }

    /// Color of `{i, j}`, or `None` if not set yet.
    pub fn color_of(&self, i: usize, j: usize) -> Option<Color> {
        let idx = edge_index(i, j, self.n).ok()?;
        Some(self.colors[idx]).filter(|&c| c != 0)
    }

    pub fn build(self) -> Result<ColoredComplete> {
        if let Some(idx) = self.colors.iter().position(|&c| c == 0) {
            let (i, j) = edge_endpoints(idx);
            return invalid(format!("pair ({i}, {j}) has no color"));
        }
        ColoredComplete::new(self.n, self.k, self.colors)
    }
}
