//! Target graphs `H` for the monochromatic side of a Gallai-Ramsey query.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Largest arbitrary target whose clique number is computed by brute force.
pub const MAX_ARBITRARY_ORDER: usize = 12;

/// The monochromatic pattern `H`.
///
/// Closed families carry their parameters; vertex labels of the expanded
/// edge list are fixed so that detectors and tests agree on them:
///
/// * `Complete(t)`: `K_t` on `0..t`.
/// * `StarPlus(t, r)`: center `0`, leaves `1..t`, extra edges
///   `{1,2}, {3,4}, ..., {2r-1, 2r}`.
/// * `Pineapple(t, ω)`: clique on `0..ω`, pendant vertices `ω..t` all
///   attached to `0`.
/// * `CompleteMinusMaxMatching(t)`: `K_t` without `{0,1}, {2,3}, ...`
///   (`⌊t/2⌋` edges); for odd `t` vertex `t-1` keeps full degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TargetGraph {
    Complete {
        t: usize,
    },
    StarPlus {
        t: usize,
        r: usize,
    },
    Pineapple {
        t: usize,
        omega: usize,
    },
    CompleteMinusMaxMatching {
        t: usize,
    },
    Arbitrary {
        order: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Order, maximum degree and clique number of a target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetProperties {
    pub order: usize,
    pub max_degree: usize,
    pub clique_number: usize,
}

impl TargetGraph {
    pub fn complete(t: usize) -> Result<Self> {
        if t == 0 {
            return invalid("K_t needs t >= 1");
        }
        Ok(TargetGraph::Complete { t })
    }

    /// `S_t^r`: a star of order `t` with `r` independent edges among its leaves.
    pub fn star_plus(t: usize, r: usize) -> Result<Self> {
        if t < 2 {
            return invalid("S_t^r needs t >= 2");
        }
        if t < 2 * r + 1 {
            return invalid(format!("S_{t}^{r} needs t >= 2r + 1"));
        }
        Ok(TargetGraph::StarPlus { t, r })
    }

    /// `PA_{t,ω}`: `K_ω` with `t - ω` pendant vertices on one clique vertex.
    pub fn pineapple(t: usize, omega: usize) -> Result<Self> {
        if omega < 2 {
            return invalid("PA_{t,w} needs w >= 2");
        }
        if t < omega + 1 {
            return invalid(format!("PA_{{{t},{omega}}} needs t >= w + 1"));
        }
        Ok(TargetGraph::Pineapple { t, omega })
    }

    /// `K_t` minus a maximum matching.
    pub fn complete_minus_matching(t: usize) -> Result<Self> {
        if t == 0 {
            return invalid("K_t - M needs t >= 1");
        }
        Ok(TargetGraph::CompleteMinusMaxMatching { t })
    }

    /// A simple graph on `0..order` given by its edges.
    pub fn arbitrary(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 {
            return invalid("target needs at least one vertex");
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == j {
                return invalid(format!("self-loop at {i}"));
            }
            if i >= order || j >= order {
                return invalid(format!("edge ({i}, {j}) outside 0..{order}"));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return invalid("duplicate edge in target");
        }
        Ok(TargetGraph::Arbitrary { order, edges: norm })
    }

    /// Number of vertices `t`.
    pub fn order(&self) -> usize {
        match *self {
            TargetGraph::Complete { t }
            | TargetGraph::StarPlus { t, .. }
            | TargetGraph::Pineapple { t, .. }
            | TargetGraph::CompleteMinusMaxMatching { t } => t,
            TargetGraph::Arbitrary { order, .. } => order,
        }
    }

    /// Expanded edge list, `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        match *self {
            TargetGraph::Complete { t } => {
                for i in 0..t {
                    for j in i + 1..t {
                        out.push((i, j));
                    }
                }
            }
            TargetGraph::StarPlus { t, r } => {
                out.extend((1..t).map(|leaf| (0, leaf)));
                out.extend((0..r).map(|m| (2 * m + 1, 2 * m + 2)));
            }
            TargetGraph::Pineapple { t, omega } => {
                for i in 0..omega {
                    for j in i + 1..omega {
                        out.push((i, j));
                    }
                }
                out.extend((omega..t).map(|p| (0, p)));
            }
            TargetGraph::CompleteMinusMaxMatching { t } => {
                for i in 0..t {
                    for j in i + 1..t {
                        let matched = i % 2 == 0 && j == i + 1;
                        if !matched {
                            out.push((i, j));
                        }
                    }
                }
            }
            TargetGraph::Arbitrary { ref edges, .. } => out.extend_from_slice(edges),
        }
        out.sort_unstable();
        out
    }

    /// Adjacency bitsets of the expanded pattern.
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.order()];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    /// True iff `H` is a complete graph.
    pub fn is_complete_graph(&self) -> bool {
        match *self {
            TargetGraph::Complete { .. } => true,
            _ => {
                let t = self.order();
                self.edges().len() == t * (t - 1) / 2
            }
        }
    }

    /// Order, maximum degree and clique number.
    ///
    /// Closed families use closed forms; arbitrary targets are computed by
    /// brute force and must have at most [`MAX_ARBITRARY_ORDER`] vertices.
    pub fn properties(&self) -> Result<TargetProperties> {
        let p = |order, max_degree, clique_number| TargetProperties {
            order,
            max_degree,
            clique_number,
        };
        Ok(match *self {
            TargetGraph::Complete { t } => p(t, t - 1, t),
            TargetGraph::StarPlus { t, r } => p(t, t - 1, if r >= 1 { 3 } else { 2 }),
            TargetGraph::Pineapple { t, omega } => p(t, t - 1, omega),
            TargetGraph::CompleteMinusMaxMatching { t } => {
                let max_degree = match t {
                    1 => 0,
                    _ if t % 2 == 1 => t - 1,
                    _ => t - 2,
                };
                p(t, max_degree, t.div_ceil(2))
            }
            TargetGraph::Arbitrary { order, .. } => {
                if order > MAX_ARBITRARY_ORDER {
                    return Err(Error::UnsupportedSize {
                        what: "arbitrary target order",
                        got: order,
                        max: MAX_ARBITRARY_ORDER,
                    });
                }
                let adj = self.adjacency();
                let max_degree = adj
                    .iter()
                    .map(|a| a.count_ones() as usize)
                    .max()
                    .unwrap_or(0);
                p(order, max_degree, brute_force_clique_number(&adj))
            }
        })
    }
}

/// Clique number by enumerating every vertex subset.
pub(crate) fn brute_force_clique_number(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut best = if n > 0 { 1 } else { 0 };
    for subset in 1u64..(1u64 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let clique = crate::graph::members(subset).all(|v| (adj[v] | 1 << v) & subset == subset);
        if clique {
            best = size;
        }
    }
    best
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetGraph::Complete { t } => write!(f, "K{t}"),
            TargetGraph::StarPlus { t, r } => write!(f, "S{t}^{r}"),
            TargetGraph::Pineapple { t, omega } => write!(f, "PA{t},{omega}"),
            TargetGraph::CompleteMinusMaxMatching { t } => write!(f, "K{t}-M"),
            TargetGraph::Arbitrary { order, edges } => {
                let edges: Vec<[usize; 2]> = edges.iter().map(|&(i, j)| [i, j]).collect();
                let json = serde_json::json!({ "order": order, "edges": edges });
                write!(f, "{json}")
            }
        }
    }
}

#[derive(Deserialize)]
struct InlineTarget {
    order: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_number(s: &str, spec: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "bad number {s:?} in target spec {spec:?}"
        )));
    }
    s.parse()
        .map_err(|_| Error::Parse(format!("number {s:?} out of range in {spec:?}")))
}

impl FromStr for TargetGraph {
    type Err = Error;

    /// Grammar: `K<t>`, `S<t>^<r>`, `PA<t>,<w>`, `K<t>-M`, or inline JSON
    /// `{"order": t, "edges": [[i, j], ...]}`.
    fn from_str(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.starts_with('{') {
            let inline: InlineTarget = serde_json::from_str(s)
                .map_err(|e| Error::Parse(format!("inline target JSON: {e}")))?;
            let edges: Vec<(usize, usize)> = inline.edges.iter().map(|&[i, j]| (i, j)).collect();
            return TargetGraph::arbitrary(inline.order, &edges);
        }
        if let Some(rest) = s.strip_prefix("PA") {
            let (t, w) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected PA<t>,<w>, got {spec:?}")))?;
            return TargetGraph::pineapple(
                parse_number(t.trim(), spec)?,
                parse_number(w.trim(), spec)?,
            );
        }
        if let Some(rest) = s.strip_prefix('S') {
            let (t, r) = rest
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected S<t>^<r>, got {spec:?}")))?;
            return TargetGraph::star_plus(parse_number(t, spec)?, parse_number(r, spec)?);
        }
        if let Some(rest) = s.strip_prefix('K') {
            if let Some(t) = rest.strip_suffix("-M") {
                return TargetGraph::complete_minus_matching(parse_number(t, spec)?);
            }
            return TargetGraph::complete(parse_number(rest, spec)?);
        }
        Err(Error::Parse(format!("unrecognized target spec {spec:?}")))
    }
}

impl Serialize for TargetGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TargetGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(h: &TargetGraph) -> TargetProperties {
        let adj = h.adjacency();
        TargetProperties {
            order: h.order(),
            max_degree: adj
                .iter()
                .map(|a| a.count_ones() as usize)
                .max()
                .unwrap_or(0),
            clique_number: brute_force_clique_number(&adj),
        }
    }

    #[test]
    fn property_examples() {
        let s41 = TargetGraph::star_plus(4, 1).unwrap();
        let expect = TargetProperties {
            order: 4,
            max_degree: 3,
            clique_number: 3,
        };
        assert_eq!(s41.properties().unwrap(), expect);
        assert_eq!(brute(&s41), expect);
        let pa = TargetGraph::pineapple(6, 5).unwrap();
        assert_eq!(
            pa.properties().unwrap(),
            TargetProperties {
                order: 6,
                max_degree: 5,
                clique_number: 5
            }
        );
        assert_eq!(
            TargetGraph::complete(5).unwrap().properties().unwrap(),
            TargetProperties {
                order: 5,
                max_degree: 4,
                clique_number: 5
            }
        );
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for t in 1..=10 {
            let mut family = vec![
                TargetGraph::complete(t).unwrap(),
                TargetGraph::complete_minus_matching(t).unwrap(),
            ];
            if t >= 2 {
                for r in 0..=(t - 1) / 2 {
                    family.push(TargetGraph::star_plus(t, r).unwrap());
                }
            }
            for omega in 2..t {
                family.push(TargetGraph::pineapple(t, omega).unwrap());
            }
            for h in family {
                assert_eq!(h.properties().unwrap(), brute(&h), "{h}");
            }
        }
    }

    #[test]
    fn star_plus_shape() {
        let h = TargetGraph::star_plus(7, 2).unwrap();
        let adj = h.adjacency();
        let triangles = h
            .edges()
            .iter()
            .filter(|&&(i, j)| i != 0 && adj[0] & (1 << i) != 0 && adj[0] & (1 << j) != 0)
            .count();
        assert_eq!(triangles, 2);
        let pendants = (1..7).filter(|&v| adj[v].count_ones() == 1).count();
        assert_eq!(pendants, 7 - 2 * 2 - 1);
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(TargetGraph::star_plus(4, 2).is_err());
        assert!(TargetGraph::star_plus(5, 2).is_ok());
        assert!(TargetGraph::pineapple(5, 5).is_err());
        assert!(TargetGraph::arbitrary(3, &[(0, 0)]).is_err());
        assert!(TargetGraph::arbitrary(3, &[(0, 1), (1, 0)]).is_err());
        assert!(TargetGraph::arbitrary(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "K5",
            "S4^1",
            "S6^0",
            "PA6,5",
            "K7-M",
            r#"{"edges":[[0,1],[1,2]],"order":4}"#,
        ] {
            let h: TargetGraph = s.parse().unwrap();
            let again: TargetGraph = h.to_string().parse().unwrap();
            assert_eq!(h, again, "{s}");
        }
        let inline: TargetGraph = r#"{"order": 3, "edges": [[2, 0]]}"#.parse().unwrap();
        assert_eq!(inline.edges(), vec![(0, 2)]);
        assert!("Q5".parse::<TargetGraph>().is_err());
        assert!("S4^".parse::<TargetGraph>().is_err());
        assert!("PA6".parse::<TargetGraph>().is_err());
    }

    #[test]
    fn disconnected_arbitrary_target_is_computed_literally() {
        let h = TargetGraph::arbitrary(5, &[(0, 1)]).unwrap();
        assert_eq!(
            h.properties().unwrap(),
            TargetProperties {
                order: 5,
                max_degree: 1,
                clique_number: 2
            }
        );
        let empty = TargetGraph::arbitrary(3, &[]).unwrap();
        assert_eq!(empty.properties().unwrap().clique_number, 1);
    }
}
