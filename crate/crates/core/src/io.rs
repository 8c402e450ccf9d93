//! Witness JSON: `{"n": int, "k": int, "edges": [[i, j, color], ...]}`.
//!
//! Every unordered pair appears exactly once. Writers list pairs in colex
//! order with `i < j`; the loader accepts any order.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, Color, ColoredComplete, MAX_VERTICES};

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    n: usize,
    k: usize,
    edges: Vec<(usize, usize, Color)>,
}

fn to_json_form(c: &ColoredComplete) -> WitnessJson {
    let edges = (0..c.n())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| (i, j, c.color(i, j)))
        .collect();
    WitnessJson {
        n: c.n(),
        k: c.k(),
        edges,
    }
}

fn from_json_form(w: WitnessJson) -> Result<ColoredComplete> {
    if w.n == 0 || w.n > MAX_VERTICES {
        return Err(Error::Parse(format!(
            "witness order {} outside 1..={MAX_VERTICES}",
            w.n
        )));
    }
    let mut colors = vec![0 as Color; pair_count(w.n)];
    for &(i, j, col) in &w.edges {
        if i == j {
            return Err(Error::Parse(format!("self-loop at vertex {i}")));
        }
        if i >= w.n || j >= w.n {
            return Err(Error::Parse(format!("edge ({i}, {j}) outside 0..{}", w.n)));
        }
        if col == 0 {
            return Err(Error::Parse(format!(
                "edge ({i}, {j}) has color 0; colors are 1-based"
            )));
        }
        let slot = &mut colors[pair_index(i, j)];
        if *slot != 0 {
            return Err(Error::Parse(format!("duplicate edge ({i}, {j})")));
        }
        *slot = col;
    }
    if let Some(idx) = colors.iter().position(|&c| c == 0) {
        let (i, j) = crate::graph::edge_endpoints(idx);
        return Err(Error::Parse(format!("missing edge ({i}, {j})")));
    }
    ColoredComplete::new(w.n, w.k, colors).map_err(|e| Error::Parse(e.to_string()))
}

/// Renders a coloring as witness JSON on one line.
pub fn to_witness_json(c: &ColoredComplete) -> String {
    serde_json::to_string(&to_json_form(c)).expect("witness JSON serializes")
}

/// Parses witness JSON, rejecting loops, duplicates and missing pairs.
pub fn from_witness_json(s: &str) -> Result<ColoredComplete> {
    let w: WitnessJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("witness JSON: {e}")))?;
    from_json_form(w)
}

impl Serialize for ColoredComplete {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        to_json_form(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColoredComplete {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        from_json_form(WitnessJson::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}
