//! Lower-bound witness colorings.
//!
//! Most witnesses are blow-ups: a few monochromatic (or explicitly colored)
//! cliques joined by a single color or by a small reduced coloring. The rest
//! are star augmentations (a monochromatic clique plus one apex) and a
//! handful of literal small tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detect::find_clique;
use crate::error::{invalid, Error, Result};
use crate::formulas::pq_decompose;
use crate::graph::{full_set, Color, ColoredComplete};
use crate::search::{verify_witness, WitnessCertificate};
use crate::target::TargetGraph;

/// Coloring of the edges inside one part of a blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartColoring {
    Mono(Color),
    /// An explicit coloring of `K_size`.
    Explicit(ColoredComplete),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub size: usize,
    pub inner: PartColoring,
}

impl Part {
    pub fn mono(size: usize, color: Color) -> Self {
        Part {
            size,
            inner: PartColoring::Mono(color),
        }
    }
}

/// Coloring of the edges between parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossColoring {
    Mono(Color),
    /// A coloring of the reduced complete graph, one vertex per part.
    Reduced(ColoredComplete),
}

/// Parts are laid out consecutively: part 0 gets the lowest vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    pub k: usize,
    pub parts: Vec<Part>,
    pub cross: CrossColoring,
}

fn check_color(c: Color, k: usize) -> Result<()> {
    if c == 0 || c as usize > k {
        return invalid(format!("color {c} outside 1..={k}"));
    }
    Ok(())
}

/// Expands a blow-up specification into a coloring of `K_{sum of sizes}`.
pub fn blowup(spec: &BlowupSpec) -> Result<ColoredComplete> {
    if spec.parts.is_empty() {
        return invalid("a blow-up needs at least one part");
    }
    let mut owner = Vec::new();
    for (p, part) in spec.parts.iter().enumerate() {
        if part.size == 0 {
            return invalid(format!("part {p} is empty"));
        }
        match &part.inner {
            PartColoring::Mono(c) => check_color(*c, spec.k)?,
            PartColoring::Explicit(g) => {
                if g.n() != part.size {
                    return invalid(format!(
                        "part {p} has size {} but its coloring has order {}",
                        part.size,
                        g.n()
                    ));
                }
                for &c in g.colors() {
                    check_color(c, spec.k)?;
                }
            }
        }
        owner.extend((0..part.size).map(|local| (p, local)));
    }
    match &spec.cross {
        CrossColoring::Mono(c) => check_color(*c, spec.k)?,
        CrossColoring::Reduced(r) => {
            if r.n() != spec.parts.len() {
                return invalid(format!(
                    "reduced coloring has order {} for {} parts",
                    r.n(),
                    spec.parts.len()
                ));
            }
            for &c in r.colors() {
                check_color(c, spec.k)?;
            }
        }
    }
    ColoredComplete::from_fn(owner.len(), spec.k, |i, j| {
        let ((pi, li), (pj, lj)) = (owner[i], owner[j]);
        if pi == pj {
            match &spec.parts[pi].inner {
                PartColoring::Mono(c) => *c,
                PartColoring::Explicit(g) => g.color(li, lj),
            }
        } else {
            match &spec.cross {
                CrossColoring::Mono(c) => *c,
                CrossColoring::Reduced(r) => r.color(pi, pj),
            }
        }
    })
}

/// `K_base` in `base_color` plus an apex (vertex `base`) whose edge to
/// vertex `i` has color `spoke_colors[i]`. The declared color count is the
/// largest color used.
pub fn star_augmented(
    base: usize,
    base_color: Color,
    spoke_colors: &[Color],
) -> Result<ColoredComplete> {
    if spoke_colors.len() != base {
        return invalid(format!(
            "{} spoke colors for a base of {base}",
            spoke_colors.len()
        ));
    }
    if base_color == 0 || spoke_colors.contains(&0) {
        return invalid("colors are 1-based");
    }
    let k = spoke_colors
        .iter()
        .copied()
        .chain([base_color])
        .max()
        .expect("nonempty") as usize;
    ColoredComplete::from_fn(base + 1, k, |i, j| {
        if j == base {
            spoke_colors[i]
        } else {
            base_color
        }
    })
}

/// The 2-coloring of `K_5` with color 2 on the cycle `0-1-2-3-4` and color 3
/// on the complementary cycle.
pub fn pentagon() -> ColoredComplete {
    ColoredComplete::from_fn(5, 3, |i, j| if j - i == 1 || j - i == 4 { 2 } else { 3 })
        .expect("valid")
}

/// Five copies of `K_{t-1}` in color 1 joined along the two-colored pentagon.
///
/// Order `5(t-1)`. For `t = 2` the parts are single vertices and the result
/// is the pentagon itself, which does not use color 1.
pub fn pentagon_blowup(t: usize) -> Result<ColoredComplete> {
    if t < 2 {
        return invalid("pentagon blow-up needs t >= 2");
    }
    blowup(&BlowupSpec {
        k: 3,
        parts: (0..5).map(|_| Part::mono(t - 1, 1)).collect(),
        cross: CrossColoring::Reduced(pentagon()),
    })
}

/// Two copies of a coloring in colors `{1, 2}` joined entirely in color 3.
pub fn doubling(base: &ColoredComplete) -> Result<ColoredComplete> {
    if base.colors().iter().any(|&c| c > 2) {
        return invalid("doubling needs a base colored with 1 and 2 only");
    }
    let n = base.n();
    ColoredComplete::from_fn(2 * n, 3, |i, j| {
        if (i < n) == (j < n) {
            base.color(i % n, j % n)
        } else {
            3
        }
    })
}

fn from_table(n: usize, k: usize, classes: &[(Color, &[(usize, usize)])]) -> ColoredComplete {
    let mut b = crate::graph::ColoringBuilder::new(n, k);
    for &(c, edges) in classes {
        for &(i, j) in edges {
            b.set_color(i - 1, j - 1, c)
                .expect("table entries are valid");
        }
    }
    b.build().expect("tables cover every pair")
}

/// Names accepted by [`sporadic`].
pub const SPORADIC_NAMES: [&str; 6] = ["G1", "G2", "F3", "F9", "F10", "TW-case-f"];

/// The literal small colorings, vertices `v_1..v_n` mapped to `0..n-1`.
pub fn sporadic(name: &str) -> Result<ColoredComplete> {
    Ok(match name {
        "G1" => from_table(
            4,
            5,
            &[
                (1, &[(1, 2), (3, 4)]),
                (2, &[(1, 3)]),
                (3, &[(1, 4)]),
                (4, &[(2, 3)]),
                (5, &[(2, 4)]),
            ],
        ),
        "G2" => from_table(
            4,
            6,
            &[
                (1, &[(1, 2)]),
                (2, &[(3, 4)]),
                (3, &[(1, 3)]),
                (4, &[(1, 4)]),
                (5, &[(2, 3)]),
                (6, &[(2, 4)]),
            ],
        ),
        "F3" => from_table(
            5,
            4,
            &[
                (1, &[(1, 4), (1, 5), (2, 3)]),
                (2, &[(1, 3), (2, 4), (2, 5)]),
                (3, &[(1, 2), (3, 4), (3, 5)]),
                (4, &[(4, 5)]),
            ],
        ),
        "F9" => from_table(
            4,
            5,
            &[
                (1, &[(2, 3), (2, 4)]),
                (2, &[(1, 2)]),
                (3, &[(1, 3)]),
                (4, &[(1, 4)]),
                (5, &[(3, 4)]),
            ],
        ),
        "F10" => from_table(
            4,
            6,
            &[
                (1, &[(2, 3)]),
                (2, &[(1, 2)]),
                (3, &[(1, 3)]),
                (4, &[(1, 4)]),
                (5, &[(3, 4)]),
                (6, &[(2, 4)]),
            ],
        ),
        // a, b, c, d, e = 1..5
        "TW-case-f" => from_table(
            5,
            4,
            &[
                (1, &[(1, 4), (1, 5), (2, 3)]),
                (2, &[(2, 4), (2, 5), (1, 3)]),
                (3, &[(3, 4), (3, 5), (1, 2)]),
                (4, &[(4, 5)]),
            ],
        ),
        _ => {
            return Err(Error::NotFound(format!(
                "no sporadic coloring named {name:?}"
            )))
        }
    })
}

/// True iff color 1 is triangle-free and color 2 is `K_5`-free.
fn is_r35_coloring(c: &ColoredComplete) -> bool {
    find_clique(c.color_class(1), full_set(c.n()), 3).is_none()
        && find_clique(c.color_class(2), full_set(c.n()), 5).is_none()
}

fn circulant13(diffs: u32) -> ColoredComplete {
    ColoredComplete::from_fn(13, 2, |i, j| {
        let d = (j - i).min(13 - (j - i));
        if diffs & (1 << d) != 0 {
            1
        } else {
            2
        }
    })
    .expect("valid")
}

/// A 2-coloring of `K_13` with no triangle in color 1 and no `K_5` in color 2.
///
/// The cyclic coloring with color 1 on differences `±1, ±5` is tried first
/// and verified; should it fail, every symmetric difference set is searched.
pub fn r35_witness() -> ColoredComplete {
    let first = circulant13(1 << 1 | 1 << 5);
    if is_r35_coloring(&first) {
        return first;
    }
    (1u32..1 << 7)
        .map(|m| m & !1)
        .filter(|&m| m != 0)
        .map(circulant13)
        .find(is_r35_coloring)
        .expect("a cyclic (3,5)-coloring of K_13 exists")
}

/// A named witness coloring with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum Construction {
    G1,
    G2,
    /// `K_{t-1}` in color 1 plus an apex with spokes `2..=t`; `k = t`.
    G3 {
        t: usize,
    },
    /// `a - 1` copies of `K_{t-1}` spread over colors `2..=k`, color 1 between.
    G4 {
        a: usize,
        t: usize,
        k: usize,
    },
    /// `K_{t-1}` in color 1 plus an apex whose spokes are split evenly over colors `2..=k`.
    G5 {
        t: usize,
        k: usize,
    },
    /// Parts of size `p + 1` (first `q`) and `p` in colors `2..=k`, where `delta - 1 = p(k-2) + q`.
    G6 {
        delta: usize,
        k: usize,
    },
    F1 {
        t: usize,
    },
    F2 {
        t: usize,
    },
    F3,
    F4 {
        t: usize,
    },
    F5 {
        t: usize,
        r: usize,
    },
    F6 {
        t: usize,
    },
    F7 {
        t: usize,
    },
    F9,
    F10,
    F11,
    F12,
    F13,
    #[serde(rename = "TW-case-f")]
    TwCaseF,
}

/// Splits `total` items into `classes` classes as evenly as possible, the
/// larger classes first.
fn balanced(total: usize, classes: usize) -> Vec<usize> {
    (0..classes)
        .map(|i| total / classes + usize::from(i < total % classes))
        .collect()
}

fn spread_spokes(t: usize, k: usize) -> Vec<Color> {
    balanced(t - 1, k - 1)
        .into_iter()
        .enumerate()
        .flat_map(|(i, size)| std::iter::repeat_n((i + 2) as Color, size))
        .collect()
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        invalid(msg())
    }
}

impl Construction {
    /// Builds the coloring, checking the parameter ranges that keep it exact.
    pub fn build(&self) -> Result<ColoredComplete> {
        use Construction::*;
        match *self {
            G1 => sporadic("G1"),
            G2 => sporadic("G2"),
            F3 => sporadic("F3"),
            F9 => sporadic("F9"),
            F10 => sporadic("F10"),
            TwCaseF => sporadic("TW-case-f"),
            G3 { t } => {
                need(t >= 3, || "G3 needs t >= 3".into())?;
                let spokes: Vec<Color> = (2..=t as Color).collect();
                star_augmented(t - 1, 1, &spokes)
            }
            F11 => star_augmented(4, 1, &[2, 3, 4, 5]),
            G4 { a, t, k } => {
                need(t >= 3 && k >= 2 && k <= a, || {
                    format!("G4 needs t >= 3 and 2 <= k <= a (a = {a}, t = {t}, k = {k})")
                })?;
                let mut parts = Vec::new();
                for (j, count) in balanced(a - 1, k - 1).into_iter().enumerate() {
                    parts.extend((0..count).map(|_| Part::mono(t - 1, (j + 2) as Color)));
                }
                blowup(&BlowupSpec {
                    k,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
            G5 { t, k } => {
                need(k >= 2 && t >= k, || {
                    format!("G5 needs 2 <= k <= t (t = {t}, k = {k})")
                })?;
                star_augmented(t - 1, 1, &spread_spokes(t, k))
            }
            G6 { delta, k } => {
                need(k >= 3, || "G6 needs k >= 3".into())?;
                need(delta >= 1, || "G6 needs delta >= 1".into())?;
                let (p, q) = pq_decompose(delta - 1, k - 2)?;
                need(p >= 2, || {
                    format!("G6 needs p >= 2 for every color to appear (p = {p})")
                })?;
                let parts = (2..=k)
                    .map(|i| Part::mono(if i <= q + 1 { p + 1 } else { p }, i as Color))
                    .collect();
                blowup(&BlowupSpec {
                    k,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
            F1 { t } => {
                need(t >= 6, || "F1 needs t >= 6".into())?;
                let (p, q) = pq_decompose(t - 2, 2)?;
                let parts = vec![Part::mono(p + q, 2), Part::mono(p, 3), Part::mono(p, 4)];
                blowup(&BlowupSpec {
                    k: 4,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
            F2 { t } => {
                need(t >= 4, || "F2 needs t >= 4".into())?;
                star_augmented(t - 1, 1, &spread_spokes(t, 4))
            }
            F4 { t } => {
                need(t % 2 == 1 && t >= 7, || "F4 needs odd t >= 7".into())?;
                let parts = vec![
                    Part::mono((t - 1) / 2, 2),
                    Part::mono((t - 3) / 2, 3),
                    Part::mono((t - 3) / 2, 4),
                ];
                blowup(&BlowupSpec {
                    k: 4,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
            F5 { t, r } => {
                need(r >= 3 && t >= 3, || "F5 needs r >= 3 and t >= 3".into())?;
                let parts = vec![
                    Part::mono(t - 1, 2),
                    Part::mono(r - 1, 3),
                    Part::mono(r - 1, 4),
                ];
                blowup(&BlowupSpec {
                    k: 4,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
            F6 { t } => {
                need(t % 2 == 0 && t >= 6, || "F6 needs even t >= 6".into())?;
                let parts = (2..=4).map(|c| Part::mono((t - 2) / 2, c)).collect();
                blowup(&BlowupSpec {
                    k: 4,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
            F7 { t } => {
                need(t >= 3, || "F7 needs t >= 3".into())?;
                pentagon_blowup(t)
            }
            F12 | F13 => {
                let side = if *self == F12 { 5 } else { 6 };
                let parts = vec![
                    Part {
                        size: 13,
                        inner: PartColoring::Explicit(r35_witness()),
                    },
                    Part::mono(side, 3),
                    Part::mono(side, 4),
                ];
                blowup(&BlowupSpec {
                    k: 4,
                    parts,
                    cross: CrossColoring::Mono(1),
                })
            }
        }
    }

    /// The order predicted by the construction's defining formula.
    pub fn expected_order(&self) -> Result<usize> {
        use Construction::*;
        Ok(match *self {
            G1 | G2 | F9 | F10 => 4,
            F3 | TwCaseF | F11 => 5,
            G3 { t } | G5 { t, .. } | F2 { t } => t,
            G4 { a, t, .. } => (a - 1) * (t - 1),
            G6 { delta, k } => {
                let (p, q) = pq_decompose(delta.saturating_sub(1), k.saturating_sub(2))?;
                (k - 1) * p + q
            }
            F1 { t } => {
                let (p, q) = pq_decompose(t - 2, 2)?;
                3 * p + q
            }
            F4 { t } => (3 * t - 7) / 2,
            F5 { t, r } => t + 2 * r - 3,
            F6 { t } => (3 * t - 6) / 2,
            F7 { t } => 5 * (t - 1),
            F12 => 23,
            F13 => 25,
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Construction::*;
        match *self {
            G1 => write!(f, "G1"),
            G2 => write!(f, "G2"),
            F3 => write!(f, "F3"),
            F9 => write!(f, "F9"),
            F10 => write!(f, "F10"),
            F11 => write!(f, "F11"),
            F12 => write!(f, "F12"),
            F13 => write!(f, "F13"),
            TwCaseF => write!(f, "TW-case-f"),
            G3 { t } => write!(f, "G3(t={t})"),
            G4 { a, t, k } => write!(f, "G4(a={a},t={t},k={k})"),
            G5 { t, k } => write!(f, "G5(t={t},k={k})"),
            G6 { delta, k } => write!(f, "G6(delta={delta},k={k})"),
            F1 { t } => write!(f, "F1(t={t})"),
            F2 { t } => write!(f, "F2(t={t})"),
            F4 { t } => write!(f, "F4(t={t})"),
            F5 { t, r } => write!(f, "F5(t={t},r={r})"),
            F6 { t } => write!(f, "F6(t={t})"),
            F7 { t } => write!(f, "F7(t={t})"),
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    /// Parses the `Display` form, e.g. `F3`, `G4(a=5,t=5,k=5)`, `F5(t=13,r=4)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => {
                let body = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
                (name, body)
            }
            None => (s, ""),
        };
        let mut values = std::collections::BTreeMap::new();
        for pair in args.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {pair:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in {pair:?}")))?;
            values.insert(key.trim().to_string(), value);
        }
        let get = |key: &str| {
            values
                .get(key)
                .copied()
                .ok_or_else(|| Error::Parse(format!("{name} needs parameter {key}")))
        };
        use Construction::*;
        let c = match name {
            "G1" => G1,
            "G2" => G2,
            "F3" => F3,
            "F9" => F9,
            "F10" => F10,
            "F11" => F11,
            "F12" => F12,
            "F13" => F13,
            "TW-case-f" => TwCaseF,
            "G3" => G3 { t: get("t")? },
            "G4" => G4 {
                a: get("a")?,
                t: get("t")?,
                k: get("k")?,
            },
            "G5" => G5 {
                t: get("t")?,
                k: get("k")?,
            },
            "G6" => G6 {
                delta: get("delta")?,
                k: get("k")?,
            },
            "F1" => F1 { t: get("t")? },
            "F2" => F2 { t: get("t")? },
            "F4" => F4 { t: get("t")? },
            "F5" => F5 {
                t: get("t")?,
                r: get("r")?,
            },
            "F6" => F6 { t: get("t")? },
            "F7" => F7 { t: get("t")? },
            _ => return Err(Error::NotFound(format!("no construction named {name:?}"))),
        };
        Ok(c)
    }
}

/// A certified witness together with the construction that produced it and
/// the rule whose lower bound it realizes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerBoundWitness {
    pub construction: Construction,
    pub rule: String,
    pub certificate: WitnessCertificate,
}

/// Constructions whose defining rule matches `(h, k)`, paired with the rule id.
pub fn applicable_constructions(
    h: &TargetGraph,
    k: usize,
) -> Result<Vec<(Construction, &'static str)>> {
    use Construction::*;
    let props = h.properties()?;
    let (t, a, delta) = (props.order, props.clique_number, props.max_degree);
    let mut out = Vec::new();

    if a >= 3 && (4..=a).contains(&k) {
        out.push((G4 { a, t, k }, "lem2-1"));
    }
    if k >= 5 && k == t {
        out.push((G3 { t }, "th2-2"));
    }
    if t >= 3 && k > t {
        if k == 5 {
            out.push((G1, "th2-2-1"));
        }
        if k == 6 {
            out.push((G2, "th2-2-1"));
        }
    }
    if (5..t).contains(&k) {
        let rule = if matches!(h, TargetGraph::CompleteMinusMaxMatching { .. }) {
            "th2-5"
        } else {
            "th2-6"
        };
        out.push((G5 { t, k }, rule));
        if delta >= 1 && pq_decompose(delta - 1, k - 2)?.0 >= 2 {
            out.push((G6 { delta, k }, "th2-6"));
        }
    }
    if let TargetGraph::StarPlus { t, r } = *h {
        match k {
            3 if t >= 3 => out.push((F7 { t }, "le3-4")),
            4 => {
                if (t == 4 || t == 5) && r == 1 {
                    out.push((F3, if t == 4 { "le3-1" } else { "le3-2" }));
                }
                if t >= 6 && (r == 1 || r == 2) {
                    out.push((F1 { t }, "th3-2"));
                    out.push((F2 { t }, "th3-2"));
                }
                if r >= 3 {
                    let rule = if t % 2 == 1 { "th3-4" } else { "th3-5" };
                    if t % 2 == 1 && t >= 7 {
                        out.push((F4 { t }, rule));
                    }
                    if t % 2 == 0 {
                        out.push((F6 { t }, rule));
                    }
                    out.push((F5 { t, r }, rule));
                }
            }
            5 if t == 4 && r == 1 => out.push((F9, "th3-6")),
            6 if t == 4 && r == 1 => out.push((F10, "th3-6")),
            _ => {}
        }
        if k == 5 && t == 5 && r == 1 {
            out.push((F11, "th3-7"));
        }
    }
    if let TargetGraph::Pineapple { t, omega: 5 } = *h {
        if k == 4 && t == 6 {
            out.push((F12, "th4-3"));
        }
        if k == 4 && t == 7 {
            out.push((F13, "th4-4"));
        }
    }
    Ok(out)
}

/// The largest applicable construction that certifies as a witness for
/// `(h, k)`: exact in `k` colors, no rainbow `P5`, no monochromatic `h`.
///
/// Candidates that fail certification are skipped.
pub fn lower_bound_witness(h: &TargetGraph, k: usize) -> Result<Option<LowerBoundWitness>> {
    let mut candidates = Vec::new();
    for (construction, rule) in applicable_constructions(h, k)? {
        let order = construction.expected_order()?;
        candidates.push((order, construction, rule));
    }
    // Stable sort keeps the table order among equal orders.
    candidates.sort_by_key(|c| std::cmp::Reverse(c.0));
    for (_, construction, rule) in candidates {
        let Ok(coloring) = construction.build() else {
            continue;
        };
        if coloring.k() != k {
            continue;
        }
        if let Ok(certificate) = verify_witness(&coloring, h) {
            return Ok(Some(LowerBoundWitness {
                construction,
                rule: rule.to_string(),
                certificate,
            }));
        }
    }
    Ok(None)
}

/// One row of the shipped construction grid: a construction, the target it
/// certifies, its color count and its printed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub construction: Construction,
    pub target: TargetGraph,
    pub k: usize,
    pub order: usize,
}

const GRID: &str = include_str!("../data/construction_grid.txt");

/// Parses grid rows of the form `construction | H | k | order`.
pub fn parse_grid(text: &str) -> Result<Vec<GridEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        let [c, h, k, order] = f[..] else {
            return Err(Error::Parse(format!(
                "grid line {}: expected 4 fields",
                lineno + 1
            )));
        };
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("grid line {}: {s:?}", lineno + 1)))
        };
        out.push(GridEntry {
            construction: c.parse()?,
            target: h.parse()?,
            k: num(k)?,
            order: num(order)?,
        });
    }
    Ok(out)
}

/// The shipped construction grid.
pub fn construction_grid() -> Vec<GridEntry> {
    parse_grid(GRID).expect("shipped grid parses")
}
