//! Closed-form values and bounds for `gr_k(P5 : H)`.
//!
//! [`evaluate`] runs every rule of the table against `(H, k)`, checks that
//! all matching rules agree, and reports the most specific one. Rule ids
//! such as `"th3-6"` are part of the output.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::target::TargetGraph;

/// `(p, q)` with `x = p * m + q` and `0 <= q < m`.
pub fn pq_decompose(x: usize, m: usize) -> Result<(usize, usize)> {
    if m == 0 {
        return invalid("pq_decompose needs a modulus m >= 1");
    }
    Ok((x / m, x % m))
}

fn pq(x: u64, m: u64) -> Option<(u64, u64)> {
    let (p, q) = pq_decompose(x as usize, m as usize).ok()?;
    Some((p as u64, q as u64))
}

fn isqrt(x: u64) -> u64 {
    let mut s = (x as f64).sqrt() as u64;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s
}

/// `⌈(1 + √(1 + 8k)) / 2⌉`, evaluated in integers.
pub fn ceil_half_sqrt(k: u64) -> u64 {
    let d = 1 + 8 * k;
    let s = isqrt(d);
    if s * s == d {
        s.div_ceil(2)
    } else if s % 2 == 1 {
        (s + 3) / 2
    } else {
        (s + 2) / 2
    }
}

fn choose2(v: u64) -> u64 {
    v * v.saturating_sub(1) / 2
}

/// Value, lower and upper bounds of a Gallai-Ramsey number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrKind {
    Exact(u64),
    /// `hi = None` means no upper bound is known.
    Bounds {
        lo: u64,
        hi: Option<u64>,
    },
    Unknown,
}

/// Outcome of [`evaluate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrResult {
    pub kind: GrKind,
    /// Rule ids that produced the value, most specific first.
    pub provenance: Vec<String>,
    /// Other matching rules, all consistent with `kind`.
    pub corroborated_by: Vec<String>,
    /// Structural hypotheses that were checked or assumed, beyond parameter ranges.
    pub assumptions: Vec<String>,
}

impl GrResult {
    pub fn exact(&self) -> Option<u64> {
        match self.kind {
            GrKind::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// Best known lower bound.
    pub fn lo(&self) -> Option<u64> {
        match self.kind {
            GrKind::Exact(v) => Some(v),
            GrKind::Bounds { lo, .. } => Some(lo),
            GrKind::Unknown => None,
        }
    }

    /// Best known upper bound.
    pub fn hi(&self) -> Option<u64> {
        match self.kind {
            GrKind::Exact(v) => Some(v),
            GrKind::Bounds { hi, .. } => hi,
            GrKind::Unknown => None,
        }
    }

    fn check_invariants(&self) -> Result<()> {
        let ok = match self.kind {
            GrKind::Bounds { lo, hi } => hi.is_none_or(|h| lo <= h) && !self.provenance.is_empty(),
            GrKind::Exact(_) => !self.provenance.is_empty(),
            GrKind::Unknown => self.provenance.is_empty(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("inconsistent GrResult: {self:?}")))
        }
    }
}

impl fmt::Display for GrResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GrKind::Exact(v) => write!(f, "{v}")?,
            GrKind::Bounds { lo, hi: Some(hi) } => write!(f, "[{lo}, {hi}]")?,
            GrKind::Bounds { lo, hi: None } => write!(f, ">= {lo}")?,
            GrKind::Unknown => return write!(f, "unknown"),
        }
        write!(f, " ({})", self.provenance.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct GrResultJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    value: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lo: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    hi: Option<u64>,
    #[serde(default)]
    provenance: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    corroborated_by: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    assumptions: Vec<String>,
}

impl Serialize for GrResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, value, lo, hi) = match self.kind {
            GrKind::Exact(v) => ("Exact", Some(v), None, None),
            GrKind::Bounds { lo, hi } => ("Bounds", None, Some(lo), hi),
            GrKind::Unknown => ("Unknown", None, None, None),
        };
        GrResultJson {
            kind: kind.into(),
            value,
            lo,
            hi,
            provenance: self.provenance.clone(),
            corroborated_by: self.corroborated_by.clone(),
            assumptions: self.assumptions.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GrResult {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GrResultJson::deserialize(deserializer)?;
        let kind = match (j.kind.as_str(), j.value, j.lo) {
            ("Exact", Some(v), None) if j.hi.is_none() => GrKind::Exact(v),
            ("Bounds", None, Some(lo)) => GrKind::Bounds { lo, hi: j.hi },
            ("Unknown", None, None) if j.hi.is_none() => GrKind::Unknown,
            _ => {
                return Err(D::Error::custom(format!(
                    "malformed GrResult of kind {:?}",
                    j.kind
                )))
            }
        };
        let r = GrResult {
            kind,
            provenance: j.provenance,
            corroborated_by: j.corroborated_by,
            assumptions: j.assumptions,
        };
        r.check_invariants().map_err(D::Error::custom)?;
        Ok(r)
    }
}

/// A Ramsey number or interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RamseyValue {
    Exact(u64),
    Interval { lo: Option<u64>, hi: Option<u64> },
}

/// `R_colors(patterns...)` with its source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyEntry {
    pub patterns: Vec<TargetGraph>,
    pub colors: usize,
    pub value: RamseyValue,
    pub source: String,
}

const RAMSEY_TABLE: &str = include_str!("../data/ramsey_known.txt");

fn pattern_key(patterns: &[TargetGraph]) -> Vec<String> {
    let mut names: Vec<String> = patterns.iter().map(|p| p.to_string()).collect();
    names.sort();
    names.dedup();
    names
}

fn parse_value(s: &str) -> Result<RamseyValue> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("interval {s:?}")))?;
        let side = |x: &str| -> Result<Option<u64>> {
            let x = x.trim();
            if x.is_empty() || x == "?" {
                Ok(None)
            } else {
                x.parse()
                    .map(Some)
                    .map_err(|_| Error::Parse(format!("bound {x:?}")))
            }
        };
        return Ok(RamseyValue::Interval {
            lo: side(lo)?,
            hi: side(hi)?,
        });
    }
    s.parse()
        .map(RamseyValue::Exact)
        .map_err(|_| Error::Parse(format!("value {s:?}")))
}

/// Parses the known-values table: `pattern(s) | colors | value or [lo,hi] | citation`.
pub fn parse_ramsey_table(text: &str) -> Result<Vec<RamseyEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!(
                "line {}: expected 4 fields",
                lineno + 1
            )));
        }
        let patterns = fields[0]
            .split(',')
            .map(|p| p.trim().parse::<TargetGraph>())
            .collect::<Result<Vec<_>>>()?;
        let colors = fields[1]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: color count", lineno + 1)))?;
        let source = fields[3].trim();
        if source.is_empty() {
            return Err(Error::Parse(format!(
                "line {}: missing citation",
                lineno + 1
            )));
        }
        out.push(RamseyEntry {
            patterns,
            colors,
            value: parse_value(fields[2])?,
            source: source.into(),
        });
    }
    Ok(out)
}

/// The shipped known-values table.
pub fn ramsey_table() -> &'static [RamseyEntry] {
    static TABLE: OnceLock<Vec<RamseyEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_ramsey_table(RAMSEY_TABLE).expect("shipped table parses"))
}

/// Interval for `R_3(S_t^r)` given `R_2(S_t^r)`.
fn three_color_star_interval(t: u64, r: u64, r2: u64) -> RamseyValue {
    RamseyValue::Interval {
        lo: Some((5 * t - 4).max(2 * r2 - 1)),
        hi: Some(3 * r2 + 6 * r - 6),
    }
}

/// Upper bound on `R_2(PA_{t,ω})` for the constant `c`, floored.
fn pineapple_ramsey_bound(t: u64, omega: u64, c: f64) -> u64 {
    let mut binom = 1f64;
    for i in 0..omega - 1 {
        binom = binom * (2 * omega - 2 - i) as f64 / (i + 1) as f64;
    }
    let l = ((omega - 1) as f64).ln();
    let x = binom * (-c * l * l).exp() + ((t - 2) * (omega - 1)) as f64;
    x.floor() as u64
}

fn valid_c(c: Option<f64>) -> Option<f64> {
    c.filter(|c| c.is_finite() && *c > 0.0)
}

/// Looks up `R_colors(patterns)`.
///
/// One pattern means the diagonal number. Besides the table, three-color
/// star numbers are bracketed from a known two-color value, and two-color
/// pineapple numbers get an upper bound when the constant `c > 0` is given.
pub fn ramsey_known(
    patterns: &[TargetGraph],
    colors: usize,
    c: Option<f64>,
) -> Option<RamseyEntry> {
    if patterns.is_empty() {
        return None;
    }
    let key = pattern_key(patterns);
    if let Some(e) = ramsey_table()
        .iter()
        .find(|e| e.colors == colors && pattern_key(&e.patterns) == key)
    {
        return Some(e.clone());
    }
    if key.len() != 1 {
        return None;
    }
    let h = &patterns[0];
    match (h, colors) {
        (&TargetGraph::StarPlus { t, r }, 3) => {
            let two = ramsey_known(std::slice::from_ref(h), 2, c)?;
            let RamseyValue::Exact(r2) = two.value else {
                return None;
            };
            Some(RamseyEntry {
                patterns: vec![h.clone()],
                colors,
                value: three_color_star_interval(t as u64, r as u64, r2),
                source: format!("le3-4 with {}", two.source),
            })
        }
        (&TargetGraph::Pineapple { t, omega }, 2) if omega >= 4 => {
            let c = valid_c(c)?;
            Some(RamseyEntry {
                patterns: vec![h.clone()],
                colors,
                value: RamseyValue::Interval {
                    lo: None,
                    hi: Some(pineapple_ramsey_bound(t as u64, omega as u64, c)),
                },
                source: format!("th4-7 with c = {c}"),
            })
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug)]
enum Bound {
    Exact(u64),
    Range { lo: u64, hi: Option<u64> },
}

#[derive(Clone, Debug)]
struct Hit {
    rule: &'static str,
    rank: u8,
    cites: Vec<&'static str>,
    bound: Bound,
    assumptions: Vec<String>,
    /// The upper bound depends on the user-supplied constant.
    uses_c: bool,
}

impl Hit {
    fn exact(rule: &'static str, rank: u8, cites: &[&'static str], v: u64) -> Self {
        Hit {
            rule,
            rank,
            cites: cites.to_vec(),
            bound: Bound::Exact(v),
            assumptions: Vec::new(),
            uses_c: false,
        }
    }

    fn range(
        rule: &'static str,
        rank: u8,
        cites: &[&'static str],
        lo: u64,
        hi: Option<u64>,
    ) -> Self {
        Hit {
            rule,
            rank,
            cites: cites.to_vec(),
            bound: Bound::Range { lo, hi },
            assumptions: Vec::new(),
            uses_c: false,
        }
    }

    fn assuming(mut self, a: &[&str]) -> Self {
        self.assumptions.extend(a.iter().map(|s| s.to_string()));
        self
    }

    fn lo(&self) -> u64 {
        match self.bound {
            Bound::Exact(v) => v,
            Bound::Range { lo, .. } => lo,
        }
    }

    fn hi(&self) -> Option<u64> {
        match self.bound {
            Bound::Exact(v) => Some(v),
            Bound::Range { hi, .. } => hi,
        }
    }
}

// Specificity ranks: named targets beat families, families beat general
// theorems, general theorems beat corollaries that restate them.
const NAMED: u8 = 4;
const FAMILY: u8 = 3;
const GENERAL: u8 = 2;
const COROLLARY: u8 = 1;

const NO_ISOLATED: &str = "H has no isolated vertices";
const CONNECTED: &str = "H is connected";
const R2_ABOVE_ORDER: &str = "R2(H) >= t+1, as H is not a star";

struct Query<'a> {
    h: &'a TargetGraph,
    k: u64,
    t: u64,
    delta: u64,
    omega: u64,
    connected: bool,
    no_isolated: bool,
    complete: bool,
    star: bool,
    c: Option<f64>,
}

impl<'a> Query<'a> {
    fn new(h: &'a TargetGraph, k: u64, c: Option<f64>) -> Result<Self> {
        let props = h.properties()?;
        let adj = h.adjacency();
        let t = props.order;
        let no_isolated = adj.iter().all(|&a| a != 0);
        let mut reached = if t > 0 { 1u64 } else { 0 };
        let mut frontier = reached;
        while frontier != 0 {
            let next = crate::graph::members(frontier).fold(0u64, |s, v| s | adj[v]) & !reached;
            reached |= next;
            frontier = next;
        }
        let connected = reached.count_ones() as usize == t;
        let edges = h.edges().len();
        let star = t >= 2 && edges == t - 1 && props.max_degree == t - 1;
        Ok(Query {
            h,
            k,
            t: t as u64,
            delta: props.max_degree as u64,
            omega: props.clique_number as u64,
            connected,
            no_isolated,
            complete: h.is_complete_graph(),
            star,
            c,
        })
    }

    fn star_plus(&self) -> Option<(u64, u64)> {
        match *self.h {
            TargetGraph::StarPlus { t, r } => Some((t as u64, r as u64)),
            _ => None,
        }
    }

    fn pineapple(&self) -> Option<(u64, u64)> {
        match *self.h {
            TargetGraph::Pineapple { t, omega } => Some((t as u64, omega as u64)),
            _ => None,
        }
    }
}

type Rule = fn(&Query) -> Option<Hit>;

const RULES: &[Rule] = &[
    th2_1, th2_2_1, th2_2, lem2_1, th2_4, coro2_4, th2_5, th2_6, th3_1, th3_2, le3_1, le3_2, co3_1,
    th3_4, th3_5, th3_6, th3_7, th3_8, th3_9, th4_1, th4_2, th4_3, th4_4, th4_5, cor4_4,
];

/// Ids of every rule in the table.
pub const RULE_IDS: &[&str] = &[
    "th2-1", "th2-2-1", "th2-2", "lem2-1", "th2-4", "coro2-4", "th2-5", "th2-6", "th3-1", "th3-2",
    "le3-1", "le3-2", "co3-1", "th3-4", "th3-5", "th3-6", "th3-7", "th3-8", "th3-9", "th4-1",
    "th4-2", "th4-3", "th4-4", "th4-5", "cor4-4",
];

fn th2_1(q: &Query) -> Option<Hit> {
    (q.k >= 7 && q.k > q.t).then(|| Hit::exact("th2-1", GENERAL, &["th2-1"], ceil_half_sqrt(q.k)))
}

fn th2_2_1(q: &Query) -> Option<Hit> {
    (matches!(q.k, 5 | 6) && q.k > q.t && q.t >= 3 && q.no_isolated)
        .then(|| Hit::exact("th2-2-1", GENERAL, &["th2-2-1"], 5).assuming(&[NO_ISOLATED]))
}

fn th2_2(q: &Query) -> Option<Hit> {
    (q.k >= 5 && q.k == q.t && !q.complete && q.no_isolated)
        .then(|| Hit::exact("th2-2", GENERAL, &["th2-2"], q.t + 1).assuming(&[NO_ISOLATED]))
}

fn lem2_1_value(q: &Query) -> Option<u64> {
    let a = q.omega;
    (q.k >= 4 && q.k <= a && a >= 3 && q.connected).then(|| (a - 1) * (q.t - 1) + 1)
}

fn lem2_1(q: &Query) -> Option<Hit> {
    lem2_1_value(q)
        .map(|lo| Hit::range("lem2-1", GENERAL, &["lem2-1"], lo, None).assuming(&[CONNECTED]))
}

fn th2_4(q: &Query) -> Option<Hit> {
    (q.k >= 5 && q.k == q.t && q.complete).then(|| {
        Hit::exact(
            "th2-4",
            FAMILY,
            &["th2-4", "lem2-1"],
            (q.t - 1) * (q.t - 1) + 1,
        )
    })
}

fn coro2_4(q: &Query) -> Option<Hit> {
    if q.k < 5 || q.k < q.t || q.t < 3 || !q.no_isolated {
        return None;
    }
    let v = if q.k > q.t {
        ceil_half_sqrt(q.k).max(5)
    } else if q.complete {
        (q.t - 1) * (q.t - 1) + 1
    } else {
        q.t + 1
    };
    Some(Hit::exact("coro2-4", COROLLARY, &["coro2-4"], v).assuming(&[NO_ISOLATED]))
}

fn th2_5(q: &Query) -> Option<Hit> {
    let TargetGraph::CompleteMinusMaxMatching { .. } = q.h else {
        return None;
    };
    let (k, t) = (q.k, q.t);
    (k >= (t + 2).div_ceil(2) && k < t && k >= 5)
        .then(|| Hit::exact("th2-5", FAMILY, &["th2-5"], ceil_half_sqrt(k).max(t + 1)))
}

fn th2_6(q: &Query) -> Option<Hit> {
    if q.k < 5 || q.k >= q.t || q.star || !q.no_isolated || q.delta == 0 {
        return None;
    }
    let (p, _) = pq(q.delta - 1, q.k - 2)?;
    if p == 0 {
        return None;
    }
    let lo = (q.delta + p).max(q.t + 1);
    let r2 = ramsey_known(std::slice::from_ref(q.h), 2, q.c);
    let hi = r2.as_ref().and_then(|e| match e.value {
        RamseyValue::Exact(v) => Some(v),
        RamseyValue::Interval { hi, .. } => hi,
    });
    let mut hit =
        Hit::range("th2-6", GENERAL, &["th2-6"], lo, hi).assuming(&[NO_ISOLATED, R2_ABOVE_ORDER]);
    if let (Some(e), Some(_)) = (&r2, hi) {
        if e.source.starts_with("th4-7") {
            hit.cites.push("th4-7");
            hit.uses_c = true;
            hit.assumptions
                .push(format!("c = {} supplied", q.c.expect("bound needs c")));
        }
    }
    Some(hit)
}

fn th3_1(q: &Query) -> Option<Hit> {
    let (t, r) = q.star_plus()?;
    let k = q.k;
    if !(k >= 5 && k < t && r >= 1 && r <= k - 2) {
        return None;
    }
    let (p, _) = pq(t - 2, k - 2)?;
    Some(Hit::exact(
        "th3-1",
        FAMILY,
        &["th3-1"],
        (t + p - 1).max(t + 1),
    ))
}

fn th3_2(q: &Query) -> Option<Hit> {
    let (t, r) = q.star_plus()?;
    if !(q.k == 4 && t >= 6 && (r == 1 || r == 2)) {
        return None;
    }
    let (p, _) = pq(t - 2, 2)?;
    Some(Hit::exact("th3-2", FAMILY, &["th3-2"], t + p - 1))
}

fn le3_1(q: &Query) -> Option<Hit> {
    (q.star_plus() == Some((4, 1)) && q.k == 4).then(|| Hit::exact("le3-1", NAMED, &["le3-1"], 6))
}

fn le3_2(q: &Query) -> Option<Hit> {
    (q.star_plus() == Some((5, 1)) && q.k == 4).then(|| Hit::exact("le3-2", NAMED, &["le3-2"], 6))
}

fn co3_1(q: &Query) -> Option<Hit> {
    let (t, r) = q.star_plus()?;
    if q.k != 4 {
        return None;
    }
    match (t, r) {
        (4, 1) => Some(Hit::exact("co3-1", COROLLARY, &["co3-1", "le3-1"], 6)),
        (5, 1) => Some(Hit::exact("co3-1", COROLLARY, &["co3-1", "le3-2"], 6)),
        (t, 1 | 2) if t >= 6 => {
            let (p, _) = pq(t - 2, 2)?;
            Some(Hit::exact(
                "co3-1",
                COROLLARY,
                &["co3-1", "th3-2"],
                t + p - 1,
            ))
        }
        _ => None,
    }
}

fn th3_4(q: &Query) -> Option<Hit> {
    let (t, r) = q.star_plus()?;
    if q.k != 4 || r < 3 || t % 2 == 0 {
        return None;
    }
    if r <= (t - 1) / 4 {
        Some(Hit::exact("th3-4", FAMILY, &["th3-4"], (3 * t - 5) / 2))
    } else if r >= (t - 1).div_ceil(4) && 2 * r <= t - 3 {
        Some(Hit::exact("th3-4", FAMILY, &["th3-4"], t + 2 * r - 2))
    } else {
        None
    }
}

fn th3_5(q: &Query) -> Option<Hit> {
    let (t, r) = q.star_plus()?;
    if q.k != 4 || r < 3 || t % 2 == 1 {
        return None;
    }
    if r <= t / 4 {
        Some(Hit::exact("th3-5", FAMILY, &["th3-5"], (3 * t - 4) / 2))
    } else if r >= t.div_ceil(4) && 2 * r <= t - 2 {
        Some(Hit::exact("th3-5", FAMILY, &["th3-5"], t + 2 * r - 2))
    } else {
        None
    }
}

/// The `ℓ` with `C(ℓ-1, 2) + 1 <= k <= C(ℓ, 2)` and `ℓ >= 5`, if any.
fn binomial_row(k: u64) -> Option<u64> {
    (5..)
        .take_while(|&l| choose2(l - 1) < k)
        .find(|&l| k <= choose2(l))
}

fn th3_6(q: &Query) -> Option<Hit> {
    if q.star_plus() != Some((4, 1)) {
        return None;
    }
    let hit = |cites: &[&'static str], v| Some(Hit::exact("th3-6", NAMED, cites, v));
    match q.k {
        3 => hit(&["th3-6", "le3-3"], 17),
        4 => hit(&["th3-6", "le3-1"], 6),
        5 | 6 => hit(&["th3-6"], 5),
        k => binomial_row(k).and_then(|l| hit(&["th3-6"], l)),
    }
}

fn th3_7(q: &Query) -> Option<Hit> {
    if q.star_plus() != Some((5, 1)) {
        return None;
    }
    let hit = |cites: &[&'static str], v| Some(Hit::exact("th3-7", NAMED, cites, v));
    match q.k {
        3 => hit(&["th3-7", "le3-3"], 21),
        4 => hit(&["th3-7", "le3-2"], 6),
        5 => hit(&["th3-7"], 6),
        6 => hit(&["th3-7", "th2-2-1"], 5),
        k if k >= 7 => hit(&["th3-7", "th2-1"], ceil_half_sqrt(k)),
        _ => None,
    }
}

fn th3_8(q: &Query) -> Option<Hit> {
    if q.star_plus() != Some((6, 1)) {
        return None;
    }
    let hit = |cites: &[&'static str], v| Some(Hit::exact("th3-8", NAMED, cites, v));
    match q.k {
        3 => hit(&["th3-8", "le3-3"], 26),
        4 => hit(&["th3-8", "th3-2"], 7),
        5 => hit(&["th3-8", "th3-1"], 7),
        6 => hit(&["th3-8", "th2-2"], 7),
        k if k >= 7 => hit(&["th3-8", "th2-1"], ceil_half_sqrt(k)),
        _ => None,
    }
}

fn th3_9(q: &Query) -> Option<Hit> {
    let (t, r) = q.star_plus()?;
    let k = q.k;
    if t < 6 || !(r == 1 || r == 2) || k < 3 {
        return None;
    }
    let hit = |v| Some(Hit::exact("th3-9", COROLLARY, &["th3-9"], v));
    if k == 3 {
        let (lo, hi) = match ramsey_known(std::slice::from_ref(q.h), 2, None).map(|e| e.value) {
            Some(RamseyValue::Exact(r2)) => match three_color_star_interval(t, r, r2) {
                RamseyValue::Interval { lo, hi } => (lo.expect("set"), hi),
                RamseyValue::Exact(_) => unreachable!(),
            },
            _ => (5 * t - 4, None),
        };
        Some(Hit::range("th3-9", COROLLARY, &["th3-9", "le3-4"], lo, hi))
    } else if k < t {
        let (p, _) = pq(t - 2, k - 2)?;
        hit((t + p - 1).max(t + 1))
    } else if k == t {
        hit(t + 1)
    } else {
        hit(ceil_half_sqrt(k))
    }
}

fn th4_1(q: &Query) -> Option<Hit> {
    let (t, omega) = q.pineapple()?;
    (q.k == omega && q.k >= 4)
        .then(|| Hit::exact("th4-1", FAMILY, &["th4-1"], (omega - 1) * (t - 1) + 1))
}

fn th4_2(q: &Query) -> Option<Hit> {
    let (t, omega) = q.pineapple()?;
    (q.k == 4 && omega == 5 && t >= 8).then(|| Hit::exact("th4-2", FAMILY, &["th4-2"], 4 * t - 3))
}

fn th4_3(q: &Query) -> Option<Hit> {
    (q.pineapple() == Some((6, 5)) && q.k == 4).then(|| Hit::exact("th4-3", NAMED, &["th4-3"], 24))
}

fn th4_4(q: &Query) -> Option<Hit> {
    (q.pineapple() == Some((7, 5)) && q.k == 4).then(|| Hit::exact("th4-4", NAMED, &["th4-4"], 26))
}

fn pineapple_upper(q: &Query, t: u64, omega: u64, hit: &mut Hit, scale: impl Fn(u64) -> u64) {
    if let Some(c) = valid_c(q.c) {
        let x = pineapple_ramsey_bound(t, omega, c);
        hit.bound = Bound::Range {
            lo: hit.lo(),
            hi: Some(scale(x)),
        };
        hit.cites.push("th4-7");
        hit.uses_c = true;
        hit.assumptions.push(format!("c = {c} supplied"));
    }
}

fn th4_5(q: &Query) -> Option<Hit> {
    let (t, omega) = q.pineapple()?;
    if q.k != 4 || omega < 6 {
        return None;
    }
    let mut hit = Hit::range("th4-5", FAMILY, &["th4-5"], (omega - 1) * (t - 1) + 1, None);
    pineapple_upper(q, t, omega, &mut hit, |x| (3 * x).saturating_sub(2));
    Some(hit)
}

fn cor4_4(q: &Query) -> Option<Hit> {
    let (t, omega) = q.pineapple()?;
    if q.k < 5 || q.k >= omega || omega < 6 {
        return None;
    }
    let mut hit = Hit::range(
        "cor4-4",
        COROLLARY,
        &["cor4-4"],
        (omega - 1) * (t - 1) + 1,
        None,
    );
    pineapple_upper(q, t, omega, &mut hit, |x| x);
    Some(hit)
}

fn push_unique(list: &mut Vec<String>, items: impl IntoIterator<Item = String>) {
    for s in items {
        if !list.contains(&s) {
            list.push(s);
        }
    }
}

/// [`evaluate_with`] without the constant `c`.
pub fn evaluate(h: &TargetGraph, k: usize) -> Result<GrResult> {
    evaluate_with(h, k, None)
}

/// Evaluates every rule on `(H, k)` and combines the matches.
///
/// Exact rules must agree with each other and lie within every bound;
/// otherwise [`Error::InternalInconsistency`] names the rules involved. A
/// contradiction caused by an upper bound derived from `c` is reported as
/// [`Error::InvalidArgument`] instead, since it only means `c` is too large.
pub fn evaluate_with(h: &TargetGraph, k: usize, c: Option<f64>) -> Result<GrResult> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if let Some(c) = c {
        if !(c.is_finite() && c > 0.0) {
            return invalid(format!(
                "the constant c must be positive and finite, got {c}"
            ));
        }
    }
    let q = Query::new(h, k as u64, c)?;
    let hits: Vec<Hit> = RULES.iter().filter_map(|rule| rule(&q)).collect();
    combine(&hits)
}

fn combine(hits: &[Hit]) -> Result<GrResult> {
    if hits.is_empty() {
        return Ok(GrResult {
            kind: GrKind::Unknown,
            provenance: Vec::new(),
            corroborated_by: Vec::new(),
            assumptions: Vec::new(),
        });
    }
    let exact: Vec<&Hit> = hits
        .iter()
        .filter(|h| matches!(h.bound, Bound::Exact(_)))
        .collect();
    if let Some(first) = exact.first() {
        if let Some(other) = exact.iter().find(|h| h.lo() != first.lo()) {
            return Err(Error::InternalInconsistency(format!(
                "{} gives {} but {} gives {}",
                first.rule,
                first.lo(),
                other.rule,
                other.lo()
            )));
        }
    }
    let lo_hit = hits.iter().max_by_key(|h| h.lo()).expect("nonempty");
    let hi_hit = hits
        .iter()
        .filter(|h| h.hi().is_some())
        .min_by_key(|h| h.hi());
    if let Some(hi_hit) = hi_hit {
        let hi = hi_hit.hi().expect("filtered");
        if lo_hit.lo() > hi {
            let msg = format!(
                "{} gives at least {} but {} gives at most {hi}",
                lo_hit.rule,
                lo_hit.lo(),
                hi_hit.rule
            );
            return Err(if hi_hit.uses_c {
                Error::InvalidArgument(format!("{msg}; the constant c is too large"))
            } else {
                Error::InternalInconsistency(msg)
            });
        }
    }
    let mut provenance = Vec::new();
    let mut assumptions = Vec::new();
    let kind = if !exact.is_empty() {
        // Stable: among equal ranks the earlier rule in the table wins.
        let winner = exact.iter().rev().max_by_key(|h| h.rank).expect("nonempty");
        push_unique(&mut provenance, winner.cites.iter().map(|s| s.to_string()));
        push_unique(&mut assumptions, winner.assumptions.iter().cloned());
        GrKind::Exact(winner.lo())
    } else {
        push_unique(&mut provenance, lo_hit.cites.iter().map(|s| s.to_string()));
        push_unique(&mut assumptions, lo_hit.assumptions.iter().cloned());
        if let Some(hi_hit) = hi_hit {
            push_unique(&mut provenance, hi_hit.cites.iter().map(|s| s.to_string()));
            push_unique(&mut assumptions, hi_hit.assumptions.iter().cloned());
        }
        GrKind::Bounds {
            lo: lo_hit.lo(),
            hi: hi_hit.and_then(Hit::hi),
        }
    };
    let mut seen: BTreeSet<&str> = provenance.iter().map(String::as_str).collect();
    let mut corroborated_by = Vec::new();
    for h in hits {
        if seen.insert(h.rule) {
            corroborated_by.push(h.rule.to_string());
        }
    }
    let result = GrResult {
        kind,
        provenance,
        corroborated_by,
        assumptions,
    };
    result.check_invariants()?;
    Ok(result)
}

/// Every rule that matches `(H, k)`, with its own value, for diagnostics.
pub fn matching_rules(
    h: &TargetGraph,
    k: usize,
    c: Option<f64>,
) -> Result<Vec<(String, GrResult)>> {
    let q = Query::new(h, k as u64, c)?;
    RULES
        .iter()
        .filter_map(|rule| rule(&q))
        .map(|hit| {
            let r = combine(std::slice::from_ref(&hit))?;
            Ok((hit.rule.to_string(), r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> TargetGraph {
        s.parse().unwrap()
    }

    #[test]
    fn pq_examples() {
        assert_eq!(pq_decompose(4, 2).unwrap(), (2, 0));
        assert_eq!(pq_decompose(4, 3).unwrap(), (1, 1));
        assert_eq!(pq_decompose(0, 5).unwrap(), (0, 0));
        assert!(pq_decompose(3, 0).is_err());
    }

    #[test]
    fn ceil_formula_matches_floating_point() {
        for k in 1..5000u64 {
            let f = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).ceil() as u64;
            assert_eq!(ceil_half_sqrt(k), f, "k = {k}");
        }
    }

    #[test]
    fn evaluate_examples() {
        let r = evaluate(&h("S4^1"), 3).unwrap();
        assert_eq!(r.kind, GrKind::Exact(17));
        assert_eq!(r.provenance, vec!["th3-6", "le3-3"]);
        assert_eq!(evaluate(&h("K5"), 5).unwrap().exact(), Some(17));
        assert_eq!(evaluate(&h("PA6,5"), 4).unwrap().exact(), Some(24));
        assert_eq!(evaluate(&h("S6^1"), 4).unwrap().exact(), Some(7));
        assert_eq!(evaluate(&h("S13^3"), 4).unwrap().exact(), Some(17));
        assert_eq!(evaluate(&h("S4^1"), 12).unwrap().exact(), Some(6));
        assert_eq!(evaluate(&h("K4-M"), 12).unwrap().exact(), Some(6));
    }

    #[test]
    fn json_shape() {
        let r = evaluate(&h("S4^1"), 3).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert!(
            j.starts_with(r#"{"kind":"Exact","value":17,"provenance":["th3-6","le3-3"]"#),
            "{j}"
        );
        let back: GrResult = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn lower_bound_only_gives_open_bounds() {
        let r = evaluate(&h("K4"), 4).unwrap();
        assert_eq!(r.kind, GrKind::Bounds { lo: 10, hi: None });
        let r = evaluate(&h("S7^2"), 3).unwrap();
        assert_eq!(r.kind, GrKind::Bounds { lo: 31, hi: None });
    }

    #[test]
    fn pineapple_bounds_need_c() {
        let pa = h("PA9,6");
        assert_eq!(
            evaluate(&pa, 4).unwrap().kind,
            GrKind::Bounds { lo: 41, hi: None }
        );
        let with_c = evaluate_with(&pa, 4, Some(0.1)).unwrap();
        let GrKind::Bounds {
            lo: 41,
            hi: Some(hi),
        } = with_c.kind
        else {
            panic!("{with_c:?}")
        };
        assert!(hi >= 41);
        assert!(with_c.provenance.contains(&"th4-7".to_string()));
        assert!(matches!(
            evaluate_with(&pa, 5, Some(50.0)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            evaluate_with(&pa, 4, Some(-1.0)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn ramsey_examples() {
        let e = ramsey_known(&[h("K3"), h("K5")], 2, None).unwrap();
        assert_eq!(e.value, RamseyValue::Exact(14));
        assert_eq!(e.source, "le3-3");
        assert_eq!(
            ramsey_known(&[h("K5"), h("K3")], 2, None).unwrap().value,
            RamseyValue::Exact(14)
        );
        assert_eq!(
            ramsey_known(&[h("S5^1")], 3, None).unwrap().value,
            RamseyValue::Exact(21)
        );
        assert_eq!(
            ramsey_known(&[h("S5^1"), h("S5^1"), h("S5^1")], 3, None)
                .unwrap()
                .value,
            RamseyValue::Exact(21)
        );
        assert!(ramsey_known(&[h("S7^1")], 3, None).is_none());
        assert!(ramsey_known(&[h("PA7,5")], 2, None).is_none());
        assert!(ramsey_known(&[h("PA7,5")], 2, Some(0.5)).is_some());
    }

    #[test]
    fn three_color_star_interval_from_two_color_value() {
        assert_eq!(
            three_color_star_interval(6, 1, 10),
            RamseyValue::Interval {
                lo: Some(26),
                hi: Some(30)
            }
        );
    }

    #[test]
    fn table_rejects_malformed_lines() {
        assert!(parse_ramsey_table("K3|2|6").is_err());
        assert!(parse_ramsey_table("K3|2|6| ").is_err());
        assert!(parse_ramsey_table("K3|two|6|x").is_err());
        let t = parse_ramsey_table("# comment\nK4|2|[17, ?]|bound\n").unwrap();
        assert_eq!(
            t[0].value,
            RamseyValue::Interval {
                lo: Some(17),
                hi: None
            }
        );
    }

    #[test]
    fn combine_flags_disagreement() {
        let a = Hit::exact("a", 1, &["a"], 5);
        let b = Hit::exact("b", 1, &["b"], 6);
        assert!(matches!(
            combine(&[a.clone(), b]),
            Err(Error::InternalInconsistency(_))
        ));
        let low = Hit::range("c", 1, &["c"], 7, None);
        assert!(matches!(
            combine(&[a, low]),
            Err(Error::InternalInconsistency(_))
        ));
    }
}
