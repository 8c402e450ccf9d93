//! Witness certification and exhaustive computation of small values.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalKey, SymmetryMode};
use crate::detect::{find_mono_copy, find_mono_copy_in_color, find_rainbow_path, Embedding};
use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, Color, ColoredComplete};
use crate::structure::{enumerate_p5free, MAX_ENUMERATION_ORDER};
use crate::target::TargetGraph;

/// Largest number of colorings [`brute_force_colorings`] will walk.
pub const MAX_BRUTE_FORCE: u64 = 100_000_000;

/// Evidence that a coloring avoids both a rainbow `P5` and a monochromatic `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub coloring: ColoredComplete,
    pub target: TargetGraph,
    pub order: usize,
    pub k: usize,
    pub rainbow_p5_absent: bool,
    /// The rainbow search ran to completion (it always does; kept for replay).
    pub search_exhausted: bool,
    /// Entry `j - 1` records that color `j` hosts no copy of the target.
    pub mono_absent: Vec<bool>,
}

impl WitnessCertificate {
    /// Reruns both detectors on the stored coloring and compares verdicts.
    pub fn replay(&self) -> bool {
        match verify_witness(&self.coloring, &self.target) {
            Ok(again) => again == *self,
            Err(_) => false,
        }
    }
}

/// Why a coloring is not a witness.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerificationFailure {
    #[error("coloring is not exact: colors {unused:?} never appear")]
    NotExact { unused: Vec<Color> },
    #[error("rainbow P5 on vertices {:?}", .0.vertices)]
    RainbowPath(Embedding),
    #[error("monochromatic {} in color {} on vertices {:?}", .0.pattern, .0.color.unwrap_or(0), .0.vertices)]
    MonoCopy(Embedding),
}

/// Certifies `c` as a lower-bound witness for `h`, or names the obstruction.
pub fn verify_witness(
    c: &ColoredComplete,
    h: &TargetGraph,
) -> std::result::Result<WitnessCertificate, VerificationFailure> {
    if !c.is_exact() {
        let unused = (1..=c.k() as Color)
            .filter(|&j| c.used_mask() & (1 << j) == 0)
            .collect();
        return Err(VerificationFailure::NotExact { unused });
    }
    if c.n() >= 5 {
        if let Some(p) = find_rainbow_path(c, 4).expect("m = 4 < n") {
            return Err(VerificationFailure::RainbowPath(p));
        }
    }
    let mut mono_absent = Vec::with_capacity(c.k());
    for j in 1..=c.k() as Color {
        if let Some(e) = find_mono_copy_in_color(c, h, j) {
            return Err(VerificationFailure::MonoCopy(e));
        }
        mono_absent.push(true);
    }
    Ok(WitnessCertificate {
        coloring: c.clone(),
        target: h.clone(),
        order: c.n(),
        k: c.k(),
        rainbow_p5_absent: true,
        search_exhausted: true,
        mono_absent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    AllGood,
    Bad,
    NoExactColorings,
}

/// Result of checking one order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub n: usize,
    pub k: usize,
    pub target: TargetGraph,
    pub status: CheckStatus,
    /// The canonically smallest rainbow-`P5`-free coloring without a
    /// monochromatic target, when `status` is `Bad`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<ColoredComplete>,
    /// Colorings examined, counted up to vertex and color permutation.
    pub examined: usize,
}

fn no_exact(h: &TargetGraph, k: usize, n: usize) -> CheckOutcome {
    CheckOutcome {
        n,
        k,
        target: h.clone(),
        status: CheckStatus::NoExactColorings,
        witness: None,
        examined: 0,
    }
}

/// Scans a key-sorted list of rainbow-`P5`-free colorings for the first one
/// without a monochromatic `h`.
fn scan(h: &TargetGraph, k: usize, n: usize, sorted: &[ColoredComplete]) -> CheckOutcome {
    let first_bad = sorted
        .par_iter()
        .position_first(|c| find_mono_copy(c, h).is_none());
    let (status, witness, examined) = match first_bad {
        Some(i) => (CheckStatus::Bad, Some(sorted[i].clone()), i + 1),
        None => (CheckStatus::AllGood, None, sorted.len()),
    };
    CheckOutcome {
        n,
        k,
        target: h.clone(),
        status,
        witness,
        examined,
    }
}

/// Decides whether every exact rainbow-`P5`-free `k`-coloring of `K_n`
/// contains a monochromatic `h`.
///
/// Orders `n >= 5` use the structured enumerator; smaller orders have no
/// `P5` at all and are checked by brute force. When exact colorings exist
/// but none avoids a rainbow `P5`, the status is `AllGood` with zero
/// colorings examined.
pub fn check_n(h: &TargetGraph, k: usize, n: usize) -> Result<CheckOutcome> {
    if k <= 3 {
        return Err(Error::Unsupported(format!(
            "k = {k}: with at most three colors every coloring avoids a rainbow P5, which is a Ramsey problem"
        )));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedSize {
            what: "search order",
            got: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if pair_count(n) < k {
        return Ok(no_exact(h, k, n));
    }
    let sorted = if n >= 5 {
        enumerate_p5free(n, k)?
    } else {
        brute_force_p5free(n, k)?.into_values().collect()
    };
    Ok(scan(h, k, n, &sorted))
}

/// The same check as [`check_n`], with the structured enumerator replaced by
/// brute force over every exact coloring. Intended as an oracle.
pub fn check_n_brute_force(h: &TargetGraph, k: usize, n: usize) -> Result<CheckOutcome> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if pair_count(n) < k {
        return Ok(no_exact(h, k, n));
    }
    let sorted: Vec<ColoredComplete> = brute_force_p5free(n, k)?.into_values().collect();
    Ok(scan(h, k, n, &sorted))
}

/// Per-order summary kept by [`compute_gr`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub n: usize,
    pub status: CheckStatus,
    pub examined: usize,
}

/// Outcome of [`compute_gr`]. `value` is `None` when `n_max` itself is bad.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrSearch {
    pub target: TargetGraph,
    pub k: usize,
    pub value: Option<usize>,
    /// Every order in `value..=verified_through` was checked and is good.
    pub verified_through: usize,
    /// Orders checked, from `n_max` downward.
    pub checks: Vec<OrderCheck>,
    /// The counterexample at `value - 1`, if that order had colorings.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<ColoredComplete>,
}

/// The smallest `N` such that every order in `N..=n_max` is good.
///
/// Orders without exact colorings count as bad. Nothing is claimed beyond
/// `n_max`.
pub fn compute_gr(h: &TargetGraph, k: usize, n_max: usize) -> Result<GrSearch> {
    let mut checks = Vec::new();
    let mut n = n_max;
    loop {
        let outcome = check_n(h, k, n)?;
        checks.push(OrderCheck {
            n,
            status: outcome.status,
            examined: outcome.examined,
        });
        if outcome.status != CheckStatus::AllGood {
            let value = (n < n_max).then_some(n + 1);
            return Ok(GrSearch {
                target: h.clone(),
                k,
                value,
                verified_through: n_max,
                checks,
                witness: outcome.witness,
            });
        }
        // n = 1 has no edges, so it is never good for k >= 1.
        n -= 1;
    }
}

fn brute_force_total(n: usize, k: usize) -> Result<u64> {
    let edges = pair_count(n) as u32;
    match (k as u64).checked_pow(edges) {
        Some(total) if total <= MAX_BRUTE_FORCE => Ok(total),
        _ => Err(Error::UnsupportedSize {
            what: "brute-force coloring count (k^(n(n-1)/2))",
            got: (k as f64).powi(edges as i32).min(usize::MAX as f64) as usize,
            max: MAX_BRUTE_FORCE as usize,
        }),
    }
}

fn decode(n: usize, k: usize, mut code: u64, out: &mut [Color]) {
    for slot in out.iter_mut().take(pair_count(n)) {
        *slot = (code % k as u64) as Color + 1;
        code /= k as u64;
    }
}

/// Every exact `k`-coloring of `K_n`, without deduplication, in code order.
///
/// Guarded by `k^(n(n-1)/2) <= 10^8`.
pub fn brute_force_colorings(n: usize, k: usize) -> Result<impl Iterator<Item = ColoredComplete>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be positive".into()));
    }
    // Too few pairs for k colors: nothing to walk, whatever the guard says.
    let total = if pair_count(n) < k {
        0
    } else {
        brute_force_total(n, k)?
    };
    let m = pair_count(n);
    let full = ((1u128 << (k + 1)) - 2) as u64;
    Ok((0..total).filter_map(move |code| {
        let mut colors = vec![0; m];
        decode(n, k, code, &mut colors);
        let used = colors.iter().fold(0u64, |s, &c| s | 1 << c);
        (used == full)
            .then(|| ColoredComplete::new(n, k, colors).expect("decoded colors are in range"))
    }))
}

/// Pair indices of every `P5` in `K_n`, each path listed once.
fn p5_table(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let vs = [a, b, c, d, e];
                        let distinct = (0..5).all(|i| (i + 1..5).all(|j| vs[i] != vs[j]));
                        if distinct && a < e {
                            out.push([
                                pair_index(a, b),
                                pair_index(b, c),
                                pair_index(c, d),
                                pair_index(d, e),
                            ]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Rainbow-`P5`-free exact colorings of `K_n` by brute force, one
/// representative per vertex-and-color class, keyed canonically.
pub fn brute_force_p5free(n: usize, k: usize) -> Result<BTreeMap<CanonicalKey, ColoredComplete>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be positive".into()));
    }
    let total = brute_force_total(n, k)?;
    let m = pair_count(n);
    let full = ((1u128 << (k + 1)) - 2) as u64;
    let paths = if n >= 5 { p5_table(n) } else { Vec::new() };
    let found: Vec<(CanonicalKey, ColoredComplete)> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut colors = [0 as Color; 64];
            decode(n, k, code, &mut colors[..m]);
            let used = colors[..m].iter().fold(0u64, |s, &c| s | 1 << c);
            if used != full {
                return None;
            }
            let rainbow = paths.iter().any(|p| {
                let mask = p.iter().fold(0u64, |s, &e| s | 1 << colors[e]);
                mask.count_ones() == 4
            });
            if rainbow {
                return None;
            }
            let c = ColoredComplete::new(n, k, colors[..m].to_vec()).expect("in range");
            let key = canonical_form(&c, SymmetryMode::VertexAndColor).expect("n <= 10");
            Some((key, c))
        })
        .collect();
    let mut out = BTreeMap::new();
    for (key, _) in found {
        if let std::collections::btree_map::Entry::Vacant(slot) = out.entry(key) {
            let rep = slot.key().to_coloring();
            slot.insert(rep);
        }
    }
    Ok(out)
}

/// Number of exact `k`-colorings of `K_n` by inclusion-exclusion.
pub fn exact_coloring_count(n: usize, k: usize) -> u128 {
    let m = pair_count(n) as u32;
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for i in 0..=k {
        let term = binom * ((k - i) as i128).pow(m);
        total += if i % 2 == 0 { term } else { -term };
        binom = binom * (k - i) as i128 / (i + 1) as i128;
    }
    total as u128
}
