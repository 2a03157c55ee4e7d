//! Induced hypercubes of `Γ_n` as wildcard patterns over `{0, 1, *}`.
//!
//! A pattern fixes some positions to 1, leaves `k` positions free (`*`) and
//! sets the rest to 0. Its completions span a `Q_k` of the ambient `Q_n`; they
//! all lie in `Γ_n` exactly when no two adjacent positions are "live"
//! (a `*` or a `1`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{
    adjacent, build_cube, is_fibonacci_string, width_mask, Vertex, MAX_CUBE_DIM,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubcubePattern {
    star_mask: u32,
    one_mask: u32,
    width: u32,
}

impl SubcubePattern {
    /// Builds a pattern without validating it; see [`is_valid_pattern`].
    pub fn from_masks(star_mask: u32, one_mask: u32, width: u32) -> Self {
        SubcubePattern {
            star_mask,
            one_mask,
            width,
        }
    }

    pub fn star_mask(&self) -> u32 {
        self.star_mask
    }

    pub fn one_mask(&self) -> u32 {
        self.one_mask
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Dimension of the spanned hypercube.
    pub fn order(&self) -> u32 {
        self.star_mask.count_ones()
    }

    /// Smallest completion (all stars set to 0).
    pub fn min_vertex(&self) -> Vertex {
        Vertex::new_unchecked(self.one_mask, self.width)
    }

    /// Whether `v` is one of the completions.
    pub fn contains(&self, v: Vertex) -> bool {
        v.width() == self.width && v.bits() & !self.star_mask == self.one_mask
    }

    /// Canonical sort key.
    pub fn key(&self) -> (u32, u32) {
        (self.star_mask, self.one_mask)
    }
}

impl PartialOrd for SubcubePattern {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubcubePattern {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key()
            .cmp(&other.key())
            .then(self.width.cmp(&other.width))
    }
}

impl fmt::Display for SubcubePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = (0..self.width)
            .map(|i| {
                if self.star_mask >> i & 1 == 1 {
                    '*'
                } else if self.one_mask >> i & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        f.write_str(&text)
    }
}

impl FromStr for SubcubePattern {
    type Err = Error;

    /// Parses a `{0, 1, *}` string, position 1 leftmost. Validity is not checked.
    fn from_str(s: &str) -> Result<Self> {
        let width = u32::try_from(s.chars().count()).map_err(|_| Error::Parse(s.into()))?;
        if width > MAX_CUBE_DIM {
            return Err(Error::Capacity {
                n: width,
                max: MAX_CUBE_DIM,
            });
        }
        let (mut stars, mut ones) = (0u32, 0u32);
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => ones |= 1 << i,
                '*' => stars |= 1 << i,
                _ => return Err(Error::Parse(format!("unexpected {c:?} in pattern {s:?}"))),
            }
        }
        Ok(SubcubePattern::from_masks(stars, ones, width))
    }
}

/// Star and one masks are disjoint, fit the width, and no two adjacent
/// positions are live.
pub fn is_valid_pattern(p: &SubcubePattern) -> bool {
    let live = p.star_mask | p.one_mask;
    p.width <= MAX_CUBE_DIM
        && p.star_mask & p.one_mask == 0
        && live & !width_mask(p.width) == 0
        && is_fibonacci_string(live)
}

/// Every valid pattern of width `n` with exactly `k` stars, sorted by
/// `(star_mask, one_mask)`.
pub fn enumerate_patterns(n: u32, k: u32) -> Result<Vec<SubcubePattern>> {
    let cube = build_cube(n)?;
    let mut out = Vec::new();
    // Each live set is a vertex of Γ_n; choose which k of its positions are stars.
    for live in cube.vertices().iter().map(|v| v.bits()) {
        if live.count_ones() < k {
            continue;
        }
        let mut sub = live;
        loop {
            if sub.count_ones() == k {
                out.push(SubcubePattern::from_masks(sub, live & !sub, n));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & live;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The `2^k` completions of `p`, ascending.
pub fn pattern_vertices(p: &SubcubePattern) -> Result<Vec<Vertex>> {
    if !is_valid_pattern(p) {
        return Err(Error::InvalidPattern(p.to_string()));
    }
    let mut out = Vec::with_capacity(1 << p.order());
    let stars = p.star_mask;
    let mut sub = 0u32;
    loop {
        out.push(Vertex::new_unchecked(p.one_mask | sub, p.width));
        // next submask of `stars` in increasing order
        sub = (sub.wrapping_sub(stars)) & stars;
        if sub == 0 {
            break;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Outcome of comparing the pattern model with a model-free subgraph search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedCrossCheck {
    pub n: u32,
    pub k: u32,
    /// Vertex sets inducing a `Q_k`, found without reference to patterns.
    pub induced_count: usize,
    pub pattern_count: usize,
    /// The two families of vertex sets coincide.
    pub families_match: bool,
}

impl InducedCrossCheck {
    pub fn passed(&self) -> bool {
        self.families_match && self.induced_count == self.pattern_count
    }
}

/// Largest `(n, k)` accepted by [`cross_check_induced`].
pub const CROSS_CHECK_MAX_DIM: u32 = 8;

/// Finds every vertex set of `Γ_n` inducing a `Q_k` (`k ≤ 2`) by brute force
/// over vertex subsets, using only adjacency, and compares that family with
/// the vertex sets of [`enumerate_patterns`].
pub fn cross_check_induced(n: u32, k: u32) -> Result<InducedCrossCheck> {
    if k > 2 {
        return Err(Error::Domain(format!("induced search supports k <= 2, got {k}")));
    }
    if n > CROSS_CHECK_MAX_DIM {
        return Err(Error::Capacity {
            n,
            max: CROSS_CHECK_MAX_DIM,
        });
    }
    let cube = build_cube(n)?;
    let verts = cube.vertices();
    let adj = |a: usize, b: usize| adjacent(verts[a], verts[b]).expect("same width");

    let mut induced: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    match k {
        0 => induced.extend(verts.iter().map(|&v| vec![v])),
        1 => {
            for a in 0..verts.len() {
                for b in a + 1..verts.len() {
                    if adj(a, b) {
                        induced.insert(vec![verts[a], verts[b]]);
                    }
                }
            }
        }
        _ => {
            // A 4-vertex induced subgraph that is 2-regular is a 4-cycle.
            let len = verts.len();
            for a in 0..len {
                for b in a + 1..len {
                    for c in b + 1..len {
                        for d in c + 1..len {
                            let set = [a, b, c, d];
                            let two_regular = set.iter().all(|&x| {
                                set.iter().filter(|&&y| y != x && adj(x, y)).count() == 2
                            });
                            if two_regular {
                                induced.insert(set.iter().map(|&i| verts[i]).collect());
                            }
                        }
                    }
                }
            }
        }
    }

    let patterns = enumerate_patterns(n, k)?;
    let from_patterns = patterns
        .iter()
        .map(pattern_vertices)
        .collect::<Result<BTreeSet<Vec<Vertex>>>>()?;
    Ok(InducedCrossCheck {
        n,
        k,
        induced_count: induced.len(),
        pattern_count: patterns.len(),
        families_match: induced == from_patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fib_u64;

    fn pat(s: &str) -> SubcubePattern {
        s.parse().unwrap()
    }

    /// Every string over {0, 1, *} of length n whose completions all avoid "11",
    /// found by expanding each completion explicitly.
    fn brute_force_patterns(n: u32, k: u32) -> Vec<String> {
        let mut out = Vec::new();
        let total = 3usize.pow(n);
        for code in 0..total {
            let mut symbols = Vec::with_capacity(n as usize);
            let mut c = code;
            for _ in 0..n {
                symbols.push(['0', '1', '*'][c % 3]);
                c /= 3;
            }
            let stars: Vec<usize> = (0..n as usize).filter(|&i| symbols[i] == '*').collect();
            if stars.len() != k as usize {
                continue;
            }
            let all_ok = (0..1u32 << stars.len()).all(|assign| {
                let mut s = symbols.clone();
                for (j, &pos) in stars.iter().enumerate() {
                    s[pos] = if assign >> j & 1 == 1 { '1' } else { '0' };
                }
                !s.windows(2).any(|w| w == ['1', '1'])
            });
            if all_ok {
                out.push(symbols.into_iter().collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_examples() {
        assert!(enumerate_patterns(2, 2).unwrap().is_empty());

        let three: Vec<String> = enumerate_patterns(3, 1)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        // Canonical order: star at position 1 first, then by fixed ones.
        assert_eq!(three, ["*00", "*01", "0*0", "00*", "10*"]);

        let five = enumerate_patterns(5, 2).unwrap();
        assert_eq!(five.len(), 9);
        let names: Vec<String> = five.iter().map(|p| p.to_string()).collect();
        assert!(names.contains(&"*0*00".to_string()));
        assert!(names.contains(&"*0*01".to_string()));
    }

    #[test]
    fn enumeration_matches_symbol_scan() {
        for n in 0..=7 {
            for k in 0..=n {
                let mut got: Vec<String> = enumerate_patterns(n, k)
                    .unwrap()
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                got.sort();
                assert_eq!(got, brute_force_patterns(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn order_zero_patterns_are_vertices() {
        for n in 0..=15 {
            assert_eq!(enumerate_patterns(n, 0).unwrap().len() as u64, fib_u64(n + 2));
        }
    }

    #[test]
    fn vertices_of_patterns() {
        let names = |p: &str| -> Vec<String> {
            pattern_vertices(&pat(p))
                .unwrap()
                .iter()
                .map(|v| v.to_string())
                .collect()
        };
        let mut a = names("*0*00");
        a.sort();
        assert_eq!(a, ["00000", "00100", "10000", "10100"]);
        assert_eq!(names("00100"), ["00100"]);
        let mut b = names("*0*01");
        b.sort();
        assert_eq!(b, ["00001", "00101", "10001", "10101"]);
        assert!(matches!(
            pattern_vertices(&pat("**000")),
            Err(Error::InvalidPattern(_))
        ));
    }

    #[test]
    fn validity() {
        assert!(is_valid_pattern(&SubcubePattern::from_masks(0b00101, 0, 5)));
        assert!(!is_valid_pattern(&SubcubePattern::from_masks(0b00011, 0, 5)));
        assert!(!is_valid_pattern(&SubcubePattern::from_masks(0b00001, 0b00010, 5)));
        assert!(!is_valid_pattern(&SubcubePattern::from_masks(0b1, 0b1, 3)));
        assert!(!is_valid_pattern(&SubcubePattern::from_masks(0b1000, 0, 3)));
        assert_eq!(pat("*0*00").star_mask(), 0b00101);
        assert_eq!(pat("01*").to_string(), "01*");
    }

    #[test]
    fn enumeration_is_deterministic_and_valid() {
        let a = enumerate_patterns(9, 3).unwrap();
        assert_eq!(a, enumerate_patterns(9, 3).unwrap());
        assert!(a.iter().all(is_valid_pattern));
        assert!(a.windows(2).all(|w| w[0].key() < w[1].key()));
    }

    #[test]
    fn cross_check_examples() {
        let c52 = cross_check_induced(5, 2).unwrap();
        assert!(c52.passed());
        assert_eq!((c52.induced_count, c52.pattern_count), (9, 9));
        let c31 = cross_check_induced(3, 1).unwrap();
        assert!(c31.passed());
        assert_eq!(c31.induced_count, 5);
        let c11 = cross_check_induced(1, 1).unwrap();
        assert!(c11.passed());
        assert_eq!(c11.induced_count, 1);
        assert!(cross_check_induced(4, 3).is_err());
    }

    #[test]
    fn contains_and_min_vertex() {
        let p = pat("*010*");
        let verts = pattern_vertices(&p).unwrap();
        assert_eq!(verts[0], p.min_vertex());
        assert!(verts.iter().all(|&v| p.contains(v)));
        assert!(!p.contains("00000".parse().unwrap()));
    }
}
