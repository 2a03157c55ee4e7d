//! Fibonacci numbers and explicit Fibonacci cubes.
//!
//! A vertex of the Fibonacci cube of dimension `n` is a binary string
//! `x_1 x_2 ... x_n` with no two consecutive ones. Strings are packed into a
//! `u32` with `x_1` at bit 0, so "no consecutive ones" is `bits & (bits >> 1) == 0`.
//! Cubes list their vertices in ascending numeric order of that packing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision value of an integer sequence (`F_n`, `q_k(n)`, `P_k(n)`).
pub type SequenceValue = BigUint;

/// Largest dimension [`build_cube`] will materialize (`F_32 = 2_178_309` vertices).
pub const MAX_CUBE_DIM: u32 = 30;

/// Returns `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fib(n: u32) -> SequenceValue {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_0 ..= F_max` in one pass.
pub fn fib_table(max: u32) -> Vec<SequenceValue> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(BigUint::zero());
    if max >= 1 {
        out.push(BigUint::one());
    }
    for i in 2..=max as usize {
        let next = &out[i - 1] + &out[i - 2];
        out.push(next);
    }
    out
}

/// `F_n` as a machine word; exact for `n <= 93`.
#[cfg(test)]
pub(crate) fn fib_u64(n: u32) -> u64 {
    assert!(n <= 93, "F_{n} overflows u64");
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        // `b` runs one term ahead and may wrap on the last step; `a` never does.
        let next = a.wrapping_add(b);
        a = b;
        b = next;
    }
    a
}

/// True when the packed string has no two adjacent ones.
#[inline]
pub fn is_fibonacci_string(bits: u32) -> bool {
    bits & (bits >> 1) == 0
}

#[inline]
pub(crate) fn width_mask(width: u32) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u32,
    width: u32,
}

impl Vertex {
    pub fn new(bits: u32, width: u32) -> Result<Self> {
        if width > MAX_CUBE_DIM {
            return Err(Error::Capacity {
                n: width,
                max: MAX_CUBE_DIM,
            });
        }
        if bits & !width_mask(width) != 0 {
            return Err(Error::Domain(format!(
                "bits {bits:#b} do not fit in width {width}"
            )));
        }
        if !is_fibonacci_string(bits) {
            return Err(Error::Domain(format!(
                "{} has two consecutive ones",
                render_bits(bits, width)
            )));
        }
        Ok(Vertex { bits, width })
    }

    /// Caller guarantees the invariants.
    #[inline]
    pub(crate) fn new_unchecked(bits: u32, width: u32) -> Self {
        debug_assert!(is_fibonacci_string(bits) && bits & !width_mask(width) == 0);
        Vertex { bits, width }
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of ones in the string.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

pub(crate) fn render_bits(bits: u32, width: u32) -> String {
    (0..width)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_bits(self.bits, self.width))
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Parses `x_1 x_2 ... x_n`, leftmost character first.
    fn from_str(s: &str) -> Result<Self> {
        let width = u32::try_from(s.len()).map_err(|_| Error::Parse(s.to_string()))?;
        if width > MAX_CUBE_DIM {
            return Err(Error::Capacity {
                n: width,
                max: MAX_CUBE_DIM,
            });
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("unexpected {c:?} in vertex {s:?}"))),
            }
        }
        Vertex::new(bits, width)
    }
}

/// True iff `u` and `v` differ in exactly one position.
pub fn adjacent(u: Vertex, v: Vertex) -> Result<bool> {
    if u.width != v.width {
        return Err(Error::WidthMismatch {
            left: u.width,
            right: v.width,
        });
    }
    Ok((u.bits ^ v.bits).count_ones() == 1)
}

/// The Fibonacci cube of dimension `n` with its vertices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibCube {
    n: u32,
    vertices: Vec<Vertex>,
}

impl FibCube {
    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Position of `v` in the sorted vertex list.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        if v.width != self.n {
            return None;
        }
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    /// Edge list as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            for bit in 0..self.n {
                let flipped = v.bits ^ (1 << bit);
                if flipped > v.bits && is_fibonacci_string(flipped) {
                    let j = self
                        .index_of(Vertex::new_unchecked(flipped, self.n))
                        .expect("neighbour lies in the cube");
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Materializes the Fibonacci cube of dimension `n`.
pub fn build_cube(n: u32) -> Result<FibCube> {
    if n > MAX_CUBE_DIM {
        return Err(Error::Capacity {
            n,
            max: MAX_CUBE_DIM,
        });
    }
    // Strings are generated by appending one symbol at a time at the high end,
    // so the list stays sorted: every extension by a high 0 precedes every
    // extension by a high 1.
    let mut current: Vec<u32> = vec![0];
    for len in 0..n {
        let mut next = Vec::with_capacity(current.len() * 2);
        next.extend_from_slice(&current);
        let top = 1u32 << len;
        let below = if len == 0 { 0 } else { 1u32 << (len - 1) };
        next.extend(current.iter().filter(|&&b| b & below == 0).map(|&b| b | top));
        current = next;
    }
    Ok(FibCube {
        n,
        vertices: current
            .into_iter()
            .map(|b| Vertex::new_unchecked(b, n))
            .collect(),
    })
}
