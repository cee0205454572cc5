//! Colorings, blocked/available color sets and per-vertex edge profiles.

pub mod goodness;

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::hypergraph::Hypergraph;
use crate::rng::uniform_below;
use crate::{Error, Result};

/// An assignment of colors `0..q` to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    q: usize,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(q: usize, colors: Vec<u32>) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyPalette);
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c as usize >= q) {
            return Err(Error::ColorOutOfRange { vertex, color, q });
        }
        Ok(Coloring { q, colors })
    }

    pub fn constant(n: usize, q: usize, color: u32) -> Result<Self> {
        Self::new(q, vec![color; n])
    }

    /// Each vertex independently uniform on the palette.
    pub fn random<R: RngCore + ?Sized>(n: usize, q: usize, rng: &mut R) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyPalette);
        }
        let colors = (0..n).map(|_| uniform_below(rng, q as u64) as u32).collect();
        Ok(Coloring { q, colors })
    }

    /// Inverse of [`Coloring::code`]: vertex 0 is the least significant digit.
    pub fn decode(code: u64, n: usize, q: usize) -> Self {
        let mut rest = code;
        let colors = (0..n)
            .map(|_| {
                let c = rest % q as u64;
                rest /= q as u64;
                c as u32
            })
            .collect();
        Coloring { q, colors }
    }

    /// Base-q integer encoding, vertex 0 least significant. Callers make
    /// sure `q^n` fits in a `u64`.
    pub fn code(&self) -> u64 {
        self.colors.iter().rev().fold(0u64, |acc, &c| acc * self.q as u64 + u64::from(c))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn get(&self, v: usize) -> u32 {
        self.colors[v]
    }

    /// Panics if `color >= q`.
    pub fn set(&mut self, v: usize, color: u32) {
        assert!((color as usize) < self.q, "color {color} outside palette of {}", self.q);
        self.colors[v] = color;
    }

    pub fn hamming(&self, other: &Coloring) -> usize {
        self.colors.iter().zip(&other.colors).filter(|(a, b)| a != b).count()
    }

    pub(crate) fn check_dims(&self, h: &Hypergraph) -> Result<()> {
        if self.n() != h.n() {
            return Err(Error::DimensionMismatch { expected: h.n(), got: self.n() });
        }
        Ok(())
    }
}

/// Edge profile of one vertex under one coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorProfile {
    /// `y[i - 1]` counts edges through `v` whose other `k - 1` vertices use
    /// exactly `i` distinct colors.
    pub y: Vec<usize>,
    /// Colors that would make some edge through `v` monochromatic. Ascending.
    pub blocked: Vec<usize>,
    /// The palette minus `blocked`. Ascending.
    pub available: Vec<usize>,
}

impl ColorProfile {
    /// Count for exactly `i` distinct colors, `1 <= i <= k - 1`.
    pub fn y(&self, i: usize) -> usize {
        self.y[i - 1]
    }
}

pub fn profile(h: &Hypergraph, x: &Coloring, v: usize) -> Result<ColorProfile> {
    x.check_dims(h)?;
    if v >= h.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    let mut y = vec![0usize; h.k().saturating_sub(1).max(1)];
    let mut scratch = Vec::with_capacity(h.k());
    for &e in h.incident(v) {
        scratch.clear();
        scratch.extend(h.edge(e).iter().filter(|&&w| w != v).map(|&w| x.get(w)));
        scratch.sort_unstable();
        scratch.dedup();
        y[scratch.len() - 1] += 1;
    }
    let blocked = blocked_colors(h, x, v);
    let available = complement(&blocked, x.q());
    Ok(ColorProfile { y, blocked, available })
}

/// `B(v, X)`, ascending and deduplicated. Depends only on colors off `v`.
pub fn blocked_colors(h: &Hypergraph, x: &Coloring, v: usize) -> Vec<usize> {
    let mut blocked = Vec::new();
    blocked_into(h, x.colors(), v, &mut blocked);
    blocked
}

pub(crate) fn blocked_into(h: &Hypergraph, colors: &[u32], v: usize, out: &mut Vec<usize>) {
    out.clear();
    for &e in h.incident(v) {
        let mut others = h.edge(e).iter().filter(|&&w| w != v).map(|&w| colors[w]);
        let Some(first) = others.next() else { continue };
        if others.all(|c| c == first) {
            out.push(first as usize);
        }
    }
    out.sort_unstable();
    out.dedup();
}

/// The `idx`-th smallest color not in `blocked` (ascending, deduplicated).
pub(crate) fn nth_available(blocked: &[usize], idx: usize) -> usize {
    let mut color = idx;
    for &b in blocked {
        if b <= color {
            color += 1;
        } else {
            break;
        }
    }
    color
}

pub(crate) fn complement(blocked: &[usize], q: usize) -> Vec<usize> {
    (0..q).filter(|c| blocked.binary_search(c).is_err()).collect()
}

/// True iff no edge is monochromatic.
pub fn is_proper(h: &Hypergraph, x: &Coloring) -> Result<bool> {
    x.check_dims(h)?;
    Ok(is_proper_colors(h, x.colors()))
}

pub(crate) fn is_proper_colors(h: &Hypergraph, colors: &[u32]) -> bool {
    h.edges().iter().all(|e| {
        let first = colors[e[0]];
        e[1..].iter().any(|&w| colors[w] != first)
    })
}

/// `min_v |A(v, X)|`; `q` when there are no vertices.
pub fn min_available(h: &Hypergraph, x: &Coloring) -> Result<usize> {
    x.check_dims(h)?;
    let mut buf = Vec::new();
    Ok((0..h.n())
        .map(|v| {
            blocked_into(h, x.colors(), v, &mut buf);
            x.q() - buf.len()
        })
        .min()
        .unwrap_or(x.q()))
}
