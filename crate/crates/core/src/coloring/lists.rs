//! Color sets and the two list-coloring facts the reductions rely on:
//! even cycles are 2-edge-choosable and triangles are totally 3-choosable.

use serde::Serialize;
use thiserror::Error;

use super::Color;

/// A set of colors `1..=63` as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1, .., k}`.
    pub fn full(k: usize) -> Self {
        debug_assert!(k <= super::MAX_PALETTE);
        ColorSet(((1u64 << k) - 1) << 1)
    }

    pub fn from_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in colors {
            s.insert(c);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                c as Color
            })
        })
    }
}

impl std::fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("cycle length {0} is not even")]
    OddCycle(usize),
    #[error("list {index} has {size} colors, at least {needed} required")]
    ListTooSmall { index: usize, size: usize, needed: usize },
    #[error("no assignment from the given lists")]
    Unsolvable,
}

/// Properly edge-colors a cycle `e0 e1 .. e(n-1)` (with `ei` meeting
/// `e(i+1)` and `e(n-1)` meeting `e0`) from lists of size at least 2.
pub fn list_edge_color_even_cycle(lists: &[ColorSet]) -> Result<Vec<Color>, ListError> {
    let n = lists.len();
    if !n.is_multiple_of(2) || n == 0 {
        return Err(ListError::OddCycle(n));
    }
    if let Some((index, l)) = lists.iter().enumerate().find(|(_, l)| l.len() < 2) {
        return Err(ListError::ListTooSmall {
            index,
            size: l.len(),
            needed: 2,
        });
    }
    let mut out = vec![0; n];
    // If some list has a color its successor lacks, fix that color first and
    // walk backwards: each later edge has one colored neighbor until the
    // successor, whose other colored neighbor uses a color it cannot have.
    if let Some(i) = (0..n).find(|&i| !lists[i].is_subset(lists[(i + 1) % n])) {
        out[i] = lists[i].difference(lists[(i + 1) % n]).min().unwrap();
        for step in 1..n {
            let j = (i + n - step) % n;
            let mut avoid = ColorSet::from_colors([out[(j + 1) % n]]);
            if step == n - 1 {
                avoid.insert(out[(j + n - 1) % n]);
            }
            out[j] = lists[j].difference(avoid).min().ok_or(ListError::Unsolvable)?;
        }
    } else {
        // All lists are equal: alternate two of their colors.
        let mut it = lists[0].iter();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        for (i, c) in out.iter_mut().enumerate() {
            *c = if i % 2 == 0 { a } else { b };
        }
    }
    Ok(out)
}

/// Total coloring of a triangle from lists of size at least 3, given in the
/// order `v1, v2, v3, v1v2, v2v3, v3v1`.
pub fn list_total_color_triangle(lists: [ColorSet; 6]) -> Result<[Color; 6], ListError> {
    if let Some((index, l)) = lists.iter().enumerate().find(|(_, l)| l.len() < 3) {
        return Err(ListError::ListTooSmall {
            index,
            size: l.len(),
            needed: 3,
        });
    }
    // Total graph of the triangle (an octahedron): slot i conflicts with
    // every slot except its opposite.
    const OPPOSITE: [usize; 6] = [4, 5, 3, 2, 0, 1];
    fn go(i: usize, lists: &[ColorSet; 6], out: &mut [Color; 6]) -> bool {
        if i == 6 {
            return true;
        }
        let avoid = ColorSet::from_colors((0..i).filter(|&j| j != OPPOSITE[i]).map(|j| out[j]));
        for c in lists[i].difference(avoid).iter() {
            out[i] = c;
            if go(i + 1, lists, out) {
                return true;
            }
        }
        false
    }
    let mut out = [0; 6];
    if go(0, &lists, &mut out) {
        Ok(out)
    } else {
        Err(ListError::Unsolvable)
    }
}
