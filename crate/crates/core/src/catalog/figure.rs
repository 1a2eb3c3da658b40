//! Layouts of the three configurations centered on a 6-vertex with several
//! low-degree neighbors.
//!
//! Every layout names its witness slots, pins exact degrees where the
//! configuration fixes them, and lists the adjacencies it requires. Slot 0 is
//! the center `v`, slots 1..=6 are its neighbors `v1..v6`, later slots are
//! second-neighborhood vertices. Bullet slots (fixed degree, no neighbors
//! beyond the listed ones) are exactly the slots with a pinned degree other
//! than the center.

pub struct Layout {
    pub names: &'static [&'static str],
    /// `(slot, degree)` pairs; the degree is exact.
    pub degrees: &'static [(usize, usize)],
    /// Required adjacencies between slots, besides `v`–`vi` for `i` in 1..=6.
    pub edges: &'static [(usize, usize)],
    /// `(a, b)`: the vertex in slot `a` has a smaller id than the one in slot
    /// `b`. Removes the labelings that only permute interchangeable slots.
    pub ascending: &'static [(usize, usize)],
}

impl Layout {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Slots that must carry no neighbors outside the configuration.
    pub fn bullets(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().map(|&(s, _)| s).filter(|&s| s != 0)
    }

    pub fn degree_of(&self, slot: usize) -> Option<usize> {
        self.degrees.iter().find(|&&(s, _)| s == slot).map(|&(_, d)| d)
    }
}

pub const V: usize = 0;
pub const V1: usize = 1;
pub const V2: usize = 2;
pub const V3: usize = 3;
pub const V4: usize = 4;
pub const V5: usize = 5;
pub const V6: usize = 6;
pub const U1: usize = 7;
pub const U2: usize = 8;
pub const U3: usize = 9;

/// Slot of `u` in the first configuration.
pub const ONE_U: usize = 9;
/// Slot of `u` in the second configuration.
pub const TWO_U: usize = 10;

/// `v1`, `v2`, `v4` are 2-vertices; `v1`'s other neighbor `u1` is adjacent
/// to `v2`'s other neighbor `u2`; `v4`'s other neighbor is `u`.
pub const FIG2_ONE: Layout = Layout {
    names: &["v", "v1", "v2", "v3", "v4", "v5", "v6", "u1", "u2", "u"],
    degrees: &[(V, 6), (V1, 2), (V2, 2), (V4, 2)],
    edges: &[(V1, U1), (V2, U2), (U1, U2), (V4, ONE_U)],
    ascending: &[(V1, V2), (V3, V5), (V5, V6)],
};

/// `v1`, `v3`, `v5` are 2-vertices and `v2` is a 3-vertex. `v1`'s other
/// neighbor `u1` is adjacent to `u2`; `v2` is adjacent to `u2` and `u3`;
/// `v3`'s other neighbor is `u3`; `v5`'s other neighbor is `u`.
pub const FIG2_TWO: Layout = Layout {
    names: &["v", "v1", "v2", "v3", "v4", "v5", "v6", "u1", "u2", "u3", "u"],
    degrees: &[(V, 6), (V1, 2), (V2, 3), (V3, 2), (V5, 2)],
    edges: &[(V1, U1), (U1, U2), (V2, U2), (V2, U3), (V3, U3), (V5, TWO_U)],
    ascending: &[(V4, V6)],
};

/// `v1`, `v2` are 2-vertices with other neighbors `u1`, `u2`, and `u1u2` is
/// an edge; `v3` is a 3-vertex adjacent to `u2` and `u3`.
pub const FIG2_THREE: Layout = Layout {
    names: &["v", "v1", "v2", "v3", "v4", "v5", "v6", "u1", "u2", "u3"],
    degrees: &[(V, 6), (V1, 2), (V2, 2), (V3, 3)],
    edges: &[(V1, U1), (V2, U2), (U1, U2), (V3, U2), (V3, U3)],
    ascending: &[(V4, V5), (V5, V6)],
};
