//! Rectangle geometry.
//!
//! Walks live on the vertex grid of an `L x W` rectangle of the square
//! lattice, start at the centre vertex and stop the moment they land on a
//! boundary vertex.  The sides must be even so that the centre is a vertex,
//! and the rectangle is oriented with the short sides horizontal:
//! `L` is the horizontal side, `W >= L` the vertical one.

use crate::error::{Error, Result};

/// A validated `L x W` rectangle, `L` and `W` even, `2 <= L <= W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rectangle {
    l: u32,
    w: u32,
}

impl Rectangle {
    pub fn new(l: u32, w: u32) -> Result<Self> {
        if l < 2 || w < 2 {
            return Err(Error::InvalidGeometry(format!(
                "sides must be at least 2, got {l} x {w}"
            )));
        }
        if l % 2 != 0 || w % 2 != 0 {
            return Err(Error::InvalidGeometry(format!(
                "L and W must be even, got {l} x {w}"
            )));
        }
        if l > w {
            return Err(Error::InvalidGeometry(format!(
                "L must not exceed W, got {l} x {w}"
            )));
        }
        Ok(Rectangle { l, w })
    }

    /// Horizontal side length (the short sides are horizontal).
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Vertical side length.
    pub fn w(&self) -> u32 {
        self.w
    }

    /// Number of interior vertices, `(L-1)(W-1)`.  Also the maximum walk
    /// length: a walk visits interior vertices only, plus one final
    /// boundary vertex.
    pub fn interior_vertices(&self) -> usize {
        (self.l as usize - 1) * (self.w as usize - 1)
    }

    /// Centre vertex in lattice coordinates.
    pub fn centre(&self) -> (u32, u32) {
        (self.l / 2, self.w / 2)
    }

    /// Number of vertical half-edge slots between completed rows.
    pub fn slot_count(&self) -> usize {
        self.l as usize - 1
    }
}
