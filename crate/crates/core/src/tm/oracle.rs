//! Brute-force verification oracle.
//!
//! Depth-first search over every self-avoiding walk from the centre: step
//! only to unvisited vertices, walk through interior vertices and terminate
//! the step the walk lands on a boundary vertex.  Walks are classified by
//! boundary side and exit coordinate.  Completely independent of the
//! transfer matrix, and only feasible on small lattices, which is the point.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::genfun::GenFun;
use crate::geometry::Rectangle;
use crate::tm::engine::{HittingTable, SplitSeries};

/// Default cap on interior vertices for the oracle.
pub const DEFAULT_ORACLE_CAP: usize = 35;

struct Dfs {
    l: i32,
    w: i32,
    visited: Vec<bool>,
    /// counts[(class, coord)][length]
    lr: BTreeMap<i16, Vec<u64>>,
    bt: BTreeMap<i16, Vec<u64>>,
}

impl Dfs {
    fn idx(&self, x: i32, y: i32) -> usize {
        (y * (self.l + 1) + x) as usize
    }

    fn on_boundary(&self, x: i32, y: i32) -> bool {
        x == 0 || y == 0 || x == self.l || y == self.w
    }

    fn record(&mut self, x: i32, y: i32, len: usize) {
        // corners are unreachable, so exactly one of the tests below fires
        debug_assert!(self.on_boundary(x, y));
        let (table, coord) = if x == 0 || x == self.l {
            (&mut self.lr, (y - self.w / 2) as i16)
        } else {
            (&mut self.bt, (x - self.l / 2) as i16)
        };
        let counts = table.entry(coord).or_default();
        if counts.len() <= len {
            counts.resize(len + 1, 0);
        }
        counts[len] += 1;
    }

    fn explore(&mut self, x: i32, y: i32, len: usize) {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let (nx, ny) = (x + dx, y + dy);
            if self.on_boundary(nx, ny) {
                self.record(nx, ny, len + 1);
                continue;
            }
            let i = self.idx(nx, ny);
            if self.visited[i] {
                continue;
            }
            self.visited[i] = true;
            self.explore(nx, ny, len + 1);
            self.visited[i] = false;
        }
    }
}

fn counts_to_genfun(counts: &[u64]) -> GenFun {
    GenFun::from_coeffs(counts.iter().map(|&c| BigUint::from(c)).collect())
}

fn search(rect: Rectangle, cap: usize) -> Result<Dfs> {
    let vertices = rect.interior_vertices();
    if vertices > cap {
        return Err(Error::OracleCap { vertices, cap });
    }
    let (cx, cy) = rect.centre();
    let mut dfs = Dfs {
        l: rect.l() as i32,
        w: rect.w() as i32,
        visited: vec![false; ((rect.l() + 1) * (rect.w() + 1)) as usize],
        lr: BTreeMap::new(),
        bt: BTreeMap::new(),
    };
    let start = dfs.idx(cx as i32, cy as i32);
    dfs.visited[start] = true;
    dfs.explore(cx as i32, cy as i32, 0);
    Ok(dfs)
}

/// Boundary-class series by exhaustive search.
pub fn brute_force_split(rect: Rectangle, cap: usize) -> Result<SplitSeries> {
    let dfs = search(rect, cap)?;
    let mut lr = GenFun::zero();
    for counts in dfs.lr.values() {
        lr.add_assign(&counts_to_genfun(counts));
    }
    let mut bt = GenFun::zero();
    for counts in dfs.bt.values() {
        bt.add_assign(&counts_to_genfun(counts));
    }
    Ok(SplitSeries { lr, bt })
}

/// Per-exit-point series by exhaustive search, folded onto the
/// non-negative-coordinate table (exits at `-c` and `c` are counted
/// separately and must agree; this is checked).
pub fn brute_force_full_hitting(rect: Rectangle, cap: usize) -> Result<HittingTable> {
    let dfs = search(rect, cap)?;
    let top = fold_signed(&dfs.bt, (rect.l() / 2) as i16, "top")?;
    let right = fold_signed(&dfs.lr, (rect.w() / 2) as i16, "right")?;
    Ok(HittingTable { rect, top, right })
}

/// Signed per-coordinate series (both members of each mirror pair, and both
/// boundaries of each class, summed under one signed key).
pub fn brute_force_signed(
    rect: Rectangle,
    cap: usize,
) -> Result<(BTreeMap<i16, GenFun>, BTreeMap<i16, GenFun>)> {
    let dfs = search(rect, cap)?;
    let lr = dfs.lr.iter().map(|(&c, v)| (c, counts_to_genfun(v))).collect();
    let bt = dfs.bt.iter().map(|(&c, v)| (c, counts_to_genfun(v))).collect();
    Ok((lr, bt))
}

fn fold_signed(
    table: &BTreeMap<i16, Vec<u64>>,
    half: i16,
    side: &str,
) -> Result<Vec<GenFun>> {
    let mut out = Vec::new();
    for c in 0..half {
        let pos = table.get(&c).cloned().unwrap_or_default();
        let neg = if c == 0 { pos.clone() } else { table.get(&(-c)).cloned().unwrap_or_default() };
        if pos != neg {
            return Err(Error::InvalidState(format!(
                "{side} exits at +-{c} disagree; reflection symmetry violated"
            )));
        }
        // both boundaries of the class contribute to the signed table, so a
        // single exit point accounts for half of the entry
        let halved: Vec<u64> = pos
            .iter()
            .map(|&n| {
                debug_assert!(n % 2 == 0);
                n / 2
            })
            .collect();
        out.push(counts_to_genfun(&halved));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::GenFun;

    #[test]
    fn smallest_rectangle() {
        // the centre of a 2x2 rectangle has four neighbours, all boundary
        let rect = Rectangle::new(2, 2).unwrap();
        let s = brute_force_split(rect, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(s.lr, GenFun::from_u64_coeffs(&[0, 2]));
        assert_eq!(s.bt, GenFun::from_u64_coeffs(&[0, 2]));
    }

    #[test]
    fn square_symmetry() {
        let rect = Rectangle::new(4, 4).unwrap();
        let s = brute_force_split(rect, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(s.lr, s.bt);
    }

    #[test]
    fn cap_is_enforced() {
        let rect = Rectangle::new(8, 8).unwrap();
        assert!(matches!(
            brute_force_split(rect, DEFAULT_ORACLE_CAP),
            Err(Error::OracleCap { vertices: 49, cap: 35 })
        ));
    }

    #[test]
    fn two_by_four_by_hand() {
        // from the centre: 2 one-step side exits; one step up (or down)
        // leads to a vertex whose remaining neighbours are two side exits
        // and one end exit
        let rect = Rectangle::new(2, 4).unwrap();
        let s = brute_force_split(rect, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(s.lr, GenFun::from_u64_coeffs(&[0, 2, 4]));
        assert_eq!(s.bt, GenFun::from_u64_coeffs(&[0, 0, 2]));
    }
}
