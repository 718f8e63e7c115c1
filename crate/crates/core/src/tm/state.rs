//! Link states and weighted state ensembles.
//!
//! A state records how the uppermost half-edges of the partially built
//! rectangle connect among themselves, to the boundary, or to the centre,
//! through pieces of the walk.  Slots are a byte array; a link is encoded by
//! the absolute index of its partner slot, which doubles as the canonical
//! form: equal connectivities produce identical byte arrays.
//!
//! When the full hitting distribution is recorded, each state additionally
//! carries the exit coordinate, set exactly once at the step where the walk
//! touches the boundary.  Completed walks leave the hash table entirely and
//! accumulate in per-exit side tables keyed by coordinate.

use std::collections::{BTreeMap, HashMap};
use std::hash::{BuildHasherDefault, Hasher};

use crate::genfun::WeightRing;

pub const EMPTY: u8 = 0;
pub const SIDE: u8 = 1;
pub const BOTTOM: u8 = 2;
pub const CENTRE: u8 = 3;
pub const LINK_BASE: u8 = 4;

/// Exit coordinate sentinel for "not set" (also used when the run does not
/// record coordinates at all).
pub const COORD_UNSET: i16 = i16::MIN;

#[inline]
pub fn is_link(label: u8) -> bool {
    label >= LINK_BASE
}

#[inline]
pub fn partner(label: u8) -> usize {
    debug_assert!(is_link(label));
    (label - LINK_BASE) as usize
}

#[inline]
pub fn link_to(index: usize) -> u8 {
    debug_assert!(index < (u8::MAX - LINK_BASE) as usize);
    LINK_BASE + index as u8
}

#[inline]
pub fn is_boundary_label(label: u8) -> bool {
    label == SIDE || label == BOTTOM
}

/// Canonical state key: slot labels plus the optional exit coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateKey {
    pub slots: Vec<u8>,
    pub coord: i16,
}

impl StateKey {
    pub fn new(slots: Vec<u8>, coord: i16) -> Self {
        StateKey { slots, coord }
    }

    pub fn empty(n: usize) -> Self {
        StateKey { slots: vec![EMPTY; n], coord: COORD_UNSET }
    }

    /// Structural sanity: link symmetry, at most one boundary label, at most
    /// one centre label.  Used by debug assertions and tests.
    pub fn is_well_formed(&self) -> bool {
        let s = &self.slots;
        let mut boundary = 0;
        let mut centre = 0;
        for (i, &lab) in s.iter().enumerate() {
            match lab {
                EMPTY => {}
                SIDE | BOTTOM => boundary += 1,
                CENTRE => centre += 1,
                _ => {
                    let j = partner(lab);
                    if j >= s.len() || j == i || !is_link(s[j]) || partner(s[j]) != i {
                        return false;
                    }
                }
            }
        }
        boundary <= 1 && centre <= 1
    }
}

/// FNV-1a with a fixed seed, so that run behaviour does not depend on
/// process-level hash randomisation.  Results never depend on iteration
/// order regardless (weights are accumulated with exact arithmetic).
#[derive(Default)]
pub struct FnvHasher(u64);

impl Hasher for FnvHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        let mut h = if self.0 == 0 { 0xcbf2_9ce4_8422_2325 } else { self.0 };
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
        self.0 = h;
    }
}

pub type FnvBuildHasher = BuildHasherDefault<FnvHasher>;
pub type StateMap<W> = HashMap<StateKey, W, FnvBuildHasher>;

/// Which boundary class a completed walk hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    /// Left or right boundary (the long, vertical sides).
    LeftRight,
    /// Bottom or top boundary (the short, horizontal sides).
    BottomTop,
}

/// Weighted collection of live states plus the exit accumulators.
#[derive(Debug, Clone)]
pub struct Ensemble<W: WeightRing> {
    pub states: StateMap<W>,
    /// Completed walks to the left/right boundary, keyed by exit coordinate
    /// (key 0 when coordinates are not recorded).
    pub exit_lr: BTreeMap<i16, W>,
    /// Completed walks to the bottom/top boundary.
    pub exit_bt: BTreeMap<i16, W>,
}

impl<W: WeightRing> Ensemble<W> {
    pub fn new() -> Self {
        Ensemble {
            states: StateMap::default(),
            exit_lr: BTreeMap::new(),
            exit_bt: BTreeMap::new(),
        }
    }

    pub fn add_state(&mut self, key: StateKey, weight: W) {
        debug_assert!(key.is_well_formed(), "malformed state {key:?}");
        match self.states.get_mut(&key) {
            Some(w) => w.add_assign(&weight),
            None => {
                self.states.insert(key, weight);
            }
        }
    }

    pub fn add_exit(&mut self, kind: ExitKind, coord: i16, weight: W) {
        let table = match kind {
            ExitKind::LeftRight => &mut self.exit_lr,
            ExitKind::BottomTop => &mut self.exit_bt,
        };
        match table.get_mut(&coord) {
            Some(w) => w.add_assign(&weight),
            None => {
                table.insert(coord, weight);
            }
        }
    }

    /// Carry the exit tables over to a successor ensemble (exit states pass
    /// through every elementary operation unchanged).
    pub fn successor(&self) -> Self {
        Ensemble {
            states: StateMap::default(),
            exit_lr: self.exit_lr.clone(),
            exit_bt: self.exit_bt.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

impl<W: WeightRing> Default for Ensemble<W> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::IntWeight;

    #[test]
    fn well_formedness() {
        assert!(StateKey::new(vec![EMPTY, EMPTY], COORD_UNSET).is_well_formed());
        assert!(StateKey::new(vec![link_to(1), link_to(0), SIDE], COORD_UNSET).is_well_formed());
        // broken symmetry
        assert!(!StateKey::new(vec![link_to(1), EMPTY], COORD_UNSET).is_well_formed());
        // two boundary labels
        assert!(!StateKey::new(vec![SIDE, BOTTOM], COORD_UNSET).is_well_formed());
        // self link
        assert!(!StateKey::new(vec![link_to(0)], COORD_UNSET).is_well_formed());
    }

    #[test]
    fn ensemble_accumulates() {
        let mut e: Ensemble<IntWeight> = Ensemble::new();
        let key = StateKey::empty(3);
        e.add_state(key.clone(), IntWeight::one());
        e.add_state(key.clone(), IntWeight::one());
        assert_eq!(e.len(), 1);
        let g = e.states[&key].to_genfun();
        assert_eq!(g.coeff(0), 2u32.into());
    }
}
