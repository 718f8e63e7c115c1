//! Elementary transfer operations.
//!
//! The rectangle is built row by row, each row completed from left to right,
//! by elementary operations acting on one or two slots:
//!
//! * `Start`   seeds the ensemble with the bottom-boundary half-edges;
//! * `Left`    inserts the horizontal half-edge touching the left boundary;
//! * `Bulk`    processes an interior vertex (degree two or four);
//! * `Centre`  processes the centre vertex (degree one: the walk starts here);
//! * `Right`   completes a row against the right boundary;
//! * `Top`     closes one column against the top boundary.
//!
//! Between rows a state has `L-1` slots (the vertical half-edges of columns
//! `1..L-1`); during row construction it has `L` slots, the horizontal
//! half-edge travelling rightwards through the row.  `Bulk` at column `x`
//! consumes slots `(x-1, x)` = (West, South) and produces (North, East) in
//! place.  Weights gain one factor of the fugacity per newly covered edge,
//! so every covered edge is paid exactly once, at creation.
//!
//! With reduced symmetry the bottom and left boundaries are kept empty (the
//! mirror images account for the lost walks); in full-hitting mode the lower
//! half of the right boundary and the left half of the top boundary are kept
//! empty as well, and every boundary attachment registers its exit
//! coordinate.

use crate::error::{Error, Result};
use crate::genfun::WeightRing;
use crate::geometry::Rectangle;
use crate::tm::state::*;

/// Which generating functions a run produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Two series: first hits of the long (left/right) and short
    /// (bottom/top) sides.
    Split,
    /// One series per boundary exit point.
    FullHitting,
}

/// Whether the reflection-symmetry-reduced boundary conditions are used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// All four boundaries active.
    Full,
    /// Bottom and left boundaries depleted (and in full-hitting mode, the
    /// lower half of the right boundary and left half of the top boundary).
    Reduced,
}

/// An elementary operation, tagged with its lattice position where the rules
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Start,
    /// Opens row `row` (interior rows are `1..=W-1`).
    Left { row: u32 },
    /// Interior vertex at column `x` of the current row.
    Bulk { x: u32 },
    /// The centre vertex (column `L/2` of row `W/2`).
    Centre,
    /// Closes row `row` against the right boundary.
    Right { row: u32 },
    /// Closes column `col` against the top boundary.
    Top { col: u32 },
}

/// Run configuration shared by every stage application.
#[derive(Debug, Clone, Copy)]
pub struct RunPlan {
    pub rect: Rectangle,
    pub mode: Mode,
    pub symmetry: Symmetry,
    /// Enumeration aborts cleanly when the live state count exceeds this.
    pub max_states: usize,
}

/// Default live-state cap.
pub const DEFAULT_MAX_STATES: usize = 200_000_000;

impl RunPlan {
    pub fn new(rect: Rectangle, mode: Mode, symmetry: Symmetry) -> Self {
        RunPlan { rect, mode, symmetry, max_states: DEFAULT_MAX_STATES }
    }

    fn tracks_coords(&self) -> bool {
        self.mode == Mode::FullHitting
    }

    /// Exits on the right boundary are allowed at this row.
    fn right_exit_allowed(&self, row: u32) -> bool {
        match (self.mode, self.symmetry) {
            (Mode::FullHitting, Symmetry::Reduced) => row >= self.rect.w() / 2,
            _ => true,
        }
    }

    /// Exits on the top boundary are allowed at this column.
    fn top_exit_allowed(&self, col: u32) -> bool {
        match (self.mode, self.symmetry) {
            (Mode::FullHitting, Symmetry::Reduced) => col >= self.rect.l() / 2,
            _ => true,
        }
    }
}

fn has_boundary_label(slots: &[u8]) -> bool {
    slots.iter().any(|&l| is_boundary_label(l))
}

fn all_empty_except(slots: &[u8], skip: &[usize]) -> bool {
    slots
        .iter()
        .enumerate()
        .all(|(i, &l)| l == EMPTY || skip.contains(&i))
}

/// Apply one elementary operation to a whole ensemble.
///
/// Exit states pass through unchanged (they live in side tables).  Returns
/// `InvalidState` on slot-count mismatches and `IllegalStageOrder` when the
/// operation cannot occur at this point of the construction.
pub fn apply_stage<W: WeightRing>(
    stage: Stage,
    input: &Ensemble<W>,
    plan: &RunPlan,
    one: &W,
) -> Result<Ensemble<W>> {
    let l = plan.rect.l() as usize;
    let between_rows = l - 1;
    let mid_row = l;

    let expected = match stage {
        Stage::Start => {
            if !input.is_empty() {
                return Err(Error::IllegalStageOrder(
                    "Start must be applied to an empty ensemble".into(),
                ));
            }
            between_rows
        }
        Stage::Left { .. } | Stage::Top { .. } => between_rows,
        Stage::Bulk { .. } | Stage::Centre | Stage::Right { .. } => mid_row,
    };

    if let Stage::Bulk { x } | Stage::Top { col: x } = stage {
        let max = plan.rect.l() - 1;
        if x < 1 || x > max {
            return Err(Error::IllegalStageOrder(format!(
                "column {x} outside 1..={max}"
            )));
        }
    }
    if let Stage::Left { row } | Stage::Right { row } = stage {
        let max = plan.rect.w() - 1;
        if row < 1 || row > max {
            return Err(Error::IllegalStageOrder(format!(
                "row {row} outside 1..={max}"
            )));
        }
    }

    let mut out = input.successor();

    if let Stage::Start = stage {
        seed_start(&mut out, plan, one);
        return Ok(out);
    }

    for (key, weight) in &input.states {
        if key.slots.len() != expected {
            return Err(Error::InvalidState(format!(
                "stage {stage:?} expects {expected} slots, state has {}",
                key.slots.len()
            )));
        }
        match stage {
            Stage::Start => unreachable!(),
            Stage::Left { row } => left(key, weight, row, plan, &mut out),
            Stage::Bulk { x } => bulk(key, weight, x as usize, &mut out)?,
            Stage::Centre => centre(key, weight, plan, &mut out)?,
            Stage::Right { row } => right(key, weight, row, plan, &mut out),
            Stage::Top { col } => top(key, weight, col, plan, &mut out),
        }
    }

    if out.len() > plan.max_states {
        return Err(Error::ResourceCap { states: out.len(), cap: plan.max_states });
    }
    Ok(out)
}

/// Superposition of the completely empty state (weight 1) and, with full
/// symmetry, each state with one half-edge attached to the bottom boundary
/// (weight x).
fn seed_start<W: WeightRing>(out: &mut Ensemble<W>, plan: &RunPlan, one: &W) {
    let n = plan.rect.slot_count();
    out.add_state(StateKey::empty(n), one.clone());
    if plan.symmetry == Symmetry::Full {
        let half_l = (plan.rect.l() / 2) as i16;
        for i in 0..n {
            let mut slots = vec![EMPTY; n];
            slots[i] = BOTTOM;
            let coord = if plan.tracks_coords() {
                (i as i16 + 1) - half_l
            } else {
                COORD_UNSET
            };
            let mut w = one.clone();
            w.shift(1);
            out.add_state(StateKey::new(slots, coord), w);
        }
    }
}

/// Shift every slot one position to the right and insert the horizontal
/// half-edge at position 0, either empty or (full symmetry, no existing
/// boundary label) attached to the left boundary with weight x.
fn left<W: WeightRing>(
    key: &StateKey,
    weight: &W,
    row: u32,
    plan: &RunPlan,
    out: &mut Ensemble<W>,
) {
    let mut slots = Vec::with_capacity(key.slots.len() + 1);
    slots.push(EMPTY);
    for &lab in &key.slots {
        slots.push(if is_link(lab) { link_to(partner(lab) + 1) } else { lab });
    }
    if plan.symmetry == Symmetry::Full && !has_boundary_label(&slots) {
        let mut side = slots.clone();
        side[0] = SIDE;
        let coord = if plan.tracks_coords() {
            row as i16 - (plan.rect.w() / 2) as i16
        } else {
            key.coord
        };
        let mut w = weight.clone();
        w.shift(1);
        out.add_state(StateKey::new(side, coord), w);
    }
    out.add_state(StateKey::new(slots, key.coord), weight.clone());
}

/// Interior vertex at column `x`: consumes (West, South) = slots `(x-1, x)`,
/// produces (North, East) in place.  The vertex must be adjacent to zero,
/// two or four covered edges.
fn bulk<W: WeightRing>(
    key: &StateKey,
    weight: &W,
    x: usize,
    out: &mut Ensemble<W>,
) -> Result<()> {
    let p = x - 1;
    let s = &key.slots;
    let (west, south) = (s[p], s[p + 1]);

    match (west == EMPTY, south == EMPTY) {
        (true, true) => {
            // untouched vertex
            out.add_state(key.clone(), weight.clone());
            // or the walk turns through it: North and East both covered
            let mut ns = s.clone();
            ns[p] = link_to(p + 1);
            ns[p + 1] = link_to(p);
            let mut w = weight.clone();
            w.shift(2);
            out.add_state(StateKey::new(ns, key.coord), w);
        }
        (false, true) | (true, false) => {
            // one covered incoming edge continues North or East
            let from = if west != EMPTY { p } else { p + 1 };
            let lab = s[from];
            for to in [p, p + 1] {
                let mut ns = s.clone();
                ns[p] = EMPTY;
                ns[p + 1] = EMPTY;
                ns[to] = lab;
                if is_link(lab) {
                    ns[partner(lab)] = link_to(to);
                }
                let mut w = weight.clone();
                w.shift(1);
                out.add_state(StateKey::new(ns, key.coord), w);
            }
        }
        (false, false) => {
            let w_link = is_link(west);
            let s_link = is_link(south);
            if w_link && s_link {
                if partner(west) == p + 1 {
                    // the two incoming half-edges are each other's partners:
                    // closing them would form a loop
                    debug_assert_eq!(partner(south), p);
                    return Ok(());
                }
                let a = partner(west);
                let b = partner(south);
                let mut ns = s.clone();
                ns[a] = link_to(b);
                ns[b] = link_to(a);
                ns[p] = EMPTY;
                ns[p + 1] = EMPTY;
                out.add_state(StateKey::new(ns, key.coord), weight.clone());
            } else if w_link || s_link {
                // special label travels to the far end of the link
                let (link_lab, special) = if w_link { (west, south) } else { (south, west) };
                let mut ns = s.clone();
                ns[partner(link_lab)] = special;
                ns[p] = EMPTY;
                ns[p + 1] = EMPTY;
                out.add_state(StateKey::new(ns, key.coord), weight.clone());
            } else {
                // two special labels meeting: the only valid completion is
                // centre against a boundary label with everything else empty
                let pair = [west, south];
                let centre_here = pair.contains(&CENTRE);
                let boundary = pair.iter().copied().find(|&l| is_boundary_label(l));
                if let (true, Some(b)) = (centre_here, boundary) {
                    if all_empty_except(s, &[p, p + 1]) {
                        let kind = if b == SIDE { ExitKind::LeftRight } else { ExitKind::BottomTop };
                        out.add_exit(kind, exit_coord(key), weight.clone());
                    }
                }
                // otherwise the state dies
            }
        }
    }
    Ok(())
}

/// The centre vertex has exactly one covered adjacent edge: the walk
/// emanates from it.
fn centre<W: WeightRing>(
    key: &StateKey,
    weight: &W,
    plan: &RunPlan,
    out: &mut Ensemble<W>,
) -> Result<()> {
    let p = (plan.rect.l() / 2) as usize - 1;
    let s = &key.slots;
    if s.contains(&CENTRE) {
        return Err(Error::IllegalStageOrder(
            "Centre applied to a state that already carries the centre label".into(),
        ));
    }
    let (west, south) = (s[p], s[p + 1]);

    match (west == EMPTY, south == EMPTY) {
        (true, true) => {
            // the walk leaves the centre through North or East
            for to in [p, p + 1] {
                let mut ns = s.clone();
                ns[to] = CENTRE;
                let mut w = weight.clone();
                w.shift(1);
                out.add_state(StateKey::new(ns, key.coord), w);
            }
        }
        (false, true) | (true, false) => {
            let from = if west != EMPTY { p } else { p + 1 };
            let lab = s[from];
            if is_link(lab) {
                let mut ns = s.clone();
                ns[partner(lab)] = CENTRE;
                ns[p] = EMPTY;
                ns[p + 1] = EMPTY;
                out.add_state(StateKey::new(ns, key.coord), weight.clone());
            } else if is_boundary_label(lab) {
                if all_empty_except(s, &[from]) {
                    let kind = if lab == SIDE { ExitKind::LeftRight } else { ExitKind::BottomTop };
                    out.add_exit(kind, exit_coord(key), weight.clone());
                }
            } else {
                return Err(Error::InvalidState(
                    "centre label present before the centre vertex".into(),
                ));
            }
        }
        (false, false) => {
            // degree >= 2 at the centre: discard
        }
    }
    Ok(())
}

/// Close the current row against the right boundary: the rightmost slot is
/// consumed and removed.
fn right<W: WeightRing>(
    key: &StateKey,
    weight: &W,
    row: u32,
    plan: &RunPlan,
    out: &mut Ensemble<W>,
) {
    let s = &key.slots;
    let last = s.len() - 1;
    let lab = s[last];

    if lab == EMPTY {
        let slots = s[..last].to_vec();
        out.add_state(StateKey::new(slots, key.coord), weight.clone());
        return;
    }
    if !plan.right_exit_allowed(row) {
        return; // depleted boundary half-edge
    }
    if has_boundary_label(s) {
        return; // the walk may only touch the boundary at its end point
    }
    let coord = if plan.tracks_coords() {
        row as i16 - (plan.rect.w() / 2) as i16
    } else {
        COORD_UNSET
    };
    if lab == CENTRE {
        if all_empty_except(s, &[last]) {
            out.add_exit(ExitKind::LeftRight, coord_or(coord), weight.clone());
        }
        return;
    }
    debug_assert!(is_link(lab));
    let mut slots = s[..last].to_vec();
    slots[partner(lab)] = SIDE;
    debug_assert_eq!(key.coord, COORD_UNSET);
    out.add_state(StateKey::new(slots, coord), weight.clone());
}

/// Close one column against the top boundary.
fn top<W: WeightRing>(
    key: &StateKey,
    weight: &W,
    col: u32,
    plan: &RunPlan,
    out: &mut Ensemble<W>,
) {
    let i = col as usize - 1;
    let s = &key.slots;
    let lab = s[i];

    if lab == EMPTY {
        out.add_state(key.clone(), weight.clone());
        return;
    }
    if is_boundary_label(lab) {
        return; // a second boundary contact
    }
    if !plan.top_exit_allowed(col) {
        return;
    }
    let coord = if plan.tracks_coords() {
        col as i16 - (plan.rect.l() / 2) as i16
    } else {
        COORD_UNSET
    };
    if lab == CENTRE {
        if all_empty_except(s, &[i]) {
            out.add_exit(ExitKind::BottomTop, coord_or(coord), weight.clone());
        }
        return;
    }
    debug_assert!(is_link(lab));
    if has_boundary_label(s) {
        // the partner would become a second boundary attachment; the state
        // is doomed either way
        return;
    }
    let mut ns = s.clone();
    ns[i] = EMPTY;
    ns[partner(lab)] = BOTTOM;
    out.add_state(StateKey::new(ns, coord), weight.clone());
}

/// Exit coordinate carried by a state that already touched the boundary.
fn exit_coord(key: &StateKey) -> i16 {
    coord_or(key.coord)
}

fn coord_or(coord: i16) -> i16 {
    if coord == COORD_UNSET {
        0
    } else {
        coord
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::IntWeight;
    use num_bigint::BigUint;

    fn plan(l: u32, w: u32, mode: Mode, symmetry: Symmetry) -> RunPlan {
        RunPlan::new(Rectangle::new(l, w).unwrap(), mode, symmetry)
    }

    fn start(plan: &RunPlan) -> Ensemble<IntWeight> {
        apply_stage(Stage::Start, &Ensemble::new(), plan, &IntWeight::one()).unwrap()
    }

    #[test]
    fn start_full_symmetry_superposition() {
        // 4-wide rectangle: empty state with weight 1 plus three one-BOTTOM
        // states with weight x
        let p = plan(4, 6, Mode::Split, Symmetry::Full);
        let e = start(&p);
        assert_eq!(e.len(), 4);
        let empty = &e.states[&StateKey::empty(3)];
        assert_eq!(empty.to_genfun().coeff(0), BigUint::from(1u32));
        for i in 0..3 {
            let mut slots = vec![EMPTY; 3];
            slots[i] = BOTTOM;
            let w = &e.states[&StateKey::new(slots, COORD_UNSET)];
            assert_eq!(w.to_genfun().coeff(1), BigUint::from(1u32));
        }
    }

    #[test]
    fn start_reduced_is_empty_state_only() {
        let p = plan(4, 6, Mode::Split, Symmetry::Reduced);
        let e = start(&p);
        assert_eq!(e.len(), 1);
        assert!(e.states.contains_key(&StateKey::empty(3)));
    }

    #[test]
    fn bulk_discards_loops() {
        let p = plan(4, 6, Mode::Split, Symmetry::Reduced);
        let mut e: Ensemble<IntWeight> = Ensemble::new();
        // West and South are each other's partners: a closed loop
        let mut slots = vec![EMPTY; 4];
        slots[0] = link_to(1);
        slots[1] = link_to(0);
        e.add_state(StateKey::new(slots, COORD_UNSET), IntWeight::one());
        let out = apply_stage(Stage::Bulk { x: 1 }, &e, &p, &IntWeight::one()).unwrap();
        assert!(out.is_empty());
        assert!(out.exit_lr.is_empty() && out.exit_bt.is_empty());
    }

    #[test]
    fn exit_states_pass_through() {
        let p = plan(4, 6, Mode::Split, Symmetry::Reduced);
        let mut e: Ensemble<IntWeight> = Ensemble::new();
        let mut w = IntWeight::one();
        w.shift(3); // g(x) = x^3
        e.add_exit(ExitKind::LeftRight, 0, w.clone());
        e.add_state(StateKey::empty(3), IntWeight::one());
        let out = apply_stage(Stage::Left { row: 1 }, &e, &p, &IntWeight::one()).unwrap();
        assert_eq!(out.exit_lr[&0], w);
    }

    #[test]
    fn stage_order_is_validated() {
        let p = plan(4, 6, Mode::Split, Symmetry::Reduced);
        let e = start(&p);
        // Bulk expects mid-row states with L slots
        assert!(matches!(
            apply_stage(Stage::Bulk { x: 1 }, &e, &p, &IntWeight::one()),
            Err(Error::InvalidState(_))
        ));
        // Start on a non-empty ensemble
        assert!(matches!(
            apply_stage(Stage::Start, &e, &p, &IntWeight::one()),
            Err(Error::IllegalStageOrder(_))
        ));
        // out-of-range column
        assert!(matches!(
            apply_stage(Stage::Top { col: 9 }, &e, &p, &IntWeight::one()),
            Err(Error::IllegalStageOrder(_))
        ));
    }
}
