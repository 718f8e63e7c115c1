//! Row-by-row construction drivers.
//!
//! `run` applies the elementary operations in their legal order: `Start`,
//! then for each interior row `Left`, a sweep of `Bulk` (with `Centre`
//! replacing `Bulk` at the centre vertex), `Right`, and finally a `Top`
//! sweep over all columns.  Only the exit accumulators carry weight once the
//! lattice is complete.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::genfun::{GenFun, IntWeight, ModWeight, WeightRing};
use crate::geometry::Rectangle;
use crate::tm::stages::{apply_stage, Mode, RunPlan, Stage, Symmetry};
use crate::tm::state::Ensemble;

/// Peak live-state counts, before and after the centre vertex is added.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StateStats {
    pub max_states_pre_centre: usize,
    pub max_states_post_centre: usize,
}

/// Raw engine output: exit weights keyed by coordinate (key 0 throughout in
/// split mode) plus the peak state counts.
#[derive(Debug, Clone)]
pub struct RunOutput<W: WeightRing> {
    pub exit_lr: BTreeMap<i16, W>,
    pub exit_bt: BTreeMap<i16, W>,
    pub stats: StateStats,
}

/// Drive a full construction for the given plan.
pub fn run<W: WeightRing>(plan: &RunPlan, one: &W) -> Result<RunOutput<W>> {
    let l = plan.rect.l();
    let w = plan.rect.w();
    let (cx, cy) = plan.rect.centre();

    let mut stats = StateStats::default();
    let mut past_centre = false;
    let mut track = |ens: &Ensemble<W>, past: bool| {
        if past {
            stats.max_states_post_centre = stats.max_states_post_centre.max(ens.len());
        } else {
            stats.max_states_pre_centre = stats.max_states_pre_centre.max(ens.len());
        }
    };

    let mut ens = apply_stage(Stage::Start, &Ensemble::new(), plan, one)?;
    track(&ens, past_centre);

    for row in 1..w {
        ens = apply_stage(Stage::Left { row }, &ens, plan, one)?;
        track(&ens, past_centre);
        for x in 1..l {
            let stage = if x == cx && row == cy { Stage::Centre } else { Stage::Bulk { x } };
            ens = apply_stage(stage, &ens, plan, one)?;
            if stage == Stage::Centre {
                past_centre = true;
            }
            track(&ens, past_centre);
        }
        ens = apply_stage(Stage::Right { row }, &ens, plan, one)?;
        track(&ens, past_centre);
    }
    for col in 1..l {
        ens = apply_stage(Stage::Top { col }, &ens, plan, one)?;
        track(&ens, past_centre);
    }

    Ok(RunOutput { exit_lr: ens.exit_lr, exit_bt: ens.exit_bt, stats })
}

/// The two boundary-class generating functions, counted over the full
/// rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSeries {
    /// Walks whose first boundary contact is the left or right (long) side.
    pub lr: GenFun,
    /// Walks whose first boundary contact is the bottom or top (short) side.
    pub bt: GenFun,
}

/// Per-exit-point generating functions on the quarter-reduced lattice.
///
/// `top[cx]` counts walks exiting the top boundary at horizontal offset
/// `cx >= 0` from the centre column; `right[cy]` likewise for the right
/// boundary at vertical offset `cy >= 0`.  Exits at `-c` equal those at `c`
/// by reflection, and corners are unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingTable {
    pub rect: Rectangle,
    pub top: Vec<GenFun>,
    pub right: Vec<GenFun>,
}

impl HittingTable {
    /// Reassemble the full-rectangle boundary-class series from the
    /// per-exit table: both long sides, with mirror doubling for `cy > 0`.
    pub fn split_series(&self) -> SplitSeries {
        let mut lr = GenFun::zero();
        for (cy, g) in self.right.iter().enumerate() {
            let mult = if cy == 0 { 2 } else { 4 };
            lr.add_assign(&g.scaled(mult));
        }
        let mut bt = GenFun::zero();
        for (cx, g) in self.top.iter().enumerate() {
            let mult = if cx == 0 { 2 } else { 4 };
            bt.add_assign(&g.scaled(mult));
        }
        SplitSeries { lr, bt }
    }
}

fn exits_to_genfun(table: &BTreeMap<i16, IntWeight>, coord: i16) -> GenFun {
    table.get(&coord).map(|w| w.to_genfun()).unwrap_or_else(GenFun::zero)
}

/// Exact generating functions for first hits of the long and short sides,
/// over the full rectangle (reduced-symmetry run doubled).
pub fn enumerate_boundary_split(rect: Rectangle, max_states: usize) -> Result<SplitSeries> {
    let mut plan = RunPlan::new(rect, Mode::Split, Symmetry::Reduced);
    plan.max_states = max_states;
    let out = run(&plan, &IntWeight::one())?;
    Ok(SplitSeries {
        lr: exits_to_genfun(&out.exit_lr, 0).scaled(2),
        bt: exits_to_genfun(&out.exit_bt, 0).scaled(2),
    })
}

/// Same series from the unreduced algorithm (all four boundaries active);
/// used to cross-check the symmetry reduction.
pub fn enumerate_boundary_split_full_symmetry(
    rect: Rectangle,
    max_states: usize,
) -> Result<SplitSeries> {
    let mut plan = RunPlan::new(rect, Mode::Split, Symmetry::Full);
    plan.max_states = max_states;
    let out = run(&plan, &IntWeight::one())?;
    Ok(SplitSeries {
        lr: exits_to_genfun(&out.exit_lr, 0),
        bt: exits_to_genfun(&out.exit_bt, 0),
    })
}

/// Exact per-exit-point generating functions on the quarter-reduced lattice.
pub fn enumerate_full_hitting(rect: Rectangle, max_states: usize) -> Result<HittingTable> {
    let mut plan = RunPlan::new(rect, Mode::FullHitting, Symmetry::Reduced);
    plan.max_states = max_states;
    let out = run(&plan, &IntWeight::one())?;
    hitting_table_from(rect, &out)
}

fn hitting_table_from(rect: Rectangle, out: &RunOutput<IntWeight>) -> Result<HittingTable> {
    let half_l = (rect.l() / 2) as i16;
    let half_w = (rect.w() / 2) as i16;
    for &c in out.exit_bt.keys() {
        if c < 0 || c >= half_l {
            return Err(Error::InvalidState(format!("top exit coordinate {c} out of range")));
        }
    }
    for &c in out.exit_lr.keys() {
        if c < 0 || c >= half_w {
            return Err(Error::InvalidState(format!("right exit coordinate {c} out of range")));
        }
    }
    let top = (0..half_l).map(|c| exits_to_genfun(&out.exit_bt, c)).collect();
    let right = (0..half_w).map(|c| exits_to_genfun(&out.exit_lr, c)).collect();
    Ok(HittingTable { rect, top, right })
}

/// Signed-coordinate hitting weights on the unreduced lattice, for
/// cross-checks of the reflection identities.  Left and right exits share a
/// key, as do bottom and top.
pub fn enumerate_full_hitting_unreduced(
    rect: Rectangle,
    max_states: usize,
) -> Result<(BTreeMap<i16, GenFun>, BTreeMap<i16, GenFun>)> {
    let mut plan = RunPlan::new(rect, Mode::FullHitting, Symmetry::Full);
    plan.max_states = max_states;
    let out = run(&plan, &IntWeight::one())?;
    let lr = out.exit_lr.iter().map(|(&c, w)| (c, w.to_genfun())).collect();
    let bt = out.exit_bt.iter().map(|(&c, w)| (c, w.to_genfun())).collect();
    Ok((lr, bt))
}

/// Peak ensemble sizes for capacity planning.
pub fn state_count_stats(
    rect: Rectangle,
    mode: Mode,
    symmetry: Symmetry,
    max_states: usize,
) -> Result<StateStats> {
    let mut plan = RunPlan::new(rect, mode, symmetry);
    plan.max_states = max_states;
    let out = run(&plan, &IntWeight::one())?;
    Ok(out.stats)
}

/// One modular pass: identical evolution with coefficients reduced mod `p`.
/// Residue tables are dense from exponent 0 and keyed like the exact output.
#[derive(Debug, Clone)]
pub struct ModularOutput {
    pub prime: u64,
    pub exit_lr: BTreeMap<i16, Vec<u64>>,
    pub exit_bt: BTreeMap<i16, Vec<u64>>,
    pub stats: StateStats,
}

pub fn modular_pass(
    rect: Rectangle,
    mode: Mode,
    symmetry: Symmetry,
    p: u64,
    max_states: usize,
) -> Result<ModularOutput> {
    if p >= (1 << 31) || p < 2 {
        return Err(Error::UnsafePrime(p));
    }
    let mut plan = RunPlan::new(rect, mode, symmetry);
    plan.max_states = max_states;
    let out = run(&plan, &ModWeight::one(p))?;
    Ok(ModularOutput {
        prime: p,
        exit_lr: out.exit_lr.iter().map(|(&c, w)| (c, w.to_residues())).collect(),
        exit_bt: out.exit_bt.iter().map(|(&c, w)| (c, w.to_residues())).collect(),
        stats: out.stats,
    })
}

/// Convenience: exact split series via several modular passes and CRT
/// reconstruction, with passes run in parallel.
pub fn enumerate_boundary_split_modular(
    rect: Rectangle,
    primes: &[u64],
    max_states: usize,
) -> Result<SplitSeries> {
    use rayon::prelude::*;
    let passes: Result<Vec<ModularOutput>> = primes
        .par_iter()
        .map(|&p| modular_pass(rect, Mode::Split, Symmetry::Reduced, p, max_states))
        .collect();
    let passes = passes?;
    let lr = crate::crt::reconstruct_series(
        &passes.iter().map(|o| (o.prime, residues_at(&o.exit_lr, 0))).collect::<Vec<_>>(),
    )?;
    let bt = crate::crt::reconstruct_series(
        &passes.iter().map(|o| (o.prime, residues_at(&o.exit_bt, 0))).collect::<Vec<_>>(),
    )?;
    Ok(SplitSeries { lr: lr.scaled(2), bt: bt.scaled(2) })
}

fn residues_at(table: &BTreeMap<i16, Vec<u64>>, coord: i16) -> Vec<u64> {
    table.get(&coord).cloned().unwrap_or_default()
}

/// Degree bound shared by every series of a rectangle: a walk of length `k`
/// visits `k` interior vertices.
pub fn degree_bound(rect: Rectangle) -> usize {
    rect.interior_vertices()
}
