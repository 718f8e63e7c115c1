use saw_rect::tm::*;
use saw_rect::{critical_point, Rectangle};
use std::time::Instant;

fn main() {
    let xc = critical_point(80).unwrap().value;
    for n in [2u32, 4, 6, 8, 10] {
        let t = Instant::now();
        let rect = Rectangle::new(n, 2 * n).unwrap();
        let s = enumerate_boundary_split(rect, DEFAULT_MAX_STATES).unwrap();
        let r = s.lr.eval_ratio(&s.bt, &xc).unwrap();
        println!("n={n:2}  {:.3?}  R = {}", t.elapsed(), r);
    }
    let t = Instant::now();
    let stats = state_count_stats(
        Rectangle::new(8, 16).unwrap(),
        Mode::Split,
        Symmetry::Reduced,
        DEFAULT_MAX_STATES,
    )
    .unwrap();
    println!("8x16 split reduced
  {stats:?}  ({:.3?})", t.elapsed());
    let t = Instant::now();
    let stats = state_count_stats(
        Rectangle::new(8, 16).unwrap(),
        Mode::FullHitting,
        Symmetry::Reduced,
        DEFAULT_MAX_STATES,
    )
    .unwrap();
    println!("8x16 full-hitting
  {stats:?}  ({:.3?})", t.elapsed());
    // aspect 10 spot check
    let t = Instant::now();
    let rect = Rectangle::new(4, 40).unwrap();
    let s = enumerate_boundary_split(rect, DEFAULT_MAX_STATES).unwrap();
    let r = s.lr.eval_ratio(&s.bt, &xc).unwrap();
    println!("4x40  {:.3?}  R = {}", t.elapsed(), r);
}
