//! Print the q = 2 slope tables for k <= 8.

use std::time::Instant;

use cocycle_core::pipeline::Engine;
use cocycle_core::slopes::{format_tables, Format};
use cocycle_core::Level;

fn main() {
    let max_k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let engine = Engine::new(2).expect("q = 2");
    let mut tables = Vec::new();
    for i in [1u8, 2] {
        for level in [Level::Gl3, Level::P0, Level::P2, Level::Gamma0] {
            for k in 0..=max_k {
                let start = Instant::now();
                let c = engine.compute(i, level, k).expect("pipeline");
                eprintln!("i={i} {level} k={k} dim={} {:?}", c.table.dim, start.elapsed());
                tables.push(c.table);
            }
        }
    }
    print!("{}", format_tables(&tables, Format::Md));
}
