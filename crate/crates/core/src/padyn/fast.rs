use rayon::prelude::*;

use super::graph::{graph_stats, peel, GraphStats};
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;

/// Largest field this engine will tabulate.
const MAX_POINTS: u64 = 1 << 24;

/// Precomputed index arithmetic for sweeping `X^d + c` over all `c` in a field.
///
/// Field elements are handled by enumeration index. Addition splits the base-`p`
/// digits into a low and a high half, each added through a lookup table.
pub struct UnicriticalSweep {
    ctx: FieldCtx,
    d: usize,
    q: u32,
    lo: u32,
    hi: u32,
    add_lo: Vec<u32>,
    add_hi: Vec<u32>,
    pow: Vec<u32>,
}

impl UnicriticalSweep {
    pub fn new(ctx: &FieldCtx, d: usize) -> Result<UnicriticalSweep> {
        let q = ctx.size().filter(|&q| q <= MAX_POINTS).ok_or_else(|| {
            Error::TooLarge(format!("a sweep table over a field of order {}", ctx.q()))
        })?;
        let p = ctx.p();
        let r = ctx.degree() as u32;
        let lo = p.pow(r.div_ceil(2));
        let hi = q / lo;
        let digit_table = |size: u64| -> Vec<u32> {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    // digit-wise addition mod p
                    let (mut x, mut y, mut s, mut place) = (a, b, 0u64, 1u64);
                    while x > 0 || y > 0 {
                        s += ((x % p + y % p) % p) * place;
                        x /= p;
                        y /= p;
                        place *= p;
                    }
                    t[(a * size + b) as usize] = s as u32;
                }
            }
            t
        };
        let pow = (0..q).map(|i| ctx.index_of(&ctx.pow(&ctx.elem_at(i), d as u64)) as u32).collect();
        Ok(UnicriticalSweep {
            ctx: ctx.clone(),
            d,
            q: q as u32,
            lo: lo as u32,
            hi: hi as u32,
            add_lo: digit_table(lo),
            add_hi: digit_table(hi),
            pow,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn n_points(&self) -> u64 {
        self.q as u64 + 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (al, ah) = (a % self.lo, a / self.lo);
        let (bl, bh) = (b % self.lo, b / self.lo);
        self.add_lo[(al * self.lo + bl) as usize]
            + self.lo * self.add_hi[(ah * self.hi + bh) as usize]
    }

    /// Successor table of `X^d + c`, with `c` given by index.
    pub fn table_into(&self, c: u32, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.pow.iter().map(|&x| self.add(x, c)));
        out.push(self.q);
    }

    pub fn table(&self, c: u32) -> Vec<u32> {
        let mut t = Vec::with_capacity(self.q as usize + 1);
        self.table_into(c, &mut t);
        t
    }

    pub fn stats(&self, c: u32) -> GraphStats {
        graph_stats(&self.table(c))
    }

    /// Periodic-point counts of `X^d + c` for each `c`, in input order.
    pub fn periodic_counts(&self, cs: &[u32]) -> Vec<u64> {
        cs.par_iter()
            .map_init(
                || (Vec::new(), Vec::new(), Vec::new()),
                |(table, indeg, queue), &c| {
                    self.table_into(c, table);
                    peel(table, indeg, queue);
                    self.n_points() - queue.len() as u64
                },
            )
            .collect()
    }
}
