//! Breadth-first distance tables over every stack of a given size.
//!
//! The frontier is never stored: each level is found by sweeping the byte
//! array for entries equal to the current distance.

use std::io::{Read, Write};
use std::sync::atomic::{AtomicBool, AtomicU8, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{PancakeError, Result};
use crate::rank::{
    rank_burnt_slice, rank_unburnt_slice, state_count, unrank_burnt_into, unrank_unburnt_into,
};
use crate::stack::{flip_signed, AnyStack, Variant};

pub const UNSET: u8 = 255;
pub const MAX_BFS_BURNT: usize = 9;
pub const MAX_BFS_UNBURNT: usize = 11;
/// Env var capping the table allocation, in MiB.
pub const MEM_LIMIT_ENV: &str = "PANCAKE_MEM_LIMIT_MB";
const DEFAULT_MEM_LIMIT_MB: u64 = 1024;

const MAGIC: &[u8; 4] = b"PANC";
const FORMAT_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 16;

/// Exact flip distance for every stack of one size and variant, by rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceTable {
    pub n: usize,
    pub variant: Variant,
    pub dist: Vec<u8>,
    pub histogram: Vec<u64>,
}

impl DistanceTable {
    pub fn get(&self, rank: u64) -> u8 {
        self.dist[rank as usize]
    }

    /// `f(n)` or `g(n)` for the table's size.
    pub fn max_distance(&self) -> u8 {
        (self.histogram.len() as u8).saturating_sub(1)
    }

    pub fn count_at(&self, d: u8) -> u64 {
        self.histogram.get(d as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.histogram.iter().sum()
    }

    pub fn ranks_at(&self, d: u8) -> impl Iterator<Item = u64> + '_ {
        self.dist
            .iter()
            .enumerate()
            .filter(move |(_, &x)| x == d)
            .map(|(i, _)| i as u64)
    }

    pub fn distance_of(&self, stack: &AnyStack) -> Result<u8> {
        if stack.len() != self.n {
            return Err(PancakeError::invalid(format!(
                "table covers {} pancakes, stack has {}",
                self.n,
                stack.len()
            )));
        }
        let r = match (self.variant, stack) {
            (Variant::Burnt, AnyStack::Burnt(s)) => rank_burnt_slice(s.entries()),
            (Variant::Unburnt, AnyStack::Unburnt(s)) => rank_unburnt_slice(s.entries()),
            _ => return Err(PancakeError::invalid("stack variant does not match table")),
        };
        Ok(self.get(r))
    }

    /// `n,variant,distance,count` rows, header included.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("n,variant,distance,count\n");
        for (d, c) in self.histogram.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", self.n, self.variant.name(), d, c));
        }
        out
    }

    /// 16-byte header (`PANC`, version, n, variant) followed by the raw
    /// distances in rank order.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut header = [0u8; HEADER_LEN];
        header[..4].copy_from_slice(MAGIC);
        header[4..6].copy_from_slice(&FORMAT_VERSION.to_le_bytes());
        header[6..8].copy_from_slice(&(self.n as u16).to_le_bytes());
        header[8] = match self.variant {
            Variant::Burnt => 0,
            Variant::Unburnt => 1,
        };
        w.write_all(&header)?;
        w.write_all(&self.dist)
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let io = |e: std::io::Error| PancakeError::invalid(format!("reading table: {e}"));
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header).map_err(io)?;
        if &header[..4] != MAGIC {
            return Err(PancakeError::invalid("not a distance table (bad magic)"));
        }
        let version = u16::from_le_bytes([header[4], header[5]]);
        if version != FORMAT_VERSION {
            return Err(PancakeError::invalid(format!(
                "unsupported table version {version}"
            )));
        }
        let n = u16::from_le_bytes([header[6], header[7]]) as usize;
        let variant = match header[8] {
            0 => Variant::Burnt,
            1 => Variant::Unburnt,
            v => return Err(PancakeError::invalid(format!("unknown variant tag {v}"))),
        };
        let count = state_count(n, variant)? as usize;
        let mut dist = vec![0u8; count];
        r.read_exact(&mut dist).map_err(io)?;
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing).map_err(io)? != 0 {
            return Err(PancakeError::invalid("trailing bytes after table"));
        }
        let histogram = histogram_of(&dist)?;
        Ok(DistanceTable {
            n,
            variant,
            dist,
            histogram,
        })
    }
}

fn histogram_of(dist: &[u8]) -> Result<Vec<u64>> {
    let mut counts = [0u64; 256];
    for &d in dist {
        counts[d as usize] += 1;
    }
    if counts[UNSET as usize] != 0 {
        return Err(PancakeError::Internal(format!(
            "{} stacks left without a distance",
            counts[UNSET as usize]
        )));
    }
    let last = counts.iter().rposition(|&c| c != 0).unwrap_or(0);
    Ok(counts[..=last].to_vec())
}

fn memory_limit_bytes() -> u64 {
    std::env::var(MEM_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .unwrap_or(DEFAULT_MEM_LIMIT_MB)
        .saturating_mul(1 << 20)
}

fn check_budget(n: usize, variant: Variant) -> Result<usize> {
    if n == 0 {
        return Err(PancakeError::invalid("stack size must be at least 1"));
    }
    let max = match variant {
        Variant::Burnt => MAX_BFS_BURNT,
        Variant::Unburnt => MAX_BFS_UNBURNT,
    };
    if n > max {
        return Err(PancakeError::ResourceLimit(format!(
            "{} tables are limited to n <= {max}",
            variant.name()
        )));
    }
    let count = state_count(n, variant)?;
    let limit = memory_limit_bytes();
    if count > limit {
        return Err(PancakeError::ResourceLimit(format!(
            "table needs {count} bytes, limit is {limit} ({MEM_LIMIT_ENV})"
        )));
    }
    Ok(count as usize)
}

/// Expand every stack at distance `d` found in `dist[range]`.
fn sweep(
    dist: &[AtomicU8],
    range: std::ops::Range<usize>,
    d: u8,
    n: usize,
    variant: Variant,
) -> bool {
    let mut grew = false;
    let mut sbuf = [0i32; 16];
    let mut ubuf = [0u32; 16];
    let mut tmp_s = [0i32; 16];
    let mut tmp_u = [0u32; 16];
    for idx in range {
        if dist[idx].load(Ordering::Relaxed) != d {
            continue;
        }
        match variant {
            Variant::Burnt => {
                unrank_burnt_into(idx as u64, n, &mut sbuf[..n]);
                for k in 1..=n {
                    tmp_s[..n].copy_from_slice(&sbuf[..n]);
                    flip_signed(&mut tmp_s[..n], k);
                    let r = rank_burnt_slice(&tmp_s[..n]) as usize;
                    if dist[r].load(Ordering::Relaxed) == UNSET {
                        dist[r].store(d + 1, Ordering::Relaxed);
                        grew = true;
                    }
                }
            }
            Variant::Unburnt => {
                unrank_unburnt_into(idx as u64, n, &mut ubuf[..n]);
                for k in 2..=n {
                    tmp_u[..n].copy_from_slice(&ubuf[..n]);
                    tmp_u[..k].reverse();
                    let r = rank_unburnt_slice(&tmp_u[..n]) as usize;
                    if dist[r].load(Ordering::Relaxed) == UNSET {
                        dist[r].store(d + 1, Ordering::Relaxed);
                        grew = true;
                    }
                }
            }
        }
    }
    grew
}

pub fn bfs_distances(n: usize, variant: Variant) -> Result<DistanceTable> {
    bfs_distances_threaded(n, variant, 1)
}

/// Same table as [`bfs_distances`] for any thread count. Concurrent writers
/// only ever store `d + 1` into unset entries, so the result does not depend
/// on scheduling.
pub fn bfs_distances_threaded(n: usize, variant: Variant, threads: usize) -> Result<DistanceTable> {
    let count = check_budget(n, variant)?;
    let dist: Vec<AtomicU8> = (0..count).map(|_| AtomicU8::new(UNSET)).collect();
    dist[0].store(0, Ordering::Relaxed);

    let threads = threads.max(1);
    let pool = if threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| PancakeError::Internal(e.to_string()))?,
        )
    } else {
        None
    };
    let chunk = count.div_ceil(threads * 8).max(1 << 12);

    let mut d = 0u8;
    loop {
        let grew = if let Some(pool) = &pool {
            let any = AtomicBool::new(false);
            pool.install(|| {
                (0..count).into_par_iter().step_by(chunk).for_each(|start| {
                    let end = (start + chunk).min(count);
                    if sweep(&dist, start..end, d, n, variant) {
                        any.store(true, Ordering::Relaxed);
                    }
                })
            });
            any.into_inner()
        } else {
            sweep(&dist, 0..count, d, n, variant)
        };
        if !grew {
            break;
        }
        d += 1;
        if d == UNSET {
            return Err(PancakeError::Internal("distance overflowed a byte".into()));
        }
    }

    let dist: Vec<u8> = dist.into_iter().map(AtomicU8::into_inner).collect();
    let histogram = histogram_of(&dist)?;
    Ok(DistanceTable {
        n,
        variant,
        dist,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stack::BurntStack;

    #[test]
    fn single_pancake() {
        let t = bfs_distances(1, Variant::Burnt).unwrap();
        assert_eq!(t.dist, vec![0, 1]);
        let t = bfs_distances(1, Variant::Unburnt).unwrap();
        assert_eq!(t.dist, vec![0]);
    }

    #[test]
    fn small_maxima() {
        let g: Vec<u8> = (2..=5)
            .map(|n| bfs_distances(n, Variant::Burnt).unwrap().max_distance())
            .collect();
        assert_eq!(g, vec![4, 6, 8, 10]);
        let f: Vec<u8> = (2..=6)
            .map(|n| bfs_distances(n, Variant::Unburnt).unwrap().max_distance())
            .collect();
        assert_eq!(f, vec![1, 3, 4, 5, 7]);
    }

    #[test]
    fn threads_do_not_change_the_table() {
        let a = bfs_distances(5, Variant::Burnt).unwrap();
        let b = bfs_distances_threaded(5, Variant::Burnt, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn file_roundtrip() {
        let t = bfs_distances(4, Variant::Burnt).unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 384);
        assert_eq!(&buf[..4], b"PANC");
        let back = DistanceTable::read_from(&buf[..]).unwrap();
        assert_eq!(back, t);

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(DistanceTable::read_from(&bad[..]).is_err());
        assert!(DistanceTable::read_from(&buf[..buf.len() - 1]).is_err());
    }

    #[test]
    fn limits() {
        assert!(matches!(
            bfs_distances(10, Variant::Burnt),
            Err(PancakeError::ResourceLimit(_))
        ));
        assert!(bfs_distances(0, Variant::Unburnt).is_err());
    }

    #[test]
    fn lookup_by_stack() {
        let t = bfs_distances(3, Variant::Burnt).unwrap();
        let neg = BurntStack::identity(3).negated();
        assert_eq!(t.distance_of(&neg.into()).unwrap(), 6);
        assert_eq!(
            t.histogram_csv().lines().next(),
            Some("n,variant,distance,count")
        );
    }
}
