//! Small batch-run helpers: wall-clock reporting on stderr (so stdout stays
//! deterministic) and a seeded shuffle for sampled cross-checks.

use std::time::Instant;

pub fn timed<T>(enabled: bool, label: &str, f: impl FnOnce() -> T) -> T {
    if !enabled {
        return f();
    }
    let start = Instant::now();
    let out = f();
    eprintln!("[time] {label}: {} ms", start.elapsed().as_millis());
    out
}

pub struct Xorshift64 {
    state: u64,
}

impl Xorshift64 {
    pub fn new(seed: u64) -> Xorshift64 {
        Xorshift64 {
            state: (seed ^ 0x9e37_79b9_7f4a_7c15) | 1,
        }
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Up to `want` distinct indices from 0..n, in increasing order.
    pub fn sample_indices(&mut self, n: usize, want: usize) -> Vec<usize> {
        let take = want.min(n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..take {
            let j = i + (self.next() as usize) % (n - i);
            pool.swap(i, j);
        }
        let mut picked = pool[..take].to_vec();
        picked.sort_unstable();
        picked
    }
}
