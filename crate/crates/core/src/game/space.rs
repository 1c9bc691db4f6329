use alloc::vec;
use alloc::vec::Vec;

/// All multisets of `k` positions drawn from `m` slots, ranked by the
/// combinatorial number system so that rank lookups need no hashing.
#[derive(Debug, Clone)]
pub(crate) struct ConfigSpace {
    pub m: usize,
    pub k: usize,
    /// `binom[a][b]` = C(a, b) for a < m + k, b <= k.
    binom: Vec<Vec<u64>>,
    /// Flattened configurations, `k` slot indices each, sorted ascending.
    configs: Vec<u32>,
}

impl ConfigSpace {
    pub fn count(m: usize, k: usize) -> u64 {
        // C(m + k - 1, k) with saturation.
        let mut c: u128 = 1;
        for i in 0..k as u128 {
            c = c * (m as u128 + i) / (i + 1);
            if c > u64::MAX as u128 {
                return u64::MAX;
            }
        }
        c as u64
    }

    pub fn new(m: usize, k: usize) -> Self {
        let top = m + k;
        let mut binom = vec![vec![0u64; k + 2]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            for b in 1..=(k + 1).min(a) {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let total = Self::count(m, k) as usize;
        let mut space = ConfigSpace {
            m,
            k,
            binom,
            configs: vec![0; total * k],
        };
        let mut cur = vec![0u32; k];
        space.fill(0, 0, &mut cur);
        space
    }

    fn fill(&mut self, depth: usize, from: u32, cur: &mut [u32]) {
        if depth == self.k {
            let r = self.rank(cur);
            self.configs[r * self.k..(r + 1) * self.k].copy_from_slice(cur);
            return;
        }
        for s in from..self.m as u32 {
            cur[depth] = s;
            self.fill(depth + 1, s, cur);
        }
    }

    pub fn len(&self) -> usize {
        self.configs.len().checked_div(self.k).unwrap_or(1)
    }

    /// Rank of a sorted multiset of slot indices.
    pub fn rank(&self, sorted: &[u32]) -> usize {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.binom[c as usize + i][i + 1])
            .sum::<u64>() as usize
    }

    pub fn config(&self, idx: usize) -> &[u32] {
        &self.configs[idx * self.k..(idx + 1) * self.k]
    }
}
