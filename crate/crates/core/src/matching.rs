//! Small bipartite matching helpers used to turn multiset moves into
//! per-cop moves and to assign travelling cops to target positions.

use alloc::vec;
use alloc::vec::Vec;

/// Perfect matching of `rows` onto `cols` (equal sizes) using only pairs
/// accepted by `allowed`. Returns `assignment[row] = col`.
pub fn perfect_matching<F>(size: usize, allowed: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let mut col_owner: Vec<Option<usize>> = vec![None; size];
    for row in 0..size {
        let mut visited = vec![false; size];
        if !augment(row, size, &allowed, &mut visited, &mut col_owner) {
            return None;
        }
    }
    let mut assignment = vec![usize::MAX; size];
    for (col, owner) in col_owner.iter().enumerate() {
        assignment[owner.expect("perfect matching")] = col;
    }
    Some(assignment)
}

fn augment<F>(
    row: usize,
    size: usize,
    allowed: &F,
    visited: &mut [bool],
    col_owner: &mut [Option<usize>],
) -> bool
where
    F: Fn(usize, usize) -> bool,
{
    for col in 0..size {
        if visited[col] || !allowed(row, col) {
            continue;
        }
        visited[col] = true;
        let free = match col_owner[col] {
            None => true,
            Some(other) => augment(other, size, allowed, visited, col_owner),
        };
        if free {
            col_owner[col] = Some(row);
            return true;
        }
    }
    false
}

/// Assignment of rows to columns of a square cost matrix minimising the
/// largest used cost. Returns `(bottleneck, assignment)`.
pub fn bottleneck_assignment(cost: &[Vec<u32>]) -> Option<(u32, Vec<usize>)> {
    let size = cost.len();
    if size == 0 {
        return Some((0, Vec::new()));
    }
    let mut values: Vec<u32> = cost.iter().flatten().copied().collect();
    values.sort_unstable();
    values.dedup();
    let feasible = |limit: u32| perfect_matching(size, |r, c| cost[r][c] <= limit);
    let (mut lo, mut hi) = (0, values.len() - 1);
    feasible(values[hi])?;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    feasible(values[lo]).map(|a| (values[lo], a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_respects_allowed_pairs() {
        let a = perfect_matching(3, |r, c| (r + c) % 3 != 0 || r == 0 && c == 0).unwrap();
        for (r, &c) in a.iter().enumerate() {
            assert!((r + c) % 3 != 0 || r == 0 && c == 0);
        }
        assert!(perfect_matching(2, |_, c| c == 0).is_none());
    }

    #[test]
    fn bottleneck_beats_greedy() {
        // Greedy row-by-row would pick (0,0)=1 and be forced into (1,1)=9.
        let cost = vec![vec![1, 3], vec![2, 9]];
        let (b, a) = bottleneck_assignment(&cost).unwrap();
        assert_eq!(b, 3);
        assert_eq!(a, vec![1, 0]);
    }
}
