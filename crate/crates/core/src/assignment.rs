//! Rectangular linear assignment (shortest augmenting paths, O(n^2 m)).

use crate::error::{Error, Result};

/// Minimizes `sum cost[i][col[i]]` over injective row-to-column maps.
/// Requires `rows <= cols`. Returns the column chosen for each row.
pub fn solve(cost: &[Vec<f64>]) -> Result<Vec<usize>> {
    let n = cost.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = cost[0].len();
    if cost.iter().any(|r| r.len() != m) {
        return Err(Error::Shape("ragged cost matrix".into()));
    }
    if n > m {
        return Err(Error::Shape(format!(
            "{n} rows cannot be assigned to {m} columns"
        )));
    }
    if cost.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::Numerical("non-finite assignment cost".into()));
    }

    // 1-based potentials; column 0 is the virtual root.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0; n];
    for j in 1..=m {
        if owner[j] != 0 {
            out[owner[j] - 1] = j - 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(cost: &[Vec<f64>]) -> f64 {
        fn rec(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == cost.len() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row][j] + rec(cost, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(cost, 0, &mut vec![false; cost[0].len()])
    }

    #[test]
    fn matches_brute_force() {
        let mut state = 12345u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for n in 1..=5 {
            for m in n..=6 {
                let cost: Vec<Vec<f64>> =
                    (0..n).map(|_| (0..m).map(|_| next()).collect()).collect();
                let sol = solve(&cost).unwrap();
                let mut cols = sol.clone();
                cols.sort_unstable();
                cols.dedup();
                assert_eq!(cols.len(), n);
                let total: f64 = sol.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
                assert!((total - brute(&cost)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_tall_matrices() {
        assert!(solve(&[vec![1.0], vec![2.0]]).is_err());
        assert_eq!(solve(&[]).unwrap(), Vec::<usize>::new());
    }
}
