//! Equality of modular data up to relabeling.

use crate::modular::ModularData;
use crate::scalar::{abs, Real, C};

/// Result of a successful match: `perm[i]` is the label of the first record
/// that corresponds to label `i` of the second, plus the largest deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMatch {
    pub perm: Vec<usize>,
    pub max_deviation: f64,
}

fn column<T: Real>(md: &ModularData<T>, i: usize) -> Vec<C<T>> {
    (0..md.rank()).map(|k| md.s[(k, i)]).collect()
}

/// Equal as multisets within `tol`. Greedy pairing is enough here: entries of
/// a unitary `S` that are within `tol` of each other are equal in exact
/// arithmetic for any sensible tolerance.
fn same_multiset<T: Real>(x: &[C<T>], y: &[C<T>], tol: f64) -> bool {
    let mut used = vec![false; y.len()];
    x.iter().all(
        |&z| match (0..y.len()).find(|&k| !used[k] && close(z, y[k], tol)) {
            Some(k) => {
                used[k] = true;
                true
            }
            None => false,
        },
    )
}

fn close<T: Real>(a: C<T>, b: C<T>, tol: f64) -> bool {
    abs(a - b).as_f64() <= tol
}

/// Finds a permutation `π` with `a.S[π i][π j] ≈ b.S[i][j]` and
/// `a.t[π i] ≈ b.t[i]`, by backtracking over candidates that agree on `t`,
/// `S_{ii}` and the `S` column as a multiset. The vacuum must map to the vacuum.
pub fn match_labels<T: Real>(
    a: &ModularData<T>,
    b: &ModularData<T>,
    tol: f64,
) -> Option<LabelMatch> {
    let r = a.rank();
    if b.rank() != r {
        return None;
    }
    let fa: Vec<_> = (0..r).map(|i| column(a, i)).collect();
    let fb: Vec<_> = (0..r).map(|i| column(b, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            (0..r)
                .filter(|&k| {
                    (i == 0) == (k == 0)
                        && close(a.t[k], b.t[i], tol)
                        && close(a.s[(k, k)], b.s[(i, i)], tol)
                        && same_multiset(&fa[k], &fb[i], tol)
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    // most constrained labels first
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| candidates[i].len());

    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    if !assign(a, b, tol, &order, &candidates, 0, &mut perm, &mut used) {
        return None;
    }
    let mut dev = 0.0f64;
    for i in 0..r {
        dev = dev.max(abs(a.t[perm[i]] - b.t[i]).as_f64());
        for j in 0..r {
            dev = dev.max(abs(a.s[(perm[i], perm[j])] - b.s[(i, j)]).as_f64());
        }
    }
    Some(LabelMatch {
        perm,
        max_deviation: dev,
    })
}

#[allow(clippy::too_many_arguments)]
fn assign<T: Real>(
    a: &ModularData<T>,
    b: &ModularData<T>,
    tol: f64,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&i) = order.get(depth) else {
        return true;
    };
    for &k in &candidates[i] {
        if used[k] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&j| close(a.s[(k, perm[j])], b.s[(i, j)], tol));
        if !consistent {
            continue;
        }
        perm[i] = k;
        used[k] = true;
        if assign(a, b, tol, order, candidates, depth + 1, perm, used) {
            return true;
        }
        used[k] = false;
        perm[i] = usize::MAX;
    }
    false
}
