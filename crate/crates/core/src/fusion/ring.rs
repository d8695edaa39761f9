use serde::{Deserialize, Serialize};

use crate::report::ValidationReport;

/// A simple object of the system. Label `0` is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub id: usize,
    pub name: String,
    pub dual: usize,
}

/// Fusion multiplicities `N[i][j][k] = dim Hom(k, i⊗j)` over a finite label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<Label>,
    n: Vec<u32>,
}

impl FusionRing {
    /// Builds a ring from labels `(name, dual)` and a dense multiplicity function.
    pub fn from_fn(
        labels: Vec<(String, usize)>,
        mut n: impl FnMut(usize, usize, usize) -> u32,
    ) -> Self {
        let rank = labels.len();
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(id, (name, dual))| Label { id, name, dual })
            .collect();
        let mut data = vec![0; rank * rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    data[(i * rank + j) * rank + k] = n(i, j, k);
                }
            }
        }
        Self { labels, n: data }
    }

    /// Builds a ring from sparse `(i, j, k, value)` entries; missing entries are zero.
    pub fn from_sparse(
        labels: Vec<(String, usize)>,
        entries: &[(usize, usize, usize, u32)],
    ) -> Self {
        let rank = labels.len();
        let mut data = vec![0; rank * rank * rank];
        for &(i, j, k, v) in entries {
            data[(i * rank + j) * rank + k] = v;
        }
        Self::from_fn(labels, |i, j, k| data[(i * rank + j) * rank + k])
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn name(&self, i: usize) -> &str {
        &self.labels[i].name
    }

    #[inline]
    pub fn dual(&self, i: usize) -> usize {
        self.labels[i].dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> usize {
        let r = self.rank();
        self.n[(i * r + j) * r + k] as usize
    }

    /// Simple summands of `i ⊗ j`, with multiplicity.
    pub fn fuse(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rank()).filter_map(move |k| {
            let m = self.n(i, j, k);
            (m > 0).then_some((k, m))
        })
    }

    /// Dimension of `Hom(l, i⊗j⊗k)`.
    pub fn triple_dim(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        (0..self.rank())
            .map(|m| self.n(i, j, m) * self.n(m, k, l))
            .sum()
    }

    /// Sparse listing of nonzero multiplicities.
    pub fn entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.n(i, j, k) as u32;
                    if v > 0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    /// Fusion matrix of left multiplication by `i`: `(N_i)_{kj} = N[i][j][k]`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<usize>> {
        let r = self.rank();
        (0..r)
            .map(|k| (0..r).map(|j| self.n(i, j, k)).collect())
            .collect()
    }

    /// Returns the ring with labels permuted: new label `a` is old label `perm[a]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let r = self.rank();
        let mut inv = vec![0; r];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let labels = perm
            .iter()
            .map(|&p| (self.labels[p].name.clone(), inv[self.labels[p].dual]))
            .collect();
        Self::from_fn(labels, |i, j, k| self.n(perm[i], perm[j], perm[k]) as u32)
    }
}

/// Checks the unit law, duality pairing, Frobenius reciprocity and associativity.
pub fn validate_fusion_ring(ring: &FusionRing) -> ValidationReport {
    let mut report = ValidationReport::new("fusion ring");
    let r = ring.rank();
    if r == 0 {
        report.violation("rank", "ring has no labels");
        return report;
    }
    for (idx, label) in ring.labels().iter().enumerate() {
        if label.id != idx {
            report.violation("labels", format!("label {idx} carries id {}", label.id));
        }
        if label.dual >= r {
            report.violation("dual", format!("dual of {} is out of range", label.name));
        }
    }
    if !report.is_valid() {
        return report;
    }
    if ring.dual(0) != 0 {
        report.violation("dual", "unit label 0 must be self-dual");
    }
    for i in 0..r {
        if ring.dual(ring.dual(i)) != i {
            report.violation(
                "dual",
                format!("dual is not an involution at {}", ring.name(i)),
            );
        }
    }
    for i in 0..r {
        for k in 0..r {
            let want = usize::from(i == k);
            if ring.n(0, i, k) != want {
                report.violation(
                    "unit",
                    format!("N[0][{i}][{k}] = {} (expected {want})", ring.n(0, i, k)),
                );
            }
            if ring.n(i, 0, k) != want {
                report.violation(
                    "unit",
                    format!("N[{i}][0][{k}] = {} (expected {want})", ring.n(i, 0, k)),
                );
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let want = usize::from(j == ring.dual(i));
            if ring.n(i, j, 0) != want {
                report.violation(
                    "duality",
                    format!("N[{i}][{j}][0] = {} (expected {want})", ring.n(i, j, 0)),
                );
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let (bi, bj, bk) = (ring.dual(i), ring.dual(j), ring.dual(k));
                if ring.n(i, j, k) != ring.n(bj, bi, bk) || ring.n(i, j, k) != ring.n(bi, k, j) {
                    report.violation(
                        "reciprocity",
                        format!("N[{i}][{j}][{k}] is not invariant under duality/rotation"),
                    );
                }
            }
        }
    }
    let mut assoc_failures = 0usize;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: usize = (0..r).map(|m| ring.n(i, j, m) * ring.n(m, k, l)).sum();
                    let rhs: usize = (0..r).map(|m| ring.n(j, k, m) * ring.n(i, m, l)).sum();
                    if lhs != rhs {
                        assoc_failures += 1;
                        if assoc_failures <= 8 {
                            report.violation(
                                "associativity",
                                format!("(({i}{j}){k}) has {lhs} copies of {l} but ({i}({j}{k})) has {rhs}"),
                            );
                        }
                    }
                }
            }
        }
    }
    if assoc_failures > 8 {
        report.note(format!(
            "{} further associativity failures suppressed",
            assoc_failures - 8
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib_ring() -> FusionRing {
        FusionRing::from_sparse(
            vec![("1".into(), 0), ("tau".into(), 1)],
            &[
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (1, 1, 0, 1),
                (1, 1, 1, 1),
            ],
        )
    }

    #[test]
    fn trivial_ring_is_valid() {
        let ring = FusionRing::from_sparse(vec![("1".into(), 0)], &[(0, 0, 0, 1)]);
        assert!(validate_fusion_ring(&ring).is_valid());
    }

    #[test]
    fn fibonacci_ring_is_valid() {
        let ring = fib_ring();
        let report = validate_fusion_ring(&ring);
        assert!(report.is_valid(), "{report}");
        // associativity by enumeration: tau^3 = 1 + 2 tau both ways
        assert_eq!(ring.triple_dim(1, 1, 1, 1), 2);
        assert_eq!(ring.triple_dim(1, 1, 1, 0), 1);
    }

    #[test]
    fn missing_vacuum_channel_is_a_duality_violation() {
        // x ⊗ x = x only: x has no dual
        let ring = FusionRing::from_sparse(
            vec![("1".into(), 0), ("x".into(), 1)],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)],
        );
        let report = validate_fusion_ring(&ring);
        assert!(report.has_tag("duality"), "{report}");
    }

    #[test]
    fn non_associative_ring_is_reported() {
        // a, b self-dual; a⊗a = 1, b⊗b = 1, a⊗b = b⊗a = a is not associative:
        // (a⊗a)⊗b = b but a⊗(a⊗b) = a⊗a = 1.
        let ring = FusionRing::from_sparse(
            vec![("1".into(), 0), ("a".into(), 1), ("b".into(), 2)],
            &[
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (0, 2, 2, 1),
                (2, 0, 2, 1),
                (1, 1, 0, 1),
                (2, 2, 0, 1),
                (1, 2, 1, 1),
                (2, 1, 1, 1),
            ],
        );
        let report = validate_fusion_ring(&ring);
        assert!(report.has_tag("associativity"), "{report}");
    }

    #[test]
    fn relabeling_preserves_validity() {
        let ring = fib_ring();
        let z3 = FusionRing::from_fn(
            vec![("0".into(), 0), ("1".into(), 2), ("2".into(), 1)],
            |i, j, k| u32::from((i + j) % 3 == k),
        );
        assert!(validate_fusion_ring(&z3.relabeled(&[0, 2, 1])).is_valid());
        assert!(validate_fusion_ring(&ring.relabeled(&[0, 1])).is_valid());
    }
}
