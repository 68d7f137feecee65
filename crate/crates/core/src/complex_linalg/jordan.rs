//! Numerical Jordan-structure probing through ranks of powers of shifted matrices.
//!
//! Jordan structure is discontinuous in the entries, so every decision here is
//! tolerance based. Eigenvalues are first grouped by single linkage with a tight
//! gap. Groups that a defective block has split apart (a size-k block perturbed by
//! rounding spreads its eigenvalue over a radius of roughly `eps^(1/k)`) are then
//! merged when the merged centroid passes a rank test.

use super::decomp::{cm_svd, DEFAULT_RANK_TOL};
use super::eigen::{cm_eigen, eigen_order};
use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Default single-linkage gap, relative to the Frobenius norm of the matrix.
pub const CLUSTER_REL_TOL: f64 = 1e-7;
/// Default eigenvalue pairing tolerance when comparing two fingerprints.
pub const PAIRING_REL_TOL: f64 = 1e-6;
// Backward error assumed when deciding how far a split defective block may spread.
const SPLIT_NOISE: f64 = 1e-12;

/// Tolerances for Jordan-structure decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JordanTol {
    /// Single-linkage gap relative to the matrix scale.
    pub cluster: f64,
    /// Relative singular-value threshold for ranks.
    pub rank: f64,
}

impl Default for JordanTol {
    fn default() -> Self {
        JordanTol {
            cluster: CLUSTER_REL_TOL,
            rank: DEFAULT_RANK_TOL,
        }
    }
}

/// One eigenvalue cluster and its Weyr characteristic.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanCluster {
    pub eigenvalue: C64,
    /// Algebraic multiplicity (cluster size).
    pub multiplicity: usize,
    /// `weyr[k-1]` is the nullity of `(a - eigenvalue I)^k`, listed until it reaches
    /// the multiplicity.
    pub weyr: Vec<usize>,
}

impl JordanCluster {
    /// Jordan block sizes in descending order, read off the nullity increments.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut increments = Vec::with_capacity(self.weyr.len());
        let mut prev = 0usize;
        for &n in &self.weyr {
            increments.push(n.saturating_sub(prev));
            prev = n;
        }
        let mut sizes = Vec::new();
        for k in (0..increments.len()).rev() {
            let at_least = increments[k];
            let longer = increments.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least.saturating_sub(longer) {
                sizes.push(k + 1);
            }
        }
        sizes
    }

    pub fn largest_block(&self) -> usize {
        self.block_sizes().first().copied().unwrap_or(0)
    }
}

/// Eigenvalue clusters of a square matrix with their Weyr characteristics.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanFingerprint {
    pub clusters: Vec<JordanCluster>,
    /// Frobenius norm of the probed matrix; all relative tolerances refer to it.
    pub scale: f64,
}

impl JordanFingerprint {
    /// True when the two fingerprints pair up cluster by cluster with eigenvalues
    /// within `pair_tol` (relative) and identical Weyr sequences.
    pub fn matches(&self, other: &JordanFingerprint, pair_tol: f64) -> bool {
        if self.clusters.len() != other.clusters.len() {
            return false;
        }
        let tol = pair_tol * self.scale.max(other.scale).max(f64::MIN_POSITIVE);
        let mut used = vec![false; other.clusters.len()];
        for c in &self.clusters {
            let best = other
                .clusters
                .iter()
                .enumerate()
                .filter(|(j, d)| !used[*j] && d.multiplicity == c.multiplicity && d.weyr == c.weyr)
                .map(|(j, d)| (j, (d.eigenvalue - c.eigenvalue).norm()))
                .filter(|&(_, dist)| dist <= tol)
                .min_by(|x, y| x.1.total_cmp(&y.1));
            match best {
                Some((j, _)) => used[j] = true,
                None => return false,
            }
        }
        true
    }
}

/// Dimension of the kernel of `(a - lambda I)^k`.
///
/// Rather than thresholding the singular values of the k-th power (whose own scale
/// collapses near a defective eigenvalue), the kernel is grown one power at a time:
/// with `W` an orthonormal basis of `ker X^j`, `ker X^(j+1)` is the kernel of
/// `(I - W W^H) X`. Every rank decision is taken relative to `‖X‖₂`.
pub fn cm_generalized_nullity(a: &CMatrix, lambda: C64, k: usize, tol: f64) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "cm_generalized_nullity",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let x = a.shifted(lambda);
    let s_ref = cm_svd(&x).s.first().copied().unwrap_or(0.0);
    if s_ref == 0.0 {
        return Ok(n);
    }
    let threshold = tol * s_ref;
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for _ in 0..k.max(1) {
        let mut m = x.clone();
        for w in &basis {
            // m <- m - w (w^H m)
            for j in 0..n {
                let proj: C64 = (0..n).map(|i| w[i].conj() * m[(i, j)]).sum();
                for i in 0..n {
                    m[(i, j)] -= w[i] * proj;
                }
            }
        }
        let svd = cm_svd(&m);
        let next: Vec<Vec<C64>> = (0..n)
            .filter(|&j| svd.s[j] <= threshold)
            .map(|j| svd.v.column(j))
            .collect();
        let grew = next.len() > basis.len();
        basis = next;
        if !grew || basis.len() == n {
            break;
        }
    }
    Ok(basis.len())
}

struct Group {
    members: Vec<C64>,
    centroid: C64,
}

impl Group {
    fn from_members(members: Vec<C64>) -> Self {
        let centroid = members.iter().sum::<C64>() / members.len() as f64;
        Group { members, centroid }
    }
}

// Single-linkage components of `points` under distance threshold `gap`.
fn single_linkage(points: &[C64], gap: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= gap {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(c) => comps[c].push(i),
            None => {
                root_of[r] = Some(comps.len());
                comps.push(vec![i]);
            }
        }
    }
    comps
}

/// Groups eigenvalues and computes the Weyr characteristic of each group.
pub fn cm_jordan_fingerprint(a: &CMatrix, tol: &JordanTol) -> Result<JordanFingerprint> {
    let eig = cm_eigen(a)?;
    let n = a.rows();
    let scale = a.frobenius_norm();

    let tight = single_linkage(&eig.values, tol.cluster * scale);
    let mut groups: Vec<Group> = tight
        .into_iter()
        .map(|idx| Group::from_members(idx.into_iter().map(|i| eig.values[i]).collect()))
        .collect();

    for k in 2..=n {
        if groups.len() < 2 {
            break;
        }
        let radius = SPLIT_NOISE.powf(1.0 / k as f64) * scale;
        let centroids: Vec<C64> = groups.iter().map(|g| g.centroid).collect();
        let comps = single_linkage(&centroids, radius);
        let mut merged_any = false;
        let mut next: Vec<Option<Group>> = groups.into_iter().map(Some).collect();
        let mut fresh = Vec::new();
        for comp in comps.iter().filter(|c| c.len() > 1) {
            let size: usize = comp
                .iter()
                .map(|&i| next[i].as_ref().unwrap().members.len())
                .sum();
            if size != k {
                continue;
            }
            let members: Vec<C64> = comp
                .iter()
                .flat_map(|&i| next[i].as_ref().unwrap().members.clone())
                .collect();
            let candidate = Group::from_members(members);
            let n1 = cm_generalized_nullity(a, candidate.centroid, 1, tol.rank)?;
            let nk = cm_generalized_nullity(a, candidate.centroid, k, tol.rank)?;
            if n1 >= 1 && nk == k {
                for &i in comp {
                    next[i] = None;
                }
                fresh.push(candidate);
                merged_any = true;
            }
        }
        groups = next.into_iter().flatten().chain(fresh).collect();
        if !merged_any {
            continue;
        }
    }

    let mut clusters = Vec::with_capacity(groups.len());
    for g in groups {
        let mult = g.members.len();
        let mut weyr = Vec::new();
        for k in 1..=mult {
            let nk = cm_generalized_nullity(a, g.centroid, k, tol.rank)?;
            weyr.push(nk);
            if nk >= mult {
                break;
            }
        }
        clusters.push(JordanCluster {
            eigenvalue: g.centroid,
            multiplicity: mult,
            weyr,
        });
    }
    let order_scale = scale.max(f64::MIN_POSITIVE);
    clusters.sort_by(|x, y| eigen_order(x.eigenvalue, y.eigenvalue, order_scale));
    Ok(JordanFingerprint { clusters, scale })
}
