//! Self-contained dense complex linear algebra: the engine every biquaternion
//! computation is lowered onto.

mod decomp;
mod eigen;
mod jordan;
pub(crate) mod matrix;
mod poly;

pub use decomp::{cm_det, cm_pinv, cm_rank, cm_svd, penrose_residual, Svd, DEFAULT_RANK_TOL};
pub(crate) use eigen::normalize_vector;
pub use eigen::{cm_eigen, cm_schur, eigen_order, eigen_residual, Eigen, Schur, QR_SWEEPS_PER_DIM};
pub use jordan::{
    cm_generalized_nullity, cm_jordan_fingerprint, JordanCluster, JordanFingerprint, JordanTol,
    CLUSTER_REL_TOL, PAIRING_REL_TOL,
};
pub use matrix::{cm_mul, CMatrix, C64};
pub use poly::{cm_charpoly, CPolynomial};
