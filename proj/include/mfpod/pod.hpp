#pragma once

#include <Eigen/Core>
#include <vector>

#include "mfpod/field_grid.hpp"

namespace mfpod {

/// Snapshot matrix: one flattened grid field per row (N x m_I).
struct SnapshotMatrix {
  Eigen::MatrixXd data;
  GridPtr grid;

  Eigen::Index count() const { return data.rows(); }
};

/// Truncated POD basis from the snapshot SVD A = U S V^T: the first k right
/// singular vectors (spatial modes) plus the full singular-value spectrum
/// for energy diagnostics. Modes are sign-fixed so the entry of largest
/// magnitude in each column is nonnegative.
struct PODBasis {
  Eigen::MatrixXd modes;            // m_I x k, orthonormal columns
  Eigen::VectorXd singular_values;  // length N, nonincreasing
  int k = 0;
  bool centered = false;
  Eigen::VectorXd mean;  // m_I, zero-size unless centered
  GridPtr grid;
};

SnapshotMatrix assemble_snapshots(const std::vector<GridField>& fields);

/// Truncated POD via the N x N Gram matrix (thin SVD, N << m_I assumed but
/// not required). Optional mean-centering subtracts the row mean first.
PODBasis compute_pod(const SnapshotMatrix& snapshots, int k, bool center = false);

/// Latent coordinates: z = V_k^T (y' - mean). Least-squares optimal because
/// the columns are orthonormal.
Eigen::VectorXd project(const PODBasis& basis, const Eigen::VectorXd& y_prime);

/// Field recovery: y' = V_k z (+ mean).
Eigen::VectorXd reconstruct(const PODBasis& basis, const Eigen::VectorXd& z);

/// Smallest k whose cumulative energy sum(sigma_i^2, i<=k) / sum(sigma_i^2)
/// reaches the threshold.
int select_rank(const Eigen::VectorXd& singular_values, double energy_threshold = 0.9999);

struct RankError {
  int k;
  double rmse;
};

/// Rank-k snapshot reconstruction RMSE for each requested k, using the
/// per-element-then-per-snapshot convention:
///   rmse(k) = sqrt( sum_i sum_j (A_ij - Ahat_ij)^2 / (N * m_I) ).
/// Computed from the actual projections, not the singular-value identity.
std::vector<RankError> reconstruction_error_curve(const SnapshotMatrix& snapshots,
                                                  const std::vector<int>& ks, bool center = false);

}  // namespace mfpod
