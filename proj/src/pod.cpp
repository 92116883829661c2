#include "mfpod/pod.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "mfpod/errors.hpp"

namespace mfpod {

SnapshotMatrix assemble_snapshots(const std::vector<GridField>& fields) {
  if (fields.empty()) throw EmptyInputError("assemble_snapshots: no fields");
  const GridPtr grid = fields.front().grid;
  SnapshotMatrix snap;
  snap.grid = grid;
  snap.data.resize(static_cast<Eigen::Index>(fields.size()), grid->masked_count());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const GridField& f = fields[i];
    if (!f.grid || !f.grid->same_layout(*grid))
      throw GridMismatchError("assemble_snapshots: fields on different grids");
    snap.data.row(static_cast<Eigen::Index>(i)) = flatten(f).transpose();
  }
  if (!snap.data.allFinite()) throw InvalidInputError("snapshot matrix has non-finite entries");
  return snap;
}

namespace {

/// Deterministic completion for rank-deficient spectra: replace each
/// degenerate column with the first canonical basis vector that keeps the
/// set orthonormal (Gram-Schmidt against the accepted columns).
void complete_degenerate_columns(Eigen::MatrixXd& V, const std::vector<int>& degenerate) {
  const Eigen::Index m = V.rows();
  for (int col : degenerate) {
    bool placed = false;
    for (Eigen::Index cand = 0; cand < m && !placed; ++cand) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
      v[cand] = 1.0;
      for (Eigen::Index j = 0; j < V.cols(); ++j) {
        if (j == col) continue;
        v -= V.col(j).dot(v) * V.col(j);
      }
      const double nrm = v.norm();
      if (nrm > 0.5) {
        V.col(col) = v / nrm;
        placed = true;
      }
    }
    if (!placed) throw NumericError("could not complete degenerate POD mode");
  }
}

void fix_mode_signs(Eigen::MatrixXd& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (V(arg, j) < 0.0) V.col(j) = -V.col(j);
  }
}

}  // namespace

PODBasis compute_pod(const SnapshotMatrix& snapshots, int k, bool center) {
  const Eigen::Index N = snapshots.data.rows();
  const Eigen::Index m = snapshots.data.cols();
  if (k < 1 || k > std::min(N, m)) throw InvalidRankError("compute_pod: k out of range [1, min(N, m_I)]");

  PODBasis basis;
  basis.grid = snapshots.grid;
  basis.k = k;
  basis.centered = center;

  Eigen::MatrixXd A = snapshots.data;
  if (center) {
    basis.mean = A.colwise().mean();
    A.rowwise() -= basis.mean.transpose();
  }

  // Thin SVD via the N x N Gram matrix: A A^T = U S^2 U^T, V = A^T U / sigma.
  const Eigen::MatrixXd gram = A * A.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw NumericError("Gram eigendecomposition failed");

  basis.singular_values.resize(N);
  Eigen::MatrixXd U(N, k);
  for (Eigen::Index i = 0; i < N; ++i) {
    const double lambda = eig.eigenvalues()[N - 1 - i];  // descending
    basis.singular_values[i] = std::sqrt(std::max(lambda, 0.0));
    if (i < k) U.col(i) = eig.eigenvectors().col(N - 1 - i);
  }

  const double sigma_floor = basis.singular_values[0] * 1e-12 * std::max<double>(N, m);
  basis.modes.resize(m, k);
  std::vector<int> degenerate;
  for (int j = 0; j < k; ++j) {
    const double sigma = basis.singular_values[j];
    if (sigma > sigma_floor && sigma > 0.0) {
      basis.modes.col(j) = (A.transpose() * U.col(j)) / sigma;
    } else {
      basis.modes.col(j).setZero();
      degenerate.push_back(j);
    }
  }

  // One modified Gram-Schmidt pass; the Gram route loses orthogonality for
  // trailing modes close to the numerical-rank floor.
  for (int j = 0; j < k; ++j) {
    if (std::find(degenerate.begin(), degenerate.end(), j) != degenerate.end()) continue;
    for (int p = 0; p < j; ++p) {
      basis.modes.col(j) -= basis.modes.col(p).dot(basis.modes.col(j)) * basis.modes.col(p);
    }
    const double nrm = basis.modes.col(j).norm();
    if (nrm > 1e-8) {
      basis.modes.col(j) /= nrm;
    } else {
      basis.modes.col(j).setZero();
      degenerate.push_back(j);
    }
  }
  complete_degenerate_columns(basis.modes, degenerate);
  fix_mode_signs(basis.modes);
  return basis;
}

Eigen::VectorXd project(const PODBasis& basis, const Eigen::VectorXd& y_prime) {
  if (y_prime.size() != basis.modes.rows())
    throw ShapeError("project: field length does not match basis m_I");
  if (basis.centered) return basis.modes.transpose() * (y_prime - basis.mean);
  return basis.modes.transpose() * y_prime;
}

Eigen::VectorXd reconstruct(const PODBasis& basis, const Eigen::VectorXd& z) {
  if (z.size() != basis.k) throw ShapeError("reconstruct: latent length does not match k");
  Eigen::VectorXd y = basis.modes * z;
  if (basis.centered) y += basis.mean;
  return y;
}

int select_rank(const Eigen::VectorXd& singular_values, double energy_threshold) {
  const double total = singular_values.squaredNorm();
  if (total <= 0.0) return 1;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    acc += singular_values[i] * singular_values[i];
    if (acc / total >= energy_threshold) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(singular_values.size());
}

std::vector<RankError> reconstruction_error_curve(const SnapshotMatrix& snapshots,
                                                  const std::vector<int>& ks, bool center) {
  if (ks.empty()) return {};
  const int k_max = *std::max_element(ks.begin(), ks.end());
  const PODBasis basis = compute_pod(snapshots, k_max, center);

  Eigen::MatrixXd A = snapshots.data;
  if (center) A.rowwise() -= basis.mean.transpose();
  const Eigen::MatrixXd P = A * basis.modes;  // N x k_max latent block
  const double total = A.squaredNorm();
  const double denom = static_cast<double>(A.rows()) * static_cast<double>(A.cols());

  // With orthonormal modes, |A - A V_k V_k^T|_F^2 = |A|_F^2 - sum_j<=k |P_j|^2.
  std::vector<RankError> curve;
  curve.reserve(ks.size());
  for (int k : ks) {
    if (k < 1 || k > k_max) throw InvalidRankError("reconstruction_error_curve: invalid k");
    double captured = 0.0;
    for (int j = 0; j < k; ++j) captured += P.col(j).squaredNorm();
    curve.push_back({k, std::sqrt(std::max(total - captured, 0.0) / denom)});
  }
  return curve;
}

}  // namespace mfpod
