#include "mfpod/doe.hpp"

#include <algorithm>
#include <limits>

#include "mfpod/errors.hpp"
#include "mfpod/rng.hpp"

namespace mfpod {

bool DesignSpace::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

Eigen::VectorXd DesignSpace::clip(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

void validate(const DesignSpace& space) {
  if (space.lower.size() != space.upper.size())
    throw ConfigError("design space bound vectors differ in length");
  if (space.lower.size() == 0) throw ConfigError("design space is empty");
  if (!space.names.empty() && static_cast<int>(space.names.size()) != space.dim())
    throw ConfigError("design space names do not match dimension");
  for (Eigen::Index i = 0; i < space.lower.size(); ++i) {
    if (!(space.lower[i] < space.upper[i]))
      throw ConfigError("design space requires lower < upper in every dimension");
  }
}

DesignSpace esc_design_space() {
  DesignSpace s;
  s.names = {"CR1", "CR2", "H1", "H2", "W1", "W2", "F1"};
  s.lower.resize(7);
  s.upper.resize(7);
  s.lower << 0.01, 0.01, 5.0, 1.0, 5.0, 5.0, 0.0;
  s.upper << 0.1, 0.1, 19.5, 19.5, 8.0, 8.0, 10.0;
  return s;
}

Eigen::MatrixXd lhs(const DesignSpace& space, int n_samples, std::uint64_t seed) {
  validate(space);
  if (n_samples < 1) throw SizeError("lhs needs n_samples >= 1");
  const int n = space.dim();
  Eigen::MatrixXd out(n_samples, n);
  Rng rng(seed);
  const double width = 1.0 / n_samples;
  for (int d = 0; d < n; ++d) {
    const std::vector<int> strata = random_permutation(rng, n_samples);
    for (int i = 0; i < n_samples; ++i) {
      const double u01 = (strata[i] + uniform01(rng)) * width;
      out(i, d) = space.lower[d] + u01 * (space.upper[d] - space.lower[d]);
    }
  }
  return out;
}

std::vector<int> nested_subset(const Eigen::MatrixXd& points, int n_H, SubsetStrategy strategy) {
  const int n = static_cast<int>(points.rows());
  if (n_H > n) throw SizeError("nested subset larger than point set");
  if (n_H < 0) throw SizeError("nested subset size must be nonnegative");

  std::vector<int> chosen;
  chosen.reserve(n_H);
  if (strategy == SubsetStrategy::FirstN) {
    for (int i = 0; i < n_H; ++i) chosen.push_back(i);
    return chosen;
  }

  // Greedy maximin: seed with the most distant pair, then repeatedly add the
  // point farthest from the current subset. Ties resolve to the lowest index.
  if (n_H == 0) return chosen;
  if (n_H == 1) return {0};
  std::pair<int, int> best_pair{0, 1};
  double best_d2 = -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d2 = (points.row(i) - points.row(j)).squaredNorm();
      if (d2 > best_d2) {
        best_d2 = d2;
        best_pair = {i, j};
      }
    }
  }
  chosen = {best_pair.first, best_pair.second};
  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  std::vector<char> in_subset(n, 0);
  in_subset[best_pair.first] = in_subset[best_pair.second] = 1;
  for (int i = 0; i < n; ++i) {
    for (int c : chosen) min_d2[i] = std::min(min_d2[i], (points.row(i) - points.row(c)).squaredNorm());
  }
  while (static_cast<int>(chosen.size()) < n_H) {
    int pick = -1;
    double pick_d2 = -1.0;
    for (int i = 0; i < n; ++i) {
      if (in_subset[i]) continue;
      if (min_d2[i] > pick_d2) {
        pick_d2 = min_d2[i];
        pick = i;
      }
    }
    chosen.push_back(pick);
    in_subset[pick] = 1;
    for (int i = 0; i < n; ++i) {
      if (!in_subset[i]) min_d2[i] = std::min(min_d2[i], (points.row(i) - points.row(pick)).squaredNorm());
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace mfpod
