#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace mfpod {

/// Bounded design space with named dimensions.
struct DesignSpace {
  std::vector<std::string> names;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd clip(const Eigen::VectorXd& x) const;
  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }
};

/// Throws ConfigError unless lower < upper per dimension and names match.
void validate(const DesignSpace& space);

/// The 7-variable ESC design space: CR1, CR2 in [0.01, 0.1]; H1 in [5, 19.5];
/// H2 in [1, 19.5]; W1, W2 in [5, 8]; F1 in [0, 10] (lengths in mm).
DesignSpace esc_design_space();

/// Latin hypercube sample: n_samples x dim, exactly one point per equal-width
/// stratum per dimension, uniform within strata, deterministic under seed.
Eigen::MatrixXd lhs(const DesignSpace& space, int n_samples, std::uint64_t seed);

enum class SubsetStrategy { FirstN, Maximin };

/// Select n_H of the rows as the nested high-fidelity subset. FirstN returns
/// 0..n_H-1; Maximin greedily maximizes the subset's minimum pairwise
/// distance (ties to the lowest index). Result is sorted ascending.
std::vector<int> nested_subset(const Eigen::MatrixXd& points, int n_H, SubsetStrategy strategy);

}  // namespace mfpod
