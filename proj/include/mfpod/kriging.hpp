#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace mfpod {

enum class Kernel { SquaredExponential, Matern52 };
enum class TrendKind { Constant, Linear, Custom };

/// User-supplied regression basis for universal kriging. Callables take a
/// point in original (unnormalized) coordinates; `gradients` returns the
/// size x n Jacobian of the basis values.
struct TrendBasis {
  int size = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> values;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> gradients;
};

/// Normalization box; inputs are mapped to [0,1]^n through it.
struct InputBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct KrigingConfig {
  Kernel kernel = Kernel::SquaredExponential;
  TrendKind trend = TrendKind::Constant;
  /// Length-scale search box in log10 space, per dimension.
  double theta_log10_lower = -2.0;
  double theta_log10_upper = 2.0;
  double nugget = 1e-10;
  int n_restarts = 3;
  std::uint64_t seed = 0;
  /// Pattern-search sweep budget per restart.
  int max_search_iterations = 48;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

/// Fitted anisotropic Gaussian-process regressor for one scalar output.
/// Immutable after fit; safe for concurrent predict calls.
class KrigingModel {
public:
  Prediction predict(const Eigen::VectorXd& x) const;
  Eigen::VectorXd predict_mean_gradient(const Eigen::VectorXd& x) const;

  const KrigingConfig& config() const { return config_; }
  const InputBounds& bounds() const { return bounds_; }
  const Eigen::MatrixXd& training_inputs() const { return X_raw_; }
  const Eigen::VectorXd& training_outputs() const { return y_raw_; }
  const Eigen::VectorXd& theta() const { return theta_; }
  Eigen::Index sample_count() const { return X_raw_.rows(); }
  int input_dim() const { return static_cast<int>(X_raw_.cols()); }

  /// Process variance in output units.
  double process_variance() const { return sigma2_ * y_std_ * y_std_; }
  /// GLS trend coefficients in standardized-output units.
  const Eigen::VectorXd& beta() const { return beta_; }
  double output_mean() const { return y_mean_; }
  double output_std() const { return y_std_; }
  double nugget_used() const;
  /// Trend coefficients mapped back to output units: mean(x) =
  /// coeffs . h(x) + intercept_shift (shift absorbs the standardization).
  Eigen::VectorXd destandardized_trend_coefficients() const { return y_std_ * beta_; }

  /// Concentrated objective N log s2(theta) + log det R(theta); the fit
  /// minimizes this. Exposed for likelihood regression checks.
  double objective_at(const Eigen::VectorXd& theta_log10) const;
  double fitted_objective() const { return objective_value_; }

  const std::optional<TrendBasis>& trend_basis() const { return trend_basis_; }

private:
  friend class KrigingFitter;
  friend void save_kriging(const std::filesystem::path&, const KrigingModel&);
  friend KrigingModel load_kriging(const std::filesystem::path&,
                                   const std::optional<TrendBasis>&);

  struct Factorization {
    Eigen::LLT<Eigen::MatrixXd> R_llt;
    Eigen::MatrixXd W;  // L^{-1} F
    Eigen::LLT<Eigen::MatrixXd> WtW_llt;
    double log_det_R = 0.0;
    double nugget_used = 0.0;
  };

  Eigen::VectorXd normalize(const Eigen::VectorXd& x) const;
  Eigen::VectorXd correlation_vector(const Eigen::VectorXd& xn) const;
  Eigen::VectorXd trend_at(const Eigen::VectorXd& x, const Eigen::VectorXd& xn) const;

  KrigingConfig config_;
  InputBounds bounds_;
  Eigen::MatrixXd X_raw_, Xn_;
  Eigen::VectorXd y_raw_;
  double y_mean_ = 0.0, y_std_ = 1.0;
  Eigen::VectorXd theta_;
  Eigen::VectorXd beta_;
  double sigma2_ = 0.0;
  double objective_value_ = 0.0;
  Eigen::VectorXd alpha_;  // R^{-1} (y_tilde - F beta)
  std::shared_ptr<const Factorization> fact_;
  std::optional<TrendBasis> trend_basis_;
};

KrigingModel fit_kriging(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const KrigingConfig& config);
KrigingModel fit_kriging(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const KrigingConfig& config, const InputBounds& bounds,
                         const std::optional<TrendBasis>& trend_basis = std::nullopt);

/// Fit one correlation model shared by every column of Y (single theta
/// search, per-column trend/variance estimates). Returns one model per
/// column; they share the factorization.
std::vector<KrigingModel> fit_kriging_shared_theta(const Eigen::MatrixXd& X,
                                                   const Eigen::MatrixXd& Y,
                                                   const KrigingConfig& config,
                                                   const InputBounds& bounds);

Prediction predict(const KrigingModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd predict_gradient(const KrigingModel& model, const Eigen::VectorXd& x);

/// Versioned binary model container. The correlation factorization is
/// recomputed on load. Custom-trend models cannot round-trip standalone;
/// the caller must supply the rebound basis on load.
void save_kriging(const std::filesystem::path& path, const KrigingModel& model);
KrigingModel load_kriging(const std::filesystem::path& path,
                          const std::optional<TrendBasis>& trend_basis = std::nullopt);

}  // namespace mfpod
