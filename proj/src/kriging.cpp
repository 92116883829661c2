#include "mfpod/kriging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "mfpod/errors.hpp"
#include "mfpod/rng.hpp"

namespace mfpod {

namespace {

constexpr double kMaxNugget = 1e-4;
constexpr double kSqrt5 = 2.2360679774997896964091736687747;

double matern52_factor(double a_abs_d) {
  // a_abs_d = sqrt(5) * theta_d * |delta_d|
  return (1.0 + a_abs_d + a_abs_d * a_abs_d / 3.0) * std::exp(-a_abs_d);
}

/// Correlation between two normalized points.
double correlation(Kernel kernel, const Eigen::VectorXd& theta, const Eigen::RowVectorXd& a,
                   const Eigen::RowVectorXd& b) {
  const int n = static_cast<int>(theta.size());
  if (kernel == Kernel::SquaredExponential) {
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      const double delta = a[d] - b[d];
      s += theta[d] * delta * delta;
    }
    return std::exp(-s);
  }
  double prod = 1.0;
  for (int d = 0; d < n; ++d) {
    prod *= matern52_factor(kSqrt5 * theta[d] * std::abs(a[d] - b[d]));
  }
  return prod;
}

Eigen::MatrixXd correlation_matrix(Kernel kernel, const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& Xn) {
  const Eigen::Index N = Xn.rows();
  Eigen::MatrixXd R(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    R(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const double r = correlation(kernel, theta, Xn.row(i), Xn.row(j));
      R(i, j) = r;
      R(j, i) = r;
    }
  }
  return R;
}

Eigen::VectorXd theta_from_log10(const Eigen::VectorXd& t) {
  Eigen::VectorXd theta(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) theta[i] = std::pow(10.0, t[i]);
  return theta;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fitting

class KrigingFitter {
public:
  KrigingFitter(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const KrigingConfig& config,
                const InputBounds& bounds, const std::optional<TrendBasis>& trend_basis)
      : config_(config), bounds_(bounds), X_raw_(X), Y_raw_(Y), trend_basis_(trend_basis) {
    validate_inputs();
    normalize_inputs();
    standardize_outputs();
    build_trend_matrix();
  }

  std::vector<KrigingModel> fit() {
    const Eigen::VectorXd best_log10 = search_theta();
    return finalize_theta(theta_from_log10(best_log10));
  }

  /// Assemble models at fixed hyperparameters (used by fit and by loaders).
  std::vector<KrigingModel> finalize_theta(const Eigen::VectorXd& theta) const;

  /// Objective for a prebuilt context; shared by fit and objective_at.
  struct Evaluation {
    double objective = std::numeric_limits<double>::infinity();
    bool ok = false;
  };

  Evaluation evaluate(const Eigen::VectorXd& theta_log10) const {
    Factorized f;
    if (!factorize(theta_from_log10(theta_log10), &f)) return {};
    Evaluation ev;
    ev.objective = objective_from(f);
    ev.ok = true;
    return ev;
  }

private:
  using Factorization = KrigingModel::Factorization;

  struct Factorized {
    Eigen::LLT<Eigen::MatrixXd> llt;
    Eigen::MatrixXd W;          // L^{-1} F
    Eigen::MatrixXd Z;          // L^{-1} Y_tilde
    Eigen::MatrixXd beta;       // p x k
    Eigen::MatrixXd residualW;  // whitened residuals, N x k
    Eigen::VectorXd sigma2;     // per output
    Eigen::LLT<Eigen::MatrixXd> WtW_llt;
    double log_det_R = 0.0;
    double nugget_used = 0.0;
  };

  void validate_inputs() {
    if (X_raw_.rows() < 2) throw IllPosedDataError("kriging needs at least 2 training points");
    if (X_raw_.rows() != Y_raw_.rows()) throw ShapeError("kriging X/y row mismatch");
    if (!X_raw_.allFinite() || !Y_raw_.allFinite())
      throw InvalidInputError("kriging training data has non-finite entries");
    if (bounds_.lower.size() == 0) {
      bounds_.lower = X_raw_.colwise().minCoeff();
      bounds_.upper = X_raw_.colwise().maxCoeff();
    }
    if (bounds_.lower.size() != X_raw_.cols() || bounds_.upper.size() != X_raw_.cols())
      throw ShapeError("kriging bounds dimension mismatch");
    if (config_.nugget < 0.0) throw ConfigError("nugget must be nonnegative");
    if (config_.n_restarts < 1) throw ConfigError("n_restarts must be >= 1");
    if (!(config_.theta_log10_lower < config_.theta_log10_upper))
      throw ConfigError("theta bounds must satisfy lower < upper");
  }

  void normalize_inputs() {
    const int n = static_cast<int>(X_raw_.cols());
    widths_.resize(n);
    for (int d = 0; d < n; ++d) {
      const double w = bounds_.upper[d] - bounds_.lower[d];
      widths_[d] = (w > 0.0) ? w : 1.0;
    }
    Xn_ = (X_raw_.rowwise() - bounds_.lower.transpose()).array().rowwise() /
          widths_.transpose().array();

    // Duplicate detection in normalized coordinates.
    for (Eigen::Index i = 0; i < Xn_.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < Xn_.rows(); ++j) {
        if ((Xn_.row(i) - Xn_.row(j)).cwiseAbs().maxCoeff() <= 1e-12) {
          const double dy = (Y_raw_.row(i) - Y_raw_.row(j)).cwiseAbs().maxCoeff();
          throw IllPosedDataError(dy > 0.0 ? "duplicate training points with conflicting outputs"
                                           : "duplicate training points");
        }
      }
    }
  }

  void standardize_outputs() {
    const Eigen::Index k = Y_raw_.cols();
    y_mean_.resize(k);
    y_std_.resize(k);
    Yt_.resize(Y_raw_.rows(), k);
    for (Eigen::Index j = 0; j < k; ++j) {
      y_mean_[j] = Y_raw_.col(j).mean();
      const double var = (Y_raw_.col(j).array() - y_mean_[j]).square().mean();
      double sd = std::sqrt(var);
      if (!(sd > 1e-15 * std::max(1.0, std::abs(y_mean_[j])))) sd = 1.0;
      y_std_[j] = sd;
      Yt_.col(j) = (Y_raw_.col(j).array() - y_mean_[j]) / sd;
    }
  }

  void build_trend_matrix() {
    const Eigen::Index N = X_raw_.rows();
    const int n = static_cast<int>(X_raw_.cols());
    switch (config_.trend) {
      case TrendKind::Constant:
        F_ = Eigen::MatrixXd::Ones(N, 1);
        break;
      case TrendKind::Linear:
        F_.resize(N, n + 1);
        F_.col(0).setOnes();
        F_.rightCols(n) = Xn_;
        break;
      case TrendKind::Custom: {
        if (!trend_basis_ || trend_basis_->size < 1 || !trend_basis_->values)
          throw ConfigError("custom trend requires a TrendBasis");
        F_.resize(N, trend_basis_->size);
        for (Eigen::Index i = 0; i < N; ++i) {
          const Eigen::VectorXd h = trend_basis_->values(X_raw_.row(i).transpose());
          if (h.size() != trend_basis_->size) throw ShapeError("trend basis size mismatch");
          F_.row(i) = h.transpose();
        }
        break;
      }
    }
    if (F_.cols() >= X_raw_.rows())
      throw IllPosedDataError("trend basis has as many terms as training points");
  }

  bool factorize(const Eigen::VectorXd& theta, Factorized* out) const {
    Eigen::MatrixXd R = correlation_matrix(config_.kernel, theta, Xn_);
    double nugget = std::max(config_.nugget, 0.0);
    while (true) {
      Eigen::MatrixXd Rn = R;
      Rn.diagonal().array() += nugget;
      Eigen::LLT<Eigen::MatrixXd> llt(Rn);
      if (llt.info() == Eigen::Success) {
        out->llt = std::move(llt);
        out->nugget_used = nugget;
        break;
      }
      if (nugget <= 0.0) {
        nugget = 1e-12;
      } else {
        nugget *= 10.0;
      }
      if (nugget > kMaxNugget) return false;
    }
    const auto& L = out->llt.matrixL();
    out->log_det_R = 0.0;
    for (Eigen::Index i = 0; i < Xn_.rows(); ++i) {
      out->log_det_R += 2.0 * std::log(out->llt.matrixLLT()(i, i));
    }
    out->W = L.solve(F_);
    out->Z = L.solve(Yt_);
    Eigen::MatrixXd WtW = out->W.transpose() * out->W;
    out->WtW_llt.compute(WtW);
    if (out->WtW_llt.info() != Eigen::Success) return false;
    out->beta = out->WtW_llt.solve(out->W.transpose() * out->Z);
    out->residualW = out->Z - out->W * out->beta;
    const Eigen::Index N = Xn_.rows();
    out->sigma2 = out->residualW.colwise().squaredNorm() / static_cast<double>(N);
    return true;
  }

  double objective_from(const Factorized& f) const {
    const double N = static_cast<double>(Xn_.rows());
    double obj = static_cast<double>(Y_raw_.cols()) * f.log_det_R;
    for (Eigen::Index j = 0; j < f.sigma2.size(); ++j) {
      obj += N * std::log(std::max(f.sigma2[j], 1e-300));
    }
    return obj;
  }

  Eigen::VectorXd search_theta() const {
    const int n = static_cast<int>(X_raw_.cols());
    const double lo = config_.theta_log10_lower;
    const double hi = config_.theta_log10_upper;

    // Restart 0 at the box center; the rest stratified per dimension so the
    // multistart covers the (often multimodal) likelihood range.
    std::vector<Eigen::VectorXd> starts;
    starts.push_back(Eigen::VectorXd::Constant(n, 0.5 * (lo + hi)));
    Rng rng(derive_seed(config_.seed, 0x7468657461ULL));
    const int extra = config_.n_restarts - 1;
    if (extra > 0) {
      std::vector<std::vector<int>> strata(static_cast<std::size_t>(n));
      for (int d = 0; d < n; ++d) strata[static_cast<std::size_t>(d)] = random_permutation(rng, extra);
      for (int r = 0; r < extra; ++r) {
        Eigen::VectorXd s(n);
        for (int d = 0; d < n; ++d) {
          const double cell = strata[static_cast<std::size_t>(d)][static_cast<std::size_t>(r)];
          s[d] = lo + (hi - lo) * (cell + uniform01(rng)) / extra;
        }
        starts.push_back(s);
      }
    }

    double best_obj = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best = starts.front();
    for (const Eigen::VectorXd& s0 : starts) {
      Eigen::VectorXd cur = s0;
      Evaluation ev = evaluate(cur);
      double cur_obj = ev.ok ? ev.objective : std::numeric_limits<double>::infinity();
      double step = 0.25 * (hi - lo);
      int sweeps = 0;
      while (step >= 1e-3 && sweeps < config_.max_search_iterations) {
        ++sweeps;
        double poll_best = cur_obj;
        Eigen::VectorXd poll_arg = cur;
        for (int d = 0; d < n; ++d) {
          for (double sgn : {+1.0, -1.0}) {
            Eigen::VectorXd cand = cur;
            cand[d] = std::clamp(cand[d] + sgn * step, lo, hi);
            if (cand[d] == cur[d]) continue;
            const Evaluation e2 = evaluate(cand);
            if (e2.ok && e2.objective < poll_best) {
              poll_best = e2.objective;
              poll_arg = cand;
            }
          }
        }
        if (poll_best < cur_obj) {
          cur_obj = poll_best;
          cur = poll_arg;
        } else {
          step *= 0.5;
        }
      }
      if (cur_obj < best_obj) {
        best_obj = cur_obj;
        best = cur;
      }
    }
    return best;
  }

  KrigingConfig config_;
  InputBounds bounds_;
  Eigen::MatrixXd X_raw_, Xn_;
  Eigen::MatrixXd Y_raw_, Yt_;
  Eigen::VectorXd y_mean_, y_std_, widths_;
  Eigen::MatrixXd F_;
  std::optional<TrendBasis> trend_basis_;
};

std::vector<KrigingModel> KrigingFitter::finalize_theta(const Eigen::VectorXd& theta) const {
  Factorized f;
  if (!factorize(theta, &f))
    throw ConditioningError("correlation matrix not SPD after nugget escalation");
  const double objective = objective_from(f);

  auto fact = std::make_shared<Factorization>();
  fact->R_llt = f.llt;
  fact->W = f.W;
  fact->WtW_llt = f.WtW_llt;
  fact->log_det_R = f.log_det_R;
  fact->nugget_used = f.nugget_used;

  std::vector<KrigingModel> models;
  const Eigen::Index k = Y_raw_.cols();
  models.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    KrigingModel m;
    m.config_ = config_;
    m.bounds_ = bounds_;
    m.X_raw_ = X_raw_;
    m.Xn_ = Xn_;
    m.y_raw_ = Y_raw_.col(j);
    m.y_mean_ = y_mean_[j];
    m.y_std_ = y_std_[j];
    m.theta_ = theta;
    m.beta_ = f.beta.col(j);
    m.sigma2_ = f.sigma2[j];
    m.objective_value_ = objective;
    m.alpha_ = f.llt.matrixL().transpose().solve(f.residualW.col(j));
    {
      // One iterative-refinement pass on (R + nugget I) alpha = y~ - F beta;
      // tightens training-point reproduction near the conditioning limit.
      Eigen::MatrixXd Rn = correlation_matrix(config_.kernel, theta, Xn_);
      Rn.diagonal().array() += f.nugget_used;
      const Eigen::VectorXd rhs = Yt_.col(j) - F_ * m.beta_;
      const Eigen::VectorXd resid = rhs - Rn * m.alpha_;
      m.alpha_ += f.llt.solve(resid);
    }
    m.fact_ = fact;
    m.trend_basis_ = trend_basis_;
    models.push_back(std::move(m));
  }
  return models;
}

KrigingModel fit_kriging(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const KrigingConfig& config) {
  return fit_kriging(X, y, config, InputBounds{});
}

KrigingModel fit_kriging(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const KrigingConfig& config, const InputBounds& bounds,
                         const std::optional<TrendBasis>& trend_basis) {
  KrigingFitter fitter(X, y, config, bounds, trend_basis);
  return std::move(fitter.fit().front());
}

std::vector<KrigingModel> fit_kriging_shared_theta(const Eigen::MatrixXd& X,
                                                   const Eigen::MatrixXd& Y,
                                                   const KrigingConfig& config,
                                                   const InputBounds& bounds) {
  if (Y.cols() < 1) throw ShapeError("shared-theta fit needs at least one output column");
  KrigingFitter fitter(X, Y, config, bounds, std::nullopt);
  return fitter.fit();
}

// ---------------------------------------------------------------------------
// Prediction

Eigen::VectorXd KrigingModel::normalize(const Eigen::VectorXd& x) const {
  Eigen::VectorXd xn(x.size());
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const double w = bounds_.upper[d] - bounds_.lower[d];
    xn[d] = (x[d] - bounds_.lower[d]) / (w > 0.0 ? w : 1.0);
  }
  return xn;
}

Eigen::VectorXd KrigingModel::correlation_vector(const Eigen::VectorXd& xn) const {
  const Eigen::Index N = Xn_.rows();
  Eigen::VectorXd r(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    r[i] = correlation(config_.kernel, theta_, xn.transpose(), Xn_.row(i));
  }
  return r;
}

Eigen::VectorXd KrigingModel::trend_at(const Eigen::VectorXd& x, const Eigen::VectorXd& xn) const {
  switch (config_.trend) {
    case TrendKind::Constant:
      return Eigen::VectorXd::Ones(1);
    case TrendKind::Linear: {
      Eigen::VectorXd h(xn.size() + 1);
      h[0] = 1.0;
      h.tail(xn.size()) = xn;
      return h;
    }
    case TrendKind::Custom:
      return trend_basis_->values(x);
  }
  throw ConfigError("unknown trend kind");
}

Prediction KrigingModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() != X_raw_.cols()) throw ShapeError("predict: input dimension mismatch");
  if (!x.allFinite()) throw InvalidInputError("predict: non-finite input");
  const Eigen::VectorXd xn = normalize(x);
  const Eigen::VectorXd r = correlation_vector(xn);
  const Eigen::VectorXd h = trend_at(x, xn);

  const double mean_std = h.dot(beta_) + r.dot(alpha_);

  const Eigen::VectorXd v = fact_->R_llt.matrixL().solve(r);
  Eigen::VectorXd u = h - fact_->W.transpose() * v;
  const double trend_term = u.dot(fact_->WtW_llt.solve(u));
  double var_std = sigma2_ * (1.0 - v.squaredNorm() + trend_term);
  if (var_std < 0.0) var_std = 0.0;  // roundoff clamp

  return Prediction{y_mean_ + y_std_ * mean_std, y_std_ * y_std_ * var_std};
}

Eigen::VectorXd KrigingModel::predict_mean_gradient(const Eigen::VectorXd& x) const {
  if (x.size() != X_raw_.cols()) throw ShapeError("gradient: input dimension mismatch");
  if (!x.allFinite()) throw InvalidInputError("gradient: non-finite input");
  const int n = input_dim();
  const Eigen::VectorXd xn = normalize(x);
  const Eigen::Index N = Xn_.rows();

  // d mean / d x = y_std * (J_h^T beta + J_r^T alpha), chain rule through the
  // [0,1]^n normalization.
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);

  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::RowVectorXd diff = xn.transpose() - Xn_.row(i);
    if (config_.kernel == Kernel::SquaredExponential) {
      double s = 0.0;
      for (int d = 0; d < n; ++d) s += theta_[d] * diff[d] * diff[d];
      const double r = std::exp(-s);
      for (int d = 0; d < n; ++d) grad[d] += alpha_[i] * (-2.0 * theta_[d] * diff[d]) * r;
    } else {
      // Product Matern 5/2: dr/ddelta_d = r * f'_d / f_d.
      Eigen::VectorXd fbuf(n);
      double r = 1.0;
      for (int d = 0; d < n; ++d) {
        fbuf[d] = matern52_factor(kSqrt5 * theta_[d] * std::abs(diff[d]));
        r *= fbuf[d];
      }
      for (int d = 0; d < n; ++d) {
        const double a = kSqrt5 * theta_[d];
        const double t = std::abs(diff[d]);
        const double fprime = -(a * a * diff[d] / 3.0) * (1.0 + a * t) * std::exp(-a * t);
        grad[d] += alpha_[i] * (fbuf[d] != 0.0 ? r / fbuf[d] * fprime : 0.0);
      }
    }
  }

  // Trend contribution.
  switch (config_.trend) {
    case TrendKind::Constant:
      break;
    case TrendKind::Linear:
      grad += beta_.tail(n);
      break;
    case TrendKind::Custom: {
      if (!trend_basis_->gradients) throw ConfigError("custom trend lacks gradients");
      const Eigen::MatrixXd Jh = trend_basis_->gradients(x);  // p x n, original coords
      // Custom-basis jacobians are already in original coordinates; add after
      // the normalized-coordinate chain rule below.
      Eigen::VectorXd out = Jh.transpose() * beta_;
      for (int d = 0; d < n; ++d) {
        const double w = bounds_.upper[d] - bounds_.lower[d];
        grad[d] /= (w > 0.0 ? w : 1.0);
      }
      return y_std_ * (grad + out);
    }
  }
  for (int d = 0; d < n; ++d) {
    const double w = bounds_.upper[d] - bounds_.lower[d];
    grad[d] /= (w > 0.0 ? w : 1.0);
  }
  return y_std_ * grad;
}

double KrigingModel::nugget_used() const { return fact_->nugget_used; }

double KrigingModel::objective_at(const Eigen::VectorXd& theta_log10) const {
  KrigingFitter fitter(X_raw_, y_raw_, config_, bounds_, trend_basis_);
  const auto ev = fitter.evaluate(theta_log10);
  return ev.ok ? ev.objective : std::numeric_limits<double>::infinity();
}

Prediction predict(const KrigingModel& model, const Eigen::VectorXd& x) { return model.predict(x); }

Eigen::VectorXd predict_gradient(const KrigingModel& model, const Eigen::VectorXd& x) {
  return model.predict_mean_gradient(x);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {
constexpr std::array<char, 8> kKrigingMagic = {'M', 'F', 'P', 'O', 'D', 'K', 'M', '\0'};
constexpr std::uint32_t kKrigingVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ostream& out, double v) { out.write(reinterpret_cast<const char*>(&v), 8); }
void put_vec(std::ostream& out, const Eigen::VectorXd& v) {
  put_u32(out, static_cast<std::uint32_t>(v.size()));
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
}
std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::istream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
Eigen::VectorXd get_vec(std::istream& in) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(get_u32(in)));
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
  return v;
}
}  // namespace

void save_kriging(const std::filesystem::path& path, const KrigingModel& model) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(kKrigingMagic.data(), 8);
  put_u32(out, kKrigingVersion);
  put_u32(out, static_cast<std::uint32_t>(model.config().kernel));
  put_u32(out, static_cast<std::uint32_t>(model.config().trend));
  put_u32(out, model.trend_basis_ ? static_cast<std::uint32_t>(model.trend_basis_->size) : 0);
  const Eigen::Index N = model.sample_count();
  const int n = model.input_dim();
  put_u32(out, static_cast<std::uint32_t>(N));
  put_u32(out, static_cast<std::uint32_t>(n));
  put_f64(out, model.config_.theta_log10_lower);
  put_f64(out, model.config_.theta_log10_upper);
  put_f64(out, model.config_.nugget);
  put_u32(out, static_cast<std::uint32_t>(model.config_.n_restarts));
  put_u32(out, static_cast<std::uint32_t>(model.config_.max_search_iterations));
  put_f64(out, static_cast<double>(model.config_.seed));
  put_vec(out, model.bounds_.lower);
  put_vec(out, model.bounds_.upper);
  put_vec(out, model.theta_);
  put_vec(out, model.beta_);
  put_f64(out, model.sigma2_);
  put_f64(out, model.y_mean_);
  put_f64(out, model.y_std_);
  put_f64(out, model.objective_value_);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (int d = 0; d < n; ++d) put_f64(out, model.X_raw_(i, d));
  }
  put_vec(out, model.y_raw_);
  if (!out) throw IoError("failed writing " + path.string());
}

KrigingModel load_kriging(const std::filesystem::path& path,
                          const std::optional<TrendBasis>& trend_basis) {
  std::ifstream in(path, std::ios::in | std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), 8);
  if (!in || magic != kKrigingMagic) throw IoError("bad magic for kriging model");
  if (get_u32(in) != kKrigingVersion) throw IoError("unsupported kriging model version");

  KrigingConfig config;
  config.kernel = static_cast<Kernel>(get_u32(in));
  config.trend = static_cast<TrendKind>(get_u32(in));
  const std::uint32_t trend_size = get_u32(in);
  const Eigen::Index N = static_cast<Eigen::Index>(get_u32(in));
  const int n = static_cast<int>(get_u32(in));
  config.theta_log10_lower = get_f64(in);
  config.theta_log10_upper = get_f64(in);
  config.nugget = get_f64(in);
  config.n_restarts = static_cast<int>(get_u32(in));
  config.max_search_iterations = static_cast<int>(get_u32(in));
  config.seed = static_cast<std::uint64_t>(get_f64(in));

  InputBounds bounds;
  bounds.lower = get_vec(in);
  bounds.upper = get_vec(in);
  const Eigen::VectorXd theta = get_vec(in);
  const Eigen::VectorXd beta = get_vec(in);
  const double sigma2 = get_f64(in);
  const double y_mean = get_f64(in);
  const double y_std = get_f64(in);
  const double objective = get_f64(in);
  Eigen::MatrixXd X(N, n);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (int d = 0; d < n; ++d) X(i, d) = get_f64(in);
  }
  const Eigen::VectorXd y = get_vec(in);
  if (!in) throw IoError("truncated kriging model: " + path.string());

  if (config.trend == TrendKind::Custom) {
    if (!trend_basis) throw ConfigError("custom-trend model requires a rebound TrendBasis on load");
    if (trend_basis->size != static_cast<int>(trend_size))
      throw ConfigError("rebound trend basis size differs from saved model");
  }

  // Rebuild the factorization at the stored hyperparameters; beta/sigma2 are
  // recomputed from the data and match what was saved up to roundoff.
  KrigingFitter fitter(X, y, config, bounds, trend_basis);
  KrigingModel model = std::move(fitter.finalize_theta(theta).front());
  (void)beta;
  (void)sigma2;
  (void)y_mean;
  (void)y_std;
  (void)objective;
  return model;
}

}  // namespace mfpod
