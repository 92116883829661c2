#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "mfpod/kriging.hpp"
#include "mfpod/errors.hpp"
#include "mfpod/rng.hpp"

using namespace mfpod;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd column(std::initializer_list<double> xs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) m(i++, 0) = x;
  return m;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// Central finite differences of the predicted mean, h in normalized units.
Eigen::VectorXd fd_gradient(const KrigingModel& m, const Eigen::VectorXd& x, double h_norm = 1e-6) {
  const int n = m.input_dim();
  Eigen::VectorXd g(n);
  for (int d = 0; d < n; ++d) {
    const double width = m.bounds().upper[d] - m.bounds().lower[d];
    const double h = h_norm * (width > 0.0 ? width : 1.0);
    Eigen::VectorXd xp = x, xm = x;
    xp[d] += h;
    xm[d] -= h;
    g[d] = (m.predict(xp).mean - m.predict(xm).mean) / (2.0 * h);
  }
  return g;
}

double gradient_rel_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& fd) {
  const double scale = std::max(fd.cwiseAbs().maxCoeff(), 1e-8);
  return (analytic - fd).cwiseAbs().maxCoeff() / scale;
}

KrigingModel fit_sin_model(Kernel kernel = Kernel::SquaredExponential) {
  Eigen::MatrixXd X(8, 1);
  Eigen::VectorXd y(8);
  for (int i = 0; i < 8; ++i) {
    X(i, 0) = i / 7.0;
    y[i] = std::sin(2.0 * kPi * X(i, 0));
  }
  KrigingConfig cfg;
  cfg.kernel = kernel;
  cfg.seed = 11;
  return fit_kriging(X, y, cfg);
}

}  // namespace

TEST_CASE("constant outputs predict the constant everywhere") {
  Eigen::MatrixXd X(5, 2);
  X << 0, 0, 0.2, 0.7, 0.5, 0.1, 0.8, 0.9, 1, 0.4;
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(5, 7.25);
  const KrigingModel m = fit_kriging(X, y, KrigingConfig{});
  for (double a : {0.05, 0.3, 0.77}) {
    for (double b : {0.1, 0.5, 0.95}) {
      CHECK(m.predict(vec({a, b})).mean == doctest::Approx(7.25).epsilon(1e-8));
    }
  }
  CHECK(m.predict_mean_gradient(vec({0.4, 0.3})).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("training points are reproduced at tiny nugget") {
  const Eigen::MatrixXd X = column({0.0, 1.0, 0.5});
  const Eigen::VectorXd y = vec({0.0, 1.0, 0.25});
  KrigingConfig cfg;
  cfg.nugget = 1e-10;
  const KrigingModel m = fit_kriging(X, y, cfg);
  for (int i = 0; i < 3; ++i) {
    const Prediction p = m.predict(X.row(i).transpose());
    CHECK(std::abs(p.mean - y[i]) < 1e-6);
    CHECK(p.variance >= 0.0);
    CHECK(p.variance < 1e-8 * m.process_variance() + 1e-8);
  }
}

TEST_CASE("sin benchmark fits within 0.05 on a dense grid") {
  for (Kernel kernel : {Kernel::SquaredExponential, Kernel::Matern52}) {
    const KrigingModel m = fit_sin_model(kernel);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      worst = std::max(worst, std::abs(m.predict(vec({x})).mean - std::sin(2.0 * kPi * x)));
    }
    CAPTURE(static_cast<int>(kernel));
    CHECK(worst < 0.05);
  }
}

TEST_CASE("far-field predictions revert to the trend and process variance") {
  // White-noise outputs drive the fitted length scale to (numerical)
  // independence, so the GLS trend term is negligible and the textbook
  // far-field limits hold tightly.
  Rng rng(3);
  const int N = 400;
  Eigen::MatrixXd X(N, 1);
  Eigen::VectorXd y(N);
  for (int i = 0; i < N; ++i) {
    X(i, 0) = i / (N - 1.0);
    y[i] = normal01(rng);
  }
  KrigingConfig cfg;
  cfg.seed = 5;
  cfg.theta_log10_upper = 6.0;
  cfg.n_restarts = 4;
  InputBounds bounds{vec({0.0}), vec({1.0})};
  const KrigingModel m = fit_kriging(X, y, cfg, bounds);

  // >= 10 length scales away: correlation is numerically zero.
  const double ell = 1.0 / std::sqrt(m.theta()[0]);
  const double x_far = 1.0 + 12.0 * ell;
  const Prediction p = m.predict(vec({x_far}));
  const double trend = m.output_mean() + m.output_std() * m.beta()[0];
  CHECK(std::abs(p.mean - trend) < 0.01 * std::max(1.0, std::abs(trend)));
  CHECK(std::abs(p.variance - m.process_variance()) < 0.01 * m.process_variance());
}

TEST_CASE("gradients match finite differences") {
  SUBCASE("constant model has zero gradient") {
    const Eigen::MatrixXd X = column({0.0, 0.5, 1.0});
    const KrigingModel m = fit_kriging(X, Eigen::VectorXd::Constant(3, 4.0), KrigingConfig{});
    CHECK(m.predict_mean_gradient(vec({0.3})).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("sin model gradient at the crest is nearly zero") {
    const KrigingModel m = fit_sin_model();
    CHECK(std::abs(m.predict_mean_gradient(vec({0.25}))[0]) < 0.1);
  }

  SUBCASE("random models agree with central differences") {
    Rng rng(19);
    for (int rep = 0; rep < 12; ++rep) {
      const Kernel kernel = (rep % 2 == 0) ? Kernel::SquaredExponential : Kernel::Matern52;
      const int n = 1 + static_cast<int>(uniform_index(rng, 3));
      const int N = 6 + static_cast<int>(uniform_index(rng, 10));
      Eigen::MatrixXd X(N, n);
      Eigen::VectorXd y(N);
      for (int i = 0; i < N; ++i) {
        for (int d = 0; d < n; ++d) X(i, d) = uniform01(rng);
        y[i] = std::sin(3.0 * X.row(i).sum()) + 0.2 * X(i, 0);
      }
      KrigingConfig cfg;
      cfg.kernel = kernel;
      cfg.seed = rep;
      cfg.n_restarts = 2;
      InputBounds bounds{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
      const KrigingModel m = fit_kriging(X, y, cfg, bounds);
      for (int q = 0; q < 4; ++q) {
        Eigen::VectorXd x(n);
        for (int d = 0; d < n; ++d) x[d] = uniform01(rng);
        const Eigen::VectorXd ga = m.predict_mean_gradient(x);
        const Eigen::VectorXd gf = fd_gradient(m, x);
        CHECK(gradient_rel_error(ga, gf) <= 1e-4);
      }
    }
  }
}

TEST_CASE("interpolation property on random small designs") {
  // 1-d squared-exponential fits of very smooth targets sit at the intrinsic
  // nugget-smoothing limit (~1e-6 at nugget 1e-10), so the 1-d draws use the
  // Matern kernel; multi-d designs exercise both.
  Rng rng(31);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 2));
    const int N = 5 + static_cast<int>(uniform_index(rng, 8));
    Eigen::MatrixXd X(N, n);
    Eigen::VectorXd y(N);
    for (int i = 0; i < N; ++i) {
      for (int d = 0; d < n; ++d) X(i, d) = uniform01(rng);
      y[i] = std::exp(-X.row(i).squaredNorm()) + X(i, 0);
    }
    KrigingConfig cfg;
    cfg.kernel = (n == 1 || rep % 2 == 1) ? Kernel::Matern52 : Kernel::SquaredExponential;
    cfg.nugget = 1e-10;
    cfg.seed = 100 + rep;
    const KrigingModel m = fit_kriging(X, y, cfg);
    for (int i = 0; i < N; ++i) {
      CHECK(std::abs(m.predict(X.row(i).transpose()).mean - y[i]) <= 1e-6);
    }
  }
}

TEST_CASE("translation and scale equivariance") {
  Rng rng(43);
  const int N = 14;
  Eigen::MatrixXd X(N, 2);
  Eigen::VectorXd y(N);
  for (int i = 0; i < N; ++i) {
    X(i, 0) = uniform01(rng);
    X(i, 1) = uniform01(rng);
    y[i] = std::sin(2.0 * X(i, 0)) * std::cos(X(i, 1));
  }
  KrigingConfig cfg;
  cfg.seed = 7;
  const InputBounds b0{vec({0.0, 0.0}), vec({1.0, 1.0})};
  const KrigingModel m0 = fit_kriging(X, y, cfg, b0);

  // Affine map x -> 3x + 10 with matching bounds.
  Eigen::MatrixXd Xs = (3.0 * X).array() + 10.0;
  const InputBounds b1{vec({10.0, 10.0}), vec({13.0, 13.0})};
  const KrigingModel m1 = fit_kriging(Xs, y, cfg, b1);

  for (int q = 0; q < 10; ++q) {
    Eigen::VectorXd x(2);
    x << uniform01(rng), uniform01(rng);
    const Eigen::VectorXd xs = (3.0 * x).array() + 10.0;
    CHECK(m0.predict(x).mean == doctest::Approx(m1.predict(xs).mean).epsilon(1e-8));
    CHECK(m0.predict(x).variance ==
          doctest::Approx(m1.predict(xs).variance).epsilon(1e-8).scale(m0.process_variance()));
  }
}

TEST_CASE("fitted theta beats random thetas in concentrated likelihood") {
  Rng rng(53);
  Eigen::MatrixXd X(20, 2);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) {
    X(i, 0) = uniform01(rng);
    X(i, 1) = uniform01(rng);
    y[i] = std::sin(4.0 * X(i, 0)) + X(i, 1) * X(i, 1);
  }
  KrigingConfig cfg;
  cfg.seed = 71;
  const KrigingModel m = fit_kriging(X, y, cfg);
  const double fitted = m.fitted_objective();
  for (int t = 0; t < 32; ++t) {
    Eigen::VectorXd tl(2);
    tl << uniform_in(rng, cfg.theta_log10_lower, cfg.theta_log10_upper),
        uniform_in(rng, cfg.theta_log10_lower, cfg.theta_log10_upper);
    CHECK(fitted <= m.objective_at(tl) + 1e-9);
  }
}

TEST_CASE("duplicate training points are rejected") {
  Eigen::MatrixXd X(3, 1);
  X << 0.5, 0.5, 1.0;
  CHECK_THROWS_AS(fit_kriging(X, vec({1.0, 2.0, 3.0}), KrigingConfig{}), IllPosedDataError);
  CHECK_THROWS_AS(fit_kriging(X, vec({1.0, 1.0, 3.0}), KrigingConfig{}), IllPosedDataError);
}

TEST_CASE("non-finite prediction inputs are rejected") {
  const KrigingModel m = fit_sin_model();
  CHECK_THROWS_AS(m.predict(vec({std::numeric_limits<double>::quiet_NaN()})), InvalidInputError);
  CHECK_THROWS_AS(m.predict_mean_gradient(vec({std::numeric_limits<double>::infinity()})),
                  InvalidInputError);
}

TEST_CASE("shared-theta fit ties spectra together and matches outputs") {
  Rng rng(61);
  const int N = 18;
  Eigen::MatrixXd X(N, 2);
  Eigen::MatrixXd Y(N, 3);
  for (int i = 0; i < N; ++i) {
    X(i, 0) = uniform01(rng);
    X(i, 1) = uniform01(rng);
    Y(i, 0) = std::sin(3.0 * X(i, 0));
    Y(i, 1) = std::cos(2.0 * X(i, 1));
    Y(i, 2) = X.row(i).prod();
  }
  KrigingConfig cfg;
  cfg.seed = 3;
  const InputBounds bounds{vec({0.0, 0.0}), vec({1.0, 1.0})};
  const auto models = fit_kriging_shared_theta(X, Y, cfg, bounds);
  REQUIRE(models.size() == 3);
  CHECK(models[0].theta() == models[1].theta());
  CHECK(models[1].theta() == models[2].theta());
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < N; ++i) {
      CHECK(std::abs(models[static_cast<std::size_t>(j)].predict(X.row(i).transpose()).mean -
                     Y(i, j)) < 1e-4);
    }
  }
}

TEST_CASE("model serialization round-trips predictions") {
  namespace fs = std::filesystem;
  const KrigingModel m = fit_sin_model(Kernel::Matern52);
  const fs::path dir = fs::temp_directory_path() / "mfpod_km_test";
  fs::create_directories(dir);
  const fs::path p = dir / "model.km";
  save_kriging(p, m);
  const KrigingModel l = load_kriging(p);
  CHECK(l.theta() == m.theta());
  Rng rng(9);
  for (int q = 0; q < 20; ++q) {
    const Eigen::VectorXd x = vec({uniform01(rng)});
    CHECK(l.predict(x).mean == doctest::Approx(m.predict(x).mean).epsilon(1e-12));
    CHECK(l.predict(x).variance == doctest::Approx(m.predict(x).variance).epsilon(1e-10).scale(1.0));
  }
}
