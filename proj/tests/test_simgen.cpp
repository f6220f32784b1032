#include <doctest.h>

#include <cmath>

#include "qbic/simgen.hpp"

using namespace qbic;

TEST_CASE("AR covariates: first row and zero-innovation recursion") {
  const int n = 6;
  Matrix x = gen_covariates_ar_with(n, Matrix::Zero(n - 1, 3));
  CHECK(x(0, 0) == 1.0);
  CHECK(x(0, 1) == 1.0);
  CHECK(x(0, 2) == 0.0);
  CHECK(x(0, 3) == -1.0);
  // with zero innovations each series is a pure geometric decay
  for (int j = 1; j < n; ++j) {
    CHECK(x(j, 0) == 1.0);
    CHECK(x(j, 1) == doctest::Approx(std::pow(0.5, j)));
    CHECK(x(j, 2) == doctest::Approx(0.0));
    CHECK(x(j, 3) == doctest::Approx(-std::pow(0.8, j)));
  }
  // unit innovations feed through additively
  Matrix ones = Matrix::Ones(1, 3);
  Matrix x2 = gen_covariates_ar_with(2, ones);
  CHECK(x2(1, 1) == doctest::Approx(0.5 * 1.0 + 1.0));
  CHECK(x2(1, 2) == doctest::Approx(-0.7 * 0.0 + 1.0));
  CHECK(x2(1, 3) == doctest::Approx(0.8 * -1.0 + 1.0));
}

TEST_CASE("AR innovations have the stated covariance") {
  Rng rng(2024);
  const int n = 20000;
  Matrix x = gen_covariates_ar(n, rng);
  // recover innovations from the recursion and check sample covariance
  static const double coef[3] = {0.5, -0.7, 0.8};
  Matrix innov(n - 1, 3);
  for (int j = 1; j < n; ++j)
    for (int k = 0; k < 3; ++k)
      innov(j - 1, k) = x(j, k + 1) - coef[k] * x(j - 1, k + 1);
  Matrix centered = innov.rowwise() - innov.colwise().mean();
  Matrix cov = centered.transpose() * centered / double(n - 2);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      CHECK(cov(k, l) == doctest::Approx(std::pow(0.5, std::abs(k - l))).epsilon(0.05));
}

TEST_CASE("AR series approach their stationary variance") {
  Rng rng(99);
  const int n = 50000;
  Matrix x = gen_covariates_ar(n, rng);
  // var of an AR(1) with unit innovation variance is 1/(1 - a^2)
  const double a[3] = {0.5, -0.7, 0.8};
  for (int k = 0; k < 3; ++k) {
    const auto col = x.col(k + 1).tail(n - 500);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / double(col.size() - 1);
    CHECK(var == doctest::Approx(1.0 / (1.0 - a[k] * a[k])).epsilon(0.10));
  }
}

TEST_CASE("lag chain start, recursion, and lag layout") {
  Vector innov = Vector::Zero(3);
  Matrix x = gen_lag_chain_with(4, 3, innov);
  // Z_1 = 1, then 0.6-decay with zero innovations; pre-history is zero
  CHECK(x(0, 0) == 1.0);
  CHECK(x(0, 1) == 0.0);
  CHECK(x(0, 2) == 0.0);
  CHECK(x(1, 0) == doctest::Approx(0.6));
  CHECK(x(1, 1) == 1.0);
  CHECK(x(1, 2) == 0.0);
  CHECK(x(2, 0) == doctest::Approx(0.36));
  CHECK(x(2, 1) == doctest::Approx(0.6));
  CHECK(x(2, 2) == 1.0);
  CHECK(x(3, 2) == doctest::Approx(0.6));

  Vector innov2(2);
  innov2 << 0.5, -0.25;
  Matrix x2 = gen_lag_chain_with(3, 2, innov2);
  CHECK(x2(1, 0) == doctest::Approx(0.6 * 1.0 + 0.5));
  CHECK(x2(2, 0) == doctest::Approx(0.6 * x2(1, 0) - 0.25));
  CHECK(x2(2, 1) == doctest::Approx(x2(1, 0)));
}

TEST_CASE("responses are Bernoulli with the stated link") {
  Rng rng(7);
  const int n = 40000;
  Matrix X = Matrix::Ones(n, 1);
  Vector theta(1);
  theta << 0.8;
  Vector yl = gen_response(X, theta, Link::Logit, rng);
  Vector yp = gen_response(X, theta, Link::Probit, rng);
  for (int j = 0; j < n; ++j) {
    CHECK((yl[j] == 0.0 || yl[j] == 1.0));
    CHECK((yp[j] == 0.0 || yp[j] == 1.0));
  }
  CHECK(yl.mean() == doctest::Approx(sigmoid(0.8)).epsilon(0.02));
  CHECK(yp.mean() == doctest::Approx(probit_cdf(0.8)).epsilon(0.02));
}

TEST_CASE("probit_cdf reference values") {
  CHECK(probit_cdf(0.0) == doctest::Approx(0.5));
  CHECK(probit_cdf(1.96) == doctest::Approx(0.9750021).epsilon(1e-6));
  CHECK(probit_cdf(-1.0) + probit_cdf(1.0) == doctest::Approx(1.0));
}

TEST_CASE("make_dataset shapes, names, and determinism") {
  DgpSpec ar;
  ar.scenario = Scenario::LogitAR;
  ar.n = 50;
  ar.theta_star = (Vector(4) << 0, -3, 0, 1).finished();
  ar.seed = 42;
  Dataset d1 = make_dataset(ar);
  Dataset d2 = make_dataset(ar);
  CHECK(d1.n() == 50);
  CHECK(d1.p() == 4);
  CHECK(d1.column_names == std::vector<std::string>{"x1", "x2", "x3", "x4"});
  CHECK((d1.X - d2.X).norm() == 0.0);
  CHECK((d1.y - d2.y).norm() == 0.0);
  ar.seed = 43;
  Dataset d3 = make_dataset(ar);
  CHECK((d1.X - d3.X).norm() > 0.0);

  DgpSpec lc;
  lc.scenario = Scenario::LagChain;
  lc.n = 30;
  lc.theta_star = (Vector(4) << 3, -1, 2, 1).finished();
  lc.lag_p = 4;
  lc.design_cols = 7;
  Dataset dl = make_dataset(lc);
  CHECK(dl.p() == 7);
  CHECK(dl.X(0, 0) == 1.0);
  CHECK(dl.column_names.front() == "z_lag0");

  // scenario parsing accepts both spellings
  CHECK(scenario_from_string("logit_ar") == Scenario::LogitAR);
  CHECK(scenario_from_string("paper3") == Scenario::LagChain);
  CHECK_THROWS_AS(scenario_from_string("nope"), Error);

  // dimension validation
  DgpSpec bad = ar;
  bad.theta_star = Vector::Zero(3);
  CHECK_THROWS_AS(make_dataset(bad), Error);
}
