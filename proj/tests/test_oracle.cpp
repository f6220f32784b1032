#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qbic/oracle.hpp"
#include "qbic/simgen.hpp"

using namespace qbic;

namespace {

CandidateModel model_cols(std::vector<int> cols, Family f) {
  CandidateModel m;
  m.columns = std::move(cols);
  m.family = f;
  return m;
}

Dataset gaussian_data(std::mt19937& gen, int n, int p) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Dataset d;
  d.X = Matrix(n, p);
  d.y = Vector(n);
  for (int j = 0; j < n; ++j) {
    d.X(j, 0) = 1.0;
    for (int k = 1; k < p; ++k) d.X(j, k) = nd(gen);
    d.y[j] = 0.3 * d.X.row(j).sum() + nd(gen);
  }
  return d;
}

Dataset logit_data(std::mt19937& gen, int n, int p) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Dataset d;
  d.X = Matrix(n, p);
  d.y = Vector(n);
  for (int j = 0; j < n; ++j) {
    d.X(j, 0) = 1.0;
    for (int k = 1; k < p; ++k) d.X(j, k) = nd(gen);
    d.y[j] = (ud(gen) < sigmoid(0.5 * d.X.row(j).sum())) ? 1.0 : 0.0;
  }
  return d;
}

}  // namespace

TEST_CASE("gauss_legendre nodes integrate polynomials exactly") {
  std::vector<double> nodes, weights;
  gauss_legendre(16, nodes, weights);
  CHECK(std::accumulate(weights.begin(), weights.end(), 0.0) == doctest::Approx(2.0));
  // degree-2n-1 exactness: int_{-1}^{1} x^k dx
  for (int k = 1; k <= 20; ++k) {
    double s = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * std::pow(nodes[i], k);
    const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1.0);
    CHECK(s == doctest::Approx(exact).epsilon(1e-12));
  }
  // symmetry
  for (size_t i = 0; i < nodes.size() / 2; ++i) {
    CHECK(nodes[i] == doctest::Approx(-nodes[nodes.size() - 1 - i]));
    CHECK(weights[i] == doctest::Approx(weights[nodes.size() - 1 - i]));
  }
}

TEST_CASE("closed-form marginal: single-observation hand value") {
  // y = 0, x = 1, gaussian family, N(0,1) prior:
  // int exp(-t^2/2) phi(t) dt = 1/sqrt(2)
  Dataset d;
  d.y = Vector::Zero(1);
  d.X = Matrix::Ones(1, 1);
  CandidateModel m = model_cols({0}, Family::Gaussian);
  Prior prior = Prior::gaussian(Vector::Zero(1), Matrix::Identity(1, 1));
  CHECK(gaussian_log_marginal_closed_form(d, m, prior) ==
        doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("quadrature reproduces the gaussian closed form") {
  std::mt19937 gen(17);
  for (int p = 1; p <= 3; ++p) {
    Dataset d = gaussian_data(gen, 100, p);
    CandidateModel m;
    m.family = Family::Gaussian;
    for (int k = 0; k < p; ++k) m.columns.push_back(k);
    Prior prior = Prior::gaussian(Vector::Zero(p), 4.0 * Matrix::Identity(p, p));
    const double exact = gaussian_log_marginal_closed_form(d, m, prior);
    QuadratureSpec spec;
    const double quad = log_marginal_quadrature(d, m, prior, spec);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("uniform box of doubled width lowers the marginal by p log 2") {
  std::mt19937 gen(21);
  for (int p = 1; p <= 2; ++p) {
    Dataset d = logit_data(gen, 200, p);
    CandidateModel m;
    for (int k = 0; k < p; ++k) m.columns.push_back(k);
    QuadratureSpec spec;
    const double small = log_marginal_quadrature(d, m, Prior::uniform_box(10.0), spec);
    const double wide = log_marginal_quadrature(d, m, Prior::uniform_box(20.0), spec);
    // all posterior mass sits well inside both boxes
    CHECK(small - wide == doctest::Approx(p * std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("laplace expansion identity against the raw fit quantities") {
  std::mt19937 gen(29);
  Dataset d = logit_data(gen, 300, 2);
  CandidateModel m = model_cols({0, 1}, Family::BernoulliLogit);
  FitResult fit = fit_qmle(d, m, FitConfig{});
  REQUIRE(fit.converged);
  const double B = 50.0;
  const double lap = laplace_expansion(fit, Prior::uniform_box(B));
  const double expected = fit.loglik + std::log(2.0 * M_PI) -
                          0.5 * logdet_psd(fit.info_hat) - 2.0 * std::log(2.0 * B);
  CHECK(lap == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("quadrature approaches the laplace expansion as n grows") {
  std::mt19937 gen(37);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (int n : {100, 800, 6400}) {
    Dataset d = logit_data(gen, n, 2);
    CandidateModel m = model_cols({0, 1}, Family::BernoulliLogit);
    FitResult fit = fit_qmle(d, m, FitConfig{});
    REQUIRE(fit.converged);
    Prior prior = Prior::uniform_box(50.0);
    const double quad = log_marginal_quadrature(d, m, prior, QuadratureSpec{});
    const double gap = std::abs(quad - laplace_expansion(fit, prior));
    CHECK(gap < prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.01);
}

TEST_CASE("quadrature is stable in grid size and radius") {
  std::mt19937 gen(41);
  Dataset d = logit_data(gen, 250, 2);
  CandidateModel m = model_cols({0, 1}, Family::BernoulliLogit);
  Prior prior = Prior::uniform_box(50.0);
  QuadratureSpec coarse, fine, near, far;
  coarse.points_per_dim = 20;
  fine.points_per_dim = 64;
  const double a = log_marginal_quadrature(d, m, prior, coarse);
  const double b = log_marginal_quadrature(d, m, prior, fine);
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
  near.radius_in_se = 6.0;
  far.radius_in_se = 10.0;
  const double c = log_marginal_quadrature(d, m, prior, near);
  const double e = log_marginal_quadrature(d, m, prior, far);
  CHECK(std::abs(c - e) < 1e-7);
}

TEST_CASE("oracle error paths") {
  std::mt19937 gen(43);
  Dataset d = logit_data(gen, 120, 4);
  CandidateModel m = model_cols({0, 1, 2, 3}, Family::BernoulliLogit);
  CHECK_THROWS_AS(
      log_marginal_quadrature(d, m, Prior::uniform_box(50.0), QuadratureSpec{}),
      UnsupportedDimension);

  QuadratureSpec bad;
  bad.points_per_dim = 5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = QuadratureSpec{};
  bad.radius_in_se = 2.0;
  CHECK_THROWS_AS(bad.validate(), Error);

  // theta_hat outside a tiny prior box
  Dataset biased = logit_data(gen, 400, 1);
  biased.y.setOnes();
  biased.y.head(40).setZero();  // ybar = 0.9 -> theta_hat ~ 2.2
  CandidateModel m1 = model_cols({0}, Family::BernoulliLogit);
  FitResult fit = fit_qmle(biased, m1, FitConfig{});
  REQUIRE(fit.converged);
  CHECK_THROWS_AS(laplace_expansion(fit, Prior::uniform_box(0.5)), PriorSupportError);

  CHECK_THROWS_AS(laplace_expansion(FitResult{}, Prior::uniform_box(50.0)), InvalidFit);
  CHECK_THROWS_AS(Prior::uniform_box(-1.0), Error);
  CHECK_THROWS_AS(Prior::gaussian(Vector::Zero(2), -Matrix::Identity(2, 2)), Error);
}
