#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace qbic {

// splitmix64 step; used to mix seeds and derive child streams.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Inverse standard-normal CDF (Wichura/Acklam rational approximation with one
// Halley refinement; absolute error < 1e-14 over the open unit interval).
double normal_quantile(double p);

// Seeded 64-bit generator with documented stream splitting: the stream for
// replication r of an experiment with master seed s is Rng(mix_seed(s, r)).
// Normal draws use the inverse-CDF transform so every stream is a pure
// function of its seed, independent of platform library internals.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  static Rng child(std::uint64_t master, std::uint64_t index) {
    return Rng(mix_seed(master, index));
  }

  // uniform on [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    // uniform on (0,1): shift the 53-bit draw off zero
    const double u = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    return normal_quantile(u);
  }

  Eigen::VectorXd normal_vector(Eigen::Index k) {
    Eigen::VectorXd v(k);
    for (Eigen::Index i = 0; i < k; ++i) v[i] = normal();
    return v;
  }

  int bernoulli(double p) { return uniform() < p ? 1 : 0; }

private:
  std::mt19937_64 gen_;
};

}  // namespace qbic
