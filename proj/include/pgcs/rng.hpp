#ifndef PGCS_RNG_HPP
#define PGCS_RNG_HPP

#include <cstdint>

#include <Eigen/Core>

namespace pgcs {

// Counter-based SplitMix64 generator with independent streams.
//
// The state is a pure function of (seed, stream, draw index), so results are
// reproducible across platforms and runs. Normal variates use Box-Muller on
// the 53-bit uniform output; matrices are filled column by column. The exact
// protocol is documented in the README.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double next_double();
  // Standard normal via Box-Muller (pairs are cached).
  double next_normal();

  Eigen::VectorXd normal_vector(Eigen::Index n);
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);
  // Uniform on the unit sphere in R^n.
  Eigen::VectorXd unit_sphere(Eigen::Index n);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pgcs

#endif
