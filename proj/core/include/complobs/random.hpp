#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "complobs/types.hpp"

namespace complobs {

// Reproducible stream keyed by (master seed, stream index). Sample i of a
// sweep always draws from stream (seed, i), so runs are identical no matter
// how trials are partitioned. Gaussian variates are produced by an explicit
// Box-Muller transform on raw 53-bit uniforms, keeping the byte-level output
// independent of the standard library's distribution internals.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();   // standard normal

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-random unitary: QR of a Gaussian matrix with the phase convention
// fixed so R's diagonal is positive.
Matrix random_unitary(std::size_t dim, RandomStream& rng);

// Random rank-`rank` density operator (marginal of a Haar-random pure state).
Matrix random_density(std::size_t dim, std::size_t rank, RandomStream& rng);

// Random n-outcome POVM: Gaussian Wishart elements normalized by the
// inverse square root of their sum.
std::vector<Matrix> random_povm_elements(std::size_t dim, std::size_t n, RandomStream& rng);

}  // namespace complobs
