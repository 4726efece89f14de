#include "complobs/random.hpp"

#include <cmath>
#include <numbers>

#include "complobs/linalg.hpp"

#include <Eigen/QR>

namespace complobs {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t s = master_seed;
  std::uint64_t mixed = splitmix64(s);
  s ^= stream_index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL;
  const std::uint32_t words[8] = {
      static_cast<std::uint32_t>(mixed),         static_cast<std::uint32_t>(mixed >> 32),
      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(s >> 32),
      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
      static_cast<std::uint32_t>(stream_index),  static_cast<std::uint32_t>(stream_index >> 32)};
  std::seed_seq seq(words, words + 8);
  engine_.seed(seq);
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = uniform();
  } while (u <= 0.0);
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

Matrix random_unitary(std::size_t dim, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= a > 0 ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_density(std::size_t dim, std::size_t rank, RandomStream& rng) {
  if (rank < 1) throw DomainError("random_density: rank must be >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  const auto k = static_cast<Eigen::Index>(rank);
  Matrix g(n, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

std::vector<Matrix> random_povm_elements(std::size_t dim, std::size_t n, RandomStream& rng) {
  if (n < 1) throw DomainError("random_povm_elements: need at least one outcome");
  std::vector<Matrix> raw;
  raw.reserve(n);
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < n; ++k) {
    Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  const Matrix s = pseudo_inverse_sqrt_psd(sum, 1e-12);
  std::vector<Matrix> elements;
  elements.reserve(n);
  for (auto& a : raw) elements.push_back(s * a * s);
  return elements;
}

}  // namespace complobs
