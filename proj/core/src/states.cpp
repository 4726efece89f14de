#include "complobs/states.hpp"

#include <cmath>
#include <numbers>

namespace complobs {

PureState::PureState(Vector amplitudes, DimList dims, double tol)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (static_cast<std::size_t>(amps_.size()) != dims_.total())
    throw ShapeError("state length " + std::to_string(amps_.size()) +
                     " does not match dims product " + std::to_string(dims_.total()));
  if (!amps_.allFinite()) throw NumericError("state has non-finite amplitudes");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > tol)
    throw NumericError("state norm " + std::to_string(n) + " is not 1 within tol");
}

PureState PureState::normalized(Vector amplitudes, DimList dims) {
  const double n = amplitudes.norm();
  if (n < 1e-12) throw DomainError("cannot normalize a zero vector");
  amplitudes /= n;
  return PureState(std::move(amplitudes), std::move(dims));
}

LabeledOperator PureState::density() const {
  return LabeledOperator(amps_ * amps_.adjoint(), dims_);
}

LabeledOperator PureState::marginal(const std::vector<std::string>& keep) const {
  return partial_trace(density(), keep);
}

PureState PureState::relabeled(std::string_view from, std::string_view to) const {
  return PureState(amps_, dims_.relabeled(from, to));
}

Complex PureState::overlap(const PureState& other) const {
  if (amps_.size() != other.amps_.size()) throw ShapeError("overlap: dimension mismatch");
  return amps_.dot(other.amps_);
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()),
                   a.dims().concatenated(b.dims()));
}

Ensemble Ensemble::validated(RealVector weights, std::vector<LabeledOperator> members,
                             double tol) {
  if (static_cast<std::size_t>(weights.size()) != members.size())
    throw ShapeError("ensemble weight/member count mismatch");
  if (members.empty()) throw DomainError("ensemble must not be empty");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) < -tol) throw NumericError("ensemble weight is negative");
    sum += weights(i);
  }
  if (std::abs(sum - 1.0) > 100 * tol)
    throw NumericError("ensemble weights sum to " + std::to_string(sum));
  for (const auto& m : members) {
    if (!(m.dims == members.front().dims))
      throw ShapeError("ensemble members live on different composites");
    check_density_operator(m.matrix, tol);
  }
  return Ensemble{std::move(weights), std::move(members)};
}

LabeledOperator Ensemble::average() const {
  Matrix avg = Matrix::Zero(members.front().matrix.rows(), members.front().matrix.cols());
  for (std::size_t i = 0; i < members.size(); ++i) avg += weights(static_cast<Eigen::Index>(i)) * members[i].matrix;
  return LabeledOperator(std::move(avg), members.front().dims);
}

Complex omega(std::size_t d) {
  const double angle = 2.0 * std::numbers::pi / static_cast<double>(d);
  return Complex(std::cos(angle), std::sin(angle));
}

namespace {

Complex omega_power(std::size_t d, long exponent) {
  // exact modular reduction keeps phases stable for large exponents
  const long dd = static_cast<long>(d);
  long e = exponent % dd;
  if (e < 0) e += dd;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(d);
  return Complex(std::cos(angle), std::sin(angle));
}

void check_dim_at_least_two(std::size_t d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
}

}  // namespace

LabeledOperator weyl_z(std::size_t d, const std::string& label) {
  check_dim_at_least_two(d);
  Matrix z = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k)
    z(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = omega_power(d, static_cast<long>(k));
  return LabeledOperator(std::move(z), DimList{{label, d}});
}

LabeledOperator weyl_x(std::size_t d, const std::string& label) {
  check_dim_at_least_two(d);
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k)
    x(static_cast<Eigen::Index>((k + 1) % d), static_cast<Eigen::Index>(k)) = 1.0;
  return LabeledOperator(std::move(x), DimList{{label, d}});
}

Matrix weyl_z_power(std::size_t d, long k) {
  check_dim_at_least_two(d);
  Matrix z = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    z(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) =
        omega_power(d, k * static_cast<long>(j));
  return z;
}

Matrix fourier_matrix(std::size_t d) {
  check_dim_at_least_two(d);
  Matrix f(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          scale * omega_power(d, static_cast<long>(j * k));
  return f;
}

Vector fourier_vector(std::size_t d, std::size_t x) {
  check_dim_at_least_two(d);
  if (x >= d) throw DomainError("fourier index out of range");
  Vector v(static_cast<Eigen::Index>(d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t z = 0; z < d; ++z)
    v(static_cast<Eigen::Index>(z)) = scale * omega_power(d, static_cast<long>(x * z));
  return v;
}

PureState fourier_state(std::size_t d, std::size_t x, const std::string& label) {
  return PureState(fourier_vector(d, x), DimList{{label, d}});
}

PureState phi_d(std::size_t d, const std::string& label_a, const std::string& label_b) {
  check_dim_at_least_two(d);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d * d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t z = 0; z < d; ++z) v(static_cast<Eigen::Index>(z * d + z)) = scale;
  return PureState(std::move(v), DimList{{label_a, d}, {label_b, d}});
}

PureState bell_jk(std::size_t d, std::size_t j, std::size_t k, const std::string& label_a,
                  const std::string& label_b) {
  check_dim_at_least_two(d);
  if (j >= d || k >= d) throw DomainError("bell index out of range");
  const PureState phi = phi_d(d, label_a, label_b);
  Matrix op = weyl_z_power(d, static_cast<long>(k));
  const Matrix x = weyl_x(d).matrix;
  for (std::size_t i = 0; i < j; ++i) op = x * op;
  Vector out = kron(identity(d), op) * phi.amplitudes();
  return PureState(std::move(out), phi.dims());
}

CanonicalABR canonical_decomposition(const PureState& psi) {
  const std::size_t d = psi.dims()[0].dim;
  const std::size_t rest = psi.dim() / d;
  DimList rest_dims = psi.dims().dropped({psi.dims()[0].label});

  CanonicalABR out;
  out.p = RealVector::Zero(static_cast<Eigen::Index>(d));
  out.phi.reserve(d);
  for (std::size_t z = 0; z < d; ++z) {
    Vector block = psi.amplitudes().segment(static_cast<Eigen::Index>(z * rest),
                                            static_cast<Eigen::Index>(rest));
    const double pz = block.squaredNorm();
    out.p(static_cast<Eigen::Index>(z)) = pz;
    if (pz > 1e-24) {
      out.phi.emplace_back(PureState::normalized(std::move(block), rest_dims));
    } else {
      Vector placeholder = Vector::Zero(static_cast<Eigen::Index>(rest));
      placeholder(0) = 1.0;
      out.phi.emplace_back(PureState(std::move(placeholder), rest_dims));
    }
  }
  return out;
}

PureState z_extension(const PureState& psi, const std::string& copy_label) {
  if (psi.dims().contains(copy_label))
    throw LabelError("z_extension: label '" + copy_label + "' already present");
  const std::size_t d = psi.dims()[0].dim;
  const std::size_t rest = psi.dim() / d;
  Vector out = Vector::Zero(static_cast<Eigen::Index>(d * d * rest));
  for (std::size_t z = 0; z < d; ++z) {
    out.segment(static_cast<Eigen::Index>((z * d + z) * rest), static_cast<Eigen::Index>(rest)) =
        psi.amplitudes().segment(static_cast<Eigen::Index>(z * rest),
                                 static_cast<Eigen::Index>(rest));
  }
  return PureState(std::move(out), psi.dims().inserted(1, {copy_label, d}));
}

Ensemble ensemble_for_basis(const PureState& psi, const std::vector<Vector>& basis,
                            const std::vector<std::string>& side) {
  if (side.empty()) throw DomainError("ensemble side set must not be empty");
  const std::string& first = psi.dims()[0].label;
  for (const auto& l : side) {
    if (l == first) throw DomainError("ensemble side must exclude the measured factor");
    psi.dims().position(l);
  }
  const std::size_t d = psi.dims()[0].dim;
  if (basis.size() != d) throw ShapeError("basis size must match the first factor dimension");
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (static_cast<std::size_t>(basis[a].size()) != d)
      throw ShapeError("basis vector has wrong dimension");
    for (std::size_t b = 0; b <= a; ++b) {
      const Complex ip = basis[b].dot(basis[a]);
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(ip - expected) > 1e-9)
        throw NumericError("ensemble basis is not orthonormal");
    }
  }

  const std::size_t rest = psi.dim() / d;
  const DimList rest_dims = psi.dims().dropped({first});

  RealVector weights = RealVector::Zero(static_cast<Eigen::Index>(d));
  std::vector<LabeledOperator> members;
  members.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    // ⟨b_k|ψ⟩ on the first factor
    Vector block = Vector::Zero(static_cast<Eigen::Index>(rest));
    for (std::size_t z = 0; z < d; ++z) {
      block += std::conj(basis[k](static_cast<Eigen::Index>(z))) *
               psi.amplitudes().segment(static_cast<Eigen::Index>(z * rest),
                                        static_cast<Eigen::Index>(rest));
    }
    const double w = block.squaredNorm();
    weights(static_cast<Eigen::Index>(k)) = w;
    LabeledOperator cond(Matrix::Zero(static_cast<Eigen::Index>(rest),
                                      static_cast<Eigen::Index>(rest)),
                         rest_dims);
    if (w > 1e-24) {
      cond.matrix = (block * block.adjoint()) / w;
    } else {
      cond.matrix(0, 0) = 1.0;  // inert: weight is zero
    }
    LabeledOperator reduced = partial_trace(cond, side);
    members.push_back(std::move(reduced));
  }
  return Ensemble::validated(std::move(weights), std::move(members));
}

Ensemble ensemble_for_observable(const PureState& psi, Observable obs,
                                 const std::vector<std::string>& side) {
  const std::size_t d = psi.dims()[0].dim;
  std::vector<Vector> basis;
  basis.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (obs == Observable::Z) {
      Vector e = Vector::Zero(static_cast<Eigen::Index>(d));
      e(static_cast<Eigen::Index>(k)) = 1.0;
      basis.push_back(std::move(e));
    } else {
      basis.push_back(fourier_vector(d, k));
    }
  }
  return ensemble_for_basis(psi, basis, side);
}

PureState haar_random_state(const DimList& dims, RandomStream& rng) {
  Vector v(static_cast<Eigen::Index>(dims.total()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.normal(), rng.normal());
  return PureState::normalized(std::move(v), dims);
}

PureState haar_random_state(const DimList& dims, std::uint64_t seed, std::uint64_t stream_index) {
  RandomStream rng(seed, stream_index);
  return haar_random_state(dims, rng);
}

}  // namespace complobs
