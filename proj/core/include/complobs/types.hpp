#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace complobs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerance for PSD / normalization checks; overridable per call.
inline constexpr double kDefaultTol = 1e-9;
// Declared-Hermitian inputs are symmetrized; asymmetry above this is an error.
inline constexpr double kHermitianTol = 1e-8;
// U†U = I check for constructed isometries.
inline constexpr double kIsometryTol = 1e-10;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Mismatched or overflowing matrix/tensor shapes.
struct ShapeError : Error {
  using Error::Error;
};
// Unknown or duplicate subsystem labels.
struct LabelError : Error {
  using Error::Error;
};
// Parameters outside their domain (bad dimension, index, range).
struct DomainError : Error {
  using Error::Error;
};
// Violated numeric preconditions: not PSD, not normalized, not Hermitian,
// invalid POVM/Kraus sets, non-orthonormal bases.
struct NumericError : Error {
  using Error::Error;
};

// Kernel dimension cap (default 4096). The CLI maps COMPLOBS_MAX_DIM onto it.
std::size_t max_dimension();
void set_max_dimension(std::size_t dim);

struct Subsystem {
  std::string label;
  std::size_t dim = 0;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

// Ordered list of labeled tensor factors. The leftmost factor is the
// slowest-varying index; this ordering is fixed globally and every kernel
// operation assumes it.
class DimList {
 public:
  DimList() = default;
  DimList(std::initializer_list<Subsystem> factors)
      : DimList(std::vector<Subsystem>(factors)) {}
  explicit DimList(std::vector<Subsystem> factors);

  std::size_t total() const { return total_; }
  std::size_t count() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  const Subsystem& operator[](std::size_t i) const { return factors_[i]; }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }

  bool contains(std::string_view label) const;
  // Position of a label; throws LabelError when absent.
  std::size_t position(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const;

  // Sublist of the given labels, preserving this list's order.
  DimList selected(const std::vector<std::string>& labels) const;
  // Complement of the given labels, preserving order.
  DimList dropped(const std::vector<std::string>& labels) const;
  DimList inserted(std::size_t pos, Subsystem factor) const;
  DimList relabeled(std::string_view from, std::string_view to) const;
  DimList concatenated(const DimList& other) const;

  // Row strides per factor (leftmost slowest).
  std::vector<std::size_t> strides() const;

  friend bool operator==(const DimList&, const DimList&) = default;

 private:
  std::vector<Subsystem> factors_;
  std::size_t total_ = 1;
};

}  // namespace complobs
