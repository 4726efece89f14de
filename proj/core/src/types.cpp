#include "complobs/types.hpp"

#include <algorithm>
#include <atomic>

namespace complobs {

namespace {
std::atomic<std::size_t> g_max_dimension{4096};
}  // namespace

std::size_t max_dimension() { return g_max_dimension.load(); }

void set_max_dimension(std::size_t dim) {
  if (dim < 2) throw DomainError("max dimension must be at least 2");
  g_max_dimension.store(dim);
}

DimList::DimList(std::vector<Subsystem> factors) : factors_(std::move(factors)) {
  total_ = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.dim < 1) throw DomainError("subsystem '" + f.label + "' has dimension 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].label == f.label)
        throw LabelError("duplicate subsystem label '" + f.label + "'");
    }
    if (total_ > max_dimension() / f.dim)
      throw ShapeError("total dimension exceeds cap " + std::to_string(max_dimension()));
    total_ *= f.dim;
  }
}

bool DimList::contains(std::string_view label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Subsystem& f) { return f.label == label; });
}

std::size_t DimList::position(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw LabelError("unknown subsystem label '" + std::string(label) + "'");
}

std::size_t DimList::dim_of(std::string_view label) const {
  return factors_[position(label)].dim;
}

DimList DimList::selected(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) position(l);  // reject unknown labels
  std::vector<Subsystem> kept;
  for (const auto& f : factors_) {
    if (std::find(labels.begin(), labels.end(), f.label) != labels.end())
      kept.push_back(f);
  }
  return DimList(std::move(kept));
}

DimList DimList::dropped(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) position(l);
  std::vector<Subsystem> kept;
  for (const auto& f : factors_) {
    if (std::find(labels.begin(), labels.end(), f.label) == labels.end())
      kept.push_back(f);
  }
  return DimList(std::move(kept));
}

DimList DimList::inserted(std::size_t pos, Subsystem factor) const {
  if (pos > factors_.size()) throw DomainError("insert position out of range");
  std::vector<Subsystem> factors = factors_;
  factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(pos), std::move(factor));
  return DimList(std::move(factors));
}

DimList DimList::relabeled(std::string_view from, std::string_view to) const {
  std::vector<Subsystem> factors = factors_;
  factors[position(from)].label = std::string(to);
  return DimList(std::move(factors));
}

DimList DimList::concatenated(const DimList& other) const {
  std::vector<Subsystem> factors = factors_;
  factors.insert(factors.end(), other.factors_.begin(), other.factors_.end());
  return DimList(std::move(factors));
}

std::vector<std::size_t> DimList::strides() const {
  std::vector<std::size_t> s(factors_.size(), 1);
  for (std::size_t i = factors_.size(); i-- > 1;) {
    s[i - 1] = s[i] * factors_[i].dim;
  }
  return s;
}

}  // namespace complobs
