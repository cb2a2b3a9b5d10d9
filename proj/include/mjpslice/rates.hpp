#ifndef MJPSLICE_RATES_HPP
#define MJPSLICE_RATES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mjpslice/errors.hpp"

namespace mjps {

// Linear order constraint: scale * value(lhs) < value(rhs). Cluster indices
// let a constraint span rate sets of different clusters (-1 means "the same
// cluster", the common case).
struct OrderConstraint {
  double scale = 1.0;
  std::string lhs;
  std::string rhs;
  int lhs_cluster = -1;
  int rhs_cluster = -1;
};

// The free and fixed named rates that populate a generator. Fixed rates are
// declared constants the updater must skip.
class RateParams {
 public:
  std::size_t declare(const std::string& name, double value, bool fixed);

  std::size_t index_of(const std::string& name) const;
  bool has(const std::string& name) const;

  double value(std::size_t idx) const { return values_[idx]; }
  double value(const std::string& name) const { return values_[index_of(name)]; }
  void set_value(std::size_t idx, double v);
  void set_value(const std::string& name, double v) { set_value(index_of(name), v); }

  bool fixed(std::size_t idx) const { return fixed_[idx]; }
  const std::string& name(std::size_t idx) const { return names_[idx]; }
  std::size_t size() const { return names_.size(); }

  std::vector<std::string> free_names() const;

  // All values strictly positive and all supplied same-cluster constraints hold.
  bool valid(const std::vector<OrderConstraint>& constraints) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
  std::vector<bool> fixed_;
};

inline std::size_t RateParams::declare(const std::string& name, double value, bool fixed) {
  if (has(name)) throw ModelError("duplicate rate name: " + name);
  if (!(value > 0.0)) throw ModelError("rate " + name + " must be positive");
  names_.push_back(name);
  values_.push_back(value);
  fixed_.push_back(fixed);
  return names_.size() - 1;
}

inline std::size_t RateParams::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw ModelError("undeclared rate name: " + name);
}

inline bool RateParams::has(const std::string& name) const {
  for (const auto& n : names_)
    if (n == name) return true;
  return false;
}

inline void RateParams::set_value(std::size_t idx, double v) {
  if (!(v > 0.0)) throw ModelError("rate " + names_[idx] + " must stay positive");
  values_[idx] = v;
}

inline std::vector<std::string> RateParams::free_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!fixed_[i]) out.push_back(names_[i]);
  return out;
}

inline bool RateParams::valid(const std::vector<OrderConstraint>& constraints) const {
  for (double v : values_)
    if (!(v > 0.0)) return false;
  for (const auto& c : constraints) {
    if (c.lhs_cluster != c.rhs_cluster) continue;  // cross-cluster: not checkable here
    if (!(c.scale * value(c.lhs) < value(c.rhs))) return false;
  }
  return true;
}

}  // namespace mjps

#endif
