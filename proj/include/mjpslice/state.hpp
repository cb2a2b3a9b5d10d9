#ifndef MJPSLICE_STATE_HPP
#define MJPSLICE_STATE_HPP

#include <array>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>

namespace mjps {

// A point in a structured countable state space: a fixed-length vector of
// machine integers whose semantics belong to the owning model (e.g. (a, d, r)
// for the admissions model). Value type, hashable, totally ordered.
class State {
 public:
  static constexpr std::size_t kMaxDim = 4;

  State() = default;
  State(std::initializer_list<std::int64_t> coords) {
    assert(coords.size() <= kMaxDim);
    for (std::int64_t v : coords) c_[dim_++] = v;
  }

  std::size_t dim() const { return dim_; }
  std::int64_t operator[](std::size_t i) const {
    assert(i < dim_);
    return c_[i];
  }
  void set(std::size_t i, std::int64_t v) {
    assert(i < dim_);
    c_[i] = v;
  }

  friend bool operator==(const State& a, const State& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend std::strong_ordering operator<=>(const State& a, const State& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    for (std::size_t i = 0; i < a.dim_; ++i)
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

 private:
  std::array<std::int64_t, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    };
    mix(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) mix(static_cast<std::uint64_t>(s[i]));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace mjps

#endif
