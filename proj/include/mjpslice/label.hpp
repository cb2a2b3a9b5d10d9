#ifndef MJPSLICE_LABEL_HPP
#define MJPSLICE_LABEL_HPP

#include <compare>
#include <cstdint>
#include <string>

#include "mjpslice/errors.hpp"

namespace mjps {

// Jump-observation alphabet element: a (tag, payload) pair. Tag 0 is the
// reserved no-observation element; the payload of a non-empty label is the
// new value of the coordinate the jump changed (or the jump sign, for
// sign-labeled chains).
namespace tag {
inline constexpr std::int32_t none = 0;
inline constexpr std::int32_t sign = 1;
inline constexpr std::int32_t admission = 2;
inline constexpr std::int32_t regime = 3;
inline constexpr std::int32_t discharge = 4;
inline constexpr std::int32_t entry = 5;
inline constexpr std::int32_t departure = 6;
}  // namespace tag

struct JumpLabel {
  std::int32_t tag = tag::none;
  std::int64_t payload = 0;

  bool empty() const { return tag == tag::none; }
  friend bool operator==(const JumpLabel&, const JumpLabel&) = default;
  friend auto operator<=>(const JumpLabel&, const JumpLabel&) = default;
};

inline JumpLabel no_observation() { return JumpLabel{}; }

inline std::string tag_name(std::int32_t t) {
  switch (t) {
    case tag::none: return "none";
    case tag::sign: return "sign";
    case tag::admission: return "admission";
    case tag::regime: return "regime";
    case tag::discharge: return "discharge";
    case tag::entry: return "entry";
    case tag::departure: return "departure";
  }
  return "tag" + std::to_string(t);
}

inline std::int32_t tag_from_name(const std::string& name) {
  for (std::int32_t t = 0; t <= 6; ++t)
    if (tag_name(t) == name) return t;
  throw ConfigError("unknown jump label tag: " + name);
}

inline std::string label_str(const JumpLabel& l) {
  if (l.empty()) return "<>";
  return tag_name(l.tag) + ":" + std::to_string(l.payload);
}

}  // namespace mjps

#endif
