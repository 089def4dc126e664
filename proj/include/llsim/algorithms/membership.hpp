#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "llsim/errors.hpp"

namespace llsim {

/// A node's `st` variable: in or out of the selected set.
enum class Member : std::uint8_t { out = 0, in = 1 };

inline Member flip(Member m) { return m == Member::in ? Member::out : Member::in; }

inline std::string_view to_string(Member m) { return m == Member::in ? "IN" : "OUT"; }

inline Member parse_member(std::string_view s) {
  if (s == "IN" || s == "in" || s == "1") return Member::in;
  if (s == "OUT" || s == "out" || s == "0") return Member::out;
  throw InputError("expected IN or OUT, got '" + std::string(s) + "'");
}

}  // namespace llsim
