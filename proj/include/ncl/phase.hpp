#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ncl/errors.hpp"

namespace ncl {

/// One of the three phases -1, 0, +1. Ordered -1 < 0 < +1.
enum class PhaseLabel : std::int8_t { minus = -1, zero = 0, plus = 1 };

constexpr std::array<PhaseLabel, 3> all_phases{PhaseLabel::minus, PhaseLabel::zero,
                                               PhaseLabel::plus};

constexpr int to_int(PhaseLabel p) { return static_cast<int>(p); }

inline PhaseLabel phase_from_int(int v) {
  if (v < -1 || v > 1) throw validation_error("phase label must be -1, 0 or +1");
  return static_cast<PhaseLabel>(v);
}

inline char phase_char(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::minus: return '-';
    case PhaseLabel::zero: return '0';
    default: return '+';
  }
}

inline PhaseLabel phase_from_char(char c) {
  if (c == '-') return PhaseLabel::minus;
  if (c == '0') return PhaseLabel::zero;
  if (c == '+') return PhaseLabel::plus;
  throw validation_error(std::string("unknown phase character '") + c + "'");
}

}  // namespace ncl
