#pragma once

#include <cstddef>

namespace qpcert {

/// Ambient space: R^n or the square-summable sequence space.
struct SpaceDesc {
  enum class Kind { FiniteDim, SequenceSpace };

  Kind kind = Kind::FiniteDim;
  std::size_t dim = 0;  // meaningful for FiniteDim only

  static SpaceDesc finite(std::size_t n) { return {Kind::FiniteDim, n}; }
  static SpaceDesc sequence() { return {Kind::SequenceSpace, 0}; }

  bool is_finite() const { return kind == Kind::FiniteDim; }

  friend bool operator==(const SpaceDesc& a, const SpaceDesc& b) {
    return a.kind == b.kind && (a.kind == Kind::SequenceSpace || a.dim == b.dim);
  }
};

}  // namespace qpcert
