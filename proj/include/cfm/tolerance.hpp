#pragma once

namespace cfm {

/// Central tolerance knobs shared by the algebra and the verification suites.
/// All checks are relative to the magnitude of the quantities involved.
struct Tolerance {
  /// Grade purity, scalar-ness and identity checks.
  double relative = 1e-10;
  /// Below this (relative) magnitude an element is treated as zero,
  /// e.g. cx+d at a pole of a Moebius map.
  double singular = 1e-13;
};

inline constexpr Tolerance kDefaultTolerance{};

}  // namespace cfm
