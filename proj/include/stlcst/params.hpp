#pragma once

#include <cmath>
#include <stdexcept>

namespace stlcst {

// Unimodular 2x2 parameter matrix (a, b; c, d).
struct LcParams {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  void validate() const {
    if (std::abs(a * d - b * c - 1.0) > 1e-12) {
      throw std::domain_error("LcParams: determinant must be 1");
    }
  }
};

// Separate temporal (m1) and spatial (m2) parameter matrices.
struct TwoSidedParams {
  LcParams m1{};
  LcParams m2{};

  void validate() const {
    m1.validate();
    m2.validate();
  }

  void require_couplings() const {
    validate();
    if (m1.b == 0.0 || m2.b == 0.0) {
      throw std::domain_error("TwoSidedParams: B1 and B2 must be nonzero");
    }
  }
};

struct FrParams {
  double alpha = 0.0;

  void validate() const {
    if (!(std::sin(alpha) > 0.0)) {
      throw std::domain_error("FrParams: sin(alpha) must be positive");
    }
  }
};

// corrected: constants that close the inversion identities.
// verbatim: constants exactly as published, defects and all.
enum class Mode { kCorrected, kVerbatim };

}  // namespace stlcst
