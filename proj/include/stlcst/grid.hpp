#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace stlcst {

// Uniform 4-D lattice; axis order is (t, x1, x2, x3) and storage is row-major
// with the temporal axis slowest.
template <class Tag>
struct Grid4 {
  std::array<int, 4> n{};
  std::array<double, 4> spacing{};
  std::array<double, 4> origin{};

  std::int64_t total() const {
    return std::int64_t{1} * n[0] * n[1] * n[2] * n[3];
  }

  double coord(int axis, int j) const { return origin[axis] + j * spacing[axis]; }

  std::int64_t flat(const std::array<int, 4>& idx) const {
    return ((std::int64_t{idx[0]} * n[1] + idx[1]) * n[2] + idx[2]) * n[3] + idx[3];
  }

  std::array<int, 4> unflat(std::int64_t f) const {
    std::array<int, 4> idx{};
    idx[3] = static_cast<int>(f % n[3]);
    f /= n[3];
    idx[2] = static_cast<int>(f % n[2]);
    f /= n[2];
    idx[1] = static_cast<int>(f % n[1]);
    idx[0] = static_cast<int>(f / n[1]);
    return idx;
  }

  double cell_volume() const { return spacing[0] * spacing[1] * spacing[2] * spacing[3]; }

  void validate() const {
    for (int k = 0; k < 4; ++k) {
      if (n[k] <= 0) throw std::domain_error("grid: sample counts must be positive");
      if (!(spacing[k] > 0.0)) throw std::domain_error("grid: spacings must be positive");
    }
  }

  friend bool operator==(const Grid4&, const Grid4&) = default;
};

using SpaceTimeGrid = Grid4<struct SpaceTimeTag>;
using FrequencyGrid = Grid4<struct FrequencyTag>;

// Grid centered so index floor(N/2) sits at coordinate 0.
template <class Tag>
Grid4<Tag> centered_grid(const std::array<int, 4>& n, const std::array<double, 4>& spacing) {
  Grid4<Tag> g{n, spacing, {}};
  for (int k = 0; k < 4; ++k) g.origin[k] = -(n[k] / 2) * spacing[k];
  g.validate();
  return g;
}

inline SpaceTimeGrid centered_space_grid(const std::array<int, 4>& n,
                                         const std::array<double, 4>& spacing) {
  return centered_grid<SpaceTimeTag>(n, spacing);
}

namespace detail {

// Samples {c*m : m centered} stored in ascending coordinate order.
inline void conjugate_axis(double c, int n, double& spacing, double& origin) {
  if (c > 0) {
    spacing = c;
    origin = -(n / 2) * c;
  } else {
    spacing = -c;
    origin = c * (n - 1 - n / 2);
  }
}

}  // namespace detail

// Frequency lattice on which the kernel coupling exp(-i3 x.w/b) reduces to a
// plain DFT: w_t = 2pi m/(N_t dt), w_k = 2pi b m/(N_k dx_k), m centered.
inline FrequencyGrid conjugate_grid(const SpaceTimeGrid& g, double b) {
  if (b == 0.0) throw std::domain_error("conjugate_grid: b must be nonzero");
  g.validate();
  FrequencyGrid w{};
  w.n = g.n;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  detail::conjugate_axis(two_pi / (g.n[0] * g.spacing[0]), g.n[0], w.spacing[0], w.origin[0]);
  for (int k = 1; k < 4; ++k) {
    detail::conjugate_axis(two_pi * b / (g.n[k] * g.spacing[k]), g.n[k], w.spacing[k],
                           w.origin[k]);
  }
  return w;
}

// Variant for the two-sided transform: temporal coupling through b_t, spatial
// through b_s.
inline FrequencyGrid conjugate_grid_two_sided(const SpaceTimeGrid& g, double b_t, double b_s) {
  if (b_t == 0.0 || b_s == 0.0) {
    throw std::domain_error("conjugate_grid_two_sided: couplings must be nonzero");
  }
  g.validate();
  FrequencyGrid w{};
  w.n = g.n;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  detail::conjugate_axis(two_pi * b_t / (g.n[0] * g.spacing[0]), g.n[0], w.spacing[0],
                         w.origin[0]);
  for (int k = 1; k < 4; ++k) {
    detail::conjugate_axis(two_pi * b_s / (g.n[k] * g.spacing[k]), g.n[k], w.spacing[k],
                           w.origin[k]);
  }
  return w;
}

}  // namespace stlcst
