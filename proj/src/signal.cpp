#include "stlcst/signal.hpp"

#include <cmath>
#include <iostream>

namespace stlcst {

SpaceTimeSignal gaussian_packet(const SpaceTimeGrid& g, const std::array<double, 4>& center,
                                const std::array<double, 4>& width,
                                const Multivector& blade_amplitude, double temporal_freq,
                                const std::array<double, 3>& spatial_freq,
                                bool* contained_out) {
  g.validate();
  for (double w : width) {
    if (!(w > 0.0)) throw std::domain_error("gaussian_packet: widths must be positive");
  }

  // Envelope is separable, so the largest boundary-face value is controlled by
  // the worst single axis.
  double boundary_ratio = 0.0;
  for (int k = 0; k < 4; ++k) {
    for (int j : {0, g.n[k] - 1}) {
      const double u = (g.coord(k, j) - center[k]) / width[k];
      boundary_ratio = std::max(boundary_ratio, std::exp(-u * u));
    }
  }
  const bool contained = boundary_ratio <= 1e-8;
  // A caller that asks for the flag owns the decision; warn only otherwise.
  if (!contained && contained_out == nullptr) {
    std::cerr << "gaussian_packet: boundary value is " << boundary_ratio
              << " of peak (threshold 1e-8); packet is not contained in the grid\n";
  }
  if (contained_out != nullptr) *contained_out = contained;

  SpaceTimeSignal f = zero_signal(g);
  const Multivector i3 = Multivector::blade(kI3);
  std::array<int, 4> idx{};
  std::int64_t flat = 0;
  for (idx[0] = 0; idx[0] < g.n[0]; ++idx[0]) {
    const double t = g.coord(0, idx[0]);
    const double ut = (t - center[0]) / width[0];
    const Multivector left = geometric_product(
        blade_exp(Multivector::blade(kEt), temporal_freq * t), blade_amplitude);
    for (idx[1] = 0; idx[1] < g.n[1]; ++idx[1]) {
      const double x1 = g.coord(1, idx[1]);
      const double u1 = (x1 - center[1]) / width[1];
      for (idx[2] = 0; idx[2] < g.n[2]; ++idx[2]) {
        const double x2 = g.coord(2, idx[2]);
        const double u2 = (x2 - center[2]) / width[2];
        for (idx[3] = 0; idx[3] < g.n[3]; ++idx[3], ++flat) {
          const double x3 = g.coord(3, idx[3]);
          const double u3 = (x3 - center[3]) / width[3];
          const double env = std::exp(-(ut * ut + u1 * u1 + u2 * u2 + u3 * u3));
          const double phase = spatial_freq[0] * x1 + spatial_freq[1] * x2 + spatial_freq[2] * x3;
          const Multivector right = blade_exp(i3, phase);
          f.data[flat] = geometric_product(left * env, right);
        }
      }
    }
  }
  return f;
}

}  // namespace stlcst
