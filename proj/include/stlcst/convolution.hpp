#pragma once

#include <array>

#include "stlcst/params.hpp"
#include "stlcst/signal.hpp"

namespace stlcst {

// Axis-flip flags: phi1 flips the temporal axis, phi2 flips all three spatial
// axes. A flip maps the sample at x to the sample at -x with periodic wrap;
// each flipped axis must carry coordinate zero on its lattice.
struct ReflectionIndex {
  int phi1 = 0;
  int phi2 = 0;
};

SpaceTimeSignal reflect(const SpaceTimeSignal& f, ReflectionIndex r);
Spectrum reflect(const Spectrum& F, ReflectionIndex r);

// Circular convolution over grid coordinates with quadrature weight. The
// sample at coordinate zero acts as the identity kernel, so each grid origin
// must be an integer multiple of the spacing.
SpaceTimeSignal convolve_standard(const SpaceTimeSignal& a, const SpaceTimeSignal& b);
Spectrum convolve_standard(const Spectrum& a, const Spectrum& b);

// Spectral-product convolution: isft(sft(a) * sft(b)) pointwise.
SpaceTimeSignal mustard_convolve(const SpaceTimeSignal& a, const SpaceTimeSignal& b);

// The two candidate meanings of a trailing spatial-flip marker on a
// convolution term: flip the result's argument, or fold the flip into the
// right operand before convolving.
enum class EightTermReading { kResultReflected, kOperandReflected };

// The eight split/reflect/convolve/project terms whose sum reproduces the
// spectral-product convolution.
std::array<SpaceTimeSignal, 8> eight_term_parts(const SpaceTimeSignal& a,
                                                const SpaceTimeSignal& b,
                                                EightTermReading reading);
SpaceTimeSignal mustard_as_eight(const SpaceTimeSignal& a, const SpaceTimeSignal& b,
                                 EightTermReading reading = EightTermReading::kResultReflected);

// Chirped spectral-product convolution tied to the one-sided transform with
// parameters A: chirp f, spectral-convolve, then unchirp the result.
SpaceTimeSignal odot(const SpaceTimeSignal& f, const SpaceTimeSignal& g, const LcParams& A);

// Chirped circular convolution of two spectra on the frequency lattice.
Spectrum otimes(const Spectrum& u, const Spectrum& v, const LcParams& A);

// Resamples g(t, x/b) (or g(x/b) on all four axes) on g's own lattice.
// Defined only when 1/b is a nonzero integer, so scaled points stay on the
// lattice; the map wraps around the torus.
enum class ArgScaling { kSpatialOnly, kAllAxes };
SpaceTimeSignal scale_argument(const SpaceTimeSignal& g, double b,
                               ArgScaling which = ArgScaling::kSpatialOnly);

// Left spectral weight for the two-sided convolution: a real prefactor times
// a unit e_t exponential. Negative couplings keep |B| in the prefactor and
// fold the principal-branch phase into the exponent.
struct LambdaWeight {
  TwoSidedParams params{};
  double prefactor = 0.0;
  double branch = 0.0;

  Multivector operator()(const std::array<double, 4>& w) const;
};

LambdaWeight lambda_weight(const TwoSidedParams& P);

// Spectral form of the two-sided convolution:
//   two_sided_ilcst(lambda(w) * two_sided_lcst(f) * two_sided_lcst(g)).
// Verbatim mode makes this the exact factorization of the printed triple
// integral, so the direct oracle matches it with constant 1.
SpaceTimeSignal star_n(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                       const TwoSidedParams& P, Mode mode = Mode::kVerbatim);
SpaceTimeSignal star_n(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                       const TwoSidedParams& P, const LambdaWeight& lam,
                       Mode mode = Mode::kVerbatim);

// Brute-force 12-dimensional quadrature of the two-sided convolution with the
// kernel chain multiplied exactly in its printed order. Refuses grids above
// 4^4 samples.
SpaceTimeSignal star_n_direct(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                              const TwoSidedParams& P);

// Eight-term layout of the two-sided convolution; same pattern as
// mustard_as_eight, compared against star_n up to one measured constant.
SpaceTimeSignal star_n_as_eight(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                                const TwoSidedParams& P,
                                EightTermReading reading = EightTermReading::kResultReflected);

}  // namespace stlcst
