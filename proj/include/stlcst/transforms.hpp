#pragma once

#include "stlcst/params.hpp"
#include "stlcst/signal.hpp"

namespace stlcst {

// Direct quadrature paths. These accept any frequency grid and share no code
// with the FFT-backed fast paths, so each side can serve as the other's
// oracle.
Spectrum sft(const SpaceTimeSignal& f, const FrequencyGrid& wg);
SpaceTimeSignal isft(const Spectrum& F, const SpaceTimeGrid& xg);

Spectrum frsft(const SpaceTimeSignal& f, const FrParams& p, const FrequencyGrid& wg);
// Mode::kVerbatim keeps the published inverse prefactor, overshooting the
// round trip by csc(alpha)^{3/2}; Mode::kCorrected drops it.
SpaceTimeSignal ifrsft(const Spectrum& F, const FrParams& p, const SpaceTimeGrid& xg,
                       Mode mode = Mode::kCorrected);

Spectrum lcst(const SpaceTimeSignal& f, const LcParams& A, const FrequencyGrid& wg);
SpaceTimeSignal ilcst(const Spectrum& F, const LcParams& A, const SpaceTimeGrid& xg);

Spectrum two_sided_lcst(const SpaceTimeSignal& f, const TwoSidedParams& P,
                        const FrequencyGrid& wg, Mode mode = Mode::kCorrected);
SpaceTimeSignal two_sided_ilcst(const Spectrum& F, const TwoSidedParams& P,
                                const SpaceTimeGrid& xg, Mode mode = Mode::kCorrected);

// Fast paths: split + chirp + 4-D FFT on the 8 complexified channels.
// Forward outputs live on the canonical conjugate grid of the input; inverse
// inputs must live on the conjugate grid of the requested output grid.
Spectrum sft_fast(const SpaceTimeSignal& f);
SpaceTimeSignal isft_fast(const Spectrum& F, const SpaceTimeGrid& xg);
Spectrum frsft_fast(const SpaceTimeSignal& f, const FrParams& p);
SpaceTimeSignal ifrsft_fast(const Spectrum& F, const FrParams& p, const SpaceTimeGrid& xg,
                            Mode mode = Mode::kCorrected);
Spectrum lcst_fast(const SpaceTimeSignal& f, const LcParams& A);
SpaceTimeSignal ilcst_fast(const Spectrum& F, const LcParams& A, const SpaceTimeGrid& xg);
Spectrum two_sided_lcst_fast(const SpaceTimeSignal& f, const TwoSidedParams& P,
                             Mode mode = Mode::kCorrected);
SpaceTimeSignal two_sided_ilcst_fast(const Spectrum& F, const TwoSidedParams& P,
                                     const SpaceTimeGrid& xg, Mode mode = Mode::kCorrected);

}  // namespace stlcst
