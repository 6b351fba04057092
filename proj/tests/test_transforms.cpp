#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "stlcst/transforms.hpp"
#include "test_helpers.hpp"

using namespace stlcst;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

SpaceTimeGrid small_grid(std::array<int, 4> n, std::array<double, 4> spacing,
                         std::array<double, 4> origin) {
  SpaceTimeGrid g{n, spacing, origin};
  g.validate();
  return g;
}

SpaceTimeSignal random_signal(const SpaceTimeGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_field(g, rng);
}

double rel_scale(const SpaceTimeSignal& f) { return std::max(1.0, max_coeff_abs(f)); }
double rel_scale(const Spectrum& f) { return std::max(1.0, max_coeff_abs(f)); }

// Right-multiplies every sample by exp(i_3 ang) and scales, for building
// expected fields out of an independently computed reference.
template <class FieldT>
FieldT rotate_scale(const FieldT& f, double ang, double scale) {
  FieldT r = f;
  const Multivector rot = blade_exp(Multivector::blade(kI3), ang);
  for (auto& h : r.data) h = geometric_product(h, rot) * scale;
  return r;
}

}  // namespace

TEST_CASE("forward transform of a unit impulse is a flat spectrum") {
  const auto g = small_grid({2, 3, 4, 5}, {0.7, 0.5, 0.6, 0.4}, {0, 0, 0, 0});
  std::mt19937_64 rng(41);
  const Multivector amp = random_multivector(rng);
  const auto f = delta_field(g, {0, 0, 0, 0}, amp * (1.0 / g.cell_volume()));

  const auto check_flat = [&](const Spectrum& F) {
    double worst = 0.0;
    for (const auto& h : F.data) worst = std::max(worst, testing::max_abs_diff(h, amp));
    CHECK_LE(worst, 1e-12);
  };
  check_flat(sft(f, conjugate_grid(g, 1.0)));
  // Arbitrary off-lattice frequency grid: still flat, because only the
  // zero-coordinate sample contributes.
  check_flat(sft(f, FrequencyGrid{{3, 3, 3, 3}, {0.377, 0.41, 0.39, 0.35}, {-1.1, -0.9, -1.0, -0.8}}));
}

TEST_CASE("inverse of a flat spectrum is a unit impulse") {
  const auto g = small_grid({4, 3, 4, 2}, {0.7, 0.5, 0.6, 0.4}, {0, 0, 0, 0});
  auto F = zero_spectrum(conjugate_grid(g, 1.0));
  for (auto& h : F.data) h = Multivector::blade(kScalar);
  const auto f = isft(F, g);
  const double amp = 1.0 / g.cell_volume();
  for (std::int64_t j = 0; j < g.total(); ++j) {
    const Multivector expect =
        j == 0 ? Multivector::blade(kScalar) * amp : Multivector{};
    CHECK_LE(testing::max_abs_diff(f.data[j], expect), 1e-10 * amp);
  }
}

TEST_CASE("plain transform round trips exactly on the conjugate grid") {
  const auto g = centered_space_grid({4, 4, 4, 4}, {0.7, 0.5, 0.6, 0.4});
  const auto f = random_signal(g, 0xC0FFEE01);
  const auto r = isft(sft(f, conjugate_grid(g, 1.0)), g);
  CHECK_LE(max_abs_difference(r, f), 1e-12 * rel_scale(f));
}

TEST_CASE("plain transform round trips a gaussian packet on the 8^4 grid") {
  const auto g = centered_space_grid({8, 8, 8, 8}, {0.5, 0.5, 0.5, 0.5});
  // Marginally clipped on the high boundary; a round trip is exact anyway.
  bool contained = false;
  const auto f = gaussian_packet(g, {0, 0, 0, 0}, {0.35, 0.35, 0.35, 0.35},
                                 Multivector::blade(kScalar) + Multivector::blade(kEt12) * 0.5,
                                 1.0, {0.5, -0.5, 1.0}, &contained);
  const auto r = isft(sft(f, conjugate_grid(g, 1.0)), g);
  CHECK_LE(max_abs_difference(r, f), 1e-6);
  CHECK_LE(max_abs_difference(r, f), 1e-12 * rel_scale(f));
}

TEST_CASE("single-blade transform matches a scalar quadrature oracle") {
  const auto g = small_grid({3, 4, 3, 2}, {0.6, 0.5, 0.7, 0.8}, {-0.6, -1.0, -0.7, -0.4});
  const auto wg = conjugate_grid(g, 1.0);

  // f = B g with real scalar g; moving B to the front flips the temporal
  // rotor sign when B anticommutes with e_t, so
  //   L[f](w) = B sum_j g_j (cos(th_t) - kappa e_t sin(th_t))
  //                       (cos(th_s) - i_3 sin(th_s)) vol,
  // th_t = w_t t, th_s = x.w, computed here with plain scalar sums.
  const auto oracle_case = [&](BladeIndex bi) {
    const Multivector B = Multivector::blade(bi);
    const Multivector et = Multivector::blade(kEt);
    const Multivector etB = geometric_product(et, B);
    const Multivector Bet = geometric_product(B, et);
    const bool commutes = testing::max_abs_diff(etB, Bet) < 1e-14;
    const double kappa = commutes ? 1.0 : -1.0;

    auto f = zero_signal(g);
    std::vector<double> gv(static_cast<std::size_t>(g.total()));
    for (std::int64_t j = 0; j < g.total(); ++j) {
      const auto idx = g.unflat(j);
      const double t = g.coord(0, idx[0]);
      const double x1 = g.coord(1, idx[1]), x2 = g.coord(2, idx[2]), x3 = g.coord(3, idx[3]);
      const double val =
          std::exp(-0.25 * (t * t + x1 * x1 + x2 * x2 + x3 * x3)) * (1.0 + 0.3 * t - 0.2 * x1);
      gv[static_cast<std::size_t>(j)] = val;
      f.data[j] = B * val;
    }
    const auto F = sft(f, wg);

    for (std::int64_t m = 0; m < wg.total(); ++m) {
      const auto midx = wg.unflat(m);
      const double wt = wg.coord(0, midx[0]);
      const double w1 = wg.coord(1, midx[1]), w2 = wg.coord(2, midx[2]), w3 = wg.coord(3, midx[3]);
      double scc = 0, scs = 0, ssc = 0, sss = 0;
      for (std::int64_t j = 0; j < g.total(); ++j) {
        const auto idx = g.unflat(j);
        const double tht = wt * g.coord(0, idx[0]);
        const double ths =
            g.coord(1, idx[1]) * w1 + g.coord(2, idx[2]) * w2 + g.coord(3, idx[3]) * w3;
        const double v = gv[static_cast<std::size_t>(j)];
        scc += v * std::cos(tht) * std::cos(ths);
        scs += v * std::cos(tht) * std::sin(ths);
        ssc += v * std::sin(tht) * std::cos(ths);
        sss += v * std::sin(tht) * std::sin(ths);
      }
      Multivector inner = Multivector::blade(kScalar) * scc -
                          Multivector::blade(kI3) * scs -
                          Multivector::blade(kEt) * (kappa * ssc) +
                          Multivector::blade(kIst) * (kappa * sss);
      const Multivector expect = geometric_product(B, inner) * g.cell_volume();
      CHECK_LE(testing::max_abs_diff(F.data[m], expect), 1e-11);
    }
  };

  oracle_case(kScalar);
  oracle_case(kE1);
  oracle_case(kEt);
  oracle_case(kEt2);
  oracle_case(kIst);
}

TEST_CASE("fractional order pi/2 reduces to the plain transform") {
  const auto g = centered_space_grid({3, 4, 3, 3}, {0.6, 0.5, 0.7, 0.55});
  const auto f = random_signal(g, 0xC0FFEE02);
  const auto wg = conjugate_grid(g, 1.0);
  const auto A = frsft(f, FrParams{kTau / 4.0}, wg);
  const auto B = sft(f, wg);
  CHECK_LE(max_abs_difference(A, B), 1e-12 * rel_scale(B));
}

TEST_CASE("fractional round trip: corrected inverse exact, published inverse overshoots") {
  const double alpha = 1.1;
  const auto g = centered_space_grid({4, 4, 4, 4}, {0.7, 0.5, 0.6, 0.4});
  const auto f = random_signal(g, 0xC0FFEE03);
  const auto F = frsft(f, FrParams{alpha}, conjugate_grid(g, std::sin(alpha)));

  const auto rc = ifrsft(F, FrParams{alpha}, g, Mode::kCorrected);
  CHECK_LE(max_abs_difference(rc, f), 1e-11 * rel_scale(f));

  const double overshoot = std::pow(1.0 / std::sin(alpha), 1.5);
  const auto rv = ifrsft(F, FrParams{alpha}, g, Mode::kVerbatim);
  CHECK_LE(max_abs_difference(rv, field_scale(f, overshoot)), 1e-11 * rel_scale(f));
}

TEST_CASE("fractional transform equals the rotation-matrix transform up to a constant") {
  const double alpha = 0.9;
  const auto g = centered_space_grid({3, 3, 4, 2}, {0.6, 0.55, 0.5, 0.8});
  const auto f = random_signal(g, 0xC0FFEE04);
  const auto wg = conjugate_grid(g, std::sin(alpha));
  const LcParams rot{std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha)};

  const auto F = frsft(f, FrParams{alpha}, wg);
  const auto expect =
      rotate_scale(lcst(f, rot, wg), 0.25 * (2.0 * alpha - kTau / 2.0), std::pow(kTau, 1.5));
  CHECK_LE(max_abs_difference(F, expect), 1e-11 * rel_scale(F));
}

TEST_CASE("lcst at the quarter rotation matches the plain transform scaled down") {
  const auto g = centered_space_grid({3, 3, 3, 4}, {0.7, 0.6, 0.5, 0.45});
  const auto f = random_signal(g, 0xC0FFEE05);
  const auto wg = conjugate_grid(g, 1.0);
  const auto L = lcst(f, LcParams{0.0, 1.0, -1.0, 0.0}, wg);
  const auto expect = field_scale(sft(f, wg), std::pow(kTau, -1.5));
  CHECK_LE(max_abs_difference(L, expect), 1e-12 * rel_scale(expect));
}

TEST_CASE("lcst round trips on the conjugate grid") {
  const auto g = centered_space_grid({4, 4, 4, 4}, {0.7, 0.5, 0.6, 0.4});
  const auto f = random_signal(g, 0xC0FFEE06);
  for (const LcParams& A :
       {LcParams{1.0, 1.0, 0.0, 1.0}, LcParams{2.0, 1.0, 1.0, 1.0}, LcParams{1.0, -1.0, 0.0, 1.0}}) {
    const auto r = ilcst(lcst(f, A, conjugate_grid(g, A.b)), A, g);
    CHECK_LE(max_abs_difference(r, f), 1e-11 * rel_scale(f));
  }
}

TEST_CASE("degenerate coupling reduces to a temporal transform on scaled points") {
  const auto g = small_grid({4, 3, 3, 3}, {0.7, 0.5, 0.6, 0.4}, {-1.4, -0.5, -0.6, -0.4});
  const auto f = random_signal(g, 0xC0FFEE07);
  const LcParams A{1.0, 0.0, 0.5, 1.0};

  // Frequency grid whose spatial axes coincide with the sample lattice, so
  // d w = w lands on grid sites exactly.
  FrequencyGrid wg;
  const auto tg = conjugate_grid(g, 1.0);
  wg.n = g.n;
  wg.spacing = {tg.spacing[0], g.spacing[1], g.spacing[2], g.spacing[3]};
  wg.origin = {tg.origin[0], g.origin[1], g.origin[2], g.origin[3]};

  const auto F = lcst(f, A, wg);

  for (std::int64_t m = 0; m < wg.total(); ++m) {
    const auto midx = wg.unflat(m);
    const double wt = wg.coord(0, midx[0]);
    double wsq = 0.0;
    for (int axis = 1; axis <= 3; ++axis) {
      const double wk = wg.coord(axis, midx[axis]);
      wsq += wk * wk;
    }
    Multivector acc{};
    for (int jt = 0; jt < g.n[0]; ++jt) {
      const double ang = -wt * g.coord(0, jt);
      const Multivector rot = blade_exp(Multivector::blade(kEt), ang);
      acc += geometric_product(rot, f.at({jt, midx[1], midx[2], midx[3]}));
    }
    acc = acc * g.spacing[0];
    const Multivector expect = geometric_product(
        acc, blade_exp(Multivector::blade(kI3), 0.5 * A.c * A.d * wsq));
    CHECK_LE(testing::max_abs_diff(F.data[m], expect), 1e-12 * rel_scale(F));
  }

  CHECK_THROWS_AS(lcst(f, LcParams{-1.0, 0.0, 0.0, -1.0}, wg), std::domain_error);
  CHECK_THROWS_AS(ilcst(F, A, g), std::domain_error);
}

TEST_CASE("two-sided with unit rotations matches the plain transform scaled down") {
  const auto g = centered_space_grid({3, 3, 4, 3}, {0.7, 0.6, 0.5, 0.45});
  const auto f = random_signal(g, 0xC0FFEE08);
  const auto wg = conjugate_grid(g, 1.0);
  const TwoSidedParams P{{0.0, 1.0, -1.0, 0.0}, {0.0, 1.0, -1.0, 0.0}};
  const auto F = two_sided_lcst(f, P, wg, Mode::kCorrected);
  const auto expect = field_scale(sft(f, wg), std::pow(kTau, -2.0));
  CHECK_LE(max_abs_difference(F, expect), 1e-12 * rel_scale(expect));
}

TEST_CASE("two-sided round trip: corrected exact, published constant leaves a defect") {
  const auto g = centered_space_grid({4, 4, 4, 4}, {0.7, 0.5, 0.6, 0.4});
  const auto f = random_signal(g, 0xC0FFEE09);
  const TwoSidedParams P{{1.0, 0.5, 2.0, 2.0}, {0.0, 2.0, -0.5, 0.0}};
  const auto wg = conjugate_grid_two_sided(g, P.m1.b, P.m2.b);

  const auto Fc = two_sided_lcst(f, P, wg, Mode::kCorrected);
  const auto rc = two_sided_ilcst(Fc, P, g, Mode::kCorrected);
  CHECK_LE(max_abs_difference(rc, f), 1e-11 * rel_scale(f));

  const auto Fv = two_sided_lcst(f, P, wg, Mode::kVerbatim);
  const auto rv = two_sided_ilcst(Fv, P, g, Mode::kVerbatim);
  const double defect = std::pow(kTau * P.m2.b, 2.0);
  CHECK_LE(max_abs_difference(rv, field_scale(f, defect)), 1e-9 * defect * rel_scale(f));

  // Negative temporal coupling: branch constants cancel in the round trip.
  const TwoSidedParams Pn{{0.0, -1.0, 1.0, 0.0}, {1.0, 1.0, 0.0, 1.0}};
  const auto wgn = conjugate_grid_two_sided(g, Pn.m1.b, Pn.m2.b);
  const auto rn =
      two_sided_ilcst(two_sided_lcst(f, Pn, wgn, Mode::kCorrected), Pn, g, Mode::kCorrected);
  CHECK_LE(max_abs_difference(rn, f), 1e-11 * rel_scale(f));
}

TEST_CASE("fast forward paths match the direct quadrature paths") {
  const auto g = small_grid({4, 4, 3, 5}, {0.7, 0.5, 0.6, 0.4}, {0.3, -0.2, 0.15, 0.4});
  const auto f = random_signal(g, 0xC0FFEE0A);

  SUBCASE("plain") {
    const auto fast = sft_fast(f);
    const auto ref = sft(f, conjugate_grid(g, 1.0));
    CHECK(fast.grid == ref.grid);
    CHECK_LE(max_abs_difference(fast, ref), 1e-11 * rel_scale(ref));
  }
  SUBCASE("lcst") {
    const LcParams A{2.0, 1.0, 1.0, 1.0};
    const auto fast = lcst_fast(f, A);
    const auto ref = lcst(f, A, conjugate_grid(g, A.b));
    CHECK_LE(max_abs_difference(fast, ref), 1e-11 * rel_scale(ref));
  }
  SUBCASE("lcst with negative coupling") {
    const LcParams A{1.0, -1.0, 0.0, 1.0};
    const auto fast = lcst_fast(f, A);
    const auto ref = lcst(f, A, conjugate_grid(g, A.b));
    CHECK_LE(max_abs_difference(fast, ref), 1e-11 * rel_scale(ref));
  }
  SUBCASE("fractional") {
    const FrParams p{0.7};
    const auto fast = frsft_fast(f, p);
    const auto ref = frsft(f, p, conjugate_grid(g, std::sin(p.alpha)));
    CHECK_LE(max_abs_difference(fast, ref), 1e-11 * rel_scale(ref));
  }
  SUBCASE("two-sided, both modes") {
    const TwoSidedParams P{{1.0, 0.5, 2.0, 2.0}, {0.0, 2.0, -0.5, 0.0}};
    const auto wg = conjugate_grid_two_sided(g, P.m1.b, P.m2.b);
    for (Mode mode : {Mode::kCorrected, Mode::kVerbatim}) {
      const auto fast = two_sided_lcst_fast(f, P, mode);
      const auto ref = two_sided_lcst(f, P, wg, mode);
      CHECK_LE(max_abs_difference(fast, ref), 1e-11 * rel_scale(ref));
    }
  }
}

TEST_CASE("fast inverse paths match the direct quadrature paths") {
  const auto g = small_grid({4, 4, 3, 5}, {0.7, 0.5, 0.6, 0.4}, {0.3, -0.2, 0.15, 0.4});
  const auto f = random_signal(g, 0xC0FFEE0B);

  SUBCASE("plain") {
    const auto F = sft_fast(f);
    const auto fast = isft_fast(F, g);
    const auto ref = isft(F, g);
    CHECK_LE(max_abs_difference(fast, ref), 1e-11 * rel_scale(ref));
    CHECK_LE(max_abs_difference(fast, f), 1e-11 * rel_scale(f));
  }
  SUBCASE("lcst") {
    const LcParams A{2.0, 1.0, 1.0, 1.0};
    const auto F = lcst_fast(f, A);
    const auto fast = ilcst_fast(F, A, g);
    CHECK_LE(max_abs_difference(fast, ilcst(F, A, g)), 1e-11 * rel_scale(f));
    CHECK_LE(max_abs_difference(fast, f), 1e-11 * rel_scale(f));
  }
  SUBCASE("lcst with negative coupling") {
    const LcParams A{1.0, -1.0, 0.0, 1.0};
    const auto F = lcst_fast(f, A);
    CHECK_LE(max_abs_difference(ilcst_fast(F, A, g), f), 1e-11 * rel_scale(f));
  }
  SUBCASE("fractional, both modes") {
    const FrParams p{1.1};
    const auto F = frsft_fast(f, p);
    const auto fast_c = ifrsft_fast(F, p, g, Mode::kCorrected);
    CHECK_LE(max_abs_difference(fast_c, f), 1e-11 * rel_scale(f));
    const auto fast_v = ifrsft_fast(F, p, g, Mode::kVerbatim);
    const auto ref_v = ifrsft(F, p, g, Mode::kVerbatim);
    CHECK_LE(max_abs_difference(fast_v, ref_v), 1e-11 * rel_scale(ref_v));
  }
  SUBCASE("two-sided") {
    const TwoSidedParams P{{1.0, 0.5, 2.0, 2.0}, {0.0, 2.0, -0.5, 0.0}};
    const auto F = two_sided_lcst_fast(f, P, Mode::kCorrected);
    const auto fast = two_sided_ilcst_fast(F, P, g, Mode::kCorrected);
    CHECK_LE(max_abs_difference(fast, two_sided_ilcst(F, P, g, Mode::kCorrected)),
             1e-11 * rel_scale(f));
    CHECK_LE(max_abs_difference(fast, f), 1e-11 * rel_scale(f));
  }
}

TEST_CASE("transform parameter and grid validation") {
  const auto g = centered_space_grid({3, 3, 3, 3}, {0.7, 0.6, 0.5, 0.45});
  const auto f = random_signal(g, 0xC0FFEE0C);
  const auto wg = conjugate_grid(g, 1.0);

  CHECK_THROWS_AS(lcst(f, LcParams{1.0, 1.0, 1.0, 1.0}, wg), std::domain_error);
  CHECK_THROWS_AS(frsft(f, FrParams{0.0}, wg), std::domain_error);
  CHECK_THROWS_AS(frsft(f, FrParams{-0.3}, wg), std::domain_error);
  CHECK_THROWS_AS(two_sided_lcst(f, TwoSidedParams{{1.0, 0.0, 0.0, 1.0}, {0.0, 1.0, -1.0, 0.0}},
                                 wg, Mode::kCorrected),
                  std::domain_error);

  // Spectrum sampled for one coupling cannot feed a fast inverse with another.
  const auto F = lcst_fast(f, LcParams{1.0, 2.0, 0.0, 1.0});
  CHECK_THROWS_AS(ilcst_fast(F, LcParams{1.0, 1.0, 0.0, 1.0}, g), std::invalid_argument);
}
