#include "stlcst/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "stlcst/convolution.hpp"
#include "stlcst/transforms.hpp"

namespace stlcst {
namespace {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kPi = kTau / 2.0;

template <class FieldT>
double rel_l2(const FieldT& got, const FieldT& want) {
  return field_norm(field_sub(got, want)) / std::max(1e-300, field_norm(want));
}

SpaceTimeSignal random_signal(const SpaceTimeGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_field(g, rng);
}

template <class FieldT>
FieldT pointwise_product(const FieldT& a, const FieldT& b) {
  FieldT r = a;
  for (std::size_t j = 0; j < r.data.size(); ++j) {
    r.data[j] = geometric_product(a.data[j], b.data[j]);
  }
  return r;
}

// Uniform [-1,1] coefficients scaled to unit norm; the harness draw, chosen so
// every blade is exercised with bounded dynamic range.
Multivector unit_uniform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Multivector h{};
  for (double& x : h.c) x = dist(rng);
  const double n = norm(h);
  return h * (1.0 / (n > 0 ? n : 1.0));
}

double max_coeff(const Multivector& h) {
  double m = 0.0;
  for (double x : h.c) m = std::max(m, std::abs(x));
  return m;
}

std::array<int, 4> zero_index(const std::array<double, 4>& origin,
                              const std::array<double, 4>& spacing, const std::array<int, 4>& n) {
  std::array<int, 4> z{};
  for (int ax = 0; ax < 4; ++ax) {
    const double pos = -origin[ax] / spacing[ax];
    z[ax] = static_cast<int>(std::llround(pos)) % n[ax];
    if (z[ax] < 0) z[ax] += n[ax];
    if (std::abs(pos - std::llround(pos)) > 1e-9) {
      throw std::domain_error("verify: grid origin off the lattice");
    }
  }
  return z;
}

// Reflection about coordinate zero; an exact relabel on odd centered grids.
template <class FieldT>
FieldT flip_about_zero(const FieldT& f) {
  const auto& g = f.grid;
  const auto z = zero_index(g.origin, g.spacing, g.n);
  FieldT r = f;
  for (std::int64_t j = 0; j < g.total(); ++j) {
    auto idx = g.unflat(j);
    for (int ax = 0; ax < 4; ++ax) {
      idx[ax] = (2 * z[ax] - idx[ax]) % g.n[ax];
      if (idx[ax] < 0) idx[ax] += g.n[ax];
    }
    r.data[g.flat(idx)] = f.data[j];
  }
  return r;
}

SpaceTimeSignal central_difference(const SpaceTimeSignal& f, int axis) {
  const auto& g = f.grid;
  SpaceTimeSignal d = zero_field(g);
  const double inv = 1.0 / (2.0 * g.spacing[axis]);
  for (std::int64_t j = 0; j < g.total(); ++j) {
    auto ip = g.unflat(j);
    auto im = ip;
    ip[axis] = (ip[axis] + 1) % g.n[axis];
    im[axis] = (im[axis] - 1 + g.n[axis]) % g.n[axis];
    d.data[j] = (f.at(ip) - f.at(im)) * inv;
  }
  return d;
}

SpaceTimeSignal coordinate_multiply(const SpaceTimeSignal& f, int axis) {
  SpaceTimeSignal r = f;
  for (std::int64_t j = 0; j < f.grid.total(); ++j) {
    r.data[j] = f.data[j] * f.grid.coord(axis, f.grid.unflat(j)[axis]);
  }
  return r;
}

// Per-sample right factor exp(i3 * coeff * |spatial part|^2).
SpaceTimeSignal chirp_right(const SpaceTimeSignal& f, double coeff) {
  SpaceTimeSignal r = f;
  for (std::int64_t j = 0; j < f.grid.total(); ++j) {
    const auto idx = f.grid.unflat(j);
    double q = 0.0;
    for (int ax = 1; ax < 4; ++ax) {
      const double x = f.grid.coord(ax, idx[ax]);
      q += x * x;
    }
    const double ang = coeff * q;
    r.data[j] = right_rotor_i3(f.data[j], std::cos(ang), std::sin(ang));
  }
  return r;
}

FrequencyGrid window_grid(const std::array<int, 4>& n, const std::array<double, 4>& spacing) {
  FrequencyGrid w{n, spacing, {}};
  for (int k = 0; k < 4; ++k) w.origin[k] = -(n[k] / 2) * spacing[k];
  w.validate();
  return w;
}

std::string lc_str(const LcParams& A) {
  std::ostringstream o;
  o << "A=(" << A.a << "," << A.b << ";" << A.c << "," << A.d << ")";
  return o.str();
}

std::string two_str(const TwoSidedParams& P) {
  std::ostringstream o;
  o << "A1=(" << P.m1.a << "," << P.m1.b << ";" << P.m1.c << "," << P.m1.d << ") A2=(" << P.m2.a
    << "," << P.m2.b << ";" << P.m2.c << "," << P.m2.d << ")";
  return o.str();
}

ResidualReport make_report(std::string name, std::string anchor, double residual, double tolerance,
                           std::string params, std::string notes) {
  ResidualReport r;
  r.check_name = std::move(name);
  r.anchor = std::move(anchor);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  r.params = std::move(params);
  r.notes = std::move(notes);
  return r;
}

template <class GridT>
void stamp_grid(ResidualReport& r, const GridT& g) {
  r.grid_dims = g.n;
  r.grid_spacing = g.spacing;
}

double median_ratio(const std::vector<double>& v) {
  std::vector<double> c = v;
  std::nth_element(c.begin(), c.begin() + c.size() / 2, c.end());
  return c[c.size() / 2];
}

// Median pointwise component ratio num/den over components that carry weight.
double fit_constant(const SpaceTimeSignal& num, const SpaceTimeSignal& den) {
  const double floor = 1e-6 * max_coeff_abs(den);
  std::vector<double> ratios;
  for (std::size_t j = 0; j < num.data.size(); ++j) {
    for (int i = 0; i < kNumBlades; ++i) {
      if (std::abs(den.data[j][i]) > floor) ratios.push_back(num.data[j][i] / den.data[j][i]);
    }
  }
  if (ratios.size() < 16) throw std::runtime_error("verify: too few components to fit a constant");
  return median_ratio(ratios);
}

}  // namespace

// ---------------------------------------------------------------------------
// Algebra identities on random multivectors.

std::vector<ResidualReport> check_algebra(const VerifyConfig& cfg) {
  constexpr int kDraws = 1000;
  std::mt19937_64 rng(cfg.seed + 11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  double r_grade = 0, r_split = 0, r_shift = 0, r_norm_split = 0, r_reverse = 0, r_trace = 0,
         r_cyclic = 0, r_isometry = 0, r_orth = 0, r_assoc = 0;

  for (int d = 0; d < kDraws; ++d) {
    const Multivector h1 = unit_uniform(rng);
    const Multivector h2 = unit_uniform(rng);
    const Multivector h3 = unit_uniform(rng);
    const double a1 = angle(rng);
    const double a2 = angle(rng);

    Multivector part_sum{};
    for (int k = 0; k <= 4; ++k) part_sum += grade(h1, k);
    r_grade = std::max(r_grade, max_coeff(part_sum - h1));

    const auto [hp, hm] = split(h1);
    r_split = std::max(r_split, max_coeff(hp + hm - h1));
    r_split = std::max(r_split, max_coeff(split(hp).first - hp));
    r_split = std::max(r_split, max_coeff(split(hp).second));
    r_split = std::max(r_split, max_coeff(split(hm).second - hm));
    r_split = std::max(r_split, max_coeff(split(hm).first));

    const Multivector et_rot = blade_exp(Multivector::blade(kEt), a1);
    const Multivector i3_rot = blade_exp(Multivector::blade(kI3), a2);
    const Multivector lhs_p = geometric_product(geometric_product(et_rot, hp), i3_rot);
    const Multivector lhs_m = geometric_product(geometric_product(et_rot, hm), i3_rot);
    const Multivector rhs_p =
        geometric_product(hp, blade_exp(Multivector::blade(kI3), a2 - a1));
    const Multivector rhs_m =
        geometric_product(hm, blade_exp(Multivector::blade(kI3), a2 + a1));
    r_shift = std::max(r_shift, max_coeff(lhs_p - rhs_p));
    r_shift = std::max(r_shift, max_coeff(lhs_m - rhs_m));

    const double n2 = norm(h1) * norm(h1);
    r_norm_split =
        std::max(r_norm_split, std::abs(n2 - norm(hp) * norm(hp) - norm(hm) * norm(hm)) / n2);

    const Multivector p12 = geometric_product(h1, h2);
    r_reverse = std::max(
        r_reverse, max_coeff(reverse(p12) - geometric_product(reverse(h2), reverse(h1))));
    r_reverse = std::max(r_reverse, max_coeff(reverse(reverse(h1)) - h1));

    r_trace = std::max(r_trace, std::abs(trace(h1) - h1[kScalar]));
    r_trace = std::max(r_trace, std::abs(trace(h1 + h2) - trace(h1) - trace(h2)));

    const Multivector p123 = geometric_product(p12, h3);
    const Multivector p312 = geometric_product(geometric_product(h3, h1), h2);
    r_cyclic = std::max(r_cyclic, std::abs(trace(p123) - trace(p312)));

    const Multivector rotated = geometric_product(geometric_product(et_rot, h1), i3_rot);
    r_isometry = std::max(r_isometry, std::abs(norm(rotated) - norm(h1)));
    const Multivector sandwich =
        geometric_product(geometric_product(Multivector::blade(kEt), h1), Multivector::blade(kI3));
    r_isometry = std::max(r_isometry, std::abs(norm(sandwich) - norm(h1)));

    r_orth = std::max(r_orth, std::abs(orthogonality_check(h1, h2, a1)));

    r_assoc = std::max(r_assoc, max_coeff(p123 - geometric_product(h1, geometric_product(h2, h3))));
  }

  // Generator relations read off the product table; no randomness involved.
  double r_sig = 0;
  const std::array<int, 4> gens = {kEt, kE1, kE2, kE3};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Multivector ei = Multivector::blade(gens[i]);
      const Multivector ej = Multivector::blade(gens[j]);
      const Multivector anti = geometric_product(ei, ej) + geometric_product(ej, ei);
      const double expected = (i == j) ? (gens[i] == kEt ? -2.0 : 2.0) : 0.0;
      r_sig = std::max(r_sig, max_coeff(anti - Multivector::scalar(expected)));
    }
  }
  for (int ps : {kI3, kIst}) {
    const Multivector sq = geometric_product(Multivector::blade(ps), Multivector::blade(ps));
    r_sig = std::max(r_sig, max_coeff(sq - Multivector::scalar(-1.0)));
  }

  const std::string n_str = "1000 unit draws, uniform coefficients";
  std::vector<ResidualReport> out;
  out.push_back(make_report(
      "generator signature and anticommutation", "algebra/generator-signature", r_sig, 1e-12, "",
      "temporal generator squares to -1, spatial to +1; both pseudoscalars square to -1"));
  out.push_back(make_report("grade projection partitions the algebra", "algebra/grade-partition",
                            r_grade, 1e-12, n_str, ""));
  out.push_back(make_report("split reconstructs and projects idempotently",
                            "algebra/split-reconstruction", r_split, 1e-12, n_str, ""));
  out.push_back(make_report(
      "split parts carry exponentials across", "algebra/split-shift", r_shift, 1e-12, n_str,
      "left temporal exponential crosses a split part into a right spatial one"));
  out.push_back(make_report("split parts add norms", "algebra/split-norm", r_norm_split, 1e-12,
                            n_str, ""));
  out.push_back(make_report("reverse is an anti-automorphism", "algebra/reverse-antiautomorphism",
                            r_reverse, 1e-12, n_str, ""));
  out.push_back(make_report("trace reads the scalar coefficient", "algebra/trace-scalar-part",
                            r_trace, 1e-12, n_str, ""));
  out.push_back(make_report("trace is cyclic on triple products", "algebra/trace-cyclicity",
                            r_cyclic, 1e-12, n_str, "absolute residual on unit-norm triples"));
  out.push_back(make_report("two-sided rotors preserve the norm", "algebra/rotor-isometry",
                            r_isometry, 1e-12, n_str, ""));
  out.push_back(make_report("opposite split parts are trace-orthogonal",
                            "algebra/split-orthogonality", r_orth, 1e-12, n_str,
                            "absolute residual"));
  out.push_back(make_report("geometric product is associative", "algebra/associativity", r_assoc,
                            1e-10, n_str, ""));
  return out;
}

// ---------------------------------------------------------------------------
// Round trips.

std::vector<ResidualReport> check_inversions(const VerifyConfig& cfg) {
  std::vector<ResidualReport> out;
  const bool verbatim = cfg.mode == Mode::kVerbatim;

  const auto g8 = centered_space_grid({8, 8, 8, 8}, {0.8, 0.75, 0.75, 0.8});
  bool contained = false;
  const auto f8 = gaussian_packet(g8, {0, 0, 0, 0}, {0.5, 0.5, 0.5, 0.5},
                                  Multivector::scalar(1.0) + Multivector::blade(kE2, 0.6), 1.3,
                                  {0.8, 0.0, 0.5}, &contained);

  {
    const auto wg = conjugate_grid(g8, 1.0);
    const auto back = isft(sft(f8, wg), g8);
    auto r = make_report("plain transform round trip", "sft-inversion", rel_l2(back, f8), 1e-6,
                         "unit coupling",
                         std::string("direct quadrature both directions; probe ") +
                             (contained ? "contained" : "not contained"));
    stamp_grid(r, g8);
    out.push_back(std::move(r));
  }

  for (const LcParams& A : {LcParams{2.0, 1.0, 1.0, 1.0}, LcParams{3.0, 2.0, 1.0, 1.0}}) {
    const auto back = ilcst_fast(lcst_fast(f8, A), A, g8);
    auto r = make_report("one-sided round trip", "lcst-inversion", rel_l2(back, f8), 1e-6,
                         lc_str(A), "");
    stamp_grid(r, g8);
    out.push_back(std::move(r));
  }

  for (double alpha : {kPi / 3.0, 1.2}) {
    const FrParams p{alpha};
    const auto back = ifrsft_fast(frsft_fast(f8, p), p, g8, cfg.mode);
    std::ostringstream ps;
    ps << "alpha=" << alpha;
    auto r = make_report("fractional round trip", "frsft-inversion", rel_l2(back, f8), 1e-6,
                         ps.str(), "");
    stamp_grid(r, g8);
    if (verbatim) {
      r.expected_deviation = true;
      r.fitted_constants["overshoot"] = field_norm(back) / field_norm(f8);
      r.fitted_constants["predicted_overshoot"] = std::pow(1.0 / std::sin(alpha), 1.5);
      r.notes = "published inverse keeps a csc(alpha)^{3/2} prefactor the conjugated kernel "
                "already carries; round trip scales by it";
    }
    out.push_back(std::move(r));
  }

  {
    const TwoSidedParams P{{1.0, 0.5, 2.0, 2.0}, {0.0, 2.0, -0.5, 0.0}};
    const auto back = two_sided_ilcst_fast(two_sided_lcst_fast(f8, P, cfg.mode), P, g8, cfg.mode);
    auto r = make_report("two-sided round trip", "two-sided-inversion", rel_l2(back, f8), 1e-6,
                         two_str(P), "");
    stamp_grid(r, g8);
    if (verbatim) {
      r.expected_deviation = true;
      r.fitted_constants["round_trip_factor"] = field_norm(back) / field_norm(f8);
      r.fitted_constants["predicted_factor"] = std::pow(kTau * P.m2.b, 2.0);
      r.notes = "published right kernel applies a one-axis constant to a three-axis integral";
    }
    out.push_back(std::move(r));
  }

  {
    // Constant fit for the published two-sided kernel, in either mode.
    const TwoSidedParams P{{1.0, 0.5, 2.0, 2.0}, {0.0, 2.0, -0.5, 0.0}};
    const double predicted = std::pow(kTau * P.m2.b, 2.0);
    double fit4 = 0, fit8 = 0, prop = 0;
    const auto g4 = centered_space_grid({4, 4, 4, 4}, {1.6, 1.5, 1.5, 1.6});
    for (int pass = 0; pass < 2; ++pass) {
      const auto& g = pass == 0 ? g4 : g8;
      const auto f = random_signal(g, cfg.seed + 21 + pass);
      const auto rv =
          two_sided_ilcst_fast(two_sided_lcst_fast(f, P, Mode::kVerbatim), P, g, Mode::kVerbatim);
      const double fit = field_norm(rv) / field_norm(f);
      prop = std::max(prop, rel_l2(rv, field_scale(f, fit)));
      (pass == 0 ? fit4 : fit8) = fit;
    }
    const double residual = std::max({prop, std::abs(fit4 - predicted) / predicted,
                                      std::abs(fit8 - predicted) / predicted,
                                      std::abs(fit4 - fit8) / predicted});
    auto r = make_report("two-sided published-constant round-trip defect",
                         "two-sided-constant-defect", residual, 0.01, two_str(P),
                         "round trip with published constants scales by (2 pi B2)^2, "
                         "grid-independently; residual folds the proportionality defect and "
                         "both constant fits");
    stamp_grid(r, g8);
    r.fitted_constants = {{"defect_4", fit4}, {"defect_8", fit8}, {"predicted", predicted}};
    r.expected_deviation = true;
    out.push_back(std::move(r));
  }

  {
    const double alpha = 1.1;
    const FrParams p{alpha};
    const double predicted = std::pow(1.0 / std::sin(alpha), 1.5);
    double fit4 = 0, fit8 = 0, prop = 0;
    const auto g4 = centered_space_grid({4, 4, 4, 4}, {1.6, 1.5, 1.5, 1.6});
    for (int pass = 0; pass < 2; ++pass) {
      const auto& g = pass == 0 ? g4 : g8;
      const auto f = random_signal(g, cfg.seed + 31 + pass);
      const auto rv = ifrsft_fast(frsft_fast(f, p), p, g, Mode::kVerbatim);
      const double fit = field_norm(rv) / field_norm(f);
      prop = std::max(prop, rel_l2(rv, field_scale(f, fit)));
      (pass == 0 ? fit4 : fit8) = fit;
    }
    const double residual = std::max({prop, std::abs(fit4 - predicted) / predicted,
                                      std::abs(fit8 - predicted) / predicted,
                                      std::abs(fit4 - fit8) / predicted});
    auto r = make_report("fractional published-inverse overshoot", "frsft-inverse-constant",
                         residual, 0.01, "alpha=1.1",
                         "published inverse round trip scales by csc(alpha)^{3/2}");
    stamp_grid(r, g8);
    r.fitted_constants = {{"overshoot_4", fit4}, {"overshoot_8", fit8}, {"predicted", predicted}};
    r.expected_deviation = true;
    out.push_back(std::move(r));
  }

  {
    // Fractional transform against the rotation-matrix transform, independent
    // routes: direct quadrature versus the split/chirp/FFT path.
    const double alpha = 0.9;
    const auto g = centered_space_grid({4, 4, 4, 4}, {0.6, 0.55, 0.5, 0.8});
    const auto f = random_signal(g, cfg.seed + 41);
    const auto wg = conjugate_grid(g, std::sin(alpha));
    const LcParams rot{std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha)};
    const auto F = frsft(f, FrParams{alpha}, wg);
    auto expect = lcst_fast(f, rot);
    const Multivector tw = blade_exp(Multivector::blade(kI3), 0.25 * (2.0 * alpha - kPi));
    for (auto& h : expect.data) h = geometric_product(h, tw) * std::pow(kTau, 1.5);
    auto r = make_report("fractional transform reduces to the rotation-matrix transform",
                         "frsft-lcst-reduction", rel_l2(F, expect), 1e-10, "alpha=0.9",
                         "equal up to (2 pi)^{3/2} and a fixed spatial rotor");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Covariances of the one-sided transform.

std::vector<ResidualReport> check_covariances(const VerifyConfig& cfg) {
  std::vector<ResidualReport> out;
  const bool verbatim = cfg.mode == Mode::kVerbatim;
  const LcParams A{2.0, 1.0, 1.0, 1.0};

  {
    const auto g = centered_space_grid({4, 4, 4, 4}, {0.7, 0.5, 0.6, 0.4});
    const auto f = random_signal(g, cfg.seed + 51);
    const auto h = random_signal(g, cfg.seed + 52);
    const Multivector M = Multivector::blade(kEt12);
    const Multivector N = Multivector::blade(kI3);
    auto combo = zero_field(g);
    for (std::int64_t j = 0; j < g.total(); ++j) {
      combo.data[j] = geometric_product(M, f.data[j]) + geometric_product(h.data[j], N);
    }
    const auto Lf = lcst_fast(f, A);
    const auto Lh = lcst_fast(h, A);
    auto rhs = Lf;
    for (std::size_t j = 0; j < rhs.data.size(); ++j) {
      rhs.data[j] = geometric_product(M, Lf.data[j]) + geometric_product(Lh.data[j], N);
    }
    auto r = make_report("kernel-commutant linearity", "covariance/linearity",
                         rel_l2(lcst_fast(combo, A), rhs), 1e-10, lc_str(A),
                         "left factor from the temporal-kernel commutant, right factor from the "
                         "spatial algebra");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  {
    const auto g = centered_space_grid({4, 4, 4, 4}, {0.7, 0.5, 0.6, 0.4});
    const auto f = random_signal(g, cfg.seed + 53);
    const auto wg = conjugate_grid(g, A.b);
    const double ut = wg.spacing[0];
    const std::array<double, 3> us = {wg.spacing[1] / A.b, wg.spacing[2] / A.b,
                                      wg.spacing[3] / A.b};
    auto mod = f;
    for (std::int64_t j = 0; j < g.total(); ++j) {
      const auto idx = g.unflat(j);
      const double t = g.coord(0, idx[0]);
      double sp = 0.0;
      for (int ax = 1; ax < 4; ++ax) sp += g.coord(ax, idx[ax]) * us[ax - 1];
      Multivector v = left_rotor_et(f.data[j], std::cos(ut * t), -std::sin(ut * t));
      mod.data[j] = right_rotor_i3(v, std::cos(sp), -std::sin(sp));
    }
    const auto lhs = lcst(mod, A, wg);
    auto wg2 = wg;
    wg2.origin[0] += ut;
    for (int ax = 1; ax < 4; ++ax) wg2.origin[ax] += A.b * us[ax - 1];
    const auto L2 = lcst(f, A, wg2);
    auto rhs = lhs;
    double u2 = 0.0;
    for (double u : us) u2 += u * u;
    for (std::int64_t j = 0; j < wg.total(); ++j) {
      const auto idx = wg.unflat(j);
      double wu = 0.0;
      for (int ax = 1; ax < 4; ++ax) wu += wg.coord(ax, idx[ax]) * us[ax - 1];
      const double ang = -0.5 * A.d * (A.b * u2 + 2.0 * wu);
      rhs.data[j] = right_rotor_i3(L2.data[j], std::cos(ang), std::sin(ang));
    }
    auto r = make_report("modulation shifts the frequency argument", "covariance/modulation",
                         rel_l2(lhs, rhs), 1e-8, lc_str(A),
                         "one lattice step per axis; spatial shift scales with the coupling");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  {
    const LcParams At{2.0, 1.0, 3.0, 2.0};
    const auto g = centered_space_grid({6, 6, 6, 6}, {0.5, 0.5, 0.55, 0.45});
    auto f = random_signal(g, cfg.seed + 54);
    for (std::int64_t j = 0; j < g.total(); ++j) {
      const auto idx = g.unflat(j);
      for (int ax = 0; ax < 4; ++ax) {
        if (idx[ax] == 0 || idx[ax] == g.n[ax] - 1) f.data[j] = Multivector{};
      }
    }
    const std::array<double, 4> y = {g.spacing[0], g.spacing[1], g.spacing[2], g.spacing[3]};
    auto trans = f;
    for (std::int64_t j = 0; j < g.total(); ++j) {
      auto idx = g.unflat(j);
      for (int ax = 0; ax < 4; ++ax) idx[ax] = (idx[ax] - 1 + g.n[ax]) % g.n[ax];
      trans.data[j] = f.at(idx);
    }
    const double c_used = verbatim ? (1.0 - At.a) / At.b : (1.0 - At.a * At.d) / At.b;
    const auto wg = conjugate_grid(g, At.b);
    const auto lhs = lcst(trans, At, wg);
    auto wg2 = wg;
    for (int ax = 1; ax < 4; ++ax) wg2.origin[ax] -= At.a * y[ax];
    const auto L2 = lcst(f, At, wg2);
    double y2 = 0.0;
    for (int ax = 1; ax < 4; ++ax) y2 += y[ax] * y[ax];
    auto rhs = lhs;
    for (std::int64_t j = 0; j < wg.total(); ++j) {
      const auto idx = wg.unflat(j);
      const double wt = wg.coord(0, idx[0]);
      double yw = 0.0;
      for (int ax = 1; ax < 4; ++ax) yw += wg.coord(ax, idx[ax]) * y[ax];
      Multivector v = left_rotor_et(L2.data[j], std::cos(y[0] * wt), -std::sin(y[0] * wt));
      const double ang = c_used * (0.5 * At.a * y2 - yw);
      rhs.data[j] = right_rotor_i3(v, std::cos(ang), std::sin(ang));
    }
    auto r = make_report("translation twists by the matrix phase", "covariance/translation",
                         rel_l2(lhs, rhs), 1e-8, lc_str(At),
                         "probe vanishes on the boundary planes, so the lattice shift is exact");
    stamp_grid(r, g);
    r.fitted_constants["phase_coefficient"] = c_used;
    r.fitted_constants["consistent_coefficient"] = (1.0 - At.a * At.d) / At.b;
    if (verbatim) {
      r.expected_deviation = true;
      r.notes += "; the published coefficient (1-a)/b differs from the consistent (1-ad)/b = -c "
                 "whenever a(d-1) != 0";
    }
    out.push_back(std::move(r));
  }

  {
    const auto g = centered_space_grid({5, 5, 5, 5}, {0.6, 0.5, 0.55, 0.45});
    const auto f = random_signal(g, cfg.seed + 55);
    const auto lhs = lcst_fast(flip_about_zero(f), A);
    const auto rhs = flip_about_zero(lcst_fast(f, A));
    auto r = make_report("reflection negates the frequency argument", "covariance/reflection",
                         rel_l2(lhs, rhs), 1e-12, lc_str(A),
                         "odd sample counts make negation an exact relabel on both lattices");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Ring constants of the pairing.

std::vector<ResidualReport> check_plancherel(const VerifyConfig& cfg) {
  (void)cfg;
  std::vector<ResidualReport> out;
  const LcParams A{2.0, 1.0, 1.0, 1.0};
  const auto g = centered_space_grid({8, 8, 8, 8}, {0.8, 0.75, 0.75, 0.8});
  bool c1 = false, c2 = false;
  const auto f1 = gaussian_packet(g, {0, 0, 0, 0}, {0.5, 0.5, 0.5, 0.5},
                                  Multivector::scalar(1.0) + Multivector::blade(kE1, 0.5), 1.0,
                                  {0.5, 0.0, 0.3}, &c1);
  const auto f2 = gaussian_packet(g, {0, 0, 0, 0}, {0.45, 0.55, 0.5, 0.45},
                                  Multivector::scalar(0.8) + Multivector::blade(kE1, 0.4) +
                                      Multivector::blade(kE23, 0.3),
                                  1.0, {0.5, 0.0, 0.3}, &c2);
  const auto F1 = lcst_fast(f1, A);
  const auto F2 = lcst_fast(f2, A);

  {
    const double ratio =
        trace(discrete_inner_product(F1, F2)) / trace(discrete_inner_product(f1, f2));
    auto r = make_report("inner products scale by one ring constant", "plancherel",
                         std::abs(ratio - kTau) / kTau, 0.01, lc_str(A),
                         "scalar part of the reversed pairing; the constant is exact on conjugate "
                         "lattices");
    stamp_grid(r, g);
    r.fitted_constants = {{"ratio", ratio}, {"target", kTau}};
    out.push_back(std::move(r));
  }
  {
    const double ratio = field_norm(F1) / field_norm(f1);
    const double target = std::sqrt(kTau);
    auto r = make_report("norms scale by the root of the ring constant", "parseval",
                         std::abs(ratio - target) / target, 0.01, lc_str(A), "");
    stamp_grid(r, g);
    r.fitted_constants = {{"ratio", ratio}, {"target", target}};
    out.push_back(std::move(r));
  }
  {
    const auto z = zero_signal(g);
    const auto Fz = lcst_fast(z, A);
    const double residual = std::abs(trace(discrete_inner_product(Fz, Fz))) +
                            std::abs(trace(discrete_inner_product(z, z)));
    auto r = make_report("zero signal pairs to zero", "plancherel", residual, 1e-12, lc_str(A),
                         "absolute residual; degenerate case");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivative identities under grid refinement.

namespace {

// Left factor e_t * w_t on each window sample.
Spectrum temporal_multiplier(const Spectrum& L) {
  Spectrum r = L;
  for (std::int64_t j = 0; j < L.grid.total(); ++j) {
    const double wt = L.grid.coord(0, L.grid.unflat(j)[0]);
    r.data[j] = left_rotor_et(L.data[j], 0.0, wt);
  }
  return r;
}

struct RefinementResult {
  double coarse = 0.0;
  double fine = 0.0;
  double ratio() const { return coarse / std::max(1e-300, fine); }
};

void stamp_refinement(ResidualReport& r, const RefinementResult& rr) {
  r.residual = rr.fine;
  r.tolerance = rr.coarse / 3.5;
  r.passed = r.residual <= r.tolerance;
  r.fitted_constants["residual_coarse"] = rr.coarse;
  r.fitted_constants["residual_fine"] = rr.fine;
  r.fitted_constants["ratio"] = rr.ratio();
}

}  // namespace

std::vector<ResidualReport> check_derivatives(const VerifyConfig& cfg) {
  std::vector<ResidualReport> out;
  const bool verbatim = cfg.mode == Mode::kVerbatim;
  const LcParams A{2.0, 1.0, 1.0, 1.0};
  const std::string halving_note = "tolerance is the coarse-grid residual over 3.5, so passing "
                                   "certifies second-order shrinkage";

  {
    // Temporal axis refined at fixed extent; window frequencies stay on the
    // shared conjugate lattice so lattice shifts close exactly.
    const auto win = window_grid({5, 3, 3, 3}, {kTau / 4.0, 0.9, 0.8, 0.85});
    RefinementResult rr;
    for (int pass = 0; pass < 2; ++pass) {
      const int nt = pass == 0 ? 16 : 32;
      const auto g = centered_space_grid({nt, 4, 4, 4}, {4.0 / nt, 0.7, 0.7, 0.7});
      bool contained = false;
      const auto f = gaussian_packet(g, {0, 0, 0, 0}, {0.4, 5.0, 5.0, 5.0},
                                     Multivector::scalar(1.0) + Multivector::blade(kE2, 0.5), 1.5,
                                     {0.7, 0.0, 0.4}, &contained);
      const auto lhs = lcst(central_difference(f, 0), A, win);
      const auto rhs = temporal_multiplier(lcst(f, A, win));
      (pass == 0 ? rr.coarse : rr.fine) = rel_l2(lhs, rhs);
    }
    auto r = make_report("temporal derivative becomes a frequency multiplier", "derivative-time",
                         0, 0, lc_str(A), halving_note);
    r.grid_dims = {32, 4, 4, 4};
    r.grid_spacing = {0.125, 0.7, 0.7, 0.7};
    stamp_refinement(r, rr);
    out.push_back(std::move(r));
  }

  {
    const auto win = window_grid({3, 5, 3, 3}, {0.9, 0.7, 0.8, 0.8});
    RefinementResult rr;
    for (int pass = 0; pass < 2; ++pass) {
      const int n1 = pass == 0 ? 16 : 32;
      const auto g = centered_space_grid({4, n1, 4, 4}, {0.7, 3.2 / n1, 0.7, 0.7});
      bool contained = false;
      const auto f = gaussian_packet(g, {0, 0, 0, 0}, {5.0, 0.32, 5.0, 5.0},
                                     Multivector::scalar(1.0) + Multivector::blade(kE13, 0.6), 1.2,
                                     {0.8, 0.0, 0.5}, &contained);
      const auto lhs = lcst(central_difference(f, 1), A, win);
      const auto Lf = lcst(f, A, win);
      const auto Lx = lcst(coordinate_multiply(f, 1), A, win);
      auto rhs = Lf;
      for (std::int64_t j = 0; j < win.total(); ++j) {
        const double w1 = win.coord(1, win.unflat(j)[1]);
        const Multivector combo = Lf.data[j] * w1 - Lx.data[j] * A.a;
        rhs.data[j] = right_rotor_i3(combo, 0.0, 1.0 / A.b);
      }
      (pass == 0 ? rr.coarse : rr.fine) = rel_l2(lhs, rhs);
    }
    auto r = make_report("spatial derivative mixes frequency and coordinate terms",
                         "derivative-space", 0, 0, lc_str(A), halving_note);
    r.grid_dims = {4, 32, 4, 4};
    r.grid_spacing = {0.7, 0.1, 0.7, 0.7};
    stamp_refinement(r, rr);
    out.push_back(std::move(r));
  }

  const auto g6 = centered_space_grid({6, 6, 6, 6}, {0.55, 0.5, 0.5, 0.55});
  bool contained6 = false;
  const auto f6 = gaussian_packet(g6, {0, 0, 0, 0}, {0.45, 0.45, 0.5, 0.45},
                                  Multivector::scalar(1.0) + Multivector::blade(kE3, 0.7), 1.4,
                                  {0.6, 0.0, 0.8}, &contained6);
  const auto win0 = window_grid({3, 2, 2, 2}, {0.8, 0.7, 0.75, 0.8});

  {
    // Frequency-side difference; the identity is exact for the lattice sum,
    // so only the step truncation remains.
    const auto Ltf = lcst(coordinate_multiply(f6, 0), A, win0);
    auto rhs = Ltf;
    for (auto& h : rhs.data) h = left_rotor_et(h, 0.0, -1.0);
    RefinementResult rr;
    for (int pass = 0; pass < 2; ++pass) {
      const double h = pass == 0 ? 0.3 : 0.15;
      auto wp = win0;
      wp.origin[0] += h;
      auto wm = win0;
      wm.origin[0] -= h;
      const auto Lp = lcst(f6, A, wp);
      const auto Lm = lcst(f6, A, wm);
      auto diff = zero_field(win0);
      for (std::size_t j = 0; j < diff.data.size(); ++j) {
        diff.data[j] = (Lp.data[j] - Lm.data[j]) * (1.0 / (2.0 * h));
      }
      (pass == 0 ? rr.coarse : rr.fine) = rel_l2(diff, rhs);
    }
    auto r = make_report("spectral temporal derivative pulls down the coordinate",
                         "derivative-spectrum-time", 0, 0, lc_str(A), halving_note);
    stamp_grid(r, g6);
    stamp_refinement(r, rr);
    out.push_back(std::move(r));
  }

  {
    const double coeff = verbatim ? A.a : A.d;
    const auto Lf0 = lcst(f6, A, win0);
    const auto Lx = lcst(coordinate_multiply(f6, 1), A, win0);
    auto rhs = Lf0;
    for (std::int64_t j = 0; j < win0.total(); ++j) {
      const double w1 = win0.coord(1, win0.unflat(j)[1]);
      const Multivector combo = Lf0.data[j] * (coeff * w1) - Lx.data[j];
      rhs.data[j] = right_rotor_i3(combo, 0.0, 1.0 / A.b);
    }
    RefinementResult rr;
    for (int pass = 0; pass < 2; ++pass) {
      const double h = pass == 0 ? 0.3 : 0.15;
      auto wp = win0;
      wp.origin[1] += h;
      auto wm = win0;
      wm.origin[1] -= h;
      const auto Lp = lcst(f6, A, wp);
      const auto Lm = lcst(f6, A, wm);
      auto diff = zero_field(win0);
      for (std::size_t j = 0; j < diff.data.size(); ++j) {
        diff.data[j] = (Lp.data[j] - Lm.data[j]) * (1.0 / (2.0 * h));
      }
      (pass == 0 ? rr.coarse : rr.fine) = rel_l2(diff, rhs);
    }
    auto r = make_report("spectral spatial derivative mixes coordinate and frequency",
                         "derivative-spectrum-space", 0, 0, lc_str(A), halving_note);
    stamp_grid(r, g6);
    stamp_refinement(r, rr);
    r.fitted_constants["coefficient_used"] = coeff;
    r.fitted_constants["consistent_coefficient"] = A.d;
    if (verbatim) {
      r.expected_deviation = true;
      r.notes = "published frequency-side coefficient reuses a where the identity needs d, so "
                "the residual stops shrinking";
    }
    out.push_back(std::move(r));
  }

  {
    const auto g = centered_space_grid({8, 3, 3, 3}, {0.5, 0.6, 0.6, 0.6});
    auto f = zero_signal(g);
    for (auto& h : f.data) h = Multivector::scalar(0.7);
    const auto win = conjugate_grid(g, A.b);
    const auto lhs = lcst(central_difference(f, 0), A, win);
    const auto rhs = temporal_multiplier(lcst(f, A, win));
    auto r = make_report("constant signal has vanishing temporal derivative", "derivative-time",
                         field_norm(lhs) + field_norm(rhs), 1e-10, lc_str(A),
                         "absolute residual; both sides vanish on the conjugate window");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Convolution theorems.

std::vector<ResidualReport> check_convolutions(const VerifyConfig& cfg) {
  std::vector<ResidualReport> out;
  const bool verbatim = cfg.mode == Mode::kVerbatim;

  {
    const auto g = centered_space_grid({4, 4, 4, 4}, {0.5, 0.45, 0.55, 0.6});
    double residual = 0.0;
    double alternate = 0.0;
    for (int pair = 0; pair < 2; ++pair) {
      const auto a = random_signal(g, cfg.seed + 61 + 2 * pair);
      const auto b = random_signal(g, cfg.seed + 62 + 2 * pair);
      const auto want = mustard_convolve(a, b);
      residual = std::max(residual, rel_l2(mustard_as_eight(a, b), want));
      if (pair == 0) {
        alternate = rel_l2(mustard_as_eight(a, b, EightTermReading::kOperandReflected), want);
      }
    }
    auto r = make_report("spectral-product convolution equals its eight-term layout",
                         "mustard-eight-term", residual, 1e-8, "unit coupling",
                         "trailing spatial flip applies to each term's result; folding it into "
                         "the right operand fails");
    stamp_grid(r, g);
    r.fitted_constants["alternate_reading_residual"] = alternate;
    out.push_back(std::move(r));
  }

  const LcParams Ac{1.0, 2.0, 1.0, 3.0};
  {
    // Factorization through the chirped plain transform, direct quadrature
    // against the FFT route.
    const auto g = centered_space_grid({6, 6, 6, 6}, {0.55, 0.5, 0.5, 0.6});
    const auto f = random_signal(g, cfg.seed + 71);
    const auto wgb = conjugate_grid(g, Ac.b);
    const auto lhs = lcst(f, Ac, wgb);
    const auto Fs = sft_fast(chirp_right(f, 0.5 * Ac.a / Ac.b));
    const double B = std::pow(kTau * Ac.b, -1.5);
    auto rhs = lhs;
    for (std::int64_t j = 0; j < wgb.total(); ++j) {
      const auto idx = wgb.unflat(j);
      double w2 = 0.0;
      for (int ax = 1; ax < 4; ++ax) {
        const double w = wgb.coord(ax, idx[ax]);
        w2 += w * w;
      }
      const double ang = 0.5 * Ac.d / Ac.b * w2;
      rhs.data[j] = right_rotor_i3(Fs.data[j] * B, std::cos(ang), std::sin(ang));
    }
    auto r = make_report("one-sided transform factors through the chirped plain transform",
                         "chirp-fft-factorization", rel_l2(lhs, rhs), 1e-10, lc_str(Ac),
                         "chirp, plain transform on the rescaled lattice, chirp");
    stamp_grid(r, g);
    out.push_back(std::move(r));

    // Pointwise magnitude comparison on the same fields.
    double num = 0.0, den = 0.0;
    std::vector<double> ratios;
    for (std::size_t j = 0; j < lhs.data.size(); ++j) {
      const double ml = norm(lhs.data[j]);
      const double mf = B * norm(Fs.data[j]);
      den = std::max(den, mf);
      num = std::max(num, std::abs(verbatim ? (B * ml - norm(Fs.data[j])) : (ml - mf)));
      if (norm(Fs.data[j]) > 1e-12) ratios.push_back(norm(Fs.data[j]) / (B * ml));
    }
    const double mag_res = num / (verbatim ? den / B : den);
    auto rm = make_report("chirped-transform magnitude identity", "magnitude-identity", mag_res,
                          1e-10, lc_str(Ac),
                          verbatim ? "published placement puts the constant on the transform side"
                                   : "pointwise max-norm residual; right rotors preserve "
                                     "coefficient norms");
    stamp_grid(rm, g);
    if (verbatim) {
      rm.expected_deviation = true;
      rm.fitted_constants["measured_side_ratio"] = median_ratio(ratios);
      rm.fitted_constants["consistent_ratio"] = std::pow(kTau * Ac.b, 3.0);
    }
    out.push_back(std::move(rm));

    const double med = median_ratio(ratios);
    const double consistent = std::pow(kTau * Ac.b, 3.0);
    auto rf = make_report(
        "magnitude identity published-constant side", "magnitude-identity",
        std::abs(med - consistent) / consistent, 1e-6, lc_str(Ac),
        "with the constant multiplying the chirped transform the magnitudes differ by "
        "(2 pi b)^3; the consistent placement scales the plain-transform side");
    stamp_grid(rf, g);
    rf.fitted_constants = {{"measured_ratio", med},
                           {"printed_expects", 1.0},
                           {"consistent_ratio", consistent}};
    rf.expected_deviation = true;
    out.push_back(std::move(rf));
  }

  {
    // Chirped convolution against the spectral product, plus the three
    // rejected chirp conventions.
    const auto g = centered_space_grid({4, 4, 4, 4}, {0.5, 0.45, 0.55, 0.6});
    const auto f = random_signal(g, cfg.seed + 81);
    bool contained = false;
    const auto gp =
        gaussian_packet(g, {0, 0, 0, 0}, {0.9, 0.8, 0.85, 0.95}, Multivector::blade(kE13, 0.9),
                        0.0, {0.4, 0.0, 0.6}, &contained);
    const auto wgb = conjugate_grid(g, Ac.b);
    const auto wg1 = conjugate_grid(g, 1.0);
    const auto Ff = lcst(f, Ac, wgb);
    const auto Fg = sft(gp, wg1);
    auto rhs = Ff;
    for (std::int64_t j = 0; j < wgb.total(); ++j) {
      const auto idx = wgb.unflat(j);
      std::array<int, 4> k{};
      k[0] = idx[0];
      for (int ax = 1; ax < 4; ++ax) {
        const double pos = (wgb.coord(ax, idx[ax]) / Ac.b - wg1.origin[ax]) / wg1.spacing[ax];
        k[ax] = static_cast<int>(std::llround(pos));
        if (std::abs(pos - k[ax]) > 1e-9) {
          throw std::runtime_error("verify: rescaled frequency off the plain lattice");
        }
      }
      rhs.data[j] = geometric_product(Ff.data[j], Fg.at(k));
    }
    const double r_adopt = rel_l2(lcst(odot(f, gp, Ac), Ac, wgb), rhs);

    const double ang_coeff = 0.5 * Ac.a / Ac.b;
    const auto base = mustard_convolve(chirp_right(f, ang_coeff), gp);
    auto cand_residual = [&](bool left, double sign) {
      auto cand = base;
      for (std::int64_t j = 0; j < g.total(); ++j) {
        const auto idx = g.unflat(j);
        double q = 0.0;
        for (int ax = 1; ax < 4; ++ax) {
          const double x = g.coord(ax, idx[ax]);
          q += x * x;
        }
        const double ang = sign * ang_coeff * q;
        if (left) {
          cand.data[j] =
              geometric_product(blade_exp(Multivector::blade(kI3), ang), base.data[j]);
        } else {
          cand.data[j] = right_rotor_i3(base.data[j], std::cos(ang), std::sin(ang));
        }
      }
      return rel_l2(lcst(cand, Ac, wgb), rhs);
    };
    const double r_rp = cand_residual(false, +1.0);
    const double r_lm = cand_residual(true, -1.0);
    const double r_lp = cand_residual(true, +1.0);

    auto r = make_report("chirped convolution multiplies the spectra", "odot-spectrum-product",
                         r_adopt, 1e-6, lc_str(Ac),
                         "right-multiplied negative unchirp is the unique closing convention "
                         "among the four side/sign candidates; probe spectrum commutes with the "
                         "spatial rotors");
    stamp_grid(r, g);
    r.fitted_constants = {{"residual_right_negative", r_adopt},
                          {"residual_right_positive", r_rp},
                          {"residual_left_negative", r_lm},
                          {"residual_left_positive", r_lp}};
    r.passed = r.passed && r_rp > 1e-2 && r_lm > 1e-2 && r_lp > 1e-2;
    out.push_back(std::move(r));
  }

  {
    const auto g = centered_space_grid({4, 4, 4, 4}, {0.6, 0.5, 0.55, 0.45});
    const LcParams A{1.0, 1.0, 1.0, 2.0};
    const auto wg = conjugate_grid(g, A.b);
    const auto f = random_signal(g, cfg.seed + 91);
    bool contained = false;
    const auto gp =
        gaussian_packet(g, {0, 0, 0, 0}, {0.9, 0.8, 0.85, 0.95}, Multivector::blade(kE23, 1.1),
                        0.0, {0.9, 0.0, 0.7}, &contained);
    const auto scaling = verbatim ? ArgScaling::kAllAxes : ArgScaling::kSpatialOnly;
    const auto lhs = lcst(pointwise_product(f, scale_argument(gp, A.b, scaling)), A, wg);
    const double inv4 = 1.0 / (kTau * kTau * kTau * kTau);
    const auto rhs = field_scale(otimes(lcst(f, A, wg), sft(gp, wg), A), inv4);
    auto r = make_report("scaled product identity at unit coupling", "product-theorem",
                         rel_l2(lhs, rhs), 1e-10, lc_str(A),
                         "probe spectrum commutes with the spatial rotors and is temporally even");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  {
    const LcParams A{1.0, 0.5, 2.0, 2.0};
    struct Defect {
      double kappa = 0.0;
      double prop = 0.0;
      double all_axes = 0.0;
    };
    auto defect_on = [&](const std::array<int, 4>& n, std::uint64_t seed, bool want_all) {
      const auto gg = centered_space_grid(n, {0.6, 0.5, 0.55, 0.45});
      const auto wg = conjugate_grid(gg, A.b);
      const auto z = zero_index(gg.origin, gg.spacing, gg.n);
      auto gp = zero_signal(gg);
      for (int jt = 0; jt < gg.n[0]; ++jt) {
        const double t = gg.coord(0, jt);
        gp.at({jt, z[1], z[2], z[3]}) = Multivector::blade(kE2, std::exp(-t * t / 1.21));
      }
      auto fr = random_signal(gg, seed);
      for (std::int64_t j = 0; j < gg.total(); ++j) {
        const auto idx = gg.unflat(j);
        for (int ax = 1; ax < 4; ++ax) {
          const int q = idx[ax] - z[ax];
          if (q < -gg.n[ax] / 4 || q >= gg.n[ax] / 4) fr.data[j] = Multivector{};
        }
      }
      const double inv4 = 1.0 / (kTau * kTau * kTau * kTau);
      const auto rhs = field_scale(otimes(lcst(fr, A, wg), sft(gp, wg), A), inv4);
      const auto lhs = lcst(pointwise_product(fr, scale_argument(gp, A.b)), A, wg);
      Defect d;
      d.kappa = field_norm(lhs) / field_norm(rhs);
      d.prop = rel_l2(lhs, field_scale(rhs, d.kappa));
      if (want_all) {
        const auto allax =
            lcst(pointwise_product(fr, scale_argument(gp, A.b, ArgScaling::kAllAxes)), A, wg);
        d.all_axes = rel_l2(allax, field_scale(rhs, d.kappa));
      }
      return d;
    };
    if (verbatim) {
      const auto d = defect_on({4, 4, 4, 4}, cfg.seed + 92, true);
      auto r = make_report("scaled product identity, half coupling with uniform scaling",
                           "product-theorem", d.all_axes, 1e-8, lc_str(A),
                           "scaling the temporal argument together with the spatial ones breaks "
                           "the identity; only spatial scaling is derivable from the kernels");
      r.grid_dims = {4, 4, 4, 4};
      r.grid_spacing = {0.6, 0.5, 0.55, 0.45};
      r.expected_deviation = true;
      out.push_back(std::move(r));
    } else {
      const double predicted = std::pow(A.b, -3.0);
      const auto d4 = defect_on({4, 4, 4, 4}, cfg.seed + 92, true);
      const auto d8 = defect_on({4, 8, 8, 8}, cfg.seed + 93, false);
      auto r1 = make_report("scaled product at half coupling stays pointwise proportional",
                            "product-theorem", std::max(d4.prop, d8.prop), 1e-8, lc_str(A),
                            "left factor restricted to the inner reciprocal-coupling fraction of "
                            "the spatial domain, right factor to the stride comb through zero");
      r1.grid_dims = {4, 8, 8, 8};
      r1.grid_spacing = {0.6, 0.5, 0.55, 0.45};
      r1.fitted_constants["uniform_scaling_residual"] = d4.all_axes;
      out.push_back(std::move(r1));

      auto r2 = make_report(
          "scaled product defect constant is the cubed reciprocal coupling", "product-theorem",
          std::max({std::abs(d4.kappa - predicted) / predicted,
                    std::abs(d8.kappa - predicted) / predicted,
                    std::abs(d4.kappa - d8.kappa) / predicted}),
          0.01, lc_str(A),
          "each spatial axis undercovers the rescaled reconstruction band by the coupling, "
          "leaving b^-3");
      r2.grid_dims = {4, 8, 8, 8};
      r2.grid_spacing = {0.6, 0.5, 0.55, 0.45};
      r2.fitted_constants = {
          {"defect_4", d4.kappa}, {"defect_8", d8.kappa}, {"predicted", predicted}};
      out.push_back(std::move(r2));
    }
  }

  const TwoSidedParams Pb{{0.0, 1.5, -1.0 / 1.5, 0.0}, {0.0, 2.0, -0.5, 0.0}};
  {
    double res = 0.0;
    double k2 = 0.0, k3 = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      const int n = pass == 0 ? 2 : 3;
      const auto g = centered_space_grid({n, n, n, n}, {0.5, 0.6, 0.55, 0.45});
      const auto f = random_signal(g, cfg.seed + 101 + pass);
      const auto h = random_signal(g, cfg.seed + 103 + pass);
      const auto spectral = star_n(f, h, Pb);
      const auto direct = star_n_direct(f, h, Pb);
      res = std::max(res, rel_l2(direct, spectral));
      (pass == 0 ? k2 : k3) = fit_constant(direct, spectral);
    }
    auto r = make_report("two-sided spectral convolution matches the brute-force sum",
                         "star-n-spectral", res, 1e-10, two_str(Pb),
                         "the spectral route factorizes the printed kernel chain exactly, so the "
                         "constant is one");
    r.grid_dims = {3, 3, 3, 3};
    r.grid_spacing = {0.5, 0.6, 0.55, 0.45};
    r.fitted_constants = {{"kappa_2", k2}, {"kappa_3", k3}};
    out.push_back(std::move(r));
  }
  {
    const TwoSidedParams Pg{{0.6, 1.0, -1.0, 0.0}, {1.0, 2.0, 0.5, 2.0}};
    const auto g = centered_space_grid({3, 3, 3, 3}, {0.5, 0.6, 0.55, 0.45});
    const auto f = random_signal(g, cfg.seed + 105);
    const auto h = random_signal(g, cfg.seed + 106);
    auto r = make_report("two-sided spectral convolution, generic parameters", "star-n-spectral",
                         rel_l2(star_n_direct(f, h, Pg), star_n(f, h, Pg)), 1e-10, two_str(Pg),
                         "nonzero quadratic terms on both sides");
    stamp_grid(r, g);
    out.push_back(std::move(r));
  }

  {
    double prop = 0.0;
    double k2 = 0.0, k4 = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      const int n = pass == 0 ? 2 : 4;
      const auto g = centered_space_grid({n, n, n, n}, {0.5, 0.6, 0.55, 0.45});
      const auto f = random_signal(g, cfg.seed + 111 + pass);
      const auto h = random_signal(g, cfg.seed + 113 + pass);
      const auto spectral = star_n(f, h, Pb);
      const auto eight = star_n_as_eight(f, h, Pb);
      const double k = fit_constant(spectral, eight);
      prop = std::max(prop, rel_l2(spectral, field_scale(eight, k)));
      (pass == 0 ? k2 : k4) = k;
    }
    const double predicted = kTau * kTau * kTau * std::pow(Pb.m2.b, 5.0);
    auto r1 = make_report("two-sided eight-term layout is proportional to the spectral form",
                          "star-n-eight-term", prop, 1e-9, two_str(Pb),
                          "zero quadratic terms; one pointwise constant separates the layouts");
    r1.grid_dims = {4, 4, 4, 4};
    r1.grid_spacing = {0.5, 0.6, 0.55, 0.45};
    r1.fitted_constants = {{"kappa_2", k2}, {"kappa_4", k4}};
    r1.expected_deviation = true;
    out.push_back(std::move(r1));

    auto r2 = make_report(
        "two-sided eight-term constant closed form", "star-n-eight-term",
        std::max(std::abs(k4 - predicted) / predicted, std::abs(k2 - k4) / std::abs(k4)), 0.01,
        two_str(Pb),
        "constant is (2 pi)^3 B2^5 with the published left weight; a weight of "
        "(2 pi)^-1 B1^{1/2} B2^{-3/2} would close the layout exactly");
    r2.grid_dims = {4, 4, 4, 4};
    r2.grid_spacing = {0.5, 0.6, 0.55, 0.45};
    r2.fitted_constants = {{"kappa_2", k2}, {"kappa_4", k4}, {"predicted", predicted}};
    r2.expected_deviation = true;
    out.push_back(std::move(r2));
  }

  {
    const LambdaWeight lam = lambda_weight(Pb);
    std::mt19937_64 rng(cfg.seed + 121);
    std::uniform_real_distribution<double> draw(-3.0, 3.0);
    double res = 0.0;
    for (int d = 0; d < 20; ++d) {
      const std::array<double, 4> w = {draw(rng), draw(rng), draw(rng), draw(rng)};
      res = std::max(res, std::abs(norm(lam(w)) - lam.prefactor) / lam.prefactor);
    }
    const Multivector at_zero = lam({0, 0, 0, 0});
    res = std::max(res, max_coeff(at_zero - Multivector::scalar(lam.prefactor)) / lam.prefactor);
    auto r = make_report("two-sided spectral weight has constant modulus", "lambda-prefactor",
                         res, 1e-12, two_str(Pb),
                         "published prefactor (2 pi)^2 |B1|^{1/2} |B2|^{7/2}; negative couplings "
                         "fold principal-branch angles into the temporal exponent");
    r.fitted_constants["printed_prefactor"] = lam.prefactor;
    r.fitted_constants["round_trip_exact_prefactor"] =
        std::sqrt(Pb.m1.b) * std::pow(Pb.m2.b, -1.5) / kTau;
    r.expected_deviation = true;
    out.push_back(std::move(r));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Suite driver and report serialization.

std::vector<ResidualReport> run_suite(const std::string& suite, const VerifyConfig& cfg) {
  if (suite != "algebra" && suite != "transforms" && suite != "convolutions" && suite != "all") {
    throw std::invalid_argument("verify: unknown suite '" + suite +
                                "' (expected algebra, transforms, convolutions, or all)");
  }
  std::vector<ResidualReport> out;
  auto add = [&](std::vector<ResidualReport> v) {
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  };
  if (suite == "algebra" || suite == "all") add(check_algebra(cfg));
  if (suite == "transforms" || suite == "all") {
    add(check_inversions(cfg));
    add(check_covariances(cfg));
    add(check_plancherel(cfg));
    add(check_derivatives(cfg));
  }
  if (suite == "convolutions" || suite == "all") add(check_convolutions(cfg));
  return out;
}

std::vector<ResidualReport> run_all(const VerifyConfig& cfg) { return run_suite("all", cfg); }

VerifySummary summarize(const std::vector<ResidualReport>& reports) {
  VerifySummary s;
  s.total = static_cast<int>(reports.size());
  for (const auto& r : reports) {
    if (r.passed) ++s.passed;
    if (r.expected_deviation) ++s.expected_deviations;
    if (!r.passed && !r.expected_deviation) ++s.failed_hard;
  }
  return s;
}

std::string reports_to_json(const std::vector<ResidualReport>& reports, const VerifyConfig& cfg) {
  nlohmann::json root;
  root["mode"] = cfg.mode == Mode::kCorrected ? "corrected" : "verbatim";
  root["seed"] = cfg.seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["check_name"] = r.check_name;
    j["anchor"] = r.anchor;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["grid"] = {{"dims", r.grid_dims}, {"spacing", r.grid_spacing}};
    j["params"] = r.params;
    if (!r.fitted_constants.empty()) j["fitted_constants"] = r.fitted_constants;
    j["notes"] = r.notes;
    j["expected_deviation"] = r.expected_deviation;
    arr.push_back(std::move(j));
  }
  root["reports"] = std::move(arr);
  const VerifySummary s = summarize(reports);
  nlohmann::json dev = nlohmann::json::array();
  for (const auto& r : reports) {
    if (r.expected_deviation) dev.push_back(r.check_name);
  }
  root["summary"] = {{"total", s.total},
                     {"passed", s.passed},
                     {"failed_hard", s.failed_hard},
                     {"expected_deviations", std::move(dev)},
                     {"all_ok", s.ok()}};
  return root.dump(2);
}

void write_report(const std::string& path, const std::vector<ResidualReport>& reports,
                  const VerifyConfig& cfg) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("verify: cannot open report path " + path);
  os << reports_to_json(reports, cfg) << '\n';
  if (!os) throw std::runtime_error("verify: failed writing report to " + path);
}

}  // namespace stlcst
