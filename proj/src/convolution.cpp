#include "stlcst/convolution.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "stlcst/grid.hpp"
#include "stlcst/threading.hpp"
#include "stlcst/transforms.hpp"

namespace stlcst {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int wrap_index(std::int64_t v, int n) {
  std::int64_t m = v % n;
  if (m < 0) m += n;
  return static_cast<int>(m);
}

std::int64_t lattice_int(double pos, const char* who, const char* what) {
  const auto r = std::llround(pos);
  if (std::abs(pos - static_cast<double>(r)) > 1e-9) {
    throw std::domain_error(std::string(who) + ": " + what +
                            " must be an integer multiple of the spacing");
  }
  return r;
}

// Index of coordinate zero per axis; the torus convolution is anchored there.
template <class GridT>
std::array<int, 4> zero_index(const GridT& g, const char* who) {
  std::array<int, 4> z{};
  for (int ax = 0; ax < 4; ++ax) {
    const auto r = lattice_int(-g.origin[ax] / g.spacing[ax], who, "grid origin");
    z[ax] = wrap_index(r, g.n[ax]);
  }
  return z;
}

template <class GridT>
void require_same_grid(const Field<GridT>& a, const Field<GridT>& b, const char* who) {
  if (!(a.grid == b.grid)) {
    throw std::invalid_argument(std::string(who) + ": operands must share one grid");
  }
}

void require_coupling(const LcParams& A, const char* who) {
  A.validate();
  if (A.b == 0.0) {
    throw std::domain_error(std::string(who) + ": coupling b must be nonzero");
  }
}

template <class GridT>
Field<GridT> torus_convolve(const Field<GridT>& a, const Field<GridT>& b, const char* who) {
  require_same_grid(a, b, who);
  a.grid.validate();
  const auto z = zero_index(a.grid, who);
  const auto& n = a.grid.n;
  const double vol = a.grid.cell_volume();
  const std::int64_t total = a.grid.total();
  Field<GridT> out = zero_field(a.grid);
  parallel_for(total, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t m = lo; m < hi; ++m) {
      const auto mi = a.grid.unflat(m);
      Multivector acc{};
      for (std::int64_t j = 0; j < total; ++j) {
        const auto ji = a.grid.unflat(j);
        std::array<int, 4> bi{};
        for (int ax = 0; ax < 4; ++ax) {
          bi[ax] = wrap_index(static_cast<std::int64_t>(z[ax]) + mi[ax] - ji[ax], n[ax]);
        }
        acc = acc + geometric_product(a.data[j], b.data[a.grid.flat(bi)]);
      }
      out.data[m] = acc * vol;
    }
  });
  return out;
}

template <class GridT>
Field<GridT> reflect_impl(const Field<GridT>& f, ReflectionIndex r) {
  f.grid.validate();
  const auto& n = f.grid.n;
  const auto z = zero_index(f.grid, "reflect");
  Field<GridT> out = zero_field(f.grid);
  parallel_for(f.grid.total(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t m = lo; m < hi; ++m) {
      auto mi = f.grid.unflat(m);
      if (r.phi1) mi[0] = wrap_index(2 * std::int64_t{z[0]} - mi[0], n[0]);
      if (r.phi2) {
        for (int ax = 1; ax < 4; ++ax) {
          mi[ax] = wrap_index(2 * std::int64_t{z[ax]} - mi[ax], n[ax]);
        }
      }
      out.data[m] = f.data[f.grid.flat(mi)];
    }
  });
  return out;
}

std::pair<SpaceTimeSignal, SpaceTimeSignal> split_field(const SpaceTimeSignal& f) {
  SpaceTimeSignal plus = zero_field(f.grid);
  SpaceTimeSignal minus = zero_field(f.grid);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    auto [p, m] = split(f.data[i]);
    plus.data[i] = p;
    minus.data[i] = m;
  }
  return {std::move(plus), std::move(minus)};
}

SpaceTimeSignal project_part(const SpaceTimeSignal& f, int sign) {
  SpaceTimeSignal out = zero_field(f.grid);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    auto [p, m] = split(f.data[i]);
    out.data[i] = (sign > 0) ? p : m;
  }
  return out;
}

// Per-sample right chirp h -> h * exp(i3 * coeff * |spatial coords|^2).
template <class GridT>
Field<GridT> spatial_square_chirp(const Field<GridT>& f, double coeff) {
  Field<GridT> out = zero_field(f.grid);
  parallel_for(f.grid.total(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t m = lo; m < hi; ++m) {
      const auto mi = f.grid.unflat(m);
      double sq = 0.0;
      for (int ax = 1; ax < 4; ++ax) {
        const double c = f.grid.coord(ax, mi[ax]);
        sq += c * c;
      }
      const double ang = coeff * sq;
      out.data[m] = right_rotor_i3(f.data[m], std::cos(ang), std::sin(ang));
    }
  });
  return out;
}

struct TermSpec {
  int a_sign;
  int b_sign;
  ReflectionIndex pre;
  bool post;
  int proj;
};

constexpr TermSpec kEightTerms[8] = {
    {+1, +1, {0, 0}, false, +1}, {+1, +1, {1, 1}, true, -1},
    {+1, -1, {1, 0}, false, +1}, {+1, -1, {0, 1}, true, -1},
    {-1, +1, {0, 1}, true, +1},  {-1, +1, {1, 0}, false, -1},
    {-1, -1, {1, 1}, true, +1},  {-1, -1, {0, 0}, false, -1},
};

double branch_angle(double b, double exponent) {
  return (b < 0.0) ? kPi * exponent : 0.0;
}

}  // namespace

SpaceTimeSignal reflect(const SpaceTimeSignal& f, ReflectionIndex r) {
  return reflect_impl(f, r);
}

Spectrum reflect(const Spectrum& F, ReflectionIndex r) { return reflect_impl(F, r); }

SpaceTimeSignal convolve_standard(const SpaceTimeSignal& a, const SpaceTimeSignal& b) {
  return torus_convolve(a, b, "convolve_standard");
}

Spectrum convolve_standard(const Spectrum& a, const Spectrum& b) {
  return torus_convolve(a, b, "convolve_standard");
}

SpaceTimeSignal mustard_convolve(const SpaceTimeSignal& a, const SpaceTimeSignal& b) {
  require_same_grid(a, b, "mustard_convolve");
  const Spectrum fa = sft_fast(a);
  const Spectrum fb = sft_fast(b);
  Spectrum prod = zero_field(fa.grid);
  for (std::size_t i = 0; i < prod.data.size(); ++i) {
    prod.data[i] = geometric_product(fa.data[i], fb.data[i]);
  }
  return isft_fast(prod, a.grid);
}

std::array<SpaceTimeSignal, 8> eight_term_parts(const SpaceTimeSignal& a,
                                                const SpaceTimeSignal& b,
                                                EightTermReading reading) {
  require_same_grid(a, b, "eight_term_parts");
  const auto [ap, am] = split_field(a);
  const auto [bp, bm] = split_field(b);
  std::array<SpaceTimeSignal, 8> parts{};
  for (int i = 0; i < 8; ++i) {
    const TermSpec& spec = kEightTerms[i];
    ReflectionIndex pre = spec.pre;
    if (spec.post && reading == EightTermReading::kOperandReflected) pre.phi2 ^= 1;
    const SpaceTimeSignal bb = reflect(spec.b_sign > 0 ? bp : bm, pre);
    SpaceTimeSignal c = convolve_standard(spec.a_sign > 0 ? ap : am, bb);
    if (spec.post && reading == EightTermReading::kResultReflected) {
      c = reflect(c, ReflectionIndex{0, 1});
    }
    parts[i] = project_part(c, spec.proj);
  }
  return parts;
}

SpaceTimeSignal mustard_as_eight(const SpaceTimeSignal& a, const SpaceTimeSignal& b,
                                 EightTermReading reading) {
  const auto parts = eight_term_parts(a, b, reading);
  SpaceTimeSignal out = parts[0];
  for (int i = 1; i < 8; ++i) out = field_add(out, parts[i]);
  return out;
}

SpaceTimeSignal odot(const SpaceTimeSignal& f, const SpaceTimeSignal& g, const LcParams& A) {
  require_coupling(A, "odot");
  require_same_grid(f, g, "odot");
  const double coeff = 0.5 * A.a / A.b;
  const SpaceTimeSignal chirped = spatial_square_chirp(f, coeff);
  const SpaceTimeSignal mixed = mustard_convolve(chirped, g);
  return spatial_square_chirp(mixed, -coeff);
}

Spectrum otimes(const Spectrum& u, const Spectrum& v, const LcParams& A) {
  require_coupling(A, "otimes");
  require_same_grid(u, v, "otimes");
  const double coeff = 0.5 * A.d / A.b;
  const Spectrum hatted = spatial_square_chirp(u, -coeff);
  const Spectrum conv = torus_convolve(hatted, v, "otimes");
  return spatial_square_chirp(conv, coeff);
}

SpaceTimeSignal scale_argument(const SpaceTimeSignal& g, double b, ArgScaling which) {
  g.grid.validate();
  if (b == 0.0) throw std::invalid_argument("scale_argument: b must be nonzero");
  const double minv = 1.0 / b;
  const auto m = std::llround(minv);
  if (std::abs(minv - static_cast<double>(m)) > 1e-9) {
    throw std::invalid_argument(
        "scale_argument: 1/b must be an integer so scaled points stay on the lattice");
  }
  const int first_axis = (which == ArgScaling::kAllAxes) ? 0 : 1;
  std::array<std::int64_t, 4> base{};
  for (int ax = first_axis; ax < 4; ++ax) {
    const auto o = lattice_int(g.grid.origin[ax] / g.grid.spacing[ax], "scale_argument",
                               "grid origin");
    base[ax] = (m - 1) * o;
  }
  SpaceTimeSignal out = zero_field(g.grid);
  for (std::int64_t i = 0; i < g.grid.total(); ++i) {
    auto mi = g.grid.unflat(i);
    for (int ax = first_axis; ax < 4; ++ax) {
      mi[ax] = wrap_index(base[ax] + m * static_cast<std::int64_t>(mi[ax]), g.grid.n[ax]);
    }
    out.data[i] = g.data[g.grid.flat(mi)];
  }
  return out;
}

Multivector LambdaWeight::operator()(const std::array<double, 4>& w) const {
  const double wsq = w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
  const double ang = 0.5 * params.m1.d / params.m1.b * w[0] * w[0] +
                     0.5 * params.m2.d / params.m2.b * wsq + branch;
  return blade_exp(Multivector::blade(kEt), ang) * prefactor;
}

LambdaWeight lambda_weight(const TwoSidedParams& P) {
  P.require_couplings();
  LambdaWeight lam{};
  lam.params = P;
  lam.prefactor = kTwoPi * kTwoPi * std::sqrt(std::abs(P.m1.b)) *
                  std::pow(std::abs(P.m2.b), 3.5);
  lam.branch = branch_angle(P.m1.b, 0.5) + branch_angle(P.m2.b, 3.5);
  return lam;
}

SpaceTimeSignal star_n(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                       const TwoSidedParams& P, const LambdaWeight& lam, Mode mode) {
  require_same_grid(f, g, "star_n");
  P.require_couplings();
  const Spectrum F = two_sided_lcst_fast(f, P, mode);
  const Spectrum G = two_sided_lcst_fast(g, P, mode);
  Spectrum H = zero_field(F.grid);
  parallel_for(F.grid.total(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      const auto mi = F.grid.unflat(i);
      const std::array<double, 4> w{F.grid.coord(0, mi[0]), F.grid.coord(1, mi[1]),
                                    F.grid.coord(2, mi[2]), F.grid.coord(3, mi[3])};
      H.data[i] = geometric_product(lam(w), geometric_product(F.data[i], G.data[i]));
    }
  });
  return two_sided_ilcst_fast(H, P, f.grid, mode);
}

SpaceTimeSignal star_n(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                       const TwoSidedParams& P, Mode mode) {
  return star_n(f, g, P, lambda_weight(P), mode);
}

SpaceTimeSignal star_n_direct(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                              const TwoSidedParams& P) {
  require_same_grid(f, g, "star_n_direct");
  P.require_couplings();
  if (f.grid.total() > 256) {
    throw std::invalid_argument(
        "star_n_direct: the 12-dimensional sum is a small-scale oracle and refuses grids "
        "above 4^4 samples; use star_n for production sizes");
  }
  const FrequencyGrid wg = conjugate_grid_two_sided(f.grid, P.m1.b, P.m2.b);
  const LambdaWeight lam = lambda_weight(P);

  const Multivector et = Multivector::blade(kEt);
  const Multivector i3 = Multivector::blade(kI3);
  const double ct = 1.0 / std::sqrt(kTwoPi * std::abs(P.m1.b));
  const double cs = 1.0 / std::sqrt(kTwoPi * std::abs(P.m2.b));
  const double bt = branch_angle(P.m1.b, -0.5);
  const double bs = branch_angle(P.m2.b, -0.5);

  const auto temporal_phase = [&](double wt, double t) {
    return 0.5 * (P.m1.a * t * t + P.m1.d * wt * wt - 2.0 * t * wt) / P.m1.b;
  };
  const auto spatial_phase = [&](const std::array<double, 3>& x, const std::array<double, 3>& w) {
    double xx = 0.0, ww = 0.0, xw = 0.0;
    for (int k = 0; k < 3; ++k) {
      xx += x[k] * x[k];
      ww += w[k] * w[k];
      xw += x[k] * w[k];
    }
    return 0.5 * (P.m2.a * xx + P.m2.d * ww - 2.0 * xw) / P.m2.b;
  };

  const std::int64_t total = f.grid.total();
  const double dx4 = f.grid.cell_volume();
  const double dw4 = wg.cell_volume();

  // Inner sums of the sample-domain operand chains at each frequency point.
  Spectrum fw = zero_field(wg);
  Spectrum gw = zero_field(wg);
  parallel_for(total, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      const auto wi = wg.unflat(i);
      const double wt = wg.coord(0, wi[0]);
      const std::array<double, 3> w{wg.coord(1, wi[1]), wg.coord(2, wi[2]), wg.coord(3, wi[3])};
      Multivector accf{};
      Multivector accg{};
      for (std::int64_t j = 0; j < total; ++j) {
        const auto xj = f.grid.unflat(j);
        const double t = f.grid.coord(0, xj[0]);
        const std::array<double, 3> y{f.grid.coord(1, xj[1]), f.grid.coord(2, xj[2]),
                                      f.grid.coord(3, xj[3])};
        const Multivector kt = blade_exp(et, temporal_phase(wt, t) + bt) * ct;
        const Multivector ks = blade_exp(i3, spatial_phase(y, w) + bs) * cs;
        accf = accf + geometric_product(kt, geometric_product(f.data[j], ks));
        accg = accg + geometric_product(kt, geometric_product(g.data[j], ks));
      }
      fw.data[i] = accf * dx4;
      gw.data[i] = accg * dx4;
    }
  });

  SpaceTimeSignal out = zero_field(f.grid);
  parallel_for(total, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t m = lo; m < hi; ++m) {
      const auto xi = f.grid.unflat(m);
      const double t = f.grid.coord(0, xi[0]);
      const std::array<double, 3> x{f.grid.coord(1, xi[1]), f.grid.coord(2, xi[2]),
                                    f.grid.coord(3, xi[3])};
      Multivector acc{};
      for (std::int64_t i = 0; i < total; ++i) {
        const auto wi = wg.unflat(i);
        const double wt = wg.coord(0, wi[0]);
        const std::array<double, 3> w{wg.coord(1, wi[1]), wg.coord(2, wi[2]),
                                      wg.coord(3, wi[3])};
        const std::array<double, 4> w4{wt, w[0], w[1], w[2]};
        const Multivector kt_inv = blade_exp(et, -temporal_phase(wt, t) - bt) * ct;
        const Multivector ks_inv = blade_exp(i3, -spatial_phase(x, w) - bs) * cs;
        Multivector term = geometric_product(lam(w4), kt_inv);
        term = geometric_product(term, fw.data[i]);
        term = geometric_product(term, gw.data[i]);
        term = geometric_product(term, ks_inv);
        acc = acc + term;
      }
      out.data[m] = acc * dw4;
    }
  });
  return out;
}

SpaceTimeSignal star_n_as_eight(const SpaceTimeSignal& f, const SpaceTimeSignal& g,
                                const TwoSidedParams& P, EightTermReading reading) {
  P.require_couplings();
  return mustard_as_eight(f, g, reading);
}

}  // namespace stlcst
