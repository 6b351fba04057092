#include "stlcst/transforms.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "stlcst/dft4.hpp"
#include "stlcst/threading.hpp"

namespace stlcst {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// Component permutations for h -> e_t * h and h -> h * i_3.
// (e_t h)_i = ls[i] h_{lp[i]},  (h i_3)_i = rs[i] h_{rp[i]}.
struct RotorTables {
  int lp[16];
  double ls[16];
  int rp[16];
  double rs[16];
};

constexpr RotorTables make_rotor_tables() {
  RotorTables t{};
  for (int i = 0; i < 16; ++i) {
    const int lj = kEtLeft[i].blade;
    t.lp[i] = lj;
    t.ls[i] = static_cast<double>(kEtLeft[lj].sign);
    const int rj = kI3Right[i].blade;
    t.rp[i] = rj;
    t.rs[i] = static_cast<double>(kI3Right[rj].sign);
  }
  return t;
}

constexpr RotorTables kRot = make_rotor_tables();

// acc += h * (cos + i_3 sin)
inline void right_mul_add(double* acc, const double* h, double re, double im) {
  for (int i = 0; i < 16; ++i) acc[i] += h[i] * re + kRot.rs[i] * h[kRot.rp[i]] * im;
}

// acc += (cos + e_t sin) * h
inline void left_mul_add(double* acc, const double* h, double re, double im) {
  for (int i = 0; i < 16; ++i) acc[i] += h[i] * re + kRot.ls[i] * h[kRot.lp[i]] * im;
}

// Phase of (2 pi B)^e for negative B, principal branch: (-1)^e = exp(i pi e).
inline double branch_phase(double b, double exponent) {
  return b < 0.0 ? kPi * exponent : 0.0;
}

inline int wrap_index(std::int64_t m, int n) {
  std::int64_t r = m % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

// ---------------------------------------------------------------------------
// Direct engine: out[M] = C * sum_J exp(e_t L(u0_M, v0_J)) in[J]
//                               * exp(i_3 (sum_k S(uk_M, vk_J) + offset))
// u = output coords, v = input coords. Quadrature weight is the caller's
// business (fold it into C).
// ---------------------------------------------------------------------------

template <class OutTag, class InTag>
Field<Grid4<OutTag>> kernel_sum(const Field<Grid4<InTag>>& in, const Grid4<OutTag>& og,
                                double constant,
                                const std::function<double(double, double)>& lphase,
                                const std::function<double(double, double)>& sphase,
                                double offset) {
  const auto& ig = in.grid;
  ig.validate();
  og.validate();

  const int no0 = og.n[0], ni0 = ig.n[0];
  std::vector<double> tcos(static_cast<std::size_t>(no0) * ni0);
  std::vector<double> tsin(tcos.size());
  for (int m = 0; m < no0; ++m) {
    const double u = og.coord(0, m);
    for (int j = 0; j < ni0; ++j) {
      const double ang = lphase(u, ig.coord(0, j));
      tcos[static_cast<std::size_t>(m) * ni0 + j] = std::cos(ang);
      tsin[static_cast<std::size_t>(m) * ni0 + j] = std::sin(ang);
    }
  }

  std::array<std::vector<std::complex<double>>, 3> rot;
  for (int axis = 1; axis <= 3; ++axis) {
    auto& tab = rot[axis - 1];
    tab.resize(static_cast<std::size_t>(og.n[axis]) * ig.n[axis]);
    for (int m = 0; m < og.n[axis]; ++m) {
      const double u = og.coord(axis, m);
      for (int j = 0; j < ig.n[axis]; ++j) {
        double ang = sphase(u, ig.coord(axis, j));
        if (axis == 1) ang += offset;
        tab[static_cast<std::size_t>(m) * ig.n[axis] + j] = std::polar(1.0, ang);
      }
    }
  }

  auto out = zero_field(og);
  const std::size_t s3 = 16;  // doubles per sample
  const std::size_t s2 = s3 * ig.n[3];
  const std::size_t s1 = s2 * ig.n[2];
  const std::size_t s0 = s1 * ig.n[1];
  const double* src = in.data.empty() ? nullptr : in.data[0].c.data();

  parallel_for(og.total(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t flat = lo; flat < hi; ++flat) {
      const auto idx = og.unflat(flat);
      const auto* r1 = &rot[0][static_cast<std::size_t>(idx[1]) * ig.n[1]];
      const auto* r2 = &rot[1][static_cast<std::size_t>(idx[2]) * ig.n[2]];
      const auto* r3 = &rot[2][static_cast<std::size_t>(idx[3]) * ig.n[3]];
      const double* tc = &tcos[static_cast<std::size_t>(idx[0]) * ni0];
      const double* ts = &tsin[static_cast<std::size_t>(idx[0]) * ni0];
      double acc[16] = {};
      for (int j0 = 0; j0 < ni0; ++j0) {
        double inner[16] = {};
        for (int j1 = 0; j1 < ig.n[1]; ++j1) {
          const std::complex<double> c1 = r1[j1];
          for (int j2 = 0; j2 < ig.n[2]; ++j2) {
            const std::complex<double> c12 = c1 * r2[j2];
            const double* h = src + j0 * s0 + j1 * s1 + j2 * s2;
            for (int j3 = 0; j3 < ig.n[3]; ++j3, h += s3) {
              const std::complex<double> c = c12 * r3[j3];
              right_mul_add(inner, h, c.real(), c.imag());
            }
          }
        }
        left_mul_add(acc, inner, tc[j0], ts[j0]);
      }
      auto& dst = out.data[flat];
      for (int i = 0; i < 16; ++i) dst.c[i] = constant * acc[i];
    }
  });
  return out;
}

void check_couplings(const LcParams& A) {
  A.validate();
  if (A.b == 0.0) throw std::domain_error("coupling coefficient b must be nonzero here");
}

}  // namespace

// ---------------------------------------------------------------------------
// Direct transforms
// ---------------------------------------------------------------------------

Spectrum sft(const SpaceTimeSignal& f, const FrequencyGrid& wg) {
  const double w = f.grid.cell_volume();
  return kernel_sum(
      f, wg, w, [](double wt, double t) { return -wt * t; },
      [](double wk, double xk) { return -xk * wk; }, 0.0);
}

SpaceTimeSignal isft(const Spectrum& F, const SpaceTimeGrid& xg) {
  const double w = F.grid.cell_volume() / std::pow(kTwoPi, 4);
  return kernel_sum(
      F, xg, w, [](double t, double wt) { return wt * t; },
      [](double xk, double wk) { return xk * wk; }, 0.0);
}

Spectrum frsft(const SpaceTimeSignal& f, const FrParams& p, const FrequencyGrid& wg) {
  p.validate();
  const double csc = 1.0 / std::sin(p.alpha);
  const double cot = std::cos(p.alpha) * csc;
  const double c = std::pow(csc, 1.5) * f.grid.cell_volume();
  return kernel_sum(
      f, wg, c, [](double wt, double t) { return -wt * t; },
      [cot, csc](double wk, double xk) {
        return 0.5 * (xk * xk + wk * wk) * cot - xk * wk * csc;
      },
      0.25 * (2.0 * p.alpha - kPi));
}

SpaceTimeSignal ifrsft(const Spectrum& F, const FrParams& p, const SpaceTimeGrid& xg,
                       Mode mode) {
  p.validate();
  const double csc = 1.0 / std::sin(p.alpha);
  const double cot = std::cos(p.alpha) * csc;
  double c = std::pow(csc, 1.5) / std::pow(kTwoPi, 4);
  if (mode == Mode::kVerbatim) c *= std::pow(csc, 1.5);
  c *= F.grid.cell_volume();
  return kernel_sum(
      F, xg, c, [](double t, double wt) { return wt * t; },
      [cot, csc](double xk, double wk) {
        return -0.5 * (xk * xk + wk * wk) * cot + xk * wk * csc;
      },
      -0.25 * (2.0 * p.alpha - kPi));
}

namespace {

// b = 0 branch: L[f](wt, w) = [temporal transform of f](wt, x = d w)
//                             * sqrt(d) * exp(i_3 c d w^2 / 2).
Spectrum lcst_degenerate(const SpaceTimeSignal& f, const LcParams& A, const FrequencyGrid& wg) {
  if (A.d <= 0.0) throw std::domain_error("degenerate branch requires d > 0");
  const auto& g = f.grid;

  // Temporal-only pass: G[m, jx] = sum_jt exp(-e_t wt t) f[jt, jx] dt.
  const int nt_out = wg.n[0], nt_in = g.n[0];
  const std::int64_t nsp = g.total() / nt_in;
  std::vector<Multivector> temp(static_cast<std::size_t>(nt_out) * nsp);
  const double dt = g.spacing[0];
  parallel_for(nt_out, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t m = lo; m < hi; ++m) {
      const double wt = wg.coord(0, static_cast<int>(m));
      for (std::int64_t js = 0; js < nsp; ++js) {
        double acc[16] = {};
        for (int jt = 0; jt < nt_in; ++jt) {
          const double ang = -wt * g.coord(0, jt);
          left_mul_add(acc, f.data[jt * nsp + js].c.data(), std::cos(ang), std::sin(ang));
        }
        auto& dst = temp[m * nsp + js];
        for (int i = 0; i < 16; ++i) dst.c[i] = acc[i] * dt;
      }
    }
  });

  const double amp = std::sqrt(A.d);
  auto out = zero_field(wg);
  std::int64_t off_lattice = 0;
  for (std::int64_t flat = 0; flat < wg.total(); ++flat) {
    const auto idx = wg.unflat(flat);
    std::int64_t jsp = 0;
    double wsq = 0.0;
    for (int axis = 1; axis <= 3; ++axis) {
      const double wk = wg.coord(axis, idx[axis]);
      wsq += wk * wk;
      const double pos = (A.d * wk - g.origin[axis]) / g.spacing[axis];
      const auto jr = static_cast<std::int64_t>(std::llround(pos));
      if (std::abs(pos - static_cast<double>(jr)) > 1e-9) ++off_lattice;
      jsp = jsp * g.n[axis] + wrap_index(jr, g.n[axis]);
    }
    const double ang = 0.5 * A.c * A.d * wsq;
    const Multivector rot = blade_exp(Multivector::blade(BladeIndex::kI3), ang);
    out.data[flat] = geometric_product(temp[idx[0] * nsp + jsp], rot) * amp;
  }
  if (off_lattice != 0) {
    std::cerr << "lcst: " << off_lattice
              << " scaled frequency points fell off the sample lattice and were wrapped to the "
                 "nearest site\n";
  }
  return out;
}

}  // namespace

Spectrum lcst(const SpaceTimeSignal& f, const LcParams& A, const FrequencyGrid& wg) {
  A.validate();
  if (A.b == 0.0) return lcst_degenerate(f, A, wg);
  const double ib = 1.0 / A.b;
  const double ca = 0.5 * A.a * ib, cd = 0.5 * A.d * ib;
  const double c = std::pow(kTwoPi * std::abs(A.b), -1.5) * f.grid.cell_volume();
  return kernel_sum(
      f, wg, c, [](double wt, double t) { return -wt * t; },
      [ca, cd, ib](double wk, double xk) { return ca * xk * xk + cd * wk * wk - xk * wk * ib; },
      branch_phase(A.b, -1.5));
}

SpaceTimeSignal ilcst(const Spectrum& F, const LcParams& A, const SpaceTimeGrid& xg) {
  check_couplings(A);
  const double ib = 1.0 / A.b;
  const double ca = 0.5 * A.a * ib, cd = 0.5 * A.d * ib;
  const double c = std::pow(kTwoPi * std::abs(A.b), -1.5) / kTwoPi * F.grid.cell_volume();
  return kernel_sum(
      F, xg, c, [](double t, double wt) { return wt * t; },
      [ca, cd, ib](double xk, double wk) { return -ca * xk * xk - cd * wk * wk + xk * wk * ib; },
      -branch_phase(A.b, -1.5));
}

Spectrum two_sided_lcst(const SpaceTimeSignal& f, const TwoSidedParams& P,
                        const FrequencyGrid& wg, Mode mode) {
  P.require_couplings();
  const auto& m1 = P.m1;
  const auto& m2 = P.m2;
  const double ib1 = 0.5 / m1.b, ib2 = 0.5 / m2.b;
  const double es = (mode == Mode::kCorrected) ? -1.5 : -0.5;
  const double c = std::pow(kTwoPi * std::abs(m1.b), -0.5) *
                   std::pow(kTwoPi * std::abs(m2.b), es) * f.grid.cell_volume();
  const double toff = branch_phase(m1.b, -0.5);
  return kernel_sum(
      f, wg, c,
      [&m1, ib1, toff](double wt, double t) {
        return (m1.a * t * t + m1.d * wt * wt - 2.0 * t * wt) * ib1 + toff;
      },
      [&m2, ib2](double wk, double xk) {
        return (m2.a * xk * xk + m2.d * wk * wk - 2.0 * xk * wk) * ib2;
      },
      branch_phase(m2.b, es));
}

SpaceTimeSignal two_sided_ilcst(const Spectrum& F, const TwoSidedParams& P,
                                const SpaceTimeGrid& xg, Mode mode) {
  P.require_couplings();
  const auto& m1 = P.m1;
  const auto& m2 = P.m2;
  const double ib1 = 0.5 / m1.b, ib2 = 0.5 / m2.b;
  const double es = (mode == Mode::kCorrected) ? -1.5 : -0.5;
  const double c = std::pow(kTwoPi * std::abs(m1.b), -0.5) *
                   std::pow(kTwoPi * std::abs(m2.b), es) * F.grid.cell_volume();
  const double toff = branch_phase(m1.b, -0.5);
  return kernel_sum(
      F, xg, c,
      [&m1, ib1, toff](double t, double wt) {
        return -((m1.a * t * t + m1.d * wt * wt - 2.0 * t * wt) * ib1) - toff;
      },
      [&m2, ib2](double xk, double wk) {
        return -((m2.a * xk * xk + m2.d * wk * wk - 2.0 * xk * wk) * ib2);
      },
      -branch_phase(m2.b, es));
}

// ---------------------------------------------------------------------------
// Fast engine
// ---------------------------------------------------------------------------

namespace {

// The split pairs components into 8 complex channels z = h_J + i s h_K with
// K = rp[J], s = rs[K]; right multiplication by exp(i_3 theta) is then
// z -> z exp(i theta).
struct Channels {
  int rep[8];
  int partner[8];
  double sign[8];
};

constexpr Channels make_channels() {
  Channels ch{};
  int c = 0;
  for (int j = 0; j < 16; ++j) {
    const int k = kRot.rp[j];
    if (j < k) {
      ch.rep[c] = j;
      ch.partner[c] = k;
      ch.sign[c] = kRot.rs[k];
      ++c;
    }
  }
  return ch;
}

constexpr Channels kCh = make_channels();

// Phases of the two kernel factors:
//   left:  exp(e_t [ac t wt + at(t) + aw(wt) + aoff])
//   right: exp(i_3 [sum_k (sc xk wk + sx(xk) + sw(wk)) + soff])
// The engine folds the left factor through each split part (sigma = +/-1) as a
// signed right phase and evaluates the coupling terms with one 4-D FFT per
// channel per part.
struct ChirpKernel {
  double ac = 0.0;
  std::function<double(double)> at, aw;
  double aoff = 0.0;
  double sc = 0.0;
  std::function<double(double)> sx, sw;
  double soff = 0.0;
  double constant = 1.0;  // real prefactor, excluding the quadrature weight
};

double zero_fn(double) { return 0.0; }

std::function<double(double)> or_zero(std::function<double(double)> f) {
  return f ? std::move(f) : zero_fn;
}

// Integer frequency map for one axis: wk = c * m with the FFT treating m
// modulo n. Throws if the supplied grid does not sit on that lattice.
std::vector<std::int64_t> integer_map(double c, int n, double origin, double spacing) {
  std::vector<std::int64_t> m(n);
  for (int j = 0; j < n; ++j) {
    const double w = origin + j * spacing;
    const double pos = w / c;
    m[j] = static_cast<std::int64_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(m[j])) > 1e-6)
      throw std::invalid_argument("fast path requires the matching conjugate frequency grid");
  }
  // A conjugate grid's indices form one consecutive run; anything else (for
  // instance a lattice sampled at an integer multiple of the spacing) aliases.
  for (int j = 1; j < n; ++j) {
    const std::int64_t step = m[j] - m[j - 1];
    if (step != 1 && step != -1)
      throw std::invalid_argument("fast path requires the matching conjugate frequency grid");
  }
  return m;
}

template <class Tag>
std::pair<std::vector<Multivector>, std::vector<Multivector>> split_field(
    const Field<Grid4<Tag>>& f) {
  const std::size_t n = f.data.size();
  std::vector<Multivector> plus(n), minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pm = split(f.data[i]);
    plus[i] = pm.first;
    minus[i] = pm.second;
  }
  return {std::move(plus), std::move(minus)};
}

// Per-axis complex factor table for a separable phase.
std::vector<std::complex<double>> phase_table(int n,
                                              const std::function<double(int)>& ang) {
  std::vector<std::complex<double>> t(n);
  for (int j = 0; j < n; ++j) t[j] = std::polar(1.0, ang(j));
  return t;
}

template <class OutTag, class InTag>
Field<Grid4<OutTag>> fast_apply(const Field<Grid4<InTag>>& in, const Grid4<OutTag>& og,
                                const ChirpKernel& kc, bool forward) {
  const auto& ig = in.grid;
  ig.validate();
  og.validate();
  if (kc.ac == 0.0 || kc.sc == 0.0)
    throw std::invalid_argument("fast path requires nonzero coupling coefficients");

  const auto at = or_zero(kc.at), aw = or_zero(kc.aw);
  const auto sx = or_zero(kc.sx), sw = or_zero(kc.sw);

  // Forward: in = signal (index j), out = spectrum (integer m); the coupling
  // phase folded to the right of part sigma is
  //   temporal: -sigma ac t wt, requiring ac dt c0 = -2pi/n0;
  //   spatial:  sc xk wk, requiring sc dxk ck = -2pi/nk.
  // Inverse swaps the roles (in = spectrum) and flips both lattice signs.
  double cax[4];
  {
    const double d0 = forward ? ig.spacing[0] : og.spacing[0];
    cax[0] = (forward ? -1.0 : 1.0) * kTwoPi / (og.n[0] * kc.ac * d0);
    for (int axis = 1; axis <= 3; ++axis) {
      const double d = forward ? ig.spacing[axis] : og.spacing[axis];
      cax[axis] = (forward ? -1.0 : 1.0) * kTwoPi / (og.n[axis] * kc.sc * d);
    }
  }
  for (int axis = 0; axis < 4; ++axis)
    if (ig.n[axis] != og.n[axis])
      throw std::invalid_argument("fast path requires matching grid dimensions");

  // Integer maps live on the frequency side.
  std::array<std::vector<std::int64_t>, 4> mmap;
  {
    const auto& fg_n = forward ? og.n : ig.n;
    const auto& fg_o = forward ? og.origin : ig.origin;
    const auto& fg_s = forward ? og.spacing : ig.spacing;
    for (int axis = 0; axis < 4; ++axis)
      mmap[axis] = integer_map(cax[axis], fg_n[axis], fg_o[axis], fg_s[axis]);
  }

  auto parts = split_field(in);
  auto out = zero_field(og);
  const double weight = ig.cell_volume() * kc.constant;

  const std::array<int, 4> nf = forward ? ig.n : og.n;
  const std::size_t total_f =
      static_cast<std::size_t>(nf[0]) * nf[1] * nf[2] * nf[3];

  std::vector<std::complex<double>> buf(total_f);
  std::array<std::vector<std::complex<double>>, 8> chan;
  for (auto& v : chan) v.resize(total_f);

  for (int part = 0; part < 2; ++part) {
    const double sigma = part == 0 ? 1.0 : -1.0;
    const auto& pf = part == 0 ? parts.first : parts.second;

    // Input-side separable phase tables.
    std::array<std::vector<std::complex<double>>, 4> pin;
    if (forward) {
      pin[0] = phase_table(ig.n[0], [&](int j) { return -sigma * at(ig.coord(0, j)); });
      for (int axis = 1; axis <= 3; ++axis)
        pin[axis] =
            phase_table(ig.n[axis], [&](int j) { return sx(ig.coord(axis, j)); });
    } else {
      pin[0] = phase_table(ig.n[0], [&](int j) {
        const double wt = ig.coord(0, j);
        return -sigma * (aw(wt) + kc.ac * og.origin[0] * wt);
      });
      for (int axis = 1; axis <= 3; ++axis)
        pin[axis] = phase_table(ig.n[axis], [&](int j) {
          const double wk = ig.coord(axis, j);
          return sw(wk) + kc.sc * og.origin[axis] * wk;
        });
    }

    // Output-side tables, including ramps for the frequency origin (forward)
    // and the FFT bin to read per output index.
    std::array<std::vector<std::complex<double>>, 4> pout;
    std::array<std::vector<int>, 4> qmap;
    if (forward) {
      pout[0] = phase_table(og.n[0], [&](int m) {
        const double wt = og.coord(0, m);
        return -sigma * (aw(wt) + kc.ac * ig.origin[0] * wt);
      });
      for (int axis = 1; axis <= 3; ++axis)
        pout[axis] = phase_table(og.n[axis], [&](int m) {
          const double wk = og.coord(axis, m);
          return sw(wk) + kc.sc * ig.origin[axis] * wk;
        });
      qmap[0].resize(og.n[0]);
      for (int m = 0; m < og.n[0]; ++m)
        qmap[0][m] = wrap_index(sigma > 0 ? -mmap[0][m] : mmap[0][m], nf[0]);
      for (int axis = 1; axis <= 3; ++axis) {
        qmap[axis].resize(og.n[axis]);
        for (int m = 0; m < og.n[axis]; ++m)
          qmap[axis][m] = wrap_index(mmap[axis][m], nf[axis]);
      }
    } else {
      pout[0] = phase_table(og.n[0], [&](int j) { return -sigma * at(og.coord(0, j)); });
      for (int axis = 1; axis <= 3; ++axis)
        pout[axis] =
            phase_table(og.n[axis], [&](int j) { return sx(og.coord(axis, j)); });
      qmap[0].resize(og.n[0]);
      for (int j = 0; j < og.n[0]; ++j)
        qmap[0][j] = sigma > 0 ? wrap_index(-j, nf[0]) : j;
      for (int axis = 1; axis <= 3; ++axis) {
        qmap[axis].resize(og.n[axis]);
        for (int j = 0; j < og.n[axis]; ++j) qmap[axis][j] = j;
      }
    }

    const std::complex<double> part_const =
        weight * std::polar(1.0, -sigma * kc.aoff + kc.soff);

    // One FFT per channel.
    for (int c = 0; c < 8; ++c) {
      const int rj = kCh.rep[c], rk = kCh.partner[c];
      const double rsgn = kCh.sign[c];
      if (forward) {
        std::size_t i = 0;
        for (int j0 = 0; j0 < ig.n[0]; ++j0)
          for (int j1 = 0; j1 < ig.n[1]; ++j1)
            for (int j2 = 0; j2 < ig.n[2]; ++j2) {
              const std::complex<double> p012 = pin[0][j0] * pin[1][j1] * pin[2][j2];
              for (int j3 = 0; j3 < ig.n[3]; ++j3, ++i) {
                const auto& h = pf[i];
                buf[i] = std::complex<double>(h.c[rj], rsgn * h.c[rk]) * (p012 * pin[3][j3]);
              }
            }
      } else {
        std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
        std::size_t i = 0;
        for (int j0 = 0; j0 < ig.n[0]; ++j0) {
          const std::size_t p0 = wrap_index(mmap[0][j0], nf[0]);
          for (int j1 = 0; j1 < ig.n[1]; ++j1) {
            const std::size_t p1 = wrap_index(mmap[1][j1], nf[1]);
            const std::complex<double> p01 = pin[0][j0] * pin[1][j1];
            for (int j2 = 0; j2 < ig.n[2]; ++j2) {
              const std::size_t p2 = wrap_index(mmap[2][j2], nf[2]);
              const std::complex<double> p012 = p01 * pin[2][j2];
              const std::size_t base = ((p0 * nf[1] + p1) * nf[2] + p2) * nf[3];
              for (int j3 = 0; j3 < ig.n[3]; ++j3, ++i) {
                const auto& h = pf[i];
                buf[base + wrap_index(mmap[3][j3], nf[3])] =
                    std::complex<double>(h.c[rj], rsgn * h.c[rk]) * (p012 * pin[3][j3]);
              }
            }
          }
        }
      }
      dft4_inplace(buf.data(), nf, forward ? -1 : 1);
      chan[c].swap(buf);
    }

    // Readout: combine the 8 channel values per output sample.
    parallel_for(og.total(), [&](std::int64_t lo, std::int64_t hi) {
      for (std::int64_t flat = lo; flat < hi; ++flat) {
        const auto idx = og.unflat(flat);
        const std::size_t q =
            ((static_cast<std::size_t>(qmap[0][idx[0]]) * nf[1] + qmap[1][idx[1]]) * nf[2] +
             qmap[2][idx[2]]) * nf[3] + qmap[3][idx[3]];
        const std::complex<double> factor =
            pout[0][idx[0]] * pout[1][idx[1]] * pout[2][idx[2]] * pout[3][idx[3]] * part_const;
        auto& dst = out.data[flat];
        for (int c = 0; c < 8; ++c) {
          const std::complex<double> v = chan[c][q] * factor;
          dst.c[kCh.rep[c]] += v.real();
          dst.c[kCh.partner[c]] += kCh.sign[c] * v.imag();
        }
      }
    });
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fast transforms
// ---------------------------------------------------------------------------

Spectrum sft_fast(const SpaceTimeSignal& f) {
  ChirpKernel k;
  k.ac = -1.0;
  k.sc = -1.0;
  return fast_apply(f, conjugate_grid(f.grid, 1.0), k, true);
}

SpaceTimeSignal isft_fast(const Spectrum& F, const SpaceTimeGrid& xg) {
  ChirpKernel k;
  k.ac = 1.0;
  k.sc = 1.0;
  k.constant = 1.0 / std::pow(kTwoPi, 4);
  return fast_apply(F, xg, k, false);
}

Spectrum frsft_fast(const SpaceTimeSignal& f, const FrParams& p) {
  p.validate();
  const double s = std::sin(p.alpha);
  const double csc = 1.0 / s;
  const double cot = std::cos(p.alpha) * csc;
  ChirpKernel k;
  k.ac = -1.0;
  k.sc = -csc;
  k.sx = [cot](double x) { return 0.5 * cot * x * x; };
  k.sw = [cot](double w) { return 0.5 * cot * w * w; };
  k.soff = 0.25 * (2.0 * p.alpha - kPi);
  k.constant = std::pow(csc, 1.5);
  return fast_apply(f, conjugate_grid(f.grid, s), k, true);
}

SpaceTimeSignal ifrsft_fast(const Spectrum& F, const FrParams& p, const SpaceTimeGrid& xg,
                            Mode mode) {
  p.validate();
  const double csc = 1.0 / std::sin(p.alpha);
  const double cot = std::cos(p.alpha) * csc;
  ChirpKernel k;
  k.ac = 1.0;
  k.sc = csc;
  k.sx = [cot](double x) { return -0.5 * cot * x * x; };
  k.sw = [cot](double w) { return -0.5 * cot * w * w; };
  k.soff = -0.25 * (2.0 * p.alpha - kPi);
  k.constant = std::pow(csc, 1.5) / std::pow(kTwoPi, 4);
  if (mode == Mode::kVerbatim) k.constant *= std::pow(csc, 1.5);
  return fast_apply(F, xg, k, false);
}

Spectrum lcst_fast(const SpaceTimeSignal& f, const LcParams& A) {
  check_couplings(A);
  const double ib = 1.0 / A.b;
  ChirpKernel k;
  k.ac = -1.0;
  k.sc = -ib;
  k.sx = [a = A.a, ib](double x) { return 0.5 * a * ib * x * x; };
  k.sw = [d = A.d, ib](double w) { return 0.5 * d * ib * w * w; };
  k.soff = branch_phase(A.b, -1.5);
  k.constant = std::pow(kTwoPi * std::abs(A.b), -1.5);
  return fast_apply(f, conjugate_grid(f.grid, A.b), k, true);
}

SpaceTimeSignal ilcst_fast(const Spectrum& F, const LcParams& A, const SpaceTimeGrid& xg) {
  check_couplings(A);
  const double ib = 1.0 / A.b;
  ChirpKernel k;
  k.ac = 1.0;
  k.sc = ib;
  k.sx = [a = A.a, ib](double x) { return -0.5 * a * ib * x * x; };
  k.sw = [d = A.d, ib](double w) { return -0.5 * d * ib * w * w; };
  k.soff = -branch_phase(A.b, -1.5);
  k.constant = std::pow(kTwoPi * std::abs(A.b), -1.5) / kTwoPi;
  return fast_apply(F, xg, k, false);
}

Spectrum two_sided_lcst_fast(const SpaceTimeSignal& f, const TwoSidedParams& P, Mode mode) {
  P.require_couplings();
  const auto& m1 = P.m1;
  const auto& m2 = P.m2;
  const double es = (mode == Mode::kCorrected) ? -1.5 : -0.5;
  ChirpKernel k;
  k.ac = -1.0 / m1.b;
  k.at = [a = m1.a, b = m1.b](double t) { return 0.5 * a / b * t * t; };
  k.aw = [d = m1.d, b = m1.b](double w) { return 0.5 * d / b * w * w; };
  k.aoff = branch_phase(m1.b, -0.5);
  k.sc = -1.0 / m2.b;
  k.sx = [a = m2.a, b = m2.b](double x) { return 0.5 * a / b * x * x; };
  k.sw = [d = m2.d, b = m2.b](double w) { return 0.5 * d / b * w * w; };
  k.soff = branch_phase(m2.b, es);
  k.constant = std::pow(kTwoPi * std::abs(m1.b), -0.5) * std::pow(kTwoPi * std::abs(m2.b), es);
  return fast_apply(f, conjugate_grid_two_sided(f.grid, m1.b, m2.b), k, true);
}

SpaceTimeSignal two_sided_ilcst_fast(const Spectrum& F, const TwoSidedParams& P,
                                     const SpaceTimeGrid& xg, Mode mode) {
  P.require_couplings();
  const auto& m1 = P.m1;
  const auto& m2 = P.m2;
  const double es = (mode == Mode::kCorrected) ? -1.5 : -0.5;
  ChirpKernel k;
  k.ac = 1.0 / m1.b;
  k.at = [a = m1.a, b = m1.b](double t) { return -0.5 * a / b * t * t; };
  k.aw = [d = m1.d, b = m1.b](double w) { return -0.5 * d / b * w * w; };
  k.aoff = -branch_phase(m1.b, -0.5);
  k.sc = 1.0 / m2.b;
  k.sx = [a = m2.a, b = m2.b](double x) { return -0.5 * a / b * x * x; };
  k.sw = [d = m2.d, b = m2.b](double w) { return -0.5 * d / b * w * w; };
  k.soff = -branch_phase(m2.b, es);
  k.constant = std::pow(kTwoPi * std::abs(m1.b), -0.5) * std::pow(kTwoPi * std::abs(m2.b), es);
  return fast_apply(F, xg, k, false);
}

}  // namespace stlcst
