#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stlcst/convolution.hpp"
#include "stlcst/stcf_io.hpp"
#include "stlcst/threading.hpp"
#include "stlcst/transforms.hpp"
#include "stlcst/verify.hpp"

using namespace stlcst;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O or format error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) out.push_back(tok);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

std::vector<double> parse_reals(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const std::string& tok : split_commas(s)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + tok + "' is not a real number");
    }
    if (used != tok.size()) throw UsageError(what + ": '" + tok + "' is not a real number");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(what + ": expected a comma-separated list of reals");
  return out;
}

std::vector<int> parse_ints(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_reals(s, what)) {
    const int i = static_cast<int>(std::llround(v));
    if (v != static_cast<double>(i)) throw UsageError(what + ": expected integers");
    out.push_back(i);
  }
  return out;
}

template <class T>
std::array<T, 4> to4(const std::vector<T>& v, const std::string& what) {
  if (v.size() != 4) {
    throw UsageError(what + ": expected exactly 4 comma-separated values, got " +
                     std::to_string(v.size()));
  }
  return {v[0], v[1], v[2], v[3]};
}

std::array<double, 3> to3(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 3) {
    throw UsageError(what + ": expected exactly 3 comma-separated values, got " +
                     std::to_string(v.size()));
  }
  return {v[0], v[1], v[2]};
}

// "e12:0.5,1:-2" -> multivector; bare blade name means coefficient 1.
Multivector parse_amplitude(const std::string& s) {
  const auto& names = blade_names();
  Multivector h{};
  for (const std::string& tok : split_commas(s)) {
    const auto colon = tok.find(':');
    const std::string name = tok.substr(0, colon);
    double coeff = 1.0;
    if (colon != std::string::npos) {
      const auto rest = parse_reals(tok.substr(colon + 1), "--amp coefficient");
      if (rest.size() != 1) throw UsageError("--amp: one coefficient per blade");
      coeff = rest[0];
    }
    int idx = -1;
    for (int i = 0; i < kNumBlades; ++i) {
      if (names[i] == name) idx = i;
    }
    if (idx < 0) {
      std::string valid;
      for (int i = 0; i < kNumBlades; ++i) valid += (i ? " " : "") + names[i];
      throw UsageError("--amp: unknown blade '" + name + "'; valid names: " + valid);
    }
    h.c[idx] += coeff;
  }
  return h;
}

// The determinant gate for typed-in parameters is looser than the library's,
// then the matrix is snapped to determinant exactly 1 so downstream
// validation cannot reject a value this gate accepted.
LcParams make_lc(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 4) throw UsageError(what + ": expected a,b,c,d (4 reals)");
  LcParams A{v[0], v[1], v[2], v[3]};
  const double det = A.a * A.d - A.b * A.c;
  if (std::abs(det - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": determinant a*d - b*c = " << det << " (defect " << det - 1.0
        << "); the matrix must be unimodular";
    throw UsageError(msg.str());
  }
  if (det != 1.0) {
    if (A.a != 0.0) {
      A.d = (1.0 + A.b * A.c) / A.a;
    } else {
      A.c = -1.0 / A.b;
    }
    std::cerr << "note: " << what << " snapped to determinant 1 (defect " << det - 1.0 << ")\n";
  }
  return A;
}

TwoSidedParams make_two(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 8) throw UsageError(what + ": expected a1,b1,c1,d1,a2,b2,c2,d2 (8 reals)");
  return TwoSidedParams{make_lc({v[0], v[1], v[2], v[3]}, what + " (temporal matrix)"),
                        make_lc({v[4], v[5], v[6], v[7]}, what + " (spatial matrix)")};
}

void apply_threads(const std::string& s) {
  if (s == "auto") return;
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(s, &used);
    if (used != s.size()) n = 0;
  } catch (const std::exception&) {
    n = 0;
  }
  if (n <= 0) throw UsageError("--threads: expected a positive integer or 'auto'");
  set_thread_count(n);
}

Mode parse_mode(const std::string& s) {
  if (s == "corrected") return Mode::kCorrected;
  if (s == "verbatim") return Mode::kVerbatim;
  throw UsageError("--mode: expected 'corrected' or 'verbatim'");
}

// Centered sample grid whose conjugate frequency lattice is wg.
SpaceTimeGrid inverse_grid(const FrequencyGrid& wg, double bt, double bs) {
  std::array<double, 4> sp{};
  sp[0] = kTau * std::abs(bt) / (wg.n[0] * wg.spacing[0]);
  for (int k = 1; k < 4; ++k) sp[k] = kTau * std::abs(bs) / (wg.n[k] * wg.spacing[k]);
  return centered_space_grid(wg.n, sp);
}

template <class FieldT>
double rel_l2(const FieldT& got, const FieldT& want) {
  return field_norm(field_sub(got, want)) / std::max(1e-300, field_norm(want));
}

SpaceTimeSignal read_signal_arg(const std::string& path, const std::string& role) {
  if (stcf_kind(path) != 0) {
    throw UsageError(role + ": " + path +
                     " holds a frequency-domain spectrum, but this operation needs a "
                     "space-time signal");
  }
  return read_signal(path);
}

Spectrum read_spectrum_arg(const std::string& path, const std::string& role) {
  if (stcf_kind(path) != 1) {
    throw UsageError(role + ": " + path +
                     " holds a space-time signal, but this operation needs a spectrum");
  }
  return read_spectrum(path);
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string dims, spacing, kind, out, origin;
  std::string center = "0,0,0,0", width = "1,1,1,1", sfreq = "0,0,0";
  std::string amp = "1:1", at = "0,0,0,0", threads = "auto";
  double tfreq = 0.0;
  std::uint64_t seed = 20260822;
};

int run_gen(const GenArgs& a) {
  apply_threads(a.threads);
  const auto n = to4(parse_ints(a.dims, "--dims"), "--dims");
  const auto sp = to4(parse_reals(a.spacing, "--spacing"), "--spacing");
  for (int k = 0; k < 4; ++k) {
    if (n[k] <= 0) throw UsageError("--dims: sample counts must be positive");
    if (!(sp[k] > 0.0)) throw UsageError("--spacing: spacings must be positive");
  }
  SpaceTimeGrid g;
  if (a.origin.empty()) {
    g = centered_space_grid(n, sp);
  } else {
    g = SpaceTimeGrid{n, sp, to4(parse_reals(a.origin, "--origin"), "--origin")};
    g.validate();
  }

  SpaceTimeSignal f = zero_signal(g);
  if (a.kind == "gaussian") {
    const auto center = to4(parse_reals(a.center, "--center"), "--center");
    const auto width = to4(parse_reals(a.width, "--width"), "--width");
    for (double w : width) {
      if (!(w > 0.0)) throw UsageError("--width: widths must be positive");
    }
    f = gaussian_packet(g, center, width, parse_amplitude(a.amp), a.tfreq,
                        to3(parse_reals(a.sfreq, "--sfreq"), "--sfreq"), nullptr);
  } else if (a.kind == "delta") {
    const auto at = to4(parse_ints(a.at, "--at"), "--at");
    for (int k = 0; k < 4; ++k) {
      if (at[k] < 0 || at[k] >= n[k]) {
        throw UsageError("--at: index " + std::to_string(at[k]) + " out of range on axis " +
                         std::to_string(k) + " (size " + std::to_string(n[k]) + ")");
      }
    }
    f = delta_field(g, at, parse_amplitude(a.amp));
  } else if (a.kind == "random") {
    std::mt19937_64 rng(a.seed);
    f = random_field(g, rng);
  } else {
    throw UsageError("--kind: expected gaussian, delta, or random");
  }
  write_signal(f, a.out);
  std::cout << "wrote " << a.out << " (" << g.total() << " samples)\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string kind, in, out, params, path = "fast", mode = "corrected", threads = "auto";
  double alpha = 0.0;
  bool alpha_set = false;
  bool inverse = false;
};

int run_transform(const TransformArgs& a) {
  apply_threads(a.threads);
  const Mode mode = parse_mode(a.mode);
  const bool fast = a.path == "fast";
  if (!fast && a.path != "direct") throw UsageError("--path: expected 'direct' or 'fast'");
  if (a.alpha_set && a.kind != "frsft") throw UsageError("--alpha applies only to --kind frsft");
  if (!a.params.empty() && (a.kind == "sft" || a.kind == "frsft")) {
    throw UsageError("--params applies only to --kind lcst and lcst2");
  }

  if (a.kind == "sft") {
    if (!a.inverse) {
      const auto f = read_signal_arg(a.in, "--in");
      write_spectrum(fast ? sft_fast(f) : sft(f, conjugate_grid(f.grid, 1.0)), a.out);
    } else {
      const auto F = read_spectrum_arg(a.in, "--in");
      const auto xg = inverse_grid(F.grid, 1.0, 1.0);
      write_signal(fast ? isft_fast(F, xg) : isft(F, xg), a.out);
    }
  } else if (a.kind == "frsft") {
    if (!a.alpha_set) throw UsageError("--kind frsft requires --alpha");
    const FrParams p{a.alpha};
    p.validate();
    if (!a.inverse) {
      const auto f = read_signal_arg(a.in, "--in");
      write_spectrum(fast ? frsft_fast(f, p) : frsft(f, p, conjugate_grid(f.grid, std::sin(a.alpha))),
                     a.out);
    } else {
      const auto F = read_spectrum_arg(a.in, "--in");
      const auto xg = inverse_grid(F.grid, 1.0, std::sin(a.alpha));
      write_signal(fast ? ifrsft_fast(F, p, xg, mode) : ifrsft(F, p, xg, mode), a.out);
    }
  } else if (a.kind == "lcst") {
    const LcParams A = make_lc(parse_reals(a.params, "--params"), "--params");
    if (A.b == 0.0) {
      if (fast) {
        throw UsageError(
            "--params: b = 0 selects the degenerate branch (temporal transform plus "
            "chirp-scale); it is served by --path direct; the fast path needs b != 0");
      }
      if (a.inverse) {
        throw UsageError("--params: the degenerate b = 0 branch has no inverse here");
      }
      const auto f = read_signal_arg(a.in, "--in");
      const auto& g = f.grid;
      FrequencyGrid wg;
      wg.n = g.n;
      wg.spacing[0] = kTau / (g.n[0] * g.spacing[0]);
      wg.origin[0] = -(g.n[0] / 2) * wg.spacing[0];
      for (int k = 1; k < 4; ++k) {
        wg.spacing[k] = g.spacing[k] / A.d;
        wg.origin[k] = g.origin[k] / A.d;
      }
      write_spectrum(lcst(f, A, wg), a.out);
      std::cout << "wrote " << a.out << "\n";
      return 0;
    }
    if (!a.inverse) {
      const auto f = read_signal_arg(a.in, "--in");
      write_spectrum(fast ? lcst_fast(f, A) : lcst(f, A, conjugate_grid(f.grid, A.b)), a.out);
    } else {
      const auto F = read_spectrum_arg(a.in, "--in");
      const auto xg = inverse_grid(F.grid, 1.0, A.b);
      write_signal(fast ? ilcst_fast(F, A, xg) : ilcst(F, A, xg), a.out);
    }
  } else if (a.kind == "lcst2") {
    const TwoSidedParams P = make_two(parse_reals(a.params, "--params"), "--params");
    P.require_couplings();
    if (!a.inverse) {
      const auto f = read_signal_arg(a.in, "--in");
      write_spectrum(fast ? two_sided_lcst_fast(f, P, mode)
                          : two_sided_lcst(f, P, conjugate_grid_two_sided(f.grid, P.m1.b, P.m2.b),
                                           mode),
                     a.out);
    } else {
      const auto F = read_spectrum_arg(a.in, "--in");
      const auto xg = inverse_grid(F.grid, P.m1.b, P.m2.b);
      write_signal(fast ? two_sided_ilcst_fast(F, P, xg, mode) : two_sided_ilcst(F, P, xg, mode),
                   a.out);
    }
  } else {
    throw UsageError("--kind: expected sft, frsft, lcst, or lcst2");
  }
  std::cout << "wrote " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct ConvolveArgs {
  std::string kind, a, b, out, params, method, threads = "auto";
};

int run_convolve(const ConvolveArgs& c) {
  apply_threads(c.threads);
  if (!c.method.empty() && c.kind != "mustard" && c.kind != "starn") {
    throw UsageError("--method applies only to --kind mustard and starn");
  }
  if (c.kind == "standard" || c.kind == "mustard" || c.kind == "odot") {
    const auto fa = read_signal_arg(c.a, "--a");
    const auto fb = read_signal_arg(c.b, "--b");
    SpaceTimeSignal out;
    if (c.kind == "standard") {
      out = convolve_standard(fa, fb);
    } else if (c.kind == "mustard") {
      if (!c.method.empty() && c.method != "spectral" && c.method != "eight") {
        throw UsageError("--method: mustard supports 'spectral' or 'eight'");
      }
      out = c.method == "eight" ? mustard_as_eight(fa, fb) : mustard_convolve(fa, fb);
    } else {
      out = odot(fa, fb, make_lc(parse_reals(c.params, "--params"), "--params"));
    }
    write_signal(out, c.out);
  } else if (c.kind == "otimes") {
    const auto u = read_spectrum_arg(c.a, "--a");
    const auto v = read_spectrum_arg(c.b, "--b");
    write_spectrum(otimes(u, v, make_lc(parse_reals(c.params, "--params"), "--params")), c.out);
  } else if (c.kind == "starn") {
    const auto fa = read_signal_arg(c.a, "--a");
    const auto fb = read_signal_arg(c.b, "--b");
    const TwoSidedParams P = make_two(parse_reals(c.params, "--params"), "--params");
    SpaceTimeSignal out;
    if (c.method.empty() || c.method == "spectral") {
      out = star_n(fa, fb, P);
    } else if (c.method == "eight") {
      out = star_n_as_eight(fa, fb, P);
    } else if (c.method == "direct") {
      out = star_n_direct(fa, fb, P);
    } else {
      throw UsageError("--method: starn supports 'spectral', 'eight', or 'direct'");
    }
    write_signal(out, c.out);
  } else {
    throw UsageError("--kind: expected standard, mustard, odot, otimes, or starn");
  }
  std::cout << "wrote " << c.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all", mode = "corrected", report, threads = "auto";
  std::uint64_t seed = 20260822;
};

int run_verify(const VerifyArgs& a) {
  apply_threads(a.threads);
  VerifyConfig cfg;
  cfg.seed = a.seed;
  cfg.mode = parse_mode(a.mode);
  const auto reports = run_suite(a.suite, cfg);
  write_report(a.report, reports, cfg);
  for (const auto& r : reports) {
    const char* status = r.passed ? "PASS" : (r.expected_deviation ? "DEVIATION" : "FAIL");
    std::printf("[%-9s] %-46s residual %.3e  tol %.3e\n", status, r.check_name.c_str(),
                r.residual, r.tolerance);
  }
  const auto s = summarize(reports);
  std::printf("%d checks: %d passed, %d hard failures, %d expected deviations\n", s.total,
              s.passed, s.failed_hard, s.expected_deviations);
  std::cout << "report written to " << a.report << "\n";
  return s.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string kind = "lcst", dims_sweep = "4,8,12,16", paths = "direct,fast", out = "-";
  std::string threads = "auto";
  int repeat = 3;
  std::uint64_t seed = 20260822;
};

int run_bench(const BenchArgs& a) {
  apply_threads(a.threads);
  if (a.kind != "lcst" && a.kind != "lcst2") {
    throw UsageError("--kind: expected 'lcst' or 'lcst2'");
  }
  if (a.repeat < 1) throw UsageError("--repeat: must be at least 1");
  bool want_direct = false, want_fast = false;
  for (const std::string& p : split_commas(a.paths)) {
    if (p == "direct") {
      want_direct = true;
    } else if (p == "fast") {
      want_fast = true;
    } else {
      throw UsageError("--paths: expected a subset of 'direct,fast'");
    }
  }
  if (!want_direct && !want_fast) throw UsageError("--paths: nothing selected");

  std::ofstream file;
  if (a.out != "-") {
    file.open(a.out, std::ios::trunc);
    if (!file) throw StcfError("cannot open file for writing: " + a.out);
  }
  std::ostream& os = a.out == "-" ? std::cout : file;

  os << "kind,n";
  if (want_direct) os << ",direct_seconds";
  if (want_fast) os << ",fast_seconds";
  if (want_direct && want_fast) os << ",speedup,max_rel_deviation";
  os << "\n";

  const LcParams A{2.0, 1.0, 1.0, 1.0};
  const TwoSidedParams P{{1.0, 0.5, 2.0, 2.0}, {0.0, 2.0, -0.5, 0.0}};
  for (int n : parse_ints(a.dims_sweep, "--dims-sweep")) {
    if (n <= 0) throw UsageError("--dims-sweep: sizes must be positive");
    const auto g = centered_space_grid({n, n, n, n}, {0.5, 0.5, 0.5, 0.5});
    std::mt19937_64 rng(a.seed + static_cast<std::uint64_t>(n));
    const auto f = random_field(g, rng);

    auto timed = [&](auto&& fn, Spectrum& result) {
      double best = 1e300;
      for (int r = 0; r < a.repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        auto out = fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        if (r == 0) result = std::move(out);
      }
      return best;
    };

    Spectrum direct_out, fast_out;
    double t_direct = 0, t_fast = 0;
    if (a.kind == "lcst") {
      const auto wg = conjugate_grid(g, A.b);
      if (want_direct) t_direct = timed([&] { return lcst(f, A, wg); }, direct_out);
      if (want_fast) t_fast = timed([&] { return lcst_fast(f, A); }, fast_out);
    } else {
      const auto wg = conjugate_grid_two_sided(g, P.m1.b, P.m2.b);
      if (want_direct) {
        t_direct = timed([&] { return two_sided_lcst(f, P, wg); }, direct_out);
      }
      if (want_fast) t_fast = timed([&] { return two_sided_lcst_fast(f, P); }, fast_out);
    }

    char buf[192];
    if (want_direct && want_fast) {
      std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f,%.3f,%.3e\n", a.kind.c_str(), n, t_direct,
                    t_fast, t_direct / t_fast, rel_l2(direct_out, fast_out));
    } else if (want_direct) {
      std::snprintf(buf, sizeof buf, "%s,%d,%.6f\n", a.kind.c_str(), n, t_direct);
    } else {
      std::snprintf(buf, sizeof buf, "%s,%d,%.6f\n", a.kind.c_str(), n, t_fast);
    }
    os << buf;
  }
  if (a.out != "-" && !file) throw StcfError("write failed: " + a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct ExportArgs {
  std::string in, out, slice, threads = "auto";
};

std::array<int, 4> parse_slice(const std::string& s, bool spectrum,
                               const std::array<int, 4>& dims) {
  std::array<int, 4> slice = {-1, -1, -1, -1};
  if (s.empty()) return slice;
  const std::array<std::string, 4> names = spectrum
                                               ? std::array<std::string, 4>{"wt", "w1", "w2", "w3"}
                                               : std::array<std::string, 4>{"t", "x1", "x2", "x3"};
  for (const std::string& tok : split_commas(s)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--slice: expected axis=index entries, got '" + tok + "'");
    }
    const std::string axis = tok.substr(0, eq);
    int ax = -1;
    for (int k = 0; k < 4; ++k) {
      if (names[k] == axis || std::to_string(k) == axis) ax = k;
    }
    if (ax < 0) {
      throw UsageError("--slice: unknown axis '" + axis + "'; use " + names[0] + "," + names[1] +
                       "," + names[2] + "," + names[3] + " or 0..3");
    }
    if (slice[ax] >= 0) throw UsageError("--slice: axis '" + axis + "' pinned twice");
    const auto idx = parse_ints(tok.substr(eq + 1), "--slice index");
    if (idx.size() != 1) throw UsageError("--slice: one index per axis");
    if (idx[0] < 0 || idx[0] >= dims[ax]) {
      throw UsageError("--slice: index " + std::to_string(idx[0]) + " out of range on axis " +
                       axis + " (size " + std::to_string(dims[ax]) + ")");
    }
    slice[ax] = idx[0];
  }
  return slice;
}

int run_export(const ExportArgs& a) {
  apply_threads(a.threads);
  std::int64_t rows = 0;
  if (stcf_kind(a.in) == 0) {
    const auto f = read_signal(a.in);
    const auto slice = parse_slice(a.slice, false, f.grid.n);
    write_csv(f, a.out, slice);
    rows = 1;
    for (int k = 0; k < 4; ++k) rows *= slice[k] >= 0 ? 1 : f.grid.n[k];
  } else {
    const auto f = read_spectrum(a.in);
    const auto slice = parse_slice(a.slice, true, f.grid.n);
    write_csv(f, a.out, slice);
    rows = 1;
    for (int k = 0; k < 4; ++k) rows *= slice[k] >= 0 ? 1 : f.grid.n[k];
  }
  std::cout << "wrote " << a.out << " (" << rows << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford space-time transform toolkit: generate sampled multivector signals, "
               "apply the transform family, convolve, verify identities, benchmark, export"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* sub_gen = app.add_subcommand("gen", "Generate a signal and write it as STCF");
  sub_gen->add_option("--dims", gen.dims, "Samples per axis: nt,n1,n2,n3")->required();
  sub_gen->add_option("--spacing", gen.spacing, "Sample spacing per axis")->required();
  sub_gen->add_option("--kind", gen.kind, "gaussian | delta | random")->required();
  sub_gen->add_option("--out", gen.out, "Output STCF path")->required();
  sub_gen->add_option("--origin", gen.origin, "Grid origin (default: centered about 0)");
  sub_gen->add_option("--center", gen.center, "Gaussian center coordinates");
  sub_gen->add_option("--width", gen.width, "Gaussian widths per axis");
  sub_gen->add_option("--amp", gen.amp, "Amplitude, blade:coeff list (e.g. 1:1,e12:0.5)");
  sub_gen->add_option("--tfreq", gen.tfreq, "Gaussian temporal modulation frequency");
  sub_gen->add_option("--sfreq", gen.sfreq, "Gaussian spatial modulation frequencies s1,s2,s3");
  sub_gen->add_option("--at", gen.at, "Delta location as indices");
  sub_gen->add_option("--seed", gen.seed, "Random generator seed");
  sub_gen->add_option("--threads", gen.threads, "Worker count or 'auto'");

  TransformArgs tr;
  auto* sub_tr = app.add_subcommand("transform", "Apply a transform to an STCF file");
  sub_tr->add_option("--kind", tr.kind, "sft | frsft | lcst | lcst2")->required();
  sub_tr->add_option("--in", tr.in, "Input STCF path")->required();
  sub_tr->add_option("--out", tr.out, "Output STCF path")->required();
  sub_tr->add_option("--params", tr.params, "a,b,c,d for lcst; a1,b1,c1,d1,a2,b2,c2,d2 for lcst2");
  auto* alpha_opt = sub_tr->add_option("--alpha", tr.alpha, "Rotation angle for frsft");
  sub_tr->add_option("--path", tr.path, "direct | fast (default fast)");
  sub_tr->add_flag("--inverse", tr.inverse, "Apply the inverse transform");
  sub_tr->add_option("--mode", tr.mode, "corrected | verbatim constants (default corrected)");
  sub_tr->add_option("--threads", tr.threads, "Worker count or 'auto'");

  ConvolveArgs cv;
  auto* sub_cv = app.add_subcommand("convolve", "Convolve two STCF files");
  sub_cv->add_option("--kind", cv.kind, "standard | mustard | odot | otimes | starn")->required();
  sub_cv->add_option("--a", cv.a, "Left operand STCF path")->required();
  sub_cv->add_option("--b", cv.b, "Right operand STCF path")->required();
  sub_cv->add_option("--out", cv.out, "Output STCF path")->required();
  sub_cv->add_option("--params", cv.params, "Matrix parameters for odot/otimes/starn");
  sub_cv->add_option("--method", cv.method, "mustard: spectral|eight; starn: spectral|eight|direct");
  sub_cv->add_option("--threads", cv.threads, "Worker count or 'auto'");

  VerifyArgs vf;
  auto* sub_vf = app.add_subcommand("verify", "Run the numerical identity suite");
  sub_vf->add_option("--suite", vf.suite, "algebra | transforms | convolutions | all");
  sub_vf->add_option("--mode", vf.mode, "corrected | verbatim constants");
  sub_vf->add_option("--seed", vf.seed, "Random draw seed");
  sub_vf->add_option("--report", vf.report, "JSON report output path")->required();
  sub_vf->add_option("--threads", vf.threads, "Worker count or 'auto'");

  BenchArgs bn;
  auto* sub_bn = app.add_subcommand("bench", "Time direct against fast transform paths");
  sub_bn->add_option("--kind", bn.kind, "lcst | lcst2 (default lcst)");
  sub_bn->add_option("--dims-sweep", bn.dims_sweep, "Per-axis sizes to sweep (default 4,8,12,16)");
  sub_bn->add_option("--paths", bn.paths, "Paths to time (default direct,fast)");
  sub_bn->add_option("--repeat", bn.repeat, "Repetitions; the minimum is reported (default 3)");
  sub_bn->add_option("--seed", bn.seed, "Random signal seed");
  sub_bn->add_option("--out", bn.out, "CSV output path, '-' for stdout");
  sub_bn->add_option("--threads", bn.threads, "Worker count or 'auto'");

  ExportArgs ex;
  auto* sub_ex = app.add_subcommand("export", "Export an STCF file as CSV");
  sub_ex->add_option("--in", ex.in, "Input STCF path")->required();
  sub_ex->add_option("--out", ex.out, "Output CSV path")->required();
  sub_ex->add_option("--slice", ex.slice, "Pin axes, e.g. t=0,x3=4 (or wt=...,w1=...)");
  sub_ex->add_option("--threads", ex.threads, "Worker count or 'auto'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    tr.alpha_set = alpha_opt->count() > 0;
    if (sub_gen->parsed()) return run_gen(gen);
    if (sub_tr->parsed()) return run_transform(tr);
    if (sub_cv->parsed()) return run_convolve(cv);
    if (sub_vf->parsed()) return run_verify(vf);
    if (sub_bn->parsed()) return run_bench(bn);
    if (sub_ex->parsed()) return run_export(ex);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StcfError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
