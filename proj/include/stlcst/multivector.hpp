#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace stlcst {

inline constexpr int kNumBlades = 16;

// Canonical basis order; this order is shared by the API, tests, and the file format.
enum BladeIndex : int {
  kScalar = 0,
  kEt,
  kE1,
  kE2,
  kE3,
  kE12,
  kE13,
  kE23,
  kEt1,
  kEt2,
  kEt3,
  kI3,
  kEt12,
  kEt13,
  kEt23,
  kIst,
};

// bit 0 = et, bits 1..3 = e1..e3; ascending bit position matches written generator order
inline constexpr std::array<std::uint8_t, kNumBlades> kBladeMask = {
    0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0110, 0b1010, 0b1100,
    0b0011, 0b0101, 0b1001, 0b1110, 0b0111, 0b1011, 0b1101, 0b1111,
};

namespace detail {

constexpr std::array<std::uint8_t, kNumBlades> make_mask_to_index() {
  std::array<std::uint8_t, kNumBlades> inv{};
  for (int i = 0; i < kNumBlades; ++i) inv[kBladeMask[i]] = static_cast<std::uint8_t>(i);
  return inv;
}

}  // namespace detail

inline constexpr std::array<std::uint8_t, kNumBlades> kMaskToIndex = detail::make_mask_to_index();

constexpr int blade_grade(int index) {
  return std::popcount(static_cast<unsigned>(kBladeMask[index]));
}

// Cayley table of the basis-blade geometric product.
struct SignTable {
  std::array<std::array<std::int8_t, kNumBlades>, kNumBlades> sign{};
  std::array<std::array<std::uint8_t, kNumBlades>, kNumBlades> blade{};
};

// Built from the generator rules alone: reordering swaps give the permutation
// sign, generators shared by both factors contract through the metric.
constexpr SignTable make_sign_table(int metric_t, int metric_spatial) {
  SignTable t{};
  for (int ia = 0; ia < kNumBlades; ++ia) {
    for (int ib = 0; ib < kNumBlades; ++ib) {
      const unsigned a = kBladeMask[ia];
      const unsigned b = kBladeMask[ib];
      int swaps = 0;
      for (unsigned sh = a >> 1; sh != 0; sh >>= 1) {
        swaps += std::popcount(sh & b);
      }
      int sign = (swaps % 2 == 0) ? 1 : -1;
      const unsigned common = a & b;
      if (metric_t < 0 && (common & 1u) != 0) sign = -sign;
      if (metric_spatial < 0 && std::popcount(common >> 1) % 2 != 0) sign = -sign;
      t.sign[ia][ib] = static_cast<std::int8_t>(sign);
      t.blade[ia][ib] = kMaskToIndex[a ^ b];
    }
  }
  return t;
}

// et^2 = -1, spatial generators square to +1; the unique assignment under
// which both pseudoscalars square to -1.
inline constexpr SignTable kSignTable = make_sign_table(-1, +1);

static_assert(kSignTable.sign[kI3][kI3] == -1 && kSignTable.blade[kI3][kI3] == kScalar);
static_assert(kSignTable.sign[kIst][kIst] == -1 && kSignTable.blade[kIst][kIst] == kScalar);
static_assert(kSignTable.sign[kEt][kEt] == -1 && kSignTable.sign[kE1][kE1] == 1);
static_assert(kSignTable.sign[kE2][kE2] == 1 && kSignTable.sign[kE3][kE3] == 1);

struct Multivector {
  std::array<double, kNumBlades> c{};

  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  static constexpr Multivector scalar(double s) {
    Multivector h{};
    h.c[kScalar] = s;
    return h;
  }

  static constexpr Multivector blade(int index, double coeff = 1.0) {
    Multivector h{};
    h.c[static_cast<std::size_t>(index)] = coeff;
    return h;
  }

  constexpr Multivector& operator+=(const Multivector& o) {
    for (int i = 0; i < kNumBlades; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Multivector& operator-=(const Multivector& o) {
    for (int i = 0; i < kNumBlades; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Multivector& operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
  }

  friend constexpr Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend constexpr Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend constexpr Multivector operator*(Multivector a, double s) { return a *= s; }
  friend constexpr Multivector operator*(double s, Multivector a) { return a *= s; }
  friend constexpr Multivector operator-(Multivector a) {
    for (double& x : a.c) x = -x;
    return a;
  }
  friend constexpr bool operator==(const Multivector& a, const Multivector& b) {
    return a.c == b.c;
  }
};

constexpr Multivector geometric_product(const Multivector& a, const Multivector& b) {
  Multivector r{};
  for (int ia = 0; ia < kNumBlades; ++ia) {
    const double ca = a.c[ia];
    if (ca == 0.0) continue;
    for (int ib = 0; ib < kNumBlades; ++ib) {
      r.c[kSignTable.blade[ia][ib]] += ca * b.c[ib] * kSignTable.sign[ia][ib];
    }
  }
  return r;
}

inline Multivector grade(const Multivector& h, int k) {
  if (k < 0 || k > 4) throw std::domain_error("grade: k must be in 0..4");
  Multivector r{};
  for (int i = 0; i < kNumBlades; ++i) {
    if (blade_grade(i) == k) r.c[i] = h.c[i];
  }
  return r;
}

namespace detail {

constexpr std::array<std::int8_t, kNumBlades> make_reverse_signs() {
  std::array<std::int8_t, kNumBlades> s{};
  for (int i = 0; i < kNumBlades; ++i) {
    const int k = blade_grade(i);
    const int t_count = kBladeMask[i] & 1u;
    const int parity = (k * (k - 1) / 2 + t_count) % 2;
    s[i] = static_cast<std::int8_t>(parity == 0 ? 1 : -1);
  }
  return s;
}

}  // namespace detail

// Principal reverse: grade reversal composed with negation of every et factor.
// Flips exactly {et, e12, e13, e23, i3, ist}.
inline constexpr std::array<std::int8_t, kNumBlades> kReverseSign = detail::make_reverse_signs();

constexpr Multivector reverse(const Multivector& h) {
  Multivector r{};
  for (int i = 0; i < kNumBlades; ++i) r.c[i] = h.c[i] * kReverseSign[i];
  return r;
}

constexpr double trace(const Multivector& h) { return h.c[kScalar]; }

inline double norm(const Multivector& h) {
  double s = 0.0;
  for (double x : h.c) s += x * x;
  return std::sqrt(s);
}

struct SignedBlade {
  std::int8_t sign;
  std::uint8_t blade;
};

namespace detail {

constexpr std::array<SignedBlade, kNumBlades> make_left_perm(int factor) {
  std::array<SignedBlade, kNumBlades> p{};
  for (int i = 0; i < kNumBlades; ++i) {
    p[i] = {kSignTable.sign[factor][i], kSignTable.blade[factor][i]};
  }
  return p;
}

constexpr std::array<SignedBlade, kNumBlades> make_right_perm(int factor) {
  std::array<SignedBlade, kNumBlades> p{};
  for (int i = 0; i < kNumBlades; ++i) {
    p[i] = {kSignTable.sign[i][factor], kSignTable.blade[i][factor]};
  }
  return p;
}

constexpr std::array<SignedBlade, kNumBlades> make_sandwich_perm() {
  std::array<SignedBlade, kNumBlades> p{};
  for (int i = 0; i < kNumBlades; ++i) {
    const auto l = make_left_perm(kEt)[i];
    const auto lr = make_right_perm(kI3)[l.blade];
    p[i] = {static_cast<std::int8_t>(l.sign * lr.sign), lr.blade};
  }
  return p;
}

}  // namespace detail

// et * e_J and e_J * i3 as signed permutations of the basis.
inline constexpr std::array<SignedBlade, kNumBlades> kEtLeft = detail::make_left_perm(kEt);
inline constexpr std::array<SignedBlade, kNumBlades> kI3Right = detail::make_right_perm(kI3);
// et * e_J * i3, the sandwich behind the +/- split.
inline constexpr std::array<SignedBlade, kNumBlades> kEtI3Sandwich = detail::make_sandwich_perm();

// h -> (cos a + sin a * et) * h
inline Multivector left_rotor_et(const Multivector& h, double cos_a, double sin_a) {
  Multivector r{};
  for (int i = 0; i < kNumBlades; ++i) {
    r.c[i] = cos_a * h.c[i];
  }
  for (int i = 0; i < kNumBlades; ++i) {
    r.c[kEtLeft[i].blade] += sin_a * kEtLeft[i].sign * h.c[i];
  }
  return r;
}

// h -> h * (cos a + sin a * i3)
inline Multivector right_rotor_i3(const Multivector& h, double cos_a, double sin_a) {
  Multivector r{};
  for (int i = 0; i < kNumBlades; ++i) {
    r.c[i] = cos_a * h.c[i];
  }
  for (int i = 0; i < kNumBlades; ++i) {
    r.c[kI3Right[i].blade] += sin_a * kI3Right[i].sign * h.c[i];
  }
  return r;
}

// (h_plus, h_minus) with h_plus + h_minus = h and et * h_pm * i3 = +/- h_pm.
inline std::pair<Multivector, Multivector> split(const Multivector& h) {
  Multivector sandwich{};
  for (int i = 0; i < kNumBlades; ++i) {
    sandwich.c[kEtI3Sandwich[i].blade] = kEtI3Sandwich[i].sign * h.c[i];
  }
  Multivector plus = (h + sandwich) * 0.5;
  Multivector minus = (h - sandwich) * 0.5;
  return {plus, minus};
}

inline Multivector blade_exp(const Multivector& u, double alpha) {
  Multivector sq = geometric_product(u, u);
  sq.c[kScalar] += 1.0;
  if (norm(sq) > 1e-12) throw std::domain_error("blade_exp: u*u must equal scalar -1");
  return Multivector::scalar(std::cos(alpha)) + u * std::sin(alpha);
}

inline double orthogonality_check(const Multivector& f, const Multivector& g, double alpha) {
  const Multivector rot = blade_exp(Multivector::blade(kI3), alpha);
  const Multivector f_plus = split(f).first;
  const Multivector g_minus = split(g).second;
  return trace(geometric_product(rot, geometric_product(reverse(f_plus), g_minus)));
}

const std::array<std::string, kNumBlades>& blade_names();

std::string to_string(const Multivector& h);

Multivector random_multivector(std::mt19937_64& rng);

}  // namespace stlcst
