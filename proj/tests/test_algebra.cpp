#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stlcst/multivector.hpp"
#include "test_helpers.hpp"

using namespace stlcst;
using stlcst::testing::mv_close;
using stlcst::testing::mv_close_rel;

namespace {

Multivector blade(int i, double v = 1.0) { return Multivector::blade(i, v); }

bool pseudoscalars_square_to_minus_one(const SignTable& t) {
  return t.sign[kI3][kI3] == -1 && t.blade[kI3][kI3] == kScalar &&
         t.sign[kIst][kIst] == -1 && t.blade[kIst][kIst] == kScalar;
}

}  // namespace

TEST_CASE("signature is the unique assignment under the pseudoscalar constraints") {
  int passing = 0;
  for (int mt : {-1, +1}) {
    for (int ms : {-1, +1}) {
      const SignTable t = make_sign_table(mt, ms);
      if (pseudoscalars_square_to_minus_one(t)) {
        ++passing;
        CHECK(mt == -1);
        CHECK(ms == +1);
      }
    }
  }
  CHECK(passing == 1);
  CHECK(kSignTable.sign[kEt][kEt] == -1);
  CHECK(kSignTable.sign[kE1][kE1] == +1);
  CHECK(kSignTable.sign[kE2][kE2] == +1);
  CHECK(kSignTable.sign[kE3][kE3] == +1);
}

TEST_CASE("generators anticommute pairwise") {
  const int gens[4] = {kEt, kE1, kE2, kE3};
  for (int a : gens) {
    for (int b : gens) {
      if (a == b) continue;
      const Multivector ab = geometric_product(blade(a), blade(b));
      const Multivector ba = geometric_product(blade(b), blade(a));
      CHECK(mv_close(ab, -ba, 0.0));
    }
  }
}

TEST_CASE("geometric product basics") {
  CHECK(mv_close(geometric_product(blade(kE1), blade(kE2)), blade(kE12), 0.0));
  CHECK(mv_close(geometric_product(blade(kEt), blade(kEt)), Multivector::scalar(-1.0), 0.0));
  CHECK(mv_close(geometric_product(blade(kE1), blade(kE1)), Multivector::scalar(1.0), 0.0));

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const Multivector h = random_multivector(rng);
    CHECK(mv_close(geometric_product(Multivector::scalar(1.0), h), h, 0.0));
    CHECK(mv_close(geometric_product(h, Multivector::scalar(1.0)), h, 0.0));
  }
}

TEST_CASE("geometric product is associative") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 1000; ++rep) {
    const Multivector a = random_multivector(rng);
    const Multivector b = random_multivector(rng);
    const Multivector c = random_multivector(rng);
    const Multivector left = geometric_product(geometric_product(a, b), c);
    const Multivector right = geometric_product(a, geometric_product(b, c));
    CHECK(mv_close_rel(left, right, 1e-10));
  }
}

TEST_CASE("grade projection") {
  Multivector h = Multivector::scalar(1.0);
  h[kEt] = 1.0;
  h[kE12] = 1.0;
  CHECK(mv_close(grade(h, 1), blade(kEt), 0.0));
  CHECK(mv_close(grade(blade(kIst), 4), blade(kIst), 0.0));

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const Multivector r = random_multivector(rng);
    Multivector sum{};
    for (int k = 0; k <= 4; ++k) sum += grade(r, k);
    CHECK(mv_close(sum, r, 0.0));
  }

  CHECK_THROWS_AS(grade(h, 5), std::domain_error);
  CHECK_THROWS_AS(grade(h, -1), std::domain_error);
}

TEST_CASE("grade sizes partition the basis as 1+4+6+4+1") {
  int count[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < kNumBlades; ++i) count[blade_grade(i)]++;
  CHECK(count[0] == 1);
  CHECK(count[1] == 4);
  CHECK(count[2] == 6);
  CHECK(count[3] == 4);
  CHECK(count[4] == 1);
}

TEST_CASE("principal reverse flips exactly the six listed blades") {
  const bool flips[kNumBlades] = {false, true,  false, false, false, true,  true,  true,
                                  false, false, false, true,  false, false, false, true};
  for (int i = 0; i < kNumBlades; ++i) {
    CHECK(kReverseSign[i] == (flips[i] ? -1 : +1));
  }
  CHECK(mv_close(reverse(blade(kEt)), blade(kEt, -1.0), 0.0));
  CHECK(mv_close(reverse(blade(kEt1)), blade(kEt1), 0.0));
}

TEST_CASE("principal reverse is an involutive anti-automorphism") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const Multivector a = random_multivector(rng);
    const Multivector b = random_multivector(rng);
    CHECK(mv_close(reverse(reverse(a)), a, 0.0));
    CHECK(mv_close(reverse(a + b), reverse(a) + reverse(b), 0.0));
    CHECK(mv_close_rel(reverse(geometric_product(a, b)),
                       geometric_product(reverse(b), reverse(a)), 1e-12));
  }
}

TEST_CASE("trace extracts the scalar coefficient") {
  Multivector h = Multivector::scalar(3.0);
  h[kE1] = 2.0;
  CHECK(trace(h) == 3.0);
  CHECK(trace(geometric_product(blade(kE1), blade(kE1))) == 1.0);
}

TEST_CASE("trace is cyclic on triple products") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 100; ++rep) {
    Multivector a = random_multivector(rng);
    Multivector b = random_multivector(rng);
    Multivector c = random_multivector(rng);
    a *= 1.0 / norm(a);
    b *= 1.0 / norm(b);
    c *= 1.0 / norm(c);
    const double t1 = trace(geometric_product(geometric_product(a, b), c));
    const double t2 = trace(geometric_product(geometric_product(c, a), b));
    CHECK(std::abs(t1 - t2) <= 1e-12);
  }
}

TEST_CASE("norm agrees with the trace form") {
  Multivector h{};
  h[kEt] = 1.0;
  h[kE1] = 1.0;
  CHECK(norm(h) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const Multivector r = random_multivector(rng);
    const double n2 = norm(r) * norm(r);
    const double t = trace(geometric_product(r, reverse(r)));
    CHECK(std::abs(n2 - t) <= 1e-10 * std::max(1.0, n2));
  }
}

TEST_CASE("norm is invariant under two-sided rotor action") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const Multivector h = random_multivector(rng);
    const double a = ang(rng);
    const double ap = ang(rng);
    const Multivector rotated = geometric_product(
        blade_exp(blade(kEt), a), geometric_product(h, blade_exp(blade(kI3), ap)));
    CHECK(std::abs(norm(rotated) - norm(h)) <= 1e-12 * std::max(1.0, norm(h)));

    const Multivector sandwich =
        geometric_product(blade(kEt), geometric_product(h, blade(kI3)));
    CHECK(std::abs(norm(sandwich) - norm(h)) <= 1e-12 * std::max(1.0, norm(h)));
  }
}

TEST_CASE("split halves sum back and projects idempotently") {
  const auto [p1, m1] = split(Multivector::scalar(1.0));
  Multivector expect_plus = Multivector::scalar(0.5);
  expect_plus[kIst] = 0.5;
  Multivector expect_minus = Multivector::scalar(0.5);
  expect_minus[kIst] = -0.5;
  CHECK(mv_close(p1, expect_plus, 0.0));
  CHECK(mv_close(m1, expect_minus, 0.0));

  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const Multivector h = random_multivector(rng);
    const auto [hp, hm] = split(h);
    CHECK(mv_close(hp + hm, h, 1e-15));
    const auto [hpp, hpm] = split(hp);
    CHECK(mv_close(hpp, hp, 1e-15));
    CHECK(mv_close(hpm, Multivector{}, 1e-15));
    const double n2 = norm(h) * norm(h);
    CHECK(std::abs(norm(hp) * norm(hp) + norm(hm) * norm(hm) - n2) <=
          1e-12 * std::max(1.0, n2));
  }
}

TEST_CASE("split parts absorb a left temporal rotor as a right spatial rotor") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const Multivector h = random_multivector(rng);
    const auto [hp, hm] = split(h);
    const double a = ang(rng);
    const double ap = ang(rng);
    const Multivector lhs_p = geometric_product(
        blade_exp(blade(kEt), a), geometric_product(hp, blade_exp(blade(kI3), ap)));
    const Multivector rhs_p = geometric_product(hp, blade_exp(blade(kI3), ap - a));
    CHECK(mv_close(lhs_p, rhs_p, 1e-12));
    const Multivector lhs_m = geometric_product(
        blade_exp(blade(kEt), a), geometric_product(hm, blade_exp(blade(kI3), ap)));
    const Multivector rhs_m = geometric_product(hm, blade_exp(blade(kI3), ap + a));
    CHECK(mv_close(lhs_m, rhs_m, 1e-12));
  }
}

TEST_CASE("blade_exp on unit imaginary blades") {
  CHECK(mv_close(blade_exp(blade(kEt), 0.0), Multivector::scalar(1.0), 0.0));
  CHECK(mv_close(blade_exp(blade(kI3), std::numbers::pi / 2), blade(kI3), 1e-15));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double a = ang(rng);
    const double b = ang(rng);
    const Multivector prod =
        geometric_product(blade_exp(blade(kEt), a), blade_exp(blade(kEt), b));
    CHECK(mv_close(prod, blade_exp(blade(kEt), a + b), 1e-14));
  }

  CHECK_THROWS_AS(blade_exp(blade(kE1), 1.0), std::domain_error);
  Multivector bad = Multivector::scalar(1.0);
  bad[kEt] = 1.0;
  CHECK_THROWS_AS(blade_exp(bad, 1.0), std::domain_error);
}

TEST_CASE("opposite split parts are orthogonal under the twisted trace form") {
  CHECK(std::abs(orthogonality_check(Multivector::scalar(1.0), Multivector::scalar(1.0),
                                     0.7)) <= 1e-15);
  CHECK(std::abs(orthogonality_check(blade(kE1), blade(kEt), 0.0)) <= 1e-15);

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const Multivector f = random_multivector(rng);
    const Multivector g = random_multivector(rng);
    CHECK(std::abs(orthogonality_check(f, g, ang(rng))) <= 1e-12);
  }
}

TEST_CASE("i3 commutes with spatial blades and anticommutes with temporal ones") {
  for (int i = 0; i < kNumBlades; ++i) {
    const Multivector left = geometric_product(blade(kI3), blade(i));
    const Multivector right = geometric_product(blade(i), blade(kI3));
    const bool has_t = (kBladeMask[i] & 1u) != 0;
    if (has_t) {
      CHECK(mv_close(left, -right, 0.0));
    } else {
      CHECK(mv_close(left, right, 0.0));
    }
  }
}

TEST_CASE("right multiplication by i3 pairs the basis into eight two-cycles") {
  bool seen[kNumBlades] = {};
  int cycles = 0;
  for (int i = 0; i < kNumBlades; ++i) {
    if (seen[i]) continue;
    const int j = kI3Right[i].blade;
    CHECK(j != i);
    CHECK(kI3Right[j].blade == i);
    // (e_J i3) i3 = -e_J forces opposite signs around each two-cycle
    CHECK(kI3Right[i].sign * kI3Right[j].sign == -1);
    seen[i] = seen[j] = true;
    ++cycles;
  }
  CHECK(cycles == 8);
}
