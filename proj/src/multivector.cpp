#include "stlcst/multivector.hpp"

#include <sstream>

namespace stlcst {

const std::array<std::string, kNumBlades>& blade_names() {
  static const std::array<std::string, kNumBlades> names = {
      "1",   "et",  "e1",   "e2",   "e3",   "e12",  "e13",   "e23",
      "et1", "et2", "et3", "i3",  "et12", "et13", "et23", "ist"};
  return names;
}

std::string to_string(const Multivector& h) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < kNumBlades; ++i) {
    if (h.c[i] == 0.0) continue;
    if (!first) out << (h.c[i] < 0 ? " - " : " + ");
    else if (h.c[i] < 0) out << "-";
    out << std::abs(h.c[i]);
    if (i != kScalar) out << "*" << blade_names()[i];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

Multivector random_multivector(std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Multivector h{};
  for (double& x : h.c) x = dist(rng);
  return h;
}

}  // namespace stlcst
