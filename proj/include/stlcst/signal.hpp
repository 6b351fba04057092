#pragma once

#include <random>
#include <vector>

#include "stlcst/grid.hpp"
#include "stlcst/multivector.hpp"

namespace stlcst {

template <class GridT>
struct Field {
  GridT grid{};
  std::vector<Multivector> data;

  Multivector& at(const std::array<int, 4>& idx) { return data[grid.flat(idx)]; }
  const Multivector& at(const std::array<int, 4>& idx) const { return data[grid.flat(idx)]; }
};

using SpaceTimeSignal = Field<SpaceTimeGrid>;
using Spectrum = Field<FrequencyGrid>;

template <class GridT>
Field<GridT> zero_field(const GridT& g) {
  g.validate();
  return Field<GridT>{g, std::vector<Multivector>(static_cast<std::size_t>(g.total()))};
}

inline SpaceTimeSignal zero_signal(const SpaceTimeGrid& g) { return zero_field(g); }
inline Spectrum zero_spectrum(const FrequencyGrid& g) { return zero_field(g); }

SpaceTimeSignal gaussian_packet(const SpaceTimeGrid& g, const std::array<double, 4>& center,
                                const std::array<double, 4>& width,
                                const Multivector& blade_amplitude, double temporal_freq,
                                const std::array<double, 3>& spatial_freq,
                                bool* contained_out = nullptr);

template <class GridT>
Field<GridT> random_field(const GridT& g, std::mt19937_64& rng) {
  Field<GridT> f = zero_field(g);
  for (Multivector& h : f.data) h = random_multivector(rng);
  return f;
}

template <class GridT>
Field<GridT> delta_field(const GridT& g, const std::array<int, 4>& idx,
                         const Multivector& amplitude) {
  Field<GridT> f = zero_field(g);
  f.at(idx) = amplitude;
  return f;
}

template <class GridT>
Multivector discrete_inner_product(const Field<GridT>& f, const Field<GridT>& g) {
  if (!(f.grid == g.grid)) {
    throw std::invalid_argument("discrete_inner_product: grids differ");
  }
  Multivector acc{};
  for (std::size_t j = 0; j < f.data.size(); ++j) {
    acc += geometric_product(f.data[j], reverse(g.data[j]));
  }
  return acc * f.grid.cell_volume();
}

template <class GridT>
double field_norm(const Field<GridT>& f) {
  double s = 0.0;
  for (const Multivector& h : f.data) {
    for (double x : h.c) s += x * x;
  }
  return std::sqrt(s * f.grid.cell_volume());
}

template <class GridT>
double max_coeff_abs(const Field<GridT>& f) {
  double m = 0.0;
  for (const Multivector& h : f.data) {
    for (double x : h.c) m = std::max(m, std::abs(x));
  }
  return m;
}

template <class GridT>
double max_abs_difference(const Field<GridT>& a, const Field<GridT>& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("max_abs_difference: grids differ");
  double m = 0.0;
  for (std::size_t j = 0; j < a.data.size(); ++j) {
    for (int i = 0; i < kNumBlades; ++i) {
      m = std::max(m, std::abs(a.data[j].c[i] - b.data[j].c[i]));
    }
  }
  return m;
}

template <class GridT>
Field<GridT> field_scale(Field<GridT> f, double s) {
  for (Multivector& h : f.data) h *= s;
  return f;
}

template <class GridT>
Field<GridT> field_sub(const Field<GridT>& a, const Field<GridT>& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("field_sub: grids differ");
  Field<GridT> r = a;
  for (std::size_t j = 0; j < r.data.size(); ++j) r.data[j] -= b.data[j];
  return r;
}

template <class GridT>
Field<GridT> field_add(const Field<GridT>& a, const Field<GridT>& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("field_add: grids differ");
  Field<GridT> r = a;
  for (std::size_t j = 0; j < r.data.size(); ++j) r.data[j] += b.data[j];
  return r;
}

}  // namespace stlcst
