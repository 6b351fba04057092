#pragma once

#include <stdexcept>
#include <string>

#include "stlcst/signal.hpp"

namespace stlcst {

// Raised for malformed, truncated, or unreadable STCF and CSV files.
struct StcfError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_signal(const SpaceTimeSignal& f, const std::string& path);
SpaceTimeSignal read_signal(const std::string& path);

void write_spectrum(const Spectrum& f, const std::string& path);
Spectrum read_spectrum(const std::string& path);

// Peeks at the kind byte: 0 for a space-time signal, 1 for a spectrum.
int stcf_kind(const std::string& path);

// slice[ax] >= 0 pins that axis to one index and drops all other rows;
// -1 leaves the axis free. Pinned indices must be in range.
void write_csv(const SpaceTimeSignal& f, const std::string& path,
               const std::array<int, 4>& slice = {-1, -1, -1, -1});
void write_csv(const Spectrum& f, const std::string& path,
               const std::array<int, 4>& slice = {-1, -1, -1, -1});

}  // namespace stlcst
