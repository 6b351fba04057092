#pragma once

#include <array>
#include <complex>

namespace stlcst {

// In-place 4-D complex DFT over a row-major n[0] x n[1] x n[2] x n[3] array.
// sign -1: X[m] = sum_j x[j] exp(-2 pi i <j,m>/N); sign +1: conjugate kernel.
// No normalization on either direction.
void dft4_inplace(std::complex<double>* data, const std::array<int, 4>& n, int sign);

}  // namespace stlcst
