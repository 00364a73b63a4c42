#pragma once

#include <vector>

#include "fracell/error.hpp"

namespace fracell {

enum class FftSign { kPositive, kNegative };

// Unnormalized in-place DFT of a row-major array:
//   out[k] = sum_j in[j] exp(+-2 pi i <j, k / extents>)
// with the sign of the exponent chosen by `sign`. Extents may have 1 to 3 axes.
void dft_inplace(std::vector<cplx>& data, const std::vector<int>& extents, FftSign sign);

// Signed integer frequency for FFT-ordered index q on an axis of size m.
inline int signed_frequency(int q, int m) { return q < m / 2 ? q : q - m; }

}  // namespace fracell
