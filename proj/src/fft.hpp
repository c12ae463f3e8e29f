#pragma once

#include <complex>
#include <span>

namespace fracwave::detail {

/// In-place unnormalized DFT of arbitrary length.
///   sign = +1: out_j = sum_m in_m e^{+2 pi i jm/M}  (coefficients -> grid values)
///   sign = -1: out_m = sum_j in_j e^{-2 pi i jm/M}
/// Plans are created with FFTW_ESTIMATE and cached per thread, so results do
/// not depend on which thread runs the transform.
void dft(std::span<std::complex<double>> data, int sign);

}  // namespace fracwave::detail
