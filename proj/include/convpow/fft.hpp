#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace convpow::detail {

// In-place iterative radix-2 FFT. Length must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace convpow::detail
