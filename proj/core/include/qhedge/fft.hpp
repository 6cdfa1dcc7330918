#pragma once

#include <complex>
#include <vector>

namespace qhedge {

/// In-place radix-2 forward DFT: a[m] <- sum_j a[j] exp(-2 pi i j m / N).
/// N must be a power of two. Deterministic bit-for-bit given the input.
void fft_inplace(std::vector<std::complex<double>>& a);

bool is_power_of_two(std::size_t n);

} // namespace qhedge
