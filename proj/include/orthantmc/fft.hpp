#pragma once

#include <complex>
#include <span>
#include <vector>

namespace orthantmc {

using ComplexSequence = std::vector<std::complex<double>>;

enum class FftDirection { forward, inverse };

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Smallest power of two >= n (n >= 1).
std::size_t next_power_of_two(std::size_t n);

// Iterative radix-2 transform, power-of-two lengths only (length >= 2).
// Forward: X_n = sum_j x_j exp(+2*pi*i*j*n/L), unnormalized.
// Inverse: x_j = (1/L) sum_n X_n exp(-2*pi*i*j*n/L).
// Throws std::invalid_argument on non-power-of-two lengths.
void fft_in_place(std::span<std::complex<double>> data, FftDirection direction);

ComplexSequence fft(ComplexSequence seq, FftDirection direction);

}  // namespace orthantmc
