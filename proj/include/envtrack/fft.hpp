#pragma once

#include <complex>
#include <vector>

namespace envtrack {

// Forward/inverse complex DFT (FFTW-backed, any length). The inverse is
// scaled by 1/N so ifft(fft(x)) == x.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

// Real-input forward DFT returning the N/2+1 non-negative-frequency bins.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

}  // namespace envtrack
