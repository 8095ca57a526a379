#pragma once

#include <complex>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

// FFT-based analytic signal (positive-frequency doubling).
std::vector<std::complex<double>> analytic_signal(const std::vector<double>& x);

// Magnitude of the analytic signal; non-negative everywhere.
Signal hilbert_envelope(const Signal& x);

}  // namespace envtrack
