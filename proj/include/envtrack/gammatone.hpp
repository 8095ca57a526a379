#pragma once

#include <complex>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

// Log-spaced gammatone filterbank realized as a cascade of four complex
// one-pole stages per band, bandwidths ERB-scaled at each center frequency.
struct GammatoneBank {
    std::vector<double> center_frequencies_hz;
    int n_bands = 0;
    double fmin_hz = 0.0;
    double fmax_hz = 0.0;
};

GammatoneBank make_gammatone_bank(double fmin_hz, double fmax_hz, int n_bands);

// Equivalent rectangular bandwidth (Glasberg & Moore) at f.
double erb_hz(double f_hz);

// Bandpass the signal through every filter; returns n_bands real signals
// of the same length as the input.
std::vector<Signal> gammatone_analyze(const GammatoneBank& bank, const Signal& x);

// Complex (analytic) band outputs; |value| is the band envelope.
std::vector<std::vector<std::complex<double>>> gammatone_analyze_complex(
    const GammatoneBank& bank, const Signal& x);

}  // namespace envtrack
