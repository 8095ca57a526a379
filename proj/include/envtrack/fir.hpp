#pragma once

#include <complex>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

enum class FirKind { Lowpass, Highpass };
enum class FirWindow { Hamming, Hann };

// Linear-phase windowed-sinc FIR filter. Tap count is order + 1; order must
// be even so the group delay is an integer number of samples.
struct FirFilter {
    std::vector<double> taps;
    FirKind kind = FirKind::Lowpass;
    double cutoff_hz = 0.0;
    int order = 0;
    FirWindow window = FirWindow::Hamming;
    double rate = 0.0;

    int delay_samples() const { return order / 2; }

    // Frequency response at f (Hz) by direct tap evaluation.
    std::complex<double> response(double f_hz) const;
};

FirFilter design_fir(FirKind kind, double cutoff_hz, int order, FirWindow window,
                     double rate);

// Zero-phase application: convolve with the linear-phase kernel over a
// reflect-padded extension of the signal and drop the symmetric delay.
// Output has the same length as the input.
Signal apply_zero_phase(const FirFilter& f, const Signal& x);

}  // namespace envtrack
