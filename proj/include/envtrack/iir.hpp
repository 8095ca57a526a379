#pragma once

#include <array>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

// One second-order section: b0 + b1 z^-1 + b2 z^-2 over 1 + a1 z^-1 + a2 z^-2.
struct Biquad {
    double b0, b1, b2, a1, a2;
};

// Butterworth lowpass realized as a cascade of second-order sections
// (odd orders carry one first-order section folded into a biquad with
// b2 = a2 = 0).
struct IirBiquadChain {
    std::vector<Biquad> sections;
    int order = 0;
    double cutoff_hz = 0.0;
    double rate = 0.0;

    // True when every pole lies strictly inside the unit circle.
    bool stable() const;

    // Magnitude response at f (Hz).
    double magnitude(double f_hz) const;
};

IirBiquadChain design_butterworth_lowpass(int order, double cutoff_hz, double rate);

// Single forward pass.
Signal apply_iir(const IirBiquadChain& chain, const Signal& x);

// Forward-backward (zero-phase) pass with mirror edge padding.
Signal apply_iir_zero_phase(const IirBiquadChain& chain, const Signal& x);

}  // namespace envtrack
