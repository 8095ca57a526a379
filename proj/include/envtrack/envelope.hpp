#pragma once

#include <string>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

// Broadband speech envelope at the pipeline rate (64 Hz).
struct EnvelopeSeries {
    std::vector<double> samples;
    double rate = 64.0;
    std::string source_id;

    std::size_t size() const { return samples.size(); }
};

struct EnvelopeConfig {
    int n_bands = 128;
    double fmin_hz = 100.0;
    double fmax_hz = 6500.0;
    double lowpass_hz = 30.0;
    int lowpass_order = 3;
    double target_rate = 64.0;
};

// z-normalize -> gammatone bank -> per-band Hilbert magnitude -> band
// average -> Butterworth lowpass -> downsample.
EnvelopeSeries extract_broadband_envelope(const Signal& audio,
                                          const EnvelopeConfig& cfg = {});

// Split into consecutive full epochs; the trailing remainder is dropped.
std::vector<EnvelopeSeries> segment_envelope(const EnvelopeSeries& env,
                                             double epoch_s = 30.0);

}  // namespace envtrack
