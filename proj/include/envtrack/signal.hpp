#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace envtrack {

// Uniformly sampled real-valued time series. Carrier for audio, EEG
// channels and envelopes throughout the pipeline.
struct Signal {
    std::vector<double> samples;
    double rate = 0.0;  // Hz

    Signal() = default;
    Signal(std::vector<double> s, double r) : samples(std::move(s)), rate(r) {}

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return static_cast<double>(samples.size()) / rate; }
};

struct DegenerateInputError : std::runtime_error {
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

// Compensated (Kahan) summation. Keeps accumulated rounding error at the
// single-operation level independent of sequence length.
double kahan_sum(const std::vector<double>& x);

double mean(const std::vector<double>& x);

// Population standard deviation helper used by z-normalization: sample SD
// with the n-1 denominator.
double sample_sd(const std::vector<double>& x);

// z-normalize to zero mean, unit SD. Throws DegenerateInputError on zero
// variance (silent audio).
Signal zscore(const Signal& x);

// zscore followed by snapping each sample to a 2^-20 grid. Division by a
// power of two is exact in binary floating point, so the result is
// bit-identical across positive input gains (the last-ulp differences the
// gain introduces are absorbed by the grid).
Signal zscore_quantized(const Signal& x);

}  // namespace envtrack
