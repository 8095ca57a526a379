#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "envtrack/decoder.hpp"

namespace envtrack {

// Known spatiotemporal response kernel: EEG response (uV per unit envelope)
// per channel and lag on the 64 Hz grid.
struct ForwardKernel {
    std::vector<std::vector<double>> weights;  // [channel][lag]
    double peak_lag_ms = 250.0;

    std::size_t n_channels() const { return weights.size(); }
    std::size_t n_lags() const { return weights.empty() ? 0 : weights[0].size(); }
    bool is_null() const;
};

// Gabor-shaped temporal profile peaking at peak_lag_ms with seeded random
// spatial loading.
ForwardKernel make_default_kernel(int channels, double peak_lag_ms, std::uint64_t seed,
                                  double max_lag_ms = 500.0);

// Kernel with all temporal mass in the single 64 Hz lag bin nearest lag_ms.
ForwardKernel make_single_lag_kernel(int channels, double lag_ms, std::uint64_t seed,
                                     double max_lag_ms = 500.0);

ForwardKernel make_null_kernel(int channels, double max_lag_ms = 500.0);

struct CellSpec {
    ForwardKernel kernel;
    std::optional<double> snr_db;  // nullopt = noise-only (null kernel cells)
};

struct SimSpec {
    int n_trials_per_cell = 10;
    double epoch_s = 30.0;
    int channels = 24;
    std::map<CellKey, CellSpec> cells;
    std::uint64_t seed = 0;
};

// Envelope-like stimulus: bandpassed 1-10 Hz Gaussian noise, shifted
// non-negative, unit variance, 64 Hz.
EnvelopeSeries gen_envelope(double duration_s, std::uint64_t seed);

// eeg[c][t] = sum_l kernel[c][l] * env[t-l] + noise, noise power set per
// channel so the achieved SNR matches snr_db. Noise is white Gaussian plus
// a shared pink component at 20 percent power.
TrialPair gen_trial(const EnvelopeSeries& envelope, const ForwardKernel& kernel,
                    std::optional<double> snr_db, std::uint64_t seed);

// Full 2x4-style study; per-trial RNG streams derive from (seed, trial id)
// so parallel generation cannot reorder randomness.
std::vector<TrialPair> gen_condition_study(const SimSpec& spec);

}  // namespace envtrack
