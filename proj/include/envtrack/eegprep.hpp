#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

// Multichannel recording, channels x samples, in microvolts.
struct EegRecording {
    std::vector<std::vector<double>> data;     // [channel][sample]
    double rate = 0.0;
    std::vector<std::string> channel_labels;
    std::vector<std::array<double, 3>> channel_positions;  // unit sphere

    std::size_t n_channels() const { return data.size(); }
    std::size_t n_samples() const { return data.empty() ? 0 : data[0].size(); }
    void validate() const;
};

struct EpochReject {
    std::size_t epoch_index;
    std::string reason;  // "amplitude" or "kurtosis"
};

struct EpochSet {
    std::vector<std::vector<std::vector<double>>> epochs;  // [epoch][channel][sample]
    double rate = 0.0;
    double epoch_s = 0.0;
    std::vector<bool> rejection_mask;  // true = rejected
    std::vector<std::string> trial_meta;

    std::size_t size() const { return epochs.size(); }
};

// Channels whose SD lies outside mean(SDs) +/- 2*SD(SDs).
std::set<std::size_t> detect_bad_channels(const EegRecording& rec);

// Amplitude threshold (any |sample| > amp_threshold_uv) and per-channel
// kurtosis outlier rule (z of epoch kurtosis across epochs > kurtosis_sd).
std::vector<bool> reject_epochs(const std::vector<std::vector<std::vector<double>>>& epochs,
                                double amp_threshold_uv = 80.0, double kurtosis_sd = 3.0,
                                std::vector<EpochReject>* report = nullptr);

EegRecording rereference_common_average(const EegRecording& rec);

// Replace bad channels with spherical-spline estimates from the good ones.
EegRecording spherical_interpolate(const EegRecording& rec,
                                   const std::set<std::size_t>& bad_channels);

struct PreprocessResult {
    EpochSet epochs;
    std::set<std::size_t> bad_channels;
    std::vector<EpochReject> rejections_1s;  // on the 1-s analysis grid
};

// Full chain: bad channels -> analysis copy (LP 40 -> 250 Hz -> HP 1 ->
// 1-s rejection stats) -> final LP 30 / HP 0.3 -> common average ->
// interpolation -> 64 Hz -> 30-s epochs with the mapped rejection mask.
PreprocessResult preprocess_pipeline(const EegRecording& rec, double trial_s = 30.0);

// Kurtosis m4/m2^2 of one sequence (3 for a Gaussian).
double kurtosis(const std::vector<double>& x);

}  // namespace envtrack
