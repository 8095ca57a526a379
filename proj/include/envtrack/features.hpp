#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "envtrack/signal.hpp"

namespace envtrack {

struct PowerSpectrum {
    std::vector<double> freqs_hz;  // strictly increasing
    std::vector<double> power;     // >= 0
    int n_tapers = 0;
    double smoothing_hz = 0.0;
};

// DPSS multitaper spectrum, K = floor(2 T W) - 1 tapers, grid restricted to
// [range_lo, range_hi].
PowerSpectrum multitaper_psd(const Signal& segment, double smoothing_hz = 0.5,
                             double range_lo_hz = 0.3, double range_hi_hz = 4500.0);

struct FractalFit {
    double log_offset = 0.0;
    double alpha = 0.0;  // 1/f^alpha exponent
};

// Divides the spectrum by a robustly fitted 1/f^alpha fractal component;
// the fit down-weights peak bins over three reweighting iterations.
PowerSpectrum periodic_fraction(const PowerSpectrum& psd, FractalFit* fit = nullptr);

struct BandPower {
    double env = 0.0;   // FreqRsum_env, 0.3-30 Hz
    double low = 0.0;   // 30-300 Hz
    double mid = 0.0;   // 300-1000 Hz
    double high = 0.0;  // 1000-4500 Hz
};

// Per band: sum of max(ratio - 1, 0) over the band's bins / duration.
BandPower band_periodic_power(const PowerSpectrum& ratio_psd, double duration_s);

struct PitchTrack {
    std::vector<double> frame_times_s;
    std::vector<double> f0_hz;          // 0 for unvoiced frames
    std::vector<double> voicing;        // normalized autocorrelation peak
    bool any_voiced = false;
};

struct PitchStats {
    double mean_hz = 0.0;
    double median_hz = 0.0;
    double sd_hz = 0.0;
    double min_hz = 0.0;
    double max_hz = 0.0;
};

PitchTrack pitch_track(const Signal& audio, double floor_hz = 75.0,
                       double ceiling_hz = 600.0);

// Statistics over voiced frames; nullopt when no frame is voiced.
std::optional<PitchStats> pitch_stats(const PitchTrack& track);

struct JitterMetrics {
    double loc = 0.0;      // ratio
    double loc_abs = 0.0;  // seconds
    double rap = 0.0;
    double ppq5 = 0.0;
};

JitterMetrics jitter_metrics(const std::vector<double>& periods_s);

struct ShimmerMetrics {
    double loc = 0.0;
    double loc_db = 0.0;
    double apq3 = 0.0;
    double apq5 = 0.0;
    double apq11 = 0.0;
};

ShimmerMetrics shimmer_metrics(const std::vector<double>& peak_amplitudes);

// Glottal cycle periods and per-cycle peak amplitudes derived from the
// pitch track (one cycle per f0 period, waveform peak-picking).
struct GlottalCycles {
    std::vector<double> periods_s;
    std::vector<double> peak_amplitudes;
};

GlottalCycles extract_glottal_cycles(const Signal& audio, const PitchTrack& track);

// Mean noise-to-harmonic ratio over voiced frames: (1 - r) / r at the
// pitch lag. Throws DegenerateInputError for fully unvoiced audio.
double harmonicity_mean_nhr(const Signal& audio, const PitchTrack& track);

// Frame intensity contour in dB (32 ms frames); returns the minimum.
double intensity_min_db(const Signal& audio);

struct LipFeatures {
    double avg_open = 0.0;    // 0..1, fraction of ROI height
    double avg_bright = 0.0;  // 0..1 mean luminance
};

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

struct Roi {
    int x = 0, y = 0, w = 0, h = 0;
};

LipFeatures lip_features(const std::vector<GrayImage>& frames, const Roi& roi);

// One speaker's averaged + normalized feature vector.
struct SpeakerProfile {
    std::string speaker_id;
    std::vector<std::pair<std::string, double>> features;  // declared order
    bool normalized = false;
};

struct ProfileBuildResult {
    std::vector<SpeakerProfile> profiles;
    std::vector<std::string> retained_features;
    std::vector<std::string> dropped_features;  // pruned or degenerate
};

// Per-speaker segment means -> min-max normalization across speakers ->
// greedy |r| > 0.8 pruning in declared feature order.
ProfileBuildResult build_profiles(
    const std::vector<std::string>& feature_names,
    const std::map<std::string, std::vector<std::vector<double>>>& per_speaker_segments,
    double prune_r = 0.8);

}  // namespace envtrack
