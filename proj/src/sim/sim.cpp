#include "envtrack/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "envtrack/fft.hpp"
#include "envtrack/iir.hpp"
#include "envtrack/parallel.hpp"
#include "envtrack/signal.hpp"

namespace envtrack {

namespace {

// splitmix64 stream mixing so every (seed, cell, trial, role) tuple gets an
// independent, order-free stream.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
    return mix(mix(mix(base ^ mix(a)) ^ mix(b)) ^ mix(c));
}

std::vector<double> gaussian_noise(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

double variance(const std::vector<double>& x) {
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size());
}

// 1/f-shaped noise via spectral weighting, normalized to unit variance.
std::vector<double> pink_noise(std::size_t n, std::mt19937_64& rng) {
    std::vector<double> white = gaussian_noise(n, rng);
    std::vector<std::complex<double>> spec =
        fft(std::vector<std::complex<double>>(white.begin(), white.end()));
    spec[0] = {0.0, 0.0};
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t f = std::min(k, n - k);
        spec[k] /= std::sqrt(static_cast<double>(f));
    }
    auto shaped = ifft(spec);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = shaped[i].real();
    const double sd = std::sqrt(variance(out));
    for (double& v : out) v /= sd;
    return out;
}

int cell_index(const CellKey& key) {
    return static_cast<int>(key.first) * 2 + static_cast<int>(key.second);
}

}  // namespace

bool ForwardKernel::is_null() const {
    for (const auto& ch : weights)
        for (double v : ch)
            if (v != 0.0) return false;
    return true;
}

ForwardKernel make_default_kernel(int channels, double peak_lag_ms, std::uint64_t seed,
                                  double max_lag_ms) {
    const int n_lags = static_cast<int>(max_lag_ms / kLagStepMs) + 1;
    std::mt19937_64 rng(mix(seed));
    std::normal_distribution<double> dist(0.0, 1.0);
    ForwardKernel k;
    k.peak_lag_ms = peak_lag_ms;
    k.weights.assign(channels, std::vector<double>(n_lags, 0.0));
    // Gabor temporal profile: Gaussian bump at the peak lag carrying a slow
    // oscillation, common to all channels; spatial loading is random but
    // bounded away from zero so per-channel SNR stays defined.
    const double sigma_ms = 60.0;
    const double carrier_hz = 4.0;
    std::vector<double> profile(n_lags);
    for (int l = 0; l < n_lags; ++l) {
        const double ms = l * kLagStepMs;
        profile[l] = std::exp(-0.5 * std::pow((ms - peak_lag_ms) / sigma_ms, 2)) *
                     std::cos(2.0 * std::numbers::pi * carrier_hz * (ms - peak_lag_ms) / 1000.0);
    }
    for (int c = 0; c < channels; ++c) {
        double load = dist(rng);
        if (std::abs(load) < 0.2) load = load < 0.0 ? -0.2 : 0.2;
        for (int l = 0; l < n_lags; ++l) k.weights[c][l] = load * profile[l];
    }
    return k;
}

ForwardKernel make_single_lag_kernel(int channels, double lag_ms, std::uint64_t seed,
                                     double max_lag_ms) {
    const int n_lags = static_cast<int>(max_lag_ms / kLagStepMs) + 1;
    const int peak = static_cast<int>(std::llround(lag_ms / kLagStepMs));
    std::mt19937_64 rng(mix(seed));
    std::normal_distribution<double> dist(0.0, 1.0);
    ForwardKernel k;
    k.peak_lag_ms = peak * kLagStepMs;
    k.weights.assign(channels, std::vector<double>(n_lags, 0.0));
    for (int c = 0; c < channels; ++c) {
        double load = dist(rng);
        if (std::abs(load) < 0.2) load = load < 0.0 ? -0.2 : 0.2;
        k.weights[c][peak] = load;
    }
    return k;
}

ForwardKernel make_null_kernel(int channels, double max_lag_ms) {
    const int n_lags = static_cast<int>(max_lag_ms / kLagStepMs) + 1;
    ForwardKernel k;
    k.peak_lag_ms = 0.0;
    k.weights.assign(channels, std::vector<double>(n_lags, 0.0));
    return k;
}

EnvelopeSeries gen_envelope(double duration_s, std::uint64_t seed) {
    if (duration_s < 1.0) throw std::invalid_argument("gen_envelope: duration >= 1 s");
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * kPipelineRate));
    std::mt19937_64 rng(mix(seed));
    Signal s{gaussian_noise(n, rng), kPipelineRate};

    const IirBiquadChain lp = design_butterworth_lowpass(4, 10.0, kPipelineRate);
    const IirBiquadChain lp_lo = design_butterworth_lowpass(4, 1.0, kPipelineRate);
    s = apply_iir_zero_phase(lp, s);
    const Signal slow = apply_iir_zero_phase(lp_lo, s);
    for (std::size_t i = 0; i < n; ++i) s.samples[i] -= slow.samples[i];

    const double lo = *std::min_element(s.samples.begin(), s.samples.end());
    for (double& v : s.samples) v -= lo;  // non-negative
    const double sd = std::sqrt(variance(s.samples));
    for (double& v : s.samples) v /= sd;

    EnvelopeSeries env;
    env.rate = kPipelineRate;
    env.samples = std::move(s.samples);
    env.source_id = "sim:" + std::to_string(seed);
    return env;
}

TrialPair gen_trial(const EnvelopeSeries& envelope, const ForwardKernel& kernel,
                    std::optional<double> snr_db, std::uint64_t seed) {
    const std::size_t n = envelope.size();
    const std::size_t nc = kernel.n_channels();
    const std::size_t nl = kernel.n_lags();
    if (nl >= n) throw std::invalid_argument("gen_trial: kernel span exceeds epoch");
    const bool null_kernel = kernel.is_null();
    if (null_kernel && snr_db.has_value())
        throw std::invalid_argument("gen_trial: SNR undefined for a null kernel");

    TrialPair trial;
    trial.envelope = envelope;
    trial.eeg_epoch.assign(nc, std::vector<double>(n, 0.0));

    std::mt19937_64 rng(mix(seed));
    const std::vector<double> shared_pink = pink_noise(n, rng);

    for (std::size_t c = 0; c < nc; ++c) {
        std::vector<double>& ch = trial.eeg_epoch[c];
        for (std::size_t t = 0; t < n; ++t) {
            double acc = 0.0;
            for (std::size_t l = 0; l < nl && l <= t; ++l)
                acc += kernel.weights[c][l] * envelope.samples[t - l];
            ch[t] = acc;
        }
        double noise_power = 1.0;
        if (snr_db.has_value()) {
            const double signal_power = variance(ch);
            noise_power = signal_power / std::pow(10.0, *snr_db / 10.0);
        }
        std::vector<double> white = gaussian_noise(n, rng);
        const double wsd = std::sqrt(variance(white));
        const double w_scale = std::sqrt(0.8 * noise_power) / wsd;
        const double p_scale = std::sqrt(0.2 * noise_power);
        for (std::size_t t = 0; t < n; ++t)
            ch[t] += w_scale * white[t] + p_scale * shared_pink[t];
    }
    return trial;
}

std::vector<TrialPair> gen_condition_study(const SimSpec& spec) {
    std::vector<TrialPair> trials;
    for (const auto& [key, cell] : spec.cells) {
        const int base = cell_index(key);
        for (int t = 0; t < spec.n_trials_per_cell; ++t) {
            const std::uint64_t env_seed = derive_seed(spec.seed, base, t, 0);
            const std::uint64_t trial_seed = derive_seed(spec.seed, base, t, 1);
            EnvelopeSeries env = gen_envelope(spec.epoch_s, env_seed);
            TrialPair trial = gen_trial(env, cell.kernel, cell.snr_db, trial_seed);
            trial.condition = key.first;
            trial.noise = key.second;
            trial.speaker_id = "s" + std::to_string(t % 6 + 1);
            char id[64];
            std::snprintf(id, sizeof(id), "%s_%s_%03d", to_string(key.first).c_str(),
                          to_string(key.second).c_str(), t);
            trial.trial_id = id;
            trials.push_back(std::move(trial));
        }
    }
    return trials;
}

}  // namespace envtrack
