#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "envtrack/features.hpp"

namespace envtrack {

namespace {

constexpr double kFrameS = 0.040;
constexpr double kHopS = 0.010;
constexpr double kVoicingThreshold = 0.45;

// Normalized autocorrelation of a mean-removed frame at one lag. The
// cross-normalized form (energies of the two overlapping segments) is
// unbiased for periodic input: a clean tone scores ~1 at its period.
double norm_autocorr(const std::vector<double>& frame, int lag) {
    const int n = static_cast<int>(frame.size());
    if (lag < 0 || lag >= n) return 0.0;
    double e1 = 0.0, e2 = 0.0, rl = 0.0;
    for (int i = 0; i + lag < n; ++i) {
        rl += frame[i] * frame[i + lag];
        e1 += frame[i] * frame[i];
        e2 += frame[i + lag] * frame[i + lag];
    }
    const double denom = std::sqrt(e1 * e2);
    if (denom <= 0.0) return 0.0;
    return rl / denom;
}

struct FramePitch {
    double f0 = 0.0;
    double voicing = 0.0;
};

FramePitch analyze_frame(std::vector<double> frame, double rate, double floor_hz,
                         double ceiling_hz) {
    const double m = std::accumulate(frame.begin(), frame.end(), 0.0) / frame.size();
    for (double& v : frame) v -= m;

    const int lag_min = std::max(2, static_cast<int>(rate / ceiling_hz));
    const int lag_max = std::min(static_cast<int>(frame.size()) - 2,
                                 static_cast<int>(rate / floor_hz));
    FramePitch out;
    if (lag_min >= lag_max) return out;

    // Small per-octave cost keeps period multiples of a perfectly periodic
    // frame from outscoring the fundamental.
    constexpr double kOctaveCost = 0.02;
    int best_lag = 0;
    double best_r = 0.0, best_score = 0.0;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
        const double r = norm_autocorr(frame, lag);
        const double score = r - kOctaveCost * std::log2(static_cast<double>(lag) / lag_min);
        if (score > best_score) {
            best_score = score;
            best_r = r;
            best_lag = lag;
        }
    }
    if (best_lag == 0 || best_r < kVoicingThreshold) return out;

    // Parabolic interpolation around the peak for sub-sample lag.
    double lag_refined = best_lag;
    if (best_lag > lag_min && best_lag < lag_max) {
        const double rm = norm_autocorr(frame, best_lag - 1);
        const double rp = norm_autocorr(frame, best_lag + 1);
        const double denom = rm - 2.0 * best_r + rp;
        if (denom < 0.0) lag_refined += 0.5 * (rm - rp) / denom;
    }
    out.f0 = rate / lag_refined;
    out.voicing = best_r;
    if (out.f0 < floor_hz || out.f0 > ceiling_hz) out.f0 = 0.0;
    return out;
}

}  // namespace

PitchTrack pitch_track(const Signal& audio, double floor_hz, double ceiling_hz) {
    if (audio.duration_s() < 0.1)
        throw std::invalid_argument("pitch_track: audio must be >= 100 ms");
    const int frame_len = static_cast<int>(kFrameS * audio.rate);
    const int hop = static_cast<int>(kHopS * audio.rate);
    PitchTrack track;
    for (int start = 0; start + frame_len <= static_cast<int>(audio.size()); start += hop) {
        std::vector<double> frame(audio.samples.begin() + start,
                                  audio.samples.begin() + start + frame_len);
        const FramePitch fp = analyze_frame(std::move(frame), audio.rate, floor_hz, ceiling_hz);
        track.frame_times_s.push_back((start + frame_len / 2.0) / audio.rate);
        track.f0_hz.push_back(fp.f0);
        track.voicing.push_back(fp.voicing);
        if (fp.f0 > 0.0) track.any_voiced = true;
    }
    return track;
}

std::optional<PitchStats> pitch_stats(const PitchTrack& track) {
    std::vector<double> voiced;
    for (double f : track.f0_hz)
        if (f > 0.0) voiced.push_back(f);
    if (voiced.empty()) return std::nullopt;

    PitchStats st;
    st.mean_hz = mean(voiced);
    std::vector<double> sorted = voiced;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    st.median_hz = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    st.sd_hz = n > 1 ? sample_sd(voiced) : 0.0;
    st.min_hz = sorted.front();
    st.max_hz = sorted.back();
    return st;
}

JitterMetrics jitter_metrics(const std::vector<double>& periods_s) {
    const std::size_t n = periods_s.size();
    if (n < 3) throw std::invalid_argument("jitter_metrics: need >= 3 periods");
    const double mean_t = mean(periods_s);

    double abs_diff = 0.0;
    for (std::size_t i = 1; i < n; ++i) abs_diff += std::abs(periods_s[i] - periods_s[i - 1]);
    abs_diff /= static_cast<double>(n - 1);

    JitterMetrics j;
    j.loc_abs = abs_diff;
    j.loc = abs_diff / mean_t;

    double rap = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double local3 = (periods_s[i - 1] + periods_s[i] + periods_s[i + 1]) / 3.0;
        rap += std::abs(periods_s[i] - local3);
    }
    j.rap = rap / static_cast<double>(n - 2) / mean_t;

    if (n >= 5) {
        double ppq5 = 0.0;
        for (std::size_t i = 2; i + 2 < n; ++i) {
            double local5 = 0.0;
            for (std::size_t k = i - 2; k <= i + 2; ++k) local5 += periods_s[k];
            local5 /= 5.0;
            ppq5 += std::abs(periods_s[i] - local5);
        }
        j.ppq5 = ppq5 / static_cast<double>(n - 4) / mean_t;
    }
    return j;
}

ShimmerMetrics shimmer_metrics(const std::vector<double>& amps) {
    const std::size_t n = amps.size();
    if (n < 3) throw std::invalid_argument("shimmer_metrics: need >= 3 amplitudes");
    for (double a : amps)
        if (!(a > 0.0)) throw std::invalid_argument("shimmer_metrics: non-positive amplitude");
    const double mean_a = mean(amps);

    double abs_diff = 0.0, db_diff = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        abs_diff += std::abs(amps[i] - amps[i - 1]);
        db_diff += std::abs(20.0 * std::log10(amps[i - 1] / amps[i]));
    }
    ShimmerMetrics s;
    s.loc = abs_diff / static_cast<double>(n - 1) / mean_a;
    s.loc_db = db_diff / static_cast<double>(n - 1);

    auto apq = [&](std::size_t win) -> double {
        if (n < win) return 0.0;
        const std::size_t half = win / 2;
        double acc = 0.0;
        for (std::size_t i = half; i + half < n; ++i) {
            double local = 0.0;
            for (std::size_t k = i - half; k <= i + half; ++k) local += amps[k];
            local /= static_cast<double>(win);
            acc += std::abs(amps[i] - local);
        }
        return acc / static_cast<double>(n - win + 1) / mean_a;
    };
    s.apq3 = apq(3);
    s.apq5 = apq(5);
    s.apq11 = apq(11);
    return s;
}

GlottalCycles extract_glottal_cycles(const Signal& audio, const PitchTrack& track) {
    GlottalCycles cycles;
    // Walk voiced frames, placing one cycle per f0 period and recording the
    // waveform peak within each cycle.
    for (std::size_t f = 0; f < track.f0_hz.size(); ++f) {
        if (track.f0_hz[f] <= 0.0) continue;
        const double period = 1.0 / track.f0_hz[f];
        const double t0 = track.frame_times_s[f] - kFrameS / 2.0;
        double t = t0;
        while (t + period <= t0 + kHopS) {
            const std::size_t i0 = static_cast<std::size_t>(t * audio.rate);
            const std::size_t i1 =
                std::min(static_cast<std::size_t>((t + period) * audio.rate), audio.size());
            if (i1 > i0 + 1) {
                double peak = 0.0;
                for (std::size_t i = i0; i < i1; ++i)
                    peak = std::max(peak, std::abs(audio.samples[i]));
                if (peak > 0.0) {
                    cycles.periods_s.push_back(period);
                    cycles.peak_amplitudes.push_back(peak);
                }
            }
            t += period;
        }
    }
    return cycles;
}

double harmonicity_mean_nhr(const Signal& audio, const PitchTrack& track) {
    const int frame_len = static_cast<int>(kFrameS * audio.rate);
    const int hop = static_cast<int>(kHopS * audio.rate);
    double acc = 0.0;
    int count = 0;
    std::size_t frame_idx = 0;
    for (int start = 0; start + frame_len <= static_cast<int>(audio.size());
         start += hop, ++frame_idx) {
        if (frame_idx >= track.f0_hz.size() || track.f0_hz[frame_idx] <= 0.0) continue;
        std::vector<double> frame(audio.samples.begin() + start,
                                  audio.samples.begin() + start + frame_len);
        const double m = std::accumulate(frame.begin(), frame.end(), 0.0) / frame.size();
        for (double& v : frame) v -= m;
        const int lag = static_cast<int>(std::llround(audio.rate / track.f0_hz[frame_idx]));
        double r = norm_autocorr(frame, lag);
        r = std::clamp(r, 1e-6, 1.0 - 1e-12);
        acc += (1.0 - r) / r;
        ++count;
    }
    if (count == 0) throw DegenerateInputError("harmonicity: no voiced frames");
    return acc / count;
}

double intensity_min_db(const Signal& audio) {
    const int frame_len = std::max(1, static_cast<int>(0.032 * audio.rate));
    double min_db = std::numeric_limits<double>::infinity();
    for (int start = 0; start + frame_len <= static_cast<int>(audio.size());
         start += frame_len) {
        double energy = 0.0;
        for (int i = start; i < start + frame_len; ++i)
            energy += audio.samples[i] * audio.samples[i];
        energy /= frame_len;
        const double db = 10.0 * std::log10(energy + 1e-12);
        min_db = std::min(min_db, db);
    }
    if (!std::isfinite(min_db))
        throw std::invalid_argument("intensity_min_db: audio shorter than one frame");
    return min_db;
}

}  // namespace envtrack
