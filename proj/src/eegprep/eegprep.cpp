#include "envtrack/eegprep.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "envtrack/fir.hpp"
#include "envtrack/resample.hpp"

namespace envtrack {

void EegRecording::validate() const {
    if (data.size() < 2) throw std::invalid_argument("EegRecording: need >= 2 channels");
    for (const auto& ch : data)
        if (ch.size() != data[0].size())
            throw std::invalid_argument("EegRecording: ragged channel lengths");
    if (!channel_positions.empty()) {
        if (channel_positions.size() != data.size())
            throw std::invalid_argument("EegRecording: positions/channels mismatch");
        for (const auto& p : channel_positions) {
            const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            if (std::abs(norm - 1.0) > 1e-6)
                throw std::invalid_argument("EegRecording: positions must be unit norm");
        }
    }
}

double kurtosis(const std::vector<double>& x) {
    const double m = mean(x);
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - m;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(x.size());
    m4 /= static_cast<double>(x.size());
    if (m2 <= 0.0) return 0.0;
    return m4 / (m2 * m2);
}

std::set<std::size_t> detect_bad_channels(const EegRecording& rec) {
    if (rec.n_channels() < 3)
        throw std::invalid_argument("detect_bad_channels: need >= 3 channels");
    std::vector<double> sds(rec.n_channels());
    for (std::size_t c = 0; c < rec.n_channels(); ++c) sds[c] = sample_sd(rec.data[c]);
    const double m = mean(sds);
    const double sd_of_sds = sample_sd(sds);
    std::set<std::size_t> bad;
    if (sd_of_sds <= 0.0) return bad;  // all channels identical
    for (std::size_t c = 0; c < sds.size(); ++c)
        if (std::abs(sds[c] - m) > 2.0 * sd_of_sds) bad.insert(c);
    return bad;
}

std::vector<bool> reject_epochs(const std::vector<std::vector<std::vector<double>>>& epochs,
                                double amp_threshold_uv, double kurtosis_sd,
                                std::vector<EpochReject>* report) {
    if (epochs.empty()) throw std::invalid_argument("reject_epochs: no epochs");
    const std::size_t n_epochs = epochs.size();
    const std::size_t n_channels = epochs[0].size();
    std::vector<bool> mask(n_epochs, false);

    for (std::size_t e = 0; e < n_epochs; ++e) {
        bool over = false;
        for (const auto& ch : epochs[e])
            for (double v : ch)
                if (std::abs(v) > amp_threshold_uv) { over = true; break; }
        if (over) {
            mask[e] = true;
            if (report) report->push_back({e, "amplitude"});
        }
    }

    // Per-channel kurtosis distribution across epochs; one-sided z rule.
    for (std::size_t c = 0; c < n_channels; ++c) {
        std::vector<double> k(n_epochs);
        for (std::size_t e = 0; e < n_epochs; ++e) k[e] = kurtosis(epochs[e][c]);
        if (n_epochs < 3) continue;
        const double km = mean(k);
        const double ksd = sample_sd(k);
        if (ksd <= 0.0) continue;
        for (std::size_t e = 0; e < n_epochs; ++e) {
            if ((k[e] - km) / ksd > kurtosis_sd && !mask[e]) {
                mask[e] = true;
                if (report) report->push_back({e, "kurtosis"});
            }
        }
    }
    return mask;
}

EegRecording rereference_common_average(const EegRecording& rec) {
    EegRecording out = rec;
    const std::size_t nc = rec.n_channels();
    const std::size_t ns = rec.n_samples();
    for (std::size_t t = 0; t < ns; ++t) {
        double m = 0.0;
        for (std::size_t c = 0; c < nc; ++c) m += rec.data[c][t];
        m /= static_cast<double>(nc);
        for (std::size_t c = 0; c < nc; ++c) out.data[c][t] = rec.data[c][t] - m;
    }
    return out;
}

namespace {

// Perrin et al. spherical-spline kernel: sum over Legendre terms of
// (2n+1) / (n (n+1))^m * P_n(x), scaled by 1/(4 pi).
double spline_g(double x, int m_order, int n_terms) {
    double p_prev = 1.0;  // P_0
    double p_curr = x;    // P_1
    double acc = 0.0;
    for (int n = 1; n <= n_terms; ++n) {
        if (n > 1) {
            const double p_next =
                ((2.0 * n - 1.0) * x * p_curr - (n - 1.0) * p_prev) / n;
            p_prev = p_curr;
            p_curr = p_next;
        }
        const double denom = std::pow(static_cast<double>(n) * (n + 1.0), m_order);
        acc += (2.0 * n + 1.0) / denom * p_curr;
    }
    return acc / (4.0 * std::numbers::pi);
}

}  // namespace

EegRecording spherical_interpolate(const EegRecording& rec,
                                   const std::set<std::size_t>& bad_channels) {
    if (bad_channels.empty()) return rec;
    if (rec.channel_positions.empty())
        throw std::invalid_argument("spherical_interpolate: channel positions required");
    const std::size_t nc = rec.n_channels();
    if (bad_channels.size() + 3 >= nc)
        throw std::invalid_argument("spherical_interpolate: too many bad channels");

    constexpr int kSplineOrder = 4;
    constexpr int kLegendreTerms = 50;
    constexpr double kRidge = 1e-5;

    std::vector<std::size_t> good;
    for (std::size_t c = 0; c < nc; ++c)
        if (!bad_channels.count(c)) good.push_back(c);
    const std::size_t ng = good.size();

    auto cosangle = [&](std::size_t a, std::size_t b) {
        const auto& pa = rec.channel_positions[a];
        const auto& pb = rec.channel_positions[b];
        double d = pa[0] * pb[0] + pa[1] * pb[1] + pa[2] * pb[2];
        return std::clamp(d, -1.0, 1.0);
    };

    // Augmented spline system over the good electrodes.
    Eigen::MatrixXd A(ng + 1, ng + 1);
    for (std::size_t i = 0; i < ng; ++i) {
        for (std::size_t j = 0; j < ng; ++j)
            A(i, j) = spline_g(cosangle(good[i], good[j]), kSplineOrder, kLegendreTerms);
        A(i, i) += kRidge;
        A(i, ng) = 1.0;
        A(ng, i) = 1.0;
    }
    A(ng, ng) = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

    // One interpolation weight row per bad channel: w = [g_b 1] A^-1,
    // truncated to the coefficient block.
    EegRecording out = rec;
    const std::size_t ns = rec.n_samples();
    Eigen::MatrixXd data_good(ng, ns);
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t t = 0; t < ns; ++t) data_good(i, t) = rec.data[good[i]][t];

    for (std::size_t b : bad_channels) {
        Eigen::VectorXd gb(ng + 1);
        for (std::size_t i = 0; i < ng; ++i)
            gb(i) = spline_g(cosangle(b, good[i]), kSplineOrder, kLegendreTerms);
        gb(ng) = 1.0;
        // A is symmetric, so solving A w = gb gives the transpose weights.
        const Eigen::VectorXd w_full = lu.solve(gb);
        Eigen::RowVectorXd w = w_full.head(ng).transpose();
        Eigen::RowVectorXd est = w * data_good;
        for (std::size_t t = 0; t < ns; ++t) out.data[b][t] = est(t);
    }
    return out;
}

PreprocessResult preprocess_pipeline(const EegRecording& rec, double trial_s) {
    rec.validate();
    PreprocessResult result;
    result.bad_channels = detect_bad_channels(rec);

    // Analysis copy for artifact statistics: LP 40 -> 250 Hz -> HP 1 -> 1-s
    // epochs -> threshold/kurtosis rejection.
    const FirFilter lp40 = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, rec.rate);
    const FirFilter hp1 = design_fir(FirKind::Highpass, 1.0, 414, FirWindow::Hamming, 250.0);
    std::vector<std::vector<double>> analysis(rec.n_channels());
    for (std::size_t c = 0; c < rec.n_channels(); ++c) {
        Signal s{rec.data[c], rec.rate};
        s = apply_zero_phase(lp40, s);
        s = resample(s, 250.0);
        s = apply_zero_phase(hp1, s);
        analysis[c] = std::move(s.samples);
    }
    const std::size_t one_s = 250;
    const std::size_t n_1s = analysis[0].size() / one_s;
    std::vector<std::vector<std::vector<double>>> epochs_1s(n_1s);
    for (std::size_t e = 0; e < n_1s; ++e) {
        epochs_1s[e].resize(rec.n_channels());
        for (std::size_t c = 0; c < rec.n_channels(); ++c)
            epochs_1s[e][c].assign(analysis[c].begin() + e * one_s,
                                   analysis[c].begin() + (e + 1) * one_s);
    }
    std::vector<bool> mask_1s;
    if (!epochs_1s.empty())
        mask_1s = reject_epochs(epochs_1s, 80.0, 3.0, &result.rejections_1s);

    // Final filtering on the full-rate data.
    const FirFilter lp30 = design_fir(FirKind::Lowpass, 30.0, 220, FirWindow::Hann, rec.rate);
    const FirFilter hp03 = design_fir(FirKind::Highpass, 0.3, 500, FirWindow::Hann, rec.rate);
    EegRecording filtered = rec;
    for (std::size_t c = 0; c < rec.n_channels(); ++c) {
        Signal s{rec.data[c], rec.rate};
        s = apply_zero_phase(lp30, s);
        s = apply_zero_phase(hp03, s);
        filtered.data[c] = std::move(s.samples);
    }

    filtered = rereference_common_average(filtered);
    filtered = spherical_interpolate(filtered, result.bad_channels);

    EegRecording down = filtered;
    for (std::size_t c = 0; c < filtered.n_channels(); ++c) {
        Signal s{filtered.data[c], filtered.rate};
        s = resample(s, 64.0);
        down.data[c] = std::move(s.samples);
    }
    down.rate = 64.0;

    // 30-s condition epochs with the 1-s rejection mask mapped onto them.
    const std::size_t epoch_len = static_cast<std::size_t>(std::llround(trial_s * 64.0));
    const std::size_t n_trials = down.n_samples() / epoch_len;
    result.epochs.rate = 64.0;
    result.epochs.epoch_s = trial_s;
    for (std::size_t e = 0; e < n_trials; ++e) {
        std::vector<std::vector<double>> ep(down.n_channels());
        for (std::size_t c = 0; c < down.n_channels(); ++c)
            ep[c].assign(down.data[c].begin() + e * epoch_len,
                         down.data[c].begin() + (e + 1) * epoch_len);
        result.epochs.epochs.push_back(std::move(ep));
        bool rejected = false;
        const std::size_t sec0 = static_cast<std::size_t>(e * trial_s);
        const std::size_t sec1 = static_cast<std::size_t>((e + 1) * trial_s);
        for (std::size_t s = sec0; s < sec1 && s < mask_1s.size(); ++s)
            if (mask_1s[s]) rejected = true;
        result.epochs.rejection_mask.push_back(rejected);
    }
    return result;
}

}  // namespace envtrack
