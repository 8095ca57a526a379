#include "envtrack/gammatone.hpp"

#include <cmath>
#include <numbers>

namespace envtrack {

double erb_hz(double f_hz) { return 24.7 * (4.37 * f_hz / 1000.0 + 1.0); }

GammatoneBank make_gammatone_bank(double fmin_hz, double fmax_hz, int n_bands) {
    if (n_bands < 2 || !(fmin_hz > 0.0) || !(fmax_hz > fmin_hz))
        throw std::invalid_argument("gammatone bank: need n_bands >= 2 and 0 < fmin < fmax");
    GammatoneBank bank;
    bank.n_bands = n_bands;
    bank.fmin_hz = fmin_hz;
    bank.fmax_hz = fmax_hz;
    bank.center_frequencies_hz.resize(n_bands);
    const double ratio = fmax_hz / fmin_hz;
    for (int k = 0; k < n_bands; ++k) {
        bank.center_frequencies_hz[k] =
            fmin_hz * std::pow(ratio, static_cast<double>(k) / (n_bands - 1));
    }
    return bank;
}

std::vector<std::vector<std::complex<double>>> gammatone_analyze_complex(
    const GammatoneBank& bank, const Signal& x) {
    if (!(x.rate > 2.0 * bank.fmax_hz))
        throw std::invalid_argument("gammatone_analyze: sample rate too low for fmax");

    // Bandwidth factor mapping the 4th-order gammatone ERB onto the cascade
    // decay constant (Patterson/Holdsworth convention).
    constexpr double kBwFactor = 1.01893;
    constexpr int kOrder = 4;

    const std::size_t n = x.size();
    std::vector<std::vector<std::complex<double>>> bands(bank.n_bands);
    for (int b = 0; b < bank.n_bands; ++b) {
        const double cf = bank.center_frequencies_hz[b];
        const double lambda =
            std::exp(-2.0 * std::numbers::pi * kBwFactor * erb_hz(cf) / x.rate);
        const double beta = 2.0 * std::numbers::pi * cf / x.rate;
        const std::complex<double> a = lambda * std::exp(std::complex<double>(0.0, beta));
        // Unit gain at cf for real input (the analytic branch carries half
        // the tone amplitude, hence the factor 2).
        const double gain = 2.0 * std::pow(1.0 - lambda, kOrder);

        std::vector<std::complex<double>> y(x.samples.begin(), x.samples.end());
        for (int stage = 0; stage < kOrder; ++stage) {
            std::complex<double> state{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                state = y[i] + a * state;
                y[i] = state;
            }
        }
        for (auto& v : y) v *= gain;
        bands[b] = std::move(y);
    }
    return bands;
}

std::vector<Signal> gammatone_analyze(const GammatoneBank& bank, const Signal& x) {
    auto complex_bands = gammatone_analyze_complex(bank, x);
    std::vector<Signal> out(complex_bands.size());
    for (std::size_t b = 0; b < complex_bands.size(); ++b) {
        out[b].rate = x.rate;
        out[b].samples.resize(complex_bands[b].size());
        for (std::size_t i = 0; i < complex_bands[b].size(); ++i)
            out[b].samples[i] = complex_bands[b][i].real();
    }
    return out;
}

}  // namespace envtrack
