#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "envtrack/signal.hpp"

namespace testutil {

inline envtrack::Signal make_tone(double freq_hz, double rate, double duration_s,
                                  double amplitude = 1.0, double phase = 0.0) {
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * rate));
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = amplitude * std::cos(2.0 * M_PI * freq_hz * i / rate + phase);
    return {std::move(s), rate};
}

inline std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed,
                                          double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, sd);
    std::vector<double> s(n);
    for (auto& v : s) v = dist(rng);
    return s;
}

// Amplitude and phase (radians) of the component at freq_hz, estimated by
// quadrature projection over [lo, hi).
struct ToneFit {
    double amplitude;
    double phase;
};

inline ToneFit fit_tone(const envtrack::Signal& x, double freq_hz, std::size_t lo,
                        std::size_t hi) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double ph = 2.0 * M_PI * freq_hz * i / x.rate;
        c += x.samples[i] * std::cos(ph);
        s += x.samples[i] * std::sin(ph);
    }
    const double n = static_cast<double>(hi - lo);
    const double re = 2.0 * c / n;
    const double im = -2.0 * s / n;
    return {std::hypot(re, im), std::atan2(im, re)};
}

inline double rms(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

inline double corr(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace testutil
