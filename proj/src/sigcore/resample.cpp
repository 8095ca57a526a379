#include "envtrack/resample.hpp"

#include <cmath>
#include <numbers>

namespace envtrack {

namespace {

double sinc(double u) {
    if (u == 0.0) return 1.0;
    const double p = std::numbers::pi * u;
    return std::sin(p) / p;
}

// Blackman window over [-1, 1].
double blackman(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    const double x = std::numbers::pi * (t + 1.0);
    return 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
}

// Mirror-extend indices outside [0, n).
double sample_reflect(const std::vector<double>& x, long i) {
    const long n = static_cast<long>(x.size());
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * (n - 1) - i;
    }
    return x[static_cast<std::size_t>(i)];
}

}  // namespace

Signal resample(const Signal& x, double target_rate) {
    if (!(target_rate > 0.0)) throw std::invalid_argument("resample: target_rate must be > 0");
    if (x.size() < 2) throw std::invalid_argument("resample: need at least 2 samples");

    const double step = x.rate / target_rate;            // input samples per output sample
    const double r = std::min(1.0, target_rate / x.rate);  // cutoff relative to input Nyquist
    constexpr int kZeroCrossings = 16;
    const double halfwidth = kZeroCrossings / r;

    const std::size_t n_out =
        static_cast<std::size_t>(std::llround(x.size() * target_rate / x.rate));
    Signal out;
    out.rate = target_rate;
    out.samples.resize(n_out);

    for (std::size_t m = 0; m < n_out; ++m) {
        const double center = m * step;
        const long k0 = static_cast<long>(std::ceil(center - halfwidth));
        const long k1 = static_cast<long>(std::floor(center + halfwidth));
        double acc = 0.0, wsum = 0.0;
        for (long k = k0; k <= k1; ++k) {
            const double t = center - static_cast<double>(k);
            const double w = r * sinc(r * t) * blackman(t / halfwidth);
            acc += w * sample_reflect(x.samples, k);
            wsum += w;
        }
        // Normalizing by the kernel sum keeps DC exact regardless of phase.
        out.samples[m] = (wsum != 0.0) ? acc / wsum : 0.0;
    }
    return out;
}

}  // namespace envtrack
