#include "envtrack/fir.hpp"

#include <cmath>
#include <numbers>

namespace envtrack {

namespace {

double window_value(FirWindow w, int n, int order) {
    const double x = 2.0 * std::numbers::pi * n / order;
    switch (w) {
        case FirWindow::Hamming: return 0.54 - 0.46 * std::cos(x);
        case FirWindow::Hann: return 0.5 - 0.5 * std::cos(x);
    }
    return 0.0;
}

// Normalized windowed sinc with unit DC gain.
std::vector<double> lowpass_taps(double cutoff_hz, int order, FirWindow window,
                                 double rate) {
    const int n_taps = order + 1;
    const double fc = cutoff_hz / rate;  // cycles per sample
    std::vector<double> h(n_taps);
    const int mid = order / 2;
    for (int n = 0; n < n_taps; ++n) {
        const int k = n - mid;
        double s;
        if (k == 0) {
            s = 2.0 * fc;
        } else {
            s = std::sin(2.0 * std::numbers::pi * fc * k) / (std::numbers::pi * k);
        }
        h[n] = s * window_value(window, n, order);
    }
    double dc = 0.0;
    for (double v : h) dc += v;
    for (double& v : h) v /= dc;
    return h;
}

}  // namespace

std::complex<double> FirFilter::response(double f_hz) const {
    const double w = 2.0 * std::numbers::pi * f_hz / rate;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < taps.size(); ++n)
        acc += taps[n] * std::exp(std::complex<double>(0.0, -w * static_cast<double>(n)));
    return acc;
}

FirFilter design_fir(FirKind kind, double cutoff_hz, int order, FirWindow window,
                     double rate) {
    if (!(cutoff_hz > 0.0) || cutoff_hz >= rate / 2.0)
        throw std::invalid_argument("design_fir: cutoff must lie in (0, rate/2)");
    if (order < 2 || order % 2 != 0)
        throw std::invalid_argument("design_fir: order must be even and >= 2");

    FirFilter f;
    f.kind = kind;
    f.cutoff_hz = cutoff_hz;
    f.order = order;
    f.window = window;
    f.rate = rate;
    f.taps = lowpass_taps(cutoff_hz, order, window, rate);
    if (kind == FirKind::Highpass) {
        // Spectral inversion: delta minus the complementary lowpass.
        for (double& v : f.taps) v = -v;
        f.taps[order / 2] += 1.0;
    }
    return f;
}

Signal apply_zero_phase(const FirFilter& f, const Signal& x) {
    const int n_taps = static_cast<int>(f.taps.size());
    const int n = static_cast<int>(x.size());
    if (n <= 3 * n_taps)
        throw std::invalid_argument("apply_zero_phase: signal too short for edge padding");

    const int pad = n_taps;
    std::vector<double> ext(static_cast<std::size_t>(n) + 2 * pad);
    for (int i = 0; i < pad; ++i) ext[i] = x.samples[pad - i];            // mirror left
    for (int i = 0; i < n; ++i) ext[pad + i] = x.samples[i];
    for (int i = 0; i < pad; ++i) ext[pad + n + i] = x.samples[n - 2 - i];  // mirror right

    const int delay = f.delay_samples();
    Signal out;
    out.rate = x.rate;
    out.samples.resize(n);
    // y[t] = sum_k h[k] * ext[t + pad + delay - k]; the +delay removes the
    // linear-phase group delay.
    for (int t = 0; t < n; ++t) {
        const int base = t + pad + delay;
        double acc = 0.0;
        for (int k = 0; k < n_taps; ++k) acc += f.taps[k] * ext[base - k];
        out.samples[t] = acc;
    }
    return out;
}

}  // namespace envtrack
