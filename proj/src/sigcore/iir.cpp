#include "envtrack/iir.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace envtrack {

namespace {

std::complex<double> section_response(const Biquad& s, std::complex<double> z1) {
    const std::complex<double> z2 = z1 * z1;
    return (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
}

void section_forward(const Biquad& s, std::vector<double>& x) {
    double w1 = 0.0, w2 = 0.0;  // direct form II transposed state
    for (double& v : x) {
        const double in = v;
        const double out = s.b0 * in + w1;
        w1 = s.b1 * in - s.a1 * out + w2;
        w2 = s.b2 * in - s.a2 * out;
        v = out;
    }
}

}  // namespace

bool IirBiquadChain::stable() const {
    for (const Biquad& s : sections) {
        // |poles| < 1 iff |a2| < 1 and |a1| < 1 + a2 (triangle criterion).
        if (!(std::abs(s.a2) < 1.0 && std::abs(s.a1) < 1.0 + s.a2)) return false;
    }
    return true;
}

double IirBiquadChain::magnitude(double f_hz) const {
    const double w = 2.0 * std::numbers::pi * f_hz / rate;
    const std::complex<double> z1 = std::exp(std::complex<double>(0.0, -w));
    std::complex<double> h{1.0, 0.0};
    for (const Biquad& s : sections) h *= section_response(s, z1);
    return std::abs(h);
}

IirBiquadChain design_butterworth_lowpass(int order, double cutoff_hz, double rate) {
    if (order < 1) throw std::invalid_argument("butterworth: order must be >= 1");
    if (!(cutoff_hz > 0.0) || cutoff_hz >= rate / 2.0)
        throw std::invalid_argument("butterworth: cutoff must lie in (0, rate/2)");

    IirBiquadChain chain;
    chain.order = order;
    chain.cutoff_hz = cutoff_hz;
    chain.rate = rate;

    const double fs2 = 2.0 * rate;
    const double warped = fs2 * std::tan(std::numbers::pi * cutoff_hz / rate);

    // Conjugate pole pairs of the analog Butterworth prototype, mapped by
    // the bilinear transform; each pair forms one section with both zeros
    // at Nyquist and unit DC gain.
    const int n_pairs = order / 2;
    for (int k = 0; k < n_pairs; ++k) {
        const double theta =
            std::numbers::pi * (2.0 * k + 1.0) / (2.0 * order) + std::numbers::pi / 2.0;
        const std::complex<double> s_pole =
            warped * std::exp(std::complex<double>(0.0, theta));
        const std::complex<double> z_pole = (fs2 + s_pole) / (fs2 - s_pole);
        Biquad s{};
        s.a1 = -2.0 * z_pole.real();
        s.a2 = std::norm(z_pole);
        const double k_dc = (1.0 + s.a1 + s.a2) / 4.0;
        s.b0 = k_dc;
        s.b1 = 2.0 * k_dc;
        s.b2 = k_dc;
        chain.sections.push_back(s);
    }
    if (order % 2 == 1) {
        const double s_pole = -warped;
        const double z_pole = (fs2 + s_pole) / (fs2 - s_pole);
        Biquad s{};
        s.a1 = -z_pole;
        s.a2 = 0.0;
        const double k_dc = (1.0 + s.a1) / 2.0;
        s.b0 = k_dc;
        s.b1 = k_dc;
        s.b2 = 0.0;
        chain.sections.push_back(s);
    }
    return chain;
}

Signal apply_iir(const IirBiquadChain& chain, const Signal& x) {
    Signal out = x;
    for (const Biquad& s : chain.sections) section_forward(s, out.samples);
    return out;
}

Signal apply_iir_zero_phase(const IirBiquadChain& chain, const Signal& x) {
    const int n = static_cast<int>(x.size());
    // Pad long enough for the impulse response to decay.
    const int pad = std::min(n - 1, std::max(3 * 8 * chain.order,
                                             static_cast<int>(chain.rate / chain.cutoff_hz) * 4));
    if (n < 4) throw std::invalid_argument("apply_iir_zero_phase: signal too short");

    std::vector<double> ext(static_cast<std::size_t>(n) + 2 * pad);
    for (int i = 0; i < pad; ++i) ext[i] = x.samples[pad - i];
    for (int i = 0; i < n; ++i) ext[pad + i] = x.samples[i];
    for (int i = 0; i < pad; ++i) ext[pad + n + i] = x.samples[n - 2 - i];

    for (const Biquad& s : chain.sections) section_forward(s, ext);
    std::reverse(ext.begin(), ext.end());
    for (const Biquad& s : chain.sections) section_forward(s, ext);
    std::reverse(ext.begin(), ext.end());

    Signal out;
    out.rate = x.rate;
    out.samples.assign(ext.begin() + pad, ext.begin() + pad + n);
    return out;
}

}  // namespace envtrack
