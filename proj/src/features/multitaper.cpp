#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "envtrack/features.hpp"
#include "envtrack/fft.hpp"

namespace envtrack {

namespace {

// Discrete prolate spheroidal sequences via the classic tridiagonal
// eigenproblem; returns the k_tapers most concentrated sequences,
// unit-norm, rows = tapers.
std::vector<std::vector<double>> dpss_tapers(int n, double half_bw_norm, int k_tapers) {
    std::vector<double> diag(n), off(n - 1);
    const double cos_w = std::cos(2.0 * std::numbers::pi * half_bw_norm);
    for (int i = 0; i < n; ++i) {
        const double c = (n - 1.0 - 2.0 * i) / 2.0;
        diag[i] = c * c * cos_w;
    }
    for (int i = 0; i + 1 < n; ++i) off[i] = (i + 1.0) * (n - 1.0 - i) / 2.0;

    const int il = n - k_tapers + 1, iu = n;
    lapack_int m = 0, nsplit = 0;
    std::vector<double> w(n);
    std::vector<lapack_int> iblock(n), isplit(n);
    lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, il, iu, 2.0 * LAPACKE_dlamch('S'),
                                     diag.data(), off.data(), &m, &nsplit, w.data(),
                                     iblock.data(), isplit.data());
    if (info != 0 || m != k_tapers)
        throw std::runtime_error("dpss: tridiagonal eigenvalue computation failed");

    std::vector<double> z(static_cast<std::size_t>(n) * m);
    std::vector<lapack_int> ifail(m);
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, diag.data(), off.data(), m, w.data(),
                          iblock.data(), isplit.data(), z.data(), n, ifail.data());
    if (info != 0) throw std::runtime_error("dpss: inverse iteration failed");

    // Column j of z holds the eigenvector for w[j] (ascending); reverse so
    // taper 0 is the most concentrated. Fix sign so each taper starts
    // positive (symmetric tapers) for determinism.
    std::vector<std::vector<double>> tapers(k_tapers, std::vector<double>(n));
    for (int j = 0; j < k_tapers; ++j) {
        const int src = m - 1 - j;
        double norm = 0.0, head = 0.0;
        for (int i = 0; i < n; ++i) {
            tapers[j][i] = z[static_cast<std::size_t>(src) * n + i];
            norm += tapers[j][i] * tapers[j][i];
        }
        norm = std::sqrt(norm);
        for (int i = 0; i < n / 8 + 1; ++i) head += tapers[j][i];
        const double sign = head < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) tapers[j][i] *= sign / norm;
    }
    return tapers;
}

}  // namespace

PowerSpectrum multitaper_psd(const Signal& segment, double smoothing_hz,
                             double range_lo_hz, double range_hi_hz) {
    const double t_s = segment.duration_s();
    if (t_s < 2.0 / smoothing_hz)
        throw std::invalid_argument("multitaper_psd: segment too short for smoothing bandwidth");
    const int n = static_cast<int>(segment.size());
    const int k_tapers = static_cast<int>(std::floor(2.0 * t_s * smoothing_hz)) - 1;
    if (k_tapers < 1) throw std::invalid_argument("multitaper_psd: no usable tapers");

    const auto tapers = dpss_tapers(n, smoothing_hz / segment.rate, k_tapers);

    const std::size_t n_bins = static_cast<std::size_t>(n) / 2 + 1;
    std::vector<double> psd(n_bins, 0.0);
    std::vector<double> tapered(n);
    for (const auto& taper : tapers) {
        for (int i = 0; i < n; ++i) tapered[i] = taper[i] * segment.samples[i];
        const auto spec = rfft(tapered);
        for (std::size_t k = 0; k < n_bins; ++k) {
            const double one_sided = (k == 0 || (n % 2 == 0 && k == n_bins - 1)) ? 1.0 : 2.0;
            psd[k] += one_sided * std::norm(spec[k]) / segment.rate;
        }
    }
    for (double& v : psd) v /= static_cast<double>(k_tapers);

    PowerSpectrum out;
    out.n_tapers = k_tapers;
    out.smoothing_hz = smoothing_hz;
    const double df = segment.rate / n;
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double f = k * df;
        if (f < range_lo_hz || f > range_hi_hz) continue;
        out.freqs_hz.push_back(f);
        out.power.push_back(psd[k]);
    }
    return out;
}

PowerSpectrum periodic_fraction(const PowerSpectrum& psd, FractalFit* fit_out) {
    const std::size_t n = psd.freqs_hz.size();
    if (n < 8) throw std::invalid_argument("periodic_fraction: spectrum too short");
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(psd.power[i] > 0.0))
            throw std::invalid_argument("periodic_fraction: non-positive power bin");
        lx[i] = std::log10(psd.freqs_hz[i]);
        ly[i] = std::log10(psd.power[i]);
    }

    // IRLS line fit in log-log space; positive residuals (peaks) are
    // down-weighted on each pass.
    std::vector<double> wgt(n, 1.0);
    double slope = 0.0, intercept = 0.0;
    for (int iter = 0; iter < 4; ++iter) {
        double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sw += wgt[i];
            sx += wgt[i] * lx[i];
            sy += wgt[i] * ly[i];
            sxx += wgt[i] * lx[i] * lx[i];
            sxy += wgt[i] * lx[i] * ly[i];
        }
        const double denom = sw * sxx - sx * sx;
        slope = (sw * sxy - sx * sy) / denom;
        intercept = (sy - slope * sx) / sw;
        if (iter == 3) break;

        std::vector<double> resid(n), absr(n);
        for (std::size_t i = 0; i < n; ++i) {
            resid[i] = ly[i] - (intercept + slope * lx[i]);
            absr[i] = std::abs(resid[i]);
        }
        std::vector<double> sorted = absr;
        std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
        const double scale = std::max(1.4826 * sorted[n / 2], 1e-6);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = resid[i] / scale;
            wgt[i] = r <= 0.0 ? 1.0 : 1.0 / (1.0 + r * r);
        }
    }

    if (fit_out) {
        fit_out->log_offset = intercept;
        fit_out->alpha = -slope;
    }

    PowerSpectrum out = psd;
    for (std::size_t i = 0; i < n; ++i) {
        const double fractal = std::pow(10.0, intercept + slope * lx[i]);
        out.power[i] = psd.power[i] / fractal;
    }
    return out;
}

BandPower band_periodic_power(const PowerSpectrum& ratio_psd, double duration_s) {
    BandPower bp;
    for (std::size_t i = 0; i < ratio_psd.freqs_hz.size(); ++i) {
        const double f = ratio_psd.freqs_hz[i];
        const double excess = std::max(ratio_psd.power[i] - 1.0, 0.0);
        if (f >= 0.3 && f < 30.0) bp.env += excess;
        else if (f >= 30.0 && f < 300.0) bp.low += excess;
        else if (f >= 300.0 && f < 1000.0) bp.mid += excess;
        else if (f >= 1000.0 && f <= 4500.0) bp.high += excess;
    }
    bp.env /= duration_s;
    bp.low /= duration_s;
    bp.mid /= duration_s;
    bp.high /= duration_s;
    return bp;
}

}  // namespace envtrack
