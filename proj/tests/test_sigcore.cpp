#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "envtrack/fir.hpp"
#include "envtrack/gammatone.hpp"
#include "envtrack/hilbert.hpp"
#include "envtrack/iir.hpp"
#include "envtrack/resample.hpp"
#include "envtrack/signal.hpp"
#include "test_util.hpp"

using namespace envtrack;
using testutil::fit_tone;
using testutil::make_tone;

TEST_CASE("fir design: lowpass half-gain at cutoff") {
    const auto f = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, 500.0);
    CHECK(f.taps.size() == 167);
    const double mag40 = std::abs(f.response(40.0));
    CHECK(mag40 > 0.45);
    CHECK(mag40 < 0.55);
    CHECK(std::abs(f.response(0.0)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fir design: highpass blocks DC") {
    const auto f = design_fir(FirKind::Highpass, 1.0, 414, FirWindow::Hamming, 500.0);
    CHECK(std::abs(f.response(0.0)) < 1e-3);
    // Nyquist gain close to one.
    CHECK(std::abs(f.response(250.0)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("fir design: linear phase (symmetric taps)") {
    for (const auto& f : {design_fir(FirKind::Lowpass, 30.0, 220, FirWindow::Hann, 500.0),
                          design_fir(FirKind::Highpass, 0.3, 500, FirWindow::Hann, 500.0)}) {
        const auto& t = f.taps;
        for (std::size_t i = 0; i < t.size() / 2; ++i)
            CHECK(t[i] == doctest::Approx(t[t.size() - 1 - i]).epsilon(1e-12));
    }
}

TEST_CASE("fir design: invalid arguments rejected") {
    CHECK_THROWS(design_fir(FirKind::Lowpass, 40.0, 167, FirWindow::Hamming, 500.0));
    CHECK_THROWS(design_fir(FirKind::Lowpass, 250.0, 166, FirWindow::Hamming, 500.0));
    CHECK_THROWS(design_fir(FirKind::Lowpass, 300.0, 166, FirWindow::Hamming, 500.0));
    CHECK_THROWS(design_fir(FirKind::Lowpass, -1.0, 166, FirWindow::Hamming, 500.0));
}

TEST_CASE("apply_zero_phase: zero in, zero out") {
    const auto f = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, 500.0);
    Signal z{std::vector<double>(3000, 0.0), 500.0};
    const auto y = apply_zero_phase(f, z);
    REQUIRE(y.size() == z.size());
    for (double v : y.samples) CHECK(v == 0.0);
}

TEST_CASE("apply_zero_phase: passband tone keeps amplitude and phase") {
    const auto f = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, 500.0);
    const auto x = make_tone(5.0, 500.0, 10.0);
    const auto y = apply_zero_phase(f, x);
    REQUIRE(y.size() == x.size());
    const auto fit = fit_tone(y, 5.0, 1000, 4000);
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(fit.phase) < 1.0 * M_PI / 180.0);
}

TEST_CASE("apply_zero_phase: stopband tone attenuated") {
    const auto f = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, 500.0);
    const auto x = make_tone(100.0, 500.0, 10.0);
    const auto y = apply_zero_phase(f, x);
    const auto fit = fit_tone(y, 100.0, 1000, 4000);
    CHECK(fit.amplitude < 1e-3);
}

TEST_CASE("apply_zero_phase: lowpass preserves DC") {
    const auto f = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, 500.0);
    const Signal x{std::vector<double>(5000, 2.5), 500.0};
    const auto y = apply_zero_phase(f, x);
    CHECK(mean(y.samples) == doctest::Approx(mean(x.samples)).epsilon(1e-6));
    for (double v : y.samples) CHECK(v == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("apply_zero_phase: too-short signal rejected") {
    const auto f = design_fir(FirKind::Lowpass, 40.0, 166, FirWindow::Hamming, 500.0);
    Signal x{std::vector<double>(100, 1.0), 500.0};
    CHECK_THROWS(apply_zero_phase(f, x));
}

TEST_CASE("hilbert_envelope: zero signal") {
    Signal z{std::vector<double>(256, 0.0), 100.0};
    const auto e = hilbert_envelope(z);
    for (double v : e.samples) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hilbert_envelope: unit tone has unit envelope") {
    const auto x = make_tone(1000.0, 48000.0, 1.0);
    const auto e = hilbert_envelope(x);
    const std::size_t edge = e.size() / 20;
    for (std::size_t i = edge; i < e.size() - edge; ++i)
        CHECK(e.samples[i] == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("hilbert_envelope: recovers AM modulator") {
    const double fs = 48000.0;
    const std::size_t n = 48000;
    std::vector<double> x(n), m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = 1.0 + 0.5 * std::cos(2.0 * M_PI * 4.0 * i / fs);
        x[i] = m[i] * std::cos(2.0 * M_PI * 1000.0 * i / fs);
    }
    const auto e = hilbert_envelope({x, fs});
    const std::size_t lo = n / 10, hi = n - n / 10;
    std::vector<double> ev(e.samples.begin() + lo, e.samples.begin() + hi);
    std::vector<double> mv(m.begin() + lo, m.begin() + hi);
    CHECK(testutil::corr(ev, mv) > 0.99);
}

TEST_CASE("hilbert_envelope: sign invariance") {
    auto x = testutil::gaussian_noise(1024, 7);
    const auto e1 = hilbert_envelope({x, 100.0});
    for (auto& v : x) v = -v;
    const auto e2 = hilbert_envelope({x, 100.0});
    for (std::size_t i = 0; i < e1.size(); ++i)
        CHECK(e1.samples[i] == doctest::Approx(e2.samples[i]).epsilon(1e-12));
}

TEST_CASE("hilbert_envelope: minimum length enforced") {
    Signal x{std::vector<double>(4, 1.0), 10.0};
    CHECK_THROWS(hilbert_envelope(x));
}

TEST_CASE("gammatone bank: log-spaced center frequencies") {
    const auto bank = make_gammatone_bank(100.0, 6500.0, 128);
    REQUIRE(bank.center_frequencies_hz.size() == 128);
    CHECK(bank.center_frequencies_hz.front() == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(bank.center_frequencies_hz.back() == doctest::Approx(6500.0).epsilon(1e-12));
    CHECK(bank.center_frequencies_hz[64] ==
          doctest::Approx(100.0 * std::pow(65.0, 64.0 / 127.0)).epsilon(1e-12));
    CHECK(bank.center_frequencies_hz[64] == doctest::Approx(818.8).epsilon(1e-3));
    for (int k = 0; k < 128; ++k) {
        const double expect = 100.0 * std::pow(65.0, k / 127.0);
        CHECK(bank.center_frequencies_hz[k] == doctest::Approx(expect).epsilon(1e-12));
        if (k > 0)
            CHECK(bank.center_frequencies_hz[k] > bank.center_frequencies_hz[k - 1]);
    }
}

TEST_CASE("gammatone analyze: tone lands in nearest band") {
    const auto bank = make_gammatone_bank(100.0, 6500.0, 128);
    const auto x = make_tone(1000.0, 16000.0, 2.0);
    const auto bands = gammatone_analyze(bank, x);
    REQUIRE(bands.size() == 128);
    for (const auto& b : bands) CHECK(b.size() == x.size());

    std::size_t best = 0;
    double best_rms = -1.0;
    for (std::size_t k = 0; k < bands.size(); ++k) {
        const double r = testutil::rms(bands[k].samples);
        if (r > best_rms) {
            best_rms = r;
            best = k;
        }
    }
    std::size_t nearest = 0;
    double dist = 1e18;
    for (std::size_t k = 0; k < 128; ++k) {
        const double d = std::abs(bank.center_frequencies_hz[k] - 1000.0);
        if (d < dist) {
            dist = d;
            nearest = k;
        }
    }
    CHECK(best == nearest);
}

TEST_CASE("gammatone analyze: rate precondition") {
    const auto bank = make_gammatone_bank(100.0, 6500.0, 128);
    const auto x = make_tone(100.0, 8000.0, 1.0);
    CHECK_THROWS(gammatone_analyze(bank, x));
}

TEST_CASE("resample: constant stays constant") {
    Signal x{std::vector<double>(1500, 3.25), 500.0};
    const auto y = resample(x, 64.0);
    for (double v : y.samples) CHECK(v == doctest::Approx(3.25).epsilon(1e-9));
}

TEST_CASE("resample: tone survives 500 -> 64 Hz") {
    const auto x = make_tone(10.0, 500.0, 10.0);
    const auto y = resample(x, 64.0);
    const auto fit = fit_tone(y, 10.0, y.size() / 10, y.size() - y.size() / 10);
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(0.01));

    // Frequency check by zero-crossing count over the middle 8 s: a 10 Hz
    // tone crosses zero 20 times per second.
    int crossings = 0;
    const std::size_t lo = 64, hi = y.size() - 64;
    for (std::size_t i = lo + 1; i < hi; ++i)
        if ((y.samples[i - 1] < 0.0) != (y.samples[i] < 0.0)) ++crossings;
    const double seconds = (hi - lo) / 64.0;
    CHECK(crossings / seconds / 2.0 == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("resample: output length") {
    Signal x{std::vector<double>(15000, 0.0), 500.0};  // 30 s
    CHECK(resample(x, 64.0).size() == 1920);
}

TEST_CASE("resample: up-down round trip") {
    const double fs = 500.0;
    const std::size_t n = 5000;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = std::sin(2.0 * M_PI * 7.0 * i / fs) + 0.5 * std::sin(2.0 * M_PI * 23.0 * i / fs);
    const Signal x{s, fs};
    const auto y = resample(resample(x, 2.0 * fs), fs);
    REQUIRE(y.size() == x.size());
    std::vector<double> diff(n);
    // Skip kernel-length edges; the property targets interior fidelity.
    const std::size_t edge = 100;
    double err = 0.0, ref = 0.0;
    for (std::size_t i = edge; i < n - edge; ++i) {
        err += (y.samples[i] - x.samples[i]) * (y.samples[i] - x.samples[i]);
        ref += x.samples[i] * x.samples[i];
    }
    CHECK(std::sqrt(err / ref) < 0.01);
}

TEST_CASE("resample: bad target rejected") {
    Signal x{std::vector<double>(100, 0.0), 500.0};
    CHECK_THROWS(resample(x, 0.0));
    CHECK_THROWS(resample(x, -10.0));
}

TEST_CASE("zscore: basic normalization") {
    const auto z = zscore({{1.0, 2.0, 3.0}, 1.0});
    CHECK(mean(z.samples) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sample_sd(z.samples) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zscore: constant input rejected") {
    CHECK_THROWS_AS(zscore({std::vector<double>(10, 5.0), 1.0}), DegenerateInputError);
}

TEST_CASE("zscore: affine invariance") {
    const auto base = testutil::gaussian_noise(500, 3);
    const auto z1 = zscore({base, 1.0});
    auto scaled = base;
    for (auto& v : scaled) v = 2.5 * v + 17.0;
    const auto z2 = zscore({scaled, 1.0});
    for (std::size_t i = 0; i < z1.size(); ++i)
        CHECK(z1.samples[i] == doctest::Approx(z2.samples[i]).epsilon(1e-9));
}

TEST_CASE("zscore_quantized: bitwise gain invariance") {
    const auto base = testutil::gaussian_noise(2048, 21);
    const auto z1 = zscore_quantized({base, 1.0});
    for (double a : {0.5, 2.0, 10.0}) {
        auto scaled = base;
        for (auto& v : scaled) v *= a;
        const auto z2 = zscore_quantized({scaled, 1.0});
        for (std::size_t i = 0; i < z1.size(); ++i) CHECK(z1.samples[i] == z2.samples[i]);
    }
}

TEST_CASE("butterworth lowpass: stability and -3 dB point") {
    for (int order : {1, 2, 3, 4, 5}) {
        const auto c = design_butterworth_lowpass(order, 30.0, 48000.0);
        CHECK(c.stable());
        CHECK(c.magnitude(30.0) == doctest::Approx(std::sqrt(0.5)).epsilon(0.02));
        CHECK(c.magnitude(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("butterworth order 3: rolloff approx 18 dB per octave") {
    const auto c = design_butterworth_lowpass(3, 30.0, 48000.0);
    const double db60 = 20.0 * std::log10(c.magnitude(60.0));
    const double db120 = 20.0 * std::log10(c.magnitude(120.0));
    CHECK(db60 - db120 == doctest::Approx(18.0).epsilon(0.05));
}

TEST_CASE("iir zero phase: passband tone keeps phase") {
    const auto c = design_butterworth_lowpass(3, 30.0, 500.0);
    const auto x = make_tone(5.0, 500.0, 10.0);
    const auto y = apply_iir_zero_phase(c, x);
    REQUIRE(y.size() == x.size());
    const auto fit = fit_tone(y, 5.0, 1000, 4000);
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(fit.phase) < 1.0 * M_PI / 180.0);
}
