#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "envtrack/envelope.hpp"
#include "envtrack/fft.hpp"
#include "envtrack/signal.hpp"
#include "test_util.hpp"

using namespace envtrack;

namespace {

Signal am_tone(double carrier_hz, double mod_hz, double depth, double rate,
               double duration_s) {
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * rate));
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = (1.0 + depth * std::cos(2.0 * M_PI * mod_hz * i / rate)) *
               std::cos(2.0 * M_PI * carrier_hz * i / rate);
    return {std::move(s), rate};
}

// Frequency of the largest non-DC bin of a 64 Hz series.
double spectral_peak_hz(const std::vector<double>& x, double rate) {
    auto spec = rfft(x);
    double best = -1.0;
    std::size_t best_k = 1;
    for (std::size_t k = 1; k < spec.size(); ++k) {
        const double p = std::norm(spec[k]);
        if (p > best) {
            best = p;
            best_k = k;
        }
    }
    return static_cast<double>(best_k) * rate / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("envelope: gain invariance is bitwise") {
    const auto x = am_tone(1000.0, 4.0, 0.5, 16000.0, 4.0);
    const auto e1 = extract_broadband_envelope(x);
    for (double a : {0.5, 2.0, 10.0}) {
        auto scaled = x;
        for (auto& v : scaled.samples) v *= a;
        const auto e2 = extract_broadband_envelope(scaled);
        REQUIRE(e2.size() == e1.size());
        for (std::size_t i = 0; i < e1.size(); ++i)
            CHECK(e1.samples[i] == e2.samples[i]);
    }
}

TEST_CASE("envelope: AM modulator dominates the output spectrum") {
    const auto x = am_tone(1000.0, 4.0, 0.5, 16000.0, 30.0);
    const auto env = extract_broadband_envelope(x);
    REQUIRE(env.rate == 64.0);
    const double peak = spectral_peak_hz(env.samples, env.rate);
    CHECK(peak == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("envelope: output length is duration times 64") {
    const auto x = am_tone(1000.0, 4.0, 0.5, 48000.0, 30.0);
    const auto env = extract_broadband_envelope(x);
    CHECK(env.size() == 1920);
}

TEST_CASE("envelope: silent audio rejected") {
    Signal silent{std::vector<double>(16000 * 2, 0.0), 16000.0};
    CHECK_THROWS_AS(extract_broadband_envelope(silent), DegenerateInputError);
}

TEST_CASE("envelope: low sample rate rejected") {
    const auto x = am_tone(1000.0, 4.0, 0.5, 8000.0, 2.0);
    CHECK_THROWS(extract_broadband_envelope(x));
}

TEST_CASE("envelope: determinism") {
    const auto x = am_tone(800.0, 3.0, 0.4, 16000.0, 5.0);
    const auto e1 = extract_broadband_envelope(x);
    const auto e2 = extract_broadband_envelope(x);
    REQUIRE(e1.size() == e2.size());
    for (std::size_t i = 0; i < e1.size(); ++i) CHECK(e1.samples[i] == e2.samples[i]);
}

TEST_CASE("envelope: deeper modulation raises envelope SD") {
    const auto shallow = extract_broadband_envelope(am_tone(1000.0, 4.0, 0.2, 16000.0, 10.0));
    const auto deep = extract_broadband_envelope(am_tone(1000.0, 4.0, 0.8, 16000.0, 10.0));
    CHECK(sample_sd(deep.samples) > sample_sd(shallow.samples));
}

TEST_CASE("envelope: bounded undershoot after lowpass") {
    const auto x = am_tone(1000.0, 4.0, 0.9, 16000.0, 10.0);
    const auto env = extract_broadband_envelope(x);
    double lo = env.samples[0], hi = env.samples[0];
    for (double v : env.samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= -0.05 * hi);
}

TEST_CASE("segment_envelope: full epochs only") {
    EnvelopeSeries env;
    env.rate = 64.0;
    env.samples.assign(static_cast<std::size_t>(95 * 64), 1.0);
    const auto segs = segment_envelope(env, 30.0);
    REQUIRE(segs.size() == 3);
    for (const auto& s : segs) CHECK(s.size() == 1920);
}

TEST_CASE("segment_envelope: exact fit and short input") {
    EnvelopeSeries env;
    env.rate = 64.0;
    env.samples.assign(1920, 0.5);
    CHECK(segment_envelope(env, 30.0).size() == 1);
    env.samples.assign(static_cast<std::size_t>(29 * 64), 0.5);
    CHECK(segment_envelope(env, 30.0).empty());
}
