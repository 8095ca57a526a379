#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>

#include "envtrack/features.hpp"
#include "envtrack/io.hpp"

using namespace envtrack;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("envtrack_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void push_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(x & 0xff);
    v.push_back((x >> 8) & 0xff);
    v.push_back((x >> 16) & 0xff);
    v.push_back((x >> 24) & 0xff);
}

void push_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(x & 0xff);
    v.push_back((x >> 8) & 0xff);
}

}  // namespace

TEST_CASE("binary signal: 24x1920 round trip is bitwise") {
    TempDir tmp;
    BinarySignal sig;
    sig.rate_hz = 64.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<float> u(-100.0f, 100.0f);
    for (int c = 0; c < 24; ++c) {
        sig.labels.push_back("ch" + std::to_string(c));
        std::vector<float> row(1920);
        for (auto& v : row) v = u(rng);
        sig.data.push_back(std::move(row));
    }
    const auto p = tmp.path / "sig.bin";
    write_binary_signal(p, sig);
    const auto back = read_binary_signal(p);
    CHECK(back.rate_hz == 64.0);
    REQUIRE(back.data.size() == 24);
    REQUIRE(back.labels == sig.labels);
    for (int c = 0; c < 24; ++c)
        for (int t = 0; t < 1920; ++t) CHECK(back.data[c][t] == sig.data[c][t]);
}

TEST_CASE("binary signal: truncated payload reports byte counts") {
    TempDir tmp;
    BinarySignal sig;
    sig.rate_hz = 10.0;
    sig.labels = {"a"};
    sig.data = {{1.0f, 2.0f, 3.0f}};
    const auto p = tmp.path / "sig.bin";
    write_binary_signal(p, sig);

    // Drop the final byte.
    std::ifstream in(p, std::ios::binary);
    std::vector<char> all((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
    in.close();
    all.pop_back();
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(all.data(), static_cast<std::streamsize>(all.size()));
    out.close();

    try {
        read_binary_signal(p);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("12") != std::string::npos);  // expected bytes
        CHECK(msg.find("11") != std::string::npos);  // actual bytes
    }
}

TEST_CASE("binary signal: trailing garbage rejected") {
    TempDir tmp;
    BinarySignal sig;
    sig.rate_hz = 10.0;
    sig.labels = {"a"};
    sig.data = {{1.0f, 2.0f}};
    const auto p = tmp.path / "sig.bin";
    write_binary_signal(p, sig);
    std::ofstream app(p, std::ios::binary | std::ios::app);
    app.put('\0');
    app.close();
    CHECK_THROWS_AS(read_binary_signal(p), IoError);
}

TEST_CASE("wav: 16-bit ramp scaled by 1/32768") {
    TempDir tmp;
    // Hand-built RIFF/WAVE, PCM16 mono 8 kHz, samples -32768, -16384, 0, 16384, 32767.
    const std::int16_t samples[] = {-32768, -16384, 0, 16384, 32767};
    std::vector<std::uint8_t> b;
    b.insert(b.end(), {'R', 'I', 'F', 'F'});
    push_u32(b, 36 + 10);
    b.insert(b.end(), {'W', 'A', 'V', 'E'});
    b.insert(b.end(), {'f', 'm', 't', ' '});
    push_u32(b, 16);
    push_u16(b, 1);      // PCM
    push_u16(b, 1);      // mono
    push_u32(b, 8000);   // rate
    push_u32(b, 16000);  // byte rate
    push_u16(b, 2);      // block align
    push_u16(b, 16);     // bits
    b.insert(b.end(), {'d', 'a', 't', 'a'});
    push_u32(b, 10);
    for (std::int16_t s : samples) push_u16(b, static_cast<std::uint16_t>(s));

    const auto p = tmp.path / "ramp.wav";
    write_bytes(p, b);
    const auto sig = read_wav(p);
    CHECK(sig.rate == 8000.0);
    REQUIRE(sig.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(sig.samples[i] == doctest::Approx(samples[i] / 32768.0).epsilon(1e-12));
}

TEST_CASE("wav: unsupported encoding rejected") {
    TempDir tmp;
    std::vector<std::uint8_t> b;
    b.insert(b.end(), {'R', 'I', 'F', 'F'});
    push_u32(b, 36);
    b.insert(b.end(), {'W', 'A', 'V', 'E'});
    b.insert(b.end(), {'f', 'm', 't', ' '});
    push_u32(b, 16);
    push_u16(b, 7);  // mu-law
    push_u16(b, 1);
    push_u32(b, 8000);
    push_u32(b, 8000);
    push_u16(b, 1);
    push_u16(b, 8);
    b.insert(b.end(), {'d', 'a', 't', 'a'});
    push_u32(b, 0);
    const auto p = tmp.path / "bad.wav";
    write_bytes(p, b);
    CHECK_THROWS_AS(read_wav(p), IoError);
}

TEST_CASE("pgm: parse with comments, reject truncation") {
    TempDir tmp;
    const auto p = tmp.path / "img.pgm";
    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n# a comment\n4 2\n255\n";
        const std::uint8_t px[8] = {0, 64, 128, 255, 10, 20, 30, 40};
        out.write(reinterpret_cast<const char*>(px), 8);
    }
    int w = 0, h = 0;
    std::vector<std::uint8_t> pixels;
    read_pgm_into(p, w, h, pixels);
    CHECK(w == 4);
    CHECK(h == 2);
    REQUIRE(pixels.size() == 8);
    CHECK(pixels[3] == 255);

    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n4 2\n255\n";
        out.put('\0');  // payload far too short
    }
    CHECK_THROWS_AS(read_pgm_into(p, w, h, pixels), IoError);
}

TEST_CASE("manifest: round trip and validation") {
    TempDir tmp;
    TrialManifest m;
    m.subject_id = "s01";
    m.likeability_json = R"({"sp1": 4})";
    ManifestTrial t;
    t.trial_id = "AV_noise_000";
    t.speaker_id = "sp1";
    t.condition = "AV";
    t.noise = "noise";
    t.duration_s = 30.0;
    m.trials.push_back(t);
    t.trial_id = "A_quiet_000";
    t.condition = "A";
    t.noise = "quiet";
    m.trials.push_back(t);

    const auto p = tmp.path / "manifest.json";
    write_manifest(p, m);
    const auto back = read_manifest(p);
    CHECK(back.subject_id == "s01");
    REQUIRE(back.trials.size() == 2);
    CHECK(back.trials[0].trial_id == "AV_noise_000");
    CHECK(back.trials[1].condition == "A");
    CHECK_FALSE(back.likeability_json.empty());
    back.validate(tmp.path);

    auto dup = back;
    dup.trials.push_back(back.trials[0]);
    CHECK_THROWS_AS(dup.validate(tmp.path), IoError);

    auto badcond = back;
    badcond.trials[0].condition = "XX";
    CHECK_THROWS(badcond.validate(tmp.path));

    auto missing = back;
    missing.trials[0].eeg_path = "nope.bin";
    CHECK_THROWS_AS(missing.validate(tmp.path), IoError);
}

TEST_CASE("scores csv: round trip and version gate") {
    TempDir tmp;
    std::vector<TrackingScore> scores;
    TrackingScore s;
    s.trial_id = "AV_noise_000";
    s.r = 0.25;
    s.r_z = 0.2554128118829953;
    s.condition = Condition::AV;
    s.noise = NoiseLevel::Noise;
    scores.push_back(s);
    s.trial_id = "A_quiet_001";
    s.r = -0.03;
    s.r_z = -0.030009003241187824;
    s.condition = Condition::A;
    s.noise = NoiseLevel::Quiet;
    scores.push_back(s);

    const auto p = tmp.path / "scores.csv";
    write_scores_csv(p, scores, "200:325");
    const auto rows = read_scores_csv(p);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].trial_id == "AV_noise_000");
    CHECK(rows[0].condition == "AV");
    CHECK(rows[0].noise == "noise");
    CHECK(rows[0].lag_or_window == "200:325");
    CHECK(rows[0].r == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(rows[1].r_z == doctest::Approx(-0.030009003241187824).epsilon(1e-10));

    // Unknown version line is refused.
    std::ofstream out(p, std::ios::trunc);
    out << "# envtrack-csv v9 scores\ntrial_id,condition,noise,lag_or_window,r,r_z\n";
    out.close();
    CHECK_THROWS_AS(read_scores_csv(p), IoError);
}

TEST_CASE("svg: embedded data table present") {
    TempDir tmp;
    const auto p = tmp.path / "plot.svg";
    PlotSeries series;
    series.name = "AV/noise";
    series.x = {0.0, 15.625, 31.25};
    series.y = {0.1, 0.3, 0.2};
    write_svg_lines(p, "sweep", {series}, "lag (ms)", "mean r_z");

    std::ifstream in(p);
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all.find("<svg") != std::string::npos);
    CHECK(all.find("<!-- data") != std::string::npos);
    CHECK(all.find("AV/noise,15.625,0.3") != std::string::npos);

    const auto pb = tmp.path / "bars.svg";
    write_svg_bars(pb, "means", {{"AV", 0.25}, {"A", 0.2}}, "mean r_z");
    std::ifstream inb(pb);
    std::string allb((std::istreambuf_iterator<char>(inb)), std::istreambuf_iterator<char>());
    CHECK(allb.find("AV,0.25") != std::string::npos);
}

TEST_CASE("signal adapters: to_binary / to_signal") {
    Signal s{{1.5, -2.25, 0.5}, 64.0};
    const auto b = to_binary(s, "env");
    REQUIRE(b.data.size() == 1);
    CHECK(b.rate_hz == 64.0);
    const auto back = to_signal(b, 0);
    CHECK(back.rate == 64.0);
    REQUIRE(back.size() == 3);
    CHECK(back.samples[0] == doctest::Approx(1.5));
    CHECK(back.samples[1] == doctest::Approx(-2.25));
}
