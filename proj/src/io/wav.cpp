#include <cstdint>
#include <cstring>
#include <fstream>

#include "envtrack/io.hpp"

namespace envtrack {

namespace {

std::uint32_t le32(const unsigned char* p) {
    return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

}  // namespace

Signal read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open WAV: " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw IoError("not a RIFF/WAVE file: " + path.string());

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::size_t data_off = 0, data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t len = le32(bytes.data() + pos + 4);
        if (std::memcmp(id, "fmt ", 4) == 0 && pos + 8 + 16 <= bytes.size()) {
            const unsigned char* f = bytes.data() + pos + 8;
            format = le16(f);
            channels = le16(f + 2);
            rate = le32(f + 4);
            bits = le16(f + 14);
            if (format == 0xFFFE && len >= 40) format = le16(f + 24);  // extensible
        } else if (std::memcmp(id, "data", 4) == 0) {
            data_off = pos + 8;
            data_len = std::min<std::size_t>(len, bytes.size() - data_off);
        }
        pos += 8 + len + (len % 2);  // chunks are word-aligned
    }
    if (rate == 0 || channels == 0 || data_off == 0)
        throw IoError("missing fmt/data chunk: " + path.string());

    const bool is_float = format == 3;
    const bool is_pcm = format == 1;
    if (!is_pcm && !is_float) throw IoError("unsupported WAV encoding: " + path.string());
    if (is_pcm && bits != 16 && bits != 24 && bits != 32)
        throw IoError("unsupported PCM bit depth: " + path.string());
    if (is_float && bits != 32) throw IoError("unsupported float bit depth: " + path.string());

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * channels;
    const std::size_t n_frames = data_len / frame_bytes;

    Signal out;
    out.rate = rate;
    out.samples.resize(n_frames);
    const unsigned char* d = bytes.data() + data_off;
    for (std::size_t i = 0; i < n_frames; ++i) {
        const unsigned char* s = d + i * frame_bytes;  // first channel only
        double v;
        if (is_float) {
            float f;
            std::memcpy(&f, s, 4);
            v = f;
        } else if (bits == 16) {
            const std::int16_t x = static_cast<std::int16_t>(le16(s));
            v = x / 32768.0;
        } else if (bits == 24) {
            std::int32_t x = s[0] | (s[1] << 8) | (s[2] << 16);
            if (x & 0x800000) x |= ~0xFFFFFF;
            v = x / 8388608.0;
        } else {
            const std::int32_t x = static_cast<std::int32_t>(le32(s));
            v = x / 2147483648.0;
        }
        out.samples[i] = v;
    }
    if (out.samples.empty()) throw IoError("empty WAV data: " + path.string());
    return out;
}

}  // namespace envtrack
