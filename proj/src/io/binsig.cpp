#include <nlohmann/json.hpp>

#include <cstring>
#include <fstream>

#include "envtrack/io.hpp"

namespace envtrack {

using nlohmann::json;

void write_binary_signal(const std::filesystem::path& path, const BinarySignal& sig) {
    const std::size_t n_channels = sig.data.size();
    const std::size_t n_samples = sig.data.empty() ? 0 : sig.data[0].size();
    for (const auto& ch : sig.data)
        if (ch.size() != n_samples) throw IoError("binary signal: ragged channels");

    json header = {
        {"n_channels", n_channels},
        {"n_samples", n_samples},
        {"rate_hz", sig.rate_hz},
        {"labels", sig.labels},
        {"dtype", "f32le"},
    };
    const std::string header_str = header.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    const std::uint32_t len = static_cast<std::uint32_t>(header_str.size());
    char len_bytes[4] = {static_cast<char>(len & 0xff), static_cast<char>((len >> 8) & 0xff),
                         static_cast<char>((len >> 16) & 0xff),
                         static_cast<char>((len >> 24) & 0xff)};
    out.write(len_bytes, 4);
    out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));
    for (const auto& ch : sig.data) {
        static_assert(sizeof(float) == 4);
        out.write(reinterpret_cast<const char*>(ch.data()),
                  static_cast<std::streamsize>(ch.size() * 4));
    }
    if (!out) throw IoError("write failed: " + path.string());
}

BinarySignal read_binary_signal(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());

    unsigned char len_bytes[4];
    if (!in.read(reinterpret_cast<char*>(len_bytes), 4))
        throw IoError("truncated header length: " + path.string());
    const std::uint32_t len = static_cast<std::uint32_t>(len_bytes[0]) |
                              (static_cast<std::uint32_t>(len_bytes[1]) << 8) |
                              (static_cast<std::uint32_t>(len_bytes[2]) << 16) |
                              (static_cast<std::uint32_t>(len_bytes[3]) << 24);
    std::string header_str(len, '\0');
    if (!in.read(header_str.data(), len)) throw IoError("truncated header: " + path.string());

    json header;
    try {
        header = json::parse(header_str);
    } catch (const json::exception& e) {
        throw IoError("bad header JSON in " + path.string() + ": " + e.what());
    }
    BinarySignal sig;
    const std::size_t n_channels = header.at("n_channels").get<std::size_t>();
    const std::size_t n_samples = header.at("n_samples").get<std::size_t>();
    sig.rate_hz = header.at("rate_hz").get<double>();
    if (header.contains("labels")) sig.labels = header["labels"].get<std::vector<std::string>>();
    if (header.at("dtype").get<std::string>() != "f32le")
        throw IoError("unsupported dtype in " + path.string());

    sig.data.assign(n_channels, std::vector<float>(n_samples));
    std::size_t read_so_far = 0;
    for (auto& ch : sig.data) {
        if (!in.read(reinterpret_cast<char*>(ch.data()),
                     static_cast<std::streamsize>(n_samples * 4))) {
            read_so_far += static_cast<std::size_t>(in.gcount());
            throw IoError("truncated payload in " + path.string() + ": expected " +
                          std::to_string(4 * n_channels * n_samples) + " bytes, got " +
                          std::to_string(read_so_far));
        }
        read_so_far += n_samples * 4;
    }
    // Reject trailing garbage so header/payload mismatches surface.
    char extra;
    if (in.read(&extra, 1))
        throw IoError("payload longer than header declares in " + path.string());
    return sig;
}

BinarySignal to_binary(const Signal& s, const std::string& label) {
    BinarySignal b;
    b.rate_hz = s.rate;
    b.labels = {label};
    b.data.emplace_back(s.samples.begin(), s.samples.end());
    return b;
}

Signal to_signal(const BinarySignal& b, std::size_t channel) {
    if (channel >= b.data.size()) throw IoError("to_signal: channel out of range");
    Signal s;
    s.rate = b.rate_hz;
    s.samples.assign(b.data[channel].begin(), b.data[channel].end());
    return s;
}

}  // namespace envtrack
