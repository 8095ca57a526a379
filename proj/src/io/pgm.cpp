#include <fstream>

#include "envtrack/io.hpp"

namespace envtrack {

namespace {

// Skip whitespace and '#' comment lines between PGM header tokens.
int next_token(std::istream& in) {
    int c = in.get();
    for (;;) {
        while (c == ' ' || c == '\t' || c == '\n' || c == '\r') c = in.get();
        if (c == '#') {
            while (c != '\n' && c != EOF) c = in.get();
            continue;
        }
        break;
    }
    int value = 0;
    bool any = false;
    while (c >= '0' && c <= '9') {
        value = value * 10 + (c - '0');
        any = true;
        c = in.get();
    }
    if (!any) throw IoError("malformed PGM header");
    return value;
}

}  // namespace

void read_pgm_into(const std::filesystem::path& path, int& width, int& height,
                   std::vector<std::uint8_t>& pixels) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open PGM: " + path.string());
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw IoError("not a binary PGM (P5): " + path.string());
    width = next_token(in);
    height = next_token(in);
    const int maxval = next_token(in);
    if (maxval != 255) throw IoError("only 8-bit PGM supported: " + path.string());

    pixels.resize(static_cast<std::size_t>(width) * height);
    if (!in.read(reinterpret_cast<char*>(pixels.data()),
                 static_cast<std::streamsize>(pixels.size())))
        throw IoError("truncated PGM payload: " + path.string());
}

}  // namespace envtrack
