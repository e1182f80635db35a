#include "ondr/epc.hpp"

#include <ostream>

#include "ondr/errors.hpp"

namespace ondr {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexChars[] = "0123456789abcdef";

} // namespace

Epc Epc::parse(std::string_view text) {
    if (text.size() != kHexDigits) {
        throw MalformedEpc("expected " + std::to_string(kHexDigits) +
                           " hex digits, got " + std::to_string(text.size()));
    }
    Epc epc;
    for (std::size_t i = 0; i < 12; ++i) {
        const int hi = hex_digit(text[2 * i]);
        const int lo = hex_digit(text[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw MalformedEpc("non-hex character in \"" + std::string(text) + "\"");
        }
        epc.bytes_[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return epc;
}

Epc Epc::make(std::uint8_t prefix, std::uint64_t serial) {
    Epc epc;
    epc.bytes_[0] = prefix;
    for (int i = 0; i < 8; ++i) {
        epc.bytes_[11 - i] = static_cast<std::uint8_t>(serial >> (8 * i));
    }
    return epc;
}

std::string Epc::hex() const {
    std::string out(kHexDigits, '0');
    for (std::size_t i = 0; i < 12; ++i) {
        out[2 * i] = kHexChars[bytes_[i] >> 4];
        out[2 * i + 1] = kHexChars[bytes_[i] & 0xf];
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Epc& epc) {
    return os << epc.hex();
}

} // namespace ondr
