#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ondr {

/// 96-bit electronic product code. Canonical text form is 24 lowercase hex
/// digits; that form is used in every file format and wire message.
class Epc {
public:
    static constexpr std::size_t kBits = 96;
    static constexpr std::size_t kHexDigits = 24;

    /// Zero EPC.
    constexpr Epc() = default;

    /// Parses 24 hex digits (case-insensitive). Throws MalformedEpc on
    /// wrong length or non-hex characters.
    static Epc parse(std::string_view text);

    /// Builds an EPC from a marker byte and a 64-bit serial. Handy for
    /// generating synthetic but distinct tag populations.
    static Epc make(std::uint8_t prefix, std::uint64_t serial);

    /// Canonical lowercase hex rendering.
    std::string hex() const;

    const std::array<std::uint8_t, 12>& bytes() const noexcept { return bytes_; }

    auto operator<=>(const Epc&) const = default;

private:
    std::array<std::uint8_t, 12> bytes_{};
};

std::ostream& operator<<(std::ostream& os, const Epc& epc);

} // namespace ondr

template <>
struct std::hash<ondr::Epc> {
    std::size_t operator()(const ondr::Epc& epc) const noexcept {
        // FNV-1a over the 12 bytes.
        std::size_t h = 1469598103934665603ull;
        for (auto b : epc.bytes()) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }
};
