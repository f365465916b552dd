#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace tradeledger {

using Seconds = std::uint64_t;
using TxId = std::uint64_t;
using Gas = std::uint64_t;

// 20-byte account or contract identifier, rendered as 0x-prefixed lowercase hex.
class Address {
 public:
  static constexpr std::size_t kSize = 20;
  using Bytes = std::array<std::uint8_t, kSize>;

  constexpr Address() = default;
  explicit constexpr Address(const Bytes& bytes) : bytes_(bytes) {}

  // Accepts exactly "0x" followed by 40 hex digits (either case).
  static Address from_hex(std::string_view text);
  static bool is_valid_hex(std::string_view text);

  std::string to_hex() const;
  const Bytes& bytes() const { return bytes_; }

  auto operator<=>(const Address&) const = default;

 private:
  Bytes bytes_{};
};

// 256-bit content digest, rendered as 64 lowercase hex characters.
class ContentHash {
 public:
  static constexpr std::size_t kSize = 32;
  using Bytes = std::array<std::uint8_t, kSize>;

  constexpr ContentHash() = default;
  explicit constexpr ContentHash(const Bytes& bytes) : bytes_(bytes) {}

  static ContentHash from_hex(std::string_view text);
  static bool is_valid_hex(std::string_view text);

  std::string to_hex() const;
  const Bytes& bytes() const { return bytes_; }

  auto operator<=>(const ContentHash&) const = default;

 private:
  Bytes bytes_{};
};

// Ether amount in wei (1 ETH = 10^18 wei). Arithmetic is exact and throws
// std::overflow_error rather than wrapping.
class WeiAmount {
 public:
  static constexpr std::uint64_t kWeiPerEth = 1'000'000'000'000'000'000ULL;

  constexpr WeiAmount() = default;
  explicit constexpr WeiAmount(std::uint64_t wei) : wei_(wei) {}

  constexpr std::uint64_t wei() const { return wei_; }

  // Parses a plain decimal ETH string such as "0.000440383" (at most 18
  // fractional digits) into an exact wei amount.
  static WeiAmount parse_eth(std::string_view text);

  // Shortest exact decimal ETH rendering: "0.000106384", "0".
  std::string to_eth_string() const;

  WeiAmount operator+(WeiAmount other) const;
  WeiAmount& operator+=(WeiAmount other);
  WeiAmount operator*(std::uint64_t factor) const;

  auto operator<=>(const WeiAmount&) const = default;

 private:
  std::uint64_t wei_ = 0;
};

std::string to_hex(const std::uint8_t* data, std::size_t size);

}  // namespace tradeledger

template <>
struct std::hash<tradeledger::ContentHash> {
  std::size_t operator()(const tradeledger::ContentHash& h) const noexcept {
    std::size_t out = 0;
    for (std::size_t i = 0; i < sizeof(std::size_t); ++i) {
      out = (out << 8) | h.bytes()[i];
    }
    return out;
  }
};
