#include "tradeledger/types.hpp"

#include <limits>
#include <stdexcept>

#include "tradeledger/error.hpp"

namespace tradeledger {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

template <std::size_t N>
bool decode_hex(std::string_view text, std::array<std::uint8_t, N>& out) {
  if (text.size() != 2 * N) return false;
  for (std::size_t i = 0; i < N; ++i) {
    const int hi = hex_digit(text[2 * i]);
    const int lo = hex_digit(text[2 * i + 1]);
    if (hi < 0 || lo < 0) return false;
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return true;
}

}  // namespace

std::string to_hex(const std::uint8_t* data, std::size_t size) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(size * 2);
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0x0f]);
  }
  return out;
}

bool Address::is_valid_hex(std::string_view text) {
  Bytes scratch{};
  return text.size() == 2 + 2 * kSize && text.substr(0, 2) == "0x" &&
         decode_hex(text.substr(2), scratch);
}

Address Address::from_hex(std::string_view text) {
  Bytes bytes{};
  if (text.size() != 2 + 2 * kSize || text.substr(0, 2) != "0x" ||
      !decode_hex(text.substr(2), bytes)) {
    throw Error(ErrorCode::TypeMismatch, "not a 20-byte hex address: '" + std::string(text) + "'");
  }
  return Address(bytes);
}

std::string Address::to_hex() const { return "0x" + tradeledger::to_hex(bytes_.data(), kSize); }

bool ContentHash::is_valid_hex(std::string_view text) {
  Bytes scratch{};
  return decode_hex(text, scratch);
}

ContentHash ContentHash::from_hex(std::string_view text) {
  Bytes bytes{};
  if (!decode_hex(text, bytes)) {
    throw Error(ErrorCode::TypeMismatch, "not a 32-byte hex digest: '" + std::string(text) + "'");
  }
  return ContentHash(bytes);
}

std::string ContentHash::to_hex() const { return tradeledger::to_hex(bytes_.data(), kSize); }

WeiAmount WeiAmount::parse_eth(std::string_view text) {
  const auto bad = [&] {
    return Error(ErrorCode::InvalidSchedule, "bad ETH amount '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw bad();
  if (frac.size() > 18) throw bad();

  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t eth = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') throw bad();
    if (eth > (kMax - 9) / 10) throw bad();
    eth = eth * 10 + static_cast<std::uint64_t>(c - '0');
  }
  std::uint64_t frac_wei = 0;
  std::uint64_t scale = kWeiPerEth;
  for (char c : frac) {
    if (c < '0' || c > '9') throw bad();
    scale /= 10;
    frac_wei += static_cast<std::uint64_t>(c - '0') * scale;
  }
  if (eth > (kMax - frac_wei) / kWeiPerEth) throw bad();
  return WeiAmount(eth * kWeiPerEth + frac_wei);
}

std::string WeiAmount::to_eth_string() const {
  std::string out = std::to_string(wei_ / kWeiPerEth);
  std::uint64_t frac = wei_ % kWeiPerEth;
  if (frac == 0) return out;
  std::string digits = std::to_string(frac);
  digits.insert(0, 18 - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return out + "." + digits;
}

WeiAmount WeiAmount::operator+(WeiAmount other) const {
  std::uint64_t sum = 0;
  if (__builtin_add_overflow(wei_, other.wei_, &sum)) throw std::overflow_error("wei addition overflow");
  return WeiAmount(sum);
}

WeiAmount& WeiAmount::operator+=(WeiAmount other) { return *this = *this + other; }

WeiAmount WeiAmount::operator*(std::uint64_t factor) const {
  std::uint64_t product = 0;
  if (__builtin_mul_overflow(wei_, factor, &product)) {
    throw std::overflow_error("wei multiplication overflow");
  }
  return WeiAmount(product);
}

}  // namespace tradeledger
