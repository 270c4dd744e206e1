#pragma once

// Runtime field selection from text:
//   "Q", "QSqrt:a", "Fp:p", "F2e:e"
// and, in lists, the ranges "Fp:lo..hi" (odd primes in [lo, hi]) and
// "F2e:lo..hi".

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "integer.hpp"

namespace sl2forms {

using FieldDescriptor = std::variant<RationalField, QuadraticRationalField, PrimeField, BinaryField>;

inline std::string field_name(const FieldDescriptor& f) {
  return std::visit([](const auto& k) { return k.name(); }, f);
}

namespace detail {

inline std::uint64_t parse_count(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
    throw parse_error("bad number '" + s + "' in field '" + whole + "'");
  return std::stoull(s);
}

inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s,
                                                           const std::string& whole) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_count(s, whole);
    return {v, v};
  }
  const auto lo = parse_count(s.substr(0, dots), whole);
  const auto hi = parse_count(s.substr(dots + 2), whole);
  if (lo > hi) throw parse_error("empty range in field '" + whole + "'");
  return {lo, hi};
}

}  // namespace detail

inline FieldDescriptor parse_field(const std::string& text) {
  if (text == "Q") return RationalField{};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw parse_error("unknown field '" + text + "'");
  const std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  try {
    if (kind == "Fp") return PrimeField(detail::parse_count(arg, text));
    if (kind == "F2e") return BinaryField(static_cast<unsigned>(detail::parse_count(arg, text)));
    if (kind == "QSqrt") return QuadraticRationalField(RationalField{}, parse_rational(arg));
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
  throw parse_error("unknown field '" + text + "'");
}

/// Comma-separated fields with ranges expanded in ascending order.
inline std::vector<FieldDescriptor> parse_field_list(const std::string& text) {
  std::vector<FieldDescriptor> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    start = end + 1;
    if (item.empty()) throw parse_error("empty entry in field list '" + text + "'");
    if (item.find("..") == std::string::npos) {
      out.push_back(parse_field(item));
      continue;
    }
    const auto colon = item.find(':');
    const std::string kind = colon == std::string::npos ? "" : item.substr(0, colon);
    const auto [lo, hi] = detail::parse_range(item.substr(colon + 1), item);
    if (kind == "Fp") {
      const auto primes = odd_primes_between(lo, hi);
      if (primes.empty()) throw parse_error("no odd primes in '" + item + "'");
      for (auto p : primes) out.push_back(PrimeField(p));
    } else if (kind == "F2e") {
      for (auto e = lo; e <= hi; ++e) out.push_back(parse_field("F2e:" + std::to_string(e)));
    } else {
      throw parse_error("ranges are only allowed for Fp and F2e: '" + item + "'");
    }
  }
  return out;
}

}  // namespace sl2forms
