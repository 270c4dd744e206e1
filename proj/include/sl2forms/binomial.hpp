#pragma once

// Binomial coefficients and their p-adic valuations, computed from base-p
// digits instead of by factoring.

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace sl2forms {

/// Base-p digits of a natural number, least significant first. Zero has no
/// digits.
class BaseExpansion {
 public:
  BaseExpansion(std::uint64_t value, std::uint64_t base) : base_(base) {
    if (base < 2) throw domain_error("BaseExpansion: base must be >= 2");
    for (; value > 0; value /= base) digits_.push_back(value % base);
  }

  std::uint64_t base() const { return base_; }
  std::size_t size() const { return digits_.size(); }
  const std::vector<std::uint64_t>& digits() const { return digits_; }

  /// Digit at position j; positions past the top are zero.
  std::uint64_t operator[](std::size_t j) const {
    return j < digits_.size() ? digits_[j] : 0;
  }

  std::uint64_t value() const {
    std::uint64_t v = 0;
    for (std::size_t j = digits_.size(); j-- > 0;) v = v * base_ + digits_[j];
    return v;
  }

 private:
  std::uint64_t base_;
  std::vector<std::uint64_t> digits_;
};

inline Integer binom(std::uint64_t n, std::uint64_t m) {
  if (m > n) throw domain_error("binom: m > n");
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, m);
  return out;
}

/// v_p(C(n, m)) as the number of carries when adding m and n - m in base p.
inline unsigned val_p_binom(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  if (m > n) throw domain_error("val_p_binom: m > n");
  if (p < 2) throw domain_error("val_p_binom: p must be prime");
  const BaseExpansion x(m, p), y(n - m, p);
  const std::size_t len = std::max(x.size(), y.size());
  unsigned carries = 0;
  std::uint64_t carry = 0;
  for (std::size_t j = 0; j < len; ++j) {
    carry = (x[j] + y[j] + carry) >= p ? 1 : 0;
    carries += static_cast<unsigned>(carry);
  }
  return carries;
}

/// p | C(n, m) iff some base-p digit of m exceeds the matching digit of n.
inline bool kummer_divides(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  if (m > n) throw domain_error("kummer_divides: m > n");
  if (p < 2) throw domain_error("kummer_divides: p must be prime");
  if (p == 2) return (m & ~n) != 0;
  for (; m > 0; m /= p, n /= p)
    if (m % p > n % p) return true;
  return false;
}

/// Number of ones in the binary expansion of n.
inline unsigned ones_count(std::uint64_t n) {
  return static_cast<unsigned>(std::popcount(n));
}

inline bool is_power_of_two(std::uint64_t n) { return std::has_single_bit(n); }

/// For even n and odd p, counts the p-divisible entries of the two lists of
/// binomial coefficients that must agree:
///   n = 0 mod 4:  C(n,0), C(n,2), ..., C(n,n/2-2)   vs  C(n,1), ..., C(n,n/2-1)
///   n = 2 mod 4:  C(n,0), C(n,2), ..., C(n,n/2-1)   vs  C(n,1), ..., C(n,n/2-2), C(n,n/2)
inline std::pair<std::uint64_t, std::uint64_t> lemma_parity_counts(
    std::uint64_t n, std::uint64_t p) {
  if (n % 2 != 0) throw domain_error("lemma_parity_counts: n must be even");
  if (p == 2) throw domain_error("lemma_parity_counts: p must be odd");
  if (p < 3 || !is_prime(p))
    throw domain_error("lemma_parity_counts: p must be an odd prime");
  const std::uint64_t half = n / 2;
  std::uint64_t first = 0, second = 0;
  for (std::uint64_t m = 0; m < half; ++m) {
    if (!kummer_divides(n, m, p)) continue;
    (m % 2 == 0 ? first : second) += 1;
  }
  // The middle coefficient joins the odd-index list when n/2 is odd.
  if (half % 2 == 1 && kummer_divides(n, half, p)) second += 1;
  return {first, second};
}

}  // namespace sl2forms
