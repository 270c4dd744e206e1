#pragma once

// Integer utilities shared by the rest of the library: a prime sieve,
// factorization of (smooth) big integers and rational square classes.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sl2forms {

using Integer = mpz_class;
using Rational = mpq_class;

/// All primes p <= bound, ascending.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Odd primes p with lo <= p <= hi.
inline std::vector<std::uint64_t> odd_primes_between(std::uint64_t lo,
                                                     std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (auto p : primes_up_to(hi))
    if (p >= lo && p != 2) out.push_back(p);
  return out;
}

namespace detail {

inline const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> table = primes_up_to(1u << 20);
  return table;
}

// Primes below this bound are always removed by trial division; what is left
// has only large prime factors and is resolved by primality/square tests.
inline constexpr std::uint64_t kTrialBound = 1000;

}  // namespace detail

/// Prime factorization of |z| as prime -> exponent.
///
/// Trial division handles every prime below 2^20. A cofactor left after that
/// is accepted when it is a probable prime or the square of one; anything
/// else is reported as unsupported. Every form this library builds has
/// entries whose prime factors are at most n or divide the quaternion
/// parameters, so the fallback is only reached for hand-supplied input.
inline std::map<Integer, unsigned> factor(const Integer& z) {
  if (z == 0) throw domain_error("factor: zero has no factorization");
  std::map<Integer, unsigned> out;
  Integer rest = abs(z);
  const auto& primes = detail::small_primes();
  bool settled = false;  // cofactor known to be prime, square or smooth
  for (std::size_t i = 0; i < primes.size() && rest > 1; ++i) {
    const std::uint64_t p = primes[i];
    if (p > detail::kTrialBound) {
      if (Integer(p) * Integer(p) > rest) break;
      if (!settled) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0 ||
            mpz_perfect_square_p(rest.get_mpz_t()))
          break;
        settled = true;
      }
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      out[Integer(p)] = e;
      settled = false;
    }
  }
  if (rest > 1) {
    if (mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0) {
      out[rest] += 1;
    } else if (mpz_perfect_square_p(rest.get_mpz_t())) {
      Integer root = sqrt(rest);
      if (mpz_probab_prime_p(root.get_mpz_t(), 30) == 0)
        throw domain_error("factor: cofactor " + rest.get_str() +
                           " has no small prime factor");
      out[root] += 2;
    } else {
      throw domain_error("factor: cofactor " + rest.get_str() +
                         " has no small prime factor");
    }
  }
  return out;
}

/// Squarefree integer in the square class of the nonzero rational q
/// (sign retained): q = s * r^2 with s squarefree.
inline Integer squarefree_part(const Rational& q) {
  if (q == 0) throw domain_error("squarefree_part: zero");
  Integer z = q.get_num() * q.get_den();
  Integer s = 1;
  for (const auto& [p, e] : factor(z))
    if (e % 2 == 1) s *= p;
  return z < 0 ? Integer(-s) : s;
}

/// Prime divisors of the nonzero rational q (numerator and denominator).
inline std::vector<Integer> prime_divisors(const Rational& q) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(q.get_num() * q.get_den())) out.push_back(p);
  return out;
}

/// Exponent of the prime p in the nonzero integer z.
inline unsigned valuation(const Integer& z, const Integer& p) {
  if (z == 0) throw domain_error("valuation: zero");
  return static_cast<unsigned>(
      mpz_remove(Integer().get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

inline bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  return mpz_perfect_square_p(q.get_num_mpz_t()) &&
         mpz_perfect_square_p(q.get_den_mpz_t());
}

inline Rational parse_rational(const std::string& text) {
  Rational q;
  std::string trimmed;
  for (char c : text)
    if (c != ' ') trimmed += c;
  if (!trimmed.empty() && trimmed[0] == '+') trimmed.erase(0, 1);
  if (trimmed.empty() || q.set_str(trimmed, 10) != 0)
    throw parse_error("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace sl2forms
