#pragma once

// Exact field arithmetic. Each field is a small immutable context object;
// elements are plain values and every operation goes through the context:
//
//   PrimeField k(7);
//   auto x = k.from_integer(3);
//   auto y = k.mul(x, k.inv(x));   // == k.one()
//
// Supported: Q, F_p (odd p), F_{2^e}, and the quadratic extensions Q(sqrt a)
// and the Artin-Schreier extension k[alpha]/(alpha^2 + alpha + a) of F_{2^e}.

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace sl2forms {

template <class K>
concept Field = std::copy_constructible<K> && std::equality_comparable<K> &&
    requires(const K& k, const typename K::value_type& x, const Integer& z) {
  typename K::value_type;
  { k.zero() } -> std::same_as<typename K::value_type>;
  { k.one() } -> std::same_as<typename K::value_type>;
  { k.add(x, x) } -> std::same_as<typename K::value_type>;
  { k.sub(x, x) } -> std::same_as<typename K::value_type>;
  { k.mul(x, x) } -> std::same_as<typename K::value_type>;
  { k.neg(x) } -> std::same_as<typename K::value_type>;
  { k.inv(x) } -> std::same_as<typename K::value_type>;
  { k.is_zero(x) } -> std::same_as<bool>;
  { k.equal(x, x) } -> std::same_as<bool>;
  { k.from_integer(z) } -> std::same_as<typename K::value_type>;
  { k.characteristic() } -> std::same_as<std::uint64_t>;
  { k.to_string(x) } -> std::same_as<std::string>;
  { k.name() } -> std::same_as<std::string>;
};

/// A field with a distinguished involution iota and a basis {1, g} over a
/// base field, so that every element is x + y*g.
template <class K>
concept QuadraticExtensionField = Field<K> &&
    requires(const K& k, const typename K::value_type& z,
             const typename K::base_type::value_type& x) {
  typename K::base_type;
  { k.base() } -> std::convertible_to<const typename K::base_type&>;
  { k.embed(x) } -> std::same_as<typename K::value_type>;
  { k.generator() } -> std::same_as<typename K::value_type>;
  { k.make(x, x) } -> std::same_as<typename K::value_type>;
  { k.conj(z) } -> std::same_as<typename K::value_type>;
  k.components(z);
};

template <Field K>
typename K::value_type power(const K& k, typename K::value_type x,
                             std::uint64_t e) {
  auto result = k.one();
  while (e > 0) {
    if (e & 1) result = k.mul(result, x);
    x = k.mul(x, x);
    e >>= 1;
  }
  return result;
}

/// x^e for a signed exponent; x must be nonzero when e < 0.
template <Field K>
typename K::value_type power(const K& k, const typename K::value_type& x,
                             std::int64_t e) {
  if (e >= 0) return power(k, x, static_cast<std::uint64_t>(e));
  return power(k, k.inv(x), static_cast<std::uint64_t>(-e));
}

// ---------------------------------------------------------------------------

class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& x, const value_type& y) const { return x + y; }
  value_type sub(const value_type& x, const value_type& y) const { return x - y; }
  value_type mul(const value_type& x, const value_type& y) const { return x * y; }
  value_type neg(const value_type& x) const { return -x; }
  value_type inv(const value_type& x) const {
    if (x == 0) throw arithmetic_error("Q: inverse of zero");
    return 1 / x;
  }
  bool is_zero(const value_type& x) const { return x == 0; }
  bool equal(const value_type& x, const value_type& y) const { return x == y; }
  value_type from_integer(const Integer& z) const { return Rational(z); }
  std::uint64_t characteristic() const { return 0; }
  bool is_square(const value_type& x) const { return is_rational_square(x); }

  std::string to_string(const value_type& x) const { return x.get_str(); }
  value_type parse(const std::string& s) const { return parse_rational(s); }
  std::string name() const { return "Q"; }

  bool operator==(const RationalField&) const = default;
};

// ---------------------------------------------------------------------------

struct Residue {
  std::uint64_t v = 0;
  auto operator<=>(const Residue&) const = default;
};

/// Z/p for an odd prime p < 2^32.
class PrimeField {
 public:
  using value_type = Residue;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p == 2) throw domain_error("PrimeField: p = 2 is handled by BinaryField");
    if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
      throw domain_error("PrimeField: " + std::to_string(p) + " is not an odd prime");
  }

  std::uint64_t modulus() const { return p_; }

  value_type zero() const { return {0}; }
  value_type one() const { return {1}; }
  value_type add(value_type x, value_type y) const {
    std::uint64_t s = x.v + y.v;
    return {s >= p_ ? s - p_ : s};
  }
  value_type sub(value_type x, value_type y) const {
    return {x.v >= y.v ? x.v - y.v : x.v + p_ - y.v};
  }
  value_type mul(value_type x, value_type y) const { return {x.v * y.v % p_}; }
  value_type neg(value_type x) const { return {x.v == 0 ? 0 : p_ - x.v}; }
  value_type inv(value_type x) const {
    if (x.v == 0) throw arithmetic_error("F_" + std::to_string(p_) + ": inverse of zero");
    return power(*this, x, p_ - 2);
  }
  bool is_zero(value_type x) const { return x.v == 0; }
  bool equal(value_type x, value_type y) const { return x.v == y.v; }
  value_type from_integer(const Integer& z) const {
    return {mpz_fdiv_ui(z.get_mpz_t(), p_)};
  }
  value_type from_u64(std::uint64_t v) const { return {v % p_}; }
  std::uint64_t characteristic() const { return p_; }

  /// Euler's criterion; zero counts as a square.
  bool is_square(value_type x) const {
    return x.v == 0 || power(*this, x, (p_ - 1) / 2).v == 1;
  }
  /// Legendre symbol of a nonzero residue.
  int legendre(value_type x) const {
    if (x.v == 0) throw domain_error("legendre: zero residue");
    return is_square(x) ? 1 : -1;
  }

  std::uint64_t size() const { return p_; }
  value_type element(std::uint64_t index) const { return {index % p_}; }

  std::string to_string(value_type x) const { return std::to_string(x.v); }
  value_type parse(const std::string& s) const {
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0)
      throw parse_error("not an F_p residue: '" + s + "'");
    return from_integer(z);
  }
  std::string name() const { return "Fp:" + std::to_string(p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------

struct Bits {
  std::uint32_t v = 0;
  auto operator<=>(const Bits&) const = default;
};

/// F_{2^e} as polynomials over F_2 modulo a fixed irreducible polynomial.
/// Bit i of an element is the coefficient of x^i.
class BinaryField {
 public:
  using value_type = Bits;
  static constexpr unsigned kMaxDegree = 16;

  /// Irreducible moduli used for each degree, x^e + (low terms).
  static std::uint32_t default_modulus(unsigned e) {
    static constexpr std::array<std::uint32_t, kMaxDegree + 1> table = {
        0x0,                                       // unused
        0x3,     0x7,     0xB,     0x13,           // x+1, x^2+x+1, x^3+x+1, x^4+x+1
        0x25,    0x43,    0x83,    0x11B,          // x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x+1
        0x211,   0x409,   0x805,   0x1053,         // x^9+x^4+1, x^10+x^3+1, x^11+x^2+1, x^12+x^6+x^4+x+1
        0x201B,  0x4443,  0x8003,  0x1002B};       // x^13+x^4+x^3+x+1, x^14+x^10+x^6+x+1, x^15+x+1, x^16+x^5+x^3+x+1
    if (e == 0 || e > kMaxDegree)
      throw domain_error("BinaryField: degree must be in 1.." + std::to_string(kMaxDegree));
    return table[e];
  }

  explicit BinaryField(unsigned e) : BinaryField(e, default_modulus(e)) {}

  BinaryField(unsigned e, std::uint32_t modulus) : e_(e), modulus_(modulus) {
    if (e == 0 || e > kMaxDegree)
      throw domain_error("BinaryField: degree must be in 1.." + std::to_string(kMaxDegree));
    if (degree_of(modulus) != static_cast<int>(e) || !is_irreducible(modulus))
      throw domain_error("BinaryField: modulus is not an irreducible polynomial of degree " +
                         std::to_string(e));
  }

  unsigned degree() const { return e_; }
  std::uint32_t modulus() const { return modulus_; }

  value_type zero() const { return {0}; }
  value_type one() const { return {1}; }
  value_type add(value_type x, value_type y) const { return {x.v ^ y.v}; }
  value_type sub(value_type x, value_type y) const { return {x.v ^ y.v}; }
  value_type neg(value_type x) const { return x; }
  value_type mul(value_type x, value_type y) const {
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < e_; ++i)
      if (y.v >> i & 1) acc ^= std::uint64_t{x.v} << i;
    return {reduce(acc, modulus_)};
  }
  value_type inv(value_type x) const {
    if (x.v == 0) throw arithmetic_error(name() + ": inverse of zero");
    return power(*this, x, (std::uint64_t{1} << e_) - 2);
  }
  bool is_zero(value_type x) const { return x.v == 0; }
  bool equal(value_type x, value_type y) const { return x.v == y.v; }
  value_type from_integer(const Integer& z) const {
    return {static_cast<std::uint32_t>(mpz_odd_p(z.get_mpz_t()) ? 1 : 0)};
  }
  std::uint64_t characteristic() const { return 2; }

  /// Every element of a finite field of characteristic 2 is a square.
  bool is_square(value_type) const { return true; }
  value_type frobenius(value_type x) const { return mul(x, x); }
  value_type sqrt(value_type x) const {
    for (unsigned i = 1; i < e_; ++i) x = mul(x, x);
    return x;
  }
  /// Absolute trace to F_2: x + x^2 + ... + x^(2^(e-1)).
  unsigned trace(value_type x) const {
    value_type acc = x, t = x;
    for (unsigned i = 1; i < e_; ++i) {
      t = mul(t, t);
      acc = add(acc, t);
    }
    if (acc.v > 1) throw internal_error("trace left F_2");
    return acc.v;
  }

  std::uint64_t size() const { return std::uint64_t{1} << e_; }
  value_type element(std::uint64_t index) const {
    return {static_cast<std::uint32_t>(index % size())};
  }

  std::string to_string(value_type x) const {
    std::ostringstream os;
    os << "0x" << std::hex << x.v;
    return os.str();
  }
  value_type parse(const std::string& s) const {
    std::string digits = s;
    if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
      throw parse_error("not an F_2^e hex bit-string: '" + s + "'");
    const unsigned long v = std::stoul(digits, nullptr, 16);
    if (v >= size()) throw parse_error("element '" + s + "' out of range for " + name());
    return {static_cast<std::uint32_t>(v)};
  }
  std::string name() const { return "F2e:" + std::to_string(e_); }

  bool operator==(const BinaryField&) const = default;

 private:
  static int degree_of(std::uint64_t poly) {
    int d = -1;
    for (; poly != 0; poly >>= 1) ++d;
    return d;
  }

  static std::uint32_t reduce(std::uint64_t acc, std::uint32_t modulus) {
    const int m = degree_of(modulus);
    for (int d = degree_of(acc); d >= m; d = degree_of(acc))
      acc ^= std::uint64_t{modulus} << (d - m);
    return static_cast<std::uint32_t>(acc);
  }

  /// Trial division by every polynomial of degree <= e/2.
  static bool is_irreducible(std::uint32_t modulus) {
    const int m = degree_of(modulus);
    if (m < 1) return false;
    for (std::uint32_t d = 2; degree_of(d) <= m / 2; ++d)
      if (reduce(modulus, d) == 0) return false;
    return true;
  }

  unsigned e_;
  std::uint32_t modulus_;
};

// ---------------------------------------------------------------------------

template <class B>
struct QuadElement {
  B x{};  // rational part
  B y{};  // coefficient of the generator
  bool operator==(const QuadElement&) const = default;
};

/// Base(sqrt a) for a nonsquare a in a field of characteristic != 2.
/// Over Q the stored radicand is the squarefree part of a (same field).
template <Field Base>
class SqrtExtension {
 public:
  using base_type = Base;
  using base_value = typename Base::value_type;
  using value_type = QuadElement<base_value>;

  SqrtExtension(Base base, base_value a) : base_(std::move(base)), a_(std::move(a)) {
    if (base_.characteristic() == 2)
      throw domain_error("SqrtExtension: characteristic 2 (use ArtinSchreierExtension)");
    if (base_.is_zero(a_) || base_.is_square(a_))
      throw domain_error("SqrtExtension: " + base_.to_string(a_) + " is a square in " +
                         base_.name());
    if constexpr (std::is_same_v<Base, RationalField>) a_ = Rational(squarefree_part(a_));
  }

  const Base& base() const { return base_; }
  const base_value& radicand() const { return a_; }

  value_type zero() const { return {base_.zero(), base_.zero()}; }
  value_type one() const { return {base_.one(), base_.zero()}; }
  value_type generator() const { return {base_.zero(), base_.one()}; }
  value_type embed(const base_value& x) const { return {x, base_.zero()}; }
  value_type make(const base_value& x, const base_value& y) const { return {x, y}; }
  std::pair<base_value, base_value> components(const value_type& z) const { return {z.x, z.y}; }

  value_type add(const value_type& u, const value_type& v) const {
    return {base_.add(u.x, v.x), base_.add(u.y, v.y)};
  }
  value_type sub(const value_type& u, const value_type& v) const {
    return {base_.sub(u.x, v.x), base_.sub(u.y, v.y)};
  }
  value_type neg(const value_type& u) const { return {base_.neg(u.x), base_.neg(u.y)}; }
  value_type mul(const value_type& u, const value_type& v) const {
    return {base_.add(base_.mul(u.x, v.x), base_.mul(a_, base_.mul(u.y, v.y))),
            base_.add(base_.mul(u.x, v.y), base_.mul(u.y, v.x))};
  }
  /// x^2 - a y^2.
  base_value norm(const value_type& u) const {
    return base_.sub(base_.mul(u.x, u.x), base_.mul(a_, base_.mul(u.y, u.y)));
  }
  value_type inv(const value_type& u) const {
    if (is_zero(u)) throw arithmetic_error(name() + ": inverse of zero");
    const base_value n = base_.inv(norm(u));
    return {base_.mul(u.x, n), base_.neg(base_.mul(u.y, n))};
  }
  /// x + y sqrt(a) -> x - y sqrt(a).
  value_type conj(const value_type& u) const { return {u.x, base_.neg(u.y)}; }

  bool is_zero(const value_type& u) const { return base_.is_zero(u.x) && base_.is_zero(u.y); }
  bool equal(const value_type& u, const value_type& v) const {
    return base_.equal(u.x, v.x) && base_.equal(u.y, v.y);
  }
  value_type from_integer(const Integer& z) const { return embed(base_.from_integer(z)); }
  std::uint64_t characteristic() const { return base_.characteristic(); }

  std::string to_string(const value_type& u) const {
    return base_.to_string(u.x) + "+" + base_.to_string(u.y) + "*sqrt(" +
           base_.to_string(a_) + ")";
  }
  /// Accepts "x" or the printed form "x+y*sqrt(a)" with the field's radicand.
  value_type parse(const std::string& s) const {
    const std::string tail = "*sqrt(" + base_.to_string(a_) + ")";
    const auto at = s.find("*sqrt(");
    if (at == std::string::npos) return embed(base_.parse(s));
    if (s.substr(at) != tail) throw parse_error("radicand mismatch in '" + s + "' for " + name());
    for (std::size_t i = 1; i < at; ++i) {
      if (s[i] != '+' && s[i] != '-') continue;
      try {
        auto x = base_.parse(s.substr(0, i));
        auto y = base_.parse(s.substr(s[i] == '+' ? i + 1 : i, at - (s[i] == '+' ? i + 1 : i)));
        return {x, y};
      } catch (const parse_error&) {
      }
    }
    return {base_.zero(), base_.parse(s.substr(0, at))};
  }
  std::string name() const { return "QSqrt:" + base_.to_string(a_); }

  bool operator==(const SqrtExtension&) const = default;

 private:
  Base base_;
  base_value a_;
};

using QuadraticRationalField = SqrtExtension<RationalField>;

/// k[alpha]/(alpha^2 + alpha + a) over k = F_{2^e}, a field exactly when
/// Tr(a) = 1. The nontrivial automorphism sends alpha to alpha + 1.
class ArtinSchreierExtension {
 public:
  using base_type = BinaryField;
  using base_value = Bits;
  using value_type = QuadElement<Bits>;

  ArtinSchreierExtension(BinaryField base, Bits a) : base_(std::move(base)), a_(a) {
    if (base_.trace(a_) != 1)
      throw domain_error("ArtinSchreierExtension: Tr(" + base_.to_string(a_) +
                         ") = 0, so alpha^2 + alpha + a splits over " + base_.name());
  }

  const BinaryField& base() const { return base_; }
  Bits parameter() const { return a_; }

  value_type zero() const { return {base_.zero(), base_.zero()}; }
  value_type one() const { return {base_.one(), base_.zero()}; }
  value_type generator() const { return {base_.zero(), base_.one()}; }
  value_type embed(Bits x) const { return {x, base_.zero()}; }
  value_type make(Bits x, Bits y) const { return {x, y}; }
  std::pair<Bits, Bits> components(const value_type& z) const { return {z.x, z.y}; }

  value_type add(const value_type& u, const value_type& v) const {
    return {base_.add(u.x, v.x), base_.add(u.y, v.y)};
  }
  value_type sub(const value_type& u, const value_type& v) const { return add(u, v); }
  value_type neg(const value_type& u) const { return u; }
  value_type mul(const value_type& u, const value_type& v) const {
    const Bits yy = base_.mul(u.y, v.y);
    return {base_.add(base_.mul(u.x, v.x), base_.mul(a_, yy)),
            base_.add(base_.add(base_.mul(u.x, v.y), base_.mul(u.y, v.x)), yy)};
  }
  /// x^2 + xy + a y^2.
  Bits norm(const value_type& u) const {
    return base_.add(base_.add(base_.mul(u.x, u.x), base_.mul(u.x, u.y)),
                     base_.mul(a_, base_.mul(u.y, u.y)));
  }
  value_type inv(const value_type& u) const {
    if (is_zero(u)) throw arithmetic_error(name() + ": inverse of zero");
    const Bits n = base_.inv(norm(u));
    const value_type c = conj(u);
    return {base_.mul(c.x, n), base_.mul(c.y, n)};
  }
  /// x + y alpha -> x + y (alpha + 1).
  value_type conj(const value_type& u) const { return {base_.add(u.x, u.y), u.y}; }

  bool is_zero(const value_type& u) const { return u.x.v == 0 && u.y.v == 0; }
  bool equal(const value_type& u, const value_type& v) const { return u == v; }
  value_type from_integer(const Integer& z) const { return embed(base_.from_integer(z)); }
  std::uint64_t characteristic() const { return 2; }

  std::string to_string(const value_type& u) const {
    return base_.to_string(u.x) + "+" + base_.to_string(u.y) + "*alpha";
  }
  std::string name() const { return base_.name() + "[alpha:" + base_.to_string(a_) + "]"; }

  bool operator==(const ArtinSchreierExtension&) const = default;

 private:
  BinaryField base_;
  Bits a_;
};

}  // namespace sl2forms
