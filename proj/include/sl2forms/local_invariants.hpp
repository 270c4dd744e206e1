#pragma once

// Classification of symmetric bilinear forms over Q and F_p.
//
// Over Q a nondegenerate form is determined by its dimension, signature,
// discriminant square class and Hasse invariants at every place
// (Hasse-Minkowski). Hasse invariants use the convention
// s_v = prod_{i<j} (a_i, a_j)_v. Over F_p (p odd) dimension and
// discriminant class suffice. Degenerate forms compare by radical dimension
// plus the record of the nondegenerate part.

#include <compare>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "forms.hpp"
#include "integer.hpp"

namespace sl2forms {

/// The real place (prime == 0) or a finite prime.
struct Place {
  Integer prime = 0;

  static Place real() { return Place{0}; }
  static Place finite(const Integer& p) { return Place{p}; }
  bool is_real() const { return prime == 0; }
  std::string to_string() const { return is_real() ? "real" : prime.get_str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime == b.prime; }
  // Finite primes ascending, then the real place.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_real() != b.is_real()) return b.is_real();
    return a.prime < b.prime;
  }
};

namespace detail {

inline int legendre(const Integer& u, const Integer& p) {
  return mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
}

// (u - 1)/2 mod 2 and (u^2 - 1)/8 mod 2 for odd u.
inline int epsilon2(const Integer& u) { return mpz_fdiv_ui(u.get_mpz_t(), 4) == 3 ? 1 : 0; }
inline int omega2(const Integer& u) {
  const auto r = mpz_fdiv_ui(u.get_mpz_t(), 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

inline int hilbert_squarefree(const Integer& a, const Integer& b, const Place& v) {
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.prime;
  Integer u = a, w = b;
  const unsigned alpha = valuation(a, p), beta = valuation(b, p);
  for (unsigned i = 0; i < alpha; ++i) u /= p;
  for (unsigned i = 0; i < beta; ++i) w /= p;
  if (p == 2) {
    const int e = epsilon2(u) * epsilon2(w) + static_cast<int>(alpha) * omega2(w) +
                  static_cast<int>(beta) * omega2(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  if ((alpha * beta) % 2 == 1 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(w, p);
  return s;
}

}  // namespace detail

/// (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw domain_error("hilbert_symbol: arguments must be nonzero");
  if (!v.is_real() && !mpz_probab_prime_p(v.prime.get_mpz_t(), 30))
    throw domain_error("hilbert_symbol: place " + v.to_string() + " is not prime");
  return detail::hilbert_squarefree(squarefree_part(a), squarefree_part(b), v);
}

/// {2, real} together with the primes dividing any of the given entries.
inline std::set<Place> support_places(const std::vector<Rational>& entries) {
  std::set<Place> out{Place::finite(2), Place::real()};
  for (const auto& x : entries)
    if (x != 0)
      for (const auto& p : prime_divisors(x)) out.insert(Place::finite(p));
  return out;
}

namespace detail {

// Square class of a product of two squarefree integers.
inline Integer product_class(const Integer& x, const Integer& y) {
  Integer g = gcd(x, y);
  return x * y / (g * g);
}

inline std::vector<Integer> entry_classes(const DiagonalForm<RationalField>& d) {
  std::vector<Integer> classes;
  for (const auto& x : d.entries) {
    if (x == 0) throw domain_error("hasse_invariant: zero entry (strip the radical first)");
    classes.push_back(squarefree_part(x));
  }
  return classes;
}

// prod_{i<j} (c_i, c_j)_v accumulated as prod_j (c_1 ... c_{j-1}, c_j)_v.
inline int hasse_from_classes(const std::vector<Integer>& classes, const Place& v) {
  int s = 1;
  Integer prefix = 1;
  for (std::size_t j = 0; j < classes.size(); ++j) {
    if (j > 0) s *= hilbert_squarefree(prefix, classes[j], v);
    prefix = product_class(prefix, classes[j]);
  }
  return s;
}

}  // namespace detail

/// prod_{i<j} (d_i, d_j)_v.
inline int hasse_invariant(const DiagonalForm<RationalField>& d, const Place& v) {
  return detail::hasse_from_classes(detail::entry_classes(d), v);
}

struct RationalRecord {
  std::size_t positive = 0;
  std::size_t negative = 0;
  Integer disc = 1;               // squarefree representative
  std::map<Place, int> hasse;     // places outside the map carry +1

  int hasse_at(const Place& v) const {
    auto it = hasse.find(v);
    return it == hasse.end() ? 1 : it->second;
  }
};

struct FiniteRecord {
  bool disc_is_square = true;
};

struct InvariantRecord {
  std::string field;
  std::size_t dimension = 0;
  std::size_t radical_dim = 0;
  std::variant<RationalRecord, FiniteRecord> data;

  std::size_t nondegenerate_dim() const { return dimension - radical_dim; }
};

inline InvariantRecord invariant_record(const DiagonalForm<RationalField>& f) {
  const auto nd = nondegenerate_part(f);
  RationalRecord r;
  for (const auto& x : nd.entries) (x > 0 ? r.positive : r.negative) += 1;
  const auto classes = detail::entry_classes(nd);
  for (const auto& c : classes) r.disc = detail::product_class(r.disc, c);
  std::set<Place> places{Place::finite(2), Place::real()};
  for (const auto& c : classes)
    for (const auto& [p, e] : factor(c)) places.insert(Place::finite(p));
  for (const auto& v : places) r.hasse[v] = detail::hasse_from_classes(classes, v);
  return {f.field.name(), f.dim(), f.dim() - nd.dim(), r};
}

inline InvariantRecord invariant_record(const DiagonalForm<PrimeField>& f) {
  const auto nd = nondegenerate_part(f);
  auto det = f.field.one();
  for (const auto& x : nd.entries) det = f.field.mul(det, x);
  return {f.field.name(), f.dim(), f.dim() - nd.dim(), FiniteRecord{f.field.is_square(det)}};
}

template <Field K>
InvariantRecord invariant_record(const GramForm<K>& f) {
  return invariant_record(diagonalize(f).form);
}

/// Equality of classification data; Hasse symbols are compared over the
/// union of both supports.
inline bool records_equivalent(const InvariantRecord& r1, const InvariantRecord& r2) {
  if (r1.field != r2.field || r1.dimension != r2.dimension || r1.radical_dim != r2.radical_dim)
    return false;
  if (r1.data.index() != r2.data.index()) return false;
  if (const auto* a = std::get_if<RationalRecord>(&r1.data)) {
    const auto& b = std::get<RationalRecord>(r2.data);
    if (a->positive != b.positive || a->negative != b.negative || a->disc != b.disc) return false;
    for (const auto& [v, s] : a->hasse)
      if (b.hasse_at(v) != s) return false;
    for (const auto& [v, s] : b.hasse)
      if (a->hasse_at(v) != s) return false;
    return true;
  }
  return std::get<FiniteRecord>(r1.data).disc_is_square ==
         std::get<FiniteRecord>(r2.data).disc_is_square;
}

template <class F>
concept ClassifiableForm = requires(const F& f) { invariant_record(f); };

/// Isometry decision over Q (Hasse-Minkowski) or F_p, for diagonal or Gram
/// forms in any combination.
template <ClassifiableForm F1, ClassifiableForm F2>
bool isometric(const F1& f1, const F2& f2) {
  const auto r1 = invariant_record(f1);
  const auto r2 = invariant_record(f2);
  if (r1.field != r2.field)
    throw domain_error("isometric: field mismatch (" + r1.field + " vs " + r2.field + ")");
  return records_equivalent(r1, r2);
}

/// True iff (a, b)_v = +1 at every place, i.e. the quaternion algebra (a, b)
/// over Q is a matrix algebra. Symbols are +1 away from {2, real} and the
/// primes of a and b.
inline bool quaternion_is_split(const Rational& a, const Rational& b) {
  for (const auto& v : support_places({a, b}))
    if (hilbert_symbol(a, b, v) != 1) return false;
  return true;
}

}  // namespace sl2forms
