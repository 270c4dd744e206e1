#pragma once

// Quadratic forms over F_{2^e}.
//
// A form is stored as its polar matrix b_q (symmetric, zero diagonal) and its
// values on the basis, so q(sum c_i e_i) = sum c_i^2 q(e_i) +
// sum_{i<j} c_i c_j b_q(e_i, e_j). Over a perfect field every form is
//   zeros * [0]  +  (at most one) [1]  +  pairs * [u, v],
// and when there is no unary block the pairs are classified by the Arf
// invariant Tr(sum q(u_i) q(v_i)) in F_2.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binomial.hpp"
#include "constructions.hpp"
#include "descent.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "matrix.hpp"

namespace sl2forms {

template <Field K = BinaryField>
class QFormChar2 {
 public:
  using value_type = typename K::value_type;

  QFormChar2(K k, MatrixOf<K> polar, std::vector<value_type> values)
      : field_(std::move(k)), polar_(std::move(polar)), values_(std::move(values)) {
    if (field_.characteristic() != 2) throw domain_error("QFormChar2: field must have characteristic 2");
    if (!is_symmetric(field_, polar_) || polar_.rows() != values_.size())
      throw domain_error("QFormChar2: polar matrix must be symmetric and match the dimension");
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!field_.is_zero(polar_(i, i))) throw domain_error("QFormChar2: polar diagonal must vanish");
  }

  const K& field() const { return field_; }
  std::size_t dim() const { return values_.size(); }
  const MatrixOf<K>& polar() const { return polar_; }
  const std::vector<value_type>& values() const { return values_; }

  value_type operator()(const VectorOf<K>& v) const {
    const K& k = field_;
    auto s = k.zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (k.is_zero(v[i])) continue;
      s = k.add(s, k.mul(k.mul(v[i], v[i]), values_[i]));
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (!k.is_zero(v[j]) && !k.is_zero(polar_(i, j)))
          s = k.add(s, k.mul(k.mul(v[i], v[j]), polar_(i, j)));
    }
    return s;
  }

  value_type polar(const VectorOf<K>& u, const VectorOf<K>& v) const {
    const auto pv = apply(field_, polar_, v);
    auto s = field_.zero();
    for (std::size_t i = 0; i < dim(); ++i) s = field_.add(s, field_.mul(u[i], pv[i]));
    return s;
  }

  /// q(P x): polar P^T B P and values q(P e_i).
  QFormChar2 transform(const MatrixOf<K>& p) const {
    std::vector<value_type> vals;
    for (std::size_t j = 0; j < p.cols(); ++j) vals.push_back((*this)(p.column(j)));
    return QFormChar2(field_, congruence(field_, polar_, p), std::move(vals));
  }

 private:
  K field_;
  MatrixOf<K> polar_;
  std::vector<value_type> values_;
};

/// Isometry class over a perfect field of characteristic 2.
struct Char2Class {
  std::size_t zeros = 0;        // dimension of the zero summand q_0
  std::size_t pairs = 0;        // number of 2-dimensional blocks
  unsigned quasilinear = 0;     // 1 when a unary block [1] is present
  std::optional<unsigned> arf;  // defined when quasilinear == 0

  std::size_t dim() const { return zeros + 2 * pairs + quasilinear; }
  bool operator==(const Char2Class&) const = default;

  std::string to_string() const {
    std::string s = std::to_string(zeros) + "[0] + " + std::to_string(pairs) + " pairs";
    if (quasilinear) s += " + [1]";
    if (arf) s += " (Arf " + std::to_string(*arf) + ")";
    return s;
  }
};

/// Class of the nondefective part: [1] + H for the unary case, pairs * H or
/// (pairs - 1) * H + [1, c] with Tr(c) = 1 otherwise.
inline Char2Class nondefective_part(const Char2Class& c) {
  return {0, c.pairs, c.quasilinear, c.arf};
}

template <Field K>
struct Char2Decomposition {
  Char2Class cls;
  /// Adapted basis: zero block, then the unary vector (q = 1) if present,
  /// then pairs (u_i, v_i) with b(u_i, v_i) = 1 and the pairs mutually
  /// orthogonal. With a unary block every q(u_i) is 0.
  std::vector<VectorOf<K>> basis;
};

/// Splits off the zero part and reduces the rest: polar radical R, the unary
/// vector from q|R (q is Frobenius-semilinear on R), and symplectic reduction
/// of a complement with lowest-index pivots.
inline Char2Decomposition<BinaryField> nondefective_decompose(const QFormChar2<BinaryField>& q) {
  const BinaryField& k = q.field();
  const std::size_t d = q.dim();
  Char2Decomposition<BinaryField> out;

  auto radical = kernel(k, q.polar());
  std::optional<VectorOf<BinaryField>> unary;
  std::vector<VectorOf<BinaryField>> zero_part;
  for (const auto& r : radical) {
    if (!unary && !k.is_zero(q(r))) {
      const auto s = k.inv(k.sqrt(q(r)));
      unary = r;
      for (auto& x : *unary) x = k.mul(x, s);
    }
  }
  for (auto r : radical) {
    if (unary) {
      // r + lambda w with lambda^2 = q(r) / q(w) = q(r) has q = 0.
      const auto lambda = k.sqrt(q(r));
      for (std::size_t i = 0; i < d; ++i) r[i] = k.add(r[i], k.mul(lambda, (*unary)[i]));
      if (std::all_of(r.begin(), r.end(), [&](auto x) { return k.is_zero(x); })) continue;
    }
    zero_part.push_back(std::move(r));
  }
  // The unary vector itself is one of the radical vectors and reduces to zero above.
  if (zero_part.size() + (unary ? 1 : 0) != radical.size())
    throw internal_error("nondefective_decompose: radical bookkeeping failed");

  // Complement of R: standard basis vectors extending a basis of R.
  IncrementalSpan<BinaryField> span(k);
  for (const auto& r : radical) span.insert(r);
  std::vector<VectorOf<BinaryField>> rest;
  for (std::size_t i = 0; i < d; ++i) {
    VectorOf<BinaryField> e(d, k.zero());
    e[i] = k.one();
    if (span.insert(e)) rest.push_back(std::move(e));
  }

  std::vector<std::pair<VectorOf<BinaryField>, VectorOf<BinaryField>>> pairs;
  while (!rest.empty()) {
    std::size_t partner = rest.size();
    for (std::size_t j = 1; j < rest.size() && partner == rest.size(); ++j)
      if (!k.is_zero(q.polar(rest[0], rest[j]))) partner = j;
    if (partner == rest.size()) throw internal_error("nondefective_decompose: degenerate complement");
    auto u = rest[0];
    auto v = rest[partner];
    const auto s = k.inv(q.polar(u, v));
    for (auto& x : v) x = k.mul(x, s);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(partner));
    rest.erase(rest.begin());
    for (auto& w : rest) {
      const auto wv = q.polar(w, v), wu = q.polar(w, u);
      for (std::size_t i = 0; i < d; ++i) w[i] = k.add(w[i], k.add(k.mul(wv, u[i]), k.mul(wu, v[i])));
    }
    if (unary) {
      // Absorb q(u) and q(v) into the unary vector: both become 0.
      const auto lu = k.sqrt(q(u)), lv = k.sqrt(q(v));
      for (std::size_t i = 0; i < d; ++i) {
        u[i] = k.add(u[i], k.mul(lu, (*unary)[i]));
        v[i] = k.add(v[i], k.mul(lv, (*unary)[i]));
      }
    }
    pairs.emplace_back(std::move(u), std::move(v));
  }

  out.cls.zeros = zero_part.size();
  out.cls.pairs = pairs.size();
  out.cls.quasilinear = unary ? 1 : 0;
  if (!unary) {
    auto acc = k.zero();
    for (const auto& [u, v] : pairs) acc = k.add(acc, k.mul(q(u), q(v)));
    out.cls.arf = k.trace(acc);
  }
  out.basis = std::move(zero_part);
  if (unary) out.basis.push_back(*unary);
  for (auto& [u, v] : pairs) {
    out.basis.push_back(std::move(u));
    out.basis.push_back(std::move(v));
  }
  return out;
}

inline Char2Class classify(const QFormChar2<BinaryField>& q) { return nondefective_decompose(q).cls; }

/// Smallest element (in index order) of absolute trace 1.
inline Bits trace_one_element(const BinaryField& k) {
  for (std::uint64_t i = 0; i < k.size(); ++i)
    if (k.trace(k.element(i)) == 1) return k.element(i);
  throw internal_error("no element of trace 1");
}

/// The standard representative of a class:
/// zeros * [0] + [1]? + pairs * [0,0], the last pair replaced by [1, c],
/// Tr(c) = 1, when the Arf invariant is 1.
inline QFormChar2<BinaryField> standard_form(const BinaryField& k, const Char2Class& c) {
  const std::size_t d = c.dim();
  auto polar = zero_matrix(k, d, d);
  std::vector<Bits> values(d, k.zero());
  std::size_t i = c.zeros;
  if (c.quasilinear) values[i++] = k.one();
  for (std::size_t p = 0; p < c.pairs; ++p, i += 2) {
    polar(i, i + 1) = k.one();
    polar(i + 1, i) = k.one();
    if (p + 1 == c.pairs && c.arf.value_or(0) == 1) {
      values[i] = k.one();
      values[i + 1] = trace_one_element(k);
    }
  }
  return QFormChar2<BinaryField>(k, std::move(polar), std::move(values));
}

// ---------------------------------------------------------------------------

struct PhiFormsChar2 {
  std::uint64_t rank_even = 0;  // odd entries among C(n,m), m even, m < n/2
  bool odd_is_zero = true;      // C(n,m) even for every odd m < n/2
};

/// Binomial forms reduced mod 2, by the base-2 digit test.
inline PhiFormsChar2 phi_forms_char2(std::uint64_t n) {
  detail::require_even_n(n, "phi_forms_char2");
  PhiFormsChar2 out;
  for (std::uint64_t m = 0; m < n / 2; ++m) {
    const bool odd_coefficient = !kummer_divides(n, m, 2);
    if (m % 2 == 0) out.rank_even += odd_coefficient ? 1 : 0;
    else if (odd_coefficient) out.odd_is_zero = false;
  }
  return out;
}

/// (C(n,n/2)/2) x_{n/2}^2 + sum_{m < n/2, m even} C(n,m) x_m x_{n-m}, i.e.
/// half the Weyl form's quadratic form over Z, reduced mod 2. Odd m carry
/// even coefficients and drop out.
inline QFormChar2<BinaryField> weyl_qform_char2(std::uint64_t n, const BinaryField& k) {
  detail::require_even_n(n, "weyl_qform_char2");
  auto polar = zero_matrix(k, n + 1, n + 1);
  std::vector<Bits> values(n + 1, k.zero());
  for (std::uint64_t m = 0; m <= n; ++m) {
    if (m == n / 2) continue;
    polar(m, n - m) = k.from_integer(binom(n, m));
  }
  values[n / 2] = k.from_integer(binom(n, n / 2) / 2);
  return QFormChar2<BinaryField>(k, std::move(polar), std::move(values));
}

struct QPrimeChar2 {
  QFormChar2<BinaryField> form;
  bool split_extension = false;  // Tr(a) = 0: k[alpha] is not a field
};

/// [1] + <b>[1, a]: values (1, b, ab), polar pairing b between the last two.
inline QPrimeChar2 quaternion_char2_qprime(Bits a, Bits b, const BinaryField& k) {
  if (k.is_zero(b)) throw domain_error("quaternion_char2_qprime: b must be nonzero");
  auto polar = zero_matrix(k, 3, 3);
  polar(1, 2) = b;
  polar(2, 1) = b;
  return {QFormChar2<BinaryField>(k, std::move(polar), {k.one(), b, k.mul(a, b)}),
          k.trace(a) == 0};
}

/// Invariant quadratic form of the twist by (a, b): the Weyl quadratic form
/// restricted to the fixed space of rho(beta) o iota on V(n) (x) K, with
/// K = k[alpha]/(alpha^2 + alpha + a).
inline QFormChar2<BinaryField> twisted_form_char2(std::uint64_t n, Bits a, Bits b,
                                                  const BinaryField& k,
                                                  FixedBasis choice = FixedBasis::Traces) {
  detail::require_even_n(n, "twisted_form_char2");
  const ArtinSchreierExtension ext(k, a);
  const DescentDatum<ArtinSchreierExtension> datum(ext, n, b);
  const auto basis = datum.fixed_basis(choice);
  const auto q = weyl_qform_char2(n, k);

  auto polar = restrict_bilinear(ext, q.polar(), basis);
  std::vector<Bits> values;
  for (const auto& v : basis) {
    // q extended K-linearly, evaluated on v.
    auto s = ext.zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
      s = ext.add(s, ext.mul(ext.mul(v[i], v[i]), ext.embed(q.values()[i])));
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (!k.is_zero(q.polar()(i, j)))
          s = ext.add(s, ext.mul(ext.mul(v[i], v[j]), ext.embed(q.polar()(i, j))));
    }
    auto [x, y] = ext.components(s);
    if (!k.is_zero(y)) throw internal_error("twisted_form_char2: value left the base field");
    values.push_back(x);
  }
  return QFormChar2<BinaryField>(k, std::move(polar), std::move(values));
}

/// The class predicted for the invariant form on V(n) in characteristic 2
/// (independent of the quaternion algebra for n >= 4):
///   n = 2:                  [1] + one pair (the class of Q')
///   n = 2^j >= 4:           [1] + H + (n-2) [0]
///   otherwise:              2^(s(n)-1) H + (n + 1 - 2^s(n)) [0]
inline Char2Class expected_char2_class(std::uint64_t n) {
  detail::require_even_n(n, "expected_char2_class");
  if (is_power_of_two(n)) return {n - 2, 1, 1, std::nullopt};
  const std::uint64_t blocks = std::uint64_t{1} << (ones_count(n) - 1);
  return {n + 1 - 2 * blocks, blocks, 0, 0u};
}

/// The irreducible module L(n) carries a nonzero invariant quadratic form iff
/// n is even (characteristic p != 2) or n is not a power of 2 (p = 2).
inline bool irreducible_has_invariant_qform(std::uint64_t n, std::uint64_t p) {
  if (p == 2) return !is_power_of_two(n);
  return n % 2 == 0;
}

/// q(M e_i) = q(e_i) for every basis vector and M^T B M = B.
inline bool check_invariance_char2(std::uint64_t n, const TwoByTwo<BinaryField>& g,
                                   const BinaryField& k) {
  if (!k.equal(g.det(k), k.one())) throw domain_error("check_invariance_char2: det(g) != 1");
  const auto q = weyl_qform_char2(n, k);
  const auto moved = q.transform(sl2_action_matrix(n, g, k));
  return matrices_equal(k, moved.polar(), q.polar()) && moved.values() == q.values();
}

/// Dimension of the space of quadratic forms (polar entries b_rs, r < s, and
/// values c_r) invariant under the generators.
inline std::size_t invariant_qform_space_char2(std::uint64_t n, const BinaryField& k,
                                               const std::vector<Bits>& sample,
                                               InvarianceMode mode = InvarianceMode::Sampled) {
  detail::require_even_n(n, "invariant_qform_space_char2");
  const std::size_t dim = n + 1;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = r + 1; s < dim; ++s) pairs.emplace_back(r, s);
  const std::size_t unknowns = pairs.size() + dim;  // polar entries, then values

  std::vector<VectorOf<BinaryField>> rows;
  auto push = [&](VectorOf<BinaryField> row) {
    if (std::any_of(row.begin(), row.end(), [&](Bits x) { return !k.is_zero(x); }))
      rows.push_back(std::move(row));
  };
  for (const auto& p : invariance_generators(n, k, sample, mode)) {
    const std::size_t degree = 2 * (p.size() - 1);
    for (std::size_t D = 0; D <= degree; ++D) {
      // Polar: (M^T B M)_{ij} = b_ij for i < j.
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
          VectorOf<BinaryField> row(unknowns, k.zero());
          for (std::size_t u = 0; u < pairs.size(); ++u) {
            const auto [r, s] = pairs[u];
            row[u] = k.add(detail::product_coefficient(k, p, D, r, i, s, j),
                           detail::product_coefficient(k, p, D, s, i, r, j));
            if (D == 0 && r == i && s == j) row[u] = k.add(row[u], k.one());
          }
          push(std::move(row));
        }
      // Values: q(M e_j) = sum_r M_rj^2 c_r + sum_{r<s} M_rj M_sj b_rs = c_j.
      for (std::size_t j = 0; j < dim; ++j) {
        VectorOf<BinaryField> row(unknowns, k.zero());
        for (std::size_t u = 0; u < pairs.size(); ++u) {
          const auto [r, s] = pairs[u];
          row[u] = detail::product_coefficient(k, p, D, r, j, s, j);
        }
        for (std::size_t r = 0; r < dim; ++r) {
          auto c = detail::product_coefficient(k, p, D, r, j, r, j);
          if (D == 0 && r == j) c = k.add(c, k.one());
          row[pairs.size() + r] = c;
        }
        push(std::move(row));
      }
    }
  }
  auto system = zero_matrix(k, rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t u = 0; u < unknowns; ++u) system(i, u) = rows[i][u];
  return unknowns - rank(k, system);
}

}  // namespace sl2forms
