#pragma once

// The action of GL_2 on V(n), invariant-form solution spaces, and the
// Galois descent that produces the invariant form of a nonsplit twist.
//
// The twist is the fixed space of sigma = rho(beta) o iota acting on
// V(n) (x) K, where K = k(sqrt a) (or the Artin-Schreier extension in
// characteristic 2), iota is the nontrivial automorphism of K, and beta is
// the SL_2 representative of the PGL_2 class of g = [[0, b], [1, 0]]. Since
// rho is homogeneous of degree n, rho(beta) = det(g)^(-n/2) rho(g) for even
// n, so no square root of -b is needed.

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "binomial.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "forms.hpp"
#include "matrix.hpp"

namespace sl2forms {

/// [[a, b], [c, d]] acting on column vectors; x = (1,0)^T, y = (0,1)^T.
template <Field K>
struct TwoByTwo {
  using value_type = typename K::value_type;
  value_type a, b, c, d;

  value_type det(const K& k) const { return k.sub(k.mul(a, d), k.mul(b, c)); }

  static TwoByTwo identity(const K& k) { return {k.one(), k.zero(), k.zero(), k.one()}; }
  /// Upper unipotent [[1, t], [0, 1]].
  static TwoByTwo upper(const K& k, value_type t) { return {k.one(), t, k.zero(), k.one()}; }
  /// Lower unipotent [[1, 0], [t, 1]].
  static TwoByTwo lower(const K& k, value_type t) { return {k.one(), k.zero(), t, k.one()}; }
  static TwoByTwo torus(const K& k, value_type t) { return {t, k.zero(), k.zero(), k.inv(t)}; }

  TwoByTwo times(const K& k, const TwoByTwo& o) const {
    return {k.add(k.mul(a, o.a), k.mul(b, o.c)), k.add(k.mul(a, o.b), k.mul(b, o.d)),
            k.add(k.mul(c, o.a), k.mul(d, o.c)), k.add(k.mul(c, o.b), k.mul(d, o.d))};
  }
};

namespace detail {

template <Field K>
std::vector<typename K::value_type> powers(const K& k, const typename K::value_type& x,
                                           std::uint64_t n) {
  std::vector<typename K::value_type> out{k.one()};
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(k.mul(out.back(), x));
  return out;
}

// Pascal triangle rows 0..n mapped into k.
template <Field K>
std::vector<std::vector<typename K::value_type>> pascal(const K& k, std::uint64_t n) {
  std::vector<std::vector<typename K::value_type>> rows;
  for (std::uint64_t r = 0; r <= n; ++r) {
    std::vector<typename K::value_type> row;
    for (std::uint64_t c = 0; c <= r; ++c) row.push_back(k.from_integer(binom(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Matrix of rho(g) on V(n) in the basis e_0..e_n. Entry (l, m) is
///   sum_i C(l,i) C(n-l,m-i) g11^(n-m-l+i) g21^(l-i) g12^(m-i) g22^i,
/// an integer polynomial in the entries of g, so it specializes to every
/// characteristic. Any nonsingular g is accepted.
template <Field K>
MatrixOf<K> sl2_action_matrix(std::uint64_t n, const TwoByTwo<K>& g, const K& k) {
  if (k.is_zero(g.det(k))) throw domain_error("sl2_action_matrix: singular matrix");
  const auto c = detail::pascal(k, n);
  const auto p11 = detail::powers(k, g.a, n), p12 = detail::powers(k, g.b, n),
             p21 = detail::powers(k, g.c, n), p22 = detail::powers(k, g.d, n);
  auto m = zero_matrix(k, n + 1, n + 1);
  for (std::uint64_t l = 0; l <= n; ++l)
    for (std::uint64_t col = 0; col <= n; ++col) {
      auto s = k.zero();
      for (std::uint64_t i = 0; i <= std::min(l, col); ++i) {
        const std::uint64_t j = l - i;
        if (j > n - col) continue;
        auto term = k.mul(c[l][i], c[n - l][col - i]);
        term = k.mul(term, k.mul(p11[n - col - j], p21[j]));
        term = k.mul(term, k.mul(p12[col - i], p22[i]));
        s = k.add(s, term);
      }
      m(l, col) = s;
    }
  return m;
}

/// rho of the SL_2 representative of the class of g in PGL_2, i.e.
/// det(g)^(-n/2) rho(g) for even n.
template <Field K>
MatrixOf<K> projective_action_matrix(std::uint64_t n, const TwoByTwo<K>& g, const K& k) {
  if (n % 2 != 0) throw domain_error("projective_action_matrix: n must be even");
  const auto s = power(k, k.inv(g.det(k)), n / 2);
  return scale(k, s, sl2_action_matrix(n, g, k));
}

/// M^T F M == F for M = rho(g) and F the Weyl form.
template <Field K>
bool check_invariance(std::uint64_t n, const TwoByTwo<K>& g, const K& k) {
  if (!k.equal(g.det(k), k.one())) throw domain_error("check_invariance: det(g) != 1");
  const auto m = sl2_action_matrix(n, g, k);
  const auto f = weyl_form_gram(n, k).gram();
  return matrices_equal(k, congruence(k, f, m), f);
}

// ---------------------------------------------------------------------------
// Random SL_2 elements: products of up to six unipotents with parameters
// drawn from a caller-supplied list.

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish integer in [0, bound); the modulo keeps results identical
  /// across standard library implementations.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

template <Field K>
TwoByTwo<K> random_sl2(const K& k, SplitMix& rng,
                       const std::vector<typename K::value_type>& params) {
  if (params.empty()) throw domain_error("random_sl2: empty parameter list");
  auto g = TwoByTwo<K>::identity(k);
  const auto factors = 1 + rng.below(6);
  for (std::uint64_t i = 0; i < factors; ++i) {
    const auto& t = params[rng.below(params.size())];
    g = g.times(k, rng.below(2) == 0 ? TwoByTwo<K>::upper(k, t) : TwoByTwo<K>::lower(k, t));
  }
  return g;
}

/// {+-1, +-2, +-3, +-1/2, +-1/3}.
inline std::vector<Rational> small_rationals() {
  std::vector<Rational> out;
  for (int v : {1, 2, 3}) {
    out.emplace_back(v);
    out.emplace_back(-v);
    if (v > 1) {
      out.emplace_back(1, v);
      out.emplace_back(-1, v);
    }
  }
  for (auto& q : out) q.canonicalize();
  return out;
}

/// Every element of a finite field, in index order.
template <class K>
std::vector<typename K::value_type> all_elements(const K& k) {
  std::vector<typename K::value_type> out;
  for (std::uint64_t i = 0; i < k.size(); ++i) out.push_back(k.element(i));
  return out;
}

// ---------------------------------------------------------------------------
// Invariant-form solution spaces.

/// A generator family acting on V(n): each entry is a polynomial in a
/// parameter t, stored as coefficient matrices (index = power of t). A
/// constant matrix is a one-term polynomial.
template <Field K>
using PolynomialMatrix = std::vector<MatrixOf<K>>;

enum class InvarianceMode {
  Sampled,  // invariance under rho(x(t)), rho(y(t)) for t in the sample
  Generic,  // polynomial identity in t (invariance under the algebraic group)
};

/// rho(x(t)) and rho(y(t)) as polynomials in t:
///   rho(x(t))[l][l+d] = C(n-l, d) t^d,   rho(y(t))[m+d][m] = C(m+d, d) t^d.
template <Field K>
std::pair<PolynomialMatrix<K>, PolynomialMatrix<K>> unipotent_polynomials(std::uint64_t n,
                                                                          const K& k) {
  PolynomialMatrix<K> x, y;
  for (std::uint64_t d = 0; d <= n; ++d) {
    auto xd = zero_matrix(k, n + 1, n + 1), yd = zero_matrix(k, n + 1, n + 1);
    for (std::uint64_t l = 0; l + d <= n; ++l) {
      xd(l, l + d) = k.from_integer(binom(n - l, d));
      yd(l + d, l) = k.from_integer(binom(l + d, d));
    }
    x.push_back(std::move(xd));
    y.push_back(std::move(yd));
  }
  return {std::move(x), std::move(y)};
}

template <Field K>
std::vector<PolynomialMatrix<K>> invariance_generators(
    std::uint64_t n, const K& k, const std::vector<typename K::value_type>& sample,
    InvarianceMode mode) {
  std::vector<PolynomialMatrix<K>> gens;
  if (mode == InvarianceMode::Generic) {
    auto [x, y] = unipotent_polynomials(n, k);
    gens.push_back(std::move(x));
    gens.push_back(std::move(y));
    return gens;
  }
  if (sample.empty()) throw domain_error("invariant_form_space: empty sample");
  for (const auto& t : sample) {
    gens.push_back({sl2_action_matrix(n, TwoByTwo<K>::upper(k, t), k)});
    gens.push_back({sl2_action_matrix(n, TwoByTwo<K>::lower(k, t), k)});
  }
  return gens;
}

namespace detail {

// Coefficient of t^D in p_{ri}(t) * p_{sj}(t).
template <Field K>
typename K::value_type product_coefficient(const K& k, const PolynomialMatrix<K>& p,
                                           std::size_t D, std::size_t r, std::size_t i,
                                           std::size_t s, std::size_t j) {
  auto acc = k.zero();
  for (std::size_t d1 = 0; d1 < p.size() && d1 <= D; ++d1) {
    const std::size_t d2 = D - d1;
    if (d2 >= p.size()) continue;
    if (k.is_zero(p[d1](r, i)) || k.is_zero(p[d2](s, j))) continue;
    acc = k.add(acc, k.mul(p[d1](r, i), p[d2](s, j)));
  }
  return acc;
}

}  // namespace detail

template <Field K>
struct FormSpace {
  std::size_t dimension = 0;
  std::vector<MatrixOf<K>> basis;  // symmetric Gram matrices
};

/// Symmetric B with M^T B M = B for every generator M.
template <Field K>
FormSpace<K> invariant_form_space(std::uint64_t n, const K& k,
                                  const std::vector<typename K::value_type>& sample,
                                  InvarianceMode mode = InvarianceMode::Sampled) {
  detail::require_even_n(n, "invariant_form_space");
  detail::require_odd_characteristic(k, "invariant_form_space");
  if (mode == InvarianceMode::Sampled && sample.size() < 3)
    throw domain_error("invariant_form_space: need at least 3 sample points");
  const std::size_t dim = n + 1;
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = r; s < dim; ++s) unknowns.emplace_back(r, s);

  std::vector<VectorOf<K>> rows;
  for (const auto& p : invariance_generators(n, k, sample, mode)) {
    const std::size_t degree = 2 * (p.size() - 1);
    for (std::size_t D = 0; D <= degree; ++D)
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
          VectorOf<K> row(unknowns.size(), k.zero());
          bool nonzero = false;
          for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const auto [r, s] = unknowns[u];
            auto c = detail::product_coefficient(k, p, D, r, i, s, j);
            if (r != s) c = k.add(c, detail::product_coefficient(k, p, D, s, i, r, j));
            if (D == 0 && r == i && s == j) c = k.sub(c, k.one());
            row[u] = c;
            nonzero = nonzero || !k.is_zero(c);
          }
          if (nonzero) rows.push_back(std::move(row));
        }
  }
  auto system = zero_matrix(k, rows.size(), unknowns.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t u = 0; u < unknowns.size(); ++u) system(i, u) = rows[i][u];

  FormSpace<K> out;
  for (const auto& v : kernel(k, system)) {
    auto b = zero_matrix(k, dim, dim);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto [r, s] = unknowns[u];
      b(r, s) = v[u];
      b(s, r) = v[u];
    }
    out.basis.push_back(std::move(b));
  }
  out.dimension = out.basis.size();
  return out;
}

// ---------------------------------------------------------------------------
// Semilinear descent.

enum class FixedBasis {
  Traces,  // w + sigma(w) for w in {e_m, g e_m}, m <= n/2 (block-diagonal result)
  Kernel,  // echelon basis of ker(sigma - 1) over the base field
};

/// The descent datum sigma = A o iota on K^(n+1) for a quadratic extension
/// K/k and A = rho(beta) with entries in k.
template <QuadraticExtensionField E>
class DescentDatum {
 public:
  using Base = typename E::base_type;
  using value_type = typename E::value_type;
  using Vector = std::vector<value_type>;

  /// A = rho(beta) for the class of [[0, b], [1, 0]] in PGL_2(k).
  DescentDatum(E ext, std::uint64_t n, const typename Base::value_type& b)
      : ext_(std::move(ext)), n_(n) {
    const Base& k = ext_.base();
    if (n % 2 != 0) throw domain_error("DescentDatum: n must be even");
    if (k.is_zero(b)) throw domain_error("DescentDatum: b must be nonzero");
    const TwoByTwo<Base> eta{k.zero(), b, k.one(), k.zero()};
    action_ = projective_action_matrix(n, eta, k);
  }

  const E& extension() const { return ext_; }
  std::uint64_t n() const { return n_; }
  std::size_t dim() const { return n_ + 1; }
  const MatrixOf<Base>& action() const { return action_; }

  Vector apply(const Vector& v) const {
    const Base& k = ext_.base();
    Vector out(dim(), ext_.zero());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (!k.is_zero(action_(i, j)))
          out[i] = ext_.add(out[i], ext_.mul(ext_.embed(action_(i, j)), ext_.conj(v[j])));
    return out;
  }

  Vector basis_vector(std::size_t m, const value_type& scalar) const {
    Vector v(dim(), ext_.zero());
    v[m] = scalar;
    return v;
  }

  /// Base-field coordinates (x_0..x_n, y_0..y_n) of v = sum (x_i + y_i g) e_i.
  std::vector<typename Base::value_type> coordinates(const Vector& v) const {
    std::vector<typename Base::value_type> out(2 * dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      auto [x, y] = ext_.components(v[i]);
      out[i] = x;
      out[dim() + i] = y;
    }
    return out;
  }

  Vector from_coordinates(const std::vector<typename Base::value_type>& c) const {
    Vector v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = ext_.make(c[i], c[dim() + i]);
    return v;
  }

  /// sigma as a base-linear map on the 2(n+1) coordinates.
  MatrixOf<Base> coordinate_matrix() const {
    const Base& k = ext_.base();
    std::vector<VectorOf<Base>> cols;
    for (const auto& scalar : {ext_.one(), ext_.generator()})
      for (std::size_t m = 0; m < dim(); ++m) cols.push_back(coordinates(apply(basis_vector(m, scalar))));
    // Column order above is (e_0..e_n, g e_0..g e_n), matching coordinates().
    return from_columns(k, 2 * dim(), cols);
  }

  /// A base-field basis of {v : sigma(v) = v}; always n + 1 vectors.
  std::vector<Vector> fixed_basis(FixedBasis choice = FixedBasis::Traces) const {
    const Base& k = ext_.base();
    std::vector<Vector> out;
    if (choice == FixedBasis::Kernel) {
      auto s = coordinate_matrix();
      for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) = k.sub(s(i, i), k.one());
      for (const auto& c : kernel(k, s)) out.push_back(from_coordinates(c));
    } else {
      IncrementalSpan<Base> span(k);
      for (std::size_t m = 0; m <= n_ / 2; ++m)
        for (const auto& scalar : {ext_.one(), ext_.generator()}) {
          const auto w = basis_vector(m, scalar);
          const auto sw = apply(w);
          Vector t(dim());
          for (std::size_t i = 0; i < dim(); ++i) t[i] = ext_.add(w[i], sw[i]);
          if (span.insert(coordinates(t))) out.push_back(std::move(t));
        }
    }
    if (out.size() != dim())
      throw internal_error("descent: fixed space has dimension " + std::to_string(out.size()) +
                           ", expected " + std::to_string(dim()));
    for (const auto& v : out)
      if (apply(v) != v) throw internal_error("descent: basis vector not fixed by sigma");
    return out;
  }

 private:
  E ext_;
  std::uint64_t n_;
  MatrixOf<Base> action_;
};

/// Restriction of a symmetric matrix (entries in the base field) to a set of
/// sigma-fixed vectors; every value must land back in the base field.
template <QuadraticExtensionField E>
MatrixOf<typename E::base_type> restrict_bilinear(
    const E& ext, const MatrixOf<typename E::base_type>& gram,
    const std::vector<typename DescentDatum<E>::Vector>& basis) {
  const auto& k = ext.base();
  const std::size_t d = basis.size();
  std::vector<std::tuple<std::size_t, std::size_t, typename E::value_type>> support;
  for (std::size_t r = 0; r < gram.rows(); ++r)
    for (std::size_t c = 0; c < gram.cols(); ++c)
      if (!k.is_zero(gram(r, c))) support.emplace_back(r, c, ext.embed(gram(r, c)));
  auto out = zero_matrix(k, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      auto s = ext.zero();
      for (const auto& [r, c, g] : support)
        if (!ext.is_zero(basis[i][r]) && !ext.is_zero(basis[j][c]))
          s = ext.add(s, ext.mul(g, ext.mul(basis[i][r], basis[j][c])));
      auto [x, y] = ext.components(s);
      if (!k.is_zero(y)) throw internal_error("descent: restricted form left the base field");
      out(i, j) = x;
      out(j, i) = x;
    }
  return out;
}

/// The invariant form of the twisted group attached to the nonsplit
/// quaternion algebra (a, b) over Q, computed as the restriction of the
/// Weyl form to the descended Q-structure of V(n) (x) Q(sqrt a).
inline GramForm<RationalField> twisted_form(std::uint64_t n, const Rational& a, const Rational& b,
                                            FixedBasis choice = FixedBasis::Traces) {
  detail::require_even_n(n, "twisted_form");
  const RationalField q;
  if (is_rational_square(a)) throw domain_error("twisted_form: a = " + a.get_str() + " is a square");
  const QuadraticRationalField ext(q, a);
  const DescentDatum<QuadraticRationalField> datum(ext, n, b);
  const auto basis = datum.fixed_basis(choice);
  return GramForm<RationalField>(q, restrict_bilinear(ext, weyl_form_gram(n, q).gram(), basis));
}

}  // namespace sl2forms
