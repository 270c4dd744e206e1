#pragma once

// Symmetric bilinear forms on based vector spaces, in characteristic != 2
// for diagonalization. Diagonal forms keep their literal coefficients
// (zero entries allowed); Gram forms carry a full symmetric matrix.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "matrix.hpp"

namespace sl2forms {

template <Field K>
struct DiagonalForm {
  using value_type = typename K::value_type;

  K field;
  std::vector<value_type> entries;

  DiagonalForm(K k, std::vector<value_type> e) : field(std::move(k)), entries(std::move(e)) {}
  explicit DiagonalForm(K k) : field(std::move(k)) {}

  std::size_t dim() const { return entries.size(); }
  std::size_t radical_dim() const {
    std::size_t zeros = 0;
    for (const auto& x : entries) zeros += field.is_zero(x) ? 1 : 0;
    return zeros;
  }
};

template <Field K>
class GramForm {
 public:
  using value_type = typename K::value_type;

  GramForm(K k, MatrixOf<K> gram) : field_(std::move(k)), gram_(std::move(gram)) {
    if (!is_symmetric(field_, gram_)) throw domain_error("GramForm: matrix is not symmetric");
  }

  const K& field() const { return field_; }
  const MatrixOf<K>& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }

  value_type pair(const VectorOf<K>& u, const VectorOf<K>& v) const {
    auto gv = apply(field_, gram_, v);
    auto s = field_.zero();
    for (std::size_t i = 0; i < u.size(); ++i) s = field_.add(s, field_.mul(u[i], gv[i]));
    return s;
  }

 private:
  K field_;
  MatrixOf<K> gram_;
};

template <Field K>
GramForm<K> to_gram(const DiagonalForm<K>& d) {
  auto g = zero_matrix(d.field, d.dim(), d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) g(i, i) = d.entries[i];
  return GramForm<K>(d.field, std::move(g));
}

template <Field K>
DiagonalForm<K> diagonal_form(const K& k, const std::vector<Integer>& entries) {
  DiagonalForm<K> d(k);
  for (const auto& z : entries) d.entries.push_back(k.from_integer(z));
  return d;
}

/// Gram [[0,1],[1,0]].
template <Field K>
GramForm<K> hyperbolic_plane(const K& k) {
  auto g = zero_matrix(k, 2, 2);
  g(0, 1) = k.one();
  g(1, 0) = k.one();
  return GramForm<K>(k, std::move(g));
}

namespace detail {
template <Field K>
void require_same_field(const K& a, const K& b, const char* op) {
  if (!(a == b)) throw domain_error(std::string(op) + ": field mismatch (" + a.name() +
                                    " vs " + b.name() + ")");
}
}  // namespace detail

template <Field K>
DiagonalForm<K> orth_sum(const DiagonalForm<K>& f1, const DiagonalForm<K>& f2) {
  detail::require_same_field(f1.field, f2.field, "orth_sum");
  auto out = f1;
  out.entries.insert(out.entries.end(), f2.entries.begin(), f2.entries.end());
  return out;
}

template <Field K>
GramForm<K> orth_sum(const GramForm<K>& f1, const GramForm<K>& f2) {
  detail::require_same_field(f1.field(), f2.field(), "orth_sum");
  return GramForm<K>(f1.field(), block_diagonal(f1.field(), f1.gram(), f2.gram()));
}

/// c * f. A zero scalar is rejected unless allow_zero is set.
template <Field K>
DiagonalForm<K> scale(const typename K::value_type& c, const DiagonalForm<K>& f,
                      bool allow_zero = false) {
  if (!allow_zero && f.field.is_zero(c)) throw domain_error("scale: zero scalar");
  auto out = f;
  for (auto& x : out.entries) x = f.field.mul(c, x);
  return out;
}

template <Field K>
GramForm<K> scale(const typename K::value_type& c, const GramForm<K>& f,
                  bool allow_zero = false) {
  if (!allow_zero && f.field().is_zero(c)) throw domain_error("scale: zero scalar");
  return GramForm<K>(f.field(), sl2forms::scale(f.field(), c, f.gram()));
}

template <Field K>
DiagonalForm<K> tensor(const DiagonalForm<K>& f1, const DiagonalForm<K>& f2) {
  detail::require_same_field(f1.field, f2.field, "tensor");
  DiagonalForm<K> out(f1.field);
  for (const auto& x : f1.entries)
    for (const auto& y : f2.entries) out.entries.push_back(f1.field.mul(x, y));
  return out;
}

template <Field K>
GramForm<K> tensor(const GramForm<K>& f1, const GramForm<K>& f2) {
  detail::require_same_field(f1.field(), f2.field(), "tensor");
  return GramForm<K>(f1.field(), kronecker(f1.field(), f1.gram(), f2.gram()));
}

/// A diagonal form congruent to a Gram form, with the witness P such that
/// P^T G P = diag(form.entries).
template <Field K>
struct Diagonalization {
  DiagonalForm<K> form;
  MatrixOf<K> basis;
};

/// Congruence diagonalization by symmetric row/column operations. When the
/// remaining block has zero diagonal but some b(v, w) != 0, v is replaced by
/// v + w so that b(v, v) = 2 b(v, w) becomes a usable pivot.
template <Field K>
Diagonalization<K> diagonalize(const GramForm<K>& f) {
  const K& k = f.field();
  if (k.characteristic() == 2)
    throw domain_error("diagonalize: characteristic 2 (use the char-2 quadratic forms)");
  const std::size_t n = f.dim();
  auto a = f.gram();
  auto p = identity_matrix(k, n);

  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(p(r, i), p(r, j));
  };
  // v_dst <- v_dst + c * v_src, applied as a congruence.
  auto add_multiple = [&](std::size_t dst, std::size_t src, const typename K::value_type& c) {
    for (std::size_t r = 0; r < n; ++r) a(r, dst) = k.add(a(r, dst), k.mul(c, a(r, src)));
    for (std::size_t col = 0; col < n; ++col) a(dst, col) = k.add(a(dst, col), k.mul(c, a(src, col)));
    for (std::size_t r = 0; r < n; ++r) p(r, dst) = k.add(p(r, dst), k.mul(c, p(r, src)));
  };

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pivot = n;
    for (std::size_t j = i; j < n && pivot == n; ++j)
      if (!k.is_zero(a(j, j))) pivot = j;
    if (pivot == n) {
      for (std::size_t j = i; j < n && pivot == n; ++j)
        for (std::size_t l = j + 1; l < n; ++l)
          if (!k.is_zero(a(j, l))) {
            add_multiple(j, l, k.one());
            pivot = j;
            break;
          }
    }
    if (pivot == n) break;  // remaining block is identically zero
    swap_index(i, pivot);
    const auto inv = k.inv(a(i, i));
    for (std::size_t r = i + 1; r < n; ++r)
      if (!k.is_zero(a(r, i))) add_multiple(r, i, k.neg(k.mul(a(r, i), inv)));
  }

  DiagonalForm<K> d(k);
  for (std::size_t i = 0; i < n; ++i) d.entries.push_back(a(i, i));
  return {std::move(d), std::move(p)};
}

template <Field K>
std::size_t radical_dim(const GramForm<K>& f) {
  return f.dim() - rank(f.field(), f.gram());
}

template <Field K>
std::size_t radical_dim(const DiagonalForm<K>& f) {
  return f.radical_dim();
}

template <Field K>
DiagonalForm<K> nondegenerate_part(const DiagonalForm<K>& f) {
  DiagonalForm<K> out(f.field);
  for (const auto& x : f.entries)
    if (!f.field.is_zero(x)) out.entries.push_back(x);
  return out;
}

template <Field K>
DiagonalForm<K> nondegenerate_part(const GramForm<K>& f) {
  return nondegenerate_part(diagonalize(f).form);
}

/// "<a1,a2,...>" with the field's element encoding.
template <Field K>
std::string to_string(const DiagonalForm<K>& f) {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < f.dim(); ++i) os << (i ? "," : "") << f.field.to_string(f.entries[i]);
  os << '>';
  return os.str();
}

template <Field K>
std::string to_string(const GramForm<K>& f) {
  return to_string(f.field(), f.gram());
}

/// Parses "<a1,...,ad>"; "<>" is the zero-dimensional form.
template <Field K>
DiagonalForm<K> parse_diagonal_form(const K& k, const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    throw parse_error("diagonal form must look like <a,b,...>: '" + text + "'");
  DiagonalForm<K> d(k);
  const std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return d;
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    const std::string item = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
    if (item.empty()) throw parse_error("empty entry in '" + text + "'");
    d.entries.push_back(k.parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return d;
}

}  // namespace sl2forms
