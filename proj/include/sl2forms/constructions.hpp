#pragma once

// The binomial forms and invariant forms on the Weyl module V(n) of SL_2,
// together with the closed-form expressions they are compared against.
// Entries are built as exact integers and then mapped into the target field.

#include <cstdint>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "forms.hpp"

namespace sl2forms {

template <Field K>
struct QuaternionDescriptor {
  typename K::value_type a;
  typename K::value_type b;
};

namespace detail {

inline void require_even_n(std::uint64_t n, const char* op) {
  if (n % 2 != 0) throw domain_error(std::string(op) + ": n must be even");
  if (n < 2) throw domain_error(std::string(op) + ": n must be at least 2");
}

template <Field K>
void require_odd_characteristic(const K& k, const char* op) {
  if (k.characteristic() == 2)
    throw domain_error(std::string(op) + ": characteristic 2 is not supported here");
}

template <Field K>
DiagonalForm<K> binomial_form(std::uint64_t n, const K& k, std::uint64_t parity) {
  DiagonalForm<K> d(k);
  for (std::uint64_t i = parity; i < n / 2; i += 2) d.entries.push_back(k.from_integer(binom(n, i)));
  return d;
}

template <Field K>
DiagonalForm<K> unary(const K& k, typename K::value_type x) {
  return DiagonalForm<K>(k, {std::move(x)});
}

}  // namespace detail

/// <C(n,i)> over odd i with 0 <= i < n/2.
template <Field K>
DiagonalForm<K> phi_odd(std::uint64_t n, const K& k) {
  detail::require_even_n(n, "phi_odd");
  detail::require_odd_characteristic(k, "phi_odd");
  return detail::binomial_form(n, k, 1);
}

/// <C(n,i)> over even i with 0 <= i < n/2.
template <Field K>
DiagonalForm<K> phi_even(std::uint64_t n, const K& k) {
  detail::require_even_n(n, "phi_even");
  detail::require_odd_characteristic(k, "phi_even");
  return detail::binomial_form(n, k, 0);
}

/// The SL_2-invariant form on V(n) in the basis e_m = C(n,m) x^(n-m) y^m:
/// f(e_l, e_m) = (-1)^l C(n,l) when l + m = n, else 0.
template <Field K>
GramForm<K> weyl_form_gram(std::uint64_t n, const K& k) {
  detail::require_even_n(n, "weyl_form_gram");
  detail::require_odd_characteristic(k, "weyl_form_gram");
  auto g = zero_matrix(k, n + 1, n + 1);
  for (std::uint64_t l = 0; l <= n; ++l) {
    const auto c = k.from_integer(binom(n, l));
    g(l, n - l) = (l % 2 == 0) ? c : k.neg(c);
  }
  return GramForm<K>(k, std::move(g));
}

/// V(n) is irreducible in characteristic p iff n + 1 = r p^s with 0 <= r < p.
inline bool is_weyl_irreducible(std::uint64_t n, std::uint64_t p) {
  if (!is_prime(p)) throw domain_error("is_weyl_irreducible: p must be prime");
  std::uint64_t m = n + 1;
  while (true) {
    if (m < p) return true;
    if (m % p != 0) return false;
    m /= p;
  }
}

/// <1, -a, -b, ab>.
template <Field K>
DiagonalForm<K> quaternion_norm(const K& k, const QuaternionDescriptor<K>& q) {
  detail::require_odd_characteristic(k, "quaternion_norm");
  return DiagonalForm<K>(k, {k.one(), k.neg(q.a), k.neg(q.b), k.mul(q.a, q.b)});
}

/// <-a, -b, ab>, the complement of <1> in the norm form.
template <Field K>
DiagonalForm<K> quaternion_norm_prime(const K& k, const QuaternionDescriptor<K>& q) {
  detail::require_odd_characteristic(k, "quaternion_norm_prime");
  return DiagonalForm<K>(k, {k.neg(q.a), k.neg(q.b), k.mul(q.a, q.b)});
}

/// The split quaternion algebra (1, 1), with norm <1, -1, -1, 1>.
template <Field K>
QuaternionDescriptor<K> split_quaternion(const K& k) {
  return {k.one(), k.one()};
}

/// <2> phi_odd Q  +  <C(n,n/2)>      if n = 0 mod 4
/// <2> phi_odd Q  +  <C(n,n/2)> Q'   if n = 2 mod 4
template <Field K>
DiagonalForm<K> theorem_a_rhs(std::uint64_t n, const QuaternionDescriptor<K>& q, const K& k) {
  detail::require_even_n(n, "theorem_a_rhs");
  const auto two = k.from_integer(2);
  const auto middle = detail::unary(k, k.from_integer(binom(n, n / 2)));
  auto main = scale(two, tensor(phi_odd(n, k), quaternion_norm(k, q)));
  if (n % 4 == 0) return orth_sum(main, middle);
  return orth_sum(main, tensor(middle, quaternion_norm_prime(k, q)));
}

/// phi_odd if n = 0 mod 4, <2 C(n,n/2)> + phi_odd if n = 2 mod 4.
template <Field K>
DiagonalForm<K> theorem_b_rhs(std::uint64_t n, const K& k) {
  detail::require_even_n(n, "theorem_b_rhs");
  if (n % 4 == 0) return phi_odd(n, k);
  return orth_sum(detail::unary(k, k.from_integer(2 * binom(n, n / 2))), phi_odd(n, k));
}

/// Closed form of the twisted invariant form for a nonsplit datum (a, b):
///   4 | n:       <2><1,-a>[<-b> phi_odd  + phi_even] + <C(n,n/2)>
///   n = 2 (4):   <2><1,-a>[<-b> phi_even + phi_odd ] + <-a C(n,n/2)>
template <Field K>
DiagonalForm<K> desc_summ_form(std::uint64_t n, const QuaternionDescriptor<K>& q, const K& k) {
  detail::require_even_n(n, "desc_summ_form");
  detail::require_odd_characteristic(k, "desc_summ_form");
  if (k.is_zero(q.a) || k.is_square(q.a))
    throw domain_error("desc_summ_form: a = " + k.to_string(q.a) + " is a square");
  const auto prefactor = scale(k.from_integer(2), DiagonalForm<K>(k, {k.one(), k.neg(q.a)}));
  const auto minus_b = detail::unary(k, k.neg(q.b));
  const auto c = k.from_integer(binom(n, n / 2));
  if (n % 4 == 0) {
    auto inner = orth_sum(tensor(minus_b, phi_odd(n, k)), phi_even(n, k));
    return orth_sum(tensor(prefactor, inner), detail::unary(k, c));
  }
  auto inner = orth_sum(tensor(minus_b, phi_even(n, k)), phi_odd(n, k));
  return orth_sum(tensor(prefactor, inner), detail::unary(k, k.neg(k.mul(q.a, c))));
}

}  // namespace sl2forms
