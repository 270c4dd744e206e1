#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sl2forms/char2.hpp"

using namespace sl2forms;

namespace {

QFormChar2<BinaryField> make(const BinaryField& k, std::vector<std::tuple<std::size_t, std::size_t, Bits>> polar,
                             std::vector<Bits> values) {
  auto b = zero_matrix(k, values.size(), values.size());
  for (auto [i, j, x] : polar) b(i, j) = b(j, i) = x;
  return QFormChar2<BinaryField>(k, std::move(b), std::move(values));
}

// q restricted to the span of some vectors.
QFormChar2<BinaryField> restrict_to(const QFormChar2<BinaryField>& q, const std::vector<VectorOf<BinaryField>>& vs) {
  const auto& k = q.field();
  auto b = zero_matrix(k, vs.size(), vs.size());
  std::vector<Bits> values;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    values.push_back(oracle::evaluate_polynomial(k, q.polar(), q.values(), vs[i]));
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (i != j) b(i, j) = q.polar(vs[i], vs[j]);
  }
  return QFormChar2<BinaryField>(k, std::move(b), std::move(values));
}

QFormChar2<BinaryField> random_qform(const BinaryField& k, std::size_t d, SplitMix& rng) {
  auto b = zero_matrix(k, d, d);
  std::vector<Bits> values;
  for (std::size_t i = 0; i < d; ++i) {
    values.push_back(k.element(rng.below(k.size())));
    for (std::size_t j = i + 1; j < d; ++j) b(i, j) = b(j, i) = k.element(rng.below(k.size()));
  }
  return QFormChar2<BinaryField>(k, std::move(b), std::move(values));
}

MatrixOf<BinaryField> random_invertible(const BinaryField& k, std::size_t d, SplitMix& rng) {
  MatrixOf<BinaryField> p(d, d, k.zero());
  do {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p(i, j) = k.element(rng.below(k.size()));
  } while (rank(k, p) < d);
  return p;
}

// The adapted basis really has the block shape its class claims.
void check_basis(const QFormChar2<BinaryField>& q) {
  const auto& k = q.field();
  const auto dec = nondefective_decompose(q);
  const auto& c = dec.cls;
  const auto& bs = dec.basis;
  ASSERT_EQ(bs.size(), q.dim());
  ASSERT_EQ(rank(k, from_columns(k, q.dim(), bs)), q.dim());
  const std::size_t first_pair = c.zeros + c.quasilinear;
  Bits sum = k.zero();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const Bits qi = oracle::evaluate_polynomial(k, q.polar(), q.values(), bs[i]);
    if (i < c.zeros) {
      ASSERT_TRUE(k.is_zero(qi));
    }
    if (c.quasilinear && i == c.zeros) {
      ASSERT_EQ(qi, k.one());
    }
    if (c.quasilinear && i >= first_pair && (i - first_pair) % 2 == 0) {
      ASSERT_TRUE(k.is_zero(qi));
    }
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const bool partner = i >= first_pair && j >= first_pair && (i - first_pair) / 2 == (j - first_pair) / 2 && i != j;
      ASSERT_EQ(q.polar(bs[i], bs[j]), partner ? k.one() : k.zero()) << i << " " << j;
    }
    if (i >= first_pair && (i - first_pair) % 2 == 0)
      sum = k.add(sum, k.mul(qi, oracle::evaluate_polynomial(k, q.polar(), q.values(), bs[i + 1])));
  }
  if (!c.quasilinear) {
    ASSERT_EQ(c.arf.value(), k.trace(sum));
  } else {
    ASSERT_FALSE(c.arf.has_value());
  }
}

// Number of m in [0, n] with C(n, m) odd, from the binomials themselves.
std::size_t odd_binomials(std::uint64_t n) {
  std::size_t c = 0;
  for (std::uint64_t m = 0; m <= n; ++m) c += mpz_odd_p(binom(n, m).get_mpz_t()) ? 1 : 0;
  return c;
}

}  // namespace

TEST(Decompose, Examples) {
  const BinaryField f2(1), f4(2);
  const auto h = make(f2, {{0, 1, Bits{1}}}, {Bits{0}, Bits{0}});
  EXPECT_EQ(classify(h), (Char2Class{0, 1, 0, 0u}));
  for (const auto& k : {f2, f4}) {
    const Bits t = trace_one_element(k);
    const auto anis = make(k, {{0, 1, k.one()}}, {k.one(), t});
    EXPECT_EQ(classify(anis), (Char2Class{0, 1, 0, 1u}));
    EXPECT_EQ(oracle::arf_by_counting(anis), 1u);
    EXPECT_EQ(oracle::arf_by_counting(make(k, {{0, 1, k.one()}}, {k.zero(), k.zero()})), 0u);
  }
  // [c] + [d]: q = (sqrt(c) x + sqrt(d) y)^2 has a one-dimensional kernel.
  const auto cd = make(f4, {}, {Bits{2}, Bits{3}});
  EXPECT_EQ(classify(cd), (Char2Class{1, 0, 1, std::nullopt}));
  EXPECT_EQ(classify(make(f4, {}, {Bits{0}, Bits{0}, Bits{0}})), (Char2Class{3, 0, 0, 0u}));
  // [1] + [1,1]: the unary vector absorbs the pair value.
  EXPECT_EQ(classify(make(f2, {{1, 2, Bits{1}}}, {Bits{1}, Bits{1}, Bits{1}})), (Char2Class{0, 1, 1, std::nullopt}));
  EXPECT_EQ(classify(QFormChar2<BinaryField>(f2, zero_matrix(f2, 0, 0), {})), (Char2Class{0, 0, 0, 0u}));
  EXPECT_THROW(make(f2, {{0, 0, Bits{1}}}, {Bits{0}}), domain_error);
  EXPECT_THROW(QFormChar2<PrimeField>(PrimeField(3), zero_matrix(PrimeField(3), 1, 1), {PrimeField(3).one()}),
               domain_error);
}

TEST(Decompose, StandardFormsRoundTrip) {
  for (unsigned e : {1u, 2u, 3u}) {
    const BinaryField k(e);
    for (std::size_t z = 0; z <= 2; ++z)
      for (std::size_t p = 0; p <= 3; ++p)
        for (unsigned ql : {0u, 1u})
          for (unsigned arf : {0u, 1u}) {
            if ((ql || p == 0) && arf) continue;
            const Char2Class c{z, p, ql, ql ? std::nullopt : std::optional<unsigned>(arf)};
            const auto s = standard_form(k, c);
            ASSERT_EQ(classify(s), c) << c.to_string();
            check_basis(s);
            // Classifying the nondefective part alone gives nondefective_part(c).
            const auto dec = nondefective_decompose(s);
            std::vector<VectorOf<BinaryField>> rest(dec.basis.begin() + c.zeros, dec.basis.end());
            ASSERT_EQ(classify(restrict_to(s, rest)), nondefective_part(c));
          }
  }
}

TEST(Decompose, ArfMatchesCounting) {
  SplitMix rng(41);
  for (unsigned e : {1u, 2u}) {
    const BinaryField k(e);
    for (int t = 0; t < 150; ++t) {
      const std::size_t d = 2 * (1 + rng.below(e == 1 ? 3 : 2));
      const auto q = random_qform(k, d, rng);
      const auto c = classify(q);
      check_basis(q);
      if (c.zeros == 0 && c.quasilinear == 0) {
        ASSERT_EQ(c.arf, oracle::arf_by_counting(q));
      } else {
        // Restrict to the pair block and count there.
        const auto dec = nondefective_decompose(q);
        std::vector<VectorOf<BinaryField>> pairs(dec.basis.begin() + c.zeros + c.quasilinear, dec.basis.end());
        if (!c.quasilinear && !pairs.empty()) {
          ASSERT_EQ(c.arf, oracle::arf_by_counting(restrict_to(q, pairs)));
        }
      }
    }
  }
}

TEST(Decompose, InvariantUnderBasisChange) {
  SplitMix rng(42);
  for (int t = 0; t < 200; ++t) {
    const BinaryField k(1 + static_cast<unsigned>(rng.below(3)));
    const std::size_t d = 1 + rng.below(7);
    const auto q = random_qform(k, d, rng);
    const auto p = random_invertible(k, d, rng);
    ASSERT_EQ(classify(q), classify(q.transform(p)));
  }
  // The evaluation routine agrees with the polynomial definition.
  const BinaryField f8(3);
  const auto q = random_qform(f8, 3, rng);
  for (const auto& v : oracle::all_vectors(f8, 3))
    ASSERT_EQ(q(v), oracle::evaluate_polynomial(f8, q.polar(), q.values(), v));
}

TEST(PhiChar2, Examples) {
  EXPECT_EQ(phi_forms_char2(2).rank_even, 1u);
  EXPECT_EQ(phi_forms_char2(4).rank_even, 1u);
  EXPECT_EQ(phi_forms_char2(6).rank_even, 2u);
  EXPECT_EQ(phi_forms_char2(16).rank_even, 1u);
  for (std::uint64_t n = 2; n <= 200; n += 2) {
    const auto f = phi_forms_char2(n);
    EXPECT_TRUE(f.odd_is_zero);
    std::uint64_t want = 0;
    for (std::uint64_t m = 0; m < n / 2; m += 2) want += mpz_odd_p(binom(n, m).get_mpz_t()) ? 1 : 0;
    EXPECT_EQ(f.rank_even, want);
  }
  EXPECT_THROW(phi_forms_char2(3), domain_error);
}

TEST(WeylChar2, HalfMiddleBinomial) {
  for (std::uint64_t n = 2; n <= 2000; n += 2) {
    const bool odd = mpz_odd_p(Integer(binom(n, n / 2) / 2).get_mpz_t());
    ASSERT_EQ(odd, is_power_of_two(n)) << n;
  }
}

// Radical law, checked against the class formula and independently against
// the rank of the polar form (number of odd C(n,m)).
TEST(WeylChar2, ClassMatchesPrediction) {
  for (unsigned e : {1u, 2u, 3u}) {
    const BinaryField k(e);
    for (std::uint64_t n = 2; n <= 64; n += 2) {
      const auto q = weyl_qform_char2(n, k);
      const auto c = classify(q);
      ASSERT_EQ(c, expected_char2_class(n)) << n << " over " << k.name();
      ASSERT_EQ(rank(k, q.polar()), odd_binomials(n)) << n;
      ASSERT_EQ(2 * c.pairs, odd_binomials(n)) << n;
      ASSERT_EQ(c.zeros, n + 1 - odd_binomials(n) - c.quasilinear) << n;
      if (n <= 16) check_basis(q);
    }
  }
  EXPECT_EQ(expected_char2_class(8), (Char2Class{6, 1, 1, std::nullopt}));
  EXPECT_EQ(expected_char2_class(6), (Char2Class{3, 2, 0, 0u}));
  EXPECT_EQ(expected_char2_class(2), (Char2Class{0, 1, 1, std::nullopt}));
}

// The nondefective part is hyperbolic when n is not a power of 2: count zeros.
TEST(WeylChar2, MetabolicPartByCounting) {
  for (unsigned e : {1u, 2u})
    for (std::uint64_t n : {6u, 10u, 12u, 14u, 18u}) {
      const BinaryField k(e);
      const auto q = weyl_qform_char2(n, k);
      const auto dec = nondefective_decompose(q);
      if (dec.cls.pairs > 4) continue;
      std::vector<VectorOf<BinaryField>> pairs(dec.basis.begin() + dec.cls.zeros, dec.basis.end());
      EXPECT_EQ(oracle::arf_by_counting(restrict_to(q, pairs)), 0u) << n;
    }
}

TEST(WeylChar2, Invariance) {
  SplitMix rng(43);
  for (unsigned e : {1u, 2u, 3u}) {
    const BinaryField k(e);
    for (int t = 0; t < 100; ++t) {
      const std::uint64_t n = 2 * (1 + rng.below(10));
      ASSERT_TRUE(check_invariance_char2(n, random_sl2(k, rng, all_elements(k)), k));
    }
  }
  const BinaryField f4(2);
  EXPECT_THROW(check_invariance_char2(4, TwoByTwo<BinaryField>{Bits{2}, Bits{0}, Bits{0}, Bits{2}}, f4), domain_error);
}

TEST(QPrimeChar2, Examples) {
  const BinaryField f2(1), f4(2);
  const auto q = quaternion_char2_qprime(Bits{1}, Bits{1}, f2);
  EXPECT_FALSE(q.split_extension);
  EXPECT_EQ(classify(q.form), (Char2Class{0, 1, 1, std::nullopt}));
  EXPECT_TRUE(quaternion_char2_qprime(Bits{0}, Bits{1}, f2).split_extension);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 1; b < 4; ++b) {
      const auto r = quaternion_char2_qprime(f4.element(a), f4.element(b), f4);
      EXPECT_EQ(r.form.values()[0], f4.one());
      EXPECT_EQ(classify(r.form), (Char2Class{0, 1, 1, std::nullopt}));
    }
  EXPECT_THROW(quaternion_char2_qprime(Bits{1}, Bits{0}, f2), domain_error);
}

TEST(TwistedChar2, MatchesPrediction) {
  for (unsigned e : {1u, 2u, 3u}) {
    const BinaryField k(e);
    for (std::uint64_t ai = 0; ai < k.size(); ++ai) {
      const Bits a = k.element(ai);
      if (k.trace(a) != 1) continue;
      for (std::uint64_t bi = 1; bi < k.size(); ++bi) {
        const Bits b = k.element(bi);
        for (std::uint64_t n : {2u, 4u, 6u, 8u, 10u, 12u}) {
          const auto t = twisted_form_char2(n, a, b, k);
          ASSERT_EQ(classify(t), expected_char2_class(n)) << n;
          ASSERT_EQ(classify(twisted_form_char2(n, a, b, k, FixedBasis::Kernel)), classify(t));
        }
        ASSERT_EQ(classify(twisted_form_char2(2, a, b, k)), classify(quaternion_char2_qprime(a, b, k).form));
      }
    }
    if (e == 1) {
      EXPECT_THROW(twisted_form_char2(2, Bits{0}, Bits{1}, k), domain_error);
    }
  }
}

TEST(InvariantSpaceChar2, Examples) {
  const BinaryField f2(1), f4(2);
  for (std::uint64_t n : {2u, 4u, 6u, 8u})
    EXPECT_EQ(invariant_qform_space_char2(n, f4, {}, InvarianceMode::Generic), 1u) << n;
  EXPECT_EQ(invariant_qform_space_char2(4, f4, all_elements(f4)), 1u);
  // SL_2(F_2) alone fixes a second form on V(6).
  EXPECT_GT(invariant_qform_space_char2(6, f2, all_elements(f2)), 1u);
  EXPECT_EQ(invariant_qform_space_char2(6, f2, {}, InvarianceMode::Generic), 1u);
}

TEST(Predicate, IrreducibleHasForm) {
  EXPECT_TRUE(irreducible_has_invariant_qform(6, 2));
  EXPECT_FALSE(irreducible_has_invariant_qform(8, 2));
  EXPECT_FALSE(irreducible_has_invariant_qform(2, 2));
  EXPECT_TRUE(irreducible_has_invariant_qform(4, 3));
  EXPECT_FALSE(irreducible_has_invariant_qform(3, 5));
  for (std::uint64_t n = 2; n <= 128; n += 2)
    EXPECT_EQ(irreducible_has_invariant_qform(n, 2), expected_char2_class(n).quasilinear == 0);
}
