#include <gtest/gtest.h>

#include <random>

#include "sl2forms/constructions.hpp"
#include "sl2forms/forms.hpp"
#include "sl2forms/local_invariants.hpp"

using namespace sl2forms;

namespace {

const RationalField Q;

DiagonalForm<RationalField> diag(std::initializer_list<long> xs) {
  DiagonalForm<RationalField> d(Q);
  for (long x : xs) d.entries.emplace_back(x);
  return d;
}

template <Field K, class Gen>
GramForm<K> random_symmetric(const K& k, std::size_t d, Gen gen) {
  auto g = zero_matrix(k, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) g(i, j) = g(j, i) = gen();
  return GramForm<K>(k, std::move(g));
}

template <Field K>
void check_witness(const GramForm<K>& f) {
  const auto& k = f.field();
  const auto dz = diagonalize(f);
  auto want = zero_matrix(k, f.dim(), f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) want(i, i) = dz.form.entries[i];
  ASSERT_TRUE(matrices_equal(k, congruence(k, f.gram(), dz.basis), want));
  ASSERT_FALSE(k.is_zero(determinant(k, dz.basis)));
  ASSERT_EQ(dz.form.radical_dim(), radical_dim(f));
}

}  // namespace

TEST(OrthSum, Examples) {
  EXPECT_EQ(to_string(orth_sum(diag({1}), diag({15}))), "<1,15>");
  EXPECT_EQ(to_string(orth_sum(diag({1, 2}), DiagonalForm<RationalField>(Q))), "<1,2>");
  const auto hh = orth_sum(hyperbolic_plane(Q), hyperbolic_plane(Q));
  EXPECT_TRUE(isometric(hh, diag({1, -1, 1, -1})));
  EXPECT_EQ(radical_dim(orth_sum(diag({1, 0}), diag({0, 0, 3}))), 3u);
  EXPECT_THROW(orth_sum(DiagonalForm<PrimeField>(PrimeField(3)), DiagonalForm<PrimeField>(PrimeField(5))),
               domain_error);
}

TEST(Scale, Examples) {
  EXPECT_EQ(to_string(scale(Rational(2), diag({1, 15}))), "<2,30>");
  EXPECT_THROW(scale(Rational(0), diag({1})), domain_error);
  EXPECT_EQ(to_string(scale(Rational(0), diag({1}), true)), "<0>");
  // <-2> Q' for Q = (a, b): <2a, 2b, -2ab>.
  const QuaternionDescriptor<RationalField> qd{Rational(-1), Rational(-1)};
  EXPECT_EQ(to_string(scale(Rational(-2), quaternion_norm_prime(Q, qd))), "<-2,-2,-2>");
}

TEST(Tensor, Examples) {
  EXPECT_EQ(to_string(tensor(diag({1, -3}), diag({-5}))), "<-5,15>");
  EXPECT_EQ(to_string(tensor(diag({1}), diag({4, 6}))), "<4,6>");
  const QuaternionDescriptor<RationalField> qd{Rational(2), Rational(3)};
  EXPECT_EQ(to_string(tensor(diag({1, -2}), diag({1, -3}))), "<1,-3,-2,6>");
  EXPECT_TRUE(isometric(quaternion_norm(Q, qd), tensor(diag({1, -2}), diag({1, -3}))));
  // Gram tensor agrees with the diagonal one.
  EXPECT_TRUE(isometric(tensor(to_gram(diag({1, 2})), hyperbolic_plane(Q)), diag({1, -1, 2, -2})));
}

TEST(Diagonalize, Examples) {
  const auto h = diagonalize(hyperbolic_plane(Q)).form;
  EXPECT_TRUE(isometric(h, diag({1, -1})));
  EXPECT_EQ(to_string(diagonalize(to_gram(diag({3, 0, 5}))).form), "<3,5,0>");  // zero pivots go last
  // f for n = 2 is [[0,0,1],[0,-2,0],[1,0,0]] = H + <-2>, discriminant class 2.
  const auto f2 = weyl_form_gram(2, Q);
  EXPECT_EQ(to_string(f2), "[[0,0,1],[0,-2,0],[1,0,0]]");
  EXPECT_TRUE(isometric(f2, orth_sum(diag({1, -1}), diag({-2}))));
  const auto rec = invariant_record(f2);
  EXPECT_EQ(std::get<RationalRecord>(rec.data).disc, 2);
  EXPECT_THROW(diagonalize(GramForm<BinaryField>(BinaryField(1), identity_matrix(BinaryField(1), 2))),
               domain_error);
}

TEST(Diagonalize, CongruenceWitnessRandom) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng() % 8;
    check_witness(random_symmetric(Q, d, [&] { return Rational(static_cast<long>(rng() % 7) - 3); }));
    const PrimeField k(std::vector<std::uint64_t>{3, 5, 7, 11, 13}[rng() % 5]);
    check_witness(random_symmetric(k, d, [&] { return k.from_u64(rng() % 3 == 0 ? 0 : rng()); }));
  }
}

// Records of f and of its diagonalization coincide (200 random cases).
TEST(Diagonalize, PreservesRecords) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng() % 8;
    const auto f = random_symmetric(Q, d, [&] { return Rational(static_cast<long>(rng() % 9) - 4); });
    const auto d1 = diagonalize(f).form;
    EXPECT_TRUE(records_equivalent(invariant_record(f), invariant_record(d1)));
    // Diagonalizing an independent congruent copy lands in the same class.
    auto p = identity_matrix(Q, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) p(i, j) = Rational(static_cast<long>(rng() % 5) - 2);
    const GramForm<RationalField> moved(Q, congruence(Q, f.gram(), p));
    EXPECT_TRUE(isometric(moved, f));
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng() % 8;
    const PrimeField k(std::vector<std::uint64_t>{3, 5, 7}[rng() % 3]);
    const auto f = random_symmetric(k, d, [&] { return k.from_u64(rng()); });
    EXPECT_TRUE(records_equivalent(invariant_record(f), invariant_record(diagonalize(f).form)));
  }
}

TEST(Diagonalize, ZeroDiagonalPivot) {
  // Every diagonal entry zero: the v <- v + w step must kick in.
  auto g = zero_matrix(Q, 3, 3);
  g(0, 1) = g(1, 0) = Rational(1);
  g(1, 2) = g(2, 1) = Rational(2);
  const GramForm<RationalField> f(Q, g);
  check_witness(f);
  EXPECT_EQ(radical_dim(f), 1u);
}

TEST(Radical, Examples) {
  for (std::uint64_t n = 4; n <= 40; n += 2) EXPECT_EQ(radical_dim(phi_odd(n, Q)), 0u);
  EXPECT_EQ(radical_dim(GramForm<RationalField>(Q, zero_matrix(Q, 4, 4))), 4u);
  const PrimeField f3(3), f5(5);
  const auto d = diagonal_form(f3, {1, 6});
  EXPECT_EQ(radical_dim(d), 1u);
  EXPECT_EQ(to_string(nondegenerate_part(diag({1, 0, 15}))), "<1,15>");
  EXPECT_EQ(to_string(nondegenerate_part(diag({1, 15}))), "<1,15>");
  EXPECT_EQ(to_string(nondegenerate_part(phi_even(6, f5))), "<1>");
}

TEST(Radical, Additive) {
  std::mt19937_64 rng(13);
  const PrimeField k(5);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_symmetric(k, 1 + rng() % 5, [&] { return k.from_u64(rng() % 2 ? 0 : rng()); });
    const auto b = random_symmetric(k, 1 + rng() % 5, [&] { return k.from_u64(rng() % 2 ? 0 : rng()); });
    EXPECT_EQ(radical_dim(orth_sum(a, b)), radical_dim(a) + radical_dim(b));
  }
}

TEST(Scale, BySquareIsIsometry) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_symmetric(Q, 1 + rng() % 6, [&] { return Rational(static_cast<long>(rng() % 9) - 4); });
    Rational c(static_cast<long>(1 + rng() % 12), static_cast<long>(1 + rng() % 5));
    c.canonicalize();
    if (rng() % 2) c = -c;
    EXPECT_TRUE(isometric(scale(Rational(c * c), f), f));
  }
}

TEST(Parse, DiagonalSyntax) {
  EXPECT_EQ(to_string(parse_diagonal_form(Q, "<1, 120,1820,8008>")), "<1,120,1820,8008>");
  EXPECT_EQ(parse_diagonal_form(Q, "<>").dim(), 0u);
  EXPECT_THROW(parse_diagonal_form(Q, "1,2"), parse_error);
  EXPECT_THROW(parse_diagonal_form(Q, "<1,,2>"), parse_error);
  EXPECT_THROW(GramForm<RationalField>(Q, [] {
                 auto g = zero_matrix(Q, 2, 2);
                 g(0, 1) = Rational(1);
                 return g;
               }()),
               domain_error);
}
