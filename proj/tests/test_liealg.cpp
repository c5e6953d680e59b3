#include <random>

#include <gtest/gtest.h>

#include "rootscope/catalog.hpp"
#include "rootscope/liealg.hpp"

using namespace rootscope;

namespace {

// basis order H, E, F
LieAlgebra sl2() {
  return LieAlgebra::from_basis({Mat{{1, 0}, {0, -1}}, Mat{{0, 1}, {0, 0}}, Mat{{0, 0}, {1, 0}}}, "sl2");
}

LieAlgebra so3() {
  return LieAlgebra::from_basis(
      {Mat{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, Mat{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}, Mat{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}},
      "so3");
}

const Vec H{1, 0, 0}, E{0, 1, 0}, F{0, 0, 1};

Vec random_coords(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

void expect_error(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Killing, Sl2MatchesTraceOracle) {
  const auto L = sl2();
  // 4 tr(XY) computed directly from the matrices
  auto oracle = [&](const Vec& x, const Vec& y) { return 4.0 * (L.realize(x) * L.realize(y)).trace(); };
  for (const auto& x : {H, E, F})
    for (const auto& y : {H, E, F}) EXPECT_NEAR(L.killing_form(x, y), oracle(x, y), 1e-12);
  EXPECT_NEAR(L.killing_form(H, H), 8.0, 1e-12);
  EXPECT_NEAR(L.killing_form(E, F), 4.0, 1e-12);
  EXPECT_NEAR(L.killing_form(H, E), 0.0, 1e-12);
}

TEST(Killing, CompactIsNegativeDefinite) {
  const auto e = sym_eig(so3().killing());
  for (double v : e.values) EXPECT_LT(v, -1e-6);
}

TEST(Killing, ProportionalToTraceForm) {
  for (int n : {3, 4}) {
    const auto L = build(AlgebraSpec::sl(n)).algebra;
    std::mt19937_64 rng(n);
    for (int t = 0; t < 20; ++t) {
      const Vec x = random_coords(rng, L.dim()), y = random_coords(rng, L.dim());
      const double trace_form = (L.realize(x) * L.realize(y)).trace();
      EXPECT_NEAR(L.killing_form(x, y), 2.0 * n * trace_form, 1e-8 * (1.0 + std::abs(trace_form)));
    }
  }
}

TEST(Killing, AdInvariant) {
  const auto L = build(AlgebraSpec::su(2, 1)).algebra;
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const Vec x = random_coords(rng, L.dim()), y = random_coords(rng, L.dim()), z = random_coords(rng, L.dim());
    const double lhs = L.killing_form(L.bracket(x, y), z), rhs = L.killing_form(x, L.bracket(y, z));
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1.0 + std::abs(lhs)));
  }
}

TEST(Bracket, Sl2) {
  const auto L = sl2();
  const Vec he = L.bracket(H, E);
  EXPECT_NEAR(he[1], 2.0, 1e-14);
  EXPECT_NEAR(he[0], 0.0, 1e-14);
  const Vec ef = L.bracket(E, F);
  EXPECT_NEAR(ef[0], 1.0, 1e-14);
  const Mat adh = L.ad(H);
  EXPECT_LT((adh - Mat::diagonal(std::vector<double>{0, 2, -2})).norm(), 1e-14);
  EXPECT_LT(L.jacobi_residual(), 1e-14);
}

TEST(Bracket, AdIsTraceless) {
  const auto L = build(AlgebraSpec::sp(4)).algebra;
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) EXPECT_NEAR(L.ad(random_coords(rng, L.dim())).trace(), 0.0, 1e-10);
}

TEST(FromBasis, Errors) {
  expect_error(ErrorCode::Degenerate, [] { LieAlgebra::from_basis({Mat::identity(2)}); });
  expect_error(ErrorCode::DependentBasis, [] { LieAlgebra::from_basis({Mat{{0, 1}, {0, 0}}, Mat{{0, 2}, {0, 0}}}); });
  expect_error(ErrorCode::NotClosed, [] { LieAlgebra::from_basis({Mat{{0, 1}, {0, 0}}, Mat{{0, 0}, {1, 0}}}); });
}

TEST(Cartan, BetaSigmaSl2) {
  const auto L = sl2();
  const auto C = cartan_split(L, L.coordinate_map(negative_transpose));
  EXPECT_NEAR(beta_sigma(L, C, E, E), 4.0, 1e-12);
  EXPECT_NEAR(beta_sigma(L, C, H, H), 8.0, 1e-12);
  EXPECT_NEAR(beta_sigma(L, C, E, F), 0.0, 1e-12);
  EXPECT_EQ(C.k_frame().size(), 1u);
  EXPECT_EQ(C.p_frame().size(), 2u);
}

TEST(Cartan, CompactHasTrivialP) {
  const auto L = so3();
  const auto C = cartan_split(L, Mat::identity(3));
  EXPECT_EQ(C.k_frame().size(), 3u);
  EXPECT_EQ(C.p_frame().size(), 0u);
}

TEST(Cartan, Errors) {
  const auto L = sl2();
  expect_error(ErrorCode::NotInvolution, [&] { cartan_split(L, Mat::identity(3) * 2.0); });
  expect_error(ErrorCode::NotAutomorphism,
               [&] { cartan_split(L, Mat::diagonal(std::vector<double>{1, -1, 1})); });
  // the identity is an involutive automorphism, but -K is not positive on sl2
  expect_error(ErrorCode::NotCartan, [&] { cartan_split(L, Mat::identity(3)); });
}

TEST(Cartan, SigmaIsIsometryAndAutomorphism) {
  const auto built = build(AlgebraSpec::so(2, 3));
  const auto& L = built.algebra;
  const auto& C = built.cartan;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const Vec x = random_coords(rng, L.dim()), y = random_coords(rng, L.dim());
    EXPECT_NEAR(L.killing_form(C.apply_sigma(x), C.apply_sigma(y)), L.killing_form(x, y), 1e-9);
    EXPECT_LT(norm(sub(C.apply_sigma(L.bracket(x, y)), L.bracket(C.apply_sigma(x), C.apply_sigma(y)))), 1e-10);
    EXPECT_GT(C.beta_sigma(x, x), 0.0);
  }
}
