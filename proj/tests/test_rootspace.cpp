#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rootscope/model.hpp"

using namespace rootscope;

namespace {

std::multiset<std::size_t> multiset_of(const RootDatum& d) {
  const auto m = d.multiplicities();
  return {m.begin(), m.end()};
}

struct Expected {
  AlgebraSpec spec;
  std::multiset<std::size_t> mults;
  std::size_t m_dim;
};

// hand-derived tables
const std::vector<Expected>& expected() {
  static const std::vector<Expected> rows{
      {AlgebraSpec::sl(2), {1, 1}, 0},
      {AlgebraSpec::sl(3), {1, 1, 1, 1, 1, 1}, 0},
      {AlgebraSpec::sl(4), {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 0},
      {AlgebraSpec::su(2, 1), {2, 2, 1, 1}, 1},
      {AlgebraSpec::so(1, 4), {3, 3}, 3},
      {AlgebraSpec::so(2, 3), {1, 1, 1, 1, 1, 1, 1, 1}, 0},
      {AlgebraSpec::sp(4), {1, 1, 1, 1, 1, 1, 1, 1}, 0},
  };
  return rows;
}

}  // namespace

TEST(Oracle, MatchesHandTables) {
  for (const auto& row : expected()) {
    const auto t = oracle::root_table(row.spec);
    EXPECT_EQ(t.multiplicities(), row.mults) << row.spec.name();
    EXPECT_EQ(t.m_dim, row.m_dim) << row.spec.name();
  }
}

TEST(Decompose, MatchesOracle) {
  for (const auto& spec : list_catalog()) {
    const auto model = analyze(spec);
    const auto t = oracle::root_table(spec);
    EXPECT_EQ(multiset_of(model.datum), t.multiplicities()) << spec.name();
    EXPECT_EQ(model.datum.m_frame.size(), t.m_dim) << spec.name();
    EXPECT_EQ(model.datum.g0_frame.size(), t.g0_dim) << spec.name();
  }
}

TEST(Decompose, DimensionsAddUp) {
  for (const auto& spec : list_catalog()) {
    const auto d = analyze(spec).datum;
    std::size_t total = d.g0_frame.size();
    for (const auto& r : d.roots) total += r.multiplicity();
    EXPECT_EQ(total, d.dim) << spec.name();
    EXPECT_EQ(d.g0_frame.size(), d.a_dim + d.m_frame.size()) << spec.name();
  }
}

TEST(Decompose, RootsComeInPairs) {
  for (const auto& spec : list_catalog()) {
    const auto d = analyze(spec).datum;
    for (const auto& r : d.roots) {
      const auto neg = d.find(scaled(r.covector, -1.0));
      ASSERT_TRUE(neg) << spec.name();
      EXPECT_EQ(d.root(*neg).multiplicity(), r.multiplicity());
    }
  }
}

TEST(Decompose, Deterministic) {
  const auto b = build(AlgebraSpec::su(2, 1));
  const auto d1 = decompose(b.algebra, b.cartan, 1e-9, 42);
  const auto d2 = decompose(b.algebra, b.cartan, 1e-9, 42);
  ASSERT_EQ(d1.roots.size(), d2.roots.size());
  for (std::size_t i = 0; i < d1.roots.size(); ++i) {
    EXPECT_EQ(d1.roots[i].covector, d2.roots[i].covector);
    EXPECT_EQ(d1.roots[i].space.vectors(), d2.roots[i].space.vectors());
  }
  // a different seed finds the same roots
  const auto d3 = decompose(b.algebra, b.cartan, 1e-9, 7);
  ASSERT_EQ(d1.roots.size(), d3.roots.size());
  for (std::size_t i = 0; i < d1.roots.size(); ++i)
    for (std::size_t k = 0; k < d1.a_dim; ++k) EXPECT_NEAR(d1.roots[i].covector[k], d3.roots[i].covector[k], 1e-9);
}

TEST(Decompose, AdIsSelfAdjoint) {
  for (const auto& spec : list_catalog()) {
    const auto b = build(spec);
    const Mat& G = b.cartan.gram();
    for (const auto& a : b.cartan.a_frame()) {
      const Mat ga = G * b.algebra.ad(a);
      EXPECT_LT((ga - ga.transpose()).norm(), 1e-10 * (1.0 + ga.norm())) << spec.name();
    }
  }
}

TEST(Coroot, Sl2) {
  const auto model = analyze(AlgebraSpec::sl(2));
  const auto& d = model.datum;
  ASSERT_EQ(d.roots.size(), 2u);
  // basis order E01, E10, H; the positive root has H_lambda = H / 4
  const Root& pos = d.roots[1];
  EXPECT_GT(pos.covector[0], 0.0);
  EXPECT_NEAR(pos.coroot_value, 0.5, 1e-12);
  EXPECT_NEAR(pos.coroot[2], 0.25, 1e-12);
  EXPECT_NEAR(pos.coroot[0], 0.0, 1e-12);
  const Vec neg = coroot(model.algebra, model.cartan, d, 0);
  EXPECT_LT(norm(add(neg, pos.coroot)), 1e-12);
}

TEST(Coroot, PositiveValues) {
  for (const auto& spec : list_catalog()) {
    const auto model = analyze(spec);
    for (const auto& r : model.datum.roots) {
      EXPECT_GT(r.coroot_value, 0.0) << spec.name();
      // lambda(A) = beta(H_lambda, A)
      for (std::size_t i = 0; i < model.datum.a_dim; ++i)
        EXPECT_NEAR(model.algebra.killing_form(r.coroot, model.cartan.a_frame()[i]), r.covector[i], 1e-10);
    }
  }
}

TEST(Grading, AllPass) {
  for (const auto& spec : list_catalog()) {
    const auto model = analyze(spec);
    const Report rep = grading_check(model.algebra, model.cartan, model.datum, 1e-9);
    EXPECT_TRUE(rep.pass()) << spec.name();
    std::set<std::string> names;
    for (const auto& e : rep.entries) names.insert(e.check);
    EXPECT_EQ(names, (std::set<std::string>{"grading", "sigma_symmetry", "root_space_eigen", "three_lambda_excluded",
                                            "completeness"}));
  }
}

TEST(Summary, JsonRoundTrip) {
  const auto s = summarize(analyze(AlgebraSpec::so(1, 4)).datum);
  const auto back = root_summary_from_json(to_json(s));
  EXPECT_EQ(dump_json(to_json(back)), dump_json(to_json(s)));
  EXPECT_EQ(back.m_dim, 3u);
}
