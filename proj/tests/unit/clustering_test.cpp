#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "rpys/clustering.hpp"
#include "rpys/multirpys.hpp"
#include "support/oracles.hpp"

namespace rpys {
namespace {

DistanceMatrix points_1d(const std::vector<double>& xs) {
  DistanceMatrix d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) d.set(i, j, std::fabs(xs[i] - xs[j]));
  }
  return d;
}

RpysMatrix matrix_from_rows(const std::vector<std::vector<int>>& rows) {
  RpysMatrix m;
  m.range = YearRange::make(2000, 2000 + static_cast<int>(rows.front().size()) - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.labels.push_back("R" + std::to_string(i));
    m.ranks.insert(m.ranks.end(), rows[i].begin(), rows[i].end());
  }
  return m;
}

Dendrogram three_points() { return ward_cluster(points_1d({0, 1, 10}), {"p0", "p1", "p10"}); }

// Sets of leaves under each internal node, as a canonical description of the tree.
std::multiset<std::pair<std::set<std::string>, long long>> clades(const Dendrogram& d) {
  std::vector<std::set<std::string>> members;
  for (const auto& l : d.leaves) members.push_back({l});
  std::multiset<std::pair<std::set<std::string>, long long>> out;
  for (const auto& m : d.merges) {
    auto s = members[m.left];
    s.insert(members[m.right].begin(), members[m.right].end());
    members.push_back(s);
    out.insert({s, std::llround(m.height * 1e6)});
  }
  return out;
}

TEST(RowDistances, Basics) {
  const auto m = matrix_from_rows({{1, 2}, {2, 1}, {1, 2}});
  const auto d = row_distances(m);
  EXPECT_DOUBLE_EQ(d(0, 1), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(d(1, 0), d(0, 1));
  EXPECT_DOUBLE_EQ(d(1, 1), 0.0);
}

TEST(RowDistances, HandComputedFourYearRows) {
  const auto m = matrix_from_rows({{1, 2, 3, 4}, {4, 3, 2, 1}, {2, 1, 4, 3}});
  const auto d = row_distances(m);
  EXPECT_DOUBLE_EQ(d(0, 1), std::sqrt(20.0));  // 9+1+1+9
  EXPECT_DOUBLE_EQ(d(0, 2), 2.0);              // 1+1+1+1
  EXPECT_DOUBLE_EQ(d(1, 2), std::sqrt(16.0));  // 4+4+4+4
}

TEST(RowDistances, TooFewRows) {
  try {
    row_distances(matrix_from_rows({{1, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooFewRows);
  }
}

TEST(Ward, ThreePointsHandExample) {
  const auto d = three_points();
  ASSERT_EQ(d.merges.size(), 2u);
  EXPECT_EQ(d.merges[0].left, 0u);
  EXPECT_EQ(d.merges[0].right, 1u);
  EXPECT_DOUBLE_EQ(d.merges[0].height, 0.5);
  EXPECT_EQ(d.merges[1].left, 3u);
  EXPECT_EQ(d.merges[1].right, 2u);
  EXPECT_NEAR(d.merges[1].height, 2.0 / 3.0 * 9.5 * 9.5, 1e-12);
  EXPECT_EQ(d.merges[1].size, 3u);
  EXPECT_NO_THROW(d.check());
}

TEST(Ward, IdenticalRowsMergeFirstAtZero) {
  const auto d = ward_cluster(matrix_from_rows({{1, 2, 3}, {3, 2, 1}, {1, 2, 3}}));
  EXPECT_EQ(d.merges[0].left, 0u);
  EXPECT_EQ(d.merges[0].right, 2u);
  EXPECT_EQ(d.merges[0].height, 0.0);
}

TEST(Ward, TiesGoToSmallestIndexPair) {
  // Four equidistant-in-pairs points: {0,1} and {2,3} tie; {0,1} wins.
  const auto d = ward_cluster(points_1d({0, 1, 5, 6}), {"a", "b", "c", "d"});
  EXPECT_EQ(d.merges[0].left, 0u);
  EXPECT_EQ(d.merges[0].right, 1u);
  EXPECT_EQ(d.merges[1].left, 2u);
  EXPECT_EQ(d.merges[1].right, 3u);
}

TEST(Ward, MatchesExactOracle) {
  std::mt19937_64 gen(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 7;
    const std::size_t years = 3 + gen() % 40;
    std::vector<std::vector<int>> rows(n, std::vector<int>(years));
    for (auto& row : rows) {
      std::iota(row.begin(), row.end(), 1);
      std::shuffle(row.begin(), row.end(), gen);
    }
    if (trial % 5 == 0) rows.back() = rows.front();  // exact tie material

    const auto tree = ward_cluster(matrix_from_rows(rows));
    std::vector<std::vector<std::int64_t>> wide;
    for (const auto& r : rows) wide.emplace_back(r.begin(), r.end());
    const auto expected = oracle::ExactWard(wide).run();

    ASSERT_EQ(tree.merges.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      EXPECT_EQ(tree.merges[k].left, expected[k].left) << "trial " << trial << " step " << k;
      EXPECT_EQ(tree.merges[k].right, expected[k].right) << "trial " << trial << " step " << k;
      EXPECT_EQ(tree.merges[k].size, expected[k].size);
      EXPECT_NEAR(tree.merges[k].height, expected[k].height, 1e-9 * std::max(1.0, expected[k].height));
      if (k > 0) {
        EXPECT_GE(tree.merges[k].height, tree.merges[k - 1].height);
      }
    }
  }
}

TEST(Ward, PermutationEquivariance) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<int>> rows(7, std::vector<int>(25));
    for (auto& row : rows) {
      std::iota(row.begin(), row.end(), 1);
      std::shuffle(row.begin(), row.end(), gen);
    }
    auto m = matrix_from_rows(rows);
    std::vector<std::size_t> perm(7);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    const auto shuffled = reorder_rows(m, perm);
    EXPECT_EQ(clades(ward_cluster(m)), clades(ward_cluster(shuffled)));
  }
}

TEST(Ward, TooFewRows) {
  EXPECT_THROW(ward_cluster(matrix_from_rows({{1, 2}})), Error);
}

TEST(Cut, EdgeCasesAndThreePoints) {
  const auto d = three_points();
  EXPECT_EQ(cut(d, 1), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(cut(d, 3), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(cut(d, 2), (std::vector<int>{1, 1, 2}));
  try {
    cut(d, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadK);
  }
  EXPECT_THROW(cut(d, 4), Error);
}

TEST(Cut, YieldsExactlyKClusters) {
  const auto m = random_matrix(40, YearRange::make(1900, 1999), 9);
  const auto d = ward_cluster(m);
  for (std::size_t k = 1; k <= 40; ++k) {
    const auto labels = cut(d, k);
    EXPECT_EQ(std::set<int>(labels.begin(), labels.end()).size(), k);
    EXPECT_EQ(*std::max_element(labels.begin(), labels.end()), static_cast<int>(k));
    EXPECT_EQ(labels.front(), 1);
  }
}

TEST(LeafOrder, Examples) {
  EXPECT_EQ(leaf_order(three_points()), (std::vector<std::size_t>{0, 1, 2}));

  Dendrogram chain;
  chain.leaves = {"a", "b", "c"};
  chain.merges = {{0, 1, 1.0, 2}, {0 + 3, 2, 2.0, 3}};
  EXPECT_EQ(leaf_order(chain), (std::vector<std::size_t>{0, 1, 2}));

  // {1,10} merge first, so 0 sits alone on the left of the root.
  const auto d = ward_cluster(points_1d({0, 9, 10}), {"x", "y", "z"});
  EXPECT_EQ(leaf_order(d), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(LeafOrder, GroupsClustersContiguously) {
  const auto d = ward_cluster(points_1d({0, 100, 1, 101, 2}), {"a", "b", "c", "d", "e"});
  EXPECT_EQ(leaf_order(d), (std::vector<std::size_t>{0, 2, 4, 1, 3}));
}

TEST(ReorderRows, PermutesRowsOnly) {
  const auto m = random_matrix(5, YearRange::make(1900, 1919), 2);
  const std::vector<std::size_t> order = {4, 0, 3, 1, 2};
  const auto r = reorder_rows(m, order);
  for (std::size_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(r.labels[i], m.labels[order[i]]);
    EXPECT_TRUE(std::equal(r.row(i).begin(), r.row(i).end(), m.row(order[i]).begin()));
  }
  const std::vector<std::size_t> bad = {0, 0, 1, 2, 3};
  try {
    reorder_rows(m, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadRowOrder);
  }
}

TEST(DendrogramCheck, RejectsBrokenTrees) {
  auto d = three_points();
  d.merges[1].size = 2;
  EXPECT_THROW(d.check(), InvariantViolation);
  d = three_points();
  d.merges[1].right = 1;  // reused child
  EXPECT_THROW(d.check(), InvariantViolation);
}

}  // namespace
}  // namespace rpys
