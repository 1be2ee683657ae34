#include <gtest/gtest.h>

#include "dagsort/oracle.hpp"

using namespace dagsort;

namespace {
Dag diamond() { return build_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }
} // namespace

TEST(MakeProvider, AcceptsConsistentOrders) {
  const Dag g = diamond();
  EXPECT_EQ(make_provider(g, std::vector<VertexId>{0, 1, 2, 3}).count(), 0u);
  EXPECT_EQ(make_provider(g, std::vector<VertexId>{0, 2, 1, 3}).count(), 0u);
}

TEST(MakeProvider, RejectsInconsistentOrder) {
  EXPECT_THROW(make_provider(diamond(), std::vector<VertexId>{1, 0, 2, 3}),
               InconsistentOrderError);
}

TEST(MakeProvider, RejectsNonPermutation) {
  EXPECT_THROW(make_provider(diamond(), std::vector<VertexId>{0, 1, 1, 3}),
               std::invalid_argument);
}

TEST(Provider, CountsEveryComparison) {
  ComparisonProvider p(HiddenOrder(std::vector<VertexId>{0, 1, 2}));
  EXPECT_TRUE(p.less(0, 1));
  EXPECT_EQ(p.count(), 1u);
  EXPECT_FALSE(p.less(2, 1));
  EXPECT_EQ(p.count(), 2u);
}

TEST(Provider, ReversedHiddenOrder) {
  ComparisonProvider p(HiddenOrder(std::vector<VertexId>{2, 1, 0}));
  EXPECT_TRUE(p.less(2, 0));
  EXPECT_EQ(p.count(), 1u);
}

TEST(Provider, SelfComparisonIsAnError) {
  ComparisonProvider p(HiddenOrder(std::vector<VertexId>{0, 1}));
  EXPECT_THROW(p.less(1, 1), std::invalid_argument);
  EXPECT_EQ(p.count(), 0u);
}

TEST(Provider, StrictTotalOrderOnAllTriples) {
  const std::vector<VertexId> hidden{3, 0, 4, 1, 2};
  ComparisonProvider p{HiddenOrder(hidden)};
  for (VertexId a = 0; a < 5; ++a)
    for (VertexId b = 0; b < 5; ++b) {
      if (a == b)
        continue;
      EXPECT_NE(p.less(a, b), p.less(b, a));
      for (VertexId c = 0; c < 5; ++c)
        if (c != a && c != b && p.less(a, b) && p.less(b, c))
          EXPECT_TRUE(p.less(a, c));
    }
}
