#include "scatterlab/cut_space.hpp"
#include "scatterlab/syntax.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scatterlab;
using T = OrderTerm;

namespace {

T p(const char* text) { return parse_order_term(text); }
Rational q(const char* text) { return parse_rational(text); }

std::vector<Rational> coords(const std::vector<Point>& pts) {
  std::vector<Rational> out;
  for (const auto& x : pts) out.push_back(x.coord);
  return out;
}

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Usage;
}

}  // namespace

TEST(Cuts, Examples) {
  EXPECT_EQ(cuts(T::zero()), T::one());
  EXPECT_EQ(cuts(T::finite(3)), T::finite(4));
  EXPECT_EQ(cuts(p("w")), p("w + 1"));
  EXPECT_TRUE(canonically_equal(cuts(T::zeta()), p("1 + z + 1")));
  EXPECT_TRUE(canonically_equal(cuts(p("w*")), p("1 + w*")));
  EXPECT_EQ(error_of([] { (void)cuts(p("1 + eta")); }), ErrorKind::NonScattered);
}

TEST(Cuts, FiniteOrdersGainOneCut) {
  for (std::uint64_t n = 0; n <= 10; ++n) EXPECT_EQ(cuts(T::finite(n)), T::finite(n + 1)) << n;
}

TEST(Cuts, AlwaysHaveEndpoints) {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto t = oracle::random_term(rng, 5);
    const auto c = cuts(t);
    EXPECT_TRUE(has_min(c) && has_max(c)) << to_string(t);
  }
}

TEST(Cuts, CommuteWithReversal) {
  for (const auto& l : oracle::term_corpus()) {
    EXPECT_TRUE(canonically_equal(cuts(reverse(l)), reverse(cuts(l)))) << to_string(l);
  }
}

TEST(Embed, Examples) {
  EXPECT_EQ(coords(embed(T::finite(4)).points(10)), (std::vector<Rational>{0, q("1/4"), q("1/2"), q("3/4")}));
  const auto k = embed(cuts(p("w")));
  const auto pts = k.points(4);
  ASSERT_GE(pts.size(), 5u);
  EXPECT_EQ(pts[0].coord, 0);
  EXPECT_EQ(pts[1].coord, q("1/4"));
  EXPECT_EQ(pts[2].coord, q("3/8"));
  EXPECT_EQ(pts[3].coord, q("7/16"));
  EXPECT_EQ(pts.back().coord, q("1/2"));
  EXPECT_TRUE(pts.back().left_limit);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) EXPECT_FALSE(pts[i].left_limit || pts[i].right_limit);
  EXPECT_EQ(coords(embed(T::one(), q("1/3"), 1).points(5)), std::vector<Rational>{q("1/3")});
}

TEST(Embed, Errors) {
  EXPECT_EQ(error_of([] { (void)embed(p("w")); }), ErrorKind::NoEndpoints);
  EXPECT_EQ(error_of([] { (void)embed(p("1 + eta + 1")); }), ErrorKind::NonScattered);
}

TEST(Embed, CoordinatesAreSortedDistinctAndInRange) {
  for (const auto& l : oracle::term_corpus()) {
    const auto k = embed(cuts(l), q("-1/2"), 3);
    const auto pts = k.points(100);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_GE(pts[i].coord, k.lo());
      EXPECT_LE(pts[i].coord, k.hi());
      if (i) EXPECT_LT(pts[i - 1].coord, pts[i].coord) << to_string(l);
    }
    EXPECT_EQ(pts.front().coord, *k.min());
    EXPECT_EQ(pts.front().coord, k.lo());
  }
}

TEST(Embed, IsDeterministic) {
  const auto k = embed(cuts(p("omega(z) + 2")));
  const auto a = k.points(80), b = k.points(80);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coord, b[i].coord);
}

// Layout flags against the coordinate-only oracle. Limit points must also be
// accumulation points of enumerated points, which checks that the set is closed.
TEST(Embed, FlagsMatchGeometricOracle) {
  for (const auto& l : oracle::term_corpus()) {
    const auto k = embed(cuts(l));
    const auto pts = k.points_at_depth(3);
    const auto geo = oracle::geometric_flags(k, 3);
    ASSERT_EQ(pts.size(), geo.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_EQ(pts[i].coord, geo[i].coord);
      EXPECT_EQ(pts[i].left_limit, geo[i].left_limit) << to_string(l) << " at " << to_string(pts[i].coord);
      EXPECT_EQ(pts[i].right_limit, geo[i].right_limit) << to_string(l) << " at " << to_string(pts[i].coord);
    }
  }
}

TEST(Gaps, Examples) {
  EXPECT_EQ(gaps(embed(cuts(T::finite(3))), 10).size(), 3u);
  EXPECT_TRUE(gaps(embed(T::one()), 10).empty());
  const auto k = embed(cuts(p("w")));
  const auto gs = gaps(k, 5);
  ASSERT_EQ(gs.size(), 5u);
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) EXPECT_EQ(gs[i].hi, gs[i + 1].lo);
  EXPECT_EQ(gs[0].lo, 0);
  EXPECT_EQ(gs[0].hi, q("1/4"));
}

TEST(Gaps, AreComplementComponents) {
  for (const auto& l : oracle::term_corpus()) {
    const auto k = embed(cuts(l));
    const auto gs = gaps(k, 50);
    unsigned depth = 1;
    for (const auto& g : gs) depth = std::max(depth, g.level);
    const auto geo = oracle::geometric_flags(k, depth);
    std::map<Rational, oracle::GeometricPoint> at;
    for (const auto& x : geo) at.emplace(x.coord, x);
    std::set<Rational> starts;
    for (const auto& g : gs) {
      ASSERT_TRUE(at.count(g.lo) && at.count(g.hi)) << to_string(l);
      EXPECT_LT(g.lo, g.hi);
      EXPECT_FALSE(at.at(g.lo).right_limit);
      EXPECT_FALSE(at.at(g.hi).left_limit);
      EXPECT_EQ(*at.at(g.lo).right, g.hi) << "points inside a gap of " << to_string(l);
      EXPECT_TRUE(starts.insert(g.lo).second);
    }
  }
}

TEST(Gaps, DualToCuts) {
  for (const auto& l : oracle::term_corpus()) {
    const auto k = embed(cuts(l));
    const auto gs = gaps(k, 50);
    const auto card = cardinality(l);
    const auto sub = oracle::gap_local_types(k, gs);
    unsigned level = 1;
    for (const auto& g : gs) level = std::max(level, g.level);
    const auto host = oracle::enumerate_local_types(l, 2 * level + 2);
    if (card.infinite) {
      EXPECT_EQ(gs.size(), 50u) << to_string(l);
      EXPECT_TRUE(oracle::embeds_in_order(sub, host)) << to_string(l);
    } else {
      EXPECT_EQ(gs.size(), card.value) << to_string(l);
      EXPECT_EQ(sub, host) << to_string(l);
    }
  }
}

// Negative control: the oracle must be able to tell w from w*.
TEST(Gaps, DualityOracleDistinguishesOrders) {
  const auto k = embed(cuts(p("w")));
  const auto sub = oracle::gap_local_types(k, gaps(k, 50));
  EXPECT_FALSE(oracle::embeds_in_order(sub, oracle::enumerate_local_types(p("w*"), 40)));
  const auto k2 = embed(cuts(p("w*")));
  const auto sub2 = oracle::gap_local_types(k2, gaps(k2, 50));
  EXPECT_FALSE(oracle::embeds_in_order(sub2, oracle::enumerate_local_types(p("w"), 40)));
}

TEST(GapOrder, RecoversSimpleOrders) {
  for (const char* text : {"1", "5", "w", "w*", "z", "w + 3", "w* + 2 + w"}) {
    EXPECT_TRUE(canonically_equal(gap_order(cuts(p(text))), p(text))) << text;
  }
}

TEST(DerivedSet, Examples) {
  EXPECT_EQ(derived_set(T::finite(7)), T::zero());
  EXPECT_EQ(derived_set(cuts(p("w"))), T::one());
  EXPECT_TRUE(canonically_equal(derived_set(cuts(p("omega(w)"))), p("w + 1")));
}

TEST(DerivedSet, MatchesIsolatedPointOracle) {
  for (const auto& l : oracle::term_corpus()) {
    const auto c = cuts(l);
    const auto k = embed(c);
    const auto d = derived_set(c);
    std::vector<std::size_t> counts;
    for (unsigned depth : {3u, 7u}) {
      std::size_t limits = 0;
      for (const auto& x : oracle::geometric_flags(k, depth)) limits += x.left_limit || x.right_limit;
      counts.push_back(limits);
    }
    const auto card = cardinality(d);
    if (card.infinite) {
      EXPECT_LT(counts[0], counts[1]) << to_string(l);
    } else {
      EXPECT_EQ(counts[0], card.value) << to_string(l);
      EXPECT_EQ(counts[1], card.value) << to_string(l);
    }
  }
}

TEST(CbRank, Examples) {
  EXPECT_EQ(cb_rank(T::one()), Ordinal::natural(1));
  EXPECT_EQ(cb_rank(cuts(p("w"))), Ordinal::natural(2));
  EXPECT_EQ(cb_rank(cuts(p("omega(w)"))), Ordinal::natural(3));
  EXPECT_EQ(cb_rank(T::zero()), Ordinal());
}

TEST(CbRank, IsSyntacticRankPlusOne) {
  for (const auto& l : oracle::term_corpus()) {
    EXPECT_EQ(cb_rank(cuts(l)), syntactic_rank(l).successor()) << to_string(l);
  }
}

TEST(DerivedSequence, Examples) {
  // {0} together with a sequence increasing to the top point.
  const auto conv = derived_sequence(embed(p("w + 1")));
  EXPECT_EQ(conv.rank, Ordinal::natural(1));
  ASSERT_EQ(conv.stages.size(), 2u);
  EXPECT_EQ(conv.stages[1].set.generator(), T::finite(2));
  EXPECT_EQ(derived_sequence(embed(T::finite(2))).rank, Ordinal());
  EXPECT_EQ(derived_sequence(embed(cuts(p("omega(w)")))).rank, Ordinal::natural(2));
  EXPECT_EQ(error_of([] { (void)derived_sequence(EmbeddedSet(p("w"), 0, 1)); }), ErrorKind::EndpointsMissing);
}

TEST(Restriction, Examples) {
  const auto s0 = embed(p("w + 1"));
  const auto finite_slice = rank_restriction_check(s0, 0, q("1/4"));
  EXPECT_EQ(finite_slice.rank_inside, Ordinal());
  EXPECT_EQ(finite_slice.rank_outside, Ordinal::natural(1));
  EXPECT_TRUE(finite_slice.ok);
  const auto full = rank_restriction_check(s0, *s0.min(), *s0.max());
  EXPECT_EQ(full.rank_inside, full.rank_outside);

  const auto sq = embed(cuts(p("omega(w)")));
  const auto pts = sq.points(200);
  std::optional<Rational> first_limit;
  for (const auto& x : pts) {
    if (x.left_limit && x.coord != *sq.max()) {
      first_limit = x.coord;
      break;
    }
  }
  ASSERT_TRUE(first_limit);
  const auto block = rank_restriction_check(sq, 0, *first_limit);
  EXPECT_EQ(block.rank_inside, Ordinal::natural(1));
  EXPECT_EQ(block.rank_outside, Ordinal::natural(2));
  EXPECT_EQ(error_of([&] { (void)rank_restriction_check(s0, 0, q("1/3")); }), ErrorKind::EndpointsNotInSet);
}

TEST(Restriction, RandomSlicesNeverRaiseRank) {
  const auto corpus = oracle::term_corpus();
  std::mt19937 rng(99);
  int checked = 0;
  while (checked < 100) {
    const auto& l = corpus[rng() % corpus.size()];
    const auto k = embed(cuts(l));
    const auto pts = k.points_at_depth(4);
    if (pts.size() < 2) continue;
    auto i = rng() % pts.size(), j = rng() % pts.size();
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    const auto& a = pts[i].coord;
    const auto& b = pts[j].coord;
    const auto report = rank_restriction_check(k, a, b);
    EXPECT_TRUE(report.ok) << to_string(l) << " on [" << to_string(a) << ", " << to_string(b) << "]";
    // Slice size against the enumerated points that fall in [a, b].
    const auto inside = slice(k, a, b);
    std::size_t shallow = 0, deep = 0;
    for (const auto& x : k.points_at_depth(4)) shallow += a <= x.coord && x.coord <= b;
    for (const auto& x : k.points_at_depth(9)) deep += a <= x.coord && x.coord <= b;
    const auto card = cardinality(inside);
    if (card.infinite) EXPECT_LT(shallow, deep);
    else EXPECT_EQ(deep, card.value) << to_string(l) << " on [" << to_string(a) << ", " << to_string(b) << "]";
    ++checked;
  }
}

TEST(Json, PointAndGapShapes) {
  const auto k = embed(cuts(p("w")));
  const auto j = to_json(k, k.points(3));
  EXPECT_EQ(j.at("generator"), "omega(1) + 1");
  EXPECT_EQ(j.at("interval"), nlohmann::json::array({"0", "1"}));
  EXPECT_EQ(j.at("points").at(1).at("coord"), "1/4");
  EXPECT_EQ(j.at("points").back().at("left_limit"), true);
  const auto g = to_json(k, gaps(k, 2));
  EXPECT_EQ(g.at("gaps").at(0).at("lo"), "0");
  EXPECT_EQ(g.at("gaps").at(0).at("hi"), "1/4");
}
