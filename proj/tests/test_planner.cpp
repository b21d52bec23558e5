#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "auglab/error.hpp"
#include "auglab/planner.hpp"
#include "oracles.hpp"

using namespace auglab;

namespace {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

struct Loaded {
  LinkDiagram d;
  FaceMap f;
  DualGraph dual;

  explicit Loaded(const std::string& file)
      : d(oracle::corpus(file)), f(build_faces(d)), dual(d, f) {}
};

ErrorKind error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Io;
}

// Every edge sequence of length n that walks from a to b, found by trying all
// sequences over edges whose label sets put consecutive faces side by side.
std::vector<std::vector<std::size_t>> all_walks(const LinkDiagram& d, const FaceMap& f, std::size_t a,
                                                std::size_t b, std::size_t n) {
  std::vector<std::set<std::size_t>> edges_of(f.face_count());
  for (std::size_t i = 0; i < f.face_count(); ++i) {
    for (Dart x : f.face(i).darts) edges_of[i].insert(d.edge_of(x));
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> walk;
  std::function<void(std::size_t)> go = [&](std::size_t face) {
    if (walk.size() == n) {
      if (face == b) out.push_back(walk);
      return;
    }
    for (std::size_t e : edges_of[face]) {
      for (std::size_t next = 0; next < f.face_count(); ++next) {
        if (next == face || !edges_of[next].count(e)) continue;
        walk.push_back(e);
        go(next);
        walk.pop_back();
      }
    }
  };
  go(a);
  return out;
}

bool is_dual_walk(const DualGraph& dual, const AugmentationArc& arc) {
  if (arc.faces.size() != arc.route.size() + 1) return false;
  for (std::size_t k = 0; k < arc.route.size(); ++k) {
    auto [x, y] = dual.ends(arc.route[k]);
    if (std::minmax(x, y) != std::minmax(arc.faces[k], arc.faces[k + 1])) return false;
  }
  return arc.faces.front() == arc.from && arc.faces.back() == arc.to;
}

std::vector<std::vector<AugmentationArc>> routes_for(const DualGraph& dual, const std::vector<FacePair>& pairs,
                                                     std::size_t cap) {
  std::vector<std::vector<AugmentationArc>> out;
  for (const auto& p : pairs) out.push_back(enumerate_shortest_routes(dual, p.a, p.b, cap));
  return out;
}

PairList as_list(const ArcSystem& s) {
  PairList out;
  for (const auto& arc : s.arcs) out.emplace_back(arc.from, arc.to);
  return out;
}

}  // namespace

TEST(BuildDual, Examples) {
  Loaded trefoil("trefoil.pd");
  EXPECT_EQ(trefoil.dual.node_count(), 5u);
  EXPECT_EQ(trefoil.dual.edge_count(), 6u);
  Loaded fig8("figure_eight.pd");
  EXPECT_EQ(fig8.dual.node_count(), 6u);
  EXPECT_EQ(fig8.dual.edge_count(), 8u);
  Loaded kink("kink.pd");
  EXPECT_EQ(kink.dual.node_count(), 3u);
  EXPECT_EQ(kink.dual.edge_count(), 2u);
}

TEST(BuildDual, EdgesJoinTheFacesOnEitherSide) {
  for (const auto& name : oracle::connected_corpus()) {
    Loaded x(name);
    for (std::size_t e = 0; e < x.d.edge_count(); ++e) {
      auto [a, b] = x.dual.ends(e);
      EXPECT_NE(a, b) << name;
      auto in_a = x.f.boundary_edges(x.d, a);
      auto in_b = x.f.boundary_edges(x.d, b);
      EXPECT_EQ(std::count(in_a.begin(), in_a.end(), e), 1) << name;
      EXPECT_EQ(std::count(in_b.begin(), in_b.end(), e), 1) << name;
    }
  }
}

TEST(CandidatePairs, TrefoilPairsFollowTheCheckerboard) {
  // Bigons only meet triangles, so the three bigon pairs and the pair of
  // triangles are the candidates.
  Loaded x("trefoil.pd");
  auto pairs = candidate_pairs(x.f, x.dual);
  ASSERT_EQ(pairs.size(), 4u);
  std::size_t bigon_pairs = 0;
  for (const auto& p : pairs) {
    EXPECT_EQ(x.f.face(p.a).size(), x.f.face(p.b).size());
    bigon_pairs += x.f.face(p.a).size() == 2;
    EXPECT_EQ(p.distance, 2u);
  }
  EXPECT_EQ(bigon_pairs, 3u);
}

TEST(CandidatePairs, MatchAdjacencyOracle) {
  for (const auto& name : oracle::connected_corpus()) {
    Loaded x(name);
    auto dist = oracle::dual_distances(x.d, x.f);
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t a = 0; a < x.f.face_count(); ++a) {
      for (std::size_t b = a + 1; b < x.f.face_count(); ++b) {
        if (dist[a][b] >= 2) expected.insert({a, b});
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& p : candidate_pairs(x.f, x.dual)) {
      EXPECT_LT(p.a, p.b) << name;
      EXPECT_EQ(p.distance, dist[p.a][p.b]) << name;
      EXPECT_FALSE(x.dual.adjacent(p.a, p.b)) << name;
      got.insert({p.a, p.b});
    }
    EXPECT_EQ(got, expected) << name;
  }
}

TEST(MinPunctureRoute, Examples) {
  Loaded trefoil("trefoil.pd");
  for (const auto& p : candidate_pairs(trefoil.f, trefoil.dual)) {
    EXPECT_EQ(min_puncture_route(trefoil.dual, p.a, p.b).punctures(), 2u);
  }

  Loaded fig8("figure_eight.pd");
  auto r = min_puncture_route(fig8.dual, 0, 2);
  EXPECT_EQ(r.punctures(), 2u);
  EXPECT_TRUE(r.classical());
  auto g = min_puncture_route(fig8.dual, 2, 5);
  EXPECT_EQ(g.punctures(), 3u);
  EXPECT_FALSE(g.classical());

  Loaded grid("grid3x3.pd");
  EXPECT_EQ(min_puncture_route(grid.dual, 0, 7).punctures(), 3u);
  EXPECT_EQ(min_puncture_route(grid.dual, 0, 7).route, (std::vector<std::size_t>{0, 1, 10}));
}

TEST(MinPunctureRoute, NoPathAcrossSplitPieces) {
  auto d = oracle::corpus("split_trefoils.pd");
  auto f = build_faces(d);
  DualGraph dual(d, f);
  EXPECT_EQ(error_of([&] { min_puncture_route(dual, 0, f.face_count() - 1); }), ErrorKind::NoPath);
}

TEST(EnumerateShortestRoutes, TrefoilBigonPairs) {
  Loaded x("trefoil.pd");
  for (const auto& p : candidate_pairs(x.f, x.dual)) {
    auto routes = enumerate_shortest_routes(x.dual, p.a, p.b, 10);
    std::vector<std::vector<std::size_t>> got;
    for (const auto& r : routes) got.push_back(r.route);
    EXPECT_EQ(got, all_walks(x.d, x.f, p.a, p.b, 2));
  }
}

TEST(EnumerateShortestRoutes, CapAndOrder) {
  Loaded x("grid3x3.pd");
  auto all = enumerate_shortest_routes(x.dual, 0, 7, 100);
  ASSERT_EQ(all.size(), 12u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(),
                             [](const auto& a, const auto& b) { return a.route < b.route; }));
  auto three = enumerate_shortest_routes(x.dual, 0, 7, 3);
  ASSERT_EQ(three.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(three[i].route, all[i].route);
  auto one = enumerate_shortest_routes(x.dual, 0, 7, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].route, min_puncture_route(x.dual, 0, 7).route);
}

TEST(RoutingProperties, OptimalSymmetricAndExhaustive) {
  for (const auto& name : oracle::connected_corpus()) {
    Loaded x(name);
    auto dist = oracle::dual_distances(x.d, x.f);
    for (const auto& p : candidate_pairs(x.f, x.dual)) {
      auto ab = min_puncture_route(x.dual, p.a, p.b);
      auto ba = min_puncture_route(x.dual, p.b, p.a);
      EXPECT_EQ(ab.punctures(), dist[p.a][p.b]) << name;
      EXPECT_EQ(ab.punctures(), ba.punctures()) << name;
      EXPECT_GE(ab.punctures(), 2u) << name;
      EXPECT_TRUE(is_dual_walk(x.dual, ab)) << name;
      EXPECT_TRUE(is_dual_walk(x.dual, ba)) << name;

      auto routes = enumerate_shortest_routes(x.dual, p.a, p.b, 1000);
      std::vector<std::vector<std::size_t>> got;
      for (const auto& r : routes) got.push_back(r.route);
      if (ab.punctures() <= 3) EXPECT_EQ(got, all_walks(x.d, x.f, p.a, p.b, ab.punctures())) << name;
      EXPECT_EQ(got.front(), ab.route) << name;
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end())) << name;
      for (const auto& r : routes) {
        std::set<std::size_t> faces(r.faces.begin(), r.faces.end());
        EXPECT_EQ(faces.size(), r.faces.size()) << name;
      }
    }
  }
}

TEST(ChordsInterleave, Basics) {
  EXPECT_TRUE(chords_interleave(0, 2, 1, 3));
  EXPECT_TRUE(chords_interleave(2, 0, 3, 1));
  EXPECT_FALSE(chords_interleave(0, 3, 1, 2));
  EXPECT_FALSE(chords_interleave(0, 1, 2, 3));
  EXPECT_FALSE(chords_interleave(1, 2, 0, 3));
}

TEST(Realize, EmptyRequestIsFeasible) {
  Loaded x("figure_eight.pd");
  auto r = realize_disjoint_system(x.d, x.f, PairList{});
  EXPECT_EQ(r.status, RealizationStatus::Feasible);
  ASSERT_TRUE(r.system);
  EXPECT_TRUE(r.system->arcs.empty());
  EXPECT_FALSE(validate_system(x.d, x.f, *r.system));
}

TEST(Realize, RejectsBadRequests) {
  Loaded x("figure_eight.pd");
  auto kind = [&](PairList pairs, std::size_t cap = kDefaultRouteCap) {
    return error_of([&] { realize_disjoint_system(x.d, x.f, pairs, cap); });
  };
  EXPECT_EQ(kind({{0, 1}}), ErrorKind::InvalidRequest);
  EXPECT_EQ(kind({{2, 2}}), ErrorKind::InvalidRequest);
  EXPECT_EQ(kind({{0, 2}, {2, 0}}), ErrorKind::InvalidRequest);
  EXPECT_EQ(kind({{0, 9}}), ErrorKind::InvalidRequest);
  EXPECT_EQ(kind({{0, 2}}, 0), ErrorKind::InvalidRequest);
}

TEST(Realize, SingleArcIsAlwaysFeasible) {
  for (const auto& name : oracle::connected_corpus()) {
    Loaded x(name);
    for (const auto& p : candidate_pairs(x.f, x.dual)) {
      PairList one{{p.a, p.b}};
      auto r = realize_disjoint_system(x.d, x.f, one);
      ASSERT_EQ(r.status, RealizationStatus::Feasible) << name;
      EXPECT_FALSE(validate_system(x.d, x.f, *r.system)) << name;
      EXPECT_EQ(r.system->arcs[0].route, min_puncture_route(x.dual, p.a, p.b).route) << name;
      EXPECT_EQ(r.system->segments.size(), p.distance + 1) << name;
    }
  }
}

TEST(Realize, GridDiagonalsConflict) {
  Loaded x("grid3x3.pd");
  PairList pairs{{2, 11}, {6, 9}};
  auto r = realize_disjoint_system(x.d, x.f, pairs);
  EXPECT_EQ(r.status, RealizationStatus::Infeasible);
  EXPECT_FALSE(r.truncated);
  EXPECT_FALSE(r.system);
  ASSERT_EQ(r.conflict.size(), 2u);

  // Each diagonal alone is fine.
  for (const auto& p : pairs) {
    EXPECT_EQ(realize_disjoint_system(x.d, x.f, PairList{p}).status, RealizationStatus::Feasible);
  }

  std::vector<FacePair> request{{2, 11, 2}, {6, 9, 2}};
  EXPECT_FALSE(oracle::some_realization_exists(x.d, x.f, routes_for(x.dual, request, kDefaultRouteCap)));
}

TEST(Realize, ConflictCoreIsMinimal) {
  Loaded x("grid3x3.pd");
  PairList pairs{{0, 7}, {2, 11}, {1, 3}, {6, 9}};
  auto r = realize_disjoint_system(x.d, x.f, pairs);
  ASSERT_EQ(r.status, RealizationStatus::Infeasible);
  ASSERT_EQ(r.conflict.size(), 2u);
  EXPECT_EQ(r.conflict[0], (FacePair{2, 11, 2}));
  EXPECT_EQ(r.conflict[1], (FacePair{6, 9, 2}));
}

TEST(Realize, SoundAgainstPolylineEmbedding) {
  for (const auto& name : oracle::connected_corpus()) {
    Loaded x(name);
    if (!check_hypotheses(x.d).passes) continue;
    auto r = find_maximal_system(x.d, x.f, PairList{});
    ASSERT_EQ(r.status, RealizationStatus::Feasible) << name;
    EXPECT_FALSE(validate_system(x.d, x.f, *r.system)) << name;
    EXPECT_EQ(oracle::polyline_crossings(x.d, x.f, *r.system), 0u) << name;
  }
}

TEST(Realize, PolylineOracleSeesInterleavedOrders) {
  // Swapping the order on a shared edge must either keep the system valid or
  // make both checks see a crossing.
  Loaded x("figure_eight.pd");
  auto r = find_maximal_system(x.d, x.f, PairList{});
  ASSERT_TRUE(r.system);
  std::size_t broken = 0;
  for (std::size_t e = 0; e < x.d.edge_count(); ++e) {
    if (r.system->edge_orders[e].size() < 2) continue;
    auto system = *r.system;
    std::reverse(system.edge_orders[e].begin(), system.edge_orders[e].end());
    auto problem = validate_system(x.d, x.f, system);
    auto crossings = oracle::polyline_crossings(x.d, x.f, system);
    bool interleaves = problem && problem->find("interleave") != std::string::npos;
    EXPECT_EQ(interleaves, crossings > 0) << "edge " << e;
    broken += crossings > 0;
  }
  EXPECT_GT(broken, 0u);
}

TEST(Realize, FigureEightMaximalSystem) {
  Loaded x("figure_eight.pd");
  auto r = find_maximal_system(x.d, x.f, PairList{});
  ASSERT_EQ(r.status, RealizationStatus::Feasible);
  const auto& system = *r.system;
  EXPECT_FALSE(validate_system(x.d, x.f, system));
  EXPECT_EQ(oracle::polyline_crossings(x.d, x.f, system), 0u);

  auto used = as_list(system);
  std::set<std::pair<std::size_t, std::size_t>> taken(used.begin(), used.end());
  for (const auto& p : candidate_pairs(x.f, x.dual)) {
    if (taken.count({p.a, p.b})) continue;
    auto more = used;
    more.emplace_back(p.a, p.b);
    EXPECT_EQ(realize_disjoint_system(x.d, x.f, more).status, RealizationStatus::Infeasible);
  }
  // Every candidate pair of the figure-eight fits at once.
  EXPECT_EQ(system.arcs.size(), candidate_pairs(x.f, x.dual).size());
}

TEST(Realize, MaximalSystemsCannotBeExtended) {
  for (const char* name : {"grid2x3.pd", "borromean.pd", "medial_fig8.pd", "wheel4.pd", "torus_2_5.pd"}) {
    Loaded x(name);
    auto r = find_maximal_system(x.d, x.f, PairList{});
    ASSERT_EQ(r.status, RealizationStatus::Feasible) << name;
    EXPECT_EQ(oracle::polyline_crossings(x.d, x.f, *r.system), 0u) << name;
    auto used = as_list(*r.system);
    std::set<std::pair<std::size_t, std::size_t>> taken(used.begin(), used.end());
    for (const auto& p : candidate_pairs(x.f, x.dual)) {
      if (taken.count({p.a, p.b})) continue;
      auto more = used;
      more.emplace_back(p.a, p.b);
      auto extended = realize_disjoint_system(x.d, x.f, more);
      EXPECT_NE(extended.status, RealizationStatus::Feasible) << name << ' ' << p.a << '-' << p.b;
      if (extended.status != RealizationStatus::Infeasible) continue;
      // Confirm the reported core by brute force when it is small.
      if (extended.conflict.size() <= 3) {
        EXPECT_FALSE(oracle::some_realization_exists(x.d, x.f, routes_for(x.dual, extended.conflict, 8)))
            << name;
      }
    }
  }
}

TEST(Realize, SeedIsKept) {
  Loaded x("grid3x3.pd");
  PairList seed{{2, 11}};
  auto r = find_maximal_system(x.d, x.f, seed);
  ASSERT_EQ(r.status, RealizationStatus::Feasible);
  auto used = as_list(*r.system);
  EXPECT_NE(std::find(used.begin(), used.end(), std::pair<std::size_t, std::size_t>{2, 11}), used.end());
  EXPECT_EQ(std::find(used.begin(), used.end(), std::pair<std::size_t, std::size_t>{6, 9}), used.end());
  EXPECT_FALSE(validate_system(x.d, x.f, *r.system));
  EXPECT_EQ(oracle::polyline_crossings(x.d, x.f, *r.system), 0u);
}

TEST(Realize, TruncatedSearchIsUnknown) {
  Loaded x("grid3x3.pd");
  // With one route per pair the search cannot explore alternatives, so any
  // failure involving a pair with more routes is not a proof.
  auto all = find_maximal_system(x.d, x.f, PairList{}, kDefaultRouteCap, 0);
  ASSERT_TRUE(all.system);
  auto used = as_list(*all.system);
  auto r = realize_disjoint_system(x.d, x.f, used, 1);
  EXPECT_TRUE(r.truncated);
  if (r.status == RealizationStatus::Feasible) {
    EXPECT_EQ(oracle::polyline_crossings(x.d, x.f, *r.system), 0u);
  } else {
    EXPECT_EQ(r.status, RealizationStatus::Unknown);
  }
  auto diagonals = realize_disjoint_system(x.d, x.f, PairList{{2, 11}, {6, 9}}, 1);
  EXPECT_EQ(diagonals.status, RealizationStatus::Infeasible);
  EXPECT_FALSE(diagonals.truncated);
}

TEST(ValidateSystem, CatchesBrokenSystems) {
  Loaded x("figure_eight.pd");
  auto r = realize_disjoint_system(x.d, x.f, PairList{{2, 5}});
  ASSERT_TRUE(r.system);

  auto longer = *r.system;
  longer.arcs[0].route.push_back(longer.arcs[0].route.back());
  EXPECT_TRUE(validate_system(x.d, x.f, longer));

  auto missing = *r.system;
  missing.edge_orders[missing.arcs[0].route[0]].clear();
  EXPECT_TRUE(validate_system(x.d, x.f, missing));

  auto repeated = *r.system;
  repeated.arcs.push_back(repeated.arcs[0]);
  EXPECT_TRUE(validate_system(x.d, x.f, repeated));
}

TEST(BuildAugmentedLink, Classification) {
  Loaded x("figure_eight.pd");
  auto classical = realize_disjoint_system(x.d, x.f, PairList{{0, 2}});
  auto link = build_augmented_link(x.d, *classical.system);
  EXPECT_TRUE(link.certificate.passes);
  EXPECT_EQ(link.classical, std::vector<bool>{true});

  auto generalized = realize_disjoint_system(x.d, x.f, PairList{{2, 5}});
  auto link3 = build_augmented_link(x.d, *generalized.system);
  EXPECT_EQ(link3.system.arcs[0].punctures(), 3u);
  EXPECT_EQ(link3.classical, std::vector<bool>{false});
}

TEST(BuildAugmentedLink, Errors) {
  Loaded trefoil("trefoil.pd");
  auto pairs = candidate_pairs(trefoil.f, trefoil.dual);
  auto r = realize_disjoint_system(trefoil.d, trefoil.f, PairList{{pairs[0].a, pairs[0].b}});
  ASSERT_TRUE(r.system);
  EXPECT_EQ(error_of([&] { build_augmented_link(trefoil.d, *r.system); }), ErrorKind::HypothesisFailure);
  EXPECT_EQ(error_of([&] { build_augmented_link(trefoil.d, ArcSystem{}); }), ErrorKind::HypothesisFailure);

  Loaded x("figure_eight.pd");
  auto good = realize_disjoint_system(x.d, x.f, PairList{{0, 2}});
  auto bad = *good.system;
  bad.arcs[0].to = 1;
  EXPECT_EQ(error_of([&] { build_augmented_link(x.d, bad); }), ErrorKind::InvalidSystem);
}
