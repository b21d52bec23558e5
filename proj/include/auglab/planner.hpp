#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "auglab/diagram.hpp"
#include "auglab/hypothesis.hpp"

namespace auglab {

inline constexpr std::size_t kDefaultRouteCap = 64;
inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

// Faces as nodes; diagram edge e is dual edge e joining the faces on its two
// sides.  Adjacency lists are sorted by edge index.
class DualGraph {
 public:
  struct Step {
    std::size_t edge;
    std::size_t face;
  };

  DualGraph(const LinkDiagram& d, const FaceMap& f);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return ends_.size(); }
  const std::pair<std::size_t, std::size_t>& ends(std::size_t edge) const { return ends_[edge]; }
  const std::vector<Step>& steps(std::size_t face) const { return adjacency_[face]; }
  bool adjacent(std::size_t a, std::size_t b) const;

  // BFS distances in edges; kUnreachable where no path exists.
  std::vector<std::size_t> distances_from(std::size_t face) const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::vector<Step>> adjacency_;
};

DualGraph build_dual(const LinkDiagram& d, const FaceMap& f);

struct FacePair {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t distance = 0;

  friend bool operator==(const FacePair& x, const FacePair& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// Unordered pairs (a < b) of faces sharing no edge, with their dual distance.
std::vector<FacePair> candidate_pairs(const FaceMap& f, const DualGraph& dual);

// The projection of a vertical component: it starts inside face `from`,
// crosses the diagram edges in `route` and ends inside face `to`.  `faces`
// lists the faces visited, from `from` to `to`.
struct AugmentationArc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<std::size_t> route;
  std::vector<std::size_t> faces;

  std::size_t punctures() const noexcept { return route.size(); }
  bool classical() const noexcept { return route.size() == 2; }
};

// Shortest dual path; ties broken by the lexicographically least sequence of
// crossed edges.  Throws Error(NoPath) when b is unreachable from a.
AugmentationArc min_puncture_route(const DualGraph& dual, std::size_t a, std::size_t b);

// Up to `cap` shortest routes in lexicographic order of crossed edges.
std::vector<AugmentationArc> enumerate_shortest_routes(const DualGraph& dual, std::size_t a,
                                                       std::size_t b, std::size_t cap);

// Where an arc segment meets the boundary of a face.  Edge points sit on the
// boundary side `side` (an index into Face::darts) at `rank` among the arc
// points on that side, counted in boundary order.  An interior point is the
// puncture of the vertical component; it is placed in the boundary gap just
// before the edge point of the same segment, so `side` and `rank` repeat that
// point's position.
struct Attachment {
  enum class Kind { Edge, Interior };
  Kind kind = Kind::Edge;
  std::size_t edge = 0;
  std::size_t side = 0;
  std::size_t rank = 0;
};

struct Segment {
  std::size_t arc = 0;
  std::size_t face = 0;
  Attachment first;
  Attachment second;
};

struct ArcSystem {
  std::vector<AugmentationArc> arcs;
  // For each diagram edge, the arcs crossing it, ordered from the lower to
  // the higher dart of the edge.
  std::vector<std::vector<std::size_t>> edge_orders;
  std::vector<Segment> segments;
};

enum class RealizationStatus { Feasible, Infeasible, Unknown };

struct Realization {
  RealizationStatus status = RealizationStatus::Infeasible;
  std::optional<ArcSystem> system;
  // Infeasible or Unknown: a subset of the requested pairs that already admits
  // no disjoint realization, minimal under removal of any one pair.
  std::vector<FacePair> conflict;
  std::size_t cap = kDefaultRouteCap;
  // Some pair has more than `cap` shortest routes.
  bool truncated = false;
};

// Searches for disjoint minimal representatives of all pairs.  Each arc uses a
// shortest route; segments inside every face must not interleave around the
// boundary, with one order of arc crossings per edge shared by both sides.
// Throws Error(InvalidRequest) for non-candidate or repeated pairs.
Realization realize_disjoint_system(const LinkDiagram& d, const FaceMap& f,
                                    std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                    std::size_t cap = kDefaultRouteCap);

// Extends `seed` by further candidate pairs until no candidate can be added.
// With at most `exhaustive_limit` candidates the result has maximum size.
Realization find_maximal_system(const LinkDiagram& d, const FaceMap& f,
                                std::span<const std::pair<std::size_t, std::size_t>> seed,
                                std::size_t cap = kDefaultRouteCap,
                                std::size_t exhaustive_limit = 16);

// Checks every ArcSystem invariant; returns an explanation on failure.
std::optional<std::string> validate_system(const LinkDiagram& d, const FaceMap& f,
                                           const ArcSystem& system);

// Two chords of a face with boundary positions (p1, q1) and (p2, q2) cross
// iff exactly one of p2, q2 lies strictly between p1 and q1.
bool chords_interleave(std::size_t p1, std::size_t q1, std::size_t p2, std::size_t q2) noexcept;

struct AugmentedLink {
  LinkDiagram base;
  ArcSystem system;
  HypothesisReport certificate;
  // Per arc: true for a twice-punctured (classical) disk.
  std::vector<bool> classical;
};

// Throws Error(HypothesisFailure) if the diagram fails the gate and
// Error(InvalidSystem) if the system is not valid for it.
AugmentedLink build_augmented_link(const LinkDiagram& d, const ArcSystem& system);

}  // namespace auglab
