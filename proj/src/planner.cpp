#include "auglab/planner.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "auglab/error.hpp"

namespace auglab {

DualGraph::DualGraph(const LinkDiagram& d, const FaceMap& f) : adjacency_(f.face_count()) {
  ends_.reserve(d.edge_count());
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto& [lo, hi] = d.edge_darts(e);
    std::size_t a = f.face_of(lo);
    std::size_t b = f.face_of(hi);
    ends_.emplace_back(a, b);
    adjacency_[a].push_back({e, b});
    if (a != b) adjacency_[b].push_back({e, a});
  }
}

bool DualGraph::adjacent(std::size_t a, std::size_t b) const {
  return std::any_of(adjacency_[a].begin(), adjacency_[a].end(),
                     [b](const Step& s) { return s.face == b; });
}

std::vector<std::size_t> DualGraph::distances_from(std::size_t face) const {
  std::vector<std::size_t> dist(node_count(), kUnreachable);
  std::queue<std::size_t> todo;
  dist[face] = 0;
  todo.push(face);
  while (!todo.empty()) {
    auto x = todo.front();
    todo.pop();
    for (const auto& s : adjacency_[x]) {
      if (dist[s.face] != kUnreachable) continue;
      dist[s.face] = dist[x] + 1;
      todo.push(s.face);
    }
  }
  return dist;
}

DualGraph build_dual(const LinkDiagram& d, const FaceMap& f) { return DualGraph(d, f); }

std::vector<FacePair> candidate_pairs(const FaceMap& f, const DualGraph& dual) {
  std::vector<FacePair> out;
  for (std::size_t a = 0; a < f.face_count(); ++a) {
    auto dist = dual.distances_from(a);
    for (std::size_t b = a + 1; b < f.face_count(); ++b) {
      if (dist[b] != kUnreachable && dist[b] >= 2) out.push_back({a, b, dist[b]});
    }
  }
  return out;
}

std::vector<AugmentationArc> enumerate_shortest_routes(const DualGraph& dual, std::size_t a,
                                                       std::size_t b, std::size_t cap) {
  std::vector<AugmentationArc> out;
  if (cap == 0 || a >= dual.node_count() || b >= dual.node_count()) return out;
  auto to_target = dual.distances_from(b);
  if (to_target[a] == kUnreachable) return out;

  // Depth-first along edges that bring the target one step closer; adjacency
  // lists are sorted by edge index, so routes come out in lexicographic order.
  AugmentationArc current;
  current.from = a;
  current.to = b;
  current.faces.push_back(a);
  std::function<void(std::size_t)> extend = [&](std::size_t face) {
    if (out.size() >= cap) return;
    if (face == b) {
      out.push_back(current);
      return;
    }
    for (const auto& s : dual.steps(face)) {
      if (to_target[s.face] + 1 != to_target[face]) continue;
      current.route.push_back(s.edge);
      current.faces.push_back(s.face);
      extend(s.face);
      current.route.pop_back();
      current.faces.pop_back();
      if (out.size() >= cap) return;
    }
  };
  extend(a);
  return out;
}

AugmentationArc min_puncture_route(const DualGraph& dual, std::size_t a, std::size_t b) {
  auto routes = enumerate_shortest_routes(dual, a, b, 1);
  if (routes.empty()) {
    throw Error(ErrorKind::NoPath, "no dual path from face " + std::to_string(a) + " to face " +
                                       std::to_string(b));
  }
  return std::move(routes.front());
}

bool chords_interleave(std::size_t p1, std::size_t q1, std::size_t p2, std::size_t q2) noexcept {
  if (p1 > q1) std::swap(p1, q1);
  bool p2_inside = p1 < p2 && p2 < q1;
  bool q2_inside = p1 < q2 && q2 < q1;
  return p2_inside != q2_inside;
}

namespace {

// Where an edge lies on the boundary of one of its faces.  `forward` is true
// when the face runs along the edge from its lower dart to its higher dart.
struct SideRef {
  std::size_t side = 0;
  bool forward = true;
};

SideRef side_in_face(const LinkDiagram& d, const FaceMap& f, std::size_t edge, std::size_t face) {
  const auto& [lo, hi] = d.edge_darts(edge);
  if (f.face_of(lo) == face) return {f.position_of(lo), true};
  return {f.position_of(hi), false};
}

std::size_t rank_on_side(const std::vector<std::size_t>& order, std::size_t arc, bool forward) {
  auto idx = static_cast<std::size_t>(std::find(order.begin(), order.end(), arc) - order.begin());
  return forward ? idx : order.size() - 1 - idx;
}

// A segment passing through a face: it enters across one edge and leaves
// across another.
struct Chord {
  std::size_t arc;
  std::size_t in_edge;
  std::size_t out_edge;
};

// The chords in one face.
struct FaceChords {
  std::vector<Chord> chords;
};

std::vector<FaceChords> chords_by_face(const FaceMap& f, std::span<const AugmentationArc> arcs) {
  std::vector<FaceChords> out(f.face_count());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& arc = arcs[i];
    for (std::size_t k = 1; k + 1 < arc.faces.size(); ++k) {
      out[arc.faces[k]].chords.push_back({i, arc.route[k - 1], arc.route[k]});
    }
  }
  return out;
}

// True when no two chords of the face interleave under the given per-edge
// orders.
bool face_is_planar(const LinkDiagram& d, const FaceMap& f, std::size_t face,
                    const std::vector<Chord>& chords,
                    const std::vector<std::vector<std::size_t>>& edge_orders) {
  if (chords.size() < 2) return true;
  // Boundary position of a point: side first, then rank along the side.
  auto position = [&](std::size_t arc, std::size_t edge) {
    auto ref = side_in_face(d, f, edge, face);
    return std::pair{ref.side, rank_on_side(edge_orders[edge], arc, ref.forward)};
  };
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> ends;
  ends.reserve(chords.size());
  for (const auto& c : chords) ends.emplace_back(position(c.arc, c.in_edge), position(c.arc, c.out_edge));

  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& [p, q] : ends) {
    keys.push_back(p);
    keys.push_back(q);
  }
  std::sort(keys.begin(), keys.end());
  auto index = [&](const std::pair<std::size_t, std::size_t>& k) {
    return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
  };
  for (std::size_t i = 0; i < ends.size(); ++i) {
    for (std::size_t j = i + 1; j < ends.size(); ++j) {
      if (chords_interleave(index(ends[i].first), index(ends[i].second), index(ends[j].first),
                            index(ends[j].second))) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> arcs_on_edges(std::size_t edge_count,
                                                    std::span<const AugmentationArc> arcs) {
  std::vector<std::vector<std::size_t>> on_edge(edge_count);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t e : arcs[i].route) on_edge[e].push_back(i);
  }
  return on_edge;
}

// Edge orders as pairwise precedence.  For two arcs i < j sharing edge e the
// variable (e, i, j) says whether i comes first from the lower dart.  Two
// chords of a face can only interleave depending on the edges they share, so
// every face condition is a constraint on at most two variables of one arc
// pair; the orders on each edge must in addition be transitive.
class OrderSolver {
 public:
  OrderSolver(const LinkDiagram& d, const FaceMap& f, std::span<const AugmentationArc> arcs)
      : d_(d), f_(f), arcs_(arcs), on_edge_(arcs_on_edges(d.edge_count(), arcs)) {}

  std::optional<std::vector<std::vector<std::size_t>>> solve() {
    auto by_face = chords_by_face(f_, arcs_);
    for (std::size_t face = 0; face < f_.face_count(); ++face) {
      const auto& chords = by_face[face].chords;
      for (std::size_t x = 0; x < chords.size(); ++x) {
        for (std::size_t y = x + 1; y < chords.size(); ++y) {
          if (!constrain(face, chords[x], chords[y])) return std::nullopt;
        }
      }
    }
    if (!build_groups()) return std::nullopt;
    value_.assign(vars_.size(), -1);
    if (!assign(0)) return std::nullopt;
    return orders();
  }

 private:
  struct Var {
    std::size_t edge;
    std::size_t first;
    std::size_t second;
  };
  // Allowed assignments of (a) or (a, b): bit (va + 2 vb).
  struct Constraint {
    std::size_t a;
    std::size_t b;
    unsigned allowed;
  };
  struct Group {
    std::vector<std::size_t> vars;
    std::vector<std::vector<bool>> solutions;
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t var(std::size_t edge, std::size_t i, std::size_t j) {
    auto key = std::tuple{edge, std::min(i, j), std::max(i, j)};
    auto [it, inserted] = index_.try_emplace(key, vars_.size());
    if (inserted) vars_.push_back({edge, std::min(i, j), std::max(i, j)});
    return it->second;
  }

  bool constrain(std::size_t face, const Chord& c1, const Chord& c2) {
    std::vector<std::size_t> shared;
    for (std::size_t e : {c1.in_edge, c1.out_edge}) {
      if (e == c2.in_edge || e == c2.out_edge) shared.push_back(e);
    }
    std::vector<std::size_t> vs;
    for (std::size_t e : shared) vs.push_back(var(e, c1.arc, c2.arc));

    // Boundary key of an endpoint given the precedence bits of the shared edges.
    auto key = [&](std::size_t arc, std::size_t edge, unsigned bits) {
      auto ref = side_in_face(d_, f_, edge, face);
      std::size_t rank = 0;
      for (std::size_t k = 0; k < shared.size(); ++k) {
        if (shared[k] != edge) continue;
        bool low_first = (bits >> k) & 1u;
        bool arc_is_low = arc == std::min(c1.arc, c2.arc);
        rank = (low_first == arc_is_low) ? 0 : 1;
        if (!ref.forward) rank = 1 - rank;
      }
      return std::pair{ref.side, rank};
    };

    unsigned allowed = 0;
    for (unsigned bits = 0; bits < (1u << shared.size()); ++bits) {
      std::array<std::pair<std::size_t, std::size_t>, 4> k = {
          key(c1.arc, c1.in_edge, bits), key(c1.arc, c1.out_edge, bits),
          key(c2.arc, c2.in_edge, bits), key(c2.arc, c2.out_edge, bits)};
      auto sorted = k;
      std::sort(sorted.begin(), sorted.end());
      auto pos = [&](std::size_t n) {
        return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), k[n]) - sorted.begin());
      };
      if (!chords_interleave(pos(0), pos(1), pos(2), pos(3))) allowed |= 1u << bits;
    }
    if (allowed == 0) return false;
    if (shared.empty()) return true;
    constraints_.push_back({vs[0], vs.size() > 1 ? vs[1] : kNone, allowed});
    return true;
  }

  bool satisfied(const Constraint& c, const std::vector<int>& value) const {
    int a = value[c.a];
    int b = c.b == kNone ? 0 : value[c.b];
    if (a < 0 || b < 0) return true;
    return (c.allowed >> (a + 2 * b)) & 1u;
  }

  // Variables tied by two-variable constraints are decided together; each
  // group's consistent assignments are listed up front.
  bool build_groups() {
    // Every shared edge needs its variables even when no face constrains them.
    for (std::size_t e = 0; e < on_edge_.size(); ++e) {
      const auto& list = on_edge_[e];
      for (std::size_t x = 0; x < list.size(); ++x) {
        for (std::size_t y = x + 1; y < list.size(); ++y) var(e, list[x], list[y]);
      }
    }
    std::vector<std::size_t> parent(vars_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& c : constraints_) {
      if (c.b != kNone) parent[find(c.a)] = find(c.b);
    }
    std::map<std::size_t, std::size_t> group_of_root;
    group_of_.assign(vars_.size(), 0);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      auto [it, inserted] = group_of_root.try_emplace(find(v), groups_.size());
      if (inserted) groups_.emplace_back();
      groups_[it->second].vars.push_back(v);
      group_of_[v] = it->second;
    }
    std::vector<std::vector<std::size_t>> constraints_of(groups_.size());
    for (std::size_t k = 0; k < constraints_.size(); ++k) constraints_of[group_of_[constraints_[k].a]].push_back(k);

    std::vector<int> scratch(vars_.size(), -1);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      auto& group = groups_[g];
      std::function<void(std::size_t)> extend = [&](std::size_t k) {
        if (k == group.vars.size()) {
          std::vector<bool> sol;
          for (std::size_t v : group.vars) sol.push_back(scratch[v] == 1);
          group.solutions.push_back(std::move(sol));
          return;
        }
        for (int value : {1, 0}) {
          scratch[group.vars[k]] = value;
          bool ok = std::all_of(constraints_of[g].begin(), constraints_of[g].end(),
                                [&](std::size_t c) { return satisfied(constraints_[c], scratch); });
          if (ok) extend(k + 1);
        }
        scratch[group.vars[k]] = -1;
      };
      extend(0);
      if (group.solutions.empty()) return false;
    }
    order_.resize(groups_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return groups_[x].solutions.size() < groups_[y].solutions.size();
    });
    return true;
  }

  // True when arc x precedes arc y on edge e; needs the variable assigned.
  int precedes(std::size_t e, std::size_t x, std::size_t y) const {
    auto it = index_.find(std::tuple{e, std::min(x, y), std::max(x, y)});
    int v = value_[it->second];
    if (v < 0) return -1;
    return x < y ? v : 1 - v;
  }

  // No three arcs on the edge of `v` form a cycle.
  bool transitive_around(std::size_t v) const {
    const auto& [e, i, j] = vars_[v];
    for (std::size_t k : on_edge_[e]) {
      if (k == i || k == j) continue;
      int ij = precedes(e, i, j), jk = precedes(e, j, k), ki = precedes(e, k, i);
      if (ij < 0 || jk < 0 || ki < 0) continue;
      if (ij == jk && jk == ki) return false;
    }
    return true;
  }

  bool assign(std::size_t k) {
    if (k == order_.size()) return true;
    const auto& group = groups_[order_[k]];
    for (const auto& sol : group.solutions) {
      for (std::size_t n = 0; n < group.vars.size(); ++n) value_[group.vars[n]] = sol[n] ? 1 : 0;
      bool ok = std::all_of(group.vars.begin(), group.vars.end(),
                            [&](std::size_t v) { return transitive_around(v); });
      if (ok && assign(k + 1)) return true;
    }
    for (std::size_t v : group.vars) value_[v] = -1;
    return false;
  }

  std::vector<std::vector<std::size_t>> orders() const {
    auto out = on_edge_;
    for (std::size_t e = 0; e < out.size(); ++e) {
      std::sort(out[e].begin(), out[e].end(),
                [&](std::size_t x, std::size_t y) { return precedes(e, x, y) == 1; });
    }
    return out;
  }

  const LinkDiagram& d_;
  const FaceMap& f_;
  std::span<const AugmentationArc> arcs_;
  std::vector<std::vector<std::size_t>> on_edge_;
  std::vector<Var> vars_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index_;
  std::vector<Constraint> constraints_;
  std::vector<Group> groups_;
  std::vector<std::size_t> group_of_;
  std::vector<std::size_t> order_;
  std::vector<int> value_;
};

std::optional<std::vector<std::vector<std::size_t>>> find_edge_orders(
    const LinkDiagram& d, const FaceMap& f, std::span<const AugmentationArc> arcs) {
  return OrderSolver(d, f, arcs).solve();
}

std::vector<Segment> build_segments(const LinkDiagram& d, const FaceMap& f,
                                    const std::vector<AugmentationArc>& arcs,
                                    const std::vector<std::vector<std::size_t>>& orders) {
  std::vector<Segment> out;
  auto edge_point = [&](std::size_t arc, std::size_t edge, std::size_t face) {
    auto ref = side_in_face(d, f, edge, face);
    return Attachment{Attachment::Kind::Edge, edge, ref.side, rank_on_side(orders[edge], arc, ref.forward)};
  };
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& arc = arcs[i];
    const std::size_t n = arc.route.size();
    for (std::size_t k = 0; k <= n; ++k) {
      Segment s;
      s.arc = i;
      s.face = arc.faces[k];
      if (k == 0) {
        s.second = edge_point(i, arc.route[0], s.face);
        s.first = s.second;
        s.first.kind = Attachment::Kind::Interior;
      } else if (k == n) {
        s.first = edge_point(i, arc.route[n - 1], s.face);
        s.second = s.first;
        s.second.kind = Attachment::Kind::Interior;
      } else {
        s.first = edge_point(i, arc.route[k - 1], s.face);
        s.second = edge_point(i, arc.route[k], s.face);
      }
      out.push_back(s);
    }
  }
  return out;
}

struct Request {
  std::vector<FacePair> pairs;
  std::vector<std::vector<AugmentationArc>> routes;
  std::vector<bool> truncated;
  // (pair, route, pair, route) -> the two routes can be drawn disjointly.
  mutable std::map<std::array<std::size_t, 4>, bool> compatible;
};

bool routes_compatible(const LinkDiagram& d, const FaceMap& f, const Request& r, std::size_t x,
                       std::size_t rx, std::size_t y, std::size_t ry) {
  if (x > y) {
    std::swap(x, y);
    std::swap(rx, ry);
  }
  auto [it, inserted] = r.compatible.try_emplace({x, rx, y, ry}, false);
  if (inserted) {
    std::array<AugmentationArc, 2> two{r.routes[x][rx], r.routes[y][ry]};
    // Only faces both arcs pass through can hold interleaving chords.
    std::set<std::size_t> inner(two[0].faces.begin() + 1, two[0].faces.end() - 1);
    bool meet = std::any_of(two[1].faces.begin() + 1, two[1].faces.end() - 1,
                            [&](std::size_t face) { return inner.count(face) > 0; });
    it->second = !meet || find_edge_orders(d, f, two).has_value();
  }
  return it->second;
}

Request prepare(const LinkDiagram& d, const FaceMap& f, const DualGraph& dual,
                std::span<const std::pair<std::size_t, std::size_t>> pairs, std::size_t cap) {
  if (cap == 0) throw Error(ErrorKind::InvalidRequest, "route cap must be at least 1");
  (void)d;
  Request r;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : pairs) {
    std::ostringstream who;
    who << "pair [" << a << ", " << b << "]";
    if (a >= f.face_count() || b >= f.face_count()) {
      throw Error(ErrorKind::InvalidRequest, who.str() + " names a face outside 0.." +
                                                 std::to_string(f.face_count() - 1));
    }
    if (a == b) throw Error(ErrorKind::InvalidRequest, who.str() + " repeats one face");
    if (dual.adjacent(a, b)) throw Error(ErrorKind::InvalidRequest, who.str() + " shares an edge");
    if (!seen.insert(std::minmax(a, b)).second) {
      throw Error(ErrorKind::InvalidRequest, who.str() + " is requested more than once");
    }
    auto routes = enumerate_shortest_routes(dual, a, b, cap + 1);
    if (routes.empty()) throw Error(ErrorKind::NoPath, who.str() + " is not connected in the dual graph");
    r.truncated.push_back(routes.size() > cap);
    if (routes.size() > cap) routes.resize(cap);
    r.pairs.push_back({a, b, routes.front().route.size()});
    r.routes.push_back(std::move(routes));
  }
  return r;
}

// Picks one route per arc.  Route domains are first made pairwise consistent;
// the search then takes the arc with the fewest remaining routes, prunes the
// others against the choice and checks the whole partial system each step.
std::optional<ArcSystem> search(const LinkDiagram& d, const FaceMap& f, const Request& r,
                                const std::vector<std::size_t>& members) {
  const std::size_t m = members.size();
  using Domains = std::vector<std::vector<std::size_t>>;
  Domains domains(m);
  for (std::size_t k = 0; k < m; ++k) {
    domains[k].resize(r.routes[members[k]].size());
    std::iota(domains[k].begin(), domains[k].end(), std::size_t{0});
  }
  auto supported = [&](std::size_t x, std::size_t rx, std::size_t y, const std::vector<std::size_t>& dom) {
    return std::any_of(dom.begin(), dom.end(), [&](std::size_t ry) {
      return routes_compatible(d, f, r, members[x], rx, members[y], ry);
    });
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        if (x == y) continue;
        auto& dom = domains[x];
        auto keep = std::remove_if(dom.begin(), dom.end(),
                                   [&](std::size_t rx) { return !supported(x, rx, y, domains[y]); });
        if (keep != dom.end()) {
          dom.erase(keep, dom.end());
          changed = true;
        }
        if (dom.empty()) return std::nullopt;
      }
    }
  }

  std::vector<std::size_t> order;
  std::vector<AugmentationArc> chosen;
  std::vector<bool> done(m, false);
  std::optional<std::vector<std::vector<std::size_t>>> found;
  std::function<bool(const Domains&)> choose = [&](const Domains& dom) {
    std::size_t next = m;
    for (std::size_t k = 0; k < m; ++k) {
      if (!done[k] && (next == m || dom[k].size() < dom[next].size())) next = k;
    }
    if (next == m) return true;
    done[next] = true;
    order.push_back(next);
    for (std::size_t ri : dom[next]) {
      chosen.push_back(r.routes[members[next]][ri]);
      Domains narrowed = dom;
      bool alive = true;
      for (std::size_t k = 0; k < m && alive; ++k) {
        if (done[k]) continue;
        auto& dk = narrowed[k];
        dk.erase(std::remove_if(dk.begin(), dk.end(),
                                [&](std::size_t rk) {
                                  return !routes_compatible(d, f, r, members[next], ri, members[k], rk);
                                }),
                 dk.end());
        alive = !dk.empty();
      }
      if (alive) {
        auto orders = find_edge_orders(d, f, chosen);
        if (orders) {
          if (chosen.size() == m) {
            found = std::move(orders);
            return true;
          }
          if (choose(narrowed)) return true;
        }
      }
      chosen.pop_back();
    }
    done[next] = false;
    order.pop_back();
    return false;
  };
  if (m == 0) {
    return ArcSystem{{}, std::vector<std::vector<std::size_t>>(d.edge_count()), {}};
  }
  if (!choose(domains)) return std::nullopt;

  // Report arcs in request order; `order` holds positions within `members`.
  std::vector<AugmentationArc> arcs(m);
  std::vector<std::size_t> slot(m);
  for (std::size_t k = 0; k < m; ++k) {
    arcs[order[k]] = chosen[k];
    slot[k] = order[k];
  }
  auto orders = std::move(*found);
  for (auto& list : orders) {
    for (auto& arc : list) arc = slot[arc];
  }
  ArcSystem system;
  system.segments = build_segments(d, f, arcs, orders);
  system.arcs = std::move(arcs);
  system.edge_orders = std::move(orders);
  return system;
}

Realization solve(const LinkDiagram& d, const FaceMap& f, const Request& r, std::size_t cap,
                  bool want_core = true) {
  Realization out;
  out.cap = cap;
  out.truncated = std::any_of(r.truncated.begin(), r.truncated.end(), [](bool t) { return t; });

  std::vector<std::size_t> members(r.pairs.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  if (auto system = search(d, f, r, members)) {
    out.status = RealizationStatus::Feasible;
    out.system = std::move(system);
    return out;
  }
  if (!want_core) {
    out.status = out.truncated ? RealizationStatus::Unknown : RealizationStatus::Infeasible;
    return out;
  }

  // Deletion filter: drop every pair whose removal keeps the rest unrealizable.
  std::vector<std::size_t> core = members;
  for (std::size_t i : members) {
    std::vector<std::size_t> trial;
    std::copy_if(core.begin(), core.end(), std::back_inserter(trial), [i](std::size_t x) { return x != i; });
    if (!search(d, f, r, trial)) core = std::move(trial);
  }
  bool core_truncated = false;
  for (std::size_t i : core) {
    out.conflict.push_back(r.pairs[i]);
    core_truncated = core_truncated || r.truncated[i];
  }
  out.status = core_truncated ? RealizationStatus::Unknown : RealizationStatus::Infeasible;
  return out;
}

}  // namespace

Realization realize_disjoint_system(const LinkDiagram& d, const FaceMap& f,
                                    std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                    std::size_t cap) {
  DualGraph dual(d, f);
  return solve(d, f, prepare(d, f, dual, pairs, cap), cap);
}

Realization find_maximal_system(const LinkDiagram& d, const FaceMap& f,
                                std::span<const std::pair<std::size_t, std::size_t>> seed,
                                std::size_t cap, std::size_t exhaustive_limit) {
  DualGraph dual(d, f);
  std::vector<std::pair<std::size_t, std::size_t>> chosen(seed.begin(), seed.end());
  auto base = solve(d, f, prepare(d, f, dual, chosen, cap), cap);
  if (base.status != RealizationStatus::Feasible) return base;

  std::set<std::pair<std::size_t, std::size_t>> taken;
  for (auto [a, b] : chosen) taken.insert(std::minmax(a, b));
  std::vector<std::pair<std::size_t, std::size_t>> extra;
  for (const auto& p : candidate_pairs(f, dual)) {
    if (!taken.count({p.a, p.b})) extra.emplace_back(p.a, p.b);
  }

  auto feasible = [&](const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    return solve(d, f, prepare(d, f, dual, pairs, cap), cap, false).status == RealizationStatus::Feasible;
  };

  if (extra.size() <= exhaustive_limit) {
    // Branch and bound over subsets of the remaining candidates.
    std::vector<std::pair<std::size_t, std::size_t>> best = chosen;
    std::vector<std::pair<std::size_t, std::size_t>> current = chosen;
    std::function<void(std::size_t)> branch = [&](std::size_t k) {
      if (current.size() + (extra.size() - k) <= best.size()) return;
      if (k == extra.size()) {
        best = current;
        return;
      }
      current.push_back(extra[k]);
      if (feasible(current)) branch(k + 1);
      current.pop_back();
      branch(k + 1);
    };
    branch(0);
    chosen = std::move(best);
  } else {
    for (const auto& p : extra) {
      chosen.push_back(p);
      if (!feasible(chosen)) chosen.pop_back();
    }
  }
  return solve(d, f, prepare(d, f, dual, chosen, cap), cap);
}

std::optional<std::string> validate_system(const LinkDiagram& d, const FaceMap& f,
                                           const ArcSystem& system) {
  DualGraph dual(d, f);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < system.arcs.size(); ++i) {
    const auto& arc = system.arcs[i];
    std::string who = "arc " + std::to_string(i) + ": ";
    if (arc.from >= f.face_count() || arc.to >= f.face_count()) return who + "face out of range";
    if (arc.from == arc.to) return who + "endpoints coincide";
    if (dual.adjacent(arc.from, arc.to)) return who + "endpoint faces share an edge";
    if (!pairs.insert(std::minmax(arc.from, arc.to)).second) return who + "face pair repeated";
    if (arc.route.size() < 2) return who + "fewer than two punctures";
    if (arc.faces.size() != arc.route.size() + 1 || arc.faces.front() != arc.from ||
        arc.faces.back() != arc.to) {
      return who + "face sequence does not match route";
    }
    for (std::size_t k = 0; k < arc.route.size(); ++k) {
      if (arc.route[k] >= d.edge_count()) return who + "edge out of range";
      auto [x, y] = dual.ends(arc.route[k]);
      if (std::minmax(x, y) != std::minmax(arc.faces[k], arc.faces[k + 1])) {
        return who + "route step " + std::to_string(k) + " does not join consecutive faces";
      }
    }
    if (std::set<std::size_t>(arc.faces.begin(), arc.faces.end()).size() != arc.faces.size()) {
      return who + "route revisits a face";
    }
    if (dual.distances_from(arc.from)[arc.to] != arc.route.size()) return who + "route is not minimal";
  }

  if (system.edge_orders.size() != d.edge_count()) return std::string("edge order table has wrong size");
  auto expected = arcs_on_edges(d.edge_count(), system.arcs);
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    auto have = system.edge_orders[e];
    std::sort(have.begin(), have.end());
    if (have != expected[e]) return "edge " + std::to_string(d.edge_label(e)) + ": order lists the wrong arcs";
  }

  auto by_face = chords_by_face(f, system.arcs);
  for (std::size_t face = 0; face < f.face_count(); ++face) {
    if (!face_is_planar(d, f, face, by_face[face].chords, system.edge_orders)) {
      return "face " + std::to_string(face) + ": segments interleave";
    }
  }

  auto segments = build_segments(d, f, system.arcs, system.edge_orders);
  if (segments.size() != system.segments.size()) return std::string("segment table has wrong size");
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto& s = segments[k];
    const auto& t = system.segments[k];
    auto same = [](const Attachment& x, const Attachment& y) {
      return x.kind == y.kind && x.edge == y.edge && x.side == y.side && x.rank == y.rank;
    };
    if (s.arc != t.arc || s.face != t.face || !same(s.first, t.first) || !same(s.second, t.second)) {
      return "segment " + std::to_string(k) + " disagrees with the edge orders";
    }
  }
  return std::nullopt;
}

AugmentedLink build_augmented_link(const LinkDiagram& d, const ArcSystem& system) {
  auto report = check_hypotheses(d);
  if (!report.passes) {
    std::string failed;
    for (const auto& w : report.witnesses) {
      if (!failed.empty()) failed += ", ";
      failed += std::string(to_string(w.flag));
    }
    throw Error(ErrorKind::HypothesisFailure, "diagram fails the hyperbolicity hypotheses (" + failed + ")");
  }
  auto faces = build_faces(d);
  if (auto problem = validate_system(d, faces, system)) throw Error(ErrorKind::InvalidSystem, *problem);

  AugmentedLink link{d, system, std::move(report), {}};
  for (const auto& arc : system.arcs) link.classical.push_back(arc.classical());
  return link;
}

}  // namespace auglab
