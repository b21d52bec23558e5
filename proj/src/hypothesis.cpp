#include "auglab/hypothesis.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace auglab {

namespace {

struct Incidence {
  std::uint32_t neighbor;
  std::size_t edge;
};

std::vector<std::vector<Incidence>> incidence_lists(const LinkDiagram& d) {
  std::vector<std::vector<Incidence>> adj(d.crossing_count());
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto& [a, b] = d.edge_darts(e);
    adj[a.crossing].push_back({b.crossing, e});
    if (a.crossing != b.crossing) adj[b.crossing].push_back({a.crossing, e});
  }
  return adj;
}

// Crossings reachable from crossing 0 once the given edges are deleted.
std::vector<bool> reachable_without(const std::vector<std::vector<Incidence>>& adj,
                                    std::size_t skip_a, std::size_t skip_b) {
  std::vector<bool> seen(adj.size(), false);
  std::queue<std::uint32_t> todo;
  seen[0] = true;
  todo.push(0);
  while (!todo.empty()) {
    auto c = todo.front();
    todo.pop();
    for (const auto& inc : adj[c]) {
      if (inc.edge == skip_a || inc.edge == skip_b || seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      todo.push(inc.neighbor);
    }
  }
  return seen;
}

// Bridges of the multigraph with one edge deleted (Tarjan low-link).  Parallel
// edges are told apart by edge index, so a doubled edge is never a bridge.
std::vector<bool> bridges_without(const std::vector<std::vector<Incidence>>& adj,
                                  std::size_t edge_count, std::size_t skipped) {
  const std::size_t n = adj.size();
  std::vector<int> order(n, -1), low(n, 0);
  std::vector<bool> bridge(edge_count, false);
  int clock = 0;

  std::function<void(std::uint32_t, std::size_t)> visit = [&](std::uint32_t v, std::size_t via) {
    order[v] = low[v] = clock++;
    for (const auto& inc : adj[v]) {
      if (inc.edge == skipped || inc.edge == via) continue;
      if (inc.neighbor == v) continue;
      if (order[inc.neighbor] < 0) {
        visit(inc.neighbor, inc.edge);
        low[v] = std::min(low[v], low[inc.neighbor]);
        if (low[inc.neighbor] > order[v]) bridge[inc.edge] = true;
      } else {
        low[v] = std::min(low[v], order[inc.neighbor]);
      }
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    if (order[v] < 0) visit(v, edge_count);
  }
  return bridge;
}

std::vector<std::uint32_t> unreached(const std::vector<bool>& seen) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < seen.size(); ++c) {
    if (!seen[c]) out.push_back(c);
  }
  return out;
}

TwoBraidWitness census(const LinkDiagram& d, const FaceMap& f) {
  TwoBraidWitness w;
  w.crossings = d.crossing_count();
  for (const auto& face : f.faces()) {
    if (face.size() == 2) ++w.bigons;
    if (face.size() == w.crossings) ++w.large_faces;
  }
  return w;
}

bool census_is_two_braid(const TwoBraidWitness& w, std::size_t face_count) {
  if (w.crossings < 2 || face_count != w.crossings + 2) return false;
  if (w.crossings == 2) return w.bigons == 4;
  return w.bigons == w.crossings && w.large_faces == 2;
}

}  // namespace

std::string_view to_string(Flag flag) noexcept {
  switch (flag) {
    case Flag::Connected: return "connected";
    case Flag::Alternating: return "alternating";
    case Flag::Reduced: return "reduced";
    case Flag::ObviouslyPrime: return "obviously_prime";
    case Flag::TwoBraid: return "two_braid";
  }
  return "unknown";
}

ReducedCheck is_reduced(const LinkDiagram& d, const FaceMap& f) {
  for (std::uint32_t c = 0; c < d.crossing_count(); ++c) {
    for (std::uint32_t s = 0; s < 2; ++s) {
      if (f.corner_face(c, s) == f.corner_face(c, s + 2)) {
        return {false, NugatoryWitness{c, s, f.corner_face(c, s)}};
      }
    }
  }
  return {};
}

PrimeCheck is_obviously_prime(const LinkDiagram& d, const FaceMap&) {
  auto adj = incidence_lists(d);
  const std::size_t none = d.edge_count();
  for (std::size_t first = 0; first < d.edge_count(); ++first) {
    // If the first edge alone disconnects, any partner completes a cut.
    if (first + 1 < d.edge_count() && !unreached(reachable_without(adj, first, none)).empty()) {
      return {false, TwoEdgeCutWitness{d.edge_label(first), d.edge_label(first + 1),
                                       unreached(reachable_without(adj, first, first + 1))}};
    }
    auto bridge = bridges_without(adj, d.edge_count(), first);
    for (std::size_t second = first + 1; second < d.edge_count(); ++second) {
      if (!bridge[second]) continue;
      auto side = unreached(reachable_without(adj, first, second));
      if (side.empty()) continue;
      return {false, TwoEdgeCutWitness{d.edge_label(first), d.edge_label(second), std::move(side)}};
    }
  }
  return {};
}

bool is_two_braid(const LinkDiagram& d, const FaceMap& f) {
  return census_is_two_braid(census(d, f), f.face_count());
}

HypothesisReport check_hypotheses(const LinkDiagram& d) {
  HypothesisReport r;
  FaceMap faces = build_faces(d);

  auto comp = crossing_components(d);
  auto pieces = comp.empty() ? std::size_t{0} : *std::max_element(comp.begin(), comp.end()) + 1;
  r.connected = pieces == 1;
  std::optional<DisconnectedWitness> split;
  if (!r.connected) {
    auto it = std::find_if(comp.begin(), comp.end(), [](std::size_t k) { return k != 0; });
    split = DisconnectedWitness{pieces, static_cast<std::uint32_t>(it - comp.begin())};
    r.witnesses.push_back({Flag::Connected, *split});
  }

  r.alternating = true;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto& ends = d.edge_darts(e);
    if (ends[0].is_under() == ends[1].is_under()) {
      r.alternating = false;
      r.witnesses.push_back({Flag::Alternating, NonAlternatingWitness{d.edge_label(e), ends[0].is_under()}});
      break;
    }
  }

  auto reduced = is_reduced(d, faces);
  r.reduced = reduced.reduced;
  if (reduced.witness) r.witnesses.push_back({Flag::Reduced, *reduced.witness});

  if (r.connected) {
    auto prime = is_obviously_prime(d, faces);
    r.obviously_prime = prime.obviously_prime;
    if (prime.witness) r.witnesses.push_back({Flag::ObviouslyPrime, std::move(*prime.witness)});
  } else {
    r.obviously_prime = false;
    r.witnesses.push_back({Flag::ObviouslyPrime, *split});
  }

  auto counts = census(d, faces);
  r.two_braid = census_is_two_braid(counts, faces.face_count());
  if (r.two_braid) r.witnesses.push_back({Flag::TwoBraid, counts});

  r.passes = r.connected && r.alternating && r.reduced && r.obviously_prime && !r.two_braid;
  return r;
}

bool witness_holds(const LinkDiagram& d, const FaceMap& f, const Witness& w) {
  struct Replay {
    const LinkDiagram& d;
    const FaceMap& f;

    bool operator()(const DisconnectedWitness& x) const {
      auto comp = crossing_components(d);
      return x.crossing < comp.size() && comp[x.crossing] != comp[0] &&
             projection_components(d) == x.components;
    }
    bool operator()(const NonAlternatingWitness& x) const {
      auto e = d.edge_index(x.edge);
      if (e == d.edge_count()) return false;
      const auto& ends = d.edge_darts(e);
      return ends[0].is_under() == x.both_under && ends[1].is_under() == x.both_under;
    }
    bool operator()(const NugatoryWitness& x) const {
      if (x.crossing >= d.crossing_count() || x.slot > 3) return false;
      return f.corner_face(x.crossing, x.slot) == x.face &&
             f.corner_face(x.crossing, (x.slot + 2) % 4) == x.face;
    }
    bool operator()(const TwoEdgeCutWitness& x) const {
      auto a = d.edge_index(x.first);
      auto b = d.edge_index(x.second);
      if (a == d.edge_count() || b == d.edge_count() || a == b) return false;
      auto side = unreached(reachable_without(incidence_lists(d), a, b));
      return !side.empty() && side == x.side;
    }
    bool operator()(const TwoBraidWitness& x) const {
      auto c = census(d, f);
      return c.crossings == x.crossings && c.bigons == x.bigons && c.large_faces == x.large_faces &&
             census_is_two_braid(c, f.face_count());
    }
  };
  return std::visit(Replay{d, f}, w);
}

}  // namespace auglab
