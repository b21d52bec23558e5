#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "auglab/diagram.hpp"

namespace auglab {

// The projection splits into more than one piece; `crossing` lies outside the
// piece containing crossing 0.
struct DisconnectedWitness {
  std::size_t components = 0;
  std::uint32_t crossing = 0;
};

// An edge whose two ends are both under (or both over) passages.
struct NonAlternatingWitness {
  EdgeLabel edge = 0;
  bool both_under = false;
};

// Opposite corners (slot, slot+1) and (slot+2, slot+3) of a crossing lie on
// the same face.
struct NugatoryWitness {
  std::uint32_t crossing = 0;
  std::uint32_t slot = 0;
  std::size_t face = 0;
};

// Removing both edges disconnects the projection.  `side` lists the crossings
// of the part not containing the lowest-numbered crossing.
struct TwoEdgeCutWitness {
  EdgeLabel first = 0;
  EdgeLabel second = 0;
  std::vector<std::uint32_t> side;
};

struct TwoBraidWitness {
  std::size_t crossings = 0;
  std::size_t bigons = 0;
  std::size_t large_faces = 0;
};

using Witness = std::variant<DisconnectedWitness, NonAlternatingWitness, NugatoryWitness,
                             TwoEdgeCutWitness, TwoBraidWitness>;

enum class Flag { Connected, Alternating, Reduced, ObviouslyPrime, TwoBraid };

std::string_view to_string(Flag flag) noexcept;

// A witness together with the report flag it explains.  A disconnected
// projection explains both `connected` and `obviously_prime`.
struct FlagWitness {
  Flag flag = Flag::Connected;
  Witness witness;
};

struct HypothesisReport {
  bool connected = false;
  bool alternating = false;
  bool reduced = false;
  bool obviously_prime = false;
  bool two_braid = false;
  bool passes = false;
  std::vector<FlagWitness> witnesses;
};

struct ReducedCheck {
  bool reduced = true;
  std::optional<NugatoryWitness> witness;
};

struct PrimeCheck {
  bool obviously_prime = true;
  std::optional<TwoEdgeCutWitness> witness;
};

// A crossing is nugatory when two diagonally opposite corners share a face.
// Reports the lowest such crossing.
ReducedCheck is_reduced(const LinkDiagram& d, const FaceMap& f);

// Looks for two edges whose removal disconnects the projection, i.e. a circle
// meeting the diagram twice with crossings on both sides.  The reported cut is
// the lexicographically smallest pair of edge labels.
PrimeCheck is_obviously_prime(const LinkDiagram& d, const FaceMap& f);

// Face census of the standard closed 2-braid: C bigons and two C-gons, or all
// four faces bigons when C = 2.
bool is_two_braid(const LinkDiagram& d, const FaceMap& f);

HypothesisReport check_hypotheses(const LinkDiagram& d);

// Replays a witness against the diagram; true when it re-establishes the
// failure it was issued for.
bool witness_holds(const LinkDiagram& d, const FaceMap& f, const Witness& w);

}  // namespace auglab
