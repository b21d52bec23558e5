#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace auglab {

using EdgeLabel = std::uint32_t;

// One end of an edge at a crossing.  Slots run counterclockwise around the
// crossing; slot 0 is the incoming understrand, so slots 0 and 2 carry the
// understrand and slots 1 and 3 the overstrand.
struct Dart {
  std::uint32_t crossing = 0;
  std::uint32_t slot = 0;

  std::size_t id() const noexcept { return 4 * std::size_t{crossing} + slot; }
  static Dart from_id(std::size_t id) noexcept {
    return {static_cast<std::uint32_t>(id / 4), static_cast<std::uint32_t>(id % 4)};
  }

  Dart rotated_ccw() const noexcept { return {crossing, (slot + 1) % 4}; }
  Dart rotated_cw() const noexcept { return {crossing, (slot + 3) % 4}; }
  Dart opposite() const noexcept { return {crossing, (slot + 2) % 4}; }
  bool is_under() const noexcept { return slot % 2 == 0; }

  friend auto operator<=>(const Dart&, const Dart&) = default;
};

using CrossingTuple = std::array<EdgeLabel, 4>;

// A link projection given as PD crossings.  Edge labels are opaque; edges are
// also addressed by a dense index, which is the rank of the label among all
// distinct labels, so ordering by index and by label agree.
class LinkDiagram {
 public:
  // Throws Error(EmptyDiagram) or Error(BadEdgeMultiplicity).
  explicit LinkDiagram(std::vector<CrossingTuple> crossings);

  const std::vector<CrossingTuple>& crossings() const noexcept { return crossings_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  std::size_t edge_count() const noexcept { return labels_.size(); }
  std::size_t dart_count() const noexcept { return 4 * crossings_.size(); }

  EdgeLabel label(Dart d) const { return crossings_[d.crossing][d.slot]; }
  std::size_t edge_of(Dart d) const { return dart_edge_[d.id()]; }
  EdgeLabel edge_label(std::size_t edge) const { return labels_[edge]; }
  // Index of a label, or edge_count() when the label does not occur.
  std::size_t edge_index(EdgeLabel label) const;

  // The two ends of an edge, lower dart id first.
  const std::array<Dart, 2>& edge_darts(std::size_t edge) const { return edge_darts_[edge]; }
  Dart partner(Dart d) const;

  // Link components as lists of edge indices, in order of their smallest edge.
  const std::vector<std::vector<std::size_t>>& link_components() const noexcept {
    return components_;
  }

 private:
  std::vector<CrossingTuple> crossings_;
  std::vector<EdgeLabel> labels_;
  std::vector<std::size_t> dart_edge_;
  std::vector<std::array<Dart, 2>> edge_darts_;
  std::vector<std::vector<std::size_t>> components_;
};

// Parses one diagram.  Newlines count as whitespace and lines whose first
// non-blank character is '#' are comments.
LinkDiagram parse_pd(std::string_view text);

// Parses one diagram per non-empty, non-comment line.
std::vector<LinkDiagram> parse_pd_lines(std::string_view text);

// "X(a,b,c,d) X(...)" with single spaces, in stored crossing order.
std::string serialize_pd(const LinkDiagram& d);

// Relabels edges 1..2C in order of first appearance.
LinkDiagram canonicalize(const LinkDiagram& d);

// Plane reflection: each tuple (a,b,c,d) becomes (a,d,c,b).
LinkDiagram mirror(const LinkDiagram& d);

struct Face {
  // Boundary darts in traversal order; the face runs along the edge of each
  // dart from that dart to its partner.
  std::vector<Dart> darts;

  std::size_t size() const noexcept { return darts.size(); }
};

class FaceMap {
 public:
  FaceMap(std::vector<Face> faces, std::vector<std::size_t> dart_to_face);

  const std::vector<Face>& faces() const noexcept { return faces_; }
  std::size_t face_count() const noexcept { return faces_.size(); }
  const Face& face(std::size_t i) const { return faces_[i]; }
  std::size_t face_of(Dart d) const { return dart_to_face_[d.id()]; }
  // Position of d within face_of(d).darts.
  std::size_t position_of(Dart d) const { return dart_position_[d.id()]; }

  // The corner between slot s and slot s+1 at a crossing.
  std::size_t corner_face(std::uint32_t crossing, std::uint32_t slot) const {
    return face_of(Dart{crossing, slot});
  }

  // Edge indices along the boundary of a face, in traversal order.
  std::vector<std::size_t> boundary_edges(const LinkDiagram& d, std::size_t face) const;

 private:
  std::vector<Face> faces_;
  std::vector<std::size_t> dart_to_face_;
  std::vector<std::size_t> dart_position_;
};

// Face traversal step: cross to the partner dart, then turn one slot clockwise.
Dart next_in_face(const LinkDiagram& d, Dart current);

// Faces are the orbits of next_in_face, numbered in order of their smallest
// dart id and each listed starting from that dart.
FaceMap build_faces(const LinkDiagram& d);

bool is_alternating(const LinkDiagram& d);

// Connected components of the underlying 4-regular graph.
std::size_t projection_components(const LinkDiagram& d);

// Crossing index -> component id, numbered in order of the first crossing.
std::vector<std::size_t> crossing_components(const LinkDiagram& d);

}  // namespace auglab
