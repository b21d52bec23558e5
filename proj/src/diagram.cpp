#include "auglab/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "auglab/error.hpp"

namespace auglab {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Groups items by their set representative, keeping groups ordered by their
// first member.
std::vector<std::vector<std::size_t>> groups(DisjointSets& sets, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::map<std::size_t, std::size_t> slot_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = slot_of_root.try_emplace(sets.find(i), out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

class PdScanner {
 public:
  explicit PdScanner(std::string_view text) : text_(text) {}

  std::vector<CrossingTuple> crossings() {
    std::vector<CrossingTuple> out;
    skip_blank();
    while (pos_ < text_.size()) {
      out.push_back(crossing());
      std::size_t before = pos_;
      skip_blank();
      if (pos_ == before && pos_ < text_.size()) fail("expected whitespace between crossings");
    }
    return out;
  }

 private:
  CrossingTuple crossing() {
    expect('X');
    expect('(');
    CrossingTuple t{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (i > 0) expect(',');
      t[i] = integer();
    }
    expect(')');
    return t;
  }

  EdgeLabel integer() {
    skip_spaces();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    EdgeLabel value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected a positive integer");
    if (value == 0) fail("edge labels must be positive");
    pos_ += static_cast<std::size_t>(ptr - first);
    skip_spaces();
    return value;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_spaces() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  // Whitespace, newlines and '#' comment lines.
  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#' && at_line_start()) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_line_start() const {
    for (std::size_t i = pos_; i > 0; --i) {
      char c = text_[i - 1];
      if (c == '\n') return true;
      if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos_, '\n'));
    throw Error(ErrorKind::MalformedSyntax,
                "malformed PD code at line " + std::to_string(line) + ", offset " +
                    std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LinkDiagram::LinkDiagram(std::vector<CrossingTuple> crossings) : crossings_(std::move(crossings)) {
  if (crossings_.empty()) throw Error(ErrorKind::EmptyDiagram, "diagram has no crossings");

  std::map<EdgeLabel, std::vector<Dart>> ends;
  for (std::uint32_t c = 0; c < crossings_.size(); ++c) {
    for (std::uint32_t s = 0; s < 4; ++s) ends[crossings_[c][s]].push_back(Dart{c, s});
  }
  std::vector<EdgeLabel> bad;
  for (const auto& [label, darts] : ends) {
    if (darts.size() != 2) bad.push_back(label);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "edge labels must occur exactly twice; offending labels:";
    for (EdgeLabel l : bad) msg << ' ' << l << " (x" << ends[l].size() << ')';
    throw Error(ErrorKind::BadEdgeMultiplicity, msg.str());
  }

  dart_edge_.resize(4 * crossings_.size());
  for (const auto& [label, darts] : ends) {
    std::size_t edge = labels_.size();
    labels_.push_back(label);
    edge_darts_.push_back({darts[0], darts[1]});
    for (Dart d : darts) dart_edge_[d.id()] = edge;
  }

  // Strands run straight through each crossing: slot 0 to 2 and 1 to 3.
  DisjointSets sets(labels_.size());
  for (const auto& t : crossings_) {
    sets.unite(edge_index(t[0]), edge_index(t[2]));
    sets.unite(edge_index(t[1]), edge_index(t[3]));
  }
  components_ = groups(sets, labels_.size());
}

std::size_t LinkDiagram::edge_index(EdgeLabel label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return labels_.size();
  return static_cast<std::size_t>(it - labels_.begin());
}

Dart LinkDiagram::partner(Dart d) const {
  const auto& ends = edge_darts_[edge_of(d)];
  return ends[0] == d ? ends[1] : ends[0];
}

LinkDiagram parse_pd(std::string_view text) { return LinkDiagram(PdScanner(text).crossings()); }

std::vector<LinkDiagram> parse_pd_lines(std::string_view text) {
  std::vector<LinkDiagram> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') out.push_back(parse_pd(line));
    start = end + 1;
  }
  return out;
}

std::string serialize_pd(const LinkDiagram& d) {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : d.crossings()) {
    if (!first) out << ' ';
    first = false;
    out << "X(" << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ')';
  }
  return out.str();
}

LinkDiagram canonicalize(const LinkDiagram& d) {
  std::map<EdgeLabel, EdgeLabel> relabel;
  std::vector<CrossingTuple> out;
  out.reserve(d.crossing_count());
  for (const auto& t : d.crossings()) {
    CrossingTuple r{};
    for (std::size_t i = 0; i < 4; ++i) {
      auto [it, inserted] = relabel.try_emplace(t[i], static_cast<EdgeLabel>(relabel.size() + 1));
      r[i] = it->second;
    }
    out.push_back(r);
  }
  return LinkDiagram(std::move(out));
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<CrossingTuple> out;
  out.reserve(d.crossing_count());
  for (const auto& t : d.crossings()) out.push_back({t[0], t[3], t[2], t[1]});
  return LinkDiagram(std::move(out));
}

FaceMap::FaceMap(std::vector<Face> faces, std::vector<std::size_t> dart_to_face)
    : faces_(std::move(faces)), dart_to_face_(std::move(dart_to_face)) {
  dart_position_.assign(dart_to_face_.size(), 0);
  for (const auto& f : faces_) {
    for (std::size_t i = 0; i < f.darts.size(); ++i) dart_position_[f.darts[i].id()] = i;
  }
}

std::vector<std::size_t> FaceMap::boundary_edges(const LinkDiagram& d, std::size_t face) const {
  std::vector<std::size_t> out;
  for (Dart x : faces_[face].darts) out.push_back(d.edge_of(x));
  return out;
}

Dart next_in_face(const LinkDiagram& d, Dart current) { return d.partner(current).rotated_cw(); }

FaceMap build_faces(const LinkDiagram& d) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dart_to_face(d.dart_count(), unset);
  std::vector<Face> faces;
  for (std::size_t start = 0; start < d.dart_count(); ++start) {
    if (dart_to_face[start] != unset) continue;
    Face face;
    Dart x = Dart::from_id(start);
    do {
      dart_to_face[x.id()] = faces.size();
      face.darts.push_back(x);
      x = next_in_face(d, x);
    } while (x.id() != start);
    faces.push_back(std::move(face));
  }
  return FaceMap(std::move(faces), std::move(dart_to_face));
}

bool is_alternating(const LinkDiagram& d) {
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto& ends = d.edge_darts(e);
    if (ends[0].is_under() == ends[1].is_under()) return false;
  }
  return true;
}

std::vector<std::size_t> crossing_components(const LinkDiagram& d) {
  DisjointSets sets(d.crossing_count());
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto& ends = d.edge_darts(e);
    sets.unite(ends[0].crossing, ends[1].crossing);
  }
  std::vector<std::size_t> out(d.crossing_count());
  auto parts = groups(sets, d.crossing_count());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t c : parts[k]) out[c] = k;
  }
  return out;
}

std::size_t projection_components(const LinkDiagram& d) {
  auto comp = crossing_components(d);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

}  // namespace auglab
