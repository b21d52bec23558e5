#include "auglab/json_io.hpp"

#include <algorithm>

#include "auglab/error.hpp"

namespace auglab {

namespace {

[[noreturn]] void bad_request(const std::string& what) { throw Error(ErrorKind::InvalidRequest, what); }

Json witness_to_json(const FlagWitness& fw) {
  Json j = std::visit(
      [](const auto& w) -> Json {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, DisconnectedWitness>) {
          return {{"kind", "disconnected"}, {"components", w.components}, {"crossing", w.crossing}};
        } else if constexpr (std::is_same_v<T, NonAlternatingWitness>) {
          return {{"kind", "non_alternating_edge"}, {"edge", w.edge}, {"both", w.both_under ? "under" : "over"}};
        } else if constexpr (std::is_same_v<T, NugatoryWitness>) {
          return {{"kind", "nugatory_crossing"},
                  {"crossing", w.crossing},
                  {"corners", {w.slot, w.slot + 2}},
                  {"face", w.face}};
        } else if constexpr (std::is_same_v<T, TwoEdgeCutWitness>) {
          return {{"kind", "two_edge_cut"}, {"edges", {w.first, w.second}}, {"side", w.side}};
        } else {
          return {{"kind", "two_braid_census"},
                  {"crossings", w.crossings},
                  {"bigons", w.bigons},
                  {"large_faces", w.large_faces}};
        }
      },
      fw.witness);
  j["flag"] = std::string(to_string(fw.flag));
  return j;
}

Json attachment_to_json(const LinkDiagram& d, const Attachment& a) {
  return {{"kind", a.kind == Attachment::Kind::Edge ? "edge" : "interior"},
          {"edge", d.edge_label(a.edge)},
          {"side", a.side},
          {"rank", a.rank}};
}

std::string_view status_name(RealizationStatus s) {
  switch (s) {
    case RealizationStatus::Feasible: return "feasible";
    case RealizationStatus::Infeasible: return "infeasible";
    case RealizationStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::int64_t integer_field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer()) bad_request(where + ": \"" + key + "\" must be an integer");
  return j[key].get<std::int64_t>();
}

}  // namespace

Json report_to_json(const HypothesisReport& report) {
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(witness_to_json(w));
  return {{"connected", report.connected},     {"alternating", report.alternating},
          {"reduced", report.reduced},         {"obviously_prime", report.obviously_prime},
          {"two_braid", report.two_braid},     {"passes", report.passes},
          {"witnesses", witnesses}};
}

Json faces_to_json(const LinkDiagram& d, const FaceMap& f) {
  Json faces = Json::array();
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < f.face_count(); ++i) {
    const auto& face = f.face(i);
    Json edges = Json::array();
    Json darts = Json::array();
    for (Dart x : face.darts) {
      edges.push_back(d.label(x));
      darts.push_back({x.crossing, x.slot});
    }
    faces.push_back({{"index", i}, {"size", face.size()}, {"edges", edges}, {"darts", darts}});
    sizes.push_back(face.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return {{"crossings", d.crossing_count()},
          {"edges", d.edge_count()},
          {"projection_components", projection_components(d)},
          {"link_components", d.link_components().size()},
          {"face_count", f.face_count()},
          {"sizes", sizes},
          {"faces", faces}};
}

AugmentRequest parse_augment_request(const Json& j) {
  if (!j.is_object()) bad_request("augmentation request must be a JSON object");
  if (!j.contains("diagram") || !j["diagram"].is_string()) bad_request("\"diagram\" must be a PD string");
  if (!j.contains("pairs") || !j["pairs"].is_array()) bad_request("\"pairs\" must be an array");
  AugmentRequest r{parse_pd(j["diagram"].get<std::string>()), {}};
  for (const auto& p : j["pairs"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      bad_request("each pair must be [faceA, faceB] with non-negative integers");
    }
    r.pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
  }
  return r;
}

Json arc_system_to_json(const LinkDiagram& d, const ArcSystem& system) {
  Json arcs = Json::array();
  for (const auto& arc : system.arcs) {
    Json route = Json::array();
    for (std::size_t e : arc.route) route.push_back(d.edge_label(e));
    arcs.push_back({{"endpoints", {arc.from, arc.to}},
                    {"faces", arc.faces},
                    {"route", route},
                    {"punctures", arc.punctures()},
                    {"classification", arc.classical() ? "classical" : "generalized"}});
  }
  Json orders = Json::array();
  for (std::size_t e = 0; e < system.edge_orders.size(); ++e) {
    if (system.edge_orders[e].empty()) continue;
    orders.push_back({{"edge", d.edge_label(e)}, {"arcs", system.edge_orders[e]}});
  }
  Json segments = Json::array();
  for (const auto& s : system.segments) {
    segments.push_back({{"arc", s.arc},
                        {"face", s.face},
                        {"first", attachment_to_json(d, s.first)},
                        {"second", attachment_to_json(d, s.second)}});
  }
  return {{"arcs", arcs}, {"edge_orders", orders}, {"segments", segments}};
}

Json realization_to_json(const LinkDiagram& d, const Realization& r,
                         const std::optional<HypothesisReport>& certificate) {
  Json out = {{"status", std::string(status_name(r.status))}, {"cap", r.cap}, {"truncated", r.truncated}};
  if (r.system) {
    out["system"] = arc_system_to_json(d, *r.system);
  }
  Json conflict = Json::array();
  for (const auto& p : r.conflict) conflict.push_back({p.a, p.b});
  out["conflict"] = conflict;
  if (certificate) {
    out["certificate"] = {{"hyperbolic", certificate->passes && r.status == RealizationStatus::Feasible},
                          {"report", report_to_json(*certificate)}};
  }
  return out;
}

NodePtr parse_volume_expression(const Json& j, const ExpressionOptions& options) {
  if (!j.is_object() || j.size() != 1) bad_request("expression node must be an object with one key");
  if (j.contains("leaf")) {
    const auto& leaf = j["leaf"];
    if (!leaf.contains("name") || !leaf["name"].is_string()) bad_request("leaf needs a string \"name\"");
    std::optional<double> volume;
    if (leaf.contains("volume") && !leaf["volume"].is_null()) {
      if (!leaf["volume"].is_number()) bad_request("leaf \"volume\" must be a number");
      volume = leaf["volume"].get<double>();
    }
    return make_leaf(leaf["name"].get<std::string>(), volume);
  }
  if (j.contains("sum")) {
    const auto& sum = j["sum"];
    if (!sum.contains("left") || !sum.contains("right")) bad_request("sum needs \"left\" and \"right\"");
    auto n = integer_field(sum, "n", "sum");
    return make_sum(parse_volume_expression(sum["left"], options), parse_volume_expression(sum["right"], options), n);
  }
  if (j.contains("offset")) {
    const auto& off = j["offset"];
    if (!off.contains("node")) bad_request("offset needs \"node\"");
    if (!off.contains("terms") || !off["terms"].is_array()) bad_request("offset needs a \"terms\" array");
    VolumeExpr terms;
    for (const auto& t : off["terms"]) {
      if (!t.contains("symbol") || !t["symbol"].is_string()) bad_request("term needs a string \"symbol\"");
      auto num = integer_field(t, "num", "term");
      std::int64_t den = t.contains("den") ? integer_field(t, "den", "term") : 1;
      if (den == 0) bad_request("term denominator must be non-zero");
      Rational c(num, den);
      auto symbol = t["symbol"].get<std::string>();
      if (symbol == "OCT") {
        terms += VolumeExpr::of(VolumeSymbol::oct(), c);
      } else if (symbol == "BORROMEAN" && !options.opaque_borromean) {
        // Borromean rings complement: two regular ideal octahedra.
        terms += VolumeExpr::of(VolumeSymbol::oct(), c * Rational(2));
      } else {
        terms += VolumeExpr::of(VolumeSymbol::named(symbol), c);
      }
    }
    return make_offset(parse_volume_expression(off["node"], options), std::move(terms));
  }
  bad_request("expression node must be \"leaf\", \"sum\" or \"offset\"");
}

Json volume_to_json(const VolumeExpr& expr, const std::optional<double>& value) {
  Json terms = Json::array();
  for (const auto& [symbol, c] : expr.terms()) {
    terms.push_back({{"symbol", symbol.name()}, {"num", c.numerator()}, {"den", c.denominator()}});
  }
  Json out = {{"terms", terms}};
  if (value) out["numeric"] = *value;
  return out;
}

}  // namespace auglab
