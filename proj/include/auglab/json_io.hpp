#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "auglab/diagram.hpp"
#include "auglab/hypothesis.hpp"
#include "auglab/planner.hpp"
#include "auglab/volume.hpp"

namespace auglab {

using Json = nlohmann::json;

// {connected, alternating, reduced, obviously_prime, two_braid, passes,
//  witnesses: [{flag, kind, ...}]}
Json report_to_json(const HypothesisReport& report);

// Face census: counts, sorted sizes and every face with its boundary.
Json faces_to_json(const LinkDiagram& d, const FaceMap& f);

struct AugmentRequest {
  LinkDiagram diagram;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// {diagram: "<pd>", pairs: [[a, b], ...]}.  Throws Error(InvalidRequest) on
// schema violations and the parser's errors for a bad diagram.
AugmentRequest parse_augment_request(const Json& j);

Json arc_system_to_json(const LinkDiagram& d, const ArcSystem& system);

// Realization status, routes, edge orders and segments.  The certificate is
// attached when a report is given.
Json realization_to_json(const LinkDiagram& d, const Realization& r,
                         const std::optional<HypothesisReport>& certificate);

struct ExpressionOptions {
  // Keep "BORROMEAN" terms as an opaque named volume instead of 2 OCT.
  bool opaque_borromean = false;
};

// Nodes: {"leaf": {"name", "volume"?}}, {"sum": {"left", "right", "n"}},
// {"offset": {"node", "terms": [{"symbol", "num", "den"}]}}.
NodePtr parse_volume_expression(const Json& j, const ExpressionOptions& options = {});

// {"terms": [{"symbol", "num", "den"}], "numeric"?}
Json volume_to_json(const VolumeExpr& expr, const std::optional<double>& value);

}  // namespace auglab
