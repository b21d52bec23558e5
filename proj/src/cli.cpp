#include "auglab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "auglab/error.hpp"
#include "auglab/json_io.hpp"

namespace auglab {

namespace {

enum class Format { Json, Text };

// Settings shared by all subcommands.
struct RunConfig {
  std::string input;
  Format format = Format::Json;
  double tolerance = 1e-9;
  std::size_t cap = kDefaultRouteCap;
  std::string output;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidRequest, path + ": invalid JSON: " + e.what());
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string format_term(const VolumeSymbol& symbol, const Rational& c, bool first) {
  std::ostringstream s;
  const bool negative = c.numerator() < 0;
  Rational mag = negative ? -c : c;
  if (!first) s << (negative ? "- " : "+ ");
  else if (negative) s << '-';
  if (mag != Rational(1)) {
    if (mag.denominator() == 1) s << mag.numerator() << '*';
    else s << '(' << mag.numerator() << '/' << mag.denominator() << ")*";
  }
  s << (symbol.is_oct() ? std::string("OCT") : "vol(" + symbol.name() + ")");
  return s.str();
}

std::string text_report(const HypothesisReport& r) {
  std::ostringstream s;
  s << "connected: " << yes_no(r.connected) << '\n'
    << "alternating: " << yes_no(r.alternating) << '\n'
    << "reduced: " << yes_no(r.reduced) << '\n'
    << "obviously prime: " << yes_no(r.obviously_prime) << '\n'
    << "2-braid: " << yes_no(r.two_braid) << '\n'
    << "passes: " << yes_no(r.passes) << '\n';
  for (const auto& w : report_to_json(r)["witnesses"]) s << "witness: " << w.dump() << '\n';
  return s.str();
}

struct Outcome {
  std::string body;
  int code = kExitOk;
};

Outcome cmd_check(const RunConfig& cfg) {
  auto d = parse_pd(read_file(cfg.input));
  auto report = check_hypotheses(d);
  Outcome o;
  o.code = report.passes ? kExitOk : kExitGateFailed;
  o.body = cfg.format == Format::Json ? report_to_json(report).dump(2) + "\n" : text_report(report);
  return o;
}

Outcome cmd_faces(const RunConfig& cfg) {
  auto d = parse_pd(read_file(cfg.input));
  auto f = build_faces(d);
  Outcome o;
  if (cfg.format == Format::Json) {
    o.body = faces_to_json(d, f).dump(2) + "\n";
    return o;
  }
  std::ostringstream s;
  s << "crossings: " << d.crossing_count() << "\nfaces: " << f.face_count() << '\n';
  for (std::size_t i = 0; i < f.face_count(); ++i) {
    s << "face " << i << " (size " << f.face(i).size() << "): edges";
    for (Dart x : f.face(i).darts) s << ' ' << d.label(x);
    s << '\n';
  }
  o.body = s.str();
  return o;
}

Outcome cmd_augment(const RunConfig& cfg, bool maximal) {
  auto request = parse_augment_request(read_json(cfg.input));
  const auto& d = request.diagram;
  auto report = check_hypotheses(d);
  Outcome o;
  if (!report.passes) {
    o.code = kExitGateFailed;
    if (cfg.format == Format::Json) {
      Json j = {{"error", "HypothesisFailure"}, {"report", report_to_json(report)}};
      o.body = j.dump(2) + "\n";
    } else {
      o.body = "error: HypothesisFailure\n" + text_report(report);
    }
    return o;
  }

  auto f = build_faces(d);
  auto r = maximal ? find_maximal_system(d, f, request.pairs, cfg.cap)
                   : realize_disjoint_system(d, f, request.pairs, cfg.cap);
  switch (r.status) {
    case RealizationStatus::Feasible: o.code = kExitOk; break;
    case RealizationStatus::Infeasible: o.code = kExitInfeasible; break;
    case RealizationStatus::Unknown: o.code = kExitUnknown; break;
  }
  if (cfg.format == Format::Json) {
    o.body = realization_to_json(d, r, report).dump(2) + "\n";
    return o;
  }
  auto j = realization_to_json(d, r, report);
  std::ostringstream s;
  s << "status: " << j["status"].get<std::string>() << '\n';
  if (r.system) {
    for (const auto& arc : j["system"]["arcs"]) {
      s << "arc " << arc["endpoints"].dump() << ": " << arc["punctures"] << " punctures ("
        << arc["classification"].get<std::string>() << "), crosses " << arc["route"].dump() << '\n';
    }
  }
  for (const auto& p : r.conflict) s << "conflict: [" << p.a << ", " << p.b << "]\n";
  o.body = s.str();
  return o;
}

Outcome cmd_volume(const RunConfig& cfg, const std::vector<std::string>& binds, bool require_numeric,
                   const std::optional<double>& expect, bool opaque_borromean) {
  auto tree = parse_volume_expression(read_json(cfg.input), ExpressionOptions{opaque_borromean});
  auto expr = evaluate(*tree);
  auto bindings = leaf_bindings(*tree);
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::InvalidRequest, "--bind expects NAME=VALUE, got " + b);
    try {
      bindings[b.substr(0, eq)] = std::stod(b.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidRequest, "--bind value is not a number: " + b);
    }
  }

  std::optional<double> value;
  try {
    value = numeric(expr, bindings);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnboundSymbol || require_numeric || expect) throw;
  }

  Outcome o;
  if (expect && std::abs(*value - *expect) > cfg.tolerance) o.code = kExitGateFailed;
  if (cfg.format == Format::Json) {
    Json j = volume_to_json(expr, value);
    if (expect) j["matches_expected"] = o.code == kExitOk;
    o.body = j.dump(2) + "\n";
    return o;
  }
  std::ostringstream s;
  s << "vol =";
  bool first = true;
  for (const auto& [symbol, c] : expr.terms()) {
    s << ' ' << format_term(symbol, c, first);
    first = false;
  }
  if (first) s << " 0";
  s << '\n';
  if (value) s << "numeric = " << std::setprecision(15) << *value << '\n';
  if (expect) s << "matches expected: " << yes_no(o.code == kExitOk) << '\n';
  o.body = s.str();
  return o;
}

std::size_t cap_from_env(std::size_t fallback) {
  const char* raw = std::getenv("AUGLAB_CAP");
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  long long v = std::strtoll(raw, &end, 10);
  if (*end != '\0' || v < 1) throw Error(ErrorKind::InvalidRequest, std::string("AUGLAB_CAP must be a positive integer, got ") + raw);
  return static_cast<std::size_t>(v);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alternating link augmentation workbench", "auglab"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  std::optional<std::size_t> cap_flag;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tolerance", cfg.tolerance, "Numeric comparison tolerance")->check(CLI::PositiveNumber);
  app.add_option("--cap", cap_flag, "Shortest routes enumerated per face pair")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Write the result to this file");
  app.fallthrough();

  auto* check = app.add_subcommand("check", "Test a PD diagram against the hyperbolicity hypotheses");
  check->add_option("path", cfg.input, "PD file")->required();
  auto* faces = app.add_subcommand("faces", "Report the complementary regions of a PD diagram");
  faces->add_option("path", cfg.input, "PD file")->required();
  auto* augment = app.add_subcommand("augment", "Realize vertical components for face pairs");
  augment->add_option("request", cfg.input, "Augmentation request JSON")->required();
  bool maximal = false;
  augment->add_flag("--maximal", maximal, "Add candidate pairs until none fits");
  auto* volume = app.add_subcommand("volume", "Evaluate a belted-sum volume expression");
  volume->add_option("expression", cfg.input, "Expression JSON")->required();
  std::vector<std::string> binds;
  bool require_numeric = false;
  bool opaque_borromean = false;
  std::optional<double> expect;
  volume->add_option("--bind", binds, "NAME=VALUE numeric volume for a leaf");
  volume->add_flag("--numeric", require_numeric, "Fail unless every symbol is bound");
  volume->add_option("--expect", expect, "Exit 1 unless the numeric value is within tolerance");
  volume->add_flag("--opaque-borromean", opaque_borromean, "Keep BORROMEAN terms symbolic");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    cfg.format = format == "text" ? Format::Text : Format::Json;
    cfg.cap = cap_flag ? *cap_flag : cap_from_env(kDefaultRouteCap);

    Outcome o;
    if (*check) o = cmd_check(cfg);
    else if (*faces) o = cmd_faces(cfg);
    else if (*augment) o = cmd_augment(cfg, maximal);
    else o = cmd_volume(cfg, binds, require_numeric, expect, opaque_borromean);

    if (cfg.output.empty()) {
      out << o.body;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!(file << o.body)) throw Error(ErrorKind::Io, "cannot write " + cfg.output);
    }
    return o.code;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace auglab
