#pragma once

// Command lines with golden outputs, shared by the CLI tests and the
// acceptance binary.

#include <string>
#include <vector>

namespace cli_cases {

inline std::string corpus_path(const std::string& name) { return std::string(AUGLAB_CORPUS_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(AUGLAB_CLI_DIR) + "/" + name; }

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
  int code;
};

// Every golden case; stdout is compared byte for byte against golden/<name>.out.
inline std::vector<GoldenCase> golden_cases() {
  return {
      {"check_figure_eight", {"check", corpus_path("figure_eight.pd")}, 0},
      {"check_trefoil", {"check", corpus_path("trefoil.pd")}, 1},
      {"check_kinked_trefoil", {"check", corpus_path("kinked_trefoil.pd")}, 1},
      {"check_trefoil_sum", {"check", corpus_path("trefoil_sum.pd")}, 1},
      {"check_split", {"check", corpus_path("split_trefoils.pd")}, 1},
      {"check_malformed", {"check", fixture_path("malformed.pd")}, 2},
      {"faces_trefoil", {"faces", corpus_path("trefoil.pd")}, 0},
      {"faces_figure_eight", {"faces", corpus_path("figure_eight.pd")}, 0},
      {"faces_kink", {"faces", corpus_path("kink.pd")}, 0},
      {"faces_figure_eight_text", {"--format", "text", "faces", corpus_path("figure_eight.pd")}, 0},
      {"augment_figure_eight_pair", {"augment", fixture_path("fig8_pair.json")}, 0},
      {"augment_grid_diagonals", {"augment", fixture_path("grid_diagonals.json")}, 3},
      {"augment_empty", {"augment", fixture_path("fig8_empty.json")}, 0},
      {"augment_truncated", {"--cap", "1", "augment", fixture_path("grid_truncated.json")}, 4},
      {"augment_gate_failure", {"augment", fixture_path("trefoil_gate.json")}, 1},
      {"augment_figure_eight_maximal", {"augment", "--maximal", fixture_path("fig8_empty.json")}, 0},
      {"volume_five_tangle", {"volume", fixture_path("five_tangle.json")}, 0},
      {"volume_five_tangle_bound",
       {"volume", fixture_path("five_tangle.json"), "--bind", "L1=0", "--bind", "L2=0", "--bind", "L3=0", "--bind",
        "L4=0", "--bind", "L5=0"},
       0},
      {"volume_two_leaf_n3", {"volume", fixture_path("two_leaf_n3.json")}, 0},
      {"volume_unbound_numeric", {"volume", "--numeric", fixture_path("two_leaf_n3.json")}, 2},
      {"volume_leaf_volumes", {"volume", fixture_path("whitehead_pair.json")}, 0},
      {"volume_text", {"--format", "text", "volume", fixture_path("five_tangle.json")}, 0},
  };
}

inline std::string golden_path(const std::string& name) { return std::string(AUGLAB_GOLDEN_DIR) + "/" + name + ".out"; }

}  // namespace cli_cases
