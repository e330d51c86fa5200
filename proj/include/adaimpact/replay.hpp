#pragma once

#include "adaimpact/frontend.hpp"
#include "adaimpact/graph.hpp"

#include <string>
#include <vector>

namespace adaimpact {

struct ReplayRow {
  std::string subprogram;
  std::string package;
  bool skipped = false; // no statement part to edit
  std::size_t changes = 0;
  std::size_t selected = 0;
  std::vector<std::string> selected_tests;
};

struct ReplayReport {
  std::vector<ReplayRow> rows; // ordered by subprogram name
  std::size_t baseline_size = 0;
  std::size_t units_changed = 0;
  std::size_t subprograms_changed = 0;
  std::size_t tests_without_selection = 0; // retest-all total
  std::size_t tests_with_selection = 0;
  double reduction_ratio = 1.0;
  bool verified = true; // every row passed the oracle when requested
};

/// Inserts `null;` at the start of each subprogram's statements in turn,
/// one edit at a time on an in-memory copy, and runs the whole pipeline
/// against the unmodified tree.
ReplayReport replay_null_insertions(const std::vector<SourceFile> &tree, const CoverageMap &cov,
                                    bool verify = false);

std::string replay_to_text(const ReplayReport &r);
std::string replay_to_json(const ReplayReport &r);

} // namespace adaimpact
