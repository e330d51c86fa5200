#pragma once

#include "adaimpact/diff.hpp"
#include "adaimpact/graph.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace adaimpact {

struct SelectionStats {
  std::size_t baseline_size = 0;
  std::size_t selected_size = 0;
  double reduction_ratio = 1.0;
  // Tests selected only because they carry no coverage at all.
  std::size_t empty_coverage_selected = 0;

  bool operator==(const SelectionStats &) const = default;
};

struct SelectionResult {
  std::set<std::string> affected_subprograms;
  std::vector<std::string> selected_tests; // baseline order
  std::map<Change, std::set<std::string>> per_change;
  std::vector<std::string> empty_coverage_tests; // conservative selections
  SelectionStats stats;
  std::vector<std::string> warnings;

  bool operator==(const SelectionResult &) const = default;
};

/// Entity a change is evaluated from. Removed entities resolve against the
/// old graph, which is why callers pass an impact relation covering both
/// versions.
Entity entity(const Change &change);

/// Worklist closure over `impact` starting at `change`; returns the
/// subprogram entities reached, the start included.
std::set<std::string> affected_subprograms(const Entity &change, const ImpactRelation &impact);

/// Aggregate selection over every change in `changes`.
SelectionResult affected_tests(const ChangeSet &changes, const ImpactRelation &impact,
                               const CoverageMap &cov);

/// Impact relation over the union of both versions. Each version is
/// checked for spec cycles on its own.
ImpactRelation combined_impact(const Snapshot &old_snapshot, const Snapshot &new_snapshot);

std::string selection_to_json(const SelectionResult &r);

} // namespace adaimpact
