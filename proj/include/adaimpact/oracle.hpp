#pragma once

#include "adaimpact/diff.hpp"
#include "adaimpact/graph.hpp"
#include "adaimpact/select.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace adaimpact::oracle {

/// Reflexive-transitive closure of an impact relation, computed with a plain
/// triple loop. Intended for validation at small scale only.
struct DenseClosure {
  std::vector<Entity> entities; // sorted
  std::vector<std::vector<char>> matrix;
  std::vector<std::vector<char>> closure;

  /// Index of `e`, or -1.
  long index_of(const Entity &e) const;
  bool reaches(const Entity &from, const Entity &to) const;
  /// Subprogram names reachable from `e`; empty when `e` is unknown.
  std::set<std::string> reachable_subprograms(const Entity &e) const;
};

DenseClosure brute_closure(const ImpactRelation &impact);

struct Violation {
  enum class Kind { MissedTest, Unattributed };
  Kind kind;
  std::string test;
  std::string detail;

  bool operator==(const Violation &) const = default;
};

struct Verdict {
  std::vector<Violation> violations;
  std::set<std::string> oracle_affected;

  bool ok() const { return violations.empty(); }
  std::size_t missed() const;
  std::string to_text() const;
};

/// Recomputes the affected set with the dense closure and reports every
/// test that should have been selected but was not, and every selected test
/// that nothing accounts for.
Verdict check_safety(const SelectionResult &sel, const ChangeSet &changes,
                     const ImpactRelation &impact, const CoverageMap &cov);

/// Retest-all: every baseline test selected, attributed to every change.
SelectionResult retest_all(const ChangeSet &changes, const CoverageMap &cov);

} // namespace adaimpact::oracle
