#include "adaimpact/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace adaimpact::oracle {

long DenseClosure::index_of(const Entity &e) const {
  auto it = std::lower_bound(entities.begin(), entities.end(), e);
  if (it == entities.end() || !(*it == e)) return -1;
  return static_cast<long>(it - entities.begin());
}

bool DenseClosure::reaches(const Entity &from, const Entity &to) const {
  const long i = index_of(from), j = index_of(to);
  return i >= 0 && j >= 0 && closure[i][j];
}

std::set<std::string> DenseClosure::reachable_subprograms(const Entity &e) const {
  std::set<std::string> out;
  const long i = index_of(e);
  if (i < 0) return out;
  for (std::size_t j = 0; j < entities.size(); ++j)
    if (closure[i][j] && entities[j].kind == EntityKind::Subprogram) out.insert(entities[j].name);
  return out;
}

DenseClosure brute_closure(const ImpactRelation &impact) {
  DenseClosure d;
  std::set<Entity> all;
  for (const auto &[from, tos] : impact.edges()) {
    all.insert(from);
    all.insert(tos.begin(), tos.end());
  }
  d.entities.assign(all.begin(), all.end());
  const std::size_t n = d.entities.size();
  d.matrix.assign(n, std::vector<char>(n, 0));
  for (const auto &[from, tos] : impact.edges())
    for (const auto &to : tos)
      d.matrix[d.index_of(from)][d.index_of(to)] = 1;

  d.closure = d.matrix;
  for (std::size_t i = 0; i < n; ++i)
    d.closure[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d.closure[i][k] && d.closure[k][j]) d.closure[i][j] = 1;
  return d;
}

std::size_t Verdict::missed() const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(), [](const Violation &v) {
    return v.kind == Violation::Kind::MissedTest;
  }));
}

std::string Verdict::to_text() const {
  std::ostringstream out;
  out << "verification: " << (ok() ? "PASS" : "FAIL") << "\n";
  out << "  oracle affected subprograms: " << oracle_affected.size() << "\n";
  out << "  violations: " << violations.size() << "\n";
  for (const auto &v : violations) {
    out << "  - " << (v.kind == Violation::Kind::MissedTest ? "missed-test" : "unattributed") << " "
        << v.test << ": " << v.detail << "\n";
  }
  return out.str();
}

Verdict check_safety(const SelectionResult &sel, const ChangeSet &changes, const ImpactRelation &impact,
                     const CoverageMap &cov) {
  Verdict verdict;
  const DenseClosure closure = brute_closure(impact);
  for (const auto &c : changes.changes) {
    auto reached = closure.reachable_subprograms(entity(c));
    verdict.oracle_affected.insert(reached.begin(), reached.end());
  }

  const std::set<std::string> selected(sel.selected_tests.begin(), sel.selected_tests.end());
  for (const auto &t : cov.baseline) {
    if (selected.count(t)) continue;
    for (const auto &m : cov.covered_by(t)) {
      if (verdict.oracle_affected.count(m)) {
        verdict.violations.push_back({Violation::Kind::MissedTest, t, "covers affected subprogram " + m});
        break;
      }
    }
  }

  std::set<std::string> attributed(sel.empty_coverage_tests.begin(), sel.empty_coverage_tests.end());
  for (const auto &[change, tests] : sel.per_change)
    attributed.insert(tests.begin(), tests.end());
  for (const auto &t : sel.selected_tests)
    if (!attributed.count(t))
      verdict.violations.push_back({Violation::Kind::Unattributed, t, "selected without a reason"});
  return verdict;
}

SelectionResult retest_all(const ChangeSet &changes, const CoverageMap &cov) {
  SelectionResult r;
  r.selected_tests = cov.baseline;
  for (const auto &c : changes.changes)
    r.per_change[c] = std::set<std::string>(cov.baseline.begin(), cov.baseline.end());
  r.stats.baseline_size = cov.baseline.size();
  r.stats.selected_size = cov.baseline.size();
  r.stats.reduction_ratio = 0.0;
  return r;
}

} // namespace adaimpact::oracle
