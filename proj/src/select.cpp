#include "adaimpact/select.hpp"

#include <json.hpp>

namespace adaimpact {

Entity entity(const Change &change) {
  switch (change.kind) {
  case ChangeKind::SpecChanged:
  case ChangeKind::PackageAdded:
  case ChangeKind::PackageRemoved:
    return Entity::spec(change.target);
  case ChangeKind::BodyChanged:
    return Entity::body(change.target);
  case ChangeKind::SubprogramChanged:
  case ChangeKind::SubprogramAdded:
  case ChangeKind::SubprogramRemoved:
    break;
  }
  return Entity::subprogram(change.target);
}

std::set<std::string> affected_subprograms(const Entity &change, const ImpactRelation &impact) {
  std::set<std::string> impacted;
  if (!impact.contains(change)) return impacted;

  EntitySet found;
  EntitySet pending{change};
  while (!pending.empty()) {
    Entity next = std::move(pending.extract(pending.begin()).value());
    found.insert(next);
    if (next.kind == EntityKind::Subprogram) impacted.insert(next.name);
    for (const auto &s : impact.successors(next))
      if (!found.count(s)) pending.insert(s);
  }
  return impacted;
}

SelectionResult affected_tests(const ChangeSet &changes, const ImpactRelation &impact,
                               const CoverageMap &cov) {
  SelectionResult r;
  std::set<std::string> selected;
  for (const auto &c : changes.changes) {
    const Entity e = entity(c);
    if (!impact.contains(e)) r.warnings.push_back("change " + c.key() + " names an unknown entity");
    const auto affected = affected_subprograms(e, impact);
    r.affected_subprograms.insert(affected.begin(), affected.end());

    auto &attributed = r.per_change[c];
    for (const auto &t : cov.baseline) {
      for (const auto &m : affected) {
        if (cov.covered_by(t).count(m)) {
          attributed.insert(t);
          selected.insert(t);
          break;
        }
      }
    }
  }

  const bool any_change = !changes.changes.empty();
  for (const auto &t : cov.baseline) {
    const bool empty = cov.covered_by(t).empty();
    if (empty && any_change) r.empty_coverage_tests.push_back(t);
    if (selected.count(t) || (empty && any_change)) r.selected_tests.push_back(t);
  }

  r.stats.baseline_size = cov.baseline.size();
  r.stats.selected_size = r.selected_tests.size();
  r.stats.empty_coverage_selected = r.empty_coverage_tests.size();
  r.stats.reduction_ratio =
      r.stats.baseline_size == 0
          ? 1.0
          : 1.0 - static_cast<double>(r.stats.selected_size) / static_cast<double>(r.stats.baseline_size);
  return r;
}

ImpactRelation combined_impact(const Snapshot &old_snapshot, const Snapshot &new_snapshot) {
  ImpactRelation impact = impact_relation(build_static(old_snapshot));
  impact.merge(impact_relation(build_static(new_snapshot)));
  return impact;
}

std::string selection_to_json(const SelectionResult &r) {
  nlohmann::json j;
  j["affected_subprograms"] = r.affected_subprograms;
  j["selected_tests"] = r.selected_tests;
  j["stats"] = {
      {"baseline_size", r.stats.baseline_size},
      {"selected_size", r.stats.selected_size},
      {"reduction_ratio", r.stats.reduction_ratio},
      {"empty_coverage_selected", r.stats.empty_coverage_selected},
  };
  nlohmann::json per_change = nlohmann::json::object();
  for (const auto &[change, tests] : r.per_change)
    per_change[change.key()] = tests;
  j["per_change"] = std::move(per_change);
  return j.dump(2) + "\n";
}

} // namespace adaimpact
