#include "adaimpact/replay.hpp"

#include "adaimpact/diff.hpp"
#include "adaimpact/oracle.hpp"
#include "adaimpact/select.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace adaimpact {

namespace {

struct EditSite {
  std::string subprogram;
  std::string package;
  std::size_t file_index;
  std::optional<std::size_t> offset;
};

} // namespace

ReplayReport replay_null_insertions(const std::vector<SourceFile> &tree, const CoverageMap &cov, bool verify) {
  const Snapshot base = parse_sources(tree);

  std::vector<EditSite> sites;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    ParsedUnit unit = parse_unit(tree[i].path, tree[i].text);
    if (unit.unit.kind != UnitKind::Body) continue;
    for (const auto &s : unit.subprograms)
      sites.push_back(EditSite{s.qualified_name, unit.unit.package_name, i, s.statements_offset});
  }
  std::sort(sites.begin(), sites.end(),
            [](const EditSite &a, const EditSite &b) { return a.subprogram < b.subprogram; });

  ReplayReport report;
  report.baseline_size = cov.baseline.size();
  std::set<std::string> units;
  for (const auto &site : sites) {
    ReplayRow row;
    row.subprogram = site.subprogram;
    row.package = site.package;
    if (!site.offset) {
      row.skipped = true;
      report.rows.push_back(std::move(row));
      continue;
    }
    std::vector<SourceFile> edited = tree;
    edited[site.file_index].text.insert(*site.offset, " null;");
    const Snapshot modified = parse_sources(std::move(edited));
    const ChangeSet changes = diff(base, modified);
    const ImpactRelation impact = combined_impact(base, modified);
    const SelectionResult sel = affected_tests(changes, impact, cov);
    if (verify && !oracle::check_safety(sel, changes, impact, cov).ok()) report.verified = false;

    row.changes = changes.changes.size();
    row.selected = sel.selected_tests.size();
    row.selected_tests = sel.selected_tests;
    units.insert(site.package);
    ++report.subprograms_changed;
    report.tests_with_selection += row.selected;
    report.rows.push_back(std::move(row));
  }
  report.units_changed = units.size();
  report.tests_without_selection = report.baseline_size * report.subprograms_changed;
  report.reduction_ratio = report.tests_without_selection == 0
                               ? 1.0
                               : 1.0 - static_cast<double>(report.tests_with_selection) /
                                           static_cast<double>(report.tests_without_selection);
  return report;
}

std::string replay_to_text(const ReplayReport &r) {
  std::ostringstream out;
  std::size_t width = 10;
  for (const auto &row : r.rows)
    width = std::max(width, row.subprogram.size());
  out << std::left << std::setw(static_cast<int>(width) + 2) << "subprogram" << std::setw(9) << "changes"
      << "tests executed\n";
  for (const auto &row : r.rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << row.subprogram;
    if (row.skipped)
      out << "(skipped: no statement part)\n";
    else
      out << std::setw(9) << row.changes << row.selected << "\n";
  }
  out << "\n"
      << std::left << std::setw(15) << "mode" << std::setw(15) << "units changed" << std::setw(21)
      << "subprograms changed"
      << "tests executed\n";
  out << std::setw(15) << "retest all" << std::setw(15) << r.units_changed << std::setw(21)
      << r.subprograms_changed << r.tests_without_selection << "\n";
  out << std::setw(15) << "selective" << std::setw(15) << r.units_changed << std::setw(21)
      << r.subprograms_changed << r.tests_with_selection << "\n";
  out << "\nbaseline tests: " << r.baseline_size << "\n";
  out << "reduction ratio: " << std::fixed << std::setprecision(4) << r.reduction_ratio << "\n";
  return out.str();
}

std::string replay_to_json(const ReplayReport &r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : r.rows) {
    rows.push_back({{"subprogram", row.subprogram},
                    {"package", row.package},
                    {"skipped", row.skipped},
                    {"changes", row.changes},
                    {"selected", row.selected},
                    {"selected_tests", row.selected_tests}});
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  j["baseline_size"] = r.baseline_size;
  j["units_changed"] = r.units_changed;
  j["subprograms_changed"] = r.subprograms_changed;
  j["tests_retest_all"] = r.tests_without_selection;
  j["tests_selected"] = r.tests_with_selection;
  j["reduction_ratio"] = r.reduction_ratio;
  return j.dump(2) + "\n";
}

} // namespace adaimpact
