#include "cli.hpp"

#include "adaimpact/diff.hpp"
#include "adaimpact/error.hpp"
#include "adaimpact/frontend.hpp"
#include "adaimpact/graph.hpp"
#include "adaimpact/oracle.hpp"
#include "adaimpact/replay.hpp"
#include "adaimpact/select.hpp"
#include "adaimpact/snapshot.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace adaimpact::cli {

namespace {

namespace fs = std::filesystem;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void emit(const RunConfig &cfg, const std::string &text, std::ostream &out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + cfg.output);
  file << text;
  if (!file) throw IoError("cannot write " + cfg.output);
}

// A directory is parsed as a source tree, anything else loaded as a snapshot.
Snapshot snapshot_from(const std::string &input) {
  if (fs::is_directory(input)) return parse_tree(input);
  return load(input);
}

void warn_about(const Snapshot &s, std::ostream &err) {
  for (const auto &[name, pm] : s.packages)
    if (pm.has_body && !pm.has_spec) err << "warning: package body " << name << " has no spec\n";
  for (const auto &ext : build_static(s).external_packages())
    err << "warning: external dependency " << ext << " (changes to it cannot be detected)\n";
}

int cmd_snapshot(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  Snapshot s = parse_tree(cfg.inputs.at(0));
  s.created = utc_now();
  warn_about(s, err);
  if (cfg.output.empty())
    out << serialize(s);
  else
    save(s, cfg.output);
  return kSuccess;
}

int cmd_diff(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  const ChangeSet cs = diff(snapshot_from(cfg.inputs.at(0)), snapshot_from(cfg.inputs.at(1)));
  if (cfg.format == Format::Json) {
    emit(cfg, changeset_to_json(cs), out);
  } else {
    std::ostringstream text;
    for (const auto &c : cs.changes)
      text << to_string(c.kind) << " " << c.target << "\n";
    text << cs.changes.size() << " change(s)\n";
    emit(cfg, text.str(), out);
  }
  return kSuccess;
}

int cmd_select(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const Snapshot base = snapshot_from(cfg.inputs.at(0));
  const Snapshot modified = snapshot_from(cfg.inputs.at(1));
  const CoverageMap cov = load_coverage(cfg.coverage);

  const ChangeSet changes = diff(base, modified);
  const ImpactRelation impact = combined_impact(base, modified);
  const SelectionResult sel = affected_tests(changes, impact, cov);

  warn_about(modified, err);
  for (const auto &name : unknown_coverage_names(cov, {&base, &modified}))
    err << "warning: coverage names unknown subprogram " << name << "\n";
  for (const auto &w : sel.warnings)
    err << "warning: " << w << "\n";

  if (cfg.format == Format::Json) {
    emit(cfg, selection_to_json(sel), out);
  } else {
    std::ostringstream text;
    for (const auto &t : sel.selected_tests)
      text << t << "\n";
    text << "selected " << sel.stats.selected_size << " of " << sel.stats.baseline_size
         << " tests (reduction " << std::fixed << std::setprecision(4) << sel.stats.reduction_ratio << ")\n";
    if (sel.stats.empty_coverage_selected > 0)
      text << sel.stats.empty_coverage_selected << " selected only for having no coverage\n";
    emit(cfg, text.str(), out);
  }

  if (cfg.verify) {
    const auto verdict = oracle::check_safety(sel, changes, impact, cov);
    err << verdict.to_text();
    if (!verdict.ok()) return kVerificationFailed;
  }
  return kSuccess;
}

int cmd_graph(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  const Snapshot s = snapshot_from(cfg.inputs.at(0));
  const CoverageMap cov = cfg.coverage.empty() ? CoverageMap{} : load_coverage(cfg.coverage);
  emit(cfg, export_dot(impact_relation(build_static(s)), cov), out);
  return kSuccess;
}

int cmd_replay(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const CoverageMap cov = load_coverage(cfg.coverage);
  const ReplayReport report = replay_null_insertions(read_tree(cfg.inputs.at(0)), cov, cfg.verify);
  emit(cfg, cfg.format == Format::Json ? replay_to_json(report) : replay_to_text(report), out);
  if (cfg.verify) {
    err << "verification: " << (report.verified ? "PASS" : "FAIL") << "\n";
    if (!report.verified) return kVerificationFailed;
  }
  return kSuccess;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Change-impact analysis and safe regression test selection for Ada source trees",
               "ada-impact"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"text", Format::Text}};
  auto add_output = [&](CLI::App *sub) {
    sub->add_option("-o,--output", cfg.output, "Output path (default: standard output)");
  };
  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  auto *snapshot = app.add_subcommand("snapshot", "Parse a source tree and save its snapshot");
  snapshot->add_option("tree", cfg.inputs, "Source tree")->required()->expected(1);
  add_output(snapshot);

  auto *diff_cmd = app.add_subcommand("diff", "Classify changes between two versions");
  diff_cmd->add_option("inputs", cfg.inputs, "Base and new (snapshot file or source tree)")
      ->required()
      ->expected(2);
  add_output(diff_cmd);
  add_format(diff_cmd);

  auto *select = app.add_subcommand("select", "Select the tests affected by a change");
  select->add_option("inputs", cfg.inputs, "Base and new (snapshot file or source tree)")
      ->required()
      ->expected(2);
  select->add_option("-c,--coverage", cfg.coverage, "Per-test coverage file")->required();
  select->add_flag("--verify", cfg.verify, "Check the selection against the brute-force oracle");
  add_output(select);
  add_format(select);

  auto *graph = app.add_subcommand("graph", "Render the dependency graph as DOT");
  graph->add_option("input", cfg.inputs, "Snapshot file or source tree")->required()->expected(1);
  graph->add_option("-c,--coverage", cfg.coverage, "Per-test coverage file");
  add_output(graph);

  auto *replay = app.add_subcommand("replay", "Replay null-statement insertions for every subprogram");
  replay->add_option("tree", cfg.inputs, "Source tree")->required()->expected(1);
  replay->add_option("-c,--coverage", cfg.coverage, "Per-test coverage file")->required();
  replay->add_flag("--verify", cfg.verify, "Check every per-change selection against the oracle");
  add_output(replay);
  add_format(replay);
  replay->callback([&] {
    if (cfg.format == Format::Json && !replay->count("--format")) cfg.format = Format::Text;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "snapshot") return cmd_snapshot(cfg, out, err);
    if (cfg.subcommand == "diff") return cmd_diff(cfg, out, err);
    if (cfg.subcommand == "select") return cmd_select(cfg, out, err);
    if (cfg.subcommand == "graph") return cmd_graph(cfg, out, err);
    return cmd_replay(cfg, out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

} // namespace adaimpact::cli
