#include "adaimpact/diff.hpp"
#include "adaimpact/error.hpp"
#include "adaimpact/frontend.hpp"
#include "adaimpact/oracle.hpp"
#include "adaimpact/select.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

using namespace adaimpact;

namespace {

constexpr int kSeeds = 150;

struct Run {
  ChangeSet changes;
  ImpactRelation impact;
  SelectionResult selection;
};

Run pipeline(const std::vector<SourceFile> &a, const std::vector<SourceFile> &b, const CoverageMap &cov) {
  const auto sa = parse_sources(a), sb = parse_sources(b);
  Run r{diff(sa, sb), combined_impact(sa, sb), {}};
  r.selection = affected_tests(r.changes, r.impact, cov);
  return r;
}

} // namespace

TEST(SelectionProperty, InjectedEditsAreSafe) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(seed);
    const auto tree = adaimpact::testing::random_tree(rng);
    const auto edit = adaimpact::testing::inject_edit(tree, rng);
    const auto cov = adaimpact::testing::random_coverage(tree, rng);
    const auto run = pipeline(tree.render(), edit.edited.render(), cov);

    ASSERT_FALSE(run.changes.empty()) << "seed " << seed;
    const auto verdict = oracle::check_safety(run.selection, run.changes, run.impact, cov);
    EXPECT_TRUE(verdict.ok()) << "seed " << seed << "\n" << verdict.to_text();

    // Independent ground truth from the generator's model.
    for (const auto &name : edit.must_affect)
      EXPECT_TRUE(run.selection.affected_subprograms.count(name)) << "seed " << seed << " missing " << name;
    const std::set<std::string> selected(run.selection.selected_tests.begin(), run.selection.selected_tests.end());
    for (const auto &t : cov.baseline) {
      const auto &covered = cov.covered_by(t);
      const bool must = covered.empty() || std::any_of(covered.begin(), covered.end(), [&](const auto &s) {
                          return edit.must_affect.count(s) != 0;
                        });
      if (must) {
        EXPECT_TRUE(selected.count(t)) << "seed " << seed << " test " << t;
      }
    }
  }
}

TEST(SelectionProperty, UnselectedTestsMissTheClosure) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(seed + 1000);
    const auto tree = adaimpact::testing::random_tree(rng);
    const auto edit = adaimpact::testing::inject_edit(tree, rng);
    const auto cov = adaimpact::testing::random_coverage(tree, rng);
    const auto run = pipeline(tree.render(), edit.edited.render(), cov);
    const auto dense = oracle::brute_closure(run.impact);
    std::set<std::string> closure;
    for (const auto &c : run.changes.changes) {
      const auto reach = dense.reachable_subprograms(entity(c));
      closure.insert(reach.begin(), reach.end());
    }
    const std::set<std::string> selected(run.selection.selected_tests.begin(), run.selection.selected_tests.end());
    for (const auto &t : cov.baseline) {
      if (selected.count(t)) continue;
      for (const auto &s : cov.covered_by(t))
        EXPECT_FALSE(closure.count(s)) << "seed " << seed << " test " << t << " covers " << s;
    }
  }
}

TEST(SelectionProperty, SelectionIsSubsetOfBaselineInOrder) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(seed + 2000);
    const auto tree = adaimpact::testing::random_tree(rng);
    const auto cov = adaimpact::testing::random_coverage(tree, rng);
    const auto run = pipeline(tree.render(), adaimpact::testing::inject_edit(tree, rng).edited.render(), cov);
    std::size_t cursor = 0;
    for (const auto &t : run.selection.selected_tests) {
      while (cursor < cov.baseline.size() && cov.baseline[cursor] != t)
        ++cursor;
      ASSERT_LT(cursor, cov.baseline.size()) << "seed " << seed << " " << t;
    }
    EXPECT_EQ(run.selection.stats.selected_size, run.selection.selected_tests.size());
    EXPECT_DOUBLE_EQ(run.selection.stats.reduction_ratio,
                     1.0 - static_cast<double>(run.selection.selected_tests.size()) / cov.baseline.size());
  }
}

TEST(SelectionProperty, Additivity) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(seed + 3000);
    const auto tree = adaimpact::testing::random_tree(rng);
    const auto cov = adaimpact::testing::random_coverage(tree, rng);
    const auto edit = adaimpact::testing::inject_edit(tree, rng);
    const auto run = pipeline(tree.render(), edit.edited.render(), cov);
    std::set<std::string> united;
    for (const auto &c : run.changes.changes) {
      const auto one = affected_tests(ChangeSet{"", "", {c}}, run.impact, cov);
      united.insert(one.selected_tests.begin(), one.selected_tests.end());
    }
    EXPECT_EQ(std::set<std::string>(run.selection.selected_tests.begin(), run.selection.selected_tests.end()), united)
        << "seed " << seed;
  }
}

TEST(SelectionProperty, EnlargingCoverageNeverDeselects) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(seed + 4000);
    const auto tree = adaimpact::testing::random_tree(rng);
    auto cov = adaimpact::testing::random_coverage(tree, rng);
    const auto edit = adaimpact::testing::inject_edit(tree, rng);
    const auto run = pipeline(tree.render(), edit.edited.render(), cov);
    const auto subs = tree.all_subprograms();
    // Empty coverage is selected on any change, so growing it from nothing
    // is a different rule; only already-covering tests are enlarged.
    for (auto &[t, covered] : cov.covers)
      if (!covered.empty() && rng() % 2) covered.insert(subs[rng() % subs.size()]);
    const auto larger = affected_tests(run.changes, run.impact, cov);
    const std::set<std::string> now(larger.selected_tests.begin(), larger.selected_tests.end());
    for (const auto &t : run.selection.selected_tests)
      EXPECT_TRUE(now.count(t)) << "seed " << seed << " " << t;
  }
}

TEST(SelectionProperty, SingleTokenEditsAreNeverSilent) {
  const std::vector<std::string> dirs = {"pair", "peano", "tagged/base_version", "demo/src"};
  std::size_t accepted = 0, rejected = 0;
  for (int seed = 0; seed < 400; ++seed) {
    std::mt19937_64 rng(seed);
    auto files = adaimpact::testing::fixture_files(dirs[seed % dirs.size()]);
    const auto base = parse_sources(files);
    auto &target = files[rng() % files.size()];
    ASSERT_TRUE(adaimpact::testing::mutate_one_token(target.text, rng));
    Snapshot mutant;
    try {
      mutant = parse_sources(files);
    } catch (const Error &) {
      ++rejected; // outside the parsed subset; the tool refuses rather than misses
      continue;
    }
    ++accepted;
    EXPECT_FALSE(diff(base, mutant).empty()) << "seed " << seed << " file " << target.path;
  }
  EXPECT_GE(accepted, 100u) << "rejected " << rejected;
}
