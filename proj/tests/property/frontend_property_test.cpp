#include "adaimpact/diff.hpp"
#include "adaimpact/frontend.hpp"
#include "adaimpact/snapshot.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

using namespace adaimpact;

namespace {

std::vector<std::string> corpus() { return {"pair", "peano", "tagged/base_version", "tagged/beta_specialised", "demo/src"}; }

using Mutator = std::string (*)(const std::string &, std::mt19937_64 &);

void expect_invisible(Mutator mutate, const char *what) {
  std::size_t mutants = 0;
  for (const auto &dir : corpus()) {
    const auto files = adaimpact::testing::fixture_files(dir);
    const auto base = adaimpact::testing::hash_fingerprint(parse_sources(files));
    for (int seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed);
      auto mutated = files;
      for (auto &f : mutated)
        f.text = mutate(f.text, rng);
      ASSERT_EQ(adaimpact::testing::hash_fingerprint(parse_sources(mutated)), base) << what << " " << dir << " seed " << seed;
      ++mutants;
    }
  }
  EXPECT_EQ(mutants, corpus().size() * 20);
}

} // namespace

TEST(FrontendProperty, CommentInsertionChangesNoHash) {
  expect_invisible(&adaimpact::testing::insert_comments, "comments");
}

TEST(FrontendProperty, WhitespacePerturbationChangesNoHash) {
  expect_invisible(&adaimpact::testing::perturb_whitespace, "whitespace");
}

TEST(FrontendProperty, IdentifierCaseChangesNoHash) {
  expect_invisible(&adaimpact::testing::flip_identifier_case, "case");
}

TEST(FrontendProperty, MutatorsActuallyMutate) {
  const auto text = adaimpact::testing::read_file(adaimpact::testing::fixtures_dir() / "demo/src/ada_words.adb");
  std::mt19937_64 rng(1);
  EXPECT_NE(adaimpact::testing::insert_comments(text, rng), text);
  EXPECT_NE(adaimpact::testing::perturb_whitespace(text, rng), text);
  EXPECT_NE(adaimpact::testing::flip_identifier_case(text, rng), text);
}

TEST(FrontendProperty, GeneratedTreesParse) {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto tree = adaimpact::testing::random_tree(rng);
    Snapshot s;
    ASSERT_NO_THROW(s = parse_sources(tree.render())) << "seed " << seed;
    std::set<std::string> parsed;
    for (const auto &[name, p] : s.packages)
      for (const auto &sub : p.subprograms)
        parsed.insert(sub.qualified_name);
    const auto expected = tree.all_subprograms();
    EXPECT_EQ(parsed, std::set<std::string>(expected.begin(), expected.end())) << "seed " << seed;
  }
}

TEST(FrontendProperty, LocalityOnGeneratedTrees) {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const auto tree = adaimpact::testing::random_tree(rng);
    auto edited = tree;
    const std::size_t p = rng() % tree.packages.size();
    const std::size_t s = rng() % tree.packages[p].subprograms.size();
    const auto before_text = tree.render();
    do {
      edited.packages[p].subprograms[s].seed = static_cast<unsigned>(rng());
    } while (edited.render() == before_text);
    const auto cs = diff(parse_sources(before_text), parse_sources(edited.render()));
    EXPECT_EQ(cs.changes, (std::vector<Change>{{ChangeKind::SubprogramChanged, tree.qualified(p, s)}}))
        << "seed " << seed;
  }
}

TEST(FrontendProperty, RepeatedParsesAreByteIdentical) {
  for (int seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const auto files = adaimpact::testing::random_tree(rng).render();
    EXPECT_EQ(serialize(parse_sources(files)), serialize(parse_sources(files)));
  }
}

TEST(FrontendProperty, SnapshotRoundTripOnGeneratedTrees) {
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto s = parse_sources(adaimpact::testing::random_tree(rng).render());
    const auto text = serialize(s);
    EXPECT_EQ(deserialize(text), s);
    EXPECT_EQ(serialize(deserialize(text)), text);
  }
}
