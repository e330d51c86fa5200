#include "adaimpact/error.hpp"
#include "adaimpact/frontend.hpp"
#include "adaimpact/snapshot.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace adaimpact;
using adaimpact::testing::fixtures_dir;
using adaimpact::testing::read_file;

namespace {

class SnapshotFile : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           (std::string("adaimpact_snap_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

void write(const std::filesystem::path &p, const std::string &text) { std::ofstream(p, std::ios::binary) << text; }

} // namespace

TEST_F(SnapshotFile, RoundTrip) {
  auto s = parse_tree(fixtures_dir() / "pair");
  s.created = "2026-01-01T00:00:00Z";
  save(s, dir_ / "s.json");
  const auto loaded = load(dir_ / "s.json");
  EXPECT_EQ(loaded, s);
  EXPECT_EQ(loaded.created, s.created);
}

TEST_F(SnapshotFile, RoundTripDemoCorpus) {
  const auto s = parse_tree(fixtures_dir() / "demo/src");
  save(s, dir_ / "s.json");
  EXPECT_EQ(load(dir_ / "s.json"), s);
}

TEST_F(SnapshotFile, RepeatedSavesAreByteIdentical) {
  const auto s = parse_tree(fixtures_dir() / "tagged/base_version");
  save(s, dir_ / "one.json");
  save(s, dir_ / "two.json");
  EXPECT_EQ(read_file(dir_ / "one.json"), read_file(dir_ / "two.json"));
}

TEST_F(SnapshotFile, TimestampOnlyAffectsHeader) {
  auto s = parse_tree(fixtures_dir() / "pair");
  auto t = s;
  t.created = "2030-05-05T05:05:05Z";
  EXPECT_EQ(s, t);
  EXPECT_NE(serialize(s), serialize(t));
  EXPECT_EQ(canonical_body(serialize(s)), canonical_body(serialize(t)));
  EXPECT_EQ(snapshot_id(s), snapshot_id(t));
}

TEST_F(SnapshotFile, SaveOfLoadIsIdentity) {
  auto s = parse_tree(fixtures_dir() / "demo/src");
  s.created = "2026-10-15T12:00:00Z";
  save(s, dir_ / "f.json");
  const auto original = read_file(dir_ / "f.json");
  save(load(dir_ / "f.json"), dir_ / "g.json");
  EXPECT_EQ(read_file(dir_ / "g.json"), original);
}

TEST_F(SnapshotFile, UnwritablePathLeavesNothing) {
  const auto s = parse_tree(fixtures_dir() / "pair");
  const auto target = dir_ / "missing" / "s.json";
  EXPECT_THROW(save(s, target), IoError);
  EXPECT_FALSE(std::filesystem::exists(target));
  EXPECT_FALSE(std::filesystem::exists(dir_ / "missing"));
  EXPECT_TRUE(std::filesystem::is_empty(dir_));
}

TEST_F(SnapshotFile, MissingFile) { EXPECT_THROW(load(dir_ / "absent.json"), IoError); }

TEST_F(SnapshotFile, TruncatedFileIsMalformed) {
  const auto text = serialize(parse_tree(fixtures_dir() / "pair"));
  write(dir_ / "t.json", text.substr(0, text.size() / 2));
  try {
    load(dir_ / "t.json");
    FAIL() << "expected FormatError";
  } catch (const VersionMismatchError &) {
    FAIL() << "truncation is not a version mismatch";
  } catch (const FormatError &e) {
    EXPECT_NE(std::string(e.what()).find("malformed"), std::string::npos) << e.what();
  }
}

TEST_F(SnapshotFile, UnknownVersionIsDistinct) {
  auto text = serialize(parse_tree(fixtures_dir() / "pair"));
  const auto pos = text.find("\"format_version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 19, "\"format_version\": 999");
  write(dir_ / "v.json", text);
  EXPECT_THROW(load(dir_ / "v.json"), VersionMismatchError);
}

TEST(SnapshotFormat, ErrorNamesFirstOffendingField) {
  auto text = serialize(parse_tree(fixtures_dir() / "pair"));
  const auto pos = text.find("\"function\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 10, "\"lambda\"");
  try {
    deserialize(text);
    FAIL() << "expected FormatError";
  } catch (const FormatError &e) {
    EXPECT_NE(std::string(e.what()).find("packages.a.subprograms[0].kind"), std::string::npos) << e.what();
  }
}

TEST(SnapshotFormat, HashAlgorithmMismatch) {
  auto text = serialize(parse_tree(fixtures_dir() / "pair"));
  const auto pos = text.find("\"sha256\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 8, "\"md5\"");
  EXPECT_THROW(deserialize(text), HashAlgorithmMismatchError);
}

TEST(SnapshotFormat, KeyMustMatchPackageName) {
  auto text = serialize(parse_sources({{"p.ads", "package P is end P;"}}));
  const auto pos = text.find("\"name\": \"p\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 11, "\"name\": \"q\"");
  EXPECT_THROW(deserialize(text), FormatError);
}

TEST(SnapshotFormat, KeysAreSorted) {
  const auto body = canonical_body(serialize(parse_tree(fixtures_dir() / "pair")));
  EXPECT_LT(body.find("\"format_version\""), body.find("\"hash_algorithm\""));
  EXPECT_LT(body.find("\"hash_algorithm\""), body.find("\"packages\""));
  EXPECT_LT(body.find("\"a\""), body.find("\"b\""));
}

TEST(SnapshotFormat, EmptySnapshot) {
  const Snapshot empty;
  EXPECT_EQ(deserialize(serialize(empty)), empty);
}
