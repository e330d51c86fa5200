#pragma once

#include "adaimpact/hash.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace adaimpact {

enum class UnitKind { Spec, Body };
enum class SubprogramKind { Procedure, Function };

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0; // one past the terminating ';'

  bool operator==(const Span &) const = default;
};

struct SubprogramDecl {
  std::string qualified_name; // "pkg.name", "pkg.name#2" for overloads
  SubprogramKind kind = SubprogramKind::Procedure;
  Span body_span;
  // Offset just past the subprogram's own `begin`; absent for null
  // procedures and expression functions.
  std::optional<std::size_t> statements_offset;
  std::string normalized_hash;

  bool operator==(const SubprogramDecl &) const = default;
};

struct PackageModel {
  std::string name;
  bool has_spec = false;
  bool has_body = false;
  std::set<std::string> spec_withs;
  std::set<std::string> body_withs;
  std::vector<SubprogramDecl> subprograms; // body source order
  std::string spec_residue_hash;           // empty when there is no spec
  std::string body_residue_hash;           // empty when there is no body

  bool operator==(const PackageModel &) const = default;

  const SubprogramDecl *find_subprogram(const std::string &qualified) const;
};

struct Snapshot {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  std::string hash_algorithm{kHashAlgorithm};
  std::map<std::string, PackageModel> packages;
  std::string created; // informational, excluded from equality

  bool operator==(const Snapshot &other) const {
    return format_version == other.format_version &&
           hash_algorithm == other.hash_algorithm && packages == other.packages;
  }
};

/// "pkg" for "pkg.sub" / "pkg.child.sub#2". Subprogram names never contain
/// dots (operator designators excepted), so the split is at the last dot
/// outside quotes.
std::string package_of(const std::string &qualified_subprogram);

} // namespace adaimpact
