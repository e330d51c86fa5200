#pragma once

#include "adaimpact/lexer.hpp"
#include "adaimpact/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace adaimpact {

struct SourceFile {
  std::string path; // relative to the tree root, '/' separated
  std::string text;

  bool operator==(const SourceFile &) const = default;
};

struct SourceUnit {
  std::string path;
  UnitKind kind = UnitKind::Spec;
  std::string package_name;
  std::string text;
};

/// Everything one compilation unit contributes to its PackageModel.
struct ParsedUnit {
  SourceUnit unit;
  std::set<std::string> withs; // context clauses, instantiations, parent
  std::vector<SubprogramDecl> subprograms; // empty for specs
  std::string residue_hash;
};

/// Parses one `.ads`/`.adb` file. Throws ParseError.
ParsedUnit parse_unit(std::string_view path, std::string_view text);

/// Merges parsed units into a Snapshot. Throws TreeParseError on duplicate
/// definitions.
Snapshot assemble(std::vector<ParsedUnit> units);

/// Parses an in-memory tree. All unit-level failures are collected into a
/// single TreeParseError.
Snapshot parse_sources(std::vector<SourceFile> files);

/// Reads every `*.ads`/`*.adb` under `root` (recursively, sorted by path).
std::vector<SourceFile> read_tree(const std::filesystem::path &root);

Snapshot parse_tree(const std::filesystem::path &root);

} // namespace adaimpact
