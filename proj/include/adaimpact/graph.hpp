#pragma once

#include "adaimpact/model.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adaimpact {

enum class EntityKind { Spec, Body, Subprogram };
enum class Side { Body, Spec };

struct Entity {
  EntityKind kind;
  std::string name;

  static Entity spec(std::string package) { return {EntityKind::Spec, std::move(package)}; }
  static Entity body(std::string package) { return {EntityKind::Body, std::move(package)}; }
  static Entity subprogram(std::string qualified) {
    return {EntityKind::Subprogram, std::move(qualified)};
  }

  auto operator<=>(const Entity &) const = default;
  bool operator==(const Entity &) const = default;
};

std::string to_string(const Entity &e);

using EntitySet = std::set<Entity>;

/// Contains and Uses, with their inverses kept in step.
class StaticRelations {
public:
  void add_package(const std::string &package);
  void add_subprogram(const std::string &package, const std::string &qualified);
  /// Self edges are dropped.
  void add_use(const std::string &package, Side side, const std::string &used);

  const std::set<std::string> &packages() const { return packages_; }
  /// Withed packages that are not defined in the snapshot.
  std::set<std::string> external_packages() const;

  const std::set<std::string> &contains(const std::string &package) const;
  const std::set<std::string> &uses(const std::string &package, Side side) const;
  /// Package owning `qualified`, or empty.
  std::string contained_by(const std::string &qualified) const;
  /// Packages whose `side` withs `package`.
  const std::set<std::string> &used_by(const std::string &package, Side side) const;

  const std::map<std::string, std::set<std::string>> &contains_map() const { return contains_; }
  const std::map<std::pair<std::string, Side>, std::set<std::string>> &uses_map() const {
    return uses_;
  }

  bool operator==(const StaticRelations &) const = default;

private:
  std::set<std::string> packages_;
  std::map<std::string, std::set<std::string>> contains_;
  std::map<std::string, std::string> contained_by_;
  std::map<std::pair<std::string, Side>, std::set<std::string>> uses_;
  std::map<std::pair<std::string, Side>, std::set<std::string>> used_by_;
};

/// One-step impact: for each entity, the entities that depend on it.
class ImpactRelation {
public:
  void add_entity(const Entity &e);
  void add_edge(const Entity &from, const Entity &to);

  bool contains(const Entity &e) const { return edges_.count(e) != 0; }
  /// Empty for unknown entities.
  const EntitySet &successors(const Entity &e) const;
  const std::map<Entity, EntitySet> &edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

  /// Union of entities and edges.
  void merge(const ImpactRelation &other);

  bool operator==(const ImpactRelation &) const = default;

private:
  std::map<Entity, EntitySet> edges_;
};

struct CoverageMap {
  std::vector<std::string> baseline; // file order
  std::map<std::string, std::set<std::string>> covers;

  const std::set<std::string> &covered_by(const std::string &test) const;
  bool operator==(const CoverageMap &) const = default;
};

StaticRelations build_static(const Snapshot &s);

/// Throws CycleError when package specs with each other in a cycle.
ImpactRelation impact_relation(const StaticRelations &r);

/// Coverage file: {"tests": {"<id>": ["pkg.sub", ...]}}. Baseline order is
/// the order of keys in the file. Throws FormatError.
CoverageMap parse_coverage(std::string_view text);
CoverageMap load_coverage(const std::filesystem::path &path);
std::string coverage_to_json(const CoverageMap &c);

/// Covered subprograms that no snapshot in `known` defines.
std::set<std::string> unknown_coverage_names(const CoverageMap &c,
                                             const std::vector<const Snapshot *> &known);

/// Graphviz rendering in dependency direction (solid static edges, dashed
/// coverage-implied call coupling).
std::string export_dot(const ImpactRelation &r, const CoverageMap &c);

} // namespace adaimpact
