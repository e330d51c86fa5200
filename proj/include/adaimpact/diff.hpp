#pragma once

#include "adaimpact/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adaimpact {

/// Declaration order is the sort rank inside a ChangeSet.
enum class ChangeKind {
  SpecChanged,
  BodyChanged,
  SubprogramChanged,
  SubprogramAdded,
  SubprogramRemoved,
  PackageAdded,
  PackageRemoved,
};

std::string_view to_string(ChangeKind kind);
std::optional<ChangeKind> change_kind_from_string(std::string_view s);

struct Change {
  ChangeKind kind;
  std::string target; // package name, or qualified subprogram name

  auto operator<=>(const Change &) const = default;
  bool operator==(const Change &) const = default;

  /// "Kind:target", used as the per-change key in reports.
  std::string key() const;
};

struct ChangeSet {
  std::string base_id;
  std::string new_id;
  std::vector<Change> changes; // sorted, unique

  bool empty() const { return changes.empty(); }
  bool operator==(const ChangeSet &) const = default;
};

/// Classifies the differences between two snapshots at spec, body and
/// subprogram granularity. Throws HashAlgorithmMismatchError.
ChangeSet diff(const Snapshot &old_snapshot, const Snapshot &new_snapshot);

std::string changeset_to_json(const ChangeSet &cs);
ChangeSet changeset_from_json(std::string_view text);

} // namespace adaimpact
