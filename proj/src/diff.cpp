#include "adaimpact/diff.hpp"

#include "adaimpact/error.hpp"
#include "adaimpact/snapshot.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>

namespace adaimpact {

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {
    "SpecChanged",       "BodyChanged",  "SubprogramChanged", "SubprogramAdded",
    "SubprogramRemoved", "PackageAdded", "PackageRemoved",
};

std::map<std::string, const SubprogramDecl *> by_name(const PackageModel &p) {
  std::map<std::string, const SubprogramDecl *> out;
  for (const auto &s : p.subprograms)
    out.emplace(s.qualified_name, &s);
  return out;
}

} // namespace

std::string_view to_string(ChangeKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<ChangeKind> change_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == s) return static_cast<ChangeKind>(i);
  return std::nullopt;
}

std::string Change::key() const { return std::string(to_string(kind)) + ":" + target; }

ChangeSet diff(const Snapshot &old_snapshot, const Snapshot &new_snapshot) {
  if (old_snapshot.hash_algorithm != new_snapshot.hash_algorithm)
    throw HashAlgorithmMismatchError("cannot diff snapshots hashed with '" +
                                     old_snapshot.hash_algorithm + "' and '" +
                                     new_snapshot.hash_algorithm + "'");
  std::set<Change> changes;
  auto add = [&](ChangeKind k, const std::string &target) { changes.insert(Change{k, target}); };

  for (const auto &[name, old_pkg] : old_snapshot.packages) {
    auto it = new_snapshot.packages.find(name);
    if (it == new_snapshot.packages.end()) {
      add(ChangeKind::PackageRemoved, name);
      continue;
    }
    const PackageModel &new_pkg = it->second;
    if (old_pkg.has_spec != new_pkg.has_spec || old_pkg.spec_residue_hash != new_pkg.spec_residue_hash ||
        old_pkg.spec_withs != new_pkg.spec_withs)
      add(ChangeKind::SpecChanged, name);
    if (old_pkg.has_body != new_pkg.has_body || old_pkg.body_residue_hash != new_pkg.body_residue_hash ||
        old_pkg.body_withs != new_pkg.body_withs)
      add(ChangeKind::BodyChanged, name);

    const auto old_subs = by_name(old_pkg);
    const auto new_subs = by_name(new_pkg);
    for (const auto &[q, decl] : old_subs) {
      auto n = new_subs.find(q);
      if (n == new_subs.end()) {
        add(ChangeKind::SubprogramRemoved, q);
        add(ChangeKind::BodyChanged, name);
      } else if (n->second->normalized_hash != decl->normalized_hash) {
        add(ChangeKind::SubprogramChanged, q);
      }
    }
    for (const auto &[q, decl] : new_subs) {
      if (!old_subs.count(q)) {
        add(ChangeKind::SubprogramAdded, q);
        add(ChangeKind::BodyChanged, name);
      }
    }
  }
  for (const auto &[name, pkg] : new_snapshot.packages)
    if (!old_snapshot.packages.count(name)) add(ChangeKind::PackageAdded, name);

  ChangeSet cs;
  cs.base_id = snapshot_id(old_snapshot);
  cs.new_id = snapshot_id(new_snapshot);
  cs.changes.assign(changes.begin(), changes.end());
  return cs;
}

std::string changeset_to_json(const ChangeSet &cs) {
  nlohmann::json j;
  j["base_id"] = cs.base_id;
  j["new_id"] = cs.new_id;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &c : cs.changes)
    arr.push_back({{"kind", std::string(to_string(c.kind))}, {"target", c.target}});
  j["changes"] = std::move(arr);
  return j.dump(2) + "\n";
}

ChangeSet changeset_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(std::string("malformed change-set: ") + e.what());
  }
  auto str = [&](const nlohmann::json &obj, const char *key, const std::string &path) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
      throw FormatError("malformed change-set: field '" + path + key + "' is missing or not a string");
    return it->get<std::string>();
  };
  if (!j.is_object()) throw FormatError("malformed change-set: root is not an object");
  ChangeSet cs;
  cs.base_id = str(j, "base_id", "");
  cs.new_id = str(j, "new_id", "");
  auto it = j.find("changes");
  if (it == j.end() || !it->is_array())
    throw FormatError("malformed change-set: field 'changes' is missing or not an array");
  std::set<Change> changes;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto path = "changes[" + std::to_string(i) + "].";
    const auto &entry = (*it)[i];
    if (!entry.is_object()) throw FormatError("malformed change-set: '" + path + "' is not an object");
    const auto kind_name = str(entry, "kind", path);
    auto kind = change_kind_from_string(kind_name);
    if (!kind) throw FormatError("malformed change-set: unknown kind '" + kind_name + "'");
    changes.insert(Change{*kind, str(entry, "target", path)});
  }
  cs.changes.assign(changes.begin(), changes.end());
  return cs;
}

} // namespace adaimpact
