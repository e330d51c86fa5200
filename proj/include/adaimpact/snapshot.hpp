#pragma once

#include "adaimpact/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace adaimpact {

/// Canonical text form. The first line is a `//` header holding the
/// creation time; everything after it is sorted-key JSON.
std::string serialize(const Snapshot &s);
Snapshot deserialize(std::string_view text);

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed save leaves nothing behind.
void save(const Snapshot &s, const std::filesystem::path &path);
Snapshot load(const std::filesystem::path &path);

/// The serialized form minus the header line; what comparators look at.
std::string canonical_body(std::string_view serialized);

/// Short content identifier derived from the canonical body.
std::string snapshot_id(const Snapshot &s);

} // namespace adaimpact
