#include "adaimpact/snapshot.hpp"

#include "adaimpact/error.hpp"
#include "adaimpact/hash.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace adaimpact {

using nlohmann::json;

const SubprogramDecl *PackageModel::find_subprogram(const std::string &qualified) const {
  for (const auto &s : subprograms)
    if (s.qualified_name == qualified) return &s;
  return nullptr;
}

std::string package_of(const std::string &qualified) {
  const auto quote = qualified.find('"');
  const auto dot = qualified.rfind('.', quote == std::string::npos ? std::string::npos : quote);
  return dot == std::string::npos ? std::string() : qualified.substr(0, dot);
}

namespace {

constexpr std::string_view kHeaderPrefix = "// adaimpact snapshot";

json to_json(const SubprogramDecl &d) {
  json j;
  j["qualified_name"] = d.qualified_name;
  j["kind"] = d.kind == SubprogramKind::Function ? "function" : "procedure";
  j["body_span"] = json::array({d.body_span.begin, d.body_span.end});
  j["statements_offset"] = d.statements_offset ? json(*d.statements_offset) : json(nullptr);
  j["normalized_hash"] = d.normalized_hash;
  return j;
}

json to_json(const PackageModel &p) {
  json j;
  j["name"] = p.name;
  j["has_spec"] = p.has_spec;
  j["has_body"] = p.has_body;
  j["spec_withs"] = p.spec_withs;
  j["body_withs"] = p.body_withs;
  j["spec_residue_hash"] = p.spec_residue_hash;
  j["body_residue_hash"] = p.body_residue_hash;
  json subs = json::array();
  for (const auto &s : p.subprograms)
    subs.push_back(to_json(s));
  j["subprograms"] = std::move(subs);
  return j;
}

[[noreturn]] void malformed(const std::string &field, const std::string &why) {
  throw FormatError("malformed snapshot: field '" + field + "' " + why);
}

const json &member(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object()) malformed(path, "is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(path.empty() ? key : path + "." + key, "is missing");
  return *it;
}

std::string get_string(const json &obj, const std::string &key, const std::string &path) {
  const json &v = member(obj, key, path);
  if (!v.is_string()) malformed(path + "." + key, "is not a string");
  return v.get<std::string>();
}

bool get_bool(const json &obj, const std::string &key, const std::string &path) {
  const json &v = member(obj, key, path);
  if (!v.is_boolean()) malformed(path + "." + key, "is not a boolean");
  return v.get<bool>();
}

std::size_t get_offset(const json &v, const std::string &path) {
  if (!v.is_number_unsigned()) malformed(path, "is not a non-negative integer");
  return v.get<std::size_t>();
}

std::set<std::string> get_name_set(const json &obj, const std::string &key, const std::string &path) {
  const json &v = member(obj, key, path);
  if (!v.is_array()) malformed(path + "." + key, "is not an array");
  std::set<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) malformed(path + "." + key + "[" + std::to_string(i) + "]", "is not a string");
    out.insert(v[i].get<std::string>());
  }
  return out;
}

SubprogramDecl subprogram_from_json(const json &j, const std::string &path) {
  SubprogramDecl d;
  d.qualified_name = get_string(j, "qualified_name", path);
  const auto kind = get_string(j, "kind", path);
  if (kind == "function") d.kind = SubprogramKind::Function;
  else if (kind == "procedure") d.kind = SubprogramKind::Procedure;
  else malformed(path + ".kind", "has unknown value '" + kind + "'");
  const json &span = member(j, "body_span", path);
  if (!span.is_array() || span.size() != 2) malformed(path + ".body_span", "is not a [begin, end] pair");
  d.body_span = Span{get_offset(span[0], path + ".body_span[0]"), get_offset(span[1], path + ".body_span[1]")};
  const json &stmts = member(j, "statements_offset", path);
  if (!stmts.is_null()) d.statements_offset = get_offset(stmts, path + ".statements_offset");
  d.normalized_hash = get_string(j, "normalized_hash", path);
  return d;
}

PackageModel package_from_json(const json &j, const std::string &path) {
  PackageModel p;
  p.name = get_string(j, "name", path);
  p.has_spec = get_bool(j, "has_spec", path);
  p.has_body = get_bool(j, "has_body", path);
  p.spec_withs = get_name_set(j, "spec_withs", path);
  p.body_withs = get_name_set(j, "body_withs", path);
  p.spec_residue_hash = get_string(j, "spec_residue_hash", path);
  p.body_residue_hash = get_string(j, "body_residue_hash", path);
  const json &subs = member(j, "subprograms", path);
  if (!subs.is_array()) malformed(path + ".subprograms", "is not an array");
  for (std::size_t i = 0; i < subs.size(); ++i)
    p.subprograms.push_back(subprogram_from_json(subs[i], path + ".subprograms[" + std::to_string(i) + "]"));
  return p;
}

json body_json(const Snapshot &s) {
  json j;
  j["format_version"] = s.format_version;
  j["hash_algorithm"] = s.hash_algorithm;
  json packages = json::object();
  for (const auto &[name, pm] : s.packages)
    packages[name] = to_json(pm);
  j["packages"] = std::move(packages);
  return j;
}

} // namespace

std::string serialize(const Snapshot &s) {
  std::string out(kHeaderPrefix);
  if (!s.created.empty()) out += " created " + s.created;
  out += "\n";
  out += body_json(s).dump(2);
  out += "\n";
  return out;
}

std::string canonical_body(std::string_view serialized) {
  if (serialized.substr(0, 2) == "//") {
    const auto nl = serialized.find('\n');
    return nl == std::string_view::npos ? std::string() : std::string(serialized.substr(nl + 1));
  }
  return std::string(serialized);
}

Snapshot deserialize(std::string_view text) {
  Snapshot s;
  if (text.substr(0, kHeaderPrefix.size()) == kHeaderPrefix) {
    const auto nl = text.find('\n');
    const auto header = text.substr(0, nl);
    constexpr std::string_view kCreated = " created ";
    if (header.size() > kHeaderPrefix.size() + kCreated.size() &&
        header.substr(kHeaderPrefix.size(), kCreated.size()) == kCreated)
      s.created = std::string(header.substr(kHeaderPrefix.size() + kCreated.size()));
  }

  json j;
  try {
    j = json::parse(canonical_body(text));
  } catch (const json::parse_error &e) {
    throw FormatError(std::string("malformed snapshot: ") + e.what());
  }
  if (!j.is_object()) malformed("<root>", "is not an object");

  const json &version = member(j, "format_version", "");
  if (!version.is_number_integer()) malformed("format_version", "is not an integer");
  s.format_version = version.get<int>();
  if (s.format_version != Snapshot::kFormatVersion)
    throw VersionMismatchError("unsupported snapshot format_version " +
                               std::to_string(s.format_version) + " (expected " +
                               std::to_string(Snapshot::kFormatVersion) + ")");

  const json &algo = member(j, "hash_algorithm", "");
  if (!algo.is_string()) malformed("hash_algorithm", "is not a string");
  s.hash_algorithm = algo.get<std::string>();
  if (s.hash_algorithm != kHashAlgorithm)
    throw HashAlgorithmMismatchError("snapshot uses hash algorithm '" + s.hash_algorithm +
                                     "', this build uses '" + std::string(kHashAlgorithm) + "'");

  const json &packages = member(j, "packages", "");
  if (!packages.is_object()) malformed("packages", "is not an object");
  for (const auto &[key, value] : packages.items()) {
    PackageModel pm = package_from_json(value, "packages." + key);
    if (pm.name != key) malformed("packages." + key + ".name", "does not match its key");
    s.packages.emplace(key, std::move(pm));
  }
  return s;
}

void save(const Snapshot &s, const std::filesystem::path &path) {
  namespace fs = std::filesystem;
  const std::string text = serialize(s);
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::random_device rd;
  const fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot write " + path.string() + ": " + ec.message());
  }
}

Snapshot load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

std::string snapshot_id(const Snapshot &s) {
  return content_hash(body_json(s).dump(2)).substr(0, 16);
}

} // namespace adaimpact
