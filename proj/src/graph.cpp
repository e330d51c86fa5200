#include "adaimpact/graph.hpp"

#include "adaimpact/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <sstream>

namespace adaimpact {

namespace {
const std::set<std::string> kNoNames;
const EntitySet kNoEntities;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
  });
  return s;
}
} // namespace

std::string to_string(const Entity &e) {
  switch (e.kind) {
  case EntityKind::Spec:
    return "Spec " + e.name;
  case EntityKind::Body:
    return "Body " + e.name;
  case EntityKind::Subprogram:
    break;
  }
  return e.name;
}

// --- StaticRelations ------------------------------------------------------

void StaticRelations::add_package(const std::string &package) {
  packages_.insert(package);
  contains_[package];
  uses_[{package, Side::Body}];
  uses_[{package, Side::Spec}];
}

void StaticRelations::add_subprogram(const std::string &package, const std::string &qualified) {
  add_package(package);
  contains_[package].insert(qualified);
  contained_by_[qualified] = package;
}

void StaticRelations::add_use(const std::string &package, Side side, const std::string &used) {
  add_package(package);
  if (used == package) return;
  uses_[{package, side}].insert(used);
  used_by_[{used, side}].insert(package);
}

std::set<std::string> StaticRelations::external_packages() const {
  std::set<std::string> out;
  for (const auto &[key, targets] : uses_)
    for (const auto &t : targets)
      if (!packages_.count(t)) out.insert(t);
  return out;
}

const std::set<std::string> &StaticRelations::contains(const std::string &package) const {
  auto it = contains_.find(package);
  return it == contains_.end() ? kNoNames : it->second;
}

const std::set<std::string> &StaticRelations::uses(const std::string &package, Side side) const {
  auto it = uses_.find({package, side});
  return it == uses_.end() ? kNoNames : it->second;
}

std::string StaticRelations::contained_by(const std::string &qualified) const {
  auto it = contained_by_.find(qualified);
  return it == contained_by_.end() ? std::string() : it->second;
}

const std::set<std::string> &StaticRelations::used_by(const std::string &package, Side side) const {
  auto it = used_by_.find({package, side});
  return it == used_by_.end() ? kNoNames : it->second;
}

// --- ImpactRelation -------------------------------------------------------

void ImpactRelation::add_entity(const Entity &e) { edges_[e]; }

void ImpactRelation::add_edge(const Entity &from, const Entity &to) {
  edges_[from].insert(to);
  edges_[to];
}

const EntitySet &ImpactRelation::successors(const Entity &e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? kNoEntities : it->second;
}

void ImpactRelation::merge(const ImpactRelation &other) {
  for (const auto &[from, tos] : other.edges_) {
    auto &mine = edges_[from];
    mine.insert(tos.begin(), tos.end());
  }
}

const std::set<std::string> &CoverageMap::covered_by(const std::string &test) const {
  auto it = covers.find(test);
  return it == covers.end() ? kNoNames : it->second;
}

// --- construction ---------------------------------------------------------

StaticRelations build_static(const Snapshot &s) {
  StaticRelations r;
  for (const auto &[name, pm] : s.packages) {
    r.add_package(name);
    for (const auto &sub : pm.subprograms)
      r.add_subprogram(name, sub.qualified_name);
    for (const auto &w : pm.spec_withs)
      r.add_use(name, Side::Spec, w);
    for (const auto &w : pm.body_withs)
      r.add_use(name, Side::Body, w);
  }
  return r;
}

namespace {

// Finds a cycle in the spec-level with graph, returned in with order
// (each package withs the next, the last withs the first).
std::vector<std::string> find_spec_cycle(const StaticRelations &r) {
  std::set<std::string> nodes = r.packages();
  for (const auto &e : r.external_packages())
    nodes.insert(e);

  enum class Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::vector<std::string> path;

  std::function<std::vector<std::string>(const std::string &)> visit =
      [&](const std::string &n) -> std::vector<std::string> {
    color[n] = Color::Grey;
    path.push_back(n);
    for (const auto &m : r.uses(n, Side::Spec)) {
      if (color[m] == Color::Grey) {
        auto start = std::find(path.begin(), path.end(), m);
        return {start, path.end()};
      }
      if (color[m] == Color::White) {
        auto cycle = visit(m);
        if (!cycle.empty()) return cycle;
      }
    }
    path.pop_back();
    color[n] = Color::Black;
    return {};
  };

  for (const auto &n : nodes) {
    if (color[n] != Color::White) continue;
    auto cycle = visit(n);
    if (!cycle.empty()) return cycle;
  }
  return {};
}

} // namespace

ImpactRelation impact_relation(const StaticRelations &r) {
  if (auto cycle = find_spec_cycle(r); !cycle.empty()) throw CycleError(std::move(cycle));

  ImpactRelation impact;
  for (const auto &p : r.packages()) {
    impact.add_edge(Entity::spec(p), Entity::body(p));
    for (const auto &s : r.contains(p))
      impact.add_edge(Entity::body(p), Entity::subprogram(s));
  }
  for (const auto &[key, used] : r.uses_map()) {
    const auto &[q, side] = key;
    const Entity dependent = side == Side::Body ? Entity::body(q) : Entity::spec(q);
    for (const auto &p : used)
      impact.add_edge(Entity::spec(p), dependent);
  }
  return impact;
}

// --- coverage -------------------------------------------------------------

CoverageMap parse_coverage(std::string_view text) {
  using ordered = nlohmann::ordered_json;
  std::string top_key;
  std::set<std::string> seen;
  std::string duplicate;
  auto callback = [&](int depth, ordered::parse_event_t event, ordered &parsed) {
    if (event == ordered::parse_event_t::key) {
      const auto key = parsed.get<std::string>();
      if (depth == 1) {
        top_key = key;
      } else if (depth == 2 && top_key == "tests") {
        if (!seen.insert(key).second && duplicate.empty()) duplicate = key;
      }
    }
    return true;
  };

  ordered j;
  try {
    j = ordered::parse(text, callback);
  } catch (const ordered::parse_error &e) {
    throw FormatError(std::string("malformed coverage file: ") + e.what());
  }
  if (!duplicate.empty()) throw FormatError("malformed coverage file: duplicate test id '" + duplicate + "'");
  if (!j.is_object()) throw FormatError("malformed coverage file: root is not an object");
  auto tests = j.find("tests");
  if (tests == j.end()) throw FormatError("malformed coverage file: field 'tests' is missing");
  if (!tests->is_object()) throw FormatError("malformed coverage file: field 'tests' is not an object");

  CoverageMap c;
  for (const auto &[id, subs] : tests->items()) {
    if (!subs.is_array())
      throw FormatError("malformed coverage file: field 'tests." + id + "' is not an array");
    auto &set = c.covers[id];
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i].is_string())
        throw FormatError("malformed coverage file: field 'tests." + id + "[" + std::to_string(i) +
                          "]' is not a string");
      set.insert(lower(subs[i].get<std::string>()));
    }
    c.baseline.push_back(id);
  }
  return c;
}

CoverageMap load_coverage(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_coverage(buf.str());
}

std::string coverage_to_json(const CoverageMap &c) {
  nlohmann::ordered_json tests = nlohmann::ordered_json::object();
  for (const auto &t : c.baseline)
    tests[t] = c.covered_by(t);
  nlohmann::ordered_json j;
  j["tests"] = std::move(tests);
  return j.dump(2) + "\n";
}

std::set<std::string> unknown_coverage_names(const CoverageMap &c,
                                             const std::vector<const Snapshot *> &known) {
  std::set<std::string> defined;
  for (const Snapshot *s : known)
    for (const auto &[name, pm] : s->packages)
      for (const auto &sub : pm.subprograms)
        defined.insert(sub.qualified_name);
  std::set<std::string> out;
  for (const auto &[test, subs] : c.covers)
    for (const auto &s : subs)
      if (!defined.count(s)) out.insert(s);
  return out;
}

// --- DOT ------------------------------------------------------------------

namespace {

std::string dot_quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string node_id(const Entity &e) {
  std::string prefix;
  switch (e.kind) {
  case EntityKind::Spec: prefix = "spec_"; break;
  case EntityKind::Body: prefix = "body_"; break;
  case EntityKind::Subprogram: prefix = "sub_"; break;
  }
  std::string id = prefix;
  bool plain = true;
  for (char c : e.name) {
    if (c == '.') {
      id += "__";
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      id.push_back(c);
    } else {
      plain = false;
      break;
    }
  }
  return plain ? id : dot_quote(prefix + e.name);
}

EntitySet reachable_from(const ImpactRelation &r, const Entity &start) {
  EntitySet seen{start};
  std::deque<Entity> work{start};
  while (!work.empty()) {
    Entity e = work.front();
    work.pop_front();
    for (const auto &s : r.successors(e))
      if (seen.insert(s).second) work.push_back(s);
  }
  return seen;
}

} // namespace

std::string export_dot(const ImpactRelation &r, const CoverageMap &c) {
  std::ostringstream out;
  out << "digraph impact {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  for (const auto &[e, succ] : r.edges()) {
    out << "  " << node_id(e) << " [label=" << dot_quote(to_string(e));
    if (e.kind == EntityKind::Subprogram) out << ", shape=ellipse";
    out << "];\n";
  }
  // Edges point from the dependent to what it depends on.
  std::set<std::pair<Entity, Entity>> static_edges;
  for (const auto &[from, succ] : r.edges())
    for (const auto &to : succ)
      static_edges.emplace(to, from);
  for (const auto &[dependent, dependency] : static_edges)
    out << "  " << node_id(dependent) << " -> " << node_id(dependency) << ";\n";

  // u -> v when a test covers both and u statically depends on v's spec.
  std::map<std::string, EntitySet> reach_cache;
  std::set<std::pair<std::string, std::string>> coupling;
  for (const auto &test : c.baseline) {
    const auto &subs = c.covered_by(test);
    for (const auto &u : subs) {
      if (!r.contains(Entity::subprogram(u))) continue;
      for (const auto &v : subs) {
        const auto pv = package_of(v);
        if (u == v || pv == package_of(u) || !r.contains(Entity::subprogram(v))) continue;
        auto it = reach_cache.find(pv);
        if (it == reach_cache.end())
          it = reach_cache.emplace(pv, reachable_from(r, Entity::spec(pv))).first;
        if (it->second.count(Entity::subprogram(u))) coupling.emplace(u, v);
      }
    }
  }
  for (const auto &[u, v] : coupling)
    out << "  " << node_id(Entity::subprogram(u)) << " -> " << node_id(Entity::subprogram(v))
        << " [style=dashed];\n";
  out << "}\n";
  return out.str();
}

} // namespace adaimpact
