#pragma once

// JSON forms of categories, topologies, presheaves and presentations.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "fieldtopos/category.hpp"
#include "fieldtopos/charpres.hpp"
#include "fieldtopos/error.hpp"
#include "fieldtopos/site.hpp"

namespace fieldtopos::io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

namespace detail {

inline std::string as_name(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw Error(ErrorKind::ParseError, "expected a name, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline CategoryDescription category_description_from_json(const json& j) {
  CategoryDescription d;
  try {
    for (const auto& o : detail::field(j, "objects")) d.objects.push_back(detail::as_name(o));
    for (const auto& m : detail::field(j, "morphisms"))
      d.morphisms.push_back({detail::as_name(detail::field(m, "id")), detail::as_name(detail::field(m, "src")),
                             detail::as_name(detail::field(m, "dst"))});
    if (j.contains("compose"))
      for (const auto& c : j.at("compose")) {
        if (!c.is_array() || c.size() != 3) throw Error(ErrorKind::ParseError, "compose entries are [g, f, gf]");
        d.compose.push_back({detail::as_name(c[0]), detail::as_name(c[1]), detail::as_name(c[2])});
      }
    for (const auto& [obj, id] : detail::field(j, "identities").items()) d.identities[obj] = detail::as_name(id);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return d;
}

inline FinCategory category_from_json(const json& j) { return validate_category(category_description_from_json(j)); }

inline json to_json(const CategoryDescription& d) {
  json j;
  j["objects"] = d.objects;
  j["morphisms"] = json::array();
  for (const auto& m : d.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  j["compose"] = json::array();
  for (const auto& c : d.compose) j["compose"].push_back({c[0], c[1], c[2]});
  j["identities"] = d.identities;
  return j;
}

inline json to_json(const FinCategory& C) { return to_json(C.describe()); }

/// Generators per object, `{"covers": {object: [[ids], ...]}}`.
inline Precoverage precoverage_from_json(const Site& site, const json& j) {
  const auto& C = site.category();
  Precoverage pre(site.object_count());
  const json& covers = detail::field(j, "covers");
  if (!covers.is_object()) throw Error(ErrorKind::ParseError, "covers must be an object");
  for (const auto& [name, list] : covers.items()) {
    auto d = C.find_object(name);
    if (!d) throw Error(ErrorKind::UnknownObject, "unknown object " + name);
    for (const auto& gens : list) {
      std::vector<int> ids;
      for (const auto& id : gens) {
        auto f = C.find_morphism(detail::as_name(id));
        if (!f) throw Error(ErrorKind::DanglingMorphism, "unknown morphism " + detail::as_name(id));
        ids.push_back(*f);
      }
      pre[*d].push_back(site.generate(*d, ids));
    }
  }
  return pre;
}

inline Topology topology_from_json(const SitePtr& site, const json& j) {
  return saturate_topology(site, precoverage_from_json(*site, j));
}

/// Minimal covers with explicit members; re-saturating gives the topology back.
inline json to_json(const Topology& J) {
  const Site& site = *J.site();
  json covers = json::object();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    json list = json::array();
    for (int s : J.minimal_covers(d)) {
      json ids = json::array();
      for (int f : site.members(d, s)) ids.push_back(site.category().morphism_id(f));
      list.push_back(ids);
    }
    covers[site.category().object_name(d)] = list;
  }
  return json{{"covers", covers}};
}

inline json sieve_to_json(const Site& site, int d, int s) {
  json ids = json::array();
  for (int f : site.members(d, s)) ids.push_back(site.category().morphism_id(f));
  return ids;
}

/// `{"sets": {object: [...]}, "actions": {morphism: {elem: elem}}}`.
inline Presheaf presheaf_from_json(const FinCategory& C, const json& j) {
  Presheaf P;
  P.sets.resize(C.object_count());
  P.action.resize(C.morphism_count());
  const json& sets = detail::field(j, "sets");
  for (const auto& [name, elems] : sets.items()) {
    auto d = C.find_object(name);
    if (!d) throw Error(ErrorKind::InvalidPresheaf, "unknown object " + name);
    for (const auto& e : elems) P.sets[*d].push_back(detail::as_name(e));
  }
  auto position = [&](int d, const std::string& e) {
    const auto& s = P.sets[d];
    auto it = std::find(s.begin(), s.end(), e);
    if (it == s.end()) throw Error(ErrorKind::InvalidPresheaf, "element " + e + " not in " + C.object_name(d));
    return static_cast<int>(it - s.begin());
  };
  const json actions = j.contains("actions") ? j.at("actions") : json::object();
  for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f) {
    const int from = C.dst(f), to = C.src(f);
    auto& a = P.action[f];
    a.assign(P.sets[from].size(), -1);
    const std::string& id = C.morphism_id(f);
    if (!actions.contains(id)) {
      if (!C.is_identity(f)) throw Error(ErrorKind::InvalidPresheaf, "no action for " + id);
      for (std::size_t x = 0; x < a.size(); ++x) a[x] = static_cast<int>(x);
      continue;
    }
    for (const auto& [x, y] : actions.at(id).items()) a[position(from, x)] = position(to, detail::as_name(y));
    if (std::find(a.begin(), a.end(), -1) != a.end())
      throw Error(ErrorKind::InvalidPresheaf, "action of " + id + " is not total");
  }
  for (const auto& [id, _] : actions.items())
    if (!C.find_morphism(id)) throw Error(ErrorKind::InvalidPresheaf, "action for unknown morphism " + id);
  validate_presheaf(C, P);
  return P;
}

inline json to_json(const FinCategory& C, const Presheaf& P) {
  json sets = json::object(), actions = json::object();
  for (std::size_t d = 0; d < C.object_count(); ++d) sets[C.object_name(static_cast<int>(d))] = P.sets[d];
  for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f) {
    json a = json::object();
    for (std::size_t x = 0; x < P.action[f].size(); ++x) a[P.sets[C.dst(f)][x]] = P.sets[C.src(f)][P.action[f][x]];
    actions[C.morphism_id(f)] = a;
  }
  return json{{"sets", sets}, {"actions", actions}};
}

inline Presentation presentation_from_json(const json& j) {
  Presentation p;
  try {
    if (j.contains("modulus_n")) p.modulus_n = j.at("modulus_n").get<std::int64_t>();
    if (p.modulus_n < 0) throw Error(ErrorKind::ParseError, "modulus_n must be nonnegative");
    auto polys = [&](const char* key, std::vector<Poly>& out) {
      if (!j.contains(key)) return;
      for (const auto& s : j.at(key)) {
        Poly f = parse_poly(s.get<std::string>());
        if (f.modulus() != 0) throw Error(ErrorKind::ParseError, "presentation polynomials are integral");
        out.push_back(f);
      }
    };
    polys("relations", p.relations);
    polys("invert_polys", p.invert_polys);
    if (j.contains("invert_primes"))
      for (const auto& q : j.at("invert_primes")) {
        auto v = q.get<std::int64_t>();
        if (v < 2 || !is_prime(static_cast<std::uint64_t>(v)))
          throw Error(ErrorKind::InvalidModulus, std::to_string(v) + " is not prime");
        p.invert_primes.insert(static_cast<std::uint64_t>(v));
      }
    for (const auto& [key, _] : j.items())
      if (key != "modulus_n" && key != "relations" && key != "invert_polys" && key != "invert_primes")
        throw Error(ErrorKind::ParseError, "unknown field '" + key + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return p;
}

inline json to_json(const Presentation& p) {
  json j;
  j["modulus_n"] = p.modulus_n;
  j["relations"] = json::array();
  for (const auto& g : p.relations) j["relations"].push_back(to_string(g));
  j["invert_polys"] = json::array();
  for (const auto& u : p.invert_polys) j["invert_polys"].push_back(to_string(u));
  j["invert_primes"] = p.invert_primes;
  return j;
}

}  // namespace fieldtopos::io
