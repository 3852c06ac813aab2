#pragma once

// JSON and DOT serialization for the CLI.
//
// Simplices are written with global ids numbered level by level, so the
// k-simplex s gets id offset(k) + s.

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qucat/decompose.hpp"
#include "qucat/error.hpp"
#include "qucat/homology.hpp"
#include "qucat/kanext.hpp"
#include "qucat/lifting.hpp"
#include "qucat/marked.hpp"
#include "qucat/nucat.hpp"
#include "qucat/ordinal.hpp"
#include "qucat/sset.hpp"

namespace qucat::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::size_t> offsets(const SSet& x) {
  std::vector<std::size_t> off(x.truncation() + 2, 0);
  for (std::size_t k = 0; k <= x.truncation(); ++k) off[k + 1] = off[k] + x.level_size(k);
  return off;
}

inline const Json& field(const Json& j, const char* name, const std::string& what) {
  if (!j.is_object() || !j.contains(name)) throw InvalidInput(what + ": missing field \"" + name + "\"");
  return j.at(name);
}

inline std::size_t as_index(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InvalidInput(what + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

template <typename F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidInput(what + ": " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const OrdinalMap& f) { return Json{{"n", f.codomain_size()}, {"values", f.values()}}; }

inline OrdinalMap ordinal_from_json(const Json& j) {
  return detail::guarded("ordinal map", [&] {
    return OrdinalMap(detail::as_index(detail::field(j, "n", "ordinal map"), "ordinal map"),
                      detail::field(j, "values", "ordinal map").get<std::vector<std::size_t>>());
  });
}

inline Json to_json(const SSet& x) {
  auto off = detail::offsets(x);
  Json levels = Json::array(), faces = Json::object(), labels = Json::object();
  for (std::size_t k = 0; k <= x.truncation(); ++k) {
    Json ids = Json::array();
    for (std::size_t s = 0; s < x.level_size(k); ++s) {
      ids.push_back(off[k] + s);
      if (k == 0) {
        labels[std::to_string(s)] = x.label(s);
        continue;
      }
      Json fs = Json::array();
      for (auto f : x.faces(k, s)) fs.push_back(off[k - 1] + f);
      faces[std::to_string(off[k] + s)] = std::move(fs);
    }
    levels.push_back(std::move(ids));
  }
  return Json{{"truncation", x.truncation()}, {"finite", x.finite()}, {"levels", levels}, {"faces", faces},
              {"labels", labels}};
}

/// Parses SSet JSON. Ids may be arbitrary non-negative integers; each level
/// keeps the order in which its ids are listed.
inline SSet sset_from_json(const Json& j) {
  return detail::guarded("sset", [&] {
    const std::size_t top = detail::as_index(detail::field(j, "truncation", "sset"), "sset truncation");
    const bool finite = j.contains("finite") ? j.at("finite").get<bool>() : true;
    const auto& levels = detail::field(j, "levels", "sset");
    require(levels.is_array() && levels.size() <= top + 1, "sset: \"levels\" must list at most truncation+1 levels");
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> where;  // id -> (k, s)
    for (std::size_t k = 0; k < levels.size(); ++k)
      for (std::size_t s = 0; s < levels[k].size(); ++s) {
        auto id = detail::as_index(levels[k][s], "sset id");
        require(where.emplace(id, std::pair{k, s}).second, "sset: id " + std::to_string(id) + " listed twice");
      }
    std::vector<SSet::Level> lv(top + 1);
    for (std::size_t k = 0; k < levels.size(); ++k) lv[k].resize(levels[k].size());
    const Json empty = Json::object();
    const auto& faces = j.contains("faces") ? j.at("faces") : empty;
    for (const auto& [id, ks] : where) {
      auto [k, s] = ks;
      if (k == 0) continue;
      const std::string key = std::to_string(id);
      require(faces.contains(key), "sset: no faces for simplex " + key);
      const auto& fs = faces.at(key);
      require(fs.is_array() && fs.size() == k + 1, "sset: simplex " + key + " needs " + std::to_string(k + 1) + " faces");
      for (const auto& f : fs) {
        auto it = where.find(detail::as_index(f, "sset face"));
        require(it != where.end() && it->second.first == k - 1,
                "sset: face of simplex " + key + " is not a simplex one level down");
        lv[k][s].push_back(it->second.second);
      }
    }
    std::vector<Label> labels;
    if (j.contains("labels")) {
      const auto& ls = j.at("labels");
      for (std::size_t s = 0; s < lv[0].size(); ++s) {
        const std::string key = std::to_string(levels[0][s].get<std::size_t>());
        require(ls.contains(key), "sset: missing label for vertex " + key);
        labels.push_back(ls.at(key).get<Label>());
      }
    }
    return SSet(top, finite, std::move(lv), std::move(labels));
  });
}

inline Json to_json(const MarkedSSet& w) {
  Json j = to_json(w.underlying());
  auto off = detail::offsets(w.underlying());
  Json m = Json::array();
  for (auto e : w.marked_edges()) m.push_back(off[1] + e);
  j["marking"] = std::move(m);
  return j;
}

inline MarkedSSet marked_from_json(const Json& j) {
  SSet x = sset_from_json(j);
  if (!j.contains("marking")) return flat(x);
  return detail::guarded("marking", [&] {
    require(x.truncation() >= 1, "marking: the object has no edges");
    std::map<std::size_t, std::size_t> edge_of;
    const auto& levels = j.at("levels");
    if (levels.size() > 1)
      for (std::size_t s = 0; s < levels[1].size(); ++s) edge_of[levels[1][s].get<std::size_t>()] = s;
    std::vector<std::size_t> edges;
    for (const auto& id : j.at("marking")) {
      auto it = edge_of.find(detail::as_index(id, "marking id"));
      require(it != edge_of.end(), "marking: id " + id.dump() + " is not an edge");
      edges.push_back(it->second);
    }
    return MarkedSSet::from_edges(x, edges);
  });
}

/// 1-skeleton: vertices, and an arrow d1 -> d0 per edge. Marked edges are bold.
inline std::string to_dot(const MarkedSSet& w) {
  const SSet& x = w.underlying();
  auto label = [&](std::size_t v) {
    std::string s;
    for (std::size_t i = 0; i < x.label(v).size(); ++i) s += (i ? "," : "") + std::to_string(x.label(v)[i]);
    return s;
  };
  std::ostringstream o;
  o << "digraph sset {\n";
  for (std::size_t v = 0; v < x.level_size(0); ++v) o << "  v" << v << " [label=\"" << label(v) << "\"];\n";
  if (x.truncation() >= 1)
    for (std::size_t e = 0; e < x.level_size(1); ++e) {
      o << "  v" << x.face(1, e, 1) << " -> v" << x.face(1, e, 0);
      if (w.is_marked(e)) o << " [style=bold]";
      o << ";\n";
    }
  o << "}\n";
  return o.str();
}

inline Json to_json(const SimplexKey& key) { return Json(key); }

inline Json to_json(const PushoutCertificate& c) {
  Json steps = Json::array();
  for (const auto& st : c.steps) {
    if (const auto* h = std::get_if<HornStep>(&st))
      steps.push_back(Json{{"kind", "horn"}, {"simplex", to_json(h->simplex)}, {"v", h->v}});
    else
      steps.push_back(Json{{"kind", "remark"}, {"triangle", to_json(std::get<RemarkStep>(st).triangle)}});
  }
  return Json{{"start", to_json(c.start)}, {"target", to_json(c.target)}, {"steps", steps}};
}

inline PushoutCertificate certificate_from_json(const Json& j) {
  PushoutCertificate c;
  c.start = marked_from_json(detail::field(j, "start", "certificate"));
  c.target = marked_from_json(detail::field(j, "target", "certificate"));
  detail::guarded("certificate", [&] {
    for (const auto& st : detail::field(j, "steps", "certificate")) {
      const auto kind = detail::field(st, "kind", "certificate step").get<std::string>();
      if (kind == "horn") {
        c.steps.push_back(HornStep{detail::field(st, "simplex", "horn step").get<SimplexKey>(),
                                   detail::as_index(detail::field(st, "v", "horn step"), "horn step v")});
      } else if (kind == "remark") {
        c.steps.push_back(RemarkStep{detail::field(st, "triangle", "remark step").get<SimplexKey>()});
      } else {
        throw InvalidInput("certificate: unknown step kind \"" + kind + "\"");
      }
    }
    return 0;
  });
  return c;
}

inline Json to_json(const VerifyReport& r) {
  Json horns = Json::array();
  for (const auto& h : r.horns)
    horns.push_back(Json{{"step", h.step}, {"k", h.k}, {"v", h.v}, {"marking", h.marking}, {"admissible", h.admissible}});
  Json j{{"ok", r.ok}};
  if (r.failing_step) j["failing_step"] = *r.failing_step;
  if (!r.clause.empty()) j["clause"] = r.clause;
  j["horns"] = std::move(horns);
  return j;
}

inline Json to_json(const NuCat& c) {
  Json homs = Json::object(), comp = Json::object();
  const auto& obj = c.objects();
  for (std::size_t x = 0; x < c.object_count(); ++x)
    for (std::size_t y = 0; y < c.object_count(); ++y) {
      Json names = Json::array();
      for (auto m : c.hom(x, y)) names.push_back(c.morphism(m).name);
      if (!names.empty()) homs[obj[x] + "," + obj[y]] = std::move(names);
    }
  for (std::size_t g = 0; g < c.morphism_count(); ++g)
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f))
        comp[c.morphism(g).name + "," + c.morphism(f).name] = c.morphism(c.compose(g, f)).name;
  return Json{{"objects", obj}, {"homs", homs}, {"comp", comp}};
}

/// Morphisms are numbered by hom-set in object order, then in listed order.
inline NuCat nucat_from_json(const Json& j) {
  return detail::guarded("category", [&] {
    auto objects = detail::field(j, "objects", "category").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> obj;
    for (std::size_t i = 0; i < objects.size(); ++i)
      require(obj.emplace(objects[i], i).second, "category: object \"" + objects[i] + "\" listed twice");
    const auto& homs = detail::field(j, "homs", "category");
    std::vector<Morphism> ms;
    std::map<std::string, std::size_t> by_name;
    for (const auto& [key, names] : homs.items()) {
      auto comma = key.find(',');
      require(comma != std::string::npos, "category: hom key \"" + key + "\" is not \"x,y\"");
      auto x = obj.find(key.substr(0, comma)), y = obj.find(key.substr(comma + 1));
      require(x != obj.end() && y != obj.end(), "category: hom key \"" + key + "\" names an unknown object");
    }
    for (std::size_t x = 0; x < objects.size(); ++x)
      for (std::size_t y = 0; y < objects.size(); ++y) {
        const std::string key = objects[x] + "," + objects[y];
        if (!homs.contains(key)) continue;
        for (const auto& n : homs.at(key)) {
          auto name = n.get<std::string>();
          require(by_name.emplace(name, ms.size()).second, "category: morphism \"" + name + "\" listed twice");
          ms.push_back({name, x, y});
        }
      }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
    auto lookup = [&](const std::string& name) {
      auto it = by_name.find(name);
      require(it != by_name.end(), "category: unknown morphism \"" + name + "\"");
      return it->second;
    };
    for (const auto& [key, h] : detail::field(j, "comp", "category").items()) {
      auto comma = key.find(',');
      require(comma != std::string::npos, "category: composite key \"" + key + "\" is not \"g,f\"");
      comp[{lookup(key.substr(0, comma)), lookup(key.substr(comma + 1))}] = lookup(h.get<std::string>());
    }
    return NuCat(std::move(objects), std::move(ms), comp);
  });
}

inline Json to_json(const AssociativityViolation& v, const NuCat& c) {
  return Json{{"h", c.morphism(v.h).name}, {"g", c.morphism(v.g).name}, {"f", c.morphism(v.f).name},
              {"lhs", c.morphism(c.compose(c.compose(v.h, v.g), v.f)).name},
              {"rhs", c.morphism(c.compose(v.h, c.compose(v.g, v.f))).name}};
}

inline Json big_to_json(const BigInt& b) {
  if (b <= BigInt(std::numeric_limits<long long>::max()) && b >= BigInt(std::numeric_limits<long long>::min()))
    return Json(static_cast<long long>(b));
  return Json(b.str());
}

inline Json to_json(const HomologyProfile& p) {
  Json out = Json::array();
  for (const auto& g : p) {
    Json t = Json::array();
    for (const auto& d : g.torsion) t.push_back(big_to_json(d));
    out.push_back(Json{{"k", g.k}, {"betti", g.betti}, {"torsion", t}});
  }
  return out;
}

/// A level function written as {source id: target id}.
inline Json levels_to_json(const SSetMap::Levels& l, const SSet& source, const SSet& target) {
  auto so = detail::offsets(source), to = detail::offsets(target);
  Json out = Json::object();
  for (std::size_t k = 0; k < l.size(); ++k)
    for (std::size_t s = 0; s < l[k].size(); ++s) out[std::to_string(so[k] + s)] = to[k] + l[k][s];
  return out;
}

inline SSetMap::Levels levels_from_json(const Json& j, const SSet& source, const SSet& target) {
  return detail::guarded("map", [&] {
    auto so = detail::offsets(source), to = detail::offsets(target);
    SSetMap::Levels l(source.truncation() + 1);
    for (std::size_t k = 0; k <= source.truncation(); ++k)
      for (std::size_t s = 0; s < source.level_size(k); ++s) {
        const std::string key = std::to_string(so[k] + s);
        require(j.contains(key), "map: no image for simplex " + key);
        auto t = detail::as_index(j.at(key), "map image");
        require(t >= to[k] && t < to[k + 1], "map: image of " + key + " is not on the same level");
        l[k].push_back(t - to[k]);
      }
    return l;
  });
}

inline Json to_json(const MarkedMap& f) {
  return Json{{"source", to_json(f.source())}, {"target", to_json(f.target())},
              {"map", levels_to_json(f.map().levels(), f.source().underlying(), f.target().underlying())}};
}

inline MarkedMap marked_map_from_json(const Json& j) {
  auto s = marked_from_json(detail::field(j, "source", "marked map"));
  auto t = marked_from_json(detail::field(j, "target", "marked map"));
  auto l = levels_from_json(detail::field(j, "map", "marked map"), s.underlying(), t.underlying());
  return MarkedMap(s, t, SSetMap(s.underlying(), t.underlying(), std::move(l)));
}

inline Json to_json(const RlpResult& r, const MarkedMap& p, const MarkedMap& g) {
  Json j{{"holds", r.holds}, {"squares", r.squares}, {"min_lifts", r.min_lifts}, {"unique_lifts", r.unique_lifts}};
  if (r.reported) {
    j[r.holds ? "example_square" : "counterexample"] =
        Json{{"top", levels_to_json(r.reported->top, g.source().underlying(), p.source().underlying())},
             {"bottom", levels_to_json(r.reported->bottom, g.target().underlying(), p.target().underlying())},
             {"lifts", r.reported_lifts}};
  }
  return j;
}

inline Json to_json(const RkLevel& r) {
  Json index = Json::array();
  for (const auto& f : r.index) index.push_back(f.to_string());
  Json j{{"n", r.n}, {"m_max", r.m_max}, {"index", index}, {"families", r.families},
         {"family_count", r.families.size()}, {"stabilized", r.stabilized}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

inline Json to_json(const CounitFailure& c) {
  return Json{{"f", c.f.to_string()}, {"h", c.h.to_string()}, {"reason", c.reason}};
}

inline Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidInput(what + ": malformed JSON (" + e.what() + ")");
  }
}

}  // namespace qucat::io
