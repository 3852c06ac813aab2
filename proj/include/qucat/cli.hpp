#pragma once

// The `qucat` command line. Every result is one JSON document per line;
// --format pretty indents it, --format dot draws objects as graphs.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage, input or
// resource errors. Every nonzero exit is preceded by a JSON report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qucat/decompose.hpp"
#include "qucat/error.hpp"
#include "qucat/homology.hpp"
#include "qucat/io.hpp"
#include "qucat/kanext.hpp"
#include "qucat/lifting.hpp"
#include "qucat/marked.hpp"
#include "qucat/nucat.hpp"
#include "qucat/sset.hpp"
#include "qucat/suite.hpp"

namespace qucat::cli {

using io::Json;

namespace detail {

/// Signals a completed command with a nonzero exit after its report was written.
struct Exit {
  int code;
};

class Session {
 public:
  Session(std::ostream& out, std::istream& in) : out_(out), in_(in) {}

  std::string format = "json";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget_nodes;

  Budget budget() const {
    Budget b;
    if (budget_nodes) b.max_nodes = *budget_nodes;
    return b;
  }

  void emit(const Json& j) {
    if (format == "dot") throw InvalidInput("--format dot applies to objects only");
    out_ << (format == "pretty" ? j.dump(2) : j.dump()) << "\n";
  }

  void emit_object(const MarkedSSet& w) {
    if (format == "dot")
      out_ << io::to_dot(w);
    else
      emit(io::to_json(w));
  }

  Json read(const std::string& path) {
    std::string text;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(path);
      if (!f) throw InvalidInput("cannot open " + path);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    return io::parse(text, path == "-" ? "stdin" : path);
  }

  void fail(int code, const Json& report) {
    emit(report);
    throw Exit{code};
  }

  std::ostream& out() { return out_; }

 private:
  std::ostream& out_;
  std::istream& in_;
};

inline SSet build_shape(const std::string& shape, const std::vector<std::size_t>& a, std::optional<std::size_t> trunc) {
  auto need = [&](std::size_t n) {
    if (a.size() != n)
      throw InvalidInput("build " + shape + " takes " + std::to_string(n) + " argument(s), got " + std::to_string(a.size()));
  };
  if (shape == "standard") return need(1), standard(a[0], trunc);
  if (shape == "boundary") return need(1), boundary(a[0], trunc);
  if (shape == "horn") return need(2), horn(a[0], a[1], trunc);
  if (shape == "spine") return need(1), spine(a[0], trunc);
  if (shape == "coskeleton") return need(2), coskeleton0(a[0], a[1]);
  if (shape == "subsimplex") {
    if (a.size() < 2) throw InvalidInput("build subsimplex takes n followed by the vertices");
    return sub_simplex(a[0], std::vector<std::size_t>(a.begin() + 1, a.end()), trunc);
  }
  throw InvalidInput("unknown shape \"" + shape + "\"; expected standard, boundary, horn, spine, coskeleton or subsimplex");
}

inline MarkingRule marking_rule(const std::string& s) {
  if (s == "none") return MarkingRule::none;
  if (s == "invertibles") return MarkingRule::invertibles;
  if (s == "quasi-units") return MarkingRule::quasi_units;
  if (s == "all") return MarkingRule::all;
  throw InvalidInput("unknown marking \"" + s + "\"; expected none, invertibles, quasi-units or all");
}

inline Json rlp_report(const RlpQuasiUnitalReport& r) {
  Json g = Json::object();
  for (const auto& [name, res] : r.generators)
    g[name] = Json{{"holds", res.holds}, {"squares", res.squares}, {"min_lifts", res.min_lifts}};
  return Json{{"quasi_unital", r.quasi_unital()}, {"generators", g}};
}

inline Json category_report(const NuCat& c) {
  auto v = c.associativity_violations();
  Json j{{"associative", v.empty()}};
  if (!v.empty()) {
    Json list = Json::array();
    for (std::size_t i = 0; i < v.size() && i < 10; ++i) list.push_back(io::to_json(v[i], c));
    j["violations"] = list;
    j["violation_count"] = v.size();
    return j;
  }
  auto names = [&c](const std::vector<std::size_t>& ms) {
    Json out = Json::array();
    for (auto m : ms) out.push_back(c.morphism(m).name);
    return out;
  };
  j["invertibles"] = names(invertibles(c));
  j["quasi_units"] = names(quasi_units(c));
  j["quasi_unital"] = is_quasi_unital(c);
  j["gaunt"] = is_gaunt(c);
  Json mismatch = Json::array();
  for (const auto& m : check_l_qu_inv(c)) mismatch.push_back(c.objects()[m.object]);
  Json several = Json::array();
  for (auto x : check_qu_connected(c)) several.push_back(c.objects()[x]);
  j["qu_inv_mismatch"] = mismatch;
  j["several_quasi_units"] = several;
  return j;
}

}  // namespace detail

/// Runs one command line. Output goes to `out`, "-" file arguments read `in`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::istream& in) {
  detail::Session s(out, in);
  CLI::App app{"Finite non-unital categories, semi-simplicial sets and their marked combinatorics", "qucat"};
  app.require_subcommand(1);
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "pretty", "dot"}));
  app.add_option("--seed", s.seed, "Seed for sampled inputs");
  app.add_option("--budget", s.budget_nodes, "Search budget in nodes (default: QUCAT_BUDGET or 50000000)")
      ->check(CLI::PositiveNumber);

  // build
  auto* build = app.add_subcommand("build", "Construct a standard object");
  std::string shape;
  std::vector<std::size_t> shape_args;
  std::optional<std::size_t> trunc;
  bool as_flat = false, as_sharp = false;
  build->add_option("shape", shape, "standard, boundary, horn, spine, coskeleton, subsimplex")->required();
  build->add_option("args", shape_args, "Dimensions and vertices");
  build->add_option("--truncation", trunc, "Truncation of the result");
  auto* flat_flag = build->add_flag("--flat", as_flat, "No marked edges (default)");
  build->add_flag("--sharp", as_sharp, "Every edge marked")->excludes(flat_flag);
  build->callback([&] {
    SSet x = detail::build_shape(shape, shape_args, trunc);
    s.emit_object(as_sharp ? sharp(x) : flat(x));
  });

  // tensor
  auto* tens = app.add_subcommand("tensor", "Marked tensor product of two objects");
  std::string left_file, right_file;
  tens->add_option("left", left_file, "Marked object JSON, or - for stdin")->required();
  tens->add_option("right", right_file, "Marked object JSON, or - for stdin")->required();
  tens->callback([&] {
    if (left_file == "-" && right_file == "-") throw InvalidInput("only one operand can come from stdin");
    s.emit_object(tensor(io::marked_from_json(s.read(left_file)), io::marked_from_json(s.read(right_file))));
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Pushout certificates");
  dec->require_subcommand(1);
  std::size_t p1 = 0, p2 = 0, p3 = 0;
  auto* spr = dec->add_subcommand("spread", "Spread simplices from the union of two faces to a marked horn");
  spr->add_option("n", p1)->required();
  spr->add_option("i", p2)->required();
  spr->add_option("j", p3)->required();
  spr->callback([&] { s.emit(io::to_json(spread_decomposition(p1, p2, p3))); });
  auto* shu = dec->add_subcommand("shuffle", "Special simplices filtering a marked tensor of simplices");
  shu->add_option("m", p1)->required();
  shu->add_option("n", p2)->required();
  shu->add_option("l", p3)->required();
  shu->callback([&] { s.emit(io::to_json(shuffle_filtration(p1, p2, p3))); });
  std::string cert_file;
  auto verify_cert = [&] {
    auto r = verify(io::certificate_from_json(s.read(cert_file)));
    if (r.ok)
      s.emit(io::to_json(r));
    else
      s.fail(1, io::to_json(r));
  };
  auto* dver = dec->add_subcommand("verify", "Replay and check a certificate");
  dver->add_option("file", cert_file, "Certificate JSON, or - for stdin")->required();
  dver->callback(verify_cert);

  // verify
  auto* ver = app.add_subcommand("verify", "Check a certificate, or the face identities of an object");
  std::string ver_file;
  ver->add_option("file", ver_file, "JSON file, or - for stdin")->required();
  ver->callback([&] {
    Json j = s.read(ver_file);
    if (j.is_object() && j.contains("steps")) {
      auto r = verify(io::certificate_from_json(j));
      if (r.ok) s.emit(io::to_json(r));
      else s.fail(1, io::to_json(r));
      return;
    }
    auto w = io::marked_from_json(j);
    auto v = validate(w.underlying());
    Json list = Json::array();
    for (const auto& e : v) list.push_back(Json{{"level", e.dim}, {"simplex", e.index}, {"i", e.i}, {"j", e.j}});
    Json report{{"ok", v.empty()}, {"violations", list}};
    if (v.empty()) s.emit(report);
    else s.fail(1, report);
  });

  // lift
  auto* lift = app.add_subcommand("lift", "Right lifting properties");
  lift->require_subcommand(1);
  auto* lcheck = lift->add_subcommand("check", "Does p have the right lifting property against g?");
  std::string left_map, right_map, terminal_of;
  lcheck->add_option("--left", left_map, "g : A -> B as marked map JSON, or C0, C1, C2")->required();
  auto* right_opt = lcheck->add_option("--right", right_map, "p : W -> Z as marked map JSON");
  lcheck->add_option("--terminal", terminal_of, "Use W -> T for this marked object W")->excludes(right_opt);
  lcheck->callback([&] {
    if (left_map == "-" && (right_map == "-" || terminal_of == "-")) throw InvalidInput("only one input can come from stdin");
    std::optional<MarkedMap> g;
    for (const auto& gen : q_generators())
      if (gen.name == left_map) g = gen.inclusion;
    if (!g) g = io::marked_map_from_json(s.read(left_map));
    std::optional<MarkedMap> p;
    if (!right_map.empty()) p = io::marked_map_from_json(s.read(right_map));
    else if (!terminal_of.empty()) p = terminal_map(io::marked_from_json(s.read(terminal_of)));
    else throw InvalidInput("lift check needs --right or --terminal");
    auto r = has_rlp(*p, *g, s.budget());
    if (r.holds) s.emit(io::to_json(r, *p, *g));
    else s.fail(1, io::to_json(r, *p, *g));
  });
  std::string qu_file;
  auto* lqu = lift->add_subcommand("qu", "Quasi-unitality of a marked object, by lifting and directly");
  lqu->add_option("file", qu_file, "Marked object JSON")->required();
  lqu->callback([&] {
    auto w = io::marked_from_json(s.read(qu_file));
    auto via = quasi_unital_via_rlp(w, s.budget());
    auto direct = quasi_unital_direct(w);
    s.emit(Json{{"via_rlp", detail::rlp_report(via)},
                {"direct", Json{{"quasi_unital", direct.quasi_unital()},
                                {"marked_out_everywhere", direct.marked_out_everywhere},
                                {"invertibles_marked", direct.invertibles_marked}}},
                {"agree", via.quasi_unital() == direct.quasi_unital()}});
  });
  auto* lgen = lift->add_subcommand("generators", "The inclusions C0, C1, C2");
  lgen->callback([&] {
    for (const auto& g : q_generators()) s.emit(Json{{"name", g.name}, {"inclusion", io::to_json(g.inclusion)}});
  });

  // cat
  auto* cat = app.add_subcommand("cat", "Finite non-unital categories");
  cat->require_subcommand(1);
  std::string cat_file;
  auto* ccheck = cat->add_subcommand("check", "Associativity, invertibles and quasi-units of a table");
  ccheck->add_option("file", cat_file, "Category JSON, or - for stdin")->required();
  ccheck->callback([&] {
    auto c = io::nucat_from_json(s.read(cat_file));
    auto report = detail::category_report(c);
    const bool ok = report["associative"].get<bool>() && report["qu_inv_mismatch"].empty() &&
                    report["several_quasi_units"].empty();
    if (ok) s.emit(report);
    else s.fail(1, report);
  });
  std::size_t depth = 3;
  std::string marking = "invertibles";
  auto* cnerve = cat->add_subcommand("nerve", "The marked nerve of a table");
  cnerve->add_option("file", cat_file, "Category JSON, or - for stdin")->required();
  cnerve->add_option("--depth", depth, "Truncation of the nerve");
  cnerve->add_option("--marking", marking, "none, invertibles, quasi-units or all");
  cnerve->callback([&] {
    auto c = io::nucat_from_json(s.read(cat_file));
    require(c.is_associative(), "the composition table is not associative");
    s.emit_object(marked_nerve(c, depth, detail::marking_rule(marking)));
  });
  std::size_t max_obj = 2, max_hom = 2;
  bool emit_all = false;
  auto* ccorpus = cat->add_subcommand("corpus", "Every associative table within the bounds");
  ccorpus->add_option("--max-obj", max_obj, "Largest number of objects");
  ccorpus->add_option("--max-hom", max_hom, "Largest hom-set");
  ccorpus->add_flag("--emit", emit_all, "Print every table before the summary");
  ccorpus->callback([&] {
    std::size_t count = 0, unital = 0;
    for_each_nucat(max_obj, max_hom, [&](const NuCat& c) {
      ++count;
      unital += is_quasi_unital(c);
      if (emit_all) s.emit(io::to_json(c));
      return true;
    }, s.budget());
    s.emit(Json{{"max_obj", max_obj}, {"max_hom", max_hom}, {"tables", count}, {"quasi_unital", unital}});
  });
  std::size_t sample_count = 10, sample_objects = 3;
  auto* csample = cat->add_subcommand("sample", "Seeded random associative tables");
  csample->add_option("--count", sample_count, "Number of tables");
  csample->add_option("--objects", sample_objects, "Objects per table");
  csample->add_option("--max-hom", max_hom, "Largest hom-set");
  csample->callback([&] {
    for (const auto& c : sampled_corpus(s.seed, sample_count, sample_objects, max_hom)) s.emit(io::to_json(c));
  });

  // kan
  auto* kan = app.add_subcommand("kan", "Right Kan extension along surjections");
  kan->require_subcommand(1);
  std::size_t kn = 1, mmax = 4;
  std::string kan_cat, kan_object;
  auto* kcounit = kan->add_subcommand("counit", "h* bijections for a gaunt category");
  kcounit->add_option("--cat", kan_cat, "Category JSON")->required();
  kcounit->add_option("--n", kn, "Level")->required();
  kcounit->add_option("--mmax", mmax, "Largest m")->required();
  kcounit->callback([&] {
    auto c = io::nucat_from_json(s.read(kan_cat));
    require(c.is_associative(), "the composition table is not associative");
    auto fails = verify_counit_gaunt(c, kn, mmax);
    Json list = Json::array();
    for (const auto& f : fails) list.push_back(io::to_json(f));
    Json report{{"n", kn}, {"m_max", mmax}, {"ok", fails.empty()}, {"failures", list}};
    if (fails.empty()) s.emit(report);
    else s.fail(1, report);
  });
  auto* krk = kan->add_subcommand("rk", "Compatible families over surjections onto [n]");
  auto* obj_opt = krk->add_option("--object", kan_object, "Marked object JSON with levels through mmax");
  krk->add_option("--cat", kan_cat, "Use the nerve of this category, marked by invertibles")->excludes(obj_opt);
  krk->add_option("--n", kn, "Level")->required();
  krk->add_option("--mmax", mmax, "Largest m")->required();
  krk->callback([&] {
    MarkedSSet w;
    if (!kan_object.empty()) {
      w = io::marked_from_json(s.read(kan_object));
    } else if (!kan_cat.empty()) {
      auto c = io::nucat_from_json(s.read(kan_cat));
      require(c.is_associative(), "the composition table is not associative");
      w = f_natural(nerve(c, mmax));
    } else {
      throw InvalidInput("kan rk needs --object or --cat");
    }
    auto r = rk_plus_level(w, kn, mmax, s.budget());
    Json j = io::to_json(r);
    j["bijects_with_level"] = bijects_with_level(r, w.underlying());
    s.emit(j);
  });

  // homology
  auto* hom = app.add_subcommand("homology", "Integral homology of a finite object");
  std::string hom_file;
  hom->add_option("file", hom_file, "Object JSON, or - for stdin")->required();
  hom->callback([&] { s.emit(io::to_json(homology(io::marked_from_json(s.read(hom_file)).underlying()))); });

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "Run the acceptance checks");
  bool quick = false, timings = false;
  suite_cmd->add_flag("--quick", quick, "Small parameters");
  suite_cmd->add_flag("--timings", timings, "Include wall-clock seconds (not reproducible)");
  suite_cmd->callback([&] {
    suite::Options o;
    o.quick = quick;
    o.seed = s.seed;
    bool all = true;
    suite::run(o, [&](const suite::Outcome& r) {
      all = all && r.passed();
      Json j{{"criterion", r.id}, {"name", r.name}, {"passed", r.passed()}, {"detail", r.detail}};
      if (timings) {
        j["seconds"] = r.seconds;
        j["limit_seconds"] = r.limit_seconds;
      }
      s.emit(j);
      s.out().flush();
    });
    if (!all) throw detail::Exit{1};
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << Json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return 2;
  } catch (const detail::Exit& e) {
    return e.code;
  } catch (const ResourceError& e) {
    out << Json{{"error", e.what()}, {"kind", "resource"}}.dump() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    out << Json{{"error", e.what()}, {"kind", "invalid_input"}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    return 2;
  }
}

}  // namespace qucat::cli
