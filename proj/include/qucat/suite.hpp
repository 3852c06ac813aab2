#pragma once

// The acceptance suite: ten exhaustive checks on small instances, shared by
// the acceptance binary and `qucat suite`.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qucat/decompose.hpp"
#include "qucat/homology.hpp"
#include "qucat/io.hpp"
#include "qucat/kanext.hpp"
#include "qucat/lifting.hpp"
#include "qucat/marked.hpp"
#include "qucat/nucat.hpp"
#include "qucat/oracles.hpp"
#include "qucat/sset.hpp"

namespace qucat::suite {

struct Options {
  bool quick = false;
  std::uint64_t seed = 1;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool correct = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;    // human-readable summary, deterministic
  std::string artifact;  // everything the check computed that should be reproducible
  bool passed() const { return correct && seconds < limit_seconds; }
};

namespace detail {

/// Collects failures and a running transcript for one criterion.
class Log {
 public:
  void fail(const std::string& what) {
    if (failures_.size() < 5) examples_.push_back(what);
    failures_.push_back(what);
  }
  void record(const std::string& s) { artifact_ += s + "\n"; }
  template <typename T>
  void record(const std::string& key, const T& value) {
    std::ostringstream o;
    o << key << "=" << value;
    record(o.str());
  }
  std::size_t failures() const { return failures_.size(); }
  std::string summary(const std::string& ok_text) const {
    if (failures_.empty()) return ok_text;
    std::string s = std::to_string(failures_.size()) + " failure(s); first: ";
    for (std::size_t i = 0; i < examples_.size(); ++i) s += (i ? " | " : "") + examples_[i];
    return s;
  }
  const std::string& artifact() const { return artifact_; }

 private:
  std::vector<std::string> failures_, examples_;
  std::string artifact_;
};

template <typename F>
Outcome timed(int id, std::string name, double limit, F&& body) {
  Outcome o;
  o.id = id;
  o.name = std::move(name);
  o.limit_seconds = limit;
  Log log;
  const auto t0 = std::chrono::steady_clock::now();
  std::string ok_text;
  try {
    ok_text = body(log);
  } catch (const std::exception& e) {
    log.fail(std::string("exception: ") + e.what());
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.correct = log.failures() == 0;
  o.detail = log.summary(ok_text);
  o.artifact = log.artifact();
  return o;
}

inline std::string profile_string(const HomologyProfile& p) { return io::to_json(p).dump(); }

inline std::vector<std::pair<std::string, MarkedSSet>> replays(std::size_t max_m, std::size_t max_n) {
  std::vector<std::pair<std::string, MarkedSSet>> out;
  for (std::size_t m = 0; m <= max_m; ++m)
    for (std::size_t n = 2; n <= max_n; ++n)
      for (std::size_t l = 0; l <= n; ++l) {
        auto r = verify(shuffle_filtration(m, n, l));
        if (r.replayed)
          out.emplace_back("shuffle(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(l) + ")",
                           *r.replayed);
      }
  return out;
}

}  // namespace detail

/// 1. Level counts of the flat tensor of simplices against a chain count.
inline Outcome tensor_counts(const Options& o) {
  return detail::timed(1, "tensor level counts", 1.0, [&](detail::Log& log) {
    const std::size_t top = 3;
    std::size_t cells = 0;
    for (std::size_t n = 0; n <= top; ++n)
      for (std::size_t m = 0; m <= top; ++m) {
        auto t = tensor(flat(standard(n)), flat(standard(m))).underlying();
        for (std::size_t k = 0; k <= n + m + 1; ++k) {
          const std::size_t got = t.has_level(k) ? t.level_size(k) : 0;
          const std::size_t want = oracle::grid_chain_count(n, m, k);
          log.record("tensor(" + std::to_string(n) + "," + std::to_string(m) + ")_" + std::to_string(k), got);
          if (got != want)
            log.fail("tensor(" + std::to_string(n) + "," + std::to_string(m) + ") level " + std::to_string(k) + ": " +
                     std::to_string(got) + " vs " + std::to_string(want));
          ++cells;
        }
      }
    (void)o;
    return std::to_string(cells) + " level counts match";
  });
}

/// 2. Face identities on every constructed and replayed object.
inline Outcome identities(const Options& o) {
  return detail::timed(2, "semi-simplicial identities", 10.0, [&](detail::Log& log) {
    std::size_t objects = 0;
    auto check = [&](const std::string& name, const SSet& x) {
      ++objects;
      auto v = validate(x);
      if (!v.empty())
        log.fail(name + ": d" + std::to_string(v[0].i) + "d" + std::to_string(v[0].j) + " at level " +
                 std::to_string(v[0].dim));
    };
    const std::size_t top = o.quick ? 3 : 5;
    for (std::size_t n = 0; n <= top; ++n) {
      check("standard(" + std::to_string(n) + ")", standard(n));
      check("spine(" + std::to_string(n) + ")", spine(n));
      if (n >= 1) check("boundary(" + std::to_string(n) + ")", boundary(n));
      for (std::size_t i = 0; i <= n && n >= 1; ++i) check("horn(" + std::to_string(n) + "," + std::to_string(i) + ")", horn(n, i));
      for (std::size_t mask = 1; mask < (std::size_t{1} << (n + 1)); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t x = 0; x <= n; ++x)
          if (mask >> x & 1u) sub.push_back(x);
        check("sub_simplex", sub_simplex(n, sub));
      }
    }
    for (std::size_t p = 1; p <= 3; ++p) check("coskeleton0(" + std::to_string(p) + ")", coskeleton0(p, 3));
    const std::size_t tt = o.quick ? 2 : 3;
    for (std::size_t a = 0; a <= tt; ++a)
      for (std::size_t b = 0; b <= tt; ++b) {
        check("tensor", tensor(flat(standard(a)), flat(standard(b))).underlying());
        if (a >= 1) check("tensor", tensor(flat(boundary(a)), sharp(standard(b))).underlying());
        if (b >= 2) check("tensor", tensor(flat(standard(a)), flat(horn(b, 0))).underlying());
      }
    for (const auto& c : nucat_corpus(2, o.quick ? 1 : 2)) check("nerve", nerve(c, 3));
    const std::size_t sn = o.quick ? 4 : 5;
    for (std::size_t n = 2; n <= sn; ++n)
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
          const bool degenerate = j == 0 || (j == 1 && i == 0) || (j == n && i == n);
          if (degenerate) continue;
          auto r = verify(spread_decomposition(n, i, j));
          if (!r.replayed) {
            log.fail("spread replay did not complete: " + r.clause);
            continue;
          }
          check("spread replay", r.replayed->underlying());
        }
    for (const auto& [name, w] : detail::replays(o.quick ? 2 : 3, o.quick ? 2 : 3)) check(name, w.underlying());
    log.record("objects", objects);
    return std::to_string(objects) + " objects, zero violations";
  });
}

/// 3. Spread decompositions for every n <= 5 and every 0 <= i, j <= n.
inline Outcome spread(const Options& o) {
  return detail::timed(3, "spread decomposition", 30.0, [&](detail::Log& log) {
    const std::size_t top = o.quick ? 4 : 5;
    std::size_t triples = 0, verified = 0;
    for (std::size_t n = 2; n <= top; ++n)
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
          ++triples;
          const std::string tag = "(" + std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
          PushoutCertificate cert;
          try {
            cert = spread_decomposition(n, i, j);
          } catch (const InvalidInput& e) {
            log.record(tag + " none");
            log.fail(tag + " has no decomposition");
            continue;
          }
          auto r = verify(cert);
          log.record(tag + " steps=" + std::to_string(cert.steps.size()) + " ok=" + std::to_string(r.ok));
          if (!r.ok) {
            log.fail(tag + ": " + r.clause);
            continue;
          }
          // the target is Λⁿᵢ with {i,x} marked for x < j, x > i and {x,i} for x >= j, x < i
          std::set<std::vector<Label>> marked;
          for (std::size_t x = 0; x <= n; ++x) {
            const Label li{static_cast<int>(i)}, lx{static_cast<int>(x)};
            if (x < j && x > i) marked.insert(std::vector<Label>{li, lx});
            if (x >= j && x < i) marked.insert(std::vector<Label>{lx, li});
          }
          auto shape = labelled_shape(cert.target);
          if (shape.levels != labelled_shape(flat(horn(n, i))).levels || shape.marked != marked) {
            log.fail(tag + ": target is not the marked horn");
            continue;
          }
          ++verified;
        }
    return std::to_string(verified) + "/" + std::to_string(triples) + " triples verified";
  });
}

/// 4. Shuffle filtrations: verification, target, admissibility and census.
inline Outcome filtration(const Options& o) {
  return detail::timed(4, "shuffle filtration", 120.0, [&](detail::Log& log) {
    const std::size_t top = o.quick ? 2 : 3;
    std::size_t cases = 0, steps = 0;
    for (std::size_t m = 0; m <= top; ++m)
      for (std::size_t n = 2; n <= top; ++n)
        for (std::size_t l = 0; l <= n; ++l) {
          ++cases;
          const std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(l) + ")";
          auto cert = shuffle_filtration(m, n, l);
          auto r = verify(cert);
          log.record(tag + " steps=" + std::to_string(cert.steps.size()) + " ok=" + std::to_string(r.ok));
          if (!r.ok) {
            log.fail(tag + ": " + r.clause);
            continue;
          }
          std::vector<std::pair<std::size_t, std::size_t>> a;
          if (l == n) a.push_back({n - 1, n});
          if (l == 0) a.push_back({0, 1});
          auto want = tensor(flat(standard(m)), marked_simplex(n, a));
          if (labelled_shape(cert.target) != labelled_shape(want)) log.fail(tag + ": target is not the marked tensor");
          for (const auto& h : r.horns)
            if (!h.admissible) log.fail(tag + ": inadmissible step " + std::to_string(h.step));
          const std::size_t census = special_census(m, n, l == 0 ? n : l);
          if (r.horns.size() != census)
            log.fail(tag + ": " + std::to_string(r.horns.size()) + " steps vs census " + std::to_string(census));
          steps += r.horns.size();
        }
    return std::to_string(cases) + " filtrations, " + std::to_string(steps) + " admissible steps";
  });
}

/// 5. Integral homology of tensors, horns and boundaries.
inline Outcome homology_oracle(const Options& o) {
  return detail::timed(5, "homology oracle", 60.0, [&](detail::Log& log) {
    std::size_t objects = 0;
    auto expect = [&](const std::string& name, const SSet& x, const HomologyProfile& want) {
      ++objects;
      auto got = homology(x);
      log.record(name + " " + detail::profile_string(got));
      if (got != want) log.fail(name + ": " + detail::profile_string(got));
    };
    const std::size_t tt = o.quick ? 2 : 3;
    for (std::size_t m = 0; m <= tt; ++m)
      for (std::size_t n = 0; n <= tt; ++n) {
        auto t = tensor(flat(standard(m)), flat(standard(n))).underlying();
        expect("tensor(" + std::to_string(m) + "," + std::to_string(n) + ")", t, point_profile(t.truncation()));
      }
    const std::size_t hn = o.quick ? 3 : 4;
    for (std::size_t n = 1; n <= hn; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        auto h = horn(n, i);
        expect("horn(" + std::to_string(n) + "," + std::to_string(i) + ")", h, point_profile(h.truncation()));
      }
      auto b = boundary(n);
      expect("boundary(" + std::to_string(n) + ")", b, sphere_profile(n - 1, b.truncation()));
    }
    for (const auto& [name, w] : detail::replays(o.quick ? 1 : 2, o.quick ? 2 : 3))
      expect(name, w.underlying(), point_profile(w.underlying().truncation()));
    return std::to_string(objects) + " profiles exact";
  });
}

namespace detail {

inline void quasi_unit_checks(const NuCat& c, const std::string& tag, Log& log) {
  if (!c.is_associative()) log.fail(tag + ": table is not associative");
  if (!check_l_qu_inv(c).empty()) log.fail(tag + ": quasi-units and invertibles disagree at an object");
  if (!check_qu_connected(c).empty()) log.fail(tag + ": an object has two quasi-units");
}

inline std::size_t functor_agreement(const NuCat& a, const NuCat& b, const std::string& tag, Log& log) {
  std::size_t n = 0;
  for (const auto& F : enumerate_functors(a, b)) {
    auto p = functor_preservation(F, a, b);
    if (p.preserves_qu != p.preserves_inv) log.fail(tag + ": a functor preserves only one of quasi-units, invertibles");
    ++n;
  }
  return n;
}

}  // namespace detail

/// 6. Quasi-units versus invertibles, exhaustively and on seeded samples.
inline Outcome quasi_units_theory(const Options& o) {
  return detail::timed(6, "quasi-unit theory", 300.0, [&](detail::Log& log) {
    std::vector<NuCat> unital;
    std::size_t tables = 0;
    for_each_nucat(2, o.quick ? 1 : 2, [&](const NuCat& c) {
      detail::quasi_unit_checks(c, "table " + std::to_string(tables), log);
      if (is_quasi_unital(c)) unital.push_back(c);
      ++tables;
      return true;
    });
    std::size_t functors = 0;
    for (std::size_t i = 0; i < unital.size(); ++i)
      for (std::size_t j = 0; j < unital.size(); ++j)
        functors += detail::functor_agreement(unital[i], unital[j], "functor", log);
    const std::size_t count = o.quick ? 100 : 1000;
    auto samples = sampled_corpus(o.seed, count, 3, 2);
    std::vector<const NuCat*> unital_samples;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      detail::quasi_unit_checks(samples[i], "sample " + std::to_string(i), log);
      if (is_quasi_unital(samples[i])) unital_samples.push_back(&samples[i]);
      log.record(io::to_json(samples[i]).dump());
    }
    for (std::size_t i = 0; i + 1 < unital_samples.size(); ++i)
      functors += detail::functor_agreement(*unital_samples[i], *unital_samples[i + 1], "sample functor", log);
    log.record("tables", tables);
    log.record("unital", unital.size());
    log.record("functors", functors);
    return std::to_string(tables) + " tables, " + std::to_string(samples.size()) + " samples, " +
           std::to_string(functors) + " functors";
  });
}

/// 7. The lifting-property form of quasi-unitality against the direct one.
inline Outcome rlp_agreement(const Options& o) {
  return detail::timed(7, "RLP generators", 300.0, [&](detail::Log& log) {
    std::size_t markings = 0, unital = 0;
    auto compare = [&](const MarkedSSet& w, const std::string& tag) {
      const bool via = is_quasi_unital_via_rlp(w);
      const bool direct = quasi_unital_direct(w).quasi_unital();
      if (via != direct) log.fail(tag + ": lifting check " + std::to_string(via) + ", direct " + std::to_string(direct));
      unital += via;
      ++markings;
    };
    std::size_t tables = 0;
    for_each_nucat(2, o.quick ? 1 : 2, [&](const NuCat& c) {
      for (const auto& w : admissible_markings(nerve(c, 3))) compare(w, "table " + std::to_string(tables));
      ++tables;
      return true;
    });
    auto samples = sampled_corpus(o.seed, o.quick ? 100 : 1000, 3, 2);
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (const auto& w : admissible_markings(nerve(samples[i], 3))) compare(w, "sample " + std::to_string(i));
    log.record("markings", markings);
    log.record("unital", unital);
    return std::to_string(markings) + " marked nerves agree (" + std::to_string(unital) + " quasi-unital)";
  });
}

/// 8. The counit on gaunt categories: posets.
inline Outcome counit(const Options& o) {
  return detail::timed(8, "counit on posets", 120.0, [&](detail::Log& log) {
    const std::size_t m_max = o.quick ? 4 : 5;
    const std::size_t top = o.quick ? 2 : 3;
    std::size_t posets = 0, levels = 0;
    for (const auto& p : poset_corpus(o.quick ? 3 : 4)) {
      const std::string tag = "poset " + std::to_string(posets++);
      auto w = f_natural(nerve(p, m_max));
      for (std::size_t n = 0; n <= top; ++n) {
        auto fails = verify_counit_gaunt(p, n, m_max);
        if (!fails.empty()) log.fail(tag + " n=" + std::to_string(n) + ": " + fails.front().reason);
        auto r = rk_plus_level(w, n, m_max);
        log.record(tag + " n=" + std::to_string(n) + " families=" + std::to_string(r.families.size()));
        if (!r.stabilized) log.fail(tag + " n=" + std::to_string(n) + ": " + r.diagnostic);
        if (!bijects_with_level(r, w.underlying())) log.fail(tag + " n=" + std::to_string(n) + ": no bijection with X_n");
        ++levels;
      }
    }
    return std::to_string(posets) + " posets, " + std::to_string(levels) + " levels";
  });
}

/// 9. Section-pair graphs and the extreme T object.
inline Outcome sections(const Options& o) {
  return detail::timed(9, "section-pair graph", 10.0, [&](detail::Log& log) {
    const std::size_t top = o.quick ? 4 : 5;
    std::size_t maps = 0, objects = 0;
    for (std::size_t m = 0; m <= top; ++m)
      for (std::size_t n = 0; n <= m; ++n)
        for (const auto& f : enumerate_maps(m, n, MapClass::surjective)) {
          ++maps;
          auto g = section_pair_graph(f);
          log.record(f.to_string() + " pairs=" + std::to_string(g.nodes.size()) + " edges=" + std::to_string(g.edges.size()));
          if (!g.connected) log.fail(f.to_string() + ": section-pair graph is disconnected");
          auto [hmax, hmin] = extreme_sections(f);
          for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::set<std::size_t> M;
            for (std::size_t i = 0; i < n; ++i)
              if (mask >> i & 1u) M.insert(i);
            if (labelled_shape(build_T(hmax, hmin, f, M)) != labelled_shape(spine_with_marking(f, M)))
              log.fail(f.to_string() + ": T(h_max, h_min) is not the marked spine");
            ++objects;
          }
        }
    return std::to_string(maps) + " surjections, " + std::to_string(objects) + " T objects";
  });
}

inline std::vector<std::function<Outcome(const Options&)>> criteria() {
  return {tensor_counts, identities, spread, filtration, homology_oracle, quasi_units_theory,
          rlp_agreement, counit, sections};
}

/// Runs criteria 1-9, then reruns them with the same options and compares
/// artifacts byte for byte as criterion 10. `report` sees each outcome as it
/// completes.
inline std::vector<Outcome> run(const Options& o, const std::function<void(const Outcome&)>& report = {}) {
  std::vector<Outcome> out;
  for (const auto& c : criteria()) {
    out.push_back(c(o));
    if (report) report(out.back());
  }
  auto again = detail::timed(10, "determinism", 1e9, [&](detail::Log& log) {
    std::size_t i = 0;
    for (const auto& c : criteria()) {
      auto second = c(o);
      if (second.artifact != out[i].artifact) log.fail("criterion " + std::to_string(i + 1) + " artifacts differ");
      if (second.detail != out[i].detail) log.fail("criterion " + std::to_string(i + 1) + " reports differ");
      ++i;
    }
    return std::to_string(i) + " artifact sets byte-identical";
  });
  again.limit_seconds = 0;
  for (const auto& r : out) again.limit_seconds += r.limit_seconds;
  out.push_back(again);
  if (report) report(out.back());
  return out;
}

}  // namespace qucat::suite
