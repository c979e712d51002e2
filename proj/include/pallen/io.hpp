#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <toml.hpp>
#include <vector>

#include "pallen/base_positions.hpp"
#include "pallen/covering_palindromes.hpp"
#include "pallen/nps.hpp"
#include "pallen/palindromics.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/verifier.hpp"
#include "pallen/word.hpp"

namespace pallen {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "pallen/v1";

inline Json envelope(std::string_view kind) { return Json{{"schema", kSchema}, {"kind", kind}}; }

inline Json envelope(std::string_view kind, const Word& w) {
  Json j = envelope(kind);
  j["word"] = w.to_utf8();
  return j;
}

inline void check_schema(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kSchema)
    throw std::invalid_argument("json input lacks \"schema\": \"" + std::string(kSchema) + "\"");
}

/// The word carried by any word-bearing output.
inline Word word_from_json(const Json& j) {
  check_schema(j);
  if (!j.contains("word") || !j["word"].is_string()) throw std::invalid_argument("json input has no \"word\"");
  return Word::from_utf8(j["word"].get<std::string>());
}

inline std::string big(const BigInt& v) { return v.str(); }

inline Json to_json(const PosSet& s) { return Json(s.elements()); }
inline Json to_json(const Run& r) { return Json{{"nu1", r.nu1}, {"nu2", r.nu2}, {"xi", r.xi}}; }
inline Json to_json(const PalSpan& s) { return Json{{"n1", s.n1}, {"n2", s.n2}}; }
inline Json to_json(const BasePos& b) { return Json{{"g", b.g}, {"e", b.e}}; }
inline Json to_json(const Interval& iv) { return Json{{"lo", iv.lo}, {"hi", iv.hi}}; }

inline Json to_json(const PalExtTuple& t) {
  return Json{{"n", t.n}, {"p1", t.couple.p1.to_utf8()}, {"p2", t.couple.p2.to_utf8()}, {"alpha", t.alpha}, {"sigma", sigma(t)}};
}

inline Json to_json(const Cluster& c) {
  Json base = Json::array();
  for (const auto& b : c.base) base.push_back(to_json(b));
  return Json{{"d", to_json(c.d)}, {"xi", c.xi}, {"degree", c.degree}, {"base", base}};
}

inline Cluster cluster_from_json(const Json& j) {
  Cluster c{PosSet(j.at("d").get<std::vector<Pos>>()), j.at("xi").get<Pos>(), j.at("degree").get<Pos>(), {}};
  for (const auto& b : j.at("base")) c.base.push_back(cluster_from_json(b));
  return c;
}

template <class T>
Json to_json_array(const T& items) {
  Json a = Json::array();
  for (const auto& x : items) a.push_back(to_json(x));
  return a;
}

inline Json runs_json(const Word& w, const std::vector<Run>& runs) {
  Json j = envelope("runs", w);
  j["runs"] = to_json_array(runs);
  return j;
}

inline std::vector<Run> runs_from_json(const Json& j) {
  check_schema(j);
  std::vector<Run> out;
  for (const auto& r : j.at("runs")) out.push_back({r.at("nu1").get<Pos>(), r.at("nu2").get<Pos>(), r.at("xi").get<Pos>()});
  return out;
}

inline Json base_json(const BaseIndex& base) {
  Json j = envelope("base", base.z);
  j["h"] = base.h();
  j["base_positions"] = to_json_array(base.bb);
  j["base_count"] = base.tilde().size();
  j["tilde"] = to_json(base.tilde());
  return j;
}

inline std::set<BasePos> base_from_json(const Json& j) {
  check_schema(j);
  std::set<BasePos> out;
  for (const auto& b : j.at("base_positions")) out.insert({b.at("g").get<Pos>(), b.at("e").get<Pos>()});
  return out;
}

inline Json harness_json(const Word& w, const HarnessReport& r) {
  Json j = envelope("harness", w);
  j["h"] = r.h;
  j["k"] = r.k;
  j["base_count"] = r.base_count;
  Json hits = Json::array();
  for (const auto& [m, pos] : r.cover_intersections) hits.push_back({{"m", m}, {"positions", to_json(pos)}});
  j["cover_intersections"] = hits;
  j["observed"] = r.observed;
  j["cover_sizes"] = r.cover_sizes;
  j["covers_complete"] = r.covers_complete;
  j["lambda"] = big(r.lambda_hk);
  j["theta"] = big(r.theta_hk);
  j["bound"] = big(r.bound);
  j["h0"] = r.h0;
  j["bound_exceeds_observed"] = r.bound_exceeds_observed;
  j["count_inequality_holds"] = r.count_inequality;
  return j;
}

inline Json psi_json(const Word& w, const PsiReport& r) {
  Json j = envelope("psi", w);
  j["m"] = r.m;
  j["clusters_checked"] = r.clusters_checked;
  j["max_intersection"] = r.max_intersection;
  j["bound"] = big(r.bound);
  j["exact"] = r.exact;
  j["ok"] = r.ok;
  return j;
}

inline Json chain_json(const Word& w, const std::vector<ChainLevel>& chain) {
  Json j = envelope("nps", w);
  Json levels = Json::array();
  for (const auto& lvl : chain)
    levels.push_back({{"m", lvl.m},
                      {"target", to_json(lvl.target)},
                      {"clusters", to_json_array(lvl.cover.members)},
                      {"uncovered", to_json(lvl.uncovered)}});
  j["levels"] = levels;
  return j;
}

inline Json report_json(const Report& r) {
  Json j = envelope("report");
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    Json f = Json::array();
    for (const auto& c : s.failures)
      f.push_back({{"word", c.word}, {"params", c.params}, {"seed", c.seed}, {"detail", c.detail}});
    suites.push_back({{"name", s.name}, {"instances_run", s.instances_run}, {"failures", f}, {"skipped", s.skipped}});
  }
  j["suites"] = suites;
  j["passed"] = r.passed();
  return j;
}

inline Report report_from_json(const Json& j) {
  check_schema(j);
  Report r;
  for (const auto& s : j.at("suites")) {
    SuiteResult out{s.at("name").get<std::string>(), s.at("instances_run").get<Pos>(), {},
                    s.at("skipped").get<std::vector<std::string>>()};
    for (const auto& c : s.at("failures"))
      out.failures.push_back({c.at("word").get<std::string>(), c.at("params").get<std::string>(),
                              c.at("seed").get<std::uint64_t>(), c.at("detail").get<std::string>()});
    r.suites.push_back(std::move(out));
  }
  return r;
}

namespace detail {

inline Pos toml_int(const toml::node& n, std::string_view key) {
  const auto v = n.value<std::int64_t>();
  if (!v) throw config_error("config: " + std::string(key) + " must be an integer");
  return *v;
}

inline std::string toml_str(const toml::node& n, std::string_view key) {
  const auto v = n.value<std::string>();
  if (!v) throw config_error("config: " + std::string(key) + " must be a string");
  return *v;
}

inline CorpusEntry corpus_entry(const toml::table& t) {
  CorpusEntry e;
  for (const auto& [k, v] : t) {
    const std::string key(k.str());
    if (key == "word") e.literal = Word::from_utf8(toml_str(v, key));
    else if (key == "family") {
      try {
        e.spec.family = parse_family(toml_str(v, key));
      } catch (const std::invalid_argument& err) {
        throw config_error(err.what());
      }
    } else if (key == "length") e.spec.length = toml_int(v, key);
    else if (key == "preperiod") e.spec.preperiod = Word::from_utf8(toml_str(v, key));
    else if (key == "period") e.spec.period = Word::from_utf8(toml_str(v, key));
    else if (key == "alphabet") e.spec.alphabet_size = static_cast<int>(toml_int(v, key));
    else if (key == "seed") e.spec.seed = static_cast<std::uint64_t>(toml_int(v, key));
    else if (key == "pad") e.pad = parse_pad_mode(toml_str(v, key));
    else throw config_error("config: unknown corpus key " + key);
  }
  if (!e.literal && e.spec.length < 1) throw config_error("config: corpus entry needs a word or a length >= 1");
  if (e.literal && e.literal->empty()) throw config_error("config: corpus word is empty");
  return e;
}

}  // namespace detail

/// Verifier config. Top-level keys: seed, suites, [scales], [mutations], [[corpus]].
inline SuiteConfig parse_config(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw config_error(std::string("config: ") + std::string(e.description()));
  }
  SuiteConfig cfg;
  for (const auto& [k, v] : root) {
    const std::string key(k.str());
    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(detail::toml_int(v, key));
    } else if (key == "suites") {
      const auto* arr = v.as_array();
      if (!arr) throw config_error("config: suites must be an array");
      for (const auto& s : *arr) cfg.enabled.insert(detail::toml_str(s, key));
    } else if (key == "scales") {
      const auto* t = v.as_table();
      if (!t) throw config_error("config: scales must be a table");
      for (const auto& [sk, sv] : *t) cfg.scales[std::string(sk.str())] = detail::toml_int(sv, sk.str());
    } else if (key == "mutations") {
      const auto* t = v.as_table();
      if (!t) throw config_error("config: mutations must be a table");
      for (const auto& [mk, mv] : *t) {
        const auto* on = mv.as_boolean();
        if (!on) throw config_error("config: mutation flags must be booleans");
        if (mk.str() == "flip_palindrome") cfg.mutations.flip_palindrome = on->get();
        else if (mk.str() == "mirror_off_by_one") cfg.mutations.mirror_off_by_one = on->get();
        else throw config_error("config: unknown mutation " + std::string(mk.str()));
      }
    } else if (key == "corpus") {
      const auto* arr = v.as_array();
      if (!arr) throw config_error("config: corpus must be an array of tables");
      for (const auto& e : *arr) {
        const auto* t = e.as_table();
        if (!t) throw config_error("config: corpus entries must be tables");
        cfg.corpus.push_back(detail::corpus_entry(*t));
      }
    } else {
      throw config_error("config: unknown key " + key);
    }
  }
  check_config(cfg);
  return cfg;
}

}  // namespace pallen
