// Command-line front end: one subcommand per library operation, text / JSON / CSV output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pallen/pallen.hpp"

using namespace pallen;

namespace {

struct WordInput {
  std::string word;
  std::string file;
  std::string from_json;
  std::string pad = "#";

  void attach(CLI::App* cmd) {
    auto* w = cmd->add_option("--word", word, "word given inline");
    auto* f = cmd->add_option("--word-file", file, "file holding the word (surrounding whitespace ignored)");
    auto* j = cmd->add_option("--from-json", from_json, "JSON output of another subcommand; its \"word\" is used");
    w->excludes(f)->excludes(j);
    f->excludes(j);
    cmd->add_option("--pad", pad, "pad symbol")->default_val("#");
  }

  Symbol pad_symbol() const {
    const auto s = utf8::decode(pad);
    if (s.size() != 1) throw CLI::ValidationError("--pad", "must be a single symbol");
    return s[0];
  }

  /// The word from --word, --word-file, --from-json, or else stdin.
  Word read() const {
    if (!word.empty()) return Word::from_utf8(word);
    std::string text;
    if (!from_json.empty()) return word_from_json(Json::parse(slurp(from_json)));
    text = file.empty() ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : slurp(file);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty word input");
    text = text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1);
    return Word::from_utf8(text);
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

enum class Format { text, json, csv };

struct Output {
  bool json = false;
  bool csv = false;

  void attach(CLI::App* cmd, bool with_csv = true) {
    auto* j = cmd->add_flag("--json", json, "emit JSON");
    if (with_csv) cmd->add_flag("--csv", csv, "emit CSV")->excludes(j);
  }
  Format format() const { return json ? Format::json : csv ? Format::csv : Format::text; }
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string join(const std::vector<Pos>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pallen: palindromic length toolkit"};
  app.require_subcommand(1);
  int status = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a word of a family");
  std::string family = "thue_morse", pre, per, pad_mode = "none";
  Pos len = 0;
  int alphabet = 2;
  std::uint64_t seed = 1;
  Output gen_out;
  gen->add_option("--family", family, "thue_morse | fibonacci | period_doubling | periodic | random")->default_val("thue_morse");
  gen->add_option("--len", len, "length")->required()->check(CLI::PositiveNumber);
  gen->add_option("--pre", pre, "preperiod (periodic)");
  gen->add_option("--per", per, "period (periodic)");
  gen->add_option("--alphabet", alphabet, "alphabet size (random)")->default_val(2);
  gen->add_option("--seed", seed, "seed (random)")->default_val(1);
  gen->add_option("--pad-mode", pad_mode, "none | finite | infinite")->default_val("none");
  gen_out.attach(gen, false);
  gen->callback([&] {
    CorpusEntry e;
    e.spec = {parse_family(family), len, Word::from_utf8(pre), Word::from_utf8(per), alphabet, seed};
    e.pad = parse_pad_mode(pad_mode);
    const Word w = e.resolve();
    if (gen_out.json) {
      Json j = envelope("gen", w);
      j["family"] = family;
      j["length"] = len;
      print_json(j);
    } else {
      std::cout << w.to_utf8() << "\n";
    }
  });

  // pl
  auto* pl_cmd = app.add_subcommand("pl", "palindromic length");
  WordInput pl_in;
  Output pl_out;
  bool profile = false, use_oracle = false;
  pl_in.attach(pl_cmd);
  pl_out.attach(pl_cmd);
  pl_cmd->add_flag("--profile", profile, "print PL of every prefix");
  pl_cmd->add_flag("--oracle", use_oracle, "use the quadratic reference instead of the eertree");
  pl_cmd->callback([&] {
    const Word w = pl_in.read();
    const auto prof = use_oracle ? pl_oracle_profile(w) : pl_fast(w).prefix_pl;
    const Pos top = *std::max_element(prof.begin(), prof.end());
    switch (pl_out.format()) {
      case Format::json: {
        Json j = envelope("pl", w);
        j["pl"] = prof.back();
        j["max_prefix_pl"] = top;
        if (profile) j["prefix_pl"] = prof;
        print_json(j);
        break;
      }
      case Format::csv:
        std::cout << "prefix_len,pl\n";
        for (std::size_t i = 0; i < prof.size(); ++i) std::cout << i + 1 << "," << prof[i] << "\n";
        break;
      case Format::text:
        std::cout << (profile ? join(prof) : std::to_string(prof.back())) << "\n";
    }
  });

  // ppl
  auto* ppl_cmd = app.add_subcommand("ppl", "padded palindromic length of a pad-separated word");
  WordInput ppl_in;
  Output ppl_out;
  ppl_in.attach(ppl_cmd);
  ppl_out.attach(ppl_cmd, false);
  ppl_cmd->callback([&] {
    const Word w = ppl_in.read();
    const Pos v = ppl(w, ppl_in.pad_symbol());
    if (ppl_out.json) {
      Json j = envelope("ppl", w);
      j["ppl"] = v;
      print_json(j);
    } else {
      std::cout << v << "\n";
    }
  });

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "Cover(m): pad positions n with PPL(z[2, n-1]) = m");
  WordInput cover_in;
  Output cover_out;
  Pos cover_m = -1;
  cover_in.attach(cover_cmd);
  cover_out.attach(cover_cmd);
  cover_cmd->add_option("--m", cover_m, "single level (default: all levels)");
  cover_cmd->callback([&] {
    const Word z = cover_in.read();
    const auto levels = cover_levels(z, cover_in.pad_symbol());
    std::vector<std::pair<Pos, PosSet>> rows;
    for (std::size_t m = 0; m < levels.size(); ++m)
      if (cover_m < 0 || cover_m == static_cast<Pos>(m)) rows.emplace_back(static_cast<Pos>(m), levels[m]);
    if (cover_m >= static_cast<Pos>(levels.size())) rows.emplace_back(cover_m, PosSet{});
    switch (cover_out.format()) {
      case Format::json: {
        Json j = envelope("cover", z), a = Json::array();
        for (const auto& [m, s] : rows) a.push_back({{"m", m}, {"positions", to_json(s)}});
        j["levels"] = a;
        print_json(j);
        break;
      }
      case Format::csv:
        std::cout << "m,position\n";
        for (const auto& [m, s] : rows)
          for (Pos n : s) std::cout << m << "," << n << "\n";
        break;
      case Format::text:
        for (const auto& [m, s] : rows) std::cout << m << ": " << join(s.elements()) << "\n";
    }
  });

  // npp
  auto* npp_cmd = app.add_subcommand("npp", "lengths of the non-periodic palindromic prefixes");
  WordInput npp_in;
  Output npp_out;
  npp_in.attach(npp_cmd);
  npp_out.attach(npp_cmd, false);
  npp_cmd->callback([&] {
    const Word w = npp_in.read();
    const auto v = npp(w);
    if (npp_out.json) {
      Json j = envelope("npp", w);
      j["npp"] = v;
      j["count"] = v.size();
      print_json(j);
    } else {
      std::cout << join(v) << "\n";
    }
  });

  // ordinary
  auto* ord_cmd = app.add_subcommand("ordinary", "ordinary test, or search for an ordinary factor with --h0");
  WordInput ord_in;
  Output ord_out;
  Pos h0 = 0;
  ord_in.attach(ord_cmd);
  ord_out.attach(ord_cmd, false);
  ord_cmd->add_option("--h0", h0, "find a pad-initial ordinary palindromic factor with at least h0 NPP")->check(CLI::PositiveNumber);
  ord_cmd->callback([&] {
    const Word w = ord_in.read();
    Json j = envelope("ordinary", w);
    if (h0 > 0) {
      const auto iv = find_ordinary(w, h0, ord_in.pad_symbol());
      if (!iv) {
        status = 1;
        j["found"] = false;
        if (!ord_out.json) std::cout << "none\n";
      } else {
        const Word f = w.slice(iv->lo, iv->hi);
        j["found"] = true;
        j["lo"] = iv->lo;
        j["hi"] = iv->hi;
        j["factor"] = f.to_utf8();
        j["h"] = npp(f).size();
        if (!ord_out.json) std::cout << iv->lo << " " << iv->hi << " " << f.to_utf8() << "\n";
      }
    } else {
      const auto t = tau_and_ordinary(w);
      j["tau"] = t.tau;
      j["ordinary"] = t.ordinary;
      if (!ord_out.json) std::cout << (t.ordinary ? "ordinary" : "not ordinary") << " tau=" << t.tau << "\n";
    }
    if (ord_out.json) print_json(j);
  });

  // runs
  auto* runs_cmd = app.add_subcommand("runs", "runs (nu1, nu2, xi) of a word");
  WordInput runs_in;
  Output runs_out;
  runs_in.attach(runs_cmd);
  runs_out.attach(runs_cmd);
  runs_cmd->callback([&] {
    const Word w = runs_in.read();
    const auto rs = find_runs(w);
    switch (runs_out.format()) {
      case Format::json: print_json(runs_json(w, rs)); break;
      case Format::csv:
        std::cout << "nu1,nu2,xi\n";
        for (const auto& r : rs) std::cout << r.nu1 << "," << r.nu2 << "," << r.xi << "\n";
        break;
      case Format::text:
        for (const auto& r : rs) std::cout << r.nu1 << " " << r.nu2 << " " << r.xi << "\n";
    }
  });

  // covpal
  auto* cov_cmd = app.add_subcommand("covpal", "palindromic spans covering a position");
  WordInput cov_in;
  Output cov_out;
  Pos cov_pos = 0;
  std::string kind = "all";
  bool compound = false;
  cov_in.attach(cov_cmd);
  cov_out.attach(cov_cmd);
  cov_cmd->add_option("--pos", cov_pos, "position")->required();
  cov_cmd->add_option("--kind", kind, "all | left | right | edge | edge_left | edge_right")->default_val("all");
  cov_cmd->add_flag("--compound", compound, "only compound edge spans");
  cov_cmd->callback([&] {
    const Word z = cov_in.read();
    const PalIndex idx(z);
    const auto spans = compound ? cov_pal_cmd(idx, cov_pos) : cov_pal(idx, cov_pos, parse_cov_kind(kind));
    switch (cov_out.format()) {
      case Format::json: {
        Json j = envelope("covpal", z);
        j["pos"] = cov_pos;
        j["spans"] = to_json_array(spans);
        print_json(j);
        break;
      }
      case Format::csv:
        std::cout << "n1,n2\n";
        for (const auto& s : spans) std::cout << s.n1 << "," << s.n2 << "\n";
        break;
      case Format::text:
        for (const auto& s : spans) std::cout << s.n1 << " " << s.n2 << "\n";
    }
  });

  // palext
  auto* ext_cmd = app.add_subcommand("palext", "palindromic extension tuples at a position");
  WordInput ext_in;
  Output ext_out;
  Pos ext_pos = 0;
  ext_in.attach(ext_cmd);
  ext_out.attach(ext_cmd);
  ext_cmd->add_option("--pos", ext_pos, "position")->required();
  ext_cmd->callback([&] {
    const Word z = ext_in.read();
    const auto tuples = pal_ext(z, ext_pos);
    switch (ext_out.format()) {
      case Format::json: {
        Json j = envelope("palext", z);
        j["tuples"] = to_json_array(tuples);
        print_json(j);
        break;
      }
      case Format::csv:
        std::cout << "n,p1,p2,alpha,sigma\n";
        for (const auto& t : tuples)
          std::cout << t.n << "," << t.couple.p1.to_utf8() << "," << t.couple.p2.to_utf8() << "," << t.alpha << ","
                    << sigma(t) << "\n";
        break;
      case Format::text:
        for (const auto& t : tuples)
          std::cout << t.n << " '" << t.couple.p1.to_utf8() << "' '" << t.couple.p2.to_utf8() << "' " << t.alpha << " -> "
                    << sigma(t) << "\n";
    }
  });

  // nps
  auto* nps_cmd = app.add_subcommand("nps", "cover Cover(0..k) by nested periodic structures and validate them");
  WordInput nps_in;
  Output nps_out;
  Pos nps_k = 2;
  nps_in.attach(nps_cmd);
  nps_out.attach(nps_cmd, false);
  nps_cmd->add_option("--k", nps_k, "highest level")->default_val(2)->check(CLI::NonNegativeNumber);
  nps_cmd->callback([&] {
    const Word z = nps_in.read();
    const PalIndex idx(z);
    NpsBuilder nb(idx);
    const auto chain = nb.cover_chain(nps_k);
    bool ok = true;
    for (const auto& lvl : chain) {
      ok = ok && lvl.uncovered.empty();
      for (const auto& c : lvl.cover.members) ok = ok && !validate(z, c, theta_fn(nb.h()));
    }
    if (!ok) status = 1;
    if (nps_out.json) {
      Json j = chain_json(z, chain);
      j["h"] = nb.h();
      j["valid"] = ok;
      print_json(j);
    } else {
      for (const auto& lvl : chain)
        std::cout << "m=" << lvl.m << " |Cover|=" << lvl.target.size() << " clusters=" << lvl.cover.members.size()
                  << " uncovered=" << lvl.uncovered.size() << "\n";
      std::cout << (ok ? "valid" : "INVALID") << "\n";
    }
  });

  // base
  auto* base_cmd = app.add_subcommand("base", "base positions of the nested palindromes of z");
  WordInput base_in;
  Output base_out;
  Pos psi_m = -1;
  base_in.attach(base_cmd);
  base_out.attach(base_cmd);
  base_cmd->add_option("--psi", psi_m, "also check max |D ∩ base starts| over degree-m clusters");
  base_cmd->callback([&] {
    const Word z = base_in.read();
    const auto base = build_base(z, base_in.pad_symbol());
    std::optional<PsiReport> psi;
    if (psi_m >= 0) {
      psi = psi_check(z, psi_m);
      if (!psi->ok) status = 1;
    }
    switch (base_out.format()) {
      case Format::json: {
        Json j = base_json(base);
        if (psi) j["psi"] = psi_json(z, *psi);
        print_json(j);
        break;
      }
      case Format::csv:
        std::cout << "g,e\n";
        for (const auto& b : base.bb) std::cout << b.g << "," << b.e << "\n";
        break;
      case Format::text:
        for (const auto& b : base.bb) std::cout << "(" << b.g << "," << b.e << ")";
        std::cout << "\n";
        if (psi)
          std::cout << "psi(" << psi->m << ") max=" << psi->max_intersection << " bound=" << psi->bound
                    << (psi->exact ? " exact" : " sampled") << "\n";
    }
  });

  // harness
  auto* har_cmd = app.add_subcommand("harness", "counting report: base starts hit by Cover(1..k) against the bound");
  WordInput har_in;
  Output har_out;
  Pos har_k = 2;
  har_in.attach(har_cmd);
  har_out.attach(har_cmd, false);
  har_cmd->add_option("--k", har_k, "k")->default_val(2)->check(CLI::PositiveNumber);
  har_cmd->callback([&] {
    const Word z = har_in.read();
    const auto r = counting_harness(z, har_k);
    if (har_out.json) {
      print_json(harness_json(z, r));
    } else {
      std::cout << "h=" << r.h << " k=" << r.k << " base_count=" << r.base_count << " observed=" << r.observed << "\n"
                << "bound=" << r.bound << " lambda=" << r.lambda_hk << " theta=" << r.theta_hk << "\n"
                << "h0=" << r.h0 << " count_inequality_holds=" << (r.count_inequality ? "yes" : "no")
                << " bound_exceeds_observed=" << (r.bound_exceeds_observed ? "yes" : "no") << "\n";
    }
  });

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run the property suites described by a TOML config");
  std::string config_path, report_path;
  ver_cmd->add_option("--config", config_path, "TOML config")->required();
  ver_cmd->add_option("--report", report_path, "write the JSON report here (default: stdout)");
  ver_cmd->callback([&] {
    SuiteConfig cfg;
    try {
      cfg = parse_config(WordInput::slurp(config_path));
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
    const auto report = run_suites(cfg);
    const std::string body = report_json(report).dump(2) + "\n";
    if (report_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream(report_path) << body;
      for (const auto& s : report.suites)
        std::cerr << (s.failures.empty() ? "pass " : "FAIL ") << s.name << " (" << s.instances_run << ")\n";
    }
    if (!report.passed()) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const consistency_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
