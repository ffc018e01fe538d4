// Command-line surface for the engine: normal forms, divisibility, the A2
// conjugacy classification, Hecke expansions, Kazhdan-Lusztig polynomials,
// graded cohomology queries, identity-suite verification and the conjecture
// checks. Machine-readable JSON output for scripting.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "dlcoh/cohomology.hpp"
#include "dlcoh/parallel.hpp"

using namespace dlcoh;
using nlohmann::json;

namespace {

const CoxeterSystem& system_for(const std::string& type) {
  if (type.rfind("rank=", 0) == 0) {
    static std::map<std::string, std::unique_ptr<CoxeterSystem>> cache;
    auto it = cache.find(type);
    if (it == cache.end())
      it = cache
               .emplace(type, std::make_unique<CoxeterSystem>(
                                  CoxeterSystem::from_config(type)))
               .first;
    return *it->second;
  }
  std::string base = type.size() == 3 && type[0] == '2' ? type.substr(1) : type;
  return CoxeterSystem::preset(base);
}

int run_verify(const std::string& type, const std::string& suite_path,
               int threads, bool as_json) {
  const GroupType& gt = GroupType::get(type);
  std::string path = suite_path;
  if (path.empty()) {
    std::string lower = type;
    for (auto& ch : lower) ch = (char)tolower(ch);
    path = data_dir() + "/suites/" + lower + ".ids";
  }
  auto suite = load_suite(path);
  auto rep = verify_suite(gt, suite, threads);
  if (as_json) {
    json out{{"type", type},
             {"suite", path},
             {"passed", rep.passed},
             {"failed", rep.failed}};
    json fails = json::array();
    for (auto& r : rep.results)
      if (!r.pass) fails.push_back({{"rule", r.rule}, {"detail", r.detail}});
    out["failures"] = fails;
    std::cout << out.dump(2) << "\n";
  } else {
    printf("%s: %d/%zu instances passed\n", type.c_str(), rep.passed,
           suite.size());
    for (auto& r : rep.results)
      if (!r.pass) printf("  FAIL [%s] %s\n", r.rule.c_str(), r.detail.c_str());
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of Deligne-Lusztig cohomology in rank 2"};
  app.require_subcommand(1);

  std::string type = "A2", expr, expr2, char_name = "rho", suite, format = "text";
  int threads = 1;
  bool with_F = false, csv = false;

  auto add_type = [&](CLI::App* cmd) {
    cmd->add_option("--type", type,
                    "group type (A2 2A2 B2 2B2 G2 2G2, presets A1 A3 A1xA1, "
                    "or an inline rank=...;m(..)=..;names=.. config)");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: text|json");
  };

  auto* nf = app.add_subcommand("nf", "Garside normal form of a positive word");
  add_type(nf);
  nf->add_option("word", expr, "braid expression")->required();

  auto* divides = app.add_subcommand("divides", "left divisibility in B+");
  add_type(divides);
  divides->add_option("a", expr)->required();
  divides->add_option("b", expr2)->required();

  auto* cls = app.add_subcommand("classify-a2",
                                 "conjugacy class descriptor in type A2");
  cls->add_option("word", expr)->required();
  add_format(cls);

  auto* hecke = app.add_subcommand("hecke", "T-basis expansion of a completed "
                                            "braid expression");
  add_type(hecke);
  hecke->add_option("expr", expr)->required();

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomial P_{y,w}");
  add_type(kl);
  kl->add_option("y", expr, "reduced word, empty for the identity");
  kl->add_option("w", expr2, "reduced word");
  kl->add_flag("--csv", csv, "dump the whole table as CSV rows y,w,P");

  auto* smooth = app.add_subcommand("smooth", "rational smoothness of the "
                                              "closed cell of w");
  add_type(smooth);
  smooth->add_option("w", expr)->required();

  auto* trace = app.add_subcommand("trace", "character trace of a completed "
                                            "braid expression");
  add_type(trace);
  trace->add_option("expr", expr)->required();
  trace->add_option("--char", char_name, "character name (rho, sigma, ...)");
  trace->add_flag("--F", with_F, "twist the trace by F");

  auto* H = app.add_subcommand("H", "graded cohomology character H(expr)");
  add_type(H);
  H->add_option("expr", expr)->required();
  add_format(H);

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  add_type(verify);
  verify->add_option("--suite", suite, "suite file (default: shipped suite)");
  verify->add_option("--threads", threads, "worker threads (0 = all cores)");
  add_format(verify);

  auto* conj = app.add_subcommand("conj", "conjecture checks");
  std::string which, arg;
  conj->add_option("which", which, "a2 | Ahm1 | Bhm1")->required();
  conj->add_option("arg", arg, "braid word (a2, Bhm1) or unused (Ahm1)");
  add_type(conj);
  conj->add_option("--char", char_name, "character name for Ahm1/Bhm1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nf) {
      const auto& sys = system_for(type);
      printf("%s\n", parse_braid(sys, expr).str().c_str());
    } else if (*divides) {
      const auto& sys = system_for(type);
      bool d = left_divides(parse_braid(sys, expr), parse_braid(sys, expr2));
      printf("%s\n", d ? "yes" : "no");
      return d ? 0 : 1;
    } else if (*cls) {
      const auto& sys = CoxeterSystem::preset("A2");
      auto d = a2_classify(parse_braid(sys, expr));
      if (format == "json") {
        const char* kinds[] = {"power_of_s", "st", "staircase", "w0_s",
                               "w0_staircase"};
        json out{{"input", expr}, {"n", d.n}, {"kind", kinds[d.kind]},
                 {"params", d.params}, {"phi", d.phi}};
        std::cout << out.dump(2) << "\n";
      } else {
        printf("%s\n", d.str().c_str());
      }
    } else if (*hecke) {
      const auto& sys = system_for(type);
      printf("%s\n", eval_completed(parse_completed(sys, expr)).str().c_str());
    } else if (*kl) {
      const auto& sys = system_for(type);
      const KLTable& table = kl_table(sys);
      if (csv) {
        printf("y,w,P\n");
        for (size_t y = 0; y < sys.size(); y++)
          for (size_t w = 0; w < sys.size(); w++)
            if (sys.bruhat_leq({(int)y}, {(int)w}))
              printf("%s,%s,%s\n", sys.word_str({(int)y}).c_str(),
                     sys.word_str({(int)w}).c_str(),
                     table.P({(int)y}, {(int)w}).str().c_str());
      } else {
        WeylElt y = sys.from_string(expr), w = sys.from_string(expr2);
        printf("%s\n", table.P(y, w).str().c_str());
      }
    } else if (*smooth) {
      const auto& sys = system_for(type);
      WeylElt w = sys.from_string(expr);
      bool s = kl_table(sys).rationally_smooth(w);
      printf("%s\n", s ? "smooth" : "not rationally smooth");
      return s ? 0 : 1;
    } else if (*trace) {
      const CharSpec& spec = char_spec(type, char_name);
      HeckeElt h = eval_completed(parse_completed(*spec.sys, expr));
      printf("%s\n", char_trace(spec, h, with_F || spec.twisted).str().c_str());
    } else if (*H) {
      const GroupType& gt = GroupType::get(type);
      CompletedBraidElt c = parse_completed(*gt.sys, expr);
      auto v = gt.resolve_H(c);
      if (!v) {
        fprintf(stderr, "H(%s) is not determined by the tables and rules\n",
                expr.c_str());
        return 1;
      }
      if (format == "json") {
        json hv = json::object();
        for (auto& [sym, p] : v->v) hv[sym] = p.str();
        json out{{"input", expr},
                 {"type", type},
                 {"H", hv},
                 {"Id", id_component(c).str()},
                 {"St", st_component(c).str()}};
        std::cout << out.dump(2) << "\n";
      } else {
        printf("H  = %s\nId = %s\nSt = %s\n", v->str().c_str(),
               id_component(c).str().c_str(), st_component(c).str().c_str());
      }
    } else if (*verify) {
      return run_verify(type, suite, threads, format == "json");
    } else if (*conj) {
      if (which == "a2") {
        auto r = check_conjA2(parse_braid(CoxeterSystem::preset("A2"), arg));
        printf("%s: class %s\n  H          = %s\n  trace side = %s\n",
               r.pass ? "holds" : "FAILS", r.cls.str().c_str(),
               r.lhs.str().c_str(), r.rhs.str().c_str());
        return r.pass ? 0 : 1;
      } else if (which == "Ahm1") {
        int k = check_conjA_hm1(char_spec(type, char_name));
        printf("central character of T_pi is t^%d; multiplication identity "
               "verified on all T_w F\n", k);
      } else if (which == "Bhm1") {
        const CharSpec& spec = char_spec(type, char_name);
        Word w;
        for (char ch : arg)
          if (!isspace((unsigned char)ch))
            w.push_back((uint8_t)spec.sys->gen_index(ch));
        bool ok = check_conjB_hm1(spec, w);
        printf("trace(T_w^{-1} F) %s bar(trace(T_w F))\n",
               ok ? "==" : "!=");
        return ok ? 0 : 1;
      } else {
        fprintf(stderr, "unknown conjecture %s\n", which.c_str());
        return 2;
      }
    }
  } catch (const std::exception& ex) {
    fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}
