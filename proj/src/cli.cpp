#include "skh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "skh/braid.hpp"
#include "skh/errors.hpp"
#include "skh/fixtures.hpp"
#include "skh/homology.hpp"
#include "skh/khovanov.hpp"
#include "skh/polynomial.hpp"

namespace skh::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Input errors exit with 1, broken invariants with 2.
bool is_input_error(const std::exception& e) {
  return dynamic_cast<const SyntaxError*>(&e) != nullptr || dynamic_cast<const ValidationError*>(&e) != nullptr ||
         dynamic_cast<const DomainError*>(&e) != nullptr;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const SyntaxError*>(&e)) return "syntax";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const ComplexInvalid*>(&e)) return "complex_invalid";
  if (dynamic_cast<const FaceCommutationError*>(&e)) return "face_commutation";
  if (dynamic_cast<const NotAChainMap*>(&e)) return "not_a_chain_map";
  if (dynamic_cast<const InconsistentBasis*>(&e)) return "inconsistent_basis";
  return "internal";
}

Outcome failure(const std::string& command, const std::exception& e, const Options& options) {
  Outcome out;
  out.exit_code = is_input_error(e) ? 1 : 2;
  out.error = "error: " + std::string(e.what()) + "\n";
  if (options.json) {
    Json j;
    j["command"] = command;
    j["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
    out.output = j.dump(2) + "\n";
  }
  return out;
}

SingularDiagram load_diagram(const std::string& input) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(input, ec)) return parse_pd(read_text_file(input));
  return parse_pd(input);
}

void guard(const SingularDiagram& d, const Options& options) {
  if (d.crossing_count() > options.max_crossings) {
    throw DomainError("diagram has " + std::to_string(d.crossing_count()) + " crossings, above --max-crossings " +
                      std::to_string(options.max_crossings));
  }
}

Json betti_json(const BettiTable& t) {
  Json out = Json::array();
  for (const auto& [b, dim] : t) out.push_back({{"i", b.i}, {"j", b.j}, {"dim", dim}});
  return out;
}

std::string bidegree_text(Bidegree b) { return "(" + std::to_string(b.i) + "," + std::to_string(b.j) + ")"; }

std::string betti_text(const BettiTable& t) {
  if (t.empty()) return "  (all groups vanish)\n";
  std::set<int> is, js;
  for (const auto& [b, dim] : t) {
    is.insert(b.i);
    js.insert(b.j);
  }
  const int lo = *is.begin(), hi = *is.rbegin();
  std::ostringstream s;
  auto cell = [&](const std::string& v) { s << std::string(v.size() < 5 ? 5 - v.size() : 1, ' ') << v; };
  s << "  j\\i";
  for (int i = lo; i <= hi; ++i) cell(std::to_string(i));
  s << "\n";
  for (auto j = js.rbegin(); j != js.rend(); ++j) {
    const std::string label = std::to_string(*j);
    s << "  " << label << std::string(label.size() < 3 ? 3 - label.size() : 1, ' ');
    for (int i = lo; i <= hi; ++i) {
      auto it = t.find({i, *j});
      cell(it == t.end() ? "." : std::to_string(it->second));
    }
    s << "\n";
  }
  return s.str();
}

Json counts_json(const SingularDiagram& d) {
  const CrossingCounts k = d.counts();
  return {{"n_plus", k.n_plus}, {"n_minus", k.n_minus}, {"double_points", k.singular}, {"free_loops", d.free_loops()}};
}

std::string counts_text(const SingularDiagram& d) {
  const CrossingCounts k = d.counts();
  return "crossings: n+ = " + std::to_string(k.n_plus) + ", n- = " + std::to_string(k.n_minus) +
         ", double points = " + std::to_string(k.singular) + "\n";
}

LaurentPoly jones_side(const SingularDiagram& d) {
  return d.counts().singular == 0 ? jones_state_sum(d) : vassiliev_derivative(d);
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed_ms(double ms) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(1);
  s << ms;
  return s.str();
}

// One line of a verify report. A failing check always carries a witness.
struct Check {
  Check(std::string s, std::string n) : suite(std::move(s)), name(std::move(n)) {}

  std::string suite;
  std::string name;
  bool pass = true;
  Json witness;
  std::string witness_text;
};

class Verifier {
 public:
  Verifier(const Corpus& corpus, const Options& options) : corpus_(corpus), options_(options) {}

  const BettiTable& homology(const Fixture& f) {
    auto it = cache_.find(f.entry.name);
    if (it != cache_.end()) return it->second;
    guard(f.diagram, options_);
    return cache_.emplace(f.entry.name, skh::betti(build_singular_complex(f.diagram))).first->second;
  }

  void invariance(std::vector<Check>& out) {
    for (const auto& f : corpus_.fixtures) {
      if (!f.entry.pair) continue;
      const Fixture* other = corpus_.find(*f.entry.pair);
      Check c{"invariance", f.entry.name + " ~" + std::string(move_name(*f.entry.move)) + " " + other->entry.name};
      run(c, [&] {
        const BettiTable& a = homology(f);
        const BettiTable& b = homology(*other);
        if (a == b) return;
        c.pass = false;
        std::set<Bidegree> all;
        for (const auto& [k, v] : a) all.insert(k);
        for (const auto& [k, v] : b) all.insert(k);
        for (Bidegree at : all) {
          const int x = a.contains(at) ? a.at(at) : 0;
          const int y = b.contains(at) ? b.at(at) : 0;
          if (x == y) continue;
          c.witness = {{"i", at.i}, {"j", at.j}, {"left", x}, {"right", y}};
          c.witness_text = "at " + bidegree_text(at) + ": " + std::to_string(x) + " vs " + std::to_string(y);
          break;
        }
      });
      out.push_back(std::move(c));
    }
  }

  void les(std::vector<Check>& out) {
    for (const auto& f : corpus_.fixtures) {
      for (int b : f.diagram.singular_crossings()) {
        Check c{"les", f.entry.name + " @" + std::to_string(b)};
        run(c, [&] {
          guard(f.diagram, options_);
          const LesReport report = les_check(f.diagram, b);
          if (report.holds()) return;
          c.pass = false;
          c.witness = Json::object();
          c.witness["euler_holds"] = report.euler_holds;
          Json rows = Json::array();
          std::ostringstream text;
          if (!report.euler_holds) text << "Euler characteristics disagree; ";
          for (const LesRow& r : report.failures()) {
            rows.push_back({{"i", r.at.i}, {"j", r.at.j}, {"kh", r.kh}, {"coker", r.coker}, {"ker_next", r.ker_next}});
            text << "at " << bidegree_text(r.at) << ": dim Kh = " << r.kh << " but coker + ker = " << r.coker << " + "
                 << r.ker_next << "; ";
          }
          c.witness["rows"] = rows;
          c.witness_text = text.str();
        });
        out.push_back(std::move(c));
      }
    }
  }

  void fi(std::vector<Check>& out) {
    for (const auto& f : corpus_.fixtures) {
      if (!has_fi_double_point(f.diagram)) continue;
      Check c{"fi", f.entry.name};
      run(c, [&] {
        const BettiTable& t = homology(f);
        if (!t.empty()) {
          c.pass = false;
          c.witness = {{"betti", betti_json(t)}};
          c.witness_text = "nonzero group at " + bidegree_text(t.begin()->first);
          return;
        }
        for (int b : f.diagram.singular_crossings()) {
          if (!is_isolated_double_point(f.diagram, b)) continue;
          const LesReport report = les_check(f.diagram, b);
          if (report.phi_isomorphism) continue;
          c.pass = false;
          c.witness = {{"crossing", b}, {"minus", betti_json(report.minus)}, {"plus", betti_json(report.plus)}};
          c.witness_text = "genus-1 map at crossing " + std::to_string(b) + " is not an isomorphism on homology";
          return;
        }
      });
      out.push_back(std::move(c));
    }
  }

  void conventions(std::vector<Check>& out) {
    for (const auto& f : corpus_.fixtures) {
      Check c{"conventions", f.entry.name};
      run(c, [&] {
        const LaurentPoly chi = euler_characteristic(homology(f));
        const LaurentPoly expected = jones_side(f.diagram);
        if (chi == expected) return;
        c.pass = false;
        c.witness = {{"euler", chi.to_string()}, {"jones", expected.to_string()}};
        c.witness_text = "Euler characteristic " + chi.to_string() + " but Jones side " + expected.to_string();
      });
      out.push_back(std::move(c));
    }
  }

 private:
  // Input problems fail the check; broken invariants propagate.
  void run(Check& c, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      if (!is_input_error(e)) throw;
      c.pass = false;
      c.witness = {{"error", e.what()}};
      c.witness_text = e.what();
    }
  }

  const Corpus& corpus_;
  const Options& options_;
  std::map<std::string, BettiTable> cache_;
};

}  // namespace

Outcome cmd_compute(const std::string& input, const Options& options) {
  try {
    const auto start = Clock::now();
    const SingularDiagram d = load_diagram(input);
    guard(d, options);
    const BigradedComplex complex = build_singular_complex(d);
    const BettiTable table = betti(complex);
    const LaurentPoly chi = euler_characteristic(table);
    const LaurentPoly expected = jones_side(d);
    const bool pass = chi == expected;
    const std::string check_name = d.counts().singular == 0 ? "euler_equals_jones" : "euler_equals_vassiliev_derivative";
    const double ms = elapsed_ms(start);

    Outcome out;
    out.exit_code = pass ? 0 : 2;
    if (options.json) {
      Json j;
      j["command"] = "compute";
      j["input"] = input;
      j["diagram"] = d.serialize();
      j["crossings"] = counts_json(d);
      j["betti"] = betti_json(table);
      j["euler_characteristic"] = chi.to_string();
      Json check = {{"name", check_name}, {"pass", pass}};
      if (!pass) check["witness"] = {{"euler", chi.to_string()}, {"expected", expected.to_string()}};
      j["checks"] = Json::array({check});
      if (options.timing) j["wall_time_ms"] = ms;
      out.output = j.dump(2) + "\n";
    } else {
      std::ostringstream s;
      s << "diagram: " << d.serialize() << "\n" << counts_text(d) << "Khovanov homology over F2:\n" << betti_text(table);
      s << "Euler characteristic: " << chi.to_string() << "\n";
      s << (d.counts().singular == 0 ? "Jones state sum:      " : "Vassiliev derivative: ") << expected.to_string() << "\n";
      s << "check " << check_name << ": " << (pass ? "pass" : "FAIL") << "\n";
      if (options.timing) s << "wall time: " << fixed_ms(ms) << " ms\n";
      out.output = s.str();
    }
    return out;
  } catch (const std::exception& e) {
    return failure("compute", e, options);
  }
}

Outcome cmd_jones(const std::string& input, const Options& options) {
  try {
    const SingularDiagram d = load_diagram(input);
    guard(d, options);
    const LaurentPoly jones = jones_side(d);
    std::optional<LaurentPoly> chi;
    if (options.both) chi = euler_characteristic(betti(build_singular_complex(d)));
    const char* label = d.counts().singular == 0 ? "jones" : "vassiliev_derivative";

    Outcome out;
    out.exit_code = (chi && *chi != jones) ? 2 : 0;
    if (options.json) {
      Json j;
      j["command"] = "jones";
      j["input"] = input;
      j["diagram"] = d.serialize();
      j[label] = jones.to_string();
      if (chi) {
        j["euler_characteristic"] = chi->to_string();
        j["equal"] = *chi == jones;
      }
      out.output = j.dump(2) + "\n";
    } else if (chi) {
      out.output = std::string(label) + ": " + jones.to_string() + "\neuler: " + chi->to_string() + "\n" +
                   (*chi == jones ? "equal\n" : "DIFFERENT\n");
    } else {
      out.output = jones.to_string() + "\n";
    }
    return out;
  } catch (const std::exception& e) {
    return failure("jones", e, options);
  }
}

Outcome cmd_verify(const std::string& suite, const Options& options) {
  static const std::vector<std::string> kSuites = {"invariance", "les", "fi", "conventions"};
  try {
    std::vector<std::string> suites;
    if (suite == "all") {
      suites = kSuites;
    } else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end()) {
      suites = {suite};
    } else {
      throw DomainError("unknown suite `" + suite + "` (expected invariance, les, fi, conventions or all)");
    }
    const auto start = Clock::now();
    const Corpus corpus = load_corpus(options.fixtures.empty() ? default_fixture_dir() : options.fixtures);
    Verifier verifier(corpus, options);
    std::vector<Check> checks;
    for (const auto& s : suites) {
      if (s == "invariance") verifier.invariance(checks);
      if (s == "les") verifier.les(checks);
      if (s == "fi") verifier.fi(checks);
      if (s == "conventions") verifier.conventions(checks);
    }
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
    const double ms = elapsed_ms(start);

    Outcome out;
    out.exit_code = failed == 0 ? 0 : 1;
    if (options.json) {
      Json j;
      j["command"] = "verify";
      j["suite"] = suite;
      Json list = Json::array();
      for (const auto& c : checks) {
        Json item = {{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}};
        if (!c.pass) item["witness"] = c.witness;
        list.push_back(std::move(item));
      }
      j["checks"] = list;
      j["passed"] = static_cast<std::int64_t>(checks.size()) - failed;
      j["failed"] = failed;
      if (options.timing) j["wall_time_ms"] = ms;
      out.output = j.dump(2) + "\n";
    } else {
      std::ostringstream s;
      for (const auto& c : checks) {
        s << (c.pass ? "PASS  " : "FAIL  ") << c.suite << "  " << c.name << "\n";
        if (!c.pass) s << "      " << c.witness_text << "\n";
      }
      s << checks.size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed\n";
      if (options.timing) s << "wall time: " << fixed_ms(ms) << " ms\n";
      out.output = s.str();
    }
    return out;
  } catch (const std::exception& e) {
    return failure("verify", e, options);
  }
}

Outcome cmd_braid(int strands, const std::string& word) {
  try {
    return {0, braid_closure(strands, parse_braid_word(word)).serialize() + "\n", ""};
  } catch (const std::exception& e) {
    return failure("braid", e, Options{});
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khovanov homology of singular links over F2"};
  app.require_subcommand(1);
  Options options;
  std::string fixtures;
  app.add_flag("--json", options.json, "Print a JSON report");
  app.add_option("--max-crossings", options.max_crossings, "Refuse diagrams with more crossings")->check(CLI::PositiveNumber);
  app.add_flag("--timing", options.timing, "Include wall time in the report");

  std::string input;
  auto* compute = app.add_subcommand("compute", "Betti table of a diagram (PD file or inline PD code)");
  compute->add_option("input", input)->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite over the fixture corpus");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember({"invariance", "les", "fi", "conventions", "all"}));
  verify->add_option("--fixtures", fixtures, "Fixture directory");

  auto* jones = app.add_subcommand("jones", "Jones polynomial, or its Vassiliev derivative for singular diagrams");
  jones->add_option("input", input)->required();
  jones->add_flag("--both", options.both, "Also print the Euler characteristic of homology");

  int strands = 0;
  std::string word;
  auto* braid = app.add_subcommand("braid", "PD code of a braid closure, e.g. `skh braid 2 \"1 1 t1\"`");
  braid->add_option("strands", strands)->required()->check(CLI::PositiveNumber);
  braid->add_option("word", word)->required();

  // Global flags are accepted after the subcommand too.
  for (auto* sub : {compute, verify, jones, braid}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  options.fixtures = fixtures;

  Outcome result;
  if (*compute) result = cmd_compute(input, options);
  if (*verify) result = cmd_verify(suite, options);
  if (*jones) result = cmd_jones(input, options);
  if (*braid) result = cmd_braid(strands, word);
  out << result.output;
  err << result.error;
  return result.exit_code;
}

}  // namespace skh::cli
