#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvpa/acceptance.hpp"
#include "cvpa/format.hpp"
#include "cvpa/graded_view.hpp"
#include "cvpa/quotient.hpp"
#include "cvpa/tca.hpp"

using namespace cvpa;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
  bool json = false;
  int max_degree = 4;
  std::string out;
  std::string file;
  std::string to = "1tca";
  std::string name;
};

json violation_json(const Violation& v) {
  return {{"module", v.module}, {"axiom", v.axiom}, {"tuple", v.tuple}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

json report_json(const CheckReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations()) vs.push_back(violation_json(v));
  return {{"passed", r.passed()}, {"checked", r.checked}, {"violations", vs}};
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

int finish(const Options& o, const std::string& command, const CheckReport& r, const std::string& summary = {}) {
  if (o.json) {
    json j = report_json(r);
    j["command"] = command;
    if (!summary.empty()) j["summary"] = summary;
    std::cout << j.dump(2) << "\n";
  } else {
    if (!summary.empty()) std::cout << summary << "\n";
    std::cout << format_report(r, 50) << "\n";
  }
  return r.passed() ? kPass : kFail;
}

CheckReport courant_checks(const CourantAlgebroid& x, const Exec& exec) {
  CheckReport r = check_courant(x, exec);
  r.merge(check_compat(x, exec));
  r.merge(check_annihilation(x, exec));
  r.sort();
  return r;
}

int check_courant_cmd(const Options& o, const Exec& exec) {
  const CourantAlgebroid x = to_courant(parse_file(o.file));
  return finish(o, "check courant", courant_checks(x, exec));
}

int check_tca_cmd(const Options& o, const Exec& exec) {
  const StructureFile f = parse_file(o.file);
  const OneTruncatedConformalAlgebra t = to_tca(f);
  CheckReport r = check_tca(t, exec);
  r.merge(check_leibniz_form(t, exec));
  if (auto extras = tca_extras(f)) r.merge(check_compat(t, extras->first, extras->second, exec));
  r.sort();
  return finish(o, "check 1tca", r);
}

int convert_cmd(const Options& o, const Exec& exec) {
  const StructureFile f = parse_file(o.file);
  if (o.to == "1tca") {
    const CourantAlgebroid x = to_courant(f);
    const OneTruncatedConformalAlgebra t = to_1tca(x, exec);
    emit_text(print(tca_file(t, &x.algebra, &x.action)), o.out);
  } else {
    const auto extras = tca_extras(f);
    if (!extras) throw ParseError(f.source, f.structure ? f.structure->line : 0, 0,
                                  "converting to courant needs mult, unit and action bindings");
    emit_text(print(courant_file(from_1tca(to_tca(f), extras->first, extras->second, exec))), o.out);
  }
  return kPass;
}

int build_cmd(const Options& o, const Exec& exec) {
  const CourantAlgebroid x = to_courant(parse_file(o.file));
  const QuotientSB q(x, o.max_degree, exec);
  StructureFile f = view_file(build_view(q, o.max_degree, exec));
  f.meta.emplace_back("cutoff", std::to_string(o.max_degree));
  emit_text(print(f), o.out);
  return kPass;
}

int roundtrip_cmd(const Options& o, const Exec& exec) {
  const CourantAlgebroid x = to_courant(parse_file(o.file));
  const RoundtripResult rt = roundtrip(x, o.max_degree, exec);
  return finish(o, "roundtrip", rt.report, rt.summary);
}

int extract_cmd(const Options& o, const Exec& exec) {
  const GradedVpaView v = to_view(parse_file(o.file));
  CheckReport r = check_view(v, exec);
  const CourantAlgebroid x = extract_courant(v);
  r.merge(courant_checks(x, exec));
  r.sort();
  if (!o.out.empty()) emit_text(print(courant_file(x)), o.out);
  else if (!o.json) std::cout << print(courant_file(x)) << "\n";
  return finish(o, "extract", r);
}

int selftest_cmd(const Options& o, const Exec& exec) {
  bool ok = true;
  json items = json::array();
  for (const auto& r : run_acceptance(exec)) {
    ok = ok && r.passed;
    if (o.json)
      items.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"seconds", r.seconds},
                       {"limit", r.limit}, {"detail", r.detail}});
    else
      std::cout << format_result(r) << std::endl;
  }
  if (o.json) std::cout << json{{"command", "selftest"}, {"passed", ok}, {"criteria", items}}.dump(2) << "\n";
  return ok ? kPass : kFail;
}

int examples_list_cmd() {
  for (const auto& n : example_names()) std::cout << n << "\n";
  return kPass;
}

int examples_emit_cmd(const Options& o) {
  StructureFile f = courant_file(example(o.name));
  f.meta.emplace_back("example", o.name);
  emit_text(print(f), o.out);
  return kPass;
}

int report_error(const Options& o, int code, const std::string& kind, const std::string& what,
                 const std::optional<ParseError>& pe = std::nullopt) {
  if (o.json) {
    json e = {{"kind", kind}, {"message", what}};
    if (pe) {
      e["source"] = pe->source();
      e["line"] = pe->line();
      e["column"] = pe->column();
      e["message"] = pe->message();
    }
    std::cout << json{{"passed", false}, {"error", e}}.dump(2) << "\n";
  } else {
    std::cerr << "cvpa: " << kind << ": " << what << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Courant algebroids and their vertex Poisson algebras, by exact structure constants"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable report");

  auto* check = app.add_subcommand("check", "Check the axioms of a structure file");
  check->require_subcommand(1);
  auto* check_c = check->add_subcommand("courant", "Courant algebroid axioms");
  auto* check_t = check->add_subcommand("1tca", "1-truncated conformal algebra axioms");
  for (auto* c : {check_c, check_t}) {
    c->add_option("FILE", o.file)->required()->check(CLI::ExistingFile);
    c->add_flag("--json", o.json);
  }

  auto* convert = app.add_subcommand("convert", "Convert between courant and 1tca files");
  convert->add_option("FILE", o.file)->required()->check(CLI::ExistingFile);
  convert->add_option("--to", o.to, "Target kind")->check(CLI::IsMember({"1tca", "courant"}));
  convert->add_option("--out", o.out, "Output file (default stdout)");

  auto* build = app.add_subcommand("build", "Build the graded quotient up to a degree and write it");
  build->add_option("FILE", o.file)->required()->check(CLI::ExistingFile);
  build->add_option("--max-degree", o.max_degree, "Top degree")->check(CLI::Range(1, 8));
  build->add_option("--out", o.out, "Output file (default stdout)");

  auto* rt = app.add_subcommand("roundtrip", "Rebuild a Courant algebroid from its quotient and compare");
  rt->add_option("FILE", o.file)->required()->check(CLI::ExistingFile);
  rt->add_option("--max-degree", o.max_degree, "Cutoff")->check(CLI::Range(1, 8));
  rt->add_flag("--json", o.json);

  auto* extract = app.add_subcommand("extract", "Extract and check the Courant algebroid of a graded-vpa file");
  extract->add_option("FILE", o.file)->required()->check(CLI::ExistingFile);
  extract->add_option("--out", o.out, "Write the extracted courant file here");
  extract->add_flag("--json", o.json);

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_flag("--json", o.json);

  auto* examples = app.add_subcommand("examples", "Built-in examples");
  examples->require_subcommand(1);
  auto* ex_list = examples->add_subcommand("list", "List example names");
  auto* ex_emit = examples->add_subcommand("emit", "Print an example as a courant file");
  ex_emit->add_option("NAME", o.name)->required();
  ex_emit->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const Exec exec = Exec::from_env();
  try {
    if (*check_c) return check_courant_cmd(o, exec);
    if (*check_t) return check_tca_cmd(o, exec);
    if (*convert) return convert_cmd(o, exec);
    if (*build) return build_cmd(o, exec);
    if (*rt) return roundtrip_cmd(o, exec);
    if (*extract) return extract_cmd(o, exec);
    if (*selftest) return selftest_cmd(o, exec);
    if (*ex_list) return examples_list_cmd();
    if (*ex_emit) return examples_emit_cmd(o);
  } catch (const ParseError& e) {
    return report_error(o, kUsage, "parse error", e.what(), e);
  } catch (const AxiomError& e) {
    if (o.json) {
      json j = report_json(e.report());
      j["error"] = {{"kind", "axiom"}, {"message", e.what()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "cvpa: " << e.what() << "\n" << format_report(e.report(), 50) << "\n";
    }
    return kFail;
  } catch (const CutoffError& e) {
    return report_error(o, kUsage, "cutoff", e.what());
  } catch (const std::invalid_argument& e) {
    return report_error(o, kUsage, "usage", e.what());
  } catch (const std::exception& e) {
    return report_error(o, kUsage, "error", e.what());
  }
  return kUsage;
}
