// Command-line front end.  Exit codes: 0 success (or isomorphic / embeds /
// valid / all suites passed), 1 negative verdict, 2 usage or input error.

#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "propcalc/classifier.hpp"
#include "propcalc/constructor.hpp"
#include "propcalc/dsl.hpp"
#include "propcalc/json_io.hpp"
#include "propcalc/print.hpp"
#include "propcalc/torsion_calculus.hpp"
#include "propcalc/verify.hpp"

#ifndef PROPCALC_FIXTURES_DIR
#define PROPCALC_FIXTURES_DIR "fixtures"
#endif

namespace {

using namespace propcalc;

enum class Format { Text, Json };

std::string read_argument(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1), std::ios::binary);
  if (!in) throw Error("cannot read " + arg.substr(1));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

ProPDescriptor load_descriptor(const std::string& arg) {
  const auto text = read_argument(arg);
  if (looks_like_json(text)) return descriptor_from_json(Json::parse(text)).normalized();
  return dsl::parse_descriptor(text);
}

TreePtr load_tree(const std::string& arg) {
  const auto text = read_argument(arg);
  if (looks_like_json(text)) {
    auto j = Json::parse(text);
    if (j.contains("tree")) j = j["tree"];
    return tree_from_json(j);
  }
  const auto d = dsl::parse_descriptor(text);
  return construct(d.torsion, d.prime);
}

std::string self_path() {
  char buf[4096];
  const auto n = readlink("/proc/self/exe", buf, sizeof buf - 1);
  return n > 0 ? std::string(buf, static_cast<std::size_t>(n)) : std::string();
}

Json relations_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string certificate_text(const IsoCertificate& c) {
  std::string out = std::string(c.verdict ? "isomorphic" : "not isomorphic") + " (" + c.rule + ")\n";
  for (const auto& e : c.evidence) out += "  " + e.name + ": " + e.left + " | " + e.right + "\n";
  return out;
}

std::string embedding_text(const EmbeddingResult& e) {
  if (!e.supported) return "not supported (bounded torsion in the target)\n";
  std::ostringstream os;
  os << "embeds\n";
  for (const auto& a : e.witness.assignments)
    os << "  factor C(p," << a.demand.exponent << ") #" << a.demand.copy << " of layer " << a.demand.source
       << " -> C(p," << a.target.exponent << ") #" << a.target.copy << "\n";
  for (std::size_t k = 0; k < e.witness.free_chains.size(); ++k) {
    os << "  free generator " << k << " ->";
    for (const auto& s : e.witness.free_chains[k]) os << " C(p," << s.exponent << ")#" << s.copy;
    os << " ...\n";
  }
  if (!e.witness.complete) os << "  (witness truncated)\n";
  return os.str();
}

struct Cli {
  Format format = Format::Text;
  int status = 0;

  void emit(const Json& j, const std::string& text) {
    if (format == Format::Json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculator for countably based abelian pro-p groups"};
  app.require_subcommand(1);
  Cli cli;
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  std::string a_arg, b_arg;
  auto* normalize = add("normalize", "Print the canonical form of a descriptor");
  normalize->add_option("D", a_arg, "Descriptor text, JSON, or @file")->required();

  auto* validate_cmd = add("validate", "Check the torsion-sequence conditions");
  validate_cmd->add_option("D", a_arg, "Descriptor text, JSON, or @file")->required();

  auto* dual_cmd = add("dual", "Pontryagin dual as a discrete descriptor");
  dual_cmd->add_option("D", a_arg, "Descriptor")->required();

  std::string at_text;
  auto* series = add("series", "Torsion series data at an ordinal");
  series->add_option("D", a_arg, "Descriptor")->required();
  series->add_option("--at", at_text, "Ordinal in Cantor normal form, e.g. w*1+2")->required();

  auto* type_cmd = add("type", "Torsion type");
  type_cmd->add_option("D", a_arg, "Descriptor")->required();

  bool topological = false, abstract_mode = false;
  auto* iso = add("iso", "Decide isomorphism (exit 0 iso, 1 not iso)");
  iso->add_option("A", a_arg, "First descriptor")->required();
  iso->add_option("B", b_arg, "Second descriptor")->required();
  auto* topo_flag = iso->add_flag("--topological", topological, "Topological isomorphism");
  auto* abs_flag = iso->add_flag("--abstract", abstract_mode, "Abstract isomorphism");
  topo_flag->excludes(abs_flag);

  std::size_t demand_limit = 32;
  auto* embed = add("embed", "Closed embedding witness of A into B (exit 0 embeds, 1 not supported)");
  embed->add_option("A", a_arg, "Subgroup descriptor")->required();
  embed->add_option("B", b_arg, "Target descriptor")->required();
  embed->add_option("--demands", demand_limit, "Number of cyclic demands in the witness")->capture_default_str();

  bool emit_tree = false;
  auto* construct_cmd = add("construct", "Build a presentation tree for a torsion sequence");
  construct_cmd->add_option("S", a_arg, "Descriptor whose torsion sequence is realized")->required();
  construct_cmd->add_flag("--emit-tree", emit_tree, "Print the tree as JSON");

  unsigned level = 1;
  std::uint64_t cap = 1;
  auto* materialize_cmd = add("materialize", "Finite quotient of a tree at a level");
  materialize_cmd->add_option("TREE", a_arg, "Tree JSON (or a descriptor, constructed first)")->required();
  materialize_cmd->add_option("--level", level, "Resolution level")->required()->check(CLI::Range(1u, 64u));
  materialize_cmd->add_option("--cap", cap, "Upper bound on each multiplicity")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{64}));

  std::size_t take = 3;
  bool cyclic_tops = false;
  auto* decompose = add("decompose", "Split into an infinite product");
  decompose->add_option("D", a_arg, "Descriptor")->required();
  decompose->add_option("--take", take, "Factors to list before the tail")->capture_default_str();
  decompose->add_flag("--cyclic-tops", cyclic_tops, "Factors with cyclic top layers");

  std::vector<std::string> suites;
  verify::Context ctx;
  ctx.fixtures_dir = PROPCALC_FIXTURES_DIR;
  auto* verify_cmd = add("verify", "Run oracle suites and print a pass/fail table (exit 1 on failure)");
  verify_cmd->add_option("--suite", suites, "Suite name or \"all\"")->required();
  verify_cmd->add_option("--fixtures", ctx.fixtures_dir, "Directory holding golden.txt")->capture_default_str();
  verify_cmd->add_option("--fuzz", ctx.fuzz_inputs, "Fuzz inputs for the cli suite")->capture_default_str();
  verify_cmd->add_option("--seed", ctx.seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cli.format = format_name == "json" ? Format::Json : Format::Text;

  try {
    if (*normalize) {
      const auto d = load_descriptor(a_arg);
      cli.emit(Json{{"command", "normalize"}, {"descriptor", to_json(d)}}, dsl::print(d) + "\n");
    } else if (*validate_cmd) {
      ValidityReport report;
      try {
        load_descriptor(a_arg);
      } catch (const dsl::DslError& e) {
        if (!e.report()) throw;
        report = *e.report();
      }
      cli.emit(Json{{"command", "validate"}, {"report", to_json(report)}}, report.to_string() + "\n");
      cli.status = report.valid() ? 0 : 1;
    } else if (*dual_cmd) {
      const auto e = dual(load_descriptor(a_arg));
      cli.emit(Json{{"command", "dual"}, {"discrete", to_json(e)}}, format_discrete(e) + "\n");
    } else if (*series) {
      const auto d = load_descriptor(a_arg);
      const auto alpha = Ordinal::parse(at_text);
      const auto data = torsion_series_data(d, alpha);
      cli.emit(Json{{"command", "series"},
                    {"at", alpha.to_string()},
                    {"layer", to_json(data.layer)},
                    {"remainder", to_json(data.remainder)}},
               "layer: " + format_layer(data.layer) + "\nremainder: " + dsl::print(data.remainder) + "\n");
    } else if (*type_cmd) {
      const auto t = torsion_type(load_descriptor(a_arg));
      cli.emit(Json{{"command", "type"}, {"torsion_type", t.to_string()}}, t.to_string() + "\n");
    } else if (*iso) {
      if (!topological && !abstract_mode) throw Error("iso needs --topological or --abstract");
      const auto a = load_descriptor(a_arg);
      const auto b = load_descriptor(b_arg);
      const auto cert = topological ? topologically_isomorphic(a, b) : abstractly_isomorphic(a, b);
      cli.emit(Json{{"command", "iso"},
                    {"mode", topological ? "topological" : "abstract"},
                    {"certificate", to_json(cert)}},
               certificate_text(cert));
      cli.status = cert.verdict ? 0 : 1;
    } else if (*embed) {
      const auto result = decide_embedding(load_descriptor(a_arg), load_descriptor(b_arg), demand_limit);
      cli.emit(Json{{"command", "embed"}, {"embedding", to_json(result)}}, embedding_text(result));
      cli.status = result.supported ? 0 : 1;
    } else if (*construct_cmd) {
      const auto d = load_descriptor(a_arg);
      const auto tree = construct(d.torsion, d.prime);
      const auto back = verify_construction_symbolic(*tree);
      const auto label = construction_case(*tree);
      if (emit_tree) {
        std::cout << Json{{"command", "construct"}, {"case", label}, {"tree", to_json(*tree)}}.dump(2) << "\n";
      } else {
        cli.emit(Json{{"command", "construct"},
                      {"case", label},
                      {"round_trip", back == d.torsion},
                      {"tree", to_json(*tree)}},
                 "case " + label + "\nround trip: " + format_sequence(back) + "\n");
      }
    } else if (*materialize_cmd) {
      const auto tree = load_tree(a_arg);
      const auto m = materialize(*tree, level, cap);
      cli.emit(Json{{"command", "materialize"},
                    {"level", level},
                    {"cap", cap},
                    {"generators", m.generator_count},
                    {"relations", relations_json(m.relations)},
                    {"group", to_json(m.group())}},
               m.group().to_string() + "\n");
    } else if (*decompose) {
      const auto d = load_descriptor(a_arg);
      const auto dec = decompose_infinite_product(d, cyclic_tops);
      const auto factors = dec.take(take);
      const auto tail = dec.tail(factors.size());
      Json list = Json::array();
      std::string text;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        list.push_back(to_json(factors[i]));
        text += "K" + std::to_string(i) + ": " + dsl::print(factors[i]) + "\n";
      }
      text += "rest: " + dsl::print(tail) + "\n";
      cli.emit(Json{{"command", "decompose"},
                    {"cyclic_tops", cyclic_tops},
                    {"factors", list},
                    {"tail", to_json(tail)}},
               text);
    } else if (*verify_cmd) {
      if (suites.size() == 1 && suites[0] == "all") suites = verify::suite_names();
      ctx.cli_path = self_path();
      std::vector<verify::SuiteResult> results;
      for (const auto& s : suites) results.push_back(verify::run_suite(s, ctx));
      Json list = Json::array();
      bool all = true;
      for (const auto& r : results) {
        all = all && r.passed;
        list.push_back(Json{{"name", r.name},
                            {"passed", r.passed},
                            {"checks", r.cases},
                            {"failure_count", r.failure_count},
                            {"seconds", r.seconds},
                            {"summary", r.summary},
                            {"failures", r.failures}});
      }
      cli.emit(Json{{"command", "verify"}, {"suites", list}}, verify::format_table(results));
      cli.status = all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return cli.status;
}
