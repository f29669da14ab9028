#include "catsl2/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "catsl2/diagram.hpp"
#include "catsl2/relations.hpp"

namespace catsl2 {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int N = 0;
  std::optional<int> k, weight;
  std::string format = "text";
};

GrassContext context_of(const Common& c) {
  if (c.N < 1) throw InputError(fmt::format("N must be positive, got {}", c.N));
  if (c.k && c.weight) throw InputError("give either --k or --weight, not both");
  if (c.k) {
    if (*c.k < 0 || *c.k > c.N) throw InputError(fmt::format("k must lie in [0, {}], got {}", c.N, *c.k));
    return GrassContext::make(c.N, *c.k);
  }
  if (c.weight) {
    if ((*c.weight + c.N) % 2 != 0 || *c.weight < -c.N || *c.weight > c.N)
      throw InputError(fmt::format("weight {} is not a weight of N = {} (need |n| <= N and n + N even)", *c.weight, c.N));
    return GrassContext::from_weight(c.N, *c.weight);
  }
  throw InputError("one of --k or --weight is required");
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

void add_N(CLI::App* cmd, Common& c) { cmd->add_option("--N", c.N, "Rank parameter N (default from CATSL2_N)")->envname("CATSL2_N")->required(); }

std::vector<std::string> split_suites(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string degree_text(const DegreeInfo& d) {
  switch (d.kind) {
    case DegreeInfo::Kind::AnyDegree:
      return "any (zero)";
    case DegreeInfo::Kind::Homogeneous:
      return std::to_string(d.degree);
    case DegreeInfo::Kind::Inhomogeneous:
      return "inhomogeneous";
  }
  return "?";
}

nlohmann::json degree_json(const DegreeInfo& d) {
  if (d.kind == DegreeInfo::Kind::Homogeneous) return d.degree;
  return nullptr;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic engine and relation checker for the equivariant flag-variety representation of categorified sl(2)", "catsl2"};
  app.require_subcommand(1);

  Common vc;
  std::string suites_arg;
  int threads = 0, max_N = 4;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the relation suites");
  add_N(verify, vc);
  verify->add_option("--suites", suites_arg, "Comma separated suite names (default: all)");
  verify->add_option("--threads", threads, "Worker threads (0: all cores)");
  verify->add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();
  verify->add_option("--max-N", max_N, "Largest accepted N")->capture_default_str();
  add_format(verify, vc);

  Common ec;
  std::string diagram_file, element_text;
  auto* eval = app.add_subcommand("eval", "Apply a diagram to an element");
  eval->add_option("--diagram", diagram_file, "Diagram file (.cat)")->required();
  eval->add_option("--element", element_text, "Element of the domain bimodule")->required();
  add_format(eval, ec);

  Common bc;
  std::string orient;
  int alpha = 0;
  auto* bubble = app.add_subcommand("bubble", "Closed formula for a dotted bubble of degree 2*alpha");
  add_N(bubble, bc);
  bubble->add_option("--k", bc.k, "Ring index k");
  bubble->add_option("--weight", bc.weight, "Weight n = 2k - N");
  bubble->add_option("--orient", orient, "cw or ccw")->required()->check(CLI::IsMember({"cw", "ccw"}));
  bubble->add_option("--alpha", alpha, "Degree parameter")->required();
  add_format(bubble, bc);

  Common sc;
  std::string family;
  int salpha = 0;
  auto* special = app.add_subcommand("special", "Special class X or Y");
  add_N(special, sc);
  special->add_option("--k", sc.k, "Ring index k");
  special->add_option("--weight", sc.weight, "Weight n = 2k - N");
  special->add_option("--family", family, "X or Y")->required()->check(CLI::IsMember({"X", "Y"}));
  special->add_option("--alpha", salpha, "Index")->required();
  add_format(special, sc);

  Common rc;
  std::string word_text, convention = "source";
  auto* rank = app.add_subcommand("rank", "Graded rank of the bimodule of a word");
  add_N(rank, rc);
  rank->add_option("--word", word_text, "Word in E and F, or 1")->required();
  rank->add_option("--weight", rc.weight, "Weight of the rightmost region")->required();
  rank->add_option("--convention", convention, "Shift convention for F")->check(CLI::IsMember({"source", "lower"}))->capture_default_str();
  add_format(rank, rc);

  app.failure_message(CLI::FailureMessage::help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      std::set<std::string> suites;
      for (const auto& s : split_suites(suites_arg)) {
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
          throw InputError(fmt::format("unknown suite '{}'; known suites: {}", s, fmt::join(suite_names(), ", ")));
        suites.insert(s);
      }
      if (vc.N < 1 || vc.N > max_N) throw InputError(fmt::format("N must be between 1 and {}, got {}", max_N, vc.N));
      SuiteOptions options;
      options.threads = static_cast<unsigned>(std::max(threads, 0));
      options.seed = seed;
      options.max_N = max_N;
      VerifyReport report = run_suite(vc.N, suites, options);
      if (vc.format == "json") {
        out << report.to_json().dump(2) << "\n";
      } else {
        out << report.to_text();
      }
      return report.ok() ? 0 : 1;
    }

    if (*eval) {
      std::ifstream in(diagram_file);
      if (!in) throw InputError(fmt::format("cannot read diagram file '{}'", diagram_file));
      std::stringstream buf;
      buf << in.rdbuf();
      DiagramAST ast;
      try {
        ast = parse_diagram(buf.str());
      } catch (const DiagramError& e) {
        throw InputError(fmt::format("{}:{}", diagram_file, e.what()) +
                         (e.expected().empty() ? "" : fmt::format(" (expected {}, found {})", e.expected(), e.actual())));
      }
      std::vector<std::string> warnings;
      BimMap f = compile_diagram(ast, &warnings);
      for (const auto& w : warnings) err << "warning: " << w << "\n";
      BimElement input;
      try {
        input = parse_element(element_text, f.domain());
      } catch (const DiagramError& e) {
        throw InputError(fmt::format("element:{}", e.what()) +
                         (e.expected().empty() ? "" : fmt::format(" (expected {}, found {})", e.expected(), e.actual())));
      }
      BimElement image = f(input);
      if (ec.format == "json") {
        nlohmann::json j{{"domain", f.domain().to_string()},
                         {"codomain", f.codomain().to_string()},
                         {"map_degree", f.declared_degree()},
                         {"input", input.to_string()},
                         {"input_degree", degree_json(input.degree())},
                         {"image", image.to_string()},
                         {"image_degree", degree_json(image.degree())}};
        out << j.dump(2) << "\n";
      } else {
        out << image.to_string() << "\n";
        out << fmt::format("domain {} -> codomain {}, map degree {}\n", f.domain().to_string(), f.codomain().to_string(),
                           f.declared_degree());
        out << fmt::format("input {} (degree {}), image degree {}\n", input.to_string(), degree_text(input.degree()),
                           degree_text(image.degree()));
      }
      return 0;
    }

    if (*bubble) {
      GrassContext ctx = context_of(bc);
      Polynomial v = bubble_value(ctx, orient == "cw" ? Orientation::Clockwise : Orientation::CounterClockwise, alpha);
      if (bc.format == "json") {
        out << nlohmann::json{{"N", ctx.N}, {"k", ctx.k}, {"n", ctx.n()}, {"orient", orient}, {"alpha", alpha}, {"value", v.to_string()}}.dump(2)
            << "\n";
      } else {
        out << v.to_string() << "\n";
      }
      return 0;
    }

    if (*special) {
      GrassContext ctx = context_of(sc);
      Polynomial v = special_class(ctx, family == "X" ? Family::X : Family::Y, salpha);
      if (sc.format == "json") {
        out << nlohmann::json{{"N", ctx.N}, {"k", ctx.k}, {"n", ctx.n()}, {"family", family}, {"alpha", salpha}, {"value", v.to_string()}}.dump(2)
            << "\n";
      } else {
        out << v.to_string() << "\n";
      }
      return 0;
    }

    if (*rank) {
      if (rc.N < 1) throw InputError(fmt::format("N must be positive, got {}", rc.N));
      SignedWord w;
      try {
        w = SignedWord::parse(word_text, *rc.weight);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (*rc.weight < -rc.N || *rc.weight > rc.N) throw InputError(fmt::format("weight {} is outside [-{}, {}]", *rc.weight, rc.N, rc.N));
      FlagPath p;
      try {
        p = compile_word(w, rc.N, convention == "source" ? ShiftConvention::SourceWeight : ShiftConvention::LowerRing);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      Laurent r = p.is_zero() ? Laurent() : graded_rank(p);
      std::string rs = r.is_zero() ? "0" : r.to_string();
      if (rc.format == "json") {
        out << nlohmann::json{{"N", rc.N}, {"word", w.letters_string()}, {"weight", *rc.weight}, {"path", p.is_zero() ? "zero" : p.to_string()}, {"rank", rs}}.dump(2)
            << "\n";
      } else {
        out << rs << "\n";
      }
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace catsl2
