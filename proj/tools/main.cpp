#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kovan/analysis.hpp"
#include "report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int fail(const std::string& kind, const std::string& message) {
  std::cerr << "kovan: " << kind << ": " << message << "\n";
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kovalevskaya exponent and Laurent series analysis of quasi-homogeneous vector fields"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string json_out;
  std::optional<int> truncation;
  std::optional<unsigned long long> seed;
  std::optional<double> tolerance;
  std::optional<int> max_weight;

  struct Command {
    const char* name;
    const char* help;
    kovan::Stage stage;
  };
  const Command commands[] = {
      {"analyze", "full pipeline: weights, loci, series, parameter flow and degeneration", kovan::Stage::Analyze},
      {"loci", "indicial loci and Kovalevskaya exponents", kovan::Stage::Loci},
      {"series", "Laurent series at every exact locus", kovan::Stage::Series},
      {"flow", "parameter flow of G and predicted lower exponents", kovan::Stage::Flow},
      {"check", "weights, Euler identity, [F,G] and the zero-locus condition only", kovan::Stage::Check},
  };
  std::map<CLI::App*, kovan::Stage> stages;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("problem", problem_path, "problem file (.kov)")->required();
    sub->add_option("--truncation", truncation, "series truncation order N")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "random seed for the numeric searches");
    sub->add_option("--tolerance", tolerance, "numeric residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--json", json_out, "write the JSON report to this file ('-' for standard output)");
    sub->add_option("--max-weight", max_weight, "largest weight tried by weight inference")
        ->check(CLI::PositiveNumber);
    stages[sub] = c.stage;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  kovan::Stage stage = kovan::Stage::Analyze;
  for (auto* sub : app.get_subcommands()) stage = stages.at(sub);

  kovan::AnalysisReport rep;
  std::string format;
  try {
    const kovan::ProblemSpec problem = kovan::parse_problem(read_file(problem_path));
    format = problem.options.format;
    kovan::AnalysisOptions opts{truncation, seed, tolerance, max_weight};
    rep = kovan::analyze(problem, stage, opts);
  } catch (const kovan::ParseError& e) {
    return fail("parse error in " + problem_path, e.what());
  } catch (const kovan::AnalysisInputError& e) {
    return fail("input error", e.what());
  } catch (const std::exception& e) {
    return fail("input error", e.what());
  }

  try {
    const std::string json = kovan::report::json_text(rep);
    if (json_out == "-" || (json_out.empty() && format == "json")) {
      std::cout << json;
    } else {
      std::cout << kovan::report::text_summary(rep);
      if (!json_out.empty()) write_file(json_out, json);
    }
  } catch (const std::exception& e) {
    return fail("output error", e.what());
  }
  return rep.violations.empty() ? kExitOk : kExitViolation;
}
