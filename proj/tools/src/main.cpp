#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace torilang::cli;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

std::vector<long> parse_q_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InputError("not-an-integer", "--q", "'" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("unreadable-input", path, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois-module cohomology and depth-zero torus checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input, output, q_text;
  Options opt;
  bool json = false, pretty = false, no_timing = false;
  app.add_option("--input", input, "Input document (JSON); '-' reads stdin");
  app.add_option("--output", output, "Report destination (default stdout)");
  app.add_option("--seed", opt.seed, "Seed for random samples");
  app.add_option("--max-order", opt.max_order, "Largest group order in a sweep");
  app.add_option("--q", q_text, "Comma-separated residue field sizes, e.g. 2,3,5");
  app.add_option("--samples", opt.samples, "Random archimedean samples in a sweep");
  auto* json_flag = app.add_flag("--json", json, "Machine-readable report (default)");
  app.add_flag("--pretty", pretty, "Human-readable report")->excludes(json_flag);
  app.add_flag("--no-timing", no_timing, "Report timing_ms as 0 for byte-stable output");
  for (const auto& name : command_names()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  const auto t0 = std::chrono::steady_clock::now();
  Json report;
  try {
    if (app.count("--q")) {
      opt.q = parse_q_list(q_text);
      opt.q_given = true;
    }
    if (cmd == "sweep") {
      report = sweep(opt);
    } else {
      if (input.empty()) throw InputError("missing-input", "--input", cmd + " needs an input document");
      report = run_command(cmd, parse_input(read_input(input)), opt);
    }
  } catch (const InputError& e) {
    report = error_report(cmd, e.issues());
    std::cerr << "invalid input: " << e.what() << "\n";
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report["timing_ms"] = no_timing ? 0.0 : ms;

  const std::string text = pretty ? render_pretty(report) : report.dump() + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return kExitInvalid;
    }
    out << text;
  }
  if (report["verdict"] == "invalid") return kExitInvalid;
  return report_passed(report) ? kExitPass : kExitFail;
}
