#include "notezipf/cli.hpp"

#include <CLI11.hpp>

#include "notezipf/errors.hpp"
#include "notezipf/report.hpp"

namespace notezipf::cli {

namespace {

struct AnalyzeFlags {
  std::string kind = "auto";
  std::uint64_t min_ticks = 0;
  std::string grid;
  std::string residuals = "log";
  std::size_t dof_params = 2;
  std::uint64_t spectrum_n_max = 50;
};

void add_analyze_flags(CLI::App& cmd, AnalyzeFlags& f) {
  cmd.add_option("--kind", f.kind, "Input kind")->check(CLI::IsMember({"auto", "midi", "text", "tokens"}));
  cmd.add_option("--min-ticks", f.min_ticks, "Drop notes shorter than this many ticks");
  cmd.add_option("--grid", f.grid, "Duration grid file, one rational per line")->check(CLI::ExistingFile);
  cmd.add_option("--residuals", f.residuals, "Fit residuals")->check(CLI::IsMember({"log", "linear"}));
  cmd.add_option("--dof-params", f.dof_params, "Parameters subtracted from V for chi-square dof");
  cmd.add_option("--spectrum-nmax", f.spectrum_n_max, "Upper n for the w(n) regression");
}

report::AnalyzeOptions to_options(const AnalyzeFlags& f) {
  report::AnalyzeOptions o;
  o.kind = report::parse_kind(f.kind);
  o.min_ticks = f.min_ticks;
  if (!f.grid.empty()) o.grid_path = f.grid;
  o.residuals = f.residuals == "linear" ? simon::Residuals::Linear : simon::Residuals::Log;
  o.dof_params = f.dof_params;
  o.spectrum_n_max = f.spectrum_n_max;
  return o;
}

void print_warnings(const std::vector<report::Warning>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning [" << w.code << "]: " << w.message << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zipf rank-frequency analysis of note and word corpora under Simon's model", "notezipf"};
  app.require_subcommand(1);

  std::string out_dir = ".";

  AnalyzeFlags analyze_flags;
  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Rank, fit and test one MIDI, text or token-stream file");
  analyze->add_option("file", input, "Input file")->required()->check(CLI::ExistingFile);
  add_analyze_flags(*analyze, analyze_flags);
  analyze->add_option("--out", out_dir, "Output directory");

  std::string mode = "constant";
  double alpha = 0.1;
  double nu = 0.5;
  std::uint64_t steps = 100000;
  std::uint64_t seed = 1;
  bool emit_tokens = false;
  auto* simulate = app.add_subcommand("simulate", "Generate a token stream with Simon's process");
  simulate->add_option("--mode", mode, "Innovation schedule")->check(CLI::IsMember({"constant", "sublinear"}));
  simulate->add_option("--alpha", alpha, "Constant innovation probability");
  simulate->add_option("--nu", nu, "Vocabulary growth exponent");
  simulate->add_option("--steps", steps, "Stream length T");
  simulate->add_option("--seed", seed, "Generator seed");
  simulate->add_flag("--emit-tokens", emit_tokens, "Also write tokens.txt");
  simulate->add_option("--out", out_dir, "Output directory");

  AnalyzeFlags compare_flags;
  std::vector<std::string> inputs;
  auto* compare = app.add_subcommand("compare", "Fit several files and order them by nu");
  compare->add_option("files", inputs, "Input files")->required()->expected(2, -1);
  add_analyze_flags(*compare, compare_flags);
  compare->add_option("--out", out_dir, "Output directory");

  std::vector<const char*> argv{"notezipf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (analyze->parsed()) {
      const auto report = report::analyze(input, to_options(analyze_flags));
      report::write_analysis(report, out_dir);
      print_warnings(report.warnings, err);
      out << input << ": V=" << report.table.distinct() << " T=" << report.table.total();
      if (report.fit) {
        out << " nu=" << report::format_number(report.fit->nu)
            << " p=" << report::format_number(report.fit->p_value);
      }
      out << '\n';
      return 0;
    }
    if (simulate->parsed()) {
      const auto config = mode == "constant" ? simon::SimConfig::constant(alpha, steps, seed)
                                             : simon::SimConfig::sublinear(nu, steps, seed);
      const auto run = report::run_simulation(config);
      report::write_simulation(run, out_dir, emit_tokens);
      print_warnings(run.warnings, err);
      out << "V=" << run.result.distinct << " T=" << run.result.tokens.size();
      if (run.check) {
        out << " gamma=" << report::format_number(run.check->gamma_hat)
            << " nu=" << report::format_number(run.check->nu_hat);
      }
      out << '\n';
      return 0;
    }
    const auto cmp = report::compare(inputs, to_options(compare_flags));
    report::write_comparison(cmp, out_dir);
    for (const auto& e : cmp.errors) err << "error [" << e.code << "]: " << e.message << '\n';
    for (const auto& r : cmp.rows) out << report::format_number(r.fit->nu) << '\t' << r.path << '\n';
    return cmp.rows.empty() ? 1 : 0;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace notezipf::cli
