#include "notezipf/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <iterator>
#include <tuple>

#include "notezipf/errors.hpp"
#include "notezipf/note_tokens.hpp"
#include "notezipf/smf.hpp"
#include "notezipf/text_tokens.hpp"

namespace notezipf::report {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> read_token_lines(std::span<const std::uint8_t> bytes) {
  std::vector<std::string> tokens;
  std::string_view all(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  while (!all.empty()) {
    const auto nl = all.find('\n');
    auto line = all.substr(0, nl);
    all = nl == std::string_view::npos ? std::string_view{} : all.substr(nl + 1);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    tokens.emplace_back(line);
  }
  return tokens;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  return out;
}

void write_json(const json& j, const fs::path& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json warnings_json(const std::vector<Warning>& warnings) {
  json arr = json::array();
  for (const auto& w : warnings) arr.push_back({{"code", w.code}, {"message", w.message}});
  return arr;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string_view residuals_name(simon::Residuals r) {
  return r == simon::Residuals::Log ? "log" : "linear";
}

void analyze_midi(AnalysisReport& report, std::span<const std::uint8_t> bytes) {
  const auto file = smf::parse_smf(bytes);
  const auto paired = smf::pair_notes(file.tracks);

  notes::TokenizeOptions topts;
  topts.min_ticks = report.options.min_ticks;
  if (report.options.grid_path) topts.grid = notes::DurationGrid::load(*report.options.grid_path);
  for (const auto& c : topts.grid.classes()) report.grid.push_back(c.ratio.str());

  const auto tokens = notes::tokenize(paired.notes, file.header.division, topts);
  report.table = stats::count_tokens(std::span<const notes::NoteToken>(tokens.tokens));

  auto& d = report.diagnostics;
  d["tracks"] = file.header.track_count;
  d["division"] = file.header.division;
  d["skipped_chunks"] = file.diagnostics.skipped_chunks;
  d["trailing_bytes"] = file.diagnostics.trailing_bytes;
  d["missing_tracks"] = file.diagnostics.missing_tracks;
  d["tracks_without_end"] = file.diagnostics.tracks_without_eot;
  d["note_ons"] = paired.diagnostics.note_ons;
  d["unmatched_note_ons"] = paired.diagnostics.unmatched_on;
  d["orphan_note_offs"] = paired.diagnostics.orphan_off;
  d["zero_length_notes"] = paired.diagnostics.zero_length;
  d["dropped_short_notes"] = tokens.dropped_short;
  d["clamped_durations"] = tokens.clamped;
  for (const auto& w : file.diagnostics.warnings) report.warnings.push_back({"SmfWarning", w});
}

}  // namespace

std::string_view to_string(InputKind kind) noexcept {
  switch (kind) {
    case InputKind::Auto: return "auto";
    case InputKind::Midi: return "midi";
    case InputKind::Text: return "text";
    case InputKind::Tokens: return "tokens";
  }
  return "auto";
}

InputKind parse_kind(std::string_view name) {
  for (auto k : {InputKind::Auto, InputKind::Midi, InputKind::Text, InputKind::Tokens}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown input kind '" + std::string(name) + "'");
}

InputKind detect_kind(std::span<const std::uint8_t> head) {
  static constexpr std::uint8_t kMagic[] = {'M', 'T', 'h', 'd'};
  if (head.size() >= 4 && std::equal(std::begin(kMagic), std::end(kMagic), head.begin())) {
    return InputKind::Midi;
  }
  return InputKind::Text;
}

void fill_statistics(AnalysisReport& report) {
  const auto& table = report.table;
  report.spectrum = stats::spectrum(table);
  try {
    simon::FitOptions fopts;
    fopts.residuals = report.options.residuals;
    fopts.dof_params = report.options.dof_params;
    report.fit = simon::fit_nu(table, fopts);
    if (report.fit->boundary_warning) {
      report.warnings.push_back({"BoundaryFit", "fitted nu lies at the edge of the search interval"});
    }
  } catch (const Error& e) {
    report.warnings.push_back({std::string(notezipf::to_string(e.code())), e.what()});
  }
  try {
    report.gamma = stats::fit_spectrum_gamma(report.spectrum, report.options.spectrum_n_max);
  } catch (const Error& e) {
    report.warnings.push_back({std::string(notezipf::to_string(e.code())), std::string("spectrum: ") + e.what()});
  }
  try {
    report.zipf_slope = stats::fit_rank_slope(table);
  } catch (const Error& e) {
    report.warnings.push_back({std::string(notezipf::to_string(e.code())), std::string("rank slope: ") + e.what()});
  }
}

AnalysisReport analyze(const std::string& path, const AnalyzeOptions& opts) {
  AnalysisReport report;
  report.path = path;
  report.options = opts;
  try {
    const auto bytes = read_bytes(path);
    report.kind = opts.kind == InputKind::Auto ? detect_kind(bytes) : opts.kind;
    switch (report.kind) {
      case InputKind::Midi:
        analyze_midi(report, bytes);
        break;
      case InputKind::Text: {
        const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        const auto words = text::tokenize_text(text);
        report.table = stats::count_tokens(std::span<const std::string>(words));
        break;
      }
      case InputKind::Tokens: {
        const auto labels = read_token_lines(bytes);
        report.table = stats::count_tokens(std::span<const std::string>(labels));
        break;
      }
      case InputKind::Auto:
        break;
    }
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
  fill_statistics(report);
  return report;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

json to_json(const simon::SimonFit& fit) {
  return {{"nu", fit.nu},       {"z", fit.z},
          {"n0", fit.n0},       {"a", fit.a},
          {"b", fit.b},         {"sse_log", fit.sse_log},
          {"chi2", fit.chi2},   {"dof", fit.dof},
          {"p_value", fit.p_value}, {"boundary_warning", fit.boundary_warning}};
}

json to_json(const AnalysisReport& report) {
  json j;
  j["source"] = {{"path", report.path}, {"kind", to_string(report.kind)}};
  json options = {{"kind", to_string(report.options.kind)},
                  {"residuals", residuals_name(report.options.residuals)},
                  {"dof_params", report.options.dof_params},
                  {"spectrum_n_max", report.options.spectrum_n_max}};
  if (report.kind == InputKind::Midi) {
    options["min_ticks"] = report.options.min_ticks;
    options["grid"] = report.options.grid_path ? json(*report.options.grid_path) : json("standard");
    options["grid_ratios"] = report.grid;
  }
  j["options"] = std::move(options);
  j["V"] = report.table.distinct();
  j["T"] = report.table.total();
  j["fit"] = report.fit ? to_json(*report.fit) : json(nullptr);
  j["spectrum_gamma"] = report.gamma ? json{{"gamma", report.gamma->gamma},
                                            {"std_error", report.gamma->std_error},
                                            {"n_max", report.gamma->n_max},
                                            {"points", report.gamma->points}}
                                     : json(nullptr);
  j["zipf_slope"] = report.zipf_slope ? json{{"z", report.zipf_slope->z},
                                             {"std_error", report.zipf_slope->std_error},
                                             {"r_lo", report.zipf_slope->r_lo},
                                             {"r_hi", report.zipf_slope->r_hi}}
                                      : json(nullptr);
  j["diagnostics"] = report.diagnostics;
  j["warnings"] = warnings_json(report.warnings);
  return j;
}

void write_ranks_csv(std::ostream& out, const stats::RankTable& table,
                     const std::optional<simon::SimonFit>& fit) {
  out << "rank,observed,predicted\n";
  const auto entries = table.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << i + 1 << ',' << entries[i].count << ',';
    if (fit) out << format_number(simon::predict_n(static_cast<double>(i + 1), *fit));
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const stats::OccurrenceSpectrum& spectrum) {
  out << "n,w\n";
  for (const auto& [n, w] : spectrum) out << n << ',' << w << '\n';
}

void write_analysis(const AnalysisReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  write_json(to_json(report), dir / "report.json");
  {
    auto out = open_out(dir / "ranks.csv");
    write_ranks_csv(out, report.table, report.fit);
  }
  auto out = open_out(dir / "spectrum.csv");
  write_spectrum_csv(out, report.spectrum);
}

SimulationRun run_simulation(const simon::SimConfig& config) {
  SimulationRun run;
  run.config = config;
  run.result = simon::simulate(config);
  run.table = stats::count_tokens(std::span<const simon::TokenId>(run.result.tokens));
  try {
    run.check = simon::verify_zipf(run.result);
  } catch (const Error& e) {
    run.warnings.push_back({std::string(notezipf::to_string(e.code())), e.what()});
  }
  return run;
}

json to_json(const SimulationRun& run) {
  json j;
  const bool constant = run.config.mode == simon::InnovationMode::Constant;
  j["config"] = {{"mode", constant ? "constant" : "sublinear"},
                 {constant ? "alpha" : "nu", run.config.rate},
                 {"steps", run.config.steps},
                 {"seed", run.config.seed},
                 {"rng", "xoshiro256** seeded by splitmix64"}};
  j["V"] = run.result.distinct;
  j["T"] = run.result.tokens.size();
  if (run.check) {
    j["verify"] = {{"gamma_hat", run.check->gamma_hat},
                   {"gamma_std_error", run.check->gamma_std_error},
                   {"gamma_n_max", run.check->gamma_n_max},
                   {"nu_hat", run.check->nu_hat},
                   {"z_hat", run.check->z_hat},
                   {"fit", to_json(run.check->fit)}};
  } else {
    j["verify"] = nullptr;
  }
  j["warnings"] = warnings_json(run.warnings);
  return j;
}

void write_simulation(const SimulationRun& run, const fs::path& dir, bool emit_tokens) {
  fs::create_directories(dir);
  write_json(to_json(run), dir / "report.json");
  {
    auto out = open_out(dir / "ranks.csv");
    write_ranks_csv(out, run.table,
                    run.check ? std::optional<simon::SimonFit>(run.check->fit) : std::nullopt);
  }
  {
    auto out = open_out(dir / "spectrum.csv");
    write_spectrum_csv(out, stats::spectrum(run.table));
  }
  if (emit_tokens) {
    auto out = open_out(dir / "tokens.txt");
    for (const auto id : run.result.tokens) out << id << '\n';
  }
}

Comparison compare(const std::vector<std::string>& paths, const AnalyzeOptions& opts) {
  std::vector<std::future<AnalysisReport>> jobs;
  jobs.reserve(paths.size());
  for (const auto& p : paths) jobs.push_back(std::async(std::launch::async, [&p, &opts] { return analyze(p, opts); }));

  Comparison cmp;
  std::vector<std::pair<std::size_t, AnalysisReport>> fitted;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      auto report = jobs[i].get();
      if (report.fit) {
        fitted.emplace_back(i, std::move(report));
      } else {
        const auto& w = report.warnings;
        const auto it = std::find_if(w.begin(), w.end(), [](const Warning& x) { return x.code != "SmfWarning"; });
        cmp.errors.push_back({paths[i], it != w.end() ? it->code : "NoFit",
                              it != w.end() ? it->message : "no fit produced"});
      }
    } catch (const Error& e) {
      cmp.errors.push_back({paths[i], std::string(notezipf::to_string(e.code())), e.what()});
    }
  }
  std::stable_sort(fitted.begin(), fitted.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.fit->nu, x.second.path, x.first) <
           std::tie(y.second.fit->nu, y.second.path, y.first);
  });
  for (auto& [_, report] : fitted) cmp.rows.push_back(std::move(report));
  return cmp;
}

json to_json(const Comparison& comparison) {
  json rows = json::array();
  for (const auto& r : comparison.rows) {
    rows.push_back({{"path", r.path},
                    {"kind", to_string(r.kind)},
                    {"V", r.table.distinct()},
                    {"T", r.table.total()},
                    {"fit", to_json(*r.fit)}});
  }
  json errors = json::array();
  for (const auto& e : comparison.errors) {
    errors.push_back({{"path", e.path}, {"code", e.code}, {"message", e.message}});
  }
  return {{"rows", std::move(rows)}, {"errors", std::move(errors)}};
}

void write_compare_csv(std::ostream& out, const Comparison& comparison) {
  out << "path,kind,V,T,nu,z,n0,a,b,chi2,dof,p_value\n";
  for (const auto& r : comparison.rows) {
    const auto& f = *r.fit;
    out << csv_field(r.path) << ',' << to_string(r.kind) << ',' << r.table.distinct() << ',' << r.table.total() << ','
        << format_number(f.nu) << ',' << format_number(f.z) << ',' << format_number(f.n0) << ','
        << format_number(f.a) << ',' << format_number(f.b) << ',' << format_number(f.chi2) << ','
        << f.dof << ',' << format_number(f.p_value) << '\n';
  }
}

void write_comparison(const Comparison& comparison, const fs::path& dir) {
  fs::create_directories(dir);
  write_json(to_json(comparison), dir / "compare.json");
  auto out = open_out(dir / "compare.csv");
  write_compare_csv(out, comparison);
}

}  // namespace notezipf::report
