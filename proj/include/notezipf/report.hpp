#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "notezipf/freq_stats.hpp"
#include "notezipf/simon_fit.hpp"
#include "notezipf/simon_sim.hpp"

namespace notezipf::report {

enum class InputKind { Auto, Midi, Text, Tokens };

std::string_view to_string(InputKind kind) noexcept;
InputKind parse_kind(std::string_view name);

struct AnalyzeOptions {
  InputKind kind = InputKind::Auto;
  std::uint64_t min_ticks = 0;
  std::optional<std::string> grid_path;
  simon::Residuals residuals = simon::Residuals::Log;
  std::size_t dof_params = 2;
  std::uint64_t spectrum_n_max = 50;
};

struct Warning {
  std::string code;
  std::string message;
};

struct AnalysisReport {
  std::string path;
  InputKind kind = InputKind::Text;
  AnalyzeOptions options;
  std::vector<std::string> grid;  // ratios in use, MIDI input only
  stats::RankTable table;
  stats::OccurrenceSpectrum spectrum;
  std::optional<simon::SimonFit> fit;
  std::optional<stats::GammaEstimate> gamma;
  std::optional<stats::RankSlope> zipf_slope;
  std::map<std::string, std::uint64_t> diagnostics;
  std::vector<Warning> warnings;
};

/// "MThd" magic means MIDI, anything else is treated as text.
InputKind detect_kind(std::span<const std::uint8_t> head);

/// Parses, tokenizes, ranks and fits one file. Fit and estimator failures
/// become warnings; unreadable or undecodable input throws Error with the
/// path prefixed to the message.
AnalysisReport analyze(const std::string& path, const AnalyzeOptions& opts = {});

/// Statistics stage shared by every input kind.
void fill_statistics(AnalysisReport& report);

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double value);

nlohmann::json to_json(const simon::SimonFit& fit);
nlohmann::json to_json(const AnalysisReport& report);

/// rank,observed,predicted  (predicted left empty without a fit)
void write_ranks_csv(std::ostream& out, const stats::RankTable& table,
                     const std::optional<simon::SimonFit>& fit);
/// n,w
void write_spectrum_csv(std::ostream& out, const stats::OccurrenceSpectrum& spectrum);

/// report.json, ranks.csv and spectrum.csv in `dir` (created if needed).
void write_analysis(const AnalysisReport& report, const std::filesystem::path& dir);

struct SimulationRun {
  simon::SimConfig config;
  simon::SimResult result;
  stats::RankTable table;
  std::optional<simon::ZipfCheck> check;
  std::vector<Warning> warnings;
};

SimulationRun run_simulation(const simon::SimConfig& config);
nlohmann::json to_json(const SimulationRun& run);
/// report.json, ranks.csv, spectrum.csv and, if requested, tokens.txt.
void write_simulation(const SimulationRun& run, const std::filesystem::path& dir, bool emit_tokens);

struct FileError {
  std::string path;
  std::string code;
  std::string message;
};

struct Comparison {
  std::vector<AnalysisReport> rows;  // sorted by fitted nu
  std::vector<FileError> errors;
};

/// Analyzes every file (concurrently) and orders the fitted ones by nu;
/// files that fail to parse or fit are listed as errors.
Comparison compare(const std::vector<std::string>& paths, const AnalyzeOptions& opts = {});
nlohmann::json to_json(const Comparison& comparison);
/// path,kind,V,T,nu,z,n0,a,b,chi2,dof,p_value
void write_compare_csv(std::ostream& out, const Comparison& comparison);
/// compare.json and compare.csv in `dir`.
void write_comparison(const Comparison& comparison, const std::filesystem::path& dir);

}  // namespace notezipf::report
