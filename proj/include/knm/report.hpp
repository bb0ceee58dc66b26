#pragma once

// Rendering of solver and verification results as JSON documents with
// stable keys, or as human-readable tables.

#include "knm/config.hpp"
#include "knm/spectrum.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace knm {

nlohmann::json model_to_json(const CouplingParams& p, int particles);
nlohmann::json solution_to_json(const BaeSolution& sol);
nlohmann::json sector_result_to_json(const SectorSolveResult& result);
nlohmann::json match_to_json(const MatchReport& match);

// `bae` command: solved sectors plus closed-form (root-free) sectors.
nlohmann::json bae_report_json(const RunConfig& cfg,
                               const std::vector<SectorSolveResult>& solved,
                               const std::vector<BaeEntry>& closed_form);
std::string bae_report_table(const std::vector<SectorSolveResult>& solved,
                             const std::vector<BaeEntry>& closed_form);

// `spectrum` and `match` commands.
nlohmann::json spectrum_report_json(const RunConfig& cfg,
                                    const SpectrumReport& report);
std::string spectrum_report_table(const SpectrumReport& report);
std::string match_report_table(const MatchReport& match);

// `verify` command: one line per executed check.
struct CheckLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};
nlohmann::json checks_to_json(const RunConfig& cfg,
                              const std::vector<CheckLine>& checks);
std::string checks_to_table(const std::vector<CheckLine>& checks);

}  // namespace knm
