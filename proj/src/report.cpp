#include "knm/report.hpp"

#include <iomanip>
#include <sstream>

namespace knm {

namespace {

using nlohmann::json;

std::string fmt(double x, int precision = 10) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

std::string fmt_complex(const Complex& z) {
  std::ostringstream out;
  out << std::setprecision(10) << z.real();
  if (z.imag() != 0.0) {
    out << (z.imag() < 0 ? " - " : " + ") << std::setprecision(10)
        << std::abs(z.imag()) << "i";
  }
  return out.str();
}

std::string fmt_exp(double x) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << x;
  return out.str();
}

std::string int_list(const std::vector<int>& v) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ",";
    out << v[i];
  }
  out << ")";
  return out.str();
}

json complex_to_json(const Complex& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

json model_to_json(const CouplingParams& p, int particles) {
  const SpectralParams sp = to_spectral(p);
  json alpha = json::array();
  for (int i = 0; i < p.alpha.size(); ++i) alpha.push_back(p.alpha[i]);
  json beta = json::array();
  for (int j = 0; j < p.beta.size(); ++j) beta.push_back(p.beta[j]);
  return json{{"n", p.n},          {"m", p.m},     {"particles", particles},
              {"t", p.t},          {"U", p.U},     {"mu", p.mu},
              {"eta", sp.eta},     {"omega", sp.omega},
              {"alpha", alpha},    {"beta", beta}};
}

json solution_to_json(const BaeSolution& sol) {
  json roots = json::array();
  for (const Complex& v : sol.roots) roots.push_back(complex_to_json(v));
  return json{{"roots", roots},
              {"energy", complex_to_json(sol.energy)},
              {"diagnostics",
               json{{"bae_residual", sol.diagnostics.bae_residual},
                    {"u_independence_gap", sol.diagnostics.u_independence_gap},
                    {"state_residual", sol.diagnostics.state_residual},
                    {"pole", sol.diagnostics.pole_flag}}},
              {"verdict", sol.valid ? "valid" : "spurious"},
              {"reason", sol.verdict_reason}};
}

json sector_result_to_json(const SectorSolveResult& result) {
  json solutions = json::array();
  for (const BaeSolution& sol : result.solutions) {
    solutions.push_back(solution_to_json(sol));
  }
  return json{{"l", result.sector.l},
              {"k", result.sector.k},
              {"r", result.sector.r()},
              {"expected", result.expected_valid},
              {"valid", result.valid_count()},
              {"complete", result.complete()},
              {"solutions", solutions}};
}

json match_to_json(const MatchReport& match) {
  return json{{"matched", match.matched},
              {"max_gap", match.max_gap},
              {"unmatched_ed", match.unmatched_ed},
              {"unmatched_bethe", match.unmatched_bethe},
              {"success", match.success}};
}

json bae_report_json(const RunConfig& cfg,
                     const std::vector<SectorSolveResult>& solved,
                     const std::vector<BaeEntry>& closed_form) {
  json sectors = json::array();
  for (const SectorSolveResult& result : solved) {
    sectors.push_back(sector_result_to_json(result));
  }
  for (const BaeEntry& entry : closed_form) {
    json sol = json{{"roots", json::array()},
                    {"energy", complex_to_json(Complex(entry.energy, 0.0))},
                    {"diagnostics",
                     json{{"bae_residual", 0.0},
                          {"u_independence_gap", 0.0},
                          {"state_residual", 0.0},
                          {"pole", false}}},
                    {"verdict", "valid"},
                    {"reason", ""}};
    sectors.push_back(json{{"l", json::array()},
                           {"k", json::array()},
                           {"sum_l", entry.sum_l},
                           {"sum_k", entry.sum_k},
                           {"r", entry.sum_l + entry.sum_k},
                           {"expected", 1},
                           {"valid", 1},
                           {"complete", true},
                           {"closed_form", true},
                           {"solutions", json::array({sol})}});
  }
  return json{{"model", model_to_json(cfg.model, cfg.particles)},
              {"sectors", sectors}};
}

std::string bae_report_table(const std::vector<SectorSolveResult>& solved,
                             const std::vector<BaeEntry>& closed_form) {
  std::ostringstream out;
  for (const SectorSolveResult& result : solved) {
    out << "sector l=" << int_list(result.sector.l)
        << " k=" << int_list(result.sector.k) << "  r=" << result.sector.r()
        << "  expected " << result.expected_valid << " valid, found "
        << result.valid_count()
        << (result.complete() ? "" : "  [incomplete]") << "\n";
    for (const BaeSolution& sol : result.solutions) {
      out << "  " << (sol.valid ? "valid   " : "spurious") << "  E = "
          << std::setw(16) << std::left << fmt_complex(sol.energy)
          << std::right << "  roots:";
      for (const Complex& v : sol.roots) out << " " << fmt_complex(v);
      out << "  [bae " << fmt_exp(sol.diagnostics.bae_residual) << ", u-gap "
          << fmt_exp(sol.diagnostics.u_independence_gap) << ", state "
          << fmt_exp(sol.diagnostics.state_residual) << "]";
      if (!sol.valid) out << "  (" << sol.verdict_reason << ")";
      out << "\n";
    }
  }
  for (const BaeEntry& entry : closed_form) {
    out << "sector group sum_l=" << entry.sum_l << " sum_k=" << entry.sum_k
        << "  r=" << (entry.sum_l + entry.sum_k)
        << "  root-free closed form\n";
    out << "  valid     E = " << fmt(entry.energy) << "\n";
  }
  return out.str();
}

json spectrum_report_json(const RunConfig& cfg, const SpectrumReport& report) {
  json ed = json::array();
  for (int i = 0; i < report.ed.size(); ++i) ed.push_back(report.ed[i]);
  json sectors = json::array();
  for (const SectorSolveResult& result : report.group_results) {
    sectors.push_back(sector_result_to_json(result));
  }
  json levels = json::array();
  for (const BaeEntry& entry : report.entries) {
    levels.push_back(json{{"sum_l", entry.sum_l},
                          {"sum_k", entry.sum_k},
                          {"energy", entry.energy},
                          {"degeneracy", entry.degeneracy},
                          {"closed_form", entry.closed_form}});
  }
  return json{{"model", model_to_json(cfg.model, cfg.particles)},
              {"ed", ed},
              {"sectors", sectors},
              {"levels", levels},
              {"complete", report.sectors_complete},
              {"matching", match_to_json(report.matching)}};
}

std::string spectrum_report_table(const SpectrumReport& report) {
  std::ostringstream out;
  out << "exact spectrum (" << report.ed.size() << " levels, ascending):\n";
  for (int i = 0; i < report.ed.size(); ++i) {
    out << "  " << std::setw(3) << (i + 1) << "  " << fmt(report.ed[i]) << "\n";
  }
  out << "\nroot-system levels (one per label group):\n";
  out << "  sum_l  sum_k  degeneracy  source       energy\n";
  for (const BaeEntry& entry : report.entries) {
    out << "  " << std::setw(5) << entry.sum_l << "  " << std::setw(5)
        << entry.sum_k << "  " << std::setw(10) << entry.degeneracy << "  "
        << (entry.closed_form ? "closed form" : "roots      ") << "  "
        << fmt(entry.energy) << "\n";
  }
  if (!report.sectors_complete) {
    out << "\nwarning: some sectors produced fewer solutions than expected\n";
  }
  out << "\n" << match_report_table(report.matching);
  return out.str();
}

std::string match_report_table(const MatchReport& match) {
  std::ostringstream out;
  out << "matching: " << match.matched << " paired, max gap "
      << fmt_exp(match.max_gap) << " -> "
      << (match.success ? "complete" : "INCOMPLETE") << "\n";
  for (double e : match.unmatched_ed) {
    out << "  unmatched exact level: " << fmt(e) << "\n";
  }
  for (double e : match.unmatched_bethe) {
    out << "  unmatched root-system level: " << fmt(e) << "\n";
  }
  return out.str();
}

json checks_to_json(const RunConfig& cfg, const std::vector<CheckLine>& checks) {
  json items = json::array();
  bool all_pass = true;
  for (const CheckLine& c : checks) {
    items.push_back(json{{"name", c.name},
                         {"value", c.value},
                         {"threshold", c.threshold},
                         {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  return json{{"model", model_to_json(cfg.model, cfg.particles)},
              {"checks", items},
              {"success", all_pass}};
}

std::string checks_to_table(const std::vector<CheckLine>& checks) {
  std::ostringstream out;
  size_t width = 0;
  for (const CheckLine& c : checks) width = std::max(width, c.name.size());
  for (const CheckLine& c : checks) {
    out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::setw(int(width))
        << std::left << c.name << std::right << "  "
        << fmt_exp(c.value) << "  (threshold " << fmt_exp(c.threshold) << ")\n";
  }
  return out.str();
}

}  // namespace knm
