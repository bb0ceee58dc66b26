#include "knm/cli.hpp"

#include "knm/report.hpp"
#include "knm/rng.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace knm {

namespace {

struct CommonOpts {
  std::string config_path;
  std::string format;
  long long seed = 0;
  std::string out;
  CLI::Option* format_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "path to the JSON run configuration")
      ->required();
  o.format_opt = cmd->add_option("--format", o.format, "output format")
                     ->check(CLI::IsMember({"table", "json"}));
  o.seed_opt = cmd->add_option("--seed", o.seed, "override the solver seed");
  o.out_opt = cmd->add_option("--out", o.out,
                              "write the report to this path instead of stdout");
}

RunConfig load_run_config(const CommonOpts& o) {
  RunConfig rc = load_config(o.config_path);
  if (o.format_opt->count() > 0) rc.output.format = o.format;
  if (o.seed_opt->count() > 0) rc.solver.seed = static_cast<std::uint64_t>(o.seed);
  if (o.out_opt->count() > 0) rc.output.path = o.out;
  return rc;
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.output.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.output.path);
  if (!out) throw ConfigError("cannot write output file: " + rc.output.path);
  out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw ConfigError("sector: \"" + token + "\" is not an integer");
    }
    if (used != token.size()) {
      throw ConfigError("sector: \"" + token + "\" is not an integer");
    }
    if (value < 0) throw ConfigError("sector: labels must be non-negative");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// "L1,..,L_{n-1};K1,..,K_{m-1}"; the part after ';' may be omitted.
SectorLabel parse_sector(const std::string& text, const RunConfig& rc) {
  const size_t semi = text.find(';');
  if (semi != std::string::npos && text.find(';', semi + 1) != std::string::npos) {
    throw ConfigError("sector: at most one ';' separator is allowed");
  }
  SectorLabel label;
  label.l = parse_int_list(semi == std::string::npos ? text : text.substr(0, semi));
  label.k = semi == std::string::npos ? std::vector<int>{}
                                      : parse_int_list(text.substr(semi + 1));
  const int nl = rc.model.n - 1, nk = rc.model.m - 1;
  if (static_cast<int>(label.l.size()) != nl) {
    throw ConfigError("unknown sector: expected " + std::to_string(nl) +
                      " labels before ';', got " + std::to_string(label.l.size()));
  }
  if (static_cast<int>(label.k.size()) != nk) {
    throw ConfigError("unknown sector: expected " + std::to_string(nk) +
                      " labels after ';', got " + std::to_string(label.k.size()));
  }
  if (label.r() > rc.particles) {
    throw ConfigError("unknown sector: total label " + std::to_string(label.r()) +
                      " exceeds the particle number " +
                      std::to_string(rc.particles));
  }
  return label;
}

// one representative label per (sum_l, sum_k) group, enumeration order
std::vector<SectorLabel> group_representatives(const RunConfig& rc) {
  std::vector<SectorLabel> reps;
  std::map<std::pair<int, int>, bool> seen;
  for (const SectorLabel& label :
       enumerate_sectors(rc.model.n, rc.model.m, rc.particles)) {
    if (seen.emplace(label.group(), true).second) reps.push_back(label);
  }
  return reps;
}

int cmd_bae(const RunConfig& rc, const std::optional<std::string>& sector_text,
            const std::optional<int>& r_filter) {
  std::vector<SectorLabel> targets;
  if (sector_text) {
    targets.push_back(parse_sector(*sector_text, rc));
  } else {
    targets = group_representatives(rc);
    if (r_filter) {
      if (*r_filter < 0 || *r_filter > rc.particles) {
        throw ConfigError("unknown sector: --r must lie in [0, particles]");
      }
      std::erase_if(targets,
                    [&](const SectorLabel& s) { return s.r() != *r_filter; });
    }
  }

  const ModelOperators ops = ModelOperators::build(rc.model, rc.particles);
  const BaeContext ctx = BaeContext::make(ops);

  std::vector<SectorSolveResult> solved;
  std::vector<BaeEntry> closed;
  for (const SectorLabel& label : targets) {
    if (label.r() == rc.particles) {
      BaeEntry entry;
      entry.sum_l = label.sum_l();
      entry.sum_k = label.sum_k();
      entry.energy = closed_form_energy(label, rc.model);
      entry.degeneracy =
          sector_degeneracy(rc.model.n, rc.model.m, entry.sum_l, entry.sum_k);
      entry.closed_form = true;
      closed.push_back(entry);
    } else {
      solved.push_back(solve_bae(label, ctx, rc.solver));
    }
  }

  for (const SectorSolveResult& result : solved) {
    if (!result.complete()) {
      std::cerr << "warning: sector " << result.sector.to_string() << " found "
                << result.valid_count() << " of " << result.expected_valid
                << " expected solutions\n";
    }
  }

  if (rc.output.format == "json") {
    emit(rc, bae_report_json(rc, solved, closed).dump(2) + "\n");
  } else {
    emit(rc, bae_report_table(solved, closed));
  }
  return 0;
}

int cmd_spectrum(const RunConfig& rc) {
  const ModelOperators ops = ModelOperators::build(rc.model, rc.particles);
  const SpectrumReport report = assemble_spectrum(ops, rc.solver);
  if (rc.output.format == "json") {
    emit(rc, spectrum_report_json(rc, report).dump(2) + "\n");
  } else {
    emit(rc, spectrum_report_table(report));
  }
  return report.matching.success && report.sectors_complete ? 0 : 1;
}

int cmd_match(const RunConfig& rc) {
  const ModelOperators ops = ModelOperators::build(rc.model, rc.particles);
  const SpectrumReport report = assemble_spectrum(ops, rc.solver);
  if (rc.output.format == "json") {
    nlohmann::json doc{{"model", model_to_json(rc.model, rc.particles)},
                       {"matching", match_to_json(report.matching)}};
    emit(rc, doc.dump(2) + "\n");
  } else {
    emit(rc, match_report_table(report.matching));
  }
  return report.matching.success ? 0 : 1;
}

// ---- verification suites ----

void run_algebra_suite(const RunConfig& rc, const ModelOperators& ops,
                       std::vector<CheckLine>& checks) {
  const double eta = ops.sp.eta;
  SplitMix64 rng(rc.solver.seed ^ 0x5bd1e995u);

  // Positive draws keep the denominators u + eta and v + eta away from zero
  // for any eta > 0; the difference u - v still needs a standoff from its
  // poles at 0 and -eta (and from +eta, where entries grow) so that absolute
  // residuals stay near machine zero.  The admissible set has positive
  // measure for every eta, so the rejection loop terminates.
  auto admissible_pair = [&](double separation, double pole_standoff) {
    while (true) {
      const double a = rng.uniform(0.2, 3.2);
      const double b = rng.uniform(0.2, 3.2);
      const double d = a - b;
      if (std::abs(d) < separation) continue;
      if (std::abs(d + eta) < pole_standoff || std::abs(d - eta) < pole_standoff) {
        continue;
      }
      return std::pair<Complex, Complex>(Complex(a, 0.0), Complex(b, 0.0));
    }
  };

  double ybe_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [u, v] = admissible_pair(0.5, std::max(0.5, eta / 4.0));
    ybe_worst = std::max(ybe_worst, ybe_residual(u, v, eta));
  }
  checks.push_back({"Yang-Baxter residual (100 samples)", ybe_worst, 1e-13,
                    ybe_worst < 1e-13});

  std::vector<std::pair<Complex, Complex>> pairs;
  for (int i = 0; i < 3; ++i) pairs.push_back(admissible_pair(0.5, 0.4));

  double rll = 0.0, rtt = 0.0, cross = 0.0, exch_ac = 0.0, exch_dc = 0.0,
         tau_comm = 0.0;
  for (const auto& [u, v] : pairs) {
    rll = std::max({rll, rll_residual(ops, LaxSide::a, u, v),
                    rll_residual(ops, LaxSide::b, u, v)});
    rtt = std::max(rtt, rtt_residual(ops, u, v));
    cross = std::max({cross, monodromy_crosscheck(ops, u),
                      monodromy_crosscheck(ops, v)});
    exch_ac = std::max(exch_ac, exchange_ac_residual(ops, u, v));
    exch_dc = std::max(exch_dc, exchange_dc_residual(ops, u, v));
    tau_comm = std::max(tau_comm, transfer_commutator_norm(ops, u, v));
  }
  checks.push_back({"Lax exchange residual", rll, 1e-10, rll < 1e-10});
  checks.push_back({"monodromy exchange residual", rtt, 1e-10, rtt < 1e-10});
  checks.push_back(
      {"monodromy closed form vs Lax product", cross, 1e-12, cross < 1e-12});
  checks.push_back({"A-C exchange relation", exch_ac, 1e-10, exch_ac < 1e-10});
  checks.push_back({"D-C exchange relation", exch_dc, 1e-10, exch_dc < 1e-10});
  checks.push_back({"transfer matrix commutativity", tau_comm, 1e-10,
                    tau_comm < 1e-10});

  const int N = ops.particles;
  const TransferCoefficients tc = transfer_coefficients(ops);
  const int dim = static_cast<int>(tc.c0.rows());
  const Matrix eye = Matrix::Identity(dim, dim);
  const double quad = (tc.c2 - eye).norm();
  checks.push_back(
      {"quadratic transfer coefficient = identity", quad, 1e-10, quad < 1e-10});
  const double lin = (tc.c1 - eta * double(N) * eye).norm();
  checks.push_back(
      {"linear transfer coefficient = eta*N", lin, 1e-10, lin < 1e-10});

  const double shift = eta * eta * double(N) * double(N) / 4.0 -
                       ops.sp.omega * ops.sp.omega + 1.0 / (eta * eta);
  const RealMatrix H = build_hamiltonian(ops.params, N);
  const double from_c0 =
      (ops.params.t * (tc.c0 - shift * eye) - H.cast<Complex>()).norm();
  checks.push_back({"Hamiltonian from constant transfer coefficient", from_c0,
                    1e-10, from_c0 < 1e-10});

  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  checks.push_back({"Hamiltonian symmetry", asym, 1e-12, asym < 1e-12});

  // polynomial form holds at a fourth point
  {
    const Complex u(1.7, 0.0);
    const Matrix tau_u = transfer_matrix(ops, u).block(N);
    const Matrix poly = tc.c0 + u * tc.c1 + u * u * tc.c2;
    const double rel =
        (tau_u - poly).norm() / std::max(1.0, poly.norm());
    checks.push_back({"transfer matrix is quadratic in u", rel, 1e-10,
                      rel < 1e-10});
  }

  double vac_worst = 0.0;
  for (const SectorLabel& label :
       enumerate_sectors(ops.params.n, ops.params.m, N)) {
    for (const Complex u : {Complex(0.53, 0.0), Complex(-1.37, 0.0)}) {
      const PseudovacuumResiduals res = pseudovacuum_residuals(ops, label, u);
      vac_worst = std::max({vac_worst, res.b_annihilation, res.d_eigenvalue,
                            res.a_eigenvalue});
    }
  }
  checks.push_back({"pseudovacuum conditions (all sectors)", vac_worst, 1e-12,
                    vac_worst < 1e-12});
}

void run_conserved_suite(const ModelOperators& ops,
                         std::vector<CheckLine>& checks) {
  const int N = ops.particles;
  const RealMatrix H = build_hamiltonian(ops.params, N);
  const RealMatrix Nop = build_number_operator(ops.params, N);
  const std::vector<RealMatrix> Q = build_conserved_Q(ops.params, N, ops.comp);

  // the conserved family: the complement number operators plus H and N
  const double count_gap =
      std::abs(double(Q.size() + 2) - double(ops.params.n + ops.params.m));
  checks.push_back({"conserved operator count = n+m", count_gap, 0.0,
                    count_gap == 0.0});

  double hq = 0.0, qq = 0.0;
  for (size_t i = 0; i < Q.size(); ++i) {
    hq = std::max(hq, commutator_norm(H, Q[i]));
    for (size_t j = 0; j < i; ++j) {
      qq = std::max(qq, commutator_norm(Q[i], Q[j]));
    }
  }
  checks.push_back({"[H, Q_j] norms", hq, 1e-10, hq < 1e-10});
  checks.push_back({"[Q_i, Q_j] norms", qq, 1e-10, qq < 1e-10});
  const double hn = commutator_norm(H, Nop);
  checks.push_back({"[H, N] norm", hn, 1e-10, hn < 1e-10});
}

void run_completeness_suite(const RunConfig& rc,
                            std::vector<CheckLine>& checks) {
  const int n = rc.model.n, m = rc.model.m, N = rc.particles;

  const CompletenessCount count = completeness_count(n, m, N);
  std::vector<long long> observed(N + 1, 0);
  long long degeneracy_sum_mismatch = 0;
  std::map<std::pair<int, int>, long long> group_sizes;
  for (const SectorLabel& label : enumerate_sectors(n, m, N)) {
    observed[label.r()] += 1;
    group_sizes[label.group()] += 1;
  }
  long long label_gap = 0;
  for (int r = 0; r <= N; ++r) {
    label_gap = std::max(label_gap,
                         std::abs(observed[r] - count.labels_per_r[r]));
  }
  checks.push_back({"label count per r matches the composition formula",
                    double(label_gap), 0.0, label_gap == 0});

  for (const auto& [group, size] : group_sizes) {
    const long long expected = sector_degeneracy(n, m, group.first, group.second);
    degeneracy_sum_mismatch =
        std::max(degeneracy_sum_mismatch, std::abs(size - expected));
  }
  checks.push_back({"group multiplicities match the product formula",
                    double(degeneracy_sum_mismatch), 0.0,
                    degeneracy_sum_mismatch == 0});

  const long long fixture_gap =
      std::abs(count.bethe_total - count.hilbert_dim);
  checks.push_back({"state count equals the space dimension",
                    double(fixture_gap), 0.0, fixture_gap == 0});

  long long sweep_gap = 0;
  for (int nn = 1; nn + 1 <= 7; ++nn) {
    for (int mm = 1; nn + mm <= 7; ++mm) {
      for (int NN = 1; NN <= 8; ++NN) {
        const CompletenessCount c = completeness_count(nn, mm, NN);
        sweep_gap = std::max(sweep_gap,
                             std::abs(c.bethe_total - c.hilbert_dim));
      }
    }
  }
  checks.push_back({"state count identity (all n+m <= 7, N <= 8)",
                    double(sweep_gap), 0.0, sweep_gap == 0});
}

int cmd_verify(const RunConfig& rc, const std::string& suite) {
  std::vector<CheckLine> checks;
  const bool all = suite == "all";
  if (all || suite == "algebra" || suite == "conserved") {
    const ModelOperators ops = ModelOperators::build(rc.model, rc.particles);
    if (all || suite == "algebra") run_algebra_suite(rc, ops, checks);
    if (all || suite == "conserved") run_conserved_suite(ops, checks);
  }
  if (all || suite == "completeness") run_completeness_suite(rc, checks);

  bool success = true;
  for (const CheckLine& c : checks) success = success && c.pass;

  if (rc.output.format == "json") {
    emit(rc, checks_to_json(rc, checks).dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "verification suite: " << suite << "\n";
    out << checks_to_table(checks);
    out << (success ? "all checks passed\n" : "SOME CHECKS FAILED\n");
    emit(rc, out.str());
  }
  return success ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"integrable multi-well boson tunneling models"};
  app.name("knm");
  app.require_subcommand(1);

  CommonOpts spectrum_opts, bae_opts, verify_opts, match_opts;
  std::string sector_text, suite = "all";
  int r_filter = -1;

  CLI::App* spectrum_cmd = app.add_subcommand(
      "spectrum", "diagonalize and solve every sector, then match");
  add_common_options(spectrum_cmd, spectrum_opts);

  CLI::App* bae_cmd =
      app.add_subcommand("bae", "solve the root systems sector by sector");
  add_common_options(bae_cmd, bae_opts);
  CLI::Option* sector_opt = bae_cmd->add_option(
      "--sector", sector_text, "single sector \"L1,..;K1,..\"");
  CLI::Option* r_opt =
      bae_cmd->add_option("--r", r_filter, "only sectors with this label total");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the verification checks");
  add_common_options(verify_cmd, verify_opts);
  verify_cmd->add_option("--suite", suite, "algebra, conserved, completeness, or all")
      ->check(CLI::IsMember({"algebra", "conserved", "completeness", "all"}));

  CLI::App* match_cmd = app.add_subcommand(
      "match", "compare the root-system spectrum against diagonalization");
  add_common_options(match_cmd, match_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum_cmd->parsed()) {
      return cmd_spectrum(load_run_config(spectrum_opts));
    }
    if (bae_cmd->parsed()) {
      std::optional<std::string> sector;
      if (sector_opt->count() > 0) sector = sector_text;
      std::optional<int> r;
      if (r_opt->count() > 0) r = r_filter;
      return cmd_bae(load_run_config(bae_opts), sector, r);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(load_run_config(verify_opts), suite);
    }
    if (match_cmd->parsed()) {
      return cmd_match(load_run_config(match_opts));
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // no subcommand parsed
}

}  // namespace knm
