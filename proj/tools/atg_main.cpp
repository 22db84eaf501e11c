// Copyright 2026 The atgsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atg/cluster.hpp"
#include "atg/decoder.hpp"
#include "atg/ghz.hpp"
#include "atg/io.hpp"
#include "atg/mbqc.hpp"
#include "atg/sweep.hpp"
#include "atg/tableau.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

struct CommonOpts {
  std::string code_file;
  int T = 1;
  double p = 0.01;
  std::uint64_t seed = 0;
  int trials = 100;
  std::string mode = "exact";
  int exact_cap = 40;
  std::string out;
};

atg::DecodeMode parse_mode(const std::string& mode) {
  if (mode == "exact") return atg::DecodeMode::Exact;
  if (mode == "heuristic") return atg::DecodeMode::Heuristic;
  throw atg::ValidationError("mode must be 'exact' or 'heuristic'");
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  atg::write_file_atomic(out, content);
}

int run(int argc, char** argv) {
  CLI::App app{"Single-shot logical state preparation on alternating Tanner graph "
               "cluster states: builder, decoder, and Monte Carlo harness"};
  app.require_subcommand(1);

  CommonOpts o;
  int ghz_m = 2;
  std::vector<double> p_list;
  std::string format = "csv";
  bool timing = false;

  auto add_code = [&](CLI::App* cmd) {
    cmd->add_option("--code", o.code_file, "code JSON file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "validate a code file and print parameters");
  add_code(validate);

  CLI::App* build = app.add_subcommand("build", "build the layered cluster graph");
  add_code(build);
  build->add_option("--T", o.T, "number of repetition rounds")->required();
  build->add_option("--out", o.out, "output JSON path (stdout if omitted)");

  CLI::App* stabs = app.add_subcommand("stabilizers", "emit S0/S1 stabilizer elements");
  add_code(stabs);
  stabs->add_option("--T", o.T)->required();
  stabs->add_option("--m", ghz_m, "GHZ surface count (omit for the Bell pattern)");
  stabs->add_option("--out", o.out);
  bool stabs_ghz = false;
  stabs->add_flag("--ghz", stabs_ghz, "use the GHZ pattern");

  CLI::App* trial = app.add_subcommand("trial", "run one preparation trial, print JSON");
  add_code(trial);
  trial->add_option("--T", o.T)->required();
  trial->add_option("--p", o.p)->required();
  trial->add_option("--seed", o.seed);
  trial->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "heuristic"}));
  trial->add_option("--exact-cap", o.exact_cap);
  bool trial_ghz = false;
  trial->add_flag("--ghz", trial_ghz);
  trial->add_option("--m", ghz_m);
  trial->add_option("--out", o.out);

  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over noise rates");
  add_code(sweep);
  sweep->add_option("--T", o.T)->required();
  sweep->add_option("--p-list", p_list, "noise rates")->required()->delimiter(',');
  sweep->add_option("--trials", o.trials)->required();
  sweep->add_option("--seed", o.seed);
  sweep->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "heuristic"}));
  sweep->add_option("--exact-cap", o.exact_cap);
  std::string pattern = "bell";
  sweep->add_option("--pattern", pattern)->check(CLI::IsMember({"bell", "ghz"}));
  sweep->add_option("--m", ghz_m, "GHZ surface count");
  sweep->add_option("--out", o.out, "output path")->required();
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_flag("--timing", timing, "emit wall time (breaks byte-identical re-runs)");

  CLI::App* ghz = app.add_subcommand("ghz", "GHZ-pattern Monte Carlo sweep");
  add_code(ghz);
  ghz->add_option("--T", o.T)->required();
  ghz->add_option("--m", ghz_m)->required();
  ghz->add_option("--p", o.p)->required();
  ghz->add_option("--trials", o.trials)->required();
  ghz->add_option("--seed", o.seed);
  ghz->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "heuristic"}));
  ghz->add_option("--exact-cap", o.exact_cap);
  ghz->add_option("--out", o.out)->required();
  ghz->add_flag("--timing", timing);

  CLI::App* mbqc = app.add_subcommand("mbqc-check", "verify the foliation syndrome recurrence");
  add_code(mbqc);
  mbqc->add_option("--T", o.T)->required();
  mbqc->add_option("--trials", o.trials)->required();
  mbqc->add_option("--seed", o.seed);
  mbqc->add_option("--p", o.p);

  CLI::App* oracle = app.add_subcommand("oracle-check",
                                        "cross-check the frame decoder against the tableau");
  add_code(oracle);
  oracle->add_option("--T", o.T)->required();
  oracle->add_option("--p", o.p)->required();
  oracle->add_option("--trials", o.trials)->required();
  oracle->add_option("--seed", o.seed);
  bool oracle_ghz = false;
  oracle->add_flag("--ghz", oracle_ghz);
  oracle->add_option("--m", ghz_m);

  CLI::App* bounds = app.add_subcommand("bounds", "print the clustering threshold bounds");
  int bounds_ell = 0;
  bounds->add_option("--ell", bounds_ell, "LDPC locality parameter")->required();
  bounds->add_option("--code", o.code_file, "evaluate the failure bound for this code");
  bounds->add_option("--T", o.T);
  bounds->add_option("--p", o.p);

  CLI11_PARSE(app, argc, argv);

  if (*validate) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    std::printf("name:  %s\n[[n,k,d]] = [[%d,%d,%s]]\n", c.name.c_str(), c.n, c.k,
                c.d ? std::to_string(*c.d).c_str() : "?");
    std::printf("mx: %d  mz: %d  ell: %d\n", c.mx, c.mz, c.ell);
    return kExitOk;
  }

  if (*build) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    const atg::AtgGraph g = atg::build_atg(c, o.T);
    emit(o.out, atg::graph_to_json(g).dump(2) + "\n");
    return kExitOk;
  }

  if (*stabs) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    const atg::AtgGraph g = atg::build_atg(c, o.T);
    const atg::LogicalBasis lb = atg::logical_basis(c);
    const atg::StabilizerSet set =
        stabs_ghz ? atg::make_ghz_set(g, atg::ghz_layers(o.T, ghz_m), lb)
                  : atg::make_bell_set(g, lb);
    emit(o.out, atg::stabilizers_to_json(g, set).dump(2) + "\n");
    return kExitOk;
  }

  if (*trial) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    const atg::AtgGraph g = atg::build_atg(c, o.T);
    const atg::LogicalBasis lb = atg::logical_basis(c);
    const atg::StabilizerSet set =
        trial_ghz ? atg::make_ghz_set(g, atg::ghz_layers(o.T, ghz_m), lb)
                  : atg::make_bell_set(g, lb);
    const atg::TrialContext ctx = atg::make_trial_context(
        g, set, lb, {o.p, o.seed, atg::NoiseModel::IidZ},
        {parse_mode(o.mode), o.exact_cap});
    const atg::TrialOutcome out = atg::run_trial(ctx, 0);
    emit(o.out, atg::trial_to_json(out).dump(2) + "\n");
    return kExitOk;
  }

  if (*sweep || *ghz) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    atg::SweepConfig cfg;
    cfg.T = o.T;
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.mode = parse_mode(o.mode);
    cfg.exact_cap = o.exact_cap;
    cfg.timing = timing;
    if (*ghz) {
      cfg.pattern = atg::PatternKind::Ghz;
      cfg.ghz_m = ghz_m;
      cfg.p_list = {o.p};
    } else {
      cfg.pattern = pattern == "ghz" ? atg::PatternKind::Ghz : atg::PatternKind::Bell;
      cfg.ghz_m = ghz_m;
      cfg.p_list = p_list;
    }
    const atg::SweepResult res = atg::run_sweep(c, cfg);
    if (format == "json" && *sweep) {
      atg::json rows = atg::json::array();
      for (const auto& r : res.rows)
        rows.push_back({{"p", r.p},
                        {"trials", r.trials},
                        {"fail_x", r.fail_x},
                        {"fail_z", r.fail_z},
                        {"cc_x_viol", r.cc_x_viol},
                        {"cc_z_viol", r.cc_z_viol},
                        {"mean_resid_w", static_cast<double>(r.total_resid) / r.trials},
                        {"max_resid_w", r.max_resid},
                        {"mean_cluster", static_cast<double>(r.total_max_cluster) / r.trials},
                        {"max_cluster", r.max_cluster},
                        {"secs", cfg.timing ? r.secs : 0.0}});
      atg::write_file_atomic(o.out, rows.dump(2) + "\n");
    } else {
      atg::write_file_atomic(o.out, atg::sweep_to_csv(c, cfg, res));
    }
    std::fprintf(stderr, "wrote %s (%.2fs)\n", o.out.c_str(), res.total_secs);
    return kExitOk;
  }

  if (*mbqc) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    const atg::NoiseConfig cfg{o.p, o.seed, atg::NoiseModel::IidZ};
    int bad = 0;
    for (int t = 0; t < o.trials; ++t) {
      const atg::FoliatedRecord r = atg::sample_foliated(c, o.T, cfg, t);
      bad += !atg::verify_recurrence(c, r, r);
    }
    std::printf("recurrence: %d/%d runs ok\n", o.trials - bad, o.trials);
    if (bad) throw atg::InternalError("foliation recurrence failed");
    return kExitOk;
  }

  if (*oracle) {
    const atg::CssCode c = atg::parse_code_file(o.code_file);
    const atg::AtgGraph g = atg::build_atg(c, o.T);
    const atg::LogicalBasis lb = atg::logical_basis(c);
    const atg::StabilizerSet set =
        oracle_ghz ? atg::make_ghz_set(g, atg::ghz_layers(o.T, ghz_m), lb)
                   : atg::make_bell_set(g, lb);
    const atg::OracleReport r =
        atg::oracle_cross_check(g, set, lb, {o.p, o.seed, atg::NoiseModel::IidZ},
                                {atg::DecodeMode::Exact, atg::Tableau::kMaxQubits},
                                o.trials);
    std::printf("oracle: %d/%d trials matched\n", r.trials - r.mismatches, r.trials);
    if (r.mismatches) {
      std::printf("first mismatching trial index: %llu\n",
                  static_cast<unsigned long long>(r.bad_trials.front()));
      throw atg::InternalError("frame decoder disagrees with the tableau oracle");
    }
    return kExitOk;
  }

  if (*bounds) {
    const atg::ThresholdBounds b = atg::threshold_bounds(bounds_ell);
    std::printf("z = ell*(ell+1) = %d\n", b.z);
    std::printf("p0 = 1/%llu = %.3e\n", static_cast<unsigned long long>(b.p0_den), b.p0);
    std::printf("p1 = p2 = 1/%llu = %.3e\n", static_cast<unsigned long long>(b.p1_den),
                b.p1);
    std::printf("p* = %.3e\n", b.p_star);
    if (!o.code_file.empty()) {
      const atg::CssCode c = atg::parse_code_file(o.code_file);
      const atg::FailureBound f = atg::failure_bound(c, o.T, o.p, b);
      std::printf("failure bound at T=%d, p=%.3e (upper bound, often vacuous):\n", o.T,
                  o.p);
      std::printf("  cc span: %.3e (X) + %.3e (Z)\n", f.cc_x, f.cc_z);
      std::printf("  logical: %.3e (X) + %.3e (Z)\n", f.log_x, f.log_z);
      std::printf("  total:   %.3e\n", f.total);
      std::printf("  residual local stochastic rate: %.3e\n", f.residual_rate);
    }
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const atg::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const atg::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible configuration: %s\n", e.what());
    return kExitInfeasible;
  } catch (const atg::InternalError& e) {
    std::fprintf(stderr, "internal assertion failed: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
}
