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

#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "atg/decoder.hpp"
#include "atg/ghz.hpp"

namespace atg {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ATG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Work-stealing loop over [0, n). Each index is processed exactly once;
/// results must be written to per-index slots so the schedule cannot affect
/// the outcome. The first exception wins and is rethrown on the caller.
template <typename F>
void parallel_for(int n, int threads, F&& f) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

enum class PatternKind : std::uint8_t { Bell, Ghz };

struct SweepConfig {
  int T = 1;
  PatternKind pattern = PatternKind::Bell;
  int ghz_m = 2;
  std::vector<double> p_list;
  int trials = 1;
  std::uint64_t master_seed = 0;
  DecodeMode mode = DecodeMode::Exact;
  int exact_cap = 40;
  std::string out_path;
  bool json = false;     // CSV by default
  bool timing = false;   // wall time breaks byte-identical re-runs; opt-in
  int threads = 0;       // 0: ATG_THREADS env or hardware count
};

struct SweepRow {
  double p = 0;
  int trials = 0;
  std::int64_t fail_x = 0, fail_z = 0;
  std::int64_t cc_x_viol = 0, cc_z_viol = 0;
  std::int64_t total_resid = 0, max_resid = 0;
  std::int64_t total_max_cluster = 0, max_cluster = 0;
  double secs = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string pattern_name;
  double total_secs = 0;
};

namespace detail {

struct TrialStats {
  std::uint8_t fail_x = 0, fail_z = 0, ccx = 0, ccz = 0, cwx = 0, cwz = 0;
  std::int32_t resid = 0;
  std::int32_t max_cluster = 0;
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string format_mean(std::int64_t total, int trials) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", trials ? static_cast<double>(total) / trials : 0.0);
  return buf;
}

}  // namespace detail

/// Runs `trials` Monte Carlo trials per p value. Trial i of p-index s uses
/// seed trial_seed(master, s, i), so results are independent of the thread
/// schedule; aggregation is over integers only.
inline SweepResult run_sweep(const CssCode& code, const SweepConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("sweep: trials must be >= 1");
  for (double p : cfg.p_list)
    if (p < 0 || p > 1) throw ValidationError("sweep: p values must lie in [0,1]");
  if (cfg.p_list.empty()) throw ValidationError("sweep: empty p list");

  const AtgGraph g = build_atg(code, cfg.T);
  const LogicalBasis lb = logical_basis(code);
  StabilizerSet set;
  std::string pattern_name;
  if (cfg.pattern == PatternKind::Bell) {
    set = make_bell_set(g, lb);
    pattern_name = "bell";
  } else {
    set = make_ghz_set(g, ghz_layers(cfg.T, cfg.ghz_m), lb);
    pattern_name = "ghz" + std::to_string(cfg.ghz_m);
  }

  std::vector<double> ps = cfg.p_list;
  std::sort(ps.begin(), ps.end());
  const int threads = resolve_threads(cfg.threads);

  SweepResult result;
  result.pattern_name = pattern_name;
  const auto sweep_start = std::chrono::steady_clock::now();

  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    NoiseConfig noise{ps[pi], cfg.master_seed, NoiseModel::IidZ};
    TrialContext ctx = make_trial_context(g, set, lb, noise,
                                          DecoderConfig{cfg.mode, cfg.exact_cap}, pi);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<detail::TrialStats> stats(cfg.trials);
    parallel_for(cfg.trials, threads, [&](int i) {
      const TrialOutcome o = run_trial(ctx, static_cast<std::uint64_t>(i));
      detail::TrialStats& s = stats[i];
      for (auto f : o.logical_x_flags) s.fail_x |= f;
      for (const auto& pair : o.logical_zz_flags)
        for (auto f : pair) s.fail_z |= f;
      s.ccx = !o.cc_x_ok;
      s.ccz = !o.cc_z_ok;
      s.cwx = !o.cluster_weight_x_ok;
      s.cwz = !o.cluster_weight_z_ok;
      s.resid = o.residual_weight;
      s.max_cluster = std::max(o.x_clusters.max_size, o.z_clusters.max_size);
    });
    SweepRow row;
    row.p = ps[pi];
    row.trials = cfg.trials;
    for (const auto& s : stats) {
      row.fail_x += s.fail_x;
      row.fail_z += s.fail_z;
      row.cc_x_viol += s.ccx;
      row.cc_z_viol += s.ccz;
      row.total_resid += s.resid;
      row.max_resid = std::max<std::int64_t>(row.max_resid, s.resid);
      row.total_max_cluster += s.max_cluster;
      row.max_cluster = std::max<std::int64_t>(row.max_cluster, s.max_cluster);
      if (cfg.mode == DecodeMode::Exact && (s.cwx || s.cwz))
        throw InternalError("cluster-weight inequality violated in exact mode");
    }
    row.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.rows.push_back(row);
  }
  result.total_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - sweep_start).count();
  return result;
}

inline std::string sweep_csv_header() {
  return "code,n,k,d,ell,T,pattern,p,trials,fail_x,fail_z,cc_x_viol,cc_z_viol,"
         "mean_resid_w,max_resid_w,mean_cluster,max_cluster,seed,mode,secs";
}

/// CSV per the fixed column schema. The secs column is zero unless timing
/// was requested: wall time would break byte-identical re-runs, which the
/// output contract guarantees.
inline std::string sweep_to_csv(const CssCode& code, const SweepConfig& cfg,
                                const SweepResult& res) {
  std::ostringstream out;
  out << sweep_csv_header() << '\n';
  for (const auto& r : res.rows) {
    out << code.name << ',' << code.n << ',' << code.k << ','
        << (code.d ? std::to_string(*code.d) : "-1") << ',' << code.ell << ',' << cfg.T
        << ',' << res.pattern_name << ',' << detail::format_double(r.p) << ',' << r.trials
        << ',' << r.fail_x << ',' << r.fail_z << ',' << r.cc_x_viol << ',' << r.cc_z_viol
        << ',' << detail::format_mean(r.total_resid, r.trials) << ',' << r.max_resid << ','
        << detail::format_mean(r.total_max_cluster, r.trials) << ',' << r.max_cluster
        << ',' << cfg.master_seed << ','
        << (cfg.mode == DecodeMode::Exact ? "exact" : "heuristic") << ','
        << (cfg.timing ? detail::format_double(r.secs) : "0") << '\n';
  }
  return out.str();
}

/// Atomic emission: write to a temp file in the target directory, then
/// rename over the destination.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open for writing: " + tmp.string());
    f << content;
    if (!f) throw ValidationError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw ValidationError("rename failed for " + path + ": " + ec.message());
}

}  // namespace atg
