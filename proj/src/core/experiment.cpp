// Copyright 2026 The extreme-chains Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>
#include <string>

#include "core/csv.hpp"
#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/hidden.hpp"
#include "core/kernels.hpp"
#include "core/limit_law.hpp"
#include "core/norming.hpp"
#include "core/tailchain.hpp"

namespace xc {
namespace {

using nlohmann::json;

constexpr std::uint64_t kTagEnvelopeActual = 0xf160;
constexpr std::uint64_t kTagEnvelopeChain = 0xf161;

const std::set<std::string> kKernels = {
    "gaussian_copula", "bev_logistic", "inverted_bev_logistic", "asymmetric_logistic",
    "inverted_max_stable", "exp_ar", "ht_mixture", "rootzen_smith", "arch_laplace"};
const std::set<std::string> kSchemes = {"ht_canonical", "husler_reiss", "density_decay",
                                        "negative_ht", "alternating_gaussian"};
const std::set<std::string> kModels = {"asymmetric_logistic", "ht_mixture", "rootzen_smith",
                                       "arch"};

void invalid(const std::string& msg) { fail(ErrorCategory::kValidation, "config: " + msg); }

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) invalid(std::string("missing '") + key + "'");
  return doc.at(key);
}

std::size_t count_or(const json& doc, const char* key, std::size_t fallback, std::size_t lo) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(lo)) {
    invalid(std::string("'") + key + "' must be an integer >= " + std::to_string(lo));
  }
  return v.get<std::size_t>();
}

double number(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number()) invalid(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? number(doc, key) : fallback;
}

std::vector<double> number_list(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_array() || v.empty()) invalid(std::string("'") + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) invalid(std::string("'") + key + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> number_list_or(const json& doc, const char* key, std::vector<double> fb) {
  return doc.contains(key) ? number_list(doc, key) : fb;
}

// {"id": ..., "params": {...}}
std::pair<std::string, json> ref(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_object() || !v.contains("id") || !v.at("id").is_string()) {
    invalid(std::string("'") + key + "' must be an object with a string 'id'");
  }
  json params = v.contains("params") ? v.at("params") : json::object();
  if (!params.is_object()) invalid(std::string("'") + key + ".params' must be an object");
  return {v.at("id").get<std::string>(), params};
}

void check_kernel_ref(const json& doc, const char* key) {
  const auto [id, params] = ref(doc, key);
  if (!kKernels.count(id)) fail(ErrorCategory::kUnsupported, "config: unknown kernel '" + id + "'");
  if (id == "ht_mixture") {
    check_kernel_ref(params, "first");
    check_kernel_ref(params, "second");
  }
}

void check_keys(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& item : doc.items()) {
    if (item.key() == "kind" || item.key() == "seed" || item.key() == "description") continue;
    if (!allowed.count(item.key())) invalid("unknown key '" + item.key() + "'");
  }
}

KernelPtr kernel_of(const json& doc, std::uint64_t seed) {
  const auto [id, params] = ref(doc, "kernel");
  return make_kernel(id, params, seed);
}

NormingScheme scheme_of(const json& doc, const KernelSpec* k) {
  if (doc.contains("scheme")) {
    const auto [id, params] = ref(doc, "scheme");
    return make_norming(id, params);
  }
  if (!k) invalid("missing 'scheme'");
  return default_scheme(*k);
}

LimitLaw limit_of(const json& doc, const char* key, const KernelSpec* k) {
  if (doc.contains(key)) {
    const auto [id, params] = ref(doc, key);
    return make_limit_law(id, params);
  }
  if (!k) invalid(std::string("missing '") + key + "'");
  return default_limit_law(*k);
}

ChangePointRule rule_of(const json& v) {
  if (!v.is_object() || !v.contains("kind") || !v.at("kind").is_string()) {
    invalid("'changepoint_rule' needs a string 'kind'");
  }
  ChangePointRule r;
  const std::string kind = v.at("kind").get<std::string>();
  if (kind == "ratio_threshold") {
    r.kind = ChangePointRule::Kind::kRatioThreshold;
  } else if (kind == "alternating_ratio") {
    r.kind = ChangePointRule::Kind::kAlternatingRatio;
  } else if (kind == "sign_change") {
    r.kind = ChangePointRule::Kind::kSignChange;
  } else if (kind == "value_change") {
    r.kind = ChangePointRule::Kind::kValueChange;
  } else {
    invalid("unknown changepoint rule '" + kind + "'");
  }
  r.c = number_or(v, "c", 0.5);
  if (r.kind == ChangePointRule::Kind::kRatioThreshold ||
      r.kind == ChangePointRule::Kind::kAlternatingRatio) {
    if (!(r.c > 0.0 && r.c < 1.0)) invalid("changepoint rule: c must lie in (0, 1)");
  }
  return r;
}

HtMixtureHidden mixture_of(const json& p) {
  HtMixtureHidden m;
  m.lambda = number(p, "lambda");
  m.alpha1 = number(p, "alpha1");
  m.beta1 = number(p, "beta1");
  m.alpha2 = number(p, "alpha2");
  m.beta2 = number(p, "beta2");
  const auto g1 = ref(p, "g1");
  const auto g2 = ref(p, "g2");
  m.g1 = make_limit_law(g1.first, g1.second);
  m.g2 = make_limit_law(g2.first, g2.second);
  validate(m);
  return m;
}

class Emitter {
 public:
  Emitter(std::string dir, RunResult* result) : dir_(std::move(dir)), result_(result) {}

  void write(const std::string& name, const std::vector<std::string>& columns,
             const CsvWriter& csv) {
    write_text_file((std::filesystem::path(dir_) / name).string(), csv.text());
    result_->outputs.push_back({name, csv.rows(), columns});
  }

 private:
  std::string dir_;
  RunResult* result_;
};

const std::vector<std::string> kPathColumns = {"path_id", "t", "value", "regime",
                                               "is_changepoint"};
const std::vector<std::string> kEnvelopeColumns = {"source", "t", "q025", "mean", "q975"};

void add_envelope(CsvWriter& csv, const QuantileEnvelope& env, RunResult& result,
                  const std::string& what) {
  for (const auto& r : env.rows) {
    csv.cell(r.source).cell(r.t).cell(r.q025).cell(r.mean).cell(r.q975).end_row();
  }
  if (env.low_precision) result.warnings.push_back(what + ": fewer than 100 paths");
}

void run_simulate(const ExperimentConfig& cfg, const Exec& exec, Emitter& out, RunResult&) {
  const json& d = cfg.raw;
  const KernelPtr k = kernel_of(d, cfg.seed);
  const int horizon = static_cast<int>(count_or(d, "horizon", 10, 0));
  const std::size_t n = count_or(d, "n", 10000, 1);
  const InitSpec init = d.contains("x0") ? InitSpec::fixed(number(d, "x0"))
                                         : InitSpec::exceedance(number(d, "threshold"));
  const XPaths xp = conditional_forward_sim(*k, k->margin, init, horizon, n, exec);
  const bool detect = d.contains("changepoint_rule");
  const ChangePointRule rule = detect ? rule_of(d.at("changepoint_rule")) : ChangePointRule{};
  CsvWriter csv(kPathColumns);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> flags(horizon + 1, 0);
    if (detect) {
      for (int t : detect_changepoints(xp.path(i), rule)) flags[t] = 1;
    }
    for (int t = 0; t <= horizon; ++t) {
      csv.cell(i).cell(t).cell(xp.at(i, t)).cell("forward").cell(flags[t]).end_row();
    }
  }
  out.write("paths.csv", kPathColumns, csv);
}

void run_converge(const ExperimentConfig& cfg, const Exec& exec, Emitter& out, RunResult&) {
  const json& d = cfg.raw;
  const KernelPtr k = kernel_of(d, cfg.seed);
  const NormingScheme s = scheme_of(d, k.get());
  const LimitLaw law = limit_of(d, "limit", k.get());
  const int t = static_cast<int>(count_or(d, "t", 1, 1));
  const std::size_t n = count_or(d, "n", 100000, 1);
  const std::vector<double> grid = number_list(d, "v_grid");
  const double m = number_or(d, "m", 20.0);
  const ConvergenceTable table = convergence_table(*k, s, law, t, grid, n, exec, m);
  const std::vector<std::string> cols = {"kernel", "scheme", "t",       "v",      "n",
                                         "ks",     "atom_lo", "atom_hi", "seed"};
  CsvWriter csv(cols);
  for (const auto& r : table.rows) {
    csv.cell(table.kernel).cell(table.scheme).cell(table.t).cell(r.v).cell(r.n).cell(r.ks);
    csv.cell(r.atom_lo).cell(r.atom_hi).cell(std::to_string(r.seed)).end_row();
  }
  out.write("convergence.csv", cols, csv);

  const int t_rem = static_cast<int>(count_or(d, "remainder_t", 3, 1));
  const std::vector<double> xs = number_list_or(d, "remainder_x", {-5.0, 0.0, 5.0});
  const std::vector<std::string> rcols = {"t", "v", "x", "r_a", "r_b"};
  CsvWriter rem(rcols);
  for (int tt = 1; tt <= t_rem; ++tt) {
    for (double v : grid) {
      for (double x : xs) {
        const Remainders r = remainder_terms(s, tt, v, x);
        rem.cell(tt).cell(v).cell(x).cell(r.r_a).cell(r.r_b).end_row();
      }
    }
  }
  out.write("remainders.csv", rcols, rem);
}

void run_envelopes(const ExperimentConfig& cfg, const Exec& exec, Emitter& out,
                 RunResult& result) {
  const json& d = cfg.raw;
  const double x0 = number_or(d, "x0", 10.0);
  const int horizon = static_cast<int>(count_or(d, "horizon", 15, 1));
  const std::size_t n = count_or(d, "n", 10000, 1);
  struct Chain {
    const char* name;
    KernelPtr kernel;
    bool tail_chain;
  };
  const Chain chains[] = {
      {"i", make_bev_logistic(0.152), true},
      {"ii", make_inverted_bev_logistic(0.152), true},
      {"iii", make_exp_ar(0.8), false},
      {"iv", make_gaussian_copula(0.8, MarginalLaw::exponential()), true},
  };
  for (std::size_t c = 0; c < 4; ++c) {
    const Chain& ch = chains[c];
    const Exec ea{derive_seed(exec.seed, kTagEnvelopeActual, c), exec.workers};
    const XPaths xp =
        conditional_forward_sim(*ch.kernel, ch.kernel->margin, InitSpec::fixed(x0), horizon, n, ea);
    std::vector<double> actual(n * horizon);
    for (std::size_t i = 0; i < n; ++i) {
      for (int t = 1; t <= horizon; ++t) actual[i * horizon + t - 1] = xp.at(i, t);
    }
    CsvWriter csv(kEnvelopeColumns);
    const std::string what = std::string("chain ") + ch.name;
    add_envelope(csv, quantile_envelope(actual, n, horizon, "actual"), result, what);
    if (ch.tail_chain) {
      const NormingScheme s = default_scheme(*ch.kernel);
      const LimitLaw law = default_limit_law(*ch.kernel);
      const Exec ec{derive_seed(exec.seed, kTagEnvelopeChain, c), exec.workers};
      const TailChainPaths tc = simulate_for_scheme(s, law, horizon, n, ec);
      add_envelope(csv, quantile_envelope(reconstruct_paths(x0, s, tc), n, horizon, "tailchain"),
                   result, what);
    }
    out.write(std::string("envelopes_") + ch.name + ".csv", kEnvelopeColumns, csv);
  }
}

void write_hidden(const HiddenChainPaths& h, Emitter& out) {
  CsvWriter csv(kPathColumns);
  for (std::size_t i = 0; i < h.paths.size(); ++i) {
    const HiddenPath& p = h.paths[i];
    for (int t = 1; t <= h.horizon; ++t) {
      csv.cell(i).cell(t).cell(p.m[t - 1]).cell(h.regime_names.at(p.regime[t - 1]));
      csv.cell(static_cast<int>(p.changepoint[t - 1])).end_row();
    }
  }
  out.write("paths.csv", kPathColumns, csv);
}

void run_hidden(const ExperimentConfig& cfg, const Exec& exec, Emitter& out, RunResult&) {
  const json& d = cfg.raw;
  const auto [id, p] = ref(d, "model");
  const int horizon = static_cast<int>(count_or(d, "horizon", 15, 1));
  const std::size_t n = count_or(d, "n", 10000, 1);
  HiddenChainPaths h;
  if (id == "asymmetric_logistic") {
    h = hidden_asym_logistic(number(p, "phi1"), number(p, "phi2"), number(p, "nu"), horizon, n,
                             exec);
  } else if (id == "ht_mixture") {
    h = hidden_ht_mixture(mixture_of(p), horizon, n, exec);
  } else if (id == "rootzen_smith") {
    h = hidden_rootzen_smith(horizon, n, exec);
  } else {
    h = hidden_arch(number(p, "theta0"), number(p, "theta1"), horizon, n, exec);
  }
  write_hidden(h, out);
}

void run_negdep(const ExperimentConfig& cfg, const Exec& exec, Emitter& out, RunResult&) {
  const json& d = cfg.raw;
  const NormingScheme s = scheme_of(d, nullptr);
  const LimitLaw k_minus = limit_of(d, "k_minus", nullptr);
  const LimitLaw k_plus = d.contains("k_plus") ? limit_of(d, "k_plus", nullptr) : k_minus;
  const int horizon = static_cast<int>(count_or(d, "horizon", 10, 1));
  const std::size_t n = count_or(d, "n", 100000, 1);
  const TailChainPaths tc =
      simulate_negdep_tail_chain(update_functions(s), k_minus, k_plus, horizon, n, exec);
  CsvWriter csv(kPathColumns);
  for (std::size_t i = 0; i < n; ++i) {
    for (int t = 1; t <= horizon; ++t) {
      // Innovation law of the step producing M_t.
      const char* law = (t == 1 || (t - 1) % 2 == 0) ? "K-" : "K+";
      csv.cell(i).cell(t).cell(tc.at(i, t)).cell(law).cell(0).end_row();
    }
  }
  out.write("paths.csv", kPathColumns, csv);
}

void run_chi(const ExperimentConfig& cfg, const Exec& exec, Emitter& out, RunResult& result) {
  const json& d = cfg.raw;
  const KernelPtr k = kernel_of(d, cfg.seed);
  const int t = static_cast<int>(count_or(d, "t", 1, 1));
  const std::size_t n = count_or(d, "n", 1000000, 1);
  const std::vector<double> grid = number_list(d, "u_grid");
  const auto rows = chi_estimate(*k, k->margin, t, grid, n, exec);
  const std::vector<std::string> cols = {"u", "estimate", "n_exceed"};
  CsvWriter csv(cols);
  for (const auto& r : rows) {
    csv.cell(r.u).cell(r.estimate).cell(r.n_exceed).end_row();
    if (r.flagged) {
      result.warnings.push_back("chi: u=" + format_double(r.u) + " has only " +
                                std::to_string(r.n_exceed) + " exceedances (< 50)");
    }
  }
  out.write("chi.csv", cols, csv);
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) invalid("document must be a JSON object");
  ExperimentConfig cfg;
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) invalid("'kind' must be a string");
  cfg.kind = kind.get<std::string>();
  const json& seed = field(doc, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    invalid("'seed' must be a non-negative integer");
  }
  cfg.seed = seed.get<std::uint64_t>();
  cfg.raw = doc;
  if (doc.contains("description") && !doc.at("description").is_string()) {
    invalid("'description' must be a string");
  }

  if (cfg.kind == "simulate") {
    check_keys(doc, {"kernel", "x0", "threshold", "horizon", "n", "changepoint_rule"});
    check_kernel_ref(doc, "kernel");
    if (doc.contains("x0") == doc.contains("threshold")) {
      invalid("simulate needs exactly one of 'x0' and 'threshold'");
    }
    if (doc.contains("x0")) number(doc, "x0");
    if (doc.contains("threshold")) number(doc, "threshold");
    count_or(doc, "horizon", 10, 0);
    count_or(doc, "n", 10000, 1);
    if (doc.contains("changepoint_rule")) rule_of(doc.at("changepoint_rule"));
  } else if (cfg.kind == "converge") {
    check_keys(doc, {"kernel", "scheme", "limit", "t", "v_grid", "n", "m", "remainder_t",
                     "remainder_x"});
    check_kernel_ref(doc, "kernel");
    if (doc.contains("scheme")) scheme_of(doc, nullptr);
    if (doc.contains("limit")) limit_of(doc, "limit", nullptr);
    count_or(doc, "t", 1, 1);
    count_or(doc, "n", 100000, 1);
    count_or(doc, "remainder_t", 3, 1);
    const auto grid = number_list(doc, "v_grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(grid[i] > grid[i - 1])) invalid("'v_grid' must be strictly increasing");
    }
    if (!(number_or(doc, "m", 20.0) > 0.0)) invalid("'m' must be > 0");
    number_list_or(doc, "remainder_x", {0.0});
  } else if (cfg.kind == "figure1") {
    check_keys(doc, {"x0", "horizon", "n"});
    if (!(number_or(doc, "x0", 10.0) > 0.0)) invalid("'x0' must be > 0");
    count_or(doc, "horizon", 15, 1);
    count_or(doc, "n", 10000, 1);
  } else if (cfg.kind == "hidden") {
    check_keys(doc, {"model", "horizon", "n"});
    const auto [id, p] = ref(doc, "model");
    if (!kModels.count(id)) fail(ErrorCategory::kUnsupported, "config: unknown model '" + id + "'");
    if (id == "asymmetric_logistic") {
      for (const char* key : {"phi1", "phi2", "nu"}) {
        const double v = number(p, key);
        if (!(v > 0.0 && v < 1.0)) invalid(std::string("model.") + key + " must lie in (0, 1)");
      }
    } else if (id == "ht_mixture") {
      mixture_of(p);
    } else if (id == "arch") {
      if (!(number(p, "theta0") > 0.0)) invalid("model.theta0 must be > 0");
      const double t1 = number(p, "theta1");
      if (!(t1 > 0.0 && t1 <= 1.0)) invalid("model.theta1 must lie in (0, 1]");
    }
    count_or(doc, "horizon", 15, 1);
    count_or(doc, "n", 10000, 1);
  } else if (cfg.kind == "negdep") {
    check_keys(doc, {"scheme", "k_minus", "k_plus", "horizon", "n"});
    const NormingScheme s = scheme_of(doc, nullptr);
    if (s.kind != SchemeKind::kNegativeHt && s.kind != SchemeKind::kAlternatingGaussian) {
      invalid("negdep needs a negative_ht or alternating_gaussian scheme");
    }
    limit_of(doc, "k_minus", nullptr);
    if (doc.contains("k_plus")) limit_of(doc, "k_plus", nullptr);
    count_or(doc, "horizon", 10, 1);
    count_or(doc, "n", 100000, 1);
  } else if (cfg.kind == "chi") {
    check_keys(doc, {"kernel", "t", "u_grid", "n"});
    check_kernel_ref(doc, "kernel");
    count_or(doc, "t", 1, 1);
    count_or(doc, "n", 1000000, 1);
    for (double u : number_list(doc, "u_grid")) {
      if (!(u > 0.0 && u < 1.0)) invalid("'u_grid' values must lie in (0, 1)");
    }
  } else {
    invalid("unknown experiment kind '" + cfg.kind + "'");
  }
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                         unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    fail(ErrorCategory::kIo, "cannot create output directory '" + out_dir + "'");
  }
  RunResult result;
  Emitter out(out_dir, &result);
  const Exec exec{cfg.seed, workers == 0 ? 1u : workers};
  if (cfg.kind == "simulate") {
    run_simulate(cfg, exec, out, result);
  } else if (cfg.kind == "converge") {
    run_converge(cfg, exec, out, result);
  } else if (cfg.kind == "figure1") {
    run_envelopes(cfg, exec, out, result);
  } else if (cfg.kind == "hidden") {
    run_hidden(cfg, exec, out, result);
  } else if (cfg.kind == "negdep") {
    run_negdep(cfg, exec, out, result);
  } else if (cfg.kind == "chi") {
    run_chi(cfg, exec, out, result);
  } else {
    invalid("unknown experiment kind '" + cfg.kind + "'");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json outputs = json::array();
  for (const auto& o : result.outputs) {
    outputs.push_back({{"file", o.file}, {"rows", o.rows}, {"columns", o.columns}});
  }
  result.manifest = {
      {"tool", "extreme-chains"},
      {"version", kVersion},
      {"kind", cfg.kind},
      {"seed", cfg.seed},
      {"workers", exec.workers},
      {"config", cfg.raw},
      {"outputs", outputs},
      {"warnings", result.warnings},
      {"wall_time_seconds", wall},
      {"dependencies",
       {{"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
  };
  write_text_file((std::filesystem::path(out_dir) / "manifest.json").string(),
                  result.manifest.dump(2) + "\n");
  return result;
}

}  // namespace xc
