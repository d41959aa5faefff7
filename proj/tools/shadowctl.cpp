// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// shadowctl: compute shadow-channel coefficient tables, collect snapshots,
// estimate observables and channel spectra from files, evaluate norms and
// sample-complexity bounds, and run the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/input error,
// 3 mathematical non-invertibility.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "shadows/analysis.hpp"
#include "shadows/channel.hpp"
#include "shadows/io.hpp"
#include "shadows/verify.hpp"

namespace {

using namespace shadows;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonInvertible = 3;

void emit(const json& payload, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << payload.dump(2) << "\n";
}

Strategy parse_strategy(const std::string& text, std::uint64_t shots, std::size_t n_observables) {
  if (text.empty() || text == "mean") return Strategy::mean();
  const std::string prefix1 = "median-of-means";
  const std::string prefix2 = "mom";
  std::string rest;
  if (text.rfind(prefix1, 0) == 0)
    rest = text.substr(prefix1.size());
  else if (text.rfind(prefix2, 0) == 0)
    rest = text.substr(prefix2.size());
  else
    throw std::invalid_argument("unknown strategy '" + text + "'");
  int k;
  if (rest.empty()) {
    // Default batch count 2 ln(2N/delta) at delta = 0.01.
    k = static_cast<int>(std::ceil(2.0 * std::log(2.0 * static_cast<double>(n_observables) / 0.01)));
  } else {
    if (rest[0] != ':') throw std::invalid_argument("unknown strategy '" + text + "'");
    k = std::stoi(rest.substr(1));
  }
  if (k < 1 || static_cast<std::uint64_t>(k) > shots)
    throw std::invalid_argument("median-of-means batch count must be in [1, shots]");
  return Strategy::median_of_means(k);
}

struct CommonArgs {
  int n = 1;
  std::string ensemble = "local-clifford";
  std::uint64_t shots = 1000;
  std::uint64_t seed = 1;
  std::string noise;
  std::string out;
  int threads = 1;
  std::string strategy = "mean";
};

json spec_block(int n, const std::string& ensemble, const std::string& noise) {
  return json{{"n", n}, {"ensemble", ensemble}, {"noise", noise}};
}

int cmd_wtable(const CommonArgs& c, bool exact, std::uint64_t samples, const std::string& b_mode,
               bool invert) {
  const EnsembleSpec spec = parse_ensemble(c.ensemble, c.n);
  WTable w;
  if (!c.noise.empty()) {
    w = compute_W_noisy(spec, parse_channel(c.noise, c.n));
  } else if (exact) {
    w = compute_W_exact(spec);
  } else {
    const BMode mode = b_mode == "sampled" ? BMode::Sampled : BMode::ExactAverage;
    w = estimate_W_monte_carlo(spec, samples, c.seed, mode, c.threads);
  }
  json payload{{"tool_version", kToolVersion},
               {"seed", c.seed},
               {"spec", spec_block(c.n, spec.describe(), c.noise)},
               {"table", wtable_to_json(w)}};
  if (invert) {
    const ReconstructionMap recon = invert_W(w);  // NonInvertible -> exit 3
    payload["inverse_coeffs"] = recon.inverse_coeffs.v;
  }
  emit(payload, c.out);
  return kExitOk;
}

int cmd_collect(const CommonArgs& c, const std::string& state_text) {
  const EnsembleSpec spec = parse_ensemble(c.ensemble, c.n);
  const DensityMatrix rho = parse_state(state_text, c.n);
  std::optional<QuantumChannel> noise;
  if (!c.noise.empty()) noise = parse_channel(c.noise, c.n);
  const SnapshotSet set = collect_snapshots(rho, spec, c.shots, c.seed, noise, c.noise, c.threads);
  if (c.out.empty()) throw std::invalid_argument("collect requires --out");
  write_snapshot_file(c.out, set);
  return kExitOk;
}

int cmd_estimate(const std::string& snapshots_path, const std::string& wtable_path,
                 const std::vector<std::string>& obs_texts, const std::string& strategy_text,
                 double eps, double delta, const std::string& out) {
  const SnapshotSet set = read_snapshot_file(snapshots_path);
  std::ifstream win(wtable_path);
  if (!win) throw std::runtime_error("cannot open '" + wtable_path + "'");
  const json wdoc = json::parse(win);
  const json wspec = wdoc.at("spec");
  // The snapshot file and the coefficient table must describe the same
  // protocol: ensemble, qubit count, and noise model.
  if (wspec.at("n").get<int>() != set.spec.n ||
      wspec.at("ensemble").get<std::string>() != set.spec.describe() ||
      wspec.at("noise").get<std::string>() != set.noise_tag)
    throw std::invalid_argument("snapshot file and wtable file describe different protocols");
  const WTable w = wtable_from_json(wdoc.at("table"));
  const ReconstructionMap recon = invert_W(w);

  if (obs_texts.empty()) throw std::invalid_argument("estimate requires at least one --obs");
  std::vector<PauliObservable> observables;
  for (const auto& text : obs_texts) observables.push_back(PauliObservable::from_string(text));

  const Strategy strategy = parse_strategy(strategy_text, set.snapshots.size(), observables.size());
  json estimates = json::array();
  double max_sq_norm = 0.0;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const EstimateReport rep = estimate_observable(set, recon, observables[i], strategy);
    json entry = report_to_json(rep);
    entry["observable"] = obs_texts[i];
    estimates.push_back(std::move(entry));
    max_sq_norm = std::max(max_sq_norm, average_shadow_norm(w, observables[i].traceless()));
  }
  const std::uint64_t bound = sample_complexity_bound(max_sq_norm, observables.size(), eps, delta);
  const json payload{{"tool_version", kToolVersion},
                     {"seed", set.seed},
                     {"spec", spec_block(set.spec.n, set.spec.describe(), set.noise_tag)},
                     {"estimates", std::move(estimates)},
                     {"sample_complexity_bound",
                      json{{"eps", eps}, {"delta", delta}, {"max_sq_norm", max_sq_norm}, {"shots", bound}}}};
  emit(payload, out);
  return kExitOk;
}

int cmd_channel_collect(const CommonArgs& c, const std::string& ensemble_out_text,
                        const std::string& channel_text) {
  const EnsembleSpec spec_in = parse_ensemble(c.ensemble, c.n);
  const EnsembleSpec spec_out = parse_ensemble(ensemble_out_text.empty() ? c.ensemble : ensemble_out_text, c.n);
  const QuantumChannel channel = parse_channel(channel_text, c.n);
  const ChannelSnapshotSet set =
      collect_channel_snapshots(channel, spec_in, spec_out, c.shots, c.seed, channel_text, c.threads);
  if (c.out.empty()) throw std::invalid_argument("channel-collect requires --out");
  write_channel_snapshot_file(c.out, set);
  return kExitOk;
}

int cmd_channel_estimate(const std::string& snapshots_path, bool lambdas,
                         const std::vector<std::string>& obs_texts, const std::string& state_text,
                         const std::string& strategy_text, double eps, double delta,
                         const std::string& out) {
  const ChannelSnapshotSet set = read_channel_snapshot_file(snapshots_path);
  const int n = set.spec_in.n;
  if (!set.spec_in.enumerable() || !set.spec_out.enumerable())
    throw NotEnumerableError("channel-estimate needs enumerable ensembles for exact W tables");
  const ChannelWTable cw{compute_W_exact(set.spec_in), compute_W_exact(set.spec_out)};
  const Strategy strategy = parse_strategy(strategy_text, set.snapshots.size(),
                                           lambdas ? (std::size_t(1) << (2 * n)) : obs_texts.size());
  json payload{{"tool_version", kToolVersion},
               {"seed", set.seed},
               {"spec",
                json{{"n", n},
                     {"ensemble_in", set.spec_in.describe()},
                     {"ensemble_out", set.spec_out.describe()},
                     {"channel", set.channel_tag}}}};
  if (lambdas) {
    std::vector<PauliLabel> labels;
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx)
      labels.push_back(PauliLabel::from_index(n, idx));
    const PauliChannelSpectrum spectrum = estimate_pauli_eigenvalues(set, cw, labels, strategy);
    payload["spectrum"] = spectrum_to_json(spectrum);
    payload["sample_complexity_bound"] =
        json{{"eps", eps}, {"delta", delta}, {"shots", pauli_channel_sample_bound(cw, eps, delta)}};
  } else {
    if (obs_texts.empty()) throw std::invalid_argument("channel-estimate requires --obs or --lambdas");
    const DensityMatrix rho = parse_state(state_text, n);
    json estimates = json::array();
    for (const auto& text : obs_texts) {
      const EstimateReport rep =
          estimate_channel_observable(set, cw, rho, PauliObservable::from_string(text), strategy);
      json entry = report_to_json(rep);
      entry["observable"] = text;
      estimates.push_back(std::move(entry));
    }
    payload["estimates"] = std::move(estimates);
  }
  emit(payload, out);
  return kExitOk;
}

int cmd_norms(const CommonArgs& c, const std::string& csv_path) {
  const EnsembleSpec spec = parse_ensemble(c.ensemble, c.n);
  const WTable w = compute_W_exact(spec);
  json rows = json::array();
  std::string csv = "label,W,shadow_norm\n";
  const bool noisy = !c.noise.empty();
  WTable wn, wu;
  if (noisy) {
    const QuantumChannel noise = parse_channel(c.noise, c.n);
    wn = compute_W_noisy(spec, noise);
    wu = compute_W_u(spec, noise);
  }
  for (std::uint64_t idx = 0; idx < w.values.size(); ++idx) {
    const PauliLabel a = PauliLabel::from_index(c.n, idx);
    const double wv = noisy ? wn.values[idx] : w.values[idx];
    json row{{"label", a.to_string()}, {"W", wv}};
    std::string norm_text = "inf";
    if (wv > 1e-12) {
      const double norm = noisy ? noisy_shadow_norm_pauli(wn, wu, a) : shadow_norm_pauli(w, a);
      row["shadow_norm"] = norm;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", norm);
      norm_text = buf;
    } else {
      row["shadow_norm"] = nullptr;
    }
    char wbuf[32];
    std::snprintf(wbuf, sizeof(wbuf), "%.17g", wv);
    csv += a.to_string() + "," + wbuf + "," + norm_text + "\n";
    rows.push_back(std::move(row));
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
    out << csv;
  }
  emit(json{{"tool_version", kToolVersion},
            {"seed", c.seed},
            {"spec", spec_block(c.n, spec.describe(), c.noise)},
            {"norms", std::move(rows)}},
       c.out);
  return kExitOk;
}

int cmd_entfeat(const CommonArgs& c, const std::string& mode, std::uint64_t samples) {
  const EnsembleSpec spec = parse_ensemble(c.ensemble, c.n);
  const AveragingMode m = (mode == "monte-carlo" || mode == "mc") ? AveragingMode::MonteCarlo
                                                                  : AveragingMode::Exact;
  const EntanglementFeatureTable ef = entanglement_features(spec, m, samples, c.seed);
  json features;
  for (std::size_t mask = 0; mask < ef.values.size(); ++mask)
    features[std::to_string(mask)] = ef.values[mask];
  emit(json{{"tool_version", kToolVersion},
            {"seed", c.seed},
            {"spec", spec_block(c.n, spec.describe(), "")},
            {"features", std::move(features)}},
       c.out);
  return kExitOk;
}

int cmd_verify(const std::string& filter, const std::string& out) {
  const auto results = run_verify_checks(filter);
  if (results.empty()) {
    std::cerr << "no checks match filter '" << filter << "'\n";
    return kExitUsage;
  }
  json rows = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (max_err " << r.max_err << ", "
              << r.detail << ")\n";
    rows.push_back(json{{"name", r.name}, {"pass", r.pass}, {"max_err", r.max_err}, {"detail", r.detail}});
    all_pass = all_pass && r.pass;
  }
  if (!out.empty()) emit(json{{"tool_version", kToolVersion}, {"results", std::move(rows)}}, out);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical shadows with Pauli-invariant unitary ensembles"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "key=value config file; flags override file values");
  app.require_subcommand(1);

  CommonArgs c;
  bool exact = false, invert = false, lambdas = false;
  std::uint64_t samples = 10000;
  std::string b_mode = "exact-average";
  std::string state_text = "ghz";
  std::string snapshots_path, wtable_path, csv_path, ensemble_out, channel_text = "identity";
  std::string filter, mode = "exact";
  std::vector<std::string> obs_texts;
  double eps = 0.1, delta = 0.01;

  const auto add_common = [&](CLI::App* sub, bool with_shots) {
    sub->add_option("--n", c.n, "qubit count")->check(CLI::Range(1, 16));
    sub->add_option("--ensemble", c.ensemble, "unitary ensemble");
    sub->add_option("--seed", c.seed, "master RNG seed");
    sub->add_option("--noise", c.noise, "pre-measurement noise channel");
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--threads", c.threads, "shot-parallel worker threads");
    if (with_shots) sub->add_option("--shots", c.shots, "number of protocol rounds");
  };

  auto* wtable = app.add_subcommand("wtable", "compute or estimate the shadow-channel coefficients");
  add_common(wtable, false);
  wtable->add_flag("--exact", exact, "exact enumeration (requires an enumerable ensemble)");
  wtable->add_option("--samples", samples, "Monte Carlo unitary samples");
  wtable->add_option("--b-mode", b_mode, "exact-average | sampled");
  wtable->add_flag("--invert", invert, "also emit inverse coefficients (exit 3 if not invertible)");

  auto* collect = app.add_subcommand("collect", "run the protocol and write a snapshot file");
  add_common(collect, true);
  collect->add_option("--state", state_text, "input state: basis:BITS | ghz | plus | mixed | random:seed=S");

  auto* estimate = app.add_subcommand("estimate", "estimate observables from a snapshot file");
  estimate->add_option("--snapshots", snapshots_path, "snapshot file")->required();
  estimate->add_option("--wtable", wtable_path, "coefficient table file")->required();
  estimate->add_option("--obs", obs_texts, "observable expression, e.g. '0.5*ZI + 1.5*XX'");
  estimate->add_option("--strategy", c.strategy, "mean | median-of-means[:K]");
  estimate->add_option("--eps", eps, "target accuracy for the sample bound");
  estimate->add_option("--delta", delta, "failure probability for the sample bound");
  estimate->add_option("--out", c.out, "output path (default stdout)");

  auto* chan_collect = app.add_subcommand("channel-collect", "run the channel protocol to a file");
  add_common(chan_collect, true);
  chan_collect->add_option("--ensemble-out", ensemble_out, "output-leg ensemble (defaults to --ensemble)");
  chan_collect->add_option("--channel", channel_text, "channel under test");

  auto* chan_estimate = app.add_subcommand("channel-estimate", "estimate channel properties from a file");
  chan_estimate->add_option("--snapshots", snapshots_path, "channel snapshot file")->required();
  chan_estimate->add_flag("--lambdas", lambdas, "estimate all Pauli-channel eigenvalues");
  chan_estimate->add_option("--obs", obs_texts, "observable expression for Tr(T[rho] O)");
  chan_estimate->add_option("--state", state_text, "input state for Tr(T[rho] O)");
  chan_estimate->add_option("--strategy", c.strategy, "mean | median-of-means[:K]");
  chan_estimate->add_option("--eps", eps, "target accuracy for the sample bound");
  chan_estimate->add_option("--delta", delta, "failure probability for the sample bound");
  chan_estimate->add_option("--out", c.out, "output path (default stdout)");

  auto* norms = app.add_subcommand("norms", "shadow norms per Pauli label (JSON + CSV)");
  add_common(norms, false);
  norms->add_option("--csv", csv_path, "also write CSV rows label,W,shadow_norm");

  auto* entfeat = app.add_subcommand("entfeat", "entanglement features E[A] per subset");
  add_common(entfeat, false);
  entfeat->add_option("--mode", mode, "exact | monte-carlo");
  entfeat->add_option("--samples", samples, "Monte Carlo unitary samples");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--filter", filter, "run only checks whose name contains this substring");
  verify->add_option("--out", c.out, "write machine-readable results to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version are success-class; everything else is a usage error.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (wtable->parsed()) return cmd_wtable(c, exact, samples, b_mode, invert);
    if (collect->parsed()) return cmd_collect(c, state_text);
    if (estimate->parsed())
      return cmd_estimate(snapshots_path, wtable_path, obs_texts, c.strategy, eps, delta, c.out);
    if (chan_collect->parsed()) return cmd_channel_collect(c, ensemble_out, channel_text);
    if (chan_estimate->parsed())
      return cmd_channel_estimate(snapshots_path, lambdas, obs_texts, state_text, c.strategy, eps, delta,
                                  c.out);
    if (norms->parsed()) return cmd_norms(c, csv_path);
    if (entfeat->parsed()) return cmd_entfeat(c, mode, samples);
    if (verify->parsed()) return cmd_verify(filter, c.out);
  } catch (const NonInvertibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonInvertible;
  } catch (const NotEnumerableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DenseLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
