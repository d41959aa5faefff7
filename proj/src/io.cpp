// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/io.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace shadows {

namespace {

const char* kind_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::PauliGroup: return "pauli-group";
    case EnsembleKind::LocalClifford: return "local-clifford";
    case EnsembleKind::GlobalClifford: return "global-clifford";
    case EnsembleKind::LocallyScrambledHaar: return "haar-local";
    case EnsembleKind::RandomLocalCircuit: return "local-circuit";
    case EnsembleKind::Custom: return "custom";
  }
  return "?";
}

EnsembleKind kind_from_name(const std::string& name) {
  if (name == "pauli-group") return EnsembleKind::PauliGroup;
  if (name == "local-clifford") return EnsembleKind::LocalClifford;
  if (name == "global-clifford") return EnsembleKind::GlobalClifford;
  if (name == "haar-local") return EnsembleKind::LocallyScrambledHaar;
  if (name == "local-circuit") return EnsembleKind::RandomLocalCircuit;
  if (name == "custom") return EnsembleKind::Custom;
  throw std::invalid_argument("unknown ensemble kind '" + name + "'");
}

// Parses "name" or "name:k1=v1,k2=v2" (a single bare value is allowed and
// keyed as "" for grammars like depolarizing:0.3).
struct SpecText {
  std::string name;
  std::map<std::string, std::string> args;
};

SpecText parse_spec_text(const std::string& text) {
  SpecText out;
  const auto colon = text.find(':');
  out.name = text.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      out.args[""] = item;
    else
      out.args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double arg_double(const SpecText& s, const std::string& key, const char* what) {
  auto it = s.args.find(key);
  if (it == s.args.end()) it = s.args.find("");
  if (it == s.args.end()) throw std::invalid_argument(std::string(what) + ": missing parameter '" + key + "'");
  return std::stod(it->second);
}

long arg_long(const SpecText& s, const std::string& key, const char* what, long fallback = -1) {
  auto it = s.args.find(key);
  if (it == s.args.end()) it = s.args.find("");
  if (it == s.args.end()) {
    if (fallback >= 0) return fallback;
    throw std::invalid_argument(std::string(what) + ": missing parameter '" + key + "'");
  }
  return std::stol(it->second);
}

}  // namespace

json draw_to_json(const UnitaryDraw& draw) {
  json gates = json::array();
  for (const auto& g : draw.gates) gates.push_back({{"name", g.name}, {"qubits", g.qubits}, {"params", g.params}});
  return json{{"kind", kind_name(draw.kind)}, {"n", draw.n}, {"gates", std::move(gates)}};
}

UnitaryDraw draw_from_json(const json& j) {
  UnitaryDraw draw;
  draw.kind = kind_from_name(j.at("kind").get<std::string>());
  draw.n = j.at("n").get<int>();
  for (const auto& g : j.at("gates")) {
    Gate gate;
    gate.name = g.at("name").get<std::string>();
    gate.qubits = g.at("qubits").get<std::vector<int>>();
    gate.params = g.at("params").get<std::vector<double>>();
    draw.gates.push_back(std::move(gate));
  }
  return draw;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.dim}, {"entries", std::move(rows)}};
}

Mat matrix_from_json(const json& j) {
  const std::size_t dim = j.at("dim").get<std::size_t>();
  Mat m(dim);
  const auto& rows = j.at("entries");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      m(i, k) = cplx(rows[i][k][0].get<double>(), rows[i][k][1].get<double>());
  return m;
}

json wtable_to_json(const WTable& w) {
  json j{{"n", w.n}, {"order", kTableOrder}, {"values", w.values.v}};
  if (w.has_stderr()) j["stderr"] = w.stderrs;
  switch (w.provenance) {
    case WProvenance::Exact: j["provenance"] = "exact"; break;
    case WProvenance::MonteCarlo: j["provenance"] = "monte_carlo:samples=" + std::to_string(w.samples); break;
    case WProvenance::Analytic: j["provenance"] = "analytic:" + w.note; break;
  }
  return j;
}

WTable wtable_from_json(const json& j) {
  WTable w;
  w.n = j.at("n").get<int>();
  if (j.at("order").get<std::string>() != kTableOrder)
    throw std::invalid_argument("wtable: unknown table order");
  w.values = RealFunctionOnVn(w.n, 0.0);
  const auto vals = j.at("values").get<std::vector<double>>();
  if (vals.size() != w.values.size()) throw std::invalid_argument("wtable: wrong value count");
  w.values.v = vals;
  if (j.contains("stderr")) w.stderrs = j.at("stderr").get<std::vector<double>>();
  const std::string prov = j.value("provenance", "exact");
  if (prov.rfind("monte_carlo", 0) == 0) {
    w.provenance = WProvenance::MonteCarlo;
    const auto eq = prov.find('=');
    if (eq != std::string::npos) w.samples = std::stoull(prov.substr(eq + 1));
  } else if (prov.rfind("analytic", 0) == 0) {
    w.provenance = WProvenance::Analytic;
    const auto colon = prov.find(':');
    if (colon != std::string::npos) w.note = prov.substr(colon + 1);
  } else {
    w.provenance = WProvenance::Exact;
  }
  return w;
}

json report_to_json(const EstimateReport& rep) {
  return json{{"value", rep.value},
              {"stderr", rep.stderr_value},
              {"shots_used", rep.shots_used},
              {"strategy", rep.strategy}};
}

json spectrum_to_json(const PauliChannelSpectrum& spec) {
  json labels = json::array();
  for (std::uint64_t idx = 0; idx < spec.lambdas.size(); ++idx)
    labels.push_back(PauliLabel::from_index(spec.n, idx).to_string());
  return json{{"n", spec.n}, {"labels", std::move(labels)}, {"lambda", spec.lambdas.v}, {"stderr", spec.stderrs}};
}

PauliChannelSpectrum spectrum_from_json(const json& j) {
  PauliChannelSpectrum spec;
  spec.n = j.at("n").get<int>();
  spec.lambdas = RealFunctionOnVn(spec.n, 0.0);
  spec.lambdas.v = j.at("lambda").get<std::vector<double>>();
  if (spec.lambdas.v.size() != (std::size_t(1) << (2 * spec.n)))
    throw std::invalid_argument("spectrum: wrong value count");
  spec.stderrs = j.at("stderr").get<std::vector<double>>();
  return spec;
}

std::string created_stamp() {
  std::time_t t;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_snapshot_file(const std::string& path, const SnapshotSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const json header{{"n", set.spec.n},
                    {"ensemble", set.spec.describe()},
                    {"seed", set.seed},
                    {"noise", set.noise_tag},
                    {"created", created_stamp()},
                    {"tool_version", kToolVersion}};
  out << header.dump() << "\n";
  for (const auto& s : set.snapshots) {
    const json rec{{"draw", draw_to_json(s.draw)}, {"b", bits_to_string(s.outcome, set.spec.n)}};
    out << rec.dump() << "\n";
  }
}

SnapshotSet read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("snapshot file is empty");
  const json header = json::parse(line);
  SnapshotSet set;
  const int n = header.at("n").get<int>();
  set.spec = parse_ensemble(header.at("ensemble").get<std::string>(), n);
  set.seed = header.at("seed").get<std::uint64_t>();
  set.noise_tag = header.value("noise", "");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    Snapshot s;
    s.draw = draw_from_json(rec.at("draw"));
    s.outcome = bits_from_string(rec.at("b").get<std::string>());
    if (s.draw.n != n || (s.outcome >> n) != 0)
      throw std::invalid_argument("snapshot record does not match the header qubit count");
    set.snapshots.push_back(std::move(s));
  }
  return set;
}

void write_channel_snapshot_file(const std::string& path, const ChannelSnapshotSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const json header{{"n", set.spec_in.n},
                    {"spec_in", set.spec_in.describe()},
                    {"spec_out", set.spec_out.describe()},
                    {"seed", set.seed},
                    {"channel", set.channel_tag},
                    {"created", created_stamp()},
                    {"tool_version", kToolVersion}};
  out << header.dump() << "\n";
  const int n = set.spec_in.n;
  for (const auto& cs : set.snapshots) {
    const json rec{{"b_in", bits_to_string(cs.b_in, n)},
                   {"draw_in", draw_to_json(cs.draw_in)},
                   {"draw_out", draw_to_json(cs.draw_out)},
                   {"b_out", bits_to_string(cs.b_out, n)}};
    out << rec.dump() << "\n";
  }
}

ChannelSnapshotSet read_channel_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("channel snapshot file is empty");
  const json header = json::parse(line);
  ChannelSnapshotSet set;
  const int n = header.at("n").get<int>();
  set.spec_in = parse_ensemble(header.at("spec_in").get<std::string>(), n);
  set.spec_out = parse_ensemble(header.at("spec_out").get<std::string>(), n);
  set.seed = header.at("seed").get<std::uint64_t>();
  set.channel_tag = header.value("channel", "");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    ChannelSnapshot cs;
    cs.b_in = bits_from_string(rec.at("b_in").get<std::string>());
    cs.draw_in = draw_from_json(rec.at("draw_in"));
    cs.draw_out = draw_from_json(rec.at("draw_out"));
    cs.b_out = bits_from_string(rec.at("b_out").get<std::string>());
    if (cs.draw_in.n != n || cs.draw_out.n != n)
      throw std::invalid_argument("channel snapshot record does not match the header qubit count");
    set.snapshots.push_back(std::move(cs));
  }
  return set;
}

EnsembleSpec parse_ensemble(const std::string& text, int n) {
  const SpecText s = parse_spec_text(text);
  const EnsembleKind kind = kind_from_name(s.name);
  switch (kind) {
    case EnsembleKind::PauliGroup: return EnsembleSpec::pauli_group(n);
    case EnsembleKind::LocalClifford: return EnsembleSpec::local_clifford(n);
    case EnsembleKind::GlobalClifford: return EnsembleSpec::global_clifford(n);
    case EnsembleKind::LocallyScrambledHaar: return EnsembleSpec::locally_scrambled_haar(n);
    case EnsembleKind::RandomLocalCircuit:
      return EnsembleSpec::random_local_circuit(n, static_cast<int>(arg_long(s, "depth", "local-circuit")));
    case EnsembleKind::Custom:
      throw std::invalid_argument("custom ensembles are library-only; no text grammar");
  }
  throw std::invalid_argument("unknown ensemble '" + text + "'");
}

QuantumChannel parse_channel(const std::string& text, int n) {
  const SpecText s = parse_spec_text(text);
  if (s.name == "identity") return QuantumChannel::identity(n);
  if (s.name == "depolarizing") return depolarizing_channel(arg_double(s, "p", "depolarizing"), n);
  if (s.name == "bitflip")
    return bit_flip_channel(arg_double(s, "p", "bitflip"),
                            static_cast<int>(arg_long(s, "qubit", "bitflip", 0)), n);
  if (s.name == "amp-damp")
    return amplitude_damping_channel(arg_double(s, "gamma", "amp-damp"),
                                     static_cast<int>(arg_long(s, "qubit", "amp-damp", 0)), n);
  if (s.name == "pauli-random") {
    Rng rng(static_cast<std::uint64_t>(arg_long(s, "seed", "pauli-random")));
    return random_pauli_channel(n, rng);
  }
  if (s.name == "pauli") {
    auto it = s.args.find("");
    if (it == s.args.end()) throw std::invalid_argument("pauli channel: expected probability list");
    // The comma-separated list arrives pre-split by the generic parser; glue
    // it back together from the args map preserving order is impossible, so
    // re-split from the original text instead.
    const std::string list = text.substr(text.find(':') + 1);
    RealFunctionOnVn probs(n, 0.0);
    std::stringstream ss(list);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= probs.size()) throw std::invalid_argument("pauli channel: too many probabilities");
      probs[i++] = std::stod(item);
    }
    if (i != probs.size()) throw std::invalid_argument("pauli channel: expected 4^n probabilities");
    return pauli_channel(probs);
  }
  throw std::invalid_argument("unknown channel '" + text + "'");
}

DensityMatrix parse_state(const std::string& text, int n) {
  const SpecText s = parse_spec_text(text);
  const std::size_t dim = std::size_t(1) << n;
  if (s.name == "basis") {
    auto it = s.args.find("");
    if (it == s.args.end()) throw std::invalid_argument("basis state: expected bitstring");
    if (static_cast<int>(it->second.size()) != n) throw std::invalid_argument("basis state: wrong bit count");
    return DensityMatrix::from_pure(PureState::basis(n, bits_from_string(it->second)));
  }
  if (s.name == "ghz") {
    CVec amp(dim, cplx(0.0, 0.0));
    const double a = 1.0 / std::sqrt(2.0);
    amp[0] = a;
    amp[dim - 1] = a;
    return DensityMatrix::from_pure(PureState(n, std::move(amp)));
  }
  if (s.name == "plus") {
    CVec amp(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return DensityMatrix::from_pure(PureState(n, std::move(amp)));
  }
  if (s.name == "mixed") return DensityMatrix::maximally_mixed(n);
  if (s.name == "random") {
    Rng rng(static_cast<std::uint64_t>(arg_long(s, "seed", "random state")));
    return DensityMatrix::from_pure(PureState(n, haar_ket(dim, rng)));
  }
  throw std::invalid_argument("unknown state '" + text + "'");
}

}  // namespace shadows
