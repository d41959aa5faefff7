// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <cstdio>
#include <doctest.h>
#include <fstream>

#include "shadows/io.hpp"
#include "shadows/verify.hpp"

using namespace shadows;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/paulishadow_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("draw serialization round trips bit-exactly") {
  Rng rng(91);
  for (const auto& spec : {EnsembleSpec::locally_scrambled_haar(2), EnsembleSpec::random_local_circuit(3, 2),
                           EnsembleSpec::local_clifford(2), EnsembleSpec::pauli_group(2)}) {
    for (int rep = 0; rep < 4; ++rep) {
      const UnitaryDraw draw = sample(spec, rng);
      const UnitaryDraw back = draw_from_json(json::parse(draw_to_json(draw).dump()));
      CHECK(back == draw);  // params are doubles; dump() must round-trip them exactly
      CHECK(max_abs_diff(realize(back).m, realize(draw).m) == 0.0);
    }
  }
}

TEST_CASE("matrix debug dump round trips") {
  Rng rng(44);
  const Mat m = ginibre_density(4, rng);
  const Mat back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
  CHECK(max_abs_diff(m, back) == 0.0);
}

TEST_CASE("wtable json round trip") {
  WTable w = estimate_W_monte_carlo(EnsembleSpec::local_clifford(1), 500, 3);
  const WTable back = wtable_from_json(json::parse(wtable_to_json(w).dump()));
  CHECK(back.n == w.n);
  CHECK(back.values.v == w.values.v);
  CHECK(back.stderrs == w.stderrs);
  CHECK(back.provenance == WProvenance::MonteCarlo);
  CHECK(back.samples == 500);

  const json j = wtable_to_json(compute_W_exact(EnsembleSpec::local_clifford(1)));
  CHECK(j.at("order") == "IZXY-lsb0");
  CHECK(j.at("provenance") == "exact");
}

TEST_CASE("snapshot files round trip and reproduce estimates bit-exactly") {
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const DensityMatrix rho = DensityMatrix::from_pure(PureState::basis(1, 0));
  const SnapshotSet set = collect_snapshots(rho, spec, 500, 99);

  TempFile f("snaps.jsonl");
  write_snapshot_file(f.path, set);
  const std::string bytes1 = slurp(f.path);
  write_snapshot_file(f.path, set);
  CHECK(slurp(f.path) == bytes1);  // reproducible bytes under SOURCE_DATE_EPOCH

  const SnapshotSet back = read_snapshot_file(f.path);
  CHECK(back.seed == set.seed);
  CHECK(back.spec.kind == spec.kind);
  CHECK(back.snapshots.size() == set.snapshots.size());

  const ReconstructionMap recon = invert_W(compute_W_exact(spec));
  const EstimateReport direct = estimate_observable(set, recon, PauliObservable::from_string("Z"));
  const EstimateReport loaded = estimate_observable(back, recon, PauliObservable::from_string("Z"));
  CHECK(direct.value == loaded.value);
  CHECK(direct.stderr_value == loaded.stderr_value);
  unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("channel snapshot files round trip") {
  const EnsembleSpec lc = EnsembleSpec::local_clifford(1);
  const ChannelSnapshotSet set =
      collect_channel_snapshots(depolarizing_channel(0.2, 1), lc, lc, 300, 11, "depolarizing:p=0.2");
  TempFile f("channel.jsonl");
  write_channel_snapshot_file(f.path, set);
  const ChannelSnapshotSet back = read_channel_snapshot_file(f.path);
  CHECK(back.channel_tag == "depolarizing:p=0.2");
  CHECK(back.snapshots.size() == set.snapshots.size());
  for (std::size_t i = 0; i < set.snapshots.size(); ++i) {
    CHECK(back.snapshots[i].b_in == set.snapshots[i].b_in);
    CHECK(back.snapshots[i].b_out == set.snapshots[i].b_out);
    CHECK(back.snapshots[i].draw_in == set.snapshots[i].draw_in);
  }
}

TEST_CASE("text grammars") {
  CHECK(parse_ensemble("pauli-group", 2).kind == EnsembleKind::PauliGroup);
  CHECK(parse_ensemble("local-circuit:depth=3", 2).depth == 3);
  CHECK_THROWS_AS(parse_ensemble("nonsense", 1), std::invalid_argument);

  CHECK(parse_channel("identity", 1).kraus.size() == 1);
  CHECK(parse_channel("depolarizing:p=0.3", 1).pauli_probs.has_value());
  CHECK(parse_channel("depolarizing:0.3", 1).pauli_probs.has_value());
  CHECK(parse_channel("bitflip:p=0.2,qubit=0", 2).n == 2);
  CHECK(!channel_is_unital(parse_channel("amp-damp:gamma=0.4,qubit=0", 1)));
  const QuantumChannel pc = parse_channel("pauli:0.7,0.1,0.1,0.1", 1);
  CHECK(pc.pauli_probs.has_value());
  CHECK((*pc.pauli_probs)[0] == 0.7);
  CHECK_THROWS_AS(parse_channel("pauli:0.9,0.1", 1), std::invalid_argument);
  const QuantumChannel pr1 = parse_channel("pauli-random:seed=5", 2);
  const QuantumChannel pr2 = parse_channel("pauli-random:seed=5", 2);
  CHECK((*pr1.pauli_probs).v == (*pr2.pauli_probs).v);

  CHECK(parse_state("basis:01", 2).m(2, 2).real() == doctest::Approx(1.0));
  const DensityMatrix ghz = parse_state("ghz", 2);
  CHECK(ghz.m(0, 3).real() == doctest::Approx(0.5));
  CHECK(parse_state("mixed", 1).m(0, 0).real() == doctest::Approx(0.5));
  CHECK(trace(parse_state("random:seed=4", 2).m).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_state("basis:0", 2), std::invalid_argument);
}

TEST_CASE("verify registry exposes the named paper checks") {
  const auto names = verify_check_names();
  auto has = [&](const std::string& s) {
    for (const auto& n : names)
      if (n.find(s) != std::string::npos) return true;
    return false;
  };
  CHECK(has("prop2"));
  CHECK(has("prop9"));
  CHECK(has("example1"));
  CHECK(has("choi"));
  CHECK(has("thm1"));
  const auto filtered = run_verify_checks("prop9");
  CHECK(filtered.size() == 1);
  CHECK(filtered[0].pass);
}
