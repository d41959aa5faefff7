// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_IO_HPP_
#define SHADOWS_IO_HPP_

#include <string>

#include <json.hpp>

#include "shadows/channel.hpp"
#include "shadows/shadow.hpp"

namespace shadows {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kTableOrder = "IZXY-lsb0";

json draw_to_json(const UnitaryDraw& draw);
UnitaryDraw draw_from_json(const json& j);

/// Debugging dump of a dense matrix as row-major [re, im] pairs. Not a
/// stable wire format.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json wtable_to_json(const WTable& w);
WTable wtable_from_json(const json& j);

json report_to_json(const EstimateReport& rep);

json spectrum_to_json(const PauliChannelSpectrum& spec);
PauliChannelSpectrum spectrum_from_json(const json& j);

/// Line-delimited snapshot file: one header record, then one record
/// {"draw": ..., "b": "0101..."} per shot.
void write_snapshot_file(const std::string& path, const SnapshotSet& set);
SnapshotSet read_snapshot_file(const std::string& path);

void write_channel_snapshot_file(const std::string& path, const ChannelSnapshotSet& set);
ChannelSnapshotSet read_channel_snapshot_file(const std::string& path);

/// Creation stamp for file headers. Honors SOURCE_DATE_EPOCH so that
/// archived runs are byte-reproducible; falls back to the wall clock.
std::string created_stamp();

/// Ensemble grammar: pauli-group | local-clifford | global-clifford |
/// haar-local | local-circuit:depth=D.
EnsembleSpec parse_ensemble(const std::string& text, int n);

/// Channel / noise grammar: identity | depolarizing:p=P | bitflip:p=P,qubit=Q
/// | amp-damp:gamma=G,qubit=Q | pauli:p0,p1,... | pauli-random:seed=S.
QuantumChannel parse_channel(const std::string& text, int n);

/// State grammar: basis:BITS | ghz | plus | mixed | random:seed=S.
DensityMatrix parse_state(const std::string& text, int n);

}  // namespace shadows

#endif  // SHADOWS_IO_HPP_
