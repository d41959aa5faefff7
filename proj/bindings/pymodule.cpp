// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shadows/analysis.hpp"
#include "shadows/channel.hpp"
#include "shadows/io.hpp"
#include "shadows/verify.hpp"

namespace py = pybind11;
using namespace shadows;

namespace {

WTable wtable_from_lists(int n, const std::vector<double>& values, const std::vector<double>& errs) {
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  if (values.size() != w.values.size()) throw std::invalid_argument("wrong table length");
  w.values.v = values;
  w.stderrs = errs;
  w.provenance = errs.empty() ? WProvenance::Exact : WProvenance::MonteCarlo;
  return w;
}

}  // namespace

PYBIND11_MODULE(_paulishadow, m) {
  m.doc() = "classical shadows with Pauli-invariant unitary ensembles";
  m.attr("__version__") = kToolVersion;

  py::register_exception<NotEnumerableError>(m, "NotEnumerableError");
  py::register_exception<NonInvertibleError>(m, "NonInvertibleError");

  m.def("pauli_labels", [](int n) {
    std::vector<std::string> out;
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx)
      out.push_back(PauliLabel::from_index(n, idx).to_string());
    return out;
  });

  m.def(
      "w_exact",
      [](const std::string& ensemble, int n) {
        return compute_W_exact(parse_ensemble(ensemble, n)).values.v;
      },
      py::arg("ensemble"), py::arg("n"));

  m.def(
      "w_monte_carlo",
      [](const std::string& ensemble, int n, std::uint64_t samples, std::uint64_t seed, int threads) {
        const WTable w = estimate_W_monte_carlo(parse_ensemble(ensemble, n), samples, seed,
                                                BMode::ExactAverage, threads);
        return py::make_tuple(w.values.v, w.stderrs);
      },
      py::arg("ensemble"), py::arg("n"), py::arg("samples"), py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "w_noisy",
      [](const std::string& ensemble, int n, const std::string& noise) {
        return compute_W_noisy(parse_ensemble(ensemble, n), parse_channel(noise, n)).values.v;
      },
      py::arg("ensemble"), py::arg("n"), py::arg("noise"));

  m.def(
      "shadow_norms",
      [](const std::string& ensemble, int n) {
        const WTable w = compute_W_exact(parse_ensemble(ensemble, n));
        std::vector<double> norms;
        for (std::uint64_t idx = 0; idx < w.values.size(); ++idx)
          norms.push_back(w.values[idx] > 1e-12 ? 1.0 / w.values[idx]
                                                : std::numeric_limits<double>::infinity());
        return norms;
      },
      py::arg("ensemble"), py::arg("n"));

  m.def(
      "average_shadow_norm",
      [](const std::string& ensemble, int n, const std::string& obs) {
        return average_shadow_norm(compute_W_exact(parse_ensemble(ensemble, n)),
                                   PauliObservable::from_string(obs));
      },
      py::arg("ensemble"), py::arg("n"), py::arg("obs"));

  m.def("sample_complexity_bound", &sample_complexity_bound, py::arg("max_sq_norm"),
        py::arg("n_observables"), py::arg("eps"), py::arg("delta"));

  m.def(
      "estimate",
      [](const std::string& ensemble, int n, const std::string& state, const std::string& obs,
         std::uint64_t shots, std::uint64_t seed, const std::string& noise, int threads) {
        const EnsembleSpec spec = parse_ensemble(ensemble, n);
        std::optional<QuantumChannel> ch;
        WTable w;
        if (noise.empty()) {
          w = compute_W_exact(spec);
        } else {
          ch = parse_channel(noise, n);
          w = compute_W_noisy(spec, *ch);
        }
        const SnapshotSet set =
            collect_snapshots(parse_state(state, n), spec, shots, seed, ch, noise, threads);
        const EstimateReport rep =
            estimate_observable(set, invert_W(w), PauliObservable::from_string(obs));
        return py::make_tuple(rep.value, rep.stderr_value);
      },
      py::arg("ensemble"), py::arg("n"), py::arg("state"), py::arg("obs"), py::arg("shots"),
      py::arg("seed") = 1, py::arg("noise") = "", py::arg("threads") = 1);

  m.def(
      "entanglement_features",
      [](const std::string& ensemble, int n) {
        const EntanglementFeatureTable ef =
            entanglement_features(parse_ensemble(ensemble, n), AveragingMode::Exact);
        py::dict out;
        for (std::size_t mask = 0; mask < ef.values.size(); ++mask)
          out[py::str(std::to_string(mask))] = ef.values[mask];
        return out;
      },
      py::arg("ensemble"), py::arg("n"));

  m.def(
      "r_coefficients",
      [](const std::string& ensemble, int n) {
        const RCoefficients rc =
            r_coefficients(w_support_sums(compute_W_exact(parse_ensemble(ensemble, n))));
        return rc.values;
      },
      py::arg("ensemble"), py::arg("n"));

  m.def(
      "pauli_eigenvalue_estimates",
      [](const std::string& channel, const std::string& ensemble, int n, std::uint64_t shots,
         std::uint64_t seed, int threads) {
        const EnsembleSpec spec = parse_ensemble(ensemble, n);
        const QuantumChannel t = parse_channel(channel, n);
        const ChannelSnapshotSet set =
            collect_channel_snapshots(t, spec, spec, shots, seed, channel, threads);
        const ChannelWTable cw{compute_W_exact(spec), compute_W_exact(spec)};
        std::vector<PauliLabel> labels;
        for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx)
          labels.push_back(PauliLabel::from_index(n, idx));
        const PauliChannelSpectrum sp = estimate_pauli_eigenvalues(set, cw, labels);
        return py::make_tuple(sp.lambdas.v, sp.stderrs);
      },
      py::arg("channel"), py::arg("ensemble"), py::arg("n"), py::arg("shots"), py::arg("seed") = 1,
      py::arg("threads") = 1);

  m.def(
      "pauli_channel_eigenvalues",
      [](int n, const std::vector<double>& probs) {
        RealFunctionOnVn p(n, 0.0);
        if (probs.size() != p.size()) throw std::invalid_argument("wrong probability count");
        p.v = probs;
        return pauli_channel_eigenvalues(p).v;
      },
      py::arg("n"), py::arg("probs"));

  m.def(
      "verify",
      [](const std::string& filter) {
        py::list out;
        for (const auto& r : run_verify_checks(filter))
          out.append(py::make_tuple(r.name, r.pass, r.max_err));
        return out;
      },
      py::arg("filter") = "");

  m.def(
      "invert_w",
      [](int n, const std::vector<double>& values, const std::vector<double>& errs, double floor) {
        return invert_W(wtable_from_lists(n, values, errs), floor).inverse_coeffs.v;
      },
      py::arg("n"), py::arg("values"), py::arg("stderrs") = std::vector<double>{},
      py::arg("floor") = 1e-12);
}
