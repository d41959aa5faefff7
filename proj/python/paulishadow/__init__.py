# Copyright 2026 The paulishadow developers.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE file in the root directory of this source tree.

"""Classical shadows with Pauli-invariant unitary ensembles."""

from _paulishadow import (  # noqa: F401
    NonInvertibleError,
    NotEnumerableError,
    __version__,
    average_shadow_norm,
    entanglement_features,
    estimate,
    invert_w,
    pauli_channel_eigenvalues,
    pauli_eigenvalue_estimates,
    pauli_labels,
    r_coefficients,
    sample_complexity_bound,
    shadow_norms,
    verify,
    w_exact,
    w_monte_carlo,
    w_noisy,
)
