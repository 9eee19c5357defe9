#pragma once

#include <cstddef>
#include <vector>

#include "qhosvd/qtensor.hpp"

namespace qhosvd {

/// Result of the QHOSVD procedure.
///
/// `factors[s]` is the N_l x N_l unitary factor for mode
/// `decomposed_modes[s]` (1-based), `mode_singular_values[s]` the singular
/// values captured at that stage, zero-padded to N_l. For every decomposed
/// mode l the core slice norms are nonincreasing along l and equal the
/// stage singular values.
struct QhosvdFactors {
    QTensor core;
    std::vector<QMatrix> factors;
    std::vector<std::size_t> decomposed_modes;
    std::vector<std::vector<double>> mode_singular_values;

    /// Count of singular values above 1e-10 * sigma_1 for decomposed mode
    /// at stage index s.
    std::size_t mode_rank(std::size_t s) const;
};

/// QHOSVD over the given modes, processed in the given order.
///
/// The factor for the first listed mode comes from the left singular
/// vectors of that mode's unfolding of T; each later factor from the
/// unfolding of T with all previously computed factors applied as
/// conjugate transposes on their modes. The core is T with every factor's
/// conjugate transpose applied in processing order. The full decomposition
/// uses modes (L, L-1, ..., 1).
///
/// Throws ModeError for an empty list, out-of-range or repeated modes.
QhosvdFactors qhosvd(const QTensor& t, const std::vector<std::size_t>& modes);

/// Full decomposition, modes L down to 1.
QhosvdFactors qhosvd_full(const QTensor& t);

/// Inverse: applies the factors to the core by mode products in ascending
/// mode order. Throws ShapeError when factor shapes do not match the core.
QTensor reconstruct(const QhosvdFactors& f);

/// Keeps entries whose quaternion modulus is >= tau, zeroes the rest.
/// Survivors are bit-identical to their inputs. Throws ParameterError for
/// negative tau.
QTensor hard_threshold_core(const QTensor& s, double tau);

} // namespace qhosvd
