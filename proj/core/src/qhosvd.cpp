#include "qhosvd/qhosvd.hpp"

#include <algorithm>
#include <string>

#include "qhosvd/errors.hpp"
#include "qhosvd/qsvd.hpp"

namespace qhosvd {

std::size_t QhosvdFactors::mode_rank(std::size_t s) const {
    const auto& sigma = mode_singular_values.at(s);
    if (sigma.empty() || sigma.front() <= 0.0) return 0;
    const double cutoff = 1e-10 * sigma.front();
    std::size_t r = 0;
    for (double v : sigma)
        if (v > cutoff) ++r;
    return r;
}

QhosvdFactors qhosvd(const QTensor& t, const std::vector<std::size_t>& modes) {
    if (t.size() == 0) throw ShapeError("qhosvd: empty tensor");
    if (modes.empty()) throw ModeError("qhosvd: empty mode list");
    const std::size_t order = t.order();
    for (std::size_t m : modes) {
        if (m < 1 || m > order)
            throw ModeError("qhosvd: mode " + std::to_string(m) + " out of range 1.." +
                            std::to_string(order));
        if (std::count(modes.begin(), modes.end(), m) > 1)
            throw ModeError("qhosvd: repeated mode " + std::to_string(m));
    }

    QhosvdFactors out;
    out.decomposed_modes = modes;
    QTensor working = t;
    for (std::size_t m : modes) {
        const QsvdResult stage = qsvd_left(unfold(working, m));
        std::vector<double> sigma = stage.singular_values;
        sigma.resize(t.dims()[m - 1], 0.0); // pad to N_l
        out.mode_singular_values.push_back(std::move(sigma));
        working = mode_product(working, m, conjugate_transpose(stage.u));
        out.factors.push_back(stage.u);
    }
    out.core = std::move(working);
    return out;
}

QhosvdFactors qhosvd_full(const QTensor& t) {
    std::vector<std::size_t> modes(t.order());
    for (std::size_t i = 0; i < modes.size(); ++i) modes[i] = t.order() - i;
    return qhosvd(t, modes);
}

QTensor reconstruct(const QhosvdFactors& f) {
    // Ascending mode order; the order is semantically significant over
    // quaternions.
    std::vector<std::size_t> ascending(f.decomposed_modes.size());
    for (std::size_t i = 0; i < ascending.size(); ++i) ascending[i] = i;
    std::sort(ascending.begin(), ascending.end(), [&f](std::size_t a, std::size_t b) {
        return f.decomposed_modes[a] < f.decomposed_modes[b];
    });
    QTensor t = f.core;
    for (std::size_t s : ascending) {
        const std::size_t mode = f.decomposed_modes[s];
        const QMatrix& u = f.factors[s];
        if (u.rows() != u.cols() || u.cols() != t.dims()[mode - 1])
            throw ShapeError("reconstruct: factor shape mismatch at mode " + std::to_string(mode));
        t = mode_product(t, mode, u);
    }
    return t;
}

QTensor hard_threshold_core(const QTensor& s, double tau) {
    if (tau < 0.0) throw ParameterError("hard threshold: negative tau");
    QTensor out = s;
    const double tau_sq = tau * tau;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.at_linear(i).modulus_sq() < tau_sq)
            out.set_linear(i, Quaternion{});
    }
    return out;
}

} // namespace qhosvd
