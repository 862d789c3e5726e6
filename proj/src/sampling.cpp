#include "bplab/sampling.hpp"

#include "bplab/gradients.hpp"
#include "bplab/rng.hpp"

#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace bplab {

namespace {

// Uniform on [-h, h) from one 64-bit counter draw.
double uniform_symmetric(std::uint64_t bits, double h) {
    const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return (2.0 * unit - 1.0) * h;
}

std::string toy_label(const GaussianModel& m, Axis direction) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "gaussian:sx=%.17g:sy=%.17g:d%c", m.sigma_x(), m.sigma_y(),
                  direction == Axis::X ? 'x' : 'y');
    return buf;
}

void check_toy_args(std::size_t n_samples, double halfwidth) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (!(halfwidth > 0.0)) throw std::invalid_argument("domain halfwidth must be > 0");
}

double toy_derivative(const GaussianModel& m, Axis direction, double x, double y) {
    return direction == Axis::X ? derivative_x(m, x, y) : derivative_y(m, x, y);
}

} // namespace

DerivativeSampleSet sample_toy_derivatives(const GaussianModel& model, Axis direction, std::size_t n_samples,
                                           double halfwidth, std::uint64_t master_seed) {
    check_toy_args(n_samples, halfwidth);
    DerivativeSampleSet set;
    set.config_label = toy_label(model, direction);
    set.master_seed = master_seed;
    set.samples.resize(n_samples);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double x = uniform_symmetric(derive_seed(master_seed, 2 * k), halfwidth);
        const double y = uniform_symmetric(derive_seed(master_seed, 2 * k + 1), halfwidth);
        set.samples[k] = toy_derivative(model, direction, x, y);
        const double f = value(model, x, y);
        if (f < best) {
            best = f;
            set.anchor = std::pair{x, y};
        }
    }
    return set;
}

DerivativeSampleSet sample_toy_slice(const GaussianModel& model, Axis direction, std::pair<double, double> anchor,
                                     std::size_t n_samples, double halfwidth, std::uint64_t master_seed) {
    check_toy_args(n_samples, halfwidth);
    DerivativeSampleSet set;
    set.config_label = toy_label(model, direction) + ":slice";
    set.master_seed = master_seed;
    set.anchor = anchor;
    set.samples.resize(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double t = uniform_symmetric(derive_seed(master_seed, k), halfwidth);
        const double x = direction == Axis::X ? t : anchor.first;
        const double y = direction == Axis::Y ? t : anchor.second;
        set.samples[k] = toy_derivative(model, direction, x, y);
    }
    return set;
}

Circuit circuit_for_sample(AnsatzFamily family, std::size_t n_qubits, std::size_t layers, Rng& rng) {
    switch (family) {
    case AnsatzFamily::HEA: return build_hea(n_qubits, layers);
    case AnsatzFamily::RPA: {
        const std::uint64_t structure_seed = rng();
        return build_rpa(n_qubits, layers, structure_seed);
    }
    case AnsatzFamily::CUSTOM: break;
    }
    throw std::invalid_argument("VQE sampling supports HEA and RPA only");
}

DerivativeSampleSet sample_vqe_derivatives(const VqeSamplingSpec& spec, const PauliObservable& obs) {
    if (spec.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (spec.family == AnsatzFamily::CUSTOM) throw std::invalid_argument("VQE sampling supports HEA and RPA only");
    if (obs.min_qubits() > spec.n_qubits) throw std::invalid_argument("observable addresses qubits outside the register");

    const std::size_t d = spec.family == AnsatzFamily::HEA ? 3 * spec.n_qubits * spec.layers : spec.n_qubits * spec.layers;
    if (spec.slot >= d) {
        throw std::out_of_range("direction slot " + std::to_string(spec.slot) + " >= param_count " + std::to_string(d));
    }

    DerivativeSampleSet set;
    set.config_label = std::string(to_string(spec.family)) + ":N=" + std::to_string(spec.n_qubits) +
                       ":L=" + std::to_string(spec.layers) + ":slot=" + std::to_string(spec.slot);
    set.master_seed = spec.master_seed;
    set.samples.resize(spec.n_samples);

    // HEA has no structural randomness, so one circuit serves every sample.
    std::optional<Circuit> fixed;
    if (spec.family == AnsatzFamily::HEA) fixed = build_hea(spec.n_qubits, spec.layers);

    struct Scratch {
        std::vector<double> theta;
        std::optional<GradientWorkspace> hea_ws;
    };
    parallel_for(
        spec.n_samples, spec.workers,
        [&] {
            Scratch s;
            s.theta.resize(d);
            if (fixed) s.hea_ws.emplace(*fixed, obs);
            return s;
        },
        [&](Scratch& s, std::size_t k) {
            Rng rng = make_stream(spec.master_seed, k);
            if (fixed) {
                draw_angles(rng, s.theta);
                set.samples[k] = s.hea_ws->partial(s.theta, spec.slot);
            } else {
                const Circuit c = circuit_for_sample(spec.family, spec.n_qubits, spec.layers, rng);
                draw_angles(rng, s.theta);
                GradientWorkspace ws(c, obs);
                set.samples[k] = ws.partial(s.theta, spec.slot);
            }
        });
    return set;
}

} // namespace bplab
