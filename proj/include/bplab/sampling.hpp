#pragma once

#include "bplab/circuit.hpp"
#include "bplab/gaussian.hpp"
#include "bplab/parallel.hpp"
#include "bplab/rng.hpp"
#include "bplab/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>

namespace bplab {

enum class Axis { X, Y };

inline constexpr double kDefaultToyHalfwidth = 20.0;

/// (x, y) i.i.d. uniform on [-h, h]^2; records the analytic derivative along
/// `direction` and keeps the lowest-cost point as the set's anchor.
DerivativeSampleSet sample_toy_derivatives(const GaussianModel& model, Axis direction, std::size_t n_samples,
                                           double halfwidth, std::uint64_t master_seed);

/// Derivative along `direction` on the line through `anchor` parallel to that
/// axis: only the `direction` coordinate is drawn (uniform on [-h, h]).
DerivativeSampleSet sample_toy_slice(const GaussianModel& model, Axis direction, std::pair<double, double> anchor,
                                     std::size_t n_samples, double halfwidth, std::uint64_t master_seed);

struct VqeSamplingSpec {
    AnsatzFamily family = AnsatzFamily::HEA;
    std::size_t n_qubits = 2;
    std::size_t layers = 20;
    std::size_t slot = 0;
    std::size_t n_samples = 100;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;
};

/**
 * Parameter-shift derivative at `slot` with theta uniform on [0, 2 pi)^d per
 * sample. RPA draws fresh Pauli axes for every sample; HEA is fixed. Sample k
 * uses stream (master_seed, k) regardless of the worker count.
 */
DerivativeSampleSet sample_vqe_derivatives(const VqeSamplingSpec& spec, const PauliObservable& obs);

/// Circuit used for VQE sample k (HEA: fixed; RPA: structure from the sample's stream).
/// `rng` is advanced exactly as sample_vqe_derivatives advances it.
Circuit circuit_for_sample(AnsatzFamily family, std::size_t n_qubits, std::size_t layers, Rng& rng);

} // namespace bplab
