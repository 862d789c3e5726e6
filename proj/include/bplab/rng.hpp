#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace bplab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `index` under `master`. Streams depend only on (master, index),
/// never on which worker draws them.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Namespaced variant so unrelated consumers of one master seed never collide.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) noexcept;

inline Rng make_stream(std::uint64_t master, std::uint64_t index) { return Rng(derive_seed(master, index)); }

/// Fills `out` with angles uniform on [0, 2 pi).
void draw_angles(Rng& rng, std::span<double> out);

} // namespace bplab
