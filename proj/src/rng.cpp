#include "bplab/rng.hpp"

#include <numbers>

namespace bplab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) noexcept {
    // FNV-1a over the tag.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return derive_seed(master ^ splitmix64(h), index);
}

void draw_angles(Rng& rng, std::span<double> out) {
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (auto& a : out) a = angle(rng);
}

} // namespace bplab
