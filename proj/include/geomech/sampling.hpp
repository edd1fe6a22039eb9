#ifndef GEOMECH_SAMPLING_HPP
#define GEOMECH_SAMPLING_HPP

// Seeded sampling.  Every sample index owns an independent generator derived
// from (seed, index), so results do not depend on evaluation order or on the
// number of worker threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

#include "geomech/lie.hpp"

namespace geomech {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Generator for sample `index` of a run seeded with `seed`.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

double uniform(std::mt19937_64& rng, double lo, double hi);
Vec3 uniform_vec3(std::mt19937_64& rng, double lo, double hi);
Vec3 random_unit_vec3(std::mt19937_64& rng);

/// Haar-uniform rotation from a normalized Gaussian quaternion.
Mat3 random_rotation(std::mt19937_64& rng);
/// Haar rotation; for SE(3) the translation is uniform in [-1, 1]^3.
GroupElement random_group_element(Algebra a, std::mt19937_64& rng);
/// random_group_element drawn from sample_stream(seed, index).
GroupElement sample_group(Algebra a, std::uint64_t seed, std::uint64_t index);

/// Calls body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency).  The body must only write to per-index storage.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace geomech

#endif  // GEOMECH_SAMPLING_HPP
