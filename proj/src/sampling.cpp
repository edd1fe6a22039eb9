#include "geomech/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geomech {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) + index));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 uniform_vec3(std::mt19937_64& rng, double lo, double hi) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = uniform(rng, lo, hi);
  return v;
}

Vec3 random_unit_vec3(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v(n(rng), n(rng), n(rng));
    const double r = v.norm();
    if (r > 1e-8) return v / r;
  }
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
    const double r = q.norm();
    if (r > 1e-8) {
      q.coeffs() /= r;
      return q.toRotationMatrix();
    }
  }
}

GroupElement random_group_element(Algebra a, std::mt19937_64& rng) {
  const Mat3 R = random_rotation(rng);
  if (a == Algebra::so3) return GroupElement::so3(R);
  return GroupElement::se3(R, uniform_vec3(rng, -1.0, 1.0));
}

GroupElement sample_group(Algebra a, std::uint64_t seed, std::uint64_t index) {
  auto rng = sample_stream(seed, index);
  return random_group_element(a, rng);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace geomech
