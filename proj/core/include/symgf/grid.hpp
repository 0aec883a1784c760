#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "symgf/matrix.hpp"

namespace symgf {

struct GridSpec {
  int n = 200;
  // Requested covector radius; see effective_p_radius.
  double p_radius = 0.1;
  // Base box, one interval per coordinate (broadcast when of length 1).
  Vec x_lo{-1.0};
  Vec x_hi{1.0};
  std::uint64_t seed = 0;
};

struct GridPoint {
  std::vector<Vec> p;  // one covector per slot
  Vec x;
};

// min(requested, 0.1 * domain_radius); the requested value when the domain
// is unbounded.
double effective_p_radius(double requested, double domain_radius);

// Scrambled Halton points: `slots` covectors of dimension p_dim inside the
// Euclidean ball of radius p_radius, and x in the box. Digit permutations are
// drawn from mt19937_64(seed), so a seed fixes the grid bit for bit.
std::vector<GridPoint> make_grid(const GridSpec& spec, int slots, int p_dim, int x_dim,
                                 double p_radius);

// Radical inverse of `index` in `base` with a digit permutation.
double scrambled_radical_inverse(std::uint64_t index, int base, const std::vector<int>& perm);

// Runs fn(i) for i in [0, n) on `jobs` threads. fn writes its own slot of a
// preallocated output, so results do not depend on scheduling. The first
// exception thrown by a worker is rethrown.
template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(jobs, n);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace symgf
