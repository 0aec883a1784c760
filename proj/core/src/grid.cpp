#include "symgf/grid.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "symgf/errors.hpp"

namespace symgf {

namespace {

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double box_value(const Vec& v, int i) { return v.size() == 1 ? v[0] : v[i]; }

}  // namespace

double effective_p_radius(double requested, double domain_radius) {
  if (!(requested > 0.0)) throw ArgumentError("p radius must be positive");
  if (!std::isfinite(domain_radius)) return requested;
  return std::min(requested, 0.1 * domain_radius);
}

double scrambled_radical_inverse(std::uint64_t index, int base, const std::vector<int>& perm) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += perm[index % base] * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

std::vector<GridPoint> make_grid(const GridSpec& spec, int slots, int p_dim, int x_dim,
                                 double p_radius) {
  if (spec.n < 1) throw ArgumentError("grid: n must be >= 1");
  if (slots < 0 || p_dim < 0 || x_dim < 0) throw ArgumentError("grid: negative dimension");
  auto box_ok = [&](const Vec& v) {
    return v.size() == 1 || static_cast<int>(v.size()) == x_dim;
  };
  if (!box_ok(spec.x_lo) || !box_ok(spec.x_hi)) {
    throw ArgumentError("grid: x box must have 1 or x_dim entries");
  }
  for (int i = 0; i < x_dim; ++i) {
    if (!(box_value(spec.x_lo, i) <= box_value(spec.x_hi, i))) {
      throw ArgumentError("grid: empty x box");
    }
  }
  const int dims = slots * p_dim + x_dim;
  const std::vector<int> bases = first_primes(dims);
  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<int>> perms;
  for (int b : bases) {
    std::vector<int> perm(b);
    std::iota(perm.begin(), perm.end(), 0);
    // Keep 0 fixed so the trailing zero digits of an index contribute nothing.
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    perms.push_back(std::move(perm));
  }
  std::vector<GridPoint> grid(spec.n);
  Vec u(dims);
  for (int s = 0; s < spec.n; ++s) {
    const std::uint64_t index = static_cast<std::uint64_t>(s) + 1;
    for (int j = 0; j < dims; ++j) u[j] = scrambled_radical_inverse(index, bases[j], perms[j]);
    GridPoint& g = grid[s];
    for (int slot = 0; slot < slots; ++slot) {
      Vec v(p_dim);
      double inf = 0.0, two = 0.0;
      for (int i = 0; i < p_dim; ++i) {
        v[i] = 2.0 * u[slot * p_dim + i] - 1.0;
        inf = std::max(inf, std::abs(v[i]));
        two += v[i] * v[i];
      }
      two = std::sqrt(two);
      // Radial squeeze of the cube onto the ball: |p|_2 = r |v|_inf.
      const double f = two > 0.0 ? p_radius * inf / two : 0.0;
      for (double& c : v) c *= f;
      g.p.push_back(std::move(v));
    }
    g.x.resize(x_dim);
    for (int i = 0; i < x_dim; ++i) {
      const double lo = box_value(spec.x_lo, i);
      const double hi = box_value(spec.x_hi, i);
      g.x[i] = lo + (hi - lo) * u[slots * p_dim + i];
    }
  }
  return grid;
}

}  // namespace symgf
