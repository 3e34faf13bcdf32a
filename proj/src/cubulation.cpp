#include "overlap/cubulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "overlap/error.hpp"
#include "overlap/parallel.hpp"

namespace overlap {

namespace {

std::int64_t power(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > INT64_MAX / base) throw SizeLimitError("integer power overflows");
    out *= base;
  }
  return out;
}

std::int64_t residue(std::int64_t x, std::int64_t r) { return ((x % r) + r) % r; }

}  // namespace

CubeSet CubeSet::from_roots(int k, std::vector<Root> roots) {
  if (k < 1) throw PreconditionError("CubeSet: dimension must be positive");
  for (const auto& m : roots) {
    if (static_cast<int>(m.size()) != k) throw MalformedInput("CubeSet: root has the wrong number of coordinates");
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return CubeSet{k, std::move(roots)};
}

bool cube_in_Y(const Root& m, int r, int q) {
  if (r < 2) throw PreconditionError("cube_in_Y: r must be at least 2");
  if (q < 0 || q > static_cast<int>(m.size())) throw PreconditionError("cube_in_Y: q must lie in [0, k]");
  int hits = 0;
  for (std::int64_t x : m) {
    if (residue(x + 1, r) == 0) ++hits;
  }
  return hits >= q;
}

std::int64_t cov_c(const CubeSet& z) { return static_cast<std::int64_t>(z.roots.size()); }

CubeSet intersect_with_Y(const CubeSet& z, int r, int q) {
  CubeSet out{z.k, {}};
  for (const auto& m : z.roots) {
    if (cube_in_Y(m, r, q)) out.roots.push_back(m);
  }
  return out;
}

std::int64_t translate_bound(int k, int r, int q) {
  std::int64_t binom = 1;
  for (int i = 1; i <= q; ++i) binom = binom * (k - q + i) / i;
  return binom * power(r, k - q);
}

TranslateResult find_translate(const CubeSet& z, int r, int q, int threads) {
  const int k = z.k;
  if (r < 2) throw PreconditionError("find_translate: r must be at least 2");
  if (q < 0 || q > k) throw PreconditionError("find_translate: q must lie in [0, k]");
  const std::int64_t cells = power(r, k);
  if (cov_c(z) > cells) {
    throw PreconditionError("find_translate: " + std::to_string(cov_c(z)) + " cubes exceed r^k = " +
                            std::to_string(cells));
  }

  // Index i encodes v with v[0] most significant, so index order is lexicographic.
  auto decode = [&](std::uint64_t i) {
    Root v(k);
    for (int j = k - 1; j >= 0; --j) {
      v[j] = static_cast<std::int64_t>(i % static_cast<std::uint64_t>(r));
      i /= static_cast<std::uint64_t>(r);
    }
    return v;
  };
  struct Best {
    std::int64_t count = -1;
    std::uint64_t index = 0;
  };
  auto better = [](Best a, Best b) {
    if (b.count < 0) return a;
    if (a.count < 0 || b.count < a.count || (b.count == a.count && b.index < a.index)) return b;
    return a;
  };
  auto block = [&](std::uint64_t begin, std::uint64_t end) {
    Best best;
    Root shifted(k);
    for (std::uint64_t i = begin; i < end; ++i) {
      const Root v = decode(i);
      std::int64_t count = 0;
      for (const auto& m : z.roots) {
        for (int j = 0; j < k; ++j) shifted[j] = m[j] - v[j];
        if (cube_in_Y(shifted, r, q)) ++count;
      }
      best = better(best, Best{count, i});
    }
    return best;
  };
  const Best best = parallel_reduce(static_cast<std::uint64_t>(cells), threads, Best{}, block, better);

  TranslateResult out;
  out.v = decode(best.index);
  out.count = best.count;
  out.bound = translate_bound(k, r, q);
  if (out.count > out.bound) throw InternalError("find_translate: averaging bound violated");
  return out;
}

CubeSet cubes_covering_ball(const std::vector<double>& centre) {
  const int k = static_cast<int>(centre.size());
  if (k < 1) throw PreconditionError("cubes_covering_ball: empty centre");
  Root low(k);
  for (int j = 0; j < k; ++j) low[j] = static_cast<std::int64_t>(std::floor(centre[j] - 1.5));
  std::vector<Root> roots;
  const std::int64_t count = power(3, k);
  for (std::int64_t i = 0; i < count; ++i) {
    Root m = low;
    std::int64_t rest = i;
    for (int j = k - 1; j >= 0; --j) {
      m[j] += rest % 3;
      rest /= 3;
    }
    roots.push_back(std::move(m));
  }
  return CubeSet::from_roots(k, std::move(roots));
}

std::vector<std::vector<double>> balls_covering_cube(const Root& m) {
  const int k = static_cast<int>(m.size());
  if (k < 1) throw PreconditionError("balls_covering_cube: empty root");
  std::vector<std::vector<double>> centres;
  const std::int64_t count = power(k, k);
  for (std::int64_t i = 0; i < count; ++i) {
    std::vector<double> c(k);
    std::int64_t rest = i;
    for (int j = k - 1; j >= 0; --j) {
      c[j] = static_cast<double>(m[j]) + 0.5 + static_cast<double>(rest % k) / k;
      rest /= k;
    }
    centres.push_back(std::move(c));
  }
  return centres;
}

}  // namespace overlap
