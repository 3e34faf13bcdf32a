#include "overlap/separation.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "overlap/error.hpp"
#include "overlap/parallel.hpp"

namespace overlap {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw PreconditionError("bad rational '" + text + "'");
      return Rational(v);
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const long long p = std::stoll(num, &used);
    if (used != num.size()) throw PreconditionError("bad rational '" + text + "'");
    const long long q = std::stoll(den, &used);
    if (used != den.size() || q == 0) throw PreconditionError("bad rational '" + text + "'");
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw PreconditionError("bad rational '" + text + "'");
  }
}

namespace {

std::vector<Vertex> labels_of(const Graph& g, std::uint64_t mask) {
  std::vector<Vertex> out;
  while (mask) {
    out.push_back(g.label[std::countr_zero(mask)]);
    mask &= mask - 1;
  }
  return out;
}

/// Lexicographic order of the ascending element lists of two bitsets.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const std::uint64_t diff = a ^ b;
  const int d = std::countr_zero(diff);
  const std::uint64_t above = d >= 63 ? 0 : ~((std::uint64_t{2} << d) - 1);
  if (b & (std::uint64_t{1} << d)) {
    // b holds the smaller element at the first difference unless a already ended.
    return (a & above) == 0;
  }
  return (b & above) != 0;
}

/// Largest component of the graph induced on `alive`.
int largest_component(const std::vector<std::uint64_t>& nbr, std::uint64_t alive) {
  int largest = 0;
  while (alive) {
    std::uint64_t frontier = alive & (~alive + 1);
    std::uint64_t comp = frontier;
    while (frontier) {
      std::uint64_t next = 0;
      std::uint64_t f = frontier;
      while (f) {
        next |= nbr[std::countr_zero(f)];
        f &= f - 1;
      }
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    largest = std::max(largest, std::popcount(comp));
    alive &= ~comp;
  }
  return largest;
}

}  // namespace

SeparatorWitness separation_cut(const Graph& g, const SearchLimits& limits) {
  const int n = g.size();
  if (n > std::min(limits.max_vertices, 62)) {
    throw SizeLimitError("separation_cut: " + std::to_string(n) + " vertices exceed the brute-force limit of " +
                         std::to_string(limits.max_vertices));
  }
  if (n == 0) return {};
  std::vector<std::uint64_t> nbr(n);
  for (int v = 0; v < n; ++v) nbr[v] = g.neighbor_mask(v);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;

  struct Found {
    std::optional<std::uint64_t> mask;
    int largest = 0;
  };
  auto better = [](Found a, Found b) {
    if (!b.mask) return a;
    if (!a.mask || lex_less(*b.mask, *a.mask)) return b;
    return a;
  };

  for (int size = 0; size <= n; ++size) {
    // Lexicographic combinations of `size` vertices whose first element lies in [begin, end).
    auto block = [&](std::uint64_t begin, std::uint64_t end) {
      Found found;
      if (size == 0) {
        if (begin == 0) {
          const int largest = largest_component(nbr, all);
          if (2 * largest <= n) found = {0, largest};
        }
        return found;
      }
      std::vector<int> pick(size);
      for (auto first = static_cast<int>(begin); first < static_cast<int>(end); ++first) {
        if (first + size > n) break;
        for (int i = 0; i < size; ++i) pick[i] = first + i;
        while (true) {
          std::uint64_t s = 0;
          for (int v : pick) s |= std::uint64_t{1} << v;
          const int largest = largest_component(nbr, all & ~s);
          if (2 * largest <= n) return Found{s, largest};
          // Advance positions 1..size-1, keeping pick[0] == first.
          int i = size - 1;
          while (i >= 1 && pick[i] == n - size + i) --i;
          if (i < 1) break;
          ++pick[i];
          for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
      }
      return found;
    };
    const Found found = parallel_reduce(static_cast<std::uint64_t>(size == 0 ? 1 : n), limits.threads, Found{},
                                        block, better);
    if (found.mask) {
      SeparatorWitness w;
      w.separator = labels_of(g, *found.mask);
      w.max_component = found.largest;
      return w;
    }
  }
  throw InternalError("separation_cut: removing every vertex must succeed");
}

CheegerWitness cheeger_exact(const Graph& g, const SearchLimits& limits) {
  const int n = g.size();
  if (n > std::min(limits.max_vertices, 40)) {
    throw SizeLimitError("cheeger_exact: " + std::to_string(n) + " vertices exceed the subset-scan limit of " +
                         std::to_string(limits.max_vertices));
  }
  CheegerWitness out;
  if (n <= 1) {
    out.infinite = true;
    return out;
  }
  std::vector<std::uint64_t> nbr(n);
  for (int v = 0; v < n; ++v) nbr[v] = g.neighbor_mask(v);

  struct Best {
    std::int64_t num = 1;
    std::int64_t den = 0;  // den == 0 marks "nothing yet"
    std::uint64_t mask = 0;
  };
  auto better = [](Best a, Best b) {
    if (b.den == 0) return a;
    if (a.den == 0) return b;
    const std::int64_t lhs = b.num * a.den;
    const std::int64_t rhs = a.num * b.den;
    if (lhs < rhs || (lhs == rhs && lex_less(b.mask, a.mask))) return b;
    return a;
  };
  auto block = [&](std::uint64_t begin, std::uint64_t end) {
    Best best;
    for (std::uint64_t a = std::max<std::uint64_t>(begin, 1); a < end; ++a) {
      const int size = std::popcount(a);
      if (2 * size > n) continue;
      std::uint64_t reach = 0;
      std::uint64_t rest = a;
      while (rest) {
        reach |= nbr[std::countr_zero(rest)];
        rest &= rest - 1;
      }
      const Best candidate{std::popcount(reach & ~a), size, a};
      best = better(best, candidate);
    }
    return best;
  };
  const Best best = parallel_reduce(std::uint64_t{1} << n, limits.threads, Best{}, block, better);

  out.value = Rational(best.num, best.den);
  out.witness_set = labels_of(g, best.mask);
  std::uint64_t reach = 0;
  for (std::uint64_t rest = best.mask; rest; rest &= rest - 1) reach |= nbr[std::countr_zero(rest)];
  out.boundary = labels_of(g, reach & ~best.mask);
  return out;
}

}  // namespace overlap
