#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "fieldtopos/catenum.hpp"
#include "fieldtopos/site.hpp"

using namespace fieldtopos;

namespace {

using Key = std::vector<int>;

// Least encoding of (src, dst, composition) over all relabellings of objects
// and morphisms that send the identity of object b to morphism b.
Key canonical_key(int k, int m, const std::vector<int>& src, const std::vector<int>& dst,
                  const std::vector<int>& ident, const std::vector<int>& comp) {
  Key best;
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<int> pi(m);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      bool ok = true;
      for (int a = 0; a < k && ok; ++a) ok = pi[ident[a]] == sigma[a];
      if (!ok) continue;
      std::vector<int> inv(m);
      for (int f = 0; f < m; ++f) inv[pi[f]] = f;
      Key key{k, m};
      for (int x = 0; x < m; ++x) {
        key.push_back(sigma[src[inv[x]]]);
        key.push_back(sigma[dst[inv[x]]]);
      }
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
          const int c = comp[inv[x] * m + inv[y]];
          key.push_back(c < 0 ? -1 : pi[c]);
        }
      if (best.empty() || key < best) best = key;
    } while (std::next_permutation(pi.begin(), pi.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

Key canonical_key(const FinCategory& C) {
  const int k = static_cast<int>(C.object_count()), m = static_cast<int>(C.morphism_count());
  std::vector<int> src(m), dst(m), ident(k), comp(m * m);
  for (int f = 0; f < m; ++f) {
    src[f] = C.src(f);
    dst[f] = C.dst(f);
  }
  for (int a = 0; a < k; ++a) ident[a] = C.identity(a);
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) comp[g * m + f] = C.compose(g, f);
  return canonical_key(k, m, src, dst, ident, comp);
}

// Test-only oracle: every labelled category with k objects and m morphisms
// (morphism a is the identity of object a), reduced to canonical keys.
std::set<Key> brute_force(int max_objects, int m) {
  std::set<Key> out;
  for (int k = 1; k <= std::min(max_objects, m); ++k) {
    std::vector<int> src(m), dst(m), ident(k);
    std::iota(ident.begin(), ident.end(), 0);
    for (int a = 0; a < k; ++a) src[a] = dst[a] = a;
    auto fill_tables = [&] {
      std::vector<int> comp(m * m, -1);
      std::vector<std::pair<int, int>> cells;
      for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
          if (dst[f] != src[g]) continue;
          if (g < k)
            comp[g * m + f] = f;
          else if (f < k)
            comp[g * m + f] = g;
          else
            cells.emplace_back(g, f);
        }
      auto associative = [&] {
        for (int h = 0; h < m; ++h)
          for (int g = 0; g < m; ++g)
            for (int f = 0; f < m; ++f) {
              if (dst[f] != src[g] || dst[g] != src[h]) continue;
              const int hg = comp[h * m + g], gf = comp[g * m + f];
              if (hg < 0 || gf < 0) continue;
              const int l = comp[hg * m + f], r = comp[h * m + gf];
              if (l >= 0 && r >= 0 && l != r) return false;
            }
        return true;
      };
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == cells.size()) {
          out.insert(canonical_key(k, m, src, dst, ident, comp));
          return;
        }
        const auto [g, f] = cells[i];
        for (int v = 0; v < m; ++v) {
          if (src[v] != src[f] || dst[v] != dst[g]) continue;
          comp[g * m + f] = v;
          if (associative()) self(self, i + 1);
        }
        comp[g * m + f] = -1;
      };
      rec(rec, 0);
    };
    auto place = [&](auto&& self, int f) -> void {
      if (f == m) {
        fill_tables();
        return;
      }
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          src[f] = a;
          dst[f] = b;
          self(self, f + 1);
        }
    };
    place(place, k);
  }
  return out;
}

}  // namespace

TEST(Enumerate, MonoidCounts) {
  const std::vector<std::uint64_t> expected = {1, 2, 7, 35, 228, 2237};
  for (int m = 1; m <= 6; ++m)
    EXPECT_EQ(enumerate_categories(1, m, [](const FinCategory&) { return true; }).categories, expected[m - 1])
        << "order " << m;
}

TEST(Enumerate, MatchesBruteForce) {
  for (int m = 1; m <= 5; ++m) {
    std::set<Key> keys;
    std::size_t emitted = 0;
    enumerate_categories(3, m, [&](const FinCategory& C) {
      ++emitted;
      keys.insert(canonical_key(C));
      return true;
    });
    EXPECT_EQ(keys.size(), emitted) << "isomorphic duplicates at m=" << m;
    EXPECT_EQ(keys, brute_force(3, m)) << "m=" << m;
  }
}

TEST(Enumerate, ObjectBoundRespected) {
  enumerate_categories(2, 5, [](const FinCategory& C) {
    EXPECT_LE(C.object_count(), 2u);
    EXPECT_EQ(C.morphism_count(), 5u);
    return true;
  });
}

TEST(Enumerate, VisitorStops) {
  int seen = 0;
  auto r = enumerate_categories(3, 5, [&](const FinCategory&) { return ++seen < 10; });
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(seen, 10);
}

TEST(Enumerate, DeadlineStops) {
  auto r = enumerate_categories(
      1, 6, [](const FinCategory&) { return true; }, std::chrono::steady_clock::now());
  EXPECT_FALSE(r.complete);
  EXPECT_LT(r.categories, 2237u);
}

TEST(Enumerate, OreMatchesDeMorganOnOpposite) {
  for (int m = 1; m <= 6; ++m)
    enumerate_categories(3, m, [&](const FinCategory& C) {
      const bool ore = ore_check(C).holds;
      const bool dm = is_demorgan(trivial_topology(make_site(C.opposite()))).holds;
      EXPECT_EQ(ore, dm) << "m=" << m;
      return ore == dm;
    });
}
