#pragma once

// Exhaustive generation of small finite categories up to isomorphism.
//
// Shapes are hom-set size matrices, canonical under object permutations.
// For each shape, morphisms are labelled block by block (identity first in
// each diagonal block) and composition tables are filled cell by cell with
// associativity checked as soon as the cells involved are known. A table is
// kept only if it is lexicographically least among its images under every
// relabelling that preserves the shape; partial tables already beaten by some
// relabelling are cut.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fieldtopos/category.hpp"

namespace fieldtopos {

namespace detail {

// k x k hom-size matrices with positive diagonal, total m, closed under
// composition (a->b and b->c force a->c), least in their S_k orbit.
inline std::vector<std::vector<int>> hom_shapes(int k, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> h(k * k, 0);
  std::vector<int> perm(k);
  auto canonical = [&] {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> q(k * k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) q[i * k + j] = h[perm[i] * k + perm[j]];
      if (q < h) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  };
  auto closed = [&] {
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c)
          if (h[a * k + b] > 0 && h[b * k + c] > 0 && h[a * k + c] == 0) return false;
    return true;
  };
  auto rec = [&](auto&& self, int cell, int left) -> void {
    if (cell == k * k) {
      if (left == 0 && closed() && canonical()) out.push_back(h);
      return;
    }
    const bool diagonal = cell / k == cell % k;
    for (int v = diagonal ? 1 : 0; v <= left; ++v) {
      h[cell] = v;
      self(self, cell + 1, left - v);
    }
    h[cell] = 0;
  };
  rec(rec, 0, m);
  return out;
}

class ShapeSearch {
 public:
  ShapeSearch(int k, const std::vector<int>& hom) : k_(k), hom_(hom) {
    // label morphisms block by block
    block_start_.assign(k * k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        block_start_[i * k + j] = m_;
        for (int t = 0; t < hom[i * k + j]; ++t) {
          src_.push_back(i);
          dst_.push_back(j);
          ++m_;
        }
      }
    ident_.resize(k);
    is_ident_.assign(m_, false);
    for (int i = 0; i < k; ++i) {
      ident_[i] = block_start_[i * k + i];
      is_ident_[ident_[i]] = true;
    }
    comp_.assign(m_ * m_, -2);
    for (int g = 0; g < m_; ++g)
      for (int f = 0; f < m_; ++f) {
        if (dst_[f] != src_[g]) continue;
        if (is_ident_[g])
          comp_[g * m_ + f] = f;
        else if (is_ident_[f])
          comp_[g * m_ + f] = g;
        else {
          comp_[g * m_ + f] = -1;
          cells_.push_back({g, f});
        }
      }
    // Squares first: every relabelling maps a square to a square, so the
    // comparison is decided early and most relabellings drop out.
    std::stable_partition(cells_.begin(), cells_.end(), [](const auto& c) { return c.first == c.second; });
    build_relabellings();
  }

  /// Calls `visit` on each canonical table; stops early if it returns false
  /// or the deadline passes. Returns false when stopped early.
  bool run(const std::function<bool(const FinCategory&)>& visit,
           std::optional<std::chrono::steady_clock::time_point> deadline) {
    visit_ = &visit;
    deadline_ = deadline;
    stopped_ = false;
    std::vector<Live> live;
    for (int p = 0; p < static_cast<int>(perms_.size()); ++p) live.push_back({p, 0});
    search(0, live);
    return !stopped_;
  }

 private:
  struct Live {
    int perm;
    int pos;
  };

  int get(int g, int f) const { return comp_[g * m_ + f]; }

  void build_relabellings() {
    std::vector<int> sigma(k_);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      bool preserves = true;
      for (int i = 0; i < k_ && preserves; ++i)
        for (int j = 0; j < k_; ++j)
          if (hom_[sigma[i] * k_ + sigma[j]] != hom_[i * k_ + j]) preserves = false;
      if (!preserves) continue;
      // product of permutations of the non-identity part of each block
      std::vector<std::vector<int>> blocks;  // target ids per source block
      std::vector<int> base(m_, -1);
      for (int i = 0; i < k_; ++i) base[ident_[i]] = ident_[sigma[i]];
      std::vector<std::pair<std::vector<int>, std::vector<int>>> movable;  // (sources, targets)
      for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) {
          const int skip = i == j ? 1 : 0;
          std::vector<int> from, to;
          for (int t = skip; t < hom_[i * k_ + j]; ++t) {
            from.push_back(block_start_[i * k_ + j] + t);
            to.push_back(block_start_[sigma[i] * k_ + sigma[j]] + t);
          }
          if (!from.empty()) movable.emplace_back(from, to);
        }
      std::function<void(std::size_t, std::vector<int>&)> expand = [&](std::size_t b, std::vector<int>& perm) {
        if (b == movable.size()) {
          perms_.push_back(perm);
          return;
        }
        auto to = movable[b].second;
        std::sort(to.begin(), to.end());
        do {
          for (std::size_t t = 0; t < to.size(); ++t) perm[movable[b].first[t]] = to[t];
          expand(b + 1, perm);
        } while (std::next_permutation(to.begin(), to.end()));
      };
      expand(0, base);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    inv_.resize(perms_.size());
    for (std::size_t p = 0; p < perms_.size(); ++p) {
      inv_[p].assign(m_, 0);
      for (int x = 0; x < m_; ++x) inv_[p][perms_[p][x]] = x;
    }
  }

  // Associativity for every triple whose four composites are known and
  // which involves cell (a, b).
  bool associative_at(int a, int b) const {
    const int v = get(a, b);
    for (int z = 0; z < m_; ++z) {
      if (dst_[z] != src_[b]) continue;
      const int bz = get(b, z), vz = get(v, z);
      if (bz >= 0 && vz >= 0) {
        const int r = get(a, bz);
        if (r >= 0 && r != vz) return false;
      }
    }
    for (int x = 0; x < m_; ++x) {
      if (src_[x] != dst_[a]) continue;
      const int xa = get(x, a), xv = get(x, v);
      if (xa >= 0 && xv >= 0) {
        const int l = get(xa, b);
        if (l >= 0 && l != xv) return false;
      }
    }
    for (int x = 0; x < m_; ++x)
      for (int y = 0; y < m_; ++y) {
        if (dst_[y] != src_[x]) continue;
        if (get(x, y) == a && dst_[b] == src_[y]) {
          const int yb = get(y, b);
          if (yb >= 0) {
            const int r = get(x, yb);
            if (r >= 0 && r != v) return false;
          }
        }
      }
    for (int y = 0; y < m_; ++y)
      for (int z = 0; z < m_; ++z) {
        if (dst_[z] != src_[y] || get(y, z) != b || src_[a] != dst_[y]) continue;
        const int ay = get(a, y);
        if (ay >= 0) {
          const int l = get(ay, z);
          if (l >= 0 && l != v) return false;
        }
      }
    return true;
  }

  // Advances every surviving relabelling; false if one already wins.
  bool refine(std::vector<Live>& live) const {
    std::size_t keep = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
      Live L = live[i];
      const auto& P = perms_[L.perm];
      const auto& Q = inv_[L.perm];
      bool drop = false;
      while (L.pos < static_cast<int>(cells_.size())) {
        const auto [g, f] = cells_[L.pos];
        const int mine = get(g, f);
        if (mine < 0) break;
        const int pre = get(Q[g], Q[f]);
        if (pre < 0) break;
        const int image = P[pre];
        if (image < mine) return false;
        if (image > mine) {
          drop = true;
          break;
        }
        ++L.pos;
      }
      if (!drop) live[keep++] = L;
    }
    live.resize(keep);
    return true;
  }

  void search(std::size_t t, const std::vector<Live>& live) {
    if (stopped_) return;
    if (t == cells_.size()) {
      emit();
      return;
    }
    const auto [g, f] = cells_[t];
    const int lo = block_start_[src_[f] * k_ + dst_[g]];
    const int hi = lo + hom_[src_[f] * k_ + dst_[g]];
    for (int v = lo; v < hi && !stopped_; ++v) {
      comp_[g * m_ + f] = v;
      if (!associative_at(g, f)) continue;
      std::vector<Live> next = live;
      if (!refine(next)) continue;
      search(t + 1, next);
    }
    comp_[g * m_ + f] = -1;
  }

  void emit() {
    if (deadline_ && (++emitted_ & 255) == 0 && std::chrono::steady_clock::now() > *deadline_) {
      stopped_ = true;
      return;
    }
    std::vector<std::string> objects, ids;
    for (int i = 0; i < k_; ++i) objects.push_back("o" + std::to_string(i));
    for (int f = 0; f < m_; ++f) ids.push_back("m" + std::to_string(f));
    std::vector<int> comp(comp_.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = comp_[i] < 0 ? -1 : comp_[i];
    FinCategory C(std::move(objects), std::move(ids), src_, dst_, std::move(comp), ident_);
    if (!(*visit_)(C)) stopped_ = true;
  }

  int k_;
  std::vector<int> hom_;
  int m_ = 0;
  std::vector<int> block_start_, src_, dst_, ident_;
  std::vector<bool> is_ident_;
  std::vector<int> comp_;  // -2 not composable, -1 unknown
  std::vector<std::pair<int, int>> cells_;
  std::vector<std::vector<int>> perms_, inv_;
  const std::function<bool(const FinCategory&)>* visit_ = nullptr;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  bool stopped_ = false;
  std::uint64_t emitted_ = 0;
};

}  // namespace detail

struct EnumerationResult {
  std::uint64_t categories = 0;
  bool complete = true;
};

/// Every category with 1..max_objects objects and exactly `morphisms`
/// morphisms, once per isomorphism class.
inline EnumerationResult enumerate_categories(
    int max_objects, int morphisms, const std::function<bool(const FinCategory&)>& visit,
    std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) {
  EnumerationResult result;
  auto counting = [&](const FinCategory& C) {
    ++result.categories;
    return visit(C);
  };
  std::function<bool(const FinCategory&)> wrapped = counting;
  for (int k = 1; k <= max_objects && k <= morphisms; ++k)
    for (const auto& shape : detail::hom_shapes(k, morphisms)) {
      detail::ShapeSearch search(k, shape);
      if (!search.run(wrapped, deadline)) {
        result.complete = false;
        return result;
      }
    }
  return result;
}

}  // namespace fieldtopos
