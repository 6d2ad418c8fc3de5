#pragma once

// Finite categories given by composition tables.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "fieldtopos/error.hpp"

namespace fieldtopos {

/// Fixed-width bitset sized at runtime.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && words_ == o.words_; }

  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h >> 17));
    return h;
  }

 private:
  std::size_t n_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

/// Textual description, as read from and written to category files.
struct CategoryDescription {
  struct Arrow {
    std::string id, src, dst;
    bool operator==(const Arrow&) const = default;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<std::array<std::string, 3>> compose;  // (g, f, g∘f)
  std::map<std::string, std::string> identities;

  bool operator==(const CategoryDescription&) const = default;
};

class FinCategory {
 public:
  FinCategory() = default;

  /// Builds and validates from index tables; `comp[g * m + f]` is g∘f or -1.
  FinCategory(std::vector<std::string> objects, std::vector<std::string> ids, std::vector<int> src,
              std::vector<int> dst, std::vector<int> comp, std::vector<int> identities)
      : objects_(std::move(objects)),
        ids_(std::move(ids)),
        src_(std::move(src)),
        dst_(std::move(dst)),
        comp_(std::move(comp)),
        identity_(std::move(identities)) {
    validate();
  }

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return ids_.size(); }
  const std::string& object_name(int a) const { return objects_[a]; }
  const std::string& morphism_id(int f) const { return ids_[f]; }
  int src(int f) const { return src_[f]; }
  int dst(int f) const { return dst_[f]; }
  int identity(int a) const { return identity_[a]; }
  bool is_identity(int f) const { return identity_[src_[f]] == f; }
  /// g∘f, or -1 when dst f != src g.
  int compose(int g, int f) const { return comp_[static_cast<std::size_t>(g) * ids_.size() + f]; }

  std::optional<int> find_object(std::string_view name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }
  std::optional<int> find_morphism(std::string_view id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (ids_[i] == id) return static_cast<int>(i);
    return std::nullopt;
  }

  /// Same objects and morphism ids, arrows reversed.
  FinCategory opposite() const {
    FinCategory op = *this;
    std::swap(op.src_, op.dst_);
    const std::size_t m = ids_.size();
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f) op.comp_[g * m + f] = comp_[f * m + g];
    return op;
  }

  CategoryDescription describe() const {
    CategoryDescription d;
    d.objects = objects_;
    for (std::size_t f = 0; f < ids_.size(); ++f) d.morphisms.push_back({ids_[f], objects_[src_[f]], objects_[dst_[f]]});
    for (std::size_t g = 0; g < ids_.size(); ++g)
      for (std::size_t f = 0; f < ids_.size(); ++f) {
        int gf = compose(static_cast<int>(g), static_cast<int>(f));
        if (gf >= 0 && !is_identity(static_cast<int>(g)) && !is_identity(static_cast<int>(f)))
          d.compose.push_back({ids_[g], ids_[f], ids_[gf]});
      }
    for (std::size_t a = 0; a < objects_.size(); ++a) d.identities[objects_[a]] = ids_[identity_[a]];
    return d;
  }

  bool operator==(const FinCategory& o) const {
    return objects_ == o.objects_ && ids_ == o.ids_ && src_ == o.src_ && dst_ == o.dst_ && comp_ == o.comp_ &&
           identity_ == o.identity_;
  }

 private:
  void validate() const {
    const std::size_t n = objects_.size(), m = ids_.size();
    if (identity_.size() != n) throw Error(ErrorKind::MissingIdentity, "one identity per object required");
    for (std::size_t f = 0; f < m; ++f)
      if (src_[f] < 0 || dst_[f] < 0 || static_cast<std::size_t>(src_[f]) >= n ||
          static_cast<std::size_t>(dst_[f]) >= n)
        throw Error(ErrorKind::DanglingMorphism, "morphism " + ids_[f] + " has an unknown endpoint");
    for (std::size_t a = 0; a < n; ++a) {
      const int e = identity_[a];
      if (e < 0 || static_cast<std::size_t>(e) >= m || src_[e] != static_cast<int>(a) || dst_[e] != static_cast<int>(a))
        throw Error(ErrorKind::MissingIdentity, "object " + objects_[a] + " has no identity");
    }
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f) {
        const int gf = comp_[g * m + f];
        const bool composable = dst_[f] == src_[g];
        if (!composable) {
          if (gf != -1)
            throw Error(ErrorKind::DanglingMorphism, "composite of non-composable " + ids_[g] + "," + ids_[f]);
          continue;
        }
        if (gf < 0 || static_cast<std::size_t>(gf) >= m)
          throw Error(ErrorKind::DanglingMorphism, "missing composite " + ids_[g] + "∘" + ids_[f]);
        if (src_[gf] != src_[f] || dst_[gf] != dst_[g])
          throw Error(ErrorKind::DanglingMorphism, "composite " + ids_[g] + "∘" + ids_[f] + " has wrong endpoints");
      }
    for (std::size_t f = 0; f < m; ++f) {
      if (compose(identity_[dst_[f]], static_cast<int>(f)) != static_cast<int>(f) ||
          compose(static_cast<int>(f), identity_[src_[f]]) != static_cast<int>(f))
        throw Error(ErrorKind::MissingIdentity, "unit law fails at " + ids_[f]);
    }
    for (std::size_t h = 0; h < m; ++h)
      for (std::size_t g = 0; g < m; ++g) {
        const int hg = comp_[h * m + g];
        if (hg < 0) continue;
        for (std::size_t f = 0; f < m; ++f) {
          const int gf = comp_[g * m + f];
          if (gf < 0) continue;
          if (compose(hg, static_cast<int>(f)) != compose(static_cast<int>(h), gf))
            throw Error(ErrorKind::NonAssociative,
                        "(" + ids_[h] + "∘" + ids_[g] + ")∘" + ids_[f] + " != " + ids_[h] + "∘(" + ids_[g] + "∘" +
                            ids_[f] + ")");
        }
      }
  }

  std::vector<std::string> objects_;
  std::vector<std::string> ids_;
  std::vector<int> src_, dst_;
  std::vector<int> comp_;
  std::vector<int> identity_;
};

/// Resolves names, fills in composites with identities, and validates.
inline FinCategory validate_category(const CategoryDescription& d) {
  std::unordered_map<std::string, int> obj, mor;
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    if (!obj.emplace(d.objects[i], static_cast<int>(i)).second)
      throw Error(ErrorKind::DanglingMorphism, "duplicate object " + d.objects[i]);
  std::vector<std::string> ids;
  std::vector<int> src, dst;
  for (const auto& a : d.morphisms) {
    auto s = obj.find(a.src), t = obj.find(a.dst);
    if (s == obj.end() || t == obj.end())
      throw Error(ErrorKind::DanglingMorphism, "morphism " + a.id + " refers to an unknown object");
    if (!mor.emplace(a.id, static_cast<int>(ids.size())).second)
      throw Error(ErrorKind::DanglingMorphism, "duplicate morphism id " + a.id);
    ids.push_back(a.id);
    src.push_back(s->second);
    dst.push_back(t->second);
  }
  const std::size_t m = ids.size();
  std::vector<int> identities(d.objects.size(), -1);
  for (const auto& [o, id] : d.identities) {
    auto s = obj.find(o);
    auto f = mor.find(id);
    if (s == obj.end()) throw Error(ErrorKind::DanglingMorphism, "identity for unknown object " + o);
    if (f == mor.end()) throw Error(ErrorKind::DanglingMorphism, "identity refers to unknown morphism " + id);
    identities[s->second] = f->second;
  }
  for (std::size_t a = 0; a < identities.size(); ++a)
    if (identities[a] < 0) throw Error(ErrorKind::MissingIdentity, "object " + d.objects[a] + " has no identity");
  std::vector<int> comp(m * m, -1);
  auto lookup = [&](const std::string& id) {
    auto it = mor.find(id);
    if (it == mor.end()) throw Error(ErrorKind::DanglingMorphism, "composition refers to unknown morphism " + id);
    return it->second;
  };
  for (const auto& [g, f, gf] : d.compose) {
    const int gi = lookup(g), fi = lookup(f), gfi = lookup(gf);
    if (dst[fi] != src[gi]) throw Error(ErrorKind::DanglingMorphism, g + "∘" + f + " is not composable");
    int& slot = comp[gi * m + fi];
    if (slot >= 0 && slot != gfi) throw Error(ErrorKind::NonAssociative, "conflicting composites for " + g + "∘" + f);
    slot = gfi;
  }
  // composites with identities may be omitted
  for (std::size_t f = 0; f < m; ++f) {
    auto fill = [&](std::size_t g, std::size_t h) {
      if (comp[g * m + h] < 0) comp[g * m + h] = static_cast<int>(f);
    };
    fill(static_cast<std::size_t>(identities[dst[f]]), f);
    fill(f, static_cast<std::size_t>(identities[src[f]]));
  }
  return FinCategory(d.objects, std::move(ids), std::move(src), std::move(dst), std::move(comp),
                     std::move(identities));
}

}  // namespace fieldtopos
