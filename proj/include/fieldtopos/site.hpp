#pragma once

// Sieves and Grothendieck topologies on a finite category. A sieve on d is a
// set of morphisms with codomain d closed under precomposition.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fieldtopos/category.hpp"
#include "fieldtopos/error.hpp"

namespace fieldtopos {

/// A category together with every sieve on every object. Sieves on d are
/// bitsets over `into(d)` and are numbered in order of size, then
/// lexicographically by member list; index 0 is the empty sieve.
class Site {
 public:
  static constexpr std::size_t kDefaultSieveLimit = 250'000;

  explicit Site(FinCategory C, std::size_t sieve_limit = kDefaultSieveLimit) : cat_(std::move(C)) {
    const std::size_t n = cat_.object_count(), m = cat_.morphism_count();
    into_.resize(n);
    local_.assign(m, -1);
    for (std::size_t f = 0; f < m; ++f) {
      auto& list = into_[cat_.dst(static_cast<int>(f))];
      local_[f] = static_cast<int>(list.size());
      list.push_back(static_cast<int>(f));
    }
    sieves_.resize(n);
    index_.resize(n);
    std::size_t total = 0;
    for (std::size_t d = 0; d < n; ++d) {
      enumerate_sieves(static_cast<int>(d), sieve_limit - std::min(total, sieve_limit));
      total += sieves_[d].size();
    }
    pullback_.resize(m);
    for (std::size_t f = 0; f < m; ++f) {
      const int e = cat_.src(static_cast<int>(f)), d = cat_.dst(static_cast<int>(f));
      auto& table = pullback_[f];
      table.reserve(sieves_[d].size());
      for (const Bits& S : sieves_[d]) table.push_back(index_of(e, pull(static_cast<int>(f), S)));
    }
  }

  const FinCategory& category() const noexcept { return cat_; }
  std::size_t object_count() const noexcept { return cat_.object_count(); }
  const std::vector<int>& into(int d) const { return into_[d]; }
  int local_index(int f) const { return local_[f]; }

  std::size_t sieve_count(int d) const { return sieves_[d].size(); }
  const Bits& sieve(int d, int s) const { return sieves_[d][s]; }
  int empty_sieve(int) const { return 0; }
  int maximal_sieve(int d) const { return static_cast<int>(sieves_[d].size()) - 1; }
  bool contains(int d, int s, int f) const { return sieves_[d][s].test(local_[f]); }

  int index_of(int d, const Bits& S) const {
    auto it = index_[d].find(S);
    if (it == index_[d].end()) throw Error(ErrorKind::InternalError, "not a sieve");
    return it->second;
  }
  std::optional<int> find(int d, const Bits& S) const {
    auto it = index_[d].find(S);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
  }

  /// f*S for f: e -> d.
  int pullback(int f, int s) const { return pullback_[f][s]; }

  /// Smallest sieve on d containing the given morphisms.
  int generate(int d, const std::vector<int>& gens) const {
    Bits S(into_[d].size());
    for (int f : gens) {
      if (f < 0 || static_cast<std::size_t>(f) >= cat_.morphism_count() || cat_.dst(f) != d)
        throw Error(ErrorKind::InvalidGenerator, "generator does not have codomain " + cat_.object_name(d));
      S |= principal(f);
    }
    return index_of(d, S);
  }

  bool subset(int d, int s, int t) const { return sieves_[d][s].subset_of(sieves_[d][t]); }
  int meet(int d, int s, int t) const { return index_of(d, sieves_[d][s] & sieves_[d][t]); }
  int join(int d, int s, int t) const { return index_of(d, sieves_[d][s] | sieves_[d][t]); }

  std::vector<int> members(int d, int s) const {
    std::vector<int> out;
    for (auto j : sieves_[d][s].members()) out.push_back(into_[d][j]);
    return out;
  }

  /// `{f,g}` with morphism ids.
  std::string sieve_to_string(int d, int s) const {
    std::string out;
    for (int f : members(d, s)) out += (out.empty() ? "" : ", ") + cat_.morphism_id(f);
    return "{" + out + "}";
  }

 private:
  // {f∘g : g into dom f}
  Bits principal(int f) const {
    const int d = cat_.dst(f), e = cat_.src(f);
    Bits S(into_[d].size());
    for (int g : into_[e]) S.set(local_[cat_.compose(f, g)]);
    return S;
  }

  Bits pull(int f, const Bits& S) const {
    const int e = cat_.src(f);
    Bits out(into_[e].size());
    for (std::size_t j = 0; j < into_[e].size(); ++j)
      if (S.test(local_[cat_.compose(f, into_[e][j])])) out.set(j);
    return out;
  }

  void enumerate_sieves(int d, std::size_t limit) {
    std::vector<Bits> principals;
    for (int f : into_[d]) principals.push_back(principal(f));
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> found{Bits(into_[d].size())};
    seen.insert(found.front());
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t j = 0; j < principals.size(); ++j) {
        if (found[i].test(j)) continue;
        Bits next = found[i] | principals[j];
        if (seen.insert(next).second) {
          found.push_back(next);
          if (found.size() > limit)
            throw Error(ErrorKind::TooLarge, "more than " + std::to_string(limit) + " sieves on the site");
        }
      }
    }
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keyed;
    for (std::size_t i = 0; i < found.size(); ++i) keyed.emplace_back(found[i].members(), i);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    for (auto& [key, i] : keyed) {
      index_[d].emplace(found[i], static_cast<int>(sieves_[d].size()));
      sieves_[d].push_back(std::move(found[i]));
    }
  }

  FinCategory cat_;
  std::vector<std::vector<int>> into_;
  std::vector<int> local_;
  std::vector<std::vector<Bits>> sieves_;
  std::vector<std::unordered_map<Bits, int, BitsHash>> index_;
  std::vector<std::vector<int>> pullback_;
};

using SitePtr = std::shared_ptr<const Site>;

inline SitePtr make_site(FinCategory C, std::size_t sieve_limit = Site::kDefaultSieveLimit) {
  return std::make_shared<const Site>(std::move(C), sieve_limit);
}

/// Per object, which sieves cover.
class Topology {
 public:
  Topology() = default;
  explicit Topology(SitePtr site) : site_(std::move(site)) {
    for (std::size_t d = 0; d < site_->object_count(); ++d)
      covers_.emplace_back(site_->sieve_count(static_cast<int>(d)), false);
  }

  const SitePtr& site() const noexcept { return site_; }
  bool covers(int d, int s) const { return covers_[d][s]; }
  void set_cover(int d, int s) { covers_[d][s] = true; }

  std::size_t cover_count() const {
    std::size_t c = 0;
    for (const auto& v : covers_) c += static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
    return c;
  }

  bool subset_of(const Topology& o) const {
    for (std::size_t d = 0; d < covers_.size(); ++d)
      for (std::size_t s = 0; s < covers_[d].size(); ++s)
        if (covers_[d][s] && !o.covers_[d][s]) return false;
    return true;
  }

  /// Covers not containing a smaller cover; they generate the topology.
  std::vector<int> minimal_covers(int d) const {
    std::vector<int> out;
    for (std::size_t s = 0; s < covers_[d].size(); ++s) {
      if (!covers_[d][s]) continue;
      bool minimal = true;
      for (int t : out)
        if (site_->subset(d, t, static_cast<int>(s))) minimal = false;
      if (minimal) out.push_back(static_cast<int>(s));
    }
    return out;
  }

  bool operator==(const Topology& o) const { return covers_ == o.covers_; }

  std::size_t hash() const {
    std::size_t h = 0;
    for (const auto& v : covers_)
      for (bool b : v) h = h * 31 + b;
    return h;
  }

 private:
  SitePtr site_;
  std::vector<std::vector<bool>> covers_;
};

/// Covering sieves to add, per object, as sieve indices.
using Precoverage = std::vector<std::vector<int>>;

inline int closure(const Topology& J, int d, int s) {
  const Site& site = *J.site();
  Bits out(site.into(d).size());
  const auto& into = site.into(d);
  for (std::size_t j = 0; j < into.size(); ++j) {
    const int f = into[j];
    if (J.covers(site.category().src(f), site.pullback(f, s))) out.set(j);
  }
  return site.index_of(d, out);
}

namespace detail {

// Upward closure and stability; returns whether anything was added.
inline bool monotone_step(Topology& J) {
  const Site& site = *J.site();
  const int n = static_cast<int>(site.object_count());
  bool changed = false;
  for (int d = 0; d < n; ++d) {
    const int count = static_cast<int>(site.sieve_count(d));
    for (int s = 0; s < count; ++s) {
      if (!J.covers(d, s)) continue;
      for (int t = s + 1; t < count; ++t)
        if (!J.covers(d, t) && site.subset(d, s, t)) {
          J.set_cover(d, t);
          changed = true;
        }
    }
    for (int s = 0; s < count; ++s) {
      if (!J.covers(d, s)) continue;
      for (int f : site.into(d)) {
        const int e = site.category().src(f), t = site.pullback(f, s);
        if (!J.covers(e, t)) {
          J.set_cover(e, t);
          changed = true;
        }
      }
    }
  }
  return changed;
}

// One round of the axioms; returns whether anything was added. Closures are
// only sieves once covers are upward closed and stable, so those come first.
inline bool saturation_step(Topology& J) {
  const Site& site = *J.site();
  const int n = static_cast<int>(site.object_count());
  bool changed = false;
  while (monotone_step(J)) changed = true;
  // transitivity: T covers once its closure does
  std::vector<std::pair<int, int>> added;
  for (int d = 0; d < n; ++d)
    for (int t = 0; t < static_cast<int>(site.sieve_count(d)); ++t)
      if (!J.covers(d, t) && J.covers(d, closure(J, d, t))) added.emplace_back(d, t);
  for (auto [d, t] : added) J.set_cover(d, t);
  return changed || !added.empty();
}

}  // namespace detail

inline Topology trivial_topology(const SitePtr& site) {
  Topology J(site);
  for (int d = 0; d < static_cast<int>(site->object_count()); ++d) J.set_cover(d, site->maximal_sieve(d));
  return J;
}

/// Least topology containing `base` and the precoverage.
inline Topology saturate(Topology base, const Precoverage& extra = {}) {
  const Site& site = *base.site();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) base.set_cover(d, site.maximal_sieve(d));
  for (std::size_t d = 0; d < extra.size(); ++d)
    for (int s : extra[d]) base.set_cover(static_cast<int>(d), s);
  while (detail::saturation_step(base)) {
  }
  return base;
}

inline Topology saturate_topology(const SitePtr& site, const Precoverage& pre) {
  return saturate(Topology(site), pre);
}

/// The first violated axiom, if any.
inline std::optional<std::string> topology_violation(const Topology& J) {
  const Site& site = *J.site();
  const auto& C = site.category();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    const int count = static_cast<int>(site.sieve_count(d));
    if (!J.covers(d, site.maximal_sieve(d))) return "maximal sieve on " + C.object_name(d) + " does not cover";
    for (int s = 0; s < count; ++s) {
      if (J.covers(d, s)) {
        for (int t = 0; t < count; ++t)
          if (!J.covers(d, t) && site.subset(d, s, t))
            return "covers on " + C.object_name(d) + " are not upward closed";
        for (int f : site.into(d))
          if (!J.covers(C.src(f), site.pullback(f, s)))
            return "pullback of " + site.sieve_to_string(d, s) + " along " + C.morphism_id(f) + " does not cover";
      } else if (J.covers(d, closure(J, d, s))) {
        return "transitivity fails for " + site.sieve_to_string(d, s) + " on " + C.object_name(d);
      }
    }
  }
  return std::nullopt;
}

inline std::vector<int> closed_sieves(const Topology& J, int d) {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(J.site()->sieve_count(d)); ++s)
    if (closure(J, d, s) == s) out.push_back(s);
  return out;
}

/// Largest J-closed T with T ∩ S inside closure(∅), by search over the
/// closed sieves on d.
inline int heyting_neg(const Topology& J, int d, int s, const std::vector<int>& closed) {
  const Site& site = *J.site();
  const Bits& bottom = site.sieve(d, closure(J, d, site.empty_sieve(d)));
  const Bits& S = site.sieve(d, s);
  // The candidates have a largest element iff their union is one of them.
  Bits total(S.size());
  std::vector<int> candidates;
  for (int t : closed)
    if ((S & site.sieve(d, t)).subset_of(bottom)) {
      candidates.push_back(t);
      total |= site.sieve(d, t);
    }
  if (auto top = site.find(d, total); top && std::find(candidates.begin(), candidates.end(), *top) != candidates.end())
    return *top;
  throw Error(ErrorKind::InternalError, "closed sieves have no pseudo-complement");
}

inline int heyting_neg(const Topology& J, int d, int s) { return heyting_neg(J, d, s, closed_sieves(J, d)); }

/// Join in the lattice of closed sieves.
inline int closed_join(const Topology& J, int d, int s, int t) { return closure(J, d, J.site()->join(d, s, t)); }

struct DeMorganReport {
  bool holds = true;
  int object = -1;
  int sieve = -1;
};

/// ¬S ∨ ¬¬S is the top closed sieve for every closed S on every object.
inline DeMorganReport is_demorgan(const Topology& J) {
  const Site& site = *J.site();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    auto closed = closed_sieves(J, d);
    for (int s : closed) {
      const int neg = heyting_neg(J, d, s, closed);
      const int negneg = heyting_neg(J, d, neg, closed);
      if (closed_join(J, d, neg, negneg) != site.maximal_sieve(d)) return {false, d, s};
    }
  }
  return {};
}

/// Every closed sieve is complemented.
inline bool is_boolean(const Topology& J) {
  const Site& site = *J.site();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    auto closed = closed_sieves(J, d);
    for (int s : closed)
      if (closed_join(J, d, s, heyting_neg(J, d, s, closed)) != site.maximal_sieve(d)) return false;
  }
  return true;
}

/// Covers: sieves whose closure has pseudo-complement closure(∅).
inline Topology dense_topology(const Topology& J) {
  const Site& site = *J.site();
  Topology out(J.site());
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    auto closed = closed_sieves(J, d);
    const int bottom = closure(J, d, site.empty_sieve(d));
    for (int s = 0; s < static_cast<int>(site.sieve_count(d)); ++s)
      if (heyting_neg(J, d, closure(J, d, s), closed) == bottom) out.set_cover(d, s);
  }
  if (auto bad = topology_violation(out)) throw Error(ErrorKind::InternalError, "dense topology invalid: " + *bad);
  return out;
}

inline bool is_dense_over(const Topology& J, const Topology& K) {
  if (!J.subset_of(K)) throw Error(ErrorKind::NotARefinement, "first topology is not contained in the second");
  const Site& site = *J.site();
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    auto closed = closed_sieves(J, d);
    const int bottom = closure(J, d, site.empty_sieve(d));
    for (int s = 0; s < static_cast<int>(site.sieve_count(d)); ++s)
      if (K.covers(d, s) && heyting_neg(J, d, closure(J, d, s), closed) != bottom) return false;
  }
  return true;
}

struct TopologyHash {
  std::size_t operator()(const Topology& J) const { return J.hash(); }
};

/// Every topology K with J ⊆ K ⊆ top, reached by adding one cover at a time
/// and saturating. Sorted by number of covers.
inline std::vector<Topology> topologies_between(const Topology& J, const Topology& top, std::size_t limit = 200'000) {
  const Site& site = *J.site();
  std::unordered_set<Topology, TopologyHash> seen{J};
  std::vector<Topology> order{J};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Topology K = order[i];
    for (int d = 0; d < static_cast<int>(site.object_count()); ++d)
      for (int s = 0; s < static_cast<int>(site.sieve_count(d)); ++s) {
        if (K.covers(d, s) || !top.covers(d, s)) continue;
        Precoverage pre(site.object_count());
        pre[d].push_back(s);
        Topology next = saturate(K, pre);
        if (seen.insert(next).second) {
          order.push_back(std::move(next));
          if (order.size() > limit) throw Error(ErrorKind::TooLarge, "too many intermediate topologies");
        }
      }
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Topology& a, const Topology& b) { return a.cover_count() < b.cover_count(); });
  return order;
}

/// The least topology between J and its dense topology satisfying De
/// Morgan's law (the largest dense De Morgan subtopos).
inline Topology demorganization(const Topology& J) {
  const Topology top = dense_topology(J);
  std::vector<Topology> dm;
  for (auto& K : topologies_between(J, top))
    if (is_demorgan(K).holds) dm.push_back(std::move(K));
  for (const auto& K : dm)
    if (std::all_of(dm.begin(), dm.end(), [&](const Topology& L) { return K.subset_of(L); })) return K;
  throw Error(ErrorKind::AmbiguousMaximum, "no least De Morgan topology among " + std::to_string(dm.size()));
}

struct OreReport {
  bool holds = true;
  int f = -1;  // f: a -> b
  int g = -1;  // g: a -> c
};

/// Every span b <-f- a -g-> c completes to a commuting square h∘f = k∘g.
inline OreReport ore_check(const FinCategory& C) {
  const int m = static_cast<int>(C.morphism_count());
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (C.src(f) != C.src(g)) continue;
      bool found = false;
      for (int h = 0; h < m && !found; ++h) {
        if (C.src(h) != C.dst(f)) continue;
        for (int k = 0; k < m && !found; ++k)
          if (C.src(k) == C.dst(g) && C.dst(k) == C.dst(h) && C.compose(h, f) == C.compose(k, g)) found = true;
      }
      if (!found) return {false, f, g};
    }
  return {};
}

/// All nonempty sieves cover, on the site opposite(C) (so they are the
/// nonempty cosieves of C).
inline Topology atomic_topology(const FinCategory& C) {
  SitePtr site = make_site(C.opposite());
  Topology J(site);
  for (int d = 0; d < static_cast<int>(site->object_count()); ++d)
    for (int s = 1; s < static_cast<int>(site->sieve_count(d)); ++s) J.set_cover(d, s);
  if (auto bad = topology_violation(J)) throw Error(ErrorKind::NotAtomicizable, *bad);
  return J;
}

/// Contravariant set-valued functor: `action[f]` maps P(dst f) to P(src f).
struct Presheaf {
  std::vector<std::vector<std::string>> sets;
  std::vector<std::vector<int>> action;
};

inline void validate_presheaf(const FinCategory& C, const Presheaf& P) {
  if (P.sets.size() != C.object_count() || P.action.size() != C.morphism_count())
    throw Error(ErrorKind::InvalidPresheaf, "presheaf does not match the category");
  for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f) {
    const auto& a = P.action[f];
    if (a.size() != P.sets[C.dst(f)].size())
      throw Error(ErrorKind::InvalidPresheaf, "action of " + C.morphism_id(f) + " is not total");
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (a[x] < 0 || static_cast<std::size_t>(a[x]) >= P.sets[C.src(f)].size())
        throw Error(ErrorKind::InvalidPresheaf, "action of " + C.morphism_id(f) + " leaves its codomain");
      if (C.is_identity(f) && a[x] != static_cast<int>(x))
        throw Error(ErrorKind::InvalidPresheaf, "identity " + C.morphism_id(f) + " acts nontrivially");
    }
  }
  for (int g = 0; g < static_cast<int>(C.morphism_count()); ++g)
    for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f) {
      const int gf = C.compose(g, f);
      if (gf < 0) continue;
      for (std::size_t x = 0; x < P.sets[C.dst(g)].size(); ++x)
        if (P.action[gf][x] != P.action[f][P.action[g][x]])
          throw Error(ErrorKind::InvalidPresheaf, "action is not functorial at " + C.morphism_id(g) + "∘" + C.morphism_id(f));
    }
}

/// Hom(-, c).
inline Presheaf representable(const FinCategory& C, int c) {
  Presheaf P;
  P.sets.resize(C.object_count());
  std::vector<int> position(C.morphism_count(), -1);
  for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f)
    if (C.dst(f) == c) {
      position[f] = static_cast<int>(P.sets[C.src(f)].size());
      P.sets[C.src(f)].push_back(C.morphism_id(f));
    }
  P.action.resize(C.morphism_count());
  for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f)
    for (int x = 0; x < static_cast<int>(C.morphism_count()); ++x)
      if (C.dst(x) == c && C.src(x) == C.dst(f)) P.action[f].push_back(position[C.compose(x, f)]);
  // the loop above lists elements of P(dst f) in morphism order, matching sets
  return P;
}

namespace detail {

// Matching families for P on sieve s over d, counted by backtracking.
inline std::size_t count_matching_families(const Site& site, const Presheaf& P, int d, int s, std::size_t cap) {
  const auto& C = site.category();
  const std::vector<int> members = site.members(d, s);
  std::vector<int> value(C.morphism_count(), -1);
  std::size_t count = 0;
  // Compatibility: for members f, f' = f∘g, value[f'] = P(g)(value[f]).
  auto consistent = [&](int f) {
    for (int g : site.into(C.src(f))) {
      const int fg = C.compose(f, g);
      if (value[fg] >= 0 && value[fg] != P.action[g][value[f]]) return false;
    }
    for (int h : members) {
      if (value[h] < 0) continue;
      for (int g : site.into(C.src(h)))
        if (C.compose(h, g) == f && P.action[g][value[h]] != value[f]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (count >= cap) return;
    if (i == members.size()) {
      ++count;
      return;
    }
    const int f = members[i];
    for (int x = 0; x < static_cast<int>(P.sets[C.src(f)].size()); ++x) {
      value[f] = x;
      if (consistent(f)) self(self, i + 1);
    }
    value[f] = -1;
  };
  rec(rec, 0);
  return count;
}

}  // namespace detail

/// Every compatible family on every cover has exactly one amalgamation.
inline bool is_sheaf(const Topology& J, const Presheaf& P) {
  const Site& site = *J.site();
  const auto& C = site.category();
  validate_presheaf(C, P);
  for (int d = 0; d < static_cast<int>(site.object_count()); ++d) {
    const std::size_t size = P.sets[d].size();
    for (int s = 0; s < static_cast<int>(site.sieve_count(d)); ++s) {
      if (!J.covers(d, s)) continue;
      const auto members = site.members(d, s);
      // restriction P(d) -> families must be injective ...
      std::unordered_set<std::string> images;
      for (std::size_t x = 0; x < size; ++x) {
        std::string key;
        for (int f : members) key += std::to_string(P.action[f][x]) + ",";
        images.insert(key);
      }
      if (images.size() != size) return false;
      // ... and onto
      if (detail::count_matching_families(site, P, d, s, size + 1) != size) return false;
    }
  }
  return true;
}

struct RigidityReport {
  bool rigid = true;
  std::vector<int> irreducibles;
  int failing_object = -1;
};

/// Objects whose only cover is maximal generate, on every object, a cover
/// contained in all covers.
inline RigidityReport rigidity_check(const Topology& J) {
  const Site& site = *J.site();
  const auto& C = site.category();
  RigidityReport rep;
  const int n = static_cast<int>(site.object_count());
  std::vector<bool> irreducible(n);
  for (int d = 0; d < n; ++d) {
    int covers = 0;
    for (int s = 0; s < static_cast<int>(site.sieve_count(d)); ++s) covers += J.covers(d, s);
    irreducible[d] = covers == 1;
    if (irreducible[d]) rep.irreducibles.push_back(d);
  }
  for (int d = 0; d < n && rep.rigid; ++d) {
    std::vector<int> gens;
    for (int f : site.into(d))
      if (irreducible[C.src(f)]) gens.push_back(f);
    const int g = site.generate(d, gens);
    bool ok = J.covers(d, g);
    for (int s = 0; s < static_cast<int>(site.sieve_count(d)) && ok; ++s)
      if (J.covers(d, s) && !site.subset(d, g, s)) ok = false;
    if (!ok) {
      rep.rigid = false;
      rep.failing_object = d;
    }
  }
  return rep;
}

}  // namespace fieldtopos
