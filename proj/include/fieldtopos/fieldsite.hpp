#pragma once

// Finite truncations of the site of finitely presented regular rings.
//
// Objects are products of at most k finite fields of characteristic <= P and
// degree <= D, in normal form. A site morphism d -> c is a ring homomorphism
// c -> d, so sieves here are cosieves of rings.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fieldtopos/category.hpp"
#include "fieldtopos/regring.hpp"
#include "fieldtopos/site.hpp"

namespace fieldtopos {

struct TruncatedSite {
  std::uint64_t prime_bound = 0;
  int degree_bound = 0;
  int max_components = 0;
  std::vector<RegularRing> rings;  // by object index
  std::vector<RingHom> homs;       // by morphism index; hom from ring dst to ring src
  SitePtr site;
  Topology coverage;

  const FinCategory& category() const { return site->category(); }

  std::optional<int> find_ring(const RegularRing& R) const {
    for (std::size_t i = 0; i < rings.size(); ++i)
      if (rings[i] == R) return static_cast<int>(i);
    return std::nullopt;
  }
  int object_of(const RegularRing& R) const {
    if (auto i = find_ring(R)) return *i;
    throw Error(ErrorKind::UnknownObject, R.to_string() + " is not an object of the truncation");
  }
  /// The site morphism for the ring hom h: rings[c] -> rings[d].
  int morphism_of(int c, int d, const RingHom& h) const {
    const auto& C = category();
    for (int f = 0; f < static_cast<int>(C.morphism_count()); ++f)
      if (C.dst(f) == c && C.src(f) == d && homs[f] == h) return f;
    throw Error(ErrorKind::InternalError, "ring hom missing from the site");
  }
};

inline constexpr std::size_t kTruncationCeiling = 64;

namespace detail {

inline std::vector<RegularRing> truncation_rings(std::uint64_t P, int D, int k, std::size_t ceiling) {
  std::vector<FiniteField> fields;
  for (std::uint64_t p = 2; p <= P; ++p)
    if (is_prime(p))
      for (int d = 1; d <= D; ++d) fields.push_back(make_field(p, d));
  std::sort(fields.begin(), fields.end());
  std::vector<RegularRing> out{RegularRing()};
  std::vector<FiniteField> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(cur.size()) == k) return;
    for (std::size_t i = from; i < fields.size(); ++i) {
      cur.push_back(fields[i]);
      out.emplace_back(cur);
      if (out.size() > ceiling)
        throw Error(ErrorKind::TooLarge, "truncation has more than " + std::to_string(ceiling) + " objects");
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::stable_sort(out.begin(), out.end(), [](const RegularRing& a, const RegularRing& b) {
    if (a.component_count() != b.component_count()) return a.component_count() < b.component_count();
    return std::lexicographical_compare(a.components().begin(), a.components().end(), b.components().begin(),
                                        b.components().end());
  });
  return out;
}

inline RingHom projection(const Quotient& q, const RegularRing& R) {
  RingHom h;
  for (auto i : q.kept) {
    h.source.push_back(i);
    h.maps.push_back(make_embedding(R.component(i), R.component(i), R.component(i).generator()));
  }
  return h;
}

}  // namespace detail

/// Site morphism for the quotient map R -> R/(b) of object c.
inline int quotient_morphism(const TruncatedSite& T, int c, const Quotient& q) {
  return T.morphism_of(c, T.object_of(q.ring), detail::projection(q, T.rings[c]));
}

/// Sieve on c generated by R -> R/(a) and R -> R/(aa*-1).
inline int principal_cover_sieve(const TruncatedSite& T, int c, const RingElement& a) {
  const auto cover = principal_cover(T.rings[c], a);
  return T.site->generate(c, {quotient_morphism(T, c, cover.annihilated), quotient_morphism(T, c, cover.inverted)});
}

inline TruncatedSite build_truncated_site(std::uint64_t P, int D, int max_components,
                                          std::size_t ceiling = kTruncationCeiling) {
  if (P < 2 || D < 1 || max_components < 0) throw Error(ErrorKind::InvalidModulus, "truncation bounds out of range");
  TruncatedSite T;
  T.prime_bound = P;
  T.degree_bound = D;
  T.max_components = max_components;
  T.rings = detail::truncation_rings(P, D, max_components, ceiling);
  const int n = static_cast<int>(T.rings.size());

  std::vector<std::string> objects, ids;
  std::vector<int> src, dst, identities(n, -1);
  for (const auto& R : T.rings) objects.push_back(R.to_string());
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      auto hs = hom_enumerate(T.rings[c], T.rings[d]);
      for (std::size_t k = 0; k < hs.size(); ++k) {
        if (c == d && hs[k] == identity_hom(T.rings[c])) identities[c] = static_cast<int>(T.homs.size());
        ids.push_back("[" + objects[c] + " -> " + objects[d] + "]#" + std::to_string(k));
        src.push_back(d);
        dst.push_back(c);
        T.homs.push_back(std::move(hs[k]));
      }
    }
  const std::size_t m = T.homs.size();
  // lookup by (ring source, ring target, source indices); embeddings are
  // distinguished by the image of each generator
  std::map<std::pair<std::pair<int, int>, std::vector<std::uint64_t>>, int> where;
  auto key = [&](int c, int d, const RingHom& h) {
    std::vector<std::uint64_t> k;
    for (std::size_t j = 0; j < h.source.size(); ++j) {
      k.push_back(h.source[j]);
      k.push_back(h.maps[j].image);
    }
    return std::make_pair(std::make_pair(c, d), k);
  };
  for (std::size_t f = 0; f < m; ++f) where[key(dst[f], src[f], T.homs[f])] = static_cast<int>(f);
  std::vector<int> comp(m * m, -1);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (dst[f] != src[g]) continue;
      // site g∘f is the ring map hom(f)∘hom(g)
      comp[g * m + f] = where.at(key(dst[g], src[f], compose(T.homs[f], T.homs[g])));
    }
  T.site = make_site(FinCategory(std::move(objects), std::move(ids), std::move(src), std::move(dst), std::move(comp),
                                 std::move(identities)));

  Precoverage pre(n);
  for (int c = 0; c < n; ++c) {
    std::set<int> seen;
    const auto& R = T.rings[c];
    for (std::uint64_t i = 0; i < R.size(); ++i) seen.insert(principal_cover_sieve(T, c, R.element(i)));
    if (R.is_zero_ring()) seen.insert(T.site->empty_sieve(c));
    pre[c].assign(seen.begin(), seen.end());
  }
  T.coverage = saturate_topology(T.site, pre);
  return T;
}

struct FieldRigidityReport {
  RigidityReport base;
  bool irreducibles_are_fields = false;
  bool zero_ring_reducible = false;

  bool passed() const { return base.rigid && irreducibles_are_fields && zero_ring_reducible; }
};

inline FieldRigidityReport rigidity_check_field(const TruncatedSite& T) {
  FieldRigidityReport rep;
  rep.base = rigidity_check(T.coverage);
  std::vector<int> fields;
  for (int c = 0; c < static_cast<int>(T.rings.size()); ++c)
    if (T.rings[c].component_count() == 1) fields.push_back(c);
  rep.irreducibles_are_fields = rep.base.irreducibles == fields;
  auto zero = T.find_ring(RegularRing());
  rep.zero_ring_reducible = zero && !std::count(rep.base.irreducibles.begin(), rep.base.irreducibles.end(), *zero) &&
                            T.coverage.covers(*zero, T.site->empty_sieve(*zero));
  return rep;
}

/// Whether the quotients R -> R/(p), one per characteristic of R, cover R.
inline bool char_cover_check(const TruncatedSite& T, const RegularRing& R) {
  const int c = T.object_of(R);
  std::vector<int> gens;
  for (auto p : char_of_finite(R)) {
    RingElement b;
    for (const auto& F : R.components()) b.comps.push_back(F.characteristic() == p ? 0 : 1);
    gens.push_back(quotient_morphism(T, c, quotient_by(R, b)));
  }
  return T.coverage.covers(c, T.site->generate(c, gens));
}

/// Finite fields F_{p^d}, d in `degrees`, with every embedding between them.
inline FinCategory field_category(std::uint64_t p, const std::vector<int>& degrees) {
  std::vector<FiniteField> F;
  std::vector<std::string> objects, ids;
  for (int d : degrees) {
    F.push_back(make_field(p, d));
    objects.push_back(F.back().short_name());
  }
  std::vector<int> src, dst, identities(F.size(), -1);
  std::vector<Embedding> emb;
  for (std::size_t a = 0; a < F.size(); ++a)
    for (std::size_t b = 0; b < F.size(); ++b) {
      auto es = embeddings(F[a], F[b]);
      for (std::size_t k = 0; k < es.size(); ++k) {
        if (a == b && es[k].image == F[a].generator()) identities[a] = static_cast<int>(emb.size());
        ids.push_back(objects[a] + "->" + objects[b] + "#" + std::to_string(k));
        src.push_back(static_cast<int>(a));
        dst.push_back(static_cast<int>(b));
        emb.push_back(std::move(es[k]));
      }
    }
  const std::size_t m = emb.size();
  std::vector<int> comp(m * m, -1);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (dst[f] != src[g]) continue;
      const auto image = emb[g](emb[f].image);
      for (std::size_t h = 0; h < m; ++h)
        if (src[h] == src[f] && dst[h] == dst[g] && emb[h].image == image) comp[g * m + f] = static_cast<int>(h);
    }
  return FinCategory(std::move(objects), std::move(ids), std::move(src), std::move(dst), std::move(comp),
                     std::move(identities));
}

struct OreFieldsReport {
  bool holds = true;
  std::size_t tested = 0;
  std::size_t untestable = 0;  // spans whose amalgam lies beyond the degree bound
  int f = -1, g = -1;          // a failing span, if any
};

/// Amalgamation of spans of embeddings among F_{p^d}, d <= D.
inline OreFieldsReport ore_fields(std::uint64_t p, int D) {
  if (D < 1) throw Error(ErrorKind::InvalidModulus, "degree bound must be positive");
  std::vector<int> degrees(D);
  std::iota(degrees.begin(), degrees.end(), 1);
  require_prime(p);
  const FinCategory C = field_category(p, degrees);
  OreFieldsReport rep;
  const int m = static_cast<int>(C.morphism_count());
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (C.src(f) != C.src(g)) continue;
      if (std::lcm(degrees[C.dst(f)], degrees[C.dst(g)]) > D) {
        ++rep.untestable;
        continue;
      }
      ++rep.tested;
      bool found = false;
      for (int h = 0; h < m && !found; ++h) {
        if (C.src(h) != C.dst(f)) continue;
        for (int k = 0; k < m && !found; ++k)
          if (C.src(k) == C.dst(g) && C.dst(k) == C.dst(h) && C.compose(h, f) == C.compose(k, g)) found = true;
      }
      if (!found && rep.holds) {
        rep.holds = false;
        rep.f = f;
        rep.g = g;
      }
    }
  return rep;
}

struct AtomicBooleanizationReport {
  std::vector<int> degrees;
  bool ore = false;
  bool dense_equals_atomic = false;
  bool boolean = false;

  bool passed() const { return ore && dense_equals_atomic && boolean; }
};

/// On the fields F_{p^d} with d | D, the dense topology of the trivial one is
/// the atomic topology, and it is Boolean.
inline AtomicBooleanizationReport atomic_booleanization_check(std::uint64_t p, int D) {
  if (D < 1) throw Error(ErrorKind::InvalidModulus, "degree bound must be positive");
  AtomicBooleanizationReport rep;
  for (int d = 1; d <= D; ++d)
    if (D % d == 0) rep.degrees.push_back(d);
  require_prime(p);
  const FinCategory C = field_category(p, rep.degrees);
  rep.ore = ore_check(C).holds;
  if (!rep.ore) return rep;
  const Topology atomic = atomic_topology(C);
  const Topology dense = dense_topology(trivial_topology(atomic.site()));
  rep.dense_equals_atomic = dense == atomic;
  rep.boolean = is_boolean(dense);
  return rep;
}

struct GSetReport {
  std::uint64_t p = 0;
  int m = 0, n = 0;
  std::size_t hom_count = 0;
  std::vector<std::size_t> orbits;  // sizes, descending

  bool transitive() const { return orbits.size() == 1; }
};

/// Embeddings F_{p^m} -> F_{p^n} under the Frobenius of F_{p^n}.
inline GSetReport gset_homcount(std::uint64_t p, int m, int n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidModulus, "degrees must be positive");
  require_prime(p);
  GSetReport rep{p, m, n, 0, {}};
  const FiniteField F = make_field(p, m), G = make_field(p, n);
  std::vector<FiniteField::Code> images;
  for (const auto& e : embeddings(F, G)) images.push_back(e.image);
  rep.hom_count = images.size();
  std::vector<bool> done(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (done[i]) continue;
    std::size_t size = 0;
    auto x = images[i];
    do {
      auto it = std::find(images.begin(), images.end(), x);
      if (it == images.end()) throw Error(ErrorKind::InternalError, "Frobenius left the hom set");
      done[it - images.begin()] = true;
      ++size;
      x = G.frobenius(x);
    } while (x != images[i]);
    rep.orbits.push_back(size);
  }
  std::sort(rep.orbits.rbegin(), rep.orbits.rend());
  return rep;
}

}  // namespace fieldtopos
