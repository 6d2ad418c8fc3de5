#pragma once

// Brute-force oracles shared by the unit tests and the acceptance binary.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fieldtopos/charpres.hpp"
#include "fieldtopos/regring.hpp"
#include "fieldtopos/site.hpp"

namespace oracle {

using namespace fieldtopos;

// Test-only oracle: every y solving x^2 y = x and y^2 x = y, by scanning R.
inline std::vector<RingElement> star_solutions(const RegularRing& R, const RingElement& x) {
  std::vector<RingElement> out;
  for (std::uint64_t j = 0; j < R.size(); ++j) {
    RingElement y = R.element(j);
    if (R.mul(R.mul(x, x), y) == x && R.mul(R.mul(y, y), x) == y) out.push_back(y);
  }
  return out;
}

// Test-only oracle for characteristic p: look for a common root of the
// relations, avoiding every inverted polynomial, in F_{p^k} for k <= 4.
// Relations of degree <= 4 have all their roots there; with no relations a
// field of 16+ elements always has a point off the (few) roots of the u's.
inline bool member_by_root_search(const Presentation& pres, std::uint64_t p) {
  if (pres.invert_primes.count(p)) return false;
  if (pres.modulus_n != 0 && pres.modulus_n % static_cast<std::int64_t>(p) != 0) return false;
  for (int k = 1; k <= 4; ++k) {
    FiniteField F = make_field(p, k);
    for (Code a = 0; a < F.order(); ++a) {
      bool ok = true;
      for (const Poly& g : pres.relations) ok = ok && F.evaluate(reduce(g, p), a) == 0;
      for (const Poly& u : pres.invert_polys) ok = ok && F.evaluate(reduce(u, p), a) != 0;
      if (ok) return true;
    }
  }
  return false;
}

// Test-only oracle for characteristic 0: complex roots of the first nonzero
// relation (Durand-Kerner), tested numerically against the others.
using C = std::complex<long double>;

inline C eval(const Poly& f, C z) {
  C acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * z + static_cast<long double>(f[i]);
  return acc;
}

inline std::vector<C> complex_roots(const Poly& f) {
  const int n = f.degree();
  std::vector<C> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::pow(C(0.4L, 0.9L), i);
  const long double lead = static_cast<long double>(f.lead());
  for (int it = 0; it < 2000; ++it)
    for (int i = 0; i < n; ++i) {
      C denom = lead;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      z[i] -= eval(f, z[i]) / denom;
    }
  return z;
}

inline bool member_zero_numerically(const Presentation& pres) {
  if (pres.modulus_n != 0) return false;
  for (const Poly& u : pres.invert_polys)
    if (u.is_zero()) return false;
  const Poly* first = nullptr;
  for (const Poly& g : pres.relations)
    if (!g.is_zero()) first = first ? first : &g;
  if (first == nullptr) return true;
  if (first->degree() == 0) return false;
  for (C z : complex_roots(*first)) {
    bool ok = true;
    for (const Poly& g : pres.relations) ok = ok && std::abs(eval(g, z)) < 1e-6L;
    for (const Poly& u : pres.invert_polys) ok = ok && std::abs(eval(u, z)) > 1e-6L;
    if (ok) return true;
  }
  return false;
}

// Test-only oracle: the topology axioms read literally, with transitivity
// quantified over every cover S and every sieve T.
inline bool satisfies_axioms(const Site& site, const std::vector<std::vector<bool>>& cov) {
  const auto& C = site.category();
  const int n = static_cast<int>(site.object_count());
  for (int d = 0; d < n; ++d) {
    const int count = static_cast<int>(site.sieve_count(d));
    if (!cov[d][site.maximal_sieve(d)]) return false;
    for (int s = 0; s < count; ++s) {
      if (!cov[d][s]) continue;
      for (int t = 0; t < count; ++t)
        if (site.subset(d, s, t) && !cov[d][t]) return false;
      for (int f : site.into(d))
        if (!cov[C.src(f)][site.pullback(f, s)]) return false;
      for (int t = 0; t < count; ++t) {
        bool all = true;
        for (int f : site.members(d, s)) all = all && cov[C.src(f)][site.pullback(f, t)];
        if (all && !cov[d][t]) return false;
      }
    }
  }
  return true;
}

// Every topology on the site, by brute force over cover assignments.
inline std::vector<Topology> all_topologies(const SitePtr& site) {
  std::vector<std::pair<int, int>> free;
  for (int d = 0; d < static_cast<int>(site->object_count()); ++d)
    for (int s = 0; s < site->maximal_sieve(d); ++s) free.emplace_back(d, s);
  if (free.size() > 16) throw std::length_error("too many sieves for brute force");
  std::vector<Topology> out;
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    std::vector<std::vector<bool>> cov;
    for (int d = 0; d < static_cast<int>(site->object_count()); ++d) {
      cov.emplace_back(site->sieve_count(d), false);
      cov.back()[site->maximal_sieve(d)] = true;
    }
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1u) cov[free[i].first][free[i].second] = true;
    if (!satisfies_axioms(*site, cov)) continue;
    Topology J(site);
    for (std::size_t d = 0; d < cov.size(); ++d)
      for (std::size_t s = 0; s < cov[d].size(); ++s)
        if (cov[d][s]) J.set_cover(static_cast<int>(d), static_cast<int>(s));
    out.push_back(J);
  }
  return out;
}

}  // namespace oracle
