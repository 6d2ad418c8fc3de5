#pragma once

// Deterministic generator of small univariate presentations.

#include <random>
#include <vector>

#include "fieldtopos/charpres.hpp"

namespace grammar {

using fieldtopos::Poly;
using fieldtopos::Presentation;

inline Poly random_poly(std::mt19937& rng, int max_degree, int coeff_bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::int64_t> coeff(-coeff_bound, coeff_bound);
  const int d = deg(rng);
  std::vector<std::int64_t> c(d + 1);
  for (auto& v : c) v = coeff(rng);
  if (c.back() == 0) c.back() = 1;
  return Poly(std::move(c));
}

// A product of two small factors, so relations share roots often.
inline Poly random_relation(std::mt19937& rng) {
  std::bernoulli_distribution split(0.6);
  if (!split(rng)) return random_poly(rng, 4, 4);
  Poly a = random_poly(rng, 2, 3);
  Poly b = random_poly(rng, 2, 3);
  return a * b;
}

/// `count` presentations: degree <= 4, at most two inversion constraints.
inline std::vector<Presentation> presentations(std::size_t count, unsigned seed = 20240611u) {
  std::mt19937 rng(seed);
  std::vector<Presentation> out;
  // fixed examples first
  out.push_back(Presentation{6, {}, {}, {}});
  out.push_back(Presentation{0, {Poly({-2, 0, 1})}, {}, {2}});
  out.push_back(Presentation{0, {Poly({1, 0, 1})}, {}, {}});
  out.push_back(Presentation{0, {Poly({-1, 0, 1})}, {Poly({-1, 1}), Poly({1, 1})}, {}});
  out.push_back(Presentation{0, {}, {Poly({0, 1})}, {}});
  out.push_back(Presentation{0, {Poly({0, -1, 0, 1})}, {}, {}});
  out.push_back(Presentation{0, {}, {}, {}});
  const std::uint64_t small_primes[] = {2, 3, 5, 7, 11};
  std::uniform_int_distribution<int> pick(0, 99);
  while (out.size() < count) {
    Presentation pres;
    const int roll = pick(rng);
    if (roll < 25) pres.modulus_n = 2 + pick(rng) % 40;
    const int relations = roll % 3 == 0 ? 2 : (roll % 7 == 0 ? 0 : 1);
    Poly first = random_relation(rng);
    for (int i = 0; i < relations; ++i) {
      // second relation often shares a factor with the first
      if (i == 1 && pick(rng) < 50) {
        Poly shared = random_poly(rng, 1, 3);
        pres.relations = {shared * random_poly(rng, 2, 3), shared * random_poly(rng, 2, 3)};
        break;
      }
      pres.relations.push_back(i == 0 ? first : random_relation(rng));
    }
    const int constraints = pick(rng) % 3;
    for (int i = 0; i < constraints; ++i) {
      if (pick(rng) < 30)
        pres.invert_primes.insert(small_primes[pick(rng) % 5]);
      else
        pres.invert_polys.push_back(random_poly(rng, 2, 3));
    }
    out.push_back(std::move(pres));
  }
  return out;
}

/// The polynomials a used for cover checks: x, x+1, x-1, 2, 3, x^2+1.
inline std::vector<Poly> cover_elements() {
  return {Poly({0, 1}), Poly({1, 1}), Poly({-1, 1}), Poly({2}), Poly({3}), Poly({1, 0, 1})};
}

}  // namespace grammar
