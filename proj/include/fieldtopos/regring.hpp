#pragma once

// Finite von Neumann regular rings, held as products of finite fields.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fieldtopos/error.hpp"
#include "fieldtopos/polyfield.hpp"

namespace fieldtopos {

using Code = FiniteField::Code;

struct RingElement {
  std::vector<Code> comps;

  bool operator==(const RingElement&) const = default;
  auto operator<=>(const RingElement&) const = default;
};

/// Records that a ring was given as F_p[x]/(f); `generator` holds the image of
/// x in each component.
struct PresentedOrigin {
  std::uint64_t p = 0;
  Poly f;
  std::vector<Code> generator;
};

/// Product of finite fields in normal form: components sorted by
/// (characteristic, degree). The empty product is the zero ring.
class RegularRing {
 public:
  RegularRing() = default;

  explicit RegularRing(std::vector<FiniteField> components) : components_(std::move(components)) {
    std::stable_sort(components_.begin(), components_.end());
  }

  /// Presented ring; components are sorted together with their generator
  /// images (ties broken by the minimal polynomial of the image).
  RegularRing(std::vector<FiniteField> components, PresentedOrigin origin) {
    std::vector<std::size_t> order(components.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Poly> mins;
    for (std::size_t i = 0; i < components.size(); ++i) mins.push_back(min_poly({components[i], origin.generator[i]}));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (components[a] < components[b]) return true;
      if (components[b] < components[a]) return false;
      return mins[a] < mins[b];
    });
    std::vector<Code> gen;
    for (auto i : order) {
      components_.push_back(components[i]);
      gen.push_back(origin.generator[i]);
    }
    origin.generator = std::move(gen);
    origin_ = std::move(origin);
  }

  const std::vector<FiniteField>& components() const noexcept { return components_; }
  const FiniteField& component(std::size_t i) const { return components_[i]; }
  std::size_t component_count() const noexcept { return components_.size(); }
  bool is_zero_ring() const noexcept { return components_.empty(); }
  const std::optional<PresentedOrigin>& origin() const noexcept { return origin_; }

  /// Number of elements.
  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (const auto& F : components_) n *= F.order();
    return n;
  }

  /// lcm of (q_i - 1): every element satisfies x^(e+1) = x.
  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (const auto& F : components_) e = std::lcm(e, F.order() - 1);
    return e;
  }

  RingElement zero() const { return RingElement{std::vector<Code>(components_.size(), 0)}; }
  RingElement one() const { return RingElement{std::vector<Code>(components_.size(), 1)}; }

  RingElement generator() const {
    if (!origin_) throw Error(ErrorKind::InvalidPolynomial, "ring has no presented generator");
    return RingElement{origin_->generator};
  }

  RingElement add(const RingElement& a, const RingElement& b) const {
    return zip(a, b, [](const FiniteField& F, Code x, Code y) { return F.add(x, y); });
  }
  RingElement sub(const RingElement& a, const RingElement& b) const {
    return zip(a, b, [](const FiniteField& F, Code x, Code y) { return F.sub(x, y); });
  }
  RingElement mul(const RingElement& a, const RingElement& b) const {
    return zip(a, b, [](const FiniteField& F, Code x, Code y) { return F.mul(x, y); });
  }
  RingElement pow(const RingElement& a, std::uint64_t e) const {
    RingElement out = a;
    for (std::size_t i = 0; i < components_.size(); ++i) out.comps[i] = components_[i].pow(a.comps[i], e);
    return out;
  }

  bool is_zero(const RingElement& a) const {
    return std::all_of(a.comps.begin(), a.comps.end(), [](Code c) { return c == 0; });
  }
  bool is_unit(const RingElement& a) const {
    return std::none_of(a.comps.begin(), a.comps.end(), [](Code c) { return c == 0; });
  }

  /// Mixed-radix enumeration, first component varying fastest.
  RingElement element(std::uint64_t index) const {
    RingElement out = zero();
    for (std::size_t i = 0; i < components_.size(); ++i) {
      out.comps[i] = static_cast<Code>(index % components_[i].order());
      index /= components_[i].order();
    }
    return out;
  }
  std::uint64_t index_of(const RingElement& a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = components_.size(); i-- > 0;) idx = idx * components_[i].order() + a.comps[i];
    return idx;
  }

  /// Evaluate a polynomial over Z/p at an element (all components must have
  /// characteristic p).
  RingElement evaluate(const Poly& g, const RingElement& at) const {
    RingElement out = zero();
    for (std::size_t i = 0; i < components_.size(); ++i)
      out.comps[i] = components_[i].evaluate(reduce(g, components_[i].characteristic()), at.comps[i]);
    return out;
  }

  /// Isomorphism: equal normal forms.
  bool operator==(const RegularRing& o) const { return components_ == o.components_; }

  /// `GF(4) x GF(2)`; the zero ring prints as `0`.
  std::string to_string() const {
    if (components_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < components_.size(); ++i) out += (i ? " x " : "") + components_[i].short_name();
    return out;
  }

  std::string element_to_string(const RingElement& a) const {
    std::string out = "(";
    for (std::size_t i = 0; i < components_.size(); ++i)
      out += (i ? ", " : "") + fieldtopos::to_string(components_[i].rep(a.comps[i]));
    return out + ")";
  }

 private:
  template <class Op>
  RingElement zip(const RingElement& a, const RingElement& b, Op op) const {
    RingElement out = a;
    for (std::size_t i = 0; i < components_.size(); ++i) out.comps[i] = op(components_[i], a.comps[i], b.comps[i]);
    return out;
  }

  std::vector<FiniteField> components_;
  std::optional<PresentedOrigin> origin_;
};

/// x* with x^2 x* = x and x (x*)^2 = x*. Finds the least N >= 1 with
/// x^(N+1) = x by shrinking the ring exponent one prime at a time, then
/// returns x^(2N-1).
inline RingElement star(const RegularRing& R, const RingElement& x) {
  const std::uint64_t e = R.exponent();
  if (R.pow(x, e + 1) != x) throw Error(ErrorKind::NotRegular, "x^(e+1) != x");
  std::uint64_t n = e;
  for (std::uint64_t r : prime_divisors(e))
    while (n % r == 0 && R.pow(x, n / r + 1) == x) n /= r;
  return R.pow(x, 2 * n - 1);
}

/// A quotient of R by a principal ideal: the components of R that survive.
struct Quotient {
  RegularRing ring;
  std::vector<std::size_t> kept;

  RingElement project(const RingElement& x) const {
    RingElement out;
    for (auto i : kept) out.comps.push_back(x.comps[i]);
    return out;
  }
};

/// R/(b): the product of the components where b vanishes.
inline Quotient quotient_by(const RegularRing& R, const RingElement& b) {
  Quotient q;
  std::vector<FiniteField> comps;
  std::vector<Code> gen;
  for (std::size_t i = 0; i < R.component_count(); ++i) {
    if (b.comps[i] != 0) continue;
    q.kept.push_back(i);
    comps.push_back(R.component(i));
    if (R.origin()) gen.push_back(R.origin()->generator[i]);
  }
  if (R.origin()) {
    const auto p = R.origin()->p;
    Poly f = Poly::constant(1, p);
    for (std::size_t j = 0; j < comps.size(); ++j) f = f * min_poly({comps[j], gen[j]});
    q.ring = RegularRing(std::move(comps), PresentedOrigin{p, f, std::move(gen)});
  } else {
    q.ring = RegularRing(std::move(comps));
  }
  return q;
}

/// The generating cover {R -> R/(a), R -> R/(aa*-1)} together with the
/// isomorphism R -> R/(a) x R/(aa*-1).
struct PrincipalCover {
  Quotient annihilated;  // R/(a)
  Quotient inverted;     // R/(aa* - 1)
  std::size_t source_components = 0;

  std::pair<RingElement, RingElement> split(const RingElement& x) const {
    return {annihilated.project(x), inverted.project(x)};
  }
  RingElement combine(const RingElement& left, const RingElement& right) const {
    RingElement out{std::vector<Code>(source_components, 0)};
    for (std::size_t j = 0; j < annihilated.kept.size(); ++j) out.comps[annihilated.kept[j]] = left.comps[j];
    for (std::size_t j = 0; j < inverted.kept.size(); ++j) out.comps[inverted.kept[j]] = right.comps[j];
    return out;
  }
};

inline PrincipalCover principal_cover(const RegularRing& R, const RingElement& a) {
  RingElement idem = R.mul(a, star(R, a));
  return PrincipalCover{quotient_by(R, a), quotient_by(R, R.sub(idem, R.one())), R.component_count()};
}

/// (R/(yy*), R/(yy*-1)) for y neither zero nor invertible.
inline std::pair<Quotient, Quotient> split_idempotent(const RegularRing& R, const RingElement& y) {
  if (R.is_zero(y) || R.is_unit(y))
    throw Error(ErrorKind::NotSplittable, "element is zero or invertible in " + R.to_string());
  auto cover = principal_cover(R, y);
  return {std::move(cover.annihilated), std::move(cover.inverted)};
}

/// Product-of-fields normal form of F_p[x]/(f), one component per distinct
/// irreducible factor. `factors[i]` is the minimal polynomial of the image of
/// x in component i.
struct Decomposition {
  RegularRing ring;
  std::vector<Poly> factors;

  /// The CRT projection F_p[x]/(f) -> ring.
  RingElement project(const Poly& g) const { return ring.evaluate(g, ring.generator()); }
};

namespace detail {

// Multiplication in F_p[x]/(f).
struct PresentedArithmetic {
  std::uint64_t p;
  Poly f;

  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % f; }
  Poly pow(Poly a, std::uint64_t e) const { return powmod(std::move(a), e, f); }
  Poly one() const { return Poly::constant(1, p) % f; }

  // Iterate-to-idempotent star, given an exponent e with y^(e+1) = y.
  Poly star(const Poly& y, std::uint64_t e) const {
    if (pow(y, e + 1) != y % f) throw Error(ErrorKind::NotRegular, "nilpotent in presented ring");
    std::uint64_t n = e;
    for (std::uint64_t r : prime_divisors(e))
      while (n % r == 0 && pow(y, n / r + 1) == y % f) n /= r;
    return pow(y, 2 * n - 1);
  }
};

// Basis of {y : y^p = y} in F_p[x]/(f) (Berlekamp subalgebra), via Gaussian
// elimination on Frob - I.
inline std::vector<Poly> fixed_subalgebra(std::uint64_t p, const Poly& f) {
  const auto n = static_cast<std::size_t>(f.degree());
  // column j = x^(p j) mod f - x^j
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  const Poly xp = powmod(Poly::x(p), p, f);
  Poly col = Poly::constant(1, p);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    m[j][j] = mod_reduce(m[j][j] - 1, p);
    col = (col * xp) % f;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c = 0; c < n && row < n; ++c) {
    std::size_t r = row;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) continue;
    std::swap(m[r], m[row]);
    const auto inv = mod_inverse(m[row][c], p);
    for (auto& v : m[row]) v = mod_mul(v, inv, p);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == row || m[k][c] == 0) continue;
      const auto factor = m[k][c];
      for (std::size_t j = 0; j < n; ++j) m[k][j] = mod_reduce(m[k][j] - mod_mul(factor, m[row][j], p), p);
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++row;
  }
  std::vector<Poly> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = mod_reduce(-m[k][free], p);
    basis.emplace_back(std::move(v), p);
  }
  return basis;
}

// Irreducible leaves of F_p[x]/(f) reached by repeatedly splitting along
// idempotents yy*, with y a zero divisor from the fixed subalgebra.
inline void split_presented(std::uint64_t p, const Poly& f, std::vector<Poly>& leaves) {
  if (f.degree() < 1) return;
  auto basis = fixed_subalgebra(p, f);
  const Poly* nonconstant = nullptr;
  for (const Poly& b : basis)
    if (b.degree() >= 1) nonconstant = &b;
  if (nonconstant == nullptr) {
    leaves.push_back(f);
    return;
  }
  PresentedArithmetic A{p, f};
  // y has all its CRT components in F_p; subtracting one of them gives a
  // nonzero non-unit.
  for (std::uint64_t c = 0; c < p; ++c) {
    Poly y = *nonconstant - Poly::constant(static_cast<std::int64_t>(c), p);
    if (A.pow(y, p - 1) == A.one()) continue;  // unit
    Poly idem = A.mul(y, A.star(y, p - 1));
    Poly left = poly_gcd(f, idem, p);                      // R/(yy*)
    Poly right = poly_gcd(f, idem - Poly::constant(1, p), p);  // R/(yy*-1)
    if (left.degree() + right.degree() != f.degree() || left.degree() < 1 || right.degree() < 1)
      throw Error(ErrorKind::InternalError, "idempotent split lost degree");
    split_presented(p, left, leaves);
    split_presented(p, right, leaves);
    return;
  }
  throw Error(ErrorKind::InternalError, "no zero divisor in a non-field fixed subalgebra");
}

inline void check_presentable(std::uint64_t p, const Poly& f) {
  require_prime(p);
  Poly r = reduce(f, p);
  if (r.degree() < 1 || !r.is_monic())
    throw Error(ErrorKind::InvalidPolynomial, "presented ring needs a monic polynomial of degree >= 1");
  if (!is_squarefree(r, p))
    throw Error(ErrorKind::NotRegular, "F_" + std::to_string(p) + "[x]/(" + to_string(r) + ") has nilpotents");
}

}  // namespace detail

/// Normal form of F_p[x]/(f) through factor_distinct and the CRT.
inline Decomposition decompose_by_factoring(std::uint64_t p, const Poly& f) {
  detail::check_presentable(p, f);
  Poly r = reduce(f, p);
  std::vector<FiniteField> comps;
  std::vector<Code> gen;
  for (const Poly& h : factor_distinct(r, p)) {
    FiniteField F = make_field(p, h.degree());
    const Code root = least_root(F, h);
    comps.push_back(F);
    gen.push_back(root);
  }
  Decomposition d;
  d.ring = RegularRing(std::move(comps), PresentedOrigin{p, r, std::move(gen)});
  for (std::size_t i = 0; i < d.ring.component_count(); ++i)
    d.factors.push_back(min_poly({d.ring.component(i), d.ring.origin()->generator[i]}));
  return d;
}

/// Irreducible leaves of F_p[x]/(f) by iterated idempotent splitting, sorted.
inline std::vector<Poly> decompose_by_splitting(std::uint64_t p, const Poly& f) {
  detail::check_presentable(p, f);
  std::vector<Poly> leaves;
  detail::split_presented(p, reduce(f, p), leaves);
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

/// Product-of-fields normal form of F_p[x]/(f), computed along both routes;
/// they must agree up to permutation.
inline Decomposition decompose_to_fields(std::uint64_t p, const Poly& f) {
  Decomposition d = decompose_by_factoring(p, f);
  std::vector<Poly> a = d.factors;
  std::sort(a.begin(), a.end());
  if (a != decompose_by_splitting(p, f))
    throw Error(ErrorKind::InternalError, "factoring and idempotent splitting disagree for " + to_string(f));
  return d;
}

/// Inverse of the CRT projection: the residue mod f with the given components.
inline Poly crt_lift(const Decomposition& d, const RingElement& x) {
  const auto& origin = *d.ring.origin();
  const auto p = origin.p;
  Poly result = Poly::zero(p);
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const FiniteField& F = d.ring.component(i);
    // The component value as a polynomial in g, the image of x; found by
    // scanning coefficient vectors over the basis 1, g, g^2, ...
    const Code g = origin.generator[i];
    const auto n = static_cast<std::size_t>(F.degree());
    std::vector<Code> powers{F.one()};
    for (std::size_t k = 1; k < n; ++k) powers.push_back(F.mul(powers.back(), g));
    Poly local;
    bool found = false;
    std::vector<std::int64_t> c(n, 0);
    for (std::uint64_t idx = 0; idx < F.order() && !found; ++idx) {
      std::uint64_t t = idx;
      Code v = 0;
      for (std::size_t k = 0; k < n; ++k) {
        c[k] = static_cast<std::int64_t>(t % p);
        t /= p;
        v = F.add(v, F.mul(static_cast<Code>(c[k]), powers[k]));
      }
      if (v == x.comps[i]) {
        local = Poly(c, p);
        found = true;
      }
    }
    // e_i = (f/h_i) * ((f/h_i)^-1 mod h_i)
    const Poly& h = d.factors[i];
    Poly cofactor = origin.f / h;
    Poly r0 = h, r1 = cofactor % h, s0 = Poly::zero(p), s1 = Poly::constant(1, p);
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::exchange(r1, r);
      Poly s = s0 - q * s1;
      s0 = std::exchange(s1, s);
    }
    Poly cofactor_inv = scale(s0, mod_inverse(r0.lead(), p)) % h;
    result = result + (local * cofactor * cofactor_inv);
  }
  return result % origin.f;
}

/// {min_poly(x_i)}: the type of x over the components.
inline std::set<Poly> element_type(const RegularRing& R, const RingElement& x) {
  std::set<Poly> out;
  std::set<std::uint64_t> chars;
  for (std::size_t i = 0; i < R.component_count(); ++i) {
    chars.insert(R.component(i).characteristic());
    out.insert(min_poly({R.component(i), x.comps[i]}));
  }
  if (chars.size() > 1) throw Error(ErrorKind::MixedCharacteristic, R.to_string() + " has mixed characteristic");
  return out;
}

/// Characteristics of the field quotients; empty for the zero ring.
inline std::set<std::uint64_t> char_of_finite(const RegularRing& R) {
  std::set<std::uint64_t> out;
  for (const auto& F : R.components()) out.insert(F.characteristic());
  return out;
}

/// Unital homomorphism R -> S. Component j of S receives component
/// source[j] of R through maps[j].
struct RingHom {
  std::vector<std::size_t> source;
  std::vector<Embedding> maps;

  RingElement operator()(const RingElement& x) const {
    RingElement out;
    for (std::size_t j = 0; j < source.size(); ++j) out.comps.push_back(maps[j](x.comps[source[j]]));
    return out;
  }
  bool operator==(const RingHom& o) const { return source == o.source && maps == o.maps; }
};

/// `after` o `before`.
inline RingHom compose(const RingHom& after, const RingHom& before) {
  RingHom out;
  for (std::size_t j = 0; j < after.source.size(); ++j) {
    const std::size_t mid = after.source[j];
    out.source.push_back(before.source[mid]);
    out.maps.push_back(compose(after.maps[j], before.maps[mid]));
  }
  return out;
}

inline RingHom identity_hom(const RegularRing& R) {
  RingHom h;
  for (std::size_t i = 0; i < R.component_count(); ++i) {
    h.source.push_back(i);
    h.maps.push_back(make_embedding(R.component(i), R.component(i), R.component(i).generator()));
  }
  return h;
}

/// All unital homomorphisms R -> S. A map into a field factors through one
/// component, so a hom is a choice of (source component, embedding) per
/// component of S.
inline std::vector<RingHom> hom_enumerate(const RegularRing& R, const RegularRing& S) {
  std::vector<std::vector<std::pair<std::size_t, Embedding>>> options(S.component_count());
  for (std::size_t j = 0; j < S.component_count(); ++j)
    for (std::size_t i = 0; i < R.component_count(); ++i)
      for (auto& e : embeddings(R.component(i), S.component(j))) options[j].emplace_back(i, std::move(e));
  std::vector<RingHom> out;
  RingHom cur;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == options.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& [i, e] : options[j]) {
      cur.source.push_back(i);
      cur.maps.push_back(e);
      self(self, j + 1);
      cur.source.pop_back();
      cur.maps.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Ring literals: `0`, `GF(4) x GF(2)`, `GF(2)[x]/(x^2+x)`.
inline RegularRing parse_ring(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0") return RegularRing{};
  if (auto bracket = s.find("[x]/("); bracket != std::string::npos) {
    if (s.back() != ')') throw Error(ErrorKind::ParseError, "bad presented ring '" + std::string(text) + "'");
    FiniteField base = parse_field(s.substr(0, bracket));
    if (base.degree() != 1) throw Error(ErrorKind::ParseError, "presented rings are over a prime field");
    Poly f = parse_poly(s.substr(bracket + 5, s.size() - bracket - 6));
    return decompose_to_fields(base.characteristic(), f).ring;
  }
  std::vector<FiniteField> comps;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 3, "GF(") != 0) throw Error(ErrorKind::ParseError, "expected GF( in '" + std::string(text) + "'");
    auto close = s.find(')', i);
    if (close == std::string::npos) throw Error(ErrorKind::ParseError, "unbalanced parenthesis");
    comps.push_back(parse_field(s.substr(i, close - i + 1)));
    i = close + 1;
    if (i < s.size()) {
      if (s[i] != 'x' && s[i] != '*') throw Error(ErrorKind::ParseError, "expected 'x' between factors");
      ++i;
    }
  }
  if (comps.empty()) throw Error(ErrorKind::ParseError, "empty ring literal");
  return RegularRing(std::move(comps));
}

/// Elements: a polynomial in x for presented rings (projected through the
/// CRT), otherwise a tuple `(c1, ..., ck)` of polynomials in each
/// component's generator.
inline RingElement parse_element(const RegularRing& R, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s.substr(1, s.size() - 2)) {
      if (ch == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty() || !parts.empty()) parts.push_back(cur);
    if (parts.size() != R.component_count())
      throw Error(ErrorKind::ParseError, "element has " + std::to_string(parts.size()) + " components, ring has " +
                                             std::to_string(R.component_count()));
    RingElement out;
    for (std::size_t i = 0; i < parts.size(); ++i) out.comps.push_back(R.component(i).encode(parse_poly(parts[i])));
    return out;
  }
  if (!R.origin()) throw Error(ErrorKind::ParseError, "polynomial elements need a presented ring");
  return R.evaluate(parse_poly(s), R.generator());
}

}  // namespace fieldtopos
