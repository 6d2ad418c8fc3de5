#pragma once

// Dense univariate polynomials over Z and over Z/p.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "fieldtopos/error.hpp"

namespace fieldtopos {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors of n, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t mod_reduce(std::int64_t a, std::uint64_t p) {
  auto m = static_cast<std::int64_t>(p);
  a %= m;
  return a < 0 ? a + m : a;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::uint64_t p) {
  return static_cast<std::int64_t>(
      static_cast<unsigned __int128>(static_cast<std::uint64_t>(a)) * static_cast<std::uint64_t>(b) % p);
}

/// Inverse of a nonzero residue modulo a prime.
inline std::int64_t mod_inverse(std::int64_t a, std::uint64_t p) {
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = mod_reduce(a, p);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) throw Error(ErrorKind::InvalidModulus, "residue not invertible");
  return mod_reduce(s0, p);
}

/// Coefficients lowest degree first. modulus 0 means integer coefficients,
/// otherwise every coefficient lies in [0, modulus).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::int64_t> coeffs, std::uint64_t modulus = 0)
      : coeffs_(std::move(coeffs)), modulus_(modulus) {
    normalize();
  }
  Poly(std::initializer_list<std::int64_t> coeffs, std::uint64_t modulus = 0)
      : Poly(std::vector<std::int64_t>(coeffs), modulus) {}

  static Poly zero(std::uint64_t modulus = 0) { return Poly(std::vector<std::int64_t>{}, modulus); }
  static Poly constant(std::int64_t c, std::uint64_t modulus = 0) { return Poly({c}, modulus); }
  static Poly x(std::uint64_t modulus = 0) { return Poly({0, 1}, modulus); }
  static Poly monomial(std::size_t k, std::int64_t c = 1, std::uint64_t modulus = 0) {
    std::vector<std::int64_t> v(k + 1, 0);
    v[k] = c;
    return Poly(std::move(v), modulus);
  }

  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t lead() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  std::int64_t operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  bool is_monic() const noexcept { return lead() == 1; }

  bool operator==(const Poly&) const = default;

  /// Degree first, then coefficient tuples compared from the top coefficient down.
  std::strong_ordering operator<=>(const Poly& o) const {
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      if (auto c = coeffs_[i] <=> o.coeffs_[i]; c != 0) return c;
    return modulus_ <=> o.modulus_;
  }

 private:
  void normalize() {
    if (modulus_ != 0)
      for (auto& c : coeffs_) c = mod_reduce(c, modulus_);
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<std::int64_t> coeffs_;
  std::uint64_t modulus_ = 0;
};

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
}

/// Reinterpret coefficients modulo p.
inline Poly reduce(const Poly& f, std::uint64_t p) { return Poly(f.coeffs(), p); }

/// Forget the modulus; coefficients stay in [0, p).
inline Poly lift(const Poly& f) { return Poly(f.coeffs(), 0); }

namespace detail {

inline std::int64_t combine(std::int64_t a, std::int64_t b, std::uint64_t p, bool subtract) {
  if (p == 0) return subtract ? a - b : a + b;
  return mod_reduce(subtract ? a - b : a + b, p);
}

inline std::uint64_t common_modulus(const Poly& a, const Poly& b) {
  if (a.modulus() != b.modulus())
    throw Error(ErrorKind::InvalidModulus, "mixing polynomials with different moduli");
  return a.modulus();
}

}  // namespace detail

inline Poly operator+(const Poly& a, const Poly& b) {
  auto p = detail::common_modulus(a, b);
  std::vector<std::int64_t> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::combine(a[i], b[i], p, false);
  return Poly(std::move(out), p);
}

inline Poly operator-(const Poly& a, const Poly& b) {
  auto p = detail::common_modulus(a, b);
  std::vector<std::int64_t> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::combine(a[i], b[i], p, true);
  return Poly(std::move(out), p);
}

inline Poly operator-(const Poly& a) { return Poly::zero(a.modulus()) - a; }

inline Poly operator*(const Poly& a, const Poly& b) {
  auto p = detail::common_modulus(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(p);
  std::vector<std::int64_t> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      if (p == 0)
        out[i + j] += a[i] * b[j];
      else
        out[i + j] = mod_reduce(out[i + j] + mod_mul(a[i], b[j], p), p);
    }
  }
  return Poly(std::move(out), p);
}

inline Poly scale(const Poly& a, std::int64_t c) { return a * Poly::constant(c, a.modulus()); }

inline Poly derivative(const Poly& f) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) out.push_back(f[i] * static_cast<std::int64_t>(i));
  return Poly(std::move(out), f.modulus());
}

/// Horner evaluation at an integer point, reduced by the modulus when present.
inline std::int64_t evaluate(const Poly& f, std::int64_t x) {
  std::int64_t acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    if (f.modulus() == 0)
      acc = acc * x + f[i];
    else
      acc = mod_reduce(mod_mul(acc, mod_reduce(x, f.modulus()), f.modulus()) + f[i], f.modulus());
  }
  return acc;
}

/// Euclidean division over Z/p; divisor must be nonzero.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  auto p = detail::common_modulus(a, b);
  if (p == 0) throw Error(ErrorKind::InvalidModulus, "division needs a prime modulus");
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  std::vector<std::int64_t> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly::zero(p), a};
  std::vector<std::int64_t> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const std::int64_t inv = mod_inverse(b.lead(), p);
  for (int k = a.degree(); k >= db; --k) {
    std::int64_t c = rem[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    std::int64_t q = mod_mul(c, inv, p);
    quot[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) {
      auto& r = rem[static_cast<std::size_t>(k - db + j)];
      r = mod_reduce(r - mod_mul(q, b[static_cast<std::size_t>(j)], p), p);
    }
  }
  return {Poly(std::move(quot), p), Poly(std::move(rem), p)};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

/// Scale to leading coefficient 1 (zero stays zero).
inline Poly monic(const Poly& f) {
  if (f.is_zero() || f.modulus() == 0) return f;
  return scale(f, mod_inverse(f.lead(), f.modulus()));
}

/// base^e mod f over Z/p.
inline Poly powmod(Poly base, std::uint64_t e, const Poly& f) {
  Poly result = Poly::constant(1, f.modulus()) % f;
  base = base % f;
  while (e > 0) {
    if (e & 1U) result = (result * base) % f;
    base = (base * base) % f;
    e >>= 1U;
  }
  return result;
}

inline std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    std::int64_t c = f[i];
    if (c == 0) continue;
    bool negative = c < 0;
    std::int64_t mag = negative ? -c : c;
    if (!out.empty())
      out += negative ? "-" : "+";
    else if (negative)
      out += "-";
    if (i == 0 || mag != 1) out += std::to_string(mag);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& f) {
  os << to_string(f);
  if (f.modulus() != 0) os << " mod " << f.modulus();
  return os;
}

/// Parses `x^3+2x+1`, `3*x^2 - 2`, `-x`, optionally followed by `mod p`.
/// Whitespace is ignored. A trailing `mod p` sets the modulus.
inline Poly parse_poly(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  std::uint64_t modulus = 0;
  if (auto pos = s.find("mod"); pos != std::string::npos) {
    std::string m = s.substr(pos + 3);
    if (m.empty() || !std::all_of(m.begin(), m.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw Error(ErrorKind::ParseError, "bad modulus in '" + std::string(text) + "'");
    modulus = std::stoull(m);
    require_prime(modulus);
    s.resize(pos);
  }
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ParseError, why + " in '" + std::string(text) + "'");
  };
  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  auto read_int = [&](std::int64_t& out) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) return false;
    out = std::stoll(s.substr(start, i - start));
    return true;
  };
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail("expected '+' or '-'");
    }
    std::int64_t coeff = 1;
    bool has_coeff = read_int(coeff);
    if (has_coeff && i < s.size() && s[i] == '*') ++i;
    std::size_t power = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::int64_t e = 0;
        if (!read_int(e)) throw fail("missing exponent");
        power = static_cast<std::size_t>(e);
      }
    } else if (!has_coeff) {
      throw fail("expected a term");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * coeff;
  }
  return Poly(std::move(coeffs), modulus);
}

}  // namespace fieldtopos
