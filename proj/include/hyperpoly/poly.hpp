#pragma once

// Sparse multivariate polynomials with exact rational coefficients in the
// variables t1..tL, s and Omega (printed "W").

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace hyperpoly {

using BigInt = mpz_class;
using Rat = mpq_class;

/// Parses "7", "-3", "5/12" (canonicalized).
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& value);

constexpr int kMaxLines = 30;
constexpr int kMaxVars = kMaxLines + 2;
constexpr int kMaxExponent = 255;

/// Variable handle. Ids 0..kMaxLines-1 are t1..t30; s and Omega sit above them,
/// so that comparing ids reproduces the order t1 < ... < tL < s < Omega.
struct Var {
  int id = 0;

  static constexpr Var t(int line) { return Var{line}; }  // 0-based line index
  static constexpr Var s() { return Var{kMaxLines}; }
  static constexpr Var omega() { return Var{kMaxLines + 1}; }

  bool is_t() const { return id < kMaxLines; }
  std::string name() const;

  auto operator<=>(const Var&) const = default;
};

using Assignment = std::map<Var, Rat>;

class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial of(Var v, int exponent = 1);

  int exponent(Var v) const { return exps_[v.id]; }
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// Throws std::overflow_error when an exponent would exceed kMaxExponent.
  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  /// Graded lexicographic order, Omega > s > tL > ... > t1.
  std::strong_ordering operator<=>(const Monomial& other) const;

 private:
  std::array<std::uint8_t, kMaxVars> exps_;
  int degree_ = 0;
};

class Poly {
 public:
  struct Term {
    Monomial mono;
    Rat coeff;
  };

  Poly() = default;
  Poly(long constant);  // NOLINT(google-explicit-constructor)
  Poly(const Rat& constant);  // NOLINT(google-explicit-constructor)

  static Poly variable(Var v);
  static Poly t(int line) { return variable(Var::t(line)); }
  static Poly s() { return variable(Var::s()); }
  static Poly omega() { return variable(Var::omega()); }
  static Poly monomial(const Monomial& m, const Rat& coeff);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws if not constant.
  Rat constant_value() const;
  /// Terms in strictly decreasing graded-lex order, never with a zero coefficient.
  const std::vector<Term>& terms() const { return terms_; }

  int degree(Var v) const;
  int total_degree() const;
  std::set<Var> variables() const;
  /// Coefficient of v^e viewed as a polynomial in the remaining variables.
  Poly coefficient(Var v, int e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rat& factor) const;
  Poly pow(unsigned exponent) const;

  /// Point values must be in lowest terms. Throws std::invalid_argument when a
  /// variable of the polynomial has no value.
  Rat eval(const Assignment& point) const;

  bool operator==(const Poly& other) const;

 private:
  std::vector<Term> terms_;
};

/// Deterministic rendering: graded-lex descending, variables as t1..tL, s, W.
std::string canonical_string(const Poly& p);

/// Accepts the canonical grammar plus parentheses, '^', implicit products and
/// UTF-8 "Ω" as an alias for W. Throws std::invalid_argument on bad input.
Poly parse_poly(std::string_view text);

/// [{ "exponents": [e_t1..e_tL, e_s, e_W], "coeff": "p/q" }, ...]
nlohmann::json to_json(const Poly& p, int num_lines);

}  // namespace hyperpoly
