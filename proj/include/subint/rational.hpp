#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace subint {

// Exact ground field: canonical form (positive denominator, gcd-reduced)
// is maintained by gmp on every arithmetic result.
using Rational = mpq_class;

using QVec = std::vector<Rational>;

// Strict grammar -?[0-9]+(/[1-9][0-9]*)?  Returns nullopt on anything else.
std::optional<Rational> parse_rational(const std::string& text);

// Canonicalized fraction (the raw two-argument mpq_class constructor
// stores the operands verbatim, which breaks gmp arithmetic).
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q);
std::string to_string(const QVec& v);

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec vadd(const QVec& a, const QVec& b);
QVec vsub(const QVec& a, const QVec& b);
QVec vscale(const Rational& c, const QVec& a);
QVec vneg(const QVec& a);
bool is_zero(const QVec& a);
QVec zero_vec(int dim);
QVec unit_vec(int dim, int i);

// max_i |a_i|
Rational linf_norm(const QVec& a);
// sum_i |a_i|
Rational l1_norm(const QVec& a);

// Lexicographic order, used for canonical sorting of generator lists.
bool lex_less(const QVec& a, const QVec& b);

// Scales a to the unique positive multiple with integer coprime entries.
// Zero vectors are returned unchanged.
QVec primitive(const QVec& a);

// Extended value: finite rational, +inf, or -inf (the distinguished
// empty-set value of support functions).
class ExtRat {
 public:
  enum class Kind { Finite, PlusInf, MinusInf };

  ExtRat() : kind_(Kind::Finite), value_(0) {}
  ExtRat(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
  static ExtRat plus_inf() { return ExtRat(Kind::PlusInf); }
  static ExtRat minus_inf() { return ExtRat(Kind::MinusInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  bool is_minus_inf() const { return kind_ == Kind::MinusInf; }
  const Rational& value() const { return value_; }

  // inf + (-inf) = inf, matching the extended-arithmetic convention of
  // the calculus this library implements.
  ExtRat operator+(const ExtRat& o) const {
    if (is_plus_inf() || o.is_plus_inf()) return plus_inf();
    if (is_minus_inf() || o.is_minus_inf()) return minus_inf();
    return ExtRat(value_ + o.value_);
  }

  bool operator==(const ExtRat& o) const {
    if (kind_ != o.kind_) return false;
    return kind_ != Kind::Finite || value_ == o.value_;
  }

  std::string str() const;

 private:
  explicit ExtRat(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  Rational value_;
};

}  // namespace subint
