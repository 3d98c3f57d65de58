#include "subint/rational.hpp"

#include <sstream>

namespace subint {

std::optional<Rational> parse_rational(const std::string& text) {
  // -?[0-9]+(/[1-9][0-9]*)?
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == num_begin) return std::nullopt;
  if (i == text.size()) {
    Rational q(text, 10);
    q.canonicalize();
    return q;
  }
  if (text[i] != '/') return std::nullopt;
  ++i;
  if (i >= text.size() || text[i] < '1' || text[i] > '9') return std::nullopt;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i != text.size()) return std::nullopt;
  Rational q(text, 10);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string to_string(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

QVec vadd(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec vsub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec vscale(const Rational& c, const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

QVec vneg(const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const QVec& a) {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

QVec zero_vec(int dim) { return QVec(dim, Rational(0)); }

QVec unit_vec(int dim, int i) {
  QVec v = zero_vec(dim);
  v[i] = 1;
  return v;
}

Rational linf_norm(const QVec& a) {
  Rational m = 0;
  for (const auto& c : a) m = std::max(m, Rational(abs(c)));
  return m;
}

Rational l1_norm(const QVec& a) {
  Rational s = 0;
  for (const auto& c : a) s += Rational(abs(c));
  return s;
}

bool lex_less(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

QVec primitive(const QVec& a) {
  if (is_zero(a)) return a;
  mpz_class den = 1;
  for (const auto& c : a) den = lcm(den, c.get_den());
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, mpz_class(c.get_num() * (den / c.get_den())));
  Rational s(den, g);
  s.canonicalize();
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

std::string ExtRat::str() const {
  switch (kind_) {
    case Kind::PlusInf:
      return "+inf";
    case Kind::MinusInf:
      return "-inf";
    default:
      return to_string(value_);
  }
}

}  // namespace subint
