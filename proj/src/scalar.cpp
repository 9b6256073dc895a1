#include "kmlab/scalar.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>

namespace kmlab {

namespace {

std::atomic<double> g_tolerance{1e-9};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw scalar_error("malformed rational '" + std::string(whole) + "'");
  return mpz_class(std::string(s.front() == '+' ? s.substr(1) : s));
}

// Splits n = s^2 * m with m square-free (trial division; a large cofactor is
// only absorbed when it is itself a perfect square).
void square_free_split(const mpz_class& n, mpz_class& s, mpz_class& m) {
  s = 1;
  m = 1;
  mpz_class rest = n;
  for (unsigned long p = 2; p < 100000 && mpz_class(p) * p <= rest; ++p) {
    unsigned exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      rest /= p;
      ++exponent;
    }
    for (unsigned e = 0; e < exponent / 2; ++e) s *= p;
    if (exponent % 2 == 1) m *= p;
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      s *= sqrt(rest);
    } else {
      m *= rest;
    }
  }
}

}  // namespace

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw scalar_error("tolerance must be a positive finite number");
  g_tolerance.store(tau, std::memory_order_relaxed);
}

Scalar::Scalar(int num, int den) {
  if (den == 0) throw scalar_error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  value_ = q;
}

Scalar Scalar::parse(std::string_view text, Mode mode) {
  std::string_view t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t.empty()) throw scalar_error("empty number");

  auto slash = t.find('/');
  bool looks_decimal = t.find_first_of(".eE") != std::string_view::npos;
  if (looks_decimal) {
    if (mode == Mode::Exact) {
      throw scalar_error("malformed rational '" + std::string(text) + "' (exact mode expects p/q)");
    }
    double v = 0.0;
    std::string_view body = t.front() == '+' ? t.substr(1) : t;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      throw scalar_error("malformed number '" + std::string(text) + "'");
    }
    return from_double(v);
  }

  mpq_class q;
  if (slash == std::string_view::npos) {
    q = mpq_class(parse_integer(t, text));
  } else {
    mpz_class num = parse_integer(t.substr(0, slash), text);
    std::string_view den_text = t.substr(slash + 1);
    if (!all_digits(den_text)) throw scalar_error("malformed rational '" + std::string(text) + "'");
    mpz_class den(std::string{den_text});
    if (den == 0) throw scalar_error("zero denominator in '" + std::string(text) + "'");
    q = mpq_class(num, den);
    q.canonicalize();
  }
  Scalar s(q);
  return mode == Mode::Float ? s.in_mode(Mode::Float) : s;
}

const mpq_class& Scalar::rational() const {
  if (!is_exact()) throw scalar_error("float scalar has no exact rational value");
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

Scalar Scalar::in_mode(Mode m) const {
  if (m == mode()) return *this;
  if (m == Mode::Float) return from_double(to_double());
  throw scalar_error("cannot convert a float scalar to an exact rational");
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_));
  double v = std::get<double>(value_);
  if (std::fabs(v) < tolerance()) return 0;
  return v < 0 ? -1 : 1;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return from_double(-std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() + o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() - o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() * o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    if (sgn(std::get<mpq_class>(o.value_)) == 0) throw scalar_error("division by zero");
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  } else {
    double d = o.to_double();
    if (d == 0.0) throw scalar_error("division by zero");
    value_ = to_double() / d;
  }
  return *this;
}

std::string Scalar::str() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str();
  return format_double(std::get<double>(value_));
}

bool Scalar::identical(const Scalar& o) const {
  if (is_exact() != o.is_exact()) return false;
  if (is_exact()) return std::get<mpq_class>(value_) == std::get<mpq_class>(o.value_);
  return std::get<double>(value_) == std::get<double>(o.value_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool rational_sqrt(const mpq_class& q, mpq_class& root) {
  if (sgn(q) < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  root = mpq_class(sqrt(num), sqrt(den));
  root.canonicalize();
  return true;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

RootExpr::RootExpr(Scalar coeff, Scalar radicand) : coeff_(std::move(coeff)), radicand_(std::move(radicand)) {
  if (radicand_.sign() < 0) throw scalar_error("negative radicand");
}

RootExpr RootExpr::quotient(const Scalar& n, const Scalar& d) {
  if (d.sign() <= 0) throw scalar_error("quotient by sqrt of a non-positive number");
  return RootExpr(n / d, d);
}

int RootExpr::sign() const { return radicand_.is_zero() ? 0 : coeff_.sign(); }

double RootExpr::to_double() const { return coeff_.to_double() * std::sqrt(radicand_.to_double()); }

int RootExpr::compare(const Scalar& q) const {
  int s = sign();
  int t = q.sign();
  if (s != t) return s < t ? -1 : 1;
  if (s == 0) return 0;
  Scalar diff = squared() - q * q;
  // Both negative: the larger square is the smaller number.
  return s > 0 ? diff.sign() : -diff.sign();
}

int RootExpr::compare_abs(const Scalar& q) const { return (squared() - q * q).sign(); }

std::string RootExpr::str() const {
  if (sign() == 0) return "0";
  if (!coeff_.is_exact() || !radicand_.is_exact()) return format_double(to_double());
  // coeff * sqrt(p/q) = (coeff/q) * sqrt(p*q) = (coeff*s/q) * sqrt(m)
  const mpq_class& r = radicand_.rational();
  mpz_class s;
  mpz_class m;
  square_free_split(r.get_num() * r.get_den(), s, m);
  mpq_class a = coeff_.rational() * mpq_class(s, r.get_den());
  a.canonicalize();
  if (m == 1) return a.get_str();
  std::string root = "sqrt(" + m.get_str() + ")";
  if (a == 1) return root;
  if (a == -1) return "-" + root;
  return a.get_str() + "*" + root;
}

}  // namespace kmlab
