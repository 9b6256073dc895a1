#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace kmlab {

/// Raised for malformed numeric literals and arithmetic misuse (division by zero).
class scalar_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Exact, Float };

/// Process-wide absolute tolerance used by every Float-mode comparison.
double tolerance();
void set_tolerance(double tau);

/// A number that is either an exact rational or a binary64 float.
///
/// Mixing the two promotes to Float.  Exact arithmetic is closed and never
/// rounds; Float comparisons (`is_zero`, `sign`, `==`) use `tolerance()`.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class v) : value_(std::move(v)) { std::get<mpq_class>(value_).canonicalize(); }  // NOLINT
  Scalar(int num, int den);

  static Scalar from_double(double v) { Scalar s; s.value_ = v; return s; }

  /// Parses "p", "p/q", "-p/q"; with `mode == Float` also accepts decimals.
  static Scalar parse(std::string_view text, Mode mode = Mode::Exact);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  Mode mode() const { return is_exact() ? Mode::Exact : Mode::Float; }
  const mpq_class& rational() const;
  double to_double() const;

  /// Same value in the requested mode (Exact -> Float is lossy, Float -> Exact throws).
  Scalar in_mode(Mode m) const;

  bool is_zero() const;
  /// -1, 0, +1; Float mode treats |x| < tau as zero.
  int sign() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality for rationals, tolerance equality once a float is involved.
  friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  /// Canonical text: "p/q" in lowest terms (q > 0, "/1" omitted) or the
  /// shortest round-trip decimal for floats.
  std::string str() const;

  /// Bit-identical comparison (no tolerance); used for determinism checks.
  bool identical(const Scalar& o) const;

 private:
  std::variant<mpq_class, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Exact rational square root when `q` is the square of a rational.
bool rational_sqrt(const mpq_class& q, mpq_class& root);

/// Shortest decimal that round-trips through strtod.
std::string format_double(double v);

/// coeff * sqrt(radicand), radicand >= 0.
///
/// Keeps invariants such as (1 - mu/2)/sqrt(1 - kappa) exact: equality and
/// ordering are decided on sign(coeff) together with coeff^2 * radicand.
class RootExpr {
 public:
  RootExpr() = default;
  RootExpr(Scalar coeff, Scalar radicand);

  /// n / sqrt(d), d > 0.
  static RootExpr quotient(const Scalar& n, const Scalar& d);

  const Scalar& coeff() const { return coeff_; }
  const Scalar& radicand() const { return radicand_; }

  int sign() const;
  /// value^2 (always exact in Exact mode).
  Scalar squared() const { return coeff_ * coeff_ * radicand_; }
  double to_double() const;

  /// -1/0/+1 for this versus q.
  int compare(const Scalar& q) const;
  /// Same ordering as compare() but on |value|.
  int compare_abs(const Scalar& q) const;

  friend bool operator==(const RootExpr& a, const RootExpr& b) {
    return a.sign() == b.sign() && a.squared() == b.squared();
  }

  /// "a*sqrt(m)" with m a square-free integer > 1, or a plain rational when
  /// the root is rational; floats render as a decimal.
  std::string str() const;

 private:
  Scalar coeff_;
  Scalar radicand_;
};

}  // namespace kmlab
