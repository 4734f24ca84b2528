#pragma once

// Exact scalars and planar primitives shared by every module.
//
// Rationals are GMP rationals kept in canonical form. Distances in a
// polygonal CC metric are roots of rational quadratics, so the only
// irrational numbers the toolkit ever handles have the form p + q*sqrt(d)
// with a single radicand; AlgebraicScalar represents exactly those.

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heiscc {

using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);
int sign(const Rational& r);
Rational abs(const Rational& r);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);
double to_double(const Rational& r);

struct Vec2 {
  Rational x{0};
  Rational y{0};

  Vec2() = default;
  Vec2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec2(long x_, long y_) : x(x_), y(y_) {}

  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(const Vec2& a, const Rational& s) { return {a.x / s, a.y / s}; }
};

Rational dot(const Vec2& a, const Vec2& b);
Rational cross(const Vec2& a, const Vec2& b);
std::string to_string(const Vec2& v);

/// Signed area of the closed loop through `vertices`; positive when CCW.
Rational shoelace_area(std::span<const Vec2> vertices);

/// a1 x^2 + a2 xy + a3 y^2 + b1 x + b2 y + c.
struct Quadratic2 {
  Rational a1{0}, a2{0}, a3{0}, b1{0}, b2{0}, c{0};

  Rational operator()(const Vec2& p) const;
  Rational operator()(const Rational& x, const Rational& y) const;

  friend bool operator==(const Quadratic2&, const Quadratic2&) = default;
  friend Quadratic2 operator+(const Quadratic2& p, const Quadratic2& q);
  friend Quadratic2 operator-(const Quadratic2& p, const Quadratic2& q);
  friend Quadratic2 operator*(const Rational& s, const Quadratic2& q);
};

/// cx x + cy y + c0.
struct AffineForm {
  Rational cx{0}, cy{0}, c0{0};

  Rational operator()(const Vec2& p) const { return cx * p.x + cy * p.y + c0; }

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  friend AffineForm operator+(const AffineForm& a, const AffineForm& b);
  friend AffineForm operator-(const AffineForm& a, const AffineForm& b);
  friend AffineForm operator*(const Rational& s, const AffineForm& a);
};

Quadratic2 product(const AffineForm& a, const AffineForm& b);

/// p + q*sqrt(d) with rational p, q and rational d >= 0.
///
/// The radicand is normalized to a non-square integer with small square
/// factors pulled out; a perfect-square radicand folds into p. Arithmetic
/// between scalars with different radicands is rejected, but comparison
/// is exact for any pair.
class AlgebraicScalar {
 public:
  AlgebraicScalar() = default;
  AlgebraicScalar(Rational p);  // NOLINT(google-explicit-constructor)
  AlgebraicScalar(long p) : AlgebraicScalar(Rational(p)) {}  // NOLINT
  AlgebraicScalar(Rational p, Rational q, Rational d);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  const Rational& d() const { return d_; }
  bool is_rational() const { return q_ == 0; }

  int sign() const;
  double to_double() const;
  /// "p", "q*sqrt(d)" or "p + q*sqrt(d)" with rationals in p/q form.
  std::string to_string() const;

  friend AlgebraicScalar operator+(const AlgebraicScalar& a, const AlgebraicScalar& b);
  friend AlgebraicScalar operator-(const AlgebraicScalar& a, const AlgebraicScalar& b);
  friend AlgebraicScalar operator*(const AlgebraicScalar& a, const AlgebraicScalar& b);
  friend AlgebraicScalar operator-(const AlgebraicScalar& a);

  friend int compare(const AlgebraicScalar& a, const AlgebraicScalar& b);
  friend bool operator==(const AlgebraicScalar& a, const AlgebraicScalar& b) { return compare(a, b) == 0; }
  friend bool operator<(const AlgebraicScalar& a, const AlgebraicScalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const AlgebraicScalar& a, const AlgebraicScalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const AlgebraicScalar& a, const AlgebraicScalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const AlgebraicScalar& a, const AlgebraicScalar& b) { return compare(a, b) >= 0; }

 private:
  static Rational common_radicand(const AlgebraicScalar& a, const AlgebraicScalar& b);

  Rational p_{0};
  Rational q_{0};
  Rational d_{0};
};

/// All real roots t > 0 of a t^2 + b t + c = 0, ascending.
std::vector<AlgebraicScalar> solve_quadratic_positive(const Rational& a, const Rational& b, const Rational& c);

}  // namespace heiscc
