#include "heiscc/exact.hpp"

#include <cmath>

#include "heiscc/errors.hpp"

namespace heiscc {

Rational make_rational(long num, long den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidInput("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw InvalidInput("malformed rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

int sign(const Rational& r) { return sgn(r); }

Rational abs(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

std::string to_string(const Vec2& v) { return "(" + to_string(v.x) + ", " + to_string(v.y) + ")"; }

Rational shoelace_area(std::span<const Vec2> vertices) {
  Rational twice = 0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) twice += cross(vertices[k], vertices[(k + 1) % n]);
  return twice / 2;
}

Rational Quadratic2::operator()(const Vec2& p) const { return (*this)(p.x, p.y); }

Rational Quadratic2::operator()(const Rational& x, const Rational& y) const {
  return a1 * x * x + a2 * x * y + a3 * y * y + b1 * x + b2 * y + c;
}

Quadratic2 operator+(const Quadratic2& p, const Quadratic2& q) {
  return {p.a1 + q.a1, p.a2 + q.a2, p.a3 + q.a3, p.b1 + q.b1, p.b2 + q.b2, p.c + q.c};
}

Quadratic2 operator-(const Quadratic2& p, const Quadratic2& q) {
  return {p.a1 - q.a1, p.a2 - q.a2, p.a3 - q.a3, p.b1 - q.b1, p.b2 - q.b2, p.c - q.c};
}

Quadratic2 operator*(const Rational& s, const Quadratic2& q) {
  return {s * q.a1, s * q.a2, s * q.a3, s * q.b1, s * q.b2, s * q.c};
}

AffineForm operator+(const AffineForm& a, const AffineForm& b) {
  return {a.cx + b.cx, a.cy + b.cy, a.c0 + b.c0};
}

AffineForm operator-(const AffineForm& a, const AffineForm& b) {
  return {a.cx - b.cx, a.cy - b.cy, a.c0 - b.c0};
}

AffineForm operator*(const Rational& s, const AffineForm& a) { return {s * a.cx, s * a.cy, s * a.c0}; }

Quadratic2 product(const AffineForm& a, const AffineForm& b) {
  return {a.cx * b.cx,
          a.cx * b.cy + a.cy * b.cx,
          a.cy * b.cy,
          a.cx * b.c0 + a.c0 * b.cx,
          a.cy * b.c0 + a.c0 * b.cy,
          a.c0 * b.c0};
}

// --- AlgebraicScalar -------------------------------------------------------

namespace {

// Writes q*sqrt(d) as q'*sqrt(n) with n a positive integer whose square
// factors over small primes have been extracted. Returns n = 1 when the
// radicand is a perfect square (the caller then folds q' into p).
void normalize_radical(Rational& q, Rational& d) {
  if (q == 0 || d == 0) {
    q = 0;
    d = 0;
    return;
  }
  // q*sqrt(a/b) = (q/b)*sqrt(a*b)
  Integer n = d.get_num() * d.get_den();
  q /= Rational(d.get_den());
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    q *= Rational(root);
    d = 1;
    return;
  }
  Integer factor = 1;
  for (unsigned long p = 2; p < 1000; ++p) {
    const unsigned long sq = p * p;
    while (mpz_divisible_ui_p(n.get_mpz_t(), sq)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), sq);
      factor *= p;
    }
    if (Integer(sq) > n) break;
  }
  q *= Rational(factor);
  d = Rational(n);
}

}  // namespace

AlgebraicScalar::AlgebraicScalar(Rational p) : p_(std::move(p)) {}

AlgebraicScalar::AlgebraicScalar(Rational p, Rational q, Rational d) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
  if (sgn(d_) < 0) throw InvalidInput("negative radicand");
  normalize_radical(q_, d_);
  if (d_ == 1) {
    p_ += q_;
    q_ = 0;
    d_ = 0;
  }
}

int AlgebraicScalar::sign() const {
  const int sp = sgn(p_);
  const int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: the larger magnitude wins.
  const int mag = cmp(Rational(p_ * p_), Rational(q_ * q_ * d_));
  if (mag > 0) return sp;
  if (mag < 0) return sq;
  return 0;
}

double AlgebraicScalar::to_double() const { return p_.get_d() + q_.get_d() * std::sqrt(d_.get_d()); }

std::string AlgebraicScalar::to_string() const {
  if (q_ == 0) return heiscc::to_string(p_);
  std::string rad = heiscc::to_string(q_) + "*sqrt(" + heiscc::to_string(d_) + ")";
  if (p_ == 0) return rad;
  return heiscc::to_string(p_) + " + " + rad;
}

Rational AlgebraicScalar::common_radicand(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  if (a.q_ == 0) return b.d_;
  if (b.q_ == 0) return a.d_;
  if (a.d_ != b.d_) throw InvalidInput("arithmetic across different radicands");
  return a.d_;
}

AlgebraicScalar operator+(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  Rational d = AlgebraicScalar::common_radicand(a, b);
  return AlgebraicScalar(a.p_ + b.p_, a.q_ + b.q_, d);
}

AlgebraicScalar operator-(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  Rational d = AlgebraicScalar::common_radicand(a, b);
  return AlgebraicScalar(a.p_ - b.p_, a.q_ - b.q_, d);
}

AlgebraicScalar operator*(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  Rational d = AlgebraicScalar::common_radicand(a, b);
  return AlgebraicScalar(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d);
}

AlgebraicScalar operator-(const AlgebraicScalar& a) { return AlgebraicScalar(-a.p_, -a.q_, a.d_); }

int compare(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  if (a.q_ == 0 || b.q_ == 0 || a.d_ == b.d_) return (a - b).sign();
  // sign(u - w) with u = (pa - pb) + qa*sqrt(da), w = qb*sqrt(db).
  const AlgebraicScalar u(a.p_ - b.p_, a.q_, a.d_);
  const AlgebraicScalar w(0, b.q_, b.d_);
  const int su = u.sign();
  const int sw = w.sign();
  if (su != sw) return su > sw ? 1 : -1;
  if (su == 0) return 0;
  const AlgebraicScalar u2 = u * u;
  const Rational w2 = b.q_ * b.q_ * b.d_;
  const int c = (u2 - AlgebraicScalar(w2)).sign();
  return su > 0 ? c : -c;
}

std::vector<AlgebraicScalar> solve_quadratic_positive(const Rational& a, const Rational& b, const Rational& c) {
  std::vector<AlgebraicScalar> roots;
  if (a == 0) {
    if (b == 0) return roots;  // constant equation: no isolated roots
    Rational t = -c / b;
    if (sgn(t) > 0) roots.emplace_back(t);
    return roots;
  }
  const Rational disc = b * b - 4 * a * c;
  if (sgn(disc) < 0) return roots;
  const Rational center = -b / (2 * a);
  const Rational half = 1 / (2 * a);
  if (disc == 0) {
    if (sgn(center) > 0) roots.emplace_back(center);
    return roots;
  }
  // center +- |half|*sqrt(disc), smaller root first
  const Rational h = abs(half);
  for (const Rational& q : {Rational(-h), h}) {
    AlgebraicScalar t(center, q, disc);
    if (t.sign() > 0) roots.push_back(t);
  }
  return roots;
}

}  // namespace heiscc
