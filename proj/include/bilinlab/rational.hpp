#pragma once

// Exact rational arithmetic. Case boundaries of the exponent taxonomy
// (1/2, 3/2, triangle conditions) must be decided exactly, so everything
// in the exponents module runs on these, never on floating point.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bilinlab {

template <class I>
struct basic_rational {
  I num{0};
  I den{1};

  constexpr basic_rational() = default;
  constexpr basic_rational(I n) : num(std::move(n)), den(1) {}
  constexpr basic_rational(I n, I d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    normalize();
  }

  constexpr void normalize() {
    if (den < 0) { num = -num; den = -den; }
    I g = gcd_of(num < 0 ? I(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static constexpr I gcd_of(I a, I b) {
    while (b != 0) { I t = a % b; a = b; b = t; }
    return a < 0 ? I(-a) : a;
  }

  friend constexpr basic_rational operator+(const basic_rational& x, const basic_rational& y) {
    return basic_rational(x.num * y.den + y.num * x.den, x.den * y.den);
  }
  friend constexpr basic_rational operator-(const basic_rational& x, const basic_rational& y) {
    return basic_rational(x.num * y.den - y.num * x.den, x.den * y.den);
  }
  friend constexpr basic_rational operator*(const basic_rational& x, const basic_rational& y) {
    return basic_rational(x.num * y.num, x.den * y.den);
  }
  friend constexpr basic_rational operator/(const basic_rational& x, const basic_rational& y) {
    if (y.num == 0) throw std::domain_error("rational: division by zero");
    return basic_rational(x.num * y.den, x.den * y.num);
  }
  friend constexpr basic_rational operator-(const basic_rational& x) {
    basic_rational r; r.num = -x.num; r.den = x.den; return r;
  }

  friend constexpr bool operator==(const basic_rational& x, const basic_rational& y) {
    return x.num == y.num && x.den == y.den;
  }
  friend constexpr bool operator!=(const basic_rational& x, const basic_rational& y) { return !(x == y); }
  friend constexpr bool operator<(const basic_rational& x, const basic_rational& y) {
    return x.num * y.den < y.num * x.den;
  }
  friend constexpr bool operator>(const basic_rational& x, const basic_rational& y) { return y < x; }
  friend constexpr bool operator<=(const basic_rational& x, const basic_rational& y) { return !(y < x); }
  friend constexpr bool operator>=(const basic_rational& x, const basic_rational& y) { return !(x < y); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    std::string s = num_str(num);
    if (den != 1) s += "/" + num_str(den);
    return s;
  }

 private:
  static std::string num_str(const I& v) {
    if constexpr (std::is_integral_v<I>) return std::to_string(v);
    else return v.str();  // multiprecision types
  }
};

using rat = basic_rational<long long>;

inline rat rat_min(const rat& a, const rat& b) { return a < b ? a : b; }
inline rat rat_max(const rat& a, const rat& b) { return a < b ? b : a; }

// Parses "3", "-1/2"; no decimal forms (exactness contract).
inline rat parse_rat(std::string_view s) {
  auto bad = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  auto to_ll = [&](std::string_view t) -> long long {
    if (t.empty()) bad();
    std::size_t pos = 0;
    long long v = 0;
    try { v = std::stoll(std::string(t), &pos); } catch (...) { bad(); }
    if (pos != t.size()) bad();
    return v;
  };
  if (slash == std::string_view::npos) return rat(to_ll(s));
  return rat(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
}

// An exponent in (0, infinity]; infinity is reciprocal 0.
struct Exponent {
  bool inf{false};
  rat value{1};  // meaningful only when !inf

  static Exponent infinity() { return Exponent{true, rat(0)}; }
  static Exponent finite(rat v) {
    if (v.num <= 0) throw std::domain_error("exponent must be positive");
    return Exponent{false, v};
  }
  // reciprocal 0 means infinity
  static Exponent from_reciprocal(const rat& r) {
    if (r.num < 0) throw std::domain_error("exponent reciprocal must be >= 0");
    if (r.num == 0) return infinity();
    return finite(rat(r.den, r.num));
  }

  rat reciprocal() const { return inf ? rat(0) : rat(value.den, value.num); }
  std::string str() const { return inf ? "inf" : value.str(); }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.inf == b.inf && (a.inf || a.value == b.value);
  }
};

inline Exponent parse_exponent(std::string_view s) {
  if (s == "inf" || s == "oo" || s == "Inf" || s == "INF") return Exponent::infinity();
  return Exponent::finite(parse_rat(s));
}

}  // namespace bilinlab
