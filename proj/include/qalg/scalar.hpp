#pragma once
#include <gmpxx.h>

#include <Eigen/Core>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qalg {

struct Field {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static Field rationals() { return {}; }
  static Field prime(std::uint32_t p);
  bool operator==(const Field&) const = default;
  std::string str() const;
};

bool is_prime(std::uint64_t n);

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : v_(static_cast<long>(v)) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rational parse(const std::string& s);

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  Rational inverse() const { return Rational(1) / *this; }
  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

// Residues modulo a prime. The modulus is per thread; see ModulusScope.
class Zp {
 public:
  Zp() = default;
  template <std::integral I>
  Zp(I v) {
    if (v == 0) return;
    long long m = p_, x = static_cast<long long>(v) % m;
    v_ = static_cast<std::uint32_t>(x < 0 ? x + m : x);
  }

  static void set_modulus(std::uint32_t p);
  static std::uint32_t modulus() { return p_; }
  static Zp parse(const std::string& s);

  Zp operator+(Zp o) const { return raw((std::uint64_t(v_) + o.v_) % p_); }
  Zp operator-(Zp o) const { return raw((std::uint64_t(v_) + p_ - o.v_) % p_); }
  Zp operator*(Zp o) const { return raw(std::uint64_t(v_) * o.v_ % p_); }
  Zp operator/(Zp o) const { return *this * o.inverse(); }
  Zp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
  Zp& operator+=(Zp o) { return *this = *this + o; }
  Zp& operator-=(Zp o) { return *this = *this - o; }
  Zp& operator*=(Zp o) { return *this = *this * o; }
  Zp& operator/=(Zp o) { return *this = *this / o; }
  bool operator==(Zp o) const { return v_ == o.v_; }
  bool operator!=(Zp o) const { return v_ != o.v_; }
  bool operator<(Zp o) const { return v_ < o.v_; }

  bool is_zero() const { return v_ == 0; }
  Zp inverse() const;
  std::uint32_t value() const { return v_; }
  std::string str() const { return std::to_string(v_); }

 private:
  static Zp raw(std::uint64_t v) {
    Zp z;
    z.v_ = static_cast<std::uint32_t>(v);
    return z;
  }
  std::uint32_t v_ = 0;
  static inline thread_local std::uint32_t p_ = 0;
};

class ModulusScope {
 public:
  explicit ModulusScope(std::uint32_t p) : saved_(Zp::modulus()) { Zp::set_modulus(p); }
  ~ModulusScope() {
    if (saved_) Zp::set_modulus(saved_);
  }
  ModulusScope(const ModulusScope&) = delete;
  ModulusScope& operator=(const ModulusScope&) = delete;

 private:
  std::uint32_t saved_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.str(); }

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Zp& x) { return x.is_zero(); }

template <class K>
K parse_scalar(const std::string& s) {
  return K::parse(s);
}

template <class K>
std::string field_tag();
template <>
inline std::string field_tag<Rational>() { return "Q"; }
template <>
inline std::string field_tag<Zp>() { return "GF(" + std::to_string(Zp::modulus()) + ")"; }

}  // namespace qalg

namespace Eigen {

template <class T>
struct QalgScalarTraits {
  typedef T Real;
  typedef T NonInteger;
  typedef T Literal;
  typedef T Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static T epsilon() { return T(0); }
  static T dummy_precision() { return T(0); }
  static T highest() { return T(0); }
  static T lowest() { return T(0); }
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

template <>
struct NumTraits<qalg::Rational> : QalgScalarTraits<qalg::Rational> {
  enum { ReadCost = 10, AddCost = 40, MulCost = 60 };
};
template <>
struct NumTraits<qalg::Zp> : QalgScalarTraits<qalg::Zp> {};

}  // namespace Eigen
