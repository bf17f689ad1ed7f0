#pragma once

// Table-driven arithmetic in GF(q), q = p^e.
//
// Elements are encoded as the base-p integer of their coefficient vector in
// the polynomial basis 1, α, α², ... (little-endian in powers of α), where α
// is the class of x modulo the field's defining polynomial. Encoding 0 is the
// additive identity and encoding 1 the multiplicative identity.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tc::gf {

struct FieldElement {
  std::uint16_t idx = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t v) : idx(static_cast<std::uint16_t>(v)) {}

  constexpr bool is_zero() const { return idx == 0; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline constexpr FieldElement kZero{0};
inline constexpr FieldElement kOne{1};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Field {
 public:
  // Builds GF(q). `modulus` lists coefficients from the constant term up and
  // must be monic of degree e; when empty the built-in default is used.
  static std::shared_ptr<const Field> make(std::uint32_t q, std::vector<int> modulus = {});

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  // q mod 3 mapped to {-1, 0, 1}.
  int xi() const { return xi_; }
  bool is_even() const { return p_ == 2; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::string modulus_string() const;

  FieldElement add(FieldElement x, FieldElement y) const {
    if (p_ == 2) return FieldElement(x.idx ^ y.idx);
    if (!add_.empty()) return add_[static_cast<std::size_t>(x.idx) * q_ + y.idx];
    return add_digits(x, y);
  }
  FieldElement neg(FieldElement x) const { return neg_[x.idx]; }
  FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }
  FieldElement mul(FieldElement x, FieldElement y) const {
    if (x.is_zero() || y.is_zero()) return kZero;
    return exp_[static_cast<std::size_t>(log_[x.idx]) + log_[y.idx]];
  }
  FieldElement inv(FieldElement x) const {
    if (x.is_zero()) throw FieldError("inverse of zero");
    return inv_[x.idx];
  }
  FieldElement div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }
  FieldElement pow(FieldElement x, std::uint64_t n) const;
  FieldElement square(FieldElement x) const { return mul(x, x); }

  // The image of the integer n under Z -> GF(p) -> GF(q).
  FieldElement from_int(long long n) const;
  FieldElement primitive() const { return exp_[1]; }

  bool is_square(FieldElement x) const { return sqrt_[x.idx] != kNoRoot; }
  // Some y with y*y == x, if any. In characteristic 2 the root is unique.
  std::optional<FieldElement> sqrt(FieldElement x) const;
  // Absolute trace x + x^p + ... + x^(p^(e-1)) as an integer in [0, p).
  unsigned abs_trace(FieldElement x) const { return trace_[x.idx]; }

  // Distinct roots of x^2 - a1 x + a2, ascending by encoding.
  std::vector<FieldElement> quadratic_roots(FieldElement a1, FieldElement a2) const;
  int quadratic_root_count(FieldElement a1, FieldElement a2) const;

  // Minimal-encoding non-square (odd q) and minimal-encoding element of
  // absolute trace 1.
  FieldElement min_nonsquare() const;
  FieldElement min_trace_one() const;

  std::vector<int> coefficients(FieldElement x) const;
  FieldElement from_coefficients(std::span<const int> coeffs) const;

  // Order of the multiplicative group equals q - 1; exposed for tests.
  std::uint32_t log(FieldElement x) const { return log_[x.idx]; }

 private:
  Field() = default;
  void build_tables();
  FieldElement add_digits(FieldElement x, FieldElement y) const;

  static constexpr FieldElement kNoRoot{0xFFFF};

  std::uint32_t q_ = 0, p_ = 0, e_ = 0;
  int xi_ = 0;
  std::vector<int> modulus_;
  std::vector<FieldElement> add_;  // q*q, odd characteristic only
  std::vector<FieldElement> neg_, inv_, exp_, sqrt_, artin_schreier_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint8_t> trace_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Convenience wrapper for expression-style code in tests and tools. Mixed-field
// operands throw FieldError.
class Value {
 public:
  Value(FieldPtr f, FieldElement x) : f_(std::move(f)), x_(x) {}
  Value(FieldPtr f, long long n) : f_(std::move(f)), x_(f_->from_int(n)) {}

  FieldElement element() const { return x_; }
  const Field& field() const { return *f_; }

  friend Value operator+(const Value& a, const Value& b) { return {a.same(b), a.f_->add(a.x_, b.x_)}; }
  friend Value operator-(const Value& a, const Value& b) { return {a.same(b), a.f_->sub(a.x_, b.x_)}; }
  friend Value operator*(const Value& a, const Value& b) { return {a.same(b), a.f_->mul(a.x_, b.x_)}; }
  friend Value operator/(const Value& a, const Value& b) { return {a.same(b), a.f_->div(a.x_, b.x_)}; }
  Value operator-() const { return {f_, f_->neg(x_)}; }
  Value inverse() const { return {f_, f_->inv(x_)}; }
  friend bool operator==(const Value& a, const Value& b) { return a.same(b) && a.x_ == b.x_; }

 private:
  const FieldPtr& same(const Value& o) const {
    if (f_.get() != o.f_.get()) throw FieldError("operands from different fields");
    return f_;
  }
  FieldPtr f_;
  FieldElement x_;
};

// Prime-power decomposition; nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint32_t q);

// Irreducibility of a monic polynomial over GF(p) (coefficients low to high).
bool is_irreducible(std::span<const int> poly, std::uint32_t p);

// Built-in default modulus for q (Conway polynomial where tabulated, else the
// lexicographically smallest monic irreducible).
std::vector<int> default_modulus(std::uint32_t q);

}  // namespace tc::gf
