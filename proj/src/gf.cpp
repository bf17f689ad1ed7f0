#include "tc/gf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tc::gf {

namespace {

// Conway polynomials, low to high.
const std::map<std::uint32_t, std::vector<int>>& conway_table() {
  static const std::map<std::uint32_t, std::vector<int>> table = {
      {4, {1, 1, 1}},
      {8, {1, 1, 0, 1}},
      {9, {2, 2, 1}},
      {16, {1, 1, 0, 0, 1}},
      {25, {2, 4, 1}},
      {27, {1, 2, 0, 1}},
      {32, {1, 0, 1, 0, 0, 1}},
      {49, {3, 6, 1}},
      {64, {1, 1, 0, 1, 1, 0, 1}},
      {81, {2, 0, 0, 2, 1}},
      {121, {2, 7, 1}},
      {125, {3, 3, 0, 1}},
      {128, {1, 1, 0, 0, 0, 0, 0, 1}},
      {169, {2, 12, 1}},
      {243, {1, 2, 0, 0, 0, 1}},
      {256, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
  };
  return table;
}

int mod_p(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<int>(r < 0 ? r + p : r);
}

// Remainder of a modulo b over GF(p); b must have a nonzero leading term.
std::vector<int> poly_rem(std::vector<int> a, std::span<const int> b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  long long lead_inv = 1;
  for (std::uint32_t k = 1; k < p; ++k)
    if ((static_cast<long long>(b[db]) * k) % p == 1) lead_inv = k;
  while (a.size() > db && !a.empty()) {
    const int top = a.back();
    if (top != 0) {
      const long long f = (top * lead_inv) % p;
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = mod_p(a[shift + i] - f * b[i], p);
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint32_t q) {
  if (q < 2) return std::nullopt;
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, 1u);
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, e);
}

bool is_irreducible(std::span<const int> poly, std::uint32_t p) {
  const std::size_t deg = poly.size() - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Roots suffice for degree <= 3; beyond that try every monic factor of
  // degree <= deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    std::vector<int> f(d + 1, 0);
    f[d] = 1;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::uint64_t v = n;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<int>(v % p);
        v /= p;
      }
      auto r = poly_rem(std::vector<int>(poly.begin(), poly.end()), f, p);
      if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) return false;
    }
  }
  return true;
}

std::vector<int> default_modulus(std::uint32_t q) {
  auto pe = prime_power(q);
  if (!pe) throw FieldError("q = " + std::to_string(q) + " is not a prime power");
  const auto [p, e] = *pe;
  if (e == 1) return {0, 1};
  if (auto it = conway_table().find(q); it != conway_table().end()) return it->second;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  std::vector<int> f(e + 1, 0);
  f[e] = 1;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t v = n;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<int>(v % p);
      v /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw FieldError("no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::make(std::uint32_t q, std::vector<int> modulus) {
  auto pe = prime_power(q);
  if (!pe) throw FieldError("q = " + std::to_string(q) + " is not a prime power");
  if (q >= 0xFFFF) throw FieldError("q = " + std::to_string(q) + " exceeds the supported range");
  const auto [p, e] = *pe;
  if (modulus.empty()) modulus = default_modulus(q);
  if (modulus.size() != e + 1) throw FieldError("modulus must have degree " + std::to_string(e));
  if (modulus.back() != 1) throw FieldError("modulus must be monic");
  for (int c : modulus)
    if (c < 0 || static_cast<std::uint32_t>(c) >= p)
      throw FieldError("modulus coefficients must lie in [0, p)");
  if (!is_irreducible(modulus, p)) throw FieldError("modulus is reducible over GF(p)");

  std::shared_ptr<Field> f(new Field());
  f->q_ = q;
  f->p_ = p;
  f->e_ = e;
  f->xi_ = q % 3 == 0 ? 0 : (q % 3 == 1 ? 1 : -1);
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

std::vector<int> Field::coefficients(FieldElement x) const {
  std::vector<int> c(e_, 0);
  std::uint32_t v = x.idx;
  for (std::uint32_t i = 0; i < e_; ++i) {
    c[i] = static_cast<int>(v % p_);
    v /= p_;
  }
  return c;
}

FieldElement Field::from_coefficients(std::span<const int> coeffs) const {
  std::uint32_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p_ + static_cast<std::uint32_t>(mod_p(coeffs[i], p_));
  return FieldElement(v);
}

FieldElement Field::add_digits(FieldElement x, FieldElement y) const {
  std::uint32_t a = x.idx, b = y.idx, out = 0, place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return FieldElement(out);
}

void Field::build_tables() {
  // Polynomial-basis multiplication, used only to seed the log tables.
  auto slow_mul = [this](FieldElement x, FieldElement y) {
    auto a = coefficients(x), b = coefficients(y);
    std::vector<int> prod(2 * e_ - 1, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j)
        prod[i + j] = static_cast<int>((prod[i + j] + static_cast<long long>(a[i]) * b[j]) % p_);
    auto r = poly_rem(std::move(prod), modulus_, p_);
    return from_coefficients(r);
  };

  const std::uint32_t order = q_ - 1;
  std::vector<std::uint32_t> prime_factors;
  for (std::uint32_t n = order, d = 2; n > 1; ++d) {
    if (d * d > n) d = n;
    if (n % d == 0) {
      prime_factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  auto slow_pow = [&](FieldElement x, std::uint32_t n) {
    FieldElement r = kOne;
    while (n) {
      if (n & 1) r = slow_mul(r, x);
      x = slow_mul(x, x);
      n >>= 1;
    }
    return r;
  };
  FieldElement gen = kOne;
  for (std::uint32_t g = 1; g < q_; ++g) {
    bool ok = true;
    for (auto r : prime_factors)
      if (slow_pow(FieldElement(g), order / r) == kOne) ok = false;
    if (ok) {
      gen = FieldElement(g);
      break;
    }
  }

  exp_.assign(2 * static_cast<std::size_t>(order) + 1, kOne);
  log_.assign(q_, 0);
  FieldElement x = kOne;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = x;
    log_[x.idx] = i;
    x = slow_mul(x, gen);
  }
  for (std::size_t i = order; i < exp_.size(); ++i) exp_[i] = exp_[i - order];

  neg_.resize(q_);
  for (std::uint32_t v = 0; v < q_; ++v) {
    auto c = coefficients(FieldElement(v));
    for (auto& ci : c) ci = mod_p(-ci, p_);
    neg_[v] = from_coefficients(c);
  }
  if (p_ != 2 && q_ <= 1024) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b)
        add_[static_cast<std::size_t>(a) * q_ + b] = add_digits(FieldElement(a), FieldElement(b));
  }
  inv_.assign(q_, kZero);
  for (std::uint32_t v = 1; v < q_; ++v) inv_[v] = exp_[(order - log_[v]) % order];

  sqrt_.assign(q_, kNoRoot);
  for (std::uint32_t v = 0; v < q_; ++v) {
    const auto s = square(FieldElement(v));
    if (sqrt_[s.idx] == kNoRoot) sqrt_[s.idx] = FieldElement(v);
  }
  trace_.assign(q_, 0);
  for (std::uint32_t v = 0; v < q_; ++v) {
    FieldElement t = kZero, y = FieldElement(v);
    for (std::uint32_t i = 0; i < e_; ++i) {
      t = add(t, y);
      y = pow(y, p_);
    }
    if (t.idx >= p_) throw FieldError("trace left the prime subfield; tables are inconsistent");
    trace_[v] = static_cast<std::uint8_t>(t.idx);
  }
  if (p_ == 2) {
    artin_schreier_.assign(q_, kNoRoot);
    for (std::uint32_t v = 0; v < q_; ++v) {
      const auto c = add(square(FieldElement(v)), FieldElement(v));
      if (artin_schreier_[c.idx] == kNoRoot) artin_schreier_[c.idx] = FieldElement(v);
    }
  }
}

FieldElement Field::pow(FieldElement x, std::uint64_t n) const {
  if (n == 0) return kOne;
  if (x.is_zero()) return kZero;
  const std::uint64_t order = q_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[x.idx]) * (n % order)) % order];
}

FieldElement Field::from_int(long long n) const { return FieldElement(static_cast<std::uint32_t>(mod_p(n, p_))); }

std::optional<FieldElement> Field::sqrt(FieldElement x) const {
  if (p_ == 2) return pow(x, q_ / 2);
  if (sqrt_[x.idx] == kNoRoot) return std::nullopt;
  return sqrt_[x.idx];
}

std::vector<FieldElement> Field::quadratic_roots(FieldElement a1, FieldElement a2) const {
  std::vector<FieldElement> roots;
  if (p_ == 2) {
    if (a1.is_zero()) {
      roots.push_back(pow(a2, q_ / 2));
      return roots;
    }
    // x = a1*y turns x^2 + a1 x + a2 into y^2 + y + a2/a1^2.
    const auto c = div(a2, square(a1));
    const auto y = artin_schreier_[c.idx];
    if (y == kNoRoot) return roots;
    roots = {mul(a1, y), mul(a1, add(y, kOne))};
  } else {
    const auto disc = sub(square(a1), mul(from_int(4), a2));
    const auto r = sqrt(disc);
    if (!r) return roots;
    const auto half = inv(from_int(2));
    roots.push_back(mul(add(a1, *r), half));
    if (!r->is_zero()) roots.push_back(mul(sub(a1, *r), half));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int Field::quadratic_root_count(FieldElement a1, FieldElement a2) const {
  if (p_ == 2) {
    if (a1.is_zero()) return 1;
    return abs_trace(div(a2, square(a1))) == 0 ? 2 : 0;
  }
  const auto disc = sub(square(a1), mul(from_int(4), a2));
  if (disc.is_zero()) return 1;
  return is_square(disc) ? 2 : 0;
}

FieldElement Field::min_nonsquare() const {
  for (std::uint32_t v = 1; v < q_; ++v)
    if (!is_square(FieldElement(v))) return FieldElement(v);
  throw FieldError("every element of GF(" + std::to_string(q_) + ") is a square");
}

FieldElement Field::min_trace_one() const {
  for (std::uint32_t v = 1; v < q_; ++v)
    if (abs_trace(FieldElement(v)) == 1) return FieldElement(v);
  throw FieldError("no element of absolute trace 1");
}

std::string Field::modulus_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

}  // namespace tc::gf
