#include "gcodes/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

namespace gcodes {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotSubspace: return "NotSubspace";
    case ErrorCode::EqualHyperplanes: return "EqualHyperplanes";
    case ErrorCode::TooLargeExact: return "TooLargeExact";
    case ErrorCode::BadT: return "BadT";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::VertexAbsent: return "VertexAbsent";
    case ErrorCode::BadHyperplane: return "BadHyperplane";
    case ErrorCode::RepInH: return "RepInH";
    case ErrorCode::DependentVectors: return "DependentVectors";
    case ErrorCode::NotEnoughPoints: return "NotEnoughPoints";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::PreconditionDepth: return "PreconditionDepth";
    case ErrorCode::NoStepFound: return "NoStepFound";
    case ErrorCode::NoShrinkFound: return "NoShrinkFound";
    case ErrorCode::BadU: return "BadU";
    case ErrorCode::PathFailed: return "PathFailed";
    case ErrorCode::NoLambda: return "NoLambda";
    case ErrorCode::NotInCt: return "NotInCt";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<Elem>;  // coefficients mod p, lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = lead * m[i] % p;
      a[shift + i] = static_cast<Elem>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(static_cast<std::uint32_t>(p), e);
  }
  return std::nullopt;
}

bool is_irreducible(std::uint32_t p, const std::vector<Elem>& monic) {
  const std::size_t e = monic.size() - 1;
  if (e <= 1) return e == 1;
  if (monic[0] == 0) return false;
  for (std::size_t d = 1; d <= e / 2; ++d) {
    // every monic divisor candidate of degree d
    const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly div(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<Elem>(c % p);
        c /= p;
      }
      div[d] = 1;
      if (poly_mod(monic, div, p).empty()) return false;
    }
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t e, std::vector<Elem> modulus)
    : p_(p), e_(e), q_(static_cast<std::uint32_t>(ipow(p, e))), modulus_(std::move(modulus)) {
  if (q_ <= 4096) {
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) neg_table_[a] = neg_slow(a);
  }
  if (q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    mul_table_.resize(std::size_t{q_} * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = add_slow(a, b);
        mul_table_[a * q_ + b] = mul_slow(a, b);
      }
    }
  }
  generator_ = find_generator();
  if (q_ <= 4096) {
    exp_table_.resize(2 * std::size_t{q_ - 1});
    log_table_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_table_[i] = x;
      exp_table_[i + q_ - 1] = x;
      log_table_[x] = i;
      x = mul_slow(x, generator_);
    }
    inv_table_.assign(q_, 0);
    for (Elem a = 1; a < q_; ++a) inv_table_[a] = exp_table_[(q_ - 1 - log_table_[a]) % (q_ - 1)];
  }
}

Elem FieldCtx::add_slow(Elem a, Elem b) const noexcept {
  Elem out = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem FieldCtx::neg_slow(Elem a) const noexcept {
  Elem out = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const Elem c = a % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

Elem FieldCtx::mul_slow(Elem a, Elem b) const noexcept {
  if (e_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  const Poly da = decode(a);
  const Poly db = decode(b);
  Poly prod(2 * e_ - 1, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < e_; ++j) {
      prod[i + j] = static_cast<Elem>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
    }
  }
  Poly r = poly_mod(std::move(prod), modulus_, p_);
  r.resize(e_, 0);
  return encode(r);
}

Elem FieldCtx::find_generator() const {
  if (q_ == 2) return 1;
  const auto factors = prime_factors(q_ - 1);
  for (Elem g = 2; g < q_; ++g) {
    bool ok = true;
    for (auto r : factors) {
      if (pow(g, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0 || a >= q_) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

Elem FieldCtx::pow(Elem a, std::uint64_t exponent) const noexcept {
  Elem result = 1;
  Elem base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1U;
  }
  return result;
}

std::vector<Elem> FieldCtx::all_nonzero() const {
  std::vector<Elem> out(q_ - 1);
  for (Elem a = 1; a < q_; ++a) out[a - 1] = a;
  return out;
}

std::vector<Elem> FieldCtx::decode(Elem a) const {
  std::vector<Elem> c(e_);
  for (std::uint32_t i = 0; i < e_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem FieldCtx::encode(const std::vector<Elem>& coefficients) const {
  Elem out = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < e_ && i < coefficients.size(); ++i) {
    out += (coefficients[i] % p_) * scale;
    scale *= p_;
  }
  return out;
}

class FieldRegistry {
 public:
  static const FieldCtx& get(std::uint32_t p, std::uint32_t e, std::vector<Elem> modulus) {
    static std::mutex mutex;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<Elem>>, std::unique_ptr<FieldCtx>> fields;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(p, e, modulus);
    auto it = fields.find(key);
    if (it == fields.end()) {
      it = fields.emplace(std::move(key), std::unique_ptr<FieldCtx>(new FieldCtx(p, e, std::move(modulus)))).first;
    }
    return *it->second;
  }
};

namespace {

std::vector<Elem> smallest_irreducible(std::uint32_t p, std::uint32_t e) {
  if (e == 1) return {0, 1};
  // Ascending encodings of the lower coefficients = lexicographic order
  // from the highest non-leading coefficient down.
  const std::uint64_t count = ipow(p, e);
  for (std::uint64_t code = 1; code < count; ++code) {
    Poly m(e + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i) {
      m[i] = static_cast<Elem>(c % p);
      c /= p;
    }
    m[e] = 1;
    if (is_irreducible(p, m)) return m;
  }
  throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
}

}  // namespace

const FieldCtx& field_new(std::uint32_t p, std::uint32_t e, const std::optional<std::vector<Elem>>& modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorCode::FieldTooLarge, "field order exceeds 2^20");
  }
  std::vector<Elem> m;
  if (modulus) {
    m = *modulus;
    if (m.size() != std::size_t{e} + 1 || m.back() != 1) {
      throw Error(ErrorCode::ReducibleModulus, "modulus must be monic of degree " + std::to_string(e));
    }
    for (auto c : m) {
      if (c >= p) throw Error(ErrorCode::ReducibleModulus, "modulus coefficient out of range");
    }
    if (!is_irreducible(p, m)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible");
  } else {
    m = smallest_irreducible(p, e);
  }
  return FieldRegistry::get(p, e, std::move(m));
}

const FieldCtx& field_of_order(std::uint64_t q) {
  if (q > kMaxFieldOrder) throw Error(ErrorCode::FieldTooLarge, "field order exceeds 2^20");
  const auto pe = prime_power(q);
  if (!pe) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return field_new(pe->first, pe->second);
}

}  // namespace gcodes
