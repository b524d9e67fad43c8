#pragma once

// Prime-field scalars.
//
// The modulus is a per-thread session setting in the style of NTL's
// ZZ_p::init: every Fp value is interpreted relative to the modulus that is
// current on the calling thread. ModulusScope installs a modulus for a block
// and restores the previous one on exit. Values produced under one modulus
// must not be mixed with another.

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace roabp {

/// An operation needs more distinct field elements than the field provides.
class FieldTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

class PrimeField {
 public:
  static constexpr std::uint64_t kDefaultModulus = (std::uint64_t{1} << 31) - 1;
  // Products are formed in 128 bits; keep sums from wrapping.
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  explicit PrimeField(std::uint64_t p = kDefaultModulus);

  std::uint64_t modulus() const noexcept { return p_; }

  /// Throws FieldTooSmall unless F_p has at least `count` elements.
  void require_elements(std::uint64_t count, std::string_view purpose) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Inverse of a nonzero residue.
  std::uint64_t inv(std::uint64_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Modulus used for threads that never installed one: ROABP_MODULUS from the
/// environment if set and prime, else 2^31 - 1.
std::uint64_t default_modulus();

namespace detail {
PrimeField& thread_field() noexcept;
}  // namespace detail

inline const PrimeField& field() noexcept { return detail::thread_field(); }

/// Replaces the calling thread's modulus without restoring it later.
void set_modulus(std::uint64_t p);

class ModulusScope {
 public:
  explicit ModulusScope(std::uint64_t p);
  explicit ModulusScope(const PrimeField& f);
  ~ModulusScope();
  ModulusScope(const ModulusScope&) = delete;
  ModulusScope& operator=(const ModulusScope&) = delete;

 private:
  PrimeField saved_;
};

class Fp {
 public:
  constexpr Fp() noexcept = default;

  template <std::signed_integral I>
  Fp(I v) {  // NOLINT(google-explicit-constructor)
    const auto p = field().modulus();
    const auto m = static_cast<std::int64_t>(static_cast<__int128>(v) % static_cast<__int128>(p));
    v_ = static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  }

  template <std::unsigned_integral I>
  Fp(I v) : v_(static_cast<std::uint64_t>(v) % field().modulus()) {}  // NOLINT

  /// Wraps a residue already known to lie in [0, p).
  static Fp from_residue(std::uint64_t r) noexcept {
    Fp x;
    x.v_ = r;
    return x;
  }

  std::uint64_t value() const noexcept { return v_; }
  /// Representative in (-p/2, p/2].
  std::int64_t symmetric() const noexcept;
  bool is_zero() const noexcept { return v_ == 0; }

  Fp inverse() const;
  Fp pow(std::uint64_t e) const noexcept { return from_residue(field().pow(v_, e)); }

  Fp& operator+=(Fp o) noexcept { v_ = field().add(v_, o.v_); return *this; }
  Fp& operator-=(Fp o) noexcept { v_ = field().sub(v_, o.v_); return *this; }
  Fp& operator*=(Fp o) noexcept { v_ = field().mul(v_, o.v_); return *this; }
  Fp& operator/=(Fp o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, Fp b) noexcept { return a += b; }
  friend Fp operator-(Fp a, Fp b) noexcept { return a -= b; }
  friend Fp operator*(Fp a, Fp b) noexcept { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  friend Fp operator-(Fp a) noexcept { return from_residue(field().neg(a.v_)); }

  friend bool operator==(Fp, Fp) noexcept = default;

 private:
  std::uint64_t v_ = 0;
};

std::ostream& operator<<(std::ostream& os, Fp x);

/// Binomial coefficient reduced into the current field.
Fp binomial(unsigned n, unsigned k);

}  // namespace roabp
