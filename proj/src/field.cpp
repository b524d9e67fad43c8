#include "roabp/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <vector>

namespace roabp {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t env_modulus() {
  const char* raw = std::getenv("ROABP_MODULUS");
  if (raw == nullptr || *raw == '\0') return PrimeField::kDefaultModulus;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == nullptr || *end != '\0' || v < 2 || v >= PrimeField::kMaxModulus || !is_prime(v)) {
    return PrimeField::kDefaultModulus;
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= kMaxModulus || !is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^62");
  }
}

void PrimeField::require_elements(std::uint64_t count, std::string_view purpose) const {
  if (count > p_) {
    std::ostringstream msg;
    msg << "field too small: " << purpose << " needs " << count << " distinct elements but p = " << p_;
    throw FieldTooSmall(msg.str());
  }
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept { return powmod(a, e, p_); }

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return powmod(a, p_ - 2, p_);
}

std::uint64_t default_modulus() {
  static const std::uint64_t m = env_modulus();
  return m;
}

namespace detail {
PrimeField& thread_field() noexcept {
  thread_local PrimeField f{default_modulus()};
  return f;
}
}  // namespace detail

void set_modulus(std::uint64_t p) { detail::thread_field() = PrimeField(p); }

ModulusScope::ModulusScope(std::uint64_t p) : ModulusScope(PrimeField(p)) {}

ModulusScope::ModulusScope(const PrimeField& f) : saved_(field()) { detail::thread_field() = f; }

ModulusScope::~ModulusScope() { detail::thread_field() = saved_; }

std::int64_t Fp::symmetric() const noexcept {
  const auto p = field().modulus();
  return v_ > p / 2 ? -static_cast<std::int64_t>(p - v_) : static_cast<std::int64_t>(v_);
}

Fp Fp::inverse() const { return from_residue(field().inv(v_)); }

std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.value(); }

Fp binomial(unsigned n, unsigned k) {
  if (k > n) return Fp{};
  // Pascal rows are exact in the field regardless of characteristic.
  std::vector<Fp> row(k + 1);
  row[0] = Fp(1);
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = std::min(i, k); j > 0; --j) row[j] += row[j - 1];
  }
  return row[k];
}

}  // namespace roabp
