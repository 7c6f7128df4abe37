#ifndef MODSUPER_FIELD_HPP
#define MODSUPER_FIELD_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace modsuper {

/// Element of F_{p^k}, stored as an index in [0, p^k).
/// The index encodes the coefficient vector base p: v = c_0 + c_1 p + ... .
/// All arithmetic goes through the owning FieldCtx.
struct Scalar {
  std::uint32_t v = 0;
  friend bool operator==(Scalar a, Scalar b) { return a.v == b.v; }
  friend bool operator!=(Scalar a, Scalar b) { return a.v != b.v; }
  friend bool operator<(Scalar a, Scalar b) { return a.v < b.v; }
};

/// Arithmetic context for F_{p^k} with an explicit monic irreducible modulus.
///
/// p must be an odd prime (p >= 3). Multiplication and inversion use
/// discrete log tables over a fixed generator; addition uses a full table
/// for small q and digit arithmetic otherwise. Every operation is exact.
class FieldCtx {
 public:
  /// Builds F_{p^k} with a modulus found by deterministic seeded search.
  FieldCtx(long p, int k);
  /// Builds F_{p^k} over the given monic modulus (coefficient list, degree k,
  /// lowest degree first, length k+1). Irreducibility is verified.
  FieldCtx(long p, int k, const std::vector<long>& modulus);

  long p() const { return p_; }
  int k() const { return k_; }
  std::uint64_t q() const { return q_; }
  const std::vector<long>& modulus() const { return modulus_; }

  Scalar zero() const { return {0}; }
  Scalar one() const { return {1}; }
  bool is_zero(Scalar a) const { return a.v == 0; }

  /// Image of an integer under Z -> F_p -> F_{p^k}.
  Scalar from_int(long n) const;
  /// Element with the given coefficient vector over Z (length <= k).
  Scalar from_coeffs(const std::vector<long>& c) const;
  /// Canonical coefficient vector, entries in [0, p), length k.
  std::vector<long> coeffs(Scalar a) const;

  Scalar add(Scalar a, Scalar b) const {
    return small_add_ ? Scalar{add_tab_[a.v * q_ + b.v]} : add_slow(a, b);
  }
  Scalar neg(Scalar a) const { return {neg_tab_[a.v]}; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar mul(Scalar a, Scalar b) const {
    if (a.v == 0 || b.v == 0) return {0};
    std::uint64_t s = static_cast<std::uint64_t>(log_tab_[a.v]) + log_tab_[b.v];
    if (s >= q_ - 1) s -= q_ - 1;
    return {exp_tab_[s]};
  }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t e) const;

  /// Frobenius a -> a^p (a field automorphism).
  Scalar frobenius(Scalar a) const { return {frob_tab_[a.v]}; }
  /// The unique b with b^p = a.
  Scalar frobenius_root(Scalar a) const { return {frob_root_tab_[a.v]}; }
  /// Square root when one exists (q odd, so exactly the even discrete logs).
  bool sqrt(Scalar a, Scalar& out) const;

  /// Uniform random element drawn from the given engine.
  Scalar random(std::mt19937_64& rng) const { return {static_cast<std::uint32_t>(rng() % q_)}; }
  Scalar random_nonzero(std::mt19937_64& rng) const {
    return {static_cast<std::uint32_t>(1 + rng() % (q_ - 1))};
  }

  /// Iterates all field elements in index order: {0},{1},...,{q-1}.
  std::uint64_t size() const { return q_; }
  Scalar element(std::uint64_t i) const { return {static_cast<std::uint32_t>(i)}; }

  std::string to_string(Scalar a) const;

  /// Header object {p, k, modulus}; round-trips bit-exactly.
  nlohmann::json header_json() const;
  static std::shared_ptr<const FieldCtx> from_header(const nlohmann::json& j);

  bool same_field(const FieldCtx& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

 private:
  void build_tables();
  Scalar add_slow(Scalar a, Scalar b) const;

  long p_ = 0;
  int k_ = 0;
  std::uint64_t q_ = 0;
  std::vector<long> modulus_;
  bool small_add_ = false;

  std::vector<std::uint32_t> add_tab_;
  std::vector<std::uint32_t> neg_tab_;
  std::vector<std::uint32_t> exp_tab_;  // exp_tab_[i] = g^i, i in [0, q-1)
  std::vector<std::uint32_t> log_tab_;  // log_tab_[a] defined for a != 0
  std::vector<std::uint32_t> inv_tab_;
  std::vector<std::uint32_t> frob_tab_;
  std::vector<std::uint32_t> frob_root_tab_;
  std::vector<std::uint64_t> pow_p_;  // p^i for digit (de)composition
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

inline FieldPtr make_field(long p, int k = 1) { return std::make_shared<FieldCtx>(p, k); }
inline FieldPtr make_field(long p, int k, const std::vector<long>& modulus) {
  return std::make_shared<FieldCtx>(p, k, modulus);
}

/// Monic irreducibility test for a polynomial over F_p given by integer
/// coefficients (lowest first). Exhaustive divisor search, intended for
/// small degrees (k <= 6).
bool is_irreducible_mod_p(const std::vector<long>& poly, long p);

}  // namespace modsuper

#endif
