#include "modsuper/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace modsuper {

namespace {

long mod_pos(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// dense polynomial helpers over Z/p: coefficient vectors, lowest degree first
void trim(std::vector<long>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of a by monic b
std::vector<long> poly_rem(std::vector<long> a, const std::vector<long>& b, long p) {
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    long c = a.back();
    int shift = static_cast<int>(a.size()) - 1 - db;
    if (c != 0) {
      for (int i = 0; i <= db; ++i) a[i + shift] = mod_pos(a[i + shift] - c * b[i], p);
    }
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

std::vector<long> poly_mulmod(const std::vector<long>& a, const std::vector<long>& b,
                              const std::vector<long>& m, long p) {
  if (a.empty() || b.empty()) return {};
  std::vector<long> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = mod_pos(c[i + j] + a[i] * b[j], p);
  trim(c);
  return poly_rem(std::move(c), m, p);
}

std::vector<long> factor_integer(std::uint64_t n) {
  std::vector<long> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(static_cast<long>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(static_cast<long>(n));
  return fs;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<long>& poly, long p) {
  std::vector<long> f = poly;
  trim(f);
  int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  if (f.back() % p != 1) return false;  // monic required
  if (deg == 1) return true;
  // no divisor of degree d for 1 <= d <= deg/2
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<long> g(d + 1, 0);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<long>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldCtx::FieldCtx(long p, int k) : p_(p), k_(k) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("FieldCtx: p must be an odd prime >= 3");
  if (k < 1 || k > 6) throw std::invalid_argument("FieldCtx: extension degree must be in [1,6]");
  if (k == 1) {
    modulus_ = {0, 1};
  } else {
    // deterministic search: fixed-seed random candidates, first irreducible wins
    std::mt19937_64 rng(0x6d6f647375ULL + static_cast<std::uint64_t>(p) * 1000 + k);
    for (int attempt = 0; attempt < 20000; ++attempt) {
      std::vector<long> cand(k + 1, 0);
      for (int i = 0; i < k; ++i) cand[i] = static_cast<long>(rng() % p);
      cand[k] = 1;
      if (cand[0] == 0) cand[0] = 1;
      if (is_irreducible_mod_p(cand, p)) {
        modulus_ = cand;
        break;
      }
    }
    if (modulus_.empty()) throw std::runtime_error("FieldCtx: no irreducible modulus found");
  }
  build_tables();
}

FieldCtx::FieldCtx(long p, int k, const std::vector<long>& modulus) : p_(p), k_(k) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("FieldCtx: p must be an odd prime >= 3");
  if (k < 1 || k > 6) throw std::invalid_argument("FieldCtx: extension degree must be in [1,6]");
  if (static_cast<int>(modulus.size()) != k + 1)
    throw std::invalid_argument("FieldCtx: modulus must have length k+1");
  modulus_.resize(k + 1);
  for (int i = 0; i <= k; ++i) modulus_[i] = mod_pos(modulus[i], p);
  if (modulus_[k] != 1) throw std::invalid_argument("FieldCtx: modulus must be monic");
  if (k > 1 && !is_irreducible_mod_p(modulus_, p))
    throw std::invalid_argument("FieldCtx: modulus is reducible over F_p");
  build_tables();
}

void FieldCtx::build_tables() {
  q_ = 1;
  for (int i = 0; i < k_; ++i) {
    q_ *= static_cast<std::uint64_t>(p_);
    if (q_ > (1ULL << 20)) throw std::invalid_argument("FieldCtx: field too large (q > 2^20)");
  }
  pow_p_.resize(k_ + 1);
  pow_p_[0] = 1;
  for (int i = 1; i <= k_; ++i) pow_p_[i] = pow_p_[i - 1] * static_cast<std::uint64_t>(p_);

  auto decode = [&](std::uint64_t v) {
    std::vector<long> c(k_);
    for (int i = 0; i < k_; ++i) {
      c[i] = static_cast<long>(v % p_);
      v /= p_;
    }
    return c;
  };
  auto encode = [&](const std::vector<long>& c) {
    std::uint64_t v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p_ + mod_pos(c[i], p_);
    return v;
  };

  neg_tab_.resize(q_);
  for (std::uint64_t v = 0; v < q_; ++v) {
    auto c = decode(v);
    for (auto& x : c) x = mod_pos(-x, p_);
    neg_tab_[v] = static_cast<std::uint32_t>(encode(c));
  }

  small_add_ = q_ <= 1024;
  if (small_add_) {
    add_tab_.resize(q_ * q_);
    for (std::uint64_t a = 0; a < q_; ++a) {
      auto ca = decode(a);
      for (std::uint64_t b = 0; b < q_; ++b) {
        auto cb = decode(b);
        std::vector<long> cc(k_);
        for (int i = 0; i < k_; ++i) cc[i] = mod_pos(ca[i] + cb[i], p_);
        add_tab_[a * q_ + b] = static_cast<std::uint32_t>(encode(cc));
      }
    }
  }

  // multiplicative generator, then exp/log tables
  auto raw_mul = [&](std::uint64_t a, std::uint64_t b) {
    auto prod = poly_mulmod(decode(a), decode(b), modulus_, p_);
    prod.resize(k_, 0);
    return encode(prod);
  };
  auto raw_pow = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1, base = a;
    while (e) {
      if (e & 1) r = raw_mul(r, base);
      base = raw_mul(base, base);
      e >>= 1;
    }
    return r;
  };
  std::vector<long> prime_factors = factor_integer(q_ - 1);
  std::uint64_t gen = 0;
  for (std::uint64_t g = 2; g < q_; ++g) {
    bool ok = true;
    for (long f : prime_factors) {
      if (raw_pow(g, (q_ - 1) / static_cast<std::uint64_t>(f)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = g;
      break;
    }
  }
  if (gen == 0 && q_ == 3) gen = 2;
  if (gen == 0) throw std::runtime_error("FieldCtx: no multiplicative generator found");

  exp_tab_.resize(q_ - 1);
  log_tab_.assign(q_, 0);
  std::uint64_t cur = 1;
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    exp_tab_[i] = static_cast<std::uint32_t>(cur);
    log_tab_[cur] = static_cast<std::uint32_t>(i);
    cur = raw_mul(cur, gen);
  }

  inv_tab_.assign(q_, 0);
  for (std::uint64_t v = 1; v < q_; ++v) {
    std::uint64_t l = log_tab_[v];
    inv_tab_[v] = exp_tab_[(q_ - 1 - l) % (q_ - 1)];
  }

  frob_tab_.resize(q_);
  frob_root_tab_.resize(q_);
  for (std::uint64_t v = 0; v < q_; ++v) {
    std::uint64_t im = raw_pow(v, static_cast<std::uint64_t>(p_));
    frob_tab_[v] = static_cast<std::uint32_t>(im);
    frob_root_tab_[im] = static_cast<std::uint32_t>(v);
  }
}

Scalar FieldCtx::add_slow(Scalar a, Scalar b) const {
  std::uint64_t va = a.v, vb = b.v, r = 0;
  for (int i = 0; i < k_; ++i) {
    long s = static_cast<long>(va % p_) + static_cast<long>(vb % p_);
    if (s >= p_) s -= p_;
    r += static_cast<std::uint64_t>(s) * pow_p_[i];
    va /= p_;
    vb /= p_;
  }
  return {static_cast<std::uint32_t>(r)};
}

Scalar FieldCtx::from_int(long n) const { return {static_cast<std::uint32_t>(mod_pos(n, p_))}; }

Scalar FieldCtx::from_coeffs(const std::vector<long>& c) const {
  if (static_cast<int>(c.size()) > k_)
    throw std::invalid_argument("FieldCtx::from_coeffs: too many coefficients");
  std::uint64_t v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p_ + mod_pos(c[i], p_);
  return {static_cast<std::uint32_t>(v)};
}

std::vector<long> FieldCtx::coeffs(Scalar a) const {
  std::vector<long> c(k_);
  std::uint64_t v = a.v;
  for (int i = 0; i < k_; ++i) {
    c[i] = static_cast<long>(v % p_);
    v /= p_;
  }
  return c;
}

Scalar FieldCtx::inv(Scalar a) const {
  if (a.v == 0) throw std::domain_error("FieldCtx::inv: division by zero");
  return {inv_tab_[a.v]};
}

bool FieldCtx::sqrt(Scalar a, Scalar& out) const {
  if (a.v == 0) {
    out = zero();
    return true;
  }
  std::uint64_t l = log_tab_[a.v];
  if (l % 2 != 0) return false;
  out = {exp_tab_[l / 2]};
  return true;
}

Scalar FieldCtx::pow(Scalar a, std::uint64_t e) const {
  if (a.v == 0) return e == 0 ? one() : zero();
  std::uint64_t l = log_tab_[a.v];
  std::uint64_t r = (static_cast<std::uint64_t>(l % (q_ - 1)) * (e % (q_ - 1))) % (q_ - 1);
  return {exp_tab_[r]};
}

std::string FieldCtx::to_string(Scalar a) const {
  if (k_ == 1) return std::to_string(a.v);
  auto c = coeffs(a);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < k_; ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

nlohmann::json FieldCtx::header_json() const {
  return nlohmann::json{{"p", p_}, {"k", k_}, {"modulus", modulus_}};
}

std::shared_ptr<const FieldCtx> FieldCtx::from_header(const nlohmann::json& j) {
  return std::make_shared<FieldCtx>(j.at("p").get<long>(), j.at("k").get<int>(),
                                    j.at("modulus").get<std::vector<long>>());
}

}  // namespace modsuper
