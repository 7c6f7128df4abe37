#include "modsuper/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace modsuper {

namespace {
void trim(Poly& a) {
  while (!a.c.empty() && a.F->is_zero(a.c.back())) a.c.pop_back();
}
}  // namespace

Poly poly_zero(FieldPtr F) { return Poly{std::move(F), {}}; }

Poly poly_const(FieldPtr F, Scalar s) {
  Poly r{std::move(F), {s}};
  trim(r);
  return r;
}

Poly poly_x(FieldPtr F) { return Poly{F, {F->zero(), F->one()}}; }

Poly poly_from(FieldPtr F, std::vector<Scalar> coeffs) {
  Poly r{std::move(F), std::move(coeffs)};
  trim(r);
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  const FieldCtx& F = *a.F;
  Poly r{a.F, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = F.add(r.c[i], b.c[i]);
  trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  const FieldCtx& F = *a.F;
  Poly r{a.F, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = F.sub(r.c[i], b.c[i]);
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  const FieldCtx& F = *a.F;
  if (a.is_zero() || b.is_zero()) return poly_zero(a.F);
  Poly r{a.F, std::vector<Scalar>(a.c.size() + b.c.size() - 1, F.zero())};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return r;
}

Poly poly_scale(Scalar s, const Poly& a) {
  const FieldCtx& F = *a.F;
  Poly r = a;
  for (auto& x : r.c) x = F.mul(s, x);
  trim(r);
  return r;
}

Poly poly_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(a.F->inv(a.lead()), a);
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  const FieldCtx& F = *a.F;
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
  Poly r = a;
  Poly q{a.F, {}};
  if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, F.zero());
  Scalar il = F.inv(b.lead());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    Scalar f = F.mul(r.lead(), il);
    q.c[shift] = f;
    for (int i = 0; i <= b.deg(); ++i)
      r.c[i + shift] = F.sub(r.c[i + shift], F.mul(f, b.c[i]));
    trim(r);
  }
  trim(q);
  return {q, r};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

Poly poly_derivative(const Poly& a) {
  const FieldCtx& F = *a.F;
  Poly r{a.F, {}};
  if (a.deg() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = F.mul(F.from_int(static_cast<long>(i)), a.c[i]);
  trim(r);
  return r;
}

Scalar poly_eval(const Poly& a, Scalar x) {
  const FieldCtx& F = *a.F;
  Scalar r = F.zero();
  for (int i = a.deg(); i >= 0; --i) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

Poly poly_pow_mod(const Poly& base, std::uint64_t e, const Poly& mod) {
  Poly r = poly_const(base.F, base.F->one());
  Poly b = poly_mod(base, mod);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, b), mod);
    b = poly_mod(poly_mul(b, b), mod);
    e >>= 1;
  }
  return r;
}

PolyEgcd poly_egcd(const Poly& a, const Poly& b) {
  const FieldCtx& F = *a.F;
  Poly r0 = a, r1 = b;
  Poly s0 = poly_const(a.F, F.one()), s1 = poly_zero(a.F);
  Poly t0 = poly_zero(a.F), t1 = poly_const(a.F, F.one());
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly ns = poly_sub(s0, poly_mul(q, s1));
    Poly nt = poly_sub(t0, poly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(ns);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  if (!r0.is_zero()) {
    Scalar il = F.inv(r0.lead());
    r0 = poly_scale(il, r0);
    s0 = poly_scale(il, s0);
    t0 = poly_scale(il, t0);
  }
  return {r0, s0, t0};
}

namespace {

// p-th root of f, assuming f(x) = h(x)^p, i.e. only x^{pi} coefficients.
Poly poly_pth_root(const Poly& f) {
  const FieldCtx& F = *f.F;
  long p = F.p();
  Poly h{f.F, {}};
  h.c.resize(f.deg() / p + 1, F.zero());
  for (int i = 0; i <= f.deg(); ++i) {
    if (!F.is_zero(f.c[i])) {
      if (i % p != 0) throw std::logic_error("poly_pth_root: not a p-th power");
      h.c[i / p] = F.frobenius_root(f.c[i]);
    }
  }
  return h;
}

// squarefree decomposition in characteristic p
void squarefree_decompose(const Poly& f, int outer_mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.deg() < 1) return;
  Poly fp = poly_derivative(f);
  if (fp.is_zero()) {
    squarefree_decompose(poly_pth_root(f), outer_mult * static_cast<int>(f.F->p()), out);
    return;
  }
  Poly g = poly_gcd(f, fp);
  Poly w = poly_divmod(f, g).first;
  int i = 1;
  while (w.deg() > 0) {
    Poly y = poly_gcd(w, g);
    Poly z = poly_divmod(w, y).first;
    if (z.deg() > 0) out.emplace_back(poly_monic(z), outer_mult * i);
    w = std::move(y);
    g = poly_divmod(g, w).first;
    ++i;
  }
  if (g.deg() > 0)
    squarefree_decompose(poly_pth_root(g), outer_mult * static_cast<int>(f.F->p()), out);
}

// Berlekamp on a squarefree monic polynomial
std::vector<Poly> berlekamp(const Poly& f) {
  const FieldCtx& F = *f.F;
  FieldPtr Fp = f.F;
  int n = f.deg();
  if (n <= 1) return {f};
  if (F.size() > 65536) throw std::invalid_argument("berlekamp: field too large");
  // matrix of the map h -> h^q - h on K[x]/(f)
  Matrix Q(Fp, n, n);
  Poly xq = poly_pow_mod(poly_x(Fp), F.size(), f);
  Poly cur = poly_const(Fp, F.one());
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r <= cur.deg(); ++r) Q.set(r, i, cur.c[r]);
    Q.set(i, i, F.sub(Q.at(i, i), F.one()));
    if (i + 1 < n) cur = poly_mod(poly_mul(cur, xq), f);
  }
  std::vector<Vec> null = kernel_basis(Q);
  size_t target = null.size();
  std::vector<Poly> factors = {f};
  if (target <= 1) return factors;
  for (const Vec& h : null) {
    Poly hp = poly_from(Fp, h);
    if (hp.deg() < 1) continue;
    std::vector<Poly> next;
    for (const Poly& fac : factors) {
      if (fac.deg() == 1) {
        next.push_back(fac);
        continue;
      }
      Poly rem = fac;
      for (std::uint64_t ci = 0; ci < F.size() && rem.deg() > 0; ++ci) {
        Poly shifted = poly_sub(hp, poly_const(Fp, F.element(ci)));
        Poly g = poly_gcd(rem, shifted);
        if (g.deg() > 0 && g.deg() < rem.deg()) {
          next.push_back(g);
          rem = poly_divmod(rem, g).first;
        } else if (g.deg() == rem.deg()) {
          // whole remainder splits off at this c
          break;
        }
      }
      if (rem.deg() > 0) next.push_back(poly_monic(rem));
    }
    factors = std::move(next);
    if (factors.size() == target) break;
  }
  return factors;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i)
    if (a.c[i].v != b.c[i].v) return a.c[i].v < b.c[i].v;
  return false;
}

}  // namespace

std::vector<PolyFactor> poly_factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("poly_factor: zero polynomial");
  std::vector<std::pair<Poly, int>> parts;
  squarefree_decompose(poly_monic(f), 1, parts);
  std::vector<PolyFactor> out;
  for (auto& [sf, mult] : parts) {
    for (const Poly& irr : berlekamp(sf)) out.push_back({poly_monic(irr), mult});
  }
  std::sort(out.begin(), out.end(),
            [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.factor, b.factor); });
  return out;
}

Poly poly_radical(const Poly& f) {
  Poly r = poly_const(f.F, f.F->one());
  for (const auto& pf : poly_factor(f)) r = poly_mul(r, pf.factor);
  return r;
}

bool poly_is_irreducible(const Poly& f) {
  if (f.deg() < 1) return false;
  auto fs = poly_factor(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

namespace {

// reduces v against rows, tracking combination coords alongside
struct CoordSpan {
  const FieldCtx& F;
  int width;
  std::vector<Vec> rows;
  std::vector<Vec> coords;
  std::vector<int> pivots;

  CoordSpan(const FieldCtx& f, int w) : F(f), width(w) {}

  // returns empty vector if inserted; else the dependency coords of v
  Vec insert(Vec v, Vec coord) {
    for (size_t r = 0; r < rows.size(); ++r) {
      Scalar c = v[pivots[r]];
      if (!F.is_zero(c)) {
        vec_axpy(F, v, F.neg(c), rows[r]);
        Scalar nc = F.neg(c);
        for (size_t i = 0; i < coords[r].size(); ++i)
          coord[i] = F.add(coord[i], F.mul(nc, coords[r][i]));
      }
    }
    int piv = -1;
    for (int j = 0; j < width; ++j)
      if (!F.is_zero(v[j])) {
        piv = j;
        break;
      }
    if (piv < 0) return coord;
    Scalar iv = F.inv(v[piv]);
    for (auto& s : v) s = F.mul(iv, s);
    for (auto& s : coord) s = F.mul(iv, s);
    rows.push_back(std::move(v));
    coords.push_back(std::move(coord));
    pivots.push_back(piv);
    return {};
  }
};

}  // namespace

Poly minpoly_on_vector(const Matrix& A, const Vec& v0) {
  // straightforward: keep the raw Krylov chain and a tracked reduced span
  const FieldCtx& F = *A.field();
  FieldPtr Fp = A.field();
  int n = A.rows();
  CoordSpan span(F, n);
  Vec cur = v0;
  for (int d = 0; d <= n; ++d) {
    Vec coord(d + 1, F.zero());
    coord[d] = F.one();
    Vec dep = span.insert(cur, coord);
    if (!dep.empty()) {
      Scalar lead = dep[d];
      Scalar il = F.inv(lead);
      Poly m{Fp, std::vector<Scalar>(d + 1)};
      for (int i = 0; i <= d; ++i) m.c[i] = F.mul(il, dep[i]);
      return m;
    }
    cur = A.apply(cur);
  }
  throw std::logic_error("minpoly_on_vector: no relation up to dimension");
}

Poly minpoly(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("minpoly: not square");
  const FieldCtx& F = *A.field();
  int n = A.rows();
  Poly m = poly_const(A.field(), F.one());
  RowSpan processed(A.field(), n);
  for (int i = 0; i < n; ++i) {
    Vec e = vec_unit(F, n, i);
    if (processed.contains(e)) continue;
    Poly local = minpoly_on_vector(A, e);
    PolyEgcd g = poly_egcd(m, local);
    m = poly_divmod(poly_mul(m, local), g.g).first;  // lcm
    if (m.deg() == n) break;
    // absorb the Krylov space of e so later vectors can be skipped
    Vec cur = e;
    for (int d = 0; d <= local.deg(); ++d) {
      processed.insert(cur);
      cur = A.apply(cur);
    }
  }
  return poly_monic(m);
}

Matrix poly_eval_matrix(const Poly& f, const Matrix& A) {
  const FieldCtx& F = *A.field();
  int n = A.rows();
  Matrix r(A.field(), n, n);
  for (int i = f.deg(); i >= 0; --i) {
    r = r * A;
    for (int d = 0; d < n; ++d) r.set(d, d, F.add(r.at(d, d), f.c[i]));
  }
  return r;
}

std::vector<Poly> crt_idempotent_polys(const std::vector<PolyFactor>& factors) {
  if (factors.empty()) throw std::invalid_argument("crt_idempotent_polys: empty factorization");
  FieldPtr Fp = factors[0].factor.F;
  Poly f = poly_const(Fp, Fp->one());
  std::vector<Poly> powers;
  for (const auto& pf : factors) {
    Poly fi = poly_const(Fp, Fp->one());
    for (int i = 0; i < pf.multiplicity; ++i) fi = poly_mul(fi, pf.factor);
    powers.push_back(fi);
    f = poly_mul(f, fi);
  }
  std::vector<Poly> out;
  for (size_t i = 0; i < factors.size(); ++i) {
    Poly u = poly_divmod(f, powers[i]).first;
    PolyEgcd e = poly_egcd(u, powers[i]);
    if (e.g.deg() != 0) throw std::logic_error("crt_idempotent_polys: factors not coprime");
    // s*u = 1 mod powers[i]
    out.push_back(poly_mod(poly_mul(e.s, u), f));
  }
  return out;
}

}  // namespace modsuper
