#include "modsuper/pbw.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace modsuper {

void UElement::add_term(const FieldCtx& F, const Mon& m, Scalar c) {
  if (F.is_zero(c)) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second = F.add(it->second, c);
    if (F.is_zero(it->second)) terms.erase(it);
  }
}

void UElement::add_scaled(const FieldCtx& F, const UElement& o, Scalar c) {
  if (F.is_zero(c)) return;
  for (const auto& [m, v] : o.terms) add_term(F, m, F.mul(c, v));
}

size_t UAlgebraCtx::MonKeyHash::operator()(const MonKey& k) const {
  std::uint64_t h = 1469598103934665603ULL;
  h ^= static_cast<std::uint64_t>(k.gen);
  h *= 1099511628211ULL;
  for (std::uint8_t b : k.m) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<size_t>(h);
}

std::vector<int> UAlgebraCtx::standard_order(const LieSuperAlgebra& g,
                                             const std::vector<int>* degrees) {
  std::vector<int> order(g.dim());
  for (int i = 0; i < g.dim(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.parity[a] != g.parity[b]) return g.parity[a] < g.parity[b];
    if (degrees && (*degrees)[a] != (*degrees)[b]) return (*degrees)[a] < (*degrees)[b];
    return a < b;
  });
  return order;
}

UAlgebraCtx::UAlgebraCtx(AlgebraPtr g, PChar chi)
    : UAlgebraCtx(std::move(g), std::move(chi), standard_order(*g)) {}

UAlgebraCtx::UAlgebraCtx(AlgebraPtr g, PChar chi, std::vector<int> order)
    : g_(std::move(g)), chi_(std::move(chi)), order_(std::move(order)) {
  const FieldCtx& F = *g_->field;
  if (static_cast<int>(order_.size()) != g_->dim())
    throw std::invalid_argument("UAlgebraCtx: order must be a permutation of the basis");
  pos_of_.assign(g_->dim(), -1);
  for (int p = 0; p < static_cast<int>(order_.size()); ++p) {
    if (pos_of_[order_[p]] != -1) throw std::invalid_argument("UAlgebraCtx: order not injective");
    pos_of_[order_[p]] = p;
  }
  chi_pow_p_.resize(g_->dim());
  for (int i = 0; i < g_->dim(); ++i) {
    Scalar v = (i < g_->dim0) ? chi_.even_dual[i] : F.zero();
    chi_pow_p_[i] = F.pow(v, static_cast<std::uint64_t>(F.p()));
  }
  if (F.p() > 250) throw std::invalid_argument("UAlgebraCtx: p too large for monomial encoding");
}

const UElement& UAlgebraCtx::mul_gen_left(int gen, const Mon& m) const {
  MonKey key{gen, m};
  auto found = lmemo_.find(key);
  if (found != lmemo_.end()) return found->second;

  const FieldCtx& F = *g_->field;
  long p = F.p();
  UElement out;
  int pg = pos_of_[gen];

  int q = -1;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) {
      q = static_cast<int>(i);
      break;
    }

  if (q < 0) {
    Mon r = m;
    r[pg] = 1;
    out.add_term(F, r, F.one());
  } else if (pg < q) {
    Mon r = m;
    r[pg] = 1;
    out.add_term(F, r, F.one());
  } else if (pg == q) {
    int b = order_[q];
    if (g_->parity[b] == 0) {
      if (m[q] + 1 < p) {
        Mon r = m;
        r[q] = static_cast<std::uint8_t>(m[q] + 1);
        out.add_term(F, r, F.one());
      } else {
        // x * x^{p-1} tail = (x^{[p]} + chi(x)^p) tail
        Mon tail = m;
        tail[q] = 0;
        out.add_term(F, tail, chi_pow_p_[b]);
        const Vec& im = g_->pmap[b];
        for (int l = 0; l < g_->dim(); ++l)
          if (!F.is_zero(im[l])) out.add_scaled(F, mul_gen_left(l, tail), im[l]);
      }
    } else {
      // y * y tail = ([y,y]/2) tail
      Mon tail = m;
      tail[q] = 0;
      Scalar half = F.inv(F.from_int(2));
      const Vec& sq = g_->sc[b][b];
      for (int l = 0; l < g_->dim(); ++l)
        if (!F.is_zero(sq[l])) out.add_scaled(F, mul_gen_left(l, tail), F.mul(half, sq[l]));
    }
  } else {
    // move gen past the leading generator b of m
    int b = order_[q];
    Mon rest = m;
    rest[q] = static_cast<std::uint8_t>(rest[q] - 1);
    const UElement& t1 = mul_gen_left(gen, rest);
    Scalar sign =
        (g_->parity[gen] == 1 && g_->parity[b] == 1) ? F.from_int(-1) : F.one();
    for (const auto& [m1, c1] : t1.terms)
      out.add_scaled(F, mul_gen_left(b, m1), F.mul(sign, c1));
    const Vec& br = g_->sc[gen][b];
    for (int l = 0; l < g_->dim(); ++l)
      if (!F.is_zero(br[l])) out.add_scaled(F, mul_gen_left(l, rest), br[l]);
  }
  auto [it, inserted] = lmemo_.emplace(std::move(key), std::move(out));
  (void)inserted;
  return it->second;
}

const UElement& UAlgebraCtx::mul_gen_right(const Mon& m, int gen) const {
  MonKey key{gen, m};
  auto found = rmemo_.find(key);
  if (found != rmemo_.end()) return found->second;

  const FieldCtx& F = *g_->field;
  long p = F.p();
  UElement out;
  int pg = pos_of_[gen];

  int q = -1;
  for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
    if (m[i] != 0) {
      q = i;
      break;
    }

  if (q < 0 || pg > q) {
    Mon r = m;
    r[pg] = static_cast<std::uint8_t>(r[pg] + 1);
    out.add_term(F, r, F.one());
  } else if (pg == q) {
    int b = order_[q];
    if (g_->parity[b] == 0) {
      if (m[q] + 1 < p) {
        Mon r = m;
        r[q] = static_cast<std::uint8_t>(m[q] + 1);
        out.add_term(F, r, F.one());
      } else {
        Mon tail = m;
        tail[q] = 0;
        out.add_term(F, tail, chi_pow_p_[b]);
        const Vec& im = g_->pmap[b];
        for (int l = 0; l < g_->dim(); ++l)
          if (!F.is_zero(im[l])) out.add_scaled(F, mul_gen_right(tail, l), im[l]);
      }
    } else {
      Mon tail = m;
      tail[q] = 0;
      Scalar half = F.inv(F.from_int(2));
      const Vec& sq = g_->sc[b][b];
      for (int l = 0; l < g_->dim(); ++l)
        if (!F.is_zero(sq[l])) out.add_scaled(F, mul_gen_right(tail, l), F.mul(half, sq[l]));
    }
  } else {
    // m = rest * b with b the trailing generator; move gen left past b
    int b = order_[q];
    Mon rest = m;
    rest[q] = static_cast<std::uint8_t>(rest[q] - 1);
    const UElement& t1 = mul_gen_right(rest, gen);
    Scalar sign =
        (g_->parity[gen] == 1 && g_->parity[b] == 1) ? F.from_int(-1) : F.one();
    for (const auto& [m1, c1] : t1.terms)
      out.add_scaled(F, mul_gen_right(m1, b), F.mul(sign, c1));
    const Vec& br = g_->sc[b][gen];
    for (int l = 0; l < g_->dim(); ++l)
      if (!F.is_zero(br[l])) out.add_scaled(F, mul_gen_right(rest, l), br[l]);
  }
  auto [it, inserted] = rmemo_.emplace(std::move(key), std::move(out));
  (void)inserted;
  return it->second;
}

UElement UAlgebraCtx::apply_gen_left(int gen, const UElement& u) const {
  const FieldCtx& F = *g_->field;
  UElement out;
  for (const auto& [m, c] : u.terms) out.add_scaled(F, mul_gen_left(gen, m), c);
  return out;
}

UElement UAlgebraCtx::apply_gen_right(const UElement& u, int gen) const {
  const FieldCtx& F = *g_->field;
  UElement out;
  for (const auto& [m, c] : u.terms) out.add_scaled(F, mul_gen_right(m, gen), c);
  return out;
}

UElement UAlgebraCtx::normal_form(const std::vector<int>& word) const {
  const FieldCtx& F = *g_->field;
  UElement u;
  u.add_term(F, one(), F.one());
  for (auto it = word.rbegin(); it != word.rend(); ++it) u = apply_gen_left(*it, u);
  return u;
}

UElement UAlgebraCtx::normal_form_lr(const std::vector<int>& word) const {
  const FieldCtx& F = *g_->field;
  UElement u;
  u.add_term(F, one(), F.one());
  for (int gen : word) u = apply_gen_right(u, gen);
  return u;
}

std::uint64_t UAlgebraCtx::reduced_dim() const {
  std::uint64_t r = 1;
  std::uint64_t p = static_cast<std::uint64_t>(g_->field->p());
  for (int i = 0; i < g_->dim(); ++i) {
    std::uint64_t b = (g_->parity[i] == 0) ? p : 2;
    if (r > (1ULL << 62) / b) throw std::overflow_error("reduced dimension exceeds 2^62");
    r *= b;
  }
  return r;
}

std::vector<Mon> UAlgebraCtx::all_monomials(std::uint64_t bound) const {
  std::uint64_t total = reduced_dim();
  if (total > bound)
    throw std::invalid_argument("monomial basis larger than the configured bound");
  int n = dim();
  std::vector<int> bounds(n);
  for (int pos = 0; pos < n; ++pos)
    bounds[pos] = (g_->parity[order_[pos]] == 0) ? static_cast<int>(g_->field->p()) : 2;
  std::vector<Mon> out;
  out.reserve(total);
  Mon cur(n, 0);
  while (true) {
    out.push_back(cur);
    int pos = n - 1;
    while (pos >= 0) {
      if (cur[pos] + 1 < bounds[pos]) {
        cur[pos]++;
        break;
      }
      cur[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<int> UAlgebraCtx::monomial_word(const Mon& m) const {
  std::vector<int> w;
  for (size_t pos = 0; pos < m.size(); ++pos)
    for (int e = 0; e < m[pos]; ++e) w.push_back(order_[pos]);
  return w;
}

std::string UAlgebraCtx::monomial_label(const Mon& m) const {
  std::ostringstream os;
  bool first = true;
  for (size_t pos = 0; pos < m.size(); ++pos) {
    if (m[pos] == 0) continue;
    if (!first) os << ".";
    os << g_->labels[order_[pos]];
    if (m[pos] > 1) os << "^" << static_cast<int>(m[pos]);
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

int UAlgebraCtx::monomial_parity(const Mon& m) const {
  int p = 0;
  for (size_t pos = 0; pos < m.size(); ++pos)
    if (g_->parity[order_[pos]] == 1) p += m[pos];
  return p % 2;
}

std::string UAlgebraCtx::content_hash() const {
  std::ostringstream os;
  os << g_->to_json().dump();
  for (const Scalar& s : chi_.even_dual) os << "," << s.v;
  for (int o : order_) os << ";" << o;
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : os.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

namespace {
nlohmann::json mon_to_json(const Mon& m) {
  nlohmann::json a = nlohmann::json::array();
  for (auto b : m) a.push_back(static_cast<int>(b));
  return a;
}
Mon mon_from_json(const nlohmann::json& j) {
  Mon m;
  for (const auto& x : j) m.push_back(static_cast<std::uint8_t>(x.get<int>()));
  return m;
}
}  // namespace

void UAlgebraCtx::save_cache(const std::string& dir) const {
  nlohmann::json j;
  j["version"] = 1;
  j["hash"] = content_hash();
  auto dump_memo = [&](const std::unordered_map<MonKey, UElement, MonKeyHash>& memo) {
    std::vector<std::pair<MonKey, const UElement*>> keys;
    for (const auto& [k, v] : memo) keys.push_back({k, &v});
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
      if (a.first.gen != b.first.gen) return a.first.gen < b.first.gen;
      return a.first.m < b.first.m;
    });
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [k, v] : keys) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [m, c] : v->terms) terms.push_back({mon_to_json(m), g_->field->coeffs(c)});
      arr.push_back({k.gen, mon_to_json(k.m), terms});
    }
    return arr;
  };
  j["left"] = dump_memo(lmemo_);
  j["right"] = dump_memo(rmemo_);
  std::ofstream out(dir + "/straighten_" + content_hash() + ".json");
  out << j.dump();
}

bool UAlgebraCtx::load_cache(const std::string& dir) {
  std::ifstream in(dir + "/straighten_" + content_hash() + ".json");
  if (!in.good()) return false;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("version").get<int>() != 1) return false;
    if (j.at("hash").get<std::string>() != content_hash()) return false;
    auto load_memo = [&](const nlohmann::json& arr,
                         std::unordered_map<MonKey, UElement, MonKeyHash>& memo) {
      for (const auto& e : arr) {
        MonKey k{e.at(0).get<int>(), mon_from_json(e.at(1))};
        UElement u;
        for (const auto& t : e.at(2))
          u.terms.emplace(mon_from_json(t.at(0)),
                          g_->field->from_coeffs(t.at(1).get<std::vector<long>>()));
        memo.emplace(std::move(k), std::move(u));
      }
    };
    load_memo(j.at("left"), lmemo_);
    load_memo(j.at("right"), rmemo_);
    return true;
  } catch (...) {
    lmemo_.clear();
    rmemo_.clear();
    return false;  // corrupt cache is recoverable by recomputation
  }
}

WeightSet lambda_set(const UAlgebraCtx& u, const std::vector<int>& cartan) {
  const LieSuperAlgebra& g = *u.algebra();
  const FieldCtx& F = *g.field;
  long p = F.p();
  int r = static_cast<int>(cartan.size());
  // p-power coordinates of the Cartan inside itself
  std::vector<Vec> pcoords(r, Vec(r, F.zero()));
  for (int i = 0; i < r; ++i) {
    const Vec& im = g.pmap[cartan[i]];
    for (int j = 0; j < g.dim(); ++j) {
      if (F.is_zero(im[j])) continue;
      auto it = std::find(cartan.begin(), cartan.end(), j);
      if (it == cartan.end())
        throw std::invalid_argument("lambda_set: Cartan is not p-closed in its span");
      pcoords[i][it - cartan.begin()] = im[j];
    }
  }
  WeightSet out;
  out.cartan = cartan;

  // decoupled fast path: h_i^{[p]} supported on h_i only
  bool decoupled = true;
  for (int i = 0; i < r && decoupled; ++i)
    for (int j = 0; j < r; ++j)
      if (j != i && !F.is_zero(pcoords[i][j])) decoupled = false;

  auto rhs = [&](int i) {
    return F.pow(g.chi_value(u.chi(), vec_unit(F, g.dim(), cartan[i])),
                 static_cast<std::uint64_t>(p));
  };

  if (decoupled) {
    std::vector<std::vector<Scalar>> sols(r);
    for (int i = 0; i < r; ++i) {
      for (std::uint64_t v = 0; v < F.size(); ++v) {
        Scalar lam = F.element(v);
        Scalar lhs = F.sub(F.pow(lam, static_cast<std::uint64_t>(p)), F.mul(pcoords[i][i], lam));
        if (lhs == rhs(i)) sols[i].push_back(lam);
      }
    }
    std::vector<int> idx(r, 0);
    while (true) {
      Vec w(r);
      bool any_empty = false;
      for (int i = 0; i < r; ++i) {
        if (sols[i].empty()) {
          any_empty = true;
          break;
        }
        w[i] = sols[i][idx[i]];
      }
      if (any_empty) break;
      out.weights.push_back(w);
      int i = r - 1;
      while (i >= 0) {
        if (++idx[i] < static_cast<int>(sols[i].size())) break;
        idx[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
    return out;
  }

  // general case: exhaustive over q^r with a guard
  std::uint64_t count = 1;
  for (int i = 0; i < r; ++i) {
    count *= F.size();
    if (count > 2000000) throw std::invalid_argument("lambda_set: search space too large");
  }
  std::vector<std::uint64_t> idx(r, 0);
  while (true) {
    Vec w(r);
    for (int i = 0; i < r; ++i) w[i] = F.element(idx[i]);
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      Scalar lam_p = F.pow(w[i], static_cast<std::uint64_t>(p));
      Scalar lin = F.zero();
      for (int j = 0; j < r; ++j) lin = F.add(lin, F.mul(pcoords[i][j], w[j]));
      if (!(F.sub(lam_p, lin) == rhs(i))) ok = false;
    }
    if (ok) out.weights.push_back(w);
    int i = r - 1;
    while (i >= 0) {
      if (++idx[i] < F.size()) break;
      idx[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

ModuleRep induced_module(const AlgebraPtr& g, const PChar& chi, const std::vector<int>& subalg,
                         const ModuleRep& W, const std::vector<int>* degrees,
                         std::uint64_t dim_bound) {
  const FieldCtx& F = *g->field;
  std::vector<int> S = subalg;
  std::sort(S.begin(), S.end());
  if (static_cast<int>(S.size()) != W.g->dim())
    throw std::invalid_argument("induced_module: W does not match the subalgebra");
  std::vector<int> in_sub(g->dim(), -1);
  for (size_t k = 0; k < S.size(); ++k) in_sub[S[k]] = static_cast<int>(k);

  // closure of the coordinate subalgebra under bracket and p-power
  for (int i : S)
    for (int j : S) {
      const Vec& br = g->sc[i][j];
      for (int l = 0; l < g->dim(); ++l)
        if (!F.is_zero(br[l]) && in_sub[l] < 0)
          throw std::invalid_argument("induced_module: subalgebra not closed under bracket");
    }
  for (int i : S)
    if (i < g->dim0)
      for (int l = 0; l < g->dim(); ++l)
        if (!F.is_zero(g->pmap[i][l]) && in_sub[l] < 0)
          throw std::invalid_argument("induced_module: subalgebra not closed under p-power");

  std::vector<int> C;
  for (int i = 0; i < g->dim(); ++i)
    if (in_sub[i] < 0) C.push_back(i);

  // internal order: complement (even then odd) before subalgebra (even then
  // odd); within a block degree-ascending when degrees are attached
  auto block_sort = [&](std::vector<int>& v) {
    std::stable_sort(v.begin(), v.end(), [&](int a, int b) {
      if (g->parity[a] != g->parity[b]) return g->parity[a] < g->parity[b];
      if (degrees && (*degrees)[a] != (*degrees)[b]) return (*degrees)[a] < (*degrees)[b];
      return a < b;
    });
  };
  block_sort(C);
  std::vector<int> Ssorted = S;
  block_sort(Ssorted);
  std::vector<int> order = C;
  order.insert(order.end(), Ssorted.begin(), Ssorted.end());
  UAlgebraCtx u(g, chi, order);

  // enumerate complement monomials
  long p = F.p();
  std::uint64_t nmono = 1;
  for (int i : C) {
    std::uint64_t b = (g->parity[i] == 0) ? static_cast<std::uint64_t>(p) : 2;
    nmono *= b;
    if (nmono * W.dim > dim_bound)
      throw std::invalid_argument("induced_module: dimension exceeds the bound");
  }
  int nc = static_cast<int>(C.size());
  std::vector<Mon> monos;
  monos.reserve(nmono);
  {
    Mon cur = u.one();
    std::vector<int> bounds(nc);
    for (int pos = 0; pos < nc; ++pos)
      bounds[pos] = (g->parity[order[pos]] == 0) ? static_cast<int>(p) : 2;
    while (true) {
      monos.push_back(cur);
      int pos = nc - 1;
      while (pos >= 0) {
        if (cur[pos] + 1 < bounds[pos]) {
          cur[pos]++;
          break;
        }
        cur[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  std::map<Mon, int> mono_index;
  for (size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i], static_cast<int>(i));

  int N = static_cast<int>(monos.size()) * W.dim;
  ModuleRep R;
  R.g = g;
  R.chi = chi;
  R.dim = N;
  for (const Mon& m : monos) {
    int mp = u.monomial_parity(m);
    for (int j = 0; j < W.dim; ++j) {
      R.parity.push_back((mp + W.parity[j]) % 2);
      R.labels.push_back(u.monomial_label(m) + "(x)" + W.labels[j]);
    }
  }

  // action of the subalgebra part of a monomial on a W-vector, rightmost
  // factor first
  auto sub_act = [&](const Mon& full, const Vec& w) {
    Vec v = w;
    for (int pos = u.dim() - 1; pos >= nc; --pos) {
      int e = full[pos];
      if (e == 0) continue;
      int slot = in_sub[order[pos]];
      for (int t = 0; t < e; ++t) v = W.action[slot].apply(v);
    }
    return v;
  };

  for (int gi = 0; gi < g->dim(); ++gi) {
    Matrix A(g->field, N, N);
    for (size_t mi = 0; mi < monos.size(); ++mi) {
      // pad the complement monomial to the full position space
      Mon m = u.one();
      for (int pos = 0; pos < nc; ++pos) m[pos] = monos[mi][pos];
      const UElement& prod = u.mul_gen_left(gi, m);
      for (const auto& [term, coef] : prod.terms) {
        Mon comp = u.one();
        for (int pos = 0; pos < nc; ++pos) comp[pos] = term[pos];
        auto it = mono_index.find(comp);
        if (it == mono_index.end()) throw std::logic_error("induced_module: missing monomial");
        int target_m = it->second;
        for (int j = 0; j < W.dim; ++j) {
          Vec w = vec_unit(F, W.dim, j);
          Vec img = sub_act(term, w);
          for (int l = 0; l < W.dim; ++l) {
            Scalar add = F.mul(coef, img[l]);
            if (!F.is_zero(add)) {
              int rrow = target_m * W.dim + l;
              int ccol = static_cast<int>(mi) * W.dim + j;
              A.set(rrow, ccol, F.add(A.at(rrow, ccol), add));
            }
          }
        }
      }
    }
    R.action.push_back(std::move(A));
  }

  auto rep = R.verify();
  if (!rep.ok) throw std::logic_error("induced_module: result fails module invariants: " + rep.detail);
  return R;
}

ModuleRep baby_verma(const AlgebraPtr& g, const PChar& chi, const TriangularDecomp& tri,
                     const Vec& lambda, const std::vector<int>* degrees) {
  const FieldCtx& F = *g->field;
  // chi must vanish on the even positive part
  for (int i : tri.n_plus)
    if (i < g->dim0 && !F.is_zero(chi.even_dual[i]))
      throw std::invalid_argument("baby_verma: chi does not vanish on n^+_0");

  std::vector<int> sub = tri.cartan;
  sub.insert(sub.end(), tri.n_plus.begin(), tri.n_plus.end());
  std::sort(sub.begin(), sub.end());

  std::vector<Vec> units;
  for (int i : sub) units.push_back(vec_unit(F, g->dim(), i));
  Subalgebra B = subalgebra_from_basis(g, units);

  ModuleRep W;
  W.g = B.alg;
  W.chi = restrict_chi(*g, chi, B);
  W.dim = 1;
  W.parity = {0};
  W.labels = {"1"};
  for (int k = 0; k < B.alg->dim(); ++k) {
    Matrix a(g->field, 1, 1);
    // embedding rows are unit vectors; find the parent index
    int parent = -1;
    for (int i = 0; i < g->dim(); ++i)
      if (!F.is_zero(B.embedding[k][i])) parent = i;
    auto it = std::find(tri.cartan.begin(), tri.cartan.end(), parent);
    if (it != tri.cartan.end()) a.set(0, 0, lambda[it - tri.cartan.begin()]);
    W.action.push_back(a);
  }
  auto wrep = W.verify();
  if (!wrep.ok)
    throw std::invalid_argument("baby_verma: lambda is not an admissible weight: " + wrep.detail);

  return induced_module(g, chi, sub, W, degrees);
}

RegularModule regular_module(const UAlgebraCtx& u, std::uint64_t dim_bound) {
  const AlgebraPtr& g = u.algebra();
  const FieldCtx& F = *g->field;
  RegularModule out;
  out.monomials = u.all_monomials(dim_bound);
  int N = static_cast<int>(out.monomials.size());
  for (int i = 0; i < N; ++i) out.index.emplace(out.monomials[i], i);

  out.rep.g = g;
  out.rep.chi = u.chi();
  out.rep.dim = N;
  for (const Mon& m : out.monomials) {
    out.rep.parity.push_back(u.monomial_parity(m));
    out.rep.labels.push_back(u.monomial_label(m));
  }
  for (int gi = 0; gi < g->dim(); ++gi) {
    Matrix L(g->field, N, N);
    Matrix R(g->field, N, N);
    for (int c = 0; c < N; ++c) {
      for (const auto& [m, coef] : u.mul_gen_left(gi, out.monomials[c]).terms)
        L.set(out.index.at(m), c, coef);
      for (const auto& [m, coef] : u.mul_gen_right(out.monomials[c], gi).terms)
        R.set(out.index.at(m), c, coef);
    }
    out.rep.action.push_back(std::move(L));
    out.right_action.push_back(std::move(R));
  }
  auto rep = out.rep.verify();
  if (!rep.ok) throw std::logic_error("regular_module: invariants fail: " + rep.detail);
  (void)F;
  return out;
}

ModuleRep osp12_verma_closed_form(const AlgebraPtr& osp12, const PChar& chi, Scalar lambda) {
  const FieldCtx& F = *osp12->field;
  if (osp12->family != "osp12")
    throw std::invalid_argument("osp12_verma_closed_form: wrong algebra");
  long p = F.p();
  int n = static_cast<int>(2 * p);
  Scalar chi_f_p = F.pow(chi.even_dual[2], static_cast<std::uint64_t>(p));
  if (!F.is_zero(chi.even_dual[0]))
    throw std::invalid_argument("osp12_verma_closed_form: chi(e) must vanish");

  ModuleRep M;
  M.g = osp12;
  M.chi = chi;
  M.dim = n;
  for (int i = 0; i < n; ++i) {
    M.parity.push_back(i % 2);
    M.labels.push_back("v" + std::to_string(i));
  }
  Matrix He(osp12->field, n, n), Hh(osp12->field, n, n), Hf(osp12->field, n, n),
      HE(osp12->field, n, n), HF(osp12->field, n, n);
  auto half_int = [&](long a) { return F.from_int(a); };
  for (int i = 0; i < n; ++i) {
    // h v_i = (lambda - i) v_i
    Hh.set(i, i, F.sub(lambda, F.from_int(i)));
    // f v_i
    if (i < n - 2)
      Hf.set(i + 2, i, F.from_int(-1));
    else if (i == n - 2)
      Hf.set(0, i, chi_f_p);
    else
      Hf.set(1, i, chi_f_p);
    // e v_i
    if (i >= 2) {
      Scalar c;
      if (i % 2 == 0) {
        Scalar k = half_int(i / 2);
        c = F.neg(F.mul(k, F.sub(F.add(lambda, F.one()), k)));
      } else {
        Scalar k = half_int((i - 1) / 2);
        c = F.neg(F.mul(k, F.sub(lambda, k)));
      }
      He.set(i - 2, i, c);
    }
    // F v_i
    if (i < n - 1)
      HF.set(i + 1, i, F.one());
    else
      HF.set(0, i, F.neg(chi_f_p));
    // E v_i
    if (i >= 1) {
      Scalar c;
      if (i % 2 == 0)
        c = F.neg(half_int(i / 2));
      else
        c = F.sub(lambda, half_int((i - 1) / 2));
      HE.set(i - 1, i, c);
    }
  }
  M.action = {He, Hh, Hf, HE, HF};
  auto rep = M.verify();
  if (!rep.ok)
    throw std::invalid_argument("osp12_verma_closed_form: invariants fail: " + rep.detail);
  return M;
}

ModuleRep osp12_restricted_simple(const AlgebraPtr& osp12, long lambda_int) {
  const FieldCtx& F = *osp12->field;
  if (osp12->family != "osp12")
    throw std::invalid_argument("osp12_restricted_simple: wrong algebra");
  long p = F.p();
  if (lambda_int < 0 || lambda_int >= p)
    throw std::invalid_argument("osp12_restricted_simple: lambda out of range");
  int n = static_cast<int>(2 * lambda_int + 1);
  Scalar lambda = F.from_int(lambda_int);

  ModuleRep M;
  M.g = osp12;
  M.chi = zero_chi(*osp12);
  M.dim = n;
  for (int i = 0; i < n; ++i) {
    M.parity.push_back(i % 2);
    M.labels.push_back("v" + std::to_string(i));
  }
  Matrix He(osp12->field, n, n), Hh(osp12->field, n, n), Hf(osp12->field, n, n),
      HE(osp12->field, n, n), HF(osp12->field, n, n);
  for (int i = 0; i < n; ++i) {
    Hh.set(i, i, F.sub(lambda, F.from_int(i)));
    if (i + 2 < n) Hf.set(i + 2, i, F.from_int(-1));
    if (i + 1 < n) HF.set(i + 1, i, F.one());
    if (i >= 2) {
      Scalar c;
      if (i % 2 == 0) {
        Scalar k = F.from_int(i / 2);
        c = F.neg(F.mul(k, F.sub(F.add(lambda, F.one()), k)));
      } else {
        Scalar k = F.from_int((i - 1) / 2);
        c = F.neg(F.mul(k, F.sub(lambda, k)));
      }
      He.set(i - 2, i, c);
    }
    if (i >= 1) {
      Scalar c;
      if (i % 2 == 0)
        c = F.neg(F.from_int(i / 2));
      else
        c = F.sub(lambda, F.from_int((i - 1) / 2));
      HE.set(i - 1, i, c);
    }
  }
  M.action = {He, Hh, Hf, HE, HF};
  auto rep = M.verify();
  if (!rep.ok)
    throw std::logic_error("osp12_restricted_simple: invariants fail: " + rep.detail);
  return M;
}

EtaResult eta_character(const Subalgebra& m, const PChar& chi_on_m) {
  const LieSuperAlgebra& a = *m.alg;
  const FieldCtx& F = *a.field;
  long p = F.p();
  int d0 = a.dim0;

  Vec eta(d0, F.zero());
  // eta(x)^p = chi(x)^p + eta(x^{[p]}); the p-power map is eventually zero on
  // a p-nilpotent algebra, so iteration converges
  for (int round = 0; round <= d0 + 1; ++round) {
    Vec next(d0, F.zero());
    for (int i = 0; i < d0; ++i) {
      Scalar lin = F.zero();
      for (int j = 0; j < d0; ++j)
        if (!F.is_zero(a.pmap[i][j])) lin = F.add(lin, F.mul(a.pmap[i][j], eta[j]));
      Scalar rhs = F.add(F.pow(chi_on_m.even_dual[i], static_cast<std::uint64_t>(p)), lin);
      next[i] = F.frobenius_root(rhs);
    }
    if (next == eta) break;
    eta = next;
    if (round == d0 + 1)
      throw std::domain_error("eta_character: p-power recursion does not stabilize");
  }
  // verify the defining constraints
  for (int i = 0; i < d0; ++i) {
    Scalar lin = F.zero();
    for (int j = 0; j < d0; ++j)
      if (!F.is_zero(a.pmap[i][j])) lin = F.add(lin, F.mul(a.pmap[i][j], eta[j]));
    Scalar lhs = F.sub(F.pow(eta[i], static_cast<std::uint64_t>(p)), lin);
    if (!(lhs == F.pow(chi_on_m.even_dual[i], static_cast<std::uint64_t>(p))))
      throw std::domain_error("eta_character: no solution over the current field");
  }

  EtaResult out;
  out.eta.even_dual = eta;
  ModuleRep K;
  K.g = m.alg;
  K.chi = chi_on_m;
  K.dim = 1;
  K.parity = {0};
  K.labels = {"1"};
  for (int i = 0; i < a.dim(); ++i) {
    Matrix x(a.field, 1, 1);
    if (i < d0) x.set(0, 0, eta[i]);
    K.action.push_back(x);
  }
  auto rep = K.verify();
  if (!rep.ok)
    throw std::domain_error("eta_character: K_eta fails the module axioms: " + rep.detail);
  out.k_eta = K;
  return out;
}

}  // namespace modsuper
