#include "modsuper/roots.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace modsuper {

namespace {

RootVec negate(const RootVec& v) {
  RootVec r = v;
  for (int& x : r) x = -x;
  return r;
}

RootVec add(const RootVec& a, const RootVec& b) {
  RootVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RootVec scale(int c, const RootVec& a) {
  RootVec r = a;
  for (int& x : r) x *= c;
  return r;
}

bool is_zero(const RootVec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool lex_positive(const RootVec& v) {
  for (int x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

}  // namespace

const Root* RootSystem::find(const RootVec& v) const {
  for (const Root& r : roots)
    if (r.coords == v) return &r;
  return nullptr;
}

bool RootSystem::is_root(const RootVec& v) const { return find(v) != nullptr; }

Scalar RootSystem::eval(const RootVec& alpha, const Vec& h) const {
  const FieldCtx& F = *g->field;
  Matrix M = g->model_of(h);
  Scalar t = F.zero();
  for (int i = 0; i < rank; ++i) {
    int pos = g->weight_positions[i];
    long c = alpha[i];
    if (c != 0) t = F.add(t, F.mul(F.from_int(c), M.at(pos, pos)));
  }
  return t;
}

std::vector<RootLine> RootSystem::lines() const {
  std::vector<RootLine> out;
  std::set<RootVec> seen;
  for (const Root& r : roots) {
    RootVec a = lex_positive(r.coords) ? r.coords : negate(r.coords);
    if (seen.count(a)) continue;
    bool integral_half = std::all_of(a.begin(), a.end(), [](int x) { return x % 2 == 0; });
    if (integral_half) {
      RootVec half(a.size(), 0);
      for (size_t i = 0; i < a.size(); ++i) half[i] = a[i] / 2;
      if (is_root(half)) continue;  // handled from the primitive root
    }
    RootLine line;
    line.delta = a;
    seen.insert(a);
    RootVec da = scale(2, a);
    if (is_root(da)) {
      line.type = LineType::OddWithDouble;
      seen.insert(da);
    } else {
      line.type = (find(a)->parity == 0) ? LineType::EvenPair : LineType::OddPair;
    }
    out.push_back(line);
  }
  std::sort(out.begin(), out.end(),
            [](const RootLine& x, const RootLine& y) { return x.delta < y.delta; });
  return out;
}

RootSystem root_decomposition(const AlgebraPtr& g) {
  if (g->weights.empty() || g->cartan_indices.empty())
    throw std::invalid_argument("root_decomposition: algebra has no weight data");
  const FieldCtx& F = *g->field;
  RootSystem rs;
  rs.g = g;
  rs.cartan = g->cartan_indices;
  rs.rank = g->weight_rank;
  std::set<int> cartan_set(rs.cartan.begin(), rs.cartan.end());

  std::map<RootVec, Root> spaces;
  for (int i = 0; i < g->dim(); ++i) {
    if (cartan_set.count(i)) continue;
    const RootVec& w = g->weights[i];
    if (is_zero(w)) {
      // weight-zero non-Cartan element: the Cartan does not act diagonally
      throw std::domain_error("root_decomposition: zero-weight vector outside the Cartan");
    }
    auto it = spaces.find(w);
    if (it == spaces.end()) {
      Root r;
      r.coords = w;
      r.parity = g->parity[i];
      spaces.emplace(w, r).first->second.space.push_back(i);
    } else {
      if (it->second.parity != g->parity[i])
        throw std::domain_error("root_decomposition: mixed parity in one root space");
      it->second.space.push_back(i);
    }
  }

  // exact verification: [h, x] = a(h) x for all Cartan h and root vectors x,
  // and the Cartan is abelian
  for (int hi : rs.cartan) {
    Vec h = vec_unit(F, g->dim(), hi);
    for (int hj : rs.cartan)
      if (!vec_is_zero(g->bracket(h, vec_unit(F, g->dim(), hj))))
        throw std::domain_error("root_decomposition: Cartan is not abelian");
    for (auto& [w, root] : spaces) {
      Scalar a = rs.eval(w, h);
      for (int bi : root.space) {
        Vec lhs = g->bracket(h, vec_unit(F, g->dim(), bi));
        Vec rhs = vec_scale(F, a, vec_unit(F, g->dim(), bi));
        if (!(lhs == rhs))
          throw std::domain_error("root_decomposition: adjoint action is not diagonal");
      }
    }
  }

  int total = static_cast<int>(rs.cartan.size());
  for (auto& [w, root] : spaces) {
    total += static_cast<int>(root.space.size());
    rs.roots.push_back(root);
  }
  if (total != g->dim())
    throw std::domain_error("root_decomposition: decomposition does not reconstruct g");
  // negation closure
  for (const Root& r : rs.roots)
    if (!rs.is_root(negate(r.coords)))
      throw std::domain_error("root_decomposition: roots not closed under negation");
  return rs;
}

PositiveSystem standard_positive_system(const RootSystem& rs) {
  PositiveSystem P;
  for (const Root& r : rs.roots)
    if (lex_positive(r.coords)) P.pos.insert(r.coords);
  return P;
}

std::vector<RootVec> simple_roots(const RootSystem& rs, const PositiveSystem& P) {
  std::vector<RootVec> out;
  for (const RootVec& a : P.pos) {
    bool decomposable = false;
    for (const RootVec& b : P.pos) {
      if (decomposable) break;
      for (const RootVec& c : P.pos) {
        if (add(b, c) == a) {
          decomposable = true;
          break;
        }
      }
    }
    if (!decomposable) out.push_back(a);
  }
  (void)rs;
  return out;
}

CheckReport verify_positive_system(const RootSystem& rs, const PositiveSystem& P) {
  // one of +-a per line
  for (const Root& r : rs.roots) {
    bool plus = P.contains(r.coords);
    bool minus = P.contains(negate(r.coords));
    if (plus == minus)
      return {false, "positive set does not pick exactly one of each root pair"};
  }
  // closure: a,b in P with a+b a root forces a+b in P
  for (const RootVec& a : P.pos)
    for (const RootVec& b : P.pos) {
      RootVec c = add(a, b);
      if (rs.is_root(c) && !P.contains(c))
        return {false, "positive set is not closed under addition"};
    }
  // every positive root is an N-combination of simple roots
  auto simples = simple_roots(rs, P);
  std::set<RootVec> reach(simples.begin(), simples.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RootVec> next;
    for (const RootVec& a : reach)
      for (const RootVec& s : simples) {
        RootVec t = add(a, s);
        if (P.contains(t) && !reach.count(t)) next.push_back(t);
      }
    for (auto& t : next)
      if (reach.insert(t).second) grew = true;
  }
  for (const RootVec& a : P.pos)
    if (!reach.count(a))
      return {false, "a positive root is not an N-combination of the simple roots"};
  return {true, ""};
}

std::vector<RootVec> delta_star(const RootSystem& rs, const RootVec& delta) {
  std::vector<RootVec> out = {delta};
  RootVec dd = scale(2, delta);
  if (rs.is_root(dd)) out.push_back(dd);
  return out;
}

PositiveSystem odd_reflection(const RootSystem& rs, const PositiveSystem& P,
                              const RootVec& delta) {
  auto simples = simple_roots(rs, P);
  if (std::find(simples.begin(), simples.end(), delta) == simples.end())
    throw std::invalid_argument("odd_reflection: delta is not simple in the given system");
  PositiveSystem Q;
  Q.pos = P.pos;
  for (const RootVec& d : delta_star(rs, delta)) {
    Q.pos.erase(d);
    Q.pos.insert(negate(d));
  }
  auto rep = verify_positive_system(rs, Q);
  if (!rep.ok)
    throw std::domain_error("odd_reflection: reflected set is not a positive system: " +
                            rep.detail);
  // intersection property: Q cap P = P \ delta*
  for (const RootVec& a : P.pos) {
    bool in_star = false;
    for (const RootVec& d : delta_star(rs, delta))
      if (a == d) in_star = true;
    if (in_star == Q.contains(a))
      throw std::domain_error("odd_reflection: intersection property fails");
  }
  return Q;
}

namespace {

bool set_closed(const RootSystem& rs, const std::set<RootVec>& S) {
  for (const RootVec& a : S)
    for (const RootVec& b : S) {
      RootVec c = add(a, b);
      if (rs.is_root(c) && !S.count(c)) return false;
    }
  return true;
}

bool normalized_by(const RootSystem& rs, const std::set<RootVec>& S,
                   const std::set<RootVec>& N) {
  for (const RootVec& a : S)
    for (const RootVec& b : N) {
      RootVec c = add(a, b);
      if (rs.is_root(c) && !S.count(c)) return false;
    }
  return true;
}

}  // namespace

PhiUSequence enumerate_phi_u(const RootSystem& rs, const std::set<RootVec>& phi_s_plus,
                             const std::set<RootVec>& phi_u) {
  {
    PositiveSystem opposite;
    for (const RootVec& a : phi_s_plus) opposite.pos.insert(negate(a));
    for (const RootVec& a : phi_u) opposite.pos.insert(a);
    auto rep = verify_positive_system(rs, opposite);
    if (!rep.ok)
      throw std::invalid_argument(
          "enumerate_phi_u: Phi_s^- union Phi_u is not a positive system");
  }
  // iterate on the systems Phi_i^+ = Phi_s^+ united with the partially
  // reflected u-lines, reflecting at a simple root inside Phi_u each step
  PositiveSystem cur;
  for (const RootVec& a : phi_s_plus) cur.pos.insert(a);
  for (const RootVec& a : phi_u) cur.pos.insert(a);
  {
    auto rep = verify_positive_system(rs, cur);
    if (!rep.ok)
      throw std::invalid_argument(
          "enumerate_phi_u: Phi_s^+ union Phi_u is not a positive system");
  }

  std::set<RootVec> u_left;
  for (const RootVec& a : phi_u) u_left.insert(a);

  PhiUSequence out;
  std::set<RootVec> psi;  // accumulated -delta_i^*
  while (!u_left.empty()) {
    auto simples = simple_roots(rs, cur);
    std::sort(simples.begin(), simples.end());
    RootVec delta;
    bool found = false;
    for (const RootVec& s : simples) {
      if (u_left.count(s)) {
        delta = s;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::domain_error(
          "enumerate_phi_u: no simple root of the current system lies in Phi_u");
    cur = odd_reflection(rs, cur, delta);
    for (const RootVec& d : delta_star(rs, delta)) {
      u_left.erase(d);
      psi.insert(negate(d));
    }
    // Psi_i closed and normalized by Phi_s^+
    if (!set_closed(rs, psi))
      throw std::domain_error("enumerate_phi_u: Psi_i is not closed");
    if (!normalized_by(rs, psi, phi_s_plus))
      throw std::domain_error("enumerate_phi_u: Psi_i is not normalized by Phi_s^+");
    out.deltas.push_back(delta);
    out.systems.push_back(cur);
  }
  return out;
}

TriangularData triangular_data(const RootSystem& rs, const PositiveSystem& P) {
  TriangularData t;
  t.cartan = rs.cartan;
  for (const Root& r : rs.roots) {
    auto& side = P.contains(r.coords) ? t.n_plus : t.n_minus;
    for (int i : r.space) side.push_back(i);
  }
  std::sort(t.n_plus.begin(), t.n_plus.end());
  std::sort(t.n_minus.begin(), t.n_minus.end());
  return t;
}

}  // namespace modsuper
