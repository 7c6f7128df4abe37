#include "modsuper/module.hpp"

#include <random>
#include <stdexcept>

namespace modsuper {

Matrix ModuleRep::act(const Vec& algebra_elt) const {
  Matrix M(g->field, dim, dim);
  for (int i = 0; i < g->dim(); ++i)
    if (!g->field->is_zero(algebra_elt[i])) M.add_in_place(action[i], algebra_elt[i]);
  return M;
}

Matrix ModuleRep::parity_matrix() const {
  Matrix S(g->field, dim, dim);
  for (int i = 0; i < dim; ++i)
    S.set(i, i, parity[i] == 0 ? g->field->one() : g->field->from_int(-1));
  return S;
}

CheckReport ModuleRep::verify(int full_bound, std::uint64_t seed) const {
  const FieldCtx& F = *g->field;
  int d = g->dim();
  auto fail = [&](const std::string& s) { return CheckReport{false, s}; };

  // parity blocks: action of a parity-e element maps parity b to parity b+e
  for (int i = 0; i < d; ++i) {
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (!F.is_zero(action[i].at(r, c)) &&
            parity[r] != (parity[c] + g->parity[i]) % 2)
          return fail("action of " + g->labels[i] + " violates module parity");
  }

  // super-commutator compatibility
  auto check_pair = [&](int i, int j) -> bool {
    Matrix lhs = act(g->sc[i][j]);
    Matrix ab = action[i] * action[j];
    Matrix ba = action[j] * action[i];
    Matrix rhs = (g->parity[i] == 1 && g->parity[j] == 1) ? ab + ba : ab - ba;
    return lhs == rhs;
  };
  if (dim <= full_bound) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j)
        if (!check_pair(i, j))
          return fail("bracket identity fails at [" + g->labels[i] + "," + g->labels[j] + "]");
  } else {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 25; ++t) {
      int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
      if (!check_pair(i, j))
        return fail("bracket identity fails at [" + g->labels[i] + "," + g->labels[j] + "]");
    }
  }

  // p-character identity on every even basis element
  long p = F.p();
  for (int i = 0; i < g->dim0; ++i) {
    Matrix lhs = matrix_pow(action[i], static_cast<std::uint64_t>(p)) - act(g->pmap[i]);
    Scalar c = F.pow(g->chi_value(chi, vec_unit(F, d, i)), static_cast<std::uint64_t>(p));
    Matrix rhs = Matrix::identity(g->field, dim).scaled(c);
    if (!(lhs == rhs)) return fail("p-character identity fails at " + g->labels[i]);
  }
  return {true, ""};
}

nlohmann::json ModuleRep::to_json() const {
  nlohmann::json j;
  j["field"] = g->field->header_json();
  j["dim"] = dim;
  j["parity"] = parity;
  j["labels"] = labels;
  nlohmann::json acts = nlohmann::json::array();
  for (int i = 0; i < g->dim(); ++i) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < dim; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < dim; ++c) row.push_back(g->field->coeffs(action[i].at(r, c)));
      rows.push_back(row);
    }
    acts.push_back({{"generator", g->labels[i]}, {"matrix", rows}});
  }
  j["action"] = acts;
  return j;
}

ModuleRep restrict_module(const ModuleRep& M, const Subalgebra& sub) {
  ModuleRep R;
  R.g = sub.alg;
  R.chi = restrict_chi(*M.g, M.chi, sub);
  R.dim = M.dim;
  R.parity = M.parity;
  R.labels = M.labels;
  for (const Vec& emb : sub.embedding) R.action.push_back(M.act(emb));
  return R;
}

namespace {

// rows must be echelonized (RowSpan) and parity-homogeneous
void check_homogeneous(const ModuleRep& M, const std::vector<Vec>& rows) {
  for (const Vec& v : rows) {
    int par = -1;
    for (int i = 0; i < M.dim; ++i) {
      if (M.field().is_zero(v[i])) continue;
      if (par < 0)
        par = M.parity[i];
      else if (par != M.parity[i])
        throw std::invalid_argument("subspace basis vector is not parity-homogeneous");
    }
  }
}

}  // namespace

bool is_invariant_subspace(const ModuleRep& M, const std::vector<Vec>& w_basis) {
  RowSpan span(M.g->field, M.dim);
  for (const Vec& v : w_basis) span.insert(v);
  for (int i = 0; i < M.g->dim(); ++i)
    for (const Vec& v : w_basis)
      if (!span.contains(M.action[i].apply(v))) return false;
  return true;
}

ModuleRep submodule_on(const ModuleRep& M, const std::vector<Vec>& w_basis) {
  const FieldCtx& F = M.field();
  check_homogeneous(M, w_basis);
  RowSpan span(M.g->field, M.dim);
  for (const Vec& v : w_basis) span.insert(v);
  int wd = span.dim();
  ModuleRep S;
  S.g = M.g;
  S.chi = M.chi;
  S.dim = wd;
  for (const Vec& row : span.rows()) {
    int par = 0;
    for (int i = 0; i < M.dim; ++i)
      if (!F.is_zero(row[i])) {
        par = M.parity[i];
        break;
      }
    S.parity.push_back(par);
  }
  for (int i = 0; i < wd; ++i) S.labels.push_back("w" + std::to_string(i));
  for (int i = 0; i < M.g->dim(); ++i) {
    Matrix A(M.g->field, wd, wd);
    for (int c = 0; c < wd; ++c) {
      Vec img = M.action[i].apply(span.rows()[c]);
      Vec coord = span.coordinates(img);  // throws if not invariant
      for (int r = 0; r < wd; ++r) A.set(r, c, coord[r]);
    }
    S.action.push_back(A);
  }
  return S;
}

ModuleRep quotient_module(const ModuleRep& M, const std::vector<Vec>& w_basis) {
  const FieldCtx& F = M.field();
  check_homogeneous(M, w_basis);
  RowSpan span(M.g->field, M.dim);
  for (const Vec& v : w_basis) span.insert(v);
  std::vector<bool> is_pivot(M.dim, false);
  for (int piv : span.pivots()) is_pivot[piv] = true;
  std::vector<int> keep;  // coordinate complement
  for (int i = 0; i < M.dim; ++i)
    if (!is_pivot[i]) keep.push_back(i);
  int qd = static_cast<int>(keep.size());
  ModuleRep Q;
  Q.g = M.g;
  Q.chi = M.chi;
  Q.dim = qd;
  for (int i : keep) {
    Q.parity.push_back(M.parity[i]);
    Q.labels.push_back(M.labels.empty() ? "q" + std::to_string(i) : M.labels[i]);
  }
  for (int gi = 0; gi < M.g->dim(); ++gi) {
    Matrix A(M.g->field, qd, qd);
    for (int c = 0; c < qd; ++c) {
      Vec img = M.action[gi].apply(vec_unit(F, M.dim, keep[c]));
      Vec red = span.reduce(img);
      for (int r = 0; r < qd; ++r) A.set(r, c, red[keep[r]]);
    }
    Q.action.push_back(A);
  }
  return Q;
}

}  // namespace modsuper
