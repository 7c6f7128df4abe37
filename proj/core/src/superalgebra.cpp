#include "modsuper/superalgebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace modsuper {

namespace {

Matrix super_commutator(const Matrix& A, const Matrix& B, int pa, int pb) {
  Matrix AB = A * B;
  Matrix BA = B * A;
  if (pa == 1 && pb == 1) return AB + BA;
  return AB - BA;
}

Scalar supertrace(const Matrix& M, int m0) {
  const FieldCtx& F = *M.field();
  Scalar t = F.zero();
  for (int i = 0; i < M.rows(); ++i) {
    Scalar d = M.at(i, i);
    t = (i < m0) ? F.add(t, d) : F.sub(t, d);
  }
  return t;
}

std::uint64_t checked_pow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (1ULL << 62) / base) throw std::overflow_error("dimension exceeds 2^62");
    r *= base;
  }
  return r;
}

}  // namespace

Vec LieSuperAlgebra::bracket(const Vec& a, const Vec& b) const {
  const FieldCtx& F = *field;
  Vec r(dim(), F.zero());
  for (int i = 0; i < dim(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (int j = 0; j < dim(); ++j) {
      if (F.is_zero(b[j])) continue;
      Scalar c = F.mul(a[i], b[j]);
      vec_axpy(F, r, c, sc[i][j]);
    }
  }
  return r;
}

Matrix LieSuperAlgebra::ad(const Vec& a) const {
  Matrix M(field, dim(), dim());
  const FieldCtx& F = *field;
  for (int j = 0; j < dim(); ++j) {
    Vec col(dim(), F.zero());
    for (int i = 0; i < dim(); ++i)
      if (!F.is_zero(a[i])) vec_axpy(F, col, a[i], sc[i][j]);
    for (int r = 0; r < dim(); ++r) M.set(r, j, col[r]);
  }
  return M;
}

void LieSuperAlgebra::build_model_span() const {
  if (model_span_) return;
  if (model.empty()) throw std::logic_error("algebra has no matrix model");
  const FieldCtx& F = *field;
  int fs = model[0].rows() * model[0].cols();
  auto span = std::make_unique<TrackedSpan>(field, fs, dim());
  for (int i = 0; i < dim(); ++i) {
    Vec flat(fs);
    for (int r = 0; r < model[i].rows(); ++r)
      for (int c = 0; c < model[i].cols(); ++c) flat[r * model[i].cols() + c] = model[i].at(r, c);
    if (!span->insert(std::move(flat), vec_unit(F, dim(), i)))
      throw std::logic_error("model matrices are linearly dependent");
  }
  model_span_ = std::move(span);
}

Vec LieSuperAlgebra::coords_of_model(const Matrix& M) const {
  build_model_span();
  int fs = M.rows() * M.cols();
  Vec flat(fs);
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c) flat[r * M.cols() + c] = M.at(r, c);
  Vec coord;
  if (!model_span_->express(flat, coord))
    throw std::domain_error("matrix not in the span of the model");
  return coord;
}

Matrix LieSuperAlgebra::model_of(const Vec& a) const {
  if (model.empty()) throw std::logic_error("algebra has no matrix model");
  Matrix M(field, model[0].rows(), model[0].cols());
  for (int i = 0; i < dim(); ++i)
    if (!field->is_zero(a[i])) M.add_in_place(model[i], a[i]);
  return M;
}

Vec LieSuperAlgebra::pmap_of(const Vec& a) const {
  if (!is_even_element(a)) throw std::invalid_argument("pmap_of: element is not even");
  Matrix M = model_of(a);
  return coords_of_model(matrix_pow(M, static_cast<std::uint64_t>(field->p())));
}

Scalar LieSuperAlgebra::chi_value(const PChar& chi, const Vec& a) const {
  const FieldCtx& F = *field;
  Scalar t = F.zero();
  for (int i = 0; i < dim0; ++i)
    if (!F.is_zero(a[i])) t = F.add(t, F.mul(chi.even_dual[i], a[i]));
  return t;
}

bool LieSuperAlgebra::is_even_element(const Vec& a) const {
  for (int i = dim0; i < dim(); ++i)
    if (!field->is_zero(a[i])) return false;
  return true;
}

nlohmann::json LieSuperAlgebra::to_json() const {
  nlohmann::json j;
  j["field"] = field->header_json();
  j["family"] = family;
  j["labels"] = labels;
  j["parity"] = parity;
  nlohmann::json triples = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i)
    for (int jj = 0; jj < dim(); ++jj)
      for (int k = 0; k < dim(); ++k)
        if (!field->is_zero(sc[i][jj][k]))
          triples.push_back({i, jj, k, field->coeffs(sc[i][jj][k])});
  j["sc"] = triples;
  nlohmann::json pm = nlohmann::json::array();
  for (int i = 0; i < dim0; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < dim(); ++k) row.push_back(field->coeffs(pmap[i][k]));
    pm.push_back(row);
  }
  j["pmap"] = pm;
  if (form) {
    nlohmann::json g = nlohmann::json::array();
    for (int i = 0; i < dim(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < dim(); ++k) row.push_back(field->coeffs(form->at(i, k)));
      g.push_back(row);
    }
    j["form"] = g;
  }
  return j;
}

std::shared_ptr<LieSuperAlgebra> LieSuperAlgebra::from_json(const nlohmann::json& j) {
  auto g = std::make_shared<LieSuperAlgebra>();
  g->field = FieldCtx::from_header(j.at("field"));
  const FieldCtx& F = *g->field;
  g->family = j.at("family").get<std::string>();
  g->labels = j.at("labels").get<std::vector<std::string>>();
  g->parity = j.at("parity").get<std::vector<int>>();
  int d = static_cast<int>(g->parity.size());
  g->dim0 = 0;
  for (int x : g->parity)
    if (x == 0) g->dim0++;
  g->dim1 = d - g->dim0;
  g->sc.assign(d, std::vector<Vec>(d, Vec(d, F.zero())));
  for (const auto& t : j.at("sc")) {
    int i = t.at(0).get<int>(), jj = t.at(1).get<int>(), k = t.at(2).get<int>();
    g->sc[i][jj][k] = F.from_coeffs(t.at(3).get<std::vector<long>>());
  }
  g->pmap.assign(g->dim0, Vec(d, F.zero()));
  const auto& pm = j.at("pmap");
  for (int i = 0; i < g->dim0; ++i)
    for (int k = 0; k < d; ++k)
      g->pmap[i][k] = F.from_coeffs(pm.at(i).at(k).get<std::vector<long>>());
  if (j.contains("form")) {
    Matrix G(g->field, d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        G.set(i, k, F.from_coeffs(j.at("form").at(i).at(k).get<std::vector<long>>()));
    g->form = G;
    g->form_nondegenerate = (rank(G) == d);
  }
  return g;
}

namespace {

AlgebraPtr build_from_model(FieldPtr F, std::string family, int m0, int m1,
                            std::vector<Matrix> models, std::vector<int> parity,
                            std::vector<std::string> labels,
                            std::vector<std::vector<int>> weights, int wrank,
                            std::vector<int> cartan_idx, std::vector<int> weight_pos) {
  auto g = std::make_shared<LieSuperAlgebra>();
  g->field = std::move(F);
  g->family = std::move(family);
  g->model = std::move(models);
  g->model_m0 = m0;
  g->model_m1 = m1;
  g->parity = std::move(parity);
  g->labels = std::move(labels);
  g->weights = std::move(weights);
  g->weight_rank = wrank;
  g->cartan_indices = std::move(cartan_idx);
  g->weight_positions = std::move(weight_pos);
  int d = static_cast<int>(g->parity.size());
  g->dim0 = 0;
  for (int x : g->parity)
    if (x == 0) g->dim0++;
  g->dim1 = d - g->dim0;
  for (int i = 1; i < d; ++i)
    if (g->parity[i] < g->parity[i - 1])
      throw std::logic_error("basis must list even elements first");

  // structure constants from the model
  g->sc.assign(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g->sc[i][j] =
          g->coords_of_model(super_commutator(g->model[i], g->model[j], g->parity[i], g->parity[j]));

  // p-power table from the model
  long p = g->field->p();
  g->pmap.clear();
  for (int i = 0; i < g->dim0; ++i)
    g->pmap.push_back(g->coords_of_model(matrix_pow(g->model[i], static_cast<std::uint64_t>(p))));

  // supertrace form
  Matrix G(g->field, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G.set(i, j, supertrace(g->model[i] * g->model[j], m0));
  g->form = G;
  g->form_nondegenerate = (rank(G) == d);
  return g;
}

Matrix unit_matrix(FieldPtr F, int n, int r, int c) {
  Matrix M(F, n, n);
  M.set(r, c, F->one());
  return M;
}

}  // namespace

AlgebraPtr construct_gl(FieldPtr F, int m, int n) {
  if (m < 0 || n < 0 || m + n < 1) throw std::invalid_argument("gl(m|n): bad dimensions");
  int N = m + n;
  auto par = [&](int a) { return a < m ? 0 : 1; };
  std::vector<Matrix> models;
  std::vector<int> parity;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> weights;
  std::vector<int> cartan;
  for (int pass = 0; pass < 2; ++pass) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        int pr = (par(a) + par(b)) % 2;
        if (pr != pass) continue;
        models.push_back(unit_matrix(F, N, a, b));
        parity.push_back(pr);
        std::ostringstream os;
        os << "E(" << a + 1 << "," << b + 1 << ")";
        labels.push_back(os.str());
        std::vector<int> w(N, 0);
        w[a] += 1;
        w[b] -= 1;
        weights.push_back(w);
        if (a == b) cartan.push_back(static_cast<int>(models.size()) - 1);
      }
  }
  std::vector<int> wpos(N);
  for (int i = 0; i < N; ++i) wpos[i] = i;
  return build_from_model(std::move(F), "gl", m, n, std::move(models), std::move(parity),
                          std::move(labels), std::move(weights), N, std::move(cartan),
                          std::move(wpos));
}

AlgebraPtr construct_sl(FieldPtr F, int m, int n) {
  if (m < 0 || n < 0 || m + n < 2) throw std::invalid_argument("sl(m|n): bad dimensions");
  long p = F->p();
  bool special_sl11 = (m == 1 && n == 1);
  if (!special_sl11 && ((m - n) % p + p) % p == 0)
    throw std::invalid_argument("sl(m|n) requires p not dividing m-n");
  int N = m + n;
  auto par = [&](int a) { return a < m ? 0 : 1; };
  std::vector<Matrix> models;
  std::vector<int> parity;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> weights;
  std::vector<int> cartan;
  // even block: supertrace-free diagonal combinations first, then even units
  for (int i = 0; i + 1 < N; ++i) {
    Matrix h(F, N, N);
    h.set(i, i, F->one());
    // h = E_ii + s E_{i+1,i+1} with s chosen so the supertrace vanishes:
    // s = -1 inside a parity block, s = +1 across the block boundary
    Scalar s = (par(i) == par(i + 1)) ? F->from_int(-1) : F->one();
    h.set(i + 1, i + 1, s);
    models.push_back(h);
    parity.push_back(0);
    labels.push_back("H(" + std::to_string(i + 1) + ")");
    std::vector<int> w(N, 0);
    weights.push_back(w);
    cartan.push_back(static_cast<int>(models.size()) - 1);
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (a == b) continue;
        int pr = (par(a) + par(b)) % 2;
        if (pr != pass) continue;
        models.push_back(unit_matrix(F, N, a, b));
        parity.push_back(pr);
        std::ostringstream os;
        os << "E(" << a + 1 << "," << b + 1 << ")";
        labels.push_back(os.str());
        std::vector<int> w(N, 0);
        w[a] += 1;
        w[b] -= 1;
        weights.push_back(w);
      }
  }
  std::vector<int> wpos(N);
  for (int i = 0; i < N; ++i) wpos[i] = i;
  return build_from_model(std::move(F), "sl", m, n, std::move(models), std::move(parity),
                          std::move(labels), std::move(weights), N, std::move(cartan),
                          std::move(wpos));
}

namespace {

// Anti-diagonal split form on V = V0 | V1: G0 the anti-identity on V0,
// G1 = [[0, J],[-J, 0]] on V1 (J the anti-identity on half of V1).
Matrix osp_gram(FieldPtr F, int m0, int m1) {
  int N = m0 + m1;
  Matrix G(F, N, N);
  for (int i = 0; i < m0; ++i) G.set(i, m0 - 1 - i, F->one());
  int h = m1 / 2;
  for (int i = 0; i < h; ++i) {
    G.set(m0 + i, m0 + m1 - 1 - i, F->one());
    G.set(m0 + m1 - 1 - i, m0 + i, F->from_int(-1));
  }
  return G;
}

// integer diag-coordinate of index a (weight of the a-th basis vector of V)
std::vector<int> osp_coord(int m0, int m1, int rank0, int rank1, int a) {
  std::vector<int> w(rank0 + rank1, 0);
  if (a < m0) {
    if (a < rank0)
      w[a] = 1;
    else if (m0 - 1 - a < rank0)
      w[m0 - 1 - a] = -1;
  } else {
    int b = a - m0;
    if (b < rank1)
      w[rank0 + b] = 1;
    else
      w[rank0 + (m1 - 1 - b)] = -1;
  }
  return w;
}

}  // namespace

AlgebraPtr construct_osp(FieldPtr F, int m0, int m1) {
  if (m0 < 0 || m1 < 0 || m1 % 2 != 0 || m0 + m1 < 3)
    throw std::invalid_argument("osp(m0|m1): need m1 even and m0+m1 >= 3");
  int N = m0 + m1;
  Matrix G = osp_gram(F, m0, m1);
  const FieldCtx& FF = *F;
  auto vpar = [&](int a) { return a < m0 ? 0 : 1; };
  int rank0 = m0 / 2, rank1 = m1 / 2;
  int rank = rank0 + rank1;

  // solve the defining condition per parity block:
  //   phi(f x, y) = -(-1)^{|f||x|} phi(x, f y)
  std::vector<Matrix> models;
  std::vector<int> parity;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> weights;
  std::vector<int> cartan;
  for (int pass = 0; pass < 2; ++pass) {
    // unknowns: entries f[r][c] with vpar(r)+vpar(c) = pass (mod 2)
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        if ((vpar(r) + vpar(c)) % 2 == pass) slots.emplace_back(r, c);
    Matrix cond(F, N * N, static_cast<int>(slots.size()));
    int row = 0;
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y, ++row) {
        // phi(f e_x, e_y) + (-1)^{pass*|x|} phi(e_x, f e_y) = 0
        for (size_t s = 0; s < slots.size(); ++s) {
          auto [r, c] = slots[s];
          Scalar v = FF.zero();
          if (c == x) v = FF.add(v, G.at(r, y));  // f e_x = sum_r f[r][x] e_r
          Scalar w = (c == y) ? G.at(x, r) : FF.zero();
          if (!FF.is_zero(w)) {
            bool neg = (pass * vpar(x)) % 2 == 1;
            v = neg ? FF.sub(v, w) : FF.add(v, w);
          }
          cond.set(row, static_cast<int>(s), v);
        }
      }
    auto null = kernel_basis(cond);
    // split each solution by weight class so basis vectors are weight vectors
    std::map<std::vector<int>, RowSpan> classes;
    for (const Vec& sol : null) {
      std::map<std::vector<int>, Vec> parts;
      for (size_t s = 0; s < slots.size(); ++s) {
        if (FF.is_zero(sol[s])) continue;
        auto [r, c] = slots[s];
        std::vector<int> w(rank, 0);
        auto wr = osp_coord(m0, m1, rank0, rank1, r);
        auto wc = osp_coord(m0, m1, rank0, rank1, c);
        for (int i = 0; i < rank; ++i) w[i] = wr[i] - wc[i];
        auto it = parts.find(w);
        if (it == parts.end()) it = parts.emplace(w, vec_zero(static_cast<int>(slots.size()))).first;
        it->second[s] = sol[s];
      }
      for (auto& [w, v] : parts) {
        auto it = classes.find(w);
        if (it == classes.end())
          it = classes.emplace(w, RowSpan(F, static_cast<int>(slots.size()))).first;
        it->second.insert(v);
      }
    }
    // verify class projections stayed inside the solution space
    RowSpan solspan(F, static_cast<int>(slots.size()));
    for (const Vec& sol : null) solspan.insert(sol);
    int total = 0;
    int idx = 0;
    for (auto& [w, span] : classes) {
      for (const Vec& v : span.rows()) {
        if (!solspan.contains(v))
          throw std::logic_error("osp: weight projection left the algebra");
        Matrix M(F, N, N);
        for (size_t s = 0; s < slots.size(); ++s)
          if (!FF.is_zero(v[s])) M.set(slots[s].first, slots[s].second, v[s]);
        models.push_back(M);
        parity.push_back(pass);
        bool zero_w = std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
        std::ostringstream os;
        os << (pass == 0 ? "B" : "O") << idx << "[";
        for (int i = 0; i < rank; ++i) os << (i ? "," : "") << w[i];
        os << "]";
        labels.push_back(os.str());
        weights.push_back(w);
        if (pass == 0 && zero_w) cartan.push_back(static_cast<int>(models.size()) - 1);
        ++idx;
        ++total;
      }
    }
    if (total != static_cast<int>(null.size()))
      throw std::logic_error("osp: weight split changed the dimension");
  }
  std::string fam = (m0 % 2 == 1) ? "ospB" : (m0 == 2 ? "ospC" : "ospD");
  std::vector<int> wpos;
  for (int i = 0; i < rank0; ++i) wpos.push_back(i);
  for (int i = 0; i < rank1; ++i) wpos.push_back(m0 + i);
  auto out = build_from_model(std::move(F), fam, m0, m1, std::move(models), std::move(parity),
                              std::move(labels), std::move(weights), rank, std::move(cartan),
                              std::move(wpos));
  out->model_gram = G;
  return out;
}

AlgebraPtr construct_osp12(FieldPtr F) {
  // 3x3 model on V = K^{1|2}; the five standard basis elements
  auto M = [&](std::initializer_list<long> entries) {
    Matrix X(F, 3, 3);
    int i = 0;
    for (long e : entries) {
      X.set(i / 3, i % 3, F->from_int(e));
      ++i;
    }
    return X;
  };
  Matrix e = M({0, 0, 0, 0, 0, 1, 0, 0, 0});
  Matrix h = M({0, 0, 0, 0, 1, 0, 0, 0, -1});
  Matrix f = M({0, 0, 0, 0, 0, 0, 0, 1, 0});
  Matrix E = M({0, 0, 1, 1, 0, 0, 0, 0, 0});
  Matrix Fo = M({0, 1, 0, 0, 0, 0, -1, 0, 0});
  std::vector<Matrix> models = {e, h, f, E, Fo};
  std::vector<int> parity = {0, 0, 0, 1, 1};
  std::vector<std::string> labels = {"e", "h", "f", "E", "F"};
  std::vector<std::vector<int>> weights = {{2}, {0}, {-2}, {1}, {-1}};
  auto g = build_from_model(F, "osp12", 1, 2, std::move(models), std::move(parity),
                            std::move(labels), std::move(weights), 1, {1}, {1});
  {
    Matrix G(F, 3, 3);
    G.set(0, 0, F->one());
    G.set(1, 2, F->one());
    G.set(2, 1, F->from_int(-1));
    g->model_gram = G;
  }
  // hard-coded p-power table e -> 0, h -> h, f -> 0, cross-checked against
  // the matrix model
  const FieldCtx& FF = *g->field;
  std::vector<Vec> table(3, Vec(5, FF.zero()));
  table[1][1] = FF.one();
  for (int i = 0; i < 3; ++i)
    if (!(g->pmap[i] == table[i]))
      throw std::logic_error("osp12: matrix-model p-powers disagree with the standard table");
  g->pmap = table;
  return g;
}

CheckReport verify_superalgebra(const LieSuperAlgebra& g) {
  const FieldCtx& F = *g.field;
  int d = g.dim();
  auto fail = [&](const std::string& s) { return CheckReport{false, s}; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int pij = (g.parity[i] + g.parity[j]) % 2;
      for (int k = 0; k < d; ++k)
        if (!F.is_zero(g.sc[i][j][k]) && g.parity[k] != pij)
          return fail("parity compatibility fails at [" + g.labels[i] + "," + g.labels[j] + "]");
      // super anticommutativity
      Vec lhs = g.sc[i][j];
      Vec rhs = g.sc[j][i];
      Scalar sign = (g.parity[i] == 1 && g.parity[j] == 1) ? F.one() : F.from_int(-1);
      if (!(lhs == vec_scale(F, sign, rhs)))
        return fail("anticommutativity fails at [" + g.labels[i] + "," + g.labels[j] + "]");
    }
  // super Jacobi in Leibniz form:
  // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec a = g.bracket(vec_unit(F, d, i), g.sc[j][k]);
        Vec b = g.bracket(g.sc[i][j], vec_unit(F, d, k));
        Vec c = g.bracket(vec_unit(F, d, j), g.sc[i][k]);
        Scalar sg = (g.parity[i] == 1 && g.parity[j] == 1) ? F.from_int(-1) : F.one();
        Vec rhs = vec_add(F, b, vec_scale(F, sg, c));
        if (!(a == rhs))
          return fail("super Jacobi fails at (" + g.labels[i] + "," + g.labels[j] + "," +
                      g.labels[k] + ")");
      }
  if (g.form) {
    const Matrix& G = *g.form;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (g.parity[i] != g.parity[j] && !F.is_zero(G.at(i, j)))
          return fail("form is not even");
        Scalar sym = (g.parity[i] == 1 && g.parity[j] == 1) ? F.from_int(-1) : F.one();
        if (!(G.at(i, j) == F.mul(sym, G.at(j, i)))) return fail("form is not supersymmetric");
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          // ([b_i, b_j], b_k) = (b_i, [b_j, b_k])
          Scalar lhs = F.zero(), rhs = F.zero();
          for (int l = 0; l < d; ++l) {
            lhs = F.add(lhs, F.mul(g.sc[i][j][l], G.at(l, k)));
            rhs = F.add(rhs, F.mul(G.at(i, l), g.sc[j][k][l]));
          }
          if (!(lhs == rhs)) return fail("form is not invariant");
        }
    if (g.form_nondegenerate && rank(G) != d) return fail("form nondegeneracy flag is wrong");
  }
  return {true, ""};
}

CheckReport check_restricted(const LieSuperAlgebra& g, std::uint64_t seed, int sample_pairs) {
  const FieldCtx& F = *g.field;
  int d = g.dim();
  long p = F.p();
  auto fail = [&](const std::string& s) { return CheckReport{false, s}; };

  // stored table matches the model p-power
  if (!g.model.empty()) {
    for (int i = 0; i < g.dim0; ++i) {
      Vec mp = g.coords_of_model(matrix_pow(g.model[i], static_cast<std::uint64_t>(p)));
      if (!(mp == g.pmap[i]))
        return fail("p-power table disagrees with matrix model at " + g.labels[i]);
    }
  }

  // (b) [x^{[p]}, y] = (ad x)^p y for all even basis x and all basis y
  for (int i = 0; i < g.dim0; ++i) {
    Matrix adx = g.ad(vec_unit(F, d, i));
    Matrix lhs = g.ad(g.pmap[i]);
    Matrix rhs = matrix_pow(adx, static_cast<std::uint64_t>(p));
    if (!(lhs == rhs)) return fail("axiom (b) fails at basis element " + g.labels[i]);
  }

  std::mt19937_64 rng(seed);
  if (!g.model.empty()) {
    // (a) p-semilinearity on random scalar multiples of basis elements
    for (int t = 0; t < sample_pairs; ++t) {
      int i = static_cast<int>(rng() % g.dim0);
      Scalar kk = F.random(rng);
      Vec x = vec_scale(F, kk, vec_unit(F, d, i));
      Vec lhs = g.pmap_of(x);
      Vec rhs = vec_scale(F, F.pow(kk, static_cast<std::uint64_t>(p)), g.pmap[i]);
      if (!(lhs == rhs)) return fail("axiom (a) fails on a random multiple of " + g.labels[i]);
    }
    // (c) (x+y)^{[p]} = x^{[p]} + y^{[p]} + sum s_i(x,y), where i*s_i is the
    // coefficient of lambda^{i-1} in (ad(lambda x + y))^{p-1}(x)
    for (int t = 0; t < sample_pairs; ++t) {
      Vec x(d, F.zero()), y(d, F.zero());
      for (int i = 0; i < g.dim0; ++i) {
        x[i] = F.random(rng);
        y[i] = F.random(rng);
      }
      // polynomial in lambda with vector coefficients, degree grows by one
      // per application of ad(lambda x + y)
      std::vector<Vec> w = {x};
      for (int step = 0; step < p - 1; ++step) {
        std::vector<Vec> nw(w.size() + 1, Vec(d, F.zero()));
        for (size_t deg = 0; deg < w.size(); ++deg) {
          Vec bx = g.bracket(x, w[deg]);
          Vec by = g.bracket(y, w[deg]);
          nw[deg + 1] = vec_add(F, nw[deg + 1], bx);
          nw[deg] = vec_add(F, nw[deg], by);
        }
        w = std::move(nw);
      }
      Vec sum(d, F.zero());
      for (long i = 1; i <= p - 1; ++i) {
        Scalar inv_i = F.inv(F.from_int(i));
        vec_axpy(F, sum, inv_i, w[i - 1]);
      }
      Vec lhs = g.pmap_of(vec_add(F, x, y));
      Vec rhs = vec_add(F, vec_add(F, g.pmap_of(x), g.pmap_of(y)), sum);
      if (!(lhs == rhs)) return fail("axiom (c) fails on a random even pair");
    }
  }
  return {true, ""};
}

CentralizerData centralizer(const LieSuperAlgebra& g, const PChar& chi) {
  const FieldCtx& F = *g.field;
  int d = g.dim();
  CentralizerData out;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<int> block;
    for (int i = 0; i < d; ++i)
      if (g.parity[i] == pass) block.push_back(i);
    Matrix M(g.field, d, static_cast<int>(block.size()));
    for (size_t c = 0; c < block.size(); ++c)
      for (int j = 0; j < d; ++j) M.set(j, static_cast<int>(c), g.chi_value(chi, g.sc[block[c]][j]));
    auto null = kernel_basis(M);
    for (const Vec& v : null) {
      Vec full(d, F.zero());
      for (size_t c = 0; c < block.size(); ++c) full[block[c]] = v[c];
      (pass == 0 ? out.basis_even : out.basis_odd).push_back(full);
    }
  }
  out.kw.d0 = g.dim0 - static_cast<int>(out.basis_even.size());
  out.kw.d1 = g.dim1 - static_cast<int>(out.basis_odd.size());
  if (out.kw.d0 % 2 != 0)
    throw std::logic_error("centralizer: d0 is odd (internal inconsistency)");
  std::uint64_t div = checked_pow(static_cast<std::uint64_t>(g.field->p()), out.kw.d0 / 2);
  int c1 = (out.kw.d1 + 1) / 2;  // standard ceiling of d1/2
  for (int i = 0; i < c1; ++i) {
    if (div > (1ULL << 62)) throw std::overflow_error("kw divisor exceeds 2^62");
    div = div * 2;
  }
  out.kw.divisor = div;
  return out;
}

std::uint64_t super_kw_divisor(const LieSuperAlgebra& g, const PChar& chi) {
  return centralizer(g, chi).kw.divisor;
}

PChar chi_from_element(const LieSuperAlgebra& g, const Vec& x) {
  if (!g.form || !g.form_nondegenerate)
    throw std::domain_error("chi_from_element: form is singular or missing");
  const FieldCtx& F = *g.field;
  PChar chi;
  chi.even_dual.assign(g.dim0, F.zero());
  for (int i = 0; i < g.dim0; ++i) {
    Scalar t = F.zero();
    for (int j = 0; j < g.dim(); ++j)
      if (!F.is_zero(x[j])) t = F.add(t, F.mul(x[j], g.form->at(j, i)));
    chi.even_dual[i] = t;
  }
  return chi;
}

Vec element_from_chi(const LieSuperAlgebra& g, const PChar& chi) {
  if (!g.form || !g.form_nondegenerate)
    throw std::domain_error("element_from_chi: form is singular or missing");
  const FieldCtx& F = *g.field;
  Matrix G0(g.field, g.dim0, g.dim0);
  for (int i = 0; i < g.dim0; ++i)
    for (int j = 0; j < g.dim0; ++j) G0.set(i, j, g.form->at(i, j));
  // solve x^T G0 = chi  <=>  G0^T x = chi
  Vec x;
  if (!solve(G0.transpose(), chi.even_dual, x))
    throw std::domain_error("element_from_chi: even form is singular");
  Vec full(g.dim(), F.zero());
  for (int i = 0; i < g.dim0; ++i) full[i] = x[i];
  return full;
}

Vec Subalgebra::to_parent(const Vec& sub_vec) const {
  const FieldCtx& F = *alg->field;
  Vec r(embedding.empty() ? 0 : embedding[0].size(), F.zero());
  if (embedding.empty()) return r;
  for (size_t i = 0; i < embedding.size(); ++i) vec_axpy(F, r, sub_vec[i], embedding[i]);
  return r;
}

Vec Subalgebra::from_parent(const Vec& parent_vec) const {
  const FieldCtx& F = *alg->field;
  if (embedding.empty()) {
    if (!vec_is_zero(parent_vec)) throw std::domain_error("from_parent: not in subalgebra");
    return {};
  }
  if (!solver_) {
    auto sp = std::make_shared<TrackedSpan>(alg->field, static_cast<int>(embedding[0].size()),
                                            static_cast<int>(embedding.size()));
    for (size_t i = 0; i < embedding.size(); ++i)
      if (!sp->insert(embedding[i], vec_unit(F, static_cast<int>(embedding.size()),
                                             static_cast<int>(i))))
        throw std::logic_error("Subalgebra: embedding vectors dependent");
    solver_ = std::move(sp);
  }
  Vec out;
  if (!solver_->express(parent_vec, out))
    throw std::domain_error("from_parent: vector not in subalgebra");
  return out;
}

Subalgebra subalgebra_from_basis(const AlgebraPtr& g, const std::vector<Vec>& span_vecs,
                                 bool require_p_closed) {
  const FieldCtx& F = *g->field;
  int d = g->dim();
  // split by parity part; both parts of a member must lie in the span
  RowSpan full(g->field, d);
  for (const Vec& v : span_vecs) full.insert(v);
  RowSpan sub(g->field, d);
  for (const Vec& v : span_vecs) {
    Vec ev(d, F.zero()), od(d, F.zero());
    for (int i = 0; i < d; ++i) (g->parity[i] == 0 ? ev[i] : od[i]) = v[i];
    if (!full.contains(ev))
      throw std::invalid_argument("subalgebra span is not parity-homogeneous");
    sub.insert(ev);
    sub.insert(od);
  }
  Subalgebra S;
  S.embedding.assign(sub.rows().begin(), sub.rows().end());
  int sd = static_cast<int>(S.embedding.size());

  auto alg = std::make_shared<LieSuperAlgebra>();
  alg->field = g->field;
  alg->family = "sub(" + g->family + ")";
  alg->dim0 = 0;
  for (const Vec& v : S.embedding) {
    int par = 1;
    for (int i = 0; i < g->dim0; ++i)
      if (!F.is_zero(v[i])) par = 0;
    alg->parity.push_back(par);
    if (par == 0) alg->dim0++;
  }
  alg->dim1 = sd - alg->dim0;
  for (int i = 1; i < sd; ++i)
    if (alg->parity[i] < alg->parity[i - 1])
      throw std::logic_error("subalgebra basis not parity sorted");
  for (int i = 0; i < sd; ++i) {
    // prefer a plain parent label when the basis vector is a unit vector
    int support = -1;
    bool unitlike = true;
    for (int j = 0; j < d; ++j) {
      if (F.is_zero(S.embedding[i][j])) continue;
      if (support >= 0) {
        unitlike = false;
        break;
      }
      support = j;
    }
    if (unitlike && support >= 0 && S.embedding[i][support] == F.one())
      alg->labels.push_back(g->labels[support]);
    else
      alg->labels.push_back("s" + std::to_string(i));
  }
  S.alg = alg;

  alg->sc.assign(sd, std::vector<Vec>(sd));
  for (int i = 0; i < sd; ++i)
    for (int j = 0; j < sd; ++j) {
      Vec br = g->bracket(S.embedding[i], S.embedding[j]);
      alg->sc[i][j] = S.from_parent(br);  // throws when not closed
    }
  alg->pmap.clear();
  for (int i = 0; i < alg->dim0; ++i) {
    Vec im = g->pmap_of(S.embedding[i]);
    if (require_p_closed) {
      alg->pmap.push_back(S.from_parent(im));
    } else {
      try {
        alg->pmap.push_back(S.from_parent(im));
      } catch (const std::domain_error&) {
        alg->pmap.push_back(Vec(sd, F.zero()));
      }
    }
  }
  if (!g->model.empty()) {
    alg->model_m0 = g->model_m0;
    alg->model_m1 = g->model_m1;
    for (int i = 0; i < sd; ++i) alg->model.push_back(g->model_of(S.embedding[i]));
  }
  if (g->form) {
    Matrix G(g->field, sd, sd);
    for (int i = 0; i < sd; ++i)
      for (int j = 0; j < sd; ++j) {
        Scalar t = F.zero();
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            if (!F.is_zero(S.embedding[i][a]) && !F.is_zero(S.embedding[j][b]))
              t = F.add(t, F.mul(F.mul(S.embedding[i][a], S.embedding[j][b]), g->form->at(a, b)));
        G.set(i, j, t);
      }
    alg->form = G;
    alg->form_nondegenerate = (sd == 0) || (rank(G) == sd);
  }
  return S;
}

AlgebraPtr rebase_algebra(const AlgebraPtr& g, const std::vector<Vec>& new_basis,
                          const std::vector<std::string>* labels) {
  const FieldCtx& F = *g->field;
  int d = g->dim();
  if (static_cast<int>(new_basis.size()) != d)
    throw std::invalid_argument("rebase_algebra: basis size mismatch");
  TrackedSpan span(g->field, d, d);
  for (int i = 0; i < d; ++i)
    if (!span.insert(new_basis[i], vec_unit(F, d, i)))
      throw std::invalid_argument("rebase_algebra: new basis is dependent");
  auto express = [&](const Vec& v) {
    Vec c;
    if (!span.express(v, c)) throw std::logic_error("rebase_algebra: expression failed");
    return c;
  };

  auto out = std::make_shared<LieSuperAlgebra>();
  out->field = g->field;
  out->family = g->family;
  for (int i = 0; i < d; ++i) {
    int par = -1;
    for (int j = 0; j < d; ++j) {
      if (F.is_zero(new_basis[i][j])) continue;
      if (par < 0)
        par = g->parity[j];
      else if (par != g->parity[j])
        throw std::invalid_argument("rebase_algebra: basis vector not parity-homogeneous");
    }
    if (par < 0) throw std::invalid_argument("rebase_algebra: zero basis vector");
    out->parity.push_back(par);
  }
  out->dim0 = 0;
  for (int x : out->parity)
    if (x == 0) out->dim0++;
  out->dim1 = d - out->dim0;
  for (int i = 1; i < d; ++i)
    if (out->parity[i] < out->parity[i - 1])
      throw std::invalid_argument("rebase_algebra: even elements must come first");

  for (int i = 0; i < d; ++i) {
    if (labels) {
      out->labels.push_back((*labels)[i]);
      continue;
    }
    int support = -1;
    bool unitlike = true;
    for (int j = 0; j < d; ++j) {
      if (F.is_zero(new_basis[i][j])) continue;
      if (support >= 0) {
        unitlike = false;
        break;
      }
      support = j;
    }
    out->labels.push_back(unitlike && support >= 0 ? g->labels[support]
                                                   : "b" + std::to_string(i));
  }

  out->sc.assign(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out->sc[i][j] = express(g->bracket(new_basis[i], new_basis[j]));
  for (int i = 0; i < out->dim0; ++i) out->pmap.push_back(express(g->pmap_of(new_basis[i])));
  if (!g->model.empty()) {
    out->model_m0 = g->model_m0;
    out->model_m1 = g->model_m1;
    for (int i = 0; i < d; ++i) out->model.push_back(g->model_of(new_basis[i]));
    out->model_gram = g->model_gram;
  }
  if (g->form) {
    Matrix G(g->field, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Scalar t = F.zero();
        for (int a = 0; a < d; ++a) {
          if (F.is_zero(new_basis[i][a])) continue;
          for (int b = 0; b < d; ++b)
            if (!F.is_zero(new_basis[j][b]))
              t = F.add(t, F.mul(F.mul(new_basis[i][a], new_basis[j][b]), g->form->at(a, b)));
        }
        G.set(i, j, t);
      }
    out->form = G;
    out->form_nondegenerate = g->form_nondegenerate;
  }
  return out;
}

PChar transport_chi(const LieSuperAlgebra& old_g, const PChar& chi,
                    const std::vector<Vec>& new_basis) {
  PChar out;
  int d0 = 0;
  for (const Vec& v : new_basis) {
    bool even = true;
    for (int j = old_g.dim0; j < old_g.dim(); ++j)
      if (!old_g.field->is_zero(v[j])) even = false;
    if (even) d0++;
  }
  out.even_dual.assign(d0, old_g.field->zero());
  for (int i = 0; i < d0; ++i) out.even_dual[i] = old_g.chi_value(chi, new_basis[i]);
  return out;
}

PChar restrict_chi(const LieSuperAlgebra& parent, const PChar& chi, const Subalgebra& sub) {
  PChar out;
  out.even_dual.assign(sub.alg->dim0, parent.field->zero());
  for (int i = 0; i < sub.alg->dim0; ++i)
    out.even_dual[i] = parent.chi_value(chi, sub.embedding[i]);
  return out;
}

PChar zero_chi(const LieSuperAlgebra& g) {
  PChar c;
  c.even_dual.assign(g.dim0, g.field->zero());
  return c;
}

PChar chi_from_values(const LieSuperAlgebra& g, const std::vector<std::pair<int, Scalar>>& vals) {
  PChar c = zero_chi(g);
  for (auto& [i, v] : vals) {
    if (i < 0 || i >= g.dim0) throw std::invalid_argument("chi_from_values: not an even index");
    c.even_dual[i] = v;
  }
  return c;
}

}  // namespace modsuper
