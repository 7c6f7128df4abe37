#include "modsuper/grading.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace modsuper {

std::vector<int> ZGrading::degree_block(int degree, int parity) const {
  std::vector<int> out;
  for (int i = 0; i < graded->dim(); ++i)
    if (g_degrees[i] == degree && graded->parity[i] == parity) out.push_back(i);
  return out;
}

std::pair<int, int> ZGrading::block_dims(int degree) const {
  return {static_cast<int>(degree_block(degree, 0).size()),
          static_cast<int>(degree_block(degree, 1).size())};
}

std::vector<int> grade_defining_space(const JordanData& jd) {
  std::vector<int> deg;
  for (size_t i = 0; i < jd.partition.size(); ++i) {
    int lam = jd.partition[i];
    for (int j = lam - 1; j >= 0; --j) deg.push_back(2 * j + 1 - lam);
  }
  return deg;
}

namespace {

// form-adapted chains for one parity block: X in so/sp(V_block, G), the
// output chain degrees pair only against opposite degrees
JordanData adapt_block(FieldPtr Fp, const Matrix& X, const Matrix& G, std::uint64_t seed,
                       bool randomize) {
  const FieldCtx& F = *Fp;
  int n = X.rows();
  JordanData jd;
  jd.dim = n;
  if (n == 0) return jd;

  std::mt19937_64 rng(seed);

  // current subspace: columns of C (independent); X stable, G nondegenerate
  Matrix C = Matrix::identity(Fp, n);

  std::vector<std::pair<int, Vec>> chains;  // (length, head in block coords)

  while (C.cols() > 0) {
    int w = C.cols();
    // restricted operator: X C = C XW
    Matrix XW(Fp, w, w);
    for (int c = 0; c < w; ++c) {
      Vec img = X.apply(C.col(c));
      Vec coeff;
      if (!solve(C, img, coeff))
        throw std::logic_error("adapt_block: subspace is not X-stable");
      for (int r = 0; r < w; ++r) XW.set(r, c, coeff[r]);
    }
    Matrix GW = C.transpose() * G * C;

    // maximal chain length L in the current space
    int L = 0;
    {
      Matrix P = XW;
      L = 1;
      while (!P.is_zero()) {
        P = P * XW;
        ++L;
        if (L > w + 1) throw std::invalid_argument("adapt_block: X is not nilpotent");
      }
    }

    Matrix XL1 = matrix_pow(XW, static_cast<std::uint64_t>(L - 1));

    // heads: complement of ker X^{L-1} + im X inside the current space
    RowSpan span(Fp, w);
    for (const Vec& v : kernel_basis(XL1)) span.insert(v);
    for (int c = 0; c < w; ++c) span.insert(XW.col(c));
    std::vector<Vec> heads;
    std::vector<int> candidate_order(w);
    for (int i = 0; i < w; ++i) candidate_order[i] = i;
    if (randomize) std::shuffle(candidate_order.begin(), candidate_order.end(), rng);
    for (int i : candidate_order) {
      Vec e = vec_unit(F, w, i);
      if (span.insert(e)) heads.push_back(e);
    }
    if (heads.empty()) throw std::logic_error("adapt_block: no chain heads found");

    auto pairing = [&](const Vec& a, const Vec& b, int power) {
      Vec xb = b;
      for (int t = 0; t < power; ++t) xb = XW.apply(xb);
      Scalar s = F.zero();
      for (int r = 0; r < w; ++r)
        for (int c = 0; c < w; ++c)
          if (!F.is_zero(a[r]) && !F.is_zero(xb[c])) s = F.add(s, F.mul(F.mul(a[r], xb[c]), GW.at(r, c)));
      return s;
    };

    // top form b(u, v) = phi(u, X^{L-1} v) on the heads
    int h = static_cast<int>(heads.size());
    Matrix B(Fp, h, h);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < h; ++j) B.set(i, j, pairing(heads[i], heads[j], L - 1));

    // anisotropic vector if one exists
    Vec u;
    bool found_single = false;
    for (int i = 0; i < h && !found_single; ++i)
      if (!F.is_zero(B.at(i, i))) {
        u = heads[i];
        found_single = true;
      }
    if (!found_single) {
      for (int i = 0; i < h && !found_single; ++i)
        for (int j = i + 1; j < h && !found_single; ++j) {
          Scalar two_bij = F.add(B.at(i, j), B.at(j, i));
          if (!F.is_zero(two_bij)) {
            // u = heads_i + heads_j has self-pairing 2 b_ij when it is
            // symmetric; check directly
            Vec cand = vec_add(F, heads[i], heads[j]);
            if (!F.is_zero(pairing(cand, cand, L - 1))) {
              u = cand;
              found_single = true;
            }
          }
        }
    }

    std::vector<Vec> new_chain_heads;
    if (found_single) {
      Scalar top = pairing(u, u, L - 1);
      for (int m = L - 2; m >= 0; --m) {
        Scalar tm = pairing(u, u, m);
        if (F.is_zero(tm)) continue;
        int s = L - 1 - m;
        if (s % 2 != 0)
          throw std::logic_error("adapt_block: unexpected odd correction level");
        Scalar c = F.neg(F.div(tm, F.mul(F.from_int(2), top)));
        Vec xsu = u;
        for (int t = 0; t < s; ++t) xsu = XW.apply(xsu);
        vec_axpy(F, u, c, xsu);
      }
      new_chain_heads.push_back(u);
    } else {
      // alternating top form: hyperbolic pair of heads
      int pi = -1, pj = -1;
      for (int i = 0; i < h && pi < 0; ++i)
        for (int j = 0; j < h; ++j)
          if (i != j && !F.is_zero(B.at(i, j))) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) throw std::domain_error("adapt_block: degenerate top pairing");
      Vec uu = heads[pi];
      Vec ww = vec_scale(F, F.inv(B.at(pi, pj)), heads[pj]);
      for (int m = L - 2; m >= 0; --m) {
        int s = L - 1 - m;
        Vec xsu = uu, xsw = ww;
        for (int t = 0; t < s; ++t) {
          xsu = XW.apply(xsu);
          xsw = XW.apply(xsw);
        }
        Scalar tuu = pairing(uu, uu, m);
        if (!F.is_zero(tuu)) {
          if (s % 2 == 0) throw std::logic_error("adapt_block: even-level self pairing");
          vec_axpy(F, uu, F.neg(F.div(tuu, F.from_int(2))), xsw);
        }
        Scalar tww = pairing(ww, ww, m);
        if (!F.is_zero(tww)) {
          if (s % 2 == 0) throw std::logic_error("adapt_block: even-level self pairing");
          vec_axpy(F, ww, F.div(tww, F.from_int(2)), xsu);
        }
        // refresh the shifted vectors after the self corrections
        xsu = uu;
        for (int t = 0; t < s; ++t) xsu = XW.apply(xsu);
        Scalar tuw = pairing(uu, ww, m);
        if (!F.is_zero(tuw)) {
          Scalar sign = (s % 2 == 0) ? F.one() : F.from_int(-1);
          vec_axpy(F, uu, F.neg(F.mul(tuw, sign)), xsu);
        }
      }
      new_chain_heads.push_back(uu);
      new_chain_heads.push_back(ww);
    }

    // collect the extracted chains and pass to the orthogonal complement
    std::vector<Vec> chain_vectors;
    for (const Vec& head : new_chain_heads) {
      chains.emplace_back(L, C.apply(head));
      Vec v = head;
      for (int t = 0; t < L; ++t) {
        chain_vectors.push_back(v);
        v = XW.apply(v);
      }
    }
    // perp inside W
    Matrix rows(Fp, static_cast<int>(chain_vectors.size()), w);
    for (size_t i = 0; i < chain_vectors.size(); ++i) {
      // row_i = chain_i^T GW
      for (int c = 0; c < w; ++c) {
        Scalar s = F.zero();
        for (int r = 0; r < w; ++r)
          if (!F.is_zero(chain_vectors[i][r])) s = F.add(s, F.mul(chain_vectors[i][r], GW.at(r, c)));
        rows.set(static_cast<int>(i), c, s);
      }
    }
    auto perp = kernel_basis(rows);
    Matrix newC(Fp, n, static_cast<int>(perp.size()));
    for (size_t c = 0; c < perp.size(); ++c) {
      Vec v = C.apply(perp[c]);
      for (int r = 0; r < n; ++r) newC.set(r, static_cast<int>(c), v[r]);
    }
    if (newC.cols() != w - static_cast<int>(chain_vectors.size()))
      throw std::domain_error("adapt_block: perp has wrong dimension");
    C = std::move(newC);
  }

  std::stable_sort(chains.begin(), chains.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& [len, head] : chains) {
    jd.partition.push_back(len);
    jd.chain_heads.push_back(head);
  }
  return jd;
}

bool degrees_pair_correctly(const FieldCtx& F, const Matrix& X, const Matrix& G,
                            const JordanData& jd) {
  // chain basis columns with their degrees; phi(x, y) != 0 forces deg sum 0
  Matrix B = chain_basis_matrix(X, jd);
  std::vector<int> deg = grade_defining_space(jd);
  Matrix P = B.transpose() * G * B;
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j)
      if (!F.is_zero(P.at(i, j)) && deg[i] + deg[j] != 0) return false;
  return true;
}

}  // namespace

std::pair<JordanData, JordanData> osp_compatible_basis(const AlgebraPtr& g, const Matrix& Xmodel,
                                                       std::uint64_t seed) {
  if (!g->model_gram) throw std::invalid_argument("osp_compatible_basis: no model form");
  const FieldCtx& F = *g->field;
  int m0 = g->model_m0, m1 = g->model_m1;
  Matrix X0(g->field, m0, m0), X1(g->field, m1, m1);
  Matrix G0(g->field, m0, m0), G1(g->field, m1, m1);
  for (int i = 0; i < m0; ++i)
    for (int j = 0; j < m0; ++j) {
      X0.set(i, j, Xmodel.at(i, j));
      G0.set(i, j, g->model_gram->at(i, j));
    }
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m1; ++j) {
      X1.set(i, j, Xmodel.at(m0 + i, m0 + j));
      G1.set(i, j, g->model_gram->at(m0 + i, m0 + j));
    }
  for (int attempt = 0; attempt < 8; ++attempt) {
    JordanData jd0 = adapt_block(g->field, X0, G0, seed + attempt, attempt > 0);
    JordanData jd1 = adapt_block(g->field, X1, G1, seed + attempt, attempt > 0);
    if (degrees_pair_correctly(F, X0, G0, jd0) && degrees_pair_correctly(F, X1, G1, jd1))
      return {jd0, jd1};
  }
  throw std::domain_error(
      "osp_compatible_basis: no form-compatible chain basis found within the retry budget");
}

ZGrading induce_grading(const AlgebraPtr& g, const Vec& X, std::uint64_t seed) {
  const FieldCtx& F = *g->field;
  if (g->model.empty()) throw std::invalid_argument("induce_grading: algebra has no matrix model");
  if (!g->is_even_element(X)) throw std::invalid_argument("induce_grading: X must be even");
  Matrix Xm = g->model_of(X);
  int m0 = g->model_m0, m1 = g->model_m1;

  JordanData jd0, jd1;
  if (g->model_gram) {
    auto [a, b] = osp_compatible_basis(g, Xm, seed);
    jd0 = a;
    jd1 = b;
  } else {
    Matrix X0(g->field, m0, m0), X1(g->field, m1, m1);
    for (int i = 0; i < m0; ++i)
      for (int j = 0; j < m0; ++j) X0.set(i, j, Xm.at(i, j));
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m1; ++j) X1.set(i, j, Xm.at(m0 + i, m0 + j));
    jd0 = nilpotent_jordan(X0);
    jd1 = nilpotent_jordan(X1);
  }

  Matrix X0(g->field, m0, m0), X1(g->field, m1, m1);
  for (int i = 0; i < m0; ++i)
    for (int j = 0; j < m0; ++j) X0.set(i, j, Xm.at(i, j));
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m1; ++j) X1.set(i, j, Xm.at(m0 + i, m0 + j));

  Matrix P0 = chain_basis_matrix(X0, jd0);
  Matrix P1 = chain_basis_matrix(X1, jd1);
  int N = m0 + m1;
  Matrix P(g->field, N, N);
  for (int i = 0; i < m0; ++i)
    for (int j = 0; j < m0; ++j) P.set(i, j, P0.at(i, j));
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m1; ++j) P.set(m0 + i, m0 + j, P1.at(i, j));
  Matrix Pinv = inverse(P);

  ZGrading z;
  z.original = g;
  z.chain_basis = P;
  std::vector<int> vdeg0 = grade_defining_space(jd0);
  std::vector<int> vdeg1 = grade_defining_space(jd1);
  z.v_degrees = vdeg0;
  z.v_degrees.insert(z.v_degrees.end(), vdeg1.begin(), vdeg1.end());

  // models in chain coordinates
  std::vector<Matrix> chain_models;
  for (int i = 0; i < g->dim(); ++i) chain_models.push_back(Pinv * g->model[i] * P);

  auto vpar = [&](int a) { return a < m0 ? 0 : 1; };
  auto vdeg = [&](int a) { return a < m0 ? vdeg0[a] : vdeg1[a - m0]; };

  // slice each parity part of g into degree classes
  std::vector<Vec> new_basis;
  std::vector<int> degrees;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<int> block;  // basis indices of this parity
    for (int i = 0; i < g->dim(); ++i)
      if (g->parity[i] == pass) block.push_back(i);
    std::set<int> degs;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        if ((vpar(a) + vpar(b)) % 2 == pass) degs.insert(vdeg(a) - vdeg(b));
    for (int d : degs) {
      // constraints: model entries at positions with a different degree vanish
      std::vector<Vec> rows;
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          if ((vpar(a) + vpar(b)) % 2 != pass) continue;
          if (vdeg(a) - vdeg(b) == d) continue;
          Vec row(block.size(), F.zero());
          bool nz = false;
          for (size_t k = 0; k < block.size(); ++k) {
            row[k] = chain_models[block[k]].at(a, b);
            nz = nz || !F.is_zero(row[k]);
          }
          if (nz) rows.push_back(std::move(row));
        }
      std::vector<Vec> sols;
      if (rows.empty()) {
        for (size_t k = 0; k < block.size(); ++k)
          sols.push_back(vec_unit(F, static_cast<int>(block.size()), static_cast<int>(k)));
      } else {
        Matrix sys = Matrix::from_rows(g->field, rows, static_cast<int>(block.size()));
        sols = kernel_basis(sys);
      }
      for (const Vec& s : sols) {
        Vec full(g->dim(), F.zero());
        for (size_t k = 0; k < block.size(); ++k) full[block[k]] = s[k];
        new_basis.push_back(full);
        degrees.push_back(d);
      }
    }
  }
  if (static_cast<int>(new_basis.size()) != g->dim())
    throw std::domain_error("induce_grading: grading does not close (degree slices do not span)");

  z.change_of_basis = new_basis;
  z.g_degrees = degrees;
  z.graded = rebase_algebra(g, new_basis);

  // bracket closure: nonzero structure constants must respect degrees
  for (int i = 0; i < z.graded->dim(); ++i)
    for (int j = 0; j < z.graded->dim(); ++j)
      for (int k = 0; k < z.graded->dim(); ++k)
        if (!F.is_zero(z.graded->sc[i][j][k]) && degrees[k] != degrees[i] + degrees[j])
          throw std::domain_error("induce_grading: grading does not close under bracket");

  // X and chi in graded coordinates
  TrackedSpan span(g->field, g->dim(), g->dim());
  for (int i = 0; i < g->dim(); ++i) span.insert(new_basis[i], vec_unit(F, g->dim(), i));
  if (!span.express(X, z.x_graded)) throw std::logic_error("induce_grading: X expression failed");
  if (g->form && g->form_nondegenerate) {
    z.chi_graded = transport_chi(*g, chi_from_element(*g, X), new_basis);
  } else {
    z.chi_graded = zero_chi(*z.graded);
  }
  return z;
}

GradingReport verify_grading(const ZGrading& z) {
  const FieldCtx& F = *z.graded->field;
  const LieSuperAlgebra& g = *z.graded;
  GradingReport rep;
  std::ostringstream detail;

  // (1) X in g(2)
  rep.x_in_degree_two = true;
  for (int i = 0; i < g.dim(); ++i)
    if (!F.is_zero(z.x_graded[i]) && z.g_degrees[i] != 2) rep.x_in_degree_two = false;
  if (!rep.x_in_degree_two) detail << "X is not concentrated in degree 2; ";

  // (2) (g(k), g(l)) = 0 unless k + l = 0
  rep.form_pairing = true;
  if (g.form) {
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        if (!F.is_zero(g.form->at(i, j)) && z.g_degrees[i] + z.g_degrees[j] != 0)
          rep.form_pairing = false;
  }
  if (!rep.form_pairing) detail << "form pairs nonopposite degrees; ";

  // centralizer of X inside the graded algebra, split by parity and degree
  Matrix adX = g.ad(z.x_graded);
  auto ker = kernel_basis(adX);
  RowSpan kspan(z.graded->field, g.dim());
  for (const Vec& v : ker) kspan.insert(v);
  int cent_even = 0, cent_odd = 0;

  rep.centralizer_graded = true;
  rep.centralizer_nonnegative = true;
  std::map<std::pair<int, int>, int> cent_by_degree;  // (degree, parity) -> dim
  {
    // per-degree kernels
    std::set<int> degs(z.g_degrees.begin(), z.g_degrees.end());
    int graded_total = 0;
    for (int d : degs) {
      for (int parity = 0; parity < 2; ++parity) {
        auto block = z.degree_block(d, parity);
        if (block.empty()) continue;
        // ad X restricted to the block
        Matrix sub(z.graded->field, g.dim(), static_cast<int>(block.size()));
        for (size_t c = 0; c < block.size(); ++c) {
          Vec img = adX.col(block[c]);
          for (int r = 0; r < g.dim(); ++r) sub.set(r, static_cast<int>(c), img[r]);
        }
        int kd = static_cast<int>(kernel_basis(sub).size());
        cent_by_degree[{d, parity}] = kd;
        graded_total += kd;
        if (d < 0 && kd > 0) rep.centralizer_nonnegative = false;
        if (parity == 0)
          cent_even += kd;
        else
          cent_odd += kd;
      }
    }
    if (graded_total != static_cast<int>(ker.size())) rep.centralizer_graded = false;
  }
  if (!rep.centralizer_graded) detail << "centralizer is not graded; ";
  if (!rep.centralizer_nonnegative) detail << "centralizer meets negative degrees; ";
  rep.centralizer_dims = {cent_even, cent_odd};

  // (5) dim g_X = dim g(0) + dim g(1), parity-wise
  auto d0 = z.block_dims(0), d1 = z.block_dims(1);
  rep.dim_identity = (cent_even == d0.first + d1.first) && (cent_odd == d0.second + d1.second);
  if (!rep.dim_identity) detail << "dimension identity fails; ";

  // mirror dims
  rep.mirror_dims = true;
  {
    std::set<int> degs(z.g_degrees.begin(), z.g_degrees.end());
    for (int d : degs)
      if (z.block_dims(d) != z.block_dims(-d)) rep.mirror_dims = false;
  }
  if (!rep.mirror_dims) detail << "dim g(k) != dim g(-k); ";

  // surjectivity [g(k-2)_i, X] = g(k)_i for k >= 2
  rep.bracket_surjectivity = true;
  {
    std::set<int> degs(z.g_degrees.begin(), z.g_degrees.end());
    for (int k : degs) {
      if (k < 2) continue;
      for (int parity = 0; parity < 2; ++parity) {
        auto source = z.degree_block(k - 2, parity);
        auto target = z.degree_block(k, parity);
        if (target.empty()) continue;
        RowSpan image(z.graded->field, g.dim());
        for (int s : source) image.insert(g.bracket(vec_unit(F, g.dim(), s), z.x_graded));
        int im_dim = image.dim();
        bool inside = true;
        RowSpan tspan(z.graded->field, g.dim());
        for (int t : target) tspan.insert(vec_unit(F, g.dim(), t));
        for (const Vec& r : image.rows())
          if (!tspan.contains(r)) inside = false;
        if (!inside || im_dim != static_cast<int>(target.size()))
          rep.bracket_surjectivity = false;
      }
    }
  }
  if (!rep.bracket_surjectivity) detail << "bracket onto higher degrees is not surjective; ";

  rep.ok = rep.x_in_degree_two && rep.form_pairing && rep.centralizer_graded &&
           rep.centralizer_nonnegative && rep.dim_identity && rep.bracket_surjectivity &&
           rep.mirror_dims;
  rep.detail = detail.str();
  return rep;
}

std::pair<int, int> centralizer_dims_by_partition(const std::vector<int>& pi0,
                                                  const std::vector<int>& pi1) {
  int even = 0, odd = 0;
  for (int a : pi0)
    for (int b : pi0) even += std::min(a, b);
  for (int a : pi1)
    for (int b : pi1) even += std::min(a, b);
  for (int a : pi0)
    for (int b : pi1) odd += 2 * std::min(a, b);
  return {even, odd};
}

Subalgebra MPair::m_sub() const {
  std::vector<Vec> units;
  for (int i : m_indices) units.push_back(vec_unit(*algebra->field, algebra->dim(), i));
  return subalgebra_from_basis(algebra, units);
}

Subalgebra MPair::m_prime_sub() const {
  std::vector<Vec> units;
  for (int i : m_prime_indices) units.push_back(vec_unit(*algebra->field, algebra->dim(), i));
  return subalgebra_from_basis(algebra, units);
}

Subalgebra MPair::m_sub_of(const AlgebraPtr& original) const {
  std::vector<Vec> vecs;
  for (int i : m_indices) vecs.push_back(basis_in_original[i]);
  return subalgebra_from_basis(original, vecs);
}

MPair build_m(const ZGrading& z) {
  const FieldCtx& F = *z.graded->field;
  FieldPtr Fp = z.graded->field;
  const LieSuperAlgebra& g = *z.graded;
  const PChar& chi = z.chi_graded;
  int d = g.dim();

  auto sform = [&](const Vec& a, const Vec& b) { return g.chi_value(chi, g.bracket(a, b)); };

  // adapted basis for g(-1): even part split into a maximal isotropic half
  // plus partners, odd part normalized toward the anti-diagonal unit form
  std::vector<int> even_m1 = z.degree_block(-1, 0);
  std::vector<int> odd_m1 = z.degree_block(-1, 1);

  std::vector<Vec> even_iso, even_partner;
  {
    std::vector<Vec> work;
    for (int i : even_m1) work.push_back(vec_unit(F, d, i));
    while (!work.empty()) {
      Vec x = work.front();
      work.erase(work.begin());
      int partner = -1;
      for (size_t j = 0; j < work.size(); ++j)
        if (!F.is_zero(sform(x, work[j]))) {
          partner = static_cast<int>(j);
          break;
        }
      if (partner < 0)
        throw TheoremViolation("build_m: skew form on g(-1) even part is degenerate");
      Vec y = vec_scale(F, F.inv(sform(x, work[partner])), work[partner]);
      work.erase(work.begin() + partner);
      for (Vec& v : work) {
        // v -> v + <y,v> x - <x,v> y
        Vec nv = v;
        vec_axpy(F, nv, sform(y, v), x);
        vec_axpy(F, nv, F.neg(sform(x, v)), y);
        v = nv;
      }
      even_iso.push_back(x);
      even_partner.push_back(y);
    }
  }

  std::vector<Vec> odd_first, odd_last;
  Vec odd_middle;
  bool has_middle = false;
  Scalar middle_norm = F.zero();
  {
    std::vector<Vec> work;
    for (int i : odd_m1) work.push_back(vec_unit(F, d, i));
    while (work.size() >= 2) {
      // isotropic vector in the current symmetric space
      int iso = -1;
      Vec w;
      for (size_t i = 0; i < work.size() && iso < 0; ++i)
        if (F.is_zero(sform(work[i], work[i]))) {
          w = work[i];
          iso = static_cast<int>(i);
        }
      if (iso < 0) {
        for (size_t i = 0; i < work.size() && iso < 0; ++i)
          for (size_t j = i + 1; j < work.size() && iso < 0; ++j)
            for (std::uint64_t t = 1; t < F.size() && iso < 0; ++t) {
              Vec cand = work[i];
              vec_axpy(F, cand, F.element(t), work[j]);
              if (F.is_zero(sform(cand, cand))) {
                w = cand;
                iso = static_cast<int>(i);
              }
            }
      }
      if (iso < 0) {
        if (work.size() == 2)
          throw std::domain_error(
              "build_m: anisotropic plane in g(-1) odd part; enlarge the base field");
        throw std::logic_error("build_m: no isotropic vector found in dimension >= 3");
      }
      // partner with <w, v> != 0
      int pj = -1;
      for (size_t j = 0; j < work.size(); ++j) {
        Scalar s = sform(w, work[j]);
        if (!F.is_zero(s)) {
          pj = static_cast<int>(j);
          break;
        }
      }
      if (pj < 0) throw TheoremViolation("build_m: symmetric form on g(-1) odd part degenerate");
      Vec v = vec_scale(F, F.inv(sform(w, work[pj])), work[pj]);
      // make the partner isotropic: v -> v - (s(v,v)/2) w
      vec_axpy(F, v, F.neg(F.div(sform(v, v), F.from_int(2))), w);
      // orthogonalize the rest against the pair
      std::vector<Vec> next;
      for (const Vec& o : work) {
        Vec no = o;
        vec_axpy(F, no, F.neg(sform(v, o)), w);
        vec_axpy(F, no, F.neg(sform(w, o)), v);
        if (!vec_is_zero(no)) next.push_back(no);
      }
      // the pair members reduce to zero against themselves; filter residues
      std::vector<Vec> filtered;
      RowSpan pairspan(Fp, d);
      pairspan.insert(w);
      pairspan.insert(v);
      for (const Vec& o : next)
        if (!pairspan.contains(o)) filtered.push_back(o);
      // re-echelon for stability
      RowSpan rs(Fp, d);
      for (const Vec& o : filtered) rs.insert(o);
      work.assign(rs.rows().begin(), rs.rows().end());
      odd_first.push_back(w);
      odd_last.push_back(v);
    }
    if (work.size() == 1) {
      odd_middle = work[0];
      Scalar mu = sform(odd_middle, odd_middle);
      if (F.is_zero(mu))
        throw TheoremViolation("build_m: symmetric form degenerate on the middle vector");
      Scalar root;
      if (F.sqrt(F.inv(mu), root)) {
        odd_middle = vec_scale(F, root, odd_middle);
        mu = F.one();
      }
      middle_norm = mu;
      has_middle = true;
    }
  }

  // assemble the adapted global basis, preserving the (parity, degree) order
  std::vector<Vec> new_basis;
  std::vector<int> new_degrees;
  std::vector<int> perm_positions;
  {
    std::vector<Vec> even_adapted = even_iso;
    even_adapted.insert(even_adapted.end(), even_partner.rbegin(), even_partner.rend());
    std::vector<Vec> odd_adapted = odd_first;
    if (has_middle) odd_adapted.push_back(odd_middle);
    odd_adapted.insert(odd_adapted.end(), odd_last.rbegin(), odd_last.rend());

    size_t ei = 0, oi = 0;
    for (int i = 0; i < d; ++i) {
      if (z.g_degrees[i] == -1 && g.parity[i] == 0)
        new_basis.push_back(even_adapted[ei++]);
      else if (z.g_degrees[i] == -1 && g.parity[i] == 1)
        new_basis.push_back(odd_adapted[oi++]);
      else
        new_basis.push_back(vec_unit(F, d, i));
      new_degrees.push_back(z.g_degrees[i]);
    }
  }

  MPair mp;
  mp.algebra = rebase_algebra(z.graded, new_basis);
  mp.chi = transport_chi(g, chi, new_basis);
  for (const Vec& nb : new_basis) {
    Vec orig(z.original->dim(), F.zero());
    for (int j = 0; j < d; ++j)
      if (!F.is_zero(nb[j])) vec_axpy(F, orig, nb[j], z.change_of_basis[j]);
    mp.basis_in_original.push_back(orig);
  }
  mp.degrees = new_degrees;
  mp.r_odd = static_cast<int>(odd_m1.size());
  mp.middle_norm = has_middle ? middle_norm : F.zero();

  // indices of m and m'
  int iso_even = static_cast<int>(even_iso.size());
  int iso_odd = static_cast<int>(odd_first.size());
  {
    int seen_even = 0, seen_odd = 0;
    for (int i = 0; i < d; ++i) {
      if (new_degrees[i] <= -2) {
        mp.m_indices.push_back(i);
        continue;
      }
      if (new_degrees[i] != -1) continue;
      if (mp.algebra->parity[i] == 0) {
        if (seen_even < iso_even) {
          mp.m_indices.push_back(i);
          mp.g_minus1_iso.push_back(i);
        }
        seen_even++;
      } else {
        if (seen_odd < iso_odd) {
          mp.m_indices.push_back(i);
          mp.g_minus1_iso.push_back(i);
        } else if (seen_odd == iso_odd && has_middle) {
          mp.m_prime_indices.push_back(i);  // middle joins m' only
        }
        seen_odd++;
      }
    }
    std::vector<int> mp_all = mp.m_indices;
    mp_all.insert(mp_all.end(), mp.m_prime_indices.begin(), mp.m_prime_indices.end());
    std::sort(mp_all.begin(), mp_all.end());
    mp.m_prime_indices = mp_all;
    std::sort(mp.m_indices.begin(), mp.m_indices.end());
  }

  // skew Gram on the adapted g(-1) basis
  {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (new_degrees[i] == -1) idx.push_back(i);
    Matrix G(Fp, static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b)
        G.set(static_cast<int>(a), static_cast<int>(b),
              mp.algebra->chi_value(mp.chi, mp.algebra->sc[idx[a]][idx[b]]));
    mp.skew_gram = G;
    // isotropy of the chosen half is exact
    for (int i : mp.g_minus1_iso)
      for (int j : mp.g_minus1_iso)
        if (!F.is_zero(mp.algebra->chi_value(mp.chi, mp.algebra->sc[i][j])))
          throw TheoremViolation("build_m: chosen half of g(-1) is not isotropic");
  }

  // chi vanishes on [m, m] and on the p-powers inside m; m is p-nilpotent
  for (int i : mp.m_indices)
    for (int j : mp.m_indices)
      if (!F.is_zero(mp.algebra->chi_value(mp.chi, mp.algebra->sc[i][j])))
        throw TheoremViolation("build_m: chi does not vanish on [m, m]");
  for (int i : mp.m_indices) {
    if (i >= mp.algebra->dim0) continue;
    Vec im = mp.algebra->pmap[i];
    int guard = 0;
    while (!vec_is_zero(im)) {
      if (!F.is_zero(mp.algebra->chi_value(mp.chi, im)))
        throw TheoremViolation("build_m: chi does not vanish on the p-closure of m");
      im = mp.algebra->pmap_of(im);
      if (++guard > 64) throw TheoremViolation("build_m: m is not p-nilpotent");
    }
  }

  std::uint64_t p = static_cast<std::uint64_t>(F.p());
  auto count_dims = [&](const std::vector<int>& idx) {
    std::uint64_t r = 1;
    for (int i : idx) r *= (mp.algebra->parity[i] == 0) ? p : 2;
    return r;
  };
  mp.dim_u_m = count_dims(mp.m_indices);
  mp.dim_u_m_prime = count_dims(mp.m_prime_indices);
  if (mp.dim_u_m_prime != super_kw_divisor(*mp.algebra, mp.chi))
    throw TheoremViolation("build_m: dim U_chi(m') differs from the divisor p^{d0/2} 2^{ceil(d1/2)}");
  return mp;
}

}  // namespace modsuper
