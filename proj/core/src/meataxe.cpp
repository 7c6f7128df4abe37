#include "modsuper/meataxe.hpp"

#include "modsuper/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace modsuper {

namespace {

// ---------------------------------------------------------------------------
// raw (ungraded) machinery on plain generator lists; the graded layer adjoins
// the parity involution to the generators
// ---------------------------------------------------------------------------

RowSpan spin(FieldPtr F, const std::vector<Matrix>& gens, const std::vector<Vec>& seeds) {
  int n = gens.empty() ? static_cast<int>(seeds[0].size()) : gens[0].cols();
  RowSpan span(F, n);
  std::vector<Vec> work;
  for (const Vec& v : seeds)
    if (span.insert(v)) work.push_back(v);
  size_t head = 0;
  while (head < work.size() && span.dim() < n) {
    Vec v = work[head++];
    for (const Matrix& A : gens) {
      Vec w = A.apply(v);
      if (span.insert(w)) work.push_back(std::move(w));
    }
  }
  return span;
}

Matrix random_algebra_element(FieldPtr F, const std::vector<Matrix>& gens, std::mt19937_64& rng) {
  int n = gens[0].rows();
  Matrix A(F, n, n);
  int terms = 2 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    int len = 1 + static_cast<int>(rng() % 3);
    Matrix P = gens[rng() % gens.size()];
    for (int i = 1; i < len; ++i) P = P * gens[rng() % gens.size()];
    A.add_in_place(P, F->random_nonzero(rng));
  }
  return A;
}

struct RawOutcome {
  MeatAxeOutcome::Verdict verdict;
  std::vector<Vec> submodule;
  nlohmann::json certificate;
};

// Norton-style irreducibility for the algebra generated by gens
RawOutcome raw_is_simple(FieldPtr F, const std::vector<Matrix>& gens, int dim,
                         std::uint64_t seed, int budget) {
  const FieldCtx& FF = *F;
  RawOutcome out;
  out.verdict = MeatAxeOutcome::Verdict::Unknown;
  if (dim <= 0) throw std::invalid_argument("is_simple: empty module");
  if (dim == 1) {
    out.verdict = MeatAxeOutcome::Verdict::Simple;
    out.certificate = nlohmann::json{{"method", "dimension-one"}};
    return out;
  }

  // exhaustive fallback: spin every 1-space
  {
    std::uint64_t count = 1, lines = 0;
    bool small = dim <= 8;
    if (small) {
      for (int i = 0; i < dim; ++i) {
        count *= FF.size();
        if (count > 4000000) {
          small = false;
          break;
        }
      }
      if (small) lines = (count - 1) / (FF.size() - 1);
      if (lines > 2000000) small = false;
    }
    if (small) {
      // vectors with first nonzero coordinate equal to one
      std::vector<std::uint64_t> idx(dim, 0);
      for (int pivot = dim - 1; pivot >= 0; --pivot) {
        std::vector<std::uint64_t> free(dim - pivot - 1, 0);
        while (true) {
          Vec v(dim, FF.zero());
          v[pivot] = FF.one();
          for (int j = pivot + 1; j < dim; ++j) v[j] = FF.element(free[j - pivot - 1]);
          RowSpan sp = spin(F, gens, {v});
          if (sp.dim() < dim) {
            out.verdict = MeatAxeOutcome::Verdict::NotSimple;
            out.submodule = sp.rows();
            out.certificate = nlohmann::json{{"method", "exhaustive"}};
            return out;
          }
          int j = static_cast<int>(free.size()) - 1;
          while (j >= 0) {
            if (++free[j] < FF.size()) break;
            free[j] = 0;
            --j;
          }
          if (j < 0) break;
        }
      }
      out.verdict = MeatAxeOutcome::Verdict::Simple;
      out.certificate = nlohmann::json{{"method", "exhaustive"}};
      return out;
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Matrix> tgens;
  for (const Matrix& A : gens) tgens.push_back(A.transpose());

  for (int attempt = 0; attempt < budget; ++attempt) {
    Matrix a = random_algebra_element(F, gens, rng);
    Poly mp = minpoly(a);
    auto factors = poly_factor(mp);
    for (const auto& pf : factors) {
      const Poly& f = pf.factor;
      if (f.deg() > 12) continue;  // matrix evaluation too costly; resample
      Matrix fa = poly_eval_matrix(f, a);
      auto ker = kernel_basis(fa);
      int nullity = static_cast<int>(ker.size());
      if (nullity == 0) continue;

      // any proper spin is a witness
      int probes = std::min<int>(nullity, 3);
      for (int i = 0; i < probes; ++i) {
        RowSpan sp = spin(F, gens, {ker[i]});
        if (sp.dim() < dim) {
          out.verdict = MeatAxeOutcome::Verdict::NotSimple;
          out.submodule = sp.rows();
          out.certificate = nlohmann::json{{"method", "norton"},
                                           {"attempt", attempt},
                                           {"factor_degree", f.deg()},
                                           {"nullity", nullity}};
          return out;
        }
      }

      if (nullity == f.deg()) {
        // kernel is an irreducible K[a]-module: one spin on each side decides
        Matrix fat = fa.transpose();
        auto tker = kernel_basis(fat);
        if (tker.empty()) continue;
        RowSpan dual = spin(F, tgens, {tker[0]});
        if (dual.dim() == dim) {
          out.verdict = MeatAxeOutcome::Verdict::Simple;
          out.certificate = nlohmann::json{{"method", "norton"},
                                           {"attempt", attempt},
                                           {"factor_degree", f.deg()},
                                           {"nullity", nullity}};
          return out;
        }
        // annihilator of the dual submodule is a proper invariant subspace
        Matrix rows = Matrix::from_rows(F, dual.rows(), dim);
        auto ann = kernel_basis(rows);
        RowSpan sub(F, dim);
        for (const Vec& v : ann) sub.insert(v);
        bool invariant = true;
        for (const Matrix& A : gens)
          for (const Vec& v : sub.rows())
            if (!sub.contains(A.apply(v))) invariant = false;
        if (!invariant)
          throw std::logic_error("is_simple: dual annihilator is not invariant");
        out.verdict = MeatAxeOutcome::Verdict::NotSimple;
        out.submodule = sub.rows();
        out.certificate = nlohmann::json{{"method", "norton-dual"},
                                         {"attempt", attempt},
                                         {"factor_degree", f.deg()},
                                         {"nullity", nullity}};
        return out;
      }
    }
  }
  out.certificate = nlohmann::json{{"method", "norton"}, {"result", "budget exhausted"}};
  return out;
}

struct RawModule {
  int dim;
  std::vector<Matrix> gens;
};

RawModule raw_submodule(FieldPtr F, const RawModule& M, const std::vector<Vec>& rows) {
  RowSpan span(F, M.dim);
  for (const Vec& v : rows) span.insert(v);
  RawModule S;
  S.dim = span.dim();
  for (const Matrix& A : M.gens) {
    Matrix B(F, S.dim, S.dim);
    for (int c = 0; c < S.dim; ++c) {
      Vec coord = span.coordinates(A.apply(span.rows()[c]));
      for (int r = 0; r < S.dim; ++r) B.set(r, c, coord[r]);
    }
    S.gens.push_back(B);
  }
  return S;
}

RawModule raw_quotient(FieldPtr F, const RawModule& M, const std::vector<Vec>& rows) {
  const FieldCtx& FF = *F;
  RowSpan span(F, M.dim);
  for (const Vec& v : rows) span.insert(v);
  std::vector<bool> is_piv(M.dim, false);
  for (int p : span.pivots()) is_piv[p] = true;
  std::vector<int> keep;
  for (int i = 0; i < M.dim; ++i)
    if (!is_piv[i]) keep.push_back(i);
  RawModule Q;
  Q.dim = static_cast<int>(keep.size());
  for (const Matrix& A : M.gens) {
    Matrix B(F, Q.dim, Q.dim);
    for (int c = 0; c < Q.dim; ++c) {
      Vec img = span.reduce(A.apply(vec_unit(FF, M.dim, keep[c])));
      for (int r = 0; r < Q.dim; ++r) B.set(r, c, img[keep[r]]);
    }
    Q.gens.push_back(B);
  }
  return Q;
}

// plain intertwiner space {T : T A_i = B_i T}; dense solve
std::vector<Matrix> raw_hom_space(FieldPtr F, const std::vector<Matrix>& A,
                                  const std::vector<Matrix>& B, int na, int nb) {
  const FieldCtx& FF = *F;
  int unknowns = na * nb;
  std::vector<Vec> rows;
  for (size_t gi = 0; gi < A.size(); ++gi) {
    // (T A - B T)[r][c] = 0
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < na; ++c) {
        Vec row(unknowns, FF.zero());
        for (int k = 0; k < na; ++k)
          row[r * na + k] = FF.add(row[r * na + k], A[gi].at(k, c));
        for (int k = 0; k < nb; ++k)
          row[k * na + c] = FF.sub(row[k * na + c], B[gi].at(r, k));
        rows.push_back(std::move(row));
      }
  }
  Matrix sys = Matrix::from_rows(F, rows, unknowns);
  auto ker = kernel_basis(sys);
  std::vector<Matrix> out;
  for (const Vec& v : ker) {
    Matrix T(F, nb, na);
    for (int r = 0; r < nb; ++r)
      for (int c = 0; c < na; ++c) T.set(r, c, v[r * na + c]);
    out.push_back(T);
  }
  return out;
}

bool raw_isomorphic(FieldPtr F, const RawModule& A, const RawModule& B, std::mt19937_64& rng) {
  if (A.dim != B.dim) return false;
  auto H = raw_hom_space(F, A.gens, B.gens, A.dim, B.dim);
  for (const Matrix& T : H) {
    if (rank(T) == A.dim) return true;
  }
  // random combinations
  const FieldCtx& FF = *F;
  for (int t = 0; t < 24 && !H.empty(); ++t) {
    Matrix T(F, B.dim, A.dim);
    for (const Matrix& h : H) T.add_in_place(h, FF.random(rng));
    if (rank(T) == A.dim) return true;
  }
  return false;
}

// distinct simple factors of the module generated by gens, plain category
void raw_comp_factors(FieldPtr F, const RawModule& M, std::uint64_t seed,
                      std::vector<RawModule>& distinct, std::vector<int>& mult) {
  struct Item {
    RawModule mod;
    std::uint64_t seed;
  };
  std::vector<Item> stack = {{M, seed}};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    if (it.mod.dim == 0) continue;
    RawOutcome out = raw_is_simple(F, it.mod.gens, it.mod.dim, it.seed, 64);
    if (out.verdict == MeatAxeOutcome::Verdict::Unknown)
      throw UnknownResult("composition factors: irreducibility test inconclusive");
    if (out.verdict == MeatAxeOutcome::Verdict::Simple) {
      bool matched = false;
      for (size_t i = 0; i < distinct.size(); ++i) {
        if (raw_isomorphic(F, distinct[i], it.mod, rng)) {
          mult[i]++;
          matched = true;
          break;
        }
      }
      if (!matched) {
        distinct.push_back(it.mod);
        mult.push_back(1);
      }
      continue;
    }
    stack.push_back({raw_submodule(F, it.mod, out.submodule), it.seed * 2 + 1});
    stack.push_back({raw_quotient(F, it.mod, out.submodule), it.seed * 2 + 2});
  }
}

// radical of the span of the given unital matrix algebra basis, acting
// faithfully on its natural module: common annihilator of the composition
// factors, expressed in coordinates over the given basis
std::vector<Vec> matrix_algebra_radical(FieldPtr F, const std::vector<Matrix>& basis, int vdim,
                                        std::uint64_t seed) {
  const FieldCtx& FF = *F;
  RawModule V{vdim, basis};
  std::vector<RawModule> distinct;
  std::vector<int> mult;
  raw_comp_factors(F, V, seed, distinct, mult);
  int cols = 0;
  for (const RawModule& S : distinct) cols += S.dim * S.dim;
  std::vector<Vec> rows;
  for (size_t b = 0; b < basis.size(); ++b) {
    Vec row(cols, FF.zero());
    int off = 0;
    for (const RawModule& S : distinct) {
      const Matrix& img = S.gens[b];
      for (int r = 0; r < S.dim; ++r)
        for (int c = 0; c < S.dim; ++c) row[off + r * S.dim + c] = img.at(r, c);
      off += S.dim * S.dim;
    }
    rows.push_back(std::move(row));
  }
  Matrix sys = Matrix::from_rows(F, rows, cols).transpose();
  return kernel_basis(sys);
}

// is the unital algebra spanned by basis (acting on vdim) local?
bool matrix_algebra_is_local(FieldPtr F, const std::vector<Matrix>& raw_basis, int vdim,
                             std::uint64_t seed) {
  const FieldCtx& FF = *F;
  auto flatten = [&](const Matrix& M) {
    Vec f(vdim * vdim);
    for (int r = 0; r < vdim; ++r)
      for (int c = 0; c < vdim; ++c) f[r * vdim + c] = M.at(r, c);
    return f;
  };
  // filter to an independent spanning list; make sure the identity is present
  std::vector<Matrix> basis;
  {
    RowSpan probe(F, vdim * vdim);
    for (const Matrix& M : raw_basis)
      if (probe.insert(flatten(M))) basis.push_back(M);
    Matrix id = Matrix::identity(F, vdim);
    if (probe.insert(flatten(id))) basis.push_back(id);
  }
  int k = static_cast<int>(basis.size());
  auto rad = matrix_algebra_radical(F, basis, vdim, seed);
  int rdim = static_cast<int>(rad.size());
  int qdim = k - rdim;
  if (qdim <= 0) return false;
  if (qdim == 1) return true;

  // coordinates machinery over the flattened basis
  TrackedSpan span(F, vdim * vdim, k);
  for (int i = 0; i < k; ++i)
    if (!span.insert(flatten(basis[i]), vec_unit(FF, k, i)))
      throw std::logic_error("matrix_algebra_is_local: basis filtering failed");
  RowSpan radspan(F, k);
  for (const Vec& r : rad) radspan.insert(r);

  auto coords_mod_rad = [&](const Matrix& M) {
    Vec c;
    if (!span.express(flatten(M), c))
      throw std::logic_error("matrix_algebra_is_local: product left the algebra");
    return radspan.reduce(c);
  };

  // quotient coordinates: positions outside the radical pivots
  std::vector<bool> is_piv(k, false);
  for (int p : radspan.pivots()) is_piv[p] = true;
  std::vector<int> keep;
  for (int i = 0; i < k; ++i)
    if (!is_piv[i]) keep.push_back(i);

  auto to_quot = [&](const Vec& full) {
    Vec q(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) q[i] = full[keep[i]];
    return q;
  };

  // commutativity of the quotient
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Matrix comm = basis[i] * basis[j] - basis[j] * basis[i];
      Vec c = coords_mod_rad(comm);
      if (!vec_is_zero(to_quot(c))) return false;
    }

  // Frobenius fixed points: the quotient is a product of s fields where
  // s = dim ker(x -> x^q - x); a field iff s == 1
  std::vector<Vec> frows;
  for (size_t i = 0; i < keep.size(); ++i) {
    Matrix bq = matrix_pow(basis[keep[i]], FF.size());
    Vec img = to_quot(coords_mod_rad(bq));
    Vec unit(keep.size(), FF.zero());
    unit[i] = FF.one();
    frows.push_back(vec_sub(FF, img, unit));
  }
  Matrix fro = Matrix::from_rows(F, frows, static_cast<int>(keep.size())).transpose();
  return kernel_basis(fro).size() == 1;
}

// ---------------------------------------------------------------------------
// graded layer
// ---------------------------------------------------------------------------

std::vector<Matrix> graded_gens(const ModuleRep& M) {
  std::vector<Matrix> gens = M.action;
  gens.push_back(M.parity_matrix());
  return gens;
}

// split a sigma-stable span into parity-homogeneous echelon rows
std::vector<Vec> homogenize(const ModuleRep& M, const std::vector<Vec>& rows) {
  const FieldCtx& F = M.field();
  RowSpan orig(M.g->field, M.dim);
  for (const Vec& v : rows) orig.insert(v);
  RowSpan out(M.g->field, M.dim);
  for (const Vec& v : rows) {
    Vec ev(M.dim, F.zero()), od(M.dim, F.zero());
    for (int i = 0; i < M.dim; ++i) (M.parity[i] == 0 ? ev[i] : od[i]) = v[i];
    if (!orig.contains(ev))
      throw std::logic_error("homogenize: subspace is not parity stable");
    out.insert(ev);
    out.insert(od);
  }
  return out.rows();
}

}  // namespace

MeatAxeOutcome is_simple(const ModuleRep& M, std::uint64_t seed, int budget) {
  RawOutcome raw = raw_is_simple(M.g->field, graded_gens(M), M.dim, seed, budget);
  MeatAxeOutcome out;
  out.verdict = raw.verdict;
  out.certificate = raw.certificate;
  out.certificate["seed"] = seed;
  if (raw.verdict == MeatAxeOutcome::Verdict::NotSimple)
    out.submodule = homogenize(M, raw.submodule);
  return out;
}

std::vector<CompFactor> composition_factors(const ModuleRep& M, std::uint64_t seed) {
  std::vector<CompFactor> out;
  struct Item {
    ModuleRep mod;
    std::uint64_t seed;
  };
  std::vector<Item> stack = {{M, seed}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    if (it.mod.dim == 0) continue;
    MeatAxeOutcome o = is_simple(it.mod, it.seed, 64);
    if (o.verdict == MeatAxeOutcome::Verdict::Unknown)
      throw UnknownResult("composition_factors: inconclusive split");
    if (o.verdict == MeatAxeOutcome::Verdict::Simple) {
      bool matched = false;
      for (auto& cf : out) {
        if (cf.rep.dim != it.mod.dim) continue;
        if (fingerprint(cf.rep) != fingerprint(it.mod)) continue;
        if (find_isomorphism(cf.rep, it.mod) != IsoKind::None) {
          cf.multiplicity++;
          matched = true;
          break;
        }
      }
      if (!matched) out.push_back({it.mod, 1});
      continue;
    }
    stack.push_back({submodule_on(it.mod, o.submodule), it.seed * 2 + 1});
    stack.push_back({quotient_module(it.mod, o.submodule), it.seed * 2 + 2});
  }
  return out;
}

namespace {

// cyclic hom space: all phi(gen) images u in N for module maps phi: P -> N
// determined on the cyclic generator gen of P (plain category)
struct CyclicHom {
  bool cyclic = false;
  std::vector<Vec> u_space;       // admissible images of the generator
  std::vector<Matrix> words;      // W_i: image matrices per spin basis vector
  std::vector<Vec> spin_basis;    // b_i in P coordinates (not echelonized)
};

CyclicHom cyclic_hom(const ModuleRep& P, const Vec& gen, const ModuleRep& N) {
  const FieldCtx& F = P.field();
  FieldPtr Fp = P.g->field;
  CyclicHom out;
  int n = P.dim, m = N.dim;
  int ngens = static_cast<int>(P.action.size());

  TrackedSpan span(Fp, n, n);  // coords unused; tracks membership only
  std::vector<Vec> basis;      // raw spin vectors b_i
  std::vector<Matrix> words;   // W_i
  std::vector<Vec> rows;       // constraint rows over m unknowns

  if (vec_is_zero(gen)) return out;
  span.insert(gen, vec_unit(F, n, 0));
  basis.push_back(gen);
  words.push_back(Matrix::identity(N.g->field, m));
  size_t head = 0;
  while (head < basis.size()) {
    Vec b = basis[head];
    for (int gi = 0; gi < ngens; ++gi) {
      Vec img = P.action[gi].apply(b);
      Matrix Wimg = N.action[gi] * words[head];
      if (span.insert(img, vec_unit(F, n, 0))) {
        basis.push_back(img);
        words.push_back(Wimg);
      } else {
        // dependent: img = sum c_i b_i over the raw spin basis; solve
        Matrix B(Fp, n, static_cast<int>(basis.size()));
        for (size_t i = 0; i < basis.size(); ++i)
          for (int r = 0; r < n; ++r) B.set(r, static_cast<int>(i), basis[i][r]);
        Vec coeff;
        if (!solve(B, img, coeff))
          throw std::logic_error("cyclic_hom: dependent vector failed to resolve");
        // constraint rows: (Wimg - sum c_i W_i) u = 0
        Matrix C = Wimg;
        for (size_t i = 0; i < basis.size(); ++i)
          C.add_in_place(words[i], F.neg(coeff[i]));
        for (int r = 0; r < m; ++r) {
          Vec row(m, F.zero());
          bool nz = false;
          for (int c = 0; c < m; ++c) {
            row[c] = C.at(r, c);
            nz = nz || !F.is_zero(row[c]);
          }
          if (nz) rows.push_back(std::move(row));
        }
      }
    }
    ++head;
  }
  if (span.dim() < n) return out;  // not cyclic from this generator
  out.cyclic = true;
  out.spin_basis = basis;
  out.words = words;
  if (rows.empty()) {
    for (int i = 0; i < m; ++i) out.u_space.push_back(vec_unit(F, m, i));
  } else {
    Matrix sys = Matrix::from_rows(Fp, rows, m);
    out.u_space = kernel_basis(sys);
  }
  return out;
}

// matrix of the hom with generator image u (needs the spin data)
Matrix hom_matrix(const ModuleRep& P, const CyclicHom& ch, const Vec& u, const ModuleRep& N) {
  FieldPtr Fp = P.g->field;
  int n = P.dim, m = N.dim;
  Matrix B(Fp, n, static_cast<int>(ch.spin_basis.size()));
  for (size_t i = 0; i < ch.spin_basis.size(); ++i)
    for (int r = 0; r < n; ++r) B.set(r, static_cast<int>(i), ch.spin_basis[i][r]);
  Matrix phi(Fp, m, n);
  for (int r = 0; r < n; ++r) {
    Vec unit = vec_unit(*Fp, n, r);
    Vec coeff;
    if (!solve(B, unit, coeff)) throw std::logic_error("hom_matrix: spin basis does not span");
    Vec img(m, Fp->zero());
    for (size_t i = 0; i < ch.spin_basis.size(); ++i)
      if (!Fp->is_zero(coeff[i])) vec_axpy(*Fp, img, coeff[i], ch.words[i].apply(u));
    for (int rr = 0; rr < m; ++rr) phi.set(rr, r, img[rr]);
  }
  return phi;
}

// plain hom space between two modules over the same algebra, via a cyclic
// generator of P when one exists, dense solve otherwise
std::vector<Matrix> hom_space(const ModuleRep& P, const ModuleRep& N, const Vec* hint) {
  const FieldCtx& F = P.field();
  std::vector<Vec> candidates;
  if (hint) candidates.push_back(*hint);
  for (int i = 0; i < std::min(P.dim, 4); ++i) candidates.push_back(vec_unit(F, P.dim, i));
  std::mt19937_64 rng(0xc0ffee);
  for (int t = 0; t < 4; ++t) {
    Vec v(P.dim);
    for (int i = 0; i < P.dim; ++i) v[i] = F.random(rng);
    candidates.push_back(v);
  }
  for (const Vec& gen : candidates) {
    CyclicHom ch = cyclic_hom(P, gen, N);
    if (!ch.cyclic) continue;
    std::vector<Matrix> out;
    for (const Vec& u : ch.u_space) out.push_back(hom_matrix(P, ch, u, N));
    return out;
  }
  if (static_cast<std::uint64_t>(P.dim) * N.dim > 4096)
    throw std::invalid_argument("hom_space: module not cyclic and too large for dense solve");
  return raw_hom_space(P.g->field, P.action, N.action, P.dim, N.dim);
}

}  // namespace

EndoData endo_superalgebra(const ModuleRep& M, const Vec* cyclic_hint) {
  const FieldCtx& F = M.field();
  auto H = hom_space(M, M, cyclic_hint);
  // split by parity under conjugation with the parity involution
  Matrix sigma = M.parity_matrix();
  RowSpan even_span(M.g->field, M.dim * M.dim), odd_span(M.g->field, M.dim * M.dim);
  auto flatten = [&](const Matrix& T) {
    Vec f(M.dim * M.dim);
    for (int r = 0; r < M.dim; ++r)
      for (int c = 0; c < M.dim; ++c) f[r * M.dim + c] = T.at(r, c);
    return f;
  };
  Scalar half = F.inv(F.from_int(2));
  std::vector<Matrix> odd_reps;
  for (const Matrix& T : H) {
    Matrix co = sigma * T * sigma;
    Matrix ev = (T + co).scaled(half);
    Matrix od = (T - co).scaled(half);
    even_span.insert(flatten(ev));
    if (odd_span.insert(flatten(od))) odd_reps.push_back(od);
  }
  EndoData out;
  out.dim_even = even_span.dim();
  out.dim_odd = odd_span.dim();
  out.type_q = false;
  if (out.dim_even == 1 && out.dim_odd == 1) {
    // odd endomorphism phi = sigma * T for the parity-reversing commutant T;
    // type Q requires phi^2 to be an invertible scalar
    Matrix phi = sigma * odd_reps[0];
    Matrix sq = phi * phi;
    Scalar c = sq.at(0, 0);
    Matrix target = Matrix::identity(M.g->field, M.dim).scaled(c);
    if (sq == target && !F.is_zero(c)) out.type_q = true;
  }
  return out;
}

IsoKind find_isomorphism(const ModuleRep& A, const ModuleRep& B, std::uint64_t seed) {
  if (A.dim != B.dim || A.g->dim() != B.g->dim()) return IsoKind::None;
  const FieldCtx& F = A.field();
  std::vector<Matrix> H;
  try {
    H = hom_space(A, B, nullptr);
  } catch (const std::invalid_argument&) {
    return IsoKind::None;
  }
  if (H.empty()) return IsoKind::None;
  Matrix sB = B.parity_matrix(), sA = A.parity_matrix();
  Scalar half = F.inv(F.from_int(2));
  std::vector<Matrix> evens, odds;
  for (const Matrix& T : H) {
    Matrix co = sB * T * sA;
    Matrix ev = (T + co).scaled(half);
    Matrix od = (T - co).scaled(half);
    if (!ev.is_zero()) evens.push_back(ev);
    if (!od.is_zero()) odds.push_back(od);
  }
  std::mt19937_64 rng(seed ^ 0x150deedULL);
  auto has_invertible = [&](const std::vector<Matrix>& list) {
    for (const Matrix& T : list)
      if (rank(T) == A.dim) return true;
    for (int t = 0; t < 32 && !list.empty(); ++t) {
      Matrix T(A.g->field, A.dim, A.dim);
      for (const Matrix& h : list) T.add_in_place(h, F.random(rng));
      if (rank(T) == A.dim) return true;
    }
    return false;
  };
  if (has_invertible(evens)) return IsoKind::Even;
  if (has_invertible(odds)) return IsoKind::Odd;
  return IsoKind::None;
}

std::vector<std::uint32_t> fingerprint(const ModuleRep& M, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(M.g->dim()) << 17));
  std::vector<std::uint32_t> tr;
  for (int w = 0; w < 16; ++w) {
    int len = 1 + static_cast<int>(rng() % 4);
    Matrix P = M.action[rng() % M.action.size()];
    for (int i = 1; i < len; ++i) P = P * M.action[rng() % M.action.size()];
    tr.push_back(P.trace().v);
  }
  std::sort(tr.begin(), tr.end());
  tr.push_back(static_cast<std::uint32_t>(M.dim));
  return tr;
}

std::vector<Vec> m_invariants(const ModuleRep& M, const Subalgebra& m, const PChar& eta) {
  const FieldCtx& F = M.field();
  std::vector<Vec> rows;
  for (size_t k = 0; k < m.embedding.size(); ++k) {
    Matrix A = M.act(m.embedding[k]);
    Scalar ek = (static_cast<int>(k) < m.alg->dim0) ? eta.even_dual[k] : F.zero();
    for (int i = 0; i < M.dim; ++i) A.set(i, i, F.sub(A.at(i, i), ek));
    for (int r = 0; r < M.dim; ++r) rows.push_back(A.row(r));
  }
  if (rows.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < M.dim; ++i) all.push_back(vec_unit(F, M.dim, i));
    return all;
  }
  Matrix sys = Matrix::from_rows(M.g->field, rows, M.dim);
  return kernel_basis(sys);
}

FreenessReport freeness_check(const ModuleRep& M, const Subalgebra& m, const PChar& eta) {
  FreenessReport rep;
  std::uint64_t p = M.g->field->p();
  std::uint64_t du = 1;
  for (int i = 0; i < m.alg->dim0; ++i) du *= p;
  for (int i = 0; i < m.alg->dim1; ++i) du *= 2;
  rep.dim_m_module = du;
  rep.invariants_dim = static_cast<int>(m_invariants(M, m, eta).size());
  rep.ok = (du * static_cast<std::uint64_t>(rep.invariants_dim) ==
            static_cast<std::uint64_t>(M.dim));
  if (!rep.ok) {
    std::ostringstream os;
    os << "dim M = " << M.dim << " but dim U_chi(m) * dim M^m = " << du << " * "
       << rep.invariants_dim;
    rep.detail = os.str();
  }
  return rep;
}

KWAudit kw_audit(const LieSuperAlgebra& g, const PChar& chi,
                 const std::vector<std::pair<std::string, std::uint64_t>>& module_dims) {
  KWAudit audit;
  audit.divisor = super_kw_divisor(g, chi);
  for (auto& [name, d] : module_dims) {
    KWAuditLine line;
    line.name = name;
    line.dim = d;
    line.divisible = (d % audit.divisor == 0);
    line.quotient = line.divisible ? d / audit.divisor : 0;
    audit.all_divisible = audit.all_divisible && line.divisible;
    audit.lines.push_back(line);
  }
  return audit;
}

RadicalData algebra_radical(const UAlgebraCtx& u, const RegularModule& R, std::uint64_t seed) {
  const FieldCtx& F = *u.algebra()->field;
  RadicalData out;
  out.factors = composition_factors(R.rep, seed);

  int N = R.rep.dim;
  int cols = 0;
  for (const auto& cf : out.factors) cols += cf.rep.dim * cf.rep.dim;

  // images of every monomial in each distinct factor, by one-step recursion
  std::vector<Vec> rows(N, Vec(cols, F.zero()));
  int off = 0;
  for (const auto& cf : out.factors) {
    int d = cf.rep.dim;
    std::vector<Matrix> img(N, Matrix());
    img[0] = Matrix::identity(u.algebra()->field, d);
    for (int j = 1; j < N; ++j) {
      const Mon& m = R.monomials[j];
      int pos = -1;
      for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
        if (m[i] != 0) {
          pos = i;
          break;
        }
      Mon parent = m;
      parent[pos] = static_cast<std::uint8_t>(parent[pos] - 1);
      int pidx = R.index.at(parent);
      img[j] = img[pidx] * cf.rep.action[u.order()[pos]];
    }
    for (int j = 0; j < N; ++j)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) rows[j][off + r * d + c] = img[j].at(r, c);
    off += d * d;
  }
  Matrix sys = Matrix::from_rows(u.algebra()->field, rows, cols).transpose();
  out.radical = kernel_basis(sys);
  return out;
}

bool is_semisimple(const UAlgebraCtx& u, std::uint64_t dim_bound, std::uint64_t seed) {
  RegularModule R = regular_module(u, dim_bound);
  return algebra_radical(u, R, seed).radical.empty();
}

namespace {

// ---------------------------------------------------------------------------
// Fitting decomposition of the regular module
// ---------------------------------------------------------------------------

struct FittingCtx {
  const UAlgebraCtx& u;
  const RegularModule& R;
  FieldPtr F;
  int N;
  Vec unit;                  // coordinates of the identity monomial
  std::vector<Matrix> pool;  // right multiplications by random even elements
};

FittingCtx make_fitting_ctx(const UAlgebraCtx& u, const RegularModule& R, std::mt19937_64& rng) {
  const FieldCtx& F = *u.algebra()->field;
  FittingCtx fc{u, R, u.algebra()->field, R.rep.dim, Vec(R.rep.dim, F.zero()), {}};
  fc.unit[R.index.at(u.one())] = F.one();
  // right multiplications by even generators and by short even words
  const auto& g = *u.algebra();
  std::vector<int> evens, odds;
  for (int i = 0; i < g.dim(); ++i) (g.parity[i] == 0 ? evens : odds).push_back(i);
  for (int i : evens) fc.pool.push_back(R.right_action[i]);
  for (size_t a = 0; a < odds.size(); ++a)
    for (size_t b = a; b < odds.size(); ++b)
      fc.pool.push_back(R.right_action[odds[a]] * R.right_action[odds[b]]);
  for (int t = 0; t < 6; ++t) {
    int i = evens[rng() % evens.size()];
    int j = evens[rng() % evens.size()];
    fc.pool.push_back(R.right_action[i] * R.right_action[j]);
  }
  return fc;
}

struct FitLeaf {
  Vec idempotent;
  Matrix right_mult;  // right multiplication by the idempotent
};

// right multiplication by an arbitrary element: column j is L_{m_j}(z)
Matrix element_right_mult(const FittingCtx& fc, const Vec& z) {
  Matrix out(fc.F, fc.N, fc.N);
  for (int j = 0; j < fc.N; ++j) {
    Vec v = z;
    auto word = fc.u.monomial_word(fc.R.monomials[j]);
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = fc.R.rep.action[*it].apply(v);
    for (int r = 0; r < fc.N; ++r) out.set(r, j, v[r]);
  }
  return out;
}

void fitting_decompose(const FittingCtx& fc, const Vec& e, const Matrix& Re,
                       std::mt19937_64& rng, std::vector<FitLeaf>& leaves, int depth) {
  const FieldCtx& F = *fc.F;
  if (depth > 64) throw std::logic_error("fitting: recursion too deep");

  for (int attempt = 0; attempt < 14; ++attempt) {
    // random even element z; z' = e z e has right multiplication Re Rz Re.
    // The first attempts draw z from cheap precomputed words; the last ones
    // build the right multiplication of a generic even element.
    Matrix Rz(fc.F, fc.N, fc.N);
    if (attempt < 10) {
      for (const Matrix& P : fc.pool) Rz.add_in_place(P, F.random(rng));
    } else {
      Vec z(fc.N, F.zero());
      for (int i = 0; i < fc.N; ++i)
        if (fc.R.rep.parity[i] == 0) z[i] = F.random(rng);
      Rz = element_right_mult(fc, z);
    }
    Matrix M = Re * (Rz * Re);
    Poly mp = minpoly_on_vector(M, e);
    auto factors = poly_factor(mp);
    if (factors.size() <= 1) continue;  // K[z'] is local; try another element
    auto eps = crt_idempotent_polys(factors);
    std::vector<Vec> parts;
    std::vector<Matrix> part_mults;
    for (const Poly& pe : eps) {
      // vector of pe(z') (unit of the corner algebra is e) and its right
      // multiplication c0 Re + sum_{k>=1} c_k M^k
      Vec v(fc.N, F.zero());
      for (int i = pe.deg(); i >= 0; --i) {
        v = M.apply(v);
        vec_axpy(F, v, pe.c[i], e);
      }
      if (vec_is_zero(v)) continue;
      // right multiplication by pe(z'): c0 Re + sum_{k>=1} c_k M^k, with the
      // positive-degree part built by Horner as ((c_d M + c_{d-1}) M + ...) M
      Matrix acc(fc.F, fc.N, fc.N);
      for (int i = pe.deg(); i >= 1; --i) {
        acc = acc * M;
        for (int r = 0; r < fc.N; ++r) acc.set(r, r, F.add(acc.at(r, r), pe.c[i]));
      }
      acc = acc * M;
      acc.add_in_place(Re, pe.c.empty() ? F.zero() : pe.c[0]);
      parts.push_back(v);
      part_mults.push_back(std::move(acc));
    }
    if (parts.size() <= 1) continue;
    Vec sum(fc.N, F.zero());
    for (const Vec& v : parts) sum = vec_add(F, sum, v);
    if (!(sum == e)) throw std::logic_error("fitting: idempotents do not sum to the unit");
    for (size_t i = 0; i < parts.size(); ++i)
      fitting_decompose(fc, parts[i], part_mults[i], rng, leaves, depth + 1);
    return;
  }
  leaves.push_back({e, Re});
}

}  // namespace

CartanData cartan_data(const UAlgebraCtx& u, std::uint64_t dim_bound, std::uint64_t seed) {
  const FieldCtx& F = *u.algebra()->field;
  FieldPtr Fp = u.algebra()->field;
  CartanData out;
  RegularModule R = regular_module(u, dim_bound);
  out.simples = composition_factors(R.rep, seed);
  for (const auto& cf : out.simples) out.simple_types.push_back(endo_superalgebra(cf.rep));

  std::mt19937_64 rng(seed ^ 0xf177ULL);
  FittingCtx fc = make_fitting_ctx(u, R, rng);
  std::vector<FitLeaf> leaves;
  fitting_decompose(fc, fc.unit, Matrix::identity(Fp, R.rep.dim), rng, leaves, 0);

  // verify each leaf really is indecomposable: End(A e) is local
  struct LeafInfo {
    ModuleRep mod;
    Vec gen_coords;
    int head = -1;
  };
  std::vector<LeafInfo> infos;
  std::uint64_t total = 0;
  for (const auto& leaf : leaves) {
    LeafInfo li;
    std::vector<Vec> cols;
    for (int c = 0; c < R.rep.dim; ++c) {
      Vec col = leaf.right_mult.col(c);
      if (!vec_is_zero(col)) cols.push_back(std::move(col));
    }
    std::vector<Vec> rows_h = homogenize(R.rep, cols);
    li.mod = submodule_on(R.rep, rows_h);
    RowSpan span(Fp, R.rep.dim);
    for (const Vec& r : rows_h) span.insert(r);
    li.gen_coords = span.coordinates(leaf.idempotent);
    total += li.mod.dim;

    // graded indecomposability: the parity-preserving part of End must be
    // local (the full End of a type-Q summand splits whenever -1 is a square)
    auto H = hom_space(li.mod, li.mod, &li.gen_coords);
    Matrix sigma = li.mod.parity_matrix();
    Scalar half = F.inv(F.from_int(2));
    std::vector<Matrix> ebasis;
    for (const Matrix& T : H) {
      Matrix ev = (T + sigma * T * sigma).scaled(half);
      if (!ev.is_zero()) ebasis.push_back(ev);
    }
    ebasis.push_back(Matrix::identity(Fp, li.mod.dim));
    if (!matrix_algebra_is_local(Fp, ebasis, li.mod.dim, seed + 31))
      throw UnknownResult("cartan_data: summand endomorphism algebra is not local");

    // head: the unique simple with a nonzero hom from the summand
    for (size_t s = 0; s < out.simples.size(); ++s) {
      auto homs = hom_space(li.mod, out.simples[s].rep, &li.gen_coords);
      bool nonzero = false;
      for (const Matrix& T : homs)
        if (!T.is_zero()) nonzero = true;
      if (nonzero) {
        if (li.head >= 0) throw std::logic_error("cartan_data: summand head is not unique");
        li.head = static_cast<int>(s);
      }
    }
    if (li.head < 0) throw std::logic_error("cartan_data: summand has no head among the simples");
    infos.push_back(std::move(li));
  }
  if (total != static_cast<std::uint64_t>(R.rep.dim))
    throw std::logic_error("cartan_data: summand dimensions do not add up");

  // group leaves by isomorphism class
  std::vector<int> assigned(infos.size(), -1);
  for (size_t i = 0; i < infos.size(); ++i) {
    for (auto& cls : out.pims) {
      if (cls.rep.dim != infos[i].mod.dim || cls.head != infos[i].head) continue;
      if (find_isomorphism(cls.rep, infos[i].mod, seed) != IsoKind::None) {
        cls.count++;
        assigned[i] = 1;
        break;
      }
    }
    if (assigned[i] < 0) {
      PIMClass cls;
      cls.rep = infos[i].mod;
      cls.head = infos[i].head;
      cls.count = 1;
      cls.end_dims = endo_superalgebra(infos[i].mod, &infos[i].gen_coords);
      out.pims.push_back(std::move(cls));
    }
  }

  // super Wedderburn counting: regular = sum PIM_i^{n_i} with n_i = dim S or
  // dim S / 2 according to the type of the head
  out.wedderburn_ok = true;
  std::uint64_t sum = 0;
  for (const auto& cls : out.pims) {
    const auto& ty = out.simple_types[cls.head];
    int dimS = out.simples[cls.head].rep.dim;
    int expected = ty.type_q ? dimS / 2 : dimS;
    if (cls.count != expected) out.wedderburn_ok = false;
    sum += static_cast<std::uint64_t>(cls.count) * cls.rep.dim;
  }
  if (sum != static_cast<std::uint64_t>(R.rep.dim)) out.wedderburn_ok = false;
  return out;
}

WDimReport w_dim_check(const AlgebraPtr& g, const PChar& chi, const Subalgebra& m,
                       const std::vector<int>& m_indices, std::uint64_t seed) {
  const FieldCtx& F = *g->field;
  WDimReport rep;
  std::uint64_t p = F.p();
  rep.delta = 1;
  for (int i = 0; i < m.alg->dim0; ++i) rep.delta *= p;
  for (int i = 0; i < m.alg->dim1; ++i) rep.delta *= 2;
  rep.dim_u = 1;
  for (int i = 0; i < g->dim0; ++i) rep.dim_u *= p;
  for (int i = 0; i < g->dim1; ++i) rep.dim_u *= 2;

  ModuleRep Q;
  if (m_indices.empty()) {
    UAlgebraCtx u(g, chi);
    Q = regular_module(u, rep.dim_u).rep;
  } else {
    EtaResult eta = eta_character(m, restrict_chi(*g, chi, m));
    Q = induced_module(g, chi, m_indices, eta.k_eta);
  }
  Vec hint = vec_unit(F, Q.dim, 0);
  EndoData e = endo_superalgebra(Q, &hint);
  rep.end_dim = e.dim_even + e.dim_odd;
  rep.ok = (rep.delta * rep.delta * static_cast<std::uint64_t>(rep.end_dim) == rep.dim_u);
  (void)seed;
  return rep;
}

}  // namespace modsuper
