#include "modsuper/reduction.hpp"

#include "modsuper/jordan.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace modsuper {

ChiJordan jordan_decomp_chi(const AlgebraPtr& g, const PChar& chi) {
  const FieldCtx& F = *g->field;
  Vec x = element_from_chi(*g, chi);
  Matrix M = g->model_of(x);
  JordanChevalley jc = jordan_chevalley(M);
  ChiJordan out;
  out.s_element = g->coords_of_model(jc.S);
  out.n_element = g->coords_of_model(jc.N);
  out.chi_s = chi_from_element(*g, out.s_element);
  out.chi_n = chi_from_element(*g, out.n_element);
  // chi = chi_s + chi_n exactly
  for (int i = 0; i < g->dim0; ++i)
    if (!(F.add(out.chi_s.even_dual[i], out.chi_n.even_dual[i]) == chi.even_dual[i]))
      throw std::logic_error("jordan_decomp_chi: decomposition does not add up");
  return out;
}

LeviData levi_parabolic(const AlgebraPtr& g, const PChar& chi_s, const PChar& chi_full) {
  const FieldCtx& F = *g->field;
  LeviData out;
  out.g = g;
  out.roots = root_decomposition(g);
  Vec s = element_from_chi(*g, chi_s);

  // s must lie in the span of the standard Cartan
  {
    RowSpan h(g->field, g->dim());
    for (int i : out.roots.cartan) h.insert(vec_unit(F, g->dim(), i));
    if (!h.contains(s))
      throw std::invalid_argument("levi_parabolic: s is not in the standard Cartan");
  }

  for (const Root& r : out.roots.roots)
    if (F.is_zero(out.roots.eval(r.coords, s))) out.levi_roots.push_back(r.coords);

  auto is_compatible = [&](const PositiveSystem& P) {
    auto simples = simple_roots(out.roots, P);
    std::vector<RootVec> pi_l;
    for (const auto& a : simples)
      if (std::find(out.levi_roots.begin(), out.levi_roots.end(), a) != out.levi_roots.end())
        pi_l.push_back(a);
    // positive Levi roots must all be N-combinations of pi_l
    std::set<RootVec> reach(pi_l.begin(), pi_l.end());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<RootVec> next;
      for (const auto& a : reach)
        for (const auto& b : pi_l) {
          RootVec c = a;
          for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
          if (P.contains(c) && !reach.count(c) &&
              std::find(out.levi_roots.begin(), out.levi_roots.end(), c) != out.levi_roots.end())
            next.push_back(c);
        }
      for (auto& c : next)
        if (reach.insert(c).second) grew = true;
    }
    for (const auto& a : out.levi_roots)
      if (P.contains(a) && !reach.count(a)) return false;
    return true;
  };

  // breadth-first search over positive systems by simple reflections
  PositiveSystem start = standard_positive_system(out.roots);
  std::set<std::set<RootVec>> visited;
  std::deque<PositiveSystem> queue;
  queue.push_back(start);
  visited.insert(start.pos);
  bool found = false;
  PositiveSystem chosen;
  int steps = 0;
  while (!queue.empty()) {
    PositiveSystem P = queue.front();
    queue.pop_front();
    if (is_compatible(P)) {
      chosen = P;
      found = true;
      break;
    }
    if (++steps > 20000)
      throw std::domain_error("levi_parabolic: search exhausted without a compatible system");
    for (const auto& delta : simple_roots(out.roots, P)) {
      PositiveSystem Q = odd_reflection(out.roots, P, delta);
      if (visited.insert(Q.pos).second) queue.push_back(Q);
    }
  }
  if (!found)
    throw std::domain_error("levi_parabolic: no compatible simple system found");
  out.positives = chosen;

  // assemble index sets
  std::set<RootVec> levi_set(out.levi_roots.begin(), out.levi_roots.end());
  out.l_indices = out.roots.cartan;
  int u0 = 0, u1 = 0;
  for (const Root& r : out.roots.roots) {
    if (levi_set.count(r.coords)) {
      for (int i : r.space) out.l_indices.push_back(i);
    } else if (chosen.contains(r.coords)) {
      for (int i : r.space) {
        out.u_indices.push_back(i);
        (g->parity[i] == 0 ? u0 : u1)++;
      }
    } else {
      for (int i : r.space) out.u_minus_indices.push_back(i);
    }
  }
  std::sort(out.l_indices.begin(), out.l_indices.end());
  std::sort(out.u_indices.begin(), out.u_indices.end());
  std::sort(out.u_minus_indices.begin(), out.u_minus_indices.end());
  out.p_indices = out.l_indices;
  out.p_indices.insert(out.p_indices.end(), out.u_indices.begin(), out.u_indices.end());
  std::sort(out.p_indices.begin(), out.p_indices.end());
  out.u_dims = {u0, u1};

  // chi vanishes on u, exactly
  for (int i : out.u_indices)
    if (i < g->dim0 && !F.is_zero(chi_full.even_dual[i]))
      throw TheoremViolation("levi_parabolic: chi does not vanish on u");

  std::vector<Vec> lu, pu;
  for (int i : out.l_indices) lu.push_back(vec_unit(F, g->dim(), i));
  for (int i : out.p_indices) pu.push_back(vec_unit(F, g->dim(), i));
  out.l = subalgebra_from_basis(g, lu);   // closure under bracket and p-power
  out.p = subalgebra_from_basis(g, pu);
  return out;
}

UInvariantsReport u_invariants_check(const ModuleRep& M, const LeviData& levi,
                                     std::uint64_t seed) {
  const FieldCtx& F = M.field();
  UInvariantsReport rep;
  std::uint64_t p = static_cast<std::uint64_t>(F.p());
  rep.scale = 1;
  for (int i = 0; i < levi.u_dims.first; ++i) rep.scale *= p;
  for (int i = 0; i < levi.u_dims.second; ++i) rep.scale *= 2;

  // common kernel of the u-action
  std::vector<Vec> rows;
  for (int i : levi.u_indices)
    for (int r = 0; r < M.dim; ++r) rows.push_back(M.action[i].row(r));
  std::vector<Vec> inv;
  if (rows.empty()) {
    for (int i = 0; i < M.dim; ++i) inv.push_back(vec_unit(F, M.dim, i));
  } else {
    Matrix sys = Matrix::from_rows(M.g->field, rows, M.dim);
    inv = kernel_basis(sys);
  }
  rep.invariants_dim = static_cast<int>(inv.size());

  bool dims_ok = rep.scale * static_cast<std::uint64_t>(rep.invariants_dim) ==
                 static_cast<std::uint64_t>(M.dim);

  // restrict to l and test simplicity (M^u is l-stable since [l,u] <= u)
  ModuleRep over_l = submodule_on(restrict_module(M, levi.l), inv);
  auto verdict = is_simple(over_l, seed);
  if (verdict.verdict == MeatAxeOutcome::Verdict::Unknown)
    throw UnknownResult("u_invariants_check: simplicity of M^u inconclusive");
  rep.simple_over_l = verdict.verdict == MeatAxeOutcome::Verdict::Simple;
  rep.ok = dims_ok && rep.simple_over_l;
  if (!rep.ok) {
    std::ostringstream os;
    os << "dim M = " << M.dim << ", scale = " << rep.scale << ", dim M^u = "
       << rep.invariants_dim << (rep.simple_over_l ? "" : "; M^u is not simple over l");
    rep.detail = os.str();
  }
  return rep;
}

MoritaReport morita_desk_check(const AlgebraPtr& g, const PChar& chi,
                               std::uint64_t l_regular_bound, std::uint64_t seed) {
  const FieldCtx& F = *g->field;
  MoritaReport rep;
  ChiJordan cj = jordan_decomp_chi(g, chi);
  // chi_n restricted to l is nilpotent: n lies in the centralizer of s
  LeviData levi = levi_parabolic(g, cj.chi_s, chi);

  std::uint64_t p = static_cast<std::uint64_t>(F.p());
  rep.scale = 1;
  for (int i = 0; i < levi.u_dims.first; ++i) rep.scale *= p;
  for (int i = 0; i < levi.u_dims.second; ++i) rep.scale *= 2;

  // all simples of U_chi(l) from its regular module
  PChar chi_l = restrict_chi(*g, chi, levi.l);
  UAlgebraCtx ul(levi.l.alg, chi_l);
  RegularModule Rl = regular_module(ul, l_regular_bound);
  auto l_simples = composition_factors(Rl.rep, seed);

  // lift each l-simple to p with u acting by zero, induce to g
  std::map<int, int> l_index;  // basis index in g -> slot in l
  for (size_t k = 0; k < levi.l.embedding.size(); ++k) {
    int parent = -1;
    for (int i = 0; i < g->dim(); ++i)
      if (!F.is_zero(levi.l.embedding[k][i])) parent = i;
    l_index[parent] = static_cast<int>(k);
  }
  std::vector<int> psorted = levi.p_indices;
  std::sort(psorted.begin(), psorted.end());
  Subalgebra psub = levi.p;

  std::vector<ModuleRep> induced;
  rep.ok = true;
  for (const auto& cf : l_simples) {
    const ModuleRep& N = cf.rep;
    ModuleRep W;
    W.g = psub.alg;
    W.chi = restrict_chi(*g, chi, psub);
    W.dim = N.dim;
    W.parity = N.parity;
    W.labels = N.labels;
    for (size_t k = 0; k < psub.embedding.size(); ++k) {
      int parent = -1;
      for (int i = 0; i < g->dim(); ++i)
        if (!F.is_zero(psub.embedding[k][i])) parent = i;
      auto it = l_index.find(parent);
      if (it != l_index.end())
        W.action.push_back(N.action[it->second]);
      else
        W.action.push_back(Matrix(g->field, N.dim, N.dim));  // u acts by zero
    }
    auto wrep = W.verify();
    if (!wrep.ok) throw std::logic_error("morita: lifted module fails invariants: " + wrep.detail);

    ModuleRep M = induced_module(g, chi, psorted, W);
    MoritaLine line;
    line.l_dim = N.dim;
    line.induced_dim = M.dim;
    line.l_type = endo_superalgebra(N);
    line.g_type = endo_superalgebra(M);
    auto verdict = is_simple(M, seed);
    if (verdict.verdict == MeatAxeOutcome::Verdict::Unknown)
      throw UnknownResult("morita_desk_check: induced module inconclusive");
    line.induced_simple = verdict.verdict == MeatAxeOutcome::Verdict::Simple;

    auto uinv = u_invariants_check(M, levi, seed);
    ModuleRep Mu = [&] {
      std::vector<Vec> rows;
      for (int i : levi.u_indices)
        for (int r = 0; r < M.dim; ++r) rows.push_back(M.action[i].row(r));
      std::vector<Vec> inv;
      if (rows.empty()) {
        for (int i = 0; i < M.dim; ++i) inv.push_back(vec_unit(F, M.dim, i));
      } else {
        Matrix sys = Matrix::from_rows(M.g->field, rows, M.dim);
        inv = kernel_basis(sys);
      }
      return submodule_on(restrict_module(M, levi.l), inv);
    }();
    line.invariants_match = (find_isomorphism(Mu, N, seed) != IsoKind::None) && uinv.ok;

    bool line_ok = line.induced_simple && line.invariants_match &&
                   line.induced_dim ==
                       static_cast<int>(rep.scale * static_cast<std::uint64_t>(N.dim)) &&
                   line.l_type.dim_even == line.g_type.dim_even &&
                   line.l_type.dim_odd == line.g_type.dim_odd;
    rep.ok = rep.ok && line_ok;
    rep.lines.push_back(line);
    induced.push_back(M);
  }

  rep.pairwise_distinct = true;
  for (size_t i = 0; i < induced.size(); ++i)
    for (size_t j = i + 1; j < induced.size(); ++j)
      if (find_isomorphism(induced[i], induced[j], seed) != IsoKind::None)
        rep.pairwise_distinct = false;
  rep.ok = rep.ok && rep.pairwise_distinct;
  if (!rep.ok) rep.detail = "one or more correspondence lines failed";
  return rep;
}

}  // namespace modsuper
