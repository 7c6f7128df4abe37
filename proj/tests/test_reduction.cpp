#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modsuper/reduction.hpp"

using namespace modsuper;

namespace {

int label_index(const LieSuperAlgebra& g, const std::string& label) {
  for (int i = 0; i < g.dim(); ++i)
    if (g.labels[i] == label) return i;
  throw std::runtime_error("label not found: " + label);
}

std::pair<Scalar, Scalar> semisimple_chi_value(const FieldCtx& F) {
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    Scalar lam = F.element(i);
    Scalar d = F.sub(F.pow(lam, static_cast<std::uint64_t>(F.p())), lam);
    if (!F.is_zero(d)) return {lam, F.frobenius_root(d)};
  }
  throw std::runtime_error("no element outside F_p");
}

}  // namespace

TEST_CASE("jordan decomposition of characters") {
  auto g = construct_gl(make_field(5), 2, 1);
  const FieldCtx& F = *g->field;
  // nilpotent chi: chi_s = 0
  Vec X(g->dim(), F.zero());
  X[label_index(*g, "E(1,2)")] = F.one();
  PChar chi_n = chi_from_element(*g, X);
  ChiJordan a = jordan_decomp_chi(g, chi_n);
  CHECK(a.chi_s.is_zero());
  CHECK(vec_is_zero(a.s_element));

  // semisimple chi: chi_n = 0
  Vec S(g->dim(), F.zero());
  S[label_index(*g, "E(1,1)")] = F.from_int(1);
  S[label_index(*g, "E(2,2)")] = F.from_int(2);
  PChar chi_s = chi_from_element(*g, S);
  ChiJordan b = jordan_decomp_chi(g, chi_s);
  CHECK(b.chi_n.is_zero());

  // mixed: s = diag(1,1,2), n = E12
  Vec Mx(g->dim(), F.zero());
  Mx[label_index(*g, "E(1,1)")] = F.one();
  Mx[label_index(*g, "E(2,2)")] = F.one();
  Mx[label_index(*g, "E(3,3)")] = F.from_int(2);
  Mx[label_index(*g, "E(1,2)")] = F.one();
  PChar chi = chi_from_element(*g, Mx);
  ChiJordan c = jordan_decomp_chi(g, chi);
  // the nilpotent part is the E(1,2) line
  CHECK(!vec_is_zero(c.n_element));
  CHECK(matrix_pow(g->model_of(c.n_element), 3).is_zero());
  // s and n commute
  CHECK(vec_is_zero(g->bracket(c.s_element, c.n_element)));
}

TEST_CASE("levi of s = 0 is the whole algebra; regular s gives the Cartan") {
  auto g = construct_gl(make_field(3), 2, 1);
  const FieldCtx& F = *g->field;
  LeviData whole = levi_parabolic(g, zero_chi(*g), zero_chi(*g));
  CHECK(whole.l_indices.size() == static_cast<size_t>(g->dim()));
  CHECK(whole.u_indices.empty());

  Vec S(g->dim(), F.zero());
  S[label_index(*g, "E(1,1)")] = F.from_int(1);
  S[label_index(*g, "E(2,2)")] = F.from_int(2);
  // the supertrace pairing that realizes this s as a chi may not vanish on
  // u; use chi_s both as the semisimple part and the full character of a
  // regular-semisimple test instance
  PChar chi_s = chi_from_element(*g, S);
  // alpha(s) != 0 for all six roots: s regular
  LeviData reg = levi_parabolic(g, chi_s, chi_s);
  CHECK(reg.l_indices.size() == 3);  // the Cartan
  CHECK(reg.u_indices.size() == 3);  // one root per positive line
  CHECK(reg.u_dims == std::pair<int, int>{1, 2});
}

TEST_CASE("levi for gl(2|1) with s = diag(c,c,d)") {
  auto g = construct_gl(make_field(3), 2, 1);
  const FieldCtx& F = *g->field;
  Vec S(g->dim(), F.zero());
  S[label_index(*g, "E(1,1)")] = F.one();
  S[label_index(*g, "E(2,2)")] = F.one();
  S[label_index(*g, "E(3,3)")] = F.from_int(2);
  PChar chi_s = chi_from_element(*g, S);
  LeviData levi = levi_parabolic(g, chi_s, chi_s);
  // Phi(l) = {+-(e1 - e2)}: l = gl(2) + gl(1), u = the two positive odd roots
  CHECK(levi.levi_roots.size() == 2);
  CHECK(levi.l_indices.size() == 5);
  CHECK(levi.u_indices.size() == 2);
  CHECK(levi.u_dims == std::pair<int, int>{0, 2});
  CHECK(verify_superalgebra(*levi.l.alg).ok);
}

TEST_CASE("morita desk check for gl(1|1) regular semisimple") {
  auto F = make_field(3, 2);
  auto g = construct_gl(F, 1, 1);
  auto [lam0, v1] = semisimple_chi_value(*F);
  // chi from a semisimple element diag(a, b) with a + b != 0 so that the odd
  // directions are not central; solvability of the weight equations is not
  // needed by the check
  const FieldCtx& FF = *F;
  Vec S(g->dim(), FF.zero());
  S[label_index(*g, "E(1,1)")] = FF.one();
  S[label_index(*g, "E(2,2)")] = FF.from_int(2);
  PChar chi = chi_from_element(*g, S);
  MoritaReport rep = morita_desk_check(g, chi);
  INFO(rep.detail);
  CHECK(rep.ok);
  CHECK(rep.scale == 2);  // u is one odd root vector
  CHECK(rep.pairwise_distinct);
  for (auto& line : rep.lines) {
    CHECK(line.induced_dim == 2 * line.l_dim);
    CHECK(line.induced_simple);
  }
}

TEST_CASE("morita desk check for osp(1|2) regular semisimple") {
  auto F = make_field(3, 2);
  auto g = construct_osp12(F);
  auto [lam0, chi_h] = semisimple_chi_value(*F);
  PChar chi = chi_from_values(*g, {{label_index(*g, "h"), chi_h}});
  MoritaReport rep = morita_desk_check(g, chi);
  INFO(rep.detail);
  CHECK(rep.ok);
  CHECK(rep.scale == 6);  // p^1 * 2^1
  REQUIRE(rep.lines.size() == 3);
  for (auto& line : rep.lines) {
    CHECK(line.l_dim == 1);
    CHECK(line.induced_dim == 6);
    CHECK(line.induced_simple);
    CHECK(line.invariants_match);
  }
}

TEST_CASE("u-invariants of regular semisimple Vermas are one-dimensional of weight lambda") {
  auto F = make_field(3, 2);
  auto g = construct_osp12(F);
  auto [lam0, chi_h] = semisimple_chi_value(*F);
  PChar chi = chi_from_values(*g, {{label_index(*g, "h"), chi_h}});
  ChiJordan cj = jordan_decomp_chi(g, chi);
  LeviData levi = levi_parabolic(g, cj.chi_s, chi);
  TriangularDecomp tri{{label_index(*g, "h")},
                       {label_index(*g, "e"), label_index(*g, "E")},
                       {label_index(*g, "f"), label_index(*g, "F")}};
  UAlgebraCtx u(g, chi);
  WeightSet ws = lambda_set(u, {label_index(*g, "h")});
  for (const Vec& w : ws.weights) {
    ModuleRep Z = baby_verma(g, chi, tri, {w[0]});
    auto rep = u_invariants_check(Z, levi);
    INFO(rep.detail);
    CHECK(rep.ok);
    CHECK(rep.invariants_dim == 1);
    CHECK(rep.scale == 6);
  }
}

TEST_CASE("morita with chi = 0 degenerates to the identity correspondence") {
  auto g = construct_sl(make_field(3), 2, 1);
  // the levi of s = 0 is g itself; every simple corresponds to itself with
  // scale 1. Use the smallest afforded algebra to keep the regular module
  // tractable: gl(1|1) restricted.
  auto gl = construct_gl(make_field(3), 1, 1);
  MoritaReport rep = morita_desk_check(gl, zero_chi(*gl));
  CHECK(rep.scale == 1);
  CHECK(rep.ok);
  (void)g;
}
