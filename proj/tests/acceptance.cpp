// Acceptance suite: one test case per criterion, each printing a single
// [PASS]/[FAIL] line. Every tolerance here is an exact equality; runtime
// guards use the stated wall-clock budgets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "modsuper/grading.hpp"
#include "modsuper/meataxe.hpp"
#include "modsuper/reduction.hpp"

using namespace modsuper;

namespace {

struct KWRecord {
  std::string name;
  std::uint64_t dim;
  std::uint64_t divisor;
};
std::vector<KWRecord> g_kw_records;

void record_dim(const std::string& name, std::uint64_t dim, std::uint64_t divisor) {
  g_kw_records.push_back({name, dim, divisor});
}

struct Criterion {
  int number;
  std::string text;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool done = false;

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  void finish(bool ok) {
    done = true;
    std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number, text.c_str(),
                seconds());
    std::fflush(stdout);
  }
  ~Criterion() {
    if (!done) std::printf("[FAIL] criterion %d: %s (aborted)\n", number, text.c_str());
  }
};

int label_index(const LieSuperAlgebra& g, const std::string& label) {
  for (int i = 0; i < g.dim(); ++i)
    if (g.labels[i] == label) return i;
  throw std::runtime_error("label not found: " + label);
}

TriangularDecomp standard_triangular(const AlgebraPtr& g) {
  auto rs = root_decomposition(g);
  auto P = standard_positive_system(rs);
  auto t = triangular_data(rs, P);
  return {t.cartan, t.n_plus, t.n_minus};
}

std::pair<Scalar, Scalar> solvable_ss_value(const FieldCtx& F) {
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    Scalar lam = F.element(i);
    Scalar d = F.sub(F.pow(lam, static_cast<std::uint64_t>(F.p())), lam);
    if (!F.is_zero(d)) return {lam, F.frobenius_root(d)};
  }
  throw std::runtime_error("prime field only");
}

PChar osp12_nilregular(const AlgebraPtr& g) {
  return chi_from_values(*g, {{label_index(*g, "f"), g->field->one()}});
}

// sum of the indecomposable even positive root vectors
Vec even_regular_nilpotent(const AlgebraPtr& g) {
  const FieldCtx& F = *g->field;
  auto rs = root_decomposition(g);
  auto P = standard_positive_system(rs);
  std::set<RootVec> even_pos;
  for (const Root& r : rs.roots)
    if (r.parity == 0 && P.contains(r.coords)) even_pos.insert(r.coords);
  Vec X(g->dim(), F.zero());
  for (const RootVec& a : even_pos) {
    bool decomposable = false;
    for (const RootVec& b : even_pos)
      for (const RootVec& c : even_pos) {
        RootVec s = b;
        for (size_t i = 0; i < s.size(); ++i) s[i] += c[i];
        if (s == a) decomposable = true;
      }
    if (!decomposable)
      for (int i : rs.find(a)->space) X[i] = F.one();
  }
  return X;
}

}  // namespace

TEST_CASE("criterion 1: osp(1|2) regular semisimple") {
  Criterion cr{1, "osp(1|2) regular semisimple: p simples of dim 2p, type M, semisimple algebra"};
  bool ok = true;
  for (long p : {3L, 5L}) {
    auto t0 = std::chrono::steady_clock::now();
    auto F = make_field(p, 2);
    auto g = construct_osp12(F);
    auto [lam0, chi_h] = solvable_ss_value(*F);
    PChar chi = chi_from_values(*g, {{label_index(*g, "h"), chi_h}});
    auto tri = standard_triangular(g);
    UAlgebraCtx u(g, chi);
    WeightSet ws = lambda_set(u, {label_index(*g, "h")});
    REQUIRE(ws.weights.size() == static_cast<size_t>(p));
    std::uint64_t divisor = super_kw_divisor(*g, chi);
    CHECK(divisor == static_cast<std::uint64_t>(2 * p));
    std::vector<ModuleRep> Z;
    std::uint64_t sum_sq = 0;
    for (const Vec& w : ws.weights) {
      Z.push_back(baby_verma(g, chi, tri, {w[0]}));
      REQUIRE(Z.back().dim == 2 * p);
      auto v = is_simple(Z.back(), 1);
      REQUIRE(v.verdict == MeatAxeOutcome::Verdict::Simple);
      EndoData e = endo_superalgebra(Z.back());
      CHECK(e.dim_even == 1);
      CHECK(e.dim_odd == 0);
      ok = ok && e.dim_even == 1 && e.dim_odd == 0;
      sum_sq += static_cast<std::uint64_t>(Z.back().dim) * Z.back().dim;
      record_dim("c1 p=" + std::to_string(p) + " simple", Z.back().dim, divisor);
    }
    for (size_t i = 0; i < Z.size(); ++i)
      for (size_t j = i + 1; j < Z.size(); ++j) {
        bool iso = find_isomorphism(Z[i], Z[j]) != IsoKind::None;
        CHECK(!iso);
        ok = ok && !iso;
      }
    std::uint64_t dimU = 4 * static_cast<std::uint64_t>(p) * p * p;
    CHECK(sum_sq == dimU);
    ok = ok && (sum_sq == dimU);
    bool ss = is_semisimple(u);
    CHECK(ss);
    ok = ok && ss;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double limit = (p == 3) ? 120.0 : 1200.0;
    CHECK(secs <= limit);
    ok = ok && (secs <= limit);
  }
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 2: osp(1|2) regular nilpotent") {
  Criterion cr{2, "osp(1|2) regular nilpotent: Verma classes, types, multiplicities, PIMs"};
  bool ok = true;
  for (long p : {3L, 5L}) {
    auto F = make_field(p);
    auto g = construct_osp12(F);
    PChar chi = osp12_nilregular(g);
    std::uint64_t divisor = super_kw_divisor(*g, chi);
    auto tri = standard_triangular(g);
    std::vector<ModuleRep> Z;
    for (long lam = 0; lam < p; ++lam)
      Z.push_back(baby_verma(g, chi, tri, {F->from_int(lam)}));
    long middle = (p - 1) / 2;
    for (long lam = 0; lam < p; ++lam) {
      auto v = is_simple(Z[lam], 1);
      REQUIRE(v.verdict == MeatAxeOutcome::Verdict::Simple);
      EndoData e = endo_superalgebra(Z[lam]);
      bool expect_q = (lam == middle);
      CHECK(e.type_q == expect_q);
      CHECK(e.dim_even == 1);
      CHECK(e.dim_odd == (expect_q ? 1 : 0));
      ok = ok && (e.type_q == expect_q);
    }
    // isomorphism pattern detected by the intertwiner solver
    for (long a = 0; a < p; ++a)
      for (long b = a + 1; b < p; ++b) {
        bool iso = find_isomorphism(Z[a], Z[b]) != IsoKind::None;
        bool expect = (b == p - 1 - a);
        CHECK(iso == expect);
        ok = ok && (iso == expect);
      }
    // regular-module multiplicities, PIM dimensions, End(P) dimensions
    UAlgebraCtx u(g, chi);
    CartanData cd = cartan_data(u, 600, 2);
    CHECK(cd.simples.size() == static_cast<size_t>((p + 1) / 2));
    ok = ok && cd.simples.size() == static_cast<size_t>((p + 1) / 2);
    for (auto& cf : cd.simples) {
      long lam = -1;
      for (long l = 0; l <= middle; ++l)
        if (find_isomorphism(cf.rep, Z[l]) != IsoKind::None) lam = l;
      REQUIRE(lam >= 0);
      int expect_mult = (lam == middle) ? 2 * p : 4 * p;
      CHECK(cf.multiplicity == expect_mult);
      ok = ok && (cf.multiplicity == expect_mult);
      record_dim("c2 p=" + std::to_string(p) + " simple", cf.rep.dim, divisor);
    }
    CHECK(cd.wedderburn_ok);
    ok = ok && cd.wedderburn_ok;
    for (auto& cls : cd.pims) {
      CHECK(cls.rep.dim == 4 * p);
      ok = ok && cls.rep.dim == 4 * p;
      bool q = cd.simple_types[cls.head].type_q;
      CHECK(cls.end_dims.dim_even == 2);
      CHECK(cls.end_dims.dim_odd == (q ? 2 : 0));
      ok = ok && cls.end_dims.dim_even == 2 && cls.end_dims.dim_odd == (q ? 2 : 0);
      record_dim("c2 p=" + std::to_string(p) + " pim", cls.rep.dim, divisor);
    }
  }
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 3: osp(1|2) restricted") {
  Criterion cr{3, "osp(1|2) restricted: simples 2l+1, Verma factors, PIMs by reciprocity"};
  bool ok = true;
  for (long p : {3L, 5L, 7L}) {
    auto F = make_field(p);
    auto g = construct_osp12(F);
    std::vector<ModuleRep> L;
    for (long lam = 0; lam < p; ++lam) {
      L.push_back(osp12_restricted_simple(g, lam));
      REQUIRE(L.back().dim == 2 * lam + 1);
      auto v = is_simple(L.back(), 1);
      REQUIRE(v.verdict == MeatAxeOutcome::Verdict::Simple);
      record_dim("c3 p=" + std::to_string(p) + " L", L.back().dim, 1);
    }
    // composition factors of every baby Verma
    std::vector<std::vector<int>> count(p, std::vector<int>(p, 0));
    for (long mu = 0; mu < p; ++mu) {
      ModuleRep Zmu = osp12_verma_closed_form(g, zero_chi(*g), F->from_int(mu));
      for (auto& cf : composition_factors(Zmu, 1)) {
        long lam = -1;
        for (long l = 0; l < p; ++l)
          if (cf.rep.dim == L[l].dim && find_isomorphism(cf.rep, L[l]) != IsoKind::None) lam = l;
        REQUIRE(lam >= 0);
        count[mu][lam] += cf.multiplicity;
      }
      bool factors_ok;
      if (mu == p - 1 - mu) {
        factors_ok = count[mu][mu] == 2;
      } else {
        factors_ok = count[mu][mu] == 1 && count[mu][p - 1 - mu] == 1;
      }
      int total = 0;
      for (long l = 0; l < p; ++l) total += count[mu][l] * L[l].dim;
      factors_ok = factors_ok && (total == 2 * p);
      CHECK(factors_ok);
      ok = ok && factors_ok;
    }
    // Brauer-type reciprocity: (P(l):Z(mu)) = [Z(mu):L(l)], counts in {0,1}
    // away from the middle self-pair, and dim P(l) = 4p for every l
    long middle = (p - 1) / 2;
    for (long lam = 0; lam < p; ++lam) {
      std::uint64_t dimP = 0;
      for (long mu = 0; mu < p; ++mu) {
        int c = count[mu][lam];
        if (!(mu == middle && lam == middle)) {
          CHECK((c == 0 || c == 1));
          ok = ok && (c == 0 || c == 1);
        } else {
          CHECK(c == 2);
          ok = ok && (c == 2);
        }
        dimP += static_cast<std::uint64_t>(c) * 2 * p;
      }
      CHECK(dimP == static_cast<std::uint64_t>(4 * p));
      ok = ok && dimP == static_cast<std::uint64_t>(4 * p);
      record_dim("c3 p=" + std::to_string(p) + " pim", dimP, 1);
    }
    // direct cross-check via the regular module at p = 3
    if (p == 3) {
      UAlgebraCtx u(g, zero_chi(*g));
      CartanData cd = cartan_data(u, 600, 3);
      std::vector<int> dims;
      for (auto& cf : cd.simples) dims.push_back(cf.rep.dim);
      std::sort(dims.begin(), dims.end());
      bool cok = dims == std::vector<int>{1, 3, 5} && cd.wedderburn_ok;
      for (auto& cls : cd.pims) cok = cok && cls.rep.dim == 12;
      CHECK(cok);
      ok = ok && cok;
    }
  }
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 4: gl(3|2) centralizer by three routes") {
  Criterion cr{4, "gl(3|2) centralizer dims 5|4 by kernel, partition formula, grading"};
  bool ok = true;
  for (long p : {3L, 5L, 7L}) {
    auto g = construct_gl(make_field(p), 3, 2);
    const FieldCtx& F = *g->field;
    Vec X(g->dim(), F.zero());
    X[label_index(*g, "E(1,2)")] = F.one();
    X[label_index(*g, "E(2,3)")] = F.one();
    X[label_index(*g, "E(4,5)")] = F.one();
    // route 1: kernel computation through the character
    PChar chi = chi_from_element(*g, X);
    auto c = centralizer(*g, chi);
    bool r1 = c.basis_even.size() == 5 && c.basis_odd.size() == 4;
    // route 2: partition formula
    auto [de, dodd] = centralizer_dims_by_partition({3}, {2});
    bool r2 = de == 5 && dodd == 4;
    // route 3: grading dimension identity
    ZGrading z = induce_grading(g, X);
    GradingReport rep = verify_grading(z);
    bool r3 = rep.ok && rep.centralizer_dims == std::pair<int, int>{5, 4};
    CHECK(r1);
    CHECK(r2);
    CHECK(r3);
    ok = ok && r1 && r2 && r3;
  }
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 5: grading property suite on random nilpotents") {
  Criterion cr{5, "grading properties on 50 random gl nilpotents and 20 osp gradings"};
  bool ok = true;
  std::mt19937_64 rng(20260810);
  int gl_done = 0;
  std::vector<std::pair<int, int>> gl_shapes = {{2, 1}, {1, 2}, {2, 2}, {3, 2}, {2, 3}, {3, 3},
                                                {4, 2}, {5, 1}, {4, 1}, {1, 4}};
  std::vector<long> primes = {3, 5, 7};
  while (gl_done < 50) {
    auto [m, n] = gl_shapes[gl_done % gl_shapes.size()];
    long p = primes[gl_done % primes.size()];
    auto g = construct_gl(make_field(p), m, n);
    const FieldCtx& F = *g->field;
    Vec X(g->dim(), F.zero());
    for (int i = 0; i < g->dim0; ++i) {
      const Matrix& M = g->model[i];
      int a = -1, b = -1;
      for (int r = 0; r < M.rows(); ++r)
        for (int cc = 0; cc < M.cols(); ++cc)
          if (!F.is_zero(M.at(r, cc))) {
            a = r;
            b = cc;
          }
      if ((a < m) == (b < m) && a < b) X[i] = F.random(rng);
    }
    ZGrading z = induce_grading(g, X);
    GradingReport rep = verify_grading(z);
    if (!rep.ok) {
      std::printf("  [gl] failure at gl(%d|%d) p=%ld: %s\n", m, n, p, rep.detail.c_str());
      ok = false;
    }
    ++gl_done;
  }
  int osp_done = 0, osp_attempts = 0;
  std::vector<std::pair<int, int>> osp_shapes = {{1, 2}, {3, 2}, {1, 4}, {2, 2}, {2, 4}, {4, 2}};
  while (osp_done < 20 && osp_attempts < 60) {
    auto [m0, m1] = osp_shapes[osp_attempts % osp_shapes.size()];
    long p = primes[osp_attempts % primes.size()];
    ++osp_attempts;
    auto g = construct_osp(make_field(p), m0, m1);
    const FieldCtx& F = *g->field;
    auto rs = root_decomposition(g);
    auto P = standard_positive_system(rs);
    Vec X(g->dim(), F.zero());
    for (const Root& r : rs.roots) {
      if (r.parity != 0 || !P.contains(r.coords)) continue;
      for (int i : r.space)
        if (rng() % 2 == 0) X[i] = F.random(rng);
    }
    try {
      ZGrading z = induce_grading(g, X, osp_attempts);
      GradingReport rep = verify_grading(z);
      if (!rep.ok) {
        std::printf("  [osp] property failure at osp(%d|%d) p=%ld: %s\n", m0, m1, p,
                    rep.detail.c_str());
        ok = false;
      }
      ++osp_done;
    } catch (const std::domain_error& e) {
      // the compatible-basis search may legitimately fail on degenerate
      // small-p instances; record and skip
      std::printf("  [osp] skipped osp(%d|%d) p=%ld: %s\n", m0, m1, p, e.what());
    }
  }
  CHECK(osp_done == 20);
  ok = ok && (osp_done == 20);
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 6: super divisibility audit") {
  Criterion cr{6, "every recorded simple and PIM dimension is divisible by the divisor"};
  bool ok = true;
  // sweeps: gl(1|1) semisimple and restricted, sl(1|1) semisimple, gl(2|1) nilpotent
  {
    auto F = make_field(3, 2);
    auto g = construct_gl(F, 1, 1);
    Vec S(g->dim(), F->zero());
    S[label_index(*g, "E(1,1)")] = F->one();
    S[label_index(*g, "E(2,2)")] = F->from_int(2);
    PChar chi = chi_from_element(*g, S);
    std::uint64_t divisor = super_kw_divisor(*g, chi);
    UAlgebraCtx u(g, chi);
    RegularModule R = regular_module(u);
    for (auto& cf : composition_factors(R.rep, 6))
      record_dim("gl(1|1) ss simple", cf.rep.dim, divisor);
  }
  {
    auto g = construct_gl(make_field(3), 1, 1);
    UAlgebraCtx u(g, zero_chi(*g));
    CartanData cd = cartan_data(u, 600, 6);
    for (auto& cf : cd.simples) record_dim("gl(1|1) restricted simple", cf.rep.dim, 1);
    for (auto& cls : cd.pims) record_dim("gl(1|1) restricted pim", cls.rep.dim, 1);
  }
  {
    auto F = make_field(3, 2);
    auto s = construct_sl(F, 1, 1);
    auto [lam0, chi_h] = solvable_ss_value(*F);
    PChar chi = chi_from_values(*s, {{label_index(*s, "H(1)"), chi_h}});
    std::uint64_t divisor = super_kw_divisor(*s, chi);
    UAlgebraCtx u(s, chi);
    RegularModule R = regular_module(u);
    for (auto& cf : composition_factors(R.rep, 7))
      record_dim("sl(1|1) ss simple", cf.rep.dim, divisor);
  }
  {
    auto g = construct_gl(make_field(3), 2, 1);
    const FieldCtx& F = *g->field;
    Vec X(g->dim(), F.zero());
    X[label_index(*g, "E(1,2)")] = F.one();
    PChar chi = chi_from_element(*g, X);
    std::uint64_t divisor = super_kw_divisor(*g, chi);
    auto tri = standard_triangular(g);
    UAlgebraCtx u(g, chi);
    WeightSet ws = lambda_set(u, tri.cartan);
    for (const Vec& w : ws.weights) {
      ModuleRep Z = baby_verma(g, chi, tri, w);
      for (auto& cf : composition_factors(Z, 8))
        record_dim("gl(2|1) nilregular factor", cf.rep.dim, divisor);
    }
  }
  int violations = 0;
  for (const auto& rec : g_kw_records)
    if (rec.dim % rec.divisor != 0) {
      ++violations;
      std::printf("  violation: %s dim %llu divisor %llu\n", rec.name.c_str(),
                  static_cast<unsigned long long>(rec.dim),
                  static_cast<unsigned long long>(rec.divisor));
    }
  std::printf("  audited %zu module dimensions, %d violations\n", g_kw_records.size(),
              violations);
  CHECK(violations == 0);
  CHECK(g_kw_records.size() > 40);
  ok = (violations == 0) && g_kw_records.size() > 40;
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 7: freeness surrogate over m") {
  Criterion cr{7, "dim M = dim U_chi(m) * dim M^m for simples in the nilpotent runs"};
  bool ok = true;
  // osp(1|2) regular nilpotent, p in {3,5}
  for (long p : {3L, 5L}) {
    auto g = construct_osp12(make_field(p));
    const FieldCtx& F = *g->field;
    PChar chi = osp12_nilregular(g);
    MPair mp = build_m(induce_grading(g, element_from_chi(*g, chi)));
    Subalgebra m = mp.m_sub_of(g);
    EtaResult eta = eta_character(m, restrict_chi(*g, chi, m));
    auto tri = standard_triangular(g);
    for (long lam = 0; lam <= (p - 1) / 2; ++lam) {
      ModuleRep Z = baby_verma(g, chi, tri, {F.from_int(lam)});
      auto fr = freeness_check(Z, m, eta.eta);
      CHECK(fr.ok);
      ok = ok && fr.ok;
    }
  }
  // gl(2|1) regular nilpotent: every simple factor of every Verma
  {
    auto g = construct_gl(make_field(3), 2, 1);
    const FieldCtx& F = *g->field;
    Vec X(g->dim(), F.zero());
    X[label_index(*g, "E(1,2)")] = F.one();
    PChar chi = chi_from_element(*g, X);
    MPair mp = build_m(induce_grading(g, X));
    Subalgebra m = mp.m_sub_of(g);
    EtaResult eta = eta_character(m, restrict_chi(*g, chi, m));
    auto tri = standard_triangular(g);
    UAlgebraCtx u(g, chi);
    WeightSet ws = lambda_set(u, tri.cartan);
    std::vector<ModuleRep> seen;
    for (const Vec& w : ws.weights) {
      ModuleRep Z = baby_verma(g, chi, tri, w);
      for (auto& cf : composition_factors(Z, 11)) {
        bool dup = false;
        for (auto& s : seen)
          if (s.dim == cf.rep.dim && find_isomorphism(s, cf.rep) != IsoKind::None) dup = true;
        if (dup) continue;
        seen.push_back(cf.rep);
        auto fr = freeness_check(cf.rep, m, eta.eta);
        CHECK(fr.ok);
        ok = ok && fr.ok;
      }
    }
    std::printf("  gl(2|1) nilregular: %zu distinct simples checked\n", seen.size());
  }
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 8: W-dimension identity") {
  Criterion cr{8, "osp(1|2) p=3 regular nilpotent: dim End(Q_m) = 108/9 = 12"};
  auto g = construct_osp12(make_field(3));
  const FieldCtx& F = *g->field;
  PChar chi = osp12_nilregular(g);
  MPair mp = build_m(induce_grading(g, element_from_chi(*g, chi)));
  Subalgebra m = mp.m_sub_of(g);
  // coordinates of m inside g: the adapted basis vector is a multiple of f
  std::vector<int> m_idx;
  for (const Vec& v : m.embedding) {
    int support = -1;
    for (int i = 0; i < g->dim(); ++i)
      if (!F.is_zero(v[i])) support = i;
    m_idx.push_back(support);
  }
  WDimReport rep = w_dim_check(g, chi, m, m_idx);
  bool ok = rep.ok && rep.delta == 3 && rep.dim_u == 108 && rep.end_dim == 12;
  CHECK(rep.delta == 3);
  CHECK(rep.dim_u == 108);
  CHECK(rep.end_dim == 12);
  CHECK(rep.ok);
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 9: osp(1|4) regular nilpotent baby Verma is simple") {
  Criterion cr{9, "osp(1|4) p=3: the 324-dim baby Verma is simple, stable across 3 seeds"};
  auto t0 = std::chrono::steady_clock::now();
  auto g = construct_osp(make_field(3), 1, 4);
  const FieldCtx& F = *g->field;
  Vec X = even_regular_nilpotent(g);
  PChar chi = chi_from_element(*g, X);
  auto tri = standard_triangular(g);
  Vec lambda(tri.cartan.size(), F.zero());
  ModuleRep Z = baby_verma(g, chi, tri, lambda);
  REQUIRE(Z.dim == 324);
  bool ok = true;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto v = is_simple(Z, seed);
    REQUIRE(v.verdict != MeatAxeOutcome::Verdict::Unknown);
    bool s = v.verdict == MeatAxeOutcome::Verdict::Simple;
    CHECK(s);
    ok = ok && s;
  }
  // freeness over m and the divisibility line
  MPair mp = build_m(induce_grading(g, X));
  Subalgebra m = mp.m_sub_of(g);
  EtaResult eta = eta_character(m, restrict_chi(*g, chi, m));
  auto fr = freeness_check(Z, m, eta.eta);
  CHECK(fr.ok);
  CHECK(fr.dim_m_module * fr.invariants_dim == 324);
  ok = ok && fr.ok;
  record_dim("c9 osp(1|4) verma", Z.dim, super_kw_divisor(*g, chi));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs <= 1800.0);
  ok = ok && secs <= 1800.0;
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 10: sl(1|1) rank-one semisimplicity") {
  Criterion cr{10, "sl(1|1) with chi(h) != 0: semisimple, p simples of dim 2, type M"};
  bool ok = true;
  for (long p : {3L, 5L}) {
    auto F = make_field(p, 2);
    auto s = construct_sl(F, 1, 1);
    auto [lam0, chi_h] = solvable_ss_value(*F);
    PChar chi = chi_from_values(*s, {{label_index(*s, "H(1)"), chi_h}});
    UAlgebraCtx u(s, chi);
    bool ss = is_semisimple(u);
    CHECK(ss);
    RegularModule R = regular_module(u);
    auto factors = composition_factors(R.rep, 10);
    CHECK(factors.size() == static_cast<size_t>(p));
    ok = ok && ss && factors.size() == static_cast<size_t>(p);
    for (auto& cf : factors) {
      EndoData e = endo_superalgebra(cf.rep);
      CHECK(cf.rep.dim == 2);
      CHECK(e.dim_even == 1);
      CHECK(e.dim_odd == 0);
      ok = ok && cf.rep.dim == 2 && e.dim_even == 1 && e.dim_odd == 0;
      record_dim("c10 sl(1|1) simple", cf.rep.dim, super_kw_divisor(*s, chi));
    }
  }
  cr.finish(ok);
  REQUIRE(ok);
}

TEST_CASE("criterion 11: Morita desk checks") {
  Criterion cr{11, "Levi correspondences for osp(1|2), gl(1|1) semisimple, gl(2|1) mixed"};
  bool ok = true;
  {
    auto F = make_field(3, 2);
    auto g = construct_osp12(F);
    auto [lam0, chi_h] = solvable_ss_value(*F);
    PChar chi = chi_from_values(*g, {{label_index(*g, "h"), chi_h}});
    MoritaReport rep = morita_desk_check(g, chi);
    CHECK(rep.ok);
    CHECK(rep.scale == 6);
    CHECK(rep.lines.size() == 3);
    ok = ok && rep.ok && rep.scale == 6 && rep.lines.size() == 3;
  }
  {
    auto F = make_field(3, 2);
    auto g = construct_gl(F, 1, 1);
    Vec S(g->dim(), F->zero());
    S[label_index(*g, "E(1,1)")] = F->one();
    S[label_index(*g, "E(2,2)")] = F->from_int(2);
    PChar chi = chi_from_element(*g, S);
    MoritaReport rep = morita_desk_check(g, chi);
    CHECK(rep.ok);
    CHECK(rep.scale == 2);
    ok = ok && rep.ok && rep.scale == 2;
  }
  {
    auto g = construct_gl(make_field(3), 2, 1);
    const FieldCtx& F = *g->field;
    Vec M(g->dim(), F.zero());
    M[label_index(*g, "E(1,1)")] = F.one();
    M[label_index(*g, "E(2,2)")] = F.one();
    M[label_index(*g, "E(3,3)")] = F.from_int(2);
    M[label_index(*g, "E(1,2)")] = F.one();
    PChar chi = chi_from_element(*g, M);
    MoritaReport rep = morita_desk_check(g, chi);
    CHECK(rep.ok);
    CHECK(rep.scale == 4);  // two odd u-roots
    ok = ok && rep.ok && rep.scale == 4;
  }
  cr.finish(ok);
  REQUIRE(ok);
}
