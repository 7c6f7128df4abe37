#ifndef MODSUPER_REDUCTION_HPP
#define MODSUPER_REDUCTION_HPP

#include "modsuper/meataxe.hpp"
#include "modsuper/roots.hpp"

namespace modsuper {

/// Jordan decomposition chi = chi_s + chi_n through the invariant form:
/// the element of chi decomposes as s + n in the matrix model.
struct ChiJordan {
  PChar chi_s, chi_n;
  Vec s_element, n_element;
};
ChiJordan jordan_decomp_chi(const AlgebraPtr& g, const PChar& chi);

/// Levi and parabolic data for a semisimple character: l is the centralizer
/// of s, presented by a positive system whose simple roots meet Phi(l) in a
/// simple system of Phi(l); u is spanned by the positive root spaces outside
/// Phi(l).
struct LeviData {
  AlgebraPtr g;
  RootSystem roots;
  PositiveSystem positives;
  std::vector<RootVec> levi_roots;
  std::vector<int> l_indices, u_indices, u_minus_indices, p_indices;
  Subalgebra l, p;
  std::pair<int, int> u_dims;  // (even, odd)
};
/// chi_full is used only for the exact check chi(u) = 0.
LeviData levi_parabolic(const AlgebraPtr& g, const PChar& chi_s, const PChar& chi_full);

struct UInvariantsReport {
  bool ok = false;
  int invariants_dim = 0;
  std::uint64_t scale = 1;  // p^{dim u_0} 2^{dim u_1}
  bool simple_over_l = false;
  std::string detail;
};
/// For a simple module M: M^u is U_chi(l)-simple and
/// dim M = scale * dim M^u.
UInvariantsReport u_invariants_check(const ModuleRep& M, const LeviData& levi,
                                     std::uint64_t seed = 1);

struct MoritaLine {
  int l_dim = 0;
  int induced_dim = 0;
  EndoData l_type, g_type;
  bool induced_simple = false;
  bool invariants_match = false;
};
struct MoritaReport {
  bool ok = false;
  std::uint64_t scale = 1;
  std::vector<MoritaLine> lines;
  bool pairwise_distinct = false;
  std::string detail;
};
/// Desk-scale equivalence check: every simple of U_chi(l) induces through the
/// parabolic to a simple of U_chi(g) with dimension multiplied by
/// p^{dim u_0} 2^{dim u_1} and the same endomorphism data; the induced family
/// is pairwise non-isomorphic and u-invariants recover the input.
MoritaReport morita_desk_check(const AlgebraPtr& g, const PChar& chi,
                               std::uint64_t l_regular_bound = 600, std::uint64_t seed = 1);

}  // namespace modsuper

#endif
