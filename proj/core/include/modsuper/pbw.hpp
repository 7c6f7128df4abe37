#ifndef MODSUPER_PBW_HPP
#define MODSUPER_PBW_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "modsuper/module.hpp"
#include "modsuper/superalgebra.hpp"

namespace modsuper {

/// Ordered PBW monomial: one exponent per order position, even positions in
/// [0, p), odd positions in {0, 1}.
using Mon = std::vector<std::uint8_t>;

/// Finitely supported element of the reduced enveloping superalgebra in the
/// ordered monomial basis; zero coefficients are never stored.
struct UElement {
  std::map<Mon, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(const FieldCtx& F, const Mon& m, Scalar c);
  void add_scaled(const FieldCtx& F, const UElement& o, Scalar c);
};

/// Straightening context for U_chi(g) under a fixed total order of the basis.
/// The default order is: even before odd, degree ascending within parity when
/// degrees are attached, then basis index. Rewriting uses super-commutators
/// with Koszul signs, x^p -> x^{[p]} + chi(x)^p for even generators and
/// y^2 -> [y,y]/2 for odd ones; generator-by-monomial products are memoized.
class UAlgebraCtx {
 public:
  UAlgebraCtx(AlgebraPtr g, PChar chi);
  UAlgebraCtx(AlgebraPtr g, PChar chi, std::vector<int> order);

  static std::vector<int> standard_order(const LieSuperAlgebra& g,
                                         const std::vector<int>* degrees = nullptr);

  const AlgebraPtr& algebra() const { return g_; }
  const PChar& chi() const { return chi_; }
  const std::vector<int>& order() const { return order_; }
  int pos_of(int basis_idx) const { return pos_of_[basis_idx]; }
  int dim() const { return static_cast<int>(order_.size()); }

  Mon one() const { return Mon(order_.size(), 0); }
  /// Left product of a generator with a reduced monomial.
  const UElement& mul_gen_left(int gen, const Mon& m) const;
  /// Right product of a reduced monomial with a generator.
  const UElement& mul_gen_right(const Mon& m, int gen) const;

  UElement apply_gen_left(int gen, const UElement& u) const;
  UElement apply_gen_right(const UElement& u, int gen) const;

  /// Normal form of a word of generators, straightened right to left.
  UElement normal_form(const std::vector<int>& word) const;
  /// The same value straightened left to right (for confluence checks).
  UElement normal_form_lr(const std::vector<int>& word) const;

  /// p^{dim g_0} * 2^{dim g_1}, overflow-checked.
  std::uint64_t reduced_dim() const;

  /// All reduced monomials in counting order (last position fastest);
  /// throws when the count exceeds the bound.
  std::vector<Mon> all_monomials(std::uint64_t bound) const;
  /// Word of basis indices realizing m (factors listed in position order).
  std::vector<int> monomial_word(const Mon& m) const;
  std::string monomial_label(const Mon& m) const;
  int monomial_parity(const Mon& m) const;

  /// Content hash of (algebra, chi, order) for cache invalidation.
  std::string content_hash() const;
  /// Straightening cache persistence; silently recomputes on any mismatch.
  void save_cache(const std::string& dir) const;
  bool load_cache(const std::string& dir);

 private:
  AlgebraPtr g_;
  PChar chi_;
  std::vector<int> order_;
  std::vector<int> pos_of_;
  std::vector<Scalar> chi_pow_p_;  // chi(x_i)^p per basis index

  struct MonKey {
    int gen;
    Mon m;
    bool operator==(const MonKey& o) const { return gen == o.gen && m == o.m; }
  };
  struct MonKeyHash {
    size_t operator()(const MonKey& k) const;
  };
  mutable std::unordered_map<MonKey, UElement, MonKeyHash> lmemo_;
  mutable std::unordered_map<MonKey, UElement, MonKeyHash> rmemo_;
};

/// Artin-Schreier weight solutions: all lambda on the given Cartan basis with
/// lambda(h)^p - lambda(h^{[p]}) = chi(h)^p. Requires the Cartan to be
/// p-closed inside its own span. The set may legitimately be empty when the
/// field is too small.
struct WeightSet {
  std::vector<int> cartan;   // basis indices
  std::vector<Vec> weights;  // each entry: values per Cartan basis element
};
WeightSet lambda_set(const UAlgebraCtx& u, const std::vector<int>& cartan);

/// Induced module U_chi(g) tensor_{U_chi(q)} W for a coordinate subalgebra q
/// (spanned by basis elements of g). The result's basis is indexed by
/// monomials in the complementary generators applied to W's basis.
ModuleRep induced_module(const AlgebraPtr& g, const PChar& chi, const std::vector<int>& subalg,
                         const ModuleRep& W, const std::vector<int>* degrees = nullptr,
                         std::uint64_t dim_bound = 2000000);

struct TriangularDecomp {
  std::vector<int> cartan;
  std::vector<int> n_plus;
  std::vector<int> n_minus;
};

/// Baby Verma module: induced from the one-dimensional Borel module K_lambda
/// with n^+ acting by zero. lambda is given by its values on the Cartan
/// basis; requires chi to vanish on the even positive part.
ModuleRep baby_verma(const AlgebraPtr& g, const PChar& chi, const TriangularDecomp& tri,
                     const Vec& lambda, const std::vector<int>* degrees = nullptr);

/// Left regular module of U_chi(g) on the full monomial basis.
struct RegularModule {
  ModuleRep rep;                 // left multiplication by each basis element
  std::vector<Mon> monomials;    // basis order
  std::vector<Matrix> right_action;  // right multiplication by each generator
  std::map<Mon, int> index;
};
RegularModule regular_module(const UAlgebraCtx& u, std::uint64_t dim_bound = 600);

/// The closed-form baby Verma of osp(1|2) on the basis {F^i (x) 1}: the five
/// action rules realized as 2p x 2p matrices, with parity(v_i) = i mod 2.
ModuleRep osp12_verma_closed_form(const AlgebraPtr& osp12, const PChar& chi, Scalar lambda);

/// The (2 lambda + 1)-dimensional simple module of the restricted osp(1|2).
ModuleRep osp12_restricted_simple(const AlgebraPtr& osp12, long lambda_int);

/// The linear function eta defining the one-dimensional module of U_chi(m)
/// for a p-nilpotent coordinate subalgebra m; solved by Frobenius roots along
/// the p-power recursion and verified against the module axioms.
struct EtaResult {
  PChar eta;          // on the subalgebra
  ModuleRep k_eta;    // the 1-dimensional module over U_chi(m)
};
EtaResult eta_character(const Subalgebra& m, const PChar& chi_on_m);

}  // namespace modsuper

#endif
