#ifndef MODSUPER_MEATAXE_HPP
#define MODSUPER_MEATAXE_HPP

#include <optional>

#include "modsuper/errors.hpp"
#include "modsuper/pbw.hpp"

namespace modsuper {

struct MeatAxeOutcome {
  enum class Verdict { Simple, NotSimple, Unknown } verdict;
  // NotSimple: echelonized basis of a proper nonzero graded submodule
  std::vector<Vec> submodule;
  nlohmann::json certificate;
};

/// Norton-style irreducibility test in the graded category (the parity
/// involution is adjoined to the acting algebra, so all witnesses are graded
/// subspaces). Deterministic exhaustive search below the small-dimension
/// threshold; otherwise seeded random elements with a retry budget.
MeatAxeOutcome is_simple(const ModuleRep& M, std::uint64_t seed = 1, int budget = 64);

struct CompFactor {
  ModuleRep rep;
  int multiplicity = 0;
};

/// Composition factors in the graded sense, grouped up to isomorphism
/// (parity shift allowed). Throws UnknownResult if any split is inconclusive.
std::vector<CompFactor> composition_factors(const ModuleRep& M, std::uint64_t seed = 1);

struct EndoData {
  int dim_even = 0;
  int dim_odd = 0;
  bool type_q = false;  // dim_odd == 1 and the odd generator squares invertibly
};

/// Dimensions of the endomorphism superalgebra: even maps commute with the
/// action, odd maps commute with the sign twist phi rho(x) =
/// (-1)^{|x|} rho(x) phi. For a simple module the result is (1,0) or (1,1).
EndoData endo_superalgebra(const ModuleRep& M, const Vec* cyclic_hint = nullptr);

enum class IsoKind { None, Even, Odd };

/// Graded isomorphism test, allowing a parity-shift (odd) isomorphism.
IsoKind find_isomorphism(const ModuleRep& A, const ModuleRep& B, std::uint64_t seed = 1);

/// Trace fingerprint over a fixed seeded word sample; equal fingerprints are
/// resolved by the intertwiner solver.
std::vector<std::uint32_t> fingerprint(const ModuleRep& M, std::uint64_t seed = 0xb5a7);

/// Common kernel of rho(x) - eta(x) over a basis of m.
std::vector<Vec> m_invariants(const ModuleRep& M, const Subalgebra& m, const PChar& eta);

/// The freeness surrogate dim M = dim U_chi(m) * dim M^m.
struct FreenessReport {
  bool ok = false;
  std::uint64_t dim_m_module = 0;  // dim U_chi(m)
  int invariants_dim = 0;
  std::string detail;
};
FreenessReport freeness_check(const ModuleRep& M, const Subalgebra& m, const PChar& eta);

struct KWAuditLine {
  std::string name;
  std::uint64_t dim = 0;
  std::uint64_t quotient = 0;
  bool divisible = false;
};
struct KWAudit {
  std::uint64_t divisor = 1;
  std::vector<KWAuditLine> lines;
  bool all_divisible = true;
};
KWAudit kw_audit(const LieSuperAlgebra& g, const PChar& chi,
                 const std::vector<std::pair<std::string, std::uint64_t>>& module_dims);

/// Distinct simple factors of the regular module and the radical of the
/// algebra as the common annihilator of those factors.
struct RadicalData {
  std::vector<CompFactor> factors;  // of the left regular module
  std::vector<Vec> radical;         // basis, coordinates in the monomial basis
};
RadicalData algebra_radical(const UAlgebraCtx& u, const RegularModule& R,
                            std::uint64_t seed = 1);

/// Semisimplicity of U_chi(g): the radical of the regular representation
/// vanishes.
bool is_semisimple(const UAlgebraCtx& u, std::uint64_t dim_bound = 600, std::uint64_t seed = 1);

struct PIMClass {
  ModuleRep rep;           // one representative indecomposable summand
  int head = -1;           // index into CartanData::simples
  int count = 0;           // copies inside the regular module
  EndoData end_dims;
};

struct CartanData {
  std::vector<CompFactor> simples;     // distinct simples with multiplicities in the regular module
  std::vector<EndoData> simple_types;
  std::vector<PIMClass> pims;
  bool wedderburn_ok = false;  // dim U = sum dim(PIM_i) * n_i with n_i from the types
};

/// Simples from the composition factors of the regular module; projective
/// indecomposables by splitting the regular module with primitive orthogonal
/// idempotents (even, found inside commutative subalgebras K[z]).
CartanData cartan_data(const UAlgebraCtx& u, std::uint64_t dim_bound = 600,
                       std::uint64_t seed = 1);

struct WDimReport {
  std::uint64_t delta = 0;       // dim U_chi(m)
  std::uint64_t dim_u = 0;
  int end_dim = 0;               // dim End(Q_m), even + odd
  bool ok = false;
};
/// Q_m = U_chi(g) (x)_{U_chi(m)} K_eta; checks dim End(Q_m) = dim U / delta^2.
WDimReport w_dim_check(const AlgebraPtr& g, const PChar& chi, const Subalgebra& m,
                       const std::vector<int>& m_indices, std::uint64_t seed = 1);

}  // namespace modsuper

#endif
