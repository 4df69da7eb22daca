#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakcomm/carrier.hpp"
#include "weakcomm/coset_table.hpp"
#include "weakcomm/finite_group.hpp"
#include "weakcomm/presentation.hpp"

namespace weakcomm {

/// Suffix appended to a base generator name to name its psi-copy.
inline constexpr std::string_view kPsiSuffix = "_psi";

/// A requested audit whose hypothesis does not hold for the given input.
class HypothesisViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Schedule { full, generators_only };

/// X(G) = < G, G^psi | [g, g^psi] > with its canonical maps. Generators of the double are the
/// base generators followed by their psi-copies, so base generator g pairs with g + n.
struct DoubleData {
  Presentation base;
  Presentation presentation;
  Schedule schedule;
  /// Set for the generator-only schedule: the presentation may define a proper cover of X(G).
  bool partial;
  /// Element words used by the full schedule (shortlex, identity first); empty otherwise.
  std::vector<Word> elements;
  std::size_t commutator_relators;
  Presentation cube;  // G x G x G
  Presentation pair;  // G x G
  GeneratorMap rho;        // X -> G^3, g -> (g,g,1), g^psi -> (1,g,g)
  GeneratorMap mu_rho;     // X -> G, middle coordinate
  GeneratorMap omega_rho;  // X -> G^2, first and third coordinates
  GeneratorMap iota;       // G -> X
  GeneratorMap iota_psi;   // G -> X, g -> g^psi

  std::size_t base_generators() const { return base.generator_count(); }
  /// Index of the psi-copy of base generator g.
  std::uint32_t psi(std::uint32_t g) const { return g + static_cast<std::uint32_t>(base_generators()); }
  /// w^psi for a word over the base generators.
  Word psi(const Word& w) const;
};

/// Full schedule when `elements` is given (one [w, w^psi] per nonidentity element), otherwise
/// generator-only with the partial flag set.
DoubleData double_presentation(const Presentation& g, const std::vector<Word>* elements = nullptr);
DoubleData double_presentation(const Presentation& g, Schedule schedule, const std::vector<Word>* elements);
/// Full double of a realized finite group.
DoubleData full_double(const FiniteGroup& g);

struct RoccoPresentation {
  Presentation presentation;
  /// 2 |G|^3 relators of the form [g,h^psi]^(k^eps) [g^k,(h^k)^psi]^-1 before reduction and dedup.
  std::size_t candidates;
};

/// V(G): base and psi-copied relators plus, for all g, h, k in G and eps in {1, psi},
/// [g,h^psi]^(k^eps) * [g^k,(h^k)^psi]^-1 with x^y = y^-1 x y.
RoccoPresentation rocco_presentation(const FiniteGroup& g);

/// Word-problem oracle for a presented group, when one is known.
using IdentityOracle = std::function<bool(const Word&)>;

/// Finite (realized), free (no relators) and free abelian (all generator commutators) bases.
std::optional<IdentityOracle> base_oracle(const Presentation& g, const FiniteGroup* realized = nullptr);
/// Oracle for direct_power(g, k) from an oracle for g, by projecting onto each copy.
IdentityOracle direct_power_oracle(IdentityOracle base, std::size_t base_generators, std::size_t k);

struct MapVerification {
  bool rho = false;
  bool mu_rho = false;
  bool omega_rho = false;
  bool iota = false;      // base relators land on relators of the double
  bool iota_psi = false;
  bool retraction = false;       // mu_rho . iota = id and mu_rho . iota_psi = id, symbolically
  bool diagonals = false;        // rho . iota = (g,g,1), rho . iota_psi = (1,g,g), symbolically
  bool image_commutes = false;   // [rho(g), rho(g^psi)] = e for every base generator

  bool all() const { return rho && mu_rho && omega_rho && iota && iota_psi && retraction && diagonals && image_commutes; }
};

/// Checks the canonical maps on every relator of the double using `base` as the word problem of G.
MapVerification verify_maps(const DoubleData& d, const IdentityOracle& base);

/// X(f): g -> f(g), g^psi -> f(g)^psi, for f: G -> H and doubles of G and H.
GeneratorMap induced_double_map(const DoubleData& from, const DoubleData& to, const GeneratorMap& f);

/// rho realized as a homomorphism between finite groups built from d.presentation and d.cube.
FiniteHom realize_rho(const DoubleData& d, const FiniteGroup& x, const FiniteGroup& cube);

struct SubgroupFamilies {
  FiniteGroup cube;
  Subgroup l;
  Subgroup d;
  Subgroup w;
  Subgroup image;
  /// W = D n L.
  bool w_is_d_cap_l;
  /// (c,e,e), (e,c,e), (e,e,c) lie in rho(<L, D>) for every commutator c of G.
  bool derived_cube_in_image;
};

/// L, D and W = ker rho inside a realized full double x of the realized base g.
SubgroupFamilies subgroup_families(const DoubleData& d, const FiniteGroup& g, const FiniteGroup& x);

struct TorsionProfile {
  std::map<std::uint64_t, std::size_t> order_counts;
  std::uint64_t max_order = 1;
  bool has_order_two = false;
};

TorsionProfile torsion_probe(const Subgroup& w);
TorsionProfile torsion_probe(std::span<const Permutation> elements);

struct IdentityWitness {
  bool first = false;   // ([u,v],e,e) = rho(u^-1 u^psi . v^-1 v^psi . uv ((uv)^-1)^psi)
  bool second = false;  // rho([x, y^psi]) = (e,[x,y],e)

  bool holds() const { return first && second; }
};

/// Evaluates both sides inside G x G x G.
IdentityWitness identity_witness(const ComputableGroup& g, const GroupElement& u, const GroupElement& v,
                                 const GroupElement& x, const GroupElement& y);

struct IdentitySuiteResult {
  std::size_t samples = 0;
  std::size_t first_failures = 0;
  std::size_t second_failures = 0;

  bool passed() const { return first_failures == 0 && second_failures == 0; }
};

/// `samples` random quadruples of words of length at most max_length.
IdentitySuiteResult identity_suite(const ComputableGroup& g, std::size_t samples, std::uint64_t seed,
                                   std::size_t max_length = 6);

struct StemAudit {
  std::uint64_t base_order = 0;
  std::uint64_t x_order = 0;
  std::uint64_t image_order = 0;
  std::uint64_t w_order = 0;
  /// Index of iota_psi(G) in X when the coset-level path was used.
  std::optional<std::uint64_t> index;
  bool rho_surjective = false;
  bool w_central = false;
  bool w_in_derived = false;
  bool x_perfect = false;
  /// The three structural verdicts agree.
  bool verdicts_consistent = false;
  TorsionProfile torsion;

  bool all_pass() const { return rho_surjective && w_central && w_in_derived && x_perfect && verdicts_consistent; }
};

/// Audit on a realized X. Throws HypothesisViolated unless G is perfect.
StemAudit stem_audit(const DoubleData& d, const FiniteGroup& g, const FiniteGroup& x);

/// Coset-level W(G) for a full double whose X is too large to realize.
struct CosetLevelW {
  std::uint64_t index = 0;         // [X : iota_psi(G)]
  std::uint64_t x_order = 0;       // index * |G|
  std::uint64_t image_order = 0;   // |rho(X)|
  std::uint64_t w_order = 0;       // x_order / image_order
  std::uint64_t d_order = 0;       // |D|
  bool faithful = false;           // X acts faithfully on the cosets of iota_psi(G)
  bool w_in_d = false;             // |D n ker rho| = |W|, hence W <= D
  bool w_central = false;
  std::vector<Permutation> generators;  // action of the double's generators
  std::vector<Permutation> w;           // elements of W, when w_in_d
};

CosetLevelW coset_level_w(const DoubleData& d, const FiniteGroup& g, const EnumerationLimits& limits = {},
                          EnumerationStats* stats = nullptr);

/// Audit by enumeration over iota_psi(G); never realizes X. Throws HypothesisViolated unless G is
/// perfect, std::runtime_error if the coset action is not faithful.
StemAudit stem_audit(const DoubleData& d, const FiniteGroup& g, const EnumerationLimits& limits = {});

/// Order of the subgroup of G^3 generated by (g,g,1) and (1,g,g) over the generators of G.
std::uint64_t rho_image_order(const FiniteGroup& g);

}  // namespace weakcomm
