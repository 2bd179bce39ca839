// Modules, comodules and Yetter-Drinfeld modules over finite braided Hopf algebras,
// with the conversions between them. Every structure map is a GradedMap.
#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidhopf/braided.hpp"
#include "braidhopf/hopf.hpp"
#include "braidhopf/nichols.hpp"

namespace braidhopf {

// A finite braided (or ordinary) Hopf algebra as a space with its structure maps.
struct StructureMaps {
  std::string name;
  SpacePtr space;
  GradedMap m;      // B x B -> B
  GradedMap eta;    // I -> B
  GradedMap delta;  // B -> B x B
  GradedMap eps;    // B -> I
  GradedMap S, S_inv;
  // Products that leave the degree range are dropped; the coproduct is exact.
  bool truncated = false;
  std::vector<Word> words;  // Nichols words of the basis when built from a Nichols algebra
  Object obj() const { return Object(space); }
  std::optional<std::uint32_t> index_of_word(const Word& w) const;
};
using BasePtr = std::shared_ptr<const StructureMaps>;

BasePtr structure_maps(const HopfAlgebra& a, const std::string& name);
// B(F) or B(E) up to max_degree (all of it when finite and max_degree is unset).
BasePtr nichols_structure_maps(const NicholsAlgebra& n, const std::string& name, const std::string& prefix,
                               std::optional<int> max_degree = std::nullopt);

// Composite applying the maps in the order listed.
GradedMap chain(std::initializer_list<GradedMap> maps);
GradedMap id_map(const Object& o);
// The same matrix read between other objects of equal dimensions.
GradedMap retype(const GradedMap& f, const Object& dom, const Object& cod);
// One space whose basis is the basis of the product object, in the same order.
SpacePtr flatten(const Object& o, const std::string& name);
// Same-shaped matrices compared entrywise, ignoring how the objects are factored.
std::optional<Difference> matrix_difference(const GradedMap& a, const GradedMap& b);
CheckResult compare(const std::string& check, const GradedMap& lhs, const GradedMap& rhs);

struct LeftModule {
  std::string name;
  SpacePtr carrier;
  BasePtr base;
  GradedMap action;  // B x V -> V
};

struct RightModule {
  std::string name;
  SpacePtr carrier;
  BasePtr base;
  GradedMap action;  // V x B -> V
};

struct YDModule {
  std::string name;
  SpacePtr carrier;
  BasePtr base;
  GradedMap action;    // B x V -> V
  GradedMap coaction;  // V -> B x V
  nlohmann::json to_json() const;
  static YDModule from_json(const nlohmann::json& j, BasePtr base);
};

struct HopfModule {
  std::string name;
  SpacePtr carrier;
  BasePtr base;
  GradedMap action;
  GradedMap coaction;
};

struct RightYDModule {
  std::string name;
  SpacePtr carrier;
  BasePtr base;
  GradedMap action;    // V x B -> V
  GradedMap coaction;  // V -> V x B
};

struct Bimodule {
  std::string name;
  SpacePtr carrier;
  BasePtr base;
  GradedMap left;   // B x V -> V
  GradedMap right;  // V x B -> V
};

// An algebra in left B-comodules.
struct ComoduleAlgebra {
  std::string name;
  SpacePtr space;
  BasePtr base;
  GradedMap m, eta;
  GradedMap coaction;  // A -> B x A
};

// A left A-module in left B-comodules.
struct ComoduleModule {
  std::string name;
  SpacePtr carrier;
  std::shared_ptr<const ComoduleAlgebra> algebra;
  GradedMap action;    // A x W -> W
  GradedMap coaction;  // W -> B x W
};

// An algebra in right B-modules.
struct ModuleAlgebra {
  std::string name;
  SpacePtr space;
  BasePtr base;
  GradedMap m, eta;
  GradedMap action;  // A x B -> A
};

// A left A-module in right B-modules.
struct ModuleModule {
  std::string name;
  SpacePtr carrier;
  std::shared_ptr<const ModuleAlgebra> algebra;
  GradedMap action;  // A x W -> W
  GradedMap right;   // W x B -> W
};

// Module over an ordinary algebra given by generators and relations.
struct AlgebraModule {
  std::string name;
  SpacePtr carrier;
  std::shared_ptr<const HopfAlgebra> algebra;
  std::vector<GradedMap> generator_action;  // indexed like algebra->generators()
  // Action of a basis element through its factorization into generators.
  GradedMap basis_action(std::uint32_t i) const;
  GradedMap element_action(const Vec& v) const;
  nlohmann::json to_json() const;
};

// Checkers.
std::vector<CheckResult> check_left_module(const BasePtr& b, const Object& v, const GradedMap& action);
std::vector<CheckResult> check_right_module(const BasePtr& b, const Object& v, const GradedMap& action);
std::vector<CheckResult> check_left_comodule(const BasePtr& b, const Object& v, const GradedMap& coaction);
std::vector<CheckResult> check_right_comodule(const BasePtr& b, const Object& v, const GradedMap& coaction);
// (m x a)(Id x Psi x Id)(Delta x delta) against (m x Id)(Id x Psi_{V,B})(delta a x Id)(Id x Psi_{B,V})(Delta x Id).
CheckResult yd_condition(const YDModule& v);
HopfReport check_yd(const YDModule& v);
// The half-braiding with the regular right module is B-linear.
CheckResult right_yd_condition(const RightYDModule& v);
HopfReport check_right_yd(const RightYDModule& v);

enum class HopfModuleKind {
  Regular,  // delta a = (m x a)(Id x Psi_{B,B} x Id)(Delta x delta)
  Trivial,  // delta a = (Id x a)(Psi_{B,B} x Id)(Id x delta), modules over B with trivial coaction
};
CheckResult hopf_module_condition(const HopfModule& v, HopfModuleKind kind);
HopfReport check_hopf_module(const HopfModule& v, HopfModuleKind kind = HopfModuleKind::Regular);
HopfReport check_bimodule(const Bimodule& v);
HopfReport check_comodule_algebra(const ComoduleAlgebra& a);
HopfReport check_comodule_module(const ComoduleModule& w);
HopfReport check_module_algebra(const ModuleAlgebra& a);
HopfReport check_module_module(const ModuleModule& w);
// Defining relations on the generator matrices; full structure constants when the algebra
// has at most structure_limit basis elements.
HopfReport check_algebra_module(const AlgebraModule& v, std::size_t structure_limit = 1000);

// Constructors.
SpacePtr unit_space(const BasePtr& b);  // one vector of degree zero
YDModule trivial_yd(const BasePtr& b);
// B with the braided adjoint action b(1) v S(b(2)) and coaction Delta.
YDModule regular_yd(const BasePtr& b);
// B with left multiplication and coaction Delta.
HopfModule regular_hopf_module(const BasePtr& b);
// Mutation: the coproduct of a Nichols base rebuilt from primitive letters with the plain
// flip in place of the braiding.
BasePtr with_unbraided_coproduct(const BasePtr& b);
// Coaction composed with b -> chi(g, |b|) b on the B leg.
YDModule twist_coaction(const YDModule& v, const GroupElem& g);
RightYDModule trivial_right_yd(const BasePtr& b);
// B with the braided right adjoint action S(b(1)) v b(2) and coaction Delta.
RightYDModule regular_right_yd(const BasePtr& b);
LeftModule regular_left_module(const BasePtr& b);
LeftModule trivial_left_module(const BasePtr& b);
Bimodule regular_bimodule(const BasePtr& b);
Bimodule trivial_bimodule(const BasePtr& b);

// Braided monoidal structure.
YDModule yd_tensor(const YDModule& v, const YDModule& w);
// (a_W x Id)(Id x Psi_{V,W})(delta_V x Id): V x W -> W x V
GradedMap yd_braiding(const YDModule& v, const YDModule& w);
// (c_VW x Id)(Id x c_UW)(c_UV x Id) = (Id x c_UV)(c_UW x Id)(Id x c_VW) on U x V x W, as "braid_relation".
CheckResult yd_braid_relation(const YDModule& u, const YDModule& v, const YDModule& w);

// Left modules to right modules through the antipode, and back.
RightModule flip_module(const LeftModule& v);
LeftModule unflip_module(const RightModule& v);

// Center actions.
ComoduleAlgebra regular_comodule_algebra(const BasePtr& b);  // coaction Delta
ComoduleAlgebra trivial_comodule_algebra(const BasePtr& b);  // coaction 1 x -
ComoduleModule regular_comodule_module(std::shared_ptr<const ComoduleAlgebra> a);  // W = A
ComoduleModule center_action(const YDModule& v, const ComoduleModule& w);
HopfModule as_hopf_module(const ComoduleModule& w);
// (V x V') acting on W against V acting on V' acting on W, and the unit object acting trivially.
std::vector<CheckResult> center_coherence(const YDModule& v, const YDModule& v2, const ComoduleModule& w);
ModuleAlgebra adjoint_module_algebra(const BasePtr& b);  // B with the right adjoint action
ModuleModule regular_module_module(std::shared_ptr<const ModuleAlgebra> a);
ModuleModule center_action(const RightYDModule& v, const ModuleModule& w);

// Weight modules over the quantum group whose lower half is the base Nichols algebra.
// K_i v = q^{i.|v|} v, F_i v = f_i . v, E_i v = q^{i.|v0|} <v(-1), e_i> v0.
AlgebraModule yd_to_weight_module(const YDModule& v, const NicholsPair& pair,
                                  std::shared_ptr<const HopfAlgebra> target);
YDModule weight_module_to_yd(const AlgebraModule& w, const NicholsPair& pair, const BasePtr& base);
// The irreducible module of highest weight n * alpha_1 / 2 over a rank one quantum group
// (n even), graded by the root lattice of chi: K v_k = q^{n-2k} v_k, F v_k = [k+1] v_{k+1},
// E v_k = [n-k+1] v_{k-1}.
AlgebraModule sl2_irreducible(std::shared_ptr<const HopfAlgebra> target, std::shared_ptr<const Bicharacter> chi,
                              int n);

// Bimodules over B(F) to modules over the BBH algebra in the diagonal realization:
// b_i v = f_i . v, k_i v = eps^{i.|v|} v, d_i v = chi(|v|, -alpha_i)^{-1} v . S^{-1}(f_i).
AlgebraModule bimodule_to_bbh_module(const Bimodule& m, std::shared_ptr<const HopfAlgebra> bbh);
Bimodule bimodule_tensor(const Bimodule& m, const Bimodule& n);
// Tensor product of modules over an ordinary Hopf algebra through its coproduct.
AlgebraModule algebra_module_tensor(const AlgebraModule& v, const AlgebraModule& w);

}  // namespace braidhopf
