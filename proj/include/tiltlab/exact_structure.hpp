#pragma once

#include <string>
#include <vector>

#include "tiltlab/modcat.hpp"

namespace tiltlab {

/// Short exact sequence candidate: inflation A -> B, deflation B -> C.
struct Conflation {
  ModuleMap inflation;
  ModuleMap deflation;
};

struct ConflationCheck {
  bool ok = false;
  std::string witness;  // first failing condition / generator
};

/// The abelian structure on mod-Λ, or the Auslander–Solberg substructure
/// whose conflations stay Hom(G,-)-exact for every generator G. Relative
/// projectives are add(Λ ⊕ generators).
class ExactStructure {
 public:
  static ExactStructure abelian(AlgebraPtr alg);
  static ExactStructure relative(AlgebraPtr alg, std::vector<Module> generators, const Budgets& budgets = {});

  bool is_relative() const { return relative_; }
  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Module>& generators() const { return generators_; }

  /// Indecomposable (relative) projectives, projectives listed first.
  const std::vector<Module>& projective_class() const { return proj_class_; }

 private:
  ExactStructure() = default;
  bool relative_ = false;
  AlgebraPtr alg_;
  std::vector<Module> generators_;
  std::vector<Module> proj_class_;
};

/// Is Hom(G,-) exact on the (abelian-exact) sequence? Decided by rank count:
/// the induced map Hom(G,B) -> Hom(G,C) must be surjective.
bool hom_exact_on(const Module& g, const Conflation& c);

/// Dual: is Hom(-,G) exact, i.e. Hom(B,G) -> Hom(A,G) surjective?
bool cohom_exact_on(const Module& g, const Conflation& c);

ConflationCheck is_conflation(const ExactStructure& s, const Conflation& c);

/// Members of `candidates` lying in add(Λ ⊕ generators). Errors on the
/// abelian structure (use indecomposable_projectives there).
std::vector<Module> relative_projectives(const ExactStructure& s, const std::vector<Module>& candidates,
                                         const Budgets& budgets = {});

}  // namespace tiltlab
