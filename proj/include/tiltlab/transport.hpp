#pragma once

#include "tiltlab/subcat.hpp"

namespace tiltlab {

/// Based algebra on ⊕_{i,j} Hom(T_i, T_j) with reversed-composition product,
/// so that ⊕_i Hom(T_i, X) becomes a left module via precomposition. The
/// identity maps of the summands are the (primitive) idempotents.
AlgebraPtr endo_algebra(const SubcatSpec& t);

/// Carries Λ, a tilting spec T with T_0 = ⊕ summands, Γ = endo_algebra(T),
/// and the cached hom bases realizing Γ's basis elements as maps.
class TransportContext {
 public:
  TransportContext(ExactStructure ambient, SubcatSpec t, const Budgets& budgets = {});

  const ExactStructure& ambient() const { return ambient_; }
  const SubcatSpec& tilt() const { return tilt_; }
  const AlgebraPtr& lambda() const { return ambient_.algebra(); }
  const AlgebraPtr& gamma() const { return gamma_; }
  const AlgebraPtr& gamma_op() const { return gamma_op_; }
  const Module& t_total() const { return t_total_; }

  /// Matrix of the Γ basis element with the given index, as a map T_a -> T_b.
  const ModuleMap& basis_map(int index) const { return basis_maps_[index]; }
  int block_of(int index) const { return block_from_[index]; }     // a: domain summand
  int block_to(int index) const { return block_to_[index]; }       // b: codomain summand

 private:
  ExactStructure ambient_;
  SubcatSpec tilt_;
  AlgebraPtr gamma_, gamma_op_;
  Module t_total_;
  std::vector<ModuleMap> basis_maps_;
  std::vector<int> block_from_, block_to_;

  friend TransportContext make_context_internal(ExactStructure, SubcatSpec, const Budgets&);
};

/// Φ: X ↦ ⊕_i Hom(T_i, X), a left Γ-module (Γ acts by precomposition).
Module phi(const TransportContext& ctx, const Module& x);

/// Same object computed through Hom(T_0, X) as one block; used to certify
/// that the two hom routes agree.
Module phi_via_total(const TransportContext& ctx, const Module& x);

/// Ψ on projectives: P ↦ ⊕_i Hom(P, T_i), a left module over opposite(Γ)
/// (post-composition action). Non-projective input is an error.
Module psi(const TransportContext& ctx, const Module& p, int cutoff = 20);

/// Φ': Y ↦ T_0 ⊗_Γ Y, back to Λ-modules.
Module phi_prime(const TransportContext& ctx, const Module& y);

/// Counit T_0 ⊗_Γ Hom(T,X) -> X (evaluation); an iso on the perpendicular
/// class.
ModuleMap counit(const TransportContext& ctx, const Module& x, const Module& phi_x,
                 const Module& phi_prime_phi_x);

/// Unit Y -> Φ(Φ'(Y)).
ModuleMap unit(const TransportContext& ctx, const Module& y, const Module& phi_prime_y,
               const Module& phi_phi_prime_y);

}  // namespace tiltlab
