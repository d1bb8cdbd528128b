#pragma once

#include <utility>
#include <vector>

#include "tiltlab/module.hpp"

namespace tiltlab {

struct Budgets {
  unsigned long long iso_search = 1ull << 20;        // coefficient tuples per iso test
  unsigned long long endo_sweep = 1ull << 20;        // endomorphisms swept per split attempt
  unsigned long long enumeration = 10'000'000ull;    // action-matrix tuples per dim vector
};

/// Basis of the intertwiner space Hom(M, N), solved as a linear system over
/// the algebra's generators. Deterministic (RREF-ordered) basis.
std::vector<ModuleMap> hom_space(const Module& m, const Module& n);

int hom_dim(const Module& m, const Module& n);

/// Expands an intertwiner into coordinates with respect to hom_space(m, n).
std::vector<uint32_t> hom_coordinates(const std::vector<ModuleMap>& basis, const Mat& map);

/// rad(A)·M as a column span inside M.
Mat radical_subspace(const Module& m);

/// M / rad(A)M.
QuotientPair top(const Module& m);

/// P_k = A e_k, one per idempotent, as submodules of the regular module.
std::vector<Module> indecomposable_projectives(const AlgebraPtr& alg);

/// S_k = top(P_k), one per idempotent.
std::vector<Module> simples(const AlgebraPtr& alg);

/// I_k = D(e_k A), duals of the right indecomposable projectives.
std::vector<Module> indecomposable_injectives(const AlgebraPtr& alg);

/// Dimension over F_p of End(S_k)/rad — the size of the k-th simple block.
std::vector<int> simple_block_dims(const AlgebraPtr& alg);

/// Composition multiplicity matrix of the projectives: C[i][j] = [P_i : S_j].
std::vector<std::vector<int>> cartan_matrix(const AlgebraPtr& alg);

/// Indecomposable summands with multiplicities (Fitting decomposition with a
/// deterministic endomorphism sweep; throws when the sweep budget is hit).
std::vector<std::pair<Module, int>> decompose(const Module& m, const Budgets& budgets = {});

bool is_indecomposable(const Module& m, const Budgets& budgets = {});

/// Sound and complete within budget: exhaustive scan of the hom space for an
/// invertible combination.
bool is_isomorphic(const Module& m, const Module& n, const Budgets& budgets = {});

/// Complete duplicate-free list of indecomposables with dim vector <= bound,
/// via exhaustive scan over generator action blocks. Canonically ordered by
/// (dim, dim vector).
std::vector<Module> enumerate_indecomposables(const AlgebraPtr& alg, const DimVector& bound,
                                              const Budgets& budgets = {});

/// Assembles a module from the actions of the algebra's generators (in
/// alg->generators() order); idempotents act as the block projections of dv,
/// every other basis element is composed from the generators. Throws when the
/// assignment violates the structure constants.
Module module_from_generator_actions(const AlgebraPtr& alg, const DimVector& dv,
                                     const std::vector<Mat>& gen_actions, std::string name = "");

}  // namespace tiltlab
