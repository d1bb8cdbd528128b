#pragma once

#include <string>
#include <vector>

#include "tiltlab/algebra.hpp"
#include "tiltlab/mat.hpp"

namespace tiltlab {

using DimVector = std::vector<int>;

/// Finite-dimensional left module: one action matrix per algebra basis
/// element. The constructor verifies multiplicativity against the structure
/// constants and that the unit acts as the identity.
class Module {
 public:
  Module() = default;
  Module(AlgebraPtr alg, std::vector<Mat> action, std::string name = "");

  const AlgebraPtr& algebra() const { return alg_; }
  int dim() const { return dim_; }
  const Mat& action(int basis_index) const { return action_[basis_index]; }
  const std::vector<Mat>& actions() const { return action_; }
  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }

  /// Action of an arbitrary element given by its coefficient vector.
  Mat act(const std::vector<uint32_t>& coeffs) const;

  /// Composition dims of the idempotent blocks: component k = dim e_k M.
  DimVector dim_vector() const;

  bool is_zero() const { return dim_ == 0; }

  static Module zero(const AlgebraPtr& alg);

 private:
  AlgebraPtr alg_;
  int dim_ = 0;
  std::vector<Mat> action_;
  std::string name_;
};

/// Intertwiner between two modules over the same algebra; the constructor
/// verifies the intertwining relations on every algebra basis element.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(Module source, Module target, Mat matrix);

  const Module& source() const { return src_; }
  const Module& target() const { return tgt_; }
  const Mat& matrix() const { return mat_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const;
  bool is_zero() const { return mat_.is_zero(); }

  ModuleMap compose_after(const ModuleMap& inner) const;  // this ∘ inner

 private:
  Module src_, tgt_;
  Mat mat_;
};

ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& source, const Module& target);

/// Submodule spanned by the given columns (must be action-stable); returns
/// the module plus its inclusion.
struct SubmodulePair {
  Module sub;
  ModuleMap inclusion;
};
SubmodulePair submodule(const Module& m, const Mat& span_columns, const std::string& name = "");

/// Quotient by an action-stable subspace; returns the module plus projection.
struct QuotientPair {
  Module quot;
  ModuleMap projection;
};
QuotientPair quotient_module(const Module& m, const Mat& span_columns, const std::string& name = "");

SubmodulePair kernel(const ModuleMap& f);
QuotientPair cokernel(const ModuleMap& f);
SubmodulePair image(const ModuleMap& f);

struct DirectSum {
  Module total;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const std::vector<Module>& parts);

/// Pushout of f: A -> B along g: A -> C, realized as coker((g,-f): A -> C⊕B).
struct Pushout {
  Module object;
  ModuleMap from_along;  // C -> object
  ModuleMap from_target; // B -> object
};
Pushout pushout(const ModuleMap& f, const ModuleMap& g);

/// The algebra as a left module over itself.
Module regular_module(const AlgebraPtr& alg);

/// k-dual as a left module over the opposite algebra (actions transposed).
Module dual_module(const Module& m, const AlgebraPtr& opposite_alg);

}  // namespace tiltlab
