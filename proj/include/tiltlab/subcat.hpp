#pragma once

#include <string>
#include <vector>

#include "tiltlab/homology.hpp"

namespace tiltlab {

/// add(⊕ summands): a finite list of pairwise non-isomorphic indecomposables.
class SubcatSpec {
 public:
  SubcatSpec() = default;
  SubcatSpec(std::string name, std::vector<Module> summands, const Budgets& budgets = {});

  const std::string& name() const { return name_; }
  const std::vector<Module>& summands() const { return summands_; }
  bool empty() const { return summands_.empty(); }

 private:
  std::string name_;
  std::vector<Module> summands_;
};

/// Finite stand-in for the ambient category in universally quantified checks.
struct Universe {
  std::vector<Module> modules;
  ExactStructure structure;
};

/// Is m in add(spec)? Decided through decompose + iso tests.
bool in_add(const SubcatSpec& spec, const Module& m, const Budgets& budgets = {});

struct ChainStep {
  Module term;      // the add(T) term used at this stage
  ModuleMap map;    // approximation map
  Module carried;   // kernel (right chains) or cokernel (left chains)
};

struct MembershipResult {
  Verdict verdict = Verdict::Undecided;
  std::string reason;            // set on failure / undecided
  std::vector<ChainStep> chain;  // witness chain (possibly partial)
};

struct DegreeRange {
  bool all_from_one = true;    // Ext^i for every i >= 1
  std::vector<int> degrees;    // explicit degrees otherwise
  static DegreeRange from_one() { return {true, {}}; }
  static DegreeRange exactly(std::vector<int> ds) { return {false, std::move(ds)}; }
};

struct PerpResult {
  Verdict verdict = Verdict::Undecided;
  std::string witness;  // failing (summand, degree, dim)
};

/// Ext^i(T, m) = 0 for all summands and all i in the range; the open range
/// is decided through resolution certificates of the summands.
PerpResult in_perp(const SubcatSpec& spec, const Module& m, const DegreeRange& range,
                   const ExactStructure& s, int cutoff = 20);

/// pres_n membership via iterated minimal right approximations, each required
/// to be a deflation of the structure. n = -1 is the empty condition (true).
MembershipResult in_pres_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                           const Budgets& budgets = {});

/// gen_n: the pres_n chain plus Hom(T',-)-exactness of every stage.
MembershipResult in_gen_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                          const Budgets& budgets = {});

/// Cores_n: iterated minimal left approximations (inflations), with the
/// cokernel landing in add(spec) within n steps.
MembershipResult in_cores_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                            const Budgets& budgets = {});

/// Reso_n: dual to Cores_n with right approximations and kernels.
MembershipResult in_reso_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                           const Budgets& budgets = {});

/// Budgeted exhaustive fallback for pres_n: searches all chains with stage
/// terms built from at most `max_copies` summand copies.
MembershipResult in_pres_n_exhaustive(const SubcatSpec& spec, const Module& m, int n,
                                      const ExactStructure& s, int max_copies = 2,
                                      const Budgets& budgets = {});

struct ResolvingReport {
  Verdict verdict = Verdict::Undecided;
  std::string counterexample;
};

/// Resolving test on a finite universe: contains the (relative) projectives,
/// kernel-closed under deflations between members, extension-closed
/// (enumerated through cocycle classes), and generates every universe member.
ResolvingReport is_resolving(const SubcatSpec& spec, const Universe& u, const Budgets& budgets = {},
                             int cutoff = 20);

}  // namespace tiltlab
