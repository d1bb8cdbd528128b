#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tiltlab/exact_structure.hpp"

namespace tiltlab {

/// Raised when a value cannot be certified within the cutoff.
struct UndecidedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionFlag {
  enum class Kind { Finite, Truncated, Periodic } kind = Kind::Truncated;
  int length = 0;   // Finite: resolution lives in degrees 0..length
  int period = 0;   // Periodic: Omega^entry ≅ Omega^(entry-period)
  int entry = 0;
};

/// Minimal resolution by the structure's projective class. Terms are kept up
/// to the requested index even past a detected period.
struct Resolution {
  Module target;
  std::vector<Module> terms;       // E_0 .. E_L
  std::vector<ModuleMap> diffs;    // diffs[0]: E_0 -> target, diffs[i]: E_i -> E_{i-1}
  std::vector<Module> syzygies;    // Omega^1 .. (kernels of the covers)
  ResolutionFlag flag;
};

/// Minimal right add(cls)-approximation: every map X -> m with X in add(cls)
/// factors through it, and no summand is redundant.
ModuleMap right_approximation(const Module& m, const std::vector<Module>& cls);

/// Minimal left add(cls)-approximation m -> E, dual universal property.
ModuleMap left_approximation(const Module& m, const std::vector<Module>& cls);

/// Projective cover: minimal right approximation by the indecomposable
/// projectives; kernel lands in rad(P).
ModuleMap projective_cover(const Module& m);

Resolution resolve(const Module& m, const ExactStructure& s, int upto);

/// dim Ext^i computed as cohomology of Hom(resolution, n); periodic
/// resolutions are folded, truncation past the cutoff raises UndecidedError.
int ext_dim(const Module& m, const Module& n, int i, const ExactStructure& s, int cutoff = 20);

/// Convenience: Ext over the abelian structure.
int ext_dim(const Module& m, const Module& n, int i, int cutoff = 20);

/// dim Tor_i(y, m) for y a right module (left module over the opposite
/// algebra) and m a left module over the same base algebra.
int tor_dim(const Module& y_right, const Module& m, int i, int cutoff = 20);

struct PdimValue {
  enum class Kind { Finite, Infinite, Undecided } kind = Kind::Undecided;
  int n = 0;  // meaningful for Finite

  bool finite() const { return kind == Kind::Finite; }
  std::string str() const;
};

PdimValue pdim(const Module& m, const ExactStructure& s, int cutoff = 20);

/// Abelian: max pdim over the simples. Relative: max over `test_list`.
PdimValue gldim(const AlgebraPtr& alg, const ExactStructure& s, int cutoff = 20,
                const std::vector<Module>& test_list = {});

enum class Verdict { True, False, Undecided };

struct VanishReport {
  Verdict verdict = Verdict::Undecided;
  int witness_degree = 0;  // failing degree when False
  int witness_dim = 0;
};

/// Does Ext^i(m, n) vanish for every i >= 1? Decided through m's resolution
/// certificate (finite length or periodicity).
VanishReport ext_vanishes_from_one(const Module& m, const Module& n, const ExactStructure& s, int cutoff = 20);

/// Same question for Tor_i(y, m), i >= 1, through y's resolution.
VanishReport tor_vanishes_from_one(const Module& y_right, const Module& m, int cutoff = 20);

/// First-cohomology extension space of `a` by `b` (sequences 0→b→E→a→0),
/// parameterized by Hochschild-style cocycles c with
///   c(x y) = act_b(x) c(y) + c(x) act_a(y).
struct ExtensionSpace {
  Module a, b;
  std::vector<std::vector<Mat>> cocycles;      // basis of Z^1: one Mat per algebra basis element
  std::vector<std::vector<Mat>> coboundaries;  // basis of B^1
  int ext1_dim() const { return static_cast<int>(cocycles.size()) - static_cast<int>(coboundaries.size()); }
  /// Representatives of Ext^1 classes: cocycle basis vectors completing B^1.
  std::vector<std::vector<Mat>> class_representatives() const;
};

ExtensionSpace ext1_space(const Module& a, const Module& b);

/// Middle term of the extension with the given cocycle, as the block module
/// [[b, c],[0, a]]; returns the conflation 0 -> b -> E -> a -> 0.
Conflation extension_middle_term(const Module& a, const Module& b, const std::vector<Mat>& cocycle);

}  // namespace tiltlab
