#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tiltlab/mat.hpp"

namespace tiltlab {

struct Arrow {
  std::string label;
  int source = 0;  // vertex indices
  int target = 0;
};

/// One summand of a relation: coeff * path, the path a composable arrow
/// sequence in diagrammatic order (`a.b` = first a, then b).
struct RelationTerm {
  unsigned coeff = 1;
  std::vector<int> path;  // arrow indices
};

struct Quiver {
  unsigned p = 2;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<RelationTerm>> relations;

  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& label) const;
};

/// Finite-dimensional algebra given by a basis and structure constants.
///
/// Conventions fixed here and relied on everywhere downstream:
///  - multiplication x*y composes like functions ("first y, then x");
///    for paths that makes the text form `a.b` equal to the product b*a;
///  - the basis is Peirce-homogeneous: every basis element b satisfies
///    e_tgt * b * e_src = b for a unique pair of idempotents;
///  - 1 = sum of the listed idempotents, each primitive.
class BasedAlgebra {
 public:
  BasedAlgebra(unsigned p, std::vector<std::string> basis_labels,
               std::vector<std::vector<std::vector<uint32_t>>> mult,
               std::vector<int> idempotent_indices, std::string name = "");

  unsigned p() const { return p_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const std::vector<int>& idempotents() const { return idem_; }
  int num_idempotents() const { return static_cast<int>(idem_.size()); }

  /// Coefficient vector of b_i * b_j.
  const std::vector<uint32_t>& product(int i, int j) const { return mult_[i][j]; }
  std::vector<uint32_t> product(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const;

  /// Peirce type of basis element i: b in e_tgt A e_src (indices into idempotents()).
  int src(int i) const { return src_[i]; }
  int tgt(int i) const { return tgt_[i]; }

  /// Basis vectors of the Jacobson radical, as coefficient columns.
  const Mat& radical() const { return radical_; }
  int radical_dim() const { return radical_.cols(); }

  /// Homogeneous non-idempotent generating elements (basis indices); together
  /// with the idempotents they generate the algebra.
  const std::vector<int>& generators() const { return gens_; }

  /// Left-multiplication matrix of basis element i on the algebra.
  Mat left_mult(int i) const;

  int basis_index(const std::string& label) const;

 private:
  void validate();
  void compute_peirce();
  void compute_radical();
  void compute_generators();

  unsigned p_;
  std::string name_;
  std::vector<std::string> basis_;
  std::vector<std::vector<std::vector<uint32_t>>> mult_;
  std::vector<int> idem_;
  std::vector<int> src_, tgt_;
  Mat radical_;
  std::vector<int> gens_;
};

using AlgebraPtr = std::shared_ptr<const BasedAlgebra>;

/// Quotient of the path algebra by the relation ideal. Throws when the
/// quotient is infinite-dimensional (path length exceeding `length_bound`)
/// or the relations are not admissible.
AlgebraPtr path_algebra(const Quiver& q, int length_bound = 64);

AlgebraPtr opposite(const AlgebraPtr& a);

/// Parses the quiver text format:
///   field <p> / vertex <label> / arrow <label> <src> <tgt>
///   relation <c1>*<p1> + <c2>*<p2> ...      (path: a.b.c = first a then b then c)
/// Lines starting with '#' are comments. Module blocks are skipped.
Quiver parse_quiver(const std::string& text);

}  // namespace tiltlab
