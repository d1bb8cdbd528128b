#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab {

bool is_prime(unsigned n);

/// Inverse of a mod p, p prime, a not divisible by p.
unsigned mod_inverse(unsigned a, unsigned p);

/// A residue together with its prime modulus. Arithmetic is exact mod p.
struct FieldScalar {
  unsigned value = 0;
  unsigned modulus = 2;

  FieldScalar() = default;
  FieldScalar(long long v, unsigned p);

  FieldScalar operator+(FieldScalar o) const;
  FieldScalar operator-(FieldScalar o) const;
  FieldScalar operator*(FieldScalar o) const;
  FieldScalar inverse() const;
  bool operator==(const FieldScalar& o) const = default;
};

/// Dense row-major matrix over F_p. All entries share one modulus.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, unsigned p);

  static Mat identity(int n, unsigned p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  unsigned mod() const { return p_; }

  unsigned at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, long long v);

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat scaled(long long c) const;
  bool operator==(const Mat& o) const = default;

  Mat transpose() const;
  /// m^e with e >= 0 (square matrices only).
  Mat pow(unsigned e) const;
  bool is_zero() const;

  /// Horizontal / vertical concatenation.
  Mat hcat(const Mat& o) const;
  Mat vcat(const Mat& o) const;
  Mat col_range(int begin, int end) const;
  Mat row_range(int begin, int end) const;

  /// Matrix as one long row-major vector (used when flattening map spaces).
  const std::vector<uint32_t>& entries() const { return e_; }

 private:
  int rows_ = 0, cols_ = 0;
  unsigned p_ = 2;
  std::vector<uint32_t> e_;
};

int rank(const Mat& m);

/// Reduced row echelon form; pivot column indices appended to `pivots` if given.
Mat rref(const Mat& m, std::vector<int>* pivots = nullptr);

/// Columns form a basis of the right null space: m * kernel_basis(m) = 0.
Mat kernel_basis(const Mat& m);

/// Some x with a*x = b, or nullopt when the system is inconsistent.
std::optional<Mat> solve(const Mat& a, const Mat& b);

std::optional<Mat> inverse(const Mat& m);

/// Deterministic basis of the column span (subset of columns in RREF order).
Mat column_space_basis(const Mat& m);

/// True when the columns of `sub` span a superset of the columns of `vecs`.
bool spans(const Mat& sub, const Mat& vecs);

/// Extends the (independent) columns of `part` to a basis of F_p^n by
/// standard basis vectors, chosen greedily in coordinate order.
Mat extend_to_basis(const Mat& part, int n, unsigned p);

}  // namespace tiltlab
