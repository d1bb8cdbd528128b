#include "tiltlab/mat.hpp"

namespace tiltlab {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned mod_inverse(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) throw std::domain_error("mod_inverse: zero has no inverse");
  // Fermat: a^(p-2) mod p.
  unsigned long long r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

static unsigned norm(long long v, unsigned p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  return static_cast<unsigned>(m);
}

FieldScalar::FieldScalar(long long v, unsigned p) : value(norm(v, p)), modulus(p) {
  if (!is_prime(p) || p > 251) throw std::domain_error("FieldScalar: modulus must be prime <= 251");
}

static void check_same_mod(unsigned a, unsigned b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": modulus mismatch");
}

FieldScalar FieldScalar::operator+(FieldScalar o) const {
  check_same_mod(modulus, o.modulus, "FieldScalar+");
  return FieldScalar(static_cast<long long>(value) + o.value, modulus);
}
FieldScalar FieldScalar::operator-(FieldScalar o) const {
  check_same_mod(modulus, o.modulus, "FieldScalar-");
  return FieldScalar(static_cast<long long>(value) - o.value, modulus);
}
FieldScalar FieldScalar::operator*(FieldScalar o) const {
  check_same_mod(modulus, o.modulus, "FieldScalar*");
  return FieldScalar(static_cast<long long>(value) * o.value, modulus);
}
FieldScalar FieldScalar::inverse() const { return FieldScalar(mod_inverse(value, modulus), modulus); }

Mat::Mat(int rows, int cols, unsigned p) : rows_(rows), cols_(cols), p_(p) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
  if (!is_prime(p) || p > 251) throw std::domain_error("Mat: modulus must be prime <= 251");
  e_.assign(static_cast<size_t>(rows) * cols, 0);
}

Mat Mat::identity(int n, unsigned p) {
  Mat m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void Mat::set(int r, int c, long long v) { e_[static_cast<size_t>(r) * cols_ + c] = norm(v, p_); }

Mat Mat::operator+(const Mat& o) const {
  check_same_mod(p_, o.p_, "Mat+");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat+: shape mismatch");
  Mat r(rows_, cols_, p_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = (e_[i] + o.e_[i]) % p_;
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_same_mod(p_, o.p_, "Mat-");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat-: shape mismatch");
  Mat r(rows_, cols_, p_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = (e_[i] + p_ - o.e_[i]) % p_;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  check_same_mod(p_, o.p_, "Mat*");
  if (cols_ != o.rows_) throw std::invalid_argument("Mat*: inner dimension mismatch");
  Mat r(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      unsigned long long a = at(i, k);
      if (!a) continue;
      for (int j = 0; j < o.cols_; ++j) {
        r.e_[static_cast<size_t>(i) * o.cols_ + j] =
            static_cast<uint32_t>((r.e_[static_cast<size_t>(i) * o.cols_ + j] + a * o.at(k, j)) % p_);
      }
    }
  return r;
}

Mat Mat::scaled(long long c) const {
  Mat r(rows_, cols_, p_);
  unsigned cc = norm(c, p_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<uint32_t>(static_cast<unsigned long long>(e_[i]) * cc % p_);
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Mat Mat::pow(unsigned e) const {
  if (rows_ != cols_) throw std::invalid_argument("Mat::pow: square matrices only");
  Mat r = identity(rows_, p_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Mat::is_zero() const {
  for (auto v : e_)
    if (v) return false;
  return true;
}

Mat Mat::hcat(const Mat& o) const {
  check_same_mod(p_, o.p_, "Mat::hcat");
  if (rows_ != o.rows_) throw std::invalid_argument("Mat::hcat: row mismatch");
  Mat r(rows_, cols_ + o.cols_, p_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
  }
  return r;
}

Mat Mat::vcat(const Mat& o) const {
  check_same_mod(p_, o.p_, "Mat::vcat");
  if (cols_ != o.cols_) throw std::invalid_argument("Mat::vcat: column mismatch");
  Mat r(rows_ + o.rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
  return r;
}

Mat Mat::col_range(int begin, int end) const {
  Mat r(rows_, end - begin, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = begin; j < end; ++j) r.set(i, j - begin, at(i, j));
  return r;
}

Mat Mat::row_range(int begin, int end) const {
  Mat r(end - begin, cols_, p_);
  for (int i = begin; i < end; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i - begin, j, at(i, j));
  return r;
}

Mat rref(const Mat& m, std::vector<int>* pivots) {
  Mat a = m;
  unsigned p = a.mod();
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols(); ++j) {
        unsigned t = a.at(r, j);
        a.set(r, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    unsigned inv = mod_inverse(a.at(r, c), p);
    for (int j = 0; j < a.cols(); ++j) a.set(r, j, static_cast<long long>(a.at(r, j)) * inv);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      unsigned f = a.at(i, c);
      if (!f) continue;
      for (int j = 0; j < a.cols(); ++j)
        a.set(i, j, static_cast<long long>(a.at(i, j)) + static_cast<long long>(p - f) * a.at(r, j));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

int rank(const Mat& m) {
  std::vector<int> piv;
  rref(m, &piv);
  return static_cast<int>(piv.size());
}

Mat kernel_basis(const Mat& m) {
  std::vector<int> piv;
  Mat r = rref(m, &piv);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : piv) is_piv[c] = true;
  int k = m.cols() - static_cast<int>(piv.size());
  Mat out(m.cols(), k, m.mod());
  int col = 0;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    out.set(free, col, 1);
    for (size_t i = 0; i < piv.size(); ++i)
      out.set(piv[i], col, -static_cast<long long>(r.at(static_cast<int>(i), free)));
    ++col;
  }
  return out;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  std::vector<int> piv;
  Mat r = rref(a.hcat(b), &piv);
  // A pivot in the b-part means inconsistency.
  for (int c : piv)
    if (c >= a.cols()) return std::nullopt;
  Mat x(a.cols(), b.cols(), a.mod());
  for (size_t i = 0; i < piv.size(); ++i)
    for (int j = 0; j < b.cols(); ++j) x.set(piv[i], j, r.at(static_cast<int>(i), a.cols() + j));
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Mat::identity(m.rows(), m.mod()));
}

Mat column_space_basis(const Mat& m) {
  std::vector<int> piv;
  rref(m, &piv);
  Mat out(m.rows(), static_cast<int>(piv.size()), m.mod());
  for (size_t j = 0; j < piv.size(); ++j)
    for (int i = 0; i < m.rows(); ++i) out.set(i, static_cast<int>(j), m.at(i, piv[j]));
  return out;
}

bool spans(const Mat& sub, const Mat& vecs) {
  if (vecs.cols() == 0) return true;
  return rank(sub) == rank(sub.hcat(vecs));
}

Mat extend_to_basis(const Mat& part, int n, unsigned p) {
  Mat cur = part;
  if (cur.rows() == 0 && cur.cols() == 0) cur = Mat(n, 0, p);
  if (cur.rows() != n) throw std::invalid_argument("extend_to_basis: row mismatch");
  int r = rank(cur);
  if (r != cur.cols()) throw std::invalid_argument("extend_to_basis: columns not independent");
  for (int i = 0; i < n && cur.cols() < n; ++i) {
    Mat e(n, 1, p);
    e.set(i, 0, 1);
    Mat cand = cur.hcat(e);
    if (rank(cand) == cur.cols() + 1) cur = cand;
  }
  if (cur.cols() != n) throw std::logic_error("extend_to_basis: failed to complete basis");
  return cur;
}

}  // namespace tiltlab
