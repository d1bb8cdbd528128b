#include "tiltlab/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tiltlab {

int Quiver::vertex_index(const std::string& label) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return static_cast<int>(i);
  return -1;
}

int Quiver::arrow_index(const std::string& label) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].label == label) return static_cast<int>(i);
  return -1;
}

BasedAlgebra::BasedAlgebra(unsigned p, std::vector<std::string> basis_labels,
                           std::vector<std::vector<std::vector<uint32_t>>> mult,
                           std::vector<int> idempotent_indices, std::string name)
    : p_(p), name_(std::move(name)), basis_(std::move(basis_labels)), mult_(std::move(mult)),
      idem_(std::move(idempotent_indices)) {
  validate();
  compute_peirce();
  compute_radical();
  compute_generators();
}

std::vector<uint32_t> BasedAlgebra::product(const std::vector<uint32_t>& x,
                                            const std::vector<uint32_t>& y) const {
  std::vector<uint32_t> out(dim(), 0);
  for (int i = 0; i < dim(); ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < dim(); ++j) {
      if (!y[j]) continue;
      unsigned long long c = static_cast<unsigned long long>(x[i]) * y[j] % p_;
      const auto& row = mult_[i][j];
      for (int k = 0; k < dim(); ++k)
        if (row[k]) out[k] = static_cast<uint32_t>((out[k] + c * row[k]) % p_);
    }
  }
  return out;
}

Mat BasedAlgebra::left_mult(int i) const {
  Mat m(dim(), dim(), p_);
  for (int j = 0; j < dim(); ++j)
    for (int k = 0; k < dim(); ++k) m.set(k, j, mult_[i][j][k]);
  return m;
}

int BasedAlgebra::basis_index(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i] == label) return i;
  return -1;
}

void BasedAlgebra::validate() {
  if (!is_prime(p_) || p_ > 251) throw std::domain_error("BasedAlgebra: modulus must be prime <= 251");
  const int d = dim();
  if (d == 0) throw std::invalid_argument("BasedAlgebra: empty basis");
  if (mult_.size() != static_cast<size_t>(d)) throw std::invalid_argument("BasedAlgebra: mult table shape");
  for (auto& row : mult_) {
    if (row.size() != static_cast<size_t>(d)) throw std::invalid_argument("BasedAlgebra: mult table shape");
    for (auto& v : row) {
      if (v.size() != static_cast<size_t>(d)) throw std::invalid_argument("BasedAlgebra: mult table shape");
      for (auto c : v)
        if (c >= p_) throw std::invalid_argument("BasedAlgebra: coefficient out of range");
    }
  }
  if (idem_.empty()) throw std::invalid_argument("BasedAlgebra: no idempotents");
  for (int e : idem_)
    if (e < 0 || e >= d) throw std::invalid_argument("BasedAlgebra: idempotent index out of range");

  // Orthogonal idempotents summing to the unit.
  for (size_t a = 0; a < idem_.size(); ++a)
    for (size_t b = 0; b < idem_.size(); ++b) {
      const auto& pr = mult_[idem_[a]][idem_[b]];
      for (int k = 0; k < d; ++k) {
        uint32_t want = (a == b && k == idem_[a]) ? 1u : 0u;
        if (pr[k] != want) throw std::invalid_argument("BasedAlgebra: idempotents not orthogonal/idempotent");
      }
    }
  std::vector<uint32_t> unit(d, 0);
  for (int e : idem_) unit[e] = 1;
  for (int j = 0; j < d; ++j) {
    std::vector<uint32_t> ej(d, 0);
    ej[j] = 1;
    if (product(unit, ej) != ej || product(ej, unit) != ej)
      throw std::invalid_argument("BasedAlgebra: idempotents do not sum to a unit");
  }

  // Associativity on all basis triples, via left-multiplication matrices.
  std::vector<Mat> lm;
  lm.reserve(d);
  for (int i = 0; i < d; ++i) lm.push_back(left_mult(i));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat lhs = lm[i] * lm[j];
      Mat rhs(d, d, p_);
      for (int k = 0; k < d; ++k)
        if (mult_[i][j][k]) rhs = rhs + lm[k].scaled(mult_[i][j][k]);
      if (!(lhs == rhs)) throw std::invalid_argument("BasedAlgebra: multiplication not associative");
    }
}

void BasedAlgebra::compute_peirce() {
  const int d = dim();
  src_.assign(d, -1);
  tgt_.assign(d, -1);
  for (int b = 0; b < d; ++b) {
    std::vector<uint32_t> eb(d, 0);
    eb[b] = 1;
    for (size_t k = 0; k < idem_.size(); ++k) {
      std::vector<uint32_t> le = mult_[idem_[k]][b];
      bool zero = std::all_of(le.begin(), le.end(), [](uint32_t c) { return c == 0; });
      if (!zero) {
        if (le != eb || tgt_[b] >= 0)
          throw std::invalid_argument("BasedAlgebra: basis not Peirce-homogeneous (left)");
        tgt_[b] = static_cast<int>(k);
      }
      std::vector<uint32_t> re = mult_[b][idem_[k]];
      zero = std::all_of(re.begin(), re.end(), [](uint32_t c) { return c == 0; });
      if (!zero) {
        if (re != eb || src_[b] >= 0)
          throw std::invalid_argument("BasedAlgebra: basis not Peirce-homogeneous (right)");
        src_[b] = static_cast<int>(k);
      }
    }
    if (src_[b] < 0 || tgt_[b] < 0)
      throw std::invalid_argument("BasedAlgebra: basis element killed by all idempotents");
  }
}

namespace {

// Span tracker over F_p column vectors with deterministic reduced basis.
class Span {
 public:
  Span(int n, unsigned p) : n_(n), p_(p), basis_(n, 0, p) {}

  bool contains(const Mat& v) const { return spans(basis_, v); }

  // Returns true when v was new.
  bool add(const Mat& v) {
    if (contains(v)) return false;
    basis_ = column_space_basis(basis_.hcat(v));
    return true;
  }

  int dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }

 private:
  int n_;
  unsigned p_;
  Mat basis_;
};

Mat unit_column(int n, int i, unsigned p) {
  Mat v(n, 1, p);
  v.set(i, 0, 1);
  return v;
}

Mat column_from(const std::vector<uint32_t>& v, unsigned p) {
  Mat c(static_cast<int>(v.size()), 1, p);
  for (size_t i = 0; i < v.size(); ++i) c.set(static_cast<int>(i), 0, v[i]);
  return c;
}

constexpr unsigned long long kLocalityBudget = 1ull << 21;

}  // namespace

void BasedAlgebra::compute_radical() {
  const int d = dim();
  Mat rad(d, 0, p_);

  for (size_t k = 0; k < idem_.size(); ++k) {
    // Corner e_k A e_k; cb[0] is the idempotent itself.
    std::vector<int> cb;
    cb.push_back(idem_[k]);
    for (int b = 0; b < d; ++b)
      if (b != idem_[k] && src_[b] == static_cast<int>(k) && tgt_[b] == static_cast<int>(k)) cb.push_back(b);
    const int c = static_cast<int>(cb.size());

    // Structural test first: the span of non-unit corner elements is a
    // nilpotent ideal iff products never regenerate the unit coefficient
    // and subspace powers vanish.
    bool unit_free = true;
    for (int a = 1; a < c && unit_free; ++a)
      for (int b = 1; b < c && unit_free; ++b)
        if (mult_[cb[a]][cb[b]][idem_[k]] != 0) unit_free = false;

    std::vector<int> corner_rad_local;  // indices into cb
    bool decided = false;
    if (unit_free) {
      // Nilpotency of N = span{cb[1..]}: closed under multiplication by the
      // unit-free check, so iterate subspace powers.
      Span power(d, p_);
      for (int a = 1; a < c; ++a) power.add(unit_column(d, cb[a], p_));
      Span base = power;
      bool nil = (c == 1);
      for (int it = 0; it < c + 1 && !nil; ++it) {
        Span next(d, p_);
        for (int col = 0; col < power.basis().cols(); ++col)
          for (int b = 1; b < c; ++b) {
            std::vector<uint32_t> x(d, 0);
            for (int r = 0; r < d; ++r) x[r] = power.basis().at(r, col);
            std::vector<uint32_t> y(d, 0);
            y[cb[b]] = 1;
            next.add(column_from(product(x, y), p_));
          }
        if (next.dim() == 0) {
          nil = true;
          break;
        }
        if (next.dim() >= power.dim()) break;  // stabilized nonzero
        power = next;
      }
      if (nil) {
        for (int a = 1; a < c; ++a) corner_rad_local.push_back(a);
        decided = true;
      }
    }

    if (!decided) {
      // Exhaustive locality check over all p^c corner elements.
      unsigned long long total = 1;
      for (int i = 0; i < c; ++i) {
        total *= p_;
        if (total > kLocalityBudget)
          throw std::domain_error("BasedAlgebra: primitivity check budget exceeded for idempotent " +
                                  std::to_string(k));
      }
      // Left multiplication of each corner basis element, in corner coords.
      std::vector<Mat> clm(c, Mat(c, c, p_));
      for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b) {
          const auto& pr = mult_[cb[a]][cb[b]];
          for (int r = 0; r < c; ++r) clm[a].set(r, b, pr[cb[r]]);
        }
      Mat noninv(c, 0, p_);
      unsigned long long count_noninv = 0;
      std::vector<unsigned> coef(c, 0);
      for (unsigned long long it = 0; it < total; ++it) {
        Mat lx(c, c, p_);
        for (int a = 0; a < c; ++a)
          if (coef[a]) lx = lx + clm[a].scaled(coef[a]);
        if (rank(lx) < c) {
          ++count_noninv;
          Mat v(c, 1, p_);
          for (int a = 0; a < c; ++a) v.set(a, 0, coef[a]);
          noninv = noninv.hcat(v);
        }
        for (int a = 0; a < c; ++a) {
          if (++coef[a] < p_) break;
          coef[a] = 0;
        }
      }
      Mat nbasis = column_space_basis(noninv);
      unsigned long long span_size = 1;
      for (int i = 0; i < nbasis.cols(); ++i) span_size *= p_;
      if (span_size != count_noninv)
        throw std::domain_error("BasedAlgebra: idempotent " + std::to_string(k) +
                                " is not primitive (corner algebra not local)");
      for (int col = 0; col < nbasis.cols(); ++col) {
        Mat v(d, 1, p_);
        for (int a = 0; a < c; ++a) v.set(cb[a], 0, nbasis.at(a, col));
        rad = rad.hcat(v);
      }
      continue;  // corner radical vectors already appended
    }

    for (int a : corner_rad_local) rad = rad.hcat(unit_column(d, cb[a], p_));
  }

  // Off-diagonal Peirce components always sit inside the radical of a basic
  // algebra; verification below catches non-basic inputs.
  for (int b = 0; b < d; ++b)
    if (src_[b] != tgt_[b]) rad = rad.hcat(unit_column(d, b, p_));

  rad = column_space_basis(rad);

  // Verify: two-sided ideal and nilpotent, so that (basic + local corners)
  // really yields the Jacobson radical.
  Span radspan(d, p_);
  for (int col = 0; col < rad.cols(); ++col) radspan.add(rad.col_range(col, col + 1));
  for (int col = 0; col < rad.cols(); ++col) {
    std::vector<uint32_t> r(d, 0);
    for (int i = 0; i < d; ++i) r[i] = rad.at(i, col);
    for (int b = 0; b < d; ++b) {
      std::vector<uint32_t> eb(d, 0);
      eb[b] = 1;
      if (!radspan.contains(column_from(product(eb, r), p_)) ||
          !radspan.contains(column_from(product(r, eb), p_)))
        throw std::domain_error("BasedAlgebra: radical candidate is not an ideal (algebra not basic?)");
    }
  }
  Mat power = rad;
  for (int it = 0; it <= d; ++it) {
    if (power.cols() == 0) break;
    Span next(d, p_);
    for (int i = 0; i < power.cols(); ++i)
      for (int j = 0; j < rad.cols(); ++j) {
        std::vector<uint32_t> x(d, 0), y(d, 0);
        for (int r = 0; r < d; ++r) {
          x[r] = power.at(r, i);
          y[r] = rad.at(r, j);
        }
        next.add(column_from(product(x, y), p_));
      }
    if (next.dim() >= power.cols() && next.dim() > 0)
      throw std::domain_error("BasedAlgebra: radical candidate not nilpotent (algebra not basic?)");
    power = next.basis();
  }

  radical_ = rad;
}

void BasedAlgebra::compute_generators() {
  const int d = dim();
  Span closed(d, p_);
  auto close = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      Mat cur = closed.basis();
      for (int i = 0; i < cur.cols(); ++i)
        for (int j = 0; j < cur.cols(); ++j) {
          std::vector<uint32_t> x(d, 0), y(d, 0);
          for (int r = 0; r < d; ++r) {
            x[r] = cur.at(r, i);
            y[r] = cur.at(r, j);
          }
          if (closed.add(column_from(product(x, y), p_))) grew = true;
        }
    }
  };
  for (int e : idem_) closed.add(unit_column(d, e, p_));
  close();
  for (int b = 0; b < d && closed.dim() < d; ++b) {
    if (closed.contains(unit_column(d, b, p_))) continue;
    gens_.push_back(b);
    closed.add(unit_column(d, b, p_));
    close();
  }
  if (closed.dim() != d) throw std::logic_error("BasedAlgebra: generator closure failed");
}

// ---------------------------------------------------------------------------
// Path algebras

namespace {

struct Path {
  int start = 0;              // vertex
  std::vector<int> arrows;    // diagrammatic order

  bool operator<(const Path& o) const {
    if (start != o.start) return start < o.start;
    return arrows < o.arrows;
  }
  bool operator==(const Path& o) const = default;
};

int path_end(const Quiver& q, const Path& p) {
  return p.arrows.empty() ? p.start : q.arrows[p.arrows.back()].target;
}

// (length, label-sequence) order used to orient rewrite rules.
bool monomial_less(const Quiver& q, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (q.arrows[a[i]].label != q.arrows[b[i]].label) return q.arrows[a[i]].label < q.arrows[b[i]].label;
  return false;
}

struct Rule {
  std::vector<int> lead;
  std::map<std::vector<int>, unsigned> rhs;  // lead = sum rhs (already negated/scaled)
};

using Combo = std::map<Path, unsigned>;

class Rewriter {
 public:
  Rewriter(const Quiver& q, std::vector<Rule> rules) : q_(q), rules_(std::move(rules)) {}

  Combo normal_form(const Path& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    if (++steps_ > 2000000) throw std::runtime_error("path rewriting did not terminate");
    Combo out;
    bool reduced = false;
    for (size_t pos = 0; pos < p.arrows.size() && !reduced; ++pos) {
      for (const auto& rule : rules_) {
        if (pos + rule.lead.size() > p.arrows.size()) continue;
        if (!std::equal(rule.lead.begin(), rule.lead.end(), p.arrows.begin() + pos)) continue;
        for (const auto& [word, coeff] : rule.rhs) {
          Path sub = p;
          sub.arrows.clear();
          sub.arrows.insert(sub.arrows.end(), p.arrows.begin(), p.arrows.begin() + pos);
          sub.arrows.insert(sub.arrows.end(), word.begin(), word.end());
          sub.arrows.insert(sub.arrows.end(), p.arrows.begin() + pos + rule.lead.size(), p.arrows.end());
          Combo nf = normal_form(sub);
          for (auto& [q2, c2] : nf) {
            unsigned v = (out[q2] + static_cast<unsigned long long>(coeff) * c2) % q_.p;
            if (v)
              out[q2] = v;
            else
              out.erase(q2);
          }
        }
        reduced = true;
        break;
      }
    }
    if (!reduced) out[p] = 1;
    cache_[p] = out;
    return out;
  }

  bool irreducible(const Path& p) const {
    for (size_t pos = 0; pos < p.arrows.size(); ++pos)
      for (const auto& rule : rules_)
        if (pos + rule.lead.size() <= p.arrows.size() &&
            std::equal(rule.lead.begin(), rule.lead.end(), p.arrows.begin() + pos))
          return false;
    return true;
  }

 private:
  const Quiver& q_;
  std::vector<Rule> rules_;
  std::map<Path, Combo> cache_;
  long long steps_ = 0;
};

std::string path_label(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + q.vertices[p.start];
  std::string s;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += '.';
    s += q.arrows[p.arrows[i]].label;
  }
  return s;
}

}  // namespace

AlgebraPtr path_algebra(const Quiver& q, int length_bound) {
  if (!is_prime(q.p) || q.p > 251) throw std::domain_error("path_algebra: field must be prime <= 251");
  if (q.vertices.empty()) throw std::invalid_argument("path_algebra: no vertices");
  for (const auto& a : q.arrows)
    if (a.source < 0 || a.source >= static_cast<int>(q.vertices.size()) || a.target < 0 ||
        a.target >= static_cast<int>(q.vertices.size()))
      throw std::invalid_argument("path_algebra: arrow endpoint not a declared vertex");

  std::vector<Rule> rules;
  for (const auto& rel : q.relations) {
    if (rel.empty()) continue;
    int rs = -1, rt = -1;
    for (const auto& term : rel) {
      if (term.path.size() < 2)
        throw std::invalid_argument("path_algebra: relation not admissible (path of length < 2)");
      for (size_t i = 0; i + 1 < term.path.size(); ++i)
        if (q.arrows[term.path[i]].target != q.arrows[term.path[i + 1]].source)
          throw std::invalid_argument("path_algebra: relation path not composable");
      int s = q.arrows[term.path.front()].source;
      int t = q.arrows[term.path.back()].target;
      if (rs < 0) {
        rs = s;
        rt = t;
      } else if (rs != s || rt != t) {
        throw std::invalid_argument("path_algebra: relation terms do not share source and target");
      }
      if (term.coeff % q.p == 0) throw std::invalid_argument("path_algebra: relation term with zero coefficient");
    }
    // Longest-path-first with lexicographic tiebreak picks the lead.
    size_t lead = 0;
    for (size_t i = 1; i < rel.size(); ++i)
      if (monomial_less(q, rel[lead].path, rel[i].path)) lead = i;
    Rule rule;
    rule.lead = rel[lead].path;
    unsigned inv = mod_inverse(rel[lead].coeff % q.p, q.p);
    for (size_t i = 0; i < rel.size(); ++i) {
      if (i == lead) continue;
      unsigned c = static_cast<unsigned>(static_cast<unsigned long long>(q.p - rel[i].coeff % q.p) * inv % q.p);
      if (c) rule.rhs[rel[i].path] = c;
    }
    rules.push_back(std::move(rule));
  }

  Rewriter rw(q, rules);

  // Irreducible paths by breadth-first extension.
  std::vector<Path> basis_paths;
  for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) basis_paths.push_back({v, {}});
  size_t level_begin = 0, level_end = basis_paths.size();
  int length = 0;
  while (level_begin < level_end) {
    ++length;
    if (length > length_bound)
      throw std::runtime_error("path_algebra: infinite-dimensional quotient (path length exceeded bound " +
                               std::to_string(length_bound) + ")");
    for (size_t i = level_begin; i < level_end; ++i) {
      Path base = basis_paths[i];
      int end = path_end(q, base);
      for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        if (q.arrows[a].source != end) continue;
        Path ext = base;
        ext.arrows.push_back(a);
        if (rw.irreducible(ext)) basis_paths.push_back(ext);
      }
    }
    level_begin = level_end;
    level_end = basis_paths.size();
  }

  const int d = static_cast<int>(basis_paths.size());
  std::map<Path, int> index;
  for (int i = 0; i < d; ++i) index[basis_paths[i]] = i;

  std::vector<std::string> labels;
  labels.reserve(d);
  for (const auto& p : basis_paths) labels.push_back(path_label(q, p));

  // b_i * b_j = "first j, then i".
  std::vector<std::vector<std::vector<uint32_t>>> mult(
      d, std::vector<std::vector<uint32_t>>(d, std::vector<uint32_t>(d, 0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Path& pi = basis_paths[i];
      const Path& pj = basis_paths[j];
      if (path_end(q, pj) != pi.start) continue;
      Path cat;
      cat.start = pj.start;
      cat.arrows = pj.arrows;
      cat.arrows.insert(cat.arrows.end(), pi.arrows.begin(), pi.arrows.end());
      for (const auto& [pth, coeff] : rw.normal_form(cat)) {
        auto it = index.find(pth);
        if (it == index.end()) throw std::logic_error("path_algebra: normal form left the basis");
        mult[i][j][it->second] = coeff;
      }
    }

  std::vector<int> idem(q.vertices.size());
  for (size_t v = 0; v < q.vertices.size(); ++v) idem[v] = static_cast<int>(v);

  return std::make_shared<BasedAlgebra>(q.p, std::move(labels), std::move(mult), std::move(idem), "path algebra");
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  const int d = a->dim();
  std::vector<std::vector<std::vector<uint32_t>>> mult(
      d, std::vector<std::vector<uint32_t>>(d, std::vector<uint32_t>(d, 0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) mult[i][j] = a->product(j, i);
  return std::make_shared<BasedAlgebra>(a->p(), a->basis(), std::move(mult), a->idempotents(),
                                        a->name().empty() ? "opposite" : a->name() + "^op");
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace

Quiver parse_quiver(const std::string& text) {
  Quiver q;
  bool field_seen = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto toks = tokens_of(raw);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "field") {
      if (toks.size() != 2) fail("expected: field <p>");
      q.p = static_cast<unsigned>(std::stoul(toks[1]));
      field_seen = true;
    } else if (toks[0] == "vertex") {
      if (toks.size() != 2) fail("expected: vertex <label>");
      if (q.vertex_index(toks[1]) >= 0) fail("duplicate vertex '" + toks[1] + "'");
      q.vertices.push_back(toks[1]);
    } else if (toks[0] == "arrow") {
      if (toks.size() != 4) fail("expected: arrow <label> <src> <tgt>");
      if (q.arrow_index(toks[1]) >= 0) fail("duplicate arrow '" + toks[1] + "'");
      int s = q.vertex_index(toks[2]), t = q.vertex_index(toks[3]);
      if (s < 0) fail("unknown vertex '" + toks[2] + "'");
      if (t < 0) fail("unknown vertex '" + toks[3] + "'");
      q.arrows.push_back({toks[1], s, t});
    } else if (toks[0] == "relation") {
      std::vector<RelationTerm> rel;
      std::string joined;
      for (size_t i = 1; i < toks.size(); ++i) joined += toks[i];
      if (joined.empty()) fail("empty relation");
      size_t pos = 0;
      while (pos < joined.size()) {
        size_t plus = joined.find('+', pos);
        std::string term = joined.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        pos = plus == std::string::npos ? joined.size() : plus + 1;
        RelationTerm rt;
        std::string pathpart = term;
        auto star = term.find('*');
        if (star != std::string::npos) {
          rt.coeff = static_cast<unsigned>(std::stoul(term.substr(0, star)));
          pathpart = term.substr(star + 1);
        }
        size_t p0 = 0;
        while (p0 <= pathpart.size()) {
          size_t dot = pathpart.find('.', p0);
          std::string lbl = pathpart.substr(p0, dot == std::string::npos ? std::string::npos : dot - p0);
          int ai = q.arrow_index(lbl);
          if (ai < 0) fail("unknown arrow '" + lbl + "' in relation");
          rt.path.push_back(ai);
          if (dot == std::string::npos) break;
          p0 = dot + 1;
        }
        rel.push_back(std::move(rt));
      }
      q.relations.push_back(std::move(rel));
    } else if (toks[0] == "module" || toks[0] == "act") {
      continue;  // handled by the module loader
    } else {
      fail("unknown declaration '" + toks[0] + "'");
    }
  }
  if (!field_seen) throw std::runtime_error("parse error: missing 'field <p>' declaration");
  return q;
}

}  // namespace tiltlab
