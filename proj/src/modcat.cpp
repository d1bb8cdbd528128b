#include "tiltlab/modcat.hpp"

#include <algorithm>
#include <map>

namespace tiltlab {

namespace {

// vec(X) for row-major X, as a column.
Mat vectorize(const Mat& x) {
  Mat v(x.rows() * x.cols(), 1, x.mod());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) v.set(i * x.cols() + j, 0, x.at(i, j));
  return v;
}

Mat unvectorize(const Mat& v, int rows, int cols) {
  Mat x(rows, cols, v.mod());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x.set(i, j, v.at(i * cols + j, 0));
  return x;
}

}  // namespace

std::vector<ModuleMap> hom_space(const Module& m, const Module& n) {
  if (m.algebra().get() != n.algebra().get())
    throw std::invalid_argument("hom_space: modules over different algebras");
  const auto& alg = m.algebra();
  unsigned p = alg->p();
  const int nm = n.dim() * m.dim();
  if (nm == 0) return {};

  std::vector<int> constraints = alg->idempotents();
  for (int g : alg->generators()) constraints.push_back(g);

  // Unknown phi (n.dim x m.dim), condition act_N(g) phi - phi act_M(g) = 0.
  Mat sys(static_cast<int>(constraints.size()) * nm, nm, p);
  int row0 = 0;
  for (int g : constraints) {
    const Mat& an = n.action(g);
    const Mat& am = m.action(g);
    for (int i = 0; i < n.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) {
        int row = row0 + i * m.dim() + j;
        for (int k = 0; k < n.dim(); ++k) {
          unsigned c = an.at(i, k);
          if (c) sys.set(row, k * m.dim() + j, static_cast<long long>(sys.at(row, k * m.dim() + j)) + c);
        }
        for (int k = 0; k < m.dim(); ++k) {
          unsigned c = am.at(k, j);
          if (c) sys.set(row, i * m.dim() + k, static_cast<long long>(sys.at(row, i * m.dim() + k)) - static_cast<long long>(c));
        }
      }
    row0 += nm;
  }
  Mat ker = kernel_basis(sys);
  std::vector<ModuleMap> basis;
  basis.reserve(ker.cols());
  for (int c = 0; c < ker.cols(); ++c)
    basis.emplace_back(m, n, unvectorize(ker.col_range(c, c + 1), n.dim(), m.dim()));
  return basis;
}

int hom_dim(const Module& m, const Module& n) { return static_cast<int>(hom_space(m, n).size()); }

std::vector<uint32_t> hom_coordinates(const std::vector<ModuleMap>& basis, const Mat& map) {
  if (basis.empty()) {
    if (!map.is_zero()) throw std::invalid_argument("hom_coordinates: map outside empty hom space");
    return {};
  }
  Mat cols(map.rows() * map.cols(), static_cast<int>(basis.size()), map.mod());
  for (size_t b = 0; b < basis.size(); ++b) {
    Mat v = vectorize(basis[b].matrix());
    for (int i = 0; i < v.rows(); ++i) cols.set(i, static_cast<int>(b), v.at(i, 0));
  }
  auto x = solve(cols, vectorize(map));
  if (!x) throw std::invalid_argument("hom_coordinates: map not in the span of the basis");
  std::vector<uint32_t> out(basis.size());
  for (size_t b = 0; b < basis.size(); ++b) out[b] = x->at(static_cast<int>(b), 0);
  return out;
}

Mat radical_subspace(const Module& m) {
  const auto& alg = m.algebra();
  const Mat& rad = alg->radical();
  Mat cols(m.dim(), 0, alg->p());
  for (int r = 0; r < rad.cols(); ++r) {
    std::vector<uint32_t> coeffs(alg->dim());
    for (int i = 0; i < alg->dim(); ++i) coeffs[i] = rad.at(i, r);
    cols = cols.hcat(m.act(coeffs));
  }
  return column_space_basis(cols);
}

QuotientPair top(const Module& m) { return quotient_module(m, radical_subspace(m)); }

std::vector<Module> indecomposable_projectives(const AlgebraPtr& alg) {
  Module reg = regular_module(alg);
  std::vector<Module> out;
  for (size_t k = 0; k < alg->idempotents().size(); ++k) {
    Mat span(alg->dim(), 0, alg->p());
    for (int b = 0; b < alg->dim(); ++b)
      if (alg->src(b) == static_cast<int>(k)) {
        Mat v(alg->dim(), 1, alg->p());
        v.set(b, 0, 1);
        span = span.hcat(v);
      }
    auto sp = submodule(reg, span, "P" + std::to_string(k + 1));
    out.push_back(sp.sub);
  }
  return out;
}

std::vector<Module> simples(const AlgebraPtr& alg) {
  std::vector<Module> out;
  auto projs = indecomposable_projectives(alg);
  for (size_t k = 0; k < projs.size(); ++k) {
    auto t = top(projs[k]);
    t.quot.rename("S" + std::to_string(k + 1));
    out.push_back(t.quot);
  }
  return out;
}

std::vector<Module> indecomposable_injectives(const AlgebraPtr& alg) {
  AlgebraPtr op = opposite(alg);
  auto right_projs = indecomposable_projectives(op);
  std::vector<Module> out;
  for (size_t k = 0; k < right_projs.size(); ++k) {
    Module inj = dual_module(right_projs[k], alg);
    inj.rename("I" + std::to_string(k + 1));
    out.push_back(inj);
  }
  return out;
}

std::vector<int> simple_block_dims(const AlgebraPtr& alg) {
  std::vector<int> out;
  for (const auto& s : simples(alg)) {
    DimVector dv = s.dim_vector();
    int total = 0;
    for (int d : dv) total += d;
    out.push_back(total);
  }
  return out;
}

std::vector<std::vector<int>> cartan_matrix(const AlgebraPtr& alg) {
  auto projs = indecomposable_projectives(alg);
  auto sdims = simple_block_dims(alg);
  std::vector<std::vector<int>> cartan;
  for (const auto& pmod : projs) {
    DimVector dv = pmod.dim_vector();
    std::vector<int> row;
    for (size_t j = 0; j < dv.size(); ++j) {
      if (dv[j] % sdims[j] != 0) throw std::logic_error("cartan_matrix: block dim not divisible by simple dim");
      row.push_back(dv[j] / sdims[j]);
    }
    cartan.push_back(std::move(row));
  }
  return cartan;
}

namespace {

// Deterministic sweep: single basis endomorphisms first, then every nonzero
// coefficient tuple in odometer order.
template <typename Fn>
bool sweep_endomorphisms(const Module& m, const std::vector<ModuleMap>& endos,
                         unsigned long long budget, Fn&& consider) {
  const unsigned p = m.algebra()->p();
  const size_t e = endos.size();
  unsigned long long total = 1;
  for (size_t i = 0; i < e; ++i) {
    total *= p;
    if (total > budget)
      throw std::runtime_error("endomorphism sweep budget exceeded (dim End = " + std::to_string(e) + ")");
  }
  for (size_t i = 0; i < e; ++i)
    if (consider(endos[i].matrix())) return true;
  std::vector<unsigned> coef(e, 0);
  for (unsigned long long it = 0; it < total; ++it) {
    Mat phi(m.dim(), m.dim(), p);
    bool nonzero = false;
    for (size_t i = 0; i < e; ++i)
      if (coef[i]) {
        phi = phi + endos[i].matrix().scaled(coef[i]);
        nonzero = true;
      }
    if (nonzero && consider(phi)) return true;
    for (size_t i = 0; i < e; ++i) {
      if (++coef[i] < p) break;
      coef[i] = 0;
    }
  }
  return false;
}

unsigned fitting_exponent(int dim) {
  unsigned e = 1;
  while ((1u << e) < static_cast<unsigned>(dim)) ++e;
  return 1u << e;
}

void decompose_rec(const Module& m, const Budgets& budgets, std::vector<Module>& out) {
  if (m.dim() == 0) return;
  auto endos = hom_space(m, m);
  Mat split_ker(0, 0, m.algebra()->p());
  bool found = sweep_endomorphisms(m, endos, budgets.endo_sweep, [&](const Mat& phi) {
    Mat stable = phi.pow(fitting_exponent(m.dim()));
    int r = rank(stable);
    if (r == 0 || r == m.dim()) return false;
    split_ker = stable;
    return true;
  });
  if (!found) {
    out.push_back(m);  // every endomorphism invertible or nilpotent: local End
    return;
  }
  auto ker_part = submodule(m, kernel_basis(split_ker));
  auto im_part = submodule(m, column_space_basis(split_ker));
  if (ker_part.sub.dim() + im_part.sub.dim() != m.dim())
    throw std::logic_error("decompose: Fitting split dimensions do not add up");
  decompose_rec(ker_part.sub, budgets, out);
  decompose_rec(im_part.sub, budgets, out);
}

}  // namespace

std::vector<std::pair<Module, int>> decompose(const Module& m, const Budgets& budgets) {
  std::vector<Module> flat;
  decompose_rec(m, budgets, flat);
  std::stable_sort(flat.begin(), flat.end(), [](const Module& a, const Module& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.dim_vector() < b.dim_vector();
  });
  std::vector<std::pair<Module, int>> merged;
  for (auto& part : flat) {
    bool matched = false;
    for (auto& [rep, mult] : merged)
      if (is_isomorphic(rep, part, budgets)) {
        ++mult;
        matched = true;
        break;
      }
    if (!matched) merged.emplace_back(part, 1);
  }
  return merged;
}

bool is_indecomposable(const Module& m, const Budgets& budgets) {
  if (m.dim() == 0) return false;
  auto parts = decompose(m, budgets);
  return parts.size() == 1 && parts[0].second == 1;
}

bool is_isomorphic(const Module& m, const Module& n, const Budgets& budgets) {
  if (m.algebra().get() != n.algebra().get()) return false;
  if (m.dim() != n.dim()) return false;
  if (m.dim() == 0) return true;
  if (m.dim_vector() != n.dim_vector()) return false;
  auto homs = hom_space(m, n);
  if (homs.empty()) return false;
  const unsigned p = m.algebra()->p();
  unsigned long long total = 1;
  for (size_t i = 0; i < homs.size(); ++i) {
    total *= p;
    if (total > budgets.iso_search)
      throw std::runtime_error("is_isomorphic: search budget exceeded (dim Hom = " + std::to_string(homs.size()) + ")");
  }
  for (const auto& h : homs)
    if (rank(h.matrix()) == m.dim()) return true;
  std::vector<unsigned> coef(homs.size(), 0);
  for (unsigned long long it = 0; it < total; ++it) {
    Mat phi(n.dim(), m.dim(), p);
    for (size_t i = 0; i < homs.size(); ++i)
      if (coef[i]) phi = phi + homs[i].matrix().scaled(coef[i]);
    if (rank(phi) == m.dim()) return true;
    for (size_t i = 0; i < homs.size(); ++i) {
      if (++coef[i] < p) break;
      coef[i] = 0;
    }
  }
  return false;
}

namespace {

// Extends a generator assignment to action matrices for every basis element
// by closing the generated subalgebra while tracking candidate matrices.
// Inconsistent assignments are rejected later by the Module constructor.
struct ClosureElement {
  std::vector<uint32_t> vec;
  Mat mat;
};

std::vector<Mat> complete_actions(const AlgebraPtr& alg, const std::vector<Mat>& idem_actions,
                                  const std::vector<Mat>& gen_actions, int module_dim) {
  const int d = alg->dim();
  const unsigned p = alg->p();
  std::vector<ClosureElement> elems;
  Mat vecs(d, 0, p);
  auto push = [&](std::vector<uint32_t> v, Mat m) {
    Mat col(d, 1, p);
    for (int i = 0; i < d; ++i) col.set(i, 0, v[i]);
    if (spans(vecs, col)) return false;
    vecs = vecs.hcat(col);
    elems.push_back({std::move(v), std::move(m)});
    return true;
  };
  for (size_t k = 0; k < alg->idempotents().size(); ++k) {
    std::vector<uint32_t> v(d, 0);
    v[alg->idempotents()[k]] = 1;
    push(std::move(v), idem_actions[k]);
  }
  for (size_t g = 0; g < alg->generators().size(); ++g) {
    std::vector<uint32_t> v(d, 0);
    v[alg->generators()[g]] = 1;
    push(std::move(v), gen_actions[g]);
  }
  bool grew = true;
  while (grew && static_cast<int>(elems.size()) < d) {
    grew = false;
    size_t cur = elems.size();
    for (size_t i = 0; i < cur; ++i)
      for (size_t j = 0; j < cur; ++j) {
        auto prod = alg->product(elems[i].vec, elems[j].vec);
        if (push(std::move(prod), elems[i].mat * elems[j].mat)) grew = true;
      }
  }
  if (static_cast<int>(elems.size()) != d)
    throw std::logic_error("complete_actions: generators do not span the algebra");

  std::vector<Mat> actions;
  actions.reserve(d);
  for (int b = 0; b < d; ++b) {
    Mat eb(d, 1, p);
    eb.set(b, 0, 1);
    auto x = solve(vecs, eb);
    if (!x) throw std::logic_error("complete_actions: basis element outside closure");
    Mat act(module_dim, module_dim, p);
    for (size_t i = 0; i < elems.size(); ++i)
      if (x->at(static_cast<int>(i), 0)) act = act + elems[i].mat.scaled(x->at(static_cast<int>(i), 0));
    actions.push_back(act);
  }
  return actions;
}

}  // namespace

Module module_from_generator_actions(const AlgebraPtr& alg, const DimVector& dv,
                                     const std::vector<Mat>& gen_actions, std::string name) {
  const size_t nv = alg->idempotents().size();
  if (dv.size() != nv) throw std::invalid_argument("module_from_generator_actions: dim vector size mismatch");
  if (gen_actions.size() != alg->generators().size())
    throw std::invalid_argument("module_from_generator_actions: one action per generator required");
  int total = 0;
  std::vector<int> offset(nv, 0);
  for (size_t k = 0; k < nv; ++k) {
    offset[k] = total;
    total += dv[k];
  }
  std::vector<Mat> idem_actions;
  for (size_t k = 0; k < nv; ++k) {
    Mat e(total, total, alg->p());
    for (int i = 0; i < dv[k]; ++i) e.set(offset[k] + i, offset[k] + i, 1);
    idem_actions.push_back(e);
  }
  auto actions = complete_actions(alg, idem_actions, gen_actions, total);
  return Module(alg, std::move(actions), std::move(name));
}

std::vector<Module> enumerate_indecomposables(const AlgebraPtr& alg, const DimVector& bound,
                                              const Budgets& budgets) {
  const size_t nv = alg->idempotents().size();
  if (bound.size() != nv) throw std::invalid_argument("enumerate_indecomposables: bound size mismatch");
  const unsigned p = alg->p();
  const auto& gens = alg->generators();

  std::vector<Module> found;

  DimVector dv(nv, 0);
  auto next_dv = [&]() {
    for (size_t i = 0; i < nv; ++i) {
      if (++dv[i] <= bound[i]) return true;
      dv[i] = 0;
    }
    return false;
  };

  while (next_dv()) {
    int total_dim = 0;
    std::vector<int> offset(nv, 0);
    for (size_t k = 0; k < nv; ++k) {
      offset[k] = total_dim;
      total_dim += dv[k];
    }
    if (total_dim == 0) continue;

    // Block shapes of the generator actions determine the search space.
    std::vector<std::pair<int, int>> shapes;  // (tgt dim, src dim)
    unsigned long long assignments = 1;
    bool overflow = false;
    for (int g : gens) {
      int rows = dv[alg->tgt(g)], cols = dv[alg->src(g)];
      shapes.emplace_back(rows, cols);
      for (int i = 0; i < rows * cols; ++i) {
        assignments *= p;
        if (assignments > budgets.enumeration) {
          overflow = true;
          break;
        }
      }
      if (overflow) break;
    }
    if (overflow) {
      std::string s;
      for (size_t k = 0; k < nv; ++k) s += (k ? "," : "") + std::to_string(dv[k]);
      throw std::runtime_error("enumerate_indecomposables: budget exceeded at dim vector (" + s + ")");
    }

    std::vector<Mat> idem_actions;
    for (size_t k = 0; k < nv; ++k) {
      Mat e(total_dim, total_dim, p);
      for (int i = 0; i < dv[k]; ++i) e.set(offset[k] + i, offset[k] + i, 1);
      idem_actions.push_back(e);
    }

    int cells = 0;
    for (auto [r, c] : shapes) cells += r * c;
    std::vector<unsigned> coef(cells, 0);
    for (unsigned long long it = 0; it < assignments; ++it) {
      std::vector<Mat> gen_actions;
      int pos = 0;
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        auto [r, c] = shapes[gi];
        Mat act(total_dim, total_dim, p);
        int ro = offset[alg->tgt(gens[gi])], co = offset[alg->src(gens[gi])];
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < c; ++j) act.set(ro + i, co + j, coef[pos++]);
        gen_actions.push_back(act);
      }
      bool valid = true;
      Module candidate;
      try {
        auto actions = complete_actions(alg, idem_actions, gen_actions, total_dim);
        candidate = Module(alg, std::move(actions));
      } catch (const std::invalid_argument&) {
        valid = false;  // assignment does not satisfy the relations
      }
      if (valid && is_indecomposable(candidate, budgets)) {
        bool known = false;
        for (const auto& m : found)
          if (is_isomorphic(m, candidate, budgets)) {
            known = true;
            break;
          }
        if (!known) found.push_back(candidate);
      }
      for (int i = 0; i < cells; ++i) {
        if (++coef[i] < p) break;
        coef[i] = 0;
      }
      if (cells == 0) break;  // single (empty) assignment
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const Module& a, const Module& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.dim_vector() < b.dim_vector();
  });
  for (size_t i = 0; i < found.size(); ++i)
    if (found[i].name().empty()) found[i].rename("U" + std::to_string(i + 1));
  return found;
}

}  // namespace tiltlab
