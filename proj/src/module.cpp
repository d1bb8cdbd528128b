#include "tiltlab/module.hpp"

namespace tiltlab {

Module::Module(AlgebraPtr alg, std::vector<Mat> action, std::string name)
    : alg_(std::move(alg)), action_(std::move(action)), name_(std::move(name)) {
  if (!alg_) throw std::invalid_argument("Module: null algebra");
  const int d = alg_->dim();
  if (action_.size() != static_cast<size_t>(d)) throw std::invalid_argument("Module: one action per basis element required");
  dim_ = action_.empty() ? 0 : action_[0].rows();
  for (const auto& a : action_) {
    if (a.rows() != dim_ || a.cols() != dim_) throw std::invalid_argument("Module: action matrices must be square of equal size");
    if (a.mod() != alg_->p()) throw std::invalid_argument("Module: action modulus mismatch");
  }
  // Multiplicativity against the structure constants, and unit = identity.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat lhs = action_[i] * action_[j];
      Mat rhs(dim_, dim_, alg_->p());
      const auto& pr = alg_->product(i, j);
      for (int k = 0; k < d; ++k)
        if (pr[k]) rhs = rhs + action_[k].scaled(pr[k]);
      if (!(lhs == rhs)) throw std::invalid_argument("Module: action violates structure constants");
    }
  Mat unit(dim_, dim_, alg_->p());
  for (int e : alg_->idempotents()) unit = unit + action_[e];
  if (!(unit == Mat::identity(dim_, alg_->p()))) throw std::invalid_argument("Module: unit does not act as identity");
}

Mat Module::act(const std::vector<uint32_t>& coeffs) const {
  Mat out(dim_, dim_, alg_->p());
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) out = out + action_[i].scaled(coeffs[i]);
  return out;
}

DimVector Module::dim_vector() const {
  DimVector dv;
  dv.reserve(alg_->idempotents().size());
  for (int e : alg_->idempotents()) dv.push_back(rank(action_[e]));
  return dv;
}

Module Module::zero(const AlgebraPtr& alg) {
  std::vector<Mat> act(alg->dim(), Mat(0, 0, alg->p()));
  return Module(alg, std::move(act), "0");
}

ModuleMap::ModuleMap(Module source, Module target, Mat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
  if (src_.algebra().get() != tgt_.algebra().get())
    throw std::invalid_argument("ModuleMap: source and target over different algebras");
  if (mat_.rows() != tgt_.dim() || mat_.cols() != src_.dim())
    throw std::invalid_argument("ModuleMap: matrix shape must be target.dim x source.dim");
  const int d = src_.algebra()->dim();
  for (int b = 0; b < d; ++b)
    if (!(tgt_.action(b) * mat_ == mat_ * src_.action(b)))
      throw std::invalid_argument("ModuleMap: matrix does not intertwine the actions");
}

bool ModuleMap::is_injective() const { return rank(mat_) == src_.dim(); }
bool ModuleMap::is_surjective() const { return rank(mat_) == tgt_.dim(); }
bool ModuleMap::is_isomorphism() const { return src_.dim() == tgt_.dim() && rank(mat_) == src_.dim(); }

ModuleMap ModuleMap::compose_after(const ModuleMap& inner) const {
  if (inner.tgt_.dim() != src_.dim()) throw std::invalid_argument("ModuleMap: composition shape mismatch");
  return ModuleMap(inner.src_, tgt_, mat_ * inner.mat_);
}

ModuleMap identity_map(const Module& m) { return ModuleMap(m, m, Mat::identity(m.dim(), m.algebra()->p())); }

ModuleMap zero_map(const Module& source, const Module& target) {
  return ModuleMap(source, target, Mat(target.dim(), source.dim(), source.algebra()->p()));
}

SubmodulePair submodule(const Module& m, const Mat& span_columns, const std::string& name) {
  const auto& alg = m.algebra();
  Mat basis = column_space_basis(span_columns);
  std::vector<Mat> act;
  act.reserve(alg->dim());
  for (int b = 0; b < alg->dim(); ++b) {
    auto restricted = solve(basis, m.action(b) * basis);
    if (!restricted) throw std::invalid_argument("submodule: span is not action-stable");
    act.push_back(*restricted);
  }
  Module sub(alg, std::move(act), name);
  ModuleMap incl(sub, m, basis);
  return {std::move(sub), std::move(incl)};
}

QuotientPair quotient_module(const Module& m, const Mat& span_columns, const std::string& name) {
  const auto& alg = m.algebra();
  unsigned p = alg->p();
  Mat w = column_space_basis(span_columns);
  Mat full = extend_to_basis(w, m.dim(), p);
  auto inv = inverse(full);
  if (!inv) throw std::logic_error("quotient_module: basis completion not invertible");
  int k = w.cols();
  // Projection = last dim-k coordinates in the completed basis.
  Mat proj = inv->row_range(k, m.dim());
  Mat sect = full.col_range(k, m.dim());
  std::vector<Mat> act;
  act.reserve(alg->dim());
  for (int b = 0; b < alg->dim(); ++b) act.push_back(proj * m.action(b) * sect);
  Module q(alg, std::move(act), name);
  ModuleMap pr(m, q, proj);
  return {std::move(q), std::move(pr)};
}

SubmodulePair kernel(const ModuleMap& f) { return submodule(f.source(), kernel_basis(f.matrix())); }

QuotientPair cokernel(const ModuleMap& f) { return quotient_module(f.target(), f.matrix()); }

SubmodulePair image(const ModuleMap& f) { return submodule(f.target(), f.matrix()); }

DirectSum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: needs at least one part (use Module::zero)");
  const auto& alg = parts[0].algebra();
  unsigned p = alg->p();
  int total = 0;
  for (const auto& m : parts) {
    if (m.algebra().get() != alg.get()) throw std::invalid_argument("direct_sum: algebra mismatch");
    total += m.dim();
  }
  std::vector<Mat> act;
  act.reserve(alg->dim());
  for (int b = 0; b < alg->dim(); ++b) {
    Mat blk(total, total, p);
    int off = 0;
    for (const auto& m : parts) {
      for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) blk.set(off + i, off + j, m.action(b).at(i, j));
      off += m.dim();
    }
    act.push_back(blk);
  }
  Module sum(alg, std::move(act));
  DirectSum out{sum, {}, {}};
  int off = 0;
  for (const auto& m : parts) {
    Mat in(total, m.dim(), p), pr(m.dim(), total, p);
    for (int i = 0; i < m.dim(); ++i) {
      in.set(off + i, i, 1);
      pr.set(i, off + i, 1);
    }
    out.inclusions.emplace_back(m, sum, in);
    out.projections.emplace_back(sum, m, pr);
    off += m.dim();
  }
  return out;
}

Pushout pushout(const ModuleMap& f, const ModuleMap& g) {
  if (f.source().dim() != g.source().dim())
    throw std::invalid_argument("pushout: maps must share their source");
  DirectSum cb = direct_sum({g.target(), f.target()});
  // (g, -f) : A -> C ⊕ B
  Mat diff = cb.inclusions[0].matrix() * g.matrix() - cb.inclusions[1].matrix() * f.matrix();
  ModuleMap d(f.source(), cb.total, diff);
  QuotientPair q = cokernel(d);
  return {q.quot, q.projection.compose_after(cb.inclusions[0]), q.projection.compose_after(cb.inclusions[1])};
}

Module regular_module(const AlgebraPtr& alg) {
  std::vector<Mat> act;
  act.reserve(alg->dim());
  for (int b = 0; b < alg->dim(); ++b) act.push_back(alg->left_mult(b));
  return Module(alg, std::move(act), alg->name().empty() ? "A" : alg->name());
}

Module dual_module(const Module& m, const AlgebraPtr& opposite_alg) {
  if (opposite_alg->dim() != m.algebra()->dim()) throw std::invalid_argument("dual_module: dimension mismatch");
  std::vector<Mat> act;
  act.reserve(m.algebra()->dim());
  for (int b = 0; b < m.algebra()->dim(); ++b) act.push_back(m.action(b).transpose());
  return Module(opposite_alg, std::move(act), m.name().empty() ? "" : "D(" + m.name() + ")");
}

}  // namespace tiltlab
