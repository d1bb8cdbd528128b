#include "tiltlab/exact_structure.hpp"

namespace tiltlab {

ExactStructure ExactStructure::abelian(AlgebraPtr alg) {
  ExactStructure s;
  s.relative_ = false;
  s.alg_ = std::move(alg);
  s.proj_class_ = indecomposable_projectives(s.alg_);
  return s;
}

ExactStructure ExactStructure::relative(AlgebraPtr alg, std::vector<Module> generators, const Budgets& budgets) {
  if (generators.empty()) throw std::invalid_argument("ExactStructure::relative: generator list must be nonempty");
  ExactStructure s;
  s.relative_ = true;
  s.alg_ = std::move(alg);
  s.generators_ = std::move(generators);
  s.proj_class_ = indecomposable_projectives(s.alg_);
  for (const auto& g : s.generators_) {
    if (g.algebra().get() != s.alg_.get())
      throw std::invalid_argument("ExactStructure::relative: generator over a different algebra");
    for (auto& [part, mult] : decompose(g, budgets)) {
      bool known = false;
      for (const auto& m : s.proj_class_)
        if (is_isomorphic(m, part, budgets)) {
          known = true;
          break;
        }
      if (!known) s.proj_class_.push_back(part);
    }
  }
  return s;
}

bool hom_exact_on(const Module& g, const Conflation& c) {
  auto hb = hom_space(g, c.deflation.source());
  int target = hom_dim(g, c.deflation.target());
  if (target == 0) return true;
  Mat cols(c.deflation.target().dim() * g.dim(), static_cast<int>(hb.size()), g.algebra()->p());
  for (size_t i = 0; i < hb.size(); ++i) {
    Mat comp = c.deflation.matrix() * hb[i].matrix();
    for (int r = 0; r < comp.rows(); ++r)
      for (int cc = 0; cc < comp.cols(); ++cc) cols.set(r * comp.cols() + cc, static_cast<int>(i), comp.at(r, cc));
  }
  return rank(cols) == target;
}

bool cohom_exact_on(const Module& g, const Conflation& c) {
  auto hb = hom_space(c.inflation.target(), g);
  int target = hom_dim(c.inflation.source(), g);
  if (target == 0) return true;
  Mat cols(g.dim() * c.inflation.source().dim(), static_cast<int>(hb.size()), g.algebra()->p());
  for (size_t i = 0; i < hb.size(); ++i) {
    Mat comp = hb[i].matrix() * c.inflation.matrix();
    for (int r = 0; r < comp.rows(); ++r)
      for (int cc = 0; cc < comp.cols(); ++cc) cols.set(r * comp.cols() + cc, static_cast<int>(i), comp.at(r, cc));
  }
  return rank(cols) == target;
}

ConflationCheck is_conflation(const ExactStructure& s, const Conflation& c) {
  const Module& a = c.inflation.source();
  const Module& b = c.inflation.target();
  const Module& b2 = c.deflation.source();
  const Module& z = c.deflation.target();
  if (b.dim() != b2.dim() || !(b.actions() == b2.actions()))
    return {false, "middle terms of inflation and deflation differ"};
  if (!c.inflation.is_injective()) return {false, "inflation not injective"};
  if (!c.deflation.is_surjective()) return {false, "deflation not surjective"};
  if (!(c.deflation.matrix() * c.inflation.matrix()).is_zero()) return {false, "composite nonzero"};
  if (a.dim() + z.dim() != b.dim()) return {false, "dimensions do not add up"};
  // composite zero + matching dims: im(inflation) = ker(deflation)
  if (s.is_relative()) {
    for (size_t i = 0; i < s.generators().size(); ++i)
      if (!hom_exact_on(s.generators()[i], c)) {
        const auto& g = s.generators()[i];
        return {false, "Hom(G,-) not exact for generator " +
                           (g.name().empty() ? "#" + std::to_string(i + 1) : g.name())};
      }
  }
  return {true, ""};
}

std::vector<Module> relative_projectives(const ExactStructure& s, const std::vector<Module>& candidates,
                                         const Budgets& budgets) {
  if (!s.is_relative())
    throw std::invalid_argument("relative_projectives: abelian structure (use indecomposable_projectives)");
  std::vector<Module> out;
  for (const auto& cand : candidates) {
    bool in_add = true;
    if (cand.dim() > 0) {
      for (auto& [part, mult] : decompose(cand, budgets)) {
        bool found = false;
        for (const auto& m : s.projective_class())
          if (is_isomorphic(m, part, budgets)) {
            found = true;
            break;
          }
        if (!found) {
          in_add = false;
          break;
        }
      }
    }
    if (in_add) out.push_back(cand);
  }
  return out;
}

}  // namespace tiltlab
