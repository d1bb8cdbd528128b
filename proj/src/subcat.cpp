#include "tiltlab/subcat.hpp"

namespace tiltlab {

SubcatSpec::SubcatSpec(std::string name, std::vector<Module> summands, const Budgets& budgets)
    : name_(std::move(name)), summands_(std::move(summands)) {
  for (size_t i = 0; i < summands_.size(); ++i) {
    if (summands_[i].dim() == 0) throw std::invalid_argument("SubcatSpec: zero summand");
    if (!is_indecomposable(summands_[i], budgets))
      throw std::invalid_argument("SubcatSpec: summand " + summands_[i].name() + " is decomposable");
    for (size_t j = 0; j < i; ++j)
      if (is_isomorphic(summands_[i], summands_[j], budgets))
        throw std::invalid_argument("SubcatSpec: isomorphic summands " + summands_[j].name() + ", " +
                                    summands_[i].name());
  }
}

bool in_add(const SubcatSpec& spec, const Module& m, const Budgets& budgets) {
  if (m.dim() == 0) return true;
  for (auto& [part, mult] : decompose(m, budgets)) {
    bool found = false;
    for (const auto& t : spec.summands())
      if (is_isomorphic(part, t, budgets)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

PerpResult in_perp(const SubcatSpec& spec, const Module& m, const DegreeRange& range,
                   const ExactStructure& s, int cutoff) {
  for (const auto& t : spec.summands()) {
    if (range.all_from_one) {
      VanishReport vr = ext_vanishes_from_one(t, m, s, cutoff);
      if (vr.verdict == Verdict::False)
        return {Verdict::False, "Ext^" + std::to_string(vr.witness_degree) + "(" + t.name() + ", " + m.name() +
                                    ") = " + std::to_string(vr.witness_dim)};
      if (vr.verdict == Verdict::Undecided)
        return {Verdict::Undecided, "Ext^{>=1}(" + t.name() + ", " + m.name() + ") undecided at cutoff"};
    } else {
      for (int d : range.degrees) {
        int v;
        try {
          v = d == 0 ? hom_dim(t, m) : ext_dim(t, m, d, s, cutoff);
        } catch (const UndecidedError&) {
          return {Verdict::Undecided, "Ext^" + std::to_string(d) + "(" + t.name() + ", " + m.name() + ") undecided"};
        }
        if (v != 0)
          return {Verdict::False,
                  "Ext^" + std::to_string(d) + "(" + t.name() + ", " + m.name() + ") = " + std::to_string(v)};
      }
    }
  }
  return {Verdict::True, ""};
}

namespace {

// One right-approximation stage: the approximation must be a deflation of s.
// Returns the conflation (kernel incl, approximation) on success.
struct RightStage {
  bool ok = false;
  std::string reason;
  ModuleMap approx;
  SubmodulePair ker;
};

RightStage right_stage(const SubcatSpec& spec, const Module& m, const ExactStructure& s) {
  RightStage st;
  st.approx = right_approximation(m, spec.summands());
  if (!st.approx.is_surjective()) {
    st.reason = "right approximation of " + m.name() + " is not surjective";
    return st;
  }
  st.ker = kernel(st.approx);
  Conflation c{st.ker.inclusion, st.approx};
  ConflationCheck cc = is_conflation(s, c);
  if (!cc.ok) {
    st.reason = "right approximation of " + m.name() + " is not a deflation: " + cc.witness;
    return st;
  }
  st.ok = true;
  return st;
}

struct LeftStage {
  bool ok = false;
  std::string reason;
  ModuleMap approx;
  QuotientPair coker;
};

LeftStage left_stage(const SubcatSpec& spec, const Module& m, const ExactStructure& s) {
  LeftStage st;
  st.approx = left_approximation(m, spec.summands());
  if (!st.approx.is_injective()) {
    st.reason = "left approximation of " + m.name() + " is not injective";
    return st;
  }
  st.coker = cokernel(st.approx);
  Conflation c{st.approx, st.coker.projection};
  ConflationCheck cc = is_conflation(s, c);
  if (!cc.ok) {
    st.reason = "left approximation of " + m.name() + " is not an inflation: " + cc.witness;
    return st;
  }
  st.ok = true;
  return st;
}

}  // namespace

MembershipResult in_pres_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                           const Budgets& budgets) {
  (void)budgets;
  if (n < -1) throw std::invalid_argument("in_pres_n: n < -1");
  MembershipResult out;
  if (n == -1) {  // empty chain condition
    out.verdict = Verdict::True;
    return out;
  }
  Module current = m;
  for (int i = 0; i <= n; ++i) {
    if (current.dim() == 0) break;  // pad with zero terms
    RightStage st = right_stage(spec, current, s);
    if (!st.ok) {
      out.verdict = Verdict::False;
      out.reason = "stage " + std::to_string(i) + ": " + st.reason;
      return out;
    }
    out.chain.push_back({st.approx.source(), st.approx, st.ker.sub});
    current = st.ker.sub;
  }
  out.verdict = Verdict::True;
  return out;
}

MembershipResult in_gen_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                          const Budgets& budgets) {
  MembershipResult out = in_pres_n(spec, m, n, s, budgets);
  if (out.verdict != Verdict::True) return out;
  // Hom(T',-)-exactness of every stage, decided by rank count.
  Module current = m;
  for (size_t i = 0; i < out.chain.size(); ++i) {
    SubmodulePair ker = kernel(out.chain[i].map);
    Conflation c{ker.inclusion, out.chain[i].map};
    for (const auto& t : spec.summands())
      if (!hom_exact_on(t, c)) {
        out.verdict = Verdict::False;
        out.reason = "stage " + std::to_string(i) + ": Hom(" + t.name() + ",-) not exact";
        return out;
      }
    current = out.chain[i].carried;
  }
  return out;
}

MembershipResult in_cores_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                            const Budgets& budgets) {
  if (n < 0) throw std::invalid_argument("in_cores_n: n < 0");
  MembershipResult out;
  Module current = m;
  for (int step = 0; step <= n; ++step) {
    if (current.dim() == 0 || in_add(spec, current, budgets)) {
      out.verdict = Verdict::True;
      if (current.dim() > 0) out.chain.push_back({current, identity_map(current), Module::zero(m.algebra())});
      return out;
    }
    if (step == n) break;
    LeftStage st = left_stage(spec, current, s);
    if (!st.ok) {
      out.verdict = Verdict::False;
      out.reason = "step " + std::to_string(step) + ": " + st.reason;
      return out;
    }
    out.chain.push_back({st.approx.target(), st.approx, st.coker.quot});
    current = st.coker.quot;
  }
  out.verdict = Verdict::False;
  out.reason = "cokernel " + current.name() + " not in add(" + spec.name() + ") within " + std::to_string(n) +
               " steps";
  return out;
}

MembershipResult in_reso_n(const SubcatSpec& spec, const Module& m, int n, const ExactStructure& s,
                           const Budgets& budgets) {
  if (n < 0) throw std::invalid_argument("in_reso_n: n < 0");
  MembershipResult out;
  Module current = m;
  for (int step = 0; step <= n; ++step) {
    if (current.dim() == 0 || in_add(spec, current, budgets)) {
      out.verdict = Verdict::True;
      if (current.dim() > 0) out.chain.push_back({current, identity_map(current), Module::zero(m.algebra())});
      return out;
    }
    if (step == n) break;
    RightStage st = right_stage(spec, current, s);
    if (!st.ok) {
      out.verdict = Verdict::False;
      out.reason = "step " + std::to_string(step) + ": " + st.reason;
      return out;
    }
    out.chain.push_back({st.approx.source(), st.approx, st.ker.sub});
    current = st.ker.sub;
  }
  out.verdict = Verdict::False;
  out.reason = "kernel " + current.name() + " not in add(" + spec.name() + ") within " + std::to_string(n) +
               " steps";
  return out;
}

namespace {

// All modules of the form ⊕ of up to max_copies summands (with repetition),
// paired with the multiset of summand indices.
std::vector<std::vector<int>> summand_multisets(int count, int max_copies) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Nonempty multisets of indices 0..count-1, sizes 1..max_copies.
  struct Rec {
    int count, max_copies;
    std::vector<std::vector<int>>* out;
    void go(std::vector<int>& cur, int start) {
      if (!cur.empty()) out->push_back(cur);
      if (static_cast<int>(cur.size()) == max_copies) return;
      for (int i = start; i < count; ++i) {
        cur.push_back(i);
        go(cur, i);
        cur.pop_back();
      }
    }
  } rec{count, max_copies, &out};
  rec.go(cur, 0);
  return out;
}

}  // namespace

MembershipResult in_pres_n_exhaustive(const SubcatSpec& spec, const Module& m, int n,
                                      const ExactStructure& s, int max_copies, const Budgets& budgets) {
  MembershipResult out;
  if (n == -1) {
    out.verdict = Verdict::True;
    return out;
  }
  if (m.dim() == 0) {
    out.verdict = Verdict::True;
    return out;
  }
  const unsigned p = s.algebra()->p();
  auto multisets = summand_multisets(static_cast<int>(spec.summands().size()), max_copies);
  for (const auto& ms : multisets) {
    std::vector<Module> parts;
    for (int i : ms) parts.push_back(spec.summands()[i]);
    DirectSum ds = direct_sum(parts);
    auto homs = hom_space(ds.total, m);
    if (homs.empty()) continue;
    unsigned long long total = 1;
    bool over = false;
    for (size_t i = 0; i < homs.size(); ++i) {
      total *= p;
      if (total > budgets.iso_search) {
        over = true;
        break;
      }
    }
    if (over) throw std::runtime_error("in_pres_n_exhaustive: map search budget exceeded");
    std::vector<unsigned> coef(homs.size(), 0);
    for (unsigned long long it = 0; it < total; ++it) {
      Mat f(m.dim(), ds.total.dim(), p);
      for (size_t i = 0; i < homs.size(); ++i)
        if (coef[i]) f = f + homs[i].matrix().scaled(coef[i]);
      ModuleMap cand(ds.total, m, f);
      if (cand.is_surjective()) {
        SubmodulePair ker = kernel(cand);
        Conflation c{ker.inclusion, cand};
        if (is_conflation(s, c).ok) {
          MembershipResult rest = n == 0 ? MembershipResult{Verdict::True, "", {}}
                                         : in_pres_n_exhaustive(spec, ker.sub, n - 1, s, max_copies, budgets);
          if (rest.verdict == Verdict::True) {
            out.verdict = Verdict::True;
            out.chain.push_back({ds.total, cand, ker.sub});
            for (auto& step : rest.chain) out.chain.push_back(step);
            return out;
          }
        }
      }
      for (size_t i = 0; i < homs.size(); ++i) {
        if (++coef[i] < p) break;
        coef[i] = 0;
      }
    }
  }
  out.verdict = Verdict::False;
  out.reason = "no chain found with stage terms of at most " + std::to_string(max_copies) + " copies";
  return out;
}

ResolvingReport is_resolving(const SubcatSpec& spec, const Universe& u, const Budgets& budgets, int cutoff) {
  const ExactStructure& s = u.structure;
  const unsigned p = s.algebra()->p();

  // (i) contains the (relative) projectives
  for (const auto& pr : s.projective_class()) {
    bool found = false;
    for (const auto& t : spec.summands())
      if (is_isomorphic(pr, t, budgets)) {
        found = true;
        break;
      }
    if (!found) return {Verdict::False, "projective " + pr.name() + " not in the subcategory"};
  }

  // (ii) kernels of deflations between members (single and double sums onto
  // single summands, all coefficient tuples within budget)
  auto sources = summand_multisets(static_cast<int>(spec.summands().size()), 2);
  for (const auto& ms : sources) {
    std::vector<Module> parts;
    for (int i : ms) parts.push_back(spec.summands()[i]);
    DirectSum ds = direct_sum(parts);
    for (const auto& b : spec.summands()) {
      auto homs = hom_space(ds.total, b);
      if (homs.empty()) continue;
      unsigned long long total = 1;
      for (size_t i = 0; i < homs.size(); ++i) {
        total *= p;
        if (total > budgets.iso_search)
          throw std::runtime_error("is_resolving: deflation enumeration budget exceeded");
      }
      std::vector<unsigned> coef(homs.size(), 0);
      for (unsigned long long it = 0; it < total; ++it) {
        Mat f(b.dim(), ds.total.dim(), p);
        for (size_t i = 0; i < homs.size(); ++i)
          if (coef[i]) f = f + homs[i].matrix().scaled(coef[i]);
        ModuleMap cand(ds.total, b, f);
        if (cand.is_surjective()) {
          SubmodulePair ker = kernel(cand);
          Conflation c{ker.inclusion, cand};
          if (is_conflation(s, c).ok && !in_add(spec, ker.sub, budgets))
            return {Verdict::False, "kernel of a deflation onto " + b.name() + " leaves the subcategory"};
        }
        for (size_t i = 0; i < homs.size(); ++i) {
          if (++coef[i] < p) break;
          coef[i] = 0;
        }
      }
    }
  }

  // (iii) extension-closed: enumerate middle terms through cocycle classes
  for (const auto& a : spec.summands())
    for (const auto& b : spec.summands()) {
      ExtensionSpace es = ext1_space(a, b);
      auto reps = es.class_representatives();
      if (reps.empty()) continue;
      unsigned long long total = 1;
      for (size_t i = 0; i < reps.size(); ++i) {
        total *= p;
        if (total > budgets.iso_search)
          throw std::runtime_error("is_resolving: extension enumeration budget exceeded");
      }
      std::vector<unsigned> coef(reps.size(), 0);
      for (unsigned long long it = 0; it < total; ++it) {
        bool nonzero = false;
        std::vector<Mat> cocycle(s.algebra()->dim(), Mat(b.dim(), a.dim(), p));
        for (size_t i = 0; i < reps.size(); ++i)
          if (coef[i]) {
            nonzero = true;
            for (int k = 0; k < s.algebra()->dim(); ++k)
              cocycle[k] = cocycle[k] + reps[i][k].scaled(coef[i]);
          }
        if (nonzero) {
          Conflation c = extension_middle_term(a, b, cocycle);
          // Only abelian-exact extensions that are conflations of s matter.
          if (is_conflation(s, c).ok && !in_add(spec, c.inflation.target(), budgets))
            return {Verdict::False,
                    "middle term of an extension of " + a.name() + " by " + b.name() + " leaves the subcategory"};
        }
        for (size_t i = 0; i < reps.size(); ++i) {
          if (++coef[i] < p) break;
          coef[i] = 0;
        }
      }
    }

  // (iv) generates every universe member
  for (const auto& m : u.modules) {
    MembershipResult g = in_gen_n(spec, m, 0, s, budgets);
    if (g.verdict == Verdict::False) return {Verdict::False, m.name() + " not generated: " + g.reason};
    if (g.verdict == Verdict::Undecided) return {Verdict::Undecided, m.name() + ": " + g.reason};
  }
  (void)cutoff;
  return {Verdict::True, ""};
}

}  // namespace tiltlab
