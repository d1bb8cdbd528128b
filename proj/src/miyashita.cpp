#include "tiltlab/miyashita.hpp"

namespace tiltlab {

namespace {

// T~ = add(Psi over the indecomposable relative projectives), over Γ^op.
std::vector<Module> transported_spec_summands(const TransportContext& ctx, int cutoff, const Budgets& budgets) {
  std::vector<Module> parts;
  for (const auto& p : ctx.ambient().projective_class()) {
    Module t = psi(ctx, p, cutoff);
    if (t.dim() == 0) continue;
    for (auto& [part, mult] : decompose(t, budgets)) {
      bool known = false;
      for (const auto& have : parts)
        if (is_isomorphic(have, part, budgets)) {
          known = true;
          break;
        }
      if (!known) parts.push_back(part);
    }
  }
  for (size_t i = 0; i < parts.size(); ++i)
    if (parts[i].name().empty()) parts[i].rename("Tt" + std::to_string(i + 1));
  return parts;
}

}  // namespace

Verdict in_tor_perp(const TransportContext& ctx, const Module& y, int cutoff) {
  Budgets budgets;
  for (const auto& tt : transported_spec_summands(ctx, cutoff, budgets)) {
    VanishReport vr = tor_vanishes_from_one(tt, y, cutoff);
    if (vr.verdict != Verdict::True) return vr.verdict;
  }
  return Verdict::True;
}

MiyashitaReport verify_miyashita(const TransportContext& ctx, int n, const Universe& u_lambda,
                                 const Universe& u_gamma, int cutoff, const Budgets& budgets) {
  MiyashitaReport r;
  auto push = [&](std::string label, Verdict v, std::string detail) {
    r.items.push_back({std::move(label), v, std::move(detail)});
  };

  std::vector<Module> tt_parts = transported_spec_summands(ctx, cutoff, budgets);

  // (1) the transported spec is n-tilting over Γ^op.
  {
    SubcatSpec tt_spec("Psi(P)", tt_parts, budgets);
    TiltingReport rep = check_tilting(tt_spec, n, ExactStructure::abelian(ctx.gamma_op()), cutoff, budgets);
    std::string detail;
    if (rep.overall != Verdict::True)
      detail = "t1: " + rep.t1.witness + "; t2: " + rep.t2.witness + "; t3: " + rep.t3.witness;
    push("transported spec is " + std::to_string(n) + "-tilting", rep.overall, detail);
  }

  // Perpendicular members on the Λ side.
  SubcatSpec t = ctx.tilt();
  for (size_t i = 0; i < u_lambda.modules.size(); ++i) {
    PerpResult pr = in_perp(t, u_lambda.modules[i], DegreeRange::from_one(), ctx.ambient(), cutoff);
    if (pr.verdict == Verdict::Undecided) {
      push("perpendicular membership", Verdict::Undecided, pr.witness);
      break;
    }
    if (pr.verdict == Verdict::True) r.perp_indices.push_back(static_cast<int>(i));
  }

  // Tor-perpendicular members on the Γ side.
  auto y_in_tor_perp = [&](const Module& y) {
    for (const auto& tt : tt_parts) {
      VanishReport vr = tor_vanishes_from_one(tt, y, cutoff);
      if (vr.verdict != Verdict::True) return vr.verdict;
    }
    return Verdict::True;
  };
  for (size_t i = 0; i < u_gamma.modules.size(); ++i) {
    Verdict v = y_in_tor_perp(u_gamma.modules[i]);
    if (v == Verdict::Undecided) {
      push("Tor-perpendicular membership", Verdict::Undecided, u_gamma.modules[i].name());
      break;
    }
    if (v == Verdict::True) r.tor_perp_indices.push_back(static_cast<int>(i));
  }

  // (3) every Γ-universe member has a length-n resolution with terms in the
  // Tor-perpendicular class (projective terms plus a perpendicular syzygy).
  {
    Verdict v = Verdict::True;
    std::string detail;
    ExactStructure gamma_ab = ExactStructure::abelian(ctx.gamma());
    for (const auto& y : u_gamma.modules) {
      Module omega = y;  // Omega^n(y); zero when the resolution ends earlier
      if (n > 0) {
        Resolution res = resolve(y, gamma_ab, n);
        if (static_cast<size_t>(n) <= res.syzygies.size())
          omega = res.syzygies[static_cast<size_t>(n) - 1];
        else
          omega = Module::zero(ctx.gamma());
      }
      Verdict m = omega.dim() == 0 ? Verdict::True : y_in_tor_perp(omega);
      if (m != Verdict::True) {
        v = m;
        detail = "syzygy of " + y.name() + " not Tor-perpendicular";
        break;
      }
    }
    push("Tor-perpendicular class is " + std::to_string(n) + "-resolving", v, detail);
  }

  // (4ii) inverse equivalences between the perpendicular classes.
  {
    Verdict v = Verdict::True;
    std::string detail;
    std::vector<Module> images;
    for (int idx : r.perp_indices) {
      const Module& x = u_lambda.modules[idx];
      Module px = phi(ctx, x);
      Verdict tp = y_in_tor_perp(px);
      if (tp != Verdict::True) {
        v = tp == Verdict::False ? Verdict::False : Verdict::Undecided;
        detail = "Phi(" + x.name() + ") not Tor-perpendicular";
        break;
      }
      Module back = phi_prime(ctx, px);
      ModuleMap ev = counit(ctx, x, px, back);
      if (!ev.is_isomorphism()) {
        v = Verdict::False;
        detail = "counit not invertible on " + x.name();
        break;
      }
      images.push_back(px);
    }
    if (v == Verdict::True)
      for (int idx : r.tor_perp_indices) {
        const Module& y = u_gamma.modules[idx];
        Module back = phi_prime(ctx, y);
        Module there = phi(ctx, back);
        ModuleMap eta = unit(ctx, y, back, there);
        if (!eta.is_isomorphism()) {
          v = Verdict::False;
          detail = "unit not invertible on " + y.name();
          break;
        }
      }
    // Bijection of the perpendicular classes through Phi.
    if (v == Verdict::True) {
      if (images.size() != r.tor_perp_indices.size()) {
        v = Verdict::False;
        detail = "perpendicular class sizes differ: " + std::to_string(images.size()) + " vs " +
                 std::to_string(r.tor_perp_indices.size());
      } else {
        for (size_t a = 0; a < images.size() && v == Verdict::True; ++a) {
          bool hit = false;
          for (int idx : r.tor_perp_indices)
            if (is_isomorphic(images[a], u_gamma.modules[idx], budgets)) {
              hit = true;
              break;
            }
          if (!hit) {
            v = Verdict::False;
            detail = "Phi image misses the Γ-universe";
          }
          for (size_t bidx = a + 1; bidx < images.size() && v == Verdict::True; ++bidx)
            if (is_isomorphic(images[a], images[bidx], budgets)) {
              v = Verdict::False;
              detail = "Phi not injective on the perpendicular class";
            }
        }
      }
    }
    push("hom/tensor restrict to inverse equivalences", v, detail);
  }

  // (5) the two hom routes agree on every perpendicular member.
  {
    Verdict v = Verdict::True;
    std::string detail;
    for (int idx : r.perp_indices) {
      const Module& x = u_lambda.modules[idx];
      Module a = phi(ctx, x);
      Module b = phi_via_total(ctx, x);
      if (!is_isomorphic(a, b, budgets)) {
        v = Verdict::False;
        detail = "hom routes disagree on " + x.name();
        break;
      }
    }
    push("blockwise and total hom computations agree", v, detail);
  }

  r.overall = Verdict::True;
  for (const auto& item : r.items) {
    if (item.verdict == Verdict::False) {
      r.overall = Verdict::False;
      break;
    }
    if (item.verdict == Verdict::Undecided) r.overall = Verdict::Undecided;
  }
  return r;
}

GldimTransferReport gldim_transfer_check(const TransportContext& ctx, int n, const Universe& u_gamma,
                                         int cutoff, const Budgets& budgets) {
  GldimTransferReport r;
  r.n = n;
  r.gldim_ambient = gldim(ctx.lambda(), ctx.ambient(), cutoff,
                          ctx.ambient().is_relative() ? ctx.ambient().projective_class() : std::vector<Module>{});
  r.gldim_gamma = gldim(ctx.gamma(), ExactStructure::abelian(ctx.gamma()), cutoff);

  // Resolving depth of the image class: smallest k with Omega^k landing in
  // the Tor-perpendicular class, maximized over the Γ-universe.
  ExactStructure gamma_ab = ExactStructure::abelian(ctx.gamma());
  int depth = 0;
  bool undecided = false;
  for (const auto& y : u_gamma.modules) {
    Resolution res = resolve(y, gamma_ab, cutoff);
    int k = 0;
    bool found = false;
    Module omega = y;
    for (k = 0; k <= cutoff; ++k) {
      if (k > 0) {
        if (static_cast<size_t>(k - 1) < res.syzygies.size())
          omega = res.syzygies[static_cast<size_t>(k - 1)];
        else {
          omega = Module::zero(ctx.gamma());
        }
      }
      Verdict v = omega.dim() == 0 ? Verdict::True : in_tor_perp(ctx, omega, cutoff);
      if (v == Verdict::True) {
        found = true;
        break;
      }
      if (v == Verdict::Undecided) {
        undecided = true;
        break;
      }
    }
    if (!found) undecided = true;
    depth = std::max(depth, k);
    if (undecided) break;
  }
  r.resolving_depth = undecided ? PdimValue{PdimValue::Kind::Undecided, 0} : PdimValue{PdimValue::Kind::Finite, depth};

  auto le_plus = [](const PdimValue& a, const PdimValue& b, int c) -> Verdict {
    if (a.kind == PdimValue::Kind::Undecided || b.kind == PdimValue::Kind::Undecided) return Verdict::Undecided;
    if (b.kind == PdimValue::Kind::Infinite) return Verdict::True;  // anything <= infinity
    if (a.kind == PdimValue::Kind::Infinite) return Verdict::False;
    return a.n <= b.n + c ? Verdict::True : Verdict::False;
  };
  r.ambient_le_gamma_plus_n = le_plus(r.gldim_ambient, r.gldim_gamma, n);
  if (r.resolving_depth.kind == PdimValue::Kind::Finite)
    r.gamma_le_ambient_plus_m = le_plus(r.gldim_gamma, r.gldim_ambient, r.resolving_depth.n);
  else
    r.gamma_le_ambient_plus_m = Verdict::Undecided;
  (void)budgets;
  return r;
}

}  // namespace tiltlab
