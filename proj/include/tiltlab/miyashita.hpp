#pragma once

#include "tiltlab/tilting.hpp"

namespace tiltlab {

struct CheckItem {
  std::string label;
  Verdict verdict = Verdict::Undecided;
  std::string detail;
};

/// Object-level verification of the tilting-transport theorem over finite
/// universes on both sides: the transported spec tilts, the Tor-perpendicular
/// class resolves, hom/tensor restrict to inverse equivalences on the
/// perpendicular classes, and the two hom routes agree.
struct MiyashitaReport {
  Verdict overall = Verdict::Undecided;
  std::vector<CheckItem> items;
  std::vector<int> perp_indices;      // perpendicular members in the Λ-universe
  std::vector<int> tor_perp_indices;  // Tor-perpendicular members in the Γ-universe
};

MiyashitaReport verify_miyashita(const TransportContext& ctx, int n, const Universe& u_lambda,
                                 const Universe& u_gamma, int cutoff = 20, const Budgets& budgets = {});

struct GldimTransferReport {
  PdimValue gldim_ambient;
  PdimValue gldim_gamma;
  int n = 0;
  PdimValue resolving_depth;  // measured depth m of the image class over the Γ-universe
  Verdict ambient_le_gamma_plus_n = Verdict::Undecided;
  Verdict gamma_le_ambient_plus_m = Verdict::Undecided;
};

GldimTransferReport gldim_transfer_check(const TransportContext& ctx, int n, const Universe& u_gamma,
                                         int cutoff = 20, const Budgets& budgets = {});

/// Is the Γ-module in the Tor-perpendicular class of the transported spec?
Verdict in_tor_perp(const TransportContext& ctx, const Module& y, int cutoff = 20);

}  // namespace tiltlab
