#include "tiltlab/transport.hpp"

namespace tiltlab {

namespace {

// Hom(T_i, T_i) basis rearranged so the identity is the first vector.
std::vector<ModuleMap> basis_with_identity(const Module& t) {
  auto homs = hom_space(t, t);
  Mat id = Mat::identity(t.dim(), t.algebra()->p());
  std::vector<ModuleMap> out;
  out.emplace_back(t, t, id);
  Mat seen(t.dim() * t.dim(), 0, t.algebra()->p());
  auto flat = [&](const Mat& m) {
    Mat v(t.dim() * t.dim(), 1, m.mod());
    for (int i = 0; i < t.dim(); ++i)
      for (int j = 0; j < t.dim(); ++j) v.set(i * t.dim() + j, 0, m.at(i, j));
    return v;
  };
  seen = seen.hcat(flat(id));
  for (const auto& h : homs) {
    Mat v = flat(h.matrix());
    if (!spans(seen, v)) {
      seen = seen.hcat(v);
      out.push_back(h);
    }
  }
  if (out.size() != homs.size())
    throw std::logic_error("basis_with_identity: identity not in the endomorphism space");
  return out;
}

struct GammaData {
  std::vector<ModuleMap> maps;       // basis elements as maps T_a -> T_b
  std::vector<int> from, to;         // a, b per basis element
  std::vector<int> idem;             // indices of the identity maps
  std::vector<std::string> labels;
};

GammaData collect_blocks(const SubcatSpec& t) {
  GammaData g;
  const auto& su = t.summands();
  for (size_t a = 0; a < su.size(); ++a)
    for (size_t b = 0; b < su.size(); ++b) {
      std::vector<ModuleMap> basis =
          (a == b) ? basis_with_identity(su[a]) : hom_space(su[a], su[b]);
      for (size_t k = 0; k < basis.size(); ++k) {
        if (a == b && k == 0) {
          g.idem.push_back(static_cast<int>(g.maps.size()));
          g.labels.push_back("e" + std::to_string(a + 1));
        } else {
          g.labels.push_back("h" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + "_" +
                             std::to_string(k + (a == b ? 0 : 1)));
        }
        g.maps.push_back(basis[k]);
        g.from.push_back(static_cast<int>(a));
        g.to.push_back(static_cast<int>(b));
      }
    }
  return g;
}

}  // namespace

AlgebraPtr endo_algebra(const SubcatSpec& t) {
  if (t.empty()) throw std::invalid_argument("endo_algebra: empty subcategory");
  GammaData g = collect_blocks(t);
  const int d = static_cast<int>(g.maps.size());
  const unsigned p = t.summands()[0].algebra()->p();

  // Per-block hom bases for coordinate expansion.
  const auto& su = t.summands();
  std::vector<std::vector<std::vector<ModuleMap>>> block_basis(su.size(),
                                                               std::vector<std::vector<ModuleMap>>(su.size()));
  std::vector<std::vector<std::vector<int>>> block_index(su.size(),
                                                         std::vector<std::vector<int>>(su.size()));
  for (int i = 0; i < d; ++i) {
    block_basis[g.from[i]][g.to[i]].push_back(g.maps[i]);
    block_index[g.from[i]][g.to[i]].push_back(i);
  }

  // x * y := ȳ ∘ x̄ (reversed composition), defined when x's codomain block
  // matches y's domain block.
  std::vector<std::vector<std::vector<uint32_t>>> mult(
      d, std::vector<std::vector<uint32_t>>(d, std::vector<uint32_t>(d, 0)));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      if (g.to[x] != g.from[y]) continue;
      Mat comp = g.maps[y].matrix() * g.maps[x].matrix();  // T_{from[x]} -> T_{to[y]}
      auto coords = hom_coordinates(block_basis[g.from[x]][g.to[y]], comp);
      for (size_t k = 0; k < coords.size(); ++k)
        mult[x][y][block_index[g.from[x]][g.to[y]][k]] = coords[k];
    }

  return std::make_shared<BasedAlgebra>(p, g.labels, std::move(mult), g.idem, "End(" + t.name() + ")");
}

TransportContext::TransportContext(ExactStructure ambient, SubcatSpec t, const Budgets& budgets)
    : ambient_(std::move(ambient)), tilt_(std::move(t)) {
  (void)budgets;
  gamma_ = endo_algebra(tilt_);
  gamma_op_ = opposite(gamma_);
  GammaData g = collect_blocks(tilt_);
  basis_maps_ = std::move(g.maps);
  block_from_ = std::move(g.from);
  block_to_ = std::move(g.to);
  std::vector<Module> parts = tilt_.summands();
  t_total_ = direct_sum(parts).total;
  t_total_.rename(tilt_.name());
}

namespace {

struct Blocks {
  std::vector<std::vector<ModuleMap>> basis;  // per summand block
  std::vector<int> offset;
  int total = 0;
};

Blocks hom_blocks(const TransportContext& ctx, const Module& x, bool from_summand) {
  Blocks b;
  const auto& su = ctx.tilt().summands();
  b.basis.resize(su.size());
  b.offset.resize(su.size());
  for (size_t i = 0; i < su.size(); ++i) {
    b.offset[i] = b.total;
    b.basis[i] = from_summand ? hom_space(su[i], x) : hom_space(x, su[i]);
    b.total += static_cast<int>(b.basis[i].size());
  }
  return b;
}

}  // namespace

Module phi(const TransportContext& ctx, const Module& x) {
  Blocks b = hom_blocks(ctx, x, true);
  const unsigned p = ctx.lambda()->p();
  const int d = ctx.gamma()->dim();
  std::vector<Mat> act(d, Mat(b.total, b.total, p));
  for (int g = 0; g < d; ++g) {
    int a = ctx.block_of(g), to = ctx.block_to(g);
    // gamma: T_a -> T_to acts Hom(T_to, X) -> Hom(T_a, X), f ↦ f ∘ gamma.
    for (size_t k = 0; k < b.basis[to].size(); ++k) {
      Mat comp = b.basis[to][k].matrix() * ctx.basis_map(g).matrix();
      auto coords = hom_coordinates(b.basis[a], comp);
      for (size_t r = 0; r < coords.size(); ++r)
        act[g].set(b.offset[a] + static_cast<int>(r), b.offset[to] + static_cast<int>(k), coords[r]);
    }
  }
  Module out(ctx.gamma(), std::move(act), "Phi(" + x.name() + ")");
  return out;
}

Module phi_via_total(const TransportContext& ctx, const Module& x) {
  auto homs = hom_space(ctx.t_total(), x);
  const unsigned p = ctx.lambda()->p();
  const int d = ctx.gamma()->dim();
  const int n = static_cast<int>(homs.size());
  const auto& su = ctx.tilt().summands();
  std::vector<int> off(su.size(), 0);
  {
    int run = 0;
    for (size_t i = 0; i < su.size(); ++i) {
      off[i] = run;
      run += su[i].dim();
    }
  }
  std::vector<Mat> act(d, Mat(n, n, p));
  for (int g = 0; g < d; ++g) {
    int a = ctx.block_of(g), to = ctx.block_to(g);
    // f ↦ f ∘ incl_to ∘ gamma ∘ proj_a on the total module.
    Mat embed(ctx.t_total().dim(), ctx.t_total().dim(), p);
    const Mat& gm = ctx.basis_map(g).matrix();  // su[to].dim x su[a].dim
    for (int r = 0; r < gm.rows(); ++r)
      for (int c = 0; c < gm.cols(); ++c) embed.set(off[to] + r, off[a] + c, gm.at(r, c));
    for (int k = 0; k < n; ++k) {
      Mat comp = homs[k].matrix() * embed;
      auto coords = hom_coordinates(homs, comp);
      for (int r = 0; r < n; ++r) act[g].set(r, k, coords[r]);
    }
  }
  return Module(ctx.gamma(), std::move(act), "Phi_total(" + x.name() + ")");
}

Module psi(const TransportContext& ctx, const Module& p_mod, int cutoff) {
  PdimValue pv = pdim(p_mod, ctx.ambient(), cutoff);
  if (!(pv.kind == PdimValue::Kind::Finite && pv.n == 0))
    throw std::invalid_argument("psi: input is not projective for the ambient structure");
  Blocks b = hom_blocks(ctx, p_mod, false);
  const unsigned p = ctx.lambda()->p();
  const int d = ctx.gamma_op()->dim();
  std::vector<Mat> act(d, Mat(b.total, b.total, p));
  for (int g = 0; g < d; ++g) {
    int a = ctx.block_of(g), to = ctx.block_to(g);
    // over Γ^op: gamma: T_a -> T_to acts Hom(P, T_a) -> Hom(P, T_to) by
    // postcomposition.
    for (size_t k = 0; k < b.basis[a].size(); ++k) {
      Mat comp = ctx.basis_map(g).matrix() * b.basis[a][k].matrix();
      auto coords = hom_coordinates(b.basis[to], comp);
      for (size_t r = 0; r < coords.size(); ++r)
        act[g].set(b.offset[to] + static_cast<int>(r), b.offset[a] + static_cast<int>(k), coords[r]);
    }
  }
  return Module(ctx.gamma_op(), std::move(act), "Psi(" + p_mod.name() + ")");
}

namespace {

struct TensorData {
  int dim = 0;
  Mat proj, sect;  // ambient (t ⊗ y) <-> quotient coordinates
};

// T_0 ⊗_Γ Y with the right Γ-action on T_0 given by evaluation.
TensorData build_tensor(const TransportContext& ctx, const Module& y) {
  const unsigned p = ctx.lambda()->p();
  const Module& t0 = ctx.t_total();
  const int nt = t0.dim(), ny = y.dim(), amb = nt * ny;
  const auto& su = ctx.tilt().summands();
  std::vector<int> off(su.size(), 0);
  {
    int run = 0;
    for (size_t i = 0; i < su.size(); ++i) {
      off[i] = run;
      run += su[i].dim();
    }
  }
  Mat rels(amb, 0, p);
  for (int g = 0; g < ctx.gamma()->dim(); ++g) {
    int a = ctx.block_of(g), to = ctx.block_to(g);
    const Mat& gm = ctx.basis_map(g).matrix();
    Mat rg(nt, nt, p);  // right action t · gamma = ḡ(t), a-block -> to-block
    for (int r = 0; r < gm.rows(); ++r)
      for (int c = 0; c < gm.cols(); ++c) rg.set(off[to] + r, off[a] + c, gm.at(r, c));
    const Mat& ay = y.action(g);
    for (int t = 0; t < nt; ++t)
      for (int yy = 0; yy < ny; ++yy) {
        Mat v(amb, 1, p);
        for (int u = 0; u < nt; ++u)
          if (rg.at(u, t)) v.set(u * ny + yy, 0, rg.at(u, t));
        for (int w = 0; w < ny; ++w)
          if (ay.at(w, yy))
            v.set(t * ny + w, 0, static_cast<long long>(v.at(t * ny + w, 0)) - static_cast<long long>(ay.at(w, yy)));
        if (!v.is_zero()) rels = rels.hcat(v);
      }
  }
  Mat w = column_space_basis(rels);
  Mat full = extend_to_basis(w, amb, p);
  auto inv = inverse(full);
  TensorData td;
  td.dim = amb - w.cols();
  td.proj = inv->row_range(w.cols(), amb);
  td.sect = full.col_range(w.cols(), amb);
  return td;
}

}  // namespace

Module phi_prime(const TransportContext& ctx, const Module& y) {
  if (y.algebra().get() != ctx.gamma().get()) throw std::invalid_argument("phi_prime: module not over Gamma");
  const unsigned p = ctx.lambda()->p();
  const Module& t0 = ctx.t_total();
  const int ny = y.dim();
  TensorData td = build_tensor(ctx, y);
  std::vector<Mat> act;
  act.reserve(ctx.lambda()->dim());
  for (int b = 0; b < ctx.lambda()->dim(); ++b) {
    Mat amb(t0.dim() * ny, t0.dim() * ny, p);
    const Mat& tb = t0.action(b);
    for (int i = 0; i < t0.dim(); ++i)
      for (int j = 0; j < t0.dim(); ++j) {
        unsigned c = tb.at(i, j);
        if (!c) continue;
        for (int yy = 0; yy < ny; ++yy) amb.set(i * ny + yy, j * ny + yy, c);
      }
    act.push_back(td.proj * amb * td.sect);
  }
  return Module(ctx.lambda(), std::move(act), "Phi'(" + y.name() + ")");
}

ModuleMap counit(const TransportContext& ctx, const Module& x, const Module& phi_x,
                 const Module& phi_prime_phi_x) {
  // Evaluation on ambient coordinates t ⊗ f ↦ f(t), then restricted along the
  // tensor section.
  const unsigned p = ctx.lambda()->p();
  const Module& t0 = ctx.t_total();
  Blocks b = hom_blocks(ctx, x, true);
  if (b.total != phi_x.dim()) throw std::invalid_argument("counit: phi module shape mismatch");
  const auto& su = ctx.tilt().summands();
  std::vector<int> off(su.size(), 0);
  {
    int run = 0;
    for (size_t i = 0; i < su.size(); ++i) {
      off[i] = run;
      run += su[i].dim();
    }
  }
  Mat ev(x.dim(), t0.dim() * phi_x.dim(), p);
  for (size_t i = 0; i < su.size(); ++i)
    for (size_t k = 0; k < b.basis[i].size(); ++k) {
      const Mat& f = b.basis[i][k].matrix();  // x.dim x su[i].dim
      int fidx = b.offset[i] + static_cast<int>(k);
      for (int t = 0; t < su[i].dim(); ++t)
        for (int r = 0; r < x.dim(); ++r)
          if (f.at(r, t)) ev.set(r, (off[i] + t) * phi_x.dim() + fidx, f.at(r, t));
    }
  TensorData td = build_tensor(ctx, phi_x);
  if (td.dim != phi_prime_phi_x.dim()) throw std::invalid_argument("counit: tensor shape mismatch");
  return ModuleMap(phi_prime_phi_x, x, ev * td.sect);
}

ModuleMap unit(const TransportContext& ctx, const Module& y, const Module& phi_prime_y,
               const Module& phi_phi_prime_y) {
  const unsigned p = ctx.lambda()->p();
  const Module& t0 = ctx.t_total();
  const auto& su = ctx.tilt().summands();
  std::vector<int> off(su.size(), 0);
  {
    int run = 0;
    for (size_t i = 0; i < su.size(); ++i) {
      off[i] = run;
      run += su[i].dim();
    }
  }
  TensorData td = build_tensor(ctx, y);
  if (td.dim != phi_prime_y.dim()) throw std::invalid_argument("unit: tensor shape mismatch");
  Blocks b = hom_blocks(ctx, phi_prime_y, true);
  if (b.total != phi_phi_prime_y.dim()) throw std::invalid_argument("unit: phi shape mismatch");
  Mat mat(b.total, y.dim(), p);
  for (int yy = 0; yy < y.dim(); ++yy) {
    for (size_t i = 0; i < su.size(); ++i) {
      // component i: T_i -> Phi'(Y), t ↦ [incl_i(t) ⊗ e_y]
      Mat comp(phi_prime_y.dim(), su[i].dim(), p);
      for (int t = 0; t < su[i].dim(); ++t) {
        Mat amb(t0.dim() * y.dim(), 1, p);
        amb.set((off[i] + t) * y.dim() + yy, 0, 1);
        Mat q = td.proj * amb;
        for (int r = 0; r < q.rows(); ++r) comp.set(r, t, q.at(r, 0));
      }
      auto coords = hom_coordinates(b.basis[i], comp);
      for (size_t k = 0; k < coords.size(); ++k)
        mat.set(b.offset[i] + static_cast<int>(k), yy, coords[k]);
    }
  }
  return ModuleMap(y, phi_phi_prime_y, mat);
}

}  // namespace tiltlab
