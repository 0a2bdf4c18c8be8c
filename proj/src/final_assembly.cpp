#include "groupshift/final_assembly.hpp"

#include <map>
#include <thread>

#include "groupshift/errors.hpp"

namespace groupshift {

FactorContext make_context(GroupPtr group, SetOraclePtr x, ActionOraclePtr t, int kappa,
                           std::shared_ptr<const SubshiftCodec> codec) {
  FactorContext ctx;
  const std::size_t layers = group->generators().size();
  ctx.group = std::move(group);
  ctx.sft = make_top_sft(layers);
  ctx.block_map.resize(ctx.sft.alphabet.size());
  for (std::size_t i = 0; i < ctx.block_map.size(); ++i) ctx.block_map[i] = static_cast<int>(i);
  ctx.x = std::move(x);
  ctx.t = std::move(t);
  ctx.kappa = kappa;
  ctx.codec = std::move(codec);
  return ctx;
}

FactorContext make_rho_context(std::shared_ptr<const SubshiftCodec> codec, std::vector<PatternCoding> forbidden) {
  auto x = rho_set_oracle(codec, forbidden);
  auto t = rho_action_oracle(codec, std::move(forbidden));
  return make_context(codec->group_ptr(), std::move(x), std::move(t), codec->kappa(), codec);
}

void FinalPatch::validate() const {
  if (!g_ball || !h1_ball || !h2_ball) raise(ErrorKind::Schema, "final patch needs three balls");
  const std::size_t slices = g_ball->size();
  if (omega1.size() != slices || omega2.size() != slices || y.size() != slices) {
    raise(ErrorKind::Schema, "final patch must have one slice per G-ball element");
  }
  for (std::size_t g = 0; g < slices; ++g) {
    if (omega1[g].size() != cells() || omega2[g].size() != cells() || y[g].size() != cells()) {
      raise(ErrorKind::Schema, "final patch slice is not total on the H-balls");
    }
    for (std::size_t c = 0; c < cells(); ++c) {
      const auto& a = omega1[g][c];
      const auto& b = omega2[g][c];
      if (!h1_ball->generators().contains(a.left) || !h1_ball->generators().contains(a.right) ||
          !h2_ball->generators().contains(b.left) || !h2_ball->generators().contains(b.right)) {
        raise(ErrorKind::UnknownSymbol, "grid label outside the H generator sets");
      }
    }
  }
}

void FinalReport::merge(const FinalReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  satisfied += other.satisfied;
  unchecked += other.unchecked;
}

namespace {

// Symbols along the first grid direction from (h1, h2), using the labels
// stored at each visited cell.
std::optional<std::vector<int>> row_window(const FinalPatch& p, int g, int h1, int h2, std::int64_t len) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(len));
  const auto gs = static_cast<std::size_t>(g);
  for (std::int64_t i = 0; i < len; ++i) {
    const std::size_t c = p.cell(h1, h2);
    out.push_back(p.y[gs][c]);
    if (i + 1 == len) break;
    h1 = p.h1_ball->neighbor(h1, p.omega1[gs][c].right);
    if (h1 < 0) return std::nullopt;
  }
  return out;
}

std::vector<int> map_blocks(const FactorContext& ctx, std::vector<int> symbols) {
  for (int& s : symbols) {
    if (s < 0 || static_cast<std::size_t>(s) >= ctx.block_map.size()) {
      raise(ErrorKind::AlphabetMismatch, "symbol index " + std::to_string(s));
    }
    s = ctx.block_map[static_cast<std::size_t>(s)];
  }
  return symbols;
}

FinalReport check_slice_F1(const FinalPatch& p, const FactorContext& ctx, int g,
                           std::map<std::vector<int>, TopVerdict>& cache) {
  FinalReport out;
  const auto gs = static_cast<std::size_t>(g);
  const auto& b1 = *p.h1_ball;
  const auto& b2 = *p.h2_ball;
  const auto& s1 = b1.generators();
  const auto& s2 = b2.generators();
  const int n1 = static_cast<int>(b1.size());
  const int n2 = static_cast<int>(b2.size());
  auto bad = [&](int h1, int h2, std::string rule) { out.violations.push_back({"F1", g, h1, h2, std::move(rule)}); };
  auto tally = [&](bool ok, int h1, int h2, const char* rule) {
    if (ok) {
      ++out.satisfied;
    } else {
      bad(h1, h2, rule);
    }
  };

  for (int h1 = 0; h1 < n1; ++h1) {
    for (int h2 = 0; h2 < n2; ++h2) {
      const std::size_t c = p.cell(h1, h2);
      const GridLabel& l1 = p.omega1[gs][c];
      const GridLabel& l2 = p.omega2[gs][c];
      // Grid rules of the first factor.
      for (char side : {'R', 'L'}) {
        const Gen s = side == 'R' ? l1.right : l1.left;
        const int t = b1.neighbor(h1, s);
        if (t < 0) {
          ++out.unchecked;
          continue;
        }
        const auto& m = p.omega1[gs][p.cell(t, h2)];
        tally((side == 'R' ? m.left : m.right) == s1.inverse(s), h1, h2, side == 'R' ? "grid1-right" : "grid1-left");
      }
      for (char side : {'R', 'L'}) {
        const Gen s = side == 'R' ? l2.right : l2.left;
        const int t = b2.neighbor(h2, s);
        if (t < 0) {
          ++out.unchecked;
          continue;
        }
        const auto& m = p.omega2[gs][p.cell(h1, t)];
        tally((side == 'R' ? m.left : m.right) == s2.inverse(s), h1, h2, side == 'R' ? "grid2-right" : "grid2-left");
      }
      // Each factor's label ignores the other coordinate.
      for (Gen s = 0; s < static_cast<Gen>(s2.size()); ++s) {
        if (s == s2.identity()) continue;
        const int t = b2.neighbor(h2, s);
        if (t < 0) {
          ++out.unchecked;
          continue;
        }
        tally(p.omega1[gs][p.cell(h1, t)] == l1, h1, h2, "grid1-constant");
      }
      for (Gen s = 0; s < static_cast<Gen>(s1.size()); ++s) {
        if (s == s1.identity()) continue;
        const int t = b1.neighbor(h1, s);
        if (t < 0) {
          ++out.unchecked;
          continue;
        }
        tally(p.omega2[gs][p.cell(t, h2)] == l2, h1, h2, "grid2-constant");
      }
      // Dominoes of Y along the grid.
      const int a = p.y[gs][c];
      if (!ctx.sft.alphabet.contains(a)) raise(ErrorKind::AlphabetMismatch, "symbol index " + std::to_string(a));
      const int t1 = b1.neighbor(h1, l1.right);
      if (t1 < 0) {
        ++out.unchecked;
      } else {
        tally(ctx.sft.h(a, p.y[gs][p.cell(t1, h2)]), h1, h2, "y-horizontal");
      }
      const int t2 = b2.neighbor(h2, l2.right);
      if (t2 < 0) {
        ++out.unchecked;
      } else {
        tally(ctx.sft.v(a, p.y[gs][p.cell(h1, t2)]), h1, h2, "y-vertical");
      }
    }
  }

  // Top-layer windows at every depth that fits in the first H-ball.
  for (int n = 0; pow3(n + 1) <= static_cast<std::int64_t>(n1); ++n) {
    const std::int64_t len = pow3(n + 1);
    for (int h1 = 0; h1 < n1; ++h1) {
      for (int h2 = 0; h2 < n2; ++h2) {
        auto window = row_window(p, g, h1, h2, len);
        if (!window) {
          ++out.unchecked;
          continue;
        }
        auto symbols = map_blocks(ctx, std::move(*window));
        auto it = cache.find(symbols);
        if (it == cache.end()) {
          const auto layered = layered_from_symbols(symbols, ctx.layers());
          it = cache.emplace(symbols, top1d_forbidden(layered, *ctx.x, *ctx.t, ctx.budget)).first;
        }
        tally(it->second == TopVerdict::NotCertified, h1, h2,
              n == 0 ? "top-depth-0" : (n == 1 ? "top-depth-1" : "top-depth-n"));
      }
    }
  }
  return out;
}

}  // namespace

FinalReport check_F1(const FinalPatch& patch, const FactorContext& ctx, int threads) {
  patch.validate();
  const int slices = static_cast<int>(patch.g_ball->size());
  std::vector<FinalReport> parts(static_cast<std::size_t>(slices));
  const int workers = std::max(1, std::min(threads, slices));
  auto work = [&](int w) {
    std::map<std::vector<int>, TopVerdict> cache;
    for (int g = w; g < slices; g += workers) parts[static_cast<std::size_t>(g)] = check_slice_F1(patch, ctx, g, cache);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  FinalReport out;
  for (const auto& part : parts) out.merge(part);
  return out;
}

FinalReport check_F2(const FinalPatch& patch) {
  patch.validate();
  FinalReport out;
  const auto& gb = *patch.g_ball;
  const auto& sg = gb.generators();
  for (int g = 0; g < static_cast<int>(gb.size()); ++g) {
    for (Gen s = 0; s < static_cast<Gen>(sg.size()); ++s) {
      if (s == sg.identity()) continue;
      const int t = gb.neighbor(g, s);
      if (t < 0) {
        out.unchecked += patch.cells();
        continue;
      }
      for (int h1 = 0; h1 < static_cast<int>(patch.h1_ball->size()); ++h1) {
        for (int h2 = 0; h2 < static_cast<int>(patch.h2_ball->size()); ++h2) {
          const std::size_t c = patch.cell(h1, h2);
          const auto gs = static_cast<std::size_t>(g);
          const auto ts = static_cast<std::size_t>(t);
          if (patch.omega1[gs][c] == patch.omega1[ts][c] && patch.omega2[gs][c] == patch.omega2[ts][c]) {
            ++out.satisfied;
          } else {
            out.violations.push_back({"F2", g, h1, h2, "slice-" + sg.name(s)});
          }
        }
      }
    }
  }
  return out;
}

FinalReport check_F3(const FinalPatch& patch, const FactorContext& ctx) {
  patch.validate();
  FinalReport out;
  const auto& gb = *patch.g_ball;
  const auto& sg = gb.generators();
  const std::size_t layers = ctx.layers();
  const auto id = static_cast<std::size_t>(sg.identity());
  auto top = [&](int sym) {
    if (sym < 0 || static_cast<std::size_t>(sym) >= ctx.block_map.size()) {
      raise(ErrorKind::AlphabetMismatch, "symbol index " + std::to_string(sym));
    }
    return top_symbol_layers(ctx.block_map[static_cast<std::size_t>(sym)], layers);
  };
  for (int g = 0; g < static_cast<int>(gb.size()); ++g) {
    for (Gen s = 0; s < static_cast<Gen>(sg.size()); ++s) {
      const int t = gb.neighbor(g, sg.inverse(s));
      if (t < 0) {
        out.unchecked += patch.cells();
        continue;
      }
      for (int h1 = 0; h1 < static_cast<int>(patch.h1_ball->size()); ++h1) {
        for (int h2 = 0; h2 < static_cast<int>(patch.h2_ball->size()); ++h2) {
          const std::size_t c = patch.cell(h1, h2);
          const auto here = top(patch.y[static_cast<std::size_t>(g)][c]);
          const auto there = top(patch.y[static_cast<std::size_t>(t)][c]);
          if (here[static_cast<std::size_t>(s)] == there[id]) {
            ++out.satisfied;
          } else {
            out.violations.push_back({"F3", g, h1, h2, "layer-" + sg.name(s)});
          }
        }
      }
    }
  }
  return out;
}

std::optional<std::string> decode_at(const FinalPatch& patch, const FactorContext& ctx, int g, int h1, int h2,
                                     int n) {
  auto window = row_window(patch, g, h1, h2, pow3(n + 1));
  if (!window) return std::nullopt;
  const auto layered = layered_from_symbols(map_blocks(ctx, std::move(*window)), ctx.layers());
  return decode_procedure(layered.layers[static_cast<std::size_t>(ctx.group->generators().identity())]);
}

FinalReport check_F4(const FinalPatch& patch, const FactorContext& ctx) {
  patch.validate();
  FinalReport out;
  if (ctx.kappa <= 0) return out;
  const std::int64_t need = pow3(ctx.kappa) + 1;
  if (patch.h1_ball->radius() < need || patch.h2_ball->radius() < need) {
    raise(ErrorKind::BallTooSmall, "H-balls need radius >= " + std::to_string(need));
  }
  const auto& s1 = patch.h1_ball->generators();
  const auto& s2 = patch.h2_ball->generators();
  for (int g = 0; g < static_cast<int>(patch.g_ball->size()); ++g) {
    for (int m = 0; m < ctx.kappa; ++m) {
      auto base = decode_at(patch, ctx, g, 0, 0, m);
      if (!base) {
        ++out.unchecked;
        continue;
      }
      for (Gen a = 0; a < static_cast<Gen>(s1.size()); ++a) {
        for (Gen b = 0; b < static_cast<Gen>(s2.size()); ++b) {
          if (a == s1.identity() && b == s2.identity()) continue;
          const int h1 = patch.h1_ball->neighbor(0, a);
          const int h2 = patch.h2_ball->neighbor(0, b);
          auto other = h1 < 0 || h2 < 0 ? std::nullopt : decode_at(patch, ctx, g, h1, h2, m);
          if (!other) {
            ++out.unchecked;
          } else if ((*other)[static_cast<std::size_t>(m)] == (*base)[static_cast<std::size_t>(m)]) {
            ++out.satisfied;
          } else {
            out.violations.push_back({"F4", g, h1, h2, "symbol-" + std::to_string(m)});
          }
        }
      }
    }
  }
  return out;
}

ProductGridPatch slice_grid(const FinalPatch& patch, int g) {
  const auto gs = static_cast<std::size_t>(g);
  ProductGridPatch out{{patch.h1_ball, {}}, {patch.h2_ball, {}}};
  for (int h1 = 0; h1 < static_cast<int>(patch.h1_ball->size()); ++h1) {
    out.first.labels.push_back(patch.omega1[gs][patch.cell(h1, 0)]);
  }
  for (int h2 = 0; h2 < static_cast<int>(patch.h2_ball->size()); ++h2) {
    out.second.labels.push_back(patch.omega2[gs][patch.cell(0, h2)]);
  }
  return out;
}

std::optional<std::string> factor_phi(const FinalPatch& patch, const FactorContext& ctx, int n) {
  return decode_at(patch, ctx, 0, 0, 0, n);
}

FinalPatch witness_construct(const FactorContext& ctx, BallPtr g_ball, const WitnessPrefixes& prefixes,
                             const ProductGridPatch& omega_bar) {
  omega_bar.first.validate();
  omega_bar.second.validate();
  auto domain = seed_domain(omega_bar);
  if (!domain) raise(ErrorKind::SeedFailure, "omega has a cycle");
  const auto& gens = g_ball->generators();
  const std::size_t layers = gens.size();

  // Preimage of each top-layer symbol under the block map.
  std::map<int, int> preimage;
  for (std::size_t i = ctx.block_map.size(); i-- > 0;) preimage[ctx.block_map[i]] = static_cast<int>(i);

  FinalPatch out;
  out.g_ball = g_ball;
  out.h1_ball = omega_bar.first.ball;
  out.h2_ball = omega_bar.second.ball;
  std::vector<GridLabel> w1(out.cells());
  std::vector<GridLabel> w2(out.cells());
  for (int h1 = 0; h1 < static_cast<int>(out.h1_ball->size()); ++h1) {
    for (int h2 = 0; h2 < static_cast<int>(out.h2_ball->size()); ++h2) {
      w1[out.cell(h1, h2)] = omega_bar.first.at(h1);
      w2[out.cell(h1, h2)] = omega_bar.second.at(h2);
    }
  }
  for (int g = 0; g < static_cast<int>(g_ball->size()); ++g) {
    const Word g_inv = gens.inverse(g_ball->element(g));
    std::vector<std::string> layer_prefix;
    for (Gen s = 0; s < static_cast<Gen>(layers); ++s) {
      const Word k = concat(Word{s}, g_inv);
      auto idx = prefixes.ball->find(k);
      if (!idx) raise(ErrorKind::OutOfBall, "no prefix for '" + gens.format(k) + "'");
      layer_prefix.push_back(prefixes.prefixes[static_cast<std::size_t>(*idx)]);
    }
    const auto columns = psi_tilde(layer_prefix, domain->x0, domain->width);
    Patch2D c(domain->x0, domain->y0, domain->width, domain->height);
    for (int x = 0; x < domain->width; ++x) {
      std::vector<TSym> col;
      for (const auto& layer : columns.layers) col.push_back(layer[static_cast<std::size_t>(x)]);
      auto it = preimage.find(top_symbol_index(col));
      if (it == preimage.end()) raise(ErrorKind::SeedFailure, "top symbol has no preimage in Y");
      for (int r = 0; r < domain->height; ++r) c.at(x, r) = it->second;
    }
    std::string reason;
    auto y = seed_grid_from_config(omega_bar, c, &reason);
    if (!y) raise(ErrorKind::SeedFailure, reason);
    out.omega1.push_back(w1);
    out.omega2.push_back(w2);
    out.y.push_back(std::move(*y));
  }
  return out;
}

Projection hat_phi_project(const FinalPatch& patch, const FactorContext& ctx) {
  patch.validate();
  Projection out(patch.g_ball->size(), std::vector<std::optional<int>>(patch.cells()));
  if (ctx.kappa <= 0) return out;
  for (int g = 0; g < static_cast<int>(patch.g_ball->size()); ++g) {
    for (int h1 = 0; h1 < static_cast<int>(patch.h1_ball->size()); ++h1) {
      for (int h2 = 0; h2 < static_cast<int>(patch.h2_ball->size()); ++h2) {
        auto bits = decode_at(patch, ctx, g, h1, h2, ctx.kappa - 1);
        if (!bits) continue;
        std::optional<int> value;
        if (ctx.codec) {
          value = ctx.codec->upsilon_inverse(*bits);
        } else {
          int v = 0;
          for (char ch : *bits) v = v * 2 + (ch - '0');
          value = v;
        }
        out[static_cast<std::size_t>(g)][patch.cell(h1, h2)] = value;
      }
    }
  }
  return out;
}

bool projective_check(const Projection& projection, std::span<const int> original) {
  if (projection.size() < original.size()) return false;
  for (std::size_t g = 0; g < original.size(); ++g) {
    if (projection[g].empty() || !projection[g][0] || *projection[g][0] != original[g]) return false;
  }
  return true;
}

WitnessPrefixes rho_witness_prefixes(const SubshiftCodec& codec, BallPtr ball, const CayleyBall& y_ball,
                                     std::span<const int> y, std::size_t length) {
  WitnessPrefixes out{ball, {}};
  const auto& gens = ball->generators();
  const auto k = static_cast<std::size_t>(codec.kappa());
  const std::size_t blocks = (length + k - 1) / k;
  for (int e = 0; e < static_cast<int>(ball->size()); ++e) {
    const Word inv = gens.inverse(ball->element(e));
    std::string bits;
    for (std::size_t n = 0; n < blocks; ++n) {
      const Word where = concat(inv, codec.enumeration(n));
      auto idx = y_ball.find(where);
      if (!idx || y[static_cast<std::size_t>(*idx)] == kBlank) {
        raise(ErrorKind::IncompleteSupport, "configuration undefined at '" + gens.format(where) + "'");
      }
      bits += codec.upsilon(y[static_cast<std::size_t>(*idx)]);
    }
    out.prefixes.push_back(bits.substr(0, length));
  }
  return out;
}

}  // namespace groupshift
