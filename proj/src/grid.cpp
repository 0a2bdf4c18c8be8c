#include "groupshift/grid.hpp"

#include <algorithm>
#include <limits>

#include "groupshift/errors.hpp"

namespace groupshift {

void GridPatch::validate() const {
  if (!ball) raise(ErrorKind::Schema, "grid patch without a ball");
  if (labels.size() != ball->size()) {
    raise(ErrorKind::Schema, "grid labels must cover all " + std::to_string(ball->size()) + " ball elements");
  }
  const auto& gens = ball->generators();
  for (const auto& l : labels) {
    if (!gens.contains(l.left) || !gens.contains(l.right)) raise(ErrorKind::UnknownSymbol, "grid label generator");
  }
}

GridReport check_grid_local(const GridPatch& patch) {
  patch.validate();
  const auto& ball = *patch.ball;
  const auto& gens = ball.generators();
  GridReport out;
  for (int h = 0; h < static_cast<int>(ball.size()); ++h) {
    const auto& l = patch.at(h);
    for (char side : {'R', 'L'}) {
      const Gen s = side == 'R' ? l.right : l.left;
      const int t = ball.neighbor(h, s);
      if (t < 0) {
        out.unchecked.push_back({h, s, side});
        continue;
      }
      const Gen partner = side == 'R' ? patch.at(t).left : patch.at(t).right;
      if (partner == gens.inverse(s)) {
        ++out.satisfied;
      } else {
        out.violations.push_back({h, s, side});
      }
    }
  }
  return out;
}

std::optional<int> induced_step(const GridPatch& patch, int h, int dir) {
  const auto& l = patch.at(h);
  const int t = patch.ball->neighbor(h, dir > 0 ? l.right : l.left);
  if (t < 0) return std::nullopt;
  return t;
}

std::optional<int> induced_orbit(const GridPatch& patch, int h, std::int64_t z) {
  const int dir = z >= 0 ? 1 : -1;
  for (std::int64_t i = 0; i < (z >= 0 ? z : -z); ++i) {
    auto next = induced_step(patch, h, dir);
    if (!next) return std::nullopt;
    h = *next;
  }
  return h;
}

const char* to_string(OrbitTrace::Kind k) {
  switch (k) {
    case OrbitTrace::Kind::Path: return "Path";
    case OrbitTrace::Kind::Cycle: return "Cycle";
    case OrbitTrace::Kind::LeftBall: return "LeftBall";
  }
  return "?";
}

OrbitTrace orbit_trace(const GridPatch& patch, int h, std::size_t max_steps) {
  OrbitTrace out;
  std::vector<int> seen_at(patch.ball->size(), -1);
  out.path.push_back(h);
  seen_at[static_cast<std::size_t>(h)] = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto next = induced_step(patch, h, +1);
    if (!next) {
      out.kind = OrbitTrace::Kind::LeftBall;
      return out;
    }
    h = *next;
    if (seen_at[static_cast<std::size_t>(h)] >= 0) {
      out.kind = OrbitTrace::Kind::Cycle;
      out.cycle_length = out.path.size() - static_cast<std::size_t>(seen_at[static_cast<std::size_t>(h)]);
      return out;
    }
    seen_at[static_cast<std::size_t>(h)] = static_cast<int>(out.path.size());
    out.path.push_back(h);
  }
  out.kind = OrbitTrace::Kind::Path;
  return out;
}

namespace {

std::optional<Gen> generator_to(const CayleyBall& ball, int h, int target) {
  const auto& gens = ball.generators();
  for (Gen s = 0; s < static_cast<Gen>(gens.size()); ++s) {
    if (s != gens.identity() && ball.neighbor(h, s) == target) return s;
  }
  return std::nullopt;
}

std::optional<Gen> first_exit(const CayleyBall& ball, int h) {
  return generator_to(ball, h, -1);
}

}  // namespace

GridPatch from_translation_action(const PathCover& f) {
  const auto& ball = *f.ball;
  const auto& gens = ball.generators();
  if (f.succ.size() != ball.size() || f.pred.size() != ball.size()) {
    raise(ErrorKind::Schema, "translation maps must cover the ball");
  }
  GridPatch out{f.ball, std::vector<GridLabel>(ball.size())};
  for (int h = 0; h < static_cast<int>(ball.size()); ++h) {
    std::optional<Gen> right;
    std::optional<Gen> left;
    const int sh = f.succ[static_cast<std::size_t>(h)];
    const int ph = f.pred[static_cast<std::size_t>(h)];
    auto displacement = [&](int t) {
      auto s = generator_to(ball, h, t);
      if (!s) {
        raise(ErrorKind::DisplacementNotGenerator,
              "step from '" + ball.label(h) + "' to '" + ball.label(t) + "' is not a generator");
      }
      return *s;
    };
    if (sh >= 0) right = displacement(sh);
    if (ph >= 0) left = displacement(ph);
    auto fill = [&](std::optional<Gen>& side, const std::optional<Gen>& other) {
      if (side) return;
      if (other && ball.neighbor(h, gens.inverse(*other)) < 0) {
        side = gens.inverse(*other);
        return;
      }
      side = first_exit(ball, h);
      if (!side) {
        raise(ErrorKind::DisplacementNotGenerator,
              "'" + ball.label(h) + "' has an undefined side but no exit from the ball");
      }
    };
    fill(right, left);
    fill(left, right);
    out.labels[static_cast<std::size_t>(h)] = {*left, *right};
  }
  return out;
}

PathCover translation_cover(BallPtr ball, Gen s) {
  const auto& gens = ball->generators();
  if (!gens.contains(s)) raise(ErrorKind::UnknownSymbol, "generator index " + std::to_string(s));
  PathCover out{ball, std::vector<int>(ball->size(), -1), std::vector<int>(ball->size(), -1)};
  for (int h = 0; h < static_cast<int>(ball->size()); ++h) {
    out.succ[static_cast<std::size_t>(h)] = ball->neighbor(h, s);
    out.pred[static_cast<std::size_t>(h)] = ball->neighbor(h, gens.inverse(s));
  }
  return out;
}

PathCoverCheck verify_path_cover(const PathCover& cover, int margin) {
  const auto& ball = *cover.ball;
  const int n = static_cast<int>(ball.size());
  const int inner = ball.radius() - margin;
  PathCoverCheck out;
  auto note = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (out.problems.size() < 20) out.problems.push_back(msg);
  };
  if (cover.succ.size() != ball.size() || cover.pred.size() != ball.size()) {
    note(out.inverse, "maps do not cover the ball");
    return out;
  }
  for (int h = 0; h < n; ++h) {
    const int s = cover.succ[static_cast<std::size_t>(h)];
    const int p = cover.pred[static_cast<std::size_t>(h)];
    if (s >= n || p >= n) note(out.inverse, "index out of range at '" + ball.label(h) + "'");
    if (s >= 0 && s < n && cover.pred[static_cast<std::size_t>(s)] != h) {
      note(out.inverse, "pred(succ('" + ball.label(h) + "')) differs");
    }
    if (p >= 0 && p < n && cover.succ[static_cast<std::size_t>(p)] != h) {
      note(out.inverse, "succ(pred('" + ball.label(h) + "')) differs");
    }
    if (s >= 0 && s < n && (s == h || !generator_to(ball, h, s))) {
      note(out.adjacent, "succ of '" + ball.label(h) + "' is not a generator step");
    }
    const bool interior = ball.distance(h) <= inner;
    if (interior && (s < 0 || p < 0)) note(out.covers_interior, "'" + ball.label(h) + "' is not covered");
    const bool covered = s >= 0 || p >= 0;
    if (covered && (s < 0 || p < 0) && interior) {
      note(out.endpoints_outside, "path ends at interior element '" + ball.label(h) + "'");
    }
  }
  if (!out.inverse) return out;
  // Every chain followed forwards must terminate within n steps.
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 on stack, 2 done
  for (int h = 0; h < n; ++h) {
    if (state[static_cast<std::size_t>(h)]) continue;
    std::vector<int> chain;
    int cur = h;
    while (cur >= 0 && state[static_cast<std::size_t>(cur)] == 0) {
      state[static_cast<std::size_t>(cur)] = 1;
      chain.push_back(cur);
      cur = cover.succ[static_cast<std::size_t>(cur)];
    }
    if (cur >= 0 && state[static_cast<std::size_t>(cur)] == 1) {
      note(out.acyclic, "cycle through '" + ball.label(cur) + "'");
    }
    for (int v : chain) state[static_cast<std::size_t>(v)] = 2;
  }
  return out;
}

std::string path_cover_dot(const PathCover& cover) {
  const auto& ball = *cover.ball;
  std::string out = "digraph cover {\n";
  for (int h = 0; h < static_cast<int>(ball.size()); ++h) {
    out += "  n" + std::to_string(h) + " [label=\"" + (h == 0 ? std::string("1") : ball.label(h)) + "\"];\n";
  }
  for (int h = 0; h < static_cast<int>(ball.size()); ++h) {
    const int s = cover.succ[static_cast<std::size_t>(h)];
    if (s >= 0) out += "  n" + std::to_string(h) + " -> n" + std::to_string(s) + ";\n";
  }
  return out + "}\n";
}

ProductCheck grid_y_check(const ProductGridPatch& omega, std::span<const int> y, const NNSFT2D& sft) {
  const auto& b1 = *omega.first.ball;
  const auto& b2 = *omega.second.ball;
  if (y.size() != omega.size()) raise(ErrorKind::Schema, "configuration size differs from the product ball");
  for (int v : y) {
    if (!sft.alphabet.contains(v)) raise(ErrorKind::AlphabetMismatch, "symbol index " + std::to_string(v));
  }
  ProductCheck out;
  for (int h1 = 0; h1 < static_cast<int>(b1.size()); ++h1) {
    for (int h2 = 0; h2 < static_cast<int>(b2.size()); ++h2) {
      const std::size_t c = omega.cell(h1, h2);
      const int a = y[c];
      const int t1 = b1.neighbor(h1, omega.first.at(h1).right);
      if (t1 < 0) {
        ++out.unchecked;
      } else if (sft.h(a, y[omega.cell(t1, h2)])) {
        ++out.satisfied;
      } else {
        out.violations.push_back({c, 'h'});
      }
      const int t2 = b2.neighbor(h2, omega.second.at(h2).right);
      if (t2 < 0) {
        ++out.unchecked;
      } else if (sft.v(a, y[omega.cell(h1, t2)])) {
        ++out.satisfied;
      } else {
        out.violations.push_back({c, 'v'});
      }
    }
  }
  return out;
}

std::optional<Patch2D> read_grid(const ProductGridPatch& omega, std::span<const int> y, int h1, int h2,
                                 Rect window) {
  Patch2D out(window.x0, window.y0, window.width, window.height);
  std::vector<int> row_elems(static_cast<std::size_t>(window.height));
  for (int r = 0; r < window.height; ++r) {
    auto e = induced_orbit(omega.second, h2, window.y0 + r);
    if (!e) return std::nullopt;
    row_elems[static_cast<std::size_t>(r)] = *e;
  }
  for (int c = 0; c < window.width; ++c) {
    auto e = induced_orbit(omega.first, h1, window.x0 + c);
    if (!e) return std::nullopt;
    for (int r = 0; r < window.height; ++r) {
      out.at(c, r) = y[omega.cell(*e, row_elems[static_cast<std::size_t>(r)])];
    }
  }
  return out;
}

std::optional<Segments> grid_segments(const GridPatch& patch) {
  const int n = static_cast<int>(patch.ball->size());
  Segments seg;
  seg.id.assign(static_cast<std::size_t>(n), -1);
  seg.coord.assign(static_cast<std::size_t>(n), 0);
  // Visit the identity first so that its segment gets id 0.
  for (int h = 0; h < n; ++h) {
    if (seg.id[static_cast<std::size_t>(h)] >= 0) continue;
    int start = h;
    for (int steps = 0;; ++steps) {
      if (steps > n) return std::nullopt;
      auto prev = induced_step(patch, start, -1);
      if (!prev) break;
      start = *prev;
    }
    const int id = static_cast<int>(seg.rep.size());
    std::vector<int> members;
    int cur = start;
    for (int steps = 0;; ++steps) {
      if (steps > n || seg.id[static_cast<std::size_t>(cur)] >= 0) return std::nullopt;
      seg.id[static_cast<std::size_t>(cur)] = id;
      members.push_back(cur);
      auto next = induced_step(patch, cur, +1);
      if (!next) break;
      cur = *next;
    }
    int anchor = 0;
    if (h == 0) {
      anchor = static_cast<int>(std::find(members.begin(), members.end(), 0) - members.begin());
    } else {
      anchor = static_cast<int>(std::min_element(members.begin(), members.end()) - members.begin());
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      seg.coord[static_cast<std::size_t>(members[i])] = static_cast<int>(i) - anchor;
    }
    seg.rep.push_back(members[static_cast<std::size_t>(anchor)]);
    seg.lo.push_back(-anchor);
    seg.hi.push_back(static_cast<int>(members.size()) - 1 - anchor);
  }
  return seg;
}

std::optional<Rect> seed_domain(const ProductGridPatch& omega) {
  auto s1 = grid_segments(omega.first);
  auto s2 = grid_segments(omega.second);
  if (!s1 || !s2) return std::nullopt;
  int w = 0;
  int h = 0;
  for (std::size_t i = 0; i < s1->rep.size(); ++i) w = std::max(w, s1->hi[i] - s1->lo[i] + 1);
  for (std::size_t i = 0; i < s2->rep.size(); ++i) h = std::max(h, s2->hi[i] - s2->lo[i] + 1);
  return Rect{s1->lo[0], s2->lo[0], w, h};
}

std::optional<std::vector<int>> seed_grid_from_config(const ProductGridPatch& omega, const Patch2D& c,
                                                      std::string* reason) {
  auto fail = [&](const std::string& why) -> std::optional<std::vector<int>> {
    if (reason) *reason = why;
    return std::nullopt;
  };
  auto s1 = grid_segments(omega.first);
  auto s2 = grid_segments(omega.second);
  if (!s1 || !s2) return fail("omega has a cycle or inconsistent steps");
  // Segment 0 of each factor holds the identity.
  const int lo1 = s1->lo[0];
  const int hi1 = s1->hi[0];
  const int lo2 = s2->lo[0];
  const int hi2 = s2->hi[0];
  if (!c.contains_abs(lo1, lo2) || !c.contains_abs(hi1, hi2)) {
    return fail("configuration does not cover the identity orbit box [" + std::to_string(lo1) + "," +
                std::to_string(hi1) + "]x[" + std::to_string(lo2) + "," + std::to_string(hi2) + "]");
  }
  const auto& b1 = *omega.first.ball;
  const auto& b2 = *omega.second.ball;
  std::vector<int> y(omega.size(), kBlank);
  for (int h1 = 0; h1 < static_cast<int>(b1.size()); ++h1) {
    const int i1 = s1->id[static_cast<std::size_t>(h1)];
    for (int h2 = 0; h2 < static_cast<int>(b2.size()); ++h2) {
      const int i2 = s2->id[static_cast<std::size_t>(h2)];
      int x = s1->coord[static_cast<std::size_t>(h1)];
      int z = s2->coord[static_cast<std::size_t>(h2)];
      if (i1 != 0 || i2 != 0) {
        x = c.x0 + x - s1->lo[static_cast<std::size_t>(i1)];
        z = c.y0 + z - s2->lo[static_cast<std::size_t>(i2)];
      }
      if (!c.contains_abs(x, z)) {
        return fail("configuration too small for the orbit of ('" + b1.label(h1) + "', '" + b2.label(h2) + "')");
      }
      const int v = c.get_abs(x, z);
      if (v == kBlank) return fail("configuration has a hole at (" + std::to_string(x) + "," + std::to_string(z) + ")");
      y[omega.cell(h1, h2)] = v;
    }
  }
  return y;
}

}  // namespace groupshift
