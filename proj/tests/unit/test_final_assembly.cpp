#include <doctest.h>

#include "../oracles.hpp"
#include "groupshift/errors.hpp"
#include "groupshift/final_assembly.hpp"

using namespace groupshift;

namespace {

BallPtr ball_of(const GroupPtr& g, int r) { return std::make_shared<const CayleyBall>(CayleyBall::build(g, r)); }

long z_coordinate(const CayleyBall& ball, int e) {
  long z = 0;
  for (Gen g : ball.element(e)) z += ball.generators().name(g) == "x" ? 1 : -1;
  return z;
}

GridPatch translation_grid(const GroupPtr& h, int radius) {
  auto b = ball_of(h, radius);
  return from_translation_action(translation_cover(b, *h->generators().find("x")));
}

struct Golden {
  GroupPtr z = free_abelian_group(1);
  std::shared_ptr<const SubshiftCodec> codec = std::make_shared<const SubshiftCodec>(z, Alphabet({"0", "1"}));
  FactorContext ctx = make_rho_context(codec, {{{Word{}, 1}, {Word{*z->generators().find("x")}, 1}}});
  BallPtr g_ball = ball_of(z, 1);
  BallPtr k_ball = ball_of(z, 2);
  BallPtr y_ball = ball_of(z, 4);

  int slice(const char* name) const { return *g_ball->find(z->generators().parse(name)); }

  // y is given as a function of the Z coordinate.
  template <class F>
  std::vector<int> values(F y) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(y_ball->size()); ++e) out.push_back(y(z_coordinate(*y_ball, e)));
    return out;
  }

  FinalPatch witness(const std::vector<int>& y, int h1_radius) const {
    ProductGridPatch omega{translation_grid(z, h1_radius), translation_grid(z, 4)};
    const auto domain = seed_domain(omega);
    REQUIRE(domain);
    const auto length = static_cast<std::size_t>(std::max(psi_required_length(domain->x0, domain->width), 1));
    return witness_construct(ctx, g_ball, rho_witness_prefixes(*codec, k_ball, *y_ball, y, length), omega);
  }

  std::vector<int> original(const std::vector<int>& y) const {
    std::vector<int> out;
    for (int g = 0; g < static_cast<int>(g_ball->size()); ++g) {
      out.push_back(y[static_cast<std::size_t>(*y_ball->find(g_ball->element(g)))]);
    }
    return out;
  }
};

std::size_t all_violations(const FinalPatch& p, const FactorContext& ctx) {
  return check_F1(p, ctx).violations.size() + check_F2(p).violations.size() + check_F3(p, ctx).violations.size() +
         check_F4(p, ctx).violations.size();
}

int with_layer(int symbol, std::size_t layers, std::size_t layer, TSym value) {
  auto column = top_symbol_layers(symbol, layers);
  column[layer] = value;
  return top_symbol_index(column);
}

}  // namespace

TEST_CASE("golden-mean witness passes every family and decodes to rho") {
  Golden g;
  const auto y = g.values([](long z) { return static_cast<int>(((z % 2) + 2) % 2); });
  const FinalPatch p = g.witness(y, 28);
  const int threads = 3;
  const auto f1 = check_F1(p, g.ctx, threads);
  CHECK(f1.violations.empty());
  CHECK(f1.satisfied > 0);
  CHECK(check_F2(p).violations.empty());
  CHECK(check_F3(p, g.ctx).violations.empty());
  const auto f4 = check_F4(p, g.ctx);
  CHECK(f4.violations.empty());
  CHECK(f4.satisfied > 0);
  CHECK(check_F1(p, g.ctx, 1).satisfied == f1.satisfied);
  for (int n = 0; n <= 2; ++n) {
    CHECK(factor_phi(p, g.ctx, n) == rho_encode(*g.codec, *g.y_ball, y, static_cast<std::size_t>(n)));
  }
  CHECK(factor_phi(p, g.ctx, 2) == "011");
  CHECK(projective_check(hat_phi_project(p, g.ctx), g.original(y)));
}

TEST_CASE("trivial system on the zero configuration") {
  auto z = free_abelian_group(1);
  auto x = forbidden_factor_set_oracle({"1"});
  const FactorContext ctx = make_context(z, x, trivial_action_oracle(x, z->generators()), 1);
  ProductGridPatch omega{translation_grid(z, 28), translation_grid(z, 4)};
  auto k_ball = ball_of(z, 2);
  const FinalPatch p = witness_construct(ctx, ball_of(z, 1), {k_ball, std::vector<std::string>(k_ball->size(), "0000")},
                                         omega);
  for (const auto& slice : p.y) CHECK(slice == p.y[0]);
  CHECK(all_violations(p, ctx) == 0);
  CHECK(factor_phi(p, ctx, 2) == "000");
  const auto proj = hat_phi_project(p, ctx);
  CHECK(projective_check(proj, std::vector<int>(3, 0)));
  for (const auto& slice : proj) {
    for (const auto& v : slice) {
      if (v) CHECK(*v == 0);
    }
  }
}

TEST_CASE("every golden-mean configuration near the origin gives a clean witness") {
  Golden g;
  std::size_t tested = 0;
  for (std::uint32_t bits = 0; bits < (1u << 9); ++bits) {
    if (bits & (bits >> 1)) continue;
    const auto y = g.values([&](long z) { return static_cast<int>((bits >> (z + 4)) & 1u); });
    const FinalPatch p = g.witness(y, 13);
    CAPTURE(bits);
    CHECK(all_violations(p, g.ctx) == 0);
    for (int n = 0; n <= 1; ++n) {
      const auto phi = factor_phi(p, g.ctx, n);
      REQUIRE(phi);
      CHECK(*phi == rho_encode(*g.codec, *g.y_ball, y, static_cast<std::size_t>(n)));
      // The neighbouring slices decode to shifted points compatible with phi.
      for (const char* s : {"x", "X"}) {
        const Gen gen = *g.z->generators().find(s);
        const int inv = g.slice(g.z->generators().name(g.z->generators().inverse(gen)).c_str());
        const auto shifted = decode_at(p, g.ctx, inv, 0, 0, n);
        REQUIRE(shifted);
        CHECK(g.ctx.t->query(gen, *shifted, *phi, g.ctx.budget) == Verdict::Unknown);
      }
    }
    const auto proj = hat_phi_project(p, g.ctx);
    const auto original = g.original(y);
    CHECK(projective_check(proj, original));
    // On a valid patch the projection is constant along H.
    for (std::size_t s = 0; s < proj.size(); ++s) {
      std::size_t determined = 0;
      for (const auto& v : proj[s]) {
        if (!v) continue;
        ++determined;
        CHECK(*v == original[s]);
      }
      CHECK(determined > 0);
    }
    ++tested;
  }
  CHECK(tested == 89);
}

TEST_CASE("changing one symbol of the identity slice is always caught") {
  Golden g;
  const auto y = g.values([](long z) { return z == 0 ? 1 : 0; });
  const FinalPatch p = g.witness(y, 13);
  const int symbols = static_cast<int>(g.ctx.sft.alphabet.size());
  const Gen x = *g.z->generators().find("x");
  int h1 = 0;
  for (int step = 0; step < 9; ++step, h1 = p.h1_ball->neighbor(h1, x)) {
    const std::size_t c = p.cell(h1, 0);
    for (int sym = 0; sym < symbols; ++sym) {
      if (sym == p.y[0][c]) continue;
      FinalPatch q = p;
      q.y[0][c] = sym;
      CAPTURE(step);
      CAPTURE(sym);
      CHECK(check_F1(q, g.ctx).violations.size() + check_F3(q, g.ctx).violations.size() > 0);
    }
  }
}

TEST_CASE("F2 flags one disagreeing grid label on both ordered pairs") {
  Golden g;
  const FinalPatch p = g.witness(g.values([](long) { return 0; }), 28);
  FinalPatch q = p;
  const int sx = g.slice("x");
  const std::size_t c = q.cell(3, 2);
  std::swap(q.omega1[static_cast<std::size_t>(sx)][c].left, q.omega1[static_cast<std::size_t>(sx)][c].right);
  const auto f2 = check_F2(q);
  REQUIRE(f2.violations.size() == 2);
  for (const auto& v : f2.violations) {
    CHECK(v.family == "F2");
    CHECK(v.h1 == 3);
    CHECK(v.h2 == 2);
  }
  CHECK(f2.violations[0].g != f2.violations[1].g);
  CHECK_FALSE(check_F1(q, g.ctx).violations.empty());
  CHECK(check_F3(q, g.ctx).violations.empty());
}

TEST_CASE("F3 flags a layer that disagrees with the neighbouring slice") {
  Golden g;
  const FinalPatch p = g.witness(g.values([](long z) { return z == 1 ? 1 : 0; }), 28);
  const std::size_t layers = g.ctx.layers();
  // Find a cell of the identity slice whose first layer carries a bit.
  std::size_t c = 0;
  while (top_symbol_layers(p.y[0][c], layers)[0] == TSym::Filler) ++c;
  FinalPatch q = p;
  const TSym old = top_symbol_layers(q.y[0][c], layers)[0];
  q.y[0][c] = with_layer(q.y[0][c], layers, 0, old == TSym::Zero ? TSym::One : TSym::Zero);
  const auto f3 = check_F3(q, g.ctx);
  REQUIRE(f3.violations.size() == 2);
  std::vector<std::pair<int, std::string>> seen;
  for (const auto& v : f3.violations) {
    CHECK(q.cell(v.h1, v.h2) == c);
    seen.emplace_back(v.g, v.rule);
  }
  std::sort(seen.begin(), seen.end());
  std::vector<std::pair<int, std::string>> expected{{g.slice("x"), "layer-x"}, {g.slice("X"), "layer-X"}};
  std::sort(expected.begin(), expected.end());
  CHECK(seen == expected);
  CHECK(check_F2(q).violations.empty());
}

TEST_CASE("F4 compares decoded symbols between neighbouring bases") {
  auto z = free_abelian_group(1);
  auto z2 = free_abelian_group(2);
  auto full = full_set_oracle();
  FactorContext ctx = make_context(z, full, trivial_action_oracle(full, z->generators()), 1);
  ProductGridPatch omega{translation_grid(z2, 4), translation_grid(z, 4)};
  const auto domain = seed_domain(omega);
  REQUIRE(domain);
  const auto length = static_cast<std::size_t>(psi_required_length(domain->x0, domain->width));
  auto g_ball = ball_of(z, 0);
  auto k_ball = ball_of(z, 1);
  auto prefixes = [&](char first) {
    std::string s(std::max<std::size_t>(length, 1), '0');
    s[0] = first;
    return WitnessPrefixes{k_ball, std::vector<std::string>(k_ball->size(), s)};
  };
  const FinalPatch zero = witness_construct(ctx, g_ball, prefixes('0'), omega);
  const FinalPatch one = witness_construct(ctx, g_ball, prefixes('1'), omega);
  CHECK(check_F4(zero, ctx).violations.empty());

  // Rows of H1 other than the identity's row encode a different point.
  FinalPatch mixed = zero;
  const auto& h1 = *mixed.h1_ball;
  for (int a = 0; a < static_cast<int>(h1.size()); ++a) {
    long row = 0;
    for (Gen s : h1.element(a)) {
      const auto& name = h1.generators().name(s);
      row += name == "y" ? 1 : (name == "Y" ? -1 : 0);
    }
    if (row == 0) continue;
    for (int b = 0; b < static_cast<int>(mixed.h2_ball->size()); ++b) {
      mixed.y[0][mixed.cell(a, b)] = one.y[0][one.cell(a, b)];
    }
  }
  const auto f4 = check_F4(mixed, ctx);
  CHECK(f4.violations.size() == 6);
  for (const auto& v : f4.violations) {
    CHECK(v.family == "F4");
    CHECK(v.rule == "symbol-0");
  }

  FactorContext vacuous = ctx;
  vacuous.kappa = 0;
  const auto none = check_F4(mixed, vacuous);
  CHECK(none.violations.empty());
  CHECK(none.satisfied == 0);

  ProductGridPatch small{translation_grid(z, 3), translation_grid(z, 4)};
  const FinalPatch tiny = witness_construct(ctx, g_ball, prefixes('0'), small);
  try {
    check_F4(tiny, ctx);
    FAIL("expected BallTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BallTooSmall);
  }
}

TEST_CASE("corrupted patches fail to decode or to project") {
  Golden g;
  const auto y = g.values([](long z) { return ((z % 3) + 3) % 3 == 0 ? 1 : 0; });
  const FinalPatch p = g.witness(y, 28);
  const int blank = top_symbol_index(std::vector<TSym>(g.ctx.layers(), TSym::Filler));
  FinalPatch junk = p;
  for (auto& s : junk.y[0]) s = blank;
  CHECK_FALSE(factor_phi(junk, g.ctx, 1).has_value());
  CHECK_FALSE(factor_phi(p, g.ctx, 3).has_value());

  // Position 1 of the row through the origin carries the first bit.
  FinalPatch flipped = p;
  const int one = p.h1_ball->neighbor(0, *g.z->generators().find("x"));
  for (int b = 0; b < static_cast<int>(p.h2_ball->size()); ++b) {
    auto& s = flipped.y[0][flipped.cell(one, b)];
    const TSym old = top_symbol_layers(s, g.ctx.layers())[0];
    REQUIRE(old != TSym::Filler);
    s = with_layer(s, g.ctx.layers(), 0, old == TSym::Zero ? TSym::One : TSym::Zero);
  }
  CHECK(projective_check(hat_phi_project(p, g.ctx), g.original(y)));
  CHECK_FALSE(projective_check(hat_phi_project(flipped, g.ctx), g.original(y)));
  CHECK(all_violations(flipped, g.ctx) > 0);

  auto proj = hat_phi_project(p, g.ctx);
  REQUIRE(proj[0][0]);
  proj[0][0] = 1 - *proj[0][0];
  CHECK_FALSE(projective_check(proj, g.original(y)));
}

TEST_CASE("patch validation") {
  Golden g;
  FinalPatch p = g.witness(g.values([](long) { return 0; }), 13);
  FinalPatch missing = p;
  missing.y.pop_back();
  CHECK_THROWS_AS(check_F2(missing), Error);
  FinalPatch foreign = p;
  foreign.omega2[0][0].right = 9;
  CHECK_THROWS_AS(check_F3(foreign, g.ctx), Error);
  FinalPatch symbol = p;
  symbol.y[1][0] = 1000;
  CHECK_THROWS_AS(check_F3(symbol, g.ctx), Error);
  const auto grid = slice_grid(p, 0);
  CHECK(grid.first.labels.size() == p.h1_ball->size());
  CHECK(check_grid_local(grid.first).violations.empty());
}
