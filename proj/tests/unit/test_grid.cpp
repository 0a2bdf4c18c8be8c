#include <doctest.h>

#include <set>

#include "groupshift/errors.hpp"
#include "groupshift/grid.hpp"
#include "groupshift/mealy.hpp"

using namespace groupshift;

namespace {

BallPtr make_ball(GroupPtr g, int r) { return std::make_shared<const CayleyBall>(CayleyBall::build(std::move(g), r)); }

Gen gen(const BallPtr& b, const char* name) { return *b->generators().find(name); }

GridPatch constant(const BallPtr& b, const char* left, const char* right) {
  return GridPatch{b, std::vector<GridLabel>(b->size(), GridLabel{gen(b, left), gen(b, right)})};
}

int at(const BallPtr& b, const char* word) { return *b->find(b->generators().parse(word)); }

NNSFT2D golden_2d() {
  NNSFT2D s = NNSFT2D::full(Alphabet({"0", "1"}));
  s.allowed_h[1][1] = false;
  s.allowed_v[1][1] = false;
  return s;
}

int pattern_value(int x, int y) { return (((x + 2 * y) % 3) + 3) % 3 == 0 ? 1 : 0; }

Patch2D pattern_patch(const Rect& r) {
  Patch2D c(r.x0, r.y0, r.width, r.height);
  for (int i = 0; i < r.width; ++i) {
    for (int j = 0; j < r.height; ++j) c.at(i, j) = pattern_value(r.x0 + i, r.y0 + j);
  }
  return c;
}

void check_step_inverse(const GridPatch& p) {
  for (int h = 0; h < static_cast<int>(p.ball->size()); ++h) {
    if (auto f = induced_step(p, h, +1)) {
      if (auto back = induced_step(p, *f, -1)) CHECK(*back == h);
    }
  }
}

}  // namespace

TEST_CASE("check_grid_local examples") {
  auto b = make_ball(free_abelian_group(1), 4);
  const GridPatch genuine = constant(b, "X", "x");
  const auto ok = check_grid_local(genuine);
  CHECK(ok.violations.empty());
  CHECK(ok.unchecked.size() == 2);  // right of 4 and left of -4
  CHECK(ok.satisfied == 2 * b->size() - 2);

  GridPatch bad = genuine;
  bad.labels[static_cast<std::size_t>(at(b, "x"))] = {gen(b, "x"), gen(b, "x")};
  const auto r = check_grid_local(bad);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(std::find(r.violations.begin(), r.violations.end(), GridRecord{0, gen(b, "x"), 'R'}) != r.violations.end());

  auto b2 = make_ball(free_abelian_group(2), 3);
  const GridPatch horizontal = from_translation_action(translation_cover(b2, gen(b2, "x")));
  CHECK(check_grid_local(horizontal).violations.empty());
  for (const auto& l : horizontal.labels) CHECK(l == GridLabel{gen(b2, "X"), gen(b2, "x")});
}

TEST_CASE("induced steps and orbits") {
  auto b = make_ball(free_abelian_group(1), 4);
  const GridPatch genuine = constant(b, "X", "x");
  CHECK(induced_step(genuine, 0, +1) == at(b, "x"));
  CHECK(induced_step(genuine, 0, -1) == at(b, "X"));
  CHECK(induced_orbit(genuine, 0, 3) == at(b, "x x x"));
  CHECK_FALSE(induced_orbit(genuine, 0, 5).has_value());

  GridPatch fixed = genuine;
  fixed.labels[0] = {0, 0};
  CHECK(induced_step(fixed, 0, +1) == 0);

  const auto t = orbit_trace(genuine, 0, 100);
  CHECK(t.kind == OrbitTrace::Kind::LeftBall);
  CHECK(t.path.size() == 5);

  GridPatch swap = genuine;
  swap.labels[0] = {gen(b, "X"), gen(b, "x")};
  swap.labels[static_cast<std::size_t>(at(b, "x"))] = {gen(b, "x"), gen(b, "X")};
  const auto c = orbit_trace(swap, 0, 100);
  CHECK(c.kind == OrbitTrace::Kind::Cycle);
  CHECK(c.cycle_length == 2);
}

TEST_CASE("genuine translations give violation-free, cycle-free grids") {
  std::vector<std::pair<BallPtr, const char*>> cases;
  auto z2 = make_ball(free_abelian_group(2), 3);
  auto f2 = make_ball(free_group(2), 3);
  auto zc = make_ball(product_group({free_abelian_group(1), cyclic_group(3)}), 3);
  cases = {{z2, "x"}, {z2, "Y"}, {f2, "x"}, {f2, "y"}, {zc, "x_1"}};
  for (const auto& [b, s] : cases) {
    CAPTURE(s);
    const GridPatch p = from_translation_action(translation_cover(b, gen(b, s)));
    CHECK(check_grid_local(p).violations.empty());
    check_step_inverse(p);
    for (int h = 0; h < static_cast<int>(b->size()); ++h) {
      CHECK(orbit_trace(p, h, 1000).kind != OrbitTrace::Kind::Cycle);
    }
  }
}

TEST_CASE("from_translation_action rejects non-generator displacements") {
  auto b = make_ball(free_abelian_group(1), 3);
  PathCover f = translation_cover(b, gen(b, "x"));
  f.succ[0] = at(b, "x x");
  f.pred[static_cast<std::size_t>(at(b, "x x"))] = 0;
  CHECK_THROWS_AS(from_translation_action(f), Error);
}

TEST_CASE("every single-label mutation of the constant Z grid is detected") {
  auto b = make_ball(free_abelian_group(1), 4);
  const GridPatch genuine = constant(b, "X", "x");
  const auto base = check_grid_local(genuine);
  std::set<GridRecord> base_unchecked(base.unchecked.begin(), base.unchecked.end());
  for (int h = 0; h < static_cast<int>(b->size()); ++h) {
    for (Gen l = 0; l < 3; ++l) {
      for (Gen r = 0; r < 3; ++r) {
        GridPatch m = genuine;
        m.labels[static_cast<std::size_t>(h)] = {l, r};
        if (m.labels == genuine.labels) continue;
        const auto rep = check_grid_local(m);
        std::set<GridRecord> unchecked(rep.unchecked.begin(), rep.unchecked.end());
        CHECK((!rep.violations.empty() || unchecked != base_unchecked));
      }
    }
  }
}

TEST_CASE("path cover search") {
  auto z2 = make_ball(free_abelian_group(2), 4);
  auto r = path_cover_search(z2, 1);
  REQUIRE(std::holds_alternative<PathCover>(r));
  CHECK(verify_path_cover(std::get<PathCover>(r), 1).ok());

  auto z = make_ball(free_abelian_group(1), 6);
  auto rz = path_cover_search(z, 1);
  REQUIRE(std::holds_alternative<PathCover>(rz));
  const auto& line = std::get<PathCover>(rz);
  CHECK(verify_path_cover(line, 1).ok());
  // The path through the identity runs through the whole interior.
  const GridPatch lp = from_translation_action(line);
  std::set<int> seen;
  for (int dir : {+1, -1}) {
    int h = 0;
    while (true) {
      seen.insert(h);
      auto n = induced_step(lp, h, dir);
      if (!n) break;
      h = *n;
    }
  }
  for (int h = 0; h < static_cast<int>(z->size()); ++h) {
    if (z->distance(h) <= 5) CHECK(seen.count(h) == 1);
  }

  auto grig = make_ball(grigorchuk_group(), 5);
  auto rg = path_cover_search(grig, 2);
  REQUIRE(std::holds_alternative<PathCover>(rg));
  const auto& cover = std::get<PathCover>(rg);
  CHECK(verify_path_cover(cover, 2).ok());
  const GridPatch gp = from_translation_action(cover);
  CHECK(check_grid_local(gp).violations.empty());
  check_step_inverse(gp);
  for (int h = 0; h < static_cast<int>(grig->size()); ++h) {
    CHECK(orbit_trace(gp, h, 10000).kind == OrbitTrace::Kind::LeftBall);
  }

  auto c2 = make_ball(cyclic_group(2), 1);
  auto rc = path_cover_search(c2, 1);
  REQUIRE(std::holds_alternative<PathCoverFailure>(rc));
  CHECK(std::get<PathCoverFailure>(rc).diagnosis.find("cycle") != std::string::npos);
  CHECK_THROWS_AS(path_cover_search(z, 0), Error);
}

TEST_CASE("path cover search is deterministic per seed") {
  auto grig = make_ball(grigorchuk_group(), 5);
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    auto a = path_cover_search(grig, 2, seed);
    auto b = path_cover_search(grig, 2, seed);
    REQUIRE(std::holds_alternative<PathCover>(a));
    REQUIRE(std::holds_alternative<PathCover>(b));
    CHECK(std::get<PathCover>(a).succ == std::get<PathCover>(b).succ);
  }
}

TEST_CASE("verify_path_cover catches broken covers") {
  auto z = make_ball(free_abelian_group(1), 4);
  PathCover f = translation_cover(z, gen(z, "x"));
  CHECK(verify_path_cover(f, 1).ok());
  PathCover cyc = f;
  const int one = at(z, "x");
  cyc.succ[static_cast<std::size_t>(one)] = 0;
  cyc.pred[0] = one;
  CHECK_FALSE(verify_path_cover(cyc, 1).ok());
  PathCover gap = f;
  gap.succ[0] = -1;
  gap.pred[static_cast<std::size_t>(one)] = -1;
  const auto chk = verify_path_cover(gap, 1);
  CHECK_FALSE(chk.ok());
  CHECK_FALSE(chk.problems.empty());
}

TEST_CASE("grid_y_check and read_grid") {
  auto b1 = make_ball(free_abelian_group(1), 3);
  auto b2 = make_ball(free_abelian_group(1), 2);
  const ProductGridPatch omega{constant(b1, "X", "x"), constant(b2, "X", "x")};
  const std::vector<int> ones(omega.size(), 1);
  CHECK(grid_y_check(omega, ones, NNSFT2D::full(Alphabet({"0", "1"}))).violations.empty());
  NNSFT2D gh = NNSFT2D::full(Alphabet({"0", "1"}));
  gh.allowed_h[1][1] = false;
  const auto rep = grid_y_check(omega, ones, gh);
  std::size_t interior = 0;
  for (int h1 = 0; h1 < static_cast<int>(b1->size()); ++h1) {
    if (b1->neighbor(h1, gen(b1, "x")) >= 0) interior += b2->size();
  }
  CHECK(rep.violations.size() == interior);

  // y(h1, h2) = pattern(z1, z2) read back literally.
  std::vector<int> y(omega.size());
  auto coord = [](const BallPtr& b, int h) {
    int z = 0;
    for (Gen g : b->element(h)) z += b->generators().name(g) == "x" ? 1 : -1;
    return z;
  };
  for (int h1 = 0; h1 < static_cast<int>(b1->size()); ++h1) {
    for (int h2 = 0; h2 < static_cast<int>(b2->size()); ++h2) {
      y[omega.cell(h1, h2)] = pattern_value(coord(b1, h1), coord(b2, h2));
    }
  }
  auto single = read_grid(omega, y, 0, 0, Rect{0, 0, 1, 1});
  REQUIRE(single);
  CHECK(single->at(0, 0) == y[omega.cell(0, 0)]);
  auto sheet = read_grid(omega, y, 0, 0, Rect{-3, -2, 7, 5});
  REQUIRE(sheet);
  CHECK(sheet->cells == pattern_patch(Rect{-3, -2, 7, 5}).cells);
  CHECK_FALSE(read_grid(omega, y, 0, 0, Rect{-4, 0, 1, 1}).has_value());
}

TEST_CASE("seed_grid_from_config roundtrip and admissibility") {
  auto z = make_ball(free_abelian_group(1), 3);
  const ProductGridPatch zz{constant(z, "X", "x"), constant(z, "X", "x")};
  auto dom = seed_domain(zz);
  REQUIRE(dom);
  CHECK(dom->x0 == -3);
  CHECK(dom->width == 7);
  const Patch2D c = pattern_patch(*dom);
  auto y = seed_grid_from_config(zz, c);
  REQUIRE(y);
  auto back = read_grid(zz, *y, 0, 0, *dom);
  REQUIRE(back);
  CHECK(back->cells == c.cells);
  CHECK(grid_y_check(zz, *y, golden_2d()).violations.empty());

  // A cover with several orbits times Z.
  auto grig = make_ball(grigorchuk_group(), 4);
  auto cover = path_cover_search(grig, 1);
  REQUIRE(std::holds_alternative<PathCover>(cover));
  const ProductGridPatch mixed{from_translation_action(std::get<PathCover>(cover)), constant(z, "X", "x")};
  auto md = seed_domain(mixed);
  REQUIRE(md);
  const Patch2D cm = pattern_patch(*md);
  auto ym = seed_grid_from_config(mixed, cm);
  REQUIRE(ym);
  const auto chk = grid_y_check(mixed, *ym, golden_2d());
  CHECK(chk.violations.empty());
  CHECK(chk.satisfied > 0);
  auto base = read_grid(mixed, *ym, 0, 0, Rect{0, 0, 1, 1});
  REQUIRE(base);
  CHECK(base->at(0, 0) == cm.get_abs(0, 0));

  // Too small a configuration fails with a reason.
  std::string reason;
  const Patch2D tiny = pattern_patch(Rect{0, 0, 2, 2});
  CHECK_FALSE(seed_grid_from_config(zz, tiny, &reason).has_value());
  CHECK_FALSE(reason.empty());

  // A cyclic omega has no seeding.
  auto c3 = make_ball(cyclic_group(3), 1);
  const ProductGridPatch cyc{constant(c3, "X", "x"), constant(z, "X", "x")};
  CHECK_FALSE(seed_domain(cyc).has_value());
}

TEST_CASE("grid patch validation") {
  auto b = make_ball(free_abelian_group(1), 2);
  GridPatch p = constant(b, "X", "x");
  CHECK_NOTHROW(p.validate());
  p.labels.pop_back();
  CHECK_THROWS_AS(p.validate(), Error);
}
