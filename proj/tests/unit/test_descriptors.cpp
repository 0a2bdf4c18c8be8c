#include <doctest.h>

#include "groupshift/descriptors.hpp"
#include "groupshift/errors.hpp"

using namespace groupshift;

namespace {

std::string data(const std::string& name) { return std::string(GS_DATA_DIR) + "/" + name; }

// Message of the Schema error raised by f, or "" when nothing is thrown.
template <class F>
std::string schema_message(F f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("groups load from every supported kind") {
  CHECK(load_group(json::parse(R"({"kind":"free_abelian","rank":2})"))->generators().size() == 5);
  CHECK(load_group(json::parse(R"({"kind":"free","rank":2})"))->generators().size() == 5);
  CHECK(load_group(json::parse(R"({"kind":"cyclic","order":2})"))->generators().size() == 2);
  CHECK(load_group(json::parse(R"({"kind":"cyclic","order":5})"))->generators().size() == 3);
  CHECK(load_group(read_json_file(data("grigorchuk.json")))->generators().size() == 5);
  auto adding = load_group(read_json_file(data("adding_machine.json")));
  CHECK_FALSE(adding->is_identity(adding->generators().parse("a a a a")));
  auto product = load_group(json::parse(
      R"({"kind":"product","factors":[{"kind":"free_abelian","rank":1},{"kind":"cyclic","order":3}]})"));
  CHECK(product->is_identity(product->generators().parse("x_2 x_2 x_2")));
}

TEST_CASE("schema errors name the offending path") {
  CHECK(contains(schema_message([] { load_group(json::parse(R"({"kind":"hyperbolic"})")); }), "group.kind"));
  CHECK(contains(schema_message([] { load_group(json::parse(R"({"kind":"free","rank":"two"})")); }),
                 "group.rank: expected an integer"));
  CHECK(contains(schema_message([] { load_group(json::parse(R"({"rank":1})")); }), "missing field 'kind'"));
  CHECK(contains(schema_message([] {
                   load_group(json::parse(R"({"kind":"product","factors":[{"kind":"free","rank":1},{"kind":"x"}]})"));
                 }),
                 "group.factors[1].kind"));
  CHECK(contains(schema_message([] { load_zsft(json::parse(R"({"alphabet":["a"],"allowed":[["a","b"]]})")); }),
                 "unknown symbol 'b'"));
  CHECK(contains(schema_message([] {
                   load_patch2d(json::parse(R"({"origin":[0,0],"rows":["01","0"]})"), Alphabet({"0", "1"}));
                 }),
                 "rows differ in length"));
  CHECK(contains(schema_message([] { read_json_file(data("does_not_exist.json")); }), "does_not_exist.json"));
  CHECK(contains(schema_message([] {
                   load_grid_patch(json::parse(
                       R"({"group":{"kind":"free_abelian","rank":1},"radius":1,"labels":{"x":["X","q"]}})"));
                 }),
                 "unknown generator 'q'"));
  CHECK(contains(schema_message([] {
                   load_subshift(json::parse(
                       R"({"group":{"kind":"free_abelian","rank":1},"alphabet":["0"],"forbidden":[[["x","7"]]]})"));
                 }),
                 "subshift.forbidden"));
}

TEST_CASE("patches list rows from top to bottom and round-trip") {
  const Alphabet bits({"0", "1"});
  const Patch2D p = load_patch2d(read_json_file(data("patch_ok.json")), bits);
  CHECK(p.width == 4);
  CHECK(p.height == 3);
  CHECK(p.at(1, 2) == 1);
  CHECK(p.at(0, 1) == 1);
  CHECK(p.at(3, 0) == 1);
  CHECK(p.at(0, 0) == 0);
  const Patch2D back = load_patch2d(patch2d_to_json(p, bits), bits);
  CHECK(back.cells == p.cells);
  CHECK(back.x0 == p.x0);
  CHECK(back.y0 == p.y0);
  const Patch2D holes = load_patch2d(read_json_file(data("patch_holes.json")), bits);
  CHECK(std::count(holes.cells.begin(), holes.cells.end(), kBlank) > 0);
  CHECK(load_patch2d(patch2d_to_json(holes, bits), bits).cells == holes.cells);
}

TEST_CASE("shift descriptions") {
  const NNSFT2D golden = load_nn_sft(read_json_file(data("golden_mean_2d.json")));
  CHECK_FALSE(golden.h(1, 1));
  CHECK(golden.h(1, 0));
  CHECK_FALSE(golden.v(1, 1));
  const ZSFT even = load_zsft(read_json_file(data("zsft_even.json")));
  CHECK(even.allowed[0][1]);
  CHECK_FALSE(even.allowed[0][0]);
  const SubshiftSpec s = load_subshift(read_json_file(data("golden_mean.json")));
  REQUIRE(s.forbidden.size() == 1);
  CHECK(s.forbidden[0].size() == 2);
  CHECK(s.codec->kappa() == 1);
}

TEST_CASE("grid patches and colourings round-trip") {
  const json group = read_json_file(data("grigorchuk.json"));
  auto ball = std::make_shared<const CayleyBall>(CayleyBall::build(load_group(group), 4));
  auto cover = path_cover_search(ball, 1);
  REQUIRE(std::holds_alternative<PathCover>(cover));
  const GridPatch grid = from_translation_action(std::get<PathCover>(cover));
  const GridPatch back = load_grid_patch(grid_patch_to_json(grid, group));
  CHECK(back.labels == grid.labels);
  CHECK(back.ball->size() == grid.ball->size());

  // Four colours already fail at radius 2 (each element lies on two 4-cliques).
  auto colored = square_free_search(ball, 5, 4);
  REQUIRE(colored);
  const ColoredBall again = load_coloring(coloring_to_json(*colored, group));
  CHECK(again.colors == colored->colors);
  CHECK(again.k == colored->k);
  CHECK(grid_patch_to_json(back, group).dump() == grid_patch_to_json(grid, group).dump());
}

TEST_CASE("final patches round-trip and the stored witness is current") {
  const FinalSetup setup = load_final_context(read_json_file(data("final_ctx.json")));
  CHECK(setup.ctx.budget == 100000);
  json patch_json;
  std::vector<int> original;
  const FinalPatch p = build_witness(setup, &patch_json, &original);
  CHECK(original.size() == 3);
  const FinalPatch back = load_final_patch(patch_json, setup.ctx);
  CHECK(back.y == p.y);
  CHECK(back.omega1 == p.omega1);
  CHECK(back.omega2 == p.omega2);
  const FinalPatch stored = load_final_patch(read_json_file(data("final_witness.json")), setup.ctx);
  CHECK(stored.y == p.y);

  json broken = patch_json;
  broken["slices"][0]["y"][0] = "no-such-symbol";
  CHECK_THROWS_AS(load_final_patch(broken, setup.ctx), Error);
}
