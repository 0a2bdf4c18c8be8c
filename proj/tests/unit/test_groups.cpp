#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "groupshift/cayley_ball.hpp"
#include "groupshift/errors.hpp"
#include "groupshift/groups.hpp"
#include "groupshift/mealy.hpp"

using namespace groupshift;

namespace {

bool identity(const GroupPtr& g, const std::string& w) { return g->is_identity(g->generators().parse(w)); }

Word random_word(const GeneratorSet& gens, std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<Gen> pick(1, static_cast<Gen>(gens.size()) - 1);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(pick(rng));
  return w;
}

std::string letters(const GeneratorSet& gens, const Word& w) {
  std::string out;
  for (Gen g : w) out += gens.name(g);
  return out;
}

}  // namespace

TEST_CASE("word problem examples") {
  CHECK(identity(free_abelian_group(2), "x y X Y"));
  CHECK_FALSE(identity(free_group(2), "x y X Y"));
  CHECK(identity(grigorchuk_group(), "b c d"));
  CHECK(word_problem(*free_group(2), {}) == WordClass::Identity);
  CHECK(identity(cyclic_group(5), "x x x x x"));
  CHECK_FALSE(identity(cyclic_group(5), "x x x"));
  CHECK(identity(cyclic_group(2), "x x"));
}

TEST_CASE("foreign letters are rejected") {
  auto g = free_abelian_group(1);
  CHECK_THROWS_AS(g->generators().parse("q"), Error);
  CHECK_THROWS_AS(g->is_identity(Word{7}), Error);
}

TEST_CASE("mealy_apply examples") {
  const auto& m = grigorchuk_automaton();
  const auto a = *m.find("a");
  const auto d = *m.find("d");
  CHECK(mealy_apply(m, std::vector<MealyAutomaton::State>{a}, "0110") == "1110");
  CHECK(mealy_apply(m, std::vector<MealyAutomaton::State>{d}, "111000") == "111000");
  CHECK(mealy_apply(m, std::vector<MealyAutomaton::State>{}, "0101") == "0101");
}

TEST_CASE("grigorchuk generators are involutions on strings up to length 12") {
  const auto& m = grigorchuk_automaton();
  for (const char* q : {"a", "b", "c", "d"}) {
    const auto s = *m.find(q);
    const std::vector<MealyAutomaton::State> twice{s, s};
    for (int len = 1; len <= 12; ++len) {
      for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
        std::string u;
        for (int i = 0; i < len; ++i) u.push_back((bits >> i) & 1u ? '1' : '0');
        REQUIRE(mealy_apply(m, twice, u) == u);
      }
    }
  }
}

TEST_CASE("grigorchuk oracle examples") {
  auto g = grigorchuk_group();
  CHECK(identity(g, "a a"));
  CHECK(identity(g, "a d a d a d a d"));
  CHECK_FALSE(identity(g, "a b"));
  CHECK_FALSE(identity(g, "a d a d"));
}

TEST_CASE("grigorchuk oracle agrees with recursive evaluation to depth 12") {
  auto g = grigorchuk_group();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 400; ++i) {
    const Word w = random_word(g->generators(), rng, 1 + static_cast<std::size_t>(i % 10));
    const std::string s = letters(g->generators(), w);
    CAPTURE(s);
    CHECK(g->is_identity(w) == oracle::grigorchuk_trivial_to_depth(s, 12));
  }
  // Words that reduce to the identity in a non-obvious way.
  for (const char* w : {"bcd", "dcb", "adadadad", "acacacacacacacac", "abababababababababababababababab"}) {
    CAPTURE(w);
    CHECK(identity(g, w) == oracle::grigorchuk_trivial_to_depth(w, 12));
  }
}

TEST_CASE("generic mealy group agrees with the grigorchuk oracle") {
  const auto& m = grigorchuk_automaton();
  auto generic = mealy_group(m, {{*m.find("a")}, {*m.find("b")}, {*m.find("c")}, {*m.find("d")}});
  auto fast = grigorchuk_group();
  REQUIRE(generic->generators().size() == 5);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(fast->generators(), rng, static_cast<std::size_t>(1 + i % 12));
    const Word u = generic->generators().parse(fast->generators().format(w));
    CHECK(generic->is_identity(u) == fast->is_identity(w));
  }
}

TEST_CASE("adding machine has infinite order") {
  MealyAutomaton m;
  m.states = {"a", "e"};
  m.transition = {{1, 0}, {1, 1}};
  m.output = {{1, 0}, {0, 1}};
  auto g = mealy_group(m, {{0}});
  REQUIRE(g->generators().find("a^-1"));
  CHECK(identity(g, "a a^-1"));
  CHECK_FALSE(identity(g, "a a a a"));
  Word w(64, *g->generators().find("a"));
  CHECK_FALSE(g->is_identity(w));
}

TEST_CASE("u v v^-1 u^-1 is trivial in every built-in group") {
  const std::vector<GroupPtr> groups{free_abelian_group(2), free_group(2), cyclic_group(3), grigorchuk_group(),
                                     product_group({free_group(2), free_abelian_group(1)})};
  std::mt19937_64 rng(3);
  for (const auto& g : groups) {
    const auto& gens = g->generators();
    CAPTURE(g->describe());
    // Exhaustive for |u|, |v| <= 2.
    std::vector<Word> small{{}};
    for (Gen a = 1; a < static_cast<Gen>(gens.size()); ++a) {
      small.push_back({a});
      for (Gen b = 1; b < static_cast<Gen>(gens.size()); ++b) small.push_back({a, b});
    }
    for (const auto& u : small) {
      for (const auto& v : small) {
        Word w = concat(concat(u, v), concat(gens.inverse(v), gens.inverse(u)));
        REQUIRE(g->is_identity(w));
      }
    }
    for (int i = 0; i < 100; ++i) {
      const Word u = random_word(gens, rng, 1 + static_cast<std::size_t>(i % 6));
      const Word v = random_word(gens, rng, 1 + static_cast<std::size_t>((i / 6) % 6));
      REQUIRE(g->is_identity(concat(concat(u, v), concat(gens.inverse(v), gens.inverse(u)))));
    }
  }
}

TEST_CASE("product oracle") {
  auto zz = product_group({free_abelian_group(1), free_abelian_group(1)});
  CHECK(identity(zz, "x_1 x_2 X_1 X_2"));
  auto fz = product_group({free_group(2), free_abelian_group(1)});
  CHECK_FALSE(identity(fz, "x_1 y_1 X_1 Y_1"));
  CHECK(identity(fz, "x_1 x_2 X_1 X_2"));
  auto g3 = product_group({grigorchuk_group(), grigorchuk_group(), grigorchuk_group()});
  CHECK(identity(g3, "b_1 c_1 d_1"));
  CHECK_FALSE(identity(g3, "b_1 c_2 d_1"));
  const auto parts = split_product_word(*g3, g3->generators().parse("a_1 b_2 c_1"));
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].size() == 2);
  CHECK(parts[1].size() == 1);
  CHECK(parts[2].empty());
}

TEST_CASE("cayley ball examples") {
  CHECK(CayleyBall::build(free_abelian_group(2), 1).size() == 5);
  CHECK(CayleyBall::build(free_group(2), 2).size() == 17);
  // Regression constant; the brute-force count below confirms it.
  CHECK(CayleyBall::build(grigorchuk_group(), 3).size() == 23);
  CHECK(CayleyBall::build(cyclic_group(2), 5).size() == 2);
}

TEST_CASE("cayley ball sizes agree with brute force and grow with the radius") {
  const std::vector<GroupPtr> groups{free_abelian_group(2), free_group(2), grigorchuk_group(), cyclic_group(4),
                                     product_group({cyclic_group(2), free_abelian_group(1)})};
  for (const auto& g : groups) {
    CAPTURE(g->describe());
    std::size_t last = 0;
    for (int r = 0; r <= 4; ++r) {
      const auto ball = CayleyBall::build(g, r);
      CHECK(ball.size() >= last);
      last = ball.size();
      if (r <= 3 || g->generators().size() <= 3) CHECK(ball.size() == oracle::brute_ball_size(*g, r));
    }
  }
}

TEST_CASE("cayley ball edges are symmetric and words are canonical") {
  for (const auto& g : {free_abelian_group(2), grigorchuk_group(), free_group(2)}) {
    const auto ball = CayleyBall::build(g, 3);
    const auto& gens = ball.generators();
    for (int i = 0; i < static_cast<int>(ball.size()); ++i) {
      CHECK(static_cast<int>(ball.element(i).size()) == ball.distance(i));
      CHECK(ball.index_of(ball.element(i)) == i);
      for (Gen s = 0; s < static_cast<Gen>(gens.size()); ++s) {
        const int j = ball.neighbor(i, s);
        if (j >= 0) CHECK(ball.neighbor(j, gens.inverse(s)) == i);
      }
      CHECK(ball.neighbor(i, gens.identity()) == i);
    }
  }
}

TEST_CASE("cayley ball budget") {
  CHECK_THROWS_AS(CayleyBall::build(free_group(2), 6, 100), Error);
}

TEST_CASE("find resolves non-canonical words") {
  auto g = grigorchuk_group();
  const auto ball = CayleyBall::build(g, 3);
  CHECK(ball.find(g->generators().parse("b c")) == ball.find(g->generators().parse("d")));
  CHECK(ball.find(g->generators().parse("a a a")) == ball.find(g->generators().parse("a")));
  CHECK_FALSE(ball.find(g->generators().parse("a b a b a")).has_value());
}
