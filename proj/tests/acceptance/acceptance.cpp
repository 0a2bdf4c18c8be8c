// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Time limits are wall-clock and pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "../oracles.hpp"
#include "groupshift/aperiodic.hpp"
#include "groupshift/errors.hpp"
#include "groupshift/final_assembly.hpp"
#include "groupshift/mealy.hpp"

using namespace groupshift;

namespace {

constexpr double kLimitSampleWord = 0.001;
constexpr double kLimitRoundtrip = 5.0;
constexpr double kLimitGrigorchuk = 10.0;
constexpr double kLimitMutation = 30.0;
constexpr double kLimitPathCover = 120.0;
constexpr double kLimitAssembly = 120.0;
constexpr double kLimitEquivariance = 60.0;
constexpr double kLimitOracle = 60.0;
constexpr double kLimitSquareFree = 60.0;
constexpr double kLimitZSft = 1.0;
constexpr std::uint64_t kBudget = 100'000;

BallPtr ball_of(const GroupPtr& g, int r) { return std::make_shared<const CayleyBall>(CayleyBall::build(g, r)); }

long z_coordinate(const CayleyBall& ball, int e) {
  long z = 0;
  for (Gen g : ball.element(e)) z += ball.generators().name(g) == "x" ? 1 : -1;
  return z;
}

GridPatch z_translation(int radius) {
  auto z = free_abelian_group(1);
  return from_translation_action(translation_cover(ball_of(z, radius), *z->generators().find("x")));
}

// Criterion bodies return an empty string on success, else the reason.
using Body = std::function<std::string()>;

std::string sample_word() {
  const auto decoded = decode_procedure(parse_tword("␣0␣ 10␣ ␣0␣ 00␣ 10␣ ␣0␣ ␣0␣ 10␣ ␣0␣"));
  return decoded == "010" ? "" : "decoded " + decoded.value_or("<undecodable>");
}

std::string roundtrip() {
  const std::int64_t period = pow3(6);
  const std::int64_t window = pow3(5);
  std::size_t failures = 0;
  for (std::uint32_t code = 0; code < 32; ++code) {
    std::string x;
    for (int i = 0; i < 5; ++i) x.push_back((code >> i) & 1u ? '1' : '0');
    for (std::int64_t from = 0; from < period; ++from) {
      const int need = psi_required_length(from, window);
      for (char pad : {'0', '1'}) {
        const std::string padded = x + std::string(static_cast<std::size_t>(std::max(0, need - 5)), pad);
        if (decode_procedure(psi_encode(padded, from, window)) != x) ++failures;
      }
    }
  }
  return failures == 0 ? "" : std::to_string(failures) + " windows failed";
}

std::string grigorchuk() {
  auto g = grigorchuk_group();
  const std::vector<std::pair<std::string, bool>> words{
      {"a a", true},  {"b b", true},   {"c c", true}, {"d d", true},     {"b c d", true}, {"a d a d a d a d", true},
      {"a", false},   {"b", false},    {"a b", false}, {"a d", false},   {"a d a d", false}};
  for (const auto& [w, expected] : words) {
    const bool decided = g->is_identity(g->generators().parse(w));
    std::string letters;
    for (char c : w) {
      if (c != ' ') letters.push_back(c);
    }
    if (decided != expected) return "word problem wrong on '" + w + "'";
    if (oracle::grigorchuk_trivial_to_depth(letters, 12) != expected) return "automaton disagrees on '" + w + "'";
  }
  return "";
}

std::string grid_mutation() {
  const ProductGridPatch omega{z_translation(4), z_translation(4)};
  for (const GridPatch* f : {&omega.first, &omega.second}) {
    if (!check_grid_local(*f).violations.empty()) return "the translation grid has violations";
  }
  std::size_t mutations = 0;
  for (int factor = 0; factor < 2; ++factor) {
    const GridPatch& base = factor == 0 ? omega.first : omega.second;
    const auto& gens = base.ball->generators();
    for (int h = 0; h < static_cast<int>(base.ball->size()); ++h) {
      for (Gen s = 0; s < static_cast<Gen>(gens.size()); ++s) {
        if (s == base.at(h).right) continue;
        GridPatch mutated = base;
        mutated.labels[static_cast<std::size_t>(h)].right = s;
        const auto report = check_grid_local(mutated);
        bool flagged = !report.violations.empty();
        for (const auto& u : report.unchecked) flagged = flagged || (u.element == h && u.side == 'R');
        if (!flagged) {
          return "mutation of factor " + std::to_string(factor + 1) + " at '" + gens.format(base.ball->element(h)) +
                 "' to '" + gens.name(s) + "' went unnoticed";
        }
        ++mutations;
      }
    }
  }
  return mutations > 0 ? "" : "no mutations generated";
}

std::string path_cover() {
  auto ball = ball_of(grigorchuk_group(), 5);
  auto result = path_cover_search(ball, 2);
  if (auto* failure = std::get_if<PathCoverFailure>(&result)) return failure->diagnosis;
  const auto check = verify_path_cover(std::get<PathCover>(result), 2);
  if (!check.ok()) return check.problems.empty() ? "invariants violated" : check.problems.front();
  return "";
}

struct Assembly {
  GroupPtr z = free_abelian_group(1);
  std::shared_ptr<const SubshiftCodec> codec = std::make_shared<const SubshiftCodec>(z, Alphabet({"0", "1"}));
  FactorContext ctx = make_rho_context(codec, {{{Word{}, 1}, {Word{*z->generators().find("x")}, 1}}});
  BallPtr g_ball = ball_of(z, 1);
  BallPtr y_ball = ball_of(z, 4);
  std::vector<int> y;
  FinalPatch patch;

  Assembly() {
    ctx.budget = kBudget;
    for (int e = 0; e < static_cast<int>(y_ball->size()); ++e) {
      y.push_back(static_cast<int>(((z_coordinate(*y_ball, e) % 2) + 2) % 2));
    }
    const ProductGridPatch omega{z_translation(28), z_translation(28)};
    const auto domain = seed_domain(omega);
    const auto length = static_cast<std::size_t>(psi_required_length(domain->x0, domain->width));
    patch = witness_construct(ctx, g_ball, rho_witness_prefixes(*codec, ball_of(z, 2), *y_ball, y, length), omega);
  }
};

std::string assembly() {
  const Assembly a;
  const auto count = check_F1(a.patch, a.ctx).violations.size() + check_F2(a.patch).violations.size() +
                     check_F3(a.patch, a.ctx).violations.size() + check_F4(a.patch, a.ctx).violations.size();
  if (count != 0) return std::to_string(count) + " violations";
  const auto phi = factor_phi(a.patch, a.ctx, 2);
  const auto expected = rho_encode(*a.codec, *a.y_ball, a.y, 2);
  if (phi != expected) return "phi " + phi.value_or("<undecodable>") + " != " + expected;
  std::vector<int> original;
  for (int g = 0; g < static_cast<int>(a.g_ball->size()); ++g) {
    original.push_back(a.y[static_cast<std::size_t>(*a.y_ball->find(a.g_ball->element(g)))]);
  }
  return projective_check(hat_phi_project(a.patch, a.ctx), original) ? "" : "projection disagrees";
}

std::string equivariance() {
  const Assembly a;
  const auto phi = factor_phi(a.patch, a.ctx, 2);
  if (!phi) return "phi undecodable";
  const auto& gens = a.z->generators();
  for (const char* name : {"x", "X"}) {
    const Gen s = *gens.find(name);
    const int slice = *a.g_ball->find(Word{gens.inverse(s)});
    const auto shifted = decode_at(a.patch, a.ctx, slice, 0, 0, 2);
    if (!shifted) return std::string("shifted slice undecodable for ") + name;
    if (a.ctx.t->query(s, *shifted, *phi, kBudget) == Verdict::CertifiedEmpty) {
      return std::string("action oracle certified empty for ") + name;
    }
  }
  return "";
}

std::string oracle_brute() {
  Assembly a;
  std::size_t words = 0;
  for (int len = 1; len <= 8; ++len) {
    for (std::uint32_t c = 0; c < (1u << len); ++c) {
      std::string w;
      for (int i = len - 1; i >= 0; --i) w.push_back((c >> i) & 1u ? '1' : '0');
      const bool empty = a.ctx.x->query(w, kBudget) == Verdict::CertifiedEmpty;
      if (empty != !oracle::golden_mean_compatible(w)) return "disagreement on " + w;
      ++words;
    }
  }
  return words == 510 ? "" : "enumerated " + std::to_string(words) + " words";
}

std::string square_free() {
  auto ball = ball_of(free_abelian_group(1), 10);
  std::vector<ColoredBall> balls;
  for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
    auto found = square_free_search(ball, 3, 10, seed);
    if (!found) return "no 3-colouring for seed " + std::to_string(seed);
    if (!square_free_verify(*found, 10).empty()) return "colouring has a square";
    balls.push_back(*found);
  }
  if (square_free_search(ball, 2, 4)) return "2-colouring found at maxLen 4";
  for (const auto& e : product_aperiodicity_probe(balls, 2)) {
    if (e.status != PeriodStatus::Broken || !e.decomposition_holds) return "candidate not Broken";
  }
  return "";
}

std::string zsft() {
  for (int mask = 0; mask < 16; ++mask) {
    ZSFT s{Alphabet({"0", "1"}), {{(mask & 1) != 0, (mask & 2) != 0}, {(mask & 4) != 0, (mask & 8) != 0}}};
    const auto brute = oracle::z_sft_brute_period(s.allowed, 6);
    const auto found = z_sft_periodic_point(s);
    if (found.has_value() != brute.has_value() || (found && found->size() != *brute)) {
      return "disagreement on subset " + std::to_string(mask);
    }
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    Body body;
  };
  const std::vector<Criterion> criteria{
      {"sample Toeplitz word decodes to 010", kLimitSampleWord, sample_word},
      {"toeplitz roundtrip over one 3^6 period", kLimitRoundtrip, roundtrip},
      {"grigorchuk word problem vs automaton to depth 12", kLimitGrigorchuk, grigorchuk},
      {"grid soundness and single-cell mutations", kLimitMutation, grid_mutation},
      {"grigorchuk path cover radius 5 margin 2", kLimitPathCover, path_cover},
      {"full assembly witness on the golden mean shift", kLimitAssembly, assembly},
      {"equivariance probe at budget 1e5", kLimitEquivariance, equivariance},
      {"set oracle vs brute force on 510 words", kLimitOracle, oracle_brute},
      {"square-free colourings and product probe", kLimitSquareFree, square_free},
      {"Z-SFT periodic points on 16 subsets", kLimitZSft, zsft},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = c.body();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty() && seconds > c.limit) reason = "over the time limit of " + std::to_string(c.limit) + " s";
    if (!reason.empty()) ++failed;
    std::printf("%s %2zu %s (%.4f s)%s%s\n", reason.empty() ? "PASS" : "FAIL", i + 1, c.name, seconds,
                reason.empty() ? "" : ": ", reason.c_str());
  }
  return failed == 0 ? 0 : 1;
}
