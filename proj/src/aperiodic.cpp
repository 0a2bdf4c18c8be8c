#include "groupshift/aperiodic.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>

#include "groupshift/errors.hpp"

namespace groupshift {

void ColoredBall::validate() const {
  if (!ball) raise(ErrorKind::Schema, "coloring without a ball");
  if (colors.size() != ball->size()) raise(ErrorKind::Schema, "coloring must cover the ball");
  if (k < 1) raise(ErrorKind::Schema, "k must be >= 1");
  for (int c : colors) {
    if (c < 0 || c >= k) raise(ErrorKind::Schema, "color " + std::to_string(c) + " outside 0.." + std::to_string(k - 1));
  }
}

namespace {

std::vector<std::vector<int>> simple_adjacency(const CayleyBall& ball) {
  const auto& gens = ball.generators();
  std::vector<std::vector<int>> adj(ball.size());
  for (int v = 0; v < static_cast<int>(ball.size()); ++v) {
    for (Gen s = 0; s < static_cast<Gen>(gens.size()); ++s) {
      if (s == gens.identity()) continue;
      const int u = ball.neighbor(v, s);
      auto& a = adj[static_cast<std::size_t>(v)];
      if (u >= 0 && u != v && std::find(a.begin(), a.end(), u) == a.end()) a.push_back(u);
    }
  }
  return adj;
}

template <typename Seq>
bool is_square(const Seq& colors) {
  const std::size_t n = colors.size();
  if (n < 2 || n % 2) return false;
  return std::equal(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(n / 2),
                    colors.begin() + static_cast<std::ptrdiff_t>(n / 2));
}

}  // namespace

std::vector<SquareViolation> square_free_verify(const ColoredBall& cb, int max_len, std::uint64_t path_budget,
                                                int threads) {
  cb.validate();
  if (max_len < 2 || max_len % 2) raise(ErrorKind::Schema, "maxLen must be even and >= 2");
  const auto adj = simple_adjacency(*cb.ball);
  const int n = static_cast<int>(cb.ball->size());
  std::atomic<std::uint64_t> paths{0};
  std::atomic<bool> over{false};
  const int workers = std::max(1, std::min(threads, n));
  std::vector<std::vector<SquareViolation>> found(static_cast<std::size_t>(n));

  auto run_start = [&](int start) {
    std::vector<int> path{start};
    std::vector<int> colors{cb.colors[static_cast<std::size_t>(start)]};
    std::vector<char> on(static_cast<std::size_t>(n), 0);
    on[static_cast<std::size_t>(start)] = 1;
    auto& out = found[static_cast<std::size_t>(start)];
    auto dfs = [&](auto&& self) -> void {
      if (over.load(std::memory_order_relaxed)) return;
      if (paths.fetch_add(1, std::memory_order_relaxed) >= path_budget) {
        over = true;
        return;
      }
      if (is_square(colors)) out.push_back({path});
      if (static_cast<int>(path.size()) >= max_len) return;
      for (int u : adj[static_cast<std::size_t>(path.back())]) {
        if (on[static_cast<std::size_t>(u)]) continue;
        on[static_cast<std::size_t>(u)] = 1;
        path.push_back(u);
        colors.push_back(cb.colors[static_cast<std::size_t>(u)]);
        self(self);
        path.pop_back();
        colors.pop_back();
        on[static_cast<std::size_t>(u)] = 0;
      }
    };
    dfs(dfs);
  };

  if (workers == 1) {
    for (int s = 0; s < n; ++s) run_start(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < n; s += workers) run_start(s);
      });
    }
    for (auto& t : pool) t.join();
  }
  if (over) raise(ErrorKind::ResourceLimit, "path enumeration exceeded " + std::to_string(path_budget) + " paths");
  std::vector<SquareViolation> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

namespace {

class SquareFreeSearch {
 public:
  SquareFreeSearch(BallPtr ball, int k, int max_len, std::uint64_t seed, std::uint64_t budget)
      : ball_(std::move(ball)), adj_(simple_adjacency(*ball_)), k_(k), max_len_(max_len), budget_(budget) {
    const std::size_t n = ball_->size();
    colors_.assign(n, -1);
    order_.assign(n, std::vector<int>(static_cast<std::size_t>(k)));
    std::mt19937_64 rng(seed);
    for (auto& o : order_) {
      std::iota(o.begin(), o.end(), 0);
      if (seed != 0) std::shuffle(o.begin(), o.end(), rng);
    }
  }

  std::optional<ColoredBall> run() {
    if (!solve(0)) return std::nullopt;
    return ColoredBall{ball_, colors_, k_};
  }

 private:
  bool solve(int v) {
    if (v == static_cast<int>(colors_.size())) return true;
    for (int c : order_[static_cast<std::size_t>(v)]) {
      if (++nodes_ > budget_) raise(ErrorKind::ResourceLimit, "square-free search exceeded its node budget");
      colors_[static_cast<std::size_t>(v)] = c;
      if (!square_through(v) && solve(v + 1)) return true;
    }
    colors_[static_cast<std::size_t>(v)] = -1;
    return false;
  }

  // Arms are simple paths leaving v through coloured vertices.
  void arms(int v, std::vector<int>& arm, std::vector<char>& on, int limit,
            std::vector<std::vector<int>>& out) const {
    out.push_back(arm);
    if (static_cast<int>(arm.size()) >= limit) return;
    const int tip = arm.empty() ? v : arm.back();
    for (int u : adj_[static_cast<std::size_t>(tip)]) {
      if (on[static_cast<std::size_t>(u)] || colors_[static_cast<std::size_t>(u)] < 0) continue;
      on[static_cast<std::size_t>(u)] = 1;
      arm.push_back(u);
      arms(v, arm, on, limit, out);
      arm.pop_back();
      on[static_cast<std::size_t>(u)] = 0;
    }
  }

  bool square_through(int v) const {
    std::vector<char> on(colors_.size(), 0);
    on[static_cast<std::size_t>(v)] = 1;
    std::vector<std::vector<int>> first;
    std::vector<int> arm;
    arms(v, arm, on, max_len_ - 1, first);
    std::vector<int> colors;
    for (const auto& a : first) {
      for (int u : a) on[static_cast<std::size_t>(u)] = 1;
      std::vector<std::vector<int>> second;
      std::vector<int> arm2;
      arms(v, arm2, on, max_len_ - 1 - static_cast<int>(a.size()), second);
      for (int u : a) on[static_cast<std::size_t>(u)] = 0;
      for (const auto& b : second) {
        colors.clear();
        for (auto it = b.rbegin(); it != b.rend(); ++it) colors.push_back(colors_[static_cast<std::size_t>(*it)]);
        colors.push_back(colors_[static_cast<std::size_t>(v)]);
        for (int u : a) colors.push_back(colors_[static_cast<std::size_t>(u)]);
        if (is_square(colors)) return true;
      }
    }
    return false;
  }

  BallPtr ball_;
  std::vector<std::vector<int>> adj_;
  int k_;
  int max_len_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> colors_;
  std::vector<std::vector<int>> order_;
};

}  // namespace

std::optional<ColoredBall> square_free_search(BallPtr ball, int k, int max_len, std::uint64_t seed,
                                              std::uint64_t node_budget) {
  if (k < 1) raise(ErrorKind::Schema, "k must be >= 1");
  if (max_len < 2 || max_len % 2) raise(ErrorKind::Schema, "maxLen must be even and >= 2");
  auto result = SquareFreeSearch(std::move(ball), k, max_len, seed, node_budget).run();
  if (result && !square_free_verify(*result, max_len).empty()) {
    raise(ErrorKind::SeedFailure, "search produced a coloring that fails verification");
  }
  return result;
}

const char* to_string(PeriodStatus s) {
  switch (s) {
    case PeriodStatus::Respected: return "Respected";
    case PeriodStatus::Broken: return "Broken";
    case PeriodStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

std::size_t ProductPatch::size() const {
  std::size_t n = 1;
  for (const auto& f : factors) n *= f->size();
  return n;
}

std::size_t ProductPatch::index(const std::vector<int>& coords) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    idx = idx * factors[i]->size() + static_cast<std::size_t>(coords[i]);
  }
  return idx;
}

ProductPatch product_of_colorings(const std::vector<ColoredBall>& balls) {
  ProductPatch out;
  for (const auto& b : balls) {
    b.validate();
    out.factors.push_back(b.ball);
  }
  out.values.assign(out.size(), 0);
  std::vector<int> coords(balls.size(), 0);
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = balls.size(); i-- > 0;) {
      coords[i] = static_cast<int>(rest % balls[i].ball->size());
      rest /= balls[i].ball->size();
    }
    int v = 0;
    for (std::size_t i = 0; i < balls.size(); ++i) v = v * balls[i].k + balls[i].colors[static_cast<std::size_t>(coords[i])];
    out.values[idx] = v;
  }
  return out;
}

PeriodStatus detect_period(const ProductPatch& patch, const std::vector<Word>& g) {
  if (g.size() != patch.factors.size()) raise(ErrorKind::Schema, "candidate needs one component per factor");
  if (patch.values.size() != patch.size()) raise(ErrorKind::Schema, "product patch is not total");
  const std::size_t k = patch.factors.size();
  std::vector<std::vector<int>> shift(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& ball = *patch.factors[i];
    shift[i].resize(ball.size());
    for (int h = 0; h < static_cast<int>(ball.size()); ++h) {
      auto t = ball.find(concat(ball.element(h), g[i]));
      shift[i][static_cast<std::size_t>(h)] = t ? *t : -1;
    }
  }
  bool compared = false;
  std::vector<int> coords(k, 0);
  std::vector<int> moved(k, 0);
  for (std::size_t idx = 0; idx < patch.values.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = k; i-- > 0;) {
      coords[i] = static_cast<int>(rest % patch.factors[i]->size());
      rest /= patch.factors[i]->size();
    }
    bool inside = true;
    for (std::size_t i = 0; i < k && inside; ++i) {
      moved[i] = shift[i][static_cast<std::size_t>(coords[i])];
      inside = moved[i] >= 0;
    }
    if (!inside) continue;
    const int a = patch.values[idx];
    const int b = patch.values[patch.index(moved)];
    if (a == kBlank || b == kBlank) continue;
    if (a != b) return PeriodStatus::Broken;
    compared = true;
  }
  return compared ? PeriodStatus::Respected : PeriodStatus::Undetermined;
}

std::vector<ProbeEntry> product_aperiodicity_probe(const std::vector<ColoredBall>& balls, int max_len) {
  if (balls.empty()) raise(ErrorKind::Schema, "probe needs at least one factor");
  if (max_len < 0) raise(ErrorKind::Schema, "candidate length must be >= 0");
  const ProductPatch product = product_of_colorings(balls);
  std::vector<ProductPatch> single;
  std::vector<CayleyBall> candidates;
  for (const auto& b : balls) {
    single.push_back(product_of_colorings({b}));
    candidates.push_back(CayleyBall::build(b.ball->group_ptr(), max_len));
  }
  std::vector<ProbeEntry> out;
  std::vector<int> pick(balls.size(), 0);
  while (true) {
    // Advance the mixed-radix counter, skipping the all-identity candidate.
    std::size_t i = balls.size();
    while (i-- > 0) {
      if (++pick[i] < static_cast<int>(candidates[i].size())) break;
      pick[i] = 0;
    }
    if (std::all_of(pick.begin(), pick.end(), [](int p) { return p == 0; })) break;
    ProbeEntry e;
    for (std::size_t f = 0; f < balls.size(); ++f) e.candidate.push_back(candidates[f].element(pick[f]));
    e.status = detect_period(product, e.candidate);
    bool any_broken = false;
    for (std::size_t f = 0; f < balls.size(); ++f) {
      PeriodStatus st = PeriodStatus::Respected;
      if (pick[f] != 0) st = detect_period(single[f], {e.candidate[f]});
      e.factor_status.push_back(st);
      if (st == PeriodStatus::Broken && !any_broken) {
        any_broken = true;
        e.breaking_factor = static_cast<int>(f);
      }
    }
    e.decomposition_holds = (e.status == PeriodStatus::Broken) == any_broken;
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<std::vector<int>> z_sft_periodic_point(const ZSFT& sft) {
  const std::size_t q = sft.alphabet.size();
  if (sft.allowed.size() != q) raise(ErrorKind::Schema, "allowed table must be |A| x |A|");
  for (const auto& row : sft.allowed) {
    if (row.size() != q) raise(ErrorKind::Schema, "allowed table must be |A| x |A|");
  }
  std::vector<bool> alive(q, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < q; ++a) {
      if (!alive[a]) continue;
      bool out = false;
      bool in = false;
      for (std::size_t b = 0; b < q; ++b) {
        out = out || (alive[b] && sft.allowed[a][b]);
        in = in || (alive[b] && sft.allowed[b][a]);
      }
      if (!out || !in) {
        alive[a] = false;
        changed = true;
      }
    }
  }
  if (std::none_of(alive.begin(), alive.end(), [](bool b) { return b; })) return std::nullopt;
  auto edge = [&](std::size_t a, std::size_t b) { return alive[a] && alive[b] && sft.allowed[a][b]; };
  // reach[l][a][b]: a walk of l steps from a to b inside the trimmed graph.
  using Matrix = std::vector<std::vector<bool>>;
  std::vector<Matrix> reach{Matrix(q, std::vector<bool>(q, false))};
  for (std::size_t a = 0; a < q; ++a) reach[0][a][a] = alive[a];
  for (std::size_t len = 1; len <= q; ++len) {
    Matrix next(q, std::vector<bool>(q, false));
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t m = 0; m < q; ++m) {
        if (!edge(a, m)) continue;
        for (std::size_t b = 0; b < q; ++b) {
          if (reach[len - 1][m][b]) next[a][b] = true;
        }
      }
    }
    reach.push_back(std::move(next));
    for (std::size_t start = 0; start < q; ++start) {
      if (!reach[len][start][start]) continue;
      std::vector<int> word{static_cast<int>(start)};
      std::size_t cur = start;
      for (std::size_t i = 1; i < len; ++i) {
        for (std::size_t b = 0; b < q; ++b) {
          if (edge(cur, b) && reach[len - i][b][start]) {
            word.push_back(static_cast<int>(b));
            cur = b;
            break;
          }
        }
      }
      return word;
    }
  }
  return std::nullopt;
}

}  // namespace groupshift
