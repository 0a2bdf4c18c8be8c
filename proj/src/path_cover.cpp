#include <algorithm>
#include <array>
#include <random>

#include "groupshift/errors.hpp"
#include "groupshift/grid.hpp"

namespace groupshift {

namespace {

// Paths are grown as an undirected linear forest: every vertex keeps at most
// two path neighbours and required vertices need exactly two. A maximum
// matching on the split graph gives the start; cycles are cut and the
// remaining defects are removed by endpoint moves and Posa rotations. Paths
// are oriented at the end.
class CoverBuilder {
 public:
  CoverBuilder(const CayleyBall& ball, int margin) : ball_(ball), n_(static_cast<int>(ball.size())) {
    const auto& gens = ball.generators();
    adj_.resize(idx(n_));
    required_.assign(idx(n_), false);
    for (int v = 0; v < n_; ++v) {
      bool exit = false;
      for (Gen s = 0; s < static_cast<Gen>(gens.size()); ++s) {
        if (s == gens.identity()) continue;
        const int u = ball.neighbor(v, s);
        if (u < 0) {
          exit = true;
        } else if (u != v) {
          auto& a = adj_[idx(v)];
          if (std::find(a.begin(), a.end(), u) == a.end()) a.push_back(u);
        }
      }
      any_exit_ = any_exit_ || exit;
      required_[idx(v)] = !exit || ball.distance(v) <= ball.radius() - margin;
    }
  }

  bool any_exit() const { return any_exit_; }

  // One attempt. Returns an empty string on success, else a diagnosis; the
  // oriented result is left in succ_/pred_ either way.
  std::string attempt(const std::vector<std::vector<int>>& adj, std::mt19937_64& rng, std::size_t steps) {
    succ_.assign(idx(n_), -1);
    pred_.assign(idx(n_), -1);
    std::string diagnosis;
    for (int v = 0; v < n_ && diagnosis.empty(); ++v) {
      if (!required_[idx(v)]) continue;
      std::vector<char> seen(idx(n_), 0);
      if (!augment_out(adj, v, seen)) diagnosis = "required element '" + ball_.label(v) + "' cannot get a successor";
    }
    for (int u = 0; u < n_ && diagnosis.empty(); ++u) {
      if (!required_[idx(u)] || pred_[idx(u)] >= 0) continue;
      std::vector<char> seen(idx(n_), 0);
      if (!augment_in(adj, u, seen)) diagnosis = "required element '" + ball_.label(u) + "' cannot get a predecessor";
    }
    if (!diagnosis.empty()) return diagnosis;

    nbr_.assign(idx(n_), {-1, -1});
    for (int v = 0; v < n_; ++v) {
      const int u = succ_[idx(v)];
      if (u >= 0 && !linked(v, u)) add_edge(v, u);
    }
    cut_cycles();
    for (std::size_t step = 0; step < steps; ++step) {
      const int e = pick_defect(rng);
      if (e < 0) break;
      move(adj, e, rng);
    }
    orient();
    const int e = pick_defect(rng);
    if (e < 0) return {};
    return "no cycle-free cover found: required element '" + ball_.label(e) + "' remains a path end";
  }

  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  std::vector<int> succ_;
  std::vector<int> pred_;

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  bool augment_out(const std::vector<std::vector<int>>& adj, int v, std::vector<char>& seen) {
    for (int u : adj[idx(v)]) {
      if (seen[idx(u)]) continue;
      seen[idx(u)] = 1;
      const int w = pred_[idx(u)];
      if (w < 0 || augment_out(adj, w, seen)) {
        succ_[idx(v)] = u;
        pred_[idx(u)] = v;
        return true;
      }
    }
    return false;
  }

  // Adjacency is symmetric, so adj[u] also lists the possible predecessors.
  bool augment_in(const std::vector<std::vector<int>>& adj, int u, std::vector<char>& seen) {
    for (int v : adj[idx(u)]) {
      if (seen[idx(v)]) continue;
      seen[idx(v)] = 1;
      const int w = succ_[idx(v)];
      if (w < 0 || augment_in(adj, w, seen)) {
        pred_[idx(u)] = v;
        succ_[idx(v)] = u;
        return true;
      }
    }
    return false;
  }

  int degree(int v) const { return (nbr_[idx(v)][0] >= 0) + (nbr_[idx(v)][1] >= 0); }

  bool linked(int a, int b) const { return nbr_[idx(a)][0] == b || nbr_[idx(a)][1] == b; }

  void add_edge(int a, int b) {
    auto put = [&](int x, int y) {
      auto& s = nbr_[idx(x)];
      (s[0] < 0 ? s[0] : s[1]) = y;
    };
    put(a, b);
    put(b, a);
  }

  void remove_edge(int a, int b) {
    auto drop = [&](int x, int y) {
      auto& s = nbr_[idx(x)];
      if (s[0] == y) {
        s[0] = s[1];
        s[1] = -1;
      } else if (s[1] == y) {
        s[1] = -1;
      }
    };
    drop(a, b);
    drop(b, a);
  }

  // Vertices of the path through the end e, starting at e.
  std::vector<int> path_from(int e) const {
    std::vector<int> path{e};
    int prev = -1;
    int cur = e;
    while (true) {
      const auto& s = nbr_[idx(cur)];
      const int next = s[0] >= 0 && s[0] != prev ? s[0] : (s[1] >= 0 && s[1] != prev ? s[1] : -1);
      if (next < 0 || next == e) break;
      path.push_back(next);
      prev = cur;
      cur = next;
    }
    return path;
  }

  void cut_cycles() {
    std::vector<char> seen(idx(n_), 0);
    for (int v = 0; v < n_; ++v) {
      if (seen[idx(v)] || degree(v) != 2) continue;
      // Walk one way; a cycle returns to v.
      int prev = v;
      int cur = nbr_[idx(v)][0];
      seen[idx(v)] = 1;
      while (cur >= 0 && cur != v) {
        seen[idx(cur)] = 1;
        const auto& s = nbr_[idx(cur)];
        const int next = s[0] != prev ? s[0] : s[1];
        prev = cur;
        cur = next;
      }
      if (cur == v) remove_edge(v, nbr_[idx(v)][0]);
    }
  }

  int pick_defect(std::mt19937_64& rng) const {
    std::vector<int> defects;
    for (int v = 0; v < n_; ++v) {
      if (required_[idx(v)] && degree(v) < 2) defects.push_back(v);
    }
    if (defects.empty()) return -1;
    return defects[std::uniform_int_distribution<std::size_t>(0, defects.size() - 1)(rng)];
  }

  // Gives the path end e one more path neighbour.
  void move(const std::vector<std::vector<int>>& adj, int e, std::mt19937_64& rng) {
    const auto& cand = adj[idx(e)];
    std::vector<int> options;
    for (int x : cand) {
      if (!linked(e, x)) options.push_back(x);
    }
    if (options.empty()) return;
    const int x = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    const std::vector<int> path = path_from(e);
    const auto pos = std::find(path.begin(), path.end(), x);
    if (pos == path.end()) {
      if (degree(x) == 2) remove_edge(x, nbr_[idx(x)][std::uniform_int_distribution<int>(0, 1)(rng)]);
      add_edge(e, x);
      return;
    }
    if (degree(e) == 1) {
      // Rotation: e ... y x ... becomes y ... e x ... with the new end y.
      const int y = *(pos - 1);
      remove_edge(y, x);
      add_edge(e, x);
      return;
    }
    // e is isolated and cannot be on a path with x; unreachable.
  }

  void orient() {
    succ_.assign(idx(n_), -1);
    pred_.assign(idx(n_), -1);
    std::vector<char> seen(idx(n_), 0);
    for (int v = 0; v < n_; ++v) {
      if (seen[idx(v)] || degree(v) != 1) continue;
      const auto path = path_from(v);
      for (std::size_t i = 0; i < path.size(); ++i) {
        seen[idx(path[i])] = 1;
        if (i + 1 < path.size()) {
          succ_[idx(path[i])] = path[i + 1];
          pred_[idx(path[i + 1])] = path[i];
        }
      }
    }
  }

  const CayleyBall& ball_;
  int n_;
  bool any_exit_ = false;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> required_;
  std::vector<std::array<int, 2>> nbr_;
};

}  // namespace

std::variant<PathCover, PathCoverFailure> path_cover_search(BallPtr ball, int margin, std::uint64_t seed,
                                                            int restarts) {
  if (!ball) raise(ErrorKind::Schema, "path cover needs a ball");
  if (margin < 1 || margin > ball->radius()) {
    raise(ErrorKind::Schema, "margin must satisfy 1 <= margin <= radius");
  }
  CoverBuilder builder(*ball, margin);
  if (!builder.any_exit()) {
    // Every element is then required with two path neighbours, so a cover
    // could only consist of cycles.
    const std::vector<int> none(ball->size(), -1);
    return PathCoverFailure{"no element has an exit edge: every cover would close a cycle", {ball, none, none}};
  }
  std::mt19937_64 rng(seed);
  auto adj = builder.adjacency();
  const std::size_t steps = 200 * ball->size() + 1000;
  std::string diagnosis;
  PathCover best{ball, {}, {}};
  for (int round = 0; round <= restarts; ++round) {
    if (round > 0) {
      for (auto& l : adj) std::shuffle(l.begin(), l.end(), rng);
    }
    diagnosis = builder.attempt(adj, rng, steps);
    PathCover cover{ball, builder.succ_, builder.pred_};
    if (diagnosis.empty()) return cover;
    if (round == 0) best = std::move(cover);
  }
  return PathCoverFailure{diagnosis, std::move(best)};
}

}  // namespace groupshift
