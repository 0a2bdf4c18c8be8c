#include "groupshift/cayley_ball.hpp"

#include <sstream>

#include "groupshift/errors.hpp"

namespace groupshift {

namespace {

std::string word_key(std::span<const Gen> w) {
  std::string key;
  for (Gen g : w) {
    key += std::to_string(g);
    key += ',';
  }
  return key;
}

}  // namespace

CayleyBall CayleyBall::build(GroupPtr group, int radius, std::size_t budget) {
  if (radius < 0) raise(ErrorKind::Schema, "radius must be >= 0");
  CayleyBall ball;
  ball.group_ = std::move(group);
  ball.radius_ = radius;
  const auto& gens = ball.group_->generators();
  ball.stride_ = gens.size();

  auto add = [&](Word w, int d) {
    const int idx = static_cast<int>(ball.words_.size());
    if (ball.words_.size() >= budget) {
      raise(ErrorKind::ResourceLimit,
            "Cayley ball exceeds " + std::to_string(budget) + " elements");
    }
    ball.buckets_[ball.group_->fingerprint(w)].push_back(idx);
    ball.canonical_.emplace(word_key(w), idx);
    ball.words_.push_back(std::move(w));
    ball.dist_.push_back(d);
    ball.edges_.insert(ball.edges_.end(), ball.stride_, -1);
    return idx;
  };

  add(Word{}, 0);
  for (std::size_t i = 0; i < ball.words_.size(); ++i) {
    const int d = ball.dist_[i];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Gen g = static_cast<Gen>(s);
      if (g == gens.identity()) {
        ball.edges_[i * ball.stride_ + s] = static_cast<int>(i);
        continue;
      }
      Word w = ball.words_[i];
      w.push_back(g);
      const std::string fp = ball.group_->fingerprint(w);
      int target = -1;
      if (auto hit = ball.lookup(w, fp)) {
        target = *hit;
      } else if (d < radius) {
        target = add(std::move(w), d + 1);
      }
      ball.edges_[i * ball.stride_ + s] = target;
    }
  }
  return ball;
}

std::optional<int> CayleyBall::lookup(std::span<const Gen> w, const std::string& fp) const {
  auto it = buckets_.find(fp);
  if (it == buckets_.end()) return std::nullopt;
  for (int idx : it->second) {
    if (group_->equal(words_[static_cast<std::size_t>(idx)], w)) return idx;
  }
  return std::nullopt;
}

std::optional<int> CayleyBall::find(std::span<const Gen> w) const {
  generators().validate(w);
  int cur = 0;
  for (Gen g : w) {
    cur = neighbor(cur, g);
    if (cur < 0) break;
  }
  if (cur >= 0) return cur;
  return lookup(w, group_->fingerprint(w));
}

std::optional<int> CayleyBall::index_of(const Word& canonical) const {
  auto it = canonical_.find(word_key(canonical));
  if (it == canonical_.end()) return std::nullopt;
  return it->second;
}

std::string CayleyBall::to_dot() const {
  std::ostringstream out;
  out << "digraph cayley {\n";
  for (std::size_t i = 0; i < size(); ++i) {
    out << "  n" << i << " [label=\"" << (words_[i].empty() ? "1" : label(static_cast<int>(i)))
        << "\"];\n";
  }
  const auto& gens = generators();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const int t = edges_[i * stride_ + s];
      if (static_cast<Gen>(s) == gens.identity() || t < 0) continue;
      out << "  n" << i << " -> n" << t << " [label=\"" << gens.name(static_cast<Gen>(s))
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace groupshift
