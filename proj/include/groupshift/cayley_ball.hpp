#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupshift/groups.hpp"

namespace groupshift {

/// Ball of the Cayley graph around the identity. Elements are stored by
/// index in shortlex order of their canonical words, so index 0 is the
/// identity and indices grow with distance.
class CayleyBall {
 public:
  static constexpr std::size_t kDefaultBudget = 1'000'000;

  /// Breadth-first construction with oracle deduplication. Throws
  /// ResourceLimit once more than `budget` elements are discovered.
  static CayleyBall build(GroupPtr group, int radius, std::size_t budget = kDefaultBudget);

  std::size_t size() const noexcept { return words_.size(); }
  int radius() const noexcept { return radius_; }
  const GroupOracle& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const GeneratorSet& generators() const noexcept { return group_->generators(); }

  const Word& element(int i) const { return words_.at(static_cast<std::size_t>(i)); }
  int distance(int i) const { return dist_.at(static_cast<std::size_t>(i)); }

  /// Index of element(i)·s, or -1 when the product lies outside the ball.
  int neighbor(int i, Gen s) const {
    return edges_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(s)];
  }

  /// Index of the element represented by an arbitrary word, if it lies in
  /// the ball. Walks edges first and asks the oracle only when the walk
  /// leaves the ball.
  std::optional<int> find(std::span<const Gen> w) const;

  /// Exact lookup of a canonical word.
  std::optional<int> index_of(const Word& canonical) const;

  /// Formatted canonical word of element i.
  std::string label(int i) const { return generators().format(element(i)); }

  /// Graph in DOT syntax, one edge per non-identity generator.
  std::string to_dot() const;

 private:
  std::optional<int> lookup(std::span<const Gen> w, const std::string& fp) const;

  GroupPtr group_;
  int radius_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> words_;
  std::vector<int> dist_;
  std::vector<int> edges_;
  std::unordered_map<std::string, std::vector<int>> buckets_;
  std::unordered_map<std::string, int> canonical_;
};

}  // namespace groupshift
