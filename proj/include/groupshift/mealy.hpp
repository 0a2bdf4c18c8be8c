#pragma once

#include <array>
#include <string>
#include <vector>

#include "groupshift/groups.hpp"

namespace groupshift {

/// Invertible binary Mealy automaton. Each state reads one bit, writes one
/// bit and moves to the next state; per state the output map is a
/// permutation of {0,1}.
struct MealyAutomaton {
  using State = int;

  std::vector<std::string> states;
  std::vector<std::array<State, 2>> transition;
  std::vector<std::array<int, 2>> output;

  std::size_t size() const noexcept { return states.size(); }
  std::optional<State> find(std::string_view name) const;
  bool swaps(State q) const { return output.at(static_cast<std::size_t>(q))[0] == 1; }

  /// Throws Schema when a state's output is not a permutation.
  void validate() const;
};

/// Applies a state word to a binary string ('0'/'1'). The rightmost state
/// acts first, as for a left action.
std::string mealy_apply(const MealyAutomaton& m, std::span<const MealyAutomaton::State> state_word,
                        std::string_view bits);

/// The a, b, c, d automaton (plus the identity state e).
const MealyAutomaton& grigorchuk_automaton();

/// Group generated by the given state words of `m`. Each generator is named
/// by the concatenation of its state names; a formal inverse "<name>^-1" is
/// added unless the generator is an involution. Decided exactly by exploring
/// all section words reachable from the input.
GroupPtr mealy_group(MealyAutomaton m, std::vector<std::vector<MealyAutomaton::State>> generators);

/// Grigorchuk group on generators {1, a, b, c, d}, decided through the
/// contracting wreath recursion.
GroupPtr grigorchuk_group();

/// Image of every binary string of length `depth` under the word, as one
/// string per input (inputs in binary counting order). Used as fingerprint
/// and as the brute-force cross-check of the word problem.
std::vector<std::string> level_action(const MealyAutomaton& m,
                                      std::span<const MealyAutomaton::State> state_word, int depth);

}  // namespace groupshift
