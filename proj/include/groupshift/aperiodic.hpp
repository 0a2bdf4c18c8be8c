#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupshift/grid.hpp"
#include "groupshift/shift_core.hpp"

namespace groupshift {

struct ColoredBall {
  BallPtr ball;
  std::vector<int> colors;
  int k = 0;

  /// Throws Schema unless colors are total and below k.
  void validate() const;
};

/// A simple path whose colour word is a square.
struct SquareViolation {
  std::vector<int> path;
};

/// Squares on vertex-simple paths of even length (vertex count) up to
/// max_len, starting anywhere. Throws ResourceLimit past `path_budget`
/// enumerated paths. Start vertices are split over `threads` workers.
std::vector<SquareViolation> square_free_verify(const ColoredBall& cb, int max_len,
                                                std::uint64_t path_budget = 50'000'000, int threads = 1);

/// Backtracking in shortlex vertex order with k colours. nullopt is Fail
/// (search exhausted). A non-zero seed permutes the colour order per vertex.
/// Throws ResourceLimit past `node_budget` colour assignments.
std::optional<ColoredBall> square_free_search(BallPtr ball, int k, int max_len, std::uint64_t seed = 0,
                                              std::uint64_t node_budget = 50'000'000);

enum class PeriodStatus { Respected, Broken, Undetermined };

const char* to_string(PeriodStatus s);

/// Values on a product of balls; cells are mixed-radix with the first factor
/// most significant. kBlank marks undefined cells.
struct ProductPatch {
  std::vector<BallPtr> factors;
  std::vector<int> values;

  std::size_t size() const;
  std::size_t index(const std::vector<int>& coords) const;
};

/// Product patch whose value at (h_1, ..., h_k) is the tuple of colours,
/// encoded as a mixed-radix integer.
ProductPatch product_of_colorings(const std::vector<ColoredBall>& balls);

/// Compares patch(h·g) with patch(h) wherever both are defined.
PeriodStatus detect_period(const ProductPatch& patch, const std::vector<Word>& g);

struct ProbeEntry {
  std::vector<Word> candidate;
  PeriodStatus status = PeriodStatus::Undetermined;
  std::vector<PeriodStatus> factor_status;  // per nontrivial component; Respected for trivial ones
  int breaking_factor = -1;                 // first factor that is Broken, or -1
  bool decomposition_holds = true;          // Broken iff some component is Broken
};

/// Every nontrivial candidate whose components have length <= max_len.
std::vector<ProbeEntry> product_aperiodicity_probe(const std::vector<ColoredBall>& balls, int max_len);

/// Nearest-neighbour Z-SFT: allowed[a][b] means b may follow a.
struct ZSFT {
  Alphabet alphabet;
  std::vector<std::vector<bool>> allowed;
};

/// Least (length, lex) word whose periodic repetition is admissible, or
/// nullopt (Empty).
std::optional<std::vector<int>> z_sft_periodic_point(const ZSFT& sft);

}  // namespace groupshift
