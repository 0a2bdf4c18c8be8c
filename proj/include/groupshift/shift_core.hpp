#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupshift/cayley_ball.hpp"
#include "groupshift/groups.hpp"

namespace groupshift {

/// Hole marker for partial patches. Never a valid symbol index.
inline constexpr int kBlank = -1;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& name(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  bool contains(int i) const noexcept { return i >= 0 && static_cast<std::size_t>(i) < size(); }

  /// Throws UnknownSymbol.
  int index(std::string_view name) const;
  std::optional<int> find(std::string_view name) const;

 private:
  std::vector<std::string> symbols_;
};

/// Nearest-neighbour Z^2 SFT. allowed_h[a][b]: b may sit right of a;
/// allowed_v[a][b]: b may sit on top of a.
struct NNSFT2D {
  Alphabet alphabet;
  std::vector<std::vector<bool>> allowed_h;
  std::vector<std::vector<bool>> allowed_v;

  /// Every pair allowed.
  static NNSFT2D full(Alphabet alphabet);

  bool h(int a, int b) const {
    return allowed_h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  bool v(int a, int b) const {
    return allowed_v[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  void validate() const;
};

/// Rectangular window of a Z^2 configuration. Columns run left to right,
/// rows bottom to top; (x0, y0) is the absolute position of the lower left
/// cell. Cells may hold kBlank.
struct Patch2D {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
  std::vector<int> cells;  // column-major: cells[col * height + row]

  Patch2D() = default;
  Patch2D(int x0_, int y0_, int w, int h, int fill = kBlank);

  int& at(int col, int row) {
    return cells[static_cast<std::size_t>(col) * static_cast<std::size_t>(height) +
                 static_cast<std::size_t>(row)];
  }
  int at(int col, int row) const {
    return cells[static_cast<std::size_t>(col) * static_cast<std::size_t>(height) +
                 static_cast<std::size_t>(row)];
  }
  bool contains_abs(int x, int y) const {
    return x >= x0 && y >= y0 && x < x0 + width && y < y0 + height;
  }
  int get_abs(int x, int y) const { return at(x - x0, y - y0); }
  bool operator==(const Patch2D&) const = default;
};

struct NNViolation {
  int x = 0;  // absolute position of the left / bottom cell
  int y = 0;
  char direction = 'h';  // 'h' or 'v'
  int first = 0;
  int second = 0;
};

struct NNCheck {
  std::vector<NNViolation> violations;
  std::size_t satisfied = 0;
};

/// All forbidden dominoes of the patch. Throws AlphabetMismatch on blanks or
/// foreign indices.
NNCheck check_patch_nn(const NNSFT2D& sft, const Patch2D& patch);

/// One cell of a rectangular forbidden pattern, relative to its lower left.
struct BlockCell {
  int x;
  int y;
  int symbol;
};
using BlockPattern = std::vector<BlockCell>;

struct HigherBlockResult {
  NNSFT2D sft;
  std::vector<int> block_map;              // new symbol -> old symbol at (0,0)
  std::vector<std::vector<int>> blocks;    // column-major k*k contents
};

/// Recodes an SFT with forbidden patterns into a nearest-neighbour SFT over
/// k x k blocks. A pattern may span up to k+1 cells along one axis (so that
/// k = 1 accepts dominoes); wider patterns throw Schema. Throws DegenerateK
/// when k < 1.
HigherBlockResult higher_block_recode(const Alphabet& alphabet,
                                      const std::vector<BlockPattern>& forbidden, int k);

/// Fills the blanks of `partial` so that no domino is forbidden. Cells are
/// chosen most-constrained first, symbols in alphabet order. nullopt means
/// the search space was exhausted; ResourceLimit is thrown past
/// `node_budget` assignments.
std::optional<Patch2D> patch_extension_search(const NNSFT2D& sft, const Patch2D& partial,
                                              std::uint64_t node_budget = 10'000'000);

/// Pattern on a group: canonical support words with symbols.
struct Pattern {
  std::vector<std::pair<Word, int>> cells;
};

/// (word, symbol) list; words need not be canonical and may name the same
/// element twice.
using PatternCoding = std::vector<std::pair<Word, int>>;

/// True iff values(at·h) = p(h) for every support element h. `values` is
/// indexed by ball element. Throws OutOfBall if a translate is missing.
bool pattern_occurs(const CayleyBall& ball, std::span<const int> values, const Pattern& p, int at);

}  // namespace groupshift
