#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groupshift/cayley_ball.hpp"
#include "groupshift/shift_core.hpp"

namespace groupshift {

using BallPtr = std::shared_ptr<const CayleyBall>;

struct GridLabel {
  Gen left = 0;
  Gen right = 0;
  bool operator==(const GridLabel&) const = default;
};

/// Grid labels on every element of a Cayley ball.
struct GridPatch {
  BallPtr ball;
  std::vector<GridLabel> labels;

  const GridLabel& at(int h) const { return labels.at(static_cast<std::size_t>(h)); }
  /// Throws Schema when labels are not total or use foreign generators.
  void validate() const;
};

struct ProductGridPatch {
  GridPatch first;
  GridPatch second;

  std::size_t size() const { return first.ball->size() * second.ball->size(); }
  std::size_t cell(int h1, int h2) const {
    return static_cast<std::size_t>(h1) * second.ball->size() + static_cast<std::size_t>(h2);
  }
};

/// One constraint instance: element, the generator named by its label and
/// which label side triggered it ('R' for right, 'L' for left).
struct GridRecord {
  int element = 0;
  Gen generator = 0;
  char side = 'R';
  bool operator==(const GridRecord&) const = default;
  auto operator<=>(const GridRecord&) const = default;
};

struct GridReport {
  std::vector<GridRecord> violations;
  std::size_t satisfied = 0;
  std::vector<GridRecord> unchecked;
};

/// right(h)=s requires left(h·s)=s^-1 and left(h)=s requires right(h·s)=s^-1.
/// Constraints whose partner leaves the ball are recorded as unchecked.
GridReport check_grid_local(const GridPatch& patch);

/// h·right(h) for dir = +1, h·left(h) for dir = -1; nullopt when leaving.
std::optional<int> induced_step(const GridPatch& patch, int h, int dir);

/// [omega](z, h): |z| induced steps in the direction of z's sign.
std::optional<int> induced_orbit(const GridPatch& patch, int h, std::int64_t z);

struct OrbitTrace {
  enum class Kind { Path, Cycle, LeftBall };
  Kind kind = Kind::Path;
  std::vector<int> path;      // visited elements, start first
  std::size_t cycle_length = 0;
};

const char* to_string(OrbitTrace::Kind k);

OrbitTrace orbit_trace(const GridPatch& patch, int h, std::size_t max_steps);

/// Partial successor / predecessor maps on a ball (-1 = undefined).
struct PathCover {
  BallPtr ball;
  std::vector<int> succ;
  std::vector<int> pred;
};

/// Labels from displacements h^-1 succ(h) and h^-1 pred(h). An undefined side
/// gets the inverse of the other side when that leaves the ball, otherwise
/// the first generator leading out of the ball. Throws
/// DisplacementNotGenerator when a displacement is not a generator or an
/// undefined side has no exit.
GridPatch from_translation_action(const PathCover& f);

/// succ(h) = h·s and pred(h) = h·s^-1 inside the ball.
PathCover translation_cover(BallPtr ball, Gen s);

struct PathCoverCheck {
  bool inverse = true;     // succ and pred are mutually inverse
  bool adjacent = true;    // steps follow non-identity generator edges
  bool acyclic = true;
  bool covers_interior = true;
  bool endpoints_outside = true;
  std::vector<std::string> problems;

  bool ok() const { return inverse && adjacent && acyclic && covers_interior && endpoints_outside; }
};

PathCoverCheck verify_path_cover(const PathCover& cover, int margin);

struct PathCoverFailure {
  std::string diagnosis;
  PathCover best;
};

/// Vertex-disjoint simple paths covering the elements at distance at most
/// radius - margin, with endpoints only where the ball has an exit edge.
/// Maximum matching on the split graph plus cycle repair; `seed` shuffles
/// neighbour orders on restarts.
std::variant<PathCover, PathCoverFailure> path_cover_search(BallPtr ball, int margin,
                                                            std::uint64_t seed = 0, int restarts = 64);

/// DOT drawing of succ edges.
std::string path_cover_dot(const PathCover& cover);

struct ProductCheck {
  std::vector<std::pair<std::size_t, char>> violations;  // cell, 'h' or 'v'
  std::size_t satisfied = 0;
  std::size_t unchecked = 0;
};

/// Dominoes of y along the grid directions. y is indexed by
/// ProductGridPatch::cell.
ProductCheck grid_y_check(const ProductGridPatch& omega, std::span<const int> y, const NNSFT2D& sft);

/// Rectangle of grid coordinates.
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
};

/// Reads y along the grid from base cell (h1, h2). nullopt is LeftBall.
std::optional<Patch2D> read_grid(const ProductGridPatch& omega, std::span<const int> y, int h1, int h2,
                                 Rect window);

/// Segment of a one-dimensional grid: maximal run of induced steps.
struct Segments {
  std::vector<int> id;     // segment of each element
  std::vector<int> coord;  // coordinate relative to the segment representative
  std::vector<int> lo;     // per segment: minimal coordinate
  std::vector<int> hi;     // per segment: maximal coordinate
  std::vector<int> rep;    // per segment: representative element
};

/// Splits a violation-free, cycle-free grid into segments. The identity's
/// segment is represented by the identity, the others by their least
/// element. nullopt when a cycle is found.
std::optional<Segments> grid_segments(const GridPatch& patch);

/// Domain a configuration must cover to seed omega: the identity orbit's
/// box, widened to fit every other orbit box anchored at its lower left.
std::optional<Rect> seed_domain(const ProductGridPatch& omega);

/// Lays c out along every orbit. nullopt (Fail) when c is too small or omega
/// has a cycle; `reason` then says why.
std::optional<std::vector<int>> seed_grid_from_config(const ProductGridPatch& omega, const Patch2D& c,
                                                      std::string* reason = nullptr);

}  // namespace groupshift
