#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupshift/effective.hpp"
#include "groupshift/grid.hpp"
#include "groupshift/shift_core.hpp"
#include "groupshift/toeplitz.hpp"

namespace groupshift {

/// Everything the checkers need to know about the simulated system.
struct FactorContext {
  GroupPtr group;                 // G, whose generator set S indexes the layers
  NNSFT2D sft;                    // nearest-neighbour representation of Y
  std::vector<int> block_map;     // symbol of Y -> top-layer symbol index
  SetOraclePtr x;
  ActionOraclePtr t;
  int kappa = 1;                  // depth forced by F4
  std::uint64_t budget = 100'000; // per oracle query
  std::shared_ptr<const SubshiftCodec> codec;  // optional, used by projections

  std::size_t layers() const { return group->generators().size(); }
};

/// Context with the identity block map over make_top_sft.
FactorContext make_context(GroupPtr group, SetOraclePtr x, ActionOraclePtr t, int kappa,
                           std::shared_ptr<const SubshiftCodec> codec = nullptr);

/// Context for the rho image of a G-subshift.
FactorContext make_rho_context(std::shared_ptr<const SubshiftCodec> codec,
                               std::vector<PatternCoding> forbidden);

/// Finite patch of a configuration on G x H1 x H2. Cells are stored per
/// G-slice and indexed by ProductGridPatch::cell order (h1 major).
struct FinalPatch {
  BallPtr g_ball;
  BallPtr h1_ball;
  BallPtr h2_ball;
  std::vector<std::vector<GridLabel>> omega1;  // [g][cell]
  std::vector<std::vector<GridLabel>> omega2;  // [g][cell]
  std::vector<std::vector<int>> y;             // [g][cell]

  std::size_t cells() const { return h1_ball->size() * h2_ball->size(); }
  std::size_t cell(int h1, int h2) const {
    return static_cast<std::size_t>(h1) * h2_ball->size() + static_cast<std::size_t>(h2);
  }
  void validate() const;
};

struct FinalViolation {
  std::string family;  // F1..F4
  int g = 0;
  int h1 = 0;
  int h2 = 0;
  std::string rule;
  bool operator==(const FinalViolation&) const = default;
};

struct FinalReport {
  std::vector<FinalViolation> violations;
  std::size_t satisfied = 0;
  std::size_t unchecked = 0;

  void merge(const FinalReport& other);
};

/// Grid rules in both factors, constancy of each factor's label along the
/// other factor, dominoes of Y along the grid, and top-layer windows of every
/// decodable depth. Slices are spread over `threads` workers.
FinalReport check_F1(const FinalPatch& patch, const FactorContext& ctx, int threads = 1);

/// Grid labels agree between neighbouring G-slices.
FinalReport check_F2(const FinalPatch& patch);

/// Layer s at g equals layer 1 at g s^-1.
FinalReport check_F3(const FinalPatch& patch, const FactorContext& ctx);

/// Decoded symbols m < kappa agree between base (1,1) and every
/// generator-neighbour base. Throws BallTooSmall when an H-ball radius is
/// below 3^kappa + 1.
FinalReport check_F4(const FinalPatch& patch, const FactorContext& ctx);

/// Slice g as a product grid (sharing the H-balls).
ProductGridPatch slice_grid(const FinalPatch& patch, int g);

/// Depth-n decoding of layer 1 from slice g at base (h1, h2). nullopt when
/// the window leaves the ball or does not decode.
std::optional<std::string> decode_at(const FinalPatch& patch, const FactorContext& ctx, int g, int h1,
                                     int h2, int n);

/// phi on the identity slice at base (1,1); nullopt is Undecodable.
std::optional<std::string> factor_phi(const FinalPatch& patch, const FactorContext& ctx, int n);

/// Prefix data for the witness: prefixes[k] is the prefix of T^k x for every
/// element k of `ball` (which must contain s·g^-1 for s in S, g in g_ball).
struct WitnessPrefixes {
  BallPtr ball;
  std::vector<std::string> prefixes;
};

/// Slice g is seeded from the row-constant configuration whose columns
/// encode T^{s g^-1} x in layer s. Throws SeedFailure, InsufficientPrefix or
/// OutOfBall.
FinalPatch witness_construct(const FactorContext& ctx, BallPtr g_ball, const WitnessPrefixes& prefixes,
                             const ProductGridPatch& omega_bar);

/// Projection value per cell; nullopt is Undetermined.
using Projection = std::vector<std::vector<std::optional<int>>>;  // [g][cell]

/// First kappa bits of phi re-based at each cell, decoded through upsilon
/// (or read as a binary number when the context has no codec).
Projection hat_phi_project(const FinalPatch& patch, const FactorContext& ctx);

/// projection(g, 1, 1) == original[g] for every g in the G-ball.
bool projective_check(const Projection& projection, std::span<const int> original);

/// Prefixes of T^k rho(y) of the given length for every k of `ball`, where
/// y is given on `y_ball` (values by element). Throws IncompleteSupport.
WitnessPrefixes rho_witness_prefixes(const SubshiftCodec& codec, BallPtr ball, const CayleyBall& y_ball,
                                     std::span<const int> y, std::size_t length);

}  // namespace groupshift
