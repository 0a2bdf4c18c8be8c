#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groupshift/cayley_ball.hpp"
#include "groupshift/groups.hpp"
#include "groupshift/shift_core.hpp"

namespace groupshift {

enum class Verdict { CertifiedEmpty, Unknown };

const char* to_string(Verdict v);

/// Semi-decision procedure for "the cylinder [w] misses X". Queries are
/// deterministic functions of (w, budget) and monotone in the budget.
class SetOracle {
 public:
  virtual ~SetOracle() = default;
  virtual Verdict query(std::string_view w, std::uint64_t budget) const = 0;
};

/// Semi-decision procedure for "[v] and T^s([w] ∩ X) are disjoint".
class ActionOracle {
 public:
  explicit ActionOracle(GeneratorSet gens) : gens_(std::move(gens)) {}
  virtual ~ActionOracle() = default;

  const GeneratorSet& generators() const noexcept { return gens_; }
  virtual Verdict query(Gen s, std::string_view v, std::string_view w,
                        std::uint64_t budget) const = 0;

 private:
  GeneratorSet gens_;
};

using SetOraclePtr = std::shared_ptr<const SetOracle>;
using ActionOraclePtr = std::shared_ptr<const ActionOracle>;

/// Binary coding of configurations on a group: symbol blocks of width kappa
/// laid out along the shortlex enumeration of the group.
class SubshiftCodec {
 public:
  SubshiftCodec(GroupPtr group, Alphabet alphabet);

  const GroupOracle& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int kappa() const noexcept { return kappa_; }

  /// Binary expansion of the symbol index, most significant bit first.
  std::string upsilon(int symbol) const;
  std::optional<int> upsilon_inverse(std::string_view block) const;

  /// n-th canonical word in shortlex order; enumeration(0) is empty.
  /// Throws OutOfBall past the order of a finite group.
  Word enumeration(std::size_t n) const;

 private:
  GroupPtr group_;
  Alphabet alphabet_;
  int kappa_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const CayleyBall> ball_;
};

/// rho(y) restricted to blocks 0..m. `values` is indexed by ball element.
/// Throws IncompleteSupport when some enumerated element is missing or blank.
std::string rho_encode(const SubshiftCodec& codec, const CayleyBall& ball,
                       std::span<const int> values, std::size_t m);

/// Oracle for the image of the subshift under rho. `forbidden` holds
/// pattern codings with symbols as alphabet indices.
SetOraclePtr rho_set_oracle(std::shared_ptr<const SubshiftCodec> codec,
                            std::vector<PatternCoding> forbidden);

/// Action oracle of the shift on the rho image.
ActionOraclePtr rho_action_oracle(std::shared_ptr<const SubshiftCodec> codec,
                                  std::vector<PatternCoding> forbidden);

/// The identity action on X, over the given generator set.
ActionOraclePtr trivial_action_oracle(SetOraclePtr x, GeneratorSet gens);

/// Never certifies anything.
SetOraclePtr full_set_oracle();

/// Certifies every cylinder.
SetOraclePtr empty_set_oracle();

/// Exact oracle for the one-sided binary SFT avoiding the given factors:
/// [w] is certified empty iff w has no infinite admissible extension.
SetOraclePtr forbidden_factor_set_oracle(std::vector<std::string> factors);

}  // namespace groupshift
