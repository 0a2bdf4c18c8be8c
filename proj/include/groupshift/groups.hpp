#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace groupshift {

/// Index of a generator symbol inside its GeneratorSet.
using Gen = int;

/// A word over a generator set; empty means the identity element.
using Word = std::vector<Gen>;

/// Finite symmetric generating set that contains a distinguished identity
/// letter. Symbols are ordered; the order drives shortlex normal forms.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::vector<std::string> names, std::vector<Gen> inverse, Gen identity);

  std::size_t size() const noexcept { return names_.size(); }
  Gen identity() const noexcept { return identity_; }
  const std::string& name(Gen g) const { return names_.at(static_cast<std::size_t>(g)); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  Gen inverse(Gen g) const { return inverse_.at(static_cast<std::size_t>(g)); }
  bool contains(Gen g) const noexcept { return g >= 0 && static_cast<std::size_t>(g) < names_.size(); }

  std::optional<Gen> find(std::string_view name) const;

  /// Parses whitespace separated symbol names. A token that is not a symbol
  /// is split into single characters when each of them is one ("bcd").
  Word parse(std::string_view text) const;

  /// Space separated names; the empty word formats as "".
  std::string format(std::span<const Gen> w) const;

  Word inverse(std::span<const Gen> w) const;

  /// Throws UnknownSymbol if a letter is not part of this set.
  void validate(std::span<const Gen> w) const;

 private:
  std::vector<std::string> names_;
  std::vector<Gen> inverse_;
  Gen identity_ = 0;
  std::unordered_map<std::string, Gen> index_;
};

enum class WordClass { Identity, NotIdentity };

/// A finitely generated group given by a total word-problem decision
/// procedure. Implementations are immutable after construction and safe to
/// query from several threads.
class GroupOracle {
 public:
  explicit GroupOracle(GeneratorSet gens) : gens_(std::move(gens)) {}
  virtual ~GroupOracle() = default;

  const GeneratorSet& generators() const noexcept { return gens_; }

  /// Throws UnknownSymbol on foreign letters.
  bool is_identity(std::span<const Gen> w) const;

  bool equal(std::span<const Gen> u, std::span<const Gen> v) const;

  /// Cheap invariant of the element: different fingerprints imply different
  /// elements. Equal fingerprints say nothing. The default is constant.
  virtual std::string fingerprint(std::span<const Gen> w) const;

  /// Short human readable description ("free_abelian(2)").
  virtual std::string describe() const = 0;

 protected:
  virtual bool decide(std::span<const Gen> w) const = 0;

 private:
  GeneratorSet gens_;
};

using GroupPtr = std::shared_ptr<const GroupOracle>;

WordClass word_problem(const GroupOracle& group, std::span<const Gen> w);

/// Concatenation helper.
Word concat(std::span<const Gen> a, std::span<const Gen> b);

/// Z^d with generators 1, x, X, y, Y, ... (uppercase = inverse).
GroupPtr free_abelian_group(int rank);

/// Free group of the given rank, same naming as free_abelian_group.
GroupPtr free_group(int rank);

/// Z/nZ with generators 1, x (and X when n > 2).
GroupPtr cyclic_group(int order);

/// Direct product. Generators are the shared identity "1" followed by every
/// non-identity generator of factor k renamed "<name>_<k>" (k from 1).
GroupPtr product_group(std::vector<GroupPtr> factors);

/// Factor index (0-based) and factor-local generator of a product generator.
struct ProductLetter {
  std::size_t factor;
  Gen local;
};

/// Splits a word of a product group into one word per factor.
std::vector<Word> split_product_word(const GroupOracle& product, std::span<const Gen> w);

/// Null unless `group` was built by product_group.
const std::vector<GroupPtr>* product_factors(const GroupOracle& group);

/// Maps a generator of a product group to its factor letter.
std::optional<ProductLetter> product_letter(const GroupOracle& product, Gen g);

/// Generator of the product corresponding to (factor, local generator).
Gen product_generator(const GroupOracle& product, std::size_t factor, Gen local);

}  // namespace groupshift
