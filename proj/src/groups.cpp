#include "groupshift/groups.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "groupshift/errors.hpp"

namespace groupshift {

GeneratorSet::GeneratorSet(std::vector<std::string> names, std::vector<Gen> inverse, Gen identity)
    : names_(std::move(names)), inverse_(std::move(inverse)), identity_(identity) {
  if (names_.empty() || inverse_.size() != names_.size()) {
    raise(ErrorKind::Schema, "generator set needs one inverse per symbol");
  }
  if (!contains(identity_) || inverse_[static_cast<std::size_t>(identity_)] != identity_) {
    raise(ErrorKind::Schema, "identity symbol missing or not self-inverse");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const Gen inv = inverse_[i];
    if (!contains(inv) || inverse_[static_cast<std::size_t>(inv)] != static_cast<Gen>(i)) {
      raise(ErrorKind::Schema, "inverse map is not an involution at '" + names_[i] + "'");
    }
    if (!index_.emplace(names_[i], static_cast<Gen>(i)).second) {
      raise(ErrorKind::Schema, "duplicate generator name '" + names_[i] + "'");
    }
  }
}

std::optional<Gen> GeneratorSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word GeneratorSet::parse(std::string_view text) const {
  Word out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (auto g = find(token)) {
      out.push_back(*g);
      continue;
    }
    Word split;
    for (char ch : token) {
      auto g = find(std::string_view(&ch, 1));
      if (!g) raise(ErrorKind::UnknownSymbol, "'" + token + "' is not a generator");
      split.push_back(*g);
    }
    out.insert(out.end(), split.begin(), split.end());
  }
  return out;
}

std::string GeneratorSet::format(std::span<const Gen> w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += name(w[i]);
  }
  return out;
}

Word GeneratorSet::inverse(std::span<const Gen> w) const {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[w.size() - 1 - i] = inverse(w[i]);
  return out;
}

void GeneratorSet::validate(std::span<const Gen> w) const {
  for (Gen g : w) {
    if (!contains(g)) raise(ErrorKind::UnknownSymbol, "letter index " + std::to_string(g));
  }
}

bool GroupOracle::is_identity(std::span<const Gen> w) const {
  gens_.validate(w);
  return decide(w);
}

bool GroupOracle::equal(std::span<const Gen> u, std::span<const Gen> v) const {
  Word probe = gens_.inverse(u);
  probe.insert(probe.end(), v.begin(), v.end());
  return is_identity(probe);
}

std::string GroupOracle::fingerprint(std::span<const Gen>) const { return {}; }

WordClass word_problem(const GroupOracle& group, std::span<const Gen> w) {
  return group.is_identity(w) ? WordClass::Identity : WordClass::NotIdentity;
}

Word concat(std::span<const Gen> a, std::span<const Gen> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

std::string letter_name(int i, bool upper) {
  static constexpr std::string_view kLetters = "xyzwuv";
  std::string base;
  if (i < static_cast<int>(kLetters.size())) {
    base = std::string(1, kLetters[static_cast<std::size_t>(i)]);
  } else {
    base = "a" + std::to_string(i + 1);
  }
  if (upper) base[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(base[0])));
  return base;
}

// Identity first, then x, X, y, Y, ...
GeneratorSet rank_generators(int rank) {
  std::vector<std::string> names{"1"};
  std::vector<Gen> inverse{0};
  for (int i = 0; i < rank; ++i) {
    const Gen pos = static_cast<Gen>(names.size());
    names.push_back(letter_name(i, false));
    names.push_back(letter_name(i, true));
    inverse.push_back(pos + 1);
    inverse.push_back(pos);
  }
  return GeneratorSet(std::move(names), std::move(inverse), 0);
}

// Generator g (> 0) of a rank generator set: axis and sign.
std::pair<int, int> axis_of(Gen g) { return {(g - 1) / 2, (g - 1) % 2 == 0 ? 1 : -1}; }

class FreeAbelianGroup final : public GroupOracle {
 public:
  explicit FreeAbelianGroup(int rank) : GroupOracle(rank_generators(rank)), rank_(rank) {}

  std::string describe() const override { return "free_abelian(" + std::to_string(rank_) + ")"; }

  std::string fingerprint(std::span<const Gen> w) const override {
    std::string out;
    for (long e : exponents(w)) out += std::to_string(e) + ',';
    return out;
  }

 protected:
  bool decide(std::span<const Gen> w) const override {
    auto e = exponents(w);
    return std::all_of(e.begin(), e.end(), [](long v) { return v == 0; });
  }

 private:
  std::vector<long> exponents(std::span<const Gen> w) const {
    std::vector<long> e(static_cast<std::size_t>(rank_), 0);
    for (Gen g : w) {
      if (g == 0) continue;
      auto [axis, sign] = axis_of(g);
      e[static_cast<std::size_t>(axis)] += sign;
    }
    return e;
  }

  int rank_;
};

class FreeGroup final : public GroupOracle {
 public:
  explicit FreeGroup(int rank) : GroupOracle(rank_generators(rank)), rank_(rank) {}

  std::string describe() const override { return "free(" + std::to_string(rank_) + ")"; }

  std::string fingerprint(std::span<const Gen> w) const override {
    std::string out;
    for (Gen g : reduce(w)) out += std::to_string(g) + ',';
    return out;
  }

 protected:
  bool decide(std::span<const Gen> w) const override { return reduce(w).empty(); }

 private:
  Word reduce(std::span<const Gen> w) const {
    Word stack;
    for (Gen g : w) {
      if (g == 0) continue;
      if (!stack.empty() && stack.back() == generators().inverse(g)) {
        stack.pop_back();
      } else {
        stack.push_back(g);
      }
    }
    return stack;
  }

  int rank_;
};

class CyclicGroup final : public GroupOracle {
 public:
  explicit CyclicGroup(int order) : GroupOracle(make_gens(order)), order_(order) {}

  std::string describe() const override { return "cyclic(" + std::to_string(order_) + ")"; }

  std::string fingerprint(std::span<const Gen> w) const override {
    return std::to_string(residue(w));
  }

 protected:
  bool decide(std::span<const Gen> w) const override { return residue(w) == 0; }

 private:
  static GeneratorSet make_gens(int order) {
    if (order < 1) raise(ErrorKind::Schema, "cyclic group order must be >= 1");
    if (order <= 2) return GeneratorSet({"1", "x"}, {0, 1}, 0);
    return GeneratorSet({"1", "x", "X"}, {0, 2, 1}, 0);
  }

  long residue(std::span<const Gen> w) const {
    long r = 0;
    for (Gen g : w) {
      if (g == 1) r += 1;
      if (g == 2) r -= 1;
    }
    r %= order_;
    if (r < 0) r += order_;
    return r;
  }

  int order_;
};

class ProductGroup final : public GroupOracle {
 public:
  ProductGroup(std::vector<GroupPtr> factors, GeneratorSet gens, std::vector<ProductLetter> letters)
      : GroupOracle(std::move(gens)), factors_(std::move(factors)), letters_(std::move(letters)) {}

  std::string describe() const override {
    std::string out = "product(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += ", ";
      out += factors_[i]->describe();
    }
    return out + ")";
  }

  std::string fingerprint(std::span<const Gen> w) const override {
    auto parts = split(w);
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out += factors_[i]->fingerprint(parts[i]);
      out += '|';
    }
    return out;
  }

  std::vector<Word> split(std::span<const Gen> w) const {
    std::vector<Word> parts(factors_.size());
    for (Gen g : w) {
      const auto& l = letters_[static_cast<std::size_t>(g)];
      if (l.local < 0) continue;
      parts[l.factor].push_back(l.local);
    }
    return parts;
  }

  const std::vector<GroupPtr>& factors() const noexcept { return factors_; }
  const std::vector<ProductLetter>& letters() const noexcept { return letters_; }

 protected:
  bool decide(std::span<const Gen> w) const override {
    auto parts = split(w);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!factors_[i]->is_identity(parts[i])) return false;
    }
    return true;
  }

 private:
  std::vector<GroupPtr> factors_;
  std::vector<ProductLetter> letters_;  // local == -1 marks the shared identity
};

}  // namespace

GroupPtr free_abelian_group(int rank) {
  if (rank < 0) raise(ErrorKind::Schema, "rank must be >= 0");
  return std::make_shared<FreeAbelianGroup>(rank);
}

GroupPtr free_group(int rank) {
  if (rank < 0) raise(ErrorKind::Schema, "rank must be >= 0");
  return std::make_shared<FreeGroup>(rank);
}

GroupPtr cyclic_group(int order) { return std::make_shared<CyclicGroup>(order); }

GroupPtr product_group(std::vector<GroupPtr> factors) {
  if (factors.empty()) raise(ErrorKind::Schema, "product needs at least one factor");
  std::vector<std::string> names{"1"};
  std::vector<Gen> inverse{0};
  std::vector<ProductLetter> letters{{0, -1}};
  std::vector<std::vector<Gen>> global(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& fg = factors[k]->generators();
    global[k].assign(fg.size(), 0);
    for (std::size_t g = 0; g < fg.size(); ++g) {
      if (static_cast<Gen>(g) == fg.identity()) continue;
      global[k][g] = static_cast<Gen>(names.size());
      names.push_back(fg.name(static_cast<Gen>(g)) + "_" + std::to_string(k + 1));
      letters.push_back({k, static_cast<Gen>(g)});
      inverse.push_back(0);
    }
  }
  for (std::size_t i = 1; i < letters.size(); ++i) {
    const auto& l = letters[i];
    inverse[i] = global[l.factor][static_cast<std::size_t>(
        factors[l.factor]->generators().inverse(l.local))];
  }
  GeneratorSet gens(std::move(names), std::move(inverse), 0);
  return std::make_shared<ProductGroup>(std::move(factors), std::move(gens), std::move(letters));
}

std::vector<Word> split_product_word(const GroupOracle& product, std::span<const Gen> w) {
  auto* p = dynamic_cast<const ProductGroup*>(&product);
  if (!p) raise(ErrorKind::Schema, "not a product group");
  product.generators().validate(w);
  return p->split(w);
}

const std::vector<GroupPtr>* product_factors(const GroupOracle& group) {
  auto* p = dynamic_cast<const ProductGroup*>(&group);
  return p ? &p->factors() : nullptr;
}

std::optional<ProductLetter> product_letter(const GroupOracle& product, Gen g) {
  auto* p = dynamic_cast<const ProductGroup*>(&product);
  if (!p || !product.generators().contains(g)) return std::nullopt;
  const auto& l = p->letters()[static_cast<std::size_t>(g)];
  if (l.local < 0) return std::nullopt;
  return l;
}

Gen product_generator(const GroupOracle& product, std::size_t factor, Gen local) {
  auto* p = dynamic_cast<const ProductGroup*>(&product);
  if (!p) raise(ErrorKind::Schema, "not a product group");
  const auto& letters = p->letters();
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i].factor == factor && letters[i].local == local) return static_cast<Gen>(i);
  }
  if (local == p->factors().at(factor)->generators().identity()) return 0;
  raise(ErrorKind::UnknownSymbol, "no such product generator");
}

}  // namespace groupshift
