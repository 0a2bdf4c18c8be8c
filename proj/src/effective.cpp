#include "groupshift/effective.hpp"

#include <algorithm>

#include "groupshift/errors.hpp"

namespace groupshift {

const char* to_string(Verdict v) {
  return v == Verdict::CertifiedEmpty ? "CertifiedEmpty" : "Unknown";
}

namespace {

int bits_needed(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return std::max(k, 1);
}

void require_binary(std::string_view w) {
  for (char ch : w) {
    if (ch != '0' && ch != '1') raise(ErrorKind::Schema, "binary word expected, got '" + std::string(w) + "'");
  }
}

}  // namespace

SubshiftCodec::SubshiftCodec(GroupPtr group, Alphabet alphabet)
    : group_(std::move(group)), alphabet_(std::move(alphabet)), kappa_(bits_needed(alphabet_.size())) {}

std::string SubshiftCodec::upsilon(int symbol) const {
  if (!alphabet_.contains(symbol)) raise(ErrorKind::UnknownSymbol, "symbol index " + std::to_string(symbol));
  std::string out(static_cast<std::size_t>(kappa_), '0');
  for (int b = 0; b < kappa_; ++b) {
    if ((symbol >> (kappa_ - 1 - b)) & 1) out[static_cast<std::size_t>(b)] = '1';
  }
  return out;
}

std::optional<int> SubshiftCodec::upsilon_inverse(std::string_view block) const {
  if (block.size() != static_cast<std::size_t>(kappa_)) return std::nullopt;
  int v = 0;
  for (char ch : block) {
    if (ch != '0' && ch != '1') return std::nullopt;
    v = v * 2 + (ch - '0');
  }
  if (!alphabet_.contains(v)) return std::nullopt;
  return v;
}

Word SubshiftCodec::enumeration(std::size_t n) const {
  std::lock_guard lock(mutex_);
  while (!ball_ || ball_->size() <= n) {
    const int r = ball_ ? ball_->radius() + 1 : 0;
    auto next = std::make_shared<const CayleyBall>(CayleyBall::build(group_, r));
    if (ball_ && next->size() == ball_->size()) {
      raise(ErrorKind::OutOfBall, "enumeration index " + std::to_string(n) + " exceeds the group order");
    }
    ball_ = std::move(next);
  }
  return ball_->element(static_cast<int>(n));
}

std::string rho_encode(const SubshiftCodec& codec, const CayleyBall& ball,
                       std::span<const int> values, std::size_t m) {
  std::string out;
  for (std::size_t n = 0; n <= m; ++n) {
    const Word w = codec.enumeration(n);
    auto idx = ball.find(w);
    if (!idx || values[static_cast<std::size_t>(*idx)] == kBlank) {
      raise(ErrorKind::IncompleteSupport,
            "pattern undefined at enumerated element '" + ball.generators().format(w) + "'");
    }
    out += codec.upsilon(values[static_cast<std::size_t>(*idx)]);
  }
  return out;
}

namespace {

class Budget {
 public:
  explicit Budget(std::uint64_t steps) : left_(steps) {}
  bool spend() {
    if (left_ == 0) return false;
    --left_;
    return true;
  }

 private:
  std::uint64_t left_;
};

struct Entry {
  Word word;
  int symbol;
};

enum class Step { Empty, Open, OutOfBudget };

// Decodes complete kappa-blocks of w, placing block n at place(n).
template <typename Place>
Step decode_blocks(const SubshiftCodec& codec, std::string_view w, Budget& budget,
                   std::vector<Entry>& entries, Place place) {
  const auto k = static_cast<std::size_t>(codec.kappa());
  for (std::size_t n = 0; (n + 1) * k <= w.size(); ++n) {
    if (!budget.spend()) return Step::OutOfBudget;
    auto sym = codec.upsilon_inverse(w.substr(n * k, k));
    if (!sym) return Step::Empty;
    entries.push_back({place(n), *sym});
  }
  return Step::Open;
}

// Tests (ii) and (iii) on a decoded partial pattern.
Verdict check_entries(const SubshiftCodec& codec, const std::vector<PatternCoding>& forbidden,
                      const std::vector<Entry>& entries, Budget& budget) {
  const auto& group = codec.group();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i].symbol == entries[j].symbol) continue;
      if (!budget.spend()) return Verdict::Unknown;
      if (group.equal(entries[i].word, entries[j].word)) return Verdict::CertifiedEmpty;
    }
  }
  const auto& gens = group.generators();
  for (const auto& p : forbidden) {
    if (p.empty()) return Verdict::CertifiedEmpty;
    for (const auto& anchor : entries) {
      if (anchor.symbol != p[0].second) continue;
      if (!budget.spend()) return Verdict::Unknown;
      const Word g = concat(anchor.word, gens.inverse(p[0].first));
      bool all = true;
      for (std::size_t j = 1; j < p.size() && all; ++j) {
        const Word target = concat(g, p[j].first);
        bool found = false;
        for (const auto& e : entries) {
          if (e.symbol != p[j].second) continue;
          if (!budget.spend()) return Verdict::Unknown;
          if (group.equal(e.word, target)) {
            found = true;
            break;
          }
        }
        all = found;
      }
      if (all) return Verdict::CertifiedEmpty;
    }
  }
  return Verdict::Unknown;
}

void validate_codings(const SubshiftCodec& codec, const std::vector<PatternCoding>& forbidden) {
  for (const auto& p : forbidden) {
    for (const auto& [w, sym] : p) {
      codec.group().generators().validate(w);
      if (!codec.alphabet().contains(sym)) raise(ErrorKind::UnknownSymbol, "forbidden symbol index");
    }
  }
}

class RhoSetOracle final : public SetOracle {
 public:
  RhoSetOracle(std::shared_ptr<const SubshiftCodec> codec, std::vector<PatternCoding> forbidden)
      : codec_(std::move(codec)), forbidden_(std::move(forbidden)) {
    validate_codings(*codec_, forbidden_);
  }

  Verdict query(std::string_view w, std::uint64_t budget) const override {
    require_binary(w);
    Budget b(budget);
    std::vector<Entry> entries;
    switch (decode_blocks(*codec_, w, b, entries, [&](std::size_t n) { return codec_->enumeration(n); })) {
      case Step::Empty: return Verdict::CertifiedEmpty;
      case Step::OutOfBudget: return Verdict::Unknown;
      case Step::Open: break;
    }
    return check_entries(*codec_, forbidden_, entries, b);
  }

 private:
  std::shared_ptr<const SubshiftCodec> codec_;
  std::vector<PatternCoding> forbidden_;
};

class RhoActionOracle final : public ActionOracle {
 public:
  RhoActionOracle(std::shared_ptr<const SubshiftCodec> codec, std::vector<PatternCoding> forbidden)
      : ActionOracle(codec->group().generators()), codec_(std::move(codec)), forbidden_(std::move(forbidden)) {
    validate_codings(*codec_, forbidden_);
  }

  // A point z = rho(y) lies in [w] and T^s z = rho(s·y) lies in [v]. Block n
  // of v then reads y at s^-1·enumeration(n).
  Verdict query(Gen s, std::string_view v, std::string_view w, std::uint64_t budget) const override {
    const auto& gens = generators();
    if (!gens.contains(s)) raise(ErrorKind::UnknownSymbol, "generator index " + std::to_string(s));
    require_binary(v);
    require_binary(w);
    Budget b(budget);
    std::vector<Entry> entries;
    auto st = decode_blocks(*codec_, w, b, entries, [&](std::size_t m) { return codec_->enumeration(m); });
    if (st == Step::Empty) return Verdict::CertifiedEmpty;
    if (st == Step::OutOfBudget) return Verdict::Unknown;
    const Word s_inv{gens.inverse(s)};
    st = decode_blocks(*codec_, v, b, entries,
                       [&](std::size_t n) { return concat(s_inv, codec_->enumeration(n)); });
    if (st == Step::Empty) return Verdict::CertifiedEmpty;
    if (st == Step::OutOfBudget) return Verdict::Unknown;
    return check_entries(*codec_, forbidden_, entries, b);
  }

 private:
  std::shared_ptr<const SubshiftCodec> codec_;
  std::vector<PatternCoding> forbidden_;
};

class TrivialActionOracle final : public ActionOracle {
 public:
  TrivialActionOracle(SetOraclePtr x, GeneratorSet gens) : ActionOracle(std::move(gens)), x_(std::move(x)) {}

  Verdict query(Gen s, std::string_view v, std::string_view w, std::uint64_t budget) const override {
    if (!generators().contains(s)) raise(ErrorKind::UnknownSymbol, "generator index " + std::to_string(s));
    require_binary(v);
    require_binary(w);
    const std::size_t common = std::min(v.size(), w.size());
    if (v.substr(0, common) != w.substr(0, common)) return Verdict::CertifiedEmpty;
    if (x_->query(v, budget) == Verdict::CertifiedEmpty) return Verdict::CertifiedEmpty;
    return x_->query(w, budget);
  }

 private:
  SetOraclePtr x_;
};

class ConstantSetOracle final : public SetOracle {
 public:
  explicit ConstantSetOracle(Verdict v) : v_(v) {}
  Verdict query(std::string_view w, std::uint64_t) const override {
    require_binary(w);
    return v_;
  }

 private:
  Verdict v_;
};

class ForbiddenFactorOracle final : public SetOracle {
 public:
  explicit ForbiddenFactorOracle(std::vector<std::string> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
      require_binary(f);
      width_ = std::max(width_, f.size());
    }
    if (width_ > 16) raise(ErrorKind::ResourceLimit, "forbidden factors longer than 16 bits");
    empty_factor_ = std::any_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.empty(); });
    if (width_ == 0) return;
    const std::size_t k = width_ - 1;
    const std::size_t n = std::size_t{1} << k;
    live_.assign(n, false);
    for (std::size_t st = 0; st < n; ++st) live_[st] = admissible(state_string(st, k));
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t st = 0; st < n; ++st) {
        if (!live_[st]) continue;
        bool has_next = false;
        for (char bit : {'0', '1'}) {
          const std::string ext = state_string(st, k) + bit;
          if (!admissible(ext)) continue;
          if (live_[state_index(std::string_view(ext).substr(1))]) has_next = true;
        }
        if (!has_next) {
          live_[st] = false;
          changed = true;
        }
      }
    }
  }

  Verdict query(std::string_view w, std::uint64_t) const override {
    require_binary(w);
    if (empty_factor_) return Verdict::CertifiedEmpty;
    if (width_ == 0) return Verdict::Unknown;
    if (!admissible(w)) return Verdict::CertifiedEmpty;
    const std::size_t k = width_ - 1;
    if (w.size() >= k) {
      return live_[state_index(w.substr(w.size() - k))] ? Verdict::Unknown : Verdict::CertifiedEmpty;
    }
    for (std::size_t st = 0; st < live_.size(); ++st) {
      if (live_[st] && state_string(st, k).compare(0, w.size(), w) == 0) return Verdict::Unknown;
    }
    return Verdict::CertifiedEmpty;
  }

 private:
  static std::string state_string(std::size_t st, std::size_t k) {
    std::string s(k, '0');
    for (std::size_t b = 0; b < k; ++b) {
      if ((st >> (k - 1 - b)) & 1U) s[b] = '1';
    }
    return s;
  }
  static std::size_t state_index(std::string_view s) {
    std::size_t v = 0;
    for (char ch : s) v = v * 2 + static_cast<std::size_t>(ch - '0');
    return v;
  }
  bool admissible(std::string_view w) const {
    return std::none_of(factors_.begin(), factors_.end(), [&](const std::string& f) {
      return !f.empty() && w.find(f) != std::string_view::npos;
    });
  }

  std::vector<std::string> factors_;
  std::size_t width_ = 0;
  bool empty_factor_ = false;
  std::vector<bool> live_;
};

}  // namespace

SetOraclePtr rho_set_oracle(std::shared_ptr<const SubshiftCodec> codec, std::vector<PatternCoding> forbidden) {
  return std::make_shared<RhoSetOracle>(std::move(codec), std::move(forbidden));
}

ActionOraclePtr rho_action_oracle(std::shared_ptr<const SubshiftCodec> codec,
                                  std::vector<PatternCoding> forbidden) {
  return std::make_shared<RhoActionOracle>(std::move(codec), std::move(forbidden));
}

ActionOraclePtr trivial_action_oracle(SetOraclePtr x, GeneratorSet gens) {
  return std::make_shared<TrivialActionOracle>(std::move(x), std::move(gens));
}

SetOraclePtr full_set_oracle() { return std::make_shared<ConstantSetOracle>(Verdict::Unknown); }

SetOraclePtr empty_set_oracle() { return std::make_shared<ConstantSetOracle>(Verdict::CertifiedEmpty); }

SetOraclePtr forbidden_factor_set_oracle(std::vector<std::string> factors) {
  return std::make_shared<ForbiddenFactorOracle>(std::move(factors));
}

}  // namespace groupshift
