#include "groupshift/mealy.hpp"

#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

#include "groupshift/errors.hpp"

namespace groupshift {

std::optional<MealyAutomaton::State> MealyAutomaton::find(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == name) return static_cast<State>(i);
  }
  return std::nullopt;
}

void MealyAutomaton::validate() const {
  if (states.empty()) raise(ErrorKind::Schema, "mealy automaton without states");
  if (transition.size() != states.size() || output.size() != states.size()) {
    raise(ErrorKind::Schema, "mealy automaton tables do not match the state list");
  }
  for (std::size_t q = 0; q < states.size(); ++q) {
    const auto& o = output[q];
    if (!((o[0] == 0 && o[1] == 1) || (o[0] == 1 && o[1] == 0))) {
      raise(ErrorKind::Schema, "state '" + states[q] + "' does not permute {0,1}");
    }
    for (State t : transition[q]) {
      if (t < 0 || static_cast<std::size_t>(t) >= states.size()) {
        raise(ErrorKind::Schema, "state '" + states[q] + "' has a dangling transition");
      }
    }
  }
}

namespace {

struct Letter {
  MealyAutomaton::State state;
  bool inverted;
  auto operator<=>(const Letter&) const = default;
};

using LetterWord = std::vector<Letter>;

// Applies letters right to left to a bit string in place.
void apply_letters(const MealyAutomaton& m, const LetterWord& letters, std::string& bits) {
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    auto q = it->state;
    for (char& ch : bits) {
      const int y = ch - '0';
      const int out = m.output[static_cast<std::size_t>(q)][static_cast<std::size_t>(y)];
      ch = static_cast<char>('0' + out);
      // Binary permutations are involutions, so q^-1 reads the output bit.
      q = m.transition[static_cast<std::size_t>(q)][static_cast<std::size_t>(it->inverted ? out : y)];
    }
  }
}

std::vector<std::string> level_strings(int depth) {
  std::vector<std::string> out;
  const std::size_t n = std::size_t{1} << depth;
  out.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::string s(static_cast<std::size_t>(depth), '0');
    for (int b = 0; b < depth; ++b) {
      if (v >> (depth - 1 - b) & 1U) s[static_cast<std::size_t>(b)] = '1';
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string level_fingerprint(const MealyAutomaton& m, const LetterWord& letters, int depth) {
  std::string out;
  for (auto s : level_strings(depth)) {
    apply_letters(m, letters, s);
    out += s;
  }
  return out;
}

// States acting as the identity: greatest set closed under "output is the
// identity permutation and both successors are in the set".
std::vector<bool> trivial_states(const MealyAutomaton& m) {
  std::vector<bool> trivial(m.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < m.size(); ++q) {
      if (!trivial[q]) continue;
      const bool ok = !m.swaps(static_cast<int>(q)) &&
                      trivial[static_cast<std::size_t>(m.transition[q][0])] &&
                      trivial[static_cast<std::size_t>(m.transition[q][1])];
      if (!ok) {
        trivial[q] = false;
        changed = true;
      }
    }
  }
  return trivial;
}

class MealyGroup final : public GroupOracle {
 public:
  MealyGroup(MealyAutomaton m, GeneratorSet gens, std::vector<LetterWord> expansion)
      : GroupOracle(std::move(gens)),
        m_(std::move(m)),
        expansion_(std::move(expansion)),
        trivial_(trivial_states(m_)) {}

  std::string describe() const override {
    return "mealy(" + std::to_string(m_.size()) + " states)";
  }

  std::string fingerprint(std::span<const Gen> w) const override {
    return level_fingerprint(m_, expand(w), 8);
  }

 protected:
  bool decide(std::span<const Gen> w) const override {
    std::set<LetterWord> seen;
    std::deque<LetterWord> queue;
    auto push = [&](LetterWord word) {
      word = reduce(word);
      if (seen.insert(word).second) queue.push_back(std::move(word));
    };
    push(expand(w));
    while (!queue.empty()) {
      LetterWord word = std::move(queue.front());
      queue.pop_front();
      if (word.empty()) continue;
      if (seen.size() > kSectionBudget) {
        raise(ErrorKind::ResourceLimit, "section exploration exceeded budget");
      }
      std::array<LetterWord, 2> sections;
      for (int x = 0; x < 2; ++x) {
        int y = x;
        LetterWord sec;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
          const auto q = static_cast<std::size_t>(it->state);
          const int out = m_.output[q][static_cast<std::size_t>(y)];
          sec.push_back({m_.transition[q][static_cast<std::size_t>(it->inverted ? out : y)],
                         it->inverted});
          y = out;
        }
        if (y != x) return false;
        sections[static_cast<std::size_t>(x)] = LetterWord(sec.rbegin(), sec.rend());
      }
      push(std::move(sections[0]));
      push(std::move(sections[1]));
    }
    return true;
  }

 private:
  static constexpr std::size_t kSectionBudget = 1'000'000;

  LetterWord expand(std::span<const Gen> w) const {
    LetterWord out;
    for (Gen g : w) {
      const auto& e = expansion_[static_cast<std::size_t>(g)];
      out.insert(out.end(), e.begin(), e.end());
    }
    return out;
  }

  LetterWord reduce(const LetterWord& word) const {
    LetterWord stack;
    for (const auto& l : word) {
      if (trivial_[static_cast<std::size_t>(l.state)]) continue;
      if (!stack.empty() && stack.back().state == l.state && stack.back().inverted != l.inverted) {
        stack.pop_back();
      } else {
        stack.push_back(l);
      }
    }
    return stack;
  }

  MealyAutomaton m_;
  std::vector<LetterWord> expansion_;
  std::vector<bool> trivial_;
};

// Letters of the Grigorchuk group: 0 = identity, 1 = a, and b, c, d encoded
// as 2 + k for the Klein four-group element k in {1, 2, 3} (b=1, c=2, d=3).
constexpr int kA = 1;
constexpr int kB = 3;
constexpr int kC = 4;
constexpr int kD = 5;

bool is_klein(int l) { return l >= kB; }
int klein_code(int l) { return l - 2; }

class GrigorchukGroup final : public GroupOracle {
 public:
  GrigorchukGroup()
      : GroupOracle(GeneratorSet({"1", "a", "b", "c", "d"}, {0, 1, 2, 3, 4}, 0)) {}

  std::string describe() const override { return "grigorchuk"; }

  std::string fingerprint(std::span<const Gen> w) const override {
    LetterWord letters;
    for (Gen g : w) {
      if (g == 0) continue;
      letters.push_back({g - 1, false});  // automaton states a, b, c, d come first
    }
    return level_fingerprint(grigorchuk_automaton(), letters, 8);
  }

 protected:
  bool decide(std::span<const Gen> w) const override {
    std::string word;
    for (Gen g : w) {
      static constexpr int kMap[] = {0, kA, kB, kC, kD};
      word.push_back(static_cast<char>(kMap[g]));
    }
    return trivial(reduce(word));
  }

 private:
  // Free reduction using a^2 = 1 and the Klein group {1, b, c, d}.
  static std::string reduce(const std::string& word) {
    std::string stack;
    for (char ch : word) {
      int l = ch;
      if (l == 0) continue;
      if (stack.empty()) {
        stack.push_back(static_cast<char>(l));
        continue;
      }
      int top = stack.back();
      if (l == kA) {
        if (top == kA) {
          stack.pop_back();
        } else {
          stack.push_back(static_cast<char>(l));
        }
      } else if (is_klein(top)) {
        const int k = klein_code(top) ^ klein_code(l);
        stack.pop_back();
        if (k) stack.push_back(static_cast<char>(k + 2));
      } else {
        stack.push_back(static_cast<char>(l));
      }
    }
    return stack;
  }

  bool trivial(const std::string& word) const {
    if (word.empty()) return true;
    if (word.size() == 1) return false;
    std::size_t a_count = 0;
    for (char ch : word) a_count += (ch == kA);
    if (a_count % 2) return false;
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(word); it != memo_.end()) return it->second;
    }
    // Sections: a has trivial sections and swaps; b = (a, c), c = (a, d), d = (1, b).
    std::array<std::string, 2> sections;
    for (int x = 0; x < 2; ++x) {
      int y = x;
      std::string sec;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const int l = *it;
        if (l == kA) {
          y ^= 1;
          continue;
        }
        int s = 0;
        if (l == kB) s = (y == 0) ? kA : kC;
        if (l == kC) s = (y == 0) ? kA : kD;
        if (l == kD) s = (y == 0) ? 0 : kB;
        if (s) sec.push_back(static_cast<char>(s));
      }
      sections[static_cast<std::size_t>(x)] = reduce(std::string(sec.rbegin(), sec.rend()));
    }
    const bool result = trivial(sections[0]) && trivial(sections[1]);
    std::lock_guard lock(mutex_);
    memo_.emplace(word, result);
    return result;
  }

  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, bool> memo_;
};

}  // namespace

std::string mealy_apply(const MealyAutomaton& m, std::span<const MealyAutomaton::State> state_word,
                        std::string_view bits) {
  LetterWord letters;
  for (auto q : state_word) {
    if (q < 0 || static_cast<std::size_t>(q) >= m.size()) {
      raise(ErrorKind::UnknownSymbol, "state index " + std::to_string(q));
    }
    letters.push_back({q, false});
  }
  std::string out(bits);
  for (char ch : out) {
    if (ch != '0' && ch != '1') raise(ErrorKind::Schema, "input must be a binary string");
  }
  apply_letters(m, letters, out);
  return out;
}

std::vector<std::string> level_action(const MealyAutomaton& m,
                                      std::span<const MealyAutomaton::State> state_word, int depth) {
  LetterWord letters;
  for (auto q : state_word) letters.push_back({q, false});
  auto strings = level_strings(depth);
  for (auto& s : strings) apply_letters(m, letters, s);
  return strings;
}

const MealyAutomaton& grigorchuk_automaton() {
  static const MealyAutomaton m = [] {
    MealyAutomaton a;
    a.states = {"a", "b", "c", "d", "e"};
    // a swaps and goes to e; b = (a, c); c = (a, d); d = (e, b); e is the identity.
    a.transition = {{4, 4}, {0, 2}, {0, 3}, {4, 1}, {4, 4}};
    a.output = {{1, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};
    return a;
  }();
  return m;
}

GroupPtr mealy_group(MealyAutomaton m, std::vector<std::vector<MealyAutomaton::State>> generators) {
  m.validate();
  std::vector<std::string> names{"1"};
  std::vector<Gen> inverse{0};
  std::vector<LetterWord> expansion{{}};
  for (const auto& word : generators) {
    if (word.empty()) raise(ErrorKind::Schema, "empty generator word");
    std::string name;
    LetterWord e;
    for (auto q : word) {
      if (q < 0 || static_cast<std::size_t>(q) >= m.size()) {
        raise(ErrorKind::Schema, "generator uses an unknown state");
      }
      name += m.states[static_cast<std::size_t>(q)];
      e.push_back({q, false});
    }
    LetterWord inv;
    for (auto it = e.rbegin(); it != e.rend(); ++it) inv.push_back({it->state, true});
    // A generator is an involution when its square acts trivially.
    LetterWord square = e;
    square.insert(square.end(), e.begin(), e.end());
    const Gen pos = static_cast<Gen>(names.size());
    names.push_back(name);
    expansion.push_back(e);
    inverse.push_back(pos);
    {
      MealyGroup probe(m, GeneratorSet({"1", "g"}, {0, 1}, 0), {{}, square});
      const Word two{1};
      if (!probe.is_identity(two)) {
        inverse.back() = pos + 1;
        names.push_back(name + "^-1");
        expansion.push_back(inv);
        inverse.push_back(pos);
      }
    }
  }
  GeneratorSet gens(std::move(names), std::move(inverse), 0);
  return std::make_shared<MealyGroup>(std::move(m), std::move(gens), std::move(expansion));
}

GroupPtr grigorchuk_group() { return std::make_shared<GrigorchukGroup>(); }

}  // namespace groupshift
