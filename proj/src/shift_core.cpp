#include "groupshift/shift_core.hpp"

#include <algorithm>
#include <set>

#include "groupshift/errors.hpp"

namespace groupshift {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) raise(ErrorKind::Schema, "alphabet must not be empty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) raise(ErrorKind::Schema, "duplicate symbol '" + s + "'");
  }
}

std::optional<int> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  raise(ErrorKind::UnknownSymbol, "'" + std::string(name) + "' is not in the alphabet");
}

NNSFT2D NNSFT2D::full(Alphabet alphabet) {
  const std::size_t q = alphabet.size();
  NNSFT2D sft{std::move(alphabet), {}, {}};
  sft.allowed_h.assign(q, std::vector<bool>(q, true));
  sft.allowed_v.assign(q, std::vector<bool>(q, true));
  return sft;
}

void NNSFT2D::validate() const {
  const std::size_t q = alphabet.size();
  auto square = [q](const std::vector<std::vector<bool>>& m) {
    return m.size() == q && std::all_of(m.begin(), m.end(), [q](const auto& r) { return r.size() == q; });
  };
  if (!square(allowed_h) || !square(allowed_v)) {
    raise(ErrorKind::Schema, "allowed tables must be |A| x |A|");
  }
}

Patch2D::Patch2D(int x0_, int y0_, int w, int h, int fill)
    : x0(x0_), y0(y0_), width(w), height(h) {
  if (w < 0 || h < 0) raise(ErrorKind::Schema, "patch dimensions must be non-negative");
  cells.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

NNCheck check_patch_nn(const NNSFT2D& sft, const Patch2D& patch) {
  for (int c : patch.cells) {
    if (!sft.alphabet.contains(c)) {
      raise(ErrorKind::AlphabetMismatch,
            c == kBlank ? "patch contains a hole" : "symbol index " + std::to_string(c));
    }
  }
  NNCheck out;
  for (int col = 0; col < patch.width; ++col) {
    for (int row = 0; row < patch.height; ++row) {
      const int a = patch.at(col, row);
      if (col + 1 < patch.width) {
        const int b = patch.at(col + 1, row);
        if (sft.h(a, b)) {
          ++out.satisfied;
        } else {
          out.violations.push_back({patch.x0 + col, patch.y0 + row, 'h', a, b});
        }
      }
      if (row + 1 < patch.height) {
        const int b = patch.at(col, row + 1);
        if (sft.v(a, b)) {
          ++out.satisfied;
        } else {
          out.violations.push_back({patch.x0 + col, patch.y0 + row, 'v', a, b});
        }
      }
    }
  }
  return out;
}

namespace {

// True if some translate of a forbidden pattern fits inside the w x h
// rectangle `cells` (column-major) and matches.
bool contains_forbidden(const std::vector<int>& cells, int w, int h,
                        const std::vector<BlockPattern>& forbidden) {
  for (const auto& p : forbidden) {
    int pw = 0;
    int ph = 0;
    for (const auto& c : p) {
      pw = std::max(pw, c.x + 1);
      ph = std::max(ph, c.y + 1);
    }
    for (int dx = 0; dx + pw <= w; ++dx) {
      for (int dy = 0; dy + ph <= h; ++dy) {
        bool match = true;
        for (const auto& c : p) {
          if (cells[static_cast<std::size_t>((dx + c.x) * h + dy + c.y)] != c.symbol) {
            match = false;
            break;
          }
        }
        if (match) return true;
      }
    }
  }
  return false;
}

}  // namespace

HigherBlockResult higher_block_recode(const Alphabet& alphabet,
                                      const std::vector<BlockPattern>& forbidden, int k) {
  if (k < 1) raise(ErrorKind::DegenerateK, "block size must be >= 1, got " + std::to_string(k));
  for (const auto& p : forbidden) {
    int pw = 0;
    int ph = 0;
    for (const auto& c : p) {
      if (c.x < 0 || c.y < 0) raise(ErrorKind::Schema, "pattern offsets must be non-negative");
      if (!alphabet.contains(c.symbol)) raise(ErrorKind::AlphabetMismatch, "pattern symbol");
      pw = std::max(pw, c.x + 1);
      ph = std::max(ph, c.y + 1);
    }
    if (!((pw <= k && ph <= k) || (pw <= k + 1 && ph <= k) || (pw <= k && ph <= k + 1))) {
      raise(ErrorKind::Schema, "forbidden pattern does not fit the block size");
    }
  }
  const int q = static_cast<int>(alphabet.size());
  const int cells = k * k;
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) {
    total *= static_cast<std::uint64_t>(q);
    if (total > 1'000'000) raise(ErrorKind::ResourceLimit, "too many candidate blocks");
  }

  HigherBlockResult out;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> block(static_cast<std::size_t>(cells));
    std::uint64_t rest = code;
    // Most significant digit first, so blocks come out in lexicographic order.
    for (int i = cells - 1; i >= 0; --i) {
      block[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(q));
      rest /= static_cast<std::uint64_t>(q);
    }
    if (!contains_forbidden(block, k, k, forbidden)) out.blocks.push_back(std::move(block));
  }

  std::vector<std::string> names;
  for (const auto& b : out.blocks) {
    if (k == 1) {
      names.push_back(alphabet.name(b[0]));
      continue;
    }
    std::string name = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) name += ',';
      name += alphabet.name(b[i]);
    }
    names.push_back(name + "]");
  }
  const std::size_t n = out.blocks.size();
  if (n == 0) raise(ErrorKind::Schema, "no admissible block");
  out.sft.alphabet = Alphabet(std::move(names));
  out.sft.allowed_h.assign(n, std::vector<bool>(n, false));
  out.sft.allowed_v.assign(n, std::vector<bool>(n, false));
  for (const auto& b : out.blocks) out.block_map.push_back(b[0]);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = out.blocks[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& b = out.blocks[j];
      // Horizontal: b sits one column to the right of a.
      bool overlap = true;
      for (int col = 1; col < k && overlap; ++col) {
        for (int row = 0; row < k; ++row) {
          if (a[static_cast<std::size_t>(col * k + row)] !=
              b[static_cast<std::size_t>((col - 1) * k + row)]) {
            overlap = false;
            break;
          }
        }
      }
      if (overlap) {
        std::vector<int> uni(a.begin(), a.end());
        uni.insert(uni.end(), b.end() - k, b.end());
        out.sft.allowed_h[i][j] = !contains_forbidden(uni, k + 1, k, forbidden);
      }
      // Vertical: b sits one row above a.
      overlap = true;
      for (int col = 0; col < k && overlap; ++col) {
        for (int row = 1; row < k; ++row) {
          if (a[static_cast<std::size_t>(col * k + row)] !=
              b[static_cast<std::size_t>(col * k + row - 1)]) {
            overlap = false;
            break;
          }
        }
      }
      if (overlap) {
        std::vector<int> uni;
        for (int col = 0; col < k; ++col) {
          for (int row = 0; row < k; ++row) uni.push_back(a[static_cast<std::size_t>(col * k + row)]);
          uni.push_back(b[static_cast<std::size_t>(col * k + k - 1)]);
        }
        out.sft.allowed_v[i][j] = !contains_forbidden(uni, k, k + 1, forbidden);
      }
    }
  }
  return out;
}

namespace {

class ExtensionSearch {
 public:
  ExtensionSearch(const NNSFT2D& sft, Patch2D patch, std::uint64_t budget)
      : sft_(sft), p_(std::move(patch)), budget_(budget) {}

  std::optional<Patch2D> run() {
    for (int c : p_.cells) {
      if (c != kBlank && !sft_.alphabet.contains(c)) {
        raise(ErrorKind::AlphabetMismatch, "symbol index " + std::to_string(c));
      }
    }
    for (int col = 0; col < p_.width; ++col) {
      for (int row = 0; row < p_.height; ++row) {
        const int v = p_.at(col, row);
        if (v != kBlank && !fits(col, row, v)) return std::nullopt;
      }
    }
    if (solve()) return p_;
    return std::nullopt;
  }

 private:
  bool fits(int col, int row, int s) const {
    if (col > 0) {
      const int l = p_.at(col - 1, row);
      if (l != kBlank && !sft_.h(l, s)) return false;
    }
    if (col + 1 < p_.width) {
      const int r = p_.at(col + 1, row);
      if (r != kBlank && !sft_.h(s, r)) return false;
    }
    if (row > 0) {
      const int d = p_.at(col, row - 1);
      if (d != kBlank && !sft_.v(d, s)) return false;
    }
    if (row + 1 < p_.height) {
      const int u = p_.at(col, row + 1);
      if (u != kBlank && !sft_.v(s, u)) return false;
    }
    return true;
  }

  bool solve() {
    int best_col = -1;
    int best_row = -1;
    int best_count = 0;
    const int q = static_cast<int>(sft_.alphabet.size());
    for (int col = 0; col < p_.width; ++col) {
      for (int row = 0; row < p_.height; ++row) {
        if (p_.at(col, row) != kBlank) continue;
        int count = 0;
        for (int s = 0; s < q; ++s) count += fits(col, row, s);
        if (best_col < 0 || count < best_count) {
          best_col = col;
          best_row = row;
          best_count = count;
        }
      }
    }
    if (best_col < 0) return true;
    if (best_count == 0) return false;
    for (int s = 0; s < q; ++s) {
      if (!fits(best_col, best_row, s)) continue;
      if (++nodes_ > budget_) {
        raise(ErrorKind::ResourceLimit, "extension search exceeded its node budget");
      }
      p_.at(best_col, best_row) = s;
      if (solve()) return true;
    }
    p_.at(best_col, best_row) = kBlank;
    return false;
  }

  const NNSFT2D& sft_;
  Patch2D p_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Patch2D> patch_extension_search(const NNSFT2D& sft, const Patch2D& partial,
                                              std::uint64_t node_budget) {
  return ExtensionSearch(sft, partial, node_budget).run();
}

bool pattern_occurs(const CayleyBall& ball, std::span<const int> values, const Pattern& p, int at) {
  const Word& base = ball.element(at);
  for (const auto& [h, symbol] : p.cells) {
    auto idx = ball.find(concat(base, h));
    if (!idx) raise(ErrorKind::OutOfBall, "translate of '" + ball.generators().format(h) + "' leaves the ball");
    if (values[static_cast<std::size_t>(*idx)] != symbol) return false;
  }
  return true;
}

}  // namespace groupshift
