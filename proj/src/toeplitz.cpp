#include "groupshift/toeplitz.hpp"

#include <algorithm>
#include <cctype>

#include "groupshift/errors.hpp"

namespace groupshift {

std::string format_tword(const TWord& w) {
  std::string out;
  for (TSym t : w) {
    if (t == TSym::Filler) {
      out += kFillerGlyph;
    } else {
      out += t == TSym::One ? '1' : '0';
    }
  }
  return out;
}

TWord parse_tword(std::string_view text) {
  TWord out;
  for (std::size_t i = 0; i < text.size();) {
    const char ch = text[i];
    if (text.substr(i, kFillerGlyph.size()) == kFillerGlyph) {
      out.push_back(TSym::Filler);
      i += kFillerGlyph.size();
      continue;
    }
    if (ch == '0' || ch == '1') {
      out.push_back(ch == '1' ? TSym::One : TSym::Zero);
    } else if (ch == '_') {
      out.push_back(TSym::Filler);
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      raise(ErrorKind::UnknownSymbol, "'" + std::string(1, ch) + "' is not 0, 1 or a filler");
    }
    ++i;
  }
  return out;
}

std::int64_t pow3(int n) {
  if (n < 0 || n > 39) raise(ErrorKind::ResourceLimit, "3^" + std::to_string(n) + " out of range");
  std::int64_t v = 1;
  for (int i = 0; i < n; ++i) v *= 3;
  return v;
}

std::optional<int> psi_bit_index(std::int64_t j) {
  if (j == 0) return std::nullopt;
  int n = 0;
  while (j % 3 == 0) {
    j /= 3;
    ++n;
  }
  const std::int64_t r = ((j % 3) + 3) % 3;
  if (r == 1) return n;
  return std::nullopt;
}

TWord psi_encode(std::string_view prefix, std::int64_t from, std::int64_t len) {
  for (char ch : prefix) {
    if (ch != '0' && ch != '1') raise(ErrorKind::Schema, "prefix must be binary");
  }
  if (len < 0) raise(ErrorKind::Schema, "negative length");
  TWord out;
  out.reserve(static_cast<std::size_t>(len));
  for (std::int64_t j = from; j < from + len; ++j) {
    auto n = psi_bit_index(j);
    if (!n) {
      out.push_back(TSym::Filler);
      continue;
    }
    if (static_cast<std::size_t>(*n) >= prefix.size()) {
      raise(ErrorKind::InsufficientPrefix, "position " + std::to_string(j) + " needs x_" +
                                               std::to_string(*n) + " but the prefix has " +
                                               std::to_string(prefix.size()) + " bits");
    }
    out.push_back(prefix[static_cast<std::size_t>(*n)] == '1' ? TSym::One : TSym::Zero);
  }
  return out;
}

int psi_required_length(std::int64_t from, std::int64_t len) {
  int need = 0;
  for (std::int64_t j = from; j < from + len; ++j) {
    if (auto n = psi_bit_index(j)) need = std::max(need, *n + 1);
  }
  return need;
}

namespace {

bool is_power_of_three(std::size_t n) {
  if (n == 0) return false;
  while (n % 3 == 0) n /= 3;
  return n == 1;
}

}  // namespace

std::optional<std::pair<int, TWord>> cyclic_decompose(const TWord& v) {
  if (v.size() < 3 || !is_power_of_three(v.size())) {
    raise(ErrorKind::BadLength, "length " + std::to_string(v.size()) + " is not a power of 3 >= 3");
  }
  for (std::size_t r = 0; r < 3; ++r) {
    const TSym b = v[(r + 1) % 3];
    if (b == TSym::Filler) continue;
    bool ok = true;
    for (std::size_t i = 0; i < v.size() && ok; ++i) {
      const std::size_t phase = (i + 3 - r) % 3;
      if (phase == 1 && v[i] != b) ok = false;
      if (phase == 2 && v[i] != TSym::Filler) ok = false;
    }
    if (!ok) continue;
    TWord residues;
    for (std::size_t i = r; i < v.size(); i += 3) residues.push_back(v[i]);
    return std::make_pair(b == TSym::One ? 1 : 0, std::move(residues));
  }
  return std::nullopt;
}

std::optional<std::string> decode_procedure(const TWord& w) {
  if (w.size() < 3 || !is_power_of_three(w.size())) {
    raise(ErrorKind::BadLength, "length " + std::to_string(w.size()) + " is not a power of 3 >= 3");
  }
  std::string u;
  TWord cur = w;
  while (cur.size() >= 3) {
    auto step = cyclic_decompose(cur);
    if (!step) return std::nullopt;
    u.push_back(step->first ? '1' : '0');
    cur = std::move(step->second);
  }
  return u;
}

TopVerdict top1d_forbidden(const LayeredWord& w, const SetOracle& x, const ActionOracle& t,
                           std::uint64_t budget) {
  const auto& gens = t.generators();
  if (w.layers.size() != gens.size()) {
    raise(ErrorKind::AlphabetMismatch, "layer count differs from the generator count");
  }
  std::vector<std::string> u;
  for (const auto& layer : w.layers) {
    auto d = decode_procedure(layer);
    if (!d) return TopVerdict::Forbidden;
    u.push_back(std::move(*d));
  }
  const std::string& base = u[static_cast<std::size_t>(gens.identity())];
  for (std::size_t s = 0; s < u.size(); ++s) {
    if (x.query(u[s], budget) == Verdict::CertifiedEmpty) return TopVerdict::Forbidden;
    if (t.query(static_cast<Gen>(s), u[s], base, budget) == Verdict::CertifiedEmpty) {
      return TopVerdict::Forbidden;
    }
  }
  return TopVerdict::NotCertified;
}

std::string gamma_prefix(const LayeredWord& window, Gen s, int n) {
  if (s < 0 || static_cast<std::size_t>(s) >= window.layers.size()) {
    raise(ErrorKind::UnknownSymbol, "no layer for generator index " + std::to_string(s));
  }
  const auto len = static_cast<std::size_t>(pow3(n + 1));
  const auto& layer = window.layers[static_cast<std::size_t>(s)];
  if (layer.size() < len) {
    raise(ErrorKind::BadLength, "window of length " + std::to_string(layer.size()) +
                                    " is shorter than " + std::to_string(len));
  }
  auto d = decode_procedure(TWord(layer.begin(), layer.begin() + static_cast<std::ptrdiff_t>(len)));
  if (!d) raise(ErrorKind::UndecodableWindow, "layer " + std::to_string(s) + " does not decode");
  return *d;
}

LayeredWord psi_tilde(const std::vector<std::string>& prefixes, std::int64_t from, std::int64_t len) {
  LayeredWord out;
  out.offset = from;
  for (const auto& p : prefixes) {
    if (p.size() != prefixes.front().size()) raise(ErrorKind::Schema, "prefixes differ in length");
    out.layers.push_back(psi_encode(p, from, len));
  }
  return out;
}

int top_symbol_index(const std::vector<TSym>& column) {
  int idx = 0;
  int scale = 1;
  for (TSym t : column) {
    idx += static_cast<int>(t) * scale;
    scale *= 3;
  }
  return idx;
}

std::vector<TSym> top_symbol_layers(int index, std::size_t layers) {
  std::vector<TSym> out(layers);
  for (std::size_t s = 0; s < layers; ++s) {
    out[s] = static_cast<TSym>(index % 3);
    index /= 3;
  }
  return out;
}

NNSFT2D make_top_sft(std::size_t layers) {
  if (layers == 0 || layers > 8) raise(ErrorKind::ResourceLimit, "top layer supports 1..8 generators");
  int q = 1;
  for (std::size_t i = 0; i < layers; ++i) q *= 3;
  std::vector<std::string> names;
  std::vector<bool> uniform(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    const auto col = top_symbol_layers(i, layers);
    std::string name;
    for (TSym t : col) name += format_tword({t});
    names.push_back(name);
    const bool filler = col.front() == TSym::Filler;
    uniform[static_cast<std::size_t>(i)] =
        std::all_of(col.begin(), col.end(), [&](TSym t) { return (t == TSym::Filler) == filler; });
  }
  NNSFT2D sft{Alphabet(std::move(names)), {}, {}};
  const auto n = static_cast<std::size_t>(q);
  sft.allowed_h.assign(n, std::vector<bool>(n, false));
  sft.allowed_v.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      sft.allowed_h[a][b] = uniform[a] && uniform[b];
    }
    sft.allowed_v[a][a] = uniform[a];
  }
  return sft;
}

LayeredWord layered_from_symbols(std::span<const int> symbols, std::size_t layers, std::int64_t offset) {
  LayeredWord out;
  out.offset = offset;
  out.layers.assign(layers, TWord{});
  for (int sym : symbols) {
    const auto col = top_symbol_layers(sym, layers);
    for (std::size_t s = 0; s < layers; ++s) out.layers[s].push_back(col[s]);
  }
  return out;
}

}  // namespace groupshift
