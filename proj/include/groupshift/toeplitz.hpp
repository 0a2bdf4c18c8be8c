#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groupshift/effective.hpp"
#include "groupshift/groups.hpp"
#include "groupshift/shift_core.hpp"

namespace groupshift {

enum class TSym : std::uint8_t { Zero = 0, One = 1, Filler = 2 };
using TWord = std::vector<TSym>;

/// The filler prints as U+2423 (open box).
inline constexpr std::string_view kFillerGlyph = "\xE2\x90\xA3";

std::string format_tword(const TWord& w);

/// Accepts 0, 1, the open box and '_' as filler; whitespace is ignored.
/// Throws UnknownSymbol on anything else.
TWord parse_tword(std::string_view text);

/// Finite window of a layered configuration: one TSym word per generator of
/// S (indexed like the generator set), all starting at absolute `offset`.
struct LayeredWord {
  std::int64_t offset = 0;
  std::vector<TWord> layers;

  std::size_t length() const { return layers.empty() ? 0 : layers.front().size(); }
};

/// 3^n, throwing ResourceLimit on overflow past 3^39.
std::int64_t pow3(int n);

/// Index of the prefix bit shown at position j, or nullopt for filler.
std::optional<int> psi_bit_index(std::int64_t j);

/// Psi(x) at positions from .. from+len-1 given the prefix x_0..x_m. Throws
/// InsufficientPrefix when a position needs x_n with n > m.
TWord psi_encode(std::string_view prefix, std::int64_t from, std::int64_t len);

/// Shortest prefix length that psi_encode needs for the range.
int psi_required_length(std::int64_t from, std::int64_t len);

/// One step of the decoding procedure. nullopt is Reject. Throws BadLength
/// unless the length is a power of 3 that is at least 3.
std::optional<std::pair<int, TWord>> cyclic_decompose(const TWord& v);

/// Full decoding of a word of length 3^(n+1) into n+1 bits. nullopt is
/// Reject. Throws BadLength.
std::optional<std::string> decode_procedure(const TWord& w);

enum class TopVerdict { Forbidden, NotCertified };

/// Membership of a layered window of length 3^(n+1) in the forbidden family
/// of the top layer.
TopVerdict top1d_forbidden(const LayeredWord& w, const SetOracle& x, const ActionOracle& t,
                           std::uint64_t budget);

/// Decoded u(s) of depth n from the leftmost block of length 3^(n+1).
/// Throws UndecodableWindow (or BadLength when the window is too short).
std::string gamma_prefix(const LayeredWord& window, Gen s, int n);

/// Layer s encodes prefixes[s]. Throws InsufficientPrefix.
LayeredWord psi_tilde(const std::vector<std::string>& prefixes, std::int64_t from, std::int64_t len);

/// Layered symbol <-> index in {0,1,filler}^S: index = sum t_s 3^s.
int top_symbol_index(const std::vector<TSym>& column);
std::vector<TSym> top_symbol_layers(int index, std::size_t layers);

/// Nearest-neighbour stand-in for the two-dimensional top layer over
/// {0,1,filler}^S: each symbol must be all-filler or all-bit, and columns are
/// constant vertically.
NNSFT2D make_top_sft(std::size_t layers);

/// Reads a run of top-layer symbol indices as a layered word.
LayeredWord layered_from_symbols(std::span<const int> symbols, std::size_t layers,
                                 std::int64_t offset = 0);

}  // namespace groupshift
