#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "groupshift/aperiodic.hpp"
#include "groupshift/effective.hpp"
#include "groupshift/final_assembly.hpp"
#include "groupshift/grid.hpp"
#include "groupshift/groups.hpp"
#include "groupshift/shift_core.hpp"

namespace groupshift {

using json = nlohmann::json;

inline constexpr const char* kSchema = "groupshift/1";

/// Parses a JSON file. Throws Schema naming the file on I/O or syntax errors.
json read_json_file(const std::string& path);

/// {"kind":"free_abelian","rank":d} | {"kind":"free","rank":r} |
/// {"kind":"cyclic","order":n} | {"kind":"grigorchuk"} |
/// {"kind":"mealy","states":[..],"transition":[[..],..],"output":[[..],..],"generators":[..]} |
/// {"kind":"product","factors":[..]}.
GroupPtr load_group(const json& j, const std::string& where = "group");

/// {"alphabet":[..],"allowed_h":[[a,b],..],"allowed_v":[[a,b],..]}
NNSFT2D load_nn_sft(const json& j, const std::string& where = "sft");

/// {"alphabet":[..],"allowed":[[a,b],..]}
ZSFT load_zsft(const json& j, const std::string& where = "sft");

/// {"origin":[x,y],"rows":[..]} with rows listed top to bottom. A row is an
/// array of symbol names (null for a hole) or a string of one-character
/// symbols where '.' is a hole.
Patch2D load_patch2d(const json& j, const Alphabet& alphabet, const std::string& where = "patch");
json patch2d_to_json(const Patch2D& p, const Alphabet& alphabet);

struct SubshiftSpec {
  json group_json;
  GroupPtr group;
  Alphabet alphabet;
  std::vector<PatternCoding> forbidden;
  std::shared_ptr<const SubshiftCodec> codec;
};

/// {"group":..,"alphabet":[..],"forbidden":[[["word",symbol],..],..]}
SubshiftSpec load_subshift(const json& j, const std::string& where = "subshift");

/// {"group":..,"radius":N,"labels":{"<word>":["left","right"],..}}
GridPatch load_grid_patch(const json& j, const std::string& where = "grid");
json grid_patch_to_json(const GridPatch& p, const json& group_json);

/// {"group":..,"radius":N,"k":K,"colors":{"<word>":c,..}}
ColoredBall load_coloring(const json& j, const std::string& where = "coloring");
json coloring_to_json(const ColoredBall& cb, const json& group_json);

/// Values given per canonical word; missing words stay kBlank.
std::vector<int> load_ball_values(const json& values, const CayleyBall& ball, const Alphabet& alphabet,
                                  const std::string& where);

struct FinalSetup {
  json ctx_json;
  FactorContext ctx;
  std::shared_ptr<SubshiftSpec> subshift;  // null for the trivial system
};

/// Final context: {"system":{"kind":"rho","subshift":..} |
/// {"kind":"trivial","group":..,"forbid":[..],"kappa":k}, "budget":N, "witness":{..}}
FinalSetup load_final_context(const json& j, const std::string& where = "ctx");

FinalPatch load_final_patch(const json& j, const FactorContext& ctx, const std::string& where = "patch");
json final_patch_to_json(const FinalPatch& p, const FactorContext& ctx, const json& g_json, const json& h1_json,
                         const json& h2_json);

/// Builds the witness described by the context's "witness" block.
FinalPatch build_witness(const FinalSetup& setup, json* patch_json = nullptr, std::vector<int>* original = nullptr);

/// Original configuration values on the G-ball named by the witness block.
std::vector<int> witness_original(const FinalSetup& setup, const CayleyBall& g_ball);

}  // namespace groupshift
