#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "groupshift/aperiodic.hpp"
#include "groupshift/descriptors.hpp"
#include "groupshift/errors.hpp"
#include "groupshift/final_assembly.hpp"
#include "groupshift/grid.hpp"
#include "groupshift/toeplitz.hpp"

using namespace groupshift;

namespace {

struct Global {
  std::string emit;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string out;
};

// Report plus exit status; status 1 still prints the report.
struct Outcome {
  json report;
  std::string text;
  std::string dot;
  int status = 0;
};

json counts(std::size_t violations, std::size_t satisfied, std::size_t unchecked) {
  return {{"violations", violations}, {"satisfied", satisfied}, {"unchecked", unchecked}};
}

json report_head(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Schema, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::Schema, path + ": cannot write file");
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Plain-text rendering of a report, used when no command-specific text exists.
void render_text(const json& j, const std::string& indent, std::ostream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "schema") continue;
    if (it->is_object()) {
      os << indent << it.key() << ":\n";
      render_text(*it, indent + "  ", os);
    } else if (it->is_array() && !it->empty() && (it->front().is_object())) {
      os << indent << it.key() << ": " << it->size() << "\n";
      for (const auto& e : *it) os << indent << "  - " << e.dump() << "\n";
    } else {
      os << indent << it.key() << ": " << it->dump() << "\n";
    }
  }
}

void emit(const Global& g, const Outcome& o, const std::string& fallback) {
  std::string mode = g.emit.empty() ? fallback : g.emit;
  std::string body;
  if (mode == "dot") {
    if (o.dot.empty()) raise(ErrorKind::Schema, "--emit dot: this command has no graph output");
    body = o.dot;
  } else if (mode == "text") {
    if (!o.text.empty()) {
      body = o.text;
    } else {
      std::ostringstream os;
      render_text(o.report, "", os);
      body = os.str();
    }
  } else {
    body = dump(o.report);
  }
  if (g.out.empty()) {
    std::cout << body;
  } else {
    write_text_file(g.out, body);
  }
}

GroupPtr group_file(const std::string& path, json* j = nullptr) {
  json d = read_json_file(path);
  if (j) *j = d;
  return load_group(d, path);
}

json grid_report_json(const GridReport& r, const CayleyBall& ball) {
  auto rec = [&](const GridRecord& x) {
    return json{{"element", ball.label(x.element)}, {"generator", ball.generators().name(x.generator)},
                {"side", std::string(1, x.side)}};
  };
  json v = json::array();
  for (const auto& x : r.violations) v.push_back(rec(x));
  json u = json::array();
  for (const auto& x : r.unchecked) u.push_back(rec(x));
  return {{"violations", v}, {"unchecked_records", u},
          {"counts", counts(r.violations.size(), r.satisfied, r.unchecked.size())}};
}

// --- ball / wp ------------------------------------------------------------

Outcome cmd_ball(const std::string& group_path, int radius, const std::string& dot_path) {
  auto ball = CayleyBall::build(group_file(group_path), radius);
  Outcome o;
  o.report = report_head("ball");
  o.report["group"] = ball.group().describe();
  o.report["radius"] = radius;
  o.report["size"] = ball.size();
  json elems = json::array();
  json sizes = json::array();
  for (int i = 0; i < static_cast<int>(ball.size()); ++i) {
    elems.push_back(ball.label(i));
    const auto d = static_cast<std::size_t>(ball.distance(i));
    if (sizes.size() <= d) sizes.push_back(0);
    sizes[d] = sizes[d].get<std::size_t>() + 1;
  }
  o.report["sphere_sizes"] = sizes;
  o.report["elements"] = elems;
  o.dot = ball.to_dot();
  if (!dot_path.empty()) write_text_file(dot_path, o.dot);
  std::ostringstream t;
  t << ball.group().describe() << " radius " << radius << ": " << ball.size() << " elements\n";
  o.text = t.str();
  return o;
}

Outcome cmd_wp(const std::string& group_path, const std::string& word) {
  auto group = group_file(group_path);
  Word w = group->generators().parse(word);
  const bool id = word_problem(*group, w) == WordClass::Identity;
  Outcome o;
  o.report = report_head("wp");
  o.report["word"] = group->generators().format(w);
  o.report["result"] = id ? "identity" : "not_identity";
  o.text = std::string(id ? "identity" : "not identity") + "\n";
  return o;
}

// --- nn ---------------------------------------------------------------------

Outcome cmd_nn(bool extend, const std::string& sft_path, const std::string& patch_path) {
  NNSFT2D sft = load_nn_sft(read_json_file(sft_path), sft_path);
  Patch2D patch = load_patch2d(read_json_file(patch_path), sft.alphabet, patch_path);
  Outcome o;
  if (extend) {
    auto result = patch_extension_search(sft, patch);
    o.report = report_head("nn extend");
    if (result) {
      o.report["status"] = "extended";
      o.report["patch"] = patch2d_to_json(*result, sft.alphabet);
    } else {
      o.report["status"] = "fail";
      o.report["patch"] = nullptr;
      o.status = 1;
    }
    return o;
  }
  NNCheck check = check_patch_nn(sft, patch);
  o.report = report_head("nn check");
  json v = json::array();
  for (const auto& x : check.violations) {
    v.push_back({{"x", x.x}, {"y", x.y}, {"direction", std::string(1, x.direction)},
                 {"pair", {sft.alphabet.name(x.first), sft.alphabet.name(x.second)}}});
  }
  o.report["violations"] = v;
  o.report["counts"] = counts(check.violations.size(), check.satisfied, 0);
  o.status = check.violations.empty() ? 0 : 1;
  return o;
}

// --- oracle -----------------------------------------------------------------

Outcome cmd_oracle(const std::string& subshift_path, const std::string& word, std::uint64_t budget) {
  auto spec = load_subshift(read_json_file(subshift_path), subshift_path);
  auto oracle = rho_set_oracle(spec.codec, spec.forbidden);
  const Verdict v = oracle->query(word, budget);
  Outcome o;
  o.report = report_head("oracle query");
  o.report["word"] = word;
  o.report["budget"] = budget;
  o.report["verdict"] = to_string(v);
  o.text = std::string(to_string(v)) + "\n";
  return o;
}

// --- toeplitz ---------------------------------------------------------------

Outcome cmd_toeplitz_encode(const std::string& prefix, std::int64_t from, std::int64_t len) {
  const TWord w = psi_encode(prefix, from, len);
  Outcome o;
  o.report = report_head("toeplitz encode");
  o.report["prefix"] = prefix;
  o.report["from"] = from;
  o.report["word"] = format_tword(w);
  o.text = format_tword(w) + "\n";
  return o;
}

Outcome cmd_toeplitz_decode(const std::string& path) {
  const std::string content = read_text_file(path);
  Outcome o;
  o.report = report_head("toeplitz decode");
  // A JSON object is a layered word {"s": "word", ...}; anything else is one word.
  json layered = json::parse(content, nullptr, false);
  if (layered.is_object()) {
    json result = json::object();
    std::ostringstream t;
    for (auto it = layered.begin(); it != layered.end(); ++it) {
      if (!it->is_string()) raise(ErrorKind::Schema, path + "." + it.key() + ": expected a word string");
      auto bits = decode_procedure(parse_tword(it->get<std::string>()));
      result[it.key()] = bits ? json(*bits) : json(nullptr);
      t << it.key() << ": " << (bits ? *bits : "reject") << "\n";
      if (!bits) o.status = 1;
    }
    o.report["decoded"] = result;
    o.text = t.str();
    return o;
  }
  auto bits = decode_procedure(parse_tword(content));
  o.report["decoded"] = bits ? json(*bits) : json(nullptr);
  o.text = (bits ? *bits : std::string("reject")) + "\n";
  o.status = bits ? 0 : 1;
  return o;
}

// --- grid -------------------------------------------------------------------

Outcome cmd_grid_check(const std::string& path) {
  GridPatch p = load_grid_patch(read_json_file(path), path);
  GridReport r = check_grid_local(p);
  Outcome o;
  o.report = report_head("grid check");
  o.report.update(grid_report_json(r, *p.ball));
  o.status = r.violations.empty() ? 0 : 1;
  return o;
}

Outcome cmd_grid_trace(const std::string& path, const std::string& from, std::size_t steps) {
  GridPatch p = load_grid_patch(read_json_file(path), path);
  auto start = p.ball->find(p.ball->generators().parse(from));
  if (!start) raise(ErrorKind::OutOfBall, "--from '" + from + "' is outside the ball");
  OrbitTrace t = orbit_trace(p, *start, steps);
  Outcome o;
  o.report = report_head("grid trace");
  o.report["kind"] = to_string(t.kind);
  json path_json = json::array();
  for (int h : t.path) path_json.push_back(p.ball->label(h));
  o.report["path"] = path_json;
  o.report["cycle_length"] = t.cycle_length;
  return o;
}

Outcome cmd_grid_cover(const Global& g, const std::string& group_path, int radius, int margin, int restarts) {
  json gj;
  auto group = group_file(group_path, &gj);
  auto ball = std::make_shared<const CayleyBall>(CayleyBall::build(group, radius));
  auto result = path_cover_search(ball, margin, g.seed, restarts);
  Outcome o;
  o.report = report_head("grid cover");
  if (auto* f = std::get_if<PathCoverFailure>(&result)) {
    o.report["status"] = "fail";
    o.report["diagnosis"] = f->diagnosis;
    o.dot = path_cover_dot(f->best);
    o.text = "fail: " + f->diagnosis + "\n";
    o.status = 1;
    return o;
  }
  const auto& cover = std::get<PathCover>(result);
  PathCoverCheck check = verify_path_cover(cover, margin);
  o.report = grid_patch_to_json(from_translation_action(cover), gj);
  o.report["command"] = "grid cover";
  o.report["status"] = check.ok() ? "ok" : "invalid";
  o.report["problems"] = check.problems;
  o.dot = path_cover_dot(cover);
  o.status = check.ok() ? 0 : 1;
  return o;
}

Outcome cmd_grid_seed(const std::string& grid1, const std::string& grid2, const std::string& sft_path,
                      const std::string& config_path) {
  ProductGridPatch omega{load_grid_patch(read_json_file(grid1), grid1), load_grid_patch(read_json_file(grid2), grid2)};
  NNSFT2D sft = load_nn_sft(read_json_file(sft_path), sft_path);
  Patch2D c = load_patch2d(read_json_file(config_path), sft.alphabet, config_path);
  std::string reason;
  auto y = seed_grid_from_config(omega, c, &reason);
  Outcome o;
  o.report = report_head("grid seed");
  if (auto dom = seed_domain(omega)) {
    o.report["domain"] = {{"x0", dom->x0}, {"y0", dom->y0}, {"width", dom->width}, {"height", dom->height}};
  }
  if (!y) {
    o.report["status"] = "fail";
    o.report["reason"] = reason;
    o.status = 1;
    return o;
  }
  ProductCheck check = grid_y_check(omega, *y, sft);
  json cells = json::array();
  const auto& b1 = *omega.first.ball;
  const auto& b2 = *omega.second.ball;
  for (int h1 = 0; h1 < static_cast<int>(b1.size()); ++h1) {
    for (int h2 = 0; h2 < static_cast<int>(b2.size()); ++h2) {
      cells.push_back({b1.label(h1), b2.label(h2), sft.alphabet.name((*y)[omega.cell(h1, h2)])});
    }
  }
  json v = json::array();
  for (const auto& [cell, dir] : check.violations) {
    v.push_back({{"h1", b1.label(static_cast<int>(cell / b2.size()))},
                 {"h2", b2.label(static_cast<int>(cell % b2.size()))},
                 {"direction", std::string(1, dir)}});
  }
  o.report["status"] = check.violations.empty() ? "ok" : "violations";
  o.report["violations"] = v;
  o.report["counts"] = counts(check.violations.size(), check.satisfied, check.unchecked);
  o.report["y"] = cells;
  o.status = check.violations.empty() ? 0 : 1;
  return o;
}

// --- final ------------------------------------------------------------------

FinalSetup load_ctx(const std::string& path) { return load_final_context(read_json_file(path), path); }

Outcome cmd_final_check(const Global& g, const std::string& ctx_path, const std::string& patch_path,
                        const std::string& families) {
  FinalSetup setup = load_ctx(ctx_path);
  FinalPatch patch = load_final_patch(read_json_file(patch_path), setup.ctx, patch_path);
  FinalReport total;
  json per = json::object();
  auto run = [&](const std::string& name, const FinalReport& r) {
    per[name] = counts(r.violations.size(), r.satisfied, r.unchecked);
    total.merge(r);
  };
  for (const std::string f : {"F1", "F2", "F3", "F4"}) {
    if (families.find(f) == std::string::npos) continue;
    if (f == "F1") run(f, check_F1(patch, setup.ctx, g.threads));
    if (f == "F2") run(f, check_F2(patch));
    if (f == "F3") run(f, check_F3(patch, setup.ctx));
    if (f == "F4") run(f, check_F4(patch, setup.ctx));
  }
  Outcome o;
  o.report = report_head("final check");
  json v = json::array();
  for (const auto& x : total.violations) {
    v.push_back({{"family", x.family}, {"g", patch.g_ball->label(x.g)}, {"h1", patch.h1_ball->label(x.h1)},
                 {"h2", patch.h2_ball->label(x.h2)}, {"rule", x.rule}});
  }
  o.report["violations"] = v;
  o.report["families"] = per;
  o.report["counts"] = counts(total.violations.size(), total.satisfied, total.unchecked);
  o.report["unchecked"] = total.unchecked;
  o.status = total.violations.empty() ? 0 : 1;
  return o;
}

Outcome cmd_final_witness(const std::string& ctx_path) {
  FinalSetup setup = load_ctx(ctx_path);
  Outcome o;
  build_witness(setup, &o.report);
  return o;
}

Outcome cmd_final_phi(const std::string& ctx_path, const std::string& patch_path, int depth) {
  FinalSetup setup = load_ctx(ctx_path);
  FinalPatch patch = load_final_patch(read_json_file(patch_path), setup.ctx, patch_path);
  auto bits = factor_phi(patch, setup.ctx, depth);
  Outcome o;
  o.report = report_head("final phi");
  o.report["depth"] = depth;
  o.report["phi"] = bits ? json(*bits) : json(nullptr);
  o.text = (bits ? *bits : std::string("undecodable")) + "\n";
  o.status = bits ? 0 : 1;
  return o;
}

Outcome cmd_final_project(const std::string& ctx_path, const std::string& patch_path, bool against_witness) {
  FinalSetup setup = load_ctx(ctx_path);
  FinalPatch patch = load_final_patch(read_json_file(patch_path), setup.ctx, patch_path);
  Projection proj = hat_phi_project(patch, setup.ctx);
  auto value = [&](const std::optional<int>& v) -> json {
    if (!v) return nullptr;
    if (setup.ctx.codec) return setup.ctx.codec->alphabet().name(*v);
    return *v;
  };
  Outcome o;
  o.report = report_head("final project");
  json slices = json::array();
  for (int g = 0; g < static_cast<int>(patch.g_ball->size()); ++g) {
    slices.push_back({{"element", patch.g_ball->label(g)}, {"value", value(proj[static_cast<std::size_t>(g)][0])}});
  }
  o.report["projection"] = slices;
  if (against_witness) {
    const auto original = witness_original(setup, *patch.g_ball);
    const bool ok = projective_check(proj, original);
    o.report["projective"] = ok;
    o.status = ok ? 0 : 1;
  }
  return o;
}

// --- aperiodic --------------------------------------------------------------

Outcome cmd_color(const Global& g, const std::string& group_path, int radius, int k, int max_len,
                  std::uint64_t budget) {
  json gj;
  auto group = group_file(group_path, &gj);
  auto ball = std::make_shared<const CayleyBall>(CayleyBall::build(group, radius));
  auto result = square_free_search(ball, k, max_len, g.seed, budget);
  Outcome o;
  if (!result) {
    o.report = report_head("aperiodic color");
    o.report["status"] = "fail";
    o.status = 1;
    return o;
  }
  o.report = coloring_to_json(*result, gj);
  return o;
}

std::vector<std::string> path_labels(const CayleyBall& ball, const std::vector<int>& path) {
  std::vector<std::string> out;
  for (int h : path) out.push_back(ball.label(h));
  return out;
}

Outcome cmd_verify(const Global& g, const std::string& path, int max_len, std::uint64_t budget) {
  ColoredBall cb = load_coloring(read_json_file(path), path);
  auto squares = square_free_verify(cb, max_len, budget, g.threads);
  Outcome o;
  o.report = report_head("aperiodic verify");
  json v = json::array();
  for (const auto& s : squares) v.push_back({{"path", path_labels(*cb.ball, s.path)}});
  o.report["violations"] = v;
  o.report["max_len"] = max_len;
  o.report["counts"] = counts(squares.size(), 0, 0);
  o.status = squares.empty() ? 0 : 1;
  return o;
}

Outcome cmd_probe(const std::vector<std::string>& paths, int max_len) {
  std::vector<ColoredBall> balls;
  for (const auto& p : paths) balls.push_back(load_coloring(read_json_file(p), p));
  auto entries = product_aperiodicity_probe(balls, max_len);
  Outcome o;
  o.report = report_head("aperiodic probe");
  json list = json::array();
  bool all_hold = true;
  std::size_t broken = 0;
  for (const auto& e : entries) {
    json cand = json::array();
    json fs = json::array();
    for (std::size_t i = 0; i < e.candidate.size(); ++i) {
      cand.push_back(balls[i].ball->generators().format(e.candidate[i]));
      fs.push_back(to_string(e.factor_status[i]));
    }
    list.push_back({{"candidate", cand}, {"status", to_string(e.status)}, {"factor_status", fs},
                    {"breaking_factor", e.breaking_factor}, {"decomposition_holds", e.decomposition_holds}});
    all_hold = all_hold && e.decomposition_holds;
    if (e.status == PeriodStatus::Broken) ++broken;
  }
  o.report["candidates"] = list;
  o.report["broken"] = broken;
  o.report["total"] = entries.size();
  o.report["decomposition_holds"] = all_hold;
  o.status = all_hold ? 0 : 1;
  return o;
}

Outcome cmd_zsft(const std::string& path) {
  ZSFT sft = load_zsft(read_json_file(path), path);
  auto word = z_sft_periodic_point(sft);
  Outcome o;
  o.report = report_head("aperiodic zsft");
  if (!word) {
    o.report["empty"] = true;
    o.report["period"] = nullptr;
    o.text = "empty\n";
    return o;
  }
  json w = json::array();
  std::string text;
  for (int s : *word) {
    w.push_back(sft.alphabet.name(s));
    text += (text.empty() ? "" : " ") + sft.alphabet.name(s);
  }
  o.report["empty"] = false;
  o.report["period"] = w;
  o.text = text + "\n";
  return o;
}

// Input problems exit 2; exhausted searches and failed constructions exit 1.
int error_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResourceLimit:
    case ErrorKind::SeedFailure:
    case ErrorKind::UndecodableWindow:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group shift constructions and verifiers"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--emit", g.emit, "Output format")->check(CLI::IsMember({"dot", "json", "text"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomised searches");
  app.add_option("--out", g.out, "Write the report to this file instead of stdout");

  std::function<Outcome()> action;
  std::string fallback = "json";
  auto set = [&](std::function<Outcome()> f, std::string fmt = "json") {
    action = std::move(f);
    fallback = std::move(fmt);
  };

  // Shared option storage.
  std::string group_path, sft_path, patch_path, word, ctx_path, dot_path, subshift_path, prefix, grid_path,
      grid2_path, config_path, from_word, families = "F1,F2,F3,F4";
  int radius = 0, margin = 1, restarts = 64, depth = 0, k = 2, max_len = 4;
  std::int64_t from = 0, len = 0;
  std::uint64_t budget = 100000, search_budget = 50'000'000;
  std::size_t steps = 1000;
  bool against_witness = false;
  std::vector<std::string> colorings;

  auto* ball = app.add_subcommand("ball", "Cayley ball of a group");
  ball->add_option("--group", group_path)->required();
  ball->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  ball->add_option("--dot", dot_path, "Also write the ball as DOT");
  ball->callback([&] { set([&] { return cmd_ball(group_path, radius, dot_path); }); });

  auto* wp = app.add_subcommand("wp", "Word problem");
  wp->add_option("--group", group_path)->required();
  wp->add_option("--word", word)->required();
  wp->callback([&] { set([&] { return cmd_wp(group_path, word); }, "text"); });

  auto* nn = app.add_subcommand("nn", "Nearest-neighbour Z^2 SFTs");
  nn->require_subcommand(1);
  for (const bool extend : {false, true}) {
    auto* sub = nn->add_subcommand(extend ? "extend" : "check", extend ? "Fill holes of a patch" : "Check a patch");
    sub->add_option("--sft", sft_path)->required();
    sub->add_option("--patch", patch_path)->required();
    sub->callback([&, extend] { set([&, extend] { return cmd_nn(extend, sft_path, patch_path); }); });
  }

  auto* oracle = app.add_subcommand("oracle", "Effective subshift oracles");
  oracle->require_subcommand(1);
  auto* query = oracle->add_subcommand("query", "Query the set oracle of a subshift");
  query->add_option("--subshift", subshift_path)->required();
  query->add_option("--word", word)->required();
  query->add_option("--budget", budget);
  query->callback([&] { set([&] { return cmd_oracle(subshift_path, word, budget); }); });

  auto* toe = app.add_subcommand("toeplitz", "Toeplitz encoding");
  toe->require_subcommand(1);
  auto* enc = toe->add_subcommand("encode", "Encode a prefix");
  enc->add_option("--prefix", prefix)->required();
  enc->add_option("--from", from);
  enc->add_option("--len", len)->required()->check(CLI::NonNegativeNumber);
  enc->callback([&] { set([&] { return cmd_toeplitz_encode(prefix, from, len); }, "text"); });
  auto* dec = toe->add_subcommand("decode", "Decode a word or a layered word");
  dec->add_option("--word", word, "File holding the word")->required();
  dec->callback([&] { set([&] { return cmd_toeplitz_decode(word); }, "text"); });

  auto* grid = app.add_subcommand("grid", "Grid-simulating labels");
  grid->require_subcommand(1);
  auto* gcheck = grid->add_subcommand("check", "Check the local grid rules");
  gcheck->add_option("--grid", grid_path)->required();
  gcheck->callback([&] { set([&] { return cmd_grid_check(grid_path); }); });
  auto* gtrace = grid->add_subcommand("trace", "Follow the induced orbit");
  gtrace->add_option("--grid", grid_path)->required();
  gtrace->add_option("--from", from_word, "Start element");
  gtrace->add_option("--steps", steps);
  gtrace->callback([&] { set([&] { return cmd_grid_trace(grid_path, from_word, steps); }); });
  auto* gcover = grid->add_subcommand("cover", "Search a path cover of a ball");
  gcover->add_option("--group", group_path)->required();
  gcover->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  gcover->add_option("--margin", margin)->check(CLI::NonNegativeNumber);
  gcover->add_option("--restarts", restarts)->check(CLI::NonNegativeNumber);
  gcover->callback([&] { set([&] { return cmd_grid_cover(g, group_path, radius, margin, restarts); }); });
  auto* gseed = grid->add_subcommand("seed", "Lay a Z^2 configuration along a product grid");
  gseed->add_option("--grid1", grid_path)->required();
  gseed->add_option("--grid2", grid2_path)->required();
  gseed->add_option("--sft", sft_path)->required();
  gseed->add_option("--config", config_path)->required();
  gseed->callback([&] { set([&] { return cmd_grid_seed(grid_path, grid2_path, sft_path, config_path); }); });

  auto* fin = app.add_subcommand("final", "Assembled SFT on G x H1 x H2");
  fin->require_subcommand(1);
  auto* fcheck = fin->add_subcommand("check", "Check F1-F4 on a patch");
  fcheck->add_option("--ctx", ctx_path)->required();
  fcheck->add_option("--patch", patch_path)->required();
  fcheck->add_option("--families", families, "Comma separated subset of F1,F2,F3,F4");
  fcheck->callback([&] { set([&] { return cmd_final_check(g, ctx_path, patch_path, families); }); });
  auto* fwit = fin->add_subcommand("witness", "Build the witness patch of a context");
  fwit->add_option("--ctx", ctx_path)->required();
  fwit->callback([&] { set([&] { return cmd_final_witness(ctx_path); }); });
  auto* fphi = fin->add_subcommand("phi", "Factor map on the identity slice");
  fphi->add_option("--ctx", ctx_path)->required();
  fphi->add_option("--patch", patch_path)->required();
  fphi->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  fphi->callback([&] { set([&] { return cmd_final_phi(ctx_path, patch_path, depth); }); });
  auto* fproj = fin->add_subcommand("project", "Projection to the simulated subshift");
  fproj->add_option("--ctx", ctx_path)->required();
  fproj->add_option("--patch", patch_path)->required();
  fproj->add_flag("--against-witness", against_witness, "Compare with the context's configuration");
  fproj->callback([&] { set([&] { return cmd_final_project(ctx_path, patch_path, against_witness); }); });

  auto* ap = app.add_subcommand("aperiodic", "Square-free colourings and periodicity probes");
  ap->require_subcommand(1);
  auto* color = ap->add_subcommand("color", "Search a square-free colouring");
  color->add_option("--group", group_path)->required();
  color->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  color->add_option("-k", k)->check(CLI::PositiveNumber);
  color->add_option("--maxlen", max_len)->check(CLI::NonNegativeNumber);
  color->add_option("--budget", search_budget);
  color->callback([&] { set([&] { return cmd_color(g, group_path, radius, k, max_len, search_budget); }); });
  auto* verify = ap->add_subcommand("verify", "Check a colouring for squares");
  verify->add_option("--coloring", config_path)->required();
  verify->add_option("--maxlen", max_len)->check(CLI::NonNegativeNumber);
  verify->add_option("--budget", search_budget);
  verify->callback([&] { set([&] { return cmd_verify(g, config_path, max_len, search_budget); }); });
  auto* probe = ap->add_subcommand("probe", "Periods of a product of colourings");
  probe->add_option("--coloring", colorings, "One colouring per factor")->required();
  probe->add_option("--maxlen", max_len)->check(CLI::NonNegativeNumber);
  probe->callback([&] { set([&] { return cmd_probe(colorings, max_len); }); });
  auto* zsft = ap->add_subcommand("zsft", "Periodic point of a nearest-neighbour Z-SFT");
  zsft->add_option("--sft", sft_path)->required();
  zsft->callback([&] { set([&] { return cmd_zsft(sft_path); }, "text"); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome o = action();
    emit(g, o, fallback);
    return o.status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return error_status(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: Schema: " << e.what() << "\n";
    return 2;
  }
}
