#include "groupshift/descriptors.hpp"

#include <fstream>
#include <sstream>

#include "groupshift/errors.hpp"
#include "groupshift/mealy.hpp"
#include "groupshift/toeplitz.hpp"

namespace groupshift {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  raise(ErrorKind::Schema, where + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) schema(where, std::string("missing field '") + name + "'");
  return *it;
}

std::string sub(const std::string& where, const std::string& name) { return where + "." + name; }

std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

int get_int(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_integer()) schema(sub(where, name), "expected an integer");
  return v.get<int>();
}

int get_int_or(const json& j, const char* name, int fallback, const std::string& where) {
  if (!j.contains(name)) return fallback;
  return get_int(j, name, where);
}

std::string get_string(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_string()) schema(sub(where, name), "expected a string");
  return v.get<std::string>();
}

const json& get_array(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_array()) schema(sub(where, name), "expected an array");
  return v;
}

Alphabet load_alphabet(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where, "expected a non-empty array of symbol names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema(sub(where, i), "symbol names must be strings");
    names.push_back(j[i].get<std::string>());
  }
  try {
    return Alphabet(std::move(names));
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

int symbol_of(const json& v, const Alphabet& a, const std::string& where) {
  if (!v.is_string()) schema(where, "expected a symbol name");
  auto idx = a.find(v.get<std::string>());
  if (!idx) schema(where, "unknown symbol '" + v.get<std::string>() + "'");
  return *idx;
}

std::vector<std::vector<bool>> load_pairs(const json& j, const Alphabet& a, const std::string& where) {
  const std::size_t q = a.size();
  std::vector<std::vector<bool>> m(q, std::vector<bool>(q, false));
  if (!j.is_array()) schema(where, "expected an array of pairs");
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2) schema(sub(where, i), "expected a pair");
    m[static_cast<std::size_t>(symbol_of(j[i][0], a, sub(where, i)))]
     [static_cast<std::size_t>(symbol_of(j[i][1], a, sub(where, i)))] = true;
  }
  return m;
}

Word parse_word(const GeneratorSet& gens, const std::string& text, const std::string& where) {
  try {
    return gens.parse(text);
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

int element_of(const CayleyBall& ball, const std::string& text, const std::string& where) {
  auto idx = ball.find(parse_word(ball.generators(), text, where));
  if (!idx) schema(where, "'" + text + "' is outside the ball");
  return *idx;
}

Gen generator_of(const GeneratorSet& gens, const json& v, const std::string& where) {
  if (!v.is_string()) schema(where, "expected a generator name");
  auto g = gens.find(v.get<std::string>());
  if (!g) schema(where, "unknown generator '" + v.get<std::string>() + "'");
  return *g;
}

BallPtr ball_of(const json& j, const std::string& where, json* group_json = nullptr) {
  const json& gj = field(j, "group", where);
  if (group_json) *group_json = gj;
  auto group = load_group(gj, sub(where, "group"));
  const int radius = get_int(j, "radius", where);
  if (radius < 0) schema(sub(where, "radius"), "must be >= 0");
  return std::make_shared<const CayleyBall>(CayleyBall::build(group, radius));
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Schema, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::Schema, path + ": " + e.what());
  }
}

GroupPtr load_group(const json& j, const std::string& where) {
  const std::string kind = get_string(j, "kind", where);
  if (kind == "free_abelian") return free_abelian_group(get_int(j, "rank", where));
  if (kind == "free") return free_group(get_int(j, "rank", where));
  if (kind == "cyclic") {
    const int order = get_int(j, "order", where);
    if (order < 1) schema(sub(where, "order"), "must be >= 1");
    return cyclic_group(order);
  }
  if (kind == "grigorchuk") return grigorchuk_group();
  if (kind == "product") {
    const json& fs = get_array(j, "factors", where);
    if (fs.empty()) schema(sub(where, "factors"), "needs at least one factor");
    std::vector<GroupPtr> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(load_group(fs[i], sub(sub(where, "factors"), i)));
    return product_group(std::move(factors));
  }
  if (kind == "mealy") {
    MealyAutomaton m;
    const json& states = get_array(j, "states", where);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!states[i].is_string()) schema(sub(sub(where, "states"), i), "expected a state name");
      m.states.push_back(states[i].get<std::string>());
    }
    auto state_of = [&](const json& v, const std::string& w) {
      if (!v.is_string()) schema(w, "expected a state name");
      auto q = m.find(v.get<std::string>());
      if (!q) schema(w, "unknown state '" + v.get<std::string>() + "'");
      return *q;
    };
    const json& tr = get_array(j, "transition", where);
    const json& out = get_array(j, "output", where);
    if (tr.size() != m.size() || out.size() != m.size()) schema(where, "transition/output need one row per state");
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string tw = sub(sub(where, "transition"), i);
      const std::string ow = sub(sub(where, "output"), i);
      if (!tr[i].is_array() || tr[i].size() != 2) schema(tw, "expected two target states");
      if (!out[i].is_array() || out[i].size() != 2 || !out[i][0].is_number_integer() || !out[i][1].is_number_integer()) {
        schema(ow, "expected two output bits");
      }
      m.transition.push_back({state_of(tr[i][0], tw), state_of(tr[i][1], tw)});
      m.output.push_back({out[i][0].get<int>(), out[i][1].get<int>()});
    }
    std::vector<std::vector<MealyAutomaton::State>> gens;
    const json& gj = get_array(j, "generators", where);
    for (std::size_t i = 0; i < gj.size(); ++i) {
      const std::string gw = sub(sub(where, "generators"), i);
      std::vector<MealyAutomaton::State> word;
      if (gj[i].is_string()) {
        // One character per state name.
        for (char ch : gj[i].get<std::string>()) word.push_back(state_of(json(std::string(1, ch)), gw));
      } else if (gj[i].is_array()) {
        for (const auto& q : gj[i]) word.push_back(state_of(q, gw));
      } else {
        schema(gw, "expected a state word");
      }
      gens.push_back(std::move(word));
    }
    try {
      return mealy_group(std::move(m), std::move(gens));
    } catch (const Error& e) {
      schema(where, e.what());
    }
  }
  schema(sub(where, "kind"), "unknown group kind '" + kind + "'");
}

NNSFT2D load_nn_sft(const json& j, const std::string& where) {
  NNSFT2D sft;
  sft.alphabet = load_alphabet(field(j, "alphabet", where), sub(where, "alphabet"));
  sft.allowed_h = load_pairs(field(j, "allowed_h", where), sft.alphabet, sub(where, "allowed_h"));
  sft.allowed_v = load_pairs(field(j, "allowed_v", where), sft.alphabet, sub(where, "allowed_v"));
  return sft;
}

ZSFT load_zsft(const json& j, const std::string& where) {
  ZSFT sft;
  sft.alphabet = load_alphabet(field(j, "alphabet", where), sub(where, "alphabet"));
  sft.allowed = load_pairs(field(j, "allowed", where), sft.alphabet, sub(where, "allowed"));
  return sft;
}

Patch2D load_patch2d(const json& j, const Alphabet& alphabet, const std::string& where) {
  int x0 = 0;
  int y0 = 0;
  if (j.contains("origin")) {
    const json& o = j["origin"];
    if (!o.is_array() || o.size() != 2 || !o[0].is_number_integer() || !o[1].is_number_integer()) {
      schema(sub(where, "origin"), "expected [x, y]");
    }
    x0 = o[0].get<int>();
    y0 = o[1].get<int>();
  }
  const json& rows = get_array(j, "rows", where);
  std::vector<std::vector<int>> parsed;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rw = sub(sub(where, "rows"), r);
    std::vector<int> row;
    if (rows[r].is_string()) {
      for (char ch : rows[r].get<std::string>()) {
        if (ch == '.') {
          row.push_back(kBlank);
          continue;
        }
        auto idx = alphabet.find(std::string(1, ch));
        if (!idx) schema(rw, "unknown symbol '" + std::string(1, ch) + "'");
        row.push_back(*idx);
      }
    } else if (rows[r].is_array()) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        row.push_back(rows[r][c].is_null() ? kBlank : symbol_of(rows[r][c], alphabet, sub(rw, c)));
      }
    } else {
      schema(rw, "expected a string or an array");
    }
    if (!parsed.empty() && row.size() != parsed.front().size()) schema(rw, "rows differ in length");
    parsed.push_back(std::move(row));
  }
  const int height = static_cast<int>(parsed.size());
  const int width = parsed.empty() ? 0 : static_cast<int>(parsed.front().size());
  Patch2D p(x0, y0, width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) p.at(c, height - 1 - r) = parsed[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return p;
}

json patch2d_to_json(const Patch2D& p, const Alphabet& alphabet) {
  json rows = json::array();
  for (int r = p.height - 1; r >= 0; --r) {
    json row = json::array();
    for (int c = 0; c < p.width; ++c) {
      const int v = p.at(c, r);
      row.push_back(v == kBlank ? json(nullptr) : json(alphabet.name(v)));
    }
    rows.push_back(row);
  }
  return {{"origin", {p.x0, p.y0}}, {"rows", rows}};
}

SubshiftSpec load_subshift(const json& j, const std::string& where) {
  SubshiftSpec s;
  s.group_json = field(j, "group", where);
  s.group = load_group(s.group_json, sub(where, "group"));
  s.alphabet = load_alphabet(field(j, "alphabet", where), sub(where, "alphabet"));
  const json& fs = get_array(j, "forbidden", where);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string fw = sub(sub(where, "forbidden"), i);
    if (!fs[i].is_array()) schema(fw, "expected a list of [word, symbol] pairs");
    PatternCoding p;
    for (std::size_t k = 0; k < fs[i].size(); ++k) {
      const json& pair = fs[i][k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) schema(sub(fw, k), "expected [word, symbol]");
      p.emplace_back(parse_word(s.group->generators(), pair[0].get<std::string>(), sub(fw, k)),
                     symbol_of(pair[1], s.alphabet, sub(fw, k)));
    }
    s.forbidden.push_back(std::move(p));
  }
  s.codec = std::make_shared<const SubshiftCodec>(s.group, s.alphabet);
  return s;
}

GridPatch load_grid_patch(const json& j, const std::string& where) {
  GridPatch p;
  p.ball = ball_of(j, where);
  const auto& gens = p.ball->generators();
  p.labels.assign(p.ball->size(), GridLabel{});
  std::vector<bool> seen(p.ball->size(), false);
  const json& labels = field(j, "labels", where);
  if (!labels.is_object()) schema(sub(where, "labels"), "expected an object keyed by words");
  for (auto it = labels.begin(); it != labels.end(); ++it) {
    const std::string lw = sub(sub(where, "labels"), "'" + it.key() + "'");
    const int h = element_of(*p.ball, it.key(), lw);
    if (!it->is_array() || it->size() != 2) schema(lw, "expected [left, right]");
    p.labels[static_cast<std::size_t>(h)] = {generator_of(gens, (*it)[0], lw), generator_of(gens, (*it)[1], lw)};
    seen[static_cast<std::size_t>(h)] = true;
  }
  for (std::size_t h = 0; h < seen.size(); ++h) {
    if (!seen[h]) schema(sub(where, "labels"), "no label for '" + p.ball->label(static_cast<int>(h)) + "'");
  }
  return p;
}

json grid_patch_to_json(const GridPatch& p, const json& group_json) {
  json labels = json::object();
  const auto& gens = p.ball->generators();
  for (int h = 0; h < static_cast<int>(p.ball->size()); ++h) {
    const auto& l = p.at(h);
    labels[p.ball->label(h)] = {gens.name(l.left), gens.name(l.right)};
  }
  return {{"schema", kSchema}, {"group", group_json}, {"radius", p.ball->radius()}, {"labels", labels}};
}

ColoredBall load_coloring(const json& j, const std::string& where) {
  ColoredBall cb;
  cb.ball = ball_of(j, where);
  cb.k = get_int(j, "k", where);
  cb.colors.assign(cb.ball->size(), -1);
  const json& colors = field(j, "colors", where);
  if (!colors.is_object()) schema(sub(where, "colors"), "expected an object keyed by words");
  for (auto it = colors.begin(); it != colors.end(); ++it) {
    const std::string cw = sub(sub(where, "colors"), "'" + it.key() + "'");
    if (!it->is_number_integer()) schema(cw, "expected an integer colour");
    cb.colors[static_cast<std::size_t>(element_of(*cb.ball, it.key(), cw))] = it->get<int>();
  }
  try {
    cb.validate();
  } catch (const Error& e) {
    schema(where, e.what());
  }
  return cb;
}

json coloring_to_json(const ColoredBall& cb, const json& group_json) {
  json colors = json::object();
  for (int h = 0; h < static_cast<int>(cb.ball->size()); ++h) colors[cb.ball->label(h)] = cb.colors[static_cast<std::size_t>(h)];
  return {{"schema", kSchema}, {"group", group_json}, {"radius", cb.ball->radius()}, {"k", cb.k}, {"colors", colors}};
}

std::vector<int> load_ball_values(const json& values, const CayleyBall& ball, const Alphabet& alphabet,
                                  const std::string& where) {
  if (!values.is_object()) schema(where, "expected an object keyed by words");
  std::vector<int> out(ball.size(), kBlank);
  for (auto it = values.begin(); it != values.end(); ++it) {
    const std::string vw = sub(where, "'" + it.key() + "'");
    auto idx = ball.find(parse_word(ball.generators(), it.key(), vw));
    if (!idx) continue;  // outside the ball: not needed
    out[static_cast<std::size_t>(*idx)] = symbol_of(*it, alphabet, vw);
  }
  return out;
}

FinalSetup load_final_context(const json& j, const std::string& where) {
  FinalSetup setup;
  setup.ctx_json = j;
  const json& sys = field(j, "system", where);
  const std::string sw = sub(where, "system");
  const std::string kind = get_string(sys, "kind", sw);
  if (kind == "rho") {
    setup.subshift = std::make_shared<SubshiftSpec>(load_subshift(field(sys, "subshift", sw), sub(sw, "subshift")));
    setup.ctx = make_rho_context(setup.subshift->codec, setup.subshift->forbidden);
  } else if (kind == "trivial") {
    auto group = load_group(field(sys, "group", sw), sub(sw, "group"));
    std::vector<std::string> forbid;
    if (sys.contains("forbid")) {
      const json& f = get_array(sys, "forbid", sw);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].is_string()) schema(sub(sub(sw, "forbid"), i), "expected a binary word");
        forbid.push_back(f[i].get<std::string>());
      }
    }
    SetOraclePtr x;
    try {
      x = forbidden_factor_set_oracle(forbid);
    } catch (const Error& e) {
      schema(sub(sw, "forbid"), e.what());
    }
    auto t = trivial_action_oracle(x, group->generators());
    setup.ctx = make_context(group, x, t, get_int_or(sys, "kappa", 1, sw));
  } else {
    schema(sub(sw, "kind"), "unknown system kind '" + kind + "'");
  }
  if (j.contains("budget")) {
    const json& b = j["budget"];
    if (!b.is_number_unsigned()) schema(sub(where, "budget"), "expected a non-negative integer");
    setup.ctx.budget = b.get<std::uint64_t>();
  }
  if (j.contains("kappa")) setup.ctx.kappa = get_int(j, "kappa", where);
  return setup;
}

namespace {

json g_ball_json(const FinalSetup& setup) {
  if (setup.subshift) return setup.subshift->group_json;
  return setup.ctx_json["system"]["group"];
}

}  // namespace

FinalPatch load_final_patch(const json& j, const FactorContext& ctx, const std::string& where) {
  FinalPatch p;
  p.g_ball = ball_of(field(j, "g", where), sub(where, "g"));
  p.h1_ball = ball_of(field(j, "h1", where), sub(where, "h1"));
  p.h2_ball = ball_of(field(j, "h2", where), sub(where, "h2"));
  if (p.g_ball->generators().size() != ctx.layers()) schema(sub(where, "g"), "G generators differ from the context");
  const json& slices = get_array(j, "slices", where);
  if (slices.size() != p.g_ball->size()) schema(sub(where, "slices"), "expected one slice per G-ball element");
  p.omega1.resize(slices.size());
  p.omega2.resize(slices.size());
  p.y.resize(slices.size());
  std::vector<bool> seen(slices.size(), false);
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const std::string sw = sub(sub(where, "slices"), i);
    const int g = element_of(*p.g_ball, get_string(slices[i], "element", sw), sub(sw, "element"));
    if (seen[static_cast<std::size_t>(g)]) schema(sw, "duplicate slice");
    seen[static_cast<std::size_t>(g)] = true;
    const json& o1 = get_array(slices[i], "omega1", sw);
    const json& o2 = get_array(slices[i], "omega2", sw);
    const json& y = get_array(slices[i], "y", sw);
    if (o1.size() != p.cells() || o2.size() != p.cells() || y.size() != p.cells()) {
      schema(sw, "expected " + std::to_string(p.cells()) + " cells");
    }
    auto label = [&](const json& v, const GeneratorSet& gens, const std::string& w) {
      if (!v.is_array() || v.size() != 2) schema(w, "expected [left, right]");
      return GridLabel{generator_of(gens, v[0], w), generator_of(gens, v[1], w)};
    };
    const auto gs = static_cast<std::size_t>(g);
    for (std::size_t c = 0; c < p.cells(); ++c) {
      p.omega1[gs].push_back(label(o1[c], p.h1_ball->generators(), sub(sub(sw, "omega1"), c)));
      p.omega2[gs].push_back(label(o2[c], p.h2_ball->generators(), sub(sub(sw, "omega2"), c)));
      p.y[gs].push_back(symbol_of(y[c], ctx.sft.alphabet, sub(sub(sw, "y"), c)));
    }
  }
  return p;
}

json final_patch_to_json(const FinalPatch& p, const FactorContext& ctx, const json& g_json, const json& h1_json,
                         const json& h2_json) {
  json slices = json::array();
  for (int g = 0; g < static_cast<int>(p.g_ball->size()); ++g) {
    const auto gs = static_cast<std::size_t>(g);
    json o1 = json::array();
    json o2 = json::array();
    json y = json::array();
    const auto& s1 = p.h1_ball->generators();
    const auto& s2 = p.h2_ball->generators();
    for (std::size_t c = 0; c < p.cells(); ++c) {
      o1.push_back({s1.name(p.omega1[gs][c].left), s1.name(p.omega1[gs][c].right)});
      o2.push_back({s2.name(p.omega2[gs][c].left), s2.name(p.omega2[gs][c].right)});
      y.push_back(ctx.sft.alphabet.name(p.y[gs][c]));
    }
    slices.push_back({{"element", p.g_ball->label(g)}, {"omega1", o1}, {"omega2", o2}, {"y", y}});
  }
  return {{"schema", kSchema},
          {"g", {{"group", g_json}, {"radius", p.g_ball->radius()}}},
          {"h1", {{"group", h1_json}, {"radius", p.h1_ball->radius()}}},
          {"h2", {{"group", h2_json}, {"radius", p.h2_ball->radius()}}},
          {"slices", slices}};
}

namespace {

GridPatch witness_grid(const json& j, const std::string& where, json* group_json, std::uint64_t seed) {
  GridPatch out;
  BallPtr ball = ball_of(j, where, group_json);
  const json& om = field(j, "omega", where);
  const std::string ow = sub(where, "omega");
  const std::string kind = get_string(om, "kind", ow);
  if (kind == "translation") {
    const Gen s = generator_of(ball->generators(), field(om, "generator", ow), sub(ow, "generator"));
    return from_translation_action(translation_cover(ball, s));
  }
  if (kind == "cover") {
    auto result = path_cover_search(ball, get_int(om, "margin", ow), seed);
    if (auto* f = std::get_if<PathCoverFailure>(&result)) raise(ErrorKind::SeedFailure, ow + ": " + f->diagnosis);
    return from_translation_action(std::get<PathCover>(result));
  }
  schema(sub(ow, "kind"), "unknown omega kind '" + kind + "'");
}

// Coordinate of a canonical word in Z written over x / X.
long z_coordinate(const CayleyBall& ball, int e) {
  long z = 0;
  for (Gen g : ball.element(e)) z += ball.generators().name(g) == "x" ? 1 : -1;
  return z;
}

}  // namespace

std::vector<int> witness_original(const FinalSetup& setup, const CayleyBall& ball) {
  if (!setup.subshift) return std::vector<int>(ball.size(), 0);
  const std::string where = "ctx.witness.configuration";
  const json& conf = field(field(setup.ctx_json, "witness", "ctx"), "configuration", "ctx.witness");
  const std::string kind = get_string(conf, "kind", where);
  const auto& alphabet = setup.subshift->alphabet;
  if (kind == "periodic") {
    const json& pattern = get_array(conf, "pattern", where);
    if (pattern.empty()) schema(sub(where, "pattern"), "must not be empty");
    const auto& gens = ball.generators();
    if (gens.size() != 3 || gens.name(1) != "x" || gens.name(2) != "X") {
      schema(where, "periodic configurations need the group Z with generators x, X");
    }
    std::vector<int> out;
    const long p = static_cast<long>(pattern.size());
    for (int e = 0; e < static_cast<int>(ball.size()); ++e) {
      const long z = ((z_coordinate(ball, e) % p) + p) % p;
      out.push_back(symbol_of(pattern[static_cast<std::size_t>(z)], alphabet, sub(where, "pattern")));
    }
    return out;
  }
  if (kind == "values") return load_ball_values(field(conf, "values", where), ball, alphabet, sub(where, "values"));
  schema(sub(where, "kind"), "unknown configuration kind '" + kind + "'");
}

FinalPatch build_witness(const FinalSetup& setup, json* patch_json, std::vector<int>* original) {
  const std::string where = "ctx.witness";
  const json& w = field(setup.ctx_json, "witness", "ctx");
  const int g_radius = get_int(w, "g_radius", where);
  const auto seed = static_cast<std::uint64_t>(get_int_or(w, "seed", 0, where));
  json h1_json;
  json h2_json;
  ProductGridPatch omega{witness_grid(field(w, "h1", where), sub(where, "h1"), &h1_json, seed),
                         witness_grid(field(w, "h2", where), sub(where, "h2"), &h2_json, seed)};
  auto domain = seed_domain(omega);
  if (!domain) raise(ErrorKind::SeedFailure, "witness omega has a cycle");
  const auto& ctx = setup.ctx;
  const int length = std::max({psi_required_length(domain->x0, domain->width), ctx.kappa, 1});
  auto g_ball = std::make_shared<const CayleyBall>(CayleyBall::build(ctx.group, g_radius));
  auto k_ball = std::make_shared<const CayleyBall>(CayleyBall::build(ctx.group, g_radius + 1));
  WitnessPrefixes prefixes;
  if (setup.subshift) {
    const auto& codec = *setup.subshift->codec;
    const std::size_t blocks = (static_cast<std::size_t>(length) + static_cast<std::size_t>(codec.kappa()) - 1) /
                               static_cast<std::size_t>(codec.kappa());
    const int reach = static_cast<int>(codec.enumeration(blocks - 1).size());
    CayleyBall y_ball = CayleyBall::build(ctx.group, g_radius + 1 + reach);
    const auto y = witness_original(setup, y_ball);
    prefixes = rho_witness_prefixes(codec, k_ball, y_ball, y, static_cast<std::size_t>(length));
    if (original) {
      original->clear();
      for (int g = 0; g < static_cast<int>(g_ball->size()); ++g) {
        original->push_back(y[static_cast<std::size_t>(*y_ball.find(g_ball->element(g)))]);
      }
    }
  } else {
    std::string x = get_string(w, "x", where);
    if (x.size() < static_cast<std::size_t>(length)) {
      raise(ErrorKind::InsufficientPrefix, where + ".x needs at least " + std::to_string(length) + " bits");
    }
    prefixes = {k_ball, std::vector<std::string>(k_ball->size(), x.substr(0, static_cast<std::size_t>(length)))};
    if (original) original->assign(g_ball->size(), 0);
  }
  FinalPatch patch = witness_construct(ctx, g_ball, prefixes, omega);
  if (patch_json) *patch_json = final_patch_to_json(patch, ctx, g_ball_json(setup), h1_json, h2_json);
  return patch;
}

}  // namespace groupshift
