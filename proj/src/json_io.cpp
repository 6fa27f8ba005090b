#include "braidforge/json_io.hpp"

#include "json.hpp"

namespace braidforge {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

template <typename T>
T get(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field \"") + key + "\" has the wrong type");
  }
}

const char* wall_name(WallTag t) { return t == WallTag::Front ? "front" : "back"; }

WallTag wall_from(const ordered_json& j) {
  if (!j.is_string()) bad("wall tag must be a string");
  const auto s = j.get<std::string>();
  if (s == "front") return WallTag::Front;
  if (s == "back") return WallTag::Back;
  bad("unknown wall tag \"" + s + "\"");
}

ordered_json optional_int(const std::optional<int>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::optional<int> optional_int_from(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<int>(j, key);
}

ordered_json word_json(const BraidWord& w) { return {{"n", w.strands}, {"letters", w.letters}}; }

BraidWord word_of(const ordered_json& j) {
  BraidWord w{get<int>(j, "n"), get<std::vector<int>>(j, "letters")};
  try {
    validate_word(w);
  } catch (const Error& e) {
    bad(e.what());
  }
  return w;
}

ordered_json grid_json(const ArcPresentation& g, const ShearingConfig& sc) {
  const RawDiagram raw = to_raw(g, sc);
  ordered_json vs = ordered_json::array(), hs = ordered_json::array(), is = ordered_json::array();
  for (const auto& v : raw.verticals) {
    vs.push_back({{"col", v.col}, {"rows", v.rows}, {"dir", v.up ? "up" : "down"}, {"inInterval", optional_int(v.in_interval)}});
  }
  for (const auto& h : raw.horizontals) {
    hs.push_back({{"row", h.row}, {"cols", h.cols}, {"inInterval", optional_int(h.in_interval)}});
  }
  for (const auto& i : raw.intervals) {
    is.push_back({{"gapAfterCol", i.gap_after_col}, {"walls", {wall_name(i.walls[0]), wall_name(i.walls[1])}}});
  }
  return {{"verticals", vs}, {"horizontals", hs}, {"intervals", is}};
}

std::pair<ArcPresentation, ShearingConfig> grid_of(const ordered_json& j) {
  RawDiagram raw;
  for (const auto& v : get<ordered_json>(j, "verticals")) {
    RawVertical rv;
    rv.col = get<int>(v, "col");
    rv.rows = get<std::array<int, 2>>(v, "rows");
    const auto dir = get<std::string>(v, "dir");
    if (dir != "up" && dir != "down") bad("vertical dir must be \"up\" or \"down\"");
    rv.up = dir == "up";
    rv.in_interval = optional_int_from(v, "inInterval");
    raw.verticals.push_back(rv);
  }
  for (const auto& h : get<ordered_json>(j, "horizontals")) {
    RawHorizontal rh;
    rh.row = get<int>(h, "row");
    rh.cols = get<std::array<int, 2>>(h, "cols");
    rh.in_interval = optional_int_from(h, "inInterval");
    raw.horizontals.push_back(rh);
  }
  if (j.contains("intervals")) {
    for (const auto& i : j.at("intervals")) {
      RawInterval ri;
      ri.gap_after_col = get<int>(i, "gapAfterCol");
      const auto& walls = get<ordered_json>(i, "walls");
      if (!walls.is_array() || walls.size() != 2) bad("walls must hold two tags");
      ri.walls = {wall_from(walls[0]), wall_from(walls[1])};
      raw.intervals.push_back(ri);
    }
  }
  try {
    return from_raw(raw);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    bad(e.what());
  }
}

ordered_json config_json(const ShearingConfig& sc) {
  ordered_json is = ordered_json::array();
  for (const auto& i : sc.intervals) {
    is.push_back({{"walls", {wall_name(i.walls[0]), wall_name(i.walls[1])}}, {"residentColumns", i.resident_columns}});
  }
  return {{"blockStart", sc.block_start}, {"intervals", is}};
}

ShearingConfig config_of(const ordered_json& j) {
  ShearingConfig sc;
  sc.block_start = get<int>(j, "blockStart");
  for (const auto& i : get<ordered_json>(j, "intervals")) {
    ShearInterval si;
    const auto& walls = get<ordered_json>(i, "walls");
    if (!walls.is_array() || walls.size() != 2) bad("walls must hold two tags");
    si.walls = {wall_from(walls[0]), wall_from(walls[1])};
    si.resident_columns = get<int>(i, "residentColumns");
    sc.intervals.push_back(si);
  }
  return sc;
}

ordered_json marking_json(const Marking& m) {
  ordered_json path = m.has_path() ? ordered_json{{"firstRow", m.first_row}, {"lastRow", m.last_row}} : ordered_json(nullptr);
  return {{"edgePath", path}, {"protectedRows", m.protected_rows}};
}

Marking marking_of(const ordered_json& j) {
  Marking m;
  if (j.contains("edgePath") && !j.at("edgePath").is_null()) {
    m.first_row = get<int>(j.at("edgePath"), "firstRow");
    m.last_row = get<int>(j.at("edgePath"), "lastRow");
  }
  if (j.contains("protectedRows")) m.protected_rows = get<std::vector<int>>(j, "protectedRows");
  return m;
}

ordered_json move_json(const ElementaryMove& mv) {
  ordered_json j{{"kind", to_string(mv.kind)}, {"a", mv.a}, {"b", mv.b}, {"variant", mv.variant}};
  j["interval"] = mv.interval >= 0 ? ordered_json(mv.interval) : ordered_json(nullptr);
  return j;
}

ElementaryMove move_of(const ordered_json& j) {
  ElementaryMove mv;
  const auto kind = move_kind_from_string(get<std::string>(j, "kind"));
  if (!kind) bad("unknown move kind \"" + get<std::string>(j, "kind") + "\"");
  mv.kind = *kind;
  mv.a = get<int>(j, "a");
  mv.b = j.contains("b") ? get<int>(j, "b") : 0;
  mv.variant = j.contains("variant") ? get<int>(j, "variant") : 0;
  mv.interval = optional_int_from(j, "interval").value_or(-1);
  return mv;
}

ordered_json claim_json(const Claim& c) {
  ordered_json wit = ordered_json::array();
  for (const auto& a : c.witness) wit.push_back({{"type", a.horizontal ? "horizontal" : "vertical"}, {"index", a.index}});
  return {{"kind", to_string(c.kind)},
          {"terminalWord", word_json(c.terminal_word)},
          {"formWord", word_json(c.form_word)},
          {"witness", wit}};
}

Claim claim_of(const ordered_json& j) {
  Claim c;
  const auto kind = target_move_from_string(get<std::string>(j, "kind"));
  if (!kind) bad("unknown target move \"" + get<std::string>(j, "kind") + "\"");
  c.kind = *kind;
  c.terminal_word = word_of(get<ordered_json>(j, "terminalWord"));
  c.form_word = j.contains("formWord") ? word_of(j.at("formWord")) : c.terminal_word;
  for (const auto& a : get<ordered_json>(j, "witness")) {
    const auto type = get<std::string>(a, "type");
    if (type != "horizontal" && type != "vertical") bad("witness type must be horizontal or vertical");
    c.witness.push_back({type == "horizontal", get<int>(a, "index")});
  }
  return c;
}

ordered_json certificate_json(const MoveCertificate& c) {
  ordered_json moves = ordered_json::array();
  for (const auto& mv : c.moves) moves.push_back(move_json(mv));
  return {{"schemaVersion", kSchemaVersion},
          {"initialWord", word_json(c.initial_word)},
          {"initialGrid", grid_json(c.initial_grid, {})},
          {"config", config_json(c.config)},
          {"initialMarking", marking_json(c.initial_marking)},
          {"moves", moves},
          {"claim", claim_json(c.claim)}};
}

void check_version(const ordered_json& j) {
  if (get<int>(j, "schemaVersion") != kSchemaVersion) bad("unsupported schemaVersion");
}

}  // namespace

std::string word_to_json(const BraidWord& w) {
  ordered_json j{{"schemaVersion", kSchemaVersion}};
  j.update(word_json(w));
  return j.dump(2) + "\n";
}

BraidWord word_from_json(const std::string& text) { return word_of(parse(text)); }

std::string grid_to_json(const ArcPresentation& g, const ShearingConfig& sc) {
  ordered_json j{{"schemaVersion", kSchemaVersion}};
  j.update(grid_json(g, sc));
  return j.dump(2) + "\n";
}

std::pair<ArcPresentation, ShearingConfig> grid_from_json(const std::string& text) { return grid_of(parse(text)); }

std::string certificate_to_json(const MoveCertificate& c) { return certificate_json(c).dump(2) + "\n"; }

MoveCertificate certificate_from_json(const std::string& text) {
  const auto j = parse(text);
  check_version(j);
  MoveCertificate c;
  c.initial_word = word_of(get<ordered_json>(j, "initialWord"));
  c.initial_grid = grid_of(get<ordered_json>(j, "initialGrid")).first;
  c.config = config_of(get<ordered_json>(j, "config"));
  c.initial_marking = marking_of(get<ordered_json>(j, "initialMarking"));
  for (const auto& mv : get<ordered_json>(j, "moves")) c.moves.push_back(move_of(mv));
  c.claim = claim_of(get<ordered_json>(j, "claim"));
  return c;
}

std::string verdict_to_json(const Verdict& v, TargetMove kind, bool with_timing) {
  ordered_json j{{"schemaVersion", kSchemaVersion},
                 {"move", to_string(kind)},
                 {"outcome", to_string(v.outcome)},
                 {"statesVisited", v.states_visited},
                 {"rootsExplored", v.roots_explored},
                 {"millis", with_timing ? v.millis : 0.0},
                 {"note", v.note}};
  if (v.related_word) j["relatedWord"] = word_json(*v.related_word);
  if (v.certificate) j["certificate"] = certificate_json(*v.certificate);
  return j.dump(2) + "\n";
}

}  // namespace braidforge
