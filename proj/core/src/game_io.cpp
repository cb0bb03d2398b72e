#include "coalkit/game_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coalkit/errors.hpp"

namespace coalkit {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail_parse(const std::string& text, std::size_t byte, const std::string& what) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail_parse(text, e.byte, e.what());
  }
}

std::string require_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + " must be a string");
  return j.get<std::string>();
}

const Json& require_field(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + " is missing '" + key + "'");
  return *it;
}

PlayerSet parse_players(const Json& j) {
  const Json& arr = require_field(j, "players", "game");
  if (!arr.is_array()) throw ParseError("'players' must be an array");
  std::vector<std::string> names;
  for (const auto& p : arr) names.push_back(require_string(p, "player name"));
  return PlayerSet(std::move(names));
}

Coalition parse_member_list(const Json& arr, const PlayerSet& ps, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + " must be an array of player names");
  Coalition s;
  for (const auto& p : arr) {
    int i = ps.index_of(require_string(p, where));
    if (s.contains(i)) throw ParseError(where + " lists '" + ps.name(i) + "' twice");
    s = s.with(i);
  }
  return s;
}

Game parse_repr(const PlayerSet& ps, const Json& repr) {
  std::string type = require_string(require_field(repr, "type", "repr"), "repr type");
  if (type == "graph") {
    const Json& edges = require_field(repr, "edges", "graph repr");
    if (!edges.is_array()) throw ParseError("'edges' must be an array");
    std::vector<WeightedEdge> list;
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 3)
        throw ParseError("each edge must be [player, player, weight]");
      int u = ps.index_of(require_string(e[0], "edge endpoint"));
      int v = ps.index_of(require_string(e[1], "edge endpoint"));
      list.push_back({u, v, Rational::parse(require_string(e[2], "edge weight"))});
    }
    return GraphGame(ps, std::move(list));
  }
  if (type == "mcnet") {
    const Json& rules = require_field(repr, "rules", "mcnet repr");
    if (!rules.is_array()) throw ParseError("'rules' must be an array");
    std::vector<McRule> list;
    for (const auto& r : rules) {
      McRule rule;
      rule.pos = r.contains("pos") ? parse_member_list(r["pos"], ps, "rule 'pos'") : Coalition();
      rule.neg = r.contains("neg") ? parse_member_list(r["neg"], ps, "rule 'neg'") : Coalition();
      rule.value = Rational::parse(require_string(require_field(r, "value", "rule"), "rule value"));
      list.push_back(rule);
    }
    return McNet(ps, std::move(list));
  }
  if (type == "explicit") {
    const Json& worths = require_field(repr, "worths", "explicit repr");
    if (!worths.is_object()) throw ParseError("'worths' must be an object");
    if (ps.count() > 20) throw TooManyPlayers("explicit tables are capped at 20 players");
    std::vector<Rational> table(std::size_t{1} << ps.count());
    for (const auto& [key, val] : worths.items()) {
      Coalition s = ps.parse_coalition(key);
      Rational w = Rational::parse(require_string(val, "worth"));
      if (s.empty() && !w.is_zero())
        throw ParseError("the empty coalition must have worth 0");
      table[s.bits()] = w;
    }
    return ExplicitGame(ps, std::move(table));
  }
  throw ParseError("unknown representation type '" + type + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Json players_json(const PlayerSet& ps) {
  Json arr = Json::array();
  for (const auto& name : ps.names()) arr.push_back(name);
  return arr;
}

Json member_list_json(Coalition s, const PlayerSet& ps) {
  Json arr = Json::array();
  s.for_each([&](int i) { arr.push_back(ps.name(i)); });
  return arr;
}

}  // namespace

Game parse_game(const std::string& json_text) {
  Json doc = parse_document(json_text);
  if (!doc.is_object()) throw ParseError("game document must be an object");
  PlayerSet ps = parse_players(doc);
  return parse_repr(ps, require_field(doc, "repr", "game"));
}

Game load_game(const std::string& path) { return parse_game(read_file(path)); }

std::string serialize_game(const Game& g) {
  Json doc;
  doc["players"] = players_json(players(g));
  Json repr;
  if (const auto* graph = std::get_if<GraphGame>(&g)) {
    repr["type"] = "graph";
    Json edges = Json::array();
    for (const auto& e : graph->edges())
      edges.push_back(Json::array({graph->players().name(e.u), graph->players().name(e.v),
                                   e.weight.str()}));
    repr["edges"] = std::move(edges);
  } else if (const auto* net = std::get_if<McNet>(&g)) {
    repr["type"] = "mcnet";
    Json rules = Json::array();
    for (const auto& r : net->rules()) {
      Json rule;
      rule["pos"] = member_list_json(r.pos, net->players());
      rule["neg"] = member_list_json(r.neg, net->players());
      rule["value"] = r.value.str();
      rules.push_back(std::move(rule));
    }
    repr["rules"] = std::move(rules);
  } else {
    const auto& table = std::get<ExplicitGame>(g);
    repr["type"] = "explicit";
    Json worths = Json::object();
    for (std::uint64_t bits = 1; bits < table.table().size(); ++bits) {
      const Rational& w = table.table()[bits];
      if (!w.is_zero())
        worths[table.players().format_coalition(Coalition(bits))] = w.str();
    }
    repr["worths"] = std::move(worths);
  }
  doc["repr"] = std::move(repr);
  return doc.dump(2) + "\n";
}

PayoffVector parse_payoff(const std::string& json_text, const PlayerSet& ps) {
  Json doc = parse_document(json_text);
  if (!doc.is_object()) throw ParseError("payoff document must be an object");
  const Json& payoffs = require_field(doc, "payoffs", "payoff document");
  if (!payoffs.is_object()) throw ParseError("'payoffs' must be an object");
  std::vector<Rational> values(ps.count());
  std::vector<bool> seen(ps.count(), false);
  for (const auto& [name, val] : payoffs.items()) {
    int i = ps.index_of(name);
    if (seen[i]) throw ParseError("payoff for '" + name + "' given twice");
    seen[i] = true;
    values[i] = Rational::parse(require_string(val, "payoff"));
  }
  for (int i = 0; i < ps.count(); ++i)
    if (!seen[i]) throw ParseError("missing payoff for '" + ps.name(i) + "'");
  return PayoffVector(std::move(values));
}

PayoffVector load_payoff(const std::string& path, const PlayerSet& ps) {
  return parse_payoff(read_file(path), ps);
}

std::string serialize_payoff(const PayoffVector& x, const PlayerSet& ps) {
  Json doc;
  Json payoffs = Json::object();
  for (int i = 0; i < ps.count(); ++i) payoffs[ps.name(i)] = x[i].str();
  doc["payoffs"] = std::move(payoffs);
  return doc.dump(2) + "\n";
}

std::string game_digest(const Game& g) {
  std::string text = serialize_game(g);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string serialize_decomposition(const TreeDecomposition& td, const PlayerSet& ps) {
  Json doc;
  doc["width"] = td.width;
  doc["parent"] = td.parent;
  Json bags = Json::array();
  for (const auto& bag : td.bags) {
    Json b = Json::array();
    for (int v : bag) b.push_back(ps.name(v));
    bags.push_back(std::move(b));
  }
  doc["bags"] = std::move(bags);
  return doc.dump(2) + "\n";
}

}  // namespace coalkit
