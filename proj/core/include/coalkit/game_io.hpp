#ifndef COALKIT_GAME_IO_HPP
#define COALKIT_GAME_IO_HPP

#include <string>

#include "coalkit/games.hpp"
#include "coalkit/treewidth.hpp"

namespace coalkit {

/// Game JSON: {"players":[...], "repr":{"type":"graph"|"mcnet"|"explicit", ...}}.
/// All numbers are rational strings "p" or "p/q"; explicit worths may omit
/// zero entries. Throws ParseError with line context.
Game parse_game(const std::string& json_text);
Game load_game(const std::string& path);

/// Canonical serialization: fixed key order, edges sorted by endpoints,
/// explicit worths sorted by coalition bits with zeros omitted. Emitted
/// files re-parse to an identical game.
std::string serialize_game(const Game& g);

/// Payoff JSON: {"payoffs":{"a":"4","b":"14",...}}; every player exactly once.
PayoffVector parse_payoff(const std::string& json_text, const PlayerSet& ps);
PayoffVector load_payoff(const std::string& path, const PlayerSet& ps);
std::string serialize_payoff(const PayoffVector& x, const PlayerSet& ps);

/// Stable FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string game_digest(const Game& g);

/// Debugging dump: {"width":..., "parent":[...], "bags":[["a","b"],...]}.
std::string serialize_decomposition(const TreeDecomposition& td, const PlayerSet& ps);

}  // namespace coalkit

#endif  // COALKIT_GAME_IO_HPP
