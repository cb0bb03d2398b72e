#include "coalkit/players.hpp"

#include <cstdlib>

#include "coalkit/errors.hpp"

namespace coalkit {

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  out.reserve(size());
  for_each([&](int i) { out.push_back(i); });
  return out;
}

PlayerSet::PlayerSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ParseError("a game needs at least one player");
  if (names_.size() > 64) throw TooManyPlayers("at most 64 players are supported");
  for (int i = 0; i < count(); ++i) {
    if (names_[i].empty()) throw ParseError("empty player name");
    if (!index_.emplace(names_[i], i).second)
      throw ParseError("duplicate player name '" + names_[i] + "'");
  }
}

int PlayerSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

int PlayerSet::index_of(std::string_view name) const {
  int i = find(name);
  if (i < 0) throw ParseError("unknown player '" + std::string(name) + "'");
  return i;
}

Coalition PlayerSet::parse_coalition(std::string_view text) const {
  Coalition s;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos);
    // trim surrounding blanks
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      int i = index_of(item);
      if (s.contains(i)) throw ParseError("player '" + std::string(item) + "' listed twice");
      s = s.with(i);
    } else if (comma != std::string_view::npos || (pos != 0 && pos == text.size())) {
      throw ParseError("empty item in coalition list '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return s;
}

std::string PlayerSet::format_coalition(Coalition s) const {
  std::string out;
  s.for_each([&](int i) {
    if (!out.empty()) out += ',';
    out += names_[i];
  });
  return out;
}

Rational PayoffVector::total(Coalition s) const {
  Rational sum;
  s.for_each([&](int i) { sum += values_[i]; });
  return sum;
}

void require_enumerable(int n, bool force) {
  if (force) return;
  long cap = 30;
  if (const char* env = std::getenv("COALKIT_MAX_PLAYERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) cap = v;
  }
  if (cap > 64) cap = 64;
  if (n > cap)
    throw TooManyPlayers("exhaustive enumeration refused for " + std::to_string(n) +
                         " players (cap " + std::to_string(cap) +
                         "; raise COALKIT_MAX_PLAYERS or pass --force)");
}

}  // namespace coalkit
