#ifndef COALKIT_PLAYERS_HPP
#define COALKIT_PLAYERS_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coalkit/rational.hpp"

namespace coalkit {

/// A subset of players as a 64-bit bitset. Player indices are fixed by the
/// owning PlayerSet; only bits below its count may be set.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}

  static constexpr Coalition single(int i) { return Coalition(std::uint64_t{1} << i); }
  static constexpr Coalition full(int n) {
    return Coalition(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1; }
  constexpr bool subset_of(Coalition o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(Coalition o) const { return (bits_ & o.bits_) != 0; }

  constexpr Coalition with(int i) const { return Coalition(bits_ | (std::uint64_t{1} << i)); }
  constexpr Coalition without(int i) const { return Coalition(bits_ & ~(std::uint64_t{1} << i)); }

  friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.bits_ | b.bits_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.bits_ & b.bits_); }
  friend constexpr Coalition operator-(Coalition a, Coalition b) { return Coalition(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Coalition a, Coalition b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(Coalition a, Coalition b) { return a.bits_ != b.bits_; }

  /// Member indices in ascending order.
  std::vector<int> members() const;

  /// Calls fn(i) for each member index, ascending.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t m = bits_; m;) {
      int i = std::countr_zero(m);
      fn(i);
      m &= m - 1;
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Ordered set of uniquely named players; indices 0..n-1 follow list order.
/// At most 64 players so coalitions fit in a machine word.
class PlayerSet {
 public:
  explicit PlayerSet(std::vector<std::string> names);

  int count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  Coalition all() const { return Coalition::full(count()); }

  /// Index of a named player, or -1.
  int find(std::string_view name) const;
  /// Index of a named player; throws ParseError when absent.
  int index_of(std::string_view name) const;

  /// Parses a comma-separated member list ("a,b"; "" is the empty coalition).
  Coalition parse_coalition(std::string_view text) const;
  /// Comma-separated member names in index order.
  std::string format_coalition(Coalition s) const;

  friend bool operator==(const PlayerSet& a, const PlayerSet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

/// Player-indexed rational payoffs; x(S) denotes the sum over a coalition.
class PayoffVector {
 public:
  PayoffVector() = default;
  explicit PayoffVector(std::vector<Rational> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  const Rational& operator[](int i) const { return values_[i]; }
  Rational& operator[](int i) { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  /// x(S) = sum of x_i over members of S.
  Rational total(Coalition s) const;

  friend bool operator==(const PayoffVector& a, const PayoffVector& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<Rational> values_;
};

/// Enumeration cap for exhaustive engines: 30 players unless overridden by
/// the COALKIT_MAX_PLAYERS environment variable or force=true.
/// Throws TooManyPlayers when exceeded.
void require_enumerable(int n, bool force = false);

}  // namespace coalkit

#endif  // COALKIT_PLAYERS_HPP
