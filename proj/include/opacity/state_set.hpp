#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opacity/bits.hpp"

namespace opacity {

using StateId = std::uint32_t;
using EventId = std::uint32_t;

/// Bitmask over the state list of some automaton. The width grows on
/// insert; equality and hashing ignore trailing zero words, so sets built
/// for different universe sizes compare by membership only.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}
  StateSet(std::size_t universe, std::initializer_list<StateId> members);

  static StateSet from(std::size_t universe, std::span<const StateId> members);
  static StateSet full(std::size_t universe);

  void insert(StateId s);
  void erase(StateId s);
  bool contains(StateId s) const {
    const std::size_t w = s / 64;
    return w < words_.size() && ((words_[w] >> (s % 64)) & 1u);
  }

  bool empty() const;
  std::size_t count() const;
  std::optional<StateId> max_member() const;
  std::vector<StateId> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      bits::Word word = words_[w];
      while (word) {
        const int bit = __builtin_ctzll(word);
        f(static_cast<StateId>(w * 64 + bit));
        word &= word - 1;
      }
    }
  }

  bool intersects(const StateSet& other) const;
  bool is_subset_of(const StateSet& other) const;

  StateSet& operator|=(const StateSet& other);
  StateSet& operator&=(const StateSet& other);
  /// Removes every member of `other`.
  StateSet& subtract(const StateSet& other);

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend bool operator==(const StateSet& a, const StateSet& b);

  /// Lexicographic order of sorted member lists.
  friend bool operator<(const StateSet& a, const StateSet& b);

  std::size_t hash() const;

  std::span<const bits::Word> words() const { return words_; }
  /// Raw word access for kernels; resizes to at least `universe` bits.
  std::span<bits::Word> words_for(std::size_t universe);

 private:
  std::size_t significant_words() const;

  std::vector<bits::Word> words_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

/// "{0,2}" style label using the given state names, members ascending.
std::string format_set(const StateSet& s, std::span<const std::string> names);

}  // namespace opacity
