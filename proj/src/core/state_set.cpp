#include "opacity/state_set.hpp"

#include <algorithm>

namespace opacity {

StateSet::StateSet(std::size_t universe, std::initializer_list<StateId> members)
    : StateSet(universe) {
  for (StateId s : members) insert(s);
}

StateSet StateSet::from(std::size_t universe, std::span<const StateId> members) {
  StateSet out(universe);
  for (StateId s : members) out.insert(s);
  return out;
}

StateSet StateSet::full(std::size_t universe) {
  StateSet out(universe);
  for (std::size_t w = 0; w < universe / 64; ++w) out.words_[w] = ~bits::Word{0};
  if (universe % 64) out.words_[universe / 64] = (bits::Word{1} << (universe % 64)) - 1;
  return out;
}

void StateSet::insert(StateId s) {
  const std::size_t w = s / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= bits::Word{1} << (s % 64);
}

void StateSet::erase(StateId s) {
  const std::size_t w = s / 64;
  if (w < words_.size()) words_[w] &= ~(bits::Word{1} << (s % 64));
}

std::size_t StateSet::significant_words() const {
  std::size_t n = words_.size();
  while (n > 0 && words_[n - 1] == 0) --n;
  return n;
}

bool StateSet::empty() const { return significant_words() == 0; }

std::size_t StateSet::count() const {
  return bits::active().popcount(words_.data(), words_.size());
}

std::optional<StateId> StateSet::max_member() const {
  const std::size_t n = significant_words();
  if (n == 0) return std::nullopt;
  const int top = 63 - __builtin_clzll(words_[n - 1]);
  return static_cast<StateId>((n - 1) * 64 + top);
}

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for_each([&](StateId s) { out.push_back(s); });
  return out;
}

bool StateSet::intersects(const StateSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  return bits::active().intersects(words_.data(), other.words_.data(), n);
}

bool StateSet::is_subset_of(const StateSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  if (bits::active().any_and_not(words_.data(), other.words_.data(), n)) return false;
  for (std::size_t w = n; w < words_.size(); ++w)
    if (words_[w]) return false;
  return true;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  bits::active().or_into(words_.data(), other.words_.data(), other.words_.size());
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) words_[w] &= other.words_[w];
  for (std::size_t w = n; w < words_.size(); ++w) words_[w] = 0;
  return *this;
}

StateSet& StateSet::subtract(const StateSet& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) words_[w] &= ~other.words_[w];
  return *this;
}

bool operator==(const StateSet& a, const StateSet& b) {
  const std::size_t n = a.significant_words();
  if (n != b.significant_words()) return false;
  return std::equal(a.words_.begin(), a.words_.begin() + n, b.words_.begin());
}

bool operator<(const StateSet& a, const StateSet& b) {
  return a.members() < b.members();
}

std::size_t StateSet::hash() const {
  // FNV-1a over significant words
  std::uint64_t h = 1469598103934665603ull;
  const std::size_t n = significant_words();
  for (std::size_t w = 0; w < n; ++w) {
    h ^= words_[w];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::span<bits::Word> StateSet::words_for(std::size_t universe) {
  const std::size_t need = (universe + 63) / 64;
  if (words_.size() < need) words_.resize(need, 0);
  return words_;
}

std::string format_set(const StateSet& s, std::span<const std::string> names) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](StateId q) {
    if (!first) out += ',';
    first = false;
    out += q < names.size() ? names[q] : std::to_string(q);
  });
  out += '}';
  return out;
}

}  // namespace opacity
