#include <algorithm>
#include <unordered_set>

#include "opacity/nfa.hpp"

namespace opacity {

std::optional<EventId> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < events.size(); ++i)
    if (events[i].name == name) return static_cast<EventId>(i);
  return std::nullopt;
}

std::vector<EventId> Alphabet::observable() const {
  std::vector<EventId> out;
  for (std::size_t i = 0; i < events.size(); ++i)
    if (events[i].observable) out.push_back(static_cast<EventId>(i));
  return out;
}

std::vector<EventId> Alphabet::unobservable() const {
  std::vector<EventId> out;
  for (std::size_t i = 0; i < events.size(); ++i)
    if (!events[i].observable) out.push_back(static_cast<EventId>(i));
  return out;
}

std::size_t Alphabet::observable_count() const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [](const Event& e) { return e.observable; }));
}

std::vector<EventId> Alphabet::observable_by_name() const {
  auto out = observable();
  std::stable_sort(out.begin(), out.end(),
                   [&](EventId a, EventId b) { return events[a].name < events[b].name; });
  return out;
}

Alphabet Alphabet::observable_part() const {
  Alphabet out;
  for (const Event& e : events)
    if (e.observable) out.events.push_back(e);
  return out;
}

EventId Alphabet::add(std::string name, bool observable) {
  events.push_back({std::move(name), observable});
  return static_cast<EventId>(events.size() - 1);
}

Alphabet make_alphabet(std::initializer_list<std::string_view> observable,
                       std::initializer_list<std::string_view> unobservable) {
  Alphabet out;
  for (auto n : observable) out.add(std::string(n), true);
  for (auto n : unobservable) out.add(std::string(n), false);
  return out;
}

std::string fresh_name(std::string_view base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& candidate) {
    return std::find(taken.begin(), taken.end(), candidate) != taken.end();
  };
  std::string candidate(base);
  for (std::size_t i = 1; used(candidate); ++i)
    candidate = std::string(base) + "_" + std::to_string(i);
  return candidate;
}

}  // namespace opacity
