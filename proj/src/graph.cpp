#include "greybox/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <utility>

#include "greybox/error.hpp"

namespace greybox {

EventTable::EventTable(std::vector<EventId> ids) : ids_(std::move(ids)) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    index_.emplace(ids_[i], i);
}

std::optional<std::size_t> EventTable::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

std::size_t EventTable::indexOf(std::string_view id) const {
  if (auto i = find(id))
    return *i;
  throw Error("undeclared event '" + std::string(id) + "'");
}

std::vector<EventId> EventTable::duplicates() const {
  std::vector<EventId> out;
  std::set<std::string_view> seen;
  for (const auto &id : ids_)
    if (!seen.insert(id).second)
      out.push_back(id);
  return out;
}

Efg::Efg(std::vector<EventId> events, std::vector<EventId> initials,
         std::vector<FlowEdge> edges)
    : events_(std::move(events)), initials_(std::move(initials)), edges_(std::move(edges)) {
  const std::size_t n = events_.size();
  isInitial_.assign(n, false);
  successors_.assign(n, {});
  for (const auto &id : initials_)
    if (auto i = events_.find(id))
      isInitial_[*i] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (isInitial_[i])
      initialIndices_.push_back(i);
  for (const auto &e : edges_) {
    auto from = events_.find(e.from);
    auto to = events_.find(e.to);
    if (from && to)
      successors_[*from].push_back(*to);
  }
  for (auto &succ : successors_) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    edgeCount_ += succ.size();
  }
}

bool Efg::hasEdge(std::size_t from, std::size_t to) const {
  const auto &succ = successors_.at(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

Edg::Edg(std::vector<EventId> events, std::vector<DependencyEdge> edges)
    : events_(std::move(events)), edges_(std::move(edges)) {
  successors_.assign(events_.size(), {});
  for (const auto &e : edges_) {
    auto from = events_.find(e.from);
    auto to = events_.find(e.to);
    if (!from || !to || e.weight == 0)
      continue;
    auto &succ = successors_[*from];
    bool duplicate = std::any_of(succ.begin(), succ.end(),
                                 [&](const Successor &s) { return s.to == *to; });
    if (!duplicate)
      succ.push_back({*to, e.weight});
  }
  for (auto &succ : successors_) {
    std::sort(succ.begin(), succ.end(),
              [](const Successor &a, const Successor &b) { return a.to < b.to; });
    edgeCount_ += succ.size();
  }
}

std::optional<unsigned> Edg::weight(std::size_t from, std::size_t to) const {
  for (const auto &s : successors_.at(from))
    if (s.to == to)
      return s.weight;
  return std::nullopt;
}

namespace {

void checkEventTable(const EventTable &events, std::vector<std::string> &out) {
  for (const auto &d : events.duplicates())
    out.push_back("duplicate event '" + d + "'");
}

} // namespace

std::vector<std::string> validateEfg(const Efg &g) {
  std::vector<std::string> out;
  checkEventTable(g.events(), out);
  if (!g.events().empty() && g.initials().empty())
    out.push_back("no initial events");
  std::set<std::string_view> initials;
  for (const auto &i : g.initials()) {
    if (!g.events().contains(i))
      out.push_back("initial event '" + i + "' is not declared");
    if (!initials.insert(i).second)
      out.push_back("initial event '" + i + "' listed twice");
  }
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const auto &e : g.edges()) {
    if (!g.events().contains(e.from))
      out.push_back("edge " + e.from + " -> " + e.to + ": undeclared source '" + e.from + "'");
    if (!g.events().contains(e.to))
      out.push_back("edge " + e.from + " -> " + e.to + ": undeclared target '" + e.to + "'");
    if (!seen.emplace(e.from, e.to).second)
      out.push_back("duplicate edge " + e.from + " -> " + e.to);
  }
  return out;
}

std::vector<std::string> validateEdg(const Edg &g) {
  std::vector<std::string> out;
  checkEventTable(g.events(), out);
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const auto &e : g.edges()) {
    std::string name = "edge " + e.from + " -" + std::to_string(e.weight) + "-> " + e.to;
    if (!g.events().contains(e.from))
      out.push_back(name + ": undeclared source '" + e.from + "'");
    if (!g.events().contains(e.to))
      out.push_back(name + ": undeclared target '" + e.to + "'");
    if (e.weight == 0)
      out.push_back(name + ": weight must be at least 1");
    if (!seen.emplace(e.from, e.to).second)
      out.push_back("duplicate edge " + e.from + " -> " + e.to);
  }
  return out;
}

namespace {

[[noreturn]] void throwViolations(const char *what, const std::vector<std::string> &v) {
  std::string msg = std::string("invalid ") + what + ":";
  for (const auto &s : v)
    msg += "\n  " + s;
  throw Error(msg);
}

} // namespace

void requireValid(const Efg &g) {
  if (auto v = validateEfg(g); !v.empty())
    throwViolations("EFG", v);
}

void requireValid(const Edg &g) {
  if (auto v = validateEdg(g); !v.empty())
    throwViolations("EDG", v);
}

bool isExecutable(std::span<const EventId> s, const Efg &g) {
  std::vector<std::size_t> idx;
  idx.reserve(s.size());
  for (const auto &e : s)
    idx.push_back(g.events().indexOf(e));
  if (idx.empty() || !g.isInitial(idx.front()))
    return false;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k)
    if (!g.hasEdge(idx[k], idx[k + 1]))
      return false;
  return true;
}

std::optional<std::vector<std::size_t>> shortestPath(const Efg &g, std::size_t from,
                                                     std::size_t to, PathMode mode) {
  const std::size_t n = g.size();
  if (from >= n || to >= n)
    throw Error("shortestPath: event index out of range");
  if (from == to && mode == PathMode::Normal)
    return std::vector<std::size_t>{};

  // FIFO over successor lists sorted by declIndex: the first discovery of a
  // node comes through the lexicographically smallest shortest path.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, none);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  if (from != to)
    seen[from] = true;
  for (auto s : g.successors(from)) {
    if (seen[s])
      continue;
    seen[s] = true;
    parent[s] = from;
    queue.push_back(s);
  }
  while (!queue.empty() && !seen[to]) {
    auto u = queue.front();
    queue.pop_front();
    for (auto s : g.successors(u)) {
      if (seen[s])
        continue;
      seen[s] = true;
      parent[s] = u;
      queue.push_back(s);
    }
  }
  if (!seen[to] || parent[to] == none)
    return std::nullopt;

  std::vector<std::size_t> path{to};
  for (auto v = parent[to]; v != from; v = parent[v])
    path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<EventId>> shortestPath(const Efg &g, std::string_view from,
                                                 std::string_view to, PathMode mode) {
  auto path = shortestPath(g, g.events().indexOf(from), g.events().indexOf(to), mode);
  if (!path)
    return std::nullopt;
  std::vector<EventId> out;
  out.reserve(path->size());
  for (auto i : *path)
    out.push_back(g.events().id(i));
  return out;
}

namespace {

std::string quote(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace

std::string exportDot(const Efg &g) {
  std::ostringstream os;
  os << "digraph EFG {\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    os << "  " << quote(g.events().id(i));
    if (g.isInitial(i))
      os << " [peripheries=2]";
    os << ";\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto j : g.successors(i))
      os << "  " << quote(g.events().id(i)) << " -> " << quote(g.events().id(j)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string exportDot(const Edg &g) {
  std::ostringstream os;
  os << "digraph EDG {\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "  " << quote(g.events().id(i)) << ";\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto &s : g.successors(i))
      os << "  " << quote(g.events().id(i)) << " -> " << quote(g.events().id(s.to))
         << " [label=\"" << s.weight << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace greybox
