#include "greybox/seqgen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "greybox/error.hpp"

namespace greybox {

GenConfig GenConfig::preset(char id) {
  switch (id) {
  case 'A': return {GenMode::Blackbox, 1, std::nullopt};
  case 'B': return {GenMode::Blackbox, 2, std::nullopt};
  case 'C': return {GenMode::Blackbox, 3, std::nullopt};
  case 'D': return {GenMode::Greybox, 2, std::nullopt};
  case 'E': return {GenMode::Greybox, 3, 50};
  case 'F': return {GenMode::Greybox, 3, 100};
  default: break;
  }
  throw Error(std::string("unknown configuration '") + id + "' (expected A..F)");
}

void GenConfig::validate() const {
  if (len == 0)
    throw Error("sequence length must be at least 1");
  if (top && *top == 0)
    throw Error("top must be at least 1");
}

std::string GenConfig::describe() const {
  std::ostringstream os;
  os << (mode == GenMode::Blackbox ? "blackbox" : "greybox") << " len=" << len;
  if (mode == GenMode::Greybox)
    os << " top=" << (top ? std::to_string(*top) : std::string("inf"));
  return os.str();
}

namespace {

struct Reach {
  std::size_t initial;
  std::vector<std::size_t> path; // excludes `initial`, ends at the target
};

/// Initial event with the shortest reaching path to `target`; ties go to the
/// lower declIndex because initials are visited in order.
std::optional<Reach> reachFromInitial(const Efg &g, std::size_t target) {
  std::optional<Reach> best;
  for (auto init : g.initialIndices()) {
    auto path = shortestPath(g, init, target);
    if (path && (!best || path->size() < best->path.size()))
      best = Reach{init, std::move(*path)};
  }
  return best;
}

std::vector<EventId> toIds(const EventTable &events, const std::vector<std::size_t> &idx) {
  std::vector<EventId> out;
  out.reserve(idx.size());
  for (auto i : idx)
    out.push_back(events.id(i));
  return out;
}

} // namespace

BlackboxResult genBlackbox(const Efg &g, std::size_t len) {
  requireValid(g);
  if (len == 0)
    throw Error("sequence length must be at least 1");

  BlackboxResult out;
  const auto &events = g.events();
  std::vector<std::optional<Reach>> reach(g.size());
  for (std::size_t e = 0; e < g.size(); ++e) {
    reach[e] = reachFromInitial(g, e);
    if (!reach[e])
      out.ungeneratable.push_back(events.id(e));
  }

  std::vector<std::size_t> walk;
  std::function<void()> extend = [&] {
    if (walk.size() == len) {
      const auto &r = *reach[walk.front()];
      ExecutableSequence s;
      if (!g.isInitial(walk.front())) {
        s.events.push_back(events.id(r.initial));
        for (std::size_t k = 0; k + 1 < r.path.size(); ++k)
          s.events.push_back(events.id(r.path[k]));
      }
      for (auto e : walk) {
        s.targets.push_back(s.events.size());
        s.events.push_back(events.id(e));
      }
      out.sequences.push_back(std::move(s));
      return;
    }
    for (auto next : g.successors(walk.back())) {
      walk.push_back(next);
      extend();
      walk.pop_back();
    }
  };
  for (std::size_t e = 0; e < g.size(); ++e) {
    if (!reach[e])
      continue;
    walk.assign(1, e);
    extend();
  }
  return out;
}

namespace {

using IndexPath = std::vector<std::size_t>;

class AbstractSearch {
public:
  AbstractSearch(const Edg &d, std::size_t len) : d_(d), len_(len), ranked_(d.size()) {
    for (std::size_t e = 0; e < d.size(); ++e) {
      auto &r = ranked_[e];
      r = d.successors(e);
      std::stable_sort(r.begin(), r.end(), [](const Edg::Successor &a, const Edg::Successor &b) {
        if (a.weight != b.weight)
          return a.weight > b.weight;
        return a.to < b.to;
      });
    }
  }

  std::vector<IndexPath> from(std::size_t start, std::optional<std::size_t> top,
                              std::set<IndexPath> &seen) {
    std::vector<IndexPath> found;
    IndexPath path{start};
    visit(path, top, seen, found);
    return found;
  }

private:
  // Returns false once `top` paths have been collected.
  bool visit(IndexPath &path, std::optional<std::size_t> top, std::set<IndexPath> &seen,
             std::vector<IndexPath> &found) {
    const auto &next = ranked_[path.back()];
    if (path.size() >= len_ || next.empty()) {
      if (seen.insert(path).second)
        found.push_back(path);
      return !top || found.size() < *top;
    }
    for (const auto &s : next) {
      path.push_back(s.to);
      bool more = visit(path, top, seen, found);
      path.pop_back();
      if (!more)
        return false;
    }
    return true;
  }

  const Edg &d_;
  std::size_t len_;
  std::vector<std::vector<Edg::Successor>> ranked_;
};

AbstractSequence toAbstract(const EventTable &events, const IndexPath &p) {
  return {toIds(events, p)};
}

} // namespace

std::vector<AbstractSequence> genAbstract(const Edg &d, std::size_t len,
                                          std::optional<std::size_t> top) {
  requireValid(d);
  GenConfig{GenMode::Greybox, len, top}.validate();
  AbstractSearch search(d, len);
  std::set<IndexPath> seen;
  std::vector<AbstractSequence> out;
  for (std::size_t e = 0; e < d.size(); ++e)
    for (const auto &p : search.from(e, top, seen))
      out.push_back(toAbstract(d.events(), p));
  return out;
}

std::vector<AbstractSequence> genAbstractFrom(const Edg &d, std::size_t start, std::size_t len,
                                              std::optional<std::size_t> top) {
  requireValid(d);
  GenConfig{GenMode::Greybox, len, top}.validate();
  if (start >= d.size())
    throw Error("genAbstractFrom: start index out of range");
  AbstractSearch search(d, len);
  std::set<IndexPath> seen;
  std::vector<AbstractSequence> out;
  for (const auto &p : search.from(start, top, seen))
    out.push_back(toAbstract(d.events(), p));
  return out;
}

ConversionResult toExecutable(const Efg &g, std::span<const AbstractSequence> abstract) {
  ConversionResult out;
  const auto &events = g.events();
  for (const auto &a : abstract) {
    std::vector<std::size_t> idx;
    idx.reserve(a.events.size());
    for (const auto &e : a.events)
      idx.push_back(events.indexOf(e));
    if (idx.empty())
      continue;

    Conversion conv{a, {}};
    ExecutableSequence part;
    std::size_t k = 0;
    // Starts a new part at idx[k]; false when no initial event reaches it.
    auto startPart = [&](std::size_t k) {
      auto r = reachFromInitial(g, idx[k]);
      if (!r) {
        out.diagnostics.push_back({ConversionDiagnostic::Kind::Unreachable, a, k,
                                   "event '" + a.events[k] +
                                       "' is unreachable from every initial event"});
        return false;
      }
      part = {};
      part.events.push_back(events.id(r->initial));
      for (auto e : r->path)
        part.events.push_back(events.id(e));
      part.targets.push_back(part.events.size() - 1);
      return true;
    };

    bool open = startPart(0);
    for (k = 0; open && k + 1 < idx.size(); ++k) {
      auto mode = idx[k] == idx[k + 1] ? PathMode::Strict : PathMode::Normal;
      if (auto hop = shortestPath(g, idx[k], idx[k + 1], mode)) {
        for (auto e : *hop)
          part.events.push_back(events.id(e));
        part.targets.push_back(part.events.size() - 1);
        continue;
      }
      out.diagnostics.push_back({ConversionDiagnostic::Kind::Split, a, k + 1,
                                 "no EFG path from '" + a.events[k] + "' to '" +
                                     a.events[k + 1] + "'; sequence split"});
      conv.parts.push_back(std::move(part));
      open = startPart(k + 1);
    }
    if (open)
      conv.parts.push_back(std::move(part));
    if (!conv.parts.empty())
      out.converted.push_back(std::move(conv));
  }
  return out;
}

namespace {

std::string recordId(std::size_t n) { return "s" + std::to_string(n); }

} // namespace

GenerationResult generateSequences(const Efg &efg, const Edg *edg, const GenConfig &config) {
  config.validate();
  GenerationResult out;
  if (config.mode == GenMode::Blackbox) {
    auto bb = genBlackbox(efg, config.len);
    for (auto &s : bb.sequences) {
      SequenceRecord r;
      r.id = recordId(out.records.size() + 1);
      r.sequence = std::move(s);
      r.origin = Origin::Blackbox;
      out.records.push_back(std::move(r));
    }
    for (const auto &e : bb.ungeneratable)
      out.diagnostics.push_back("event '" + e + "' is unreachable from every initial event");
    return out;
  }

  if (!edg)
    throw Error("grey-box generation requires an EDG");
  requireValid(efg);
  if (edg->events().ids() != efg.events().ids())
    throw Error("EDG and EFG declare different event sets");

  auto abstract = genAbstract(*edg, config.len, config.top);
  out.abstractCount = abstract.size();
  auto conv = toExecutable(efg, abstract);
  for (const auto &d : conv.diagnostics)
    out.diagnostics.push_back(d.message);

  std::set<std::vector<std::vector<EventId>>> emitted;
  for (auto &c : conv.converted) {
    std::vector<std::vector<EventId>> key;
    for (const auto &p : c.parts)
      key.push_back(p.events);
    if (!emitted.insert(std::move(key)).second)
      continue;
    std::optional<std::string> head;
    for (auto &p : c.parts) {
      SequenceRecord r;
      r.id = recordId(out.records.size() + 1);
      r.sequence = std::move(p);
      r.origin = Origin::Greybox;
      r.abstract = c.source.events;
      r.splitOf = head;
      if (!head)
        head = r.id;
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

} // namespace greybox
