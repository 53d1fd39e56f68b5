#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace oracle {

using greybox::DependencyEdge;
using greybox::FlowEdge;
using greybox::ProgramModel;

WeightMap dependencyWeights(const ProgramModel &p, const std::vector<EventId> &events) {
  std::map<std::string, const greybox::ProgramMethod *> methods;
  for (const auto &c : p.classes)
    for (const auto &m : c.methods)
      methods[c.name + "." + m.name] = &m;

  auto touched = [&](const std::string &root, bool writes) {
    std::set<std::string> reach{root};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto &m : std::set<std::string>(reach))
        for (const auto &c : methods.at(m)->calls)
          grew |= reach.insert(c).second;
    }
    std::set<std::string> out;
    for (const auto &m : reach) {
      const auto &s = writes ? methods.at(m)->writes : methods.at(m)->reads;
      out.insert(s.begin(), s.end());
    }
    return out;
  };

  WeightMap out;
  for (const auto &a : events) {
    auto ha = p.bindings.find(a);
    if (ha == p.bindings.end())
      continue;
    auto w = touched(ha->second, true);
    for (const auto &b : events) {
      auto hb = p.bindings.find(b);
      if (hb == p.bindings.end())
        continue;
      auto r = touched(hb->second, false);
      unsigned n = 0;
      for (const auto &f : r)
        n += w.count(f);
      if (n > 0)
        out[{a, b}] = n;
    }
  }
  return out;
}

std::set<std::vector<EventId>> maximalPaths(const std::vector<EventId> &events,
                                            const std::vector<DependencyEdge> &edges,
                                            std::size_t len) {
  auto succ = [&](const EventId &e) {
    std::vector<EventId> out;
    for (const auto &d : edges)
      if (d.from == e)
        out.push_back(d.to);
    return out;
  };
  std::set<std::vector<EventId>> out;
  std::vector<std::vector<EventId>> frontier;
  for (const auto &e : events)
    frontier.push_back({e});
  while (!frontier.empty()) {
    std::vector<std::vector<EventId>> next;
    for (auto &p : frontier) {
      auto s = succ(p.back());
      if (p.size() == len || s.empty()) {
        out.insert(p);
        continue;
      }
      for (const auto &e : s) {
        auto q = p;
        q.push_back(e);
        next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::optional<std::vector<EventId>> shortestWalk(const std::vector<EventId> &events,
                                                 const std::vector<FlowEdge> &edges,
                                                 const EventId &from, const EventId &to,
                                                 bool strict) {
  auto pos = [&](const EventId &e) {
    return std::find(events.begin(), events.end(), e) - events.begin();
  };
  auto succ = [&](const EventId &e) {
    std::vector<EventId> out;
    for (const auto &f : edges)
      if (f.from == e && std::find(out.begin(), out.end(), f.to) == out.end())
        out.push_back(f.to);
    std::sort(out.begin(), out.end(),
              [&](const EventId &a, const EventId &b) { return pos(a) < pos(b); });
    return out;
  };
  if (!strict && from == to)
    return std::vector<EventId>{};
  // Walks of k hops enumerated in lexicographic order; the first hit at the
  // smallest k is the answer. A shortest walk never needs more than n hops.
  for (std::size_t k = 1; k <= events.size(); ++k) {
    std::vector<EventId> walk;
    std::optional<std::vector<EventId>> found;
    std::function<void(const EventId &)> dfs = [&](const EventId &at) {
      if (found)
        return;
      if (walk.size() == k) {
        if (at == to)
          found = walk;
        return;
      }
      for (const auto &n : succ(at)) {
        walk.push_back(n);
        dfs(n);
        walk.pop_back();
      }
    };
    dfs(from);
    if (found)
      return found;
  }
  return std::nullopt;
}

bool executable(const std::vector<EventId> &seq, const std::vector<EventId> &initials,
                const std::vector<FlowEdge> &edges) {
  if (seq.empty() || std::find(initials.begin(), initials.end(), seq[0]) == initials.end())
    return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (std::find(edges.begin(), edges.end(), FlowEdge{seq[i], seq[i + 1]}) == edges.end())
      return false;
  return true;
}

std::set<EventId> reachable(const std::vector<EventId> &initials,
                            const std::vector<FlowEdge> &edges) {
  std::set<EventId> out(initials.begin(), initials.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto &e : edges)
      if (out.count(e.from))
        grew |= out.insert(e.to).second;
  }
  return out;
}

namespace {

std::size_t pick(std::mt19937 &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937 &rng, double p) { return std::bernoulli_distribution(p)(rng); }

} // namespace

std::vector<EventId> randomEvents(std::mt19937 &rng, std::size_t maxEvents) {
  std::size_t n = pick(rng, 1, maxEvents);
  std::vector<EventId> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back("ev" + std::to_string(i));
  // Declaration order should not be alphabetical in general.
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

greybox::Efg randomEfg(std::mt19937 &rng, std::size_t maxEvents) {
  auto events = randomEvents(rng, maxEvents);
  std::vector<EventId> initials;
  for (const auto &e : events)
    if (coin(rng, 0.3))
      initials.push_back(e);
  if (initials.empty())
    initials.push_back(events[pick(rng, 0, events.size() - 1)]);
  double density = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
  std::vector<FlowEdge> edges;
  for (const auto &a : events)
    for (const auto &b : events)
      if (coin(rng, density))
        edges.push_back({a, b});
  return greybox::Efg(events, initials, edges);
}

ProgramModel randomProgram(std::mt19937 &rng, const std::vector<EventId> &events) {
  ProgramModel p;
  std::size_t classes = pick(rng, 1, 3);
  std::vector<std::string> fields, methods;
  for (std::size_t c = 0; c < classes; ++c) {
    greybox::ProgramClass pc;
    pc.name = "pkg.C" + std::to_string(c);
    for (std::size_t f = 0, n = pick(rng, 0, 4); f < n; ++f) {
      pc.fields.push_back("f" + std::to_string(f));
      fields.push_back(pc.name + ".f" + std::to_string(f));
    }
    for (std::size_t m = 0, n = pick(rng, 1, 4); m < n; ++m) {
      pc.methods.push_back({"m" + std::to_string(m), {}, {}, {}});
      methods.push_back(pc.name + ".m" + std::to_string(m));
    }
    p.classes.push_back(std::move(pc));
  }
  for (auto &c : p.classes) {
    for (auto &m : c.methods) {
      for (const auto &f : fields) {
        if (coin(rng, 0.3))
          m.reads.insert(f);
        if (coin(rng, 0.25))
          m.writes.insert(f);
      }
      for (const auto &callee : methods)
        if (coin(rng, 0.2))
          m.calls.insert(callee);
    }
  }
  for (const auto &e : events)
    if (coin(rng, 0.85))
      p.bindings[e] = methods[pick(rng, 0, methods.size() - 1)];
  return p;
}

greybox::Edg randomEdg(std::mt19937 &rng, const std::vector<EventId> &events) {
  double density = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
  std::vector<DependencyEdge> edges;
  for (const auto &a : events)
    for (const auto &b : events)
      if (coin(rng, density))
        edges.push_back({a, b, static_cast<unsigned>(pick(rng, 1, 4))});
  return greybox::Edg(events, edges);
}

} // namespace oracle
