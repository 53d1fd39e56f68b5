#include "greybox/ripper.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "greybox/error.hpp"

namespace greybox {

namespace {

struct Run {
  SettingsStore settings;
  std::optional<GuiState> state;
  bool replayed = true;
};

class Ripper {
public:
  explicit Ripper(const AppModel &m) : m_(m), windowSeen_(m.windows().size(), false) {}

  GuiStructure run() {
    out_.application = m_.name();
    auto launch = replay({});
    if (!launch->state->running()) {
      out_.diagnostics.push_back("application crashed at launch: " +
                                 launch->state->crash()->detail);
      return std::move(out_);
    }
    out_.initials = launch->state->availableEvents();
    explore({});
    for (std::size_t i = 0; i < seenOrder_.size(); ++i) {
      EventId e = seenOrder_[i];
      if (explored_.contains(e))
        continue;
      explored_.insert(e);
      auto ctx = firstSeen_.at(e);
      if (fireAndRecord(ctx, e)) {
        ctx.push_back(e);
        explore(ctx);
      }
    }
    sortEvents();
    return std::move(out_);
  }

private:
  std::unique_ptr<Run> replay(const std::vector<EventId> &ctx) {
    auto r = std::make_unique<Run>();
    r->state.emplace(m_, r->settings);
    for (const auto &e : ctx) {
      if (r->state->fire(e).outcome != FireOutcome::Ok) {
        r->replayed = false;
        break;
      }
    }
    return r;
  }

  void recordWindows(const GuiState &st) {
    for (auto w : st.openWindows()) {
      if (windowSeen_[w])
        continue;
      windowSeen_[w] = true;
      const auto &win = m_.windows()[w];
      RippedWindow rw{win.name, win.modal, win.main, {}};
      for (const auto &wd : win.widgets) {
        std::optional<MethodId> handler;
        if (wd.event)
          if (auto h = m_.handlerOf(*wd.event))
            handler = h->id;
        rw.widgets.push_back({wd.name, wd.event, st.widgetEnabled(wd.name), handler});
      }
      out_.windows.push_back(std::move(rw));
    }
  }

  void noteAvailable(const GuiState &st, const std::vector<EventId> &ctx) {
    for (const auto &e : st.availableEvents()) {
      if (firstSeen_.emplace(e, ctx).second)
        seenOrder_.push_back(e);
    }
  }

  // Returns true when the application is still running afterwards.
  bool fireAndRecord(const std::vector<EventId> &ctx, const EventId &e) {
    auto r = replay(ctx);
    if (!r->replayed) {
      out_.diagnostics.push_back("context of '" + e + "' could not be replayed");
      return false;
    }
    auto &st = *r->state;
    std::vector<std::size_t> before = st.openWindows();
    auto res = st.fire(e);
    std::vector<std::size_t> after = st.openWindows();

    auto ref = *m_.widgetOfEvent(e);
    const auto &win = m_.windows()[ref.window];
    RippedEvent rec;
    rec.id = e;
    rec.window = win.name;
    rec.widget = win.widgets[ref.widget].name;
    if (auto h = m_.handlerOf(e))
      rec.handler = h->id;
    rec.context = ctx;
    // A window counts as opened when it is new or was raised to the top.
    for (auto w : after) {
      bool isNew = std::find(before.begin(), before.end(), w) == before.end();
      bool raised = w == after.back() && w != before.back();
      if (isNew || raised)
        rec.opens.push_back(m_.windows()[w].name);
    }
    for (auto w : before)
      if (std::find(after.begin(), after.end(), w) == after.end())
        rec.closes.push_back(m_.windows()[w].name);
    if (res.outcome == FireOutcome::Crash) {
      rec.crash = res.crash;
      out_.diagnostics.push_back("'" + e + "' crashed during ripping: " + res.crash->detail);
    } else {
      rec.exits = !st.running();
      recordWindows(st);
      rec.availableAfter = st.availableEvents();
      std::vector<EventId> next = ctx;
      next.push_back(e);
      noteAvailable(st, next);
    }
    bool running = st.running();
    fired_.push_back(std::move(rec));
    return running;
  }

  void explore(const std::vector<EventId> &ctx) {
    auto r = replay(ctx);
    if (!r->replayed || !r->state->running())
      return;
    const auto &st = *r->state;
    recordWindows(st);
    noteAvailable(st, ctx);
    auto top = st.openWindows().back();
    std::vector<EventId> candidates;
    for (const auto &e : st.availableEvents())
      if (m_.widgetOfEvent(e)->window == top && !explored_.contains(e))
        candidates.push_back(e);
    std::vector<bool> alive;
    for (const auto &e : candidates) {
      explored_.insert(e);
      alive.push_back(fireAndRecord(ctx, e));
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!alive[i])
        continue;
      auto next = ctx;
      next.push_back(candidates[i]);
      explore(next);
    }
  }

  void sortEvents() {
    std::map<std::string, std::size_t> windowOrder;
    for (std::size_t i = 0; i < out_.windows.size(); ++i)
      windowOrder.emplace(out_.windows[i].name, i);
    auto key = [&](const RippedEvent &e) {
      auto ref = *m_.widgetOfEvent(e.id);
      return std::pair{windowOrder.at(e.window), ref.widget};
    };
    std::stable_sort(fired_.begin(), fired_.end(),
                     [&](const RippedEvent &a, const RippedEvent &b) { return key(a) < key(b); });
    out_.events = std::move(fired_);
  }

  const AppModel &m_;
  GuiStructure out_;
  std::vector<bool> windowSeen_;
  std::set<EventId> explored_;
  std::map<EventId, std::vector<EventId>> firstSeen_;
  std::vector<EventId> seenOrder_;
  std::vector<RippedEvent> fired_;
};

} // namespace

GuiStructure rip(const AppModel &m) { return Ripper(m).run(); }

Efg buildEfgFromStructure(const GuiStructure &gs) {
  std::vector<EventId> events;
  std::set<EventId> known;
  for (const auto &e : gs.events) {
    events.push_back(e.id);
    known.insert(e.id);
  }
  std::vector<EventId> initials;
  for (const auto &e : gs.initials)
    if (known.contains(e))
      initials.push_back(e);
  EventTable table(events);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto &e : gs.events)
    for (const auto &next : e.availableAfter)
      if (known.contains(next))
        pairs.emplace_back(table.indexOf(e.id), table.indexOf(next));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<FlowEdge> edges;
  for (auto [a, b] : pairs)
    edges.push_back({events[a], events[b]});
  return Efg(std::move(events), std::move(initials), std::move(edges));
}

} // namespace greybox
