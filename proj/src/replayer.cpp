#include "greybox/replayer.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "greybox/error.hpp"

namespace greybox {

std::vector<EventId> TestCase::events() const {
  std::vector<EventId> out;
  for (const auto &p : parts)
    out.insert(out.end(), p.events.begin(), p.events.end());
  return out;
}

std::string toString(VerdictKind k) {
  switch (k) {
  case VerdictKind::Passed: return "passed";
  case VerdictKind::Failed: return "failed";
  case VerdictKind::Broken: return "broken";
  }
  return "passed";
}

namespace {

void checkEvents(const AppModel &m, const TestCase &tc) {
  for (const auto &p : tc.parts)
    for (const auto &e : p.events)
      if (!m.widgetOfEvent(e))
        throw Error("test case '" + tc.id + "' uses event '" + e + "' unknown to model '" +
                    m.name() + "'");
}

} // namespace

CaseRun runTestCase(const AppModel &m, const TestCase &tc) {
  checkEvents(m, tc);
  CaseRun out{{}, Coverage(m), 0};
  SettingsStore settings;
  std::size_t position = 0;
  auto fail = [&](CrashRecord c, std::optional<std::size_t> pos) {
    c.position = pos;
    out.verdict = {VerdictKind::Failed, std::move(c), std::nullopt};
    return out;
  };

  for (std::size_t part = 0; part < tc.parts.size(); ++part) {
    GuiState st(m, settings, &out.coverage,
                part == 0 ? CrashPhase::Launch : CrashPhase::Restart);
    if (st.crash())
      return fail(*st.crash(), std::nullopt);
    for (const auto &e : tc.parts[part].events) {
      auto res = st.fire(e);
      if (res.outcome == FireOutcome::Unavailable) {
        out.verdict = {VerdictKind::Broken, std::nullopt, position};
        return out;
      }
      ++out.eventsFired;
      if (res.outcome == FireOutcome::Crash)
        return fail(*res.crash, position);
      ++position;
    }
  }
  GuiState restart(m, settings, &out.coverage, CrashPhase::Restart);
  if (restart.crash())
    return fail(*restart.crash(), std::nullopt);
  return out;
}

TestReport runSuite(const AppModel &m, const std::vector<TestCase> &tcs, unsigned parallelism) {
  for (const auto &tc : tcs)
    checkEvents(m, tc);
  auto started = std::chrono::steady_clock::now();
  std::vector<CaseRun> runs(tcs.size());
  std::vector<double> seconds(tcs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tcs.size(); i = next++) {
      auto t0 = std::chrono::steady_clock::now();
      runs[i] = runTestCase(m, tcs[i]);
      seconds[i] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned n = std::max(1u, parallelism);
  if (n == 1 || tcs.size() <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n && t < tcs.size(); ++t)
      pool.emplace_back(worker);
  }

  TestReport r;
  r.application = m.name();
  Coverage total(m);
  for (std::size_t i = 0; i < tcs.size(); ++i) {
    total.merge(runs[i].coverage);
    switch (runs[i].verdict.kind) {
    case VerdictKind::Passed: ++r.passed; break;
    case VerdictKind::Failed: ++r.failed; break;
    case VerdictKind::Broken: ++r.broken; break;
    }
    r.results.push_back({tcs[i].id, tcs[i].events(), runs[i].verdict, runs[i].eventsFired,
                         seconds[i]});
  }
  r.statements = total.statements.size();
  r.statementsCovered = total.statementsCovered();
  r.branches = total.branches.size();
  r.branchesCovered = total.branchesCovered();
  r.handlers = Coverage::handlerCount(m);
  r.handlersCovered = total.handlersCovered(m);
  r.statementCoverage = total.statementFraction();
  r.branchCoverage = total.branchFraction();
  r.handlerCoverage = total.handlerFraction(m);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

std::vector<TestCase> testCasesFromRecords(const std::vector<SequenceRecord> &records) {
  std::vector<TestCase> out;
  std::map<std::string, std::size_t> byId;
  for (const auto &rec : records) {
    if (rec.splitOf) {
      auto it = byId.find(*rec.splitOf);
      if (it == byId.end())
        throw Error("sequence '" + rec.id + "' continues unknown sequence '" + *rec.splitOf +
                    "'");
      out[it->second].parts.push_back(rec.sequence);
      continue;
    }
    if (!byId.emplace(rec.id, out.size()).second)
      throw Error("duplicate sequence id '" + rec.id + "'");
    out.push_back({rec.id, {rec.sequence}});
  }
  return out;
}

namespace {

std::string percent(double fraction) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << fraction * 100.0;
  return os.str();
}

std::string secondsText(std::optional<double> s) {
  if (!s)
    return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << *s << " s";
  return os.str();
}

} // namespace

std::string formatTable(const TestReport &r, std::optional<double> genSeconds,
                        std::optional<double> execSeconds) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"# es", std::to_string(r.total())},
      {"# failed es", std::to_string(r.failed)},
      {"# broken es", std::to_string(r.broken)},
      {"gen t", secondsText(genSeconds)},
      {"exec t", secondsText(execSeconds)},
      {"line cov. (%)", percent(r.statementCoverage)},
      {"branch cov. (%)", percent(r.branchCoverage)},
      {"handler cov. (%)", percent(r.handlerCoverage)},
  };
  std::size_t width = 0;
  for (const auto &[k, v] : rows)
    width = std::max(width, k.size());
  std::ostringstream os;
  os << r.application << "\n";
  for (const auto &[k, v] : rows)
    os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  return os.str();
}

} // namespace greybox
