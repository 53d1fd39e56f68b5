#include <gtest/gtest.h>

#include <random>
#include <set>

#include "greybox/error.hpp"
#include "greybox/seqgen.hpp"

#include "../support/oracles.hpp"

using namespace greybox;

namespace {

using Seq = std::vector<EventId>;

Efg fig1b() {
  return Efg({"e1", "e2", "e3", "e4"}, {"e1", "e2", "e3"},
             {{"e1", "e1"}, {"e1", "e2"}, {"e1", "e3"}, {"e2", "e1"}, {"e2", "e2"},
              {"e2", "e3"}, {"e3", "e4"}, {"e4", "e1"}, {"e4", "e2"}, {"e4", "e3"}});
}

Edg fig3() { return Edg({"e1", "e2", "e3", "e4"}, {{"e1", "e3", 1}, {"e2", "e2", 1}, {"e4", "e2", 1}}); }

std::vector<Seq> eventsOf(const std::vector<AbstractSequence> &v) {
  std::vector<Seq> out;
  for (const auto &a : v)
    out.push_back(a.events);
  return out;
}

std::vector<Seq> eventsOf(const std::vector<ExecutableSequence> &v) {
  std::vector<Seq> out;
  for (const auto &a : v)
    out.push_back(a.events);
  return out;
}

} // namespace

TEST(GenConfig, Presets) {
  EXPECT_EQ(GenConfig::preset('A').len, 1u);
  EXPECT_EQ(GenConfig::preset('C').mode, GenMode::Blackbox);
  EXPECT_EQ(GenConfig::preset('D').mode, GenMode::Greybox);
  EXPECT_FALSE(GenConfig::preset('D').top.has_value());
  EXPECT_EQ(GenConfig::preset('E').top, 50u);
  EXPECT_EQ(GenConfig::preset('F').top, 100u);
  EXPECT_EQ(GenConfig::preset('F').len, 3u);
  EXPECT_THROW(GenConfig::preset('G'), Error);
  EXPECT_EQ(GenConfig::preset('D').describe(), "greybox len=2 top=inf");
}

TEST(GenConfig, RejectsZeroLengthAndTop) {
  EXPECT_THROW((GenConfig{GenMode::Blackbox, 0, std::nullopt}.validate()), Error);
  EXPECT_THROW((GenConfig{GenMode::Greybox, 2, 0}.validate()), Error);
}

TEST(Blackbox, LengthOneAddsReachingSteps) {
  auto r = genBlackbox(fig1b(), 1);
  EXPECT_EQ(eventsOf(r.sequences), (std::vector<Seq>{{"e1"}, {"e2"}, {"e3"}, {"e3", "e4"}}));
  EXPECT_EQ(r.sequences[3].targets, std::vector<std::size_t>{1});
  EXPECT_TRUE(r.ungeneratable.empty());
}

TEST(Blackbox, LengthTwoHasOneSequencePerReachableEdge) {
  auto r = genBlackbox(fig1b(), 2);
  ASSERT_EQ(r.sequences.size(), 10u);
  EXPECT_EQ(r.sequences[6].events, (Seq{"e3", "e4"}));
  EXPECT_EQ(r.sequences[9].events, (Seq{"e3", "e4", "e3"}));
  EXPECT_EQ(r.sequences[9].targets, (std::vector<std::size_t>{1, 2}));
}

TEST(Blackbox, UnreachableEventsAreReported) {
  Efg g({"a", "b", "c"}, {"a"}, {{"a", "b"}, {"c", "a"}});
  auto r = genBlackbox(g, 2);
  EXPECT_EQ(r.ungeneratable, std::vector<EventId>{"c"});
  EXPECT_EQ(eventsOf(r.sequences), (std::vector<Seq>{{"a", "b"}}));
}

TEST(Blackbox, CountsMatchGraphProperties) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Efg g = oracle::randomEfg(rng, 8);
    auto reach = oracle::reachable(g.initials(), g.edges());
    EXPECT_EQ(genBlackbox(g, 1).sequences.size(), reach.size());
    std::size_t edges = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (reach.count(g.events().id(i)))
        edges += g.successors(i).size();
    EXPECT_EQ(genBlackbox(g, 2).sequences.size(), edges);
  }
}

TEST(Abstract, CalibratedExample) {
  EXPECT_EQ(eventsOf(genAbstract(fig3(), 2, std::nullopt)),
            (std::vector<Seq>{{"e1", "e3"}, {"e2", "e2"}, {"e3"}, {"e4", "e2"}}));
  EXPECT_EQ(eventsOf(genAbstract(fig3(), 3, std::nullopt)),
            (std::vector<Seq>{{"e1", "e3"}, {"e2", "e2", "e2"}, {"e3"}, {"e4", "e2", "e2"}}));
}

TEST(Abstract, HeaviestSuccessorFirstThenDeclIndex) {
  Edg d({"s", "a", "b", "c"}, {{"s", "a", 1}, {"s", "b", 5}, {"s", "c", 5}});
  EXPECT_EQ(eventsOf(genAbstractFrom(d, 0, 2, std::nullopt)),
            (std::vector<Seq>{{"s", "b"}, {"s", "c"}, {"s", "a"}}));
  EXPECT_EQ(eventsOf(genAbstractFrom(d, 0, 2, 2)), (std::vector<Seq>{{"s", "b"}, {"s", "c"}}));
  EXPECT_EQ(eventsOf(genAbstractFrom(d, 1, 2, std::nullopt)), std::vector<Seq>{{"a"}});
}

TEST(Abstract, PropertiesOnRandomGraphs) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto events = oracle::randomEvents(rng, 8);
    Edg d = oracle::randomEdg(rng, events);
    for (std::size_t len = 1; len <= 4; ++len) {
      for (std::optional<std::size_t> top : {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                                             std::optional<std::size_t>{3}}) {
        auto out = genAbstract(d, len, top);
        std::set<Seq> unique;
        std::map<EventId, std::size_t> perStart;
        for (const auto &a : out) {
          ASSERT_TRUE(unique.insert(a.events).second);
          ASSERT_LE(a.events.size(), len);
          ++perStart[a.events.front()];
          for (std::size_t k = 0; k + 1 < a.events.size(); ++k)
            ASSERT_TRUE(d.weight(d.events().indexOf(a.events[k]), d.events().indexOf(a.events[k + 1])));
        }
        for (const auto &[start, n] : perStart)
          if (top) {
            ASSERT_LE(n, *top);
          }
        auto all = oracle::maximalPaths(events, d.edges(), len);
        for (const auto &s : unique)
          ASSERT_TRUE(all.count(s));
        if (!top) {
          ASSERT_EQ(unique, all) << "trial " << trial << " len " << len;
        }
      }
    }
  }
}

TEST(Conversion, InsertsReachingStepsAndConnections) {
  std::vector<AbstractSequence> abs{{{"e4", "e2"}}, {{"e1", "e3"}}, {{"e3", "e3"}}};
  auto r = toExecutable(fig1b(), abs);
  ASSERT_EQ(r.converted.size(), 3u);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.converted[0].parts[0].events, (Seq{"e3", "e4", "e2"}));
  EXPECT_EQ(r.converted[0].parts[0].targets, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(r.converted[1].parts[0].events, (Seq{"e1", "e3"}));
  // A repeated event needs a cycle through it.
  EXPECT_EQ(r.converted[2].parts[0].events, (Seq{"e3", "e4", "e3"}));
  EXPECT_EQ(r.converted[2].parts[0].targets, (std::vector<std::size_t>{0, 2}));
}

TEST(Conversion, NearestInitialWins) {
  Efg g({"i1", "i2", "x", "t"}, {"i1", "i2"}, {{"i1", "x"}, {"x", "t"}, {"i2", "t"}});
  std::vector<AbstractSequence> abs{{{"t"}}};
  EXPECT_EQ(toExecutable(g, abs).converted[0].parts[0].events, (Seq{"i2", "t"}));
}

TEST(Conversion, SplitsWhenNoPathExists) {
  Efg g({"a", "b", "c"}, {"a", "c"}, {{"a", "b"}});
  std::vector<AbstractSequence> abs{{{"b", "c"}}};
  auto r = toExecutable(g, abs);
  ASSERT_EQ(r.converted.size(), 1u);
  ASSERT_EQ(r.converted[0].parts.size(), 2u);
  EXPECT_EQ(r.converted[0].parts[0].events, (Seq{"a", "b"}));
  EXPECT_EQ(r.converted[0].parts[1].events, Seq{"c"});
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].kind, ConversionDiagnostic::Kind::Split);
  EXPECT_EQ(r.diagnostics[0].position, 1u);
}

TEST(Conversion, UnreachableEventsAreSkipped) {
  Efg g({"a", "d"}, {"a"}, {{"d", "a"}});
  std::vector<AbstractSequence> abs{{{"d", "a"}}, {{"a", "d"}}};
  auto r = toExecutable(g, abs);
  ASSERT_EQ(r.converted.size(), 1u);
  EXPECT_EQ(r.converted[0].parts[0].events, Seq{"a"});
  ASSERT_EQ(r.diagnostics.size(), 3u);
  EXPECT_EQ(r.diagnostics[0].kind, ConversionDiagnostic::Kind::Unreachable);
  EXPECT_EQ(r.diagnostics[1].kind, ConversionDiagnostic::Kind::Split);
  EXPECT_EQ(r.diagnostics[2].kind, ConversionDiagnostic::Kind::Unreachable);
}

TEST(Conversion, UndeclaredEventThrows) {
  std::vector<AbstractSequence> abs{{{"zz"}}};
  EXPECT_THROW(toExecutable(fig1b(), abs), Error);
}

TEST(Generate, GreyboxRecords) {
  Edg d = fig3();
  auto r = generateSequences(fig1b(), &d, GenConfig::preset('D'));
  ASSERT_EQ(r.records.size(), 4u);
  EXPECT_EQ(r.abstractCount, 4u);
  EXPECT_EQ(r.records[3].id, "s4");
  EXPECT_EQ(r.records[3].origin, Origin::Greybox);
  EXPECT_EQ(r.records[3].abstract, (Seq{"e4", "e2"}));
  EXPECT_EQ(r.records[3].sequence.events, (Seq{"e3", "e4", "e2"}));
}

TEST(Generate, GreyboxNeedsMatchingEdg) {
  EXPECT_THROW(generateSequences(fig1b(), nullptr, GenConfig::preset('D')), Error);
  Edg other({"e1", "e2"}, {});
  EXPECT_THROW(generateSequences(fig1b(), &other, GenConfig::preset('D')), Error);
}

TEST(Generate, SplitPartsAreLinked) {
  Efg g({"a", "b", "c"}, {"a", "c"}, {{"a", "b"}});
  Edg d({"a", "b", "c"}, {{"b", "c", 1}});
  auto r = generateSequences(g, &d, {GenMode::Greybox, 2, std::nullopt});
  // <a>, <b,c> split into <a,b> + <c>, <c>
  ASSERT_EQ(r.records.size(), 4u);
  EXPECT_EQ(r.records[1].sequence.events, (Seq{"a", "b"}));
  EXPECT_FALSE(r.records[1].splitOf.has_value());
  EXPECT_EQ(r.records[2].splitOf, std::optional<std::string>("s2"));
  EXPECT_EQ(r.records[3].sequence.events, Seq{"c"});
  EXPECT_FALSE(r.records[3].splitOf.has_value());
}

TEST(Generate, IdenticalExecutableSequencesAreEmittedOnce) {
  // <b> and <a,b> both realise as <a,b>.
  Efg g({"a", "b"}, {"a"}, {{"a", "b"}});
  Edg d({"a", "b"}, {{"a", "b", 1}});
  auto r = generateSequences(g, &d, {GenMode::Greybox, 2, std::nullopt});
  EXPECT_EQ(r.abstractCount, 2u);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].sequence.events, (Seq{"a", "b"}));
}

TEST(Generate, EverySequenceIsExecutable) {
  std::mt19937 rng(3);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Efg g = oracle::randomEfg(rng, 8);
    Edg d = oracle::randomEdg(rng, g.events().ids());
    for (char preset : {'A', 'B', 'C', 'D', 'E'}) {
      auto r = generateSequences(g, &d, GenConfig::preset(preset));
      for (const auto &rec : r.records) {
        ASSERT_TRUE(isExecutable(rec.sequence.events, g));
        for (auto t : rec.sequence.targets)
          ASSERT_LT(t, rec.sequence.events.size());
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}
