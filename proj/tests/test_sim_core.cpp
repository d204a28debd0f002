#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "rolab/scheduler.hpp"
#include "rolab/simulation.hpp"
#include "rolab/world.hpp"
#include "support/scenarios.hpp"

using namespace rolab::sim;
using rolab::proto::PacketKind;

// -------------------------------------------------------------- scheduler

TEST(Scheduler, NowEventsRunBeforeLaterOnes) {
  Scheduler s;
  std::vector<int> order;
  s.schedule(2.0, 0, EventKind::timer, [&] { order.push_back(2); });
  s.schedule(1.0, 0, EventKind::timer, [&] {
    order.push_back(1);
    s.schedule(1.0, 0, EventKind::timer, [&] { order.push_back(11); });
  });
  s.run_until(10.0);
  EXPECT_EQ(order, (std::vector<int>{1, 11, 2}));
}

TEST(Scheduler, EqualTimesRunInScheduleOrder) {
  Scheduler s;
  std::vector<int> order;
  for (int i = 0; i < 5; ++i) s.schedule(3.0, 0, EventKind::timer, [&order, i] { order.push_back(i); });
  s.run_until(3.0);
  EXPECT_EQ(order, (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(Scheduler, PastEventIsALogicError) {
  Scheduler s;
  s.schedule(5.0, 0, EventKind::timer, [] {});
  s.run_until(5.0);
  EXPECT_THROW(s.schedule(4.0, 0, EventKind::timer, [] {}), std::logic_error);
}

TEST(Scheduler, RespectsLimitAndLogsInOrder) {
  Scheduler s;
  s.set_logging(true);
  oracle::SplitMix rng{3};
  for (int i = 0; i < 200; ++i) s.schedule(rng.uniform() * 10.0, 0, EventKind::timer, [] {});
  s.run_until(5.0);
  for (std::size_t i = 1; i < s.log().size(); ++i) {
    const auto& a = s.log()[i - 1];
    const auto& b = s.log()[i];
    EXPECT_TRUE(a.time < b.time || (a.time == b.time && a.seq < b.seq));
  }
  for (const auto& e : s.log()) EXPECT_LE(e.time, 5.0);
  EXPECT_EQ(s.log().size() + s.pending(), 200U);
}

// ------------------------------------------------------------------ world

namespace {

ScenarioConfig three_in_line(double range) {
  auto c = fixture::line(3, 100.0, rolab::proto::aodv_profile());
  c.radio.range = range;
  return c;
}

}  // namespace

TEST(Neighbors, ShortRange) {
  World w(three_in_line(150.0));
  EXPECT_EQ(w.neighbors(1, 0.0), (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(w.neighbors(0, 0.0), (std::vector<NodeId>{1}));
  EXPECT_EQ(w.neighbors(2, 0.0), (std::vector<NodeId>{1}));
}

TEST(Neighbors, LongRangeSeesEveryone) {
  const auto c = three_in_line(250.0);
  World w(c);
  for (NodeId a = 0; a < 3; ++a) {
    std::vector<NodeId> expect;
    for (NodeId b = 0; b < 3; ++b) {
      if (b != a && distance(c.positions[a], c.positions[b]) <= c.radio.range) expect.push_back(b);
    }
    EXPECT_EQ(w.neighbors(a, 0.0), expect);
  }
}

TEST(Neighbors, DeadMiddleIsolatesEnds) {
  World w(three_in_line(150.0));
  w.set_alive(1, false);
  EXPECT_TRUE(w.neighbors(0, 0.0).empty());
  EXPECT_TRUE(w.neighbors(2, 0.0).empty());
  EXPECT_TRUE(w.neighbors(1, 0.0).empty());
}

TEST(Neighbors, Symmetric) {
  auto c = bundled_scenario("mobility-50");
  World w(c);
  for (NodeId a = 0; a < w.size(); ++a) {
    for (NodeId b : w.neighbors(a, 0.0)) {
      const auto back = w.neighbors(b, 0.0);
      EXPECT_NE(std::find(back.begin(), back.end(), a), back.end());
    }
  }
}

namespace {

ScenarioConfig walkers(double speed, double pause) {
  ScenarioConfig c;
  c.node_count = 30;
  c.speed = speed;
  c.pause = pause;
  c.duration = 100.0;
  c.seed = 9;
  return c;
}

}  // namespace

TEST(Mobility, ZeroSpeedStaysPut) {
  World w(walkers(0.0, 0.0));
  std::vector<Vec2> start;
  for (NodeId i = 0; i < w.size(); ++i) start.push_back(w.position(i, 0.0));
  for (double t = 0.0; t <= 100.0; t += 5.0) {
    w.step_mobility(t);
    for (NodeId i = 0; i < w.size(); ++i) EXPECT_EQ(w.position(i, t), start[i]);
  }
}

TEST(Mobility, DisplacementBoundedBySpeedTimesTime) {
  const auto c = walkers(2.0, 0.0);
  World w(c);
  std::vector<Vec2> start;
  for (NodeId i = 0; i < w.size(); ++i) start.push_back(w.position(i, 0.0));
  for (double t = 0.0; t <= 10.0 + 1e-9; t += 0.05) {
    w.step_mobility(t);
    for (NodeId i = 0; i < w.size(); ++i) {
      const Vec2 p = w.position(i, t);
      EXPECT_LE(distance(p, start[i]), 2.0 * t + 1e-9);
      EXPECT_GE(p.x, 0.0);
      EXPECT_LE(p.x, c.area_width);
      EXPECT_GE(p.y, 0.0);
      EXPECT_LE(p.y, c.area_height);
    }
  }
}

TEST(Mobility, PauseForWholeRunFreezesAfterFirstArrival) {
  auto c = walkers(50.0, 100.0);
  World w(c);
  std::vector<double> arrive;
  for (NodeId i = 0; i < w.size(); ++i) arrive.push_back(w.node(i).leg.arrive);
  for (double t = 0.0; t <= 100.0; t += 0.5) w.step_mobility(t);
  for (NodeId i = 0; i < w.size(); ++i) {
    if (arrive[i] >= 100.0) continue;
    EXPECT_EQ(w.position(i, arrive[i] + 1e-6), w.position(i, 100.0));
  }
}

// --------------------------------------------------------------- failures

namespace {

ScenarioConfig busy_grid() {
  auto c = bundled_scenario("static-grid-25");
  c.blackouts.clear();
  c.duration = 20.0;
  return c;
}

}  // namespace

TEST(Failures, WholeAreaBlackoutSilencesEverything) {
  auto c = busy_grid();
  c.blackouts.push_back({0.0, 0.0, c.area_width, c.area_height, 5.0, std::nullopt});
  const auto r = run_scenario(c);
  std::size_t after = 0;
  std::size_t before = 0;
  for (const auto& rec : r.trace.records()) {
    if (rec.event != TraceEvent::receive) continue;
    (rec.time > 5.0 ? after : before) += 1;
  }
  EXPECT_GT(before, 0U);
  EXPECT_EQ(after, 0U);
}

TEST(Failures, LifetimeBoundsTransmissions) {
  auto c = busy_grid();
  c.lifetimes[6] = 3.0;  // takes part in the first floods
  const auto r = run_scenario(c);
  bool transmitted = false;
  for (const auto& rec : r.trace.records()) {
    if (rec.event == TraceEvent::transmit && rec.node == 6) {
      transmitted = true;
      EXPECT_LE(rec.time, 3.0);
    }
  }
  EXPECT_TRUE(transmitted);
}

TEST(Failures, NoneConfiguredKeepsEveryoneAlive) {
  const auto r = run_scenario(busy_grid());
  for (const auto& rec : r.trace.records()) {
    EXPECT_NE(rec.event, TraceEvent::fail);
    EXPECT_NE(rec.event, TraceEvent::recover);
  }
}

TEST(Failures, BlackoutWithEndRecovers) {
  const auto r = run_scenario(bundled_scenario("static-grid-25"));
  std::size_t fails = 0;
  std::size_t recovers = 0;
  for (const auto& rec : r.trace.records()) {
    if (rec.event == TraceEvent::fail) ++fails;
    if (rec.event == TraceEvent::recover) ++recovers;
  }
  EXPECT_GT(fails, 0U);
  EXPECT_EQ(fails, recovers);
}

// ------------------------------------------------------------ simulation

TEST(RunUntil, EmptyScenarioHasEmptyTrace) {
  ScenarioConfig c;
  c.node_count = 4;
  c.duration = 10.0;
  EXPECT_TRUE(run_scenario(c).trace.records().empty());
}

TEST(RunUntil, EventsPastTheLimitAreExcluded) {
  auto c = fixture::line(2, 100.0, rolab::proto::aodv_profile());
  c.flows.push_back(fixture::one_packet(0, 1, 1.0));
  c.duration = 0.5;
  EXPECT_TRUE(run_scenario(c).trace.records().empty());
}

TEST(Determinism, SameSeedSameDigest) {
  auto c = bundled_scenario("mobility-50");
  c.duration = 40.0;
  for (const char* p : {"aodv", "dsr", "dymo"}) {
    c.profile = rolab::proto::builtin_profile(p);
    EXPECT_EQ(run_scenario(c).trace.digest(), run_scenario(c).trace.digest()) << p;
  }
  auto other = c;
  other.seed = c.seed + 1;
  EXPECT_NE(run_scenario(c).trace.digest(), run_scenario(other).trace.digest());
}

TEST(TraceProperties, CausalityConservationMonotonicity) {
  auto c = busy_grid();
  const auto r = run_scenario(c);
  World w(c);

  // Transmissions keyed by (sender, time, kind, uid). Several RREQs can
  // share a key, so keep a count.
  struct Tx {
    bool broadcast = false;
    std::size_t sent = 0;
    std::size_t heard = 0;
  };
  std::map<std::tuple<NodeId, double, PacketKind, std::uint64_t>, Tx> sent;
  double last = 0.0;
  for (const auto& rec : r.trace.records()) {
    EXPECT_GE(rec.time, last);
    last = rec.time;
    if (rec.event == TraceEvent::transmit) {
      auto& tx = sent[{rec.node, rec.time, rec.packet, rec.uid}];
      tx.broadcast = rec.peer == kNoNode;
      ++tx.sent;
    }
  }
  for (const auto& rec : r.trace.records()) {
    if (rec.event != TraceEvent::receive) continue;
    const double delay = c.radio.hop_delay(rec.bytes);
    EXPECT_GE(delay, c.radio.per_hop_latency);
    // The transmit happened exactly one hop delay earlier.
    bool found = false;
    for (auto it = sent.lower_bound({rec.peer, rec.time - delay - 1e-9, rec.packet, 0});
         it != sent.end() && std::get<0>(it->first) == rec.peer && std::get<1>(it->first) <= rec.time - delay + 1e-9;
         ++it) {
      if (std::get<2>(it->first) == rec.packet && std::get<3>(it->first) == rec.uid) {
        found = true;
        ++it->second.heard;
        break;
      }
    }
    EXPECT_TRUE(found) << "receive at " << rec.time << " without a transmit";
  }
  // Zero loss, static, no failures: every neighbor hears every broadcast.
  for (const auto& [key, tx] : sent) {
    if (tx.broadcast) {
      EXPECT_EQ(tx.heard, tx.sent * w.neighbors(std::get<0>(key), 0.0).size());
    }
  }
}
