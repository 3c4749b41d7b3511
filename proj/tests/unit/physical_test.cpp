// Copyright 2026 The RBPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "rbpi/link.hpp"
#include "rbpi/physical.hpp"
#include "test_support.hpp"

using rbpi::DepartStatus;
using rbpi::Frame;
using rbpi::Kilograms;
using rbpi::PiMover;
using rbpi::SimTime;
using rbpi::testing::make_node;

namespace {

Frame frame_of(Kilograms mass, rbpi::FrameId id = 1) {
  rbpi::Segment s;
  s.shipment = 1;
  s.items.push_back({static_cast<rbpi::ItemId>(id), mass, false, false});
  s.datagram.payload_length = static_cast<std::uint16_t>(mass);
  return rbpi::frame_datagram(s, rbpi::kDefaultPalletMass, id);
}

PiMover mover_of(Kilograms capacity, double fuel = 500, double tank = 500) {
  PiMover m;
  m.id = 3;
  m.capacity = capacity;
  m.fuel_km = fuel;
  m.tank_range_km = tank;
  m.location = rbpi::AtNode{1};
  m.schedule = {{1, 2, SimTime::from_hours(4)}};
  return m;
}

rbpi::CapacityReport load(PiMover& m, const Frame& f) {
  const auto r = rbpi::reserve_cargo_space(m, f, SimTime());
  return rbpi::load_frame(m, f, *r.reservation, SimTime::from_hours(1));
}

}  // namespace

TEST(LoadFrame, SecuresFrameAndReportsFreeCapacity) {
  PiMover m = mover_of(1000);
  const auto report = load(m, frame_of(400));
  EXPECT_EQ(report.free_capacity, 600);
  EXPECT_EQ(report.mover, 3u);
  ASSERT_TRUE(report.edge);
  EXPECT_EQ(*report.edge, std::make_pair(rbpi::NodeId{1}, rbpi::NodeId{2}));
  EXPECT_EQ(report.departure_time, SimTime::from_hours(4));
  ASSERT_EQ(m.load.size(), 1u);
  EXPECT_TRUE(m.load[0].secured);
  EXPECT_TRUE(m.reservations.empty());
}

TEST(LoadFrame, RequiresReservation) {
  PiMover m = mover_of(1000);
  const Frame f = frame_of(400);
  EXPECT_THROW(rbpi::load_frame(m, f, rbpi::CargoReservation{3, 1, 400, SimTime()}, SimTime()),
               rbpi::PhysicalError);
  const auto r = rbpi::reserve_cargo_space(m, f, SimTime());
  EXPECT_THROW(rbpi::load_frame(m, frame_of(400, 2), *r.reservation, SimTime()), rbpi::PhysicalError);
}

TEST(UnloadFrame, ReturnsCapacityAndOccupancy) {
  PiMover m = mover_of(1000);
  load(m, frame_of(400));
  const rbpi::PiNode n = make_node(1, 1, 1000);
  const auto u = rbpi::unload_frame(m, 1, n, 0, SimTime::from_hours(2));
  ASSERT_FALSE(u.retained());
  EXPECT_EQ(u.occupancy_delta, 400);
  ASSERT_TRUE(u.report);
  EXPECT_EQ(u.report->free_capacity, 1000);
  EXPECT_FALSE(u.frame->secured);
}

TEST(UnloadFrame, FullNodeRetainsFrame) {
  PiMover m = mover_of(1000);
  load(m, frame_of(400));
  const rbpi::PiNode n = make_node(1, 1, 1000);
  const auto u = rbpi::unload_frame(m, 1, n, 700, SimTime());
  EXPECT_TRUE(u.retained());
  EXPECT_EQ(u.occupancy_delta, 0);
  EXPECT_FALSE(u.report);
  EXPECT_EQ(m.load.size(), 1u);
  EXPECT_THROW(rbpi::unload_frame(m, 42, n, 0, SimTime()), rbpi::PhysicalError);
}

TEST(UnloadFrame, LoadThenUnloadRestoresMover) {
  for (Kilograms mass : {1, 250, 999, 1000}) {
    PiMover m = mover_of(1000);
    const PiMover start = m;
    load(m, frame_of(mass));
    rbpi::unload_frame(m, 1, make_node(1, 1, 5000), 0, SimTime());
    EXPECT_EQ(m, start);
  }
}

TEST(Depart, RefuelsWhenShortAndNodeCanRefuel) {
  PiMover m = mover_of(1000, 50, 500);
  const rbpi::RoadEdge e{1, 2, 100, 50};
  const auto r = rbpi::depart(m, e, make_node(1, 1, 1000, {rbpi::Capability::kRefuel}), SimTime::from_hours(1));
  EXPECT_EQ(r.status, DepartStatus::kRefueling);
  EXPECT_EQ(r.at, SimTime::from_hours(1.5));
  EXPECT_DOUBLE_EQ(m.fuel_km, 500);
  const auto go = rbpi::depart(m, e, make_node(1, 1, 1000, {rbpi::Capability::kRefuel}), r.at);
  EXPECT_EQ(go.status, DepartStatus::kDeparted);
  EXPECT_EQ(go.at, SimTime::from_hours(3.5));
}

TEST(Depart, StrandedWithoutRefuel) {
  PiMover m = mover_of(1000, 50, 500);
  const auto r = rbpi::depart(m, {1, 2, 100, 50}, make_node(1), SimTime());
  EXPECT_EQ(r.status, DepartStatus::kStranded);
  EXPECT_EQ(m.location, rbpi::MoverLocation(rbpi::AtNode{1}));
}

TEST(Depart, ArrivesWithRemainingFuel) {
  PiMover m = mover_of(1000, 150, 500);
  m.speed_factor = 2.0;
  const rbpi::RoadEdge e{1, 2, 100, 50};
  const auto r = rbpi::depart(m, e, make_node(1), SimTime());
  EXPECT_EQ(r.status, DepartStatus::kDeparted);
  EXPECT_EQ(r.at, SimTime::from_hours(1));
  EXPECT_FALSE(m.at_node());
  rbpi::arrive(m, e);
  EXPECT_DOUBLE_EQ(m.fuel_km, 50);
  EXPECT_EQ(m.at_node(), 2u);
}

TEST(Depart, RefusesUnsecuredFreightAndWrongNode) {
  PiMover m = mover_of(1000);
  Frame loose = frame_of(10);
  m.load.push_back(loose);
  EXPECT_THROW(rbpi::depart(m, {1, 2, 10, 50}, make_node(1), SimTime()), rbpi::PhysicalError);
  PiMover elsewhere = mover_of(1000);
  EXPECT_THROW(rbpi::depart(elsewhere, {2, 3, 10, 50}, make_node(2), SimTime()), rbpi::PhysicalError);
}

TEST(TickEcosystem, BreachAfterToleranceExceeded) {
  rbpi::ContainerEcosystem eco{1, true, std::nullopt, SimTime::from_hours(2), false};
  EXPECT_FALSE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(0)));
  EXPECT_FALSE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(2)));
  EXPECT_TRUE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(3)));
  EXPECT_TRUE(eco.breached);
  EXPECT_FALSE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(4)));
}

TEST(TickEcosystem, PowerResetsTheClock) {
  rbpi::ContainerEcosystem eco{1, true, std::nullopt, SimTime::from_hours(2), false};
  rbpi::tick_ecosystem(eco, false, SimTime::from_hours(0));
  rbpi::tick_ecosystem(eco, true, SimTime::from_hours(1.5));
  EXPECT_FALSE(eco.unpowered_since);
  rbpi::tick_ecosystem(eco, false, SimTime::from_hours(2));
  EXPECT_FALSE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(4)));
  EXPECT_TRUE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(4.001)));
}

TEST(TickEcosystem, UnpoweredContainersNeverBreach) {
  rbpi::ContainerEcosystem eco{1, false, std::nullopt, SimTime::from_hours(2), false};
  for (int h = 0; h < 100; ++h) EXPECT_FALSE(rbpi::tick_ecosystem(eco, false, SimTime::from_hours(h)));
}

TEST(ReportFreeCapacity, EmptyAndFull) {
  PiMover m = mover_of(800);
  m.schedule.clear();
  const auto empty = rbpi::report_free_capacity(m, SimTime::from_hours(5));
  EXPECT_EQ(empty.free_capacity, 800);
  EXPECT_FALSE(empty.edge);
  EXPECT_EQ(empty.departure_time, SimTime::from_hours(5));
  load(m, frame_of(800));
  EXPECT_EQ(rbpi::report_free_capacity(m, SimTime()).free_capacity, 0);
}
