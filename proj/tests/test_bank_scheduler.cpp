#include <gtest/gtest.h>

#include "memsim/address_map.hpp"
#include "memsim/bank_scheduler.hpp"

using namespace memsim;

namespace {

MemoryRequest request(ReqId id, Op op, std::uint64_t address = 0) { return MemoryRequest{id, address, op, 0, 0}; }

MemoryResponse ack(const BankCommand& cmd, std::uint64_t data = 0) {
    MemoryResponse r;
    r.kind = cmd.kind;
    r.coords = cmd.coords;
    r.reqId = cmd.reqId;
    r.data = data;
    return r;
}

}  // namespace

TEST(BankScheduler, ClosedPageSequence) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    const auto req = request(4, Op::Read, 0x800);
    s.enqueue(req, map_address(req.address, cfg.topology), 0);
    EXPECT_FALSE(s.tick(0));  // not visible in the enqueue cycle
    auto act = s.tick(1);
    ASSERT_TRUE(act);
    EXPECT_EQ(act->kind, CommandKind::Activate);
    EXPECT_EQ(act->reqId, 4u);
    EXPECT_EQ(act->intent, Op::Read);
    EXPECT_EQ(s.state(), SchedulerState::IssueAct);
    EXPECT_FALSE(s.tick(2));  // pending slot occupied

    const auto sent = s.take_pending(2);
    EXPECT_EQ(s.state(), SchedulerState::WaitAct);
    auto out = s.on_ack(ack(sent), 20);
    ASSERT_TRUE(out.next);
    EXPECT_EQ(out.next->kind, CommandKind::Read);
    EXPECT_EQ(out.next->coords.row, act->coords.row);

    out = s.on_ack(ack(s.take_pending(21), 0xabc), 40);
    ASSERT_TRUE(out.next);
    EXPECT_EQ(out.next->kind, CommandKind::Precharge);

    out = s.on_ack(ack(s.take_pending(41)), 60);
    EXPECT_FALSE(out.next);
    ASSERT_TRUE(out.completion);
    const auto& p = out.completion->progress;
    EXPECT_EQ(p.request.reqId, 4u);
    EXPECT_EQ(p.dispatchCycle, 0);
    EXPECT_EQ(p.activateStart, 1);
    EXPECT_EQ(p.activateAck, 20);
    EXPECT_EQ(p.rwStart, 20);
    EXPECT_EQ(p.rwAck, 40);
    EXPECT_EQ(p.prechargeAck, 60);
    EXPECT_EQ(p.readData, 0xabcu);
    EXPECT_EQ(s.state(), SchedulerState::Idle);
}

TEST(BankScheduler, WriteSequenceCarriesData) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    MemoryRequest req{1, 0, Op::Write, 0, 99};
    s.enqueue(req, map_address(0, cfg.topology), 0);
    auto act = s.tick(1);
    ASSERT_TRUE(act);
    EXPECT_EQ(act->intent, Op::Write);
    auto out = s.on_ack(ack(s.take_pending(1)), 10);
    ASSERT_TRUE(out.next);
    EXPECT_EQ(out.next->kind, CommandKind::Write);
    EXPECT_EQ(out.next->data, 99u);
}

TEST(BankScheduler, RefreshTakesPriorityOverRequests) {
    SimConfig cfg;
    BankScheduler s(3, cfg);
    const auto coords = bank_coordinates(3, cfg.topology);
    s.enqueue(request(0, Op::Read, 3), coords, 3000);
    auto cmd = s.tick(cfg.timing.tREFI);
    ASSERT_TRUE(cmd);
    EXPECT_EQ(cmd->kind, CommandKind::Refresh);
    EXPECT_FALSE(cmd->reqId);
    EXPECT_EQ(s.last_refresh(), cfg.timing.tREFI);
    s.on_ack(ack(s.take_pending(cfg.timing.tREFI)), 4000);
    cmd = s.tick(4001);
    ASSERT_TRUE(cmd);
    EXPECT_EQ(cmd->kind, CommandKind::Activate);
}

TEST(BankScheduler, RefreshWaitsForSequenceInFlight) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    s.set_last_refresh(-cfg.timing.tREFI + 10);  // due at cycle 10
    s.enqueue(request(0, Op::Read), bank_coordinates(0, cfg.topology), 0);
    ASSERT_EQ(s.tick(1)->kind, CommandKind::Activate);
    s.take_pending(1);
    EXPECT_FALSE(s.tick(10));
    EXPECT_FALSE(s.tick(11));
}

TEST(BankScheduler, SelfRefreshAfterIdleThreshold) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    EXPECT_FALSE(s.tick(999));
    auto cmd = s.tick(1000);
    ASSERT_TRUE(cmd);
    EXPECT_EQ(cmd->kind, CommandKind::SrefEnter);
    s.on_ack(ack(s.take_pending(1000)), 1005);
    EXPECT_EQ(s.state(), SchedulerState::SelfRefresh);
    EXPECT_FALSE(s.tick(5000));  // no periodic refresh while self-refreshing

    s.enqueue(request(0, Op::Read), bank_coordinates(0, cfg.topology), 6000);
    cmd = s.tick(6001);
    ASSERT_TRUE(cmd);
    EXPECT_EQ(cmd->kind, CommandKind::SrefExit);
    s.on_ack(ack(s.take_pending(6001)), 6300);
    EXPECT_EQ(s.last_refresh(), 6300);
    EXPECT_EQ(s.idle_since(), 6300);
    cmd = s.tick(6301);
    ASSERT_TRUE(cmd);
    EXPECT_EQ(cmd->kind, CommandKind::Activate);
}

TEST(BankScheduler, IdleClockRestartsAfterRequest) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    s.enqueue(request(0, Op::Read), bank_coordinates(0, cfg.topology), 0);
    s.tick(1);
    s.on_ack(ack(s.take_pending(1)), 20);
    s.on_ack(ack(s.take_pending(21)), 40);
    s.on_ack(ack(s.take_pending(41)), 60);
    EXPECT_FALSE(s.tick(1059));
    ASSERT_TRUE(s.tick(1060));
}

TEST(BankScheduler, UnexpectedAcksThrow) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    BankCommand stray;
    stray.kind = CommandKind::Read;
    stray.coords = bank_coordinates(0, cfg.topology);
    stray.reqId = 9;
    EXPECT_THROW(s.on_ack(ack(stray), 5), SimulationError);

    s.enqueue(request(1, Op::Read), bank_coordinates(0, cfg.topology), 0);
    s.tick(1);
    auto act = s.take_pending(1);
    auto wrong = ack(act);
    wrong.kind = CommandKind::Read;
    EXPECT_THROW(s.on_ack(wrong, 10), SimulationError);
}

TEST(BankScheduler, MatchesByBankAndRequest) {
    SimConfig cfg;
    BankScheduler s(5, cfg);
    s.enqueue(request(1, Op::Read, 5), bank_coordinates(5, cfg.topology), 0);
    s.tick(1);
    auto act = s.take_pending(1);
    EXPECT_TRUE(s.matches(ack(act)));
    auto other = ack(act);
    other.reqId = 2;
    EXPECT_FALSE(s.matches(other));
    other = ack(act);
    other.coords = bank_coordinates(6, cfg.topology);
    EXPECT_FALSE(s.matches(other));
}

TEST(BankScheduler, RejectsRequestForOtherBank) {
    SimConfig cfg;
    BankScheduler s(0, cfg);
    EXPECT_THROW(s.enqueue(request(0, Op::Read, 1), bank_coordinates(1, cfg.topology), 0), SimulationError);
}

TEST(BankScheduler, LocalQueueDepth) {
    SimConfig cfg;
    EXPECT_EQ(BankScheduler(0, cfg).queue_capacity(), 2u);
    cfg.queueSize = 1;
    EXPECT_EQ(BankScheduler(0, cfg).queue_capacity(), 1u);
    cfg.queueSize = 64;
    cfg.schedulerQueueDepth = 16;
    EXPECT_EQ(BankScheduler(0, cfg).queue_capacity(), 16u);
}
