#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "memsim/dram_bank.hpp"

using namespace memsim;

namespace {

BankCommand command(CommandKind kind, std::uint64_t row = 0, Op intent = Op::Read, std::uint64_t address = 0,
                    std::uint64_t data = 0) {
    BankCommand c;
    c.kind = kind;
    c.coords.row = row;
    c.intent = intent;
    c.address = address;
    c.data = data;
    return c;
}

// Starts `cmd` as early as allowed and completes it; returns {start, end}.
std::pair<Cycle, Cycle> run(DramBank& bank, const BankCommand& cmd, Cycle now, RankTiming& rank,
                            BankGroupTiming& group, DataStore& store, std::uint64_t* readData = nullptr) {
    const Cycle start = bank.earliest_start(cmd, now, rank, group);
    const Cycle end = bank.service(cmd, start, rank, group);
    const auto resp = bank.complete(store);
    if (readData) *readData = resp.data;
    return {start, end};
}

// Brute-force ACTIVATE placement: the first cycle at or after `from` where no
// rank rule is broken against every earlier start.
Cycle brute_force_activate(const std::vector<Cycle>& earlier, Cycle from, const TimingParams& t) {
    for (Cycle c = from;; ++c) {
        bool ok = true;
        for (Cycle e : earlier) ok = ok && c - e >= t.tRRDL;
        std::vector<Cycle> window{c};
        for (Cycle e : earlier)
            if (c - e < t.tFAW) window.push_back(e);
        ok = ok && window.size() <= 4;
        if (ok) return c;
    }
}

}  // namespace

TEST(DramBank, ActivateOnIdleRankStartsNow) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    EXPECT_EQ(bank.earliest_start(command(CommandKind::Activate), 17, rank, group), 17);
}

TEST(DramBank, Durations) {
    TimingParams t;
    t.tRCDWR = 11;
    DramBank bank(0, t);
    EXPECT_EQ(bank.duration(command(CommandKind::Activate, 0, Op::Read)), 14);
    EXPECT_EQ(bank.duration(command(CommandKind::Activate, 0, Op::Write)), 11);
    EXPECT_EQ(bank.duration(command(CommandKind::Read)), t.tCL);
    EXPECT_EQ(bank.duration(command(CommandKind::Write)), t.tCL);
    EXPECT_EQ(bank.duration(command(CommandKind::Precharge)), 14);
    EXPECT_EQ(bank.duration(command(CommandKind::Refresh)), 260);
    EXPECT_EQ(bank.duration(command(CommandKind::SrefEnter)), 1);
    EXPECT_EQ(bank.duration(command(CommandKind::SrefExit)), 260);
}

TEST(DramBank, ActivateAckAfterRcd) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    EXPECT_EQ(bank.service(command(CommandKind::Activate, 5), 0, rank, group), 14);
    EXPECT_EQ(bank.mode(), BankMode::Active);
    EXPECT_EQ(bank.open_row(), 5u);
}

TEST(DramBank, RefreshAckAfterRfc) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    EXPECT_EQ(bank.service(command(CommandKind::Refresh), 3600, rank, group), 3860);
    DataStore store;
    bank.complete(store);
    EXPECT_EQ(bank.mode(), BankMode::Precharged);
}

TEST(DramBank, FourActivateWindowMatchesBruteForce) {
    const TimingParams t;
    RankTiming rank;
    BankGroupTiming group;
    DataStore store;
    std::vector<DramBank> banks;
    for (std::uint32_t b = 0; b < 5; ++b) banks.emplace_back(b, t);
    std::vector<Cycle> starts;
    for (auto& bank : banks) {
        const Cycle s = bank.earliest_start(command(CommandKind::Activate), 0, rank, group);
        EXPECT_EQ(s, brute_force_activate(starts, 0, t));
        bank.service(command(CommandKind::Activate), s, rank, group);
        starts.push_back(s);
    }
    EXPECT_EQ(starts, (std::vector<Cycle>{0, 6, 12, 18, 30}));
}

TEST(DramBankProperty, RandomActivateTimesMatchBruteForce) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        TimingParams t;
        t.tRRDL = 1 + static_cast<Cycle>(rng() % 8);
        t.tFAW = t.tRRDL + static_cast<Cycle>(rng() % 40);
        RankTiming rank;
        BankGroupTiming group;
        std::vector<Cycle> starts;
        Cycle now = 0;
        for (int i = 0; i < 12; ++i) {
            DramBank bank(0, t);  // fresh bank: only the rank rules apply
            now += static_cast<Cycle>(rng() % 10);
            const Cycle s = bank.earliest_start(command(CommandKind::Activate), now, rank, group);
            ASSERT_EQ(s, brute_force_activate(starts, now, t));
            bank.service(command(CommandKind::Activate), s, rank, group);
            starts.push_back(s);
            now = s;
        }
    }
}

TEST(DramBank, WriteToReadTurnaround) {
    const TimingParams t;
    DramBank writer(0, t), reader(1, t);
    RankTiming rank;
    BankGroupTiming group;
    DataStore store;
    run(writer, command(CommandKind::Activate, 0, Op::Write), 0, rank, group, store);
    run(reader, command(CommandKind::Activate), 6, rank, group, store);
    const auto [ws, we] = run(writer, command(CommandKind::Write), 14, rank, group, store);
    ASSERT_EQ(we, ws + t.tCL);
    // READ requested 3 cycles after the write ended: deferred 5 more cycles.
    EXPECT_EQ(reader.earliest_start(command(CommandKind::Read), we + 3, rank, group), we + 3 + 5);
}

TEST(DramBank, ColumnToColumnSpacing) {
    const TimingParams t;
    DramBank a(0, t), b(1, t);
    RankTiming rank;
    BankGroupTiming group;
    DataStore store;
    run(a, command(CommandKind::Activate), 0, rank, group, store);
    run(b, command(CommandKind::Activate), 0, rank, group, store);
    const Cycle first = a.service(command(CommandKind::Read), 30, rank, group) - t.tCL;
    EXPECT_EQ(b.earliest_start(command(CommandKind::Read), 30, rank, group), first + t.tCCDL);
}

TEST(DramBank, WriteThenReadReturnsValue) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    DataStore store;
    run(bank, command(CommandKind::Activate, 0, Op::Write), 0, rank, group, store);
    run(bank, command(CommandKind::Write, 0, Op::Write, 0x40, 77), 0, rank, group, store);
    run(bank, command(CommandKind::Precharge), 0, rank, group, store);
    run(bank, command(CommandKind::Activate), 0, rank, group, store);
    std::uint64_t value = 0;
    run(bank, command(CommandKind::Read, 0, Op::Read, 0x40), 0, rank, group, store, &value);
    EXPECT_EQ(value, 77u);
}

TEST(DramBank, DataCommittedAtAckNotIssue) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    DataStore store;
    run(bank, command(CommandKind::Activate, 0, Op::Write), 0, rank, group, store);
    bank.service(command(CommandKind::Write, 0, Op::Write, 0x8, 5), 100, rank, group);
    EXPECT_EQ(store.read(0x8), 0u);
    bank.complete(store);
    EXPECT_EQ(store.read(0x8), 5u);
}

TEST(DramBank, IllegalCommandsThrow) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    EXPECT_THROW(bank.earliest_start(command(CommandKind::Read), 0, rank, group), SimulationError);
    EXPECT_THROW(bank.earliest_start(command(CommandKind::Precharge), 0, rank, group), SimulationError);
    EXPECT_THROW(bank.earliest_start(command(CommandKind::SrefExit), 0, rank, group), SimulationError);
    bank.service(command(CommandKind::Activate, 3), 0, rank, group);
    EXPECT_THROW(bank.service(command(CommandKind::Precharge), 20, rank, group), SimulationError);  // overlap
    DataStore store;
    bank.complete(store);
    EXPECT_THROW(bank.earliest_start(command(CommandKind::Refresh), 20, rank, group), SimulationError);
    EXPECT_THROW(bank.earliest_start(command(CommandKind::Read, 4), 20, rank, group), SimulationError);
}

TEST(DramBank, ReadBeforeRcdElapsedIsEarly) {
    DramBank bank(0, TimingParams{});
    RankTiming rank;
    BankGroupTiming group;
    DataStore store;
    bank.service(command(CommandKind::Activate), 0, rank, group);
    bank.complete(store);
    EXPECT_THROW(bank.service(command(CommandKind::Read), 10, rank, group), SimulationError);
}

TEST(DataStore, UnwrittenReadsZero) {
    DataStore s;
    EXPECT_EQ(s.read(123), 0u);
    s.write(123, 9);
    s.write(123, 10);
    EXPECT_EQ(s.read(123), 10u);
}
