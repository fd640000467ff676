#include "memsim/address_map.hpp"

#include <stdexcept>
#include <string>

namespace memsim {

namespace {

constexpr std::uint64_t mask(std::uint32_t bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

void require_below(std::uint64_t value, std::uint64_t limit, const char* what) {
    if (value >= limit) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(value) +
                                " out of range (limit " + std::to_string(limit) + ")");
    }
}

}  // namespace

std::uint32_t flat_bank_id(std::uint32_t rank, std::uint32_t bankGroup, std::uint32_t bank,
                           const Topology& topology) {
    return (rank * topology.numBankGroups + bankGroup) * topology.numBanks + bank;
}

BankCoordinates map_address(std::uint64_t address, const Topology& topology) {
    BankCoordinates c;
    std::uint32_t shift = 0;
    c.bank = static_cast<std::uint32_t>(address & mask(topology.bank_bits()));
    shift += topology.bank_bits();
    c.bankGroup = static_cast<std::uint32_t>((address >> shift) & mask(topology.bank_group_bits()));
    shift += topology.bank_group_bits();
    c.rank = static_cast<std::uint32_t>((address >> shift) & mask(topology.rank_bits()));
    shift += topology.rank_bits();
    c.column = (address >> shift) & mask(topology.colBits);
    shift += topology.colBits;
    c.row = shift >= 64 ? 0 : (address >> shift) & mask(topology.rowBits);
    c.flatBankId = flat_bank_id(c.rank, c.bankGroup, c.bank, topology);
    return c;
}

std::uint64_t unmap(const BankCoordinates& coords, const Topology& topology) {
    require_below(coords.bank, topology.numBanks, "bank");
    require_below(coords.bankGroup, topology.numBankGroups, "bank group");
    require_below(coords.rank, topology.numRanks, "rank");
    require_below(coords.column, mask(topology.colBits) + 1, "column");
    if (topology.rowBits < 64) require_below(coords.row, mask(topology.rowBits) + 1, "row");

    std::uint64_t address = coords.bank;
    std::uint32_t shift = topology.bank_bits();
    address |= std::uint64_t{coords.bankGroup} << shift;
    shift += topology.bank_group_bits();
    address |= std::uint64_t{coords.rank} << shift;
    shift += topology.rank_bits();
    address |= coords.column << shift;
    shift += topology.colBits;
    if (shift < 64) address |= coords.row << shift;
    return address;
}

BankCoordinates bank_coordinates(std::uint32_t flatBankId, const Topology& topology) {
    require_below(flatBankId, topology.total_banks(), "flat bank");
    BankCoordinates c;
    c.bank = flatBankId % topology.numBanks;
    c.bankGroup = (flatBankId / topology.numBanks) % topology.numBankGroups;
    c.rank = flatBankId / topology.banks_per_rank();
    c.flatBankId = flatBankId;
    return c;
}

}  // namespace memsim
