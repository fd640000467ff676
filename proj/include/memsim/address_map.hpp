#pragma once

#include <cstdint>

#include "memsim/config.hpp"
#include "memsim/types.hpp"

namespace memsim {

/// Splits an address as {row, column, rank, bankGroup, bank}, bank in the
/// least-significant bits. Bits above the row field are ignored.
BankCoordinates map_address(std::uint64_t address, const Topology& topology);

/// Inverse of map_address. Throws std::out_of_range for an index that does
/// not fit the topology.
std::uint64_t unmap(const BankCoordinates& coords, const Topology& topology);

std::uint32_t flat_bank_id(std::uint32_t rank, std::uint32_t bankGroup, std::uint32_t bank,
                           const Topology& topology);

/// Coordinates of bank `flatBankId` with row and column zero.
BankCoordinates bank_coordinates(std::uint32_t flatBankId, const Topology& topology);

}  // namespace memsim
