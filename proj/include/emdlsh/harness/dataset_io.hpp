#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "emdlsh/point_set.hpp"

namespace emdlsh {

// Text format: a header line `EMDSET v1 <mode> <n> <s> <d>` with a trailing
// `<delta>` in grid mode, then one block per point of s coordinate rows,
// blocks separated by a blank line. Coordinates are written with 17
// significant digits, so a save/load round trip is bit-exact.
void write_dataset(std::ostream& os, const Dataset& data);
// Throws FormatError. With `expected`, a header of another mode is rejected
// with both mode names in the message.
Dataset read_dataset(std::istream& is, std::optional<Mode> expected = std::nullopt);

void save_dataset(const std::string& path, const Dataset& data);
Dataset load_dataset(const std::string& path, std::optional<Mode> expected = std::nullopt);

}  // namespace emdlsh
