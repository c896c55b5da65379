#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mixtest/empirical.hpp"

namespace mixtest {

// Malformed input data (as opposed to invalid arguments or numerical failure).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Reads a numeric CSV into a Dataset. Every record must have the same number
// of comma-separated fields, each parsing as a finite double. If the first
// line fails numeric parsing it is treated as a header and skipped; all later
// lines must parse. CRLF line endings are accepted, blank trailing lines are
// ignored, and errors carry "path:line:" context. Throws DataError.
Dataset read_csv_dataset(const std::string& path);

// Writes a Dataset as CSV with 17 significant digits (round-trip exact for
// doubles). `header` is written first when non-empty; its size must then
// match the dataset dimension.
void write_csv_dataset(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& header = {});

}  // namespace mixtest
