#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace halq {

using TermId = std::uint32_t;

// Malformed or out-of-range input data: unreadable files, bad CSV rows,
// poll values outside their scale, invalid UTF-8.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace halq
