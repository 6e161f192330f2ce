#ifndef FRACMOM_ERRORS_HPP
#define FRACMOM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracmom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// mul result exceeded the term-count limit, or a basis exceeded its size cap
struct ResourceLimit : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::string msg, std::size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// tabulated delta/gamma lookup outside declared coverage
struct MissingEntry : Error {
    MissingEntry(std::string msg, std::string index)
        : Error(msg + ": " + index), index(std::move(index)) {}
    std::string index;
};

struct InputError : Error {
    using Error::Error;
};

} // namespace fracmom

#endif
