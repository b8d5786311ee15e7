// errors.hpp
//
// Exception hierarchy. The CLI maps each family onto an exit status:
// DomainError -> 2 (usage), DataError -> 3, CapacityError -> 4,
// SinkError -> 5.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primewin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition on numeric parameters does not hold.
struct DomainError : Error {
    using Error::Error;
};

// A request exceeds a configured size limit (sieve ceiling, integer width).
struct CapacityError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data.
struct DataError : Error {
    using Error::Error;
};

// The report sink could not be written.
struct SinkError : Error {
    using Error::Error;
};

struct ParseError : DataError {
    ParseError(const std::string& what, std::size_t line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

// The prime divides the index [O_K : Z[theta]], so the factorization of the
// defining polynomial mod p does not describe the prime ideals above p.
struct UnsupportedPrime : DataError {
    explicit UnsupportedPrime(std::int64_t p)
        : DataError("prime " + std::to_string(p) +
                    " divides the index of Z[theta]; splitting unsupported"),
          prime(p) {}
    std::int64_t prime;
};

}  // namespace primewin
