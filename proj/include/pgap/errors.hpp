#pragma once

#include <stdexcept>
#include <string>

namespace pgap {

// Thrown when an operation needs primes beyond PrimeTable::limit().
struct insufficient_table_error : std::runtime_error {
    explicit insufficient_table_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when a congruence system assigns incompatible residues to one modulus.
struct infeasible_system_error : std::runtime_error {
    explicit infeasible_system_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace pgap
