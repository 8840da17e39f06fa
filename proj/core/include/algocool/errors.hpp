#pragma once

#include <stdexcept>
#include <string>

namespace algocool {

// Argument outside its mathematical domain (bad probability, negative
// temperature parameter where forbidden, out-of-range index set, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Incompatible dimensions between operands (state vs Hamiltonian,
// local operator vs register slot, ...).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A verification routine was called on inputs that violate its
// structural precondition (e.g. a non-product initial state).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace algocool
