#ifndef CWKIRCH_ERROR_HPP
#define CWKIRCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cwk {

// A violated precondition on caller-supplied data (bad shapes, indices out of
// range, a subcomplex that is not a spanning tree, p outside B_{d-1}, ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A quantity that must be nondegenerate turned out degenerate (zero Gram
// determinant, singular change-of-basis matrix, ...).
class DegenerateError : public std::domain_error {
public:
    explicit DegenerateError(const std::string& what) : std::domain_error(what) {}
};

// A document that does not parse or does not describe a valid object.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cwk

#endif  // CWKIRCH_ERROR_HPP
