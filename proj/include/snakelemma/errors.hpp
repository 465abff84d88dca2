#pragma once

#include <stdexcept>
#include <string>

namespace snakelemma {

// Caller passed arguments whose shapes or ambients do not fit together.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A matrix sends some relation of the source outside the target relations.
class IllDefined : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A hom does not respect the sub/quotient structure it was asked to descend to.
class NotInduced : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DiagramError : public std::runtime_error {
public:
    enum class Kind { NotCommutative, RowNotExact, HypothesisFailed };

    DiagramError(Kind kind, std::string where, const std::string& message)
        : std::runtime_error(message), kind_(kind), where_(std::move(where)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& where() const noexcept { return where_; }

    static const char* kind_name(Kind k) noexcept {
        switch (k) {
        case Kind::NotCommutative: return "NotCommutative";
        case Kind::RowNotExact: return "RowNotExact";
        case Kind::HypothesisFailed: return "HypothesisFailed";
        }
        return "Unknown";
    }

private:
    Kind kind_;
    std::string where_;
};

// A step that the mathematics guarantees did not hold: an implementation bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GenerationExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void internal_assert(bool cond, const char* what) {
    if (!cond)
        throw InternalError(what);
}
inline void require(bool cond, const std::string& what) {
    if (!cond)
        throw ContractViolation(what);
}
} // namespace detail

} // namespace snakelemma
