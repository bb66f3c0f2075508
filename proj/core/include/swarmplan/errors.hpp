#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swarmplan {

/// Base class for all library errors. `name()` returns the error kind as a
/// stable identifier (used by the CLI exit paths and the harness CSV).
class Error : public std::runtime_error {
public:
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
    virtual const char* name() const noexcept { return "Error"; }
};

#define SWARMPLAN_DEFINE_ERROR(Type)                                      \
    class Type : public Error {                                           \
    public:                                                               \
        explicit Type(std::string msg) : Error(std::move(msg)) {}         \
        const char* name() const noexcept override { return #Type; }      \
    }

SWARMPLAN_DEFINE_ERROR(UnknownNode);
SWARMPLAN_DEFINE_ERROR(ValidationError);
SWARMPLAN_DEFINE_ERROR(ParseError);
SWARMPLAN_DEFINE_ERROR(InvalidParameter);
SWARMPLAN_DEFINE_ERROR(PayloadExceedsCapacity);
SWARMPLAN_DEFINE_ERROR(TooFewPackages);
SWARMPLAN_DEFINE_ERROR(IllegalSplit);
SWARMPLAN_DEFINE_ERROR(NoFeasibleCandidate);
SWARMPLAN_DEFINE_ERROR(NoFeasiblePath);
SWARMPLAN_DEFINE_ERROR(PartitionBudgetExceeded);

#undef SWARMPLAN_DEFINE_ERROR

}  // namespace swarmplan
