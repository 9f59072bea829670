#pragma once

#include <stdexcept>
#include <string>

namespace dyncomp {

enum class ErrorKind {
    MixedAmbient,
    CrossField,
    NotNull,
    EmptyInput,
    NoGap,
    BreakpointBudget,
    CoverFailure,
    NonTermination,
    InvalidPartition,
    DuplicateInput,
    SearchExhausted,
    UnprovenInput,
    NotDisjoint,
    DegenerateInput,
    PointOutside,
    NotContained,
    NotSeparated,
    GapNonpositive,
    UnrefinedTower,
    ColumnDeficit,
    InvalidInput,
    ParseError,
    Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, long column = -1)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), column_(column) {}

    ErrorKind kind() const { return kind_; }
    // Failing column for ColumnDeficit, -1 otherwise.
    long column() const { return column_; }

private:
    ErrorKind kind_;
    long column_;
};

}  // namespace dyncomp
