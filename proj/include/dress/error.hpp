#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dress {

enum class ErrorCode {
    TableNotAssociative,
    NoIdentity,
    NoInverse,
    PermutationsInvalid,
    InvalidGroupSpec,
    OrderCapExceeded,
    InvalidPrime,
    NotAHomomorphism,
    NotDefinedOnGenerators,
    NotASubgroup,
    MismatchedTargets,
    MismatchedGroups,
    CountCapExceeded,
    CapExceeded,
    NotAComplex,
    DimensionMismatch,
    UnknownTag,
    FamilyGroupMismatch,
    EmptyFamily,
    NotAFamily,
    EmptyGSet,
    GroupMismatch,
    NotAClassFunction,
    DegreeOutOfRange,
    InvalidFunctorData,
    ConfigError,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library; `code()` names the
/// failure mode so callers and tests can match on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dress
