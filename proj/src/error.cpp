#include "dress/error.hpp"

namespace dress {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::TableNotAssociative: return "TableNotAssociative";
        case ErrorCode::NoIdentity: return "NoIdentity";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::PermutationsInvalid: return "PermutationsInvalid";
        case ErrorCode::InvalidGroupSpec: return "InvalidGroupSpec";
        case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
        case ErrorCode::InvalidPrime: return "InvalidPrime";
        case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
        case ErrorCode::NotDefinedOnGenerators: return "NotDefinedOnGenerators";
        case ErrorCode::NotASubgroup: return "NotASubgroup";
        case ErrorCode::MismatchedTargets: return "MismatchedTargets";
        case ErrorCode::MismatchedGroups: return "MismatchedGroups";
        case ErrorCode::CountCapExceeded: return "CountCapExceeded";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NotAComplex: return "NotAComplex";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnknownTag: return "UnknownTag";
        case ErrorCode::FamilyGroupMismatch: return "FamilyGroupMismatch";
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::NotAFamily: return "NotAFamily";
        case ErrorCode::EmptyGSet: return "EmptyGSet";
        case ErrorCode::GroupMismatch: return "GroupMismatch";
        case ErrorCode::NotAClassFunction: return "NotAClassFunction";
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::InvalidFunctorData: return "InvalidFunctorData";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace dress
