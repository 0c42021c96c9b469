#pragma once

#include <stdexcept>
#include <string>

namespace covercraft {

enum class ErrorKind {
    NonPrime,
    DegreeZero,
    CapExceeded,
    DivByZero,
    FieldMismatch,
    NotSubfieldOrder,
    NotExtension,
    DimensionMismatch,
    RankDeficient,
    SamePoint,
    EmptySet,
    InvalidPartition,
    ConstraintViolated,
    AuxMissing,
    UniverseTooSmall,
    CsiInfeasible,
    MissingTableEntry,
    DomainViolation,
    NonIntegralResult,
    NotStrongBlocking,
    SearchExhausted,
    NoSuitableC,
    NoWitnessK,
    NoWitness,
    WrongField,
    BudgetExceeded,
    NotConstructible,
    Parse,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace covercraft
