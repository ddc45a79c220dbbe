#pragma once

#include <stdexcept>
#include <string>

namespace mdm {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MDM_ERROR(Name)                                    \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what) : Error(what) {} \
    };

MDM_ERROR(DivisionByIntervalContainingZero)
MDM_ERROR(DomainViolation)
MDM_ERROR(OutOfParameterSpace)
MDM_ERROR(DegenerateChain)
MDM_ERROR(UnsupportedCount)
MDM_ERROR(NonConvergence)
MDM_ERROR(DomainConstraintViolated)
MDM_ERROR(RangeConditionUnverifiable)
MDM_ERROR(NegativityUnderMul)
MDM_ERROR(CertificationFailed)
MDM_ERROR(EnclosureTooWide)
MDM_ERROR(RTooLarge)
MDM_ERROR(MalformedRecord)

#undef MDM_ERROR

// Replay found a record whose stored claim does not recompute.
class ClaimMismatch : public Error {
public:
    ClaimMismatch(std::size_t record, const std::string& what)
        : Error("record " + std::to_string(record) + ": " + what), record_(record) {}
    std::size_t record() const noexcept { return record_; }

private:
    std::size_t record_;
};

} // namespace mdm
