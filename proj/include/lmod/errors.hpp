#pragma once

#include <stdexcept>
#include <string>

namespace lmod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define LMOD_DEFINE_ERROR(Name)              \
    struct Name : Error {                    \
        using Error::Error;                  \
    }

LMOD_DEFINE_ERROR(InvalidCartanType);
LMOD_DEFINE_ERROR(GroupTooLarge);
LMOD_DEFINE_ERROR(RankMismatch);
LMOD_DEFINE_ERROR(NotDominant);
LMOD_DEFINE_ERROR(NotComparable);
LMOD_DEFINE_ERROR(NotInSupport);
LMOD_DEFINE_ERROR(NotAComplex);
LMOD_DEFINE_ERROR(UnsupportedCoefficients);
LMOD_DEFINE_ERROR(ComplexTooLarge);
LMOD_DEFINE_ERROR(MissingRealFormData);
LMOD_DEFINE_ERROR(MissingEntry);
LMOD_DEFINE_ERROR(WeightNotPresent);
LMOD_DEFINE_ERROR(ModeDisagreement);
LMOD_DEFINE_ERROR(InternalInconsistency);
LMOD_DEFINE_ERROR(SignViolation);
LMOD_DEFINE_ERROR(ParseError);

#undef LMOD_DEFINE_ERROR

}  // namespace lmod
