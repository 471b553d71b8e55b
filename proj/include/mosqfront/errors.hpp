#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mosqfront {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MOSQFRONT_DEFINE_ERROR(Name)          \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    };

MOSQFRONT_DEFINE_ERROR(InvalidArgument)    // bad parameter or precondition violation
MOSQFRONT_DEFINE_ERROR(InvalidProfile)     // non-positive / non-finite / asymmetric coefficient spec
MOSQFRONT_DEFINE_ERROR(DegenerateDomain)   // h <= g, collapsed interval
MOSQFRONT_DEFINE_ERROR(SchemeInstability)  // bound violation beyond tolerance; reduce dt
MOSQFRONT_DEFINE_ERROR(NumericalBlowup)    // NaN/Inf in state
MOSQFRONT_DEFINE_ERROR(MissingHistory)     // field history does not cover the query
MOSQFRONT_DEFINE_ERROR(EigenNoConvergence) // power iteration hit its iteration cap
MOSQFRONT_DEFINE_ERROR(BracketFailure)     // no sign change in a root bracket
MOSQFRONT_DEFINE_ERROR(SubcriticalDomain)  // stationary solve requested where R0 <= 1
MOSQFRONT_DEFINE_ERROR(UniquenessGapWarning) // monotone sandwich did not close
MOSQFRONT_DEFINE_ERROR(InvalidBracket)     // mu bracket endpoints misclassified
MOSQFRONT_DEFINE_ERROR(IoError)            // file could not be read or written

#undef MOSQFRONT_DEFINE_ERROR

// Bisection on mu hit a region that stays Undecided after horizon doublings.
class InconclusiveRegion : public Error {
public:
    InconclusiveRegion(const std::string& what, double lo, double hi)
        : Error(what), mu_lo(lo), mu_hi(hi) {}
    double mu_lo;
    double mu_hi;
};

// Aggregated config-file diagnostics; one entry per offending line/field.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> diags)
        : Error(join(diags)), diagnostics(std::move(diags)) {}
    std::vector<std::string> diagnostics;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& d : v) {
            if (!s.empty()) s += "\n";
            s += d;
        }
        return s;
    }
};

} // namespace mosqfront
