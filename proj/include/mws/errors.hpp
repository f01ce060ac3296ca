#pragma once
#include <stdexcept>
#include <string>

namespace mws {

// Root of the library's error hierarchy.  Every failure that is the
// caller's problem (bad input, out-of-range request, exceeded budget)
// is reported through one of these; recoverable "no result" outcomes
// (e.g. a nonsquare has no square root) use std::optional instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MWS_DEFINE_ERROR(NAME)      \
  struct NAME : Error {             \
    using Error::Error;             \
  }

MWS_DEFINE_ERROR(ZeroInverse);           // multiplicative inverse of zero
MWS_DEFINE_ERROR(BadPrime);              // modulus not an odd prime / bad reduction requested
MWS_DEFINE_ERROR(TooLarge);              // enumeration or closure would exceed its guard
MWS_DEFINE_ERROR(UnsupportedGenus);      // closed-form path only covers genus 1 and 2
MWS_DEFINE_ERROR(InconsistentCounts);    // point counts violate exact integrality/Weil constraints
MWS_DEFINE_ERROR(InvalidDivisor);        // (u,v) fails the Mumford conditions
MWS_DEFINE_ERROR(NotOnCurve);            // point does not satisfy y^2 = f(x)
MWS_DEFINE_ERROR(DenominatorAtP);        // rational data has p in a denominator
MWS_DEFINE_ERROR(InvalidReduction);      // reduction of a divisor fails validity downstairs
MWS_DEFINE_ERROR(NotTorsion);            // declared torsion generator has no small finite order
MWS_DEFINE_ERROR(FactorizationFailure);  // deterministic factoring budget exhausted
MWS_DEFINE_ERROR(ParseError);            // malformed input file / record
MWS_DEFINE_ERROR(OutOfRange);            // argument outside the supported domain
MWS_DEFINE_ERROR(InsufficientPrimes);    // no usable primes for the requested run
MWS_DEFINE_ERROR(CacheError);            // cache file unusable (I/O level, not content level)

#undef MWS_DEFINE_ERROR

// Specific parse failures callers may want to distinguish.
struct EvenDegree : ParseError {
  using ParseError::ParseError;
};
struct NotSquarefree : ParseError {
  using ParseError::ParseError;
};


// Raised internally when one prime of a multi-prime run must be abandoned
// (guard exceeded, factoring failed, ...).  The driver records the reason
// and moves on; it never escapes a top-level entry point.
struct SkipPrime : Error {
  unsigned long long p;
  SkipPrime(unsigned long long p_, const std::string& why)
      : Error("p=" + std::to_string(p_) + ": " + why), p(p_) {}
};

}  // namespace mws
