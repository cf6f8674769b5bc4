/// \file errors.hpp
/// \brief Exception hierarchy for the mgflow library.
///
/// Every failure mode that callers are expected to handle has its own type,
/// all rooted at mgflow::Error so that a single catch suffices at CLI level.
#pragma once

#include <stdexcept>
#include <string>

namespace mgflow {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Index sets passed to a minor are malformed (cardinality mismatch,
/// duplicates, not strictly increasing, or out of range).
class InvalidIndexSets : public Error {
public:
    explicit InvalidIndexSets(const std::string& msg) : Error(msg) {}
};

/// A matrix required to be invertible is numerically singular.
class SingularMatrix : public Error {
public:
    explicit SingularMatrix(const std::string& msg) : Error(msg) {}
};

/// The point lies outside GL_*: a principal minor needed by the triangular
/// factorization vanishes.  `index` is the 1-based minor index, `side` is
/// "plus" (trailing minors) or "minus" (leading minors).
class NotInGLStar : public Error {
public:
    NotInGLStar(int index_, const std::string& side_, double magnitude_)
        : Error("matrix not in GL_*: " + side_ + "-side principal minor " +
                std::to_string(index_) + " has magnitude " +
                std::to_string(magnitude_) + " below threshold"),
          index(index_), side(side_), magnitude(magnitude_) {}
    int index;
    std::string side;
    double magnitude;
};

/// A leading principal minor required by the Gauss (LDU) factorization
/// vanishes.  `index` is 1-based.
class SingularLeadingMinor : public Error {
public:
    explicit SingularLeadingMinor(int index_)
        : Error("Gauss factorization: leading principal minor " +
                std::to_string(index_) + " is numerically zero"),
          index(index_) {}
    int index;
};

/// A chart coordinate is undefined at this point (a defining minor ratio is
/// zero or infinite).  `nu` is the 1-based coordinate index.
class DegeneratePoint : public Error {
public:
    explicit DegeneratePoint(int nu_)
        : Error("chart degenerate at coordinate " + std::to_string(nu_)),
          nu(nu_) {}
    int nu;
};

/// Adaptive ODE step size collapsed below the minimum.
class StepFailure : public Error {
public:
    explicit StepFailure(const std::string& msg) : Error(msg) {}
};

/// A trajectory left the open stratum on which the flow is defined
/// (a principal minor magnitude fell below the singular threshold).
class StratumExit : public Error {
public:
    explicit StratumExit(const std::string& msg) : Error(msg) {}
};

/// Generic ODE integration failure (non-finite values, step explosion).
class OdeFailure : public Error {
public:
    explicit OdeFailure(const std::string& msg) : Error(msg) {}
};

/// Potential L1 norm exceeds the hard cap of the small-norm regime.
class NormTooLarge : public Error {
public:
    explicit NormTooLarge(const std::string& msg) : Error(msg) {}
};

/// Diagonal compatibility residual of the hierarchy recursion exceeded
/// its tolerance.
class RecursionInconsistency : public Error {
public:
    explicit RecursionInconsistency(const std::string& msg) : Error(msg) {}
};

/// More than the allowed fraction of spectral nodes lack a factorization.
class FlaggedNodesExceeded : public Error {
public:
    explicit FlaggedNodesExceeded(const std::string& msg) : Error(msg) {}
};

/// The two branch points of the angle integrand coincide; the elliptic
/// evaluation is ill-posed.
class CoincidentRoots : public Error {
public:
    explicit CoincidentRoots(const std::string& msg) : Error(msg) {}
};

/// Branch continuation along the integration path failed to stabilize.
class BranchPathFailure : public Error {
public:
    explicit BranchPathFailure(const std::string& msg) : Error(msg) {}
};

/// Invalid experiment configuration (CLI/config-file level).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Input file malformed (JSON parse error, wrong shape, missing keys).
class FileFormatError : public Error {
public:
    explicit FileFormatError(const std::string& msg) : Error(msg) {}
};

} // namespace mgflow
