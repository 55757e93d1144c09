#ifndef WAVESPLIT_ERRORS_HPP
#define WAVESPLIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wavesplit {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

struct GridTooNarrow : Error {
    explicit GridTooNarrow(const std::string& msg) : Error(msg) {}
};

struct MissingSiParams : Error {
    explicit MissingSiParams(const std::string& msg) : Error(msg) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

struct TailsNotDegenerate : Error {
    explicit TailsNotDegenerate(const std::string& msg) : Error(msg) {}
};

struct EdgeLeakage : Error {
    explicit EdgeLeakage(const std::string& msg) : Error(msg) {}
};

struct SolveFailure : Error {
    explicit SolveFailure(const std::string& msg) : Error(msg) {}
};

struct TrapsUnresolved : Error {
    explicit TrapsUnresolved(const std::string& msg) : Error(msg) {}
};

struct DegenerateGap : Error {
    explicit DegenerateGap(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace wavesplit

#endif
