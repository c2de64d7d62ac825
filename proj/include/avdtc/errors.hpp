#ifndef AVDTC_ERRORS_HPP
#define AVDTC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace avdtc {

enum class ErrorCode {
    SelfLoop,
    DuplicateEdge,
    VertexOutOfRange,
    NoPivot,
    DegreeNotTwo,
    PairAdjacent,
    PairsOverlap,
    UncoloredEdge,
    PreconditionViolated,
    NotThreeDegenerate,
    DeltaExceedsK,
    DeltaTooSmall,
    InternalInvariantBroken,
    TooLarge,
    BadSpec,
    ParseError,
};

inline const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::NoPivot: return "NoPivot";
    case ErrorCode::DegreeNotTwo: return "DegreeNotTwo";
    case ErrorCode::PairAdjacent: return "PairAdjacent";
    case ErrorCode::PairsOverlap: return "PairsOverlap";
    case ErrorCode::UncoloredEdge: return "UncoloredEdge";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotThreeDegenerate: return "NotThreeDegenerate";
    case ErrorCode::DeltaExceedsK: return "DeltaExceedsK";
    case ErrorCode::DeltaTooSmall: return "DeltaTooSmall";
    case ErrorCode::InternalInvariantBroken: return "InternalInvariantBroken";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg)
        , code_(code)
    {
    }

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg)
{
    throw Error(code, msg);
}

} // namespace avdtc

#endif
