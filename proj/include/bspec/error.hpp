#ifndef BSPEC_ERROR_HPP
#define BSPEC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace bspec {

enum class ErrorCode {
    Parse,
    NonPrimitive,
    TauInvalid,
    HorizontalInvalid,
    RhoOutOfRange,
    NotDiagonalizable,
    AtPole,
    DivergesAt,
    DisconnectedH,
    Unreachable,
    DepthExceeded,
    WrongGraph,
    IrrationalityViolation,
    NotPisot,
    DivisionByZero,
    TooLarge,
    NoMeeting,
    ParameterMismatch,
    BothResiduesZero,
    InsufficientDecay,
    InvalidArgument
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}
    Error(ErrorCode code, std::vector<std::string> details)
        : std::runtime_error(join(code, details)), code_(code), details_(std::move(details)) {}

    ErrorCode code() const { return code_; }
    const std::vector<std::string>& details() const { return details_; }

private:
    static std::string join(ErrorCode code, const std::vector<std::string>& d) {
        std::string s = error_name(code);
        for (const auto& x : d) s += "\n  - " + x;
        return s;
    }
    ErrorCode code_;
    std::vector<std::string> details_;
};

} // namespace bspec

#endif
