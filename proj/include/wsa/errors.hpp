#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsa {

/// Base class for all domain errors raised by this library. The what()
/// string always starts with the error name (e.g. "ParseError: ..."), so
/// callers that only have a std::exception can still report the kind.
class Error : public std::runtime_error {
public:
    Error(const std::string& name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct ParseError : Error {
    ParseError(std::size_t line_no, const std::string& detail)
        : Error("ParseError", "line " + std::to_string(line_no) + ": " + detail),
          line_no(line_no) {}
    std::size_t line_no;
};

struct NonFinite : Error {
    NonFinite(std::size_t line_no, const std::string& detail)
        : Error("NonFinite", "line " + std::to_string(line_no) + ": " + detail),
          line_no(line_no) {}
    std::size_t line_no;
};

struct TooShort : Error {
    explicit TooShort(const std::string& detail) : Error("TooShort", detail) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& detail) : Error("InvalidArgument", detail) {}
};

struct NyquistViolation : Error {
    explicit NyquistViolation(const std::string& detail) : Error("NyquistViolation", detail) {}
};

struct DegenerateSpectrum : Error {
    explicit DegenerateSpectrum(const std::string& detail) : Error("DegenerateSpectrum", detail) {}
};

struct NoDominantPeak : Error {
    explicit NoDominantPeak(const std::string& detail) : Error("NoDominantPeak", detail) {}
};

struct TooManyLevels : Error {
    explicit TooManyLevels(const std::string& detail) : Error("TooManyLevels", detail) {}
};

struct InconsistentLengths : Error {
    explicit InconsistentLengths(const std::string& detail) : Error("InconsistentLengths", detail) {}
};

struct InvalidResolution : Error {
    explicit InvalidResolution(const std::string& detail) : Error("InvalidResolution", detail) {}
};

struct EmptyField : Error {
    explicit EmptyField(const std::string& detail) : Error("EmptyField", detail) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& detail) : Error("GridMismatch", detail) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& detail) : Error("LengthMismatch", detail) {}
};

struct NoQualifyingCells : Error {
    explicit NoQualifyingCells(const std::string& detail) : Error("NoQualifyingCells", detail) {}
};

} // namespace wsa
