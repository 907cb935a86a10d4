#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace remeta {

enum class ErrorCode {
    domain,     // invalid argument or data outside an operation's domain
    numerical,  // an algorithm failed to reach its accuracy target
    range,      // a root was not bracketed by the search interval
    parse,      // malformed input file
    io,         // file could not be read or written
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error(ErrorCode::domain, message) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& message) : Error(ErrorCode::numerical, message) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& message) : Error(ErrorCode::range, message) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& message) : Error(ErrorCode::parse, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorCode::io, message) {}
};

}  // namespace remeta
