#pragma once

#include <stdexcept>
#include <string>

namespace divuq {

enum class ErrorKind {
    Index,
    Shape,
    Data,
    Format,
    Length,
    Config,
    InsufficientEnsemble,
    Range,
    Io,
    Usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void ensure(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) throw Error(kind, message);
}

}  // namespace divuq
