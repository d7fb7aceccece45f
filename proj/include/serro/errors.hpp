#ifndef SERRO_ERRORS_HPP
#define SERRO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace serro {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A precondition on user-supplied parameters was violated.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// Requested frequency or register value lies outside the representable range.
class OutOfRange : public InvalidArgument {
public:
    explicit OutOfRange(const std::string& msg) : InvalidArgument(msg) {}
};

/// Record does not contain an integer number of ramp periods.
class NonCommensurate : public InvalidArgument {
public:
    explicit NonCommensurate(const std::string& msg) : InvalidArgument(msg) {}
};

/// Spectral analysis was asked for on a record not marked as coherent.
class NonCoherentRecord : public InvalidArgument {
public:
    explicit NonCoherentRecord(const std::string& msg) : InvalidArgument(msg) {}
};

/// Tabular transfer-function input could not be parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Two table rows share the same frequency.
class DuplicateFrequency : public Error {
public:
    explicit DuplicateFrequency(const std::string& msg) : Error(msg) {}
};

/// Table stream held no data rows.
class EmptyTable : public Error {
public:
    explicit EmptyTable(const std::string& msg) : Error(msg) {}
};

/// Requested metric frequency does not fall on the spectrum grid.
class TargetOffGrid : public Error {
public:
    explicit TargetOffGrid(const std::string& msg) : Error(msg) {}
};

/// Cavity geometry outside the stability region.
class UnstableCavity : public InvalidArgument {
public:
    explicit UnstableCavity(const std::string& msg) : InvalidArgument(msg) {}
};

/// Total error signal has no zero crossing inside the lock bracket.
class NoLockPoint : public Error {
public:
    explicit NoLockPoint(const std::string& msg) : Error(msg) {}
};

/// Dynamic-range anchor frequency not covered by the gain curve.
class F1OutOfRange : public InvalidArgument {
public:
    explicit F1OutOfRange(const std::string& msg) : InvalidArgument(msg) {}
};

} // namespace serro

#endif
