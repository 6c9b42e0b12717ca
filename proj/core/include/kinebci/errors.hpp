#ifndef KINEBCI_ERRORS_HPP
#define KINEBCI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kinebci {

/// Base class for all toolkit failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched dimensions or invalid configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Frames or samples presented out of order.
class SequenceError : public Error {
public:
    using Error::Error;
};

/// Lag window queried before it holds K+1 frames.
class NotWarmError : public Error {
public:
    using Error::Error;
};

/// Not enough samples for the requested operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents or invalid runtime inputs.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level read/write failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Least-squares design is rank deficient and no ridge was requested.
class RankDeficiencyError : public Error {
public:
    RankDeficiencyError(const std::string& what, int deficient_columns)
        : Error(what), deficient_columns(deficient_columns) {}

    int deficient_columns;
};

} // namespace kinebci

#endif
