#ifndef BLOCKCORR_ERRORS_HPP
#define BLOCKCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blockcorr {

// Error categories mirror the stable status codes of the public C API
// (and the CLI exit codes): data errors, undefined criterion, search
// limits, usage. Everything carries a human-readable message.

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a correlation is requested for a degenerate triplet list:
// the pooled observed vector or the pooled ideal vector has no variance.
class UndefinedCriterion : public std::runtime_error {
public:
    enum class Vector { Observed, Ideal };
    UndefinedCriterion(Vector which, const std::string& msg)
        : std::runtime_error(msg), which_(which) {}
    Vector which() const { return which_; }

private:
    Vector which_;
};

class LimitExceeded : public std::runtime_error {
public:
    explicit LimitExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace blockcorr

#endif
