#ifndef CRL_ERROR_HPP
#define CRL_ERROR_HPP

#include <stdexcept>

namespace crl {

/// Malformed or inconsistent input data (tables, predictions, model files).
class DataError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Mining or search cannot proceed (empty pool, no admissible alpha, ...).
class SearchError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Caller asked for something outside an operation's domain.
class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace crl

#endif  // CRL_ERROR_HPP
