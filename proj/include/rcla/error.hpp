#ifndef RCLA_ERROR_HPP
#define RCLA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rcla {

// Malformed input text (bad row, bad date, bad number).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input that breaks a data invariant (gap, non-positive level).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A series or market does not span the requested months.
class CoverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// PDE grid too coarse or too narrow for the requested contract.
class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Linear solve produced a zero pivot or a non-finite value.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& what) {
    if (!condition) {
        throw std::invalid_argument(what);
    }
}

} // namespace detail
} // namespace rcla

#endif // RCLA_ERROR_HPP
