#ifndef DSPKIT_ERROR_HPP
#define DSPKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dspkit {

/* Base of every exception thrown by the library. The CLI maps the
 * subclasses onto exit codes. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (e.g. Ψ when (ω) holds).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A size or count guard was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

class ChainMismatch : public Error {
public:
    ChainMismatch(const std::string& what, std::size_t step)
        : Error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace dspkit

#endif
