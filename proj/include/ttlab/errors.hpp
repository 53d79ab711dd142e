#ifndef TTLAB_ERRORS_HPP
#define TTLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttlab {

// Base of every error raised by the library. Report-style operations
// (validate, check_morphism) never throw; everything else does.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidTrack : public Error { using Error::Error; };
class NoSplitAvailable : public Error { using Error::Error; };
class ChainMismatch : public Error { using Error::Error; };
class NotABijection : public Error { using Error::Error; };
class NotASelfMap : public Error { using Error::Error; };
class NotIrreducible : public Error { using Error::Error; };
class BoundaryNotPreserved : public Error { using Error::Error; };
class AlignmentError : public Error { using Error::Error; };
class UnknownEntry : public Error { using Error::Error; };
class BadIndex : public Error { using Error::Error; };
class InconsistentConstraints : public Error { using Error::Error; };
class NotAnIdentification : public Error { using Error::Error; };
class ResourceLimit : public Error { using Error::Error; };
class FileError : public Error { using Error::Error; };

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::size_t iterations)
        : Error(what), iterations_(iterations) {}
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Raised by apply_split / apply_sequence. `index` is the position of the
// offending move inside a sequence (0 for a single move); `condition` names
// the violated splitting condition ("a".."d") or "unknown-edge".
class IllegalMove : public Error {
public:
    IllegalMove(const std::string& what, std::string condition, std::size_t index = 0,
                std::string intermediate = {})
        : Error(what), condition_(std::move(condition)), index_(index),
          intermediate_(std::move(intermediate)) {}
    const std::string& condition() const noexcept { return condition_; }
    std::size_t index() const noexcept { return index_; }
    // Serialized track on which the move was attempted (sequences only).
    const std::string& intermediate() const noexcept { return intermediate_; }

private:
    std::string condition_;
    std::size_t index_;
    std::string intermediate_;
};

} // namespace ttlab

#endif
