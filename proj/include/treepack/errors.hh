/* vim: set sw=4 sts=4 et : */

#ifndef TREEPACK_ERRORS_HH
#define TREEPACK_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace treepack
{
    /// A caller broke an operation's stated precondition.
    class PreconditionError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Malformed graph, forest or certificate input.
    class ParseError : public std::runtime_error
    {
        private:
            int _line;

        public:
            ParseError(const std::string & message, int line = 0) :
                std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
                _line(line)
            {
            }

            auto line() const -> int { return _line; }
    };

    /// An internal invariant was found broken. Always a bug.
    class InvariantViolation : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };
}

#endif
