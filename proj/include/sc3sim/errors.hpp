#pragma once

#include <stdexcept>
#include <string>

namespace sc3sim {

// Base class for all contract violations raised by the simulator library.
// Modeled outcomes (drops, OOM-at-startup, missed deadlines) are data, not
// exceptions; these types cover misuse of an operation's precondition.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchedulingInPast : SimError {
    using SimError::SimError;
};

struct EmptyQueueError : SimError {
    using SimError::SimError;
};

// A handler reported an unrecoverable inconsistency during dispatch.
struct HandlerFault : SimError {
    using SimError::SimError;
};

struct OomError : SimError {
    using SimError::SimError;
};

struct ReleaseUnderflow : SimError {
    using SimError::SimError;
};

struct InvalidCustomLayout : SimError {
    using SimError::SimError;
};

struct BusyError : SimError {
    using SimError::SimError;
};

struct NoPlanError : SimError {
    using SimError::SimError;
};

struct ParseError : SimError {
    enum class Code { UnknownVerb, UnknownObject, Malformed };

    ParseError(Code c, const std::string& what) : SimError(what), code(c) {}

    Code code;
};

struct SchemaError : SimError {
    SchemaError(std::string f, const std::string& reason)
        : SimError("schema error at '" + f + "': " + reason), field(std::move(f)) {}

    std::string field;
};

struct LayoutInvalid : SimError {
    using SimError::SimError;
};

struct IoError : SimError {
    using SimError::SimError;
};

struct UnknownParameter : SimError {
    using SimError::SimError;
};

} // namespace sc3sim
