#pragma once

#include <stdexcept>
#include <string>

namespace lienil {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that cannot be parsed (polynomial literal, spec string, JSON file).
struct ParseError : Error {
    using Error::Error;
};

/// Operands that live in different spaces or algebras.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A desk-scale guard was hit; the caller may raise the limit explicitly.
struct SizeGuard : Error {
    using Error::Error;
};

/// No index up to the search cap worked. Never means "not Lie nilpotent".
struct CapExceeded : Error {
    using Error::Error;
};

/// Arguments outside an operation's domain.
struct DomainError : Error {
    using Error::Error;
};

/// A self-check failed; indicates a bug or a wrong ansatz.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace lienil
