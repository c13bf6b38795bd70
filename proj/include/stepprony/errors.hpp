// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

#pragma once

#include <stdexcept>
#include <string>

namespace stepprony {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Random-instance constraints cannot be met.
class InfeasibleError : public Error
{
public:
    using Error::Error;
};

/// A requested index is absent from a measurement set.
class MissingIndexError : public Error
{
public:
    using Error::Error;
};

/// The recurrence (Hankel) system is rank-deficient; usually the requested
/// order exceeds the true number of nodes.
class SingularSystemError : public Error
{
public:
    using Error::Error;
};

/// The amplitude (Vandermonde) system is too ill-conditioned to trust.
class IllConditionedError : public Error
{
public:
    using Error::Error;
};

/// Two recovered nodes coincide, which the distinct-node model forbids.
class DuplicateRootError : public Error
{
public:
    using Error::Error;
};

/// Recovered nodes are inconsistent with the signal model (off the unit
/// circle, or positions outside the unit interval).
class ModelMismatchError : public Error
{
public:
    using Error::Error;
};

/// Input of a kind the operation has no closed form for.
class UnsupportedInputError : public Error
{
public:
    using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error
{
public:
    using Error::Error;
};

} // namespace stepprony
