#pragma once

#include <stdexcept>
#include <string>

namespace gvsm {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Operand dimensions are incompatible with the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be invertible has |det| at or below the singularity threshold.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An argument violates a documented precondition (non-unit reflector axis,
/// asymmetric input to a symmetric solver, too few vectors, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The matrix has no eigenbasis over the reals.
class NotDiagonalizableError : public Error {
public:
    enum class Reason { complex_spectrum, defective };

    NotDiagonalizableError(Reason reason, const std::string& message)
        : Error(message), reason_(reason) {}

    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

/// A matrix does not satisfy the membership predicate of the group it claims.
class ClassificationError : public Error {
public:
    using Error::Error;
};

/// A permutation array is not a bijection on {0..n-1}.
class InvalidPermutationError : public Error {
public:
    using Error::Error;
};

/// An operation was applied to a group element of the wrong kind.
class KindError : public Error {
public:
    using Error::Error;
};

/// Corpus input contained no documents.
class EmptyCorpusError : public Error {
public:
    using Error::Error;
};

/// A document line contained no tokens.
class EmptyDocumentError : public Error {
public:
    using Error::Error;
};

/// A query had no in-vocabulary tokens left after filtering.
class EmptyQueryError : public Error {
public:
    using Error::Error;
};

/// A zero vector reached an operation that needs a positive norm.
class ZeroVectorError : public Error {
public:
    using Error::Error;
};

/// A functional and a vector were paired across different declared bases.
class BasisMismatchError : public Error {
public:
    using Error::Error;
};

/// A cost table is missing an entry for a vocabulary term.
class MissingCostError : public Error {
public:
    using Error::Error;
};

/// A document id is outside the corpus.
class DocRangeError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// A file was readable but malformed.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gvsm
