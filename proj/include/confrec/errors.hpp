#ifndef CONFREC_ERRORS_HPP
#define CONFREC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace confrec {

/// Base class for all library errors. Validation-type failures (bad input
/// data or parameters) derive from ValidationFailure so callers can map them
/// to a distinct exit code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationFailure : public Error {
public:
    using Error::Error;
};

// corpus
class ParseError : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class ValidationError : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class EmptySplit : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class InvalidParam : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

// text_features
class EmptyVocabulary : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class AllZeroDocument : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class InvalidCounts : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

// lda
class EmptyCorpus : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class AllTokensUnknown : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

// ca
class ZeroGrandTotal : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class ZeroExpectedCell : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class ZeroMargin : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class DimsTooLarge : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class ColumnMismatch : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

// similarity
class LengthMismatch : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class ZeroVector : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class ZeroVariance : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

// recommenders
class NegativeOrZeroMargin : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class VocabularyMismatch : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class MethodInputMissing : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

// evaluation
class EmptyRelevantSet : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class AllZeroGrades : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};
class MissingTruth : public ValidationFailure {
public:
    using ValidationFailure::ValidationFailure;
};

}  // namespace confrec

#endif  // CONFREC_ERRORS_HPP
