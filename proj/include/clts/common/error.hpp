#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clts {

/// Broad failure class; the CLI maps each one to a process exit code.
enum class ErrorCategory { config = 1, data = 2, backend = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

#define CLTS_DEFINE_ERROR(Name, Category)                                    \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what)                               \
            : Error(ErrorCategory::Category, what) {}                        \
    }

// configuration
CLTS_DEFINE_ERROR(ConfigError, config);
CLTS_DEFINE_ERROR(MissingResource, config);
CLTS_DEFINE_ERROR(MissingPatternFile, config);
CLTS_DEFINE_ERROR(UnsupportedLanguage, config);

// data
CLTS_DEFINE_ERROR(IoError, data);
CLTS_DEFINE_ERROR(EmptyCorpus, data);
CLTS_DEFINE_ERROR(DimensionMismatch, data);
CLTS_DEFINE_ERROR(ZeroNormVector, data);
CLTS_DEFINE_ERROR(LengthMismatch, data);
CLTS_DEFINE_ERROR(EmptyReference, data);
CLTS_DEFINE_ERROR(EmptySequence, data);
CLTS_DEFINE_ERROR(MissingPair, data);
CLTS_DEFINE_ERROR(CycleError, data);
CLTS_DEFINE_ERROR(MultiRootError, data);
CLTS_DEFINE_ERROR(EmptyDocument, data);
CLTS_DEFINE_ERROR(InsufficientData, data);
CLTS_DEFINE_ERROR(OutOfRangeCategory, data);
CLTS_DEFINE_ERROR(SingleCategoryDegenerate, data);
CLTS_DEFINE_ERROR(InsufficientRatings, data);
CLTS_DEFINE_ERROR(ScaleViolation, data);
CLTS_DEFINE_ERROR(MissingArtifact, data);
CLTS_DEFINE_ERROR(InvalidArgument, data);

// backends
CLTS_DEFINE_ERROR(BackendError, backend);
CLTS_DEFINE_ERROR(EmptyResponse, backend);
CLTS_DEFINE_ERROR(TranslationBackendError, backend);
CLTS_DEFINE_ERROR(EmbeddingBackendError, backend);

#undef CLTS_DEFINE_ERROR

/// A row- or line-addressed parse failure (corpus rows, CSV rows, CoNLL-U lines).
class FormatError : public Error {
public:
    FormatError(std::size_t row, const std::string& reason)
        : Error(ErrorCategory::data,
                "row " + std::to_string(row) + ": " + reason),
          row_(row), reason_(reason) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t row_;
    std::string reason_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, const std::string& reason)
        : Error(ErrorCategory::data,
                "line " + std::to_string(line) + ": " + reason),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace clts
