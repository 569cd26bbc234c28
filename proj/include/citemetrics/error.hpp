#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace citemetrics {

enum class ErrorKind {
    MalformedRecord,
    DuplicateId,
    DanglingReference,
    VariantCollision,
    EmptySelection,
    UnknownJournal,
    EmptyWindow,
    ZeroDenominator,
    NoCitations,
    NonConvergence,
    ZeroArticles,
    NoCitingPapers,
    InsufficientHistory,
    EmptyCohort,
    EmptyDiscipline,
    DegenerateInput,
    InvalidSpec,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// One problem found while loading input files.
struct IngestIssue {
    ErrorKind kind;
    std::string file;
    std::size_t line = 0;  // 1-based; 0 when not tied to a line
    std::string message;

    std::string describe() const;
};

// Raised when a file set fails validation. Carries every issue found, not just
// the first, so a single run reports the whole problem list.
class IngestError : public Error {
public:
    explicit IngestError(std::vector<IngestIssue> issues);

    const std::vector<IngestIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<IngestIssue> issues_;
};

}  // namespace citemetrics
