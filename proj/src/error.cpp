#include "citemetrics/error.hpp"

namespace citemetrics {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedRecord: return "MalformedRecord";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::DanglingReference: return "DanglingReference";
        case ErrorKind::VariantCollision: return "VariantCollision";
        case ErrorKind::EmptySelection: return "EmptySelection";
        case ErrorKind::UnknownJournal: return "UnknownJournal";
        case ErrorKind::EmptyWindow: return "EmptyWindow";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::NoCitations: return "NoCitations";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::ZeroArticles: return "ZeroArticles";
        case ErrorKind::NoCitingPapers: return "NoCitingPapers";
        case ErrorKind::InsufficientHistory: return "InsufficientHistory";
        case ErrorKind::EmptyCohort: return "EmptyCohort";
        case ErrorKind::EmptyDiscipline: return "EmptyDiscipline";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

std::string IngestIssue::describe() const {
    std::string out(to_string(kind));
    if (!file.empty()) {
        out += " [" + file;
        if (line > 0) out += ":" + std::to_string(line);
        out += "]";
    }
    out += " " + message;
    return out;
}

namespace {

std::string summarize(const std::vector<IngestIssue>& issues) {
    if (issues.empty()) return "ingest failed";
    std::string msg = std::to_string(issues.size()) + " issue(s); first: " + issues.front().describe();
    return msg;
}

ErrorKind first_kind(const std::vector<IngestIssue>& issues) {
    return issues.empty() ? ErrorKind::MalformedRecord : issues.front().kind;
}

}  // namespace

IngestError::IngestError(std::vector<IngestIssue> issues)
    : Error(first_kind(issues), summarize(issues)), issues_(std::move(issues)) {}

}  // namespace citemetrics
