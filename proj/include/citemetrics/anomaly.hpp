#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citemetrics/network.hpp"

namespace citemetrics {

// Statistical flags only: a flag says a pattern is unusual, not why.
enum class AnomalyKind { SelfCitationExcess, IfbscpBias, CitationStacking };

std::string_view to_string(AnomalyKind kind);

struct AnomalyFlag {
    std::string journal_id;
    Year census_year = 0;
    AnomalyKind kind = AnomalyKind::SelfCitationExcess;
    double statistic = 0.0;  // +inf when the comparison base is zero
    double threshold = 0.0;
    std::optional<std::string> evidence;  // donor journal for stacking
};

struct DetectorThresholds {
    double rate_threshold = 0.20;
    double distortion_threshold = 0.25;
    double donor_share_threshold = 0.25;
    std::uint64_t min_citations = 50;
    double ifbscp_threshold = 1.5;
    // Minimum two-proportion z score of the recent vs prior self-citation share.
    double ifbscp_min_z = 4.0;
};

// Self-citation counts of census-year citations, split by the age of the
// cited items: the JIF window (1-2 years back) and the five years before it.
struct IfbscpParts {
    std::uint64_t self_recent = 0;
    std::uint64_t total_recent = 0;
    std::uint64_t self_prior = 0;
    std::uint64_t total_prior = 0;
};

IfbscpParts ifbscp_parts(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year);

// Ratio of the recent self-citation share to the prior one. Empty when either
// window has no citations or neither has self-citations; +inf when only the
// recent window has them.
std::optional<double> ifbscp(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year);
std::optional<double> ifbscp(const IfbscpParts& parts);

// Pooled two-proportion z score of the recent self share over the prior one.
double ifbscp_z(const IfbscpParts& parts);

// Requires min_citations in both windows, a ratio above ifbscp_threshold and a
// share difference of at least ifbscp_min_z standard errors.
std::optional<AnomalyFlag> ifbscp_flag(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year,
                                       const DetectorThresholds& thresholds = {});

// JIF distortion from self-citation: (jif - jif_no_self) / jif_no_self.
// Flags when both the self-citation rate and the distortion exceed their thresholds.
std::optional<AnomalyFlag> self_citation_flag(const CitationTally& tally, double jif_distortion_threshold = 0.25,
                                              double rate_threshold = 0.20);

// One flag per (recipient, donor) pair where a single other journal supplies
// more than donor_share_threshold of the recipient's incoming citations.
std::vector<AnomalyFlag> stacking_detector(const JournalCitationMatrix& matrix, double donor_share_threshold = 0.25,
                                           std::uint64_t min_citations = 50);

// Year-over-year two-year JIF ratio jif(year_b) / jif(year_a).
double editor_burst(const ResolvedCorpus& resolved, std::string_view journal_id, Year year_a, Year year_b);
double editor_burst(double jif_a, double jif_b);

// Every detector over every journal for one census year (two-year window).
std::vector<AnomalyFlag> detect_all(const ResolvedCorpus& resolved, Year census_year,
                                    const DetectorThresholds& thresholds = {});

void write_flags_csv(const std::vector<AnomalyFlag>& flags, std::ostream& out);

}  // namespace citemetrics
