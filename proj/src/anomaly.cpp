#include "citemetrics/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace citemetrics {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(AnomalyKind kind) {
    switch (kind) {
        case AnomalyKind::SelfCitationExcess: return "SelfCitationExcess";
        case AnomalyKind::IfbscpBias: return "IfbscpBias";
        case AnomalyKind::CitationStacking: return "CitationStacking";
    }
    return "SelfCitationExcess";
}

IfbscpParts ifbscp_parts(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year) {
    const JournalIndex j = resolved.require_journal(journal_id);
    IfbscpParts parts;
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& c = classes[r];
        if (c.journal != j || !c.has_target() || resolved.citing_year(r) != census_year) continue;
        const int age = census_year - c.cited_year;
        const bool self = resolved.citing_journal(r) == j;
        if (age >= 1 && age <= 2) {
            ++parts.total_recent;
            if (self) ++parts.self_recent;
        } else if (age >= 3 && age <= 7) {
            ++parts.total_prior;
            if (self) ++parts.self_prior;
        }
    }
    return parts;
}

std::optional<double> ifbscp(const IfbscpParts& p) {
    if (p.total_recent == 0 || p.total_prior == 0) return std::nullopt;
    if (p.self_recent == 0 && p.self_prior == 0) return std::nullopt;
    if (p.self_prior == 0) return kInf;
    const double recent = static_cast<double>(p.self_recent) / static_cast<double>(p.total_recent);
    const double prior = static_cast<double>(p.self_prior) / static_cast<double>(p.total_prior);
    return recent / prior;
}

double ifbscp_z(const IfbscpParts& p) {
    if (p.total_recent == 0 || p.total_prior == 0) return 0.0;
    const double n1 = static_cast<double>(p.total_recent);
    const double n2 = static_cast<double>(p.total_prior);
    const double p1 = static_cast<double>(p.self_recent) / n1;
    const double p2 = static_cast<double>(p.self_prior) / n2;
    const double pooled = static_cast<double>(p.self_recent + p.self_prior) / (n1 + n2);
    const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
    if (se == 0.0) return 0.0;
    return (p1 - p2) / se;
}

std::optional<double> ifbscp(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year) {
    return ifbscp(ifbscp_parts(resolved, journal_id, census_year));
}

namespace {

std::vector<IfbscpParts> ifbscp_parts_all(const ResolvedCorpus& resolved, Year census_year) {
    std::vector<IfbscpParts> all(resolved.corpus().journals().size());
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& c = classes[r];
        if (!c.has_target() || resolved.citing_year(r) != census_year) continue;
        auto& parts = all[c.journal];
        const int age = census_year - c.cited_year;
        const bool self = resolved.citing_journal(r) == c.journal;
        if (age >= 1 && age <= 2) {
            ++parts.total_recent;
            if (self) ++parts.self_recent;
        } else if (age >= 3 && age <= 7) {
            ++parts.total_prior;
            if (self) ++parts.self_prior;
        }
    }
    return all;
}

std::optional<AnomalyFlag> flag_from_parts(std::string_view journal_id, Year census_year, const IfbscpParts& parts,
                                           const DetectorThresholds& thresholds) {
    if (parts.total_recent < thresholds.min_citations || parts.total_prior < thresholds.min_citations) {
        return std::nullopt;
    }
    const auto ratio = ifbscp(parts);
    if (!ratio || !(*ratio > thresholds.ifbscp_threshold)) return std::nullopt;
    if (ifbscp_z(parts) < thresholds.ifbscp_min_z) return std::nullopt;
    return AnomalyFlag{std::string(journal_id), census_year, AnomalyKind::IfbscpBias, *ratio,
                       thresholds.ifbscp_threshold, std::nullopt};
}

}  // namespace

std::optional<AnomalyFlag> ifbscp_flag(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year,
                                       const DetectorThresholds& thresholds) {
    return flag_from_parts(journal_id, census_year, ifbscp_parts(resolved, journal_id, census_year), thresholds);
}

std::optional<AnomalyFlag> self_citation_flag(const CitationTally& tally, double jif_distortion_threshold,
                                              double rate_threshold) {
    const auto total = tally.total_cites();
    if (total == 0 || tally.self_citations == 0) return std::nullopt;
    const double rate = static_cast<double>(tally.self_citations) / static_cast<double>(total);
    const auto external = total - tally.self_citations;
    // jif / jif_no_self - 1 reduces to self / external (same denominator).
    const double distortion =
        external == 0 ? kInf : static_cast<double>(tally.self_citations) / static_cast<double>(external);
    if (external != 0 && !(rate > rate_threshold && distortion > jif_distortion_threshold)) return std::nullopt;
    return AnomalyFlag{tally.journal_id, tally.census_year, AnomalyKind::SelfCitationExcess, distortion,
                       jif_distortion_threshold, std::nullopt};
}

std::vector<AnomalyFlag> stacking_detector(const JournalCitationMatrix& matrix, double donor_share_threshold,
                                           std::uint64_t min_citations) {
    std::vector<AnomalyFlag> flags;
    const std::size_t n = matrix.size();
    for (std::size_t recipient = 0; recipient < n; ++recipient) {
        const auto incoming = matrix.col_sum(recipient);
        if (incoming == 0 || incoming < min_citations) continue;
        for (std::size_t donor = 0; donor < n; ++donor) {
            if (donor == recipient) continue;
            const auto c = matrix.count(donor, recipient);
            if (c == 0) continue;
            const double share = static_cast<double>(c) / static_cast<double>(incoming);
            if (share > donor_share_threshold) {
                flags.push_back(AnomalyFlag{matrix.journal_ids()[recipient], matrix.census_year(),
                                            AnomalyKind::CitationStacking, share, donor_share_threshold,
                                            matrix.journal_ids()[donor]});
            }
        }
    }
    return flags;
}

double editor_burst(double jif_a, double jif_b) {
    if (!(jif_a > 0.0)) throw Error(ErrorKind::ZeroDenominator, "baseline JIF is zero");
    return jif_b / jif_a;
}

double editor_burst(const ResolvedCorpus& resolved, std::string_view journal_id, Year year_a, Year year_b) {
    const double a = jif_wos_derived(tally(resolved, journal_id, year_a, 2));
    const double b = jif_wos_derived(tally(resolved, journal_id, year_b, 2));
    return editor_burst(a, b);
}

std::vector<AnomalyFlag> detect_all(const ResolvedCorpus& resolved, Year census_year,
                                    const DetectorThresholds& thresholds) {
    std::vector<AnomalyFlag> flags;
    const auto tallies = tally_all(resolved, census_year, 2);
    const auto parts = ifbscp_parts_all(resolved, census_year);
    for (std::size_t j = 0; j < tallies.size(); ++j) {
        const auto& t = tallies[j];
        if (auto f = self_citation_flag(t, thresholds.distortion_threshold, thresholds.rate_threshold)) {
            flags.push_back(std::move(*f));
        }
        if (auto f = flag_from_parts(t.journal_id, census_year, parts[j], thresholds)) flags.push_back(std::move(*f));
    }
    auto stacking = stacking_detector(build_matrix(resolved, census_year, 2), thresholds.donor_share_threshold,
                                      thresholds.min_citations);
    flags.insert(flags.end(), std::make_move_iterator(stacking.begin()), std::make_move_iterator(stacking.end()));
    std::stable_sort(flags.begin(), flags.end(), [](const AnomalyFlag& a, const AnomalyFlag& b) {
        if (a.journal_id != b.journal_id) return a.journal_id < b.journal_id;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return flags;
}

void write_flags_csv(const std::vector<AnomalyFlag>& flags, std::ostream& out) {
    out << "journal_id,census_year,kind,statistic,threshold,evidence\n";
    for (const auto& f : flags) {
        out << f.journal_id << ',' << f.census_year << ',' << to_string(f.kind) << ','
            << format_decimal(f.statistic, 6) << ',' << format_decimal(f.threshold, 6) << ','
            << f.evidence.value_or("") << '\n';
    }
}

}  // namespace citemetrics
