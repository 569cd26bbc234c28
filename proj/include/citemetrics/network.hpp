#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citemetrics/indicators.hpp"

namespace citemetrics {

// Sparse journal x journal citation counts: entry (i, j) counts citations made
// by census-year papers of journal i to window-year items of journal j.
class JournalCitationMatrix {
public:
    struct Entry {
        std::uint32_t cited = 0;
        std::uint64_t count = 0;
    };

    JournalCitationMatrix() = default;
    JournalCitationMatrix(std::vector<std::string> journal_ids, std::vector<std::uint64_t> article_counts,
                          Year census_year, int window_years);

    // Row-major dense input; mainly for tests and small hand-built networks.
    static JournalCitationMatrix from_dense(std::vector<std::string> journal_ids,
                                            const std::vector<std::vector<std::uint64_t>>& counts,
                                            std::vector<std::uint64_t> article_counts, Year census_year = 0,
                                            int window_years = 2);

    // Accumulates; call before reading. Rows stay sorted by cited index.
    void add(std::size_t citing, std::size_t cited, std::uint64_t count = 1);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& journal_ids() const noexcept { return ids_; }
    const std::vector<std::uint64_t>& article_counts() const noexcept { return articles_; }
    Year census_year() const noexcept { return census_year_; }
    int window_years() const noexcept { return window_years_; }

    std::uint64_t count(std::size_t citing, std::size_t cited) const;
    std::span<const Entry> row(std::size_t citing) const { return rows_[citing]; }
    std::uint64_t row_sum(std::size_t citing) const;
    std::uint64_t col_sum(std::size_t cited) const;
    std::optional<std::size_t> index_of(std::string_view journal_id) const;

    // The same network with rows/columns reordered: new position k holds old journal order[k].
    JournalCitationMatrix permuted(const std::vector<std::size_t>& order) const;

    bool operator==(const JournalCitationMatrix&) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::uint64_t> articles_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::uint64_t> col_sums_;
    Year census_year_ = 0;
    int window_years_ = 2;
};

// Counts MatchedCitable, MatchedNonCitable and UnmatchedJournal citations;
// article_counts are citable items in the window.
JournalCitationMatrix build_matrix(const ResolvedCorpus& resolved, Year census_year, int window_years);

// Header row and column of journal ids, integer cells.
void write_matrix_csv(const JournalCitationMatrix& m, std::ostream& out);

struct RankingParams {
    double damping = 0.85;
    double tolerance = 1e-10;  // L1 distance between successive iterates
    int max_iterations = 10'000;
    double sjr_single_journal_cap = 0.10;
    double sjr_self_citation_cap = 0.33;

    void validate() const;
};

using ScoreMap = std::map<std::string, double>;

struct EigenfactorResult {
    ScoreMap scores;               // sums to 100
    std::vector<double> influence; // stationary vector, matrix order, sums to 1
    int iterations = 0;
};

// Throws NoCitations (no off-diagonal citation) or NonConvergence.
EigenfactorResult eigenfactor(const JournalCitationMatrix& m, const RankingParams& params = {});

struct ArticleInfluenceResult {
    ScoreMap scores;
    std::vector<std::string> excluded;  // journals with no articles
};

// Normalized so the article-weighted mean over included journals is 1.
ArticleInfluenceResult article_influence(const ScoreMap& ef_scores,
                                         const std::map<std::string, std::uint64_t>& article_counts);
ArticleInfluenceResult article_influence(const EigenfactorResult& ef, const JournalCitationMatrix& m);

struct SjrResult {
    ScoreMap scores;                // prestige per unit of document share; journals without documents omitted
    std::vector<double> prestige;   // fixed point, matrix order, sums to 1
    int iterations = 0;
};

// Requires a three-year matrix. Caps are applied once to the raw counts.
SjrResult sjr(const JournalCitationMatrix& m, const RankingParams& params = {});

// The capped (double-valued) matrix the SJR iteration runs on, row-major dense.
std::vector<std::vector<double>> sjr_capped_counts(const JournalCitationMatrix& m, const RankingParams& params);

// Raw impact per paper over the three-year window divided by the mean number
// of in-window indexed references made by the papers citing the journal.
// Throws ZeroDenominator (no citable items) or NoCitingPapers.
double snip(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year);
// All journals in registry order; undefined values are empty.
std::vector<std::optional<double>> snip_all(const ResolvedCorpus& resolved, Year census_year);

struct RankingRow {
    std::string journal_id;
    std::optional<double> eigenfactor;
    std::optional<double> article_influence;
    std::optional<double> sjr;
    std::optional<double> snip;
};

// Eigenfactor/AIS from the five-year matrix, SJR from the three-year matrix.
std::vector<RankingRow> ranking_report(const ResolvedCorpus& resolved, Year census_year,
                                       const RankingParams& params = {});
void write_ranking_csv(const std::vector<RankingRow>& rows, std::ostream& out, int decimals = 3);

}  // namespace citemetrics
