#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <json.hpp>

#include "citemetrics/corpus.hpp"

namespace citemetrics {

// Portable, seedable engine; boost's distributions give the same stream on
// every platform, unlike the <random> ones.
using Rng = boost::random::mt19937_64;

// Lifetime citations received by one paper.
struct CitationDistribution {
    enum class Family { LogNormal, NegBinomial, Fixed };
    Family family = Family::LogNormal;
    // LogNormal: Poisson counts around a lognormal rate exp(N(mu, sigma)).
    double mu = 1.0;
    double sigma = 1.0;
    // NegBinomial: gamma-Poisson mixture, mean r(1-p)/p.
    double r = 1.0;
    double p = 0.5;
    // Fixed: every paper receives exactly k.
    std::uint32_t k = 0;

    static CitationDistribution lognormal(double mu, double sigma);
    // Lognormal whose rate has the given mean.
    static CitationDistribution lognormal_mean(double mean, double sigma);
    static CitationDistribution negbinomial(double r, double p);
    static CitationDistribution fixed(std::uint32_t k);

    double mean() const;
};

// Draws one lifetime citation count; `scale` multiplies the rate.
std::uint32_t sample_citations(const CitationDistribution& dist, Rng& rng, double scale = 1.0);
std::vector<std::uint32_t> sample_citations(const CitationDistribution& dist, std::size_t n, Rng& rng);

// Weights over cited-item age in years (index 0 = same year). Presets:
// "default", "biomedical", "physics", "social_science", "psychology".
std::optional<std::vector<double>> age_profile_preset(std::string_view name);

struct JournalSpec {
    std::size_t count = 1;  // journals generated from this template
    std::optional<std::string> id;         // only with count == 1
    std::optional<std::string> id_prefix;  // ids become prefix + 1-based ordinal
    std::string discipline = "General";
    std::optional<std::string> specialty;
    std::size_t n_papers_per_year = 20;
    double citable_fraction = 0.76;
    double review_fraction = 0.1;  // share of citable items that are reviews
    CitationDistribution citation_distribution = CitationDistribution::lognormal_mean(5.0, 1.1);
    double noncitable_citation_factor = 0.2;  // rate multiplier for front matter
    double self_citation_rate = 0.12;
    double unmatched_fraction = 0.08;
    double external_refs_per_paper = 5.0;  // Unresolved references (books, reports)
    double citation_growth = 0.0;          // yearly growth of the citation rate
    std::vector<double> ref_age_profile = *age_profile_preset("default");
};

struct Injection {
    enum class Kind { SelfCitationBoost, CitationStacking };
    Kind kind = Kind::SelfCitationBoost;
    std::string target;
    std::optional<std::string> donor;  // CitationStacking only
    // SelfCitationBoost: multiplier on the target's JIF-window self-citation share.
    // CitationStacking: the donor's resulting share of the target's JIF-window citations.
    double magnitude = 2.0;
    std::vector<Year> years;  // census years; empty = last_year
};

struct ScenarioSpec {
    std::uint64_t seed = 1;
    Year first_year = 2008;
    Year last_year = 2016;
    std::optional<std::size_t> n_journals;  // must equal the sum of template counts when set
    std::vector<JournalSpec> journals;
    std::vector<Injection> injections;

    // Throws InvalidSpec.
    void validate() const;
};

// Throws InvalidSpec on unknown keys, wrong types or out-of-range values.
ScenarioSpec parse_scenario(const nlohmann::json& j);
ScenarioSpec load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);

// Same spec and seed give an identical corpus, record for record.
Corpus generate(const ScenarioSpec& spec);
void generate_to(const ScenarioSpec& spec, const std::filesystem::path& dir);

// Synthetic journal ids/names for the i-th generated journal.
std::string synthetic_code(std::size_t i);

}  // namespace citemetrics
