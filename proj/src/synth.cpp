#include "citemetrics/synth.hpp"

#include "citemetrics/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include <boost/random/discrete_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace citemetrics {

using nlohmann::json;

CitationDistribution CitationDistribution::lognormal(double mu, double sigma) {
    CitationDistribution d;
    d.family = Family::LogNormal;
    d.mu = mu;
    d.sigma = sigma;
    return d;
}

CitationDistribution CitationDistribution::lognormal_mean(double mean, double sigma) {
    if (!(mean > 0.0)) throw Error(ErrorKind::InvalidSpec, "lognormal mean must be positive");
    return lognormal(std::log(mean) - sigma * sigma / 2.0, sigma);
}

CitationDistribution CitationDistribution::negbinomial(double r, double p) {
    CitationDistribution d;
    d.family = Family::NegBinomial;
    d.r = r;
    d.p = p;
    return d;
}

CitationDistribution CitationDistribution::fixed(std::uint32_t k) {
    CitationDistribution d;
    d.family = Family::Fixed;
    d.k = k;
    return d;
}

double CitationDistribution::mean() const {
    switch (family) {
        case Family::LogNormal: return std::exp(mu + sigma * sigma / 2.0);
        case Family::NegBinomial: return r * (1.0 - p) / p;
        case Family::Fixed: return k;
    }
    return 0.0;
}

namespace {

std::uint32_t poisson(double rate, Rng& rng) {
    if (!(rate > 0.0)) return 0;
    boost::random::poisson_distribution<std::uint32_t, double> d(rate);
    return d(rng);
}

}  // namespace

std::uint32_t sample_citations(const CitationDistribution& dist, Rng& rng, double scale) {
    switch (dist.family) {
        case CitationDistribution::Family::LogNormal: {
            boost::random::normal_distribution<double> z(dist.mu, dist.sigma);
            return poisson(scale * std::exp(z(rng)), rng);
        }
        case CitationDistribution::Family::NegBinomial: {
            if (dist.p >= 1.0) return 0;
            boost::random::gamma_distribution<double> g(dist.r, (1.0 - dist.p) / dist.p);
            return poisson(scale * g(rng), rng);
        }
        case CitationDistribution::Family::Fixed:
            return static_cast<std::uint32_t>(std::lround(scale * dist.k));
    }
    return 0;
}

std::vector<std::uint32_t> sample_citations(const CitationDistribution& dist, std::size_t n, Rng& rng) {
    std::vector<std::uint32_t> out(n);
    for (auto& c : out) c = sample_citations(dist, rng);
    return out;
}

std::optional<std::vector<double>> age_profile_preset(std::string_view name) {
    // Ages 0..30. The discipline presets put their ages-1-2 mass and their
    // median age where the reference cohorts of each field put them.
    static const std::map<std::string_view, std::vector<double>> presets = {
        {"default", {0.05, 0.2, 0.25, 0.2, 0.12, 0.08, 0.05, 0.05}},
        {"biomedical", {0.0100, 0.0600, 0.0900, 0.0649, 0.0708, 0.0649, 0.0596, 0.0547, 0.0502, 0.0461, 0.0423,
                        0.0388, 0.0356, 0.0327, 0.0300, 0.0275, 0.0252, 0.0232, 0.0213, 0.0195, 0.0179, 0.0164,
                        0.0151, 0.0138, 0.0127, 0.0116, 0.0107, 0.0098, 0.0090, 0.0083, 0.0074}},
        {"physics", {0.0100, 0.0640, 0.0960, 0.0540, 0.0575, 0.0540, 0.0508, 0.0477, 0.0448, 0.0421, 0.0396,
                     0.0372, 0.0350, 0.0329, 0.0309, 0.0290, 0.0273, 0.0256, 0.0241, 0.0226, 0.0213, 0.0200,
                     0.0188, 0.0176, 0.0166, 0.0156, 0.0146, 0.0138, 0.0129, 0.0122, 0.0115}},
        {"social_science", {0.0050, 0.0320, 0.0480, 0.0362, 0.0367, 0.0372, 0.0377, 0.0372, 0.0367, 0.0362, 0.0357,
                            0.0352, 0.0348, 0.0343, 0.0338, 0.0334, 0.0329, 0.0325, 0.0320, 0.0316, 0.0312, 0.0308,
                            0.0303, 0.0299, 0.0295, 0.0291, 0.0287, 0.0283, 0.0280, 0.0276, 0.0275}},
        {"psychology", {0.0050, 0.0280, 0.0420, 0.0403, 0.0414, 0.0426, 0.0438, 0.0426, 0.0414, 0.0403, 0.0392,
                        0.0381, 0.0371, 0.0361, 0.0351, 0.0341, 0.0332, 0.0323, 0.0314, 0.0305, 0.0297, 0.0289,
                        0.0281, 0.0273, 0.0266, 0.0258, 0.0251, 0.0244, 0.0238, 0.0231, 0.0227}},
    };
    auto it = presets.find(name);
    if (it == presets.end()) return std::nullopt;
    return it->second;
}

std::string synthetic_code(std::size_t i) {
    static constexpr std::string_view consonants = "bdfgklmnprstvz";
    static constexpr std::string_view vowels = "aeiou";
    const std::size_t base = consonants.size() * vowels.size();
    std::string code;
    std::size_t digits = 0;
    do {
        const std::size_t d = i % base;
        code.insert(0, {consonants[d / vowels.size()], vowels[d % vowels.size()]});
        i /= base;
        ++digits;
    } while (i > 0 || digits < 2);
    code[0] = static_cast<char>(code[0] - 'a' + 'A');
    return code;
}

// ---------------------------------------------------------------- validation

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); }

void check_fraction(double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0)) invalid(what + " must lie in [0,1]");
}

std::vector<std::string> journal_ids(const ScenarioSpec& spec) {
    std::vector<std::string> ids;
    std::size_t global = 0;
    for (const auto& t : spec.journals) {
        for (std::size_t k = 0; k < t.count; ++k, ++global) {
            if (t.id && t.count == 1) {
                ids.push_back(*t.id);
            } else if (t.id_prefix) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%04zu", k + 1);
                ids.push_back(*t.id_prefix + buf);
            } else {
                ids.push_back("J" + std::to_string(global));
            }
        }
    }
    return ids;
}

}  // namespace

void ScenarioSpec::validate() const {
    if (first_year > last_year) invalid("first_year is after last_year");
    if (first_year < 1800 || last_year > 2100) invalid("years must lie in [1800, 2100]");
    if (journals.empty()) invalid("scenario has no journals");
    std::size_t total = 0;
    for (std::size_t i = 0; i < journals.size(); ++i) {
        const auto& t = journals[i];
        const std::string where = "journals[" + std::to_string(i) + "]: ";
        if (t.count == 0) invalid(where + "count must be positive");
        if (t.id && t.count != 1) invalid(where + "id requires count 1");
        if (t.id && t.id->empty()) invalid(where + "id is empty");
        if (t.n_papers_per_year == 0) invalid(where + "n_papers_per_year must be positive");
        if (t.discipline.empty()) invalid(where + "discipline is empty");
        check_fraction(t.citable_fraction, where + "citable_fraction");
        check_fraction(t.review_fraction, where + "review_fraction");
        check_fraction(t.self_citation_rate, where + "self_citation_rate");
        check_fraction(t.unmatched_fraction, where + "unmatched_fraction");
        if (!(t.noncitable_citation_factor >= 0.0)) invalid(where + "noncitable_citation_factor must be >= 0");
        if (!(t.external_refs_per_paper >= 0.0)) invalid(where + "external_refs_per_paper must be >= 0");
        if (!(t.citation_growth > -1.0)) invalid(where + "citation_growth must be > -1");
        const auto& d = t.citation_distribution;
        switch (d.family) {
            case CitationDistribution::Family::LogNormal:
                if (!std::isfinite(d.mu) || !(d.sigma >= 0.0) || !std::isfinite(d.sigma)) {
                    invalid(where + "lognormal needs finite mu and sigma >= 0");
                }
                break;
            case CitationDistribution::Family::NegBinomial:
                if (!(d.r > 0.0) || !(d.p > 0.0 && d.p <= 1.0)) invalid(where + "negbinomial needs r > 0, p in (0,1]");
                break;
            case CitationDistribution::Family::Fixed: break;
        }
        if (t.ref_age_profile.empty()) invalid(where + "ref_age_profile is empty");
        double sum = 0.0;
        for (double w : t.ref_age_profile) {
            if (!(w >= 0.0) || !std::isfinite(w)) invalid(where + "ref_age_profile weights must be finite and >= 0");
            sum += w;
        }
        if (!(sum > 0.0)) invalid(where + "ref_age_profile has zero total weight");
        total += t.count;
    }
    if (n_journals && *n_journals != total) {
        invalid("n_journals is " + std::to_string(*n_journals) + " but the templates define " + std::to_string(total));
    }
    const auto ids = journal_ids(*this);
    const std::set<std::string> unique(ids.begin(), ids.end());
    if (unique.size() != ids.size()) invalid("journal ids are not unique");
    for (std::size_t i = 0; i < injections.size(); ++i) {
        const auto& inj = injections[i];
        const std::string where = "injections[" + std::to_string(i) + "]: ";
        if (!unique.count(inj.target)) invalid(where + "unknown target '" + inj.target + "'");
        if (!(inj.magnitude > 0.0) || !std::isfinite(inj.magnitude)) invalid(where + "magnitude must be positive");
        if (inj.kind == Injection::Kind::CitationStacking) {
            if (!inj.donor) invalid(where + "citation_stacking needs a donor");
            if (!unique.count(*inj.donor)) invalid(where + "unknown donor '" + *inj.donor + "'");
            if (*inj.donor == inj.target) invalid(where + "donor and target are the same journal");
            if (!(inj.magnitude < 1.0)) invalid(where + "citation_stacking magnitude is a share and must be < 1");
        } else if (inj.donor) {
            invalid(where + "donor only applies to citation_stacking");
        }
        for (Year y : inj.years) {
            if (y - 2 < first_year || y > last_year) {
                invalid(where + "year " + std::to_string(y) + " has no two-year window inside the scenario");
            }
        }
        if (inj.years.empty() && last_year - 2 < first_year) invalid(where + "scenario too short for a two-year window");
    }
}

// ---------------------------------------------------------------- JSON

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) invalid(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            invalid(where + ": unknown key '" + key + "'");
        }
    }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        invalid(where + ": '" + key + "' is missing or has the wrong type");
    }
}

template <class T>
void get_opt(const json& obj, const char* key, T& out, const std::string& where) {
    if (obj.contains(key)) out = get<T>(obj, key, where);
}

CitationDistribution parse_distribution(const json& j, const std::string& where) {
    check_keys(j, {"family", "mu", "sigma", "mean", "r", "p", "k"}, where);
    const auto family = get<std::string>(j, "family", where);
    if (family == "lognormal") {
        const double sigma = get<double>(j, "sigma", where);
        if (j.contains("mean")) {
            if (j.contains("mu")) invalid(where + ": give either mu or mean");
            const double mean = get<double>(j, "mean", where);
            if (!(mean > 0.0)) invalid(where + ": mean must be positive");
            return CitationDistribution::lognormal_mean(mean, sigma);
        }
        return CitationDistribution::lognormal(get<double>(j, "mu", where), sigma);
    }
    if (family == "negbinomial") return CitationDistribution::negbinomial(get<double>(j, "r", where), get<double>(j, "p", where));
    if (family == "fixed") {
        const auto k = get<std::int64_t>(j, "k", where);
        if (k < 0) invalid(where + ": k must be >= 0");
        return CitationDistribution::fixed(static_cast<std::uint32_t>(k));
    }
    invalid(where + ": unknown family '" + family + "'");
}

JournalSpec parse_journal(const json& j, const std::string& where) {
    check_keys(j,
               {"count", "id", "id_prefix", "discipline", "specialty", "n_papers_per_year", "citable_fraction",
                "review_fraction", "citation_distribution", "noncitable_citation_factor", "self_citation_rate",
                "unmatched_fraction", "external_refs_per_paper", "citation_growth", "ref_age_profile"},
               where);
    JournalSpec t;
    if (j.contains("count")) {
        const auto c = get<std::int64_t>(j, "count", where);
        if (c <= 0) invalid(where + ": count must be positive");
        t.count = static_cast<std::size_t>(c);
    }
    if (j.contains("id")) t.id = get<std::string>(j, "id", where);
    if (j.contains("id_prefix")) t.id_prefix = get<std::string>(j, "id_prefix", where);
    get_opt(j, "discipline", t.discipline, where);
    if (j.contains("specialty")) t.specialty = get<std::string>(j, "specialty", where);
    if (j.contains("n_papers_per_year")) {
        const auto n = get<std::int64_t>(j, "n_papers_per_year", where);
        if (n <= 0) invalid(where + ": n_papers_per_year must be positive");
        t.n_papers_per_year = static_cast<std::size_t>(n);
    }
    get_opt(j, "citable_fraction", t.citable_fraction, where);
    get_opt(j, "review_fraction", t.review_fraction, where);
    if (j.contains("citation_distribution")) {
        t.citation_distribution = parse_distribution(j["citation_distribution"], where + ".citation_distribution");
    }
    get_opt(j, "noncitable_citation_factor", t.noncitable_citation_factor, where);
    get_opt(j, "self_citation_rate", t.self_citation_rate, where);
    get_opt(j, "unmatched_fraction", t.unmatched_fraction, where);
    get_opt(j, "external_refs_per_paper", t.external_refs_per_paper, where);
    get_opt(j, "citation_growth", t.citation_growth, where);
    if (j.contains("ref_age_profile")) {
        const auto& p = j["ref_age_profile"];
        if (p.is_string()) {
            auto preset = age_profile_preset(p.get<std::string>());
            if (!preset) invalid(where + ": unknown ref_age_profile preset '" + p.get<std::string>() + "'");
            t.ref_age_profile = std::move(*preset);
        } else {
            t.ref_age_profile = get<std::vector<double>>(j, "ref_age_profile", where);
        }
    }
    return t;
}

Injection parse_injection(const json& j, const std::string& where) {
    check_keys(j, {"kind", "target", "donor", "magnitude", "years"}, where);
    Injection inj;
    const auto kind = get<std::string>(j, "kind", where);
    if (kind == "self_citation_boost") {
        inj.kind = Injection::Kind::SelfCitationBoost;
    } else if (kind == "citation_stacking") {
        inj.kind = Injection::Kind::CitationStacking;
    } else {
        invalid(where + ": unknown kind '" + kind + "'");
    }
    inj.target = get<std::string>(j, "target", where);
    if (j.contains("donor")) inj.donor = get<std::string>(j, "donor", where);
    get_opt(j, "magnitude", inj.magnitude, where);
    get_opt(j, "years", inj.years, where);
    return inj;
}

json distribution_to_json(const CitationDistribution& d) {
    switch (d.family) {
        case CitationDistribution::Family::LogNormal: return {{"family", "lognormal"}, {"mu", d.mu}, {"sigma", d.sigma}};
        case CitationDistribution::Family::NegBinomial: return {{"family", "negbinomial"}, {"r", d.r}, {"p", d.p}};
        case CitationDistribution::Family::Fixed: return {{"family", "fixed"}, {"k", d.k}};
    }
    return {};
}

}  // namespace

ScenarioSpec parse_scenario(const json& j) {
    check_keys(j, {"seed", "first_year", "last_year", "n_journals", "journals", "injections"}, "scenario");
    ScenarioSpec spec;
    get_opt(j, "seed", spec.seed, "scenario");
    get_opt(j, "first_year", spec.first_year, "scenario");
    get_opt(j, "last_year", spec.last_year, "scenario");
    if (j.contains("n_journals")) {
        const auto n = get<std::int64_t>(j, "n_journals", "scenario");
        if (n <= 0) invalid("scenario: n_journals must be positive");
        spec.n_journals = static_cast<std::size_t>(n);
    }
    if (!j.contains("journals") || !j["journals"].is_array()) invalid("scenario: 'journals' must be an array");
    for (std::size_t i = 0; i < j["journals"].size(); ++i) {
        spec.journals.push_back(parse_journal(j["journals"][i], "journals[" + std::to_string(i) + "]"));
    }
    if (j.contains("injections")) {
        if (!j["injections"].is_array()) invalid("scenario: 'injections' must be an array");
        for (std::size_t i = 0; i < j["injections"].size(); ++i) {
            spec.injections.push_back(parse_injection(j["injections"][i], "injections[" + std::to_string(i) + "]"));
        }
    }
    spec.validate();
    return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open scenario file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        invalid(path.string() + ": " + e.what());
    }
    return parse_scenario(j);
}

json scenario_to_json(const ScenarioSpec& spec) {
    json j;
    j["seed"] = spec.seed;
    j["first_year"] = spec.first_year;
    j["last_year"] = spec.last_year;
    if (spec.n_journals) j["n_journals"] = *spec.n_journals;
    j["journals"] = json::array();
    for (const auto& t : spec.journals) {
        json o;
        o["count"] = t.count;
        if (t.id) o["id"] = *t.id;
        if (t.id_prefix) o["id_prefix"] = *t.id_prefix;
        o["discipline"] = t.discipline;
        if (t.specialty) o["specialty"] = *t.specialty;
        o["n_papers_per_year"] = t.n_papers_per_year;
        o["citable_fraction"] = t.citable_fraction;
        o["review_fraction"] = t.review_fraction;
        o["citation_distribution"] = distribution_to_json(t.citation_distribution);
        o["noncitable_citation_factor"] = t.noncitable_citation_factor;
        o["self_citation_rate"] = t.self_citation_rate;
        o["unmatched_fraction"] = t.unmatched_fraction;
        o["external_refs_per_paper"] = t.external_refs_per_paper;
        o["citation_growth"] = t.citation_growth;
        o["ref_age_profile"] = t.ref_age_profile;
        j["journals"].push_back(std::move(o));
    }
    j["injections"] = json::array();
    for (const auto& inj : spec.injections) {
        json o;
        o["kind"] = inj.kind == Injection::Kind::SelfCitationBoost ? "self_citation_boost" : "citation_stacking";
        o["target"] = inj.target;
        if (inj.donor) o["donor"] = *inj.donor;
        o["magnitude"] = inj.magnitude;
        o["years"] = inj.years;
        j["injections"].push_back(std::move(o));
    }
    return j;
}

// ---------------------------------------------------------------- generation

namespace {

constexpr std::string_view kForms[] = {"Journal of %", "% Letters", "Annals of %", "% Review",
                                       "International Journal of %", "Acta %"};
constexpr std::string_view kTopics[] = {
    "Molecular Biology", "Physics",      "Chemical Research",     "Medicine",         "Psychology",
    "Economics",         "Mathematics",  "Engineering",           "Astronomy",        "Development",
    "Experimental Medicine", "Biochemistry", "Technology",        "Social Research",  "General Science",
    "Applied Physics",   "Cell Biology", "Chemical Engineering",  "Clinical Medicine", "Earth Science"};

// Reverse of the shipped abbreviation table for the words used above.
const std::map<std::string_view, std::string_view>& abbreviations() {
    static const std::map<std::string_view, std::string_view> m = {
        {"Journal", "J."},         {"International", "Int."}, {"Review", "Rev."},      {"Letters", "Lett."},
        {"Annals", "Ann."},        {"Molecular", "Mol."},     {"Biology", "Biol."},    {"Physics", "Phys."},
        {"Chemical", "Chem."},     {"Research", "Res."},      {"Medicine", "Med."},    {"Psychology", "Psychol."},
        {"Economics", "Econ."},    {"Mathematics", "Math."},  {"Engineering", "Eng."}, {"Astronomy", "Astron."},
        {"Development", "Dev."},   {"Experimental", "Exp."},  {"Biochemistry", "Biochem."},
        {"Technology", "Technol."}, {"Science", "Sci."},      {"General", "Gen."}};
    return m;
}

std::string journal_name(std::size_t i) {
    const std::size_t nf = std::size(kForms);
    std::string form(kForms[i % nf]);
    const std::string topic(kTopics[(i / nf) % std::size(kTopics)]);
    form.replace(form.find('%'), 1, topic);
    return form + " " + synthetic_code(i);
}

std::string abbreviated(const std::string& name) {
    std::string out;
    std::size_t pos = 0;
    while (pos < name.size()) {
        std::size_t end = name.find(' ', pos);
        if (end == std::string::npos) end = name.size();
        const std::string_view word(name.data() + pos, end - pos);
        pos = end + 1;
        if (word == "of") continue;
        auto it = abbreviations().find(word);
        if (!out.empty()) out += ' ';
        out += it == abbreviations().end() ? word : it->second;
    }
    return out;
}

struct GenJournal {
    std::string id;
    std::string name;
    std::string variant;
    const JournalSpec* spec = nullptr;
    PaperIndex first_paper = 0;  // papers are laid out year by year
};

enum class RefKind : std::uint8_t { Matched, Unmatched, External };

struct GenRef {
    PaperIndex citing = 0;
    RefKind kind = RefKind::Matched;
    PaperIndex cited = kNoPaper;
    JournalIndex journal = kNoJournal;
    Year year = 0;
};

class Generator {
public:
    explicit Generator(const ScenarioSpec& spec) : spec_(spec), rng_(spec.seed) {}

    Corpus run() {
        lay_out_journals();
        draw_papers();
        draw_citations();
        draw_external();
        for (const auto& inj : spec_.injections) inject(inj);
        return build();
    }

private:
    std::size_t years() const { return static_cast<std::size_t>(spec_.last_year - spec_.first_year + 1); }
    std::size_t per_year(JournalIndex j) const { return journals_[j].spec->n_papers_per_year; }

    PaperIndex paper_at(JournalIndex j, Year y, std::size_t n) const {
        return journals_[j].first_paper +
               static_cast<PaperIndex>(static_cast<std::size_t>(y - spec_.first_year) * per_year(j) + n);
    }

    PaperIndex random_paper(JournalIndex j, Year y) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, per_year(j) - 1);
        return paper_at(j, y, pick(rng_));
    }

    void lay_out_journals() {
        const auto ids = journal_ids(spec_);
        std::size_t g = 0;
        PaperIndex next = 0;
        for (const auto& t : spec_.journals) {
            for (std::size_t k = 0; k < t.count; ++k, ++g) {
                GenJournal j;
                j.id = ids[g];
                j.name = journal_name(g);
                j.variant = abbreviated(j.name);
                j.spec = &t;
                j.first_paper = next;
                next += static_cast<PaperIndex>(years() * t.n_papers_per_year);
                journals_.push_back(std::move(j));
            }
        }
        journal_of_.reserve(next);
        age_dists_.reserve(journals_.size());
        for (JournalIndex j = 0; j < journals_.size(); ++j) {
            const auto& w = journals_[j].spec->ref_age_profile;
            age_dists_.emplace_back(w.begin(), w.end());
        }
    }

    void draw_papers() {
        boost::random::uniform_01<double> u;
        static constexpr DocumentType front[] = {DocumentType::Editorial, DocumentType::Letter, DocumentType::NewsItem};
        for (JournalIndex j = 0; j < journals_.size(); ++j) {
            const auto& t = *journals_[j].spec;
            for (Year y = spec_.first_year; y <= spec_.last_year; ++y) {
                for (std::size_t n = 0; n < t.n_papers_per_year; ++n) {
                    DocumentType type;
                    if (u(rng_) < t.citable_fraction) {
                        type = u(rng_) < t.review_fraction ? DocumentType::Review : DocumentType::Article;
                    } else {
                        boost::random::uniform_int_distribution<int> pick(0, 2);
                        type = front[pick(rng_)];
                    }
                    types_.push_back(type);
                    years_.push_back(y);
                    journal_of_.push_back(j);
                }
            }
        }
    }

    JournalIndex citing_journal(JournalIndex cited) {
        boost::random::uniform_01<double> u;
        const auto n = static_cast<JournalIndex>(journals_.size());
        if (n == 1 || u(rng_) < journals_[cited].spec->self_citation_rate) return cited;
        boost::random::uniform_int_distribution<JournalIndex> pick(0, n - 2);
        const JournalIndex k = pick(rng_);
        return k >= cited ? k + 1 : k;
    }

    void draw_citations() {
        boost::random::uniform_01<double> u;
        for (PaperIndex p = 0; p < types_.size(); ++p) {
            const JournalIndex j = journal_of_[p];
            const auto& t = *journals_[j].spec;
            double scale = std::pow(1.0 + t.citation_growth, years_[p] - spec_.first_year);
            if (!citable(types_[p])) scale *= t.noncitable_citation_factor;
            const std::uint32_t c = sample_citations(t.citation_distribution, rng_, scale);
            for (std::uint32_t i = 0; i < c; ++i) {
                const Year y = years_[p] + static_cast<Year>(age_dists_[j](rng_));
                if (y > spec_.last_year) continue;  // not yet published
                const JournalIndex cj = citing_journal(j);
                GenRef r;
                r.citing = random_paper(cj, y);
                r.journal = j;
                r.year = years_[p];
                if (u(rng_) < t.unmatched_fraction) {
                    r.kind = RefKind::Unmatched;
                } else {
                    r.kind = RefKind::Matched;
                    r.cited = p;
                }
                refs_.push_back(r);
            }
        }
    }

    void draw_external() {
        for (PaperIndex p = 0; p < types_.size(); ++p) {
            const JournalIndex j = journal_of_[p];
            const auto& t = *journals_[j].spec;
            const std::uint32_t n = poisson(t.external_refs_per_paper, rng_);
            for (std::uint32_t i = 0; i < n; ++i) {
                GenRef r;
                r.citing = p;
                r.kind = RefKind::External;
                r.year = years_[p] - static_cast<Year>(age_dists_[j](rng_));
                refs_.push_back(r);
            }
        }
    }

    // Counts census-year references into the target's two-year window.
    // Returns {total, from `source`}.
    std::pair<std::uint64_t, std::uint64_t> window_counts(JournalIndex target, JournalIndex source, Year census) const {
        std::uint64_t total = 0;
        std::uint64_t from = 0;
        for (const auto& r : refs_) {
            if (r.kind == RefKind::External || r.journal != target) continue;
            if (years_[r.citing] != census || r.year < census - 2 || r.year > census - 1) continue;
            ++total;
            if (journal_of_[r.citing] == source) ++from;
        }
        return {total, from};
    }

    void add_window_refs(JournalIndex from, JournalIndex to, Year census, std::uint64_t count) {
        std::vector<PaperIndex> targets;
        for (Year y = census - 2; y <= census - 1; ++y) {
            for (std::size_t n = 0; n < per_year(to); ++n) {
                const PaperIndex p = paper_at(to, y, n);
                if (citable(types_[p])) targets.push_back(p);
            }
        }
        if (targets.empty()) invalid("journal '" + journals_[to].id + "' has no citable items to inject into");
        boost::random::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
        for (std::uint64_t i = 0; i < count; ++i) {
            GenRef r;
            r.citing = random_paper(from, census);
            r.kind = RefKind::Matched;
            r.cited = targets[pick(rng_)];
            r.journal = to;
            r.year = years_[r.cited];
            refs_.push_back(r);
        }
    }

    JournalIndex index_of(const std::string& id) const {
        for (JournalIndex j = 0; j < journals_.size(); ++j) {
            if (journals_[j].id == id) return j;
        }
        invalid("unknown journal '" + id + "'");
    }

    void inject(const Injection& inj) {
        const JournalIndex target = index_of(inj.target);
        std::vector<Year> years = inj.years;
        if (years.empty()) years.push_back(spec_.last_year);
        const double m = inj.magnitude;
        for (Year census : years) {
            if (inj.kind == Injection::Kind::SelfCitationBoost) {
                // (S + a) / (T + a) = m * S / T  =>  a = S (m - 1) / (1 - m S / T)
                const auto [total, self] = window_counts(target, target, census);
                if (total == 0 || self == 0) continue;
                const double share = static_cast<double>(self) / static_cast<double>(total);
                if (!(m * share < 1.0)) invalid("self_citation_boost of " + inj.target + " would exceed a share of 1");
                const double a = static_cast<double>(self) * (m - 1.0) / (1.0 - m * share);
                if (a > 0.0) add_window_refs(target, target, census, static_cast<std::uint64_t>(std::ceil(a - 1e-9)));
            } else {
                // (D + a) / (I + a) = m  =>  a = (m I - D) / (1 - m)
                const JournalIndex donor = index_of(*inj.donor);
                const auto [incoming, given] = window_counts(target, donor, census);
                const double a = (m * static_cast<double>(incoming) - static_cast<double>(given)) / (1.0 - m);
                if (a > 0.0) add_window_refs(donor, target, census, static_cast<std::uint64_t>(std::ceil(a + 1e-9)));
            }
        }
    }

    std::string paper_id(PaperIndex p) const {
        const auto& j = journals_[journal_of_[p]];
        const std::size_t n = p - j.first_paper - static_cast<std::size_t>(years_[p] - spec_.first_year) * j.spec->n_papers_per_year;
        char buf[48];
        std::snprintf(buf, sizeof buf, "-%d-%04zu", years_[p], n + 1);
        return j.id + buf;
    }

    Corpus build() {
        CorpusBuilder b;
        for (const auto& j : journals_) {
            JournalEntry e;
            e.journal_id = j.id;
            e.canonical_name = j.name;
            if (j.variant != j.name) e.name_variants.push_back(j.variant);
            e.discipline = j.spec->discipline;
            e.specialty = j.spec->specialty;
            b.add_journal(std::move(e));
        }
        std::vector<std::string> ids(types_.size());
        for (PaperIndex p = 0; p < types_.size(); ++p) {
            ids[p] = paper_id(p);
            b.add_paper(PaperRecord{ids[p], journals_[journal_of_[p]].id, years_[p], types_[p]});
        }
        std::stable_sort(refs_.begin(), refs_.end(),
                         [](const GenRef& a, const GenRef& b) { return a.citing < b.citing; });
        b.reserve(types_.size(), refs_.size());
        std::size_t ordinal = 0;
        for (const auto& r : refs_) {
            RawReference ref;
            ref.citing_paper_id = ids[r.citing];
            char tail[48];
            switch (r.kind) {
                case RefKind::Matched: {
                    const auto& j = journals_[r.journal];
                    std::snprintf(tail, sizeof tail, " %d %d %zu", r.year, r.year - 1900,
                                  1 + (static_cast<std::size_t>(r.cited) * 37) % 997);
                    ref.raw_cited_string = (ordinal % 2 ? j.variant : j.name) + tail;
                    ref.cited_paper_id = ids[r.cited];
                    ref.cited_journal_id = j.id;
                    ref.cited_year = r.year;
                    break;
                }
                case RefKind::Unmatched: {
                    const auto& j = journals_[r.journal];
                    std::snprintf(tail, sizeof tail, ", %d, V%d", r.year, r.year - 1900);
                    ref.raw_cited_string = (ordinal % 2 ? j.name : j.variant) + tail;
                    if (ordinal % 3 != 0) ref.cited_year = r.year;
                    break;
                }
                case RefKind::External: {
                    std::snprintf(tail, sizeof tail, " Press, %d", r.year);
                    ref.raw_cited_string = "Monograph " + synthetic_code(ordinal % 4900) + tail;
                    ref.cited_year = r.year;
                    break;
                }
            }
            b.add_reference(std::move(ref));
            ++ordinal;
        }
        return std::move(b).finalize();
    }

    const ScenarioSpec& spec_;
    Rng rng_;
    std::vector<GenJournal> journals_;
    std::vector<boost::random::discrete_distribution<int, double>> age_dists_;
    std::vector<DocumentType> types_;
    std::vector<Year> years_;
    std::vector<JournalIndex> journal_of_;
    std::vector<GenRef> refs_;
};

}  // namespace

Corpus generate(const ScenarioSpec& spec) {
    spec.validate();
    return Generator(spec).run();
}

void generate_to(const ScenarioSpec& spec, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    export_corpus(generate(spec), dir);
}

}  // namespace citemetrics
