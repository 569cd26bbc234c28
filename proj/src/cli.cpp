#include "citemetrics/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "citemetrics/anomaly.hpp"
#include "citemetrics/distributions.hpp"
#include "citemetrics/fixtures.hpp"
#include "citemetrics/indicators.hpp"
#include "citemetrics/network.hpp"
#include "citemetrics/plot.hpp"
#include "citemetrics/synth.hpp"

namespace citemetrics {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string command;
    fs::path in;
    fs::path out;
    std::optional<Year> year;
    int window = 2;
    std::string format = "csv";
    int decimals = 3;
    bool plot = false;
    std::optional<std::uint64_t> seed;
    fs::path scenario;
    fs::path thresholds;
    fs::path abbrev;
    std::string fixture;
    std::string journal;
    std::string discipline;
    int horizon = 20;
    std::vector<Year> years;
    std::vector<fs::path> reports;
    std::vector<double> above{10.0};
    RankingParams ranking;
};

constexpr std::size_t kMaxAmbiguityWarnings = 20;

struct Loaded {
    ResolvedCorpus resolved;
    Year census = 0;
};

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    const fs::path path = cfg.out / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
    return f;
}

void ensure_out(const RunConfig& cfg) {
    if (cfg.out.empty()) throw Error(ErrorKind::InvalidArgument, "--out is required");
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec || !fs::is_directory(cfg.out)) throw Error(ErrorKind::Io, "cannot create output directory " + cfg.out.string());
}

void write_plot(const RunConfig& cfg, const std::string& name, const std::string& svg, std::ostream& err) {
    if (!cfg.plot) return;
    try {
        write_svg(cfg.out / name, svg);
    } catch (const std::exception& e) {
        err << "warning: plot not written: " << e.what() << '\n';
    }
}

Loaded load(const RunConfig& cfg, std::ostream& err) {
    if (cfg.in.empty()) throw Error(ErrorKind::InvalidArgument, "--in is required");
    const NameNormalizer names = cfg.abbrev.empty() ? NameNormalizer::defaults() : NameNormalizer::from_file(cfg.abbrev);
    std::vector<IngestWarning> warnings;
    auto corpus = std::make_shared<const Corpus>(ingest(CorpusFiles::in_directory(cfg.in), &warnings, names));
    for (const auto& w : warnings) err << "warning: " << w.file << ':' << w.line << ": " << w.message << '\n';
    Loaded l{resolve(corpus, names), 0};
    const auto& amb = l.resolved.ambiguous_references();
    for (std::size_t i = 0; i < amb.size() && i < kMaxAmbiguityWarnings; ++i) {
        err << "warning: ambiguous journal name in reference " << amb[i] + 1 << ": \""
            << corpus->references()[amb[i]].raw_cited_string << "\"\n";
    }
    if (amb.size() > kMaxAmbiguityWarnings) {
        err << "warning: " << amb.size() - kMaxAmbiguityWarnings << " more ambiguous references\n";
    }
    if (corpus->papers().empty()) throw Error(ErrorKind::EmptySelection, "corpus has no papers");
    l.census = cfg.year.value_or(corpus->year_range().max_year);
    return l;
}

ordered_json number_or_null(const std::optional<double>& v, int decimals) {
    if (!v) return nullptr;
    return ordered_json::parse(format_decimal(*v, decimals));
}

DetectorThresholds load_thresholds(const fs::path& path) {
    DetectorThresholds t;
    if (path.empty()) return t;
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open thresholds file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidSpec, path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::InvalidSpec, path.string() + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw Error(ErrorKind::InvalidSpec, path.string() + ": '" + key + "' must be a number");
        const double v = value.get<double>();
        if (!(v >= 0.0)) throw Error(ErrorKind::InvalidSpec, path.string() + ": '" + key + "' must be >= 0");
        if (key == "rate_threshold") {
            t.rate_threshold = v;
        } else if (key == "distortion_threshold") {
            t.distortion_threshold = v;
        } else if (key == "donor_share_threshold") {
            t.donor_share_threshold = v;
        } else if (key == "min_citations") {
            t.min_citations = value.get<std::uint64_t>();
        } else if (key == "ifbscp_threshold") {
            t.ifbscp_threshold = v;
        } else if (key == "ifbscp_min_z") {
            t.ifbscp_min_z = v;
        } else {
            throw Error(ErrorKind::InvalidSpec, path.string() + ": unknown threshold '" + key + "'");
        }
    }
    return t;
}

// ---------------------------------------------------------------- commands

int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto l = load(cfg, err);
    const auto& c = l.resolved.corpus();
    out << "papers " << c.papers().size() << ", journals " << c.journals().size() << ", references "
        << c.references().size() << ", years " << c.year_range().min_year << '-' << c.year_range().max_year << '\n';
    if (!cfg.out.empty()) {
        ensure_out(cfg);
        auto f = open_out(cfg, "resolve.csv");
        write_resolve_report(l.resolved.summary(), f);
    } else {
        write_resolve_report(l.resolved.summary(), out);
    }
    return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    auto l = load(cfg, err);
    ensure_out(cfg);
    const auto reports = report_all(l.resolved, l.census, cfg.window);
    if (cfg.format == "json") {
        auto f = open_out(cfg, "report.json");
        write_report_json(reports, f, cfg.decimals);
    } else {
        auto f = open_out(cfg, "report.csv");
        write_report_csv(reports, f, cfg.decimals);
    }
    return kExitOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    auto l = load(cfg, err);
    ensure_out(cfg);
    const auto rows = ranking_report(l.resolved, l.census, cfg.ranking);
    if (cfg.format == "json") {
        ordered_json j = ordered_json::array();
        for (const auto& r : rows) {
            j.push_back({{"journal_id", r.journal_id},
                         {"eigenfactor", number_or_null(r.eigenfactor, cfg.decimals)},
                         {"article_influence", number_or_null(r.article_influence, cfg.decimals)},
                         {"sjr", number_or_null(r.sjr, cfg.decimals)},
                         {"snip", number_or_null(r.snip, cfg.decimals)}});
        }
        auto f = open_out(cfg, "ranking.json");
        f << j.dump(2) << '\n';
    } else {
        auto f = open_out(cfg, "ranking.csv");
        write_ranking_csv(rows, f, cfg.decimals);
    }
    return kExitOk;
}

int cmd_net(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    auto l = load(cfg, err);
    ensure_out(cfg);
    const auto m = build_matrix(l.resolved, l.census, cfg.window);
    if (cfg.format == "json") {
        ordered_json j;
        j["census_year"] = l.census;
        j["window_years"] = cfg.window;
        j["journals"] = m.journal_ids();
        j["article_counts"] = m.article_counts();
        j["entries"] = ordered_json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (const auto& e : m.row(i)) j["entries"].push_back({{"citing", m.journal_ids()[i]}, {"cited", m.journal_ids()[e.cited]}, {"count", e.count}});
        }
        auto f = open_out(cfg, "matrix.json");
        f << j.dump(2) << '\n';
    } else {
        auto f = open_out(cfg, "matrix.csv");
        write_matrix_csv(m, f);
    }
    return kExitOk;
}

int cmd_dist(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    auto l = load(cfg, err);
    ensure_out(cfg);
    const auto& journals = l.resolved.corpus().journals();
    const auto tallies = tally_all(l.resolved, l.census, cfg.window);

    if (!cfg.journal.empty()) {
        const auto j = l.resolved.require_journal(cfg.journal);
        const auto& t = tallies[j];
        if (t.n_citable_items == 0) {
            throw Error(ErrorKind::EmptyWindow, "journal '" + cfg.journal + "' has no citable items in the window");
        }
        const auto s = distribution(l.resolved, cfg.journal, l.census, cfg.window, jif_wos_derived(t));
        if (cfg.format == "json") {
            auto f = open_out(cfg, "distribution_" + cfg.journal + ".json");
            write_distribution_json(s, f);
        } else {
            auto f = open_out(cfg, "distribution_" + cfg.journal + ".csv");
            write_distribution_csv(s, f);
        }
        write_plot(cfg, "distribution_" + cfg.journal + ".svg", distribution_svg(s), err);
        return kExitOk;
    }

    std::vector<DistributionSummary> summaries;
    for (std::size_t j = 0; j < journals.size(); ++j) {
        if (tallies[j].n_citable_items == 0) continue;
        summaries.push_back(distribution(l.resolved, journals[j].journal_id, l.census, cfg.window, jif_wos_derived(tallies[j])));
    }
    {
        auto f = open_out(cfg, "distributions.csv");
        f << "journal_id,census_year,n_papers,mean,median,jif,share_at_or_above_jif\n";
        for (const auto& s : summaries) {
            f << s.journal_id << ',' << s.census_year << ',' << s.n_papers << ',' << format_decimal(s.mean, cfg.decimals)
              << ',' << format_decimal(s.median, cfg.decimals) << ',' << format_decimal(s.jif_value, cfg.decimals) << ','
              << format_decimal(s.share_at_or_above_jif, 4) << '\n';
        }
    }
    if (!summaries.empty()) {
        const auto h = jcr_share_histogram(summaries);
        auto f = open_out(cfg, "share_histogram.csv");
        write_share_histogram_csv(h, f);
        write_plot(cfg, "share_histogram.svg", share_histogram_svg(h), err);
    }
    std::vector<std::string> disciplines;
    for (const auto& j : journals) {
        if (std::find(disciplines.begin(), disciplines.end(), j.discipline) == disciplines.end()) {
            disciplines.push_back(j.discipline);
        }
    }
    std::sort(disciplines.begin(), disciplines.end());
    std::vector<DisciplineProfile> profiles;
    for (const auto& d : disciplines) profiles.push_back(discipline_profile(l.resolved, d, l.census));
    auto f = open_out(cfg, "disciplines.csv");
    write_discipline_profiles_csv(profiles, f);
    return kExitOk;
}

int cmd_cohort(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    if (cfg.discipline.empty()) throw Error(ErrorKind::InvalidArgument, "--discipline is required");
    if (!cfg.year) throw Error(ErrorKind::InvalidArgument, "--year (publication year of the cohort) is required");
    auto l = load(cfg, err);
    ensure_out(cfg);
    const auto c = cohort_curve(l.resolved, cfg.discipline, *cfg.year, cfg.horizon);
    if (c.truncated) err << "warning: horizon of " << cfg.horizon << " years misses part of the citation tail\n";
    if (cfg.format == "json") {
        auto f = open_out(cfg, "cohort.json");
        write_cohort_json(c, f);
    } else {
        auto f = open_out(cfg, "cohort.csv");
        write_cohort_csv(c, f);
    }
    write_plot(cfg, "cohort.svg", cohort_svg(c), err);
    return kExitOk;
}

std::vector<IndicatorReport> read_report_csv(const fs::path& path, Year& year) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open report " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::MalformedRecord, path.string() + ": empty file");
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    const auto header = split(line);
    auto col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw Error(ErrorKind::MalformedRecord, path.string() + ": missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto id_col = col("journal_id");
    const auto year_col = col("census_year");
    const auto jif_col = col("jif2");
    std::vector<IndicatorReport> reports;
    std::size_t lineno = 1;
    year = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::MalformedRecord, path.string() + ":" + std::to_string(lineno) + ": wrong column count");
        }
        IndicatorReport r;
        r.journal_id = cells[id_col];
        try {
            r.census_year = std::stoi(cells[year_col]);
            if (!cells[jif_col].empty()) r.jif2 = std::stod(cells[jif_col]);
        } catch (const std::exception&) {
            throw Error(ErrorKind::MalformedRecord, path.string() + ":" + std::to_string(lineno) + ": not a number");
        }
        if (year == 0) year = r.census_year;
        reports.push_back(std::move(r));
    }
    return reports;
}

int cmd_inflate(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    std::vector<InflationSnapshot> snaps;
    if (!cfg.reports.empty()) {
        for (const auto& p : cfg.reports) {
            InflationSnapshot s;
            s.reports = read_report_csv(p, s.year);
            snaps.push_back(std::move(s));
        }
    } else {
        if (cfg.years.size() < 2) throw Error(ErrorKind::InvalidArgument, "give --reports files or --in with --years (two or more)");
        auto l = load(cfg, err);
        for (Year y : cfg.years) snaps.push_back({y, report_all(l.resolved, y, 2)});
    }
    if (snaps.size() < 2) throw Error(ErrorKind::InvalidArgument, "inflation needs at least two snapshots");
    ensure_out(cfg);
    const auto series = inflation_series(snaps, cfg.above);
    auto f = open_out(cfg, "inflation.csv");
    write_inflation_csv(series, f);
    write_plot(cfg, "inflation.svg", inflation_svg(series), err);
    return kExitOk;
}

int cmd_detect(const RunConfig& cfg, std::ostream&, std::ostream& err) {
    const auto thresholds = load_thresholds(cfg.thresholds);
    auto l = load(cfg, err);
    ensure_out(cfg);
    const auto flags = detect_all(l.resolved, l.census, thresholds);
    if (cfg.format == "json") {
        ordered_json j = ordered_json::array();
        for (const auto& fl : flags) {
            j.push_back({{"journal_id", fl.journal_id},
                         {"census_year", fl.census_year},
                         {"kind", std::string(to_string(fl.kind))},
                         {"statistic", std::isfinite(fl.statistic) ? ordered_json::parse(format_decimal(fl.statistic, 6))
                                                                   : ordered_json("inf")},
                         {"threshold", ordered_json::parse(format_decimal(fl.threshold, 6))},
                         {"evidence", fl.evidence ? ordered_json(*fl.evidence) : ordered_json(nullptr)}});
        }
        auto f = open_out(cfg, "flags.json");
        f << j.dump(2) << '\n';
    } else {
        auto f = open_out(cfg, "flags.csv");
        write_flags_csv(flags, f);
    }
    return kExitOk;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    if (cfg.scenario.empty() == cfg.fixture.empty()) {
        throw Error(ErrorKind::InvalidArgument, "give exactly one of --scenario or --fixture");
    }
    ensure_out(cfg);
    if (!cfg.scenario.empty()) {
        auto spec = load_scenario(cfg.scenario);
        if (cfg.seed) spec.seed = *cfg.seed;
        const auto corpus = generate(spec);
        export_corpus(corpus, cfg.out);
        out << "generated " << corpus.papers().size() << " papers, " << corpus.references().size() << " references\n";
        return kExitOk;
    }
    if (cfg.fixture == "table1") {
        const auto fx = fixture_table1();
        export_corpus(fx.corpus, cfg.out);
        auto f = open_out(cfg, "jcr_jif.csv");
        f << "journal_id,census_year,jcr_jif\n";
        for (const auto& [id, v] : fx.jcr_jif) f << id << ',' << fx.census_year << ',' << format_decimal(v, 3) << '\n';
    } else if (cfg.fixture == "disciplines") {
        export_corpus(fixture_disciplines(), cfg.out);
    } else if (cfg.fixture == "inflation") {
        for (const auto& snap : fixture_inflation()) {
            auto f = open_out(cfg, "report_" + std::to_string(snap.year) + ".csv");
            write_report_csv(snap.reports, f, 3);
        }
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown fixture '" + cfg.fixture + "' (table1, disciplines, inflation)");
    }
    return kExitOk;
}

void write_error_file(const RunConfig& cfg, const std::string& text, std::ostream& err) {
    if (cfg.out.empty()) return;
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    std::ofstream f(cfg.out / "errors.txt", std::ios::binary);
    if (f) {
        f << text;
    } else {
        err << "warning: could not write " << (cfg.out / "errors.txt").string() << '\n';
    }
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "ingest") return cmd_ingest(cfg, out, err);
    if (cfg.command == "report") return cmd_report(cfg, out, err);
    if (cfg.command == "rank") return cmd_rank(cfg, out, err);
    if (cfg.command == "net") return cmd_net(cfg, out, err);
    if (cfg.command == "dist") return cmd_dist(cfg, out, err);
    if (cfg.command == "cohort") return cmd_cohort(cfg, out, err);
    if (cfg.command == "inflate") return cmd_inflate(cfg, out, err);
    if (cfg.command == "detect") return cmd_detect(cfg, out, err);
    if (cfg.command == "gen") return cmd_gen(cfg, out, err);
    throw Error(ErrorKind::InvalidArgument, "unknown command");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Journal citation indicators from bibliographic records", "citemetrics"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--in", cfg.in, "Directory with papers.jsonl, journals.jsonl, references.jsonl");
        sub->add_option("--out", cfg.out, "Output directory");
        sub->add_option("--year", cfg.year, "Census year (default: latest year in the corpus)");
        sub->add_option("--window", cfg.window, "Citation window in years")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--decimals", cfg.decimals, "Decimal places")->check(CLI::IsMember({1, 3}));
        sub->add_flag("--plot", cfg.plot, "Also write static SVG plots");
        sub->add_option("--abbrev", cfg.abbrev, "Abbreviation table (token<TAB>expansion)");
    };

    auto* ingest_cmd = app.add_subcommand("ingest", "Validate and resolve a corpus; report citation classes");
    common(ingest_cmd);
    auto* report_cmd = app.add_subcommand("report", "Impact indicators for every journal");
    common(report_cmd);
    auto* rank_cmd = app.add_subcommand("rank", "Eigenfactor, Article Influence, SJR and SNIP");
    common(rank_cmd);
    rank_cmd->add_option("--damping", cfg.ranking.damping, "Damping factor (default 0.85)");
    rank_cmd->add_option("--tolerance", cfg.ranking.tolerance, "L1 convergence tolerance");
    rank_cmd->add_option("--max-iterations", cfg.ranking.max_iterations, "Iteration limit before giving up (exit 3)");
    auto* net_cmd = app.add_subcommand("net", "Journal-to-journal citation matrix");
    common(net_cmd);
    auto* dist_cmd = app.add_subcommand("dist", "Per-paper citation distributions and discipline profiles");
    common(dist_cmd);
    dist_cmd->add_option("--journal", cfg.journal, "Single journal: write its full histogram");
    auto* cohort_cmd = app.add_subcommand("cohort", "Citation accrual of one publication-year cohort");
    common(cohort_cmd);
    cohort_cmd->add_option("--discipline", cfg.discipline, "Discipline whose journals form the cohort");
    cohort_cmd->add_option("--horizon", cfg.horizon, "Years after publication to follow")->check(CLI::NonNegativeNumber);
    auto* inflate_cmd = app.add_subcommand("inflate", "JIF inflation across census years");
    common(inflate_cmd);
    inflate_cmd->add_option("--years", cfg.years, "Census years to compute from --in")->delimiter(',');
    inflate_cmd->add_option("--reports", cfg.reports, "Report CSV files, one per snapshot");
    inflate_cmd->add_option("--above", cfg.above, "JIF thresholds to count journals above")->delimiter(',');
    auto* detect_cmd = app.add_subcommand("detect", "Self-citation, IFBSCP and citation-stacking flags");
    common(detect_cmd);
    detect_cmd->add_option("--thresholds", cfg.thresholds, "JSON file overriding detector thresholds");
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus or a reference fixture");
    common(gen_cmd);
    gen_cmd->add_option("--scenario", cfg.scenario, "Scenario JSON");
    gen_cmd->add_option("--seed", cfg.seed, "Override the scenario seed");
    gen_cmd->add_option("--fixture", cfg.fixture, "table1, disciplines or inflation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        return dispatch(cfg, out, err);
    } catch (const IngestError& e) {
        std::string text;
        for (const auto& issue : e.issues()) text += issue.describe() + "\n";
        err << "error: " << e.issues().size() << " invalid record(s)\n" << text;
        write_error_file(cfg, text, err);
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (e.kind() == ErrorKind::Io) return kExitIo;
        if (e.kind() == ErrorKind::NonConvergence) return kExitNonConvergence;
        write_error_file(cfg, std::string(to_string(e.kind())) + ": " + e.what() + "\n", err);
        return kExitValidation;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace citemetrics
