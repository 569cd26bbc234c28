#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citemetrics/corpus.hpp"
#include "citemetrics/matcher.hpp"

namespace testing_support {

using namespace citemetrics;

// Small hand-built corpora. Journal names default to the id.
class MiniCorpus {
public:
    MiniCorpus& journal(const std::string& id, const std::string& discipline = "General",
                        std::vector<std::string> variants = {}, std::optional<std::string> name = std::nullopt) {
        b_.add_journal({id, name ? *name : id, std::move(variants), discipline, std::nullopt});
        return *this;
    }
    MiniCorpus& paper(const std::string& id, const std::string& journal, Year year,
                      DocumentType type = DocumentType::Article) {
        b_.add_paper({id, journal, year, type});
        return *this;
    }
    MiniCorpus& cite(const std::string& from, const std::string& to) {
        b_.add_reference({from, to, to, std::nullopt, std::nullopt});
        return *this;
    }
    // `n` identical references from one paper to another.
    MiniCorpus& cite_n(const std::string& from, const std::string& to, int n) {
        for (int i = 0; i < n; ++i) cite(from, to);
        return *this;
    }
    MiniCorpus& raw(const std::string& from, const std::string& text, std::optional<Year> year = std::nullopt) {
        b_.add_reference({from, text, std::nullopt, std::nullopt, year});
        return *this;
    }
    Corpus build() { return std::move(b_).finalize(); }
    ResolvedCorpus resolved() { return resolve(build()); }

private:
    CorpusBuilder b_;
};

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("citemetrics-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testing_support
