#pragma once

// Word-list ingestion, inclusion filters, tokenization and N-gram profiles.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail::corpus {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

class TokenizeError : public std::runtime_error {
  public:
    TokenizeError(const std::string& what, std::size_t position) : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

inline constexpr int kItemCount = 40;

struct WordEntry {
    int item_number = 0;
    std::string item_name;
    std::string transcription;
    bool loan = false;

    friend bool operator==(const WordEntry&, const WordEntry&) = default;
};

struct WordList {
    std::string family;
    std::string genus;
    std::string doculect;
    std::string iso;
    std::vector<WordEntry> entries;

    /// Distinct item numbers with at least one form.
    std::size_t attested_items() const {
        std::set<int> items;
        for (const auto& e : entries) items.insert(e.item_number);
        return items.size();
    }
    /// Member-language identity: the ISO code, or the doculect when it has none.
    std::string language_key() const { return iso.empty() ? "doculect:" + doculect : iso; }

    friend bool operator==(const WordList&, const WordList&) = default;
};

struct FamilyCorpus {
    std::string name;
    std::vector<WordList> lists;
    std::vector<std::string> members;  // sorted distinct language keys

    std::size_t member_count() const { return members.size(); }

    friend bool operator==(const FamilyCorpus&, const FamilyCorpus&) = default;
};

// ---------------------------------------------------------------------------
// Canonical TSV

inline constexpr std::array<std::string_view, 8> kCanonicalHeader{
    "family", "genus", "doculect", "iso", "item_number", "item_name", "transcription", "loan"};

struct ParseResult {
    std::vector<WordList> lists;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

inline std::optional<int> parse_int(const std::string& s) {
    if (s.empty() || s.size() > 9) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace detail

/// Read the canonical word-list TSV. One WordList per doculect, in order of
/// first appearance.
inline ParseResult parse_canonical(std::istream& in) {
    ParseResult result;
    std::unordered_map<std::string, std::size_t> index;
    std::set<std::tuple<std::string, int, std::string>> seen;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto cols = detail::split_tabs(line);
        if (cols.size() != kCanonicalHeader.size()) {
            throw ParseError(lineno, "expected " + std::to_string(kCanonicalHeader.size()) + " tab-separated columns, found " +
                                         std::to_string(cols.size()));
        }
        if (!header_seen) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] != kCanonicalHeader[i]) {
                    throw ParseError(lineno, "bad header: column " + std::to_string(i + 1) + " is '" + cols[i] +
                                                 "', expected '" + std::string(kCanonicalHeader[i]) + "'");
                }
            }
            header_seen = true;
            continue;
        }
        const auto& family = cols[0];
        const auto& doculect = cols[2];
        if (family.empty()) throw ParseError(lineno, "empty family");
        if (doculect.empty()) throw ParseError(lineno, "empty doculect");
        const auto item = detail::parse_int(cols[4]);
        if (!item || *item < 1 || *item > kItemCount) {
            throw ParseError(lineno, "item_number must be an integer in 1..40, got '" + cols[4] + "'");
        }
        if (cols[6].empty()) throw ParseError(lineno, "empty transcription");
        if (cols[7] != "0" && cols[7] != "1") throw ParseError(lineno, "loan must be 0 or 1, got '" + cols[7] + "'");

        auto [it, inserted] = index.try_emplace(doculect, result.lists.size());
        if (inserted) {
            result.lists.push_back(WordList{family, cols[1], doculect, cols[3], {}});
        } else {
            const auto& wl = result.lists[it->second];
            if (wl.family != family || wl.genus != cols[1] || wl.iso != cols[3]) {
                throw ParseError(lineno, "doculect '" + doculect + "' appears with conflicting family/genus/iso");
            }
        }
        if (!seen.emplace(doculect, *item, cols[6]).second) {
            result.warnings.push_back("line " + std::to_string(lineno) + ": duplicate form '" + cols[6] + "' for " +
                                      doculect + " item " + cols[4] + " ignored");
            continue;
        }
        result.lists[it->second].entries.push_back(WordEntry{*item, cols[5], cols[6], cols[7] == "1"});
    }
    return result;
}

inline ParseResult parse_canonical(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_canonical(in);
}

// ---------------------------------------------------------------------------
// Filters and grouping

namespace detail {

// Drop loans from every list, then lists with too few attested items.
inline std::vector<WordList> filter_lists(const std::vector<WordList>& lists, std::size_t min_items) {
    std::vector<WordList> out;
    for (const auto& wl : lists) {
        WordList kept = wl;
        std::erase_if(kept.entries, [](const WordEntry& e) { return e.loan; });
        if (kept.attested_items() >= min_items) out.push_back(std::move(kept));
    }
    return out;
}

template <class Key>
std::vector<FamilyCorpus> group_by(const std::vector<WordList>& lists, Key&& key) {
    std::map<std::string, FamilyCorpus> groups;
    for (const auto& wl : lists) {
        auto& g = groups[key(wl)];
        g.name = key(wl);
        g.lists.push_back(wl);
    }
    std::vector<FamilyCorpus> out;
    for (auto& [name, g] : groups) {
        std::set<std::string> members;
        for (const auto& wl : g.lists) members.insert(wl.language_key());
        g.members.assign(members.begin(), members.end());
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace detail

/// Family corpora passing the inclusion rules, sorted by name. Loan forms are
/// removed before attestation is counted, so the filter is idempotent.
inline std::vector<FamilyCorpus> apply_inclusion_filters(const std::vector<WordList>& lists, std::size_t min_items = 28,
                                                         std::size_t min_members = 4) {
    auto groups = detail::group_by(detail::filter_lists(lists, min_items), [](const WordList& wl) { return wl.family; });
    std::erase_if(groups, [&](const FamilyCorpus& g) { return g.member_count() < min_members; });
    return groups;
}

inline std::vector<WordList> flatten(const std::vector<FamilyCorpus>& corpora) {
    std::vector<WordList> out;
    for (const auto& c : corpora) out.insert(out.end(), c.lists.begin(), c.lists.end());
    return out;
}

struct GenusGrouping {
    std::vector<FamilyCorpus> corpora;
    std::size_t excluded_without_genus = 0;
};

/// Genus corpora from lists that pass the per-list rules; lists without a
/// genus label are counted and left out.
inline GenusGrouping aggregate_by_genus(const std::vector<WordList>& lists, std::size_t min_items = 28) {
    GenusGrouping out;
    std::vector<WordList> labelled;
    for (auto& wl : detail::filter_lists(lists, min_items)) {
        if (wl.genus.empty()) {
            ++out.excluded_without_genus;
        } else {
            labelled.push_back(std::move(wl));
        }
    }
    out.corpora = detail::group_by(labelled, [](const WordList& wl) { return wl.genus; });
    return out;
}

// ---------------------------------------------------------------------------
// Alphabet and tokenization

enum class SymbolClass : std::uint8_t { Consonant, Vowel, Nasalization, Fuse2, Fuse3, Ignore };

enum class TokenizeMode { Raw, Combined };

constexpr std::string_view tokenize_mode_name(TokenizeMode m) { return m == TokenizeMode::Raw ? "raw" : "combined"; }

inline std::optional<TokenizeMode> parse_tokenize_mode(std::string_view s) {
    if (s == "raw") return TokenizeMode::Raw;
    if (s == "combined") return TokenizeMode::Combined;
    return std::nullopt;
}

class Alphabet {
  public:
    Alphabet() = default;

    /// 34 consonants, 7 vowels, nasalization '*', fuse-two '~', fuse-three '$'.
    static Alphabet asjp() {
        Alphabet a;
        for (char c : std::string_view("pbmfv84tdszcnSZCjT5kgxNqGX7hlLwyr!")) a.declare(c, SymbolClass::Consonant);
        for (char c : std::string_view("ieE3auo")) a.declare(c, SymbolClass::Vowel);
        a.declare('*', SymbolClass::Nasalization);
        a.declare('~', SymbolClass::Fuse2);
        a.declare('$', SymbolClass::Fuse3);
        return a;
    }

    /// Lines of `<class> <char>`; '#' starts a comment line.
    static Alphabet parse(std::istream& in) {
        static const std::map<std::string, SymbolClass, std::less<>> names{
            {"consonant", SymbolClass::Consonant}, {"vowel", SymbolClass::Vowel},
            {"nasalization", SymbolClass::Nasalization}, {"fuse2", SymbolClass::Fuse2},
            {"fuse3", SymbolClass::Fuse3}, {"ignore", SymbolClass::Ignore}};
        Alphabet a;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            std::istringstream fields(line.substr(first));
            std::string cls, sym, extra;
            fields >> cls >> sym;
            if (sym.size() != 1 || (fields >> extra)) {
                throw ParseError(lineno, "alphabet entries are '<class> <single character>'");
            }
            auto it = names.find(cls);
            if (it == names.end()) throw ParseError(lineno, "unknown symbol class '" + cls + "'");
            if (a.classify(sym[0])) throw ParseError(lineno, "symbol '" + sym + "' declared twice");
            a.declare(sym[0], it->second);
        }
        if (a.size_ == 0) throw ParseError(lineno, "alphabet declares no symbols");
        return a;
    }

    void declare(char c, SymbolClass cls) {
        auto& slot = table_[static_cast<unsigned char>(c)];
        if (!slot) ++size_;
        slot = cls;
    }
    std::optional<SymbolClass> classify(char c) const { return table_[static_cast<unsigned char>(c)]; }
    std::size_t size() const { return size_; }

  private:
    std::array<std::optional<SymbolClass>, 256> table_{};
    std::size_t size_ = 0;
};

using Word = std::vector<std::string>;

inline bool is_word_separator(char c) { return c == ' ' || c == '\t' || c == ','; }

/// Split a transcription into words (on whitespace and ',') and each word
/// into tokens. Raw mode keeps every code character as its own token;
/// combined mode applies the fuse and nasalization modifiers.
inline std::vector<Word> tokenize(std::string_view transcription, TokenizeMode mode,
                                  const Alphabet& alphabet = Alphabet::asjp()) {
    std::vector<Word> words;
    Word current;
    auto flush = [&] {
        if (!current.empty()) words.push_back(std::move(current));
        current.clear();
    };
    for (std::size_t pos = 0; pos < transcription.size(); ++pos) {
        const char c = transcription[pos];
        if (is_word_separator(c)) {
            flush();
            continue;
        }
        const auto cls = alphabet.classify(c);
        if (!cls) {
            throw TokenizeError("unknown symbol '" + std::string(1, c) + "' at position " + std::to_string(pos) +
                                    " in '" + std::string(transcription) + "'",
                                pos);
        }
        if (*cls == SymbolClass::Ignore) continue;
        if (mode == TokenizeMode::Raw) {
            current.emplace_back(1, c);
            continue;
        }
        switch (*cls) {
            case SymbolClass::Consonant:
            case SymbolClass::Vowel: current.emplace_back(1, c); break;
            case SymbolClass::Nasalization:
                if (current.empty()) {
                    throw TokenizeError("nasalization mark with no preceding symbol at position " + std::to_string(pos), pos);
                }
                current.back().push_back(c);
                break;
            case SymbolClass::Fuse2:
            case SymbolClass::Fuse3: {
                const std::size_t k = *cls == SymbolClass::Fuse2 ? 2 : 3;
                if (current.size() < k) {
                    throw TokenizeError("modifier '" + std::string(1, c) + "' at position " + std::to_string(pos) +
                                            " needs " + std::to_string(k) + " preceding symbols",
                                        pos);
                }
                std::string fused;
                for (std::size_t i = current.size() - k; i < current.size(); ++i) fused += current[i];
                current.resize(current.size() - k);
                current.push_back(std::move(fused));
                break;
            }
            case SymbolClass::Ignore: break;
        }
    }
    flush();
    return words;
}

// ---------------------------------------------------------------------------
// N-gram profiles

inline constexpr int kMaxN = 10;

struct NGramProfile {
    std::vector<std::size_t> per_n;  // per_n[n - 1] distinct n-grams

    int max_n() const { return static_cast<int>(per_n.size()); }
    std::size_t count(int n) const { return per_n.at(static_cast<std::size_t>(n - 1)); }
    /// Distinct 1..k-grams.
    std::size_t cumulative(int k) const {
        if (k < 1 || k > max_n()) throw std::out_of_range("NGramProfile::cumulative: k out of range");
        std::size_t s = 0;
        for (int n = 1; n <= k; ++n) s += per_n[static_cast<std::size_t>(n - 1)];
        return s;
    }

    friend bool operator==(const NGramProfile&, const NGramProfile&) = default;
};

namespace detail {

// Tokens joined with a unit separator so ("ab","c") and ("a","bc") differ.
inline std::string gram_key(const Word& w, std::size_t start, std::size_t n) {
    std::string key = w[start];
    for (std::size_t i = start + 1; i < start + n; ++i) {
        key.push_back('\x1f');
        key += w[i];
    }
    return key;
}

template <class Visit>
void for_each_gram(const std::vector<WordList>& lists, int max_n, TokenizeMode mode, const Alphabet& alphabet,
                   Visit&& visit) {
    for (const auto& wl : lists) {
        for (const auto& e : wl.entries) {
            for (const auto& w : tokenize(e.transcription, mode, alphabet)) {
                for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n) && n <= w.size(); ++n) {
                    for (std::size_t s = 0; s + n <= w.size(); ++s) visit(static_cast<int>(n), gram_key(w, s, n));
                }
            }
        }
    }
}

inline void check_max_n(int max_n) {
    if (max_n < 1 || max_n > kMaxN) throw std::domain_error("ngram_profile: N must be in 1..10");
}

}  // namespace detail

/// Distinct n-grams for n = 1..max_n over all word lists of a corpus; grams
/// never cross word boundaries.
inline NGramProfile ngram_profile(const FamilyCorpus& corpus, int max_n, TokenizeMode mode = TokenizeMode::Raw,
                                  const Alphabet& alphabet = Alphabet::asjp()) {
    detail::check_max_n(max_n);
    std::vector<std::unordered_set<std::string>> sets(static_cast<std::size_t>(max_n));
    detail::for_each_gram(corpus.lists, max_n, mode, alphabet,
                          [&](int n, std::string key) { sets[static_cast<std::size_t>(n - 1)].insert(std::move(key)); });
    NGramProfile p;
    for (const auto& s : sets) p.per_n.push_back(s.size());
    if (p.per_n.front() == 0) throw InsufficientDataError("ngram_profile: corpus '" + corpus.name + "' has no symbols");
    return p;
}

struct SizeRow {
    std::string name;
    std::size_t members = 0;
    std::size_t word_lists = 0;
    NGramProfile profile;
};

/// One row per corpus, largest cumulative max_n-gram profile first, ties by name.
inline std::vector<SizeRow> size_table(const std::vector<FamilyCorpus>& corpora, int max_n,
                                       TokenizeMode mode = TokenizeMode::Raw,
                                       const Alphabet& alphabet = Alphabet::asjp()) {
    std::vector<SizeRow> rows;
    for (const auto& c : corpora) {
        rows.push_back({c.name, c.member_count(), c.lists.size(), ngram_profile(c, max_n, mode, alphabet)});
    }
    std::sort(rows.begin(), rows.end(), [&](const SizeRow& a, const SizeRow& b) {
        const auto sa = a.profile.cumulative(max_n);
        const auto sb = b.profile.cumulative(max_n);
        return sa != sb ? sa > sb : a.name < b.name;
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Interned gram sets for sampling experiments

/// All word lists of one language with its grams as sorted global ids, per n.
struct LanguageUnit {
    std::string key;
    std::string family;
    std::vector<std::vector<std::uint32_t>> grams;
};

class GramIndex {
  public:
    explicit GramIndex(int max_n) : max_n_(max_n), ids_(static_cast<std::size_t>(max_n)) { detail::check_max_n(max_n); }

    int max_n() const { return max_n_; }
    std::size_t size(int n) const { return ids_.at(static_cast<std::size_t>(n - 1)).size(); }

    /// Group lists by language key (order of first appearance) and intern their grams.
    std::vector<LanguageUnit> units(const std::vector<WordList>& lists, TokenizeMode mode,
                                    const Alphabet& alphabet = Alphabet::asjp()) {
        std::vector<LanguageUnit> out;
        std::unordered_map<std::string, std::size_t> pos;
        std::vector<std::vector<WordList>> members;
        for (const auto& wl : lists) {
            auto [it, inserted] = pos.try_emplace(wl.language_key(), out.size());
            if (inserted) {
                out.push_back({wl.language_key(), wl.family, {}});
                members.emplace_back();
            }
            members[it->second].push_back(wl);
        }
        for (std::size_t u = 0; u < out.size(); ++u) {
            out[u].grams.assign(static_cast<std::size_t>(max_n_), {});
            detail::for_each_gram(members[u], max_n_, mode, alphabet, [&](int n, std::string key) {
                auto& table = ids_[static_cast<std::size_t>(n - 1)];
                auto [it, inserted] = table.try_emplace(std::move(key), static_cast<std::uint32_t>(table.size()));
                out[u].grams[static_cast<std::size_t>(n - 1)].push_back(it->second);
            });
            for (auto& g : out[u].grams) {
                std::sort(g.begin(), g.end());
                g.erase(std::unique(g.begin(), g.end()), g.end());
            }
        }
        return out;
    }

  private:
    int max_n_;
    std::vector<std::unordered_map<std::string, std::uint32_t>> ids_;
};

/// Counts distinct ids in a union of language units without rebuilding sets.
class UnionCounter {
  public:
    /// Build after every unit has been interned into `index`.
    explicit UnionCounter(const GramIndex& index) : stamps_(static_cast<std::size_t>(index.max_n())) {
        for (int n = 1; n <= index.max_n(); ++n) stamps_[static_cast<std::size_t>(n - 1)].assign(index.size(n), 0);
    }

    /// Per-n distinct counts over the chosen units.
    std::vector<std::size_t> count(const std::vector<LanguageUnit>& units, const std::vector<std::size_t>& chosen) {
        ++epoch_;
        std::vector<std::size_t> out(stamps_.size(), 0);
        for (std::size_t n = 0; n < stamps_.size(); ++n) {
            auto& st = stamps_[n];
            for (auto u : chosen) {
                for (auto id : units[u].grams[n]) {
                    if (st[id] != epoch_) {
                        st[id] = epoch_;
                        ++out[n];
                    }
                }
            }
        }
        return out;
    }

  private:
    std::vector<std::vector<std::uint32_t>> stamps_;
    std::uint32_t epoch_ = 0;
};

}  // namespace heavytail::corpus
