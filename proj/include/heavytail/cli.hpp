#pragma once

// Command-line front end. `run_cli` parses arguments and runs one
// subcommand, writing results to `out` (or --out) and diagnostics to `err`.
//
// Exit status: 0 success, 2 input or usage error, 3 insufficient or
// degenerate data, 4 unknown name, 1 anything else.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heavytail/corpus.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/experiments.hpp"
#include "heavytail/fitting.hpp"
#include "heavytail/report_io.hpp"
#include "heavytail/selection.hpp"
#include "json.hpp"

namespace heavytail::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kDataError = 3, kLookupError = 4 };

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    int nmax = 5;
    std::string convention = "continuous";
    std::string tokenize = "raw";
    std::string xmin = "scan";
    std::size_t bootstrap = 0;
    std::uint64_t seed = 42;
    std::string format = "tsv";
    std::string out;
    std::string by = "family";
    std::string alphabet;
    std::optional<double> sigma_threshold;
    std::string aic = "halved";
    std::vector<std::string> only;
    std::vector<std::string> columns;
    std::string family;
    std::string sizes;
    std::size_t repeats = 1;
    std::size_t iterations = 10;
    std::size_t min_items = 28;
    std::size_t min_members = 4;
    bool rescan = false;

    nlohmann::json to_json() const {
        nlohmann::json j{{"subcommand", subcommand}, {"inputs", inputs},   {"nmax", nmax},
                         {"convention", convention}, {"tokenize", tokenize}, {"xmin", xmin},
                         {"bootstrap", bootstrap},   {"seed", seed},         {"format", format},
                         {"by", by},                 {"alphabet", alphabet}, {"aic", aic},
                         {"only", only},             {"columns", columns},   {"family", family},
                         {"sizes", sizes},           {"repeats", repeats},   {"iterations", iterations},
                         {"min_items", min_items},   {"min_members", min_members}, {"rescan", rescan}};
        j["sigma_threshold"] = sigma_threshold ? nlohmann::json(*sigma_threshold) : nlohmann::json(nullptr);
        return j;
    }
};

namespace detail {

using heavytail::format_number;

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline std::string read_all(const std::string& path, std::istream& stdin_stream) {
    std::ostringstream buf;
    if (path.empty() || path == "-") {
        buf << stdin_stream.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot open '" + path + "'");
        buf << f.rdbuf();
    }
    return buf.str();
}

// Temp file in the target directory, then rename over the destination.
inline void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw InputError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

inline void emit(const RunConfig& cfg, const std::string& content, Io& io) {
    if (cfg.out.empty()) {
        io.out << content;
    } else {
        write_atomic(cfg.out, content);
    }
}

inline std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    if (line.find('\t') != std::string::npos) {
        std::size_t start = 0;
        for (;;) {
            const auto tab = line.find('\t', start);
            out.push_back(trim(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start)));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
    } else {
        std::istringstream in(line);
        for (std::string f; in >> f;) out.push_back(f);
    }
    return out;
}

/// Numeric datasets from newline-separated numbers or a TSV with a header.
/// Without `columns`, every fully numeric column is used.
inline std::vector<SizeDataset> read_numeric(const std::string& text, const std::vector<std::string>& columns,
                                             const std::string& default_label) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_of;
    std::istringstream in(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        rows.push_back(split_fields(t));
        line_of.push_back(lineno);
    }
    if (rows.empty()) throw InsufficientDataError("no numeric input");

    std::vector<std::string> header;
    bool has_header = false;
    for (const auto& f : rows.front()) {
        if (!parse_double(f)) has_header = true;
    }
    if (has_header) {
        header = rows.front();
    } else {
        for (std::size_t i = 0; i < rows.front().size(); ++i) {
            header.push_back(rows.front().size() == 1 ? default_label : default_label + ":" + std::to_string(i + 1));
        }
    }
    const std::size_t first = has_header ? 1 : 0;
    for (std::size_t r = first; r < rows.size(); ++r) {
        if (rows[r].size() != header.size()) {
            throw InputError("line " + std::to_string(line_of[r]) + ": expected " + std::to_string(header.size()) +
                             " fields, found " + std::to_string(rows[r].size()));
        }
    }

    std::vector<std::size_t> selected;
    if (!columns.empty()) {
        if (!has_header) throw InputError("--column needs a header row");
        for (const auto& name : columns) {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) {
                std::string avail;
                for (const auto& h : header) avail += (avail.empty() ? "" : ", ") + h;
                throw LookupError("no column '" + name + "'; available: " + avail);
            }
            selected.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    } else {
        for (std::size_t c = 0; c < header.size(); ++c) {
            bool numeric = true;
            for (std::size_t r = first; r < rows.size() && numeric; ++r) numeric = parse_double(rows[r][c]).has_value();
            if (numeric) selected.push_back(c);
        }
        if (selected.empty()) throw InputError("input has no numeric column");
    }

    std::vector<SizeDataset> out;
    for (auto c : selected) {
        std::vector<double> values;
        for (std::size_t r = first; r < rows.size(); ++r) {
            const auto v = parse_double(rows[r][c]);
            if (!v) throw InputError("line " + std::to_string(line_of[r]) + ": '" + rows[r][c] + "' is not a number");
            if (!(*v > 0.0)) throw InputError("line " + std::to_string(line_of[r]) + ": values must be positive");
            values.push_back(*v);
        }
        if (values.empty()) throw InsufficientDataError("column '" + header[c] + "' is empty");
        out.emplace_back(std::move(values), header[c]);
    }
    return out;
}

inline Support support_of(const RunConfig& cfg) {
    const auto s = parse_support(cfg.convention);
    if (!s) throw ConfigurationError("--convention must be continuous or discrete");
    return *s;
}

inline corpus::TokenizeMode mode_of(const RunConfig& cfg) {
    const auto m = corpus::parse_tokenize_mode(cfg.tokenize);
    if (!m) throw ConfigurationError("--tokenize must be raw or combined");
    return *m;
}

inline corpus::Alphabet alphabet_of(const RunConfig& cfg) {
    if (cfg.alphabet.empty()) return corpus::Alphabet::asjp();
    std::ifstream f(cfg.alphabet);
    if (!f) throw InputError("cannot open alphabet '" + cfg.alphabet + "'");
    return corpus::Alphabet::parse(f);
}

inline CompareOptions compare_options(const RunConfig& cfg) {
    CompareOptions o;
    o.scan.support = support_of(cfg);
    o.scan.sigma_threshold = cfg.sigma_threshold;
    o.rescan_each = cfg.rescan;
    if (cfg.xmin != "scan") {
        const auto v = parse_double(cfg.xmin);
        if (!v || !(*v > 0.0)) throw ConfigurationError("--xmin must be 'scan' or a positive number");
        o.fixed_x_min = *v;
    }
    return o;
}

inline std::string config_line(const RunConfig& cfg) { return "# config " + cfg.to_json().dump() + "\n"; }

inline std::string input_label(const RunConfig& cfg) {
    if (cfg.inputs.empty() || cfg.inputs.front() == "-") return "stdin";
    return std::filesystem::path(cfg.inputs.front()).stem().string();
}

inline std::vector<corpus::WordList> load_lists(const RunConfig& cfg, Io& io) {
    if (cfg.inputs.empty()) throw InputError("a word-list TSV input is required");
    const auto text = read_all(cfg.inputs.front(), io.in);
    auto parsed = corpus::parse_canonical(text);
    for (const auto& w : parsed.warnings) io.err << "warning: " << w << '\n';
    return std::move(parsed.lists);
}

struct Grouping {
    std::vector<corpus::FamilyCorpus> corpora;
    std::size_t excluded_without_genus = 0;
};

inline Grouping group(const RunConfig& cfg, const std::vector<corpus::WordList>& lists) {
    if (cfg.by == "family") return {corpus::apply_inclusion_filters(lists, cfg.min_items, cfg.min_members), 0};
    if (cfg.by == "genus") {
        auto g = corpus::aggregate_by_genus(lists, cfg.min_items);
        return {std::move(g.corpora), g.excluded_without_genus};
    }
    throw ConfigurationError("--by must be family or genus");
}

// ---------------------------------------------------------------------------

inline int cmd_profile(const RunConfig& cfg, Io& io) {
    const auto lists = load_lists(cfg, io);
    const auto grouping = group(cfg, lists);
    if (grouping.corpora.empty()) throw InsufficientDataError("no " + cfg.by + " passes the inclusion filters");
    const auto rows = corpus::size_table(grouping.corpora, cfg.nmax, mode_of(cfg), alphabet_of(cfg));

    std::ostringstream os;
    if (cfg.format == "json") {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : rows) {
            std::vector<std::size_t> cum;
            for (int k = 1; k <= cfg.nmax; ++k) cum.push_back(r.profile.cumulative(k));
            jr.push_back({{"name", r.name}, {"members", r.members}, {"word_lists", r.word_lists},
                          {"per_n", r.profile.per_n}, {"cumulative", cum}});
        }
        nlohmann::json doc{{"config", cfg.to_json()}, {"grouping", cfg.by},
                           {"excluded_without_genus", grouping.excluded_without_genus}, {"rows", jr}};
        os << doc.dump(2) << '\n';
    } else {
        os << config_line(cfg);
        os << cfg.by << "\tNOL\tword_lists";
        for (int k = 1; k <= cfg.nmax; ++k) os << '\t' << k << "-gram";
        os << '\n';
        for (const auto& r : rows) {
            os << r.name << '\t' << r.members << '\t' << r.word_lists;
            for (int k = 1; k <= cfg.nmax; ++k) os << '\t' << r.profile.cumulative(k);
            os << '\n';
        }
    }
    emit(cfg, os.str(), io);
    return kOk;
}

struct FitRow {
    ComparisonReport report;
    std::optional<RegressionResult> rank;
    std::optional<double> gof_p;
};

inline std::vector<FitRow> run_fits(const RunConfig& cfg, Io& io) {
    const auto datasets = read_numeric(read_all(cfg.inputs.empty() ? "-" : cfg.inputs.front(), io.in), cfg.columns,
                                       input_label(cfg));
    const auto options = compare_options(cfg);
    std::vector<FitRow> rows;
    for (const auto& d : datasets) {
        FitRow row{compare_all(d, options), std::nullopt, std::nullopt};
        row.rank = rank_regression(d.values());
        if (cfg.bootstrap > 0) {
            row.gof_p = bootstrap_gof(d, row.report.candidate(ModelKind::PowerLaw).fit, cfg.bootstrap, cfg.seed,
                                      options.scan);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline int cmd_fit(const RunConfig& cfg, Io& io) {
    if (cfg.aic != "halved" && cfg.aic != "full") throw ConfigurationError("--aic must be halved or full");
    const bool halved = cfg.aic == "halved";
    const auto rows = run_fits(cfg, io);
    std::ostringstream os;
    if (cfg.format == "json") {
        nlohmann::json reports = nlohmann::json::array();
        for (const auto& r : rows) {
            auto j = to_json(r.report);
            j["rank_regression"] = to_json(*r.rank);
            j["bootstrap_p"] = r.gof_p ? nlohmann::json(*r.gof_p) : nlohmann::json(nullptr);
            reports.push_back(std::move(j));
        }
        os << nlohmann::json{{"config", cfg.to_json()}, {"reports", reports}}.dump(2) << '\n';
    } else {
        const std::string label = halved ? "AIC/2:" : "AIC:";
        os << config_line(cfg);
        os << "dataset\tx_min\tln(L)\tn_tail\talpha_est\talpha_sp\tr2";
        for (auto k : kAllModels) os << '\t' << label << short_name(k);
        os << "\tbest";
        if (cfg.bootstrap > 0) os << "\tgof_p";
        os << '\n';
        for (const auto& r : rows) {
            os << r.report.label << '\t' << format_number(r.report.x_min) << '\t' << format_number(r.report.log_likelihood)
               << '\t' << r.report.n_tail << '\t' << format_number(r.report.alpha_est) << '\t'
               << format_number(r.rank->alpha_sp) << '\t' << format_number(r.rank->r_squared);
            for (const auto& c : r.report.candidates) {
                os << '\t' << format_number(halved ? c.aic_halved : c.aic_full);
            }
            os << '\t' << short_name(r.report.best_by_aic);
            if (r.gof_p) os << '\t' << format_number(*r.gof_p);
            os << '\n';
        }
    }
    emit(cfg, os.str(), io);
    return kOk;
}

inline int cmd_compare(const RunConfig& cfg, Io& io) {
    std::vector<ModelKind> shown;
    for (const auto& name : cfg.only) {
        const auto k = parse_model_kind(name);
        if (!k || *k == ModelKind::PowerLaw) throw ConfigurationError("--only takes candidate models: PLWC LN exp str_exp Gamma");
        shown.push_back(*k);
    }
    if (shown.empty()) shown.assign(kAllModels.begin() + 1, kAllModels.end());
    if (cfg.rescan) throw ConfigurationError("compare needs a shared tail; --rescan is not available here");
    const auto rows = run_fits(cfg, io);

    std::ostringstream os;
    if (cfg.format == "json") {
        nlohmann::json reports = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json cells = nlohmann::json::array();
            for (auto k : shown) cells.push_back(to_json(r.report.lrt(k)));
            reports.push_back({{"label", r.report.label}, {"x_min", r.report.x_min}, {"n_tail", r.report.n_tail},
                               {"lrts", cells}});
        }
        os << nlohmann::json{{"config", cfg.to_json()}, {"reports", reports}}.dump(2) << '\n';
    } else {
        os << config_line(cfg);
        os << "# signed p: negative favours the candidate, * marks p <= 0.1\n";
        os << "dataset";
        for (auto k : shown) os << '\t' << short_name(k);
        os << '\n';
        for (const auto& r : rows) {
            os << r.report.label;
            for (auto k : shown) {
                const auto& l = r.report.lrt(k);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f", l.signed_p());
                os << '\t' << buf << (l.significant ? "*" : "");
            }
            os << '\n';
        }
    }
    emit(cfg, os.str(), io);
    return kOk;
}

inline std::vector<std::size_t> parse_sizes(const RunConfig& cfg, Io& io) {
    std::string text = cfg.sizes;
    if (std::filesystem::exists(cfg.sizes)) text = read_all(cfg.sizes, io.in);
    for (char& c : text) {
        if (c == ',') c = '\n';
    }
    std::vector<std::size_t> out;
    for (const auto& d : read_numeric(text, {}, "sizes")) {
        for (double v : d.values()) {
            if (v != std::floor(v)) throw InputError("sample sizes must be whole numbers");
            out.push_back(static_cast<std::size_t>(v));
        }
    }
    return out;
}

inline void emit_with_sidecar(const RunConfig& cfg, const std::string& tsv, const nlohmann::json& summary, Io& io) {
    if (cfg.format == "json") {
        emit(cfg, nlohmann::json{{"config", cfg.to_json()}, {"summary", summary}}.dump(2) + "\n", io);
        return;
    }
    std::string head = config_line(cfg);
    if (cfg.out.empty()) head += "# summary " + summary.dump() + "\n";
    emit(cfg, head + tsv, io);
    if (!cfg.out.empty()) {
        write_atomic(cfg.out + ".json", nlohmann::json{{"config", cfg.to_json()}, {"summary", summary}}.dump(2) + "\n");
    }
}

inline int cmd_random_sample(const RunConfig& cfg, Io& io) {
    const auto lists = load_lists(cfg, io);
    const auto grouping = group(cfg, lists);
    if (grouping.corpora.empty()) throw InsufficientDataError("no " + cfg.by + " passes the inclusion filters");
    std::vector<std::size_t> sizes;
    if (cfg.sizes.empty()) {
        for (const auto& c : grouping.corpora) sizes.push_back(c.member_count());
    } else {
        sizes = parse_sizes(cfg, io);
    }
    const auto prepared = prepare(corpus::flatten(grouping.corpora), cfg.nmax, mode_of(cfg), alphabet_of(cfg));
    const auto result = random_sample_experiment(prepared.units, prepared.index, sizes, cfg.seed, cfg.repeats);
    std::ostringstream tsv;
    write_random_sample_tsv(tsv, result);
    auto summary = random_sample_summary(result);
    summary["population"] = prepared.units.size();
    emit_with_sidecar(cfg, tsv.str(), summary, io);
    return kOk;
}

inline int cmd_growth(const RunConfig& cfg, Io& io) {
    if (cfg.family.empty()) throw ConfigurationError("experiment growth needs --family");
    const auto lists = load_lists(cfg, io);
    const auto grouping = group(cfg, lists);
    const corpus::FamilyCorpus* chosen = nullptr;
    for (const auto& c : grouping.corpora) {
        if (c.name == cfg.family) chosen = &c;
    }
    if (!chosen) {
        std::string avail;
        for (const auto& c : grouping.corpora) avail += (avail.empty() ? "" : ", ") + c.name;
        throw LookupError("unknown " + cfg.by + " '" + cfg.family + "'; available: " + (avail.empty() ? "(none)" : avail));
    }
    const auto curve = growth_curves(*chosen, cfg.iterations, cfg.seed, cfg.nmax, mode_of(cfg), alphabet_of(cfg));
    std::ostringstream tsv;
    write_growth_tsv(tsv, curve);
    emit_with_sidecar(cfg, tsv.str(), growth_summary(curve), io);
    return kOk;
}

// ---------------------------------------------------------------------------
// Raw ASJP list conversion

/// ASJP Swadesh item numbers of the 40-item list, in order; position + 1 is
/// the canonical item number.
inline constexpr std::array<int, 40> kAsjpItems{1,  2,  3,  11, 12, 18, 19, 21, 22, 23, 25, 28, 30, 31,
                                                34, 39, 40, 41, 43, 44, 47, 48, 51, 53, 54, 57, 58, 61,
                                                66, 72, 74, 75, 77, 82, 85, 86, 92, 95, 96, 100};

/// Best-effort reader for the ASJP list layout: a `NAME{FAMILY.GENUS|...}`
/// header, a metadata line ending in the ISO code, then `<item> <gloss>\t<forms> //`
/// lines. Forms are comma-separated, '%' marks a loan, XXX a missing item.
inline std::string convert_asjp(const std::string& text, std::ostream& err) {
    std::ostringstream os;
    for (std::size_t i = 0; i < corpus::kCanonicalHeader.size(); ++i) os << (i ? "\t" : "") << corpus::kCanonicalHeader[i];
    os << '\n';
    std::map<int, int> item_index;
    for (std::size_t i = 0; i < kAsjpItems.size(); ++i) item_index[kAsjpItems[i]] = static_cast<int>(i + 1);

    std::istringstream in(text);
    std::string line, doculect, family, genus, iso;
    bool expect_meta = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto brace = line.find('{');
        if (brace != std::string::npos && line.find('}') != std::string::npos && !line.empty() && line[0] != ' ' &&
            !std::isdigit(static_cast<unsigned char>(line[0]))) {
            doculect = trim(line.substr(0, brace));
            const auto close = line.find('}', brace);
            const auto cls = line.substr(brace + 1, close - brace - 1);
            const auto wals = cls.substr(0, cls.find('|'));
            const auto dot = wals.find('.');
            family = trim(wals.substr(0, dot));
            genus = dot == std::string::npos ? std::string() : trim(wals.substr(dot + 1));
            iso.clear();
            expect_meta = true;
            continue;
        }
        if (expect_meta) {
            expect_meta = false;
            std::istringstream meta(line);
            std::string last;
            for (std::string f; meta >> f;) last = f;
            const bool looks_iso = last.size() == 3 && std::all_of(last.begin(), last.end(), [](char c) { return c >= 'a' && c <= 'z'; });
            if (looks_iso) iso = last;
            continue;
        }
        if (doculect.empty() || line.empty()) continue;
        std::istringstream item_line(line);
        int item = 0;
        if (!(item_line >> item)) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        const auto it = item_index.find(item);
        if (it == item_index.end()) continue;
        const auto gloss = trim(line.substr(line.find_first_not_of(" 0123456789"), tab - line.find_first_not_of(" 0123456789")));
        std::string forms = line.substr(tab + 1);
        const auto slashes = forms.find("//");
        if (slashes != std::string::npos) forms = forms.substr(0, slashes);
        std::istringstream fs(forms);
        for (std::string form; std::getline(fs, form, ',');) {
            form = trim(form);
            if (form.empty() || form == "XXX") continue;
            bool loan = false;
            if (form.front() == '%') {
                loan = true;
                form = trim(form.substr(1));
            }
            if (form.empty()) continue;
            if (family.empty()) {
                err << "warning: line " << lineno << ": no family for doculect '" << doculect << "', skipped\n";
                continue;
            }
            os << family << '\t' << genus << '\t' << doculect << '\t' << iso << '\t' << it->second << '\t' << gloss
               << '\t' << form << '\t' << (loan ? 1 : 0) << '\n';
        }
    }
    return os.str();
}

inline int cmd_convert(const RunConfig& cfg, Io& io) {
    if (cfg.inputs.empty()) throw InputError("convert-asjp needs an input file");
    emit(cfg, convert_asjp(read_all(cfg.inputs.front(), io.in), io.err), io);
    return kOk;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Heavy-tail fitting and N-gram profiling", "heavytail"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--nmax", cfg.nmax, "largest n for N-gram profiles")->check(CLI::Range(1, corpus::kMaxN));
    app.add_option("--convention", cfg.convention, "continuous | discrete")->check(CLI::IsMember({"continuous", "discrete"}));
    app.add_option("--tokenize", cfg.tokenize, "raw | combined")->check(CLI::IsMember({"raw", "combined"}));
    app.add_option("--xmin", cfg.xmin, "scan, or a fixed lower bound");
    app.add_option("--bootstrap", cfg.bootstrap, "bootstrap replicates for the PL goodness-of-fit p (0 = off)");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--format", cfg.format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
    app.add_option("--out", cfg.out, "output file (default: standard output)");
    app.add_option("--by", cfg.by, "family | genus")->check(CLI::IsMember({"family", "genus"}));
    app.add_option("--alphabet", cfg.alphabet, "symbol inventory file");
    app.add_option("--sigma-threshold", cfg.sigma_threshold,
                   "admit a PL x_min only if (alpha-1)/sqrt(n_tail) is below this value");
    app.add_option("--aic", cfg.aic, "halved | full")->check(CLI::IsMember({"halved", "full"}));
    app.add_option("--min-items", cfg.min_items, "attested items needed per word list");
    app.add_option("--min-members", cfg.min_members, "member languages needed per family");

    auto* profile = app.add_subcommand("profile", "N-gram profile sizes per family or genus");
    profile->add_option("input", cfg.inputs, "canonical word-list TSV")->required();

    auto* fit = app.add_subcommand("fit", "x_min, PL fit, rank regression and AIC of all six models");
    fit->add_option("input", cfg.inputs, "numbers, one per line, or a TSV (default: standard input)");
    fit->add_option("--column", cfg.columns, "TSV column(s) to analyse");
    fit->add_flag("--rescan", cfg.rescan, "scan x_min separately for every model");

    auto* compare = app.add_subcommand("compare", "likelihood-ratio tests against the power law");
    compare->add_option("input", cfg.inputs, "numbers, one per line, or a TSV (default: standard input)");
    compare->add_option("--column", cfg.columns, "TSV column(s) to analyse");
    compare->add_option("--only", cfg.only, "restrict to these candidates");

    auto* experiment = app.add_subcommand("experiment", "sampling experiments on a word-list corpus");
    experiment->require_subcommand(1);
    auto* random_sample = experiment->add_subcommand("random-sample", "profiles of random language samples");
    random_sample->add_option("input", cfg.inputs, "canonical word-list TSV")->required();
    random_sample->add_option("--sizes", cfg.sizes, "sample sizes: comma list or file (default: family sizes)");
    random_sample->add_option("--repeats", cfg.repeats, "draws per sample size");
    auto* growth = experiment->add_subcommand("growth", "profile growth curves within one family");
    growth->add_option("input", cfg.inputs, "canonical word-list TSV")->required();
    growth->add_option("--family", cfg.family, "family (or genus with --by genus)");
    growth->add_option("--iterations", cfg.iterations, "draws per sample size");

    auto* convert = app.add_subcommand("convert-asjp", "raw ASJP lists to the canonical TSV");
    convert->add_option("input", cfg.inputs, "ASJP list file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    detail::Io io{in, out, err};
    try {
        if (*profile) {
            cfg.subcommand = "profile";
            return detail::cmd_profile(cfg, io);
        }
        if (*fit) {
            cfg.subcommand = "fit";
            return detail::cmd_fit(cfg, io);
        }
        if (*compare) {
            cfg.subcommand = "compare";
            return detail::cmd_compare(cfg, io);
        }
        if (*random_sample) {
            cfg.subcommand = "experiment random-sample";
            return detail::cmd_random_sample(cfg, io);
        }
        if (*growth) {
            cfg.subcommand = "experiment growth";
            return detail::cmd_growth(cfg, io);
        }
        if (*convert) {
            cfg.subcommand = "convert-asjp";
            return detail::cmd_convert(cfg, io);
        }
    } catch (const corpus::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const corpus::TokenizeError& e) {
        err << "tokenize error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const ConfigurationError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kInputError;
    } catch (const LookupError& e) {
        err << "lookup error: " << e.what() << '\n';
        return kLookupError;
    } catch (const InsufficientDataError& e) {
        err << "insufficient data: " << e.what() << '\n';
        return kDataError;
    } catch (const DegenerateDataError& e) {
        err << "degenerate data: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kInputError;
}

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"heavytail"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
}

}  // namespace heavytail::cli
