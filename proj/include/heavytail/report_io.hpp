#pragma once

// JSON form of ComparisonReport, and the reader that restores it.

#include <string>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/selection.hpp"
#include "json.hpp"

namespace heavytail {

inline nlohmann::json to_json(const TailFit& f) {
    nlohmann::json params = nlohmann::json::array();
    for (int i = 0; i < f.model.parameter_count(); ++i) params.push_back(f.model.param(static_cast<std::size_t>(i)));
    return {{"kind", short_name(f.kind())},
            {"params", params},
            {"x_min", f.x_min},
            {"n_tail", f.n_tail},
            {"log_likelihood", f.log_likelihood},
            {"ks_D", f.ks_D},
            {"converged", f.converged}};
}

inline nlohmann::json to_json(const LrtResult& l) {
    return {{"candidate", short_name(l.candidate)}, {"R", l.R},
            {"p", l.p},                               {"signed_p", l.signed_p()},
            {"favored", favored_name(l.favored)},     {"significant", l.significant},
            {"nested", l.nested}};
}

inline nlohmann::json to_json(const ComparisonReport& r) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : r.candidates) {
        auto j = to_json(c.fit);
        j["aic_full"] = c.aic_full;
        j["aic_halved"] = c.aic_halved;
        cands.push_back(std::move(j));
    }
    nlohmann::json lrts = nlohmann::json::array();
    for (const auto& l : r.lrts) lrts.push_back(to_json(l));
    return {{"label", r.label},
            {"support", support_name(r.support)},
            {"x_min", r.x_min},
            {"n_tail", r.n_tail},
            {"alpha_est", r.alpha_est},
            {"log_likelihood", r.log_likelihood},
            {"best_by_aic", short_name(r.best_by_aic)},
            {"candidates", std::move(cands)},
            {"lrts", std::move(lrts)}};
}

namespace detail {

inline ModelKind kind_from_json(const nlohmann::json& j) {
    const auto name = j.get<std::string>();
    const auto kind = parse_model_kind(name);
    if (!kind) throw std::invalid_argument("report JSON: unknown model '" + name + "'");
    return *kind;
}

inline Favored favored_from_json(const nlohmann::json& j) {
    const auto name = j.get<std::string>();
    for (auto f : {Favored::PowerLaw, Favored::Candidate, Favored::Undecided}) {
        if (name == favored_name(f)) return f;
    }
    throw std::invalid_argument("report JSON: unknown favored value '" + name + "'");
}

}  // namespace detail

inline ComparisonReport report_from_json(const nlohmann::json& j) {
    ComparisonReport r;
    r.label = j.at("label").get<std::string>();
    const auto support = parse_support(j.at("support").get<std::string>());
    if (!support) throw std::invalid_argument("report JSON: unknown support");
    r.support = *support;
    r.x_min = j.at("x_min").get<double>();
    r.n_tail = j.at("n_tail").get<std::size_t>();
    r.alpha_est = j.at("alpha_est").get<double>();
    r.log_likelihood = j.at("log_likelihood").get<double>();
    r.best_by_aic = detail::kind_from_json(j.at("best_by_aic"));
    for (const auto& c : j.at("candidates")) {
        const ModelKind kind = detail::kind_from_json(c.at("kind"));
        Params p{0.0, 0.0};
        const auto& params = c.at("params");
        if (params.size() != static_cast<std::size_t>(parameter_count(kind))) {
            throw std::invalid_argument("report JSON: wrong parameter count for " + std::string(short_name(kind)));
        }
        for (std::size_t i = 0; i < params.size(); ++i) p[i] = params[i].get<double>();
        const double xm = c.at("x_min").get<double>();
        TailFit fit{ModelSpec(kind, p, xm, r.support), xm, c.at("n_tail").get<std::size_t>(),
                    c.at("log_likelihood").get<double>(), c.at("ks_D").get<double>(), c.at("converged").get<bool>()};
        r.candidates.push_back({kind, fit, c.at("aic_full").get<double>(), c.at("aic_halved").get<double>()});
    }
    for (const auto& l : j.at("lrts")) {
        r.lrts.push_back({detail::kind_from_json(l.at("candidate")), l.at("R").get<double>(), l.at("p").get<double>(),
                          detail::favored_from_json(l.at("favored")), l.at("significant").get<bool>(),
                          l.at("nested").get<bool>()});
    }
    return r;
}

inline bool operator==(const TailFit& a, const TailFit& b) {
    return a.model == b.model && a.x_min == b.x_min && a.n_tail == b.n_tail && a.log_likelihood == b.log_likelihood &&
           a.ks_D == b.ks_D && a.converged == b.converged;
}

inline bool operator==(const CandidateResult& a, const CandidateResult& b) {
    return a.kind == b.kind && a.fit == b.fit && a.aic_full == b.aic_full && a.aic_halved == b.aic_halved;
}

inline bool operator==(const LrtResult& a, const LrtResult& b) {
    return a.candidate == b.candidate && a.R == b.R && a.p == b.p && a.favored == b.favored &&
           a.significant == b.significant && a.nested == b.nested;
}

inline bool operator==(const ComparisonReport& a, const ComparisonReport& b) {
    return a.label == b.label && a.support == b.support && a.x_min == b.x_min && a.n_tail == b.n_tail &&
           a.alpha_est == b.alpha_est && a.log_likelihood == b.log_likelihood && a.candidates == b.candidates &&
           a.lrts == b.lrts && a.best_by_aic == b.best_by_aic;
}

}  // namespace heavytail
