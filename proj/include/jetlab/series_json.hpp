#ifndef JETLAB_SERIES_JSON_HPP
#define JETLAB_SERIES_JSON_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <jetlab/gauss_rat.hpp>
#include <jetlab/multi_series.hpp>

namespace jetlab
{

using json = nlohmann::ordered_json;

inline json rational_to_json(const Rational &q)
{
    return q.get_str();
}

inline Rational rational_from_json(const json &j)
{
    if (j.is_string()) {
        return detail::parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    throw std::invalid_argument("expected a fraction string, got " + j.dump());
}

inline json gauss_to_json(const GaussRat &x)
{
    json j;
    j["re"] = x.re().get_str();
    j["im"] = x.im().get_str();
    return j;
}

/// Accepts {"re": "p/q", "im": "p/q"} (either part optional) or a bare
/// fraction string for a real value.
inline GaussRat gauss_from_json(const json &j)
{
    if (j.is_object()) {
        Rational re = j.contains("re") ? rational_from_json(j.at("re")) : Rational(0);
        Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
        return GaussRat(std::move(re), std::move(im));
    }
    return GaussRat(rational_from_json(j));
}

inline std::vector<std::string> default_var_names(std::size_t nvars)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return names;
}

/// {"nvars", "trunc_degree", "vars", "terms": [{"e", "re", "im"}, ...]} with
/// terms in ascending graded-lex order.
inline json series_to_json(const MultiSeries &s, std::vector<std::string> names = {})
{
    if (names.empty()) {
        names = default_var_names(s.nvars());
    }
    if (names.size() != s.nvars()) {
        throw std::invalid_argument("variable name count does not match nvars");
    }
    json j;
    j["nvars"] = s.nvars();
    j["trunc_degree"] = s.trunc_degree();
    j["vars"] = names;
    json terms = json::array();
    for (const auto &t : s.terms()) {
        json tj;
        tj["e"] = s.exponents(t.key);
        tj["re"] = t.coeff.re().get_str();
        tj["im"] = t.coeff.im().get_str();
        terms.push_back(std::move(tj));
    }
    j["terms"] = std::move(terms);
    return j;
}

struct NamedSeries {
    MultiSeries series;
    std::vector<std::string> vars;
};

inline NamedSeries series_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("nvars") || !j.contains("trunc_degree") || !j.contains("terms")) {
        throw std::invalid_argument("series JSON needs nvars, trunc_degree and terms");
    }
    const auto nvars = j.at("nvars").get<std::size_t>();
    const auto D = j.at("trunc_degree").get<unsigned>();
    std::vector<std::string> vars =
        j.contains("vars") ? j.at("vars").get<std::vector<std::string>>() : default_var_names(nvars);
    if (vars.size() != nvars) {
        throw std::invalid_argument("series JSON: vars has wrong length");
    }
    std::vector<std::pair<MultiSeries::Exponents, GaussRat>> terms;
    for (const auto &tj : j.at("terms")) {
        auto e = tj.at("e").get<MultiSeries::Exponents>();
        unsigned total = 0;
        for (auto x : e) {
            total += x;
        }
        if (total > D) {
            throw std::invalid_argument("series JSON: term of degree " + std::to_string(total)
                                        + " exceeds trunc_degree");
        }
        GaussRat c(tj.contains("re") ? rational_from_json(tj.at("re")) : Rational(0),
                   tj.contains("im") ? rational_from_json(tj.at("im")) : Rational(0));
        terms.emplace_back(std::move(e), std::move(c));
    }
    return {MultiSeries::from_terms(nvars, D, terms), std::move(vars)};
}

} // namespace jetlab

#endif
