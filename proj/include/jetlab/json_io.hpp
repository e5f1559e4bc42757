#ifndef JETLAB_JSON_IO_HPP
#define JETLAB_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <jetlab/automorphisms.hpp>
#include <jetlab/hypersurface.hpp>
#include <jetlab/jet_solver.hpp>
#include <jetlab/series_json.hpp>

namespace jetlab
{

inline json params_to_json(const AutParams &p)
{
    json j;
    j["eps"] = gauss_to_json(p.eps);
    j["r"] = rational_to_json(p.r);
    j["alpha"] = gauss_to_json(p.alpha);
    j["s"] = rational_to_json(p.s);
    return j;
}

inline AutParams params_from_json(const json &j)
{
    for (const char *key : {"eps", "r", "alpha", "s"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("parameter JSON is missing \"") + key + "\"");
        }
    }
    const GaussRat r = gauss_from_json(j.at("r"));
    const GaussRat s = gauss_from_json(j.at("s"));
    if (!r.is_real() || !s.is_real()) {
        throw std::invalid_argument("invalid parameters");
    }
    AutParams p{gauss_from_json(j.at("eps")), r.re(), gauss_from_json(j.at("alpha")), s.re()};
    validate(p);
    return p;
}

inline json group_to_json(const GroupElem &e)
{
    json j;
    j["zeta"] = gauss_to_json(e.zeta);
    j["alpha"] = gauss_to_json(e.alpha);
    j["s"] = rational_to_json(e.s);
    return j;
}

inline GroupElem group_from_json(const json &j)
{
    GroupElem e{gauss_from_json(j.at("zeta")), gauss_from_json(j.at("alpha")), rational_from_json(j.at("s"))};
    validate(e);
    return e;
}

inline json map_to_json(const MapFG &H)
{
    json j;
    j["f"] = series_to_json(H.f, map_var_names());
    j["g"] = series_to_json(H.g, map_var_names());
    return j;
}

inline MapFG map_from_json(const json &j)
{
    MapFG H{series_from_json(j.at("f")).series, series_from_json(j.at("g")).series};
    validate_normal_form(H);
    return H;
}

/// {"a01", "b00", "a10", "re_b20"} plus the derived entries.
inline json lambda_to_json(const Lambda0 &l)
{
    json j;
    j["a01"] = gauss_to_json(l.a01);
    j["b00"] = gauss_to_json(l.b00);
    j["a10"] = gauss_to_json(l.a10);
    j["re_b20"] = rational_to_json(l.re_b20.re());
    json tuple = json::array();
    for (const auto &x : l.as_tuple()) {
        tuple.push_back(gauss_to_json(x));
    }
    j["tuple"] = std::move(tuple);
    return j;
}

/// Accepts either the named form {"a01", "b00", "a10", "re_b20"} or the
/// full 7-tuple under "tuple". The tuple form is taken verbatim, so
/// inconsistent entries surface at validation.
inline Lambda0 lambda_from_json(const json &j)
{
    if (j.contains("tuple")) {
        const auto &t = j.at("tuple");
        if (!t.is_array() || t.size() != 7) {
            throw std::invalid_argument("lambda0 tuple must have 7 entries");
        }
        std::array<GaussRat, 7> v;
        for (std::size_t i = 0; i < 7; ++i) {
            v[i] = gauss_from_json(t[i]);
        }
        return Lambda0::from_tuple(v);
    }
    for (const char *key : {"a01", "b00", "a10", "re_b20"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("lambda0 JSON is missing \"") + key + "\"");
        }
    }
    const GaussRat re_b20 = gauss_from_json(j.at("re_b20"));
    if (!re_b20.is_real()) {
        throw std::invalid_argument("re_b20 must be real");
    }
    return Lambda0::make(gauss_from_json(j.at("a01")), gauss_from_json(j.at("b00")), gauss_from_json(j.at("a10")),
                         re_b20.re());
}

inline json jet_to_json(const JetData &jet)
{
    json j;
    j["max_order"] = jet.max_order;
    auto table = [](const auto &m) {
        json arr = json::array();
        for (const auto &[nj, v] : m) {
            json e;
            e["n"] = nj.first;
            e["j"] = nj.second;
            e["re"] = v.re().get_str();
            e["im"] = v.im().get_str();
            arr.push_back(std::move(e));
        }
        return arr;
    };
    j["a"] = table(jet.a);
    j["b"] = table(jet.b);
    return j;
}

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
}

} // namespace jetlab

#endif
