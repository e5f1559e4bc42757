#ifndef JETLAB_CLI_HPP
#define JETLAB_CLI_HPP

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <jetlab/automorphisms.hpp>
#include <jetlab/hypersurface.hpp>
#include <jetlab/jet_solver.hpp>
#include <jetlab/json_io.hpp>

// Command implementations behind the jetlab executable. Each command
// returns a Report; the executable only parses flags and prints.

namespace jetlab::cli
{

inline constexpr unsigned default_degree = 12;
inline constexpr unsigned default_order = 8;
inline constexpr unsigned default_radius_order = 40;
inline constexpr double radius_tolerance = 0.05;

enum class Status { pass, fail, error };

inline const char *status_name(Status s)
{
    switch (s) {
        case Status::pass:
            return "pass";
        case Status::fail:
            return "fail";
        default:
            return "error";
    }
}

/// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad
/// input or usage.
inline int exit_code(Status s)
{
    switch (s) {
        case Status::pass:
            return 0;
        case Status::fail:
            return 1;
        default:
            return 2;
    }
}

struct Report {
    std::string command;
    Status status = Status::error;
    json details = json::object();
    std::vector<std::string> lines; // human-readable summary
    double elapsed_ms = 0.0;
};

inline json report_to_json(const Report &r, bool with_timing = false)
{
    json j;
    j["command"] = r.command;
    j["status"] = status_name(r.status);
    j["details"] = r.details;
    if (with_timing) {
        j["timing_ms"] = r.elapsed_ms;
    }
    return j;
}

inline std::string report_to_text(const Report &r)
{
    std::string s;
    for (const auto &l : r.lines) {
        s += l + "\n";
    }
    s += r.command + ": " + (r.status == Status::pass ? "PASS" : r.status == Status::fail ? "FAIL" : "ERROR") + "\n";
    return s;
}

/// Explicit flag, then JETLAB_DEGREE, then the default.
inline unsigned resolve_degree(std::optional<unsigned> flag)
{
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("JETLAB_DEGREE"); env != nullptr && *env != '\0') {
        try {
            std::size_t pos = 0;
            const long v = std::stol(env, &pos);
            if (pos == std::string(env).size() && v >= 0 && v <= static_cast<long>(MultiSeries::max_degree)) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
        throw std::invalid_argument(std::string("JETLAB_DEGREE is not a valid degree: '") + env + "'");
    }
    return default_degree;
}

/// Argument text starting with '{' is inline JSON, otherwise a file path.
inline json load_input(const std::string &arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') {
        try {
            return json::parse(arg);
        } catch (const json::parse_error &e) {
            throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
        }
    }
    return read_json_file(arg);
}

namespace detail
{

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runs a command body, mapping exceptions onto report statuses.
// unrealizable_jet is a mathematical outcome (fail); everything else that
// escapes is an input error.
inline Report guarded(const std::string &command, const std::function<void(Report &)> &body)
{
    Report r;
    r.command = command;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const unrealizable_jet &e) {
        r.status = Status::fail;
        r.details["error"] = e.what();
        r.lines.push_back(e.what());
    } catch (const std::exception &e) {
        r.status = Status::error;
        r.details = json::object();
        r.details["error"] = e.what();
        r.lines = {std::string("error: ") + e.what()};
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline json term_to_json(const std::optional<std::pair<MultiSeries::Exponents, GaussRat>> &t)
{
    if (!t) {
        return nullptr;
    }
    json j;
    j["e"] = t->first;
    j["re"] = t->second.re().get_str();
    j["im"] = t->second.im().get_str();
    return j;
}

inline json poly_to_json(const std::vector<GaussRat> &p)
{
    json arr = json::array();
    for (const auto &c : p) {
        arr.push_back(gauss_to_json(c));
    }
    return arr;
}

} // namespace detail

inline Report cmd_verify(const std::string &params_arg, unsigned D)
{
    return detail::guarded("verify", [&](Report &r) {
        const AutParams p = params_from_json(load_input(params_arg));
        if (D < 1) {
            throw std::invalid_argument("degree must be at least 1");
        }
        const MapFG H = build_automorphism(p, D);
        const MultiSeries phi = phi_residual(H);
        const MultiSeries full = defining_residual(H);
        const bool phi_zero = phi.is_zero();
        const bool full_zero = full.is_zero();
        r.details["params"] = params_to_json(p);
        r.details["degree"] = D;
        r.details["phi_residual_zero"] = phi_zero;
        r.details["defining_identity_holds"] = full_zero;
        r.details["first_nonzero_phi"] = detail::term_to_json(first_nonzero(phi));
        r.status = phi_zero && full_zero ? Status::pass : Status::fail;
        r.lines.push_back("params " + p.to_string() + " at degree " + std::to_string(D));
        r.lines.push_back(std::string("  Phi residual ") + (phi_zero ? "vanishes" : "is NONZERO"));
        r.lines.push_back(std::string("  defining identity ") + (full_zero ? "holds" : "FAILS"));
    });
}

inline Report cmd_ambiguity(const std::vector<std::string> &s_values, unsigned D)
{
    return detail::guarded("ambiguity", [&](Report &r) {
        if (s_values.size() < 2) {
            throw std::invalid_argument("ambiguity needs at least two s values");
        }
        if (D < 3) {
            throw std::invalid_argument("ambiguity needs degree >= 3");
        }
        std::vector<Rational> s;
        for (const auto &v : s_values) {
            s.push_back(jetlab::detail::parse_rational(v));
        }
        bool ok = true;
        json pairs = json::array();
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t k = i + 1; k < s.size(); ++k) {
                const MapFG H1 = build_automorphism({GaussRat(1), Rational(1), GaussRat(), s[i]}, D);
                const MapFG H2 = build_automorphism({GaussRat(1), Rational(1), GaussRat(), s[k]}, D);
                json pj;
                pj["s"] = s[i].get_str();
                pj["s_prime"] = s[k].get_str();
                if (s[i] == s[k]) {
                    const bool same = H1 == H2;
                    pj["identical_maps"] = same;
                    ok = ok && same;
                    r.lines.push_back("s = " + s[i].get_str() + ", s' = " + s[k].get_str() + ": identical maps");
                    pairs.push_back(std::move(pj));
                    continue;
                }
                const bool two = determinacy_check(H1, H2, 2);
                const bool three = determinacy_check(H1, H2, 3);
                const GaussRat diff = H2.f.coeff({1, 2}) - H1.f.coeff({1, 2});
                const GaussRat expected{Rational((s[k] - s[i]) / 2)};
                json differing = json::array();
                const MultiSeries df = H2.f.truncated(3) - H1.f.truncated(3);
                const MultiSeries dg = H2.g.truncated(2) - H1.g.truncated(2);
                for (const auto &t : df.terms()) {
                    differing.push_back(json{{"component", "f"}, {"e", df.exponents(t.key)}});
                }
                for (const auto &t : dg.terms()) {
                    differing.push_back(json{{"component", "g"}, {"e", dg.exponents(t.key)}});
                }
                const bool pass = two && !three && diff == expected;
                ok = ok && pass;
                pj["two_jets_agree"] = two;
                pj["three_jets_agree"] = three;
                pj["zw2_difference"] = gauss_to_json(diff);
                pj["expected_difference"] = gauss_to_json(expected);
                pj["differing_low_terms"] = std::move(differing);
                pj["pass"] = pass;
                pairs.push_back(std::move(pj));
                r.lines.push_back("s = " + s[i].get_str() + ", s' = " + s[k].get_str() + ": 2-jets "
                                  + (two ? "agree" : "DIFFER") + ", 3-jets " + (three ? "AGREE" : "differ")
                                  + ", z w^2 coefficient of f differs by " + diff.to_string());
            }
        }
        r.details["degree"] = D;
        r.details["pairs"] = std::move(pairs);
        r.status = ok ? Status::pass : Status::fail;
    });
}

inline json step_to_json(const StepReport &s)
{
    json j;
    j["n"] = s.n;
    j["f_degree_bound"] = s.f_degree_bound;
    j["g_degree_bound"] = s.g_degree_bound;
    j["escalations"] = s.escalations;
    j["unknowns"] = s.unknowns;
    j["equations"] = s.equations;
    j["rank"] = s.rank;
    j["f_n"] = detail::poly_to_json(s.f_n);
    j["g_n"] = detail::poly_to_json(s.g_n);
    return j;
}

/// Forced coefficients visible in a reconstruction: a_1^1 = b_1^0 = 0,
/// a_2^0 = b_2^1 = 0 and Im b_2^0 = -b_0^0 |a_1^0|^2.
inline json forced_structure(const Reconstruction &rec, const Lambda0 &l, bool &ok)
{
    json j;
    ok = true;
    auto put = [&](const char *name, bool v) {
        j[name] = v;
        ok = ok && v;
    };
    if (rec.steps.size() > 1) {
        put("a11_zero", rec.a(1, 1).is_zero());
        put("b10_zero", rec.b(1, 0).is_zero());
        put("a10_matches", rec.a(1, 0) == l.a10);
    }
    if (rec.steps.size() > 2) {
        put("a20_zero", rec.a(2, 0).is_zero());
        put("b21_zero", rec.b(2, 1).is_zero());
        put("im_b20_forced", rec.b(2, 0).im() == -(l.b00.re() * l.a10.norm()));
        put("re_b20_matches", rec.b(2, 0).re() == l.re_b20.re());
    }
    return j;
}

inline Report cmd_reconstruct(const std::string &input_arg, unsigned N)
{
    return detail::guarded("reconstruct", [&](Report &r) {
        const json in = load_input(input_arg);
        std::optional<MapFG> source;
        Lambda0 l;
        if (in.contains("f") && in.contains("g")) {
            source = map_from_json(in);
            l = lambda0_from_jet(extract_jet(*source, 2));
            r.details["input"] = "map";
        } else if (in.contains("eps")) {
            const AutParams p = params_from_json(in);
            source = build_automorphism(p, std::max(N, 2U));
            l = lambda0_from_jet(extract_jet(*source, 2));
            r.details["input"] = "params";
        } else {
            l = lambda_from_json(in.contains("lambda0") ? in.at("lambda0") : in);
            r.details["input"] = "lambda0";
        }
        if (N < 1) {
            throw std::invalid_argument("order must be at least 1");
        }
        r.details["order"] = N;
        r.details["lambda0"] = lambda_to_json(l);
        const Reconstruction rec = reconstruct(l, N);
        const bool residual_zero = phi_residual(rec.map).is_zero();
        const AutParams p = params_from_lambda(l);
        const bool closed_form = rec.map == build_automorphism(p, N);
        bool forced_ok = true;
        r.details["forced"] = forced_structure(rec, l, forced_ok);
        bool source_ok = true;
        if (source) {
            const unsigned k = std::min(N, source->trunc_degree());
            source_ok = MapFG{source->f.truncated(k), source->g.truncated(k)} == MapFG{rec.map.f.truncated(k), rec.map.g.truncated(k)};
            r.details["matches_input_map"] = source_ok;
        }
        json steps = json::array();
        for (const auto &s : rec.steps) {
            steps.push_back(step_to_json(s));
        }
        r.details["steps"] = std::move(steps);
        r.details["residual_zero"] = residual_zero;
        r.details["params"] = params_to_json(p);
        r.details["matches_closed_form"] = closed_form;
        r.details["map"] = map_to_json(rec.map);
        r.status = residual_zero && closed_form && forced_ok && source_ok ? Status::pass : Status::fail;
        for (const auto &s : rec.steps) {
            r.lines.push_back("order " + std::to_string(s.n) + ": " + std::to_string(s.unknowns) + " unknowns, "
                              + std::to_string(s.equations) + " equations, rank " + std::to_string(s.rank)
                              + (s.escalations ? ", escalated " + std::to_string(s.escalations) + "x" : ""));
        }
        r.lines.push_back("parameters " + p.to_string());
        r.lines.push_back(std::string("residual ") + (residual_zero ? "vanishes" : "is NONZERO") + "; closed form "
                          + (closed_form ? "matches" : "DIFFERS"));
        if (source) {
            r.lines.push_back(std::string("input map ") + (source_ok ? "agrees with" : "DIFFERS from") + " the reconstruction");
        }
    });
}

inline Report cmd_det_table(unsigned n_max, const GaussRat &a01 = GaussRat(1), const GaussRat &b00 = GaussRat(1))
{
    return detail::guarded("det-table", [&](Report &r) {
        if (n_max < 3) {
            throw std::invalid_argument("det-table needs --n-max >= 3");
        }
        bool ok = true;
        json rows = json::array();
        for (unsigned n = 1; n <= n_max; ++n) {
            const GaussRat cof = det_A_n(build_A_n(n, a01, b00));
            const GaussRat closed = det_A_n_closed_form(n, a01, b00);
            const bool eq = cof == closed;
            ok = ok && eq;
            json row;
            row["n"] = n;
            row["cofactor"] = gauss_to_json(cof);
            row["closed_form"] = gauss_to_json(closed);
            row["equal"] = eq;
            rows.push_back(std::move(row));
            r.lines.push_back("n = " + std::to_string(n) + ": " + cof.to_string() + (eq ? "" : "  != " + closed.to_string()));
        }
        r.details["a01"] = gauss_to_json(a01);
        r.details["b00"] = gauss_to_json(b00);
        r.details["rows"] = std::move(rows);
        r.status = ok ? Status::pass : Status::fail;
    });
}

inline Report cmd_compose(const std::string &first_arg, const std::string &second_arg, unsigned D)
{
    return detail::guarded("compose", [&](Report &r) {
        const AutParams p1 = params_from_json(load_input(first_arg));
        const AutParams p2 = params_from_json(load_input(second_arg));
        if (D < 2) {
            throw std::invalid_argument("compose needs degree >= 2");
        }
        const MapFG C = compose_maps(build_automorphism(p1, D), build_automorphism(p2, D));
        const AutParams predicted = predicted_composition(p1, p2);
        const AutParams observed = params_from_jet(extract_jet(C, 2));
        const bool series_match = C == build_automorphism(predicted, D);
        const bool params_match = observed == predicted;
        r.details["degree"] = D;
        r.details["first"] = params_to_json(p1);
        r.details["second"] = params_to_json(p2);
        r.details["first_group"] = group_to_json(params_to_group(p1));
        r.details["second_group"] = group_to_json(params_to_group(p2));
        r.details["predicted"] = params_to_json(predicted);
        r.details["from_series"] = params_to_json(observed);
        r.details["series_match"] = series_match;
        r.status = series_match && params_match ? Status::pass : Status::fail;
        r.lines.push_back("H1 o H2 with H1 = " + p1.to_string() + ", H2 = " + p2.to_string());
        r.lines.push_back("  group law predicts " + predicted.to_string());
        r.lines.push_back("  series gives       " + observed.to_string());
        r.lines.push_back(std::string("  series through degree ") + std::to_string(D) + (series_match ? " match" : " DIFFER"));
    });
}

inline Report cmd_sphere_check(const std::string &params_arg, unsigned D)
{
    return detail::guarded("sphere-check", [&](Report &r) {
        const AutParams p = params_from_json(load_input(params_arg));
        if (sgn(p.r) <= 0) {
            throw std::invalid_argument("sphere automorphisms take r > 0");
        }
        const MultiSeries res = sphere_residual(build_sphere_automorphism(p, D));
        r.details["params"] = params_to_json(p);
        r.details["degree"] = D;
        r.details["residual_zero"] = res.is_zero();
        r.details["first_nonzero"] = detail::term_to_json(first_nonzero(res));
        r.status = res.is_zero() ? Status::pass : Status::fail;
        r.lines.push_back("sphere map " + p.to_string() + ": residual "
                          + (res.is_zero() ? "vanishes" : "is NONZERO") + " through degree " + std::to_string(D));
    });
}

inline Report cmd_radius(const std::string &s_text, unsigned order)
{
    return detail::guarded("radius", [&](Report &r) {
        const Rational s = jetlab::detail::parse_rational(s_text);
        const RadiusEstimate est = radius_estimate({GaussRat(1), Rational(1), GaussRat(), s}, order);
        const double expected = 1.0 / std::sqrt(std::fabs(s.get_d()));
        const double rel = std::fabs(est.value - expected) / expected;
        r.details["s"] = s.get_str();
        r.details["order"] = order;
        r.details["approx_radius"] = est.value;
        r.details["approx_root_test"] = est.root_test;
        r.details["approx_expected"] = expected;
        r.details["approx_relative_error"] = rel;
        r.details["tolerance"] = radius_tolerance;
        r.status = rel < radius_tolerance ? Status::pass : Status::fail;
        std::ostringstream os;
        os << "s = " << s.get_str() << ": approx radius " << est.value << " (root test " << est.root_test
           << "), 1/sqrt|s| = " << expected << ", relative error " << rel;
        r.lines.push_back(os.str());
    });
}

} // namespace jetlab::cli

#endif
