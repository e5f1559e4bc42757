#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jetlab/cli.hpp>

namespace
{

struct Output {
    bool json = false;
    bool quiet = false;
    bool timings = false;
};

int emit(const jetlab::cli::Report &r, const Output &o)
{
    if (o.json) {
        std::cout << jetlab::cli::report_to_json(r, o.timings).dump(2) << "\n";
    } else if (!o.quiet || r.status == jetlab::cli::Status::error) {
        std::ostream &os = r.status == jetlab::cli::Status::error ? std::cerr : std::cout;
        os << jetlab::cli::report_to_text(r);
        if (o.timings) {
            os << "elapsed " << r.elapsed_ms << " ms\n";
        }
    }
    return jetlab::cli::exit_code(r.status);
}

} // namespace

int main(int argc, char **argv)
{
    using namespace jetlab;
    CLI::App app{"jetlab: exact power-series computations for the automorphisms of the model hypersurface M"};
    app.fallthrough();
    app.require_subcommand(1);

    Output out;
    app.add_flag("--json", out.json, "Print a JSON report");
    app.add_flag("--quiet,-q", out.quiet, "Print nothing unless there is an error");
    app.add_flag("--timings", out.timings, "Include wall-clock timings");

    std::optional<unsigned> degree;
    auto add_degree = [&](CLI::App *sub) {
        sub->add_option("--degree,-d", degree, "Truncation degree (default 12, or $JETLAB_DEGREE)")
            ->check(CLI::Range(0U, 255U));
    };

    std::string params, params2;
    auto *verify = app.add_subcommand("verify", "Check that H^{eps,r}_{alpha,s} preserves M");
    verify->add_option("params", params, "Parameter JSON file or inline JSON")->required();
    add_degree(verify);

    std::vector<std::string> s_values;
    auto *ambiguity = app.add_subcommand("ambiguity", "Compare the maps H^{1,1}_{0,s} for several s");
    ambiguity->add_option("--s-values", s_values, "Rational s values, e.g. 1 -2 7/3")->required()->expected(1, -1);
    add_degree(ambiguity);

    unsigned order = cli::default_order;
    auto *recon = app.add_subcommand("reconstruct", "Rebuild a map order by order from its 2-jet");
    recon->add_option("input", params, "Lambda0, map or parameter JSON file or inline JSON")->required();
    recon->add_option("--order,-n", order, "w-order of the reconstruction")->capture_default_str()->check(CLI::Range(1U, 30U));

    unsigned n_max = 12;
    std::string a01_re = "1", a01_im = "0", b00_re = "1";
    auto *det = app.add_subcommand("det-table", "Tabulate det A_n by cofactor expansion and closed form");
    det->add_option("--n-max", n_max, "Largest n")->capture_default_str();
    det->add_option("--a01-re", a01_re, "Re a_0^1 (|a_0^1| = 1)")->capture_default_str();
    det->add_option("--a01-im", a01_im, "Im a_0^1")->capture_default_str();
    det->add_option("--b00", b00_re, "Real b_0^0")->capture_default_str();

    auto *compose = app.add_subcommand("compose", "Compare series composition with the group law");
    compose->add_option("first", params, "Parameters of H1 (applied last)")->required();
    compose->add_option("second", params2, "Parameters of H2 (applied first)")->required();
    add_degree(compose);

    auto *sphere = app.add_subcommand("sphere-check", "Check the projective form on the sphere, r > 0");
    sphere->add_option("params", params, "Parameter JSON file or inline JSON")->required();
    add_degree(sphere);

    std::string s_text;
    unsigned radius_order = cli::default_radius_order;
    auto *radius = app.add_subcommand("radius", "Estimate the radius of convergence in w of g for (1, 1, 0, s)");
    radius->add_option("--s", s_text, "Rational s")->required();
    radius->add_option("--order,-n", radius_order, "Highest w power used")->capture_default_str()->check(CLI::Range(10U, 255U));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    cli::Report r;
    auto deg = [&](cli::Report &rep) -> std::optional<unsigned> {
        try {
            return cli::resolve_degree(degree);
        } catch (const std::exception &e) {
            rep.status = cli::Status::error;
            rep.details["error"] = e.what();
            rep.lines = {std::string("error: ") + e.what()};
            return std::nullopt;
        }
    };

    if (*verify || *ambiguity || *compose || *sphere) {
        const std::string name = verify->parsed() ? "verify" : ambiguity->parsed() ? "ambiguity" : compose->parsed() ? "compose" : "sphere-check";
        r.command = name;
        const auto D = deg(r);
        if (!D) {
            return emit(r, out);
        }
        if (*verify) {
            r = cli::cmd_verify(params, *D);
        } else if (*ambiguity) {
            r = cli::cmd_ambiguity(s_values, *D);
        } else if (*compose) {
            r = cli::cmd_compose(params, params2, *D);
        } else {
            r = cli::cmd_sphere_check(params, *D);
        }
    } else if (*recon) {
        r = cli::cmd_reconstruct(params, order);
    } else if (*det) {
        try {
            const GaussRat a01 = GaussRat::parse(a01_re, a01_im);
            const GaussRat b00 = GaussRat::parse(b00_re, "0");
            r = cli::cmd_det_table(n_max, a01, b00);
        } catch (const std::exception &e) {
            r.command = "det-table";
            r.status = cli::Status::error;
            r.details["error"] = e.what();
            r.lines = {std::string("error: ") + e.what()};
        }
    } else if (*radius) {
        r = cli::cmd_radius(s_text, radius_order);
    }
    return emit(r, out);
}
