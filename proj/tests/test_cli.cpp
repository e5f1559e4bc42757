#include <cstdlib>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <jetlab/cli.hpp>

using namespace jetlab;
using cli::Status;

namespace
{

const std::string samples = JETLAB_SAMPLES_DIR;

std::string sample(const std::string &name)
{
    return samples + "/" + name;
}

int run(const std::string &args)
{
    const std::string cmd = std::string(JETLAB_CLI) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST(Cli, VerifyPassesForAutomorphism)
{
    const cli::Report r = cli::cmd_verify(sample("params_generic.json"), 12);
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_TRUE(r.details.at("phi_residual_zero").get<bool>());
    EXPECT_TRUE(r.details.at("defining_identity_holds").get<bool>());
}

TEST(Cli, VerifyRejectsInvalidParameters)
{
    const cli::Report r = cli::cmd_verify(R"({"eps": "2", "r": "1", "alpha": "0", "s": "0"})", 6);
    EXPECT_EQ(r.status, Status::error);
    EXPECT_EQ(cli::exit_code(r.status), 2);
}

TEST(Cli, AmbiguityReportsDifference)
{
    const cli::Report r = cli::cmd_ambiguity({"-2", "7/3"}, 4);
    ASSERT_EQ(r.status, Status::pass);
    const json &pair = r.details.at("pairs").at(0);
    EXPECT_TRUE(pair.at("two_jets_agree").get<bool>());
    EXPECT_FALSE(pair.at("three_jets_agree").get<bool>());
    EXPECT_EQ(pair.at("zw2_difference").at("re").get<std::string>(), "13/6");
}

TEST(Cli, AmbiguityEdgeCases)
{
    EXPECT_EQ(cli::cmd_ambiguity({"1"}, 4).status, Status::error);
    const cli::Report same = cli::cmd_ambiguity({"1", "1"}, 4);
    EXPECT_EQ(same.status, Status::pass);
    EXPECT_TRUE(same.details.at("pairs").at(0).at("identical_maps").get<bool>());
}

TEST(Cli, ReconstructFromLambda)
{
    const cli::Report r = cli::cmd_reconstruct(sample("lambda0.json"), 5);
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_EQ(r.details.at("steps").size(), 6U);
    EXPECT_TRUE(r.details.at("residual_zero").get<bool>());
}

TEST(Cli, ReconstructUnrealizable)
{
    const cli::Report r = cli::cmd_reconstruct(sample("lambda0_unrealizable.json"), 5);
    EXPECT_EQ(r.status, Status::fail);
    EXPECT_NE(r.details.at("error").get<std::string>().find("jet not realizable"), std::string::npos);
}

TEST(Cli, ReconstructFlagsNonAutomorphismInput)
{
    const cli::Report r = cli::cmd_reconstruct(sample("not_automorphism.json"), 4);
    EXPECT_EQ(r.status, Status::fail);
    EXPECT_FALSE(r.details.at("matches_input_map").get<bool>());
}

TEST(Cli, DetTable)
{
    const cli::Report r = cli::cmd_det_table(12);
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_EQ(r.details.at("rows").at(2).at("cofactor").at("re").get<std::string>(), "-1244160");
    EXPECT_EQ(cli::cmd_det_table(2).status, Status::error);
}

TEST(Cli, ComposeAndSphere)
{
    EXPECT_EQ(cli::cmd_compose(sample("params_generic.json"), sample("params_second.json"), 8).status, Status::pass);
    EXPECT_EQ(cli::cmd_sphere_check(sample("sphere.json"), 10).status, Status::pass);
    EXPECT_EQ(cli::cmd_sphere_check(sample("params_second.json"), 10).status, Status::error);
}

TEST(Cli, Radius)
{
    const cli::Report r = cli::cmd_radius("4", 40);
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_EQ(cli::cmd_radius("0", 40).status, Status::error);
}

TEST(Cli, JsonOutputIsDeterministic)
{
    const json a = cli::report_to_json(cli::cmd_verify(sample("params_generic.json"), 6));
    const json b = cli::report_to_json(cli::cmd_verify(sample("params_generic.json"), 6));
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_FALSE(a.contains("timing_ms"));
}

TEST(CliBinary, ExitCodes)
{
    EXPECT_EQ(run("verify " + sample("params_generic.json") + " -d 8"), 0);
    EXPECT_EQ(run("verify /nonexistent.json"), 2);
    EXPECT_EQ(run("reconstruct " + sample("lambda0_unrealizable.json")), 1);
    EXPECT_EQ(run("ambiguity --s-values 1"), 2);
    EXPECT_EQ(run("det-table --n-max 2"), 2);
    EXPECT_EQ(run("sphere-check " + sample("sphere.json") + " --json"), 0);
    EXPECT_EQ(run("radius --s 1/4"), 0);
    EXPECT_EQ(run("no-such-command"), 2);
    EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, DegreeFromEnvironment)
{
    ::unsetenv("JETLAB_DEGREE");
    EXPECT_EQ(cli::resolve_degree(std::nullopt), cli::default_degree);
    ::setenv("JETLAB_DEGREE", "5", 1);
    EXPECT_EQ(cli::resolve_degree(std::nullopt), 5U);
    EXPECT_EQ(cli::resolve_degree(9U), 9U);
    ::setenv("JETLAB_DEGREE", "junk", 1);
    EXPECT_THROW(cli::resolve_degree(std::nullopt), std::invalid_argument);
    EXPECT_EQ(run("verify " + sample("params_generic.json")), 2);
    ::unsetenv("JETLAB_DEGREE");
}
