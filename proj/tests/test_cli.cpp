// Configuration parsing, CSV output and the command-line workflows
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rte/cli/commands.hpp"

using namespace rte;
namespace fs = std::filesystem;

namespace
{
std::string read_file(fs::path const& p)
{
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test
{
  protected:
    fs::path dir;

    void SetUp() override
    {
        auto const* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("rte_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path write_config(std::string const& name, std::string const& text)
    {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p;
    }

    int run(std::string const& cmd, fs::path const& cfg, std::string const& out = "out")
    {
        std::ostringstream o, e;
        int code = run_command(cmd, cfg.string(), (dir / out).string(), 1, false, o, e);
        last_err = e.str();
        return code;
    }

    Json read_json(std::string const& out, std::string const& name)
    {
        return Json::parse(read_file(dir / out / name));
    }

    std::string last_err;
};

std::string const small_medium = R"(
  "domain": {"type": "ball", "radius": 1.0},
  "medium": {
    "absorption": {"type": "constant", "value": 0.5},
    "scattering": {"type": "constant", "value": 0.3}
  },
  "solver": {"spatial_step": 0.125, "angular_order": 16, "tol": 1e-8})";

fs::path config_dir() { return RTE_CONFIG_DIR; }
}  // namespace

//---------------------------------------------------------------------------//
// PARSING
//---------------------------------------------------------------------------//
TEST(Config, SampleConfigsParse)
{
    for (auto const& entry : fs::directory_iterator(config_dir()))
    {
        auto c = parse_run_config(read_file(entry.path()));
        EXPECT_EQ(c.hash.size(), 16u) << entry.path();
    }
}

TEST(Config, RejectsUnknownKeysAndBadValues)
{
    std::string base = R"({"dimension": 2, "domain": {"type": "ball", "radius": 1.0},
      "medium": {"absorption": {"type": "constant", "value": 0.5},
                 "scattering": {"type": "zero"}})";
    EXPECT_NO_THROW(parse_run_config(base + "}"));
    EXPECT_THROW(parse_run_config(base + R"(, "bogus": 1})"), ConfigError);
    EXPECT_THROW(parse_run_config(base), ConfigError);
    EXPECT_THROW(parse_run_config(R"({"dimension": 4, "domain": {"type": "ball", "radius": 1},
      "medium": {"absorption": {"type": "constant", "value": 0.5}}})"),
                 ConfigError);
    EXPECT_THROW(parse_run_config(base + R"(, "solver": {"spatial_step": -1}})"), ConfigError);
    EXPECT_THROW(parse_run_config(base + R"(, "inversion": {"relaxation": 1.5}})"), ConfigError);
    EXPECT_THROW(parse_run_config(R"({"dimension": 2, "domain": {"type": "ball", "radius": 1.0},
      "medium": {"absorption": {"type": "constant", "value": 0.5, "extra": 2}}})"),
                 ConfigError);
    EXPECT_THROW(parse_run_config(R"({"dimension": 2, "domain": {"type": "cube", "radius": 1.0},
      "medium": {"absorption": {"type": "constant", "value": 0.5}}})"),
                 ConfigError);
    EXPECT_THROW(parse_run_config(R"({"dimension": 2, "domain": {"type": "ball", "radius": 0},
      "medium": {"absorption": {"type": "constant", "value": 0.5}}})"),
                 ConfigError);
}

TEST(Config, HashIsDeterministic)
{
    std::string text = read_file(config_dir() / "forward_2d.json");
    EXPECT_EQ(parse_run_config(text).hash, parse_run_config(text).hash);
    auto other = parse_run_config(read_file(config_dir() / "gauge_2d.json"));
    EXPECT_NE(parse_run_config(text).hash, other.hash);
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(Config, ParsedMediumMatchesDescription)
{
    auto c = parse_run_config(read_file(config_dir() / "reconstruct_3d.json"));
    auto dom = parse_domain<3>(c.domain);
    auto pair = parse_medium<3>(c.medium, dom);
    EXPECT_EQ(pair.absorption().kind(), "line_symmetric");
    EXPECT_EQ(pair.scattering().kind(), "dot_product");
    Vec<3> x{{0.1, 0, 0}};
    EXPECT_NEAR(pair.scattering()(x, Vec<3>::axis(0), Vec<3>::axis(0)), 0.3 * 1.75, 1e-14);
    EXPECT_NEAR(c.extraction.ray_step, 1e-3, 0);
}

//---------------------------------------------------------------------------//
// COMMANDS
//---------------------------------------------------------------------------//
TEST_F(CliTest, MalformedAndMissingConfigExitTwo)
{
    EXPECT_EQ(run("check", write_config("bad.json", "{ not json")), 2);
    EXPECT_NE(last_err.find("configuration error"), std::string::npos);
    EXPECT_EQ(run("check", dir / "missing.json"), 2);
    EXPECT_EQ(run("nonsense", config_dir() / "check_subcritical_2d.json"), 2);
}

TEST_F(CliTest, CheckExitCodes)
{
    EXPECT_EQ(run("check", config_dir() / "check_subcritical_2d.json", "sub"), 0);
    auto j = read_json("sub", "check.json");
    EXPECT_TRUE(j["subcritical_cs"]["satisfied"].get<bool>());
    EXPECT_NEAR(j["subcritical_cs"]["sup_tau_sigma"].get<double>(), 0.6, 1e-12);
    EXPECT_EQ(run("check", config_dir() / "check_supercritical_2d.json", "sup"), 1);
    EXPECT_EQ(read_json("sup", "check.json")["verdict"], "rejected");
}

TEST_F(CliTest, ForwardNonScatteringAndHeaders)
{
    auto cfg = write_config("fwd.json", R"({"dimension": 2,
      "domain": {"type": "ball", "radius": 1.0},
      "medium": {"absorption": {"type": "constant", "value": 0.5},
                 "scattering": {"type": "zero"}},
      "solver": {"spatial_step": 0.125, "angular_order": 16}})");
    ASSERT_EQ(run("forward", cfg), 0);
    std::ifstream csv(dir / "out" / "forward_decomposition.csv");
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line.rfind("# ", 0), 0u);
    std::getline(csv, line);
    EXPECT_EQ(line, "# config_hash: " + parse_run_config(read_file(cfg)).hash);
    std::getline(csv, line);  // column names
    int rows = 0;
    while (std::getline(csv, line))
    {
        auto comma = line.rfind(',');
        if (line.substr(comma + 1) != "remainder")
            continue;
        auto prev = line.rfind(',', comma - 1);
        EXPECT_LE(std::abs(std::stod(line.substr(prev + 1, comma - prev - 1))), 1e-12);
        ++rows;
    }
    EXPECT_GT(rows, 0);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical)
{
    auto cfg = write_config("fwd.json", "{\"dimension\": 2," + small_medium + "}");
    ASSERT_EQ(run("forward", cfg, "a"), 0);
    ASSERT_EQ(run("forward", cfg, "b"), 0);
    for (auto name : {"forward.json", "forward_decomposition.csv"})
        EXPECT_EQ(read_file(dir / "a" / name), read_file(dir / "b" / name)) << name;
}

TEST_F(CliTest, GaugeEquivalentAndNot)
{
    auto eq = write_config("eq.json", "{\"dimension\": 2," + small_medium
                                          + R"(, "gauge": {"type": "scaled_boundary", "scale": 0.8}})");
    EXPECT_EQ(run("gauge", eq, "eq"), 0);
    auto j = read_json("eq", "gauge.json");
    EXPECT_TRUE(j["equivalent"].get<bool>());
    EXPECT_LT(j["relative_l1_discrepancy"].get<double>(), 0.02);
    EXPECT_TRUE(fs::exists(dir / "eq" / "gauge_original.csv"));
    EXPECT_TRUE(fs::exists(dir / "eq" / "gauge_transformed.csv"));

    auto ne = write_config("ne.json", "{\"dimension\": 2," + small_medium + R"(,
      "medium_tilde": {"absorption": {"type": "constant", "value": 0.6},
                       "scattering": {"type": "constant", "value": 0.3}}})");
    EXPECT_EQ(run("gauge", ne, "ne"), 1);
    auto n = read_json("ne", "gauge.json");
    EXPECT_FALSE(n["equivalent"].get<bool>());
    EXPECT_GT(n["relative_l1_discrepancy"].get<double>(), 0.05);
}

TEST_F(CliTest, IdentityGaugeBitwiseIdentical)
{
    auto cfg = write_config("id.json", "{\"dimension\": 2," + small_medium
                                           + R"(, "gauge": {"type": "identity"}})");
    EXPECT_EQ(run("gauge", cfg), 0);
    auto j = read_json("out", "gauge.json");
    EXPECT_TRUE(j["bitwise_identical"].get<bool>());
    EXPECT_EQ(j["relative_l1_discrepancy"].get<double>(), 0.0);
}

TEST_F(CliTest, GaugeWithoutTargetIsUsageError)
{
    auto cfg = write_config("g.json", "{\"dimension\": 2," + small_medium + "}");
    EXPECT_EQ(run("gauge", cfg), 2);
}

TEST_F(CliTest, ExtractWritesLadders)
{
    auto cfg = write_config("x.json", R"({"dimension": 3,
      "domain": {"type": "ball", "radius": 1.0},
      "medium": {"absorption": {"type": "constant", "value": 0.5},
                 "scattering": {"type": "constant", "value": 0.1}},
      "solver": {"spatial_step": 0.25, "angular_order": 32, "tol": 1e-6},
      "extraction": {"ray_step": 0.005, "points": 2, "directions": 8,
                     "eps": [0.4, 0.2], "delta": [0.2, 0.1]}})");
    ASSERT_EQ(run("extract", cfg), 0);
    auto j = read_json("out", "extract.json");
    EXPECT_EQ(j["j_ladder"].size(), 2u);
    EXPECT_EQ(j["i_ladder"].size(), 2u);
    EXPECT_TRUE(fs::exists(dir / "out" / "extraction.csv"));
    EXPECT_TRUE(fs::exists(dir / "out" / "ladder_j.csv"));
    EXPECT_TRUE(fs::exists(dir / "out" / "ladder_i.csv"));
}

TEST_F(CliTest, ReconstructSymmetricMedium)
{
    ASSERT_EQ(run("reconstruct", config_dir() / "reconstruct_3d.json"), 0);
    auto j = read_json("out", "reconstruct.json");
    EXPECT_LT(j["k"]["sup_error"].get<double>(), 1e-6);
    EXPECT_LT(j["a"]["sup_error"].get<double>(), 1e-3);
}

TEST_F(CliTest, ReconstructIsotropic2DIncludesXray)
{
    ASSERT_EQ(run("reconstruct", config_dir() / "reconstruct_isotropic_2d.json"), 0);
    auto j = read_json("out", "reconstruct.json");
    EXPECT_LT(j["xray"]["relative_l2_error"].get<double>(), 0.05);
    EXPECT_TRUE(fs::exists(dir / "out" / "reconstruct_xray.csv"));
}

TEST_F(CliTest, ReconstructRefusesAsymmetricKernel)
{
    auto cfg = write_config("skew.json", R"({"dimension": 2,
      "domain": {"type": "ball", "radius": 1.0},
      "medium": {"absorption": {"type": "constant", "value": 0.5},
                 "scattering": {"type": "separable",
                                "field": {"type": "constant", "value": 0.2},
                                "poly": [1.0], "skew": 0.5}}})");
    EXPECT_EQ(run("reconstruct", cfg), 1);
    EXPECT_NE(last_err.find("hypothesis violated"), std::string::npos);
}
