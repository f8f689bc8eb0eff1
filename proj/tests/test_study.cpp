#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "vem3/study.hpp"

using namespace vem3;

namespace {

std::string tmp_path(const std::string& name)
{
    return std::string(VEM3_TEST_TMPDIR) + "/" + name;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

StudyConfig small_study()
{
    StudyConfig c;
    c.levels = {1, 2, 4};
    return c;
}

} // namespace

TEST(Study, TableShape)
{
    std::ostringstream os;
    const ConvergenceRecord rec = run_study(small_study(), os);
    ASSERT_EQ(rec.levels.size(), 3u);
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "Table: Error");
    std::getline(lines, line);
    std::istringstream header(line);
    std::vector<std::string> cols{std::istream_iterator<std::string>(header), {}};
    EXPECT_EQ(cols, (std::vector<std::string>{"#Dof", "h", "||u-u_h||", "|u-u_h|_1"}));
    for (int k = 0; k < 3; ++k) {
        std::getline(lines, line);
        std::istringstream row(line);
        std::vector<std::string> vals{std::istream_iterator<std::string>(row), {}};
        EXPECT_EQ(vals.size(), 4u) << line;
    }
    for (std::size_t k = 1; k < 3; ++k) {
        EXPECT_LT(rec.levels[k].err_l2, rec.levels[k - 1].err_l2);
        EXPECT_LT(rec.levels[k].err_h1, rec.levels[k - 1].err_h1);
        EXPECT_GT(rec.levels[k].ndof, rec.levels[k - 1].ndof);
    }
}

TEST(Study, CsvAndSvgOutputsAreDeterministic)
{
    StudyConfig c = small_study();
    c.out_csv = tmp_path("study_a.csv");
    c.out_svg = tmp_path("study.svg");
    std::ostringstream sink;
    run_study(c, sink);
    c.out_csv = tmp_path("study_b.csv");
    run_study(c, sink);
    const std::string a = slurp(tmp_path("study_a.csv"));
    EXPECT_EQ(a, slurp(tmp_path("study_b.csv")));
    EXPECT_EQ(a.rfind("level,ndof,h,err_l2,err_h1\n", 0), 0u);
    EXPECT_NE(a.find("\nrate,,,"), std::string::npos);
    const std::string svg = slurp(tmp_path("study.svg"));
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Study, MeshFilesMatchGeneratedLevels)
{
    StudyConfig gen = small_study();
    StudyConfig files;
    for (int n : gen.levels) {
        const std::string p = tmp_path("study_hex" + std::to_string(n) + ".json");
        save_mesh(generate_hex_mesh(n), p);
        files.mesh_files.push_back(p);
    }
    std::ostringstream a, b;
    EXPECT_EQ(convergence_csv(run_study(gen, a)), convergence_csv(run_study(files, b)));
}

TEST(Study, SolveZeroSolution)
{
    SolveConfig c;
    c.solution = "zero";
    c.out = tmp_path("zero.csv");
    std::ostringstream os;
    const PoissonSolution sol = run_solve(c, generate_hex_mesh(2), os);
    EXPECT_LT(sol.u.cwiseAbs().maxCoeff(), 1e-15);
    const std::string csv = slurp(c.out);
    EXPECT_EQ(csv.rfind("node,x,y,z,u_h\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 28);
}

TEST(Study, InvalidConfiguration)
{
    EXPECT_THROW(make_preset("cubic"), ConfigError);
    StudyConfig c;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_study();
    c.solution = "cubic";
    std::ostringstream os;
    EXPECT_THROW(run_study(c, os), ConfigError);
    EXPECT_THROW(parse_generator("prism"), ConfigError);
}
