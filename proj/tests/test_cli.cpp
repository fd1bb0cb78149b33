#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permround/io.hpp"
#include "permround/matrix.hpp"
#include "permround/permutation.hpp"
#include "support/gen.hpp"

namespace fs = std::filesystem;
using namespace permround;

namespace {

const std::string kCli = PERMROUND_CLI_PATH;

struct TempDir {
    TempDir() {
        path = fs::temp_directory_path() /
               ("permround_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
};

int run(const std::string& args) {
    const int status = std::system((kCli + " " + args).c_str());
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("haar emits a loadable orthogonal matrix, deterministically") {
    TempDir tmp;
    const fs::path out = tmp.path / "u.txt";
    REQUIRE(run("haar 5 --seed 7 --out " + out.string()) == 0);
    CHECK_NOTHROW(OrthogonalMatrix(load_matrix_file(out)));

    const fs::path again = tmp.path / "u2.txt";
    REQUIRE(run("haar 5 --seed 7 --out " + again.string()) == 0);
    CHECK(slurp(out) == slurp(again));

    const fs::path json_out = tmp.path / "u.json";
    REQUIRE(run("haar 3 --seed 9 --out " + json_out.string()) == 0);
    CHECK_NOTHROW(OrthogonalMatrix(load_matrix_file(json_out)));
}

TEST_CASE("round on the identity gives identity permutations with zero residuals") {
    TempDir tmp;
    const fs::path mat = tmp.path / "id.txt";
    save_matrix_file(mat, SquareMatrix::identity(4));
    const fs::path out = tmp.path / "rounds.csv";
    REQUIRE(run("round " + mat.string() + " --samples 5 --seed 3 --out " + out.string()) == 0);

    const auto rows = parse_csv(out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"sample_index", "permutation", "residual_norm"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][1] == "1 2 3 4");
        CHECK(std::stod(rows[i][2]) == 0.0);
    }
}

TEST_CASE("round on a permutation matrix reports that permutation on every sample") {
    TempDir tmp;
    RandomStream s(77);
    const Permutation rho = testgen::random_permutation(6, s);
    const fs::path mat = tmp.path / "perm.txt";
    save_matrix_file(mat, perm_to_matrix(rho));
    const fs::path out = tmp.path / "rounds.csv";
    REQUIRE(run("round " + mat.string() + " --samples 8 --seed 4 --out " + out.string()) == 0);
    const auto rows = parse_csv(out);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] == rho.one_line());
}

TEST_CASE("round on a generated Haar matrix yields small residual norms") {
    TempDir tmp;
    const fs::path mat = tmp.path / "haar64.txt";
    REQUIRE(run("haar 64 --seed 21 --out " + mat.string()) == 0);
    const fs::path out = tmp.path / "rounds.csv";
    REQUIRE(run("round " + mat.string() + " --samples 5 --seed 22 --out " + out.string()) == 0);
    const auto rows = parse_csv(out);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        // residual norms sit far below ||x|| ~ sqrt(64) = 8
        CHECK(std::stod(rows[i][2]) < 4.0);
        CHECK(std::stod(rows[i][2]) > 0.0);
    }
}

TEST_CASE("exit codes: 2 for parse failures, 3 for non-orthogonal input") {
    TempDir tmp;
    const fs::path garbage = tmp.path / "garbage.txt";
    std::ofstream(garbage) << "not a matrix\n";
    CHECK(run("round " + garbage.string() + " --out /dev/null 2>/dev/null") == 2);

    const fs::path skew = tmp.path / "skew.txt";
    save_matrix_file(skew, SquareMatrix::from_rows({{1, 0.5}, {0, 1}}));
    CHECK(run("round " + skew.string() + " --out /dev/null 2>/dev/null") == 3);

    const fs::path bad_json = tmp.path / "bad.json";
    std::ofstream(bad_json) << "{ not json";
    CHECK(run("round " + bad_json.string() + " --out /dev/null 2>/dev/null") == 2);
}

TEST_CASE("approximate emits a parseable report with small errors on easy input") {
    TempDir tmp;
    RandomStream s(78);
    const Permutation rho = testgen::random_permutation(4, s);
    const fs::path mat = tmp.path / "perm.txt";
    save_matrix_file(mat, perm_to_matrix(rho));
    const fs::path out = tmp.path / "approx.json";
    REQUIRE(run("approximate " + mat.string() + " --samples 10000 --seed 5 --out " +
                out.string()) == 0);

    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["n"] == 4);
    CHECK(j["sample_count"] == 10000);
    CHECK(j["a_hat"].size() == 4);
    CHECK(j["weight_sum"].size() == 4);
    CHECK(j["perm_counts"]["total"] == 10000);
    CHECK(j["perm_counts"]["counts"].size() == 1);
    CHECK(j["per_perm_trace"].contains(rho.one_line()));
    CHECK(j["error_report"]["linf"].get<double>() <= 0.05);
    CHECK(j["trace_probability_deviation"].get<double>() <= 0.1);

    // dimension 1: the single entry is a mean of squares near 1
    const fs::path one = tmp.path / "one.txt";
    std::ofstream(one) << "1\n1\n";
    const fs::path out1 = tmp.path / "one.json";
    REQUIRE(run("approximate " + one.string() + " --samples 10000 --seed 6 --out " +
                out1.string()) == 0);
    const nlohmann::json j1 = nlohmann::json::parse(slurp(out1));
    CHECK(std::abs(j1["a_hat"][0][0].get<double>() - 1.0) <= 0.05);
}

TEST_CASE("scaling runs a config file and yields the expected table shape") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "exp.cfg";
    std::ofstream(cfg) << "seed = 11\n"
                       << "n_values = 4, 8\n"
                       << "sample_counts = 2000\n"
                       << "repetitions = 2\n"
                       << "residual_samples = 200  # moments per row\n";
    const fs::path out = tmp.path / "scaling.csv";
    REQUIRE(run("scaling " + cfg.string() + " --out " + out.string()) == 0);

    const auto rows = parse_csv(out);
    REQUIRE(rows.size() == 5);  // header + 2 n-values x 2 repetitions
    CHECK(rows[0][0] == "n");
    CHECK(rows[0].size() == 8);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 8);
        CHECK(std::stod(rows[i][3]) > 0.0);   // linf_error
        CHECK(std::stod(rows[i][7]) >= 0.0);  // mean_residual_sq
    }

    // same seed: identical bytes; different seed: same shape, different values
    const fs::path out_same = tmp.path / "scaling_same.csv";
    REQUIRE(run("scaling " + cfg.string() + " --out " + out_same.string()) == 0);
    CHECK(slurp(out) == slurp(out_same));

    const fs::path out_other = tmp.path / "scaling_other.csv";
    REQUIRE(run("scaling " + cfg.string() + " --seed 12 --out " + out_other.string()) == 0);
    const auto other = parse_csv(out_other);
    REQUIRE(other.size() == rows.size());
    CHECK(other[1][3] != rows[1][3]);

    CHECK(run("scaling " + (tmp.path / "missing.cfg").string() + " 2>/dev/null") == 2);
    const fs::path bad = tmp.path / "bad.cfg";
    std::ofstream(bad) << "n_values = 4\nsample_counts = \n";
    CHECK(run("scaling " + bad.string() + " 2>/dev/null") == 3);
}

TEST_CASE("concentration table: bounds dominate empirical frequencies") {
    TempDir tmp;
    const fs::path out = tmp.path / "conc.csv";
    REQUIRE(run("concentration --n-values 100 --epsilons 0.2,0.4 --trials 2000 --seed 13 "
                "--out " +
                out.string()) == 0);
    const auto rows = parse_csv(out);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == std::vector<std::string>{"n", "k", "epsilon", "alpha_minus", "alpha_plus",
                                              "bound", "empirical", "trials"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double bound = std::stod(rows[i][5]);
        const double empirical = std::stod(rows[i][6]);
        const double trials = std::stod(rows[i][7]);
        const double noise = 3.0 * std::sqrt(bound * (1.0 - bound) / trials);
        CHECK(empirical <= bound + noise);
        CHECK(std::stod(rows[i][3]) <= std::stod(rows[i][4]));
    }
}

TEST_CASE("qap subcommand reports the zero-gap instance") {
    TempDir tmp;
    const fs::path inst_file = tmp.path / "inst.txt";
    {
        std::ofstream out(inst_file);
        write_qap_text(out, counterexample(2));
    }
    const fs::path out = tmp.path / "qap.json";
    REQUIRE(run("qap " + inst_file.string() + " --samples 50 --seed 14 --out " + out.string()) ==
            0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["lower_bound"].get<double>() == doctest::Approx(-8.0).epsilon(1e-9));
    CHECK(j["best_value"].get<double>() == doctest::Approx(0.0).scale(1.0));
    CHECK(j["gap"].get<double>() == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(Permutation::parse_one_line(j["permutation"].get<std::string>()).size() == 4);

    // JSON instance mirror
    const fs::path inst_json = tmp.path / "inst.json";
    std::ofstream(inst_json) << qap_to_json(counterexample(1)).dump() << '\n';
    const fs::path out2 = tmp.path / "qap2.json";
    REQUIRE(run("qap " + inst_json.string() + " --samples 20 --seed 15 --out " + out2.string()) ==
            0);
    const nlohmann::json j2 = nlohmann::json::parse(slurp(out2));
    CHECK(j2["lower_bound"].get<double>() == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("json output format round-trips for tabular commands") {
    TempDir tmp;
    const fs::path mat = tmp.path / "id.txt";
    save_matrix_file(mat, SquareMatrix::identity(3));
    const fs::path out = tmp.path / "rounds.json";
    REQUIRE(run("round " + mat.string() + " --samples 3 --seed 16 --format json --out " +
                out.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0]["permutation"] == "1 2 3");
    CHECK(j[0]["residual_norm"].get<double>() == 0.0);
}
