#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

// End-to-end coverage of the hypefcm executable. Every invocation goes
// through std::system with stdout/stderr captured in temp files.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    auto dir = fs::temp_directory_path();
    auto out = dir / ("hypefcm_cli_out_" + std::to_string(counter) + ".txt");
    auto err = dir / ("hypefcm_cli_err_" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = std::string(HYPEFCM_CLI_PATH) + " " + args + " > " +
                      out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    CliResult r;
#ifdef _WIN32
    r.exit_code = status;
#else
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
    r.out = slurp(out);
    r.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return r;
}

json strip_timing(json j) {
    for (auto& cell : j["cells"])
        for (auto& rep : cell["repeats"]) rep.erase("wall_ms");
    return j;
}

std::string strip_last_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        auto cut = line.rfind(',');
        out += line.substr(0, cut);
        out += '\n';
    }
    return out;
}

fs::path temp_json(const std::string& stem) {
    return fs::temp_directory_path() / (stem + ".json");
}

}  // namespace

TEST_CASE("cli: help and version") {
    auto help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("run") != std::string::npos);
    CHECK(help.out.find("grid") != std::string::npos);
    CHECK(help.out.find("ablation") != std::string::npos);

    auto version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("cli: single run writes a parseable record and a digest") {
    auto out = temp_json("hypefcm_cli_run");
    auto r = run_cli("run --dataset builtin:blobs --method fcm --repeats 2 --out " +
                     out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ARI") != std::string::npos);
    auto j = json::parse(slurp(out));
    CHECK(j["kind"] == "run");
    CHECK(j["config"]["method"] == "fcm");
    CHECK(j["cells"][0]["repeats"].size() == 2);
    fs::remove(out);
}

TEST_CASE("cli: usage errors exit with 2") {
    auto missing = run_cli("run --repeats 2");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.rfind("error: usage:", 0) == 0);

    auto badmethod = run_cli("run --dataset builtin:blobs --method pcm");
    CHECK(badmethod.exit_code == 2);
    CHECK(badmethod.err.rfind("error: usage:", 0) == 0);

    auto badalpha = run_cli("run --dataset builtin:blobs --alpha 0 --repeats 1");
    CHECK(badalpha.exit_code == 2);
    CHECK(badalpha.err.rfind("error: usage:", 0) == 0);

    auto nosub = run_cli("");
    CHECK(nosub.exit_code == 2);
}

TEST_CASE("cli: data errors exit with 1") {
    auto r = run_cli("run --dataset /no/such/file.csv --repeats 1");
    CHECK(r.exit_code == 1);
    CHECK(r.err.rfind("error: data:", 0) == 0);

    auto bad = run_cli("run --dataset builtin:unknown --repeats 1");
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.rfind("error: data:", 0) == 0);
}

TEST_CASE("cli: repeated invocations are byte-identical modulo timings") {
    auto out1 = temp_json("hypefcm_cli_det1");
    auto out2 = temp_json("hypefcm_cli_det2");
    std::string args =
        "run --dataset builtin:blobs --repeats 3 --seed 7 --k-filter 8 --out ";
    REQUIRE(run_cli(args + out1.string()).exit_code == 0);
    REQUIRE(run_cli(args + out2.string()).exit_code == 0);
    CHECK(strip_timing(json::parse(slurp(out1))) ==
          strip_timing(json::parse(slurp(out2))));
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("cli: csv format matches across reruns once timings are cut") {
    auto out1 = fs::temp_directory_path() / "hypefcm_cli_csv1.csv";
    auto out2 = fs::temp_directory_path() / "hypefcm_cli_csv2.csv";
    std::string args =
        "run --dataset builtin:rings --repeats 2 --format csv --out ";
    REQUIRE(run_cli(args + out1.string()).exit_code == 0);
    REQUIRE(run_cli(args + out2.string()).exit_code == 0);
    auto a = slurp(out1);
    CHECK(a.rfind("kind,", 0) == 0);
    CHECK(strip_last_column(a) == strip_last_column(slurp(out2)));
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("cli: job count does not change results") {
    auto out1 = temp_json("hypefcm_cli_j1");
    auto out4 = temp_json("hypefcm_cli_j4");
    std::string args = "run --dataset builtin:blobs --repeats 6 --jobs ";
    REQUIRE(run_cli(args + "1 --out " + out1.string()).exit_code == 0);
    REQUIRE(run_cli(args + "4 --out " + out4.string()).exit_code == 0);
    auto j1 = strip_timing(json::parse(slurp(out1)));
    auto j4 = strip_timing(json::parse(slurp(out4)));
    CHECK(j1["cells"] == j4["cells"]);
    fs::remove(out1);
    fs::remove(out4);
}

TEST_CASE("cli: grid sweep over explicit lists") {
    auto out = temp_json("hypefcm_cli_grid");
    auto r = run_cli(
        "grid --dataset builtin:blobs --alphas 0.5,1 --ks 1,2 --repeats 2 --out " +
        out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("best") != std::string::npos);
    auto j = json::parse(slurp(out));
    CHECK(j["kind"] == "grid");
    CHECK(j["cells"].size() == 4);
    fs::remove(out);
}

TEST_CASE("cli: ablation emits paired arms") {
    auto out = temp_json("hypefcm_cli_abl");
    auto r = run_cli("ablation --dataset builtin:blobs --ks 2 --repeats 2 --out " +
                     out.string());
    CHECK(r.exit_code == 0);
    auto j = json::parse(slurp(out));
    CHECK(j["kind"] == "ablation");
    REQUIRE(j["cells"].size() == 2);
    CHECK(j["cells"][0]["arm"] == "filtered");
    CHECK(j["cells"][1]["arm"] == "unfiltered");
    CHECK(j["cells"][1]["filtration"] == "off");
    fs::remove(out);
}

TEST_CASE("cli: csv dataset files load with a label column") {
    auto dataset = fs::temp_directory_path() / "hypefcm_cli_data.csv";
    {
        std::ofstream out(dataset);
        for (int i = 0; i < 20; ++i) {
            double base = i < 10 ? 0.0 : 50.0;
            out << base + 0.1 * i << "," << base - 0.05 * i << ","
                << (i < 10 ? "a" : "b") << "\n";
        }
    }
    auto r = run_cli("run --dataset " + dataset.string() +
                     " --label-column 2 --method kmeans --repeats 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ARI 1.0000") != std::string::npos);
    fs::remove(dataset);
}
