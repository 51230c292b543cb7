// Drives the aximhd executable end to end.

#include <aximhd/config.hpp>
#include <aximhd/diagnostics.hpp>
#include <aximhd/grid.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace aximhd;

namespace {

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("aximhd_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Result cli(const std::string& args, const std::string& env = "") {
    const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
    const std::string cmd = "cd '" + work_dir().string() + "' && " + env + " '" + AXIMHD_CLI_PATH + "' " + args +
                            " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string write_config(const std::string& name, const nlohmann::json& doc) {
    std::ofstream(work_dir() / name) << doc.dump(2);
    return name;
}

nlohmann::json ring_doc(int n, const std::string& mode, double t_end, const std::string& dir) {
    return {{"grid", {{"n_r", n}, {"n_z", n}, {"r_max", 4.0}, {"z_len", 4.0}}},
            {"physics", {{"mode", mode}}},
            {"time", {{"t_end", t_end}, {"output_every", 10}}},
            {"initial", {{"name", "gaussian-ring"}, {"params", {{"r0", 1.5}, {"z0", 2.0}, {"sigma", 0.35}}}}},
            {"output", {{"dir", dir}, {"snapshots", false}}}};
}

std::vector<DiagnosticsRecord> load_records(const std::string& dir) {
    std::ifstream is(work_dir() / dir / "diagnostics.csv");
    return read_csv(is);
}

} // namespace

TEST_CASE("simulate: zero initial data") {
    nlohmann::json doc = {{"grid", {{"n_r", 16}, {"n_z", 16}, {"r_max", 2.0}, {"z_len", 2.0}}},
                          {"time", {{"t_end", 0.02}, {"output_every", 3}}},
                          {"output", {{"dir", "zero"}}}};
    const Result r = cli("simulate " + write_config("zero.json", doc));
    CHECK(r.code == 0);
    const auto recs = load_records("zero");
    REQUIRE(recs.size() >= 2);
    for (const auto& rec : recs) {
        CHECK(rec.energy_kinetic == 0.0);
        CHECK(rec.energy_magnetic == 0.0);
        CHECK(rec.pi_l2 == 0.0);
        CHECK(rec.omega_l2 == 0.0);
    }
    const auto meta = nlohmann::json::parse(slurp(work_dir() / "zero" / "run_meta.json"));
    CHECK(meta["termination"] == "completed");
    CHECK(meta.contains("wall_time_s"));
    CHECK(parse_config(meta["config"]) == parse_config(doc));
}

TEST_CASE("simulate: bad enum is a config error") {
    auto doc = ring_doc(16, "idael", 0.01, "bad");
    const Result r = cli("simulate " + write_config("bad.json", doc));
    CHECK(r.code == 1);
    CHECK(r.err.find("idael") != std::string::npos);
    CHECK(cli("simulate missing.json").code == 1);
    CHECK(cli("simulate").code == 1);
    CHECK(cli("frobnicate").code == 1);
}

TEST_CASE("simulate: blow-up exits with 2") {
    auto doc = ring_doc(16, "ideal", 0.01, "blow");
    doc["initial"]["params"]["amplitude"] = 1e200;
    const Result r = cli("simulate " + write_config("blow.json", doc));
    CHECK(r.code == 2);
    const auto meta = nlohmann::json::parse(slurp(work_dir() / "blow" / "run_meta.json"));
    CHECK(meta["termination"] == "blow-up");
}

TEST_CASE("simulate: snapshots and byte-identical reruns") {
    auto doc = ring_doc(32, "resistive", 0.05, "rerun_a");
    doc["output"]["snapshots"] = true;
    REQUIRE(cli("simulate " + write_config("rerun_a.json", doc)).code == 0);
    doc["output"]["dir"] = "rerun_b";
    REQUIRE(cli("simulate " + write_config("rerun_b.json", doc), "AXIMHD_THREADS=3").code == 0);
    const std::string a = slurp(work_dir() / "rerun_a" / "diagnostics.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(work_dir() / "rerun_b" / "diagnostics.csv"));

    const ScalarField pi0 = read_snapshot_file((work_dir() / "rerun_a" / "pi_000000.axifield").string());
    CHECK(pi0.grid().n_r == 32);
    CHECK(norm_lp(pi0, INFINITY) == doctest::Approx(1.0).epsilon(1e-3));
    const ScalarField om0 = read_snapshot_file((work_dir() / "rerun_a" / "omega_000000.axifield").string());
    CHECK(norm_lp(om0, INFINITY) == 0.0);
}

TEST_CASE("simulate: resistive ring decays at 128^2") {
    auto doc = ring_doc(128, "resistive", 1.0, "resistive128");
    doc["time"]["output_every"] = 200;
    REQUIRE(cli("simulate " + write_config("resistive128.json", doc)).code == 0);
    const auto recs = load_records("resistive128");
    CHECK(recs.back().time == 1.0);
    CHECK(recs.back().pi_l2 < recs.front().pi_l2);
}

TEST_CASE("verify: table and exit codes") {
    const auto cfg = write_config("verify.json", ring_doc(32, "ideal", 0.05, "verify"));
    const Result mp = cli("verify " + cfg + " --checks max-principle");
    CHECK(mp.code == 0);
    CHECK(mp.out.find("max-principle  PASS") != std::string::npos);
    CHECK(mp.out.find("1 + sqrt t") != std::string::npos);

    const Result l2 = cli("verify " + cfg + " --checks pi-l2");
    CHECK(l2.code == 0);
    CHECK(l2.out.find("SKIPPED") != std::string::npos);

    CHECK(cli("verify " + cfg + " --checks bogus").code == 1);
    CHECK(cli("verify " + cfg).code == 1);

    // 16^2 against 8^2 is far too coarse for the energy law to converge.
    const auto coarse = write_config("coarse.json", ring_doc(16, "ideal", 0.1, "coarse"));
    const Result el = cli("verify " + coarse + " --checks energy-law");
    CHECK((el.code == 0 || el.code == 3));
    CHECK(el.out.find("energy-law") != std::string::npos);
    CHECK(el.out.find("shrink") != std::string::npos);
}

TEST_CASE("apcheck: classifications and report") {
    const Result zero = cli("apcheck --p 2 --alpha 0 --samples 10000");
    CHECK(zero.code == 0);
    CHECK(zero.out.find("bounded") != std::string::npos);
    CHECK(slurp(work_dir() / "ap_report.csv").rfind("alpha,p,t,estimate,stderr,classification", 0) == 0);

    CHECK(cli("apcheck --p 2 --alpha -2 --samples 10000").code == 0);
    const Result neg = cli("apcheck --p 2 --alpha=-4.5 --samples 10000");
    CHECK(neg.code == 0);
    CHECK(neg.out.find("unbounded") != std::string::npos);
    CHECK(cli("apcheck --p 2 --alpha -4,4 --samples 10000").code == 0);

    const Result a = cli("apcheck --p 3 --alpha 6,9 --samples 20000 --seed 5 --out ap_a");
    const Result b = cli("apcheck --p 3 --alpha 6,9 --samples 20000 --seed 5 --out ap_b");
    CHECK(a.code == 0);
    CHECK(slurp(work_dir() / "ap_a" / "ap_report.csv") == slurp(work_dir() / "ap_b" / "ap_report.csv"));

    CHECK(cli("apcheck --p 1 --alpha 0").code == 1);
    CHECK(cli("apcheck --p 2 --alpha x").code == 1);
    CHECK(cli("apcheck --alpha 0").code == 1);
}

TEST_CASE("bad AXIMHD_THREADS is a config error") {
    const auto cfg = write_config("threads.json", ring_doc(16, "ideal", 0.01, "threads"));
    CHECK(cli("simulate " + cfg, "AXIMHD_THREADS=many").code == 1);
    CHECK(cli("simulate " + cfg, "AXIMHD_THREADS=0").code == 0);
}
