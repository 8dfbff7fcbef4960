#ifdef FOAMCALC_HAVE_CLI

#include "doctest.h"

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "foamcalc");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = foamcalc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string data = FOAMCALC_DATA_DIR;

}  // namespace

TEST_CASE("cli: homology of the trefoil") {
    auto r = run({"homology", "--pd", data + "/trefoil.pd", "--preset", "khovanov", "-q"});
    CHECK(r.code == 0);
    CHECK(r.out == "h\tq\trank\ttorsion\n0\t1\t1\t-\n0\t3\t1\t-\n2\t5\t1\t-\n3\t7\t0\t2\n3\t9\t1\t-\n");
    CHECK(r.err.empty());
}

TEST_CASE("cli: configuration header and global flags after the subcommand") {
    auto r = run({"homology", "--pd", "O", "--preset", "khovanov", "--jobs", "1"});
    CHECK(r.code == 0);
    REQUIRE(r.err.rfind("# foamcalc 0.1.0 ", 0) == 0);
    auto cfg = nlohmann::json::parse(r.err.substr(17));
    CHECK(cfg["subcommand"] == "homology");
    CHECK(cfg["jobs"] == 1);
}

TEST_CASE("cli: Reidemeister comparison") {
    auto r = run({"homology", "--pd", "X[1,1,2,2]", "--compare", "O", "--preset", "multiplicative", "-q"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["equal"] == true);
    r = run({"homology", "--pd", data + "/trefoil.pd", "--compare", "O", "--preset", "khovanov", "-q"});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["equal"] == false);
}

TEST_CASE("cli: exact and deformed evaluation") {
    auto r = run({"eval-exact", "--foam", data + "/theta.json", "-q"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["text"] == "-rho");
    r = run({"eval", "--foam", data + "/theta.json", "--p", "multiplicative", "--trunc", "4", "--format", "tsv", "-q"});
    CHECK(r.code == 0);
    CHECK(r.out == "exponents\tcoefficient\n0,0\t1\n1,0\t-b01\n0,1\t-b01\n1,1\tb01^2\n");
    r = run({"eval-gln", "--foam", data + "/theta.json", "--undeformed", "--trunc", "4", "--format", "text", "-q"});
    CHECK(r.out == "1\n");
}

TEST_CASE("cli: exit codes") {
    auto r = run({"homology", "--pd", "X[1,2,3]", "-q"});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["error"] == "InvalidPD");

    Result bad = run({"homology", "--pd", "O", "--preset", data + "/bad_preset.json", "-q"});
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.out)["error"] == "NonUnitRho");

    CHECK(run({"homology"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"eval", "--foam", data + "/missing.json"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: web rank of a trefoil resolution") {
    auto r = run({"web", "rank", "--pd", "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]", "--resolution", "0", "-q"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["rank"] == 4);
}

#endif
