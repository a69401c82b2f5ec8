#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "io.hpp"
#include "orbiloop/catalog.hpp"
#include "orbiloop/error.hpp"

using namespace orbiloop;
using io::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string schemaPointer(const std::function<void()>& f) {
    try {
        f();
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("rationals") {
    CHECK(io::parseRational(json("6/4"), "") == Rational(3, 2));
    CHECK(io::formatRational(Rational(6, 4)) == "3/2");
    CHECK(io::formatRational(Rational(-2)) == "-2");
    CHECK(io::parseRational(json(7), "") == 7);
    CHECK(schemaPointer([] { (void)io::parseRational(json("1/0"), "/x"); }) == "/x");
    CHECK(schemaPointer([] { (void)io::parseRational(json("a/b"), "/y"); }) == "/y");
    CHECK(io::pointer("/a", "b/c~d") == "/a/b~1c~0d");
}

TEST_CASE("groupoid documents round trip and report pointers") {
    for (const auto& n : catalog::groupoidNames()) {
        INFO(n);
        const auto g = *catalog::groupoid(n);
        const auto doc = io::writeGroupoid(*g);
        CHECK(doc["schema"] == "groupoid.v1");
        CHECK(io::dump(io::writeGroupoid(*io::readGroupoid(doc))) == io::dump(doc));
    }
    auto doc = io::writeGroupoid(**catalog::groupoid("Z2-swap"));
    auto bad = doc;
    bad["morphisms"][1]["src"] = "nowhere";
    CHECK(schemaPointer([&] { (void)io::readGroupoid(bad); }) == "/morphisms/1/src");
    bad = doc;
    bad["compose"].erase(0);
    CHECK(schemaPointer([&] { (void)io::readGroupoid(bad); }).rfind("/compose", 0) == 0);
    bad = doc;
    bad.erase("objects");
    CHECK(schemaPointer([&] { (void)io::readGroupoid(bad); }) == "/objects");
    bad = doc;
    bad["schema"] = "groupoid.v2";
    CHECK(schemaPointer([&] { (void)io::readGroupoid(bad); }) == "/schema");
}

TEST_CASE("cochain documents") {
    const json phi = json::parse(R"j({"schema":"cochain.v1","group":"Z4","degree":1,"coeff":"QmodZ",
        "entries":[{"args":["1"],"value":"5/4"}]})j");
    const auto d = io::readCochain(phi);
    REQUIRE(d.bar);
    CHECK(d.bar->at(std::vector<int>{1}) == Rational(1, 4));
    auto bad = phi;
    bad["entries"][0]["args"][0] = "9";
    CHECK(schemaPointer([&] { (void)io::readCochain(bad); }) == "/entries/0/args/0");
    bad = phi;
    bad["entries"][0]["args"].push_back("1");
    CHECK(schemaPointer([&] { (void)io::readCochain(bad); }) == "/entries/0/args");
    bad = phi;
    bad["coeff"] = "Z";
    CHECK(schemaPointer([&] { (void)io::readCochain(bad); }) == "/entries/0/value");
    const auto round = io::readCochain(io::writeCochain(*d.bar, "Z4"));
    REQUIRE(round.bar);
    CHECK(*round.bar == *d.bar);
}

TEST_CASE("complex documents") {
    const auto s2 = *catalog::complex("S2");
    const auto back = io::readComplex(io::writeComplex(s2));
    CHECK(back.fVector() == s2.fVector());
    const auto k = *catalog::gammaComplex("S2/Z2-rotation");
    const auto gk = io::readGammaComplex(io::writeGammaComplex(k));
    CHECK(gk.action == k.action);
    auto bad = io::writeGammaComplex(k);
    const std::string first = bad["action"].begin().key();
    bad["action"][first][0] = bad["action"][first][1];
    CHECK(schemaPointer([&] { (void)io::readGammaComplex(bad); }).rfind("/action", 0) == 0);

    const auto s3 = *catalog::complex("S3");
    std::vector<Rational> lam(static_cast<std::size_t>(s3.count(3)));
    lam[0] = Rational(2, 3);
    const auto c3 = io::readCochain3(io::writeCochain3(s3, lam), s3);
    CHECK(c3.lambda == lam);
    CHECK(!c3.localSystem);
    // A reversed vertex order flips the sign.
    json j{{"schema", "cochain3.v1"}, {"degree", 3}, {"entries", json::array()}};
    const auto& v = s3.simplex(3, 0);
    j["entries"].push_back({{"simplex", {s3.vertexName(v[1]), s3.vertexName(v[0]), s3.vertexName(v[2]), s3.vertexName(v[3])}},
                            {"value", "1"}});
    CHECK(io::readCochain3(j, s3).lambda[0] == -1);
}

TEST_CASE("exit codes") {
    CHECK(run({"loop", "--builtin", "BS3"}).code == cli::kOk);
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({}).code == cli::kSchema);
    CHECK(run({"loop"}).code == cli::kSchema);
    CHECK(run({"loop", "--builtin", "BS3", "--input", "x.json"}).code == cli::kSchema);
    const auto missing = run({"loop", "--input", "/nonexistent/groupoid.json"});
    CHECK(missing.code == cli::kSchema);
    CHECK(missing.err.find("schema error at") != std::string::npos);
    const auto div = run({"holonomy-theorem", "--gamma", "4", "--phi", "1", "--N", "6"});
    CHECK(div.code == cli::kPrecondition);
    CHECK(div.err.find("precondition 'divisibility'") != std::string::npos);
    const auto gen = run({"zcohom", "--builtin", "S2", "--generator", "1"});
    CHECK(gen.code == cli::kPrecondition);
    CHECK(run({"gcohom", "--builtin", "Z5", "--coeff", "R"}).code == cli::kSchema);
}

TEST_CASE("verb outputs") {
    auto r = run({"loop", "--builtin", "BZ3"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["summary"]["objects"] == 3);
    CHECK(j["summary"]["morphisms"] == 9);
    CHECK(j["summary"]["sectors"] == 3);
    CHECK(j["groupoid"]["schema"] == "groupoid.v1");
    CHECK(j["meta"]["schema"] == "loop-meta.v1");

    r = run({"gcohom", "--builtin", "Z4", "--nmax", "4"});
    j = json::parse(r.out);
    CHECK(j["degrees"][2]["group"] == "Z/4");
    CHECK(j["degrees"][3]["group"] == "0");

    r = run({"holonomy-theorem", "--gamma", "3", "--phi", "2", "--N", "36"});
    j = json::parse(r.out);
    CHECK(j["verdict"] == true);
    CHECK(j["table"][1]["transgressed"] == "2/3");

    r = run({"zcohom", "--builtin", "S3", "--generator", "1", "--periodic", "--mmax", "7"});
    j = json::parse(r.out);
    CHECK(j["dims"] == json({1, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(j["periodic"]["even"] == 0);
    CHECK(j["stable"]["odd"] == 0);

    r = run({"deloc", "--builtin", "S2/Z2-rotation"});
    j = json::parse(r.out);
    CHECK(j["total"] == json({3, 0, 1}));
    CHECK(j["rationalCheck"] == json({3, 0, 1}));

    r = run({"selftest", "--filter", "io/"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["count"] == 1);
}
