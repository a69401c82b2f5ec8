#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>

#include "io.hpp"
#include "orbiloop/catalog.hpp"
#include "orbiloop/coc.hpp"
#include "orbiloop/deloc.hpp"
#include "orbiloop/error.hpp"
#include "orbiloop/loop.hpp"
#include "orbiloop/zcomplex.hpp"
#include "selftest.hpp"
#include "table.hpp"

namespace orbiloop::cli {

using io::json;

namespace {

struct Output {
    json doc;
    std::string text;
    int code = kOk;
};

std::string rat(const Rational& r) { return io::formatRational(r); }

json ints(const std::vector<int>& v) { return json(v); }

// --- inputs ---------------------------------------------------------------------------

struct Source {
    std::string file;
    std::string builtin;
};

gpd::GroupoidPtr groupoidSource(const Source& s) {
    if (!s.builtin.empty()) return io::readGroupoidRef(json(s.builtin), "");
    return io::readGroupoid(io::readFile(s.file));
}

gpd::GroupPtr groupSource(const Source& s) {
    if (!s.builtin.empty()) return io::readGroupRef(json(s.builtin), "");
    return gpd::shareGroup(io::readGroup(io::readFile(s.file)));
}

// --- loop / inertia-check --------------------------------------------------------------

Output verbLoop(const Source& src) {
    const auto x = groupoidSource(src);
    const auto lx = loop::loopGroupoid(x);
    const auto secs = loop::sectors(lx);
    Output o;
    o.doc = {{"groupoid", io::writeGroupoid(*lx.carrier)},
             {"meta", io::writeLoopMeta(lx)},
             {"summary",
              {{"objects", lx.carrier->objectCount()},
               {"morphisms", lx.carrier->morphismCount()},
               {"sectors", static_cast<int>(secs.size())}}}};
    Table t({"sector", "base", "gamma", "|centralizer|", "size"});
    for (const auto& s : secs)
        t.add({lx.carrier->objectName(s.representative), x->objectName(s.baseObject), x->morphism(s.gamma).id,
               std::to_string(s.centralizerOrder), std::to_string(s.componentSize)});
    o.text = "loop groupoid: " + std::to_string(lx.carrier->objectCount()) + " objects, " +
             std::to_string(lx.carrier->morphismCount()) + " morphisms, " + std::to_string(secs.size()) + " sectors\n\n" + t.str();
    return o;
}

Output verbInertia(const Source& src) {
    const auto x = groupoidSource(src);
    const auto lx = loop::loopGroupoid(x);
    const auto in = loop::inertiaViaEqualizer(x, lx);
    const auto eq = gpd::isEquivalence(in.toLoop);
    const auto& ix = *in.equalizer.groupoid;
    Output o;
    o.doc = {{"equivalence", eq.ok},
             {"witness", eq.witness},
             {"inertia", {{"objects", ix.objectCount()}, {"morphisms", ix.morphismCount()}, {"components", ix.componentCount()}}},
             {"loop",
              {{"objects", lx.carrier->objectCount()},
               {"morphisms", lx.carrier->morphismCount()},
               {"components", lx.carrier->componentCount()}}}};
    Table t({"groupoid", "objects", "morphisms", "components"});
    t.add({"IX", std::to_string(ix.objectCount()), std::to_string(ix.morphismCount()), std::to_string(ix.componentCount())});
    t.add({"LX", std::to_string(lx.carrier->objectCount()), std::to_string(lx.carrier->morphismCount()),
           std::to_string(lx.carrier->componentCount())});
    o.text = t.str() + "\nIX -> LX equivalence: " + (eq.ok ? "yes" : "no (" + eq.witness + ")") + "\n";
    return o;
}

// --- gcohom ---------------------------------------------------------------------------

Output verbGcohom(const Source& src, const std::string& coeff, int nmax) {
    const auto g = groupSource(src);
    const auto c = cohom::parseCoeff(coeff);
    const auto h = cohom::cohomology(*g, c, nmax);
    Output o;
    json degrees = json::array();
    Table t({"n", "H^n"});
    for (std::size_t n = 0; n < h.size(); ++n) {
        json factors = json::array();
        for (const auto& d : h[n].factors) factors.push_back(d.get_str());
        degrees.push_back({{"degree", static_cast<int>(n)}, {"factors", std::move(factors)}, {"group", h[n].str()}});
        t.add({std::to_string(n), h[n].str()});
    }
    o.doc = {{"order", g->order()}, {"coeff", cohom::coeffName(c)}, {"nmax", nmax}, {"degrees", std::move(degrees)}};
    o.text = "H^*(G; " + cohom::coeffName(c) + "), |G| = " + std::to_string(g->order()) + "\n\n" + t.str();
    return o;
}

// --- transgress -----------------------------------------------------------------------

/// The cochain as a nerve cochain, with a reference to its groupoid for output.
coc::NerveCochain nerveOf(const io::CochainDoc& d) {
    if (d.nerve) return *d.nerve;
    return coc::NerveCochain::fromBar(*d.bar);
}

Output verbTransgressBundle(const std::string& file) {
    const auto nerve = nerveOf(io::readCochain(io::readFile(file)));
    if (nerve.degree() != 1) throw PreconditionError("bundle-shape", "a bundle cocycle has degree 1");
    const auto phi = nerve.coeff() == cohom::Coeff::QmodZ ? nerve : nerve.as(cohom::Coeff::QmodZ);
    const auto lx = loop::loopGroupoid(phi.groupoidPtr());
    const auto h = coc::transgressBundle(phi, lx);
    const auto check = coc::checkHEqualsChiBar(phi, lx);
    const auto blocks = coc::twistedSectors(phi, lx);
    const auto& L = *lx.carrier;
    Output o;
    json values = json::array();
    Table t({"loop", "h", "chi-bar"});
    for (int x = 0; x < L.objectCount(); ++x) {
        values.push_back({{"loop", L.objectName(x)}, {"value", rat(h[x])}});
        t.add({L.objectName(x), rat(h[x]), rat(check.chiBar[x])});
    }
    json sectors = json::array();
    Table st({"h", "sectors"});
    for (const auto& [v, reps] : blocks) {
        json names = json::array();
        std::string joined;
        for (int r : reps) {
            names.push_back(L.objectName(r));
            joined += (joined.empty() ? "" : " ") + L.objectName(r);
        }
        sectors.push_back({{"value", rat(v)}, {"sectors", std::move(names)}});
        st.add({rat(v), joined});
    }
    o.doc = {{"mode", "bundle"}, {"loopValues", std::move(values)}, {"twistedSectors", std::move(sectors)},
             {"hEqualsChiBar", check.equal}};
    o.text = t.str() + "\n" + st.str() + "\nh = chi-bar: " + (check.equal ? "true" : "false") + "\n";
    return o;
}

Output verbTransgressGerbe(const std::string& file) {
    auto beta = nerveOf(io::readCochain(io::readFile(file)));
    if (beta.degree() != 2) throw PreconditionError("gerbe-shape", "a gerbe cocycle has degree 2");
    if (beta.coeff() != cohom::Coeff::QmodZ) beta = beta.as(cohom::Coeff::QmodZ);
    if (!coc::isCocycle(beta)) throw PreconditionError("cocycle", "beta is not a cocycle");
    const auto gauge = coc::gaugeNormalize(beta);
    const coc::GerbeCocycle cocycle(gauge.normalized);
    const auto lx = loop::loopGroupoid(cocycle.base());
    const auto tau = coc::transgressGerbe(cocycle, lx);
    const auto ls = coc::innerLocalSystem(cocycle, lx);
    const auto& L = *lx.carrier;
    Output o;
    json local = json::array();
    Table t({"sector", "automorphism", "epsilon"});
    for (const auto& s : ls.sectors) {
        json vals = json::array();
        for (std::size_t i = 0; i < s.automorphisms.size(); ++i) {
            vals.push_back({{"automorphism", L.morphism(s.automorphisms[i]).id}, {"value", rat(s.values[i])}});
            t.add({L.objectName(s.loopObject), L.morphism(s.automorphisms[i]).id, rat(s.values[i])});
        }
        local.push_back({{"sector", L.objectName(s.loopObject)}, {"values", std::move(vals)}});
    }
    o.doc = {{"mode", "gerbe"},
             {"gaugeShift", io::writeCochain(gauge.shift, "base")},
             {"transgression", io::writeCochain(tau, io::writeGroupoid(L))},
             {"innerLocalSystem", std::move(local)},
             {"cocycleCheck", cocycle.exhaustivelyChecked() ? "exhaustive" : "sampled"}};
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) nonzero += sgn(tau.at(i)) != 0;
    o.text = "gauge shift entries: " + std::to_string(o.doc["gaugeShift"]["entries"].size()) +
             "\ntransgression: " + std::to_string(nonzero) + " nonzero values on " + std::to_string(L.morphismCount()) +
             " loop morphisms\n\n" + t.str();
    return o;
}

// --- holonomy-theorem -----------------------------------------------------------------

Output verbHolonomy(int m, int k, int n) {
    if (m < 1) throw PreconditionError("gamma", "--gamma must be positive");
    if (n < 1) throw PreconditionError("divisibility", "--N must be positive");
    const auto gamma = gpd::shareGroup(gpd::FiniteGroup::cyclic(m));
    const auto phi = cohom::BarCochain::fromFunction(gamma, 1, cohom::Coeff::QmodZ, [&](std::span<const int> a) {
        return Rational(static_cast<long>(a[0]) * k, m);
    });
    const auto r = coc::verifyHolonomyTheorem(gamma, phi, n);
    Output o;
    json rows = json::array();
    Table t({"sigma", "transgressed", "phi", "chi-bar(pi_! d)"});
    for (int s = 0; s < m; ++s) {
        rows.push_back({{"sigma", gamma->name(s)},
                        {"transgressed", rat(r.transgressed[s])},
                        {"direct", rat(r.direct[s])},
                        {"integrated", rat(r.integrated[s])}});
        t.add({gamma->name(s), rat(r.transgressed[s]), rat(r.direct[s]), rat(r.integrated[s])});
    }
    o.doc = {{"gamma", m}, {"phi", k}, {"N", n}, {"table", std::move(rows)}, {"verdict", r.verdict}};
    o.text = "Gamma = Z/" + std::to_string(m) + ", phi(1) = " + rat(Rational(k, m) - Rational(k / m)) + ", N = " + std::to_string(n) +
             "\n\n" + t.str() + "\nverdict: " + (r.verdict ? "true" : "false") + "\n";
    return o;
}

// --- deloc ----------------------------------------------------------------------------

Output verbDeloc(const std::string& file, const std::string& builtin, const std::string& betaFile) {
    deloc::GammaComplex k;
    if (!builtin.empty()) {
        const auto b = catalog::gammaComplex(builtin);
        if (!b) throw SchemaError("", "unknown builtin gamma complex '" + builtin + "'");
        k = *b;
    } else {
        k = io::readGammaComplex(io::readFile(file));
    }
    std::optional<cohom::BarCochain> beta;
    if (!betaFile.empty()) {
        const auto d = io::readCochain(io::readFile(betaFile));
        if (!d.bar) throw SchemaError("/groupoid", "beta must be a cochain on a group");
        beta = d.bar->coeff() == cohom::Coeff::QmodZ ? *d.bar : d.bar->as(cohom::Coeff::QmodZ);
    }
    const auto report = deloc::delocalized(k, beta ? &*beta : nullptr);
    Output o;
    json sectors = json::array();
    Table t({"sector", "|C(g)|", "fixed Betti", "dims"});
    for (const auto& s : report.sectors) {
        json eps = json::array();
        const auto cent = [&] {
            std::vector<int> c;
            for (int h = 0; h < k.group->order(); ++h)
                if (k.group->mul(h, s.representative) == k.group->mul(s.representative, h)) c.push_back(h);
            return c;
        }();
        for (std::size_t i = 0; i < s.epsilon.size() && i < cent.size(); ++i)
            eps.push_back({{"element", k.group->name(cent[i])}, {"value", rat(s.epsilon[i])}});
        sectors.push_back({{"representative", k.group->name(s.representative)},
                           {"centralizerOrder", s.centralizerOrder},
                           {"epsilon", std::move(eps)},
                           {"fixedBetti", ints(s.fixedBetti)},
                           {"dims", ints(s.dims)}});
        t.add({k.group->name(s.representative), std::to_string(s.centralizerOrder), joinInts(s.fixedBetti), joinInts(s.dims)});
    }
    o.doc = {{"cyclotomicOrder", report.cyclotomicOrder}, {"sectors", std::move(sectors)}, {"total", ints(report.total)},
             {"twisted", beta.has_value()}};
    if (!beta) o.doc["rationalCheck"] = ints(deloc::delocalizedUntwistedRational(k));
    o.text = t.str() + "\ntotal: " + joinInts(report.total) + "\n";
    if (!beta) o.text += "orbit complex: " + joinInts(o.doc["rationalCheck"].get<std::vector<int>>()) + "\n";
    return o;
}

// --- zcohom ---------------------------------------------------------------------------

struct ZOptions {
    std::string file, builtin, lambdaFile;
    std::optional<int> generator;
    std::optional<int> mmax;
    bool periodic = false;
    bool e2 = false;
};

Output verbZcohom(const ZOptions& z) {
    simp::SimplicialComplex k;
    if (!z.builtin.empty()) {
        const auto b = catalog::complex(z.builtin);
        if (!b) throw SchemaError("", "unknown builtin complex '" + z.builtin + "'");
        k = *b;
    } else {
        k = io::readComplex(io::readFile(z.file));
    }
    std::vector<Rational> lambda(static_cast<std::size_t>(k.count(3)));
    std::optional<simp::LocalSystem> local;
    if (!z.lambdaFile.empty()) {
        auto d = io::readCochain3(io::readFile(z.lambdaFile), k);
        lambda = std::move(d.lambda);
        local = std::move(d.localSystem);
    }
    if (z.generator) {
        if (k.dimension() != 3) throw PreconditionError("generator", "--generator needs a 3-dimensional complex");
        const auto g = zc::topGenerator(k);
        for (std::size_t i = 0; i < g.size(); ++i) lambda[i] += g[i] * *z.generator;
    }
    const int dim = k.dimension();
    const int mmax = z.mmax.value_or(dim + 6);
    if (mmax < 0 || mmax > dim + 40) throw PreconditionError("mmax", "--mmax must lie in [0, dim K + 40]");
    const auto t = zc::buildTwisted(k, lambda, local, std::max(0, (mmax - dim + 1) / 2));
    const auto dims = zc::twistedCohomology(t, mmax);
    Output o;
    o.doc = {{"dimension", dim}, {"mmax", mmax}, {"dims", ints(dims)}, {"localSystem", local.has_value()}};
    Table tab({"m", "dim H^m"});
    for (int m = 0; m <= mmax; ++m) tab.add({std::to_string(m), std::to_string(dims[static_cast<std::size_t>(m)])});
    o.text = tab.str();
    if (mmax >= dim + 3) {
        const auto [e, od] = zc::stableDims(dims, dim);
        o.doc["stable"] = {{"even", e}, {"odd", od}};
        o.text += "\nstable (m >= " + std::to_string(dim + 2) + "): even " + std::to_string(e) + ", odd " + std::to_string(od) + "\n";
    }
    if (z.periodic) {
        const auto [e, od] = zc::periodicCohomology(k, lambda, local);
        o.doc["periodic"] = {{"even", e}, {"odd", od}};
        o.text += "periodic: even " + std::to_string(e) + ", odd " + std::to_string(od) + "\n";
    }
    if (z.e2) {
        const auto e2 = zc::spectralE2(t, mmax);
        o.doc["e2"] = ints(e2);
        o.text += "E2: " + joinInts(e2) + "\n";
    }
    return o;
}

// --- selftest -------------------------------------------------------------------------

Output verbSelftest(const std::string& filter, bool verbose, std::ostream& err) {
    const auto results = runSelftest(filter, [&](const CheckResult& r) {
        if (verbose) err << (r.passed ? "PASS " : "FAIL ") << r.module << "/" << r.name << "\n";
    });
    Output o;
    json checks = json::array();
    Table t({"module", "invariant", "result", "detail"});
    bool all = true;
    for (const auto& r : results) {
        checks.push_back({{"module", r.module}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        t.add({r.module, r.name, r.passed ? "PASS" : "FAIL", r.detail});
        all = all && r.passed;
    }
    o.doc = {{"checks", std::move(checks)}, {"passed", all}, {"count", static_cast<int>(results.size())}};
    o.text = t.str() + "\n" + std::to_string(results.size()) + " checks, " + (all ? "all passed" : "FAILURES") + "\n";
    o.code = all ? kOk : kInternal;
    return o;
}

void addSource(CLI::App* sub, Source& s, const std::string& what) {
    auto* g = sub->add_option_group("input", "exactly one input");
    g->add_option("-i,--input", s.file, what + " document (JSON)");
    g->add_option("-b,--builtin", s.builtin, "name of a built-in example");
    g->require_option(1);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"orbiloop: loop groupoids, gerbe transgression and delocalized twisted cohomology on finite models"};
    app.name("orbiloop");
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json", outputFile;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("-o,--output", outputFile, "write the report to a file instead of stdout");

    Source loopSrc, inertiaSrc, groupSrc;
    auto* loopCmd = app.add_subcommand("loop", "loop groupoid LX with its sectors (groupoid.v1 + loop-meta.v1)");
    addSource(loopCmd, loopSrc, "groupoid.v1");
    auto* inertiaCmd = app.add_subcommand("inertia-check", "compare the equalizer inertia IX with LX");
    addSource(inertiaCmd, inertiaSrc, "groupoid.v1");

    std::string coeff = "Z";
    int nmax = 4;
    auto* gcohomCmd = app.add_subcommand("gcohom", "group cohomology H^n(G; coeff) for n <= nmax");
    addSource(gcohomCmd, groupSrc, "group.v1");
    gcohomCmd->add_option("--coeff", coeff, "coefficients")->check(CLI::IsMember({"Z", "Q", "QmodZ"}))->capture_default_str();
    gcohomCmd->add_option("--nmax", nmax, "top degree")->capture_default_str();

    std::string bundleFile, gerbeFile;
    auto* transCmd = app.add_subcommand("transgress", "transgress a bundle (degree 1) or gerbe (degree 2) cocycle to loops");
    auto* mode = transCmd->add_option_group("mode", "exactly one cocycle");
    mode->add_option("--bundle", bundleFile, "cochain.v1 of degree 1");
    mode->add_option("--gerbe", gerbeFile, "cochain.v1 of degree 2");
    mode->require_option(1);

    int hm = 0, hk = 0, hn = 0;
    auto* holCmd = app.add_subcommand("holonomy-theorem", "compare the three holonomy routes for e_phi on Z/N x Z/m");
    holCmd->add_option("--gamma", hm, "order m of Gamma = Z/m")->required();
    holCmd->add_option("--phi", hk, "character phi(1) = k/m")->required();
    holCmd->add_option("--N", hn, "truncation of the circle direction")->required();

    std::string gFile, gBuiltin, betaFile;
    auto* delocCmd = app.add_subcommand("deloc", "delocalized twisted cohomology of a Gamma-complex");
    auto* gsrc = delocCmd->add_option_group("input", "exactly one input");
    gsrc->add_option("-i,--input", gFile, "gcomplex.v1 document");
    gsrc->add_option("-b,--builtin", gBuiltin, "built-in Gamma-complex, e.g. S2/Z2-rotation");
    gsrc->require_option(1);
    delocCmd->add_option("--beta", betaFile, "cochain.v1: Q/Z 2-cocycle on the group");

    ZOptions z;
    int gen = 0, mm = 0;
    auto* zCmd = app.add_subcommand("zcohom", "cohomology of the z-twisted complex C(K)[[z]] with d = delta + lambda T");
    auto* zsrc = zCmd->add_option_group("input", "exactly one input");
    zsrc->add_option("-i,--input", z.file, "scomplex.v1 document");
    zsrc->add_option("-b,--builtin", z.builtin, "built-in complex (point, interval, S1, S2, S3, T2)");
    zsrc->require_option(1);
    zCmd->add_option("--lambda", z.lambdaFile, "cochain3.v1 document (optionally with a local system)");
    auto* genOpt = zCmd->add_option("--generator", gen, "add k times the top generator to lambda (3-dimensional K)");
    auto* mmOpt = zCmd->add_option("--mmax", mm, "top total degree (default dim K + 6)");
    zCmd->add_flag("--periodic", z.periodic, "also compute the 2-periodic complex");
    zCmd->add_flag("--e2", z.e2, "also compute the E2 page of the z-filtration");

    std::string filter;
    bool verbose = false;
    auto* selfCmd = app.add_subcommand("selftest", "run the invariant suite of every module");
    selfCmd->add_option("--filter", filter, "only checks whose module/name contains this string");
    selfCmd->add_flag("-v,--verbose", verbose, "report each check on stderr as it finishes");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "orbiloop: usage error: " << e.what() << "\n";
        if (app.get_subcommands().empty()) err << "run 'orbiloop --help' for the list of verbs\n";
        return kSchema;
    }
    if (*genOpt) z.generator = gen;
    if (*mmOpt) z.mmax = mm;

    try {
        Output o;
        if (*loopCmd) o = verbLoop(loopSrc);
        else if (*inertiaCmd) o = verbInertia(inertiaSrc);
        else if (*gcohomCmd) o = verbGcohom(groupSrc, coeff, nmax);
        else if (*transCmd) o = bundleFile.empty() ? verbTransgressGerbe(gerbeFile) : verbTransgressBundle(bundleFile);
        else if (*holCmd) o = verbHolonomy(hm, hk, hn);
        else if (*delocCmd) o = verbDeloc(gFile, gBuiltin, betaFile);
        else if (*zCmd) o = verbZcohom(z);
        else if (*selfCmd) o = verbSelftest(filter, verbose, err);
        const std::string text = format == "json" ? io::dump(o.doc) : o.text;
        if (outputFile.empty()) {
            out << text;
        } else {
            std::ofstream f(outputFile, std::ios::binary);
            if (!f) throw SchemaError("", "cannot write '" + outputFile + "'");
            f << text;
        }
        return o.code;
    } catch (const SchemaError& e) {
        err << "orbiloop: schema error at '" << e.path() << "': " << e.what() << "\n";
        return kSchema;
    } catch (const PreconditionError& e) {
        err << "orbiloop: precondition '" << e.name() << "' failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const InternalError& e) {
        err << "orbiloop: internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        err << "orbiloop: internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace orbiloop::cli
