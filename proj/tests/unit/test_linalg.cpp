#include <random>

#include "doctest.h"
#include "orbiloop/field.hpp"
#include "orbiloop/simplicial.hpp"

using namespace orbiloop;
using namespace orbiloop::linalg;

namespace {

// Plain dense Gaussian elimination.
int denseRank(std::vector<std::vector<Rational>> a) {
    int r = 0;
    const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

SparseMatrix<Rational> randomMatrix(int rows, int cols, std::mt19937& rng, double density) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-3, 3);
    SparseMatrix<Rational> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (u(rng) < density) {
                const int x = v(rng);
                if (x) m.data[i].emplace_back(j, Rational(x));
            }
    return m;
}

std::vector<std::vector<Rational>> dense(const SparseMatrix<Rational>& m) {
    std::vector<std::vector<Rational>> d(m.rows, std::vector<Rational>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, x] : m.data[i]) d[i][j] = x;
    return d;
}

std::vector<Rational> poly(std::initializer_list<int> c) {
    std::vector<Rational> out;
    for (int x : c) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomicPolynomial(1) == poly({-1, 1}));
    CHECK(cyclotomicPolynomial(2) == poly({1, 1}));
    CHECK(cyclotomicPolynomial(4) == poly({1, 0, 1}));
    CHECK(cyclotomicPolynomial(6) == poly({1, -1, 1}));
    CHECK(cyclotomicPolynomial(8) == poly({1, 0, 0, 0, 1}));
    CHECK(cyclotomicPolynomial(9) == poly({1, 0, 0, 1, 0, 0, 1}));
    CHECK(cyclotomicPolynomial(12) == poly({1, 0, -1, 0, 1}));
    // Degrees are Euler's totient.
    const int phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
    for (int n = 1; n <= 12; ++n) CHECK(static_cast<int>(cyclotomicPolynomial(n).size()) - 1 == phi[n]);
}

TEST_CASE("cyclotomic field arithmetic") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
        auto f = std::make_shared<const CyclotomicField>(n);
        const Cyclo z = Cyclo::zetaPower(f, 1);
        Cyclo p(1), sum(0);
        for (int k = 0; k < n; ++k) {
            sum += p;
            p *= z;
        }
        CHECK(p == Cyclo(1));
        CHECK(sum == Cyclo(n == 1 ? 1 : 0));
        CHECK(Cyclo::root(f, Rational(1, n)) == z);
        CHECK(Cyclo::zetaPower(f, -1) * z == Cyclo(1));
        auto rnd = [&] {
            std::vector<Rational> c;
            for (int i = 0; i < f->degree(); ++i) c.emplace_back(d(rng), 1 + std::abs(d(rng)));
            return Cyclo(f, c);
        };
        for (int t = 0; t < 20; ++t) {
            const Cyclo a = rnd(), b = rnd(), c = rnd();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.isZero()) CHECK(a * a.inverse() == Cyclo(1));
            if (!b.isZero()) CHECK((a / b) * b == a);
        }
    }
    auto f6 = std::make_shared<const CyclotomicField>(6);
    CHECK_THROWS_AS(Cyclo::root(f6, Rational(1, 4)), PreconditionError);
    CHECK_THROWS_AS(Cyclo(0).inverse(), PreconditionError);
}

TEST_CASE("row reduction matches a dense oracle") {
    std::mt19937 rng(11);
    for (int t = 0; t < 60; ++t) {
        const int rows = 1 + static_cast<int>(rng() % 9), cols = 1 + static_cast<int>(rng() % 9);
        const auto m = randomMatrix(rows, cols, rng, t % 3 == 0 ? 0.2 : 0.6);
        CHECK(rank(m) == denseRank(dense(m)));
        RowReducer<Rational> r(cols);
        for (const auto& row : m.data) r.add(row);
        const auto ns = r.nullspace();
        CHECK(static_cast<int>(ns.size()) == cols - r.rank());
        for (const auto& v : ns) CHECK(m.apply(v).empty());
        // Consistent and inconsistent right-hand sides.
        SparseVec<Rational> x0;
        for (int j = 0; j < cols; ++j) x0.emplace_back(j, Rational(static_cast<int>(rng() % 5) - 2));
        std::erase_if(x0, [](const auto& e) { return e.second == 0; });
        const auto b = m.apply(x0);
        const auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
        if (rank(m) < rows) {
            // Some unit vector lies outside the column space.
            bool found = false;
            for (int i = 0; i < rows && !found; ++i) found = !solve(m, SparseVec<Rational>{{i, Rational(1)}}).has_value();
            CHECK(found);
        }
    }
}

TEST_CASE("simplicial complexes and cohomology") {
    using namespace orbiloop::simp;
    CHECK(point().fVector() == std::vector<int>{1});
    CHECK(simplexBoundary(3).fVector() == std::vector<int>{4, 6, 4});
    CHECK(simplexBoundary(4).fVector() == std::vector<int>{5, 10, 10, 5});
    CHECK(torus7().fVector() == std::vector<int>{7, 21, 14});
    CHECK(torus7().eulerCharacteristic() == 0);

    CHECK(simplicialCohomology<Rational>(point()).dims() == std::vector<int>{1});
    CHECK(simplicialCohomology<Rational>(interval()).dims() == std::vector<int>{1, 0});
    CHECK(simplicialCohomology<Rational>(simplexBoundary(2)).dims() == std::vector<int>{1, 1});
    CHECK(simplicialCohomology<Rational>(simplexBoundary(3)).dims() == std::vector<int>{1, 0, 1});
    CHECK(simplicialCohomology<Rational>(simplexBoundary(4)).dims() == std::vector<int>{1, 0, 0, 1});
    CHECK(simplicialCohomology<Rational>(torus7()).dims() == std::vector<int>{1, 2, 1});
    CHECK(simplicialCohomology<Rational>(fullSimplex(3)).dims() == std::vector<int>{1, 0, 0, 0});

    // Subdivision preserves Euler characteristic and cohomology.
    const auto sd = barycentric(fullSimplex(2));
    CHECK(sd.complex.fVector() == std::vector<int>{7, 12, 6});
    for (const auto& k : {simplexBoundary(3), torus7(), interval()}) {
        const auto s1 = barycentric(k).complex;
        CHECK(s1.eulerCharacteristic() == k.eulerCharacteristic());
        CHECK(simplicialCohomology<Rational>(s1).dims() == simplicialCohomology<Rational>(k).dims());
    }
    const auto s2 = barycentric(barycentric(simplexBoundary(3)).complex).complex;
    CHECK(s2.fVector() == std::vector<int>{74, 216, 144});
    CHECK(simplicialCohomology<Rational>(s2).dims() == std::vector<int>{1, 0, 1});

    // Cohomology over Q(zeta) of an integer complex has the rational dimensions.
    auto f5 = std::make_shared<const CyclotomicField>(5);
    CHECK(simplicialCohomology<Cyclo>(torus7()).dims() == std::vector<int>{1, 2, 1});
}

TEST_CASE("twisted coefficients and cup products") {
    using namespace orbiloop::simp;
    std::mt19937 rng(3);
    // Circle with holonomy 1/3: all twisted cohomology vanishes.
    const auto c = simplexBoundary(2);
    LocalSystem l{{Rational(1, 3), 0, 0}};  // edges 01, 02, 12
    CHECK(!isFlat(fullSimplex(2), LocalSystem{{Rational(1, 3), 0, 0}}));
    auto f3 = std::make_shared<const CyclotomicField>(3);
    const auto tr = transportOf(c, l, f3);
    CHECK(simplicialCohomology<Cyclo>(c, tr).dims() == std::vector<int>{0, 0});

    // Torus with a flat system: delta^2 = 0 and twisted cohomology vanishes for a nontrivial system.
    const auto t = torus7();
    const auto h1 = simplicialCohomology<Rational>(t).degrees[1];
    Cochain<Rational> a = toDense(h1.representative(0), t.count(1));
    LocalSystem lt;
    for (const auto& v : a) {
        Rational x = v / 4;
        x -= Rational(BigInt(x.get_num() / x.get_den()));
        if (x < 0) x += 1;
        x.canonicalize();
        lt.edge.push_back(x);
    }
    REQUIRE(isFlat(t, lt));
    auto f4 = std::make_shared<const CyclotomicField>(4);
    const auto tt = transportOf(t, lt, f4);
    for (int d = 0; d < 2; ++d)
        CHECK(multiply(coboundaryMatrix<Cyclo>(t, d + 1, tt), coboundaryMatrix<Cyclo>(t, d, tt)).isZero());
    const auto dims = simplicialCohomology<Cyclo>(t, tt).dims();
    CHECK(dims[0] == 0);
    CHECK(dims[0] - dims[1] + dims[2] == 0);

    // Leibniz rule and associativity for the cup product on constant coefficients.
    const auto s = barycentric(fullSimplex(3)).complex;
    std::uniform_int_distribution<int> d(-3, 3);
    auto rnd = [&](int k) {
        Cochain<Rational> v(s.count(k));
        for (auto& x : v) x = d(rng);
        return v;
    };
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; p + q <= 2; ++q) {
            const auto x = rnd(p), y = rnd(q);
            const auto dp = coboundaryMatrix<Rational>(s, p), dq = coboundaryMatrix<Rational>(s, q),
                       dpq = coboundaryMatrix<Rational>(s, p + q);
            const auto lhs = toDense(dpq.apply(toSparse(cup(s, x, p, y, q))), s.count(p + q + 1));
            const auto r1 = cup(s, toDense(dp.apply(toSparse(x)), s.count(p + 1)), p + 1, y, q);
            const auto r2 = cup(s, x, p, toDense(dq.apply(toSparse(y)), s.count(q + 1)), q + 1);
            for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == r1[i] + (p % 2 ? -1 : 1) * r2[i]);
            const auto z = rnd(0);
            CHECK(cup(s, cup(s, x, p, y, q), p + q, z, 0) == cup(s, x, p, cup(s, y, q, z, 0), q));
        }

    // Cup product on H^1 of the torus is a nondegenerate alternating pairing into H^2.
    const auto h = simplicialCohomology<Rational>(t);
    Rational m[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto ai = toDense(h.degrees[1].representative(i), t.count(1));
            const auto aj = toDense(h.degrees[1].representative(j), t.count(1));
            m[i][j] = h.degrees[2].coordinates(toSparse(cup(t, ai, 1, aj, 1)))[0];
        }
    CHECK(m[0][0] == 0);
    CHECK(m[1][1] == 0);
    CHECK(m[0][1] == -m[1][0]);
    CHECK(m[0][1] != 0);
}
