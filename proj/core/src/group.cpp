#include "orbiloop/group.hpp"

#include <algorithm>
#include <numeric>

#include "orbiloop/error.hpp"

namespace orbiloop::gpd {

FiniteGroup FiniteGroup::fromTable(std::vector<std::string> names, const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(names.size());
    if (n == 0) throw PreconditionError("nonempty-group", "a group needs at least one element");
    if (static_cast<int>(table.size()) != n)
        throw PreconditionError("square-table", "Cayley table has wrong number of rows");
    FiniteGroup g;
    g.n_ = n;
    g.names_ = std::move(names);
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            throw PreconditionError("square-table", "Cayley table row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b) {
            const int c = table[a][b];
            if (c < 0 || c >= n) throw PreconditionError("closure", "table entry out of range");
            g.table_[static_cast<std::size_t>(a) * n + b] = c;
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw PreconditionError("associativity", "associativity fails on (" + g.names_[a] + ", " +
                                                                 g.names_[b] + ", " + g.names_[c] + ")");
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool unit = true;
        for (int b = 0; b < n && unit; ++b) unit = g.mul(a, b) == b && g.mul(b, a) == b;
        if (unit) e = a;
    }
    if (e < 0) throw PreconditionError("identity", "no two-sided identity");
    g.identity_ = e;
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == e && g.mul(b, a) == e) g.inverse_[a] = b;
        if (g.inverse_[a] < 0) throw PreconditionError("inverse", "element " + g.names_[a] + " has no inverse");
    }
    return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw PreconditionError("positive-order", "cyclic group order must be positive");
    std::vector<std::string> names(n);
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        names[a] = std::to_string(a);
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return fromTable(std::move(names), t);
}

FiniteGroup FiniteGroup::dihedral(int n) {
    // r^i s^j encoded as i + n*j; s r s = r^-1.
    const int order = 2 * n;
    std::vector<std::string> names(order);
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a) {
        const int i = a % n, j = a / n;
        names[a] = "r" + std::to_string(i) + (j == 0 ? "" : "s");
        for (int b = 0; b < order; ++b) {
            const int k = b % n, l = b / n;
            // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
            const int rot = ((i + (j == 0 ? k : -k)) % n + n) % n;
            t[a][b] = rot + n * ((j + l) % 2);
        }
    }
    return fromTable(std::move(names), t);
}

FiniteGroup FiniteGroup::symmetric3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::vector<std::string> names{"e", "(23)", "(12)", "(123)", "(132)", "(13)"};
    const int n = 6;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> c(3);
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return fromTable(names, t);
}

FiniteGroup FiniteGroup::quaternion() {
    // Unit quaternions +-1, +-i, +-j, +-k; index = 2*basis + sign.
    const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    // basis products: mult[a][b] = (sign, basis)
    const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    const int bas[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ba = a / 2, bb = b / 2;
            int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sgn[ba][bb];
            t[a][b] = 2 * bas[ba][bb] + (s < 0 ? 1 : 0);
        }
    return fromTable(names, t);
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<std::string> names(n);
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x) {
        names[x] = "(" + a.name(x / nb) + "," + b.name(x % nb) + ")";
        for (int y = 0; y < n; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
    return fromTable(std::move(names), t);
}

int FiniteGroup::power(int g, std::int64_t k) const {
    const int ord = elementOrder(g);
    k %= ord;
    if (k < 0) k += ord;
    int r = identity_;
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, g);
    return r;
}

std::optional<int> FiniteGroup::indexOf(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

int FiniteGroup::elementOrder(int g) const {
    int k = 1;
    for (int x = g; x != identity_; x = mul(x, g)) ++k;
    return k;
}

int FiniteGroup::exponent() const {
    int e = 1;
    for (int g = 0; g < n_; ++g) e = std::lcm(e, elementOrder(g));
    return e;
}

bool FiniteGroup::isAbelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < a; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

bool FiniteGroup::isCyclic() const {
    for (int g = 0; g < n_; ++g)
        if (elementOrder(g) == n_) return true;
    return false;
}

std::vector<std::vector<int>> FiniteGroup::conjugacyClasses() const {
    std::vector<int> seen(n_, 0);
    std::vector<std::vector<int>> classes;
    for (int g = 0; g < n_; ++g) {
        if (seen[g]) continue;
        std::vector<int> cls;
        for (int h = 0; h < n_; ++h) {
            const int c = conj(h, g);
            if (!seen[c]) {
                seen[c] = 1;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<int> FiniteGroup::centralizer(int g) const {
    std::vector<int> c;
    for (int h = 0; h < n_; ++h)
        if (mul(h, g) == mul(g, h)) c.push_back(h);
    return c;
}

int FiniteGroup::abelianizationOrder() const {
    std::vector<int> comms;
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) comms.push_back(mul(mul(a, b), mul(inv(a), inv(b))));
    return n_ / static_cast<int>(generatedSubgroup(*this, comms).size());
}

std::vector<int> FiniteGroup::generators() const {
    std::vector<int> gens;
    std::vector<int> span{identity_};
    for (int g = 0; g < n_ && static_cast<int>(span.size()) < n_; ++g) {
        if (std::binary_search(span.begin(), span.end(), g)) continue;
        gens.push_back(g);
        span = generatedSubgroup(*this, gens);
    }
    return gens;
}

std::vector<int> generatedSubgroup(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> frontier{g.identity()};
    in[g.identity()] = 1;
    while (!frontier.empty()) {
        const int x = frontier.back();
        frontier.pop_back();
        for (int s : gens) {
            const int y = g.mul(x, s);
            if (!in[y]) {
                in[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    std::vector<int> out;
    for (int x = 0; x < g.order(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

std::vector<std::vector<int>> homomorphisms(const FiniteGroup& g, const FiniteGroup& h) {
    const auto gens = g.generators();
    std::vector<std::vector<int>> result;
    std::vector<int> images(gens.size(), 0);
    // Extend generator images along a BFS of words; reject on conflict.
    auto extend = [&]() -> std::optional<std::vector<int>> {
        std::vector<int> phi(g.order(), -1);
        phi[g.identity()] = h.identity();
        std::vector<int> frontier{g.identity()};
        while (!frontier.empty()) {
            const int x = frontier.back();
            frontier.pop_back();
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const int y = g.mul(x, gens[i]);
                const int v = h.mul(phi[x], images[i]);
                if (phi[y] < 0) {
                    phi[y] = v;
                    frontier.push_back(y);
                } else if (phi[y] != v) {
                    return std::nullopt;
                }
            }
        }
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (phi[g.mul(a, b)] != h.mul(phi[a], phi[b])) return std::nullopt;
        return phi;
    };
    while (true) {
        if (auto phi = extend()) result.push_back(std::move(*phi));
        std::size_t i = 0;
        while (i < images.size() && ++images[i] == h.order()) images[i++] = 0;
        if (i == images.size()) break;
    }
    return result;
}

}  // namespace orbiloop::gpd
