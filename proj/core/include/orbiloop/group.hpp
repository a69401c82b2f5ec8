#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbiloop::gpd {

/// A finite group given by its Cayley table. Elements are indices 0..order()-1
/// carrying opaque display names.
class FiniteGroup {
public:
    /// Builds a group from a multiplication table (table[a][b] = a*b); identity and
    /// inverses are derived. Throws PreconditionError naming the violated axiom.
    static FiniteGroup fromTable(std::vector<std::string> names, const std::vector<std::vector<int>>& table);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
    /// Dihedral group of order 2n (D4 has order 8).
    static FiniteGroup dihedral(int n);
    static FiniteGroup symmetric3();
    static FiniteGroup quaternion();
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

    int order() const noexcept { return n_; }
    int identity() const noexcept { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int conj(int by, int g) const { return mul(mul(by, g), inv(by)); }
    int power(int g, std::int64_t k) const;
    const std::string& name(int a) const { return names_[a]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<int> indexOf(const std::string& name) const;

    int elementOrder(int g) const;
    int exponent() const;
    bool isAbelian() const;
    bool isCyclic() const;
    /// Conjugacy classes, each sorted, ordered by smallest member.
    std::vector<std::vector<int>> conjugacyClasses() const;
    std::vector<int> centralizer(int g) const;
    /// Order of the abelianization G/[G,G].
    int abelianizationOrder() const;
    /// Greedy generating set (deterministic).
    std::vector<int> generators() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.n_ == b.n_ && a.table_ == b.table_;
    }

private:
    FiniteGroup() = default;
    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr shareGroup(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Generated subgroup (sorted element list).
std::vector<int> generatedSubgroup(const FiniteGroup& g, const std::vector<int>& gens);

/// All homomorphisms G -> H as image tables, in lexicographic order of generator images.
std::vector<std::vector<int>> homomorphisms(const FiniteGroup& g, const FiniteGroup& h);

}  // namespace orbiloop::gpd
