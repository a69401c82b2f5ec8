#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "orbiloop/bar.hpp"

namespace orbiloop::cohom {

/// An element (n, g) of Z x Gamma.
struct ZxElement {
    std::int64_t n = 0;
    int g = 0;
};

/// A cochain on Z x Gamma of degree <= 1 in each integer argument, stored by its values at
/// the corners n in {0,1}^k and evaluated by multilinear interpolation.
class ZxGammaCochain {
public:
    ZxGammaCochain(GroupPtr gamma, int degree, Coeff coeff);

    /// Samples f at the corners; throws PreconditionError("admissible") unless f agrees with
    /// its multilinear interpolation on {-1, 0, 1, 2}^k.
    static ZxGammaCochain fromFunction(GroupPtr gamma, int degree, Coeff coeff,
                                       const std::function<Rational(std::span<const ZxElement>)>& f);
    /// Pullback along Z x Gamma -> Gamma.
    static ZxGammaCochain pulledBack(const BarCochain& c);
    /// Cross product id_Z x c: (n_1, g_1), ..., (n_k, g_k) -> n_1 c(g_2, ..., g_k).
    static ZxGammaCochain crossWithGenerator(const BarCochain& c);

    const FiniteGroup& gamma() const { return *gamma_; }
    const GroupPtr& gammaPtr() const { return gamma_; }
    int degree() const noexcept { return degree_; }
    Coeff coeff() const noexcept { return coeff_; }

    Rational operator()(std::span<const ZxElement> args) const;
    Rational operator()(std::initializer_list<ZxElement> args) const {
        return (*this)(std::span<const ZxElement>(args.begin(), args.size()));
    }
    const Rational& corner(unsigned mask, std::size_t gammaIndex) const;
    void setCorner(unsigned mask, std::size_t gammaIndex, const Rational& v);
    std::size_t gammaTuples() const noexcept { return tuples_; }

    bool isZero() const;
    /// Q/Z -> Q through the corner representatives in [0, 1).
    ZxGammaCochain lift() const;
    ZxGammaCochain as(Coeff c) const;

private:
    GroupPtr gamma_;
    int degree_;
    Coeff coeff_;
    std::size_t tuples_;
    std::vector<Rational> corners_;  // [mask][gamma tuple]
};

ZxGammaCochain coboundary(const ZxGammaCochain& c);
bool isCocycle(const ZxGammaCochain& c);
/// Bockstein computed on the multilinear lift.
ZxGammaCochain bockstein(const ZxGammaCochain& c);

/// Slant with the generator of H^1(Z; Z):
/// (pi_! c)(g_1..g_{k-1}) = sum_i (-1)^i c((0,g_1)..(0,g_i),(1,e),(0,g_{i+1})..).
BarCochain integrate(const ZxGammaCochain& c);

}  // namespace orbiloop::cohom
