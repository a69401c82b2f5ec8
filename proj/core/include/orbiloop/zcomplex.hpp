#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbiloop/field.hpp"
#include "orbiloop/simplicial.hpp"

namespace orbiloop::zc {

using linalg::Cyclo;
using simp::SimplicialComplex;

/// Cochain complex of formal power series sum_j z^j x_j with z of degree 2 and differential
/// d(z^j x) = z^j delta x + j z^(j-1) lambda cup x.
///
/// The slice of total degree m is the direct sum of z^j C^(m-2j) over 0 <= m-2j <= dim K,
/// ordered by increasing j.
struct TwistedComplex {
    SimplicialComplex base;
    std::vector<Rational> lambda;  // 3-cochain
    std::optional<simp::LocalSystem> localSystem;
    std::shared_ptr<const linalg::CyclotomicField> field;  // set with a local system
    simp::Transport<Cyclo> transport;
    int zCap = 3;

    int mMax() const { return base.dimension() + 2 * zCap; }
    /// (j, form degree) blocks of the slice of total degree m.
    std::vector<std::pair<int, int>> blocks(int m) const;
    int sliceDim(int m) const;
    /// d: slice m -> slice m+1.
    linalg::SparseMatrix<Cyclo> differential(int m) const;
};

/// Checks delta lambda = 0, lambda cup lambda = 0 (automatic below dimension 6) and flatness
/// of the local system, then verifies d^2 = 0 on every slice up to mMax.
TwistedComplex buildTwisted(const SimplicialComplex& k, std::vector<Rational> lambda,
                            std::optional<simp::LocalSystem> localSystem = std::nullopt, int zCap = 3);

/// Dimensions of H^m for m = 0..mMax.
std::vector<int> twistedCohomology(const TwistedComplex& t, int mMax);

/// (dim H^even, dim H^odd) of (C^ev/odd(K; L), delta + lambda cup).
std::pair<int, int> periodicCohomology(const SimplicialComplex& k, const std::vector<Rational>& lambda,
                                       const std::optional<simp::LocalSystem>& localSystem = std::nullopt);

/// Dimensions of E_2 of the z-filtration spectral sequence for m = 0..mMax: the cohomology
/// of H^*(K; L)[z] under z^j [x] -> j z^(j-1) [lambda cup x].
std::vector<int> spectralE2(const TwistedComplex& t, int mMax);

/// Dimensions at the first two total degrees above dim K + 1 (even, odd).
std::pair<int, int> stableDims(const std::vector<int>& dims, int dimK);

/// Untwisted direct-sum oracle: sum_j dim H^(m-2j)(K; L).
std::vector<int> shiftedBetti(const std::vector<int>& betti, int mMax);

/// Gauge transform x -> sum_k (-mu cup)^k T^k x / k! between lambda = 0 and lambda = delta mu.
struct GaugeCheck {
    bool applicable = false;
    std::string reason;        // failed cochain condition when not applicable
    bool intertwines = false;  // d_lambda G = G d_0 on every slice
    std::vector<int> twisted;
    std::vector<int> untwisted;
    std::pair<int, int> periodicTwisted{0, 0};
    std::pair<int, int> periodicUntwisted{0, 0};
};
GaugeCheck checkGaugeTransform(const SimplicialComplex& k, const std::vector<Rational>& mu, int mMax,
                               const std::vector<Rational>& lambda0 = {});

// --- Duality pairing ------------------------------------------------------------------

/// One homogeneous summand: power of u (compact side) or z, a form degree and a cochain.
struct Term {
    int power;
    int degree;
    std::vector<Rational> cochain;
};
using Element = std::vector<Term>;

/// Orientation cycle with entries +-1 on the top simplices, if K is an orientable pseudomanifold
/// (one-dimensional top cycle space).
std::optional<std::vector<Rational>> fundamentalCycle(const SimplicialComplex& k);
/// Top cochain with value 1 on the fundamental cycle, supported on one simplex.
std::vector<Rational> topGenerator(const SimplicialComplex& k);

/// <u^n w, z^m a> = delta_{m,n} m! <w cup a, [K]>, summed over terms of complementary degree.
Rational dualityPairing(const SimplicialComplex& k, const std::vector<Rational>& orientation, const Element& omega,
                        const Element& alpha);
/// d_lambda on the z side.
Element dLambda(const SimplicialComplex& k, const std::vector<Rational>& lambda, const Element& alpha);
/// d'_lambda on the u side: u^n w -> u^n delta w - (-1)^p u^(n+1) w cup lambda.
Element dPrimeLambda(const SimplicialComplex& k, const std::vector<Rational>& lambda, const Element& omega);

}  // namespace orbiloop::zc
