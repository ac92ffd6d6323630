#pragma once

#include "qorbit/charring.hpp"
#include "qorbit/rootsys.hpp"

#include <map>
#include <memory>
#include <vector>

namespace qorbit {

/// Explicit construction of the irreducible highest weight module at q = 1
/// over the rationals: weight spaces with exact Gram matrices and raising /
/// lowering matrices, built top-down with the contravariant form (positive
/// definite on the irreducible quotient). Serves as the independent oracle
/// for twining traces and weight multiplicities.
class ClassicalModule {
public:
    ClassicalModule(std::shared_ptr<const RootSystem> rs, Weight hw);

    const Weight& highest_weight() const { return hw_; }
    const std::map<Weight, std::size_t>& weight_dims() const { return dims_; }
    BigInt dimension() const;

    /// Twining table from the intertwiner J with J v+ = v+, J f_r = f_{tau r} J.
    TwiningTable twining(const Involution& tau) const;

private:
    struct Space {
        // basis vector i arises as f_{gen[i]} applied to vector parent[i] of
        // the space one step up
        std::vector<int> gen;
        std::vector<std::size_t> parent;
        std::vector<std::vector<Rational>> gram;
        // action matrices, one row per basis vector of this space:
        // e_mat[r][i] = coords of e_r b_i in the basis at mu + alpha_r
        std::map<int, std::vector<std::vector<Rational>>> e_mat;
        // f_mat[r][i] = coords of f_r b_i in the basis at mu - alpha_r
        std::map<int, std::vector<std::vector<Rational>>> f_mat;
    };

    const Space* space(const Weight& mu) const;

    std::shared_ptr<const RootSystem> rs_;
    Weight hw_;
    std::map<Weight, Space> spaces_;
    std::map<Weight, std::size_t> dims_;
};

} // namespace qorbit
