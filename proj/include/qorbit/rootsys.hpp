#pragma once

#include "qorbit/errors.hpp"
#include "qorbit/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qorbit {

/// Weight in the fundamental-weight basis. Coordinates are rational so that
/// folded half-weights and projections stay exact; lattice membership is a
/// property, not a type.
struct Weight {
    std::vector<Rational> c;

    Weight() = default;
    explicit Weight(std::size_t rank) : c(rank, Rational(0)) {}
    explicit Weight(std::vector<Rational> coords) : c(std::move(coords)) {}

    std::size_t rank() const { return c.size(); }
    bool is_zero() const;
    bool is_integral() const;
    bool is_dominant() const; // all coordinates >= 0

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const;
    friend Weight operator*(const Rational& s, Weight w);

    friend bool operator==(const Weight& a, const Weight& b) { return a.c == b.c; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b); // lexicographic

    std::string str() const;
};

/// Element of the Weyl group, identified by its integer action matrix on the
/// fundamental-weight basis; a reduced word is carried alongside.
class WeylElement {
public:
    WeylElement() = default;
    WeylElement(std::size_t rank, std::vector<long long> mat, std::vector<int> word)
        : rank_(rank), mat_(std::move(mat)), word_(std::move(word)) {}

    static WeylElement identity(std::size_t rank);

    std::size_t rank() const { return rank_; }
    const std::vector<long long>& mat() const { return mat_; }
    const std::vector<int>& word() const { return word_; }
    bool is_identity() const;
    std::size_t length() const { return word_.size(); }

    Weight act(const Weight& w) const;
    WeylElement compose(const WeylElement& o) const; // this * o (o acts first)
    WeylElement inverse() const;

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.mat_ == b.mat_;
    }
    friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
    friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.mat_ < b.mat_; }

    std::string word_str() const; // "e" or "s1 s3 ..."

private:
    std::size_t rank_ = 0;
    std::vector<long long> mat_; // row-major rank x rank
    std::vector<int> word_;
};

struct PosRoot {
    std::vector<int> alpha; // coordinates in the simple-root basis
    Weight w;               // the same root in the fundamental-weight basis
    int height = 0;
};

/// Finite reduced root system with short-root normalization (alpha,alpha)=2
/// in every simple component.
class RootSystem {
public:
    static constexpr std::size_t kWeylGuard = 100000;
    static constexpr std::size_t kWeylRankGuard = 9;

    /// Accepts labels like "A3", "G2" and products like "A1xA1".
    static std::shared_ptr<const RootSystem> from_label(const std::string& label);
    static std::shared_ptr<const RootSystem> from_cartan(const std::vector<std::vector<int>>& a);

    std::size_t rank() const { return rank_; }
    const std::string& label() const { return label_; }
    int cartan(std::size_t r, std::size_t s) const { return cartan_[r * rank_ + s]; }
    const Rational& d(std::size_t r) const { return d_[r]; }
    const std::vector<PosRoot>& positive_roots() const { return pos_roots_; }
    const Weight& rho() const { return rho_; }

    /// (a, b) under the invariant form.
    Rational pairing(const Weight& a, const Weight& b) const;
    /// (a, alpha^vee) for a root alpha given in weight coordinates.
    Rational pair_coroot(const Weight& a, const Weight& alpha) const;

    Weight fundamental_weight(std::size_t r) const;
    Weight simple_root(std::size_t r) const;
    Weight weight_from_alpha_coords(const std::vector<Rational>& m) const;
    std::vector<Rational> alpha_coords(const Weight& w) const;
    bool in_root_lattice(const Weight& w) const;

    const WeylElement& simple_reflection(std::size_t r) const { return simple_refl_[r]; }
    bool is_root(const Weight& w) const { return root_set_.count(w) > 0; }
    bool is_positive_root(const Weight& w) const { return pos_root_set_.count(w) > 0; }

    /// Full Weyl group, deduplicated by action matrix, BFS order from the
    /// identity. Guarded by rank and group size; cached.
    const std::vector<WeylElement>& weyl() const;
    const WeylElement& longest_element() const;

    /// Apply simple reflections until dominant; if witness is non-null it
    /// receives w with act(w, v) dominant.
    Weight dominant_representative(const Weight& v, WeylElement* witness = nullptr) const;

    /// Exact dimension of the irreducible with highest weight hw (Weyl
    /// dimension formula).
    BigInt weyl_dimension(const Weight& hw) const;

private:
    RootSystem() = default;
    void init(const std::string& label, std::vector<int> cartan, std::size_t rank);
    void generate_roots();

    std::string label_;
    std::size_t rank_ = 0;
    std::vector<int> cartan_;
    std::vector<Rational> d_;
    std::vector<Rational> gram_;       // (varpi_r, varpi_s)
    std::vector<Rational> cartan_inv_; // A^{-1}
    std::vector<PosRoot> pos_roots_;
    std::set<Weight> pos_root_set_;
    std::set<Weight> root_set_;
    Weight rho_;
    std::vector<WeylElement> simple_refl_;
    mutable std::vector<WeylElement> weyl_cache_;
    mutable std::optional<WeylElement> longest_;
};

/// Dynkin diagram involution (possibly the identity).
class Involution {
public:
    Involution() = default;
    /// perm is 0-based; validated as an involutive diagram automorphism.
    Involution(const RootSystem& rs, std::vector<int> perm);

    static Involution identity(const RootSystem& rs);

    int operator()(int r) const { return perm_[(std::size_t)r]; }
    const std::vector<int>& perm() const { return perm_; }
    bool is_identity() const;
    std::size_t rank() const { return perm_.size(); }

    /// tau-fixed nodes.
    std::vector<int> fixed_nodes() const;
    /// Fundamental domain inside the moved nodes: lowest index per 2-cycle.
    std::vector<int> fundamental_domain() const;

    /// Action on weight coordinates (permutation of fundamental weights).
    Weight act(const Weight& w) const;
    bool commutes_with(const WeylElement& w) const;

private:
    std::vector<int> perm_;
};

/// Folding of a root system along a diagram involution. Covers tau = id
/// (trivial folding) uniformly.
class FoldedSystem {
public:
    FoldedSystem(std::shared_ptr<const RootSystem> base, Involution tau);

    const RootSystem& base() const { return *base_; }
    const Involution& tau() const { return tau_; }

    std::size_t num_classes() const { return classes_.size(); }
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int class_of(int node) const { return class_of_[(std::size_t)node]; }

    int folded_cartan(std::size_t k, std::size_t l) const {
        return folded_cartan_[k * classes_.size() + l];
    }
    bool non_reduced() const { return non_reduced_; }
    const std::string& folded_type() const { return folded_type_; }

    /// alpha_{r-hat} = (alpha_r)_+ for the class representative, as a vector
    /// in the ambient weight coordinates.
    const Weight& folded_simple(std::size_t k) const { return folded_simple_[k]; }
    /// varpi_{r-hat}: folded fundamental weight.
    const Weight& folded_fundamental_weight(std::size_t k) const { return folded_weight_[k]; }
    /// Lifted generator: the longest element of the parabolic on {r, tau(r)}.
    const WeylElement& lifted_generator(std::size_t k) const { return lifted_gen_[k]; }

    /// Projection onto the tau-fixed subspace: v_+ = (v + tau v)/2.
    Weight project(const Weight& v) const;

    /// All folded roots {alpha_+ : alpha positive}, deduplicated, with
    /// integer coordinates in the folded simple basis.
    struct FoldedRoot {
        Weight w;
        std::vector<int> coords;
    };
    const std::vector<FoldedRoot>& folded_positive_roots() const { return folded_pos_; }
    bool is_folded_positive(const Weight& w) const { return folded_pos_set_.count(w) > 0; }

    /// Integer coordinates of a tau-fixed vector in the folded simple basis,
    /// if they exist.
    std::optional<std::vector<Rational>> folded_simple_coords(const Weight& v) const;

    /// tau-fixed subgroup of the Weyl group (guarded enumeration; cached).
    const std::vector<WeylElement>& weyl_tau() const;

    /// The element of W^tau restricting to the reflection across the folded
    /// root beta on the fixed subspace.
    WeylElement reflection_of(const Weight& beta) const;

    /// Sign character of the folded Weyl group: parity of the length of the
    /// restriction of w in terms of the folded simple reflections.
    int hsgn(const WeylElement& w) const;

private:
    std::shared_ptr<const RootSystem> base_;
    Involution tau_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
    std::vector<int> folded_cartan_;
    bool non_reduced_ = false;
    std::string folded_type_;
    std::vector<Weight> folded_simple_;
    std::vector<Weight> folded_weight_;
    std::vector<WeylElement> lifted_gen_;
    std::vector<FoldedRoot> folded_pos_;
    std::set<Weight> folded_pos_set_;
    mutable std::vector<WeylElement> weyl_tau_cache_;
};

/// Recognize a finite-type Cartan matrix up to simultaneous permutation;
/// returns e.g. "B3", "A1xA1", or nullopt.
std::optional<std::string> recognize_cartan(const std::vector<std::vector<int>>& a);

/// Cartan matrix of a named simple type (A..G with rank suffix).
std::vector<std::vector<int>> builtin_cartan(const std::string& simple_label);

/// Subgroup generated by the given elements, BFS closure with a size guard.
std::vector<WeylElement> generate_subgroup(const std::vector<WeylElement>& gens, std::size_t rank,
                                           std::size_t guard = RootSystem::kWeylGuard);

} // namespace qorbit
