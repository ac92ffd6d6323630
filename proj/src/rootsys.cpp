#include "qorbit/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace qorbit {

// ---------------------------------------------------------------- Weight

bool Weight::is_zero() const {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

bool Weight::is_integral() const {
    for (const auto& x : c)
        if (!x.is_integer()) return false;
    return true;
}

bool Weight::is_dominant() const {
    for (const auto& x : c)
        if (x.is_negative()) return false;
    return true;
}

Weight& Weight::operator+=(const Weight& o) {
    if (c.size() != o.c.size()) throw std::invalid_argument("Weight: rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (c.size() != o.c.size()) throw std::invalid_argument("Weight: rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

Weight operator*(const Rational& s, Weight w) {
    for (auto& x : w.c) x *= s;
    return w;
}

bool operator<(const Weight& a, const Weight& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] < b.c[i]) return true;
        if (b.c[i] < a.c[i]) return false;
    }
    return false;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << ")";
    return os.str();
}

// ------------------------------------------------------------ WeylElement

WeylElement WeylElement::identity(std::size_t rank) {
    std::vector<long long> m(rank * rank, 0);
    for (std::size_t i = 0; i < rank; ++i) m[i * rank + i] = 1;
    return WeylElement(rank, std::move(m), {});
}

bool WeylElement::is_identity() const {
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j)
            if (mat_[i * rank_ + j] != (i == j ? 1 : 0)) return false;
    return true;
}

Weight WeylElement::act(const Weight& w) const {
    if (w.rank() != rank_) throw std::invalid_argument("WeylElement: rank mismatch");
    Weight r(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < rank_; ++j) {
            long long m = mat_[i * rank_ + j];
            if (m != 0) acc += Rational(m) * w.c[j];
        }
        r.c[i] = acc;
    }
    return r;
}

WeylElement WeylElement::compose(const WeylElement& o) const {
    if (o.rank_ != rank_) throw std::invalid_argument("WeylElement: rank mismatch");
    std::vector<long long> m(rank_ * rank_, 0);
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t k = 0; k < rank_; ++k) {
            long long a = mat_[i * rank_ + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < rank_; ++j)
                m[i * rank_ + j] += a * o.mat_[k * rank_ + j];
        }
    std::vector<int> word = word_;
    word.insert(word.end(), o.word_.begin(), o.word_.end());
    return WeylElement(rank_, std::move(m), std::move(word));
}

WeylElement WeylElement::inverse() const {
    // Words consist of involutions, so reversing gives the inverse.
    std::vector<int> word(word_.rbegin(), word_.rend());
    // Rebuild the matrix by transposition-free exact inversion: for Weyl
    // matrices the inverse is integral; compute via adjugate-free method
    // using the reversed word would need the generators, so invert directly.
    std::size_t n = rank_;
    std::vector<Rational> a(n * 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = Rational(mat_[i * n + j]);
        a[i * 2 * n + n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * 2 * n + col].is_zero()) ++piv;
        if (piv == n) throw std::logic_error("WeylElement: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a[piv * 2 * n + j], a[col * 2 * n + j]);
        Rational p = a[col * 2 * n + col];
        for (std::size_t j = 0; j < 2 * n; ++j) a[col * 2 * n + j] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i * 2 * n + col].is_zero()) continue;
            Rational f = a[i * 2 * n + col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i * 2 * n + j] -= f * a[col * 2 * n + j];
        }
    }
    std::vector<long long> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& v = a[i * 2 * n + n + j];
            if (!v.is_integer()) throw std::logic_error("WeylElement: non-integral inverse");
            m[i * n + j] = v.num().convert_to<long long>();
        }
    return WeylElement(n, std::move(m), std::move(word));
}

std::string WeylElement::word_str() const {
    if (word_.empty()) return "e";
    std::ostringstream os;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i) os << " ";
        os << "s" << (word_[i] + 1);
    }
    return os.str();
}

// ------------------------------------------------------------- RootSystem

namespace {

std::vector<Rational> invert_rational_matrix(const std::vector<Rational>& m, std::size_t n) {
    std::vector<Rational> a(n * 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = m[i * n + j];
        a[i * 2 * n + n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * 2 * n + col].is_zero()) ++piv;
        if (piv == n) throw std::invalid_argument("matrix not invertible");
        if (piv != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a[piv * 2 * n + j], a[col * 2 * n + j]);
        Rational p = a[col * 2 * n + col];
        for (std::size_t j = 0; j < 2 * n; ++j) a[col * 2 * n + j] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i * 2 * n + col].is_zero()) continue;
            Rational f = a[i * 2 * n + col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i * 2 * n + j] -= f * a[col * 2 * n + j];
        }
    }
    std::vector<Rational> inv(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i * n + j] = a[i * 2 * n + n + j];
    return inv;
}

} // namespace

std::vector<std::vector<int>> builtin_cartan(const std::string& simple_label) {
    if (simple_label.size() < 2) throw std::invalid_argument("bad type label: " + simple_label);
    char t = simple_label[0];
    int n = std::stoi(simple_label.substr(1));
    if (n < 1) throw std::invalid_argument("bad rank in label: " + simple_label);
    auto chain = [](int k) {
        std::vector<std::vector<int>> a((std::size_t)k, std::vector<int>((std::size_t)k, 0));
        for (int i = 0; i < k; ++i) {
            a[i][i] = 2;
            if (i + 1 < k) a[i][i + 1] = a[i + 1][i] = -1;
        }
        return a;
    };
    switch (t) {
    case 'A':
        return chain(n);
    case 'B': {
        if (n < 2) throw std::invalid_argument("B requires rank >= 2");
        auto a = chain(n);
        a[n - 2][n - 1] = -1;
        a[n - 1][n - 2] = -2; // alpha_n short
        return a;
    }
    case 'C': {
        if (n < 2) throw std::invalid_argument("C requires rank >= 2");
        auto a = chain(n);
        a[n - 2][n - 1] = -2;
        a[n - 1][n - 2] = -1; // alpha_n long
        return a;
    }
    case 'D': {
        if (n < 4) throw std::invalid_argument("D requires rank >= 4");
        auto a = chain(n - 1);
        for (auto& row : a) row.push_back(0);
        a.push_back(std::vector<int>((std::size_t)n, 0));
        a[n - 1][n - 1] = 2;
        // last node attaches to node n-3 (0-based), next to the fork
        a[n - 2][n - 1] = 0;
        a[n - 1][n - 2] = 0;
        a[n - 3][n - 1] = -1;
        a[n - 1][n - 3] = -1;
        return a;
    }
    case 'E': {
        if (n < 6 || n > 8) throw std::invalid_argument("E requires rank 6..8");
        auto a = chain(n - 1);
        for (auto& row : a) row.push_back(0);
        a.push_back(std::vector<int>((std::size_t)n, 0));
        a[n - 1][n - 1] = 2;
        a[2][n - 1] = -1; // branch below the third node of the chain
        a[n - 1][2] = -1;
        return a;
    }
    case 'F': {
        if (n != 4) throw std::invalid_argument("F requires rank 4");
        return {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    }
    case 'G': {
        if (n != 2) throw std::invalid_argument("G requires rank 2");
        return {{2, -1}, {-3, 2}};
    }
    default:
        throw std::invalid_argument("unknown type letter in label: " + simple_label);
    }
}

void RootSystem::init(const std::string& label, std::vector<int> cartan, std::size_t rank) {
    label_ = label;
    rank_ = rank;
    cartan_ = std::move(cartan);
    for (std::size_t r = 0; r < rank_; ++r) {
        if (this->cartan(r, r) != 2) throw std::invalid_argument("Cartan: diagonal must be 2");
        for (std::size_t s = 0; s < rank_; ++s) {
            if (r == s) continue;
            if (this->cartan(r, s) > 0) throw std::invalid_argument("Cartan: positive off-diagonal");
            if ((this->cartan(r, s) == 0) != (this->cartan(s, r) == 0))
                throw std::invalid_argument("Cartan: zero pattern not symmetric");
        }
    }

    // Symmetrizing d with short roots at (alpha,alpha)=2 per component.
    d_.assign(rank_, Rational(0));
    std::vector<int> comp(rank_, -1);
    for (std::size_t start = 0; start < rank_; ++start) {
        if (comp[start] >= 0) continue;
        std::deque<std::size_t> queue{start};
        comp[start] = (int)start;
        d_[start] = Rational(1);
        std::vector<std::size_t> members;
        while (!queue.empty()) {
            std::size_t r = queue.front();
            queue.pop_front();
            members.push_back(r);
            for (std::size_t s = 0; s < rank_; ++s) {
                if (s == r || this->cartan(r, s) == 0) continue;
                if (comp[s] < 0) {
                    comp[s] = (int)start;
                    // d_r a_rs = d_s a_sr  =>  d_s = d_r a_rs / a_sr
                    d_[s] = d_[r] * Rational(this->cartan(r, s)) / Rational(this->cartan(s, r));
                    queue.push_back(s);
                } else if (d_[s] * Rational(this->cartan(s, r)) != d_[r] * Rational(this->cartan(r, s))) {
                    throw std::invalid_argument("Cartan: not symmetrizable");
                }
            }
        }
        Rational mn = d_[members[0]];
        for (auto m : members) mn = std::min(mn, d_[m]);
        for (auto m : members) d_[m] /= mn;
    }

    // Gram matrix of fundamental weights: G = diag(d) A^{-1}.
    std::vector<Rational> a(rank_ * rank_);
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) a[i * rank_ + j] = Rational(this->cartan(i, j));
    cartan_inv_ = invert_rational_matrix(a, rank_);
    gram_.assign(rank_ * rank_, Rational(0));
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) gram_[i * rank_ + j] = d_[i] * cartan_inv_[i * rank_ + j];
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gram_[i * rank_ + j] != gram_[j * rank_ + i])
                throw std::invalid_argument("Cartan: Gram matrix not symmetric");

    rho_ = Weight(rank_);
    for (auto& x : rho_.c) x = Rational(1);

    for (std::size_t r = 0; r < rank_; ++r) {
        std::vector<long long> m(rank_ * rank_, 0);
        for (std::size_t i = 0; i < rank_; ++i) m[i * rank_ + i] = 1;
        for (std::size_t t = 0; t < rank_; ++t) m[t * rank_ + r] -= this->cartan(t, r);
        simple_refl_.push_back(WeylElement(rank_, std::move(m), {(int)r}));
    }

    generate_roots();
}

void RootSystem::generate_roots() {
    const std::size_t bound = 40 * rank_ * rank_ + 120;
    std::set<std::vector<int>> seen;
    std::deque<std::vector<int>> queue;
    for (std::size_t r = 0; r < rank_; ++r) {
        std::vector<int> e(rank_, 0);
        e[r] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        std::vector<int> m = queue.front();
        queue.pop_front();
        for (std::size_t r = 0; r < rank_; ++r) {
            long long pair = 0;
            for (std::size_t s = 0; s < rank_; ++s) pair += (long long)cartan(r, s) * m[s];
            std::vector<int> m2 = m;
            m2[r] -= (int)pair;
            bool positive = true;
            for (auto v : m2)
                if (v < 0) positive = false;
            if (!positive) continue;
            if (seen.insert(m2).second) {
                queue.push_back(m2);
                if (seen.size() > bound)
                    throw std::invalid_argument("root generation exceeded the finite-type bound");
            }
        }
    }
    for (const auto& m : seen) {
        PosRoot pr;
        pr.alpha = m;
        std::vector<Rational> mr(m.begin(), m.end());
        pr.w = weight_from_alpha_coords(mr);
        pr.height = std::accumulate(m.begin(), m.end(), 0);
        pos_roots_.push_back(std::move(pr));
    }
    std::sort(pos_roots_.begin(), pos_roots_.end(),
              [](const PosRoot& x, const PosRoot& y) {
                  if (x.height != y.height) return x.height < y.height;
                  return x.alpha < y.alpha;
              });
    for (const auto& pr : pos_roots_) {
        pos_root_set_.insert(pr.w);
        root_set_.insert(pr.w);
        root_set_.insert(-pr.w);
    }
}

std::shared_ptr<const RootSystem> RootSystem::from_label(const std::string& label) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos < label.size()) {
        auto x = label.find('x', pos);
        if (x == std::string::npos) {
            parts.push_back(label.substr(pos));
            break;
        }
        parts.push_back(label.substr(pos, x - pos));
        pos = x + 1;
    }
    if (parts.empty()) throw std::invalid_argument("empty type label");
    std::vector<std::vector<std::vector<int>>> blocks;
    std::size_t total = 0;
    for (const auto& p : parts) {
        blocks.push_back(builtin_cartan(p));
        total += blocks.back().size();
    }
    std::vector<int> cartan(total * total, 0);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                cartan[(off + i) * total + (off + j)] = b[i][j];
        off += b.size();
    }
    auto rs = std::shared_ptr<RootSystem>(new RootSystem());
    rs->init(label, std::move(cartan), total);
    return rs;
}

std::shared_ptr<const RootSystem> RootSystem::from_cartan(const std::vector<std::vector<int>>& a) {
    std::size_t n = a.size();
    std::vector<int> cartan(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("Cartan matrix must be square");
        for (std::size_t j = 0; j < n; ++j) cartan[i * n + j] = a[i][j];
    }
    auto label = recognize_cartan(a);
    auto rs = std::shared_ptr<RootSystem>(new RootSystem());
    rs->init(label ? *label : "custom", std::move(cartan), n);
    return rs;
}

Rational RootSystem::pairing(const Weight& a, const Weight& b) const {
    if (a.rank() != rank_ || b.rank() != rank_) throw std::invalid_argument("pairing: rank mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < rank_; ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < rank_; ++j) {
            if (b.c[j].is_zero()) continue;
            acc += a.c[i] * gram_[i * rank_ + j] * b.c[j];
        }
    }
    return acc;
}

Rational RootSystem::pair_coroot(const Weight& a, const Weight& alpha) const {
    Rational nn = pairing(alpha, alpha);
    if (nn.is_zero()) throw std::invalid_argument("pair_coroot: zero root");
    return Rational(2) * pairing(a, alpha) / nn;
}

Weight RootSystem::fundamental_weight(std::size_t r) const {
    Weight w(rank_);
    w.c[r] = Rational(1);
    return w;
}

Weight RootSystem::simple_root(std::size_t r) const {
    Weight w(rank_);
    for (std::size_t t = 0; t < rank_; ++t) w.c[t] = Rational(cartan(t, r));
    return w;
}

Weight RootSystem::weight_from_alpha_coords(const std::vector<Rational>& m) const {
    Weight w(rank_);
    for (std::size_t t = 0; t < rank_; ++t) {
        Rational acc(0);
        for (std::size_t s = 0; s < rank_; ++s) acc += Rational(cartan(t, s)) * m[s];
        w.c[t] = acc;
    }
    return w;
}

std::vector<Rational> RootSystem::alpha_coords(const Weight& w) const {
    std::vector<Rational> m(rank_, Rational(0));
    for (std::size_t s = 0; s < rank_; ++s) {
        Rational acc(0);
        for (std::size_t t = 0; t < rank_; ++t) acc += cartan_inv_[s * rank_ + t] * w.c[t];
        m[s] = acc;
    }
    return m;
}

bool RootSystem::in_root_lattice(const Weight& w) const {
    for (const auto& x : alpha_coords(w))
        if (!x.is_integer()) return false;
    return true;
}

const std::vector<WeylElement>& RootSystem::weyl() const {
    if (!weyl_cache_.empty()) return weyl_cache_;
    if (rank_ > kWeylRankGuard)
        throw guard_error("Weyl enumeration guard: rank > " + std::to_string(kWeylRankGuard));
    std::map<std::vector<long long>, bool> seen;
    std::deque<WeylElement> queue;
    WeylElement id = WeylElement::identity(rank_);
    seen[id.mat()] = true;
    queue.push_back(id);
    std::vector<WeylElement> out;
    while (!queue.empty()) {
        WeylElement w = queue.front();
        queue.pop_front();
        out.push_back(w);
        for (std::size_t r = 0; r < rank_; ++r) {
            WeylElement nxt = simple_refl_[r].compose(w); // extend word on the left
            if (!seen.count(nxt.mat())) {
                seen[nxt.mat()] = true;
                if (seen.size() > kWeylGuard) throw guard_error("Weyl enumeration guard exceeded");
                queue.push_back(nxt);
            }
        }
    }
    weyl_cache_ = std::move(out);
    return weyl_cache_;
}

const WeylElement& RootSystem::longest_element() const {
    if (longest_) return *longest_;
    for (const auto& w : weyl()) {
        if (w.act(rho_) == -rho_) {
            longest_ = w;
            return *longest_;
        }
    }
    throw std::logic_error("longest element not found");
}

Weight RootSystem::dominant_representative(const Weight& v, WeylElement* witness) const {
    Weight cur = v;
    WeylElement w = WeylElement::identity(rank_);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t r = 0; r < rank_; ++r) {
            if (cur.c[r].is_negative()) {
                cur = simple_refl_[r].act(cur);
                w = simple_refl_[r].compose(w);
                changed = true;
            }
        }
    }
    if (witness) *witness = w;
    return cur;
}

BigInt RootSystem::weyl_dimension(const Weight& hw) const {
    Rational dim(1);
    Weight shifted = hw + rho_;
    for (const auto& pr : pos_roots_) dim *= pairing(shifted, pr.w) / pairing(rho_, pr.w);
    if (!dim.is_integer()) throw std::logic_error("Weyl dimension not integral");
    return dim.num();
}

// -------------------------------------------------------------- Involution

Involution::Involution(const RootSystem& rs, std::vector<int> perm) : perm_(std::move(perm)) {
    std::size_t n = rs.rank();
    if (perm_.size() != n) throw std::invalid_argument("Involution: wrong length");
    for (std::size_t r = 0; r < n; ++r) {
        int pr = perm_[r];
        if (pr < 0 || (std::size_t)pr >= n) throw std::invalid_argument("Involution: out of range");
        if ((std::size_t)perm_[(std::size_t)pr] != r)
            throw std::invalid_argument("Involution: not an involution");
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            if (rs.cartan((std::size_t)perm_[r], (std::size_t)perm_[s]) != rs.cartan(r, s))
                throw std::invalid_argument("Involution: not a diagram automorphism");
}

Involution Involution::identity(const RootSystem& rs) {
    std::vector<int> p(rs.rank());
    std::iota(p.begin(), p.end(), 0);
    Involution inv;
    inv.perm_ = std::move(p);
    return inv;
}

bool Involution::is_identity() const {
    for (std::size_t r = 0; r < perm_.size(); ++r)
        if ((std::size_t)perm_[r] != r) return false;
    return true;
}

std::vector<int> Involution::fixed_nodes() const {
    std::vector<int> out;
    for (std::size_t r = 0; r < perm_.size(); ++r)
        if ((std::size_t)perm_[r] == r) out.push_back((int)r);
    return out;
}

std::vector<int> Involution::fundamental_domain() const {
    std::vector<int> out;
    for (std::size_t r = 0; r < perm_.size(); ++r)
        if ((std::size_t)perm_[r] > r) out.push_back((int)r);
    return out;
}

Weight Involution::act(const Weight& w) const {
    if (w.rank() != perm_.size()) throw std::invalid_argument("Involution: rank mismatch");
    Weight r(w.rank());
    for (std::size_t i = 0; i < perm_.size(); ++i) r.c[(std::size_t)perm_[i]] = w.c[i];
    return r;
}

bool Involution::commutes_with(const WeylElement& w) const {
    std::size_t n = perm_.size();
    const auto& m = w.mat();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m[(std::size_t)perm_[i] * n + (std::size_t)perm_[j]] != m[i * n + j]) return false;
    return true;
}

// ------------------------------------------------------------ FoldedSystem

FoldedSystem::FoldedSystem(std::shared_ptr<const RootSystem> base, Involution tau)
    : base_(std::move(base)), tau_(std::move(tau)) {
    const RootSystem& rs = *base_;
    std::size_t n = rs.rank();
    class_of_.assign(n, -1);
    for (std::size_t r = 0; r < n; ++r) {
        if (class_of_[r] >= 0) continue;
        int tr = tau_((int)r);
        std::vector<int> cls{(int)r};
        if ((std::size_t)tr != r) cls.push_back(tr);
        int idx = (int)classes_.size();
        class_of_[r] = idx;
        class_of_[(std::size_t)tr] = idx;
        classes_.push_back(std::move(cls));
    }

    for (const auto& cls : classes_) {
        int r = cls[0];
        Weight a = rs.simple_root((std::size_t)r);
        if (cls.size() == 2) a = Rational(1, 2) * (a + rs.simple_root((std::size_t)cls[1]));
        folded_simple_.push_back(a);
        if (cls.size() == 2 && rs.cartan((std::size_t)cls[0], (std::size_t)cls[1]) != 0)
            non_reduced_ = true;

        // folded fundamental weight via lambda_r = 1/2 + (1/4)(alpha_r^vee, alpha_tau(r))
        Weight fw(n);
        for (int s : cls) {
            Rational lam = Rational(1, 2) + Rational(1, 4) * Rational(rs.cartan((std::size_t)s, (std::size_t)tau_(s)));
            fw.c[(std::size_t)s] = lam;
        }
        folded_weight_.push_back(fw);

        // lifted generator
        const auto& s0 = rs.simple_reflection((std::size_t)cls[0]);
        if (cls.size() == 1) {
            lifted_gen_.push_back(s0);
        } else {
            const auto& s1 = rs.simple_reflection((std::size_t)cls[1]);
            if (rs.cartan((std::size_t)cls[0], (std::size_t)cls[1]) == 0)
                lifted_gen_.push_back(s0.compose(s1));
            else
                lifted_gen_.push_back(s0.compose(s1).compose(s0));
        }
    }

    std::size_t k = classes_.size();
    folded_cartan_.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        Rational nn = rs.pairing(folded_simple_[i], folded_simple_[i]);
        for (std::size_t j = 0; j < k; ++j) {
            Rational v = Rational(2) * rs.pairing(folded_simple_[i], folded_simple_[j]) / nn;
            if (!v.is_integer()) throw std::logic_error("folded Cartan entry not integral");
            folded_cartan_[i * k + j] = (int)v.num().convert_to<long long>();
        }
    }

    // folded positive roots, with integer coordinates from class sums
    std::map<Weight, std::vector<int>> folded;
    for (const auto& pr : rs.positive_roots()) {
        Weight proj = project(pr.w);
        std::vector<int> coords(k, 0);
        for (std::size_t s = 0; s < n; ++s) coords[(std::size_t)class_of_[s]] += pr.alpha[s];
        auto it = folded.find(proj);
        if (it == folded.end())
            folded.emplace(proj, coords);
        else if (it->second != coords)
            throw std::logic_error("inconsistent folded root coordinates");
    }
    for (auto& [w, coords] : folded) {
        folded_pos_.push_back(FoldedRoot{w, coords});
        folded_pos_set_.insert(w);
    }

    // type label
    std::vector<std::vector<int>> fc(k, std::vector<int>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) fc[i][j] = folded_cartan_[i * k + j];
    auto lbl = recognize_cartan(fc);
    if (non_reduced_) {
        folded_type_ = "BC" + std::to_string(k);
    } else {
        folded_type_ = lbl ? *lbl : "custom";
    }
}

Weight FoldedSystem::project(const Weight& v) const {
    return Rational(1, 2) * (v + tau_.act(v));
}

std::optional<std::vector<Rational>> FoldedSystem::folded_simple_coords(const Weight& v) const {
    auto ac = base_->alpha_coords(v);
    std::vector<Rational> out(classes_.size(), Rational(0));
    for (std::size_t k = 0; k < classes_.size(); ++k) {
        const auto& cls = classes_[k];
        if (cls.size() == 1) {
            out[k] = ac[(std::size_t)cls[0]];
        } else {
            if (ac[(std::size_t)cls[0]] != ac[(std::size_t)cls[1]]) return std::nullopt;
            out[k] = Rational(2) * ac[(std::size_t)cls[0]];
        }
    }
    // verify
    Weight rebuilt(base_->rank());
    for (std::size_t k = 0; k < classes_.size(); ++k) rebuilt += out[k] * folded_simple_[k];
    if (rebuilt != v) return std::nullopt;
    return out;
}

const std::vector<WeylElement>& FoldedSystem::weyl_tau() const {
    if (!weyl_tau_cache_.empty()) return weyl_tau_cache_;
    for (const auto& w : base_->weyl())
        if (tau_.commutes_with(w)) weyl_tau_cache_.push_back(w);
    return weyl_tau_cache_;
}

WeylElement FoldedSystem::reflection_of(const Weight& beta) const {
    Rational nn = base_->pairing(beta, beta);
    if (nn.is_zero()) throw std::invalid_argument("reflection_of: zero vector");
    for (const auto& w : weyl_tau()) {
        bool ok = true;
        for (std::size_t k = 0; k < classes_.size() && ok; ++k) {
            const Weight& v = folded_simple_[k];
            Weight expect = v - (Rational(2) * base_->pairing(v, beta) / nn) * beta;
            if (w.act(v) != expect) ok = false;
        }
        if (ok) return w;
    }
    throw std::invalid_argument("reflection_of: not a folded reflection in W^tau");
}

int FoldedSystem::hsgn(const WeylElement& w) const {
    if (!tau_.commutes_with(w)) throw std::invalid_argument("hsgn: element not tau-fixed");
    WeylElement cur = w;
    int len = 0;
    while (!cur.is_identity()) {
        bool found = false;
        for (std::size_t k = 0; k < classes_.size(); ++k) {
            Weight img = cur.act(folded_simple_[k]);
            if (folded_pos_set_.count(-img)) {
                cur = cur.compose(lifted_gen_[k]);
                ++len;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("hsgn: no descent found");
        if (len > 10000) throw std::logic_error("hsgn: descent loop");
    }
    return len % 2 == 0 ? 1 : -1;
}

// --------------------------------------------------------- type recognition

namespace {

bool match_component(const std::vector<std::vector<int>>& comp,
                     const std::vector<std::vector<int>>& cand) {
    std::size_t k = comp.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    // quick invariant: multiset of sorted row patterns
    auto profile = [](const std::vector<std::vector<int>>& m) {
        std::vector<std::vector<int>> rows;
        for (const auto& r : m) {
            std::vector<int> s = r;
            std::sort(s.begin(), s.end());
            rows.push_back(std::move(s));
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    if (profile(comp) != profile(cand)) return false;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            for (std::size_t j = 0; j < k && ok; ++j)
                if (comp[perm[i]][perm[j]] != cand[i][j]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace

std::optional<std::string> recognize_cartan(const std::vector<std::vector<int>>& a) {
    std::size_t n = a.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<std::size_t> members;
        std::deque<std::size_t> queue{start};
        comp[start] = (int)comps.size();
        while (!queue.empty()) {
            std::size_t r = queue.front();
            queue.pop_front();
            members.push_back(r);
            for (std::size_t s = 0; s < n; ++s)
                if (s != r && a[r][s] != 0 && comp[s] < 0) {
                    comp[s] = (int)comps.size();
                    queue.push_back(s);
                }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    std::vector<std::string> labels;
    for (const auto& members : comps) {
        std::size_t k = members.size();
        std::vector<std::vector<int>> sub(k, std::vector<int>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[members[i]][members[j]];
        std::string found;
        if (k == 2 && ((sub[0][1] == -1 && sub[1][0] == -2) || (sub[0][1] == -2 && sub[1][0] == -1))) {
            // B2 and C2 coincide as diagrams; name by the position of the
            // short node, matching the standard enumeration (C: short first).
            found = (sub[1][0] == -1) ? "C2" : "B2";
        } else {
            std::vector<std::string> cands;
            cands.push_back("A" + std::to_string(k));
            if (k >= 3) {
                cands.push_back("B" + std::to_string(k));
                cands.push_back("C" + std::to_string(k));
            }
            if (k >= 4) cands.push_back("D" + std::to_string(k));
            if (k >= 6 && k <= 8) cands.push_back("E" + std::to_string(k));
            if (k == 4) cands.push_back("F4");
            if (k == 2) cands.push_back("G2");
            for (const auto& c : cands) {
                try {
                    if (match_component(sub, builtin_cartan(c))) {
                        found = c;
                        break;
                    }
                } catch (const std::invalid_argument&) {
                }
            }
        }
        if (found.empty()) return std::nullopt;
        labels.push_back(found);
    }
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += "x";
        out += labels[i];
    }
    return out;
}

std::vector<WeylElement> generate_subgroup(const std::vector<WeylElement>& gens, std::size_t rank,
                                           std::size_t guard) {
    std::map<std::vector<long long>, bool> seen;
    std::deque<WeylElement> queue;
    WeylElement id = WeylElement::identity(rank);
    seen[id.mat()] = true;
    queue.push_back(id);
    std::vector<WeylElement> out;
    while (!queue.empty()) {
        WeylElement w = queue.front();
        queue.pop_front();
        out.push_back(w);
        for (const auto& g : gens) {
            WeylElement nxt = g.compose(w);
            if (!seen.count(nxt.mat())) {
                seen[nxt.mat()] = true;
                if (seen.size() > guard) throw guard_error("subgroup enumeration guard exceeded");
                queue.push_back(nxt);
            }
        }
    }
    return out;
}

} // namespace qorbit
